//! Dimension, nonemptiness and component predictions for `X_γ^λ`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::conjugacy::{c_invariant, disc_valuation, newton_point, ClassDatum};
use crate::error::{Error, Result};
use crate::multiplicity::{dominant_below, multiplicity_freudenthal};
use crate::rational::{Coweight, Rational};
use crate::rootdata::RootDatum;
use crate::weyl::coxeter_elements;

fn require_lambda(rd: &RootDatum, lambda: &Coweight) -> Result<()> {
    rd.check_rank(lambda)?;
    if !rd.in_lattice(lambda) {
        return Err(Error::Precondition(format!(
            "lambda = ({lambda}) is not in the cocharacter lattice"
        )));
    }
    if !rd.is_dominant(lambda) {
        return Err(Error::NotDominant(format!(
            "lambda = ({lambda}) is not dominant"
        )));
    }
    Ok(())
}

/// `p_G(λ) = κ` and `ν_γ ≤_ℚ λ`.
pub fn nonempty(cd: &ClassDatum, lambda: &Coweight) -> Result<bool> {
    cd.check()?;
    require_lambda(&cd.rd, lambda)?;
    let kappa = cd.kappa_normalized()?;
    let nu = newton_point(cd)?;
    Ok(cd.rd.project(lambda)? == kappa && cd.rd.leq_q(&nu, lambda))
}

/// `⟨ρ, λ⟩ + (d(γ) − c(γ))/2`.
pub fn dimension(cd: &ClassDatum, lambda: &Coweight) -> Result<i64> {
    if !nonempty(cd, lambda)? {
        return Err(Error::EmptyVariety);
    }
    let d = disc_valuation(cd)?;
    let c = c_invariant(cd) as i64;
    let v = cd.rd.rho_pairing(lambda) + Rational::new(d - c, 2);
    if !v.is_integer() {
        return Err(Error::NonIntegral(format!(
            "dimension {v} for lambda = ({lambda})"
        )));
    }
    if v.is_negative() {
        return Err(Error::Inconsistent(format!("negative dimension {v}")));
    }
    Ok(v.to_integer())
}

/// `r(γ) = Σ_{α>0} val(α(γ) − 1)` for a split class with dominant integral
/// valuation `μ`; residuals are read for the positive roots with
/// `⟨α, μ⟩ = 0` (missing ones are 0).
pub fn r_gamma_split(
    rd: &RootDatum,
    mu: &Coweight,
    residual: &BTreeMap<Vec<i64>, Rational>,
) -> Rational {
    rd.positive_roots()
        .iter()
        .filter(|a| rd.pair_root(a, mu).is_zero())
        .map(|a| residual.get(a).copied().unwrap_or_else(Rational::zero))
        .sum()
}

/// For an unramified class with `ν = μ`: the dimension
/// `⟨ρ, λ − μ⟩ + r(γ)` and the orbit count `m_{λμ}`.
pub fn unramified_dimension(
    rd: &RootDatum,
    mu: &Coweight,
    residual: &BTreeMap<Vec<i64>, Rational>,
    lambda: &Coweight,
) -> Result<(i64, u64)> {
    require_lambda(rd, lambda)?;
    require_lambda(rd, mu)?;
    if !rd.leq_integral(mu, lambda) {
        return Err(Error::Precondition(format!(
            "mu = ({mu}) is not <= lambda = ({lambda})"
        )));
    }
    let r = r_gamma_split(rd, mu, residual);
    let v = rd.rho_pairing(&lambda.sub(mu)) + r;
    if !v.is_integer() {
        return Err(Error::NonIntegral(format!("dimension {v}")));
    }
    let m = multiplicity_freudenthal(rd, lambda, mu)?;
    Ok((v.to_integer(), m))
}

/// Minimal elements of `cands` in the integral dominance order.
fn minimal(rd: &RootDatum, cands: &[Coweight]) -> Vec<Coweight> {
    cands
        .iter()
        .filter(|m| !cands.iter().any(|o| o != *m && rd.leq_integral(o, m)))
        .cloned()
        .collect()
}

fn maximal(rd: &RootDatum, cands: &[Coweight]) -> Vec<Coweight> {
    cands
        .iter()
        .filter(|m| !cands.iter().any(|o| o != *m && rd.leq_integral(m, o)))
        .cloned()
        .collect()
}

/// `μ*`: the minimal dominant integral `μ ≤ λ` (same class as `λ`) with
/// `ν ≤_ℚ μ`. Fails loudly if the minimum is not unique.
pub fn best_integral_approx(rd: &RootDatum, nu: &Coweight, lambda: &Coweight) -> Result<Coweight> {
    rd.check_rank(nu)?;
    if !rd.is_dominant(nu) {
        return Err(Error::NotDominant(format!("nu = ({nu}) is not dominant")));
    }
    let cands: Vec<Coweight> = dominant_below(rd, lambda)?
        .into_iter()
        .filter(|m| rd.leq_q(nu, m))
        .collect();
    if cands.is_empty() {
        return Err(Error::NoCandidate(format!(
            "no dominant integral mu <= ({lambda}) dominates nu = ({nu})"
        )));
    }
    let mins = minimal(rd, &cands);
    if mins.len() != 1 {
        return Err(Error::NonUnique {
            what: format!("best integral approximation of ({nu}) below ({lambda})"),
            candidates: mins,
        });
    }
    Ok(mins.into_iter().next().expect("one element"))
}

/// The maximal dominant integral `μ ≤_ℚ ν` in the class of `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChenZhu {
    pub mu: Option<Coweight>,
    /// All maximal candidates (one entry when `mu` is present).
    pub maximal: Vec<Coweight>,
}

pub fn chen_zhu_approx(rd: &RootDatum, nu: &Coweight, lambda: &Coweight) -> Result<ChenZhu> {
    rd.check_rank(nu)?;
    if !rd.is_dominant(nu) {
        return Err(Error::NotDominant(format!("nu = ({nu}) is not dominant")));
    }
    let cands: Vec<Coweight> = dominant_below(rd, lambda)?
        .into_iter()
        .filter(|m| rd.leq_q(m, nu))
        .collect();
    let maximal = maximal(rd, &cands);
    let mu = (maximal.len() == 1).then(|| maximal[0].clone());
    Ok(ChenZhu { mu, maximal })
}

/// `m_{λμ*}`.
pub fn predicted_components(cd: &ClassDatum, lambda: &Coweight) -> Result<u64> {
    if !nonempty(cd, lambda)? {
        return Err(Error::EmptyVariety);
    }
    let mu = best_integral_approx(&cd.rd, &newton_point(cd)?, lambda)?;
    multiplicity_freudenthal(&cd.rd, lambda, &mu)
}

/// `|Cox(W, S)|`.
pub fn regular_orbit_bound(rd: &RootDatum) -> Result<u64> {
    Ok(coxeter_elements(rd)?.len() as u64)
}

/// `λ` regular and `λ − μ*` strictly inside the coroot cone.
pub fn regular_bound_exact(rd: &RootDatum, lambda: &Coweight, mu_star: &Coweight) -> bool {
    rd.dominance_values(lambda).iter().all(|q| q.is_positive())
        && lambda.sub(mu_star).is_strictly_positive()
}

/// `d_+ = ⟨2ρ, λ⟩ + d(γ)`, with the degenerate case `d_+ = 0` checked.
pub fn extended_disc_valuation(cd: &ClassDatum, lambda: &Coweight) -> Result<Rational> {
    if !nonempty(cd, lambda)? {
        return Err(Error::EmptyVariety);
    }
    let d = disc_valuation(cd)?;
    let dp = cd.rd.rho_pairing(lambda) * 2 + d;
    if dp.is_negative() {
        return Err(Error::Inconsistent(format!(
            "d_+ = {dp} < 0 on a nonempty variety"
        )));
    }
    if dp.is_zero() {
        let nu = newton_point(cd)?;
        if !cd.is_split() || &nu != lambda {
            return Err(Error::Inconsistent(format!(
                "d_+ = 0 but the class is not split with newton point lambda (w = {}, nu = ({nu}))",
                cd.w
            )));
        }
        let dim = dimension(cd, lambda)?;
        if dim != 0 {
            return Err(Error::Inconsistent(format!("d_+ = 0 but dimension {dim}")));
        }
    }
    Ok(dp)
}

/// `⟨ρ, λ + μ⟩`, the dimension of `S_μ ∩ Gr_λ`.
pub fn mv_dimension(rd: &RootDatum, lambda: &Coweight, mu: &Coweight) -> Result<Rational> {
    require_lambda(rd, lambda)?;
    rd.check_rank(mu)?;
    if !rd.is_dominant(mu) || !rd.leq_integral(mu, lambda) {
        return Err(Error::Precondition(format!(
            "mu = ({mu}) must be dominant and <= lambda = ({lambda})"
        )));
    }
    Ok(rd.rho_pairing(&lambda.add(mu)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KVReport {
    pub nonempty: bool,
    pub newton: Coweight,
    pub d: i64,
    pub c: i64,
    pub dimension: Option<i64>,
    pub mu_star: Option<Coweight>,
    pub predicted_orbits: Option<u64>,
    pub regular_orbit_bound: u64,
    pub regular_bound_exact: Option<bool>,
    #[serde(with = "crate::rational::serde_rational")]
    pub d_plus: Rational,
    pub chen_zhu_mu: Option<Coweight>,
}

impl KVReport {
    pub fn compute(cd: &ClassDatum, lambda: &Coweight) -> Result<KVReport> {
        let rd = &cd.rd;
        let nonempty = nonempty(cd, lambda)?;
        let newton = newton_point(cd)?;
        let d = disc_valuation(cd)?;
        let c = c_invariant(cd) as i64;
        let d_plus = rd.rho_pairing(lambda) * 2 + d;
        let bound = regular_orbit_bound(rd)?;
        let mut rep = KVReport {
            nonempty,
            newton: newton.clone(),
            d,
            c,
            dimension: None,
            mu_star: None,
            predicted_orbits: None,
            regular_orbit_bound: bound,
            regular_bound_exact: None,
            d_plus,
            chen_zhu_mu: None,
        };
        if !nonempty {
            return Ok(rep);
        }
        rep.dimension = Some(dimension(cd, lambda)?);
        extended_disc_valuation(cd, lambda)?;
        let mu = best_integral_approx(rd, &newton, lambda)?;
        let m = multiplicity_freudenthal(rd, lambda, &mu)?;
        let exact = regular_bound_exact(rd, lambda, &mu);
        if exact && m < bound {
            return Err(Error::Inconsistent(format!(
                "m = {m} is below the Coxeter bound {bound} for lambda = ({lambda}), mu* = ({mu})"
            )));
        }
        rep.chen_zhu_mu = chen_zhu_approx(rd, &newton, lambda)?.mu;
        rep.mu_star = Some(mu);
        rep.predicted_orbits = Some(m);
        rep.regular_bound_exact = Some(exact);
        Ok(rep)
    }

    pub fn to_text(&self) -> String {
        let opt = |o: Option<String>| o.unwrap_or_else(|| "-".into());
        let mut s = String::new();
        s += &format!("nonempty\t{}\n", self.nonempty);
        s += &format!("newton\t{}\n", self.newton);
        s += &format!("d\t{}\n", self.d);
        s += &format!("c\t{}\n", self.c);
        s += &format!(
            "dimension\t{}\n",
            opt(self.dimension.map(|x| x.to_string()))
        );
        s += &format!(
            "mu_star\t{}\n",
            opt(self.mu_star.as_ref().map(|x| x.to_string()))
        );
        s += &format!(
            "predicted_orbits\t{}\n",
            opt(self.predicted_orbits.map(|x| x.to_string()))
        );
        s += &format!("regular_orbit_bound\t{}\n", self.regular_orbit_bound);
        s += &format!(
            "regular_bound_exact\t{}\n",
            opt(self.regular_bound_exact.map(|x| x.to_string()))
        );
        s += &format!("d_plus\t{}\n", crate::rational::fmt_rational(&self.d_plus));
        s += &format!(
            "chen_zhu_mu\t{}\n",
            opt(self.chen_zhu_mu.as_ref().map(|x| x.to_string()))
        );
        s
    }
}
