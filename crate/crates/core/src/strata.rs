//! Dominant coweight polytopes `P_λ = {ν dominant : ν ≤_ℚ λ}`, their open
//! parts `P_λ°`, and strata of the extended Steinberg base indexed by
//! valuation vectors.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kv::best_integral_approx;
use crate::multiplicity::dominant_below;
use crate::rational::{fmt_rational, parse_rational, Coweight, Rational};
use crate::rootdata::RootDatum;

/// A valuation in `ℚ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtRational {
    Finite(#[serde(with = "crate::rational::serde_rational")] Rational),
    Infinite,
}

impl ExtRational {
    pub fn finite(q: Rational) -> Self {
        ExtRational::Finite(q)
    }

    /// `self ≥ q`; `∞` dominates everything.
    pub fn at_least(&self, q: Rational) -> bool {
        match self {
            ExtRational::Finite(x) => *x >= q,
            ExtRational::Infinite => true,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinite) => Ordering::Less,
            (ExtRational::Infinite, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinite, ExtRational::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => f.write_str(&fmt_rational(q)),
            ExtRational::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(ExtRational::Infinite),
            t => Ok(ExtRational::Finite(parse_rational(t)?)),
        }
    }
}

/// Valuations of the coordinates `(b_1..b_r)` and `(c_1..c_r)` of a point
/// of the extended Steinberg base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationVector {
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub b_vals: Vec<Rational>,
    pub c_vals: Vec<ExtRational>,
}

impl ValuationVector {
    /// `b_i = ⟨λ, α_{ι(i)}⟩`, the valuations recorded by `−w₀(λ)`.
    pub fn b_for(rd: &RootDatum, lambda: &Coweight) -> Vec<Rational> {
        let vals = rd.dominance_values(lambda);
        rd.w0_permutation().iter().map(|&j| vals[j]).collect()
    }

    /// Valuation vector of a split generic element `ϖ^μ·unit` viewed in
    /// `𝔠_+^λ`: `c_i = ⟨−w₀λ, ω_i⟩ + min_χ ⟨χ, μ⟩` over the weights of `V(ω_i)`.
    pub fn generic_split(rd: &RootDatum, lambda: &Coweight, mu: &Coweight) -> Result<Self> {
        let iota = rd.w0_permutation();
        let coords = lambda.coords();
        let c_vals = (0..rd.rank())
            .map(|i| {
                Ok(ExtRational::Finite(
                    coords[iota[i]] + generic_char_valuation(rd, mu, i)?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(ValuationVector {
            b_vals: Self::b_for(rd, lambda),
            c_vals,
        })
    }

    /// Parse comma-separated c-valuations (`inf` allowed) for the given `λ`.
    pub fn from_cvals(rd: &RootDatum, lambda: &Coweight, cvals: &str) -> Result<Self> {
        let c_vals: Vec<ExtRational> = cvals.split(',').map(str::parse).collect::<Result<_>>()?;
        if c_vals.len() != rd.rank() {
            return Err(Error::Rank {
                expected: rd.rank(),
                got: c_vals.len(),
            });
        }
        Ok(ValuationVector {
            b_vals: Self::b_for(rd, lambda),
            c_vals,
        })
    }
}

/// Membership in `P_λ` (closed) or `P_λ°` (open).
pub fn polytope_member(
    rd: &RootDatum,
    nu: &Coweight,
    lambda: &Coweight,
    open_stratum: bool,
) -> Result<bool> {
    rd.check_rank(nu)?;
    if !rd.is_dominant(lambda) {
        return Err(Error::NotDominant(format!(
            "lambda = ({lambda}) is not dominant"
        )));
    }
    let closed = rd.is_dominant(nu) && rd.leq_q(nu, lambda);
    if !closed || !open_stratum {
        return Ok(closed);
    }
    Ok(&best_integral_approx(rd, nu, lambda)? == lambda)
}

/// `μ` with `(λ₁ − 𝖣) ∩ (λ₂ − 𝖣) = μ − 𝖣`: subtract the positive part of
/// `λ₁ − λ₂` from `λ₁`.
pub fn polytope_intersection(rd: &RootDatum, l1: &Coweight, l2: &Coweight) -> Result<Coweight> {
    rd.check_rank(l1)?;
    rd.check_rank(l2)?;
    for l in [l1, l2] {
        if !rd.is_dominant(l) || !rd.in_lattice(l) {
            return Err(Error::NotDominant(format!(
                "({l}) is not dominant integral"
            )));
        }
    }
    let diff = l1.sub(l2);
    let Some(d) = diff.as_integral() else {
        return Err(Error::Precondition(format!(
            "({l1}) and ({l2}) lie in different classes of pi_1"
        )));
    };
    let beta1: Vec<i64> = d.iter().map(|&x| x.max(0)).collect();
    let mu = l1.sub(&Coweight::integral(beta1));
    if !rd.is_dominant(&mu) {
        return Err(Error::Inconsistent(format!(
            "intersection point ({mu}) is not dominant"
        )));
    }
    Ok(mu)
}

/// The unique minimal dominant integral `μ ≤ λ` with
/// `val(c_{ι(i)}) ≥ ⟨λ − μ, ω_i⟩` for all `i`.
pub fn steinberg_stratum(
    rd: &RootDatum,
    v: &ValuationVector,
    lambda: &Coweight,
) -> Result<Coweight> {
    let r = rd.rank();
    if v.b_vals.len() != r || v.c_vals.len() != r {
        return Err(Error::Rank {
            expected: r,
            got: v.c_vals.len().min(v.b_vals.len()),
        });
    }
    if v.b_vals != ValuationVector::b_for(rd, lambda) {
        return Err(Error::Precondition(format!(
            "b-valuations do not match lambda = ({lambda})"
        )));
    }
    let iota = rd.w0_permutation();
    let cands: Vec<Coweight> = dominant_below(rd, lambda)?
        .into_iter()
        .filter(|mu| {
            let gap = lambda.sub(mu).coords();
            (0..r).all(|i| v.c_vals[iota[i]].at_least(gap[i]))
        })
        .collect();
    if cands.is_empty() {
        return Err(Error::NoCandidate(format!(
            "no stratum of lambda = ({lambda}) matches the c-valuations"
        )));
    }
    let mins: Vec<Coweight> = cands
        .iter()
        .filter(|m| !cands.iter().any(|o| o != *m && rd.leq_integral(o, m)))
        .cloned()
        .collect();
    if mins.len() != 1 {
        return Err(Error::NonUnique {
            what: "Steinberg stratum".into(),
            candidates: mins,
        });
    }
    Ok(mins.into_iter().next().expect("one element"))
}

/// Weights of `V(ω_i)` of `G`, in fundamental-weight coordinates.
pub fn fundamental_rep_weights(rd: &RootDatum, i: usize) -> Result<Vec<Vec<i64>>> {
    let dual = rd.dual()?;
    let top = dual.fundamental_coweight(i);
    let mut out = vec![];
    for chi in dominant_below(&dual, &top)? {
        for x in dual.orbit(&chi) {
            out.push(
                dual.dominance_values(&x)
                    .iter()
                    .map(|q| q.to_integer())
                    .collect(),
            );
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `min_χ ⟨χ, μ⟩` over the weights `χ` of `V(ω_i)`.
pub fn generic_char_valuation(rd: &RootDatum, mu: &Coweight, i: usize) -> Result<Rational> {
    rd.check_rank(mu)?;
    if i >= rd.rank() {
        return Err(Error::Precondition(format!(
            "fundamental index {} out of range",
            i + 1
        )));
    }
    let weights = fundamental_rep_weights(rd, i)?;
    let c = mu.coords();
    Ok(weights
        .iter()
        .map(|n| n.iter().zip(&c).map(|(&a, q)| *q * a).sum::<Rational>())
        .min()
        .expect("nonempty weight system"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn sc(l: &str) -> RootDatum {
        RootDatum::simply_connected(l).unwrap()
    }

    fn cw(v: &[i64]) -> Coweight {
        Coweight::integral(v.to_vec())
    }

    #[test]
    fn member_examples() {
        let a1 = sc("A1");
        assert!(polytope_member(&a1, &cw(&[1]), &cw(&[1]), true).unwrap());
        assert!(polytope_member(&a1, &cw(&[0]), &cw(&[1]), false).unwrap());
        assert!(!polytope_member(&a1, &cw(&[0]), &cw(&[1]), true).unwrap());
        let a2 = sc("A2");
        let half = Coweight::new(vec![1, 1], 2).unwrap();
        assert!(polytope_member(&a2, &half, &cw(&[1, 1]), true).unwrap());
        // not dominant
        assert!(!polytope_member(&a2, &cw(&[1, 0]), &cw(&[1, 1]), false).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let a2 = sc("A2");
        let l = cw(&[1, 1]);
        assert_eq!(polytope_intersection(&a2, &l, &l).unwrap(), l);
        assert_eq!(polytope_intersection(&a2, &cw(&[2, 2]), &l).unwrap(), l);
        let ad = RootDatum::adjoint("A2").unwrap();
        assert_eq!(
            polytope_intersection(&ad, &cw(&[2, 1]), &cw(&[1, 2])).unwrap(),
            cw(&[1, 1])
        );
        let om = ad.fundamental_coweight(0);
        assert!(polytope_intersection(&ad, &om, &cw(&[1, 1])).is_err());
    }

    #[test]
    fn steinberg_examples() {
        let a1 = sc("A1");
        let l = cw(&[2]);
        let zero = ValuationVector::from_cvals(&a1, &l, "0").unwrap();
        assert_eq!(steinberg_stratum(&a1, &zero, &l).unwrap(), l);
        let inf = ValuationVector::from_cvals(&a1, &l, "inf").unwrap();
        assert_eq!(steinberg_stratum(&a1, &inf, &l).unwrap(), cw(&[0]));
        let one = ValuationVector::from_cvals(&a1, &l, "1").unwrap();
        assert_eq!(steinberg_stratum(&a1, &one, &l).unwrap(), cw(&[1]));
        let neg = ValuationVector::from_cvals(&a1, &l, "-1").unwrap();
        assert!(matches!(
            steinberg_stratum(&a1, &neg, &l),
            Err(Error::NoCandidate(_))
        ));
        let mut wrong = one.clone();
        wrong.b_vals = vec![int(3)];
        assert!(steinberg_stratum(&a1, &wrong, &l).is_err());
    }

    #[test]
    fn char_valuation_examples() {
        let a1 = sc("A1");
        assert_eq!(generic_char_valuation(&a1, &cw(&[0]), 0).unwrap(), int(0));
        assert_eq!(generic_char_valuation(&a1, &cw(&[1]), 0).unwrap(), int(-1));
        let a2 = sc("A2");
        assert_eq!(
            generic_char_valuation(&a2, &cw(&[1, 1]), 0).unwrap(),
            int(-1)
        );
        assert_eq!(fundamental_rep_weights(&a2, 0).unwrap().len(), 3);
        assert_eq!(fundamental_rep_weights(&sc("B2"), 0).unwrap().len(), 5);
        assert_eq!(fundamental_rep_weights(&sc("B2"), 1).unwrap().len(), 4);
        assert_eq!(fundamental_rep_weights(&sc("G2"), 0).unwrap().len(), 7);
        let pgl2 = RootDatum::adjoint("A1").unwrap();
        let half = Coweight::new(vec![1], 2).unwrap();
        assert_eq!(generic_char_valuation(&pgl2, &half, 0).unwrap(), rat(-1, 2));
    }

    #[test]
    fn generic_vector_recovers_mu() {
        let a2 = sc("A2");
        let l = cw(&[2, 1]);
        for mu in dominant_below(&a2, &l).unwrap() {
            let v = ValuationVector::generic_split(&a2, &l, &mu).unwrap();
            assert_eq!(steinberg_stratum(&a2, &v, &l).unwrap(), mu);
        }
    }

    #[test]
    fn ext_rational_parse_and_order() {
        let x: ExtRational = "inf".parse().unwrap();
        assert_eq!(x, ExtRational::Infinite);
        let y: ExtRational = "1/2".parse().unwrap();
        assert!(y < x);
        assert_eq!(y.to_string(), "1/2");
        assert!(x.at_least(int(1000)));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<ExtRational>(&s).unwrap(), x);
    }
}
