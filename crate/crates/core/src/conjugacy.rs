//! Regular semisimple classes modelled by cameral data.
//!
//! A class is recorded by its twist `w`, splitting degree `e`, the
//! valuation coweight `ν̄` and the residual valuations `r_α` on the roots
//! with `⟨α, ν̄⟩ = 0`. For every root the valuation of `α(γ) − 1` is then
//! `r_α` on that domain and `min(0, ⟨α, ν̄⟩)` off it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Coweight, Rational, RationalJson};
use crate::rootdata::{Isogeny, RootDatum};
use crate::weyl::WeylElement;

#[derive(Debug, Clone)]
pub struct ClassDatum {
    pub rd: RootDatum,
    pub w: WeylElement,
    pub e: u64,
    pub nu_bar: Coweight,
    /// Explicit residual valuations keyed by root (simple-root coordinates).
    /// Roots of the residual domain without an entry have valuation 0.
    pub residual: BTreeMap<Vec<i64>, Rational>,
    pub kappa: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationCode {
    RankMismatch,
    NuNotFixed,
    OrderMismatch,
    NuDenominator,
    ResidualNotRoot,
    ResidualOutsideDomain,
    ResidualNegative,
    ResidualDenominator,
    ResidualAsymmetric,
    ResidualNotInvariant,
    DiscNotIntegral,
    KappaShape,
    KappaMismatch,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::RankMismatch => "rank_mismatch",
            ViolationCode::NuNotFixed => "nu_not_fixed_by_w",
            ViolationCode::OrderMismatch => "e_not_order_of_w",
            ViolationCode::NuDenominator => "nu_denominator",
            ViolationCode::ResidualNotRoot => "residual_not_a_root",
            ViolationCode::ResidualOutsideDomain => "residual_outside_domain",
            ViolationCode::ResidualNegative => "residual_negative",
            ViolationCode::ResidualDenominator => "residual_denominator",
            ViolationCode::ResidualAsymmetric => "residual_asymmetric",
            ViolationCode::ResidualNotInvariant => "residual_not_w_invariant",
            ViolationCode::DiscNotIntegral => "disc_not_integral",
            ViolationCode::KappaShape => "kappa_shape",
            ViolationCode::KappaMismatch => "kappa_mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    fn push(&mut self, code: ViolationCode, message: impl Into<String>) {
        self.violations.push(Violation {
            code,
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("[{}] {}", v.code.as_str(), v.message))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn divides(e: u64, q: &Rational) -> bool {
    (e as i64) % q.denom() == 0
}

impl ClassDatum {
    /// A split class (`w = 1`, `e = 1`) with `κ = p_G(ν̄)`.
    pub fn split(
        rd: &RootDatum,
        nu_bar: Coweight,
        residual: BTreeMap<Vec<i64>, Rational>,
    ) -> Result<Self> {
        let kappa = rd.project(&nu_bar)?;
        let mut cd = ClassDatum {
            rd: rd.clone(),
            w: WeylElement::identity(rd),
            e: 1,
            nu_bar,
            residual: BTreeMap::new(),
            kappa,
        };
        for (root, v) in residual {
            cd.set_residual(&root, v);
        }
        Ok(cd)
    }

    /// Set `r_α = r_{−α} = v`.
    pub fn set_residual(&mut self, root: &[i64], v: Rational) {
        self.residual.insert(root.to_vec(), v);
        self.residual.insert(neg(root), v);
    }

    pub fn rank(&self) -> usize {
        self.rd.rank()
    }

    pub fn is_split(&self) -> bool {
        self.w.is_identity()
    }

    /// Whether `⟨α, ν̄⟩ = 0`.
    pub fn in_domain(&self, root: &[i64]) -> bool {
        self.rd.pair_root(root, &self.nu_bar).is_zero()
    }

    /// `r_α` for a root of the residual domain (0 if unspecified).
    pub fn residual_of(&self, root: &[i64]) -> Rational {
        self.residual
            .get(root)
            .or_else(|| self.residual.get(&neg(root)))
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    /// `val(α(γ) − 1)`.
    pub fn root_valuation(&self, root: &[i64]) -> Rational {
        let p = self.rd.pair_root(root, &self.nu_bar);
        if p.is_zero() {
            self.residual_of(root)
        } else {
            p.min(Rational::zero())
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let rd = &self.rd;
        let r = rd.rank();
        if self.nu_bar.rank() != r || self.w.rank() != r {
            rep.push(
                ViolationCode::RankMismatch,
                format!("datum must have rank {r}"),
            );
            return rep;
        }
        if self.w.act(&self.nu_bar) != self.nu_bar {
            rep.push(
                ViolationCode::NuNotFixed,
                format!("w = {} does not fix nu_bar = ({})", self.w, self.nu_bar),
            );
        }
        let order = self.w.order() as u64;
        if self.e != order {
            rep.push(
                ViolationCode::OrderMismatch,
                format!("e = {} but w = {} has order {order}", self.e, self.w),
            );
        }
        // ν̄ ∈ (1/e)·X_*(T); in simple-coroot coordinates this is weaker than
        // "denominator divides e" for non-simply-connected lattices.
        if self.e == 0 || !rd.in_lattice(&self.nu_bar.scale(int(self.e as i64))) {
            rep.push(
                ViolationCode::NuDenominator,
                format!(
                    "e·nu_bar is not in the cocharacter lattice for nu_bar = ({}), e = {}",
                    self.nu_bar, self.e
                ),
            );
        }
        for (root, v) in &self.residual {
            let name = format!("{root:?}");
            if rd.root_index(root).is_none() {
                rep.push(
                    ViolationCode::ResidualNotRoot,
                    format!("{name} is not a root"),
                );
                continue;
            }
            if !self.in_domain(root) {
                rep.push(
                    ViolationCode::ResidualOutsideDomain,
                    format!("residual given for {name} but <alpha, nu_bar> != 0"),
                );
            }
            if v.is_negative() {
                rep.push(
                    ViolationCode::ResidualNegative,
                    format!("r{name} = {v} < 0"),
                );
            }
            if self.e > 0 && !divides(self.e, v) {
                rep.push(
                    ViolationCode::ResidualDenominator,
                    format!(
                        "denominator of r{name} = {v} does not divide e = {}",
                        self.e
                    ),
                );
            }
            if let Some(other) = self.residual.get(&neg(root)) {
                if other != v {
                    rep.push(
                        ViolationCode::ResidualAsymmetric,
                        format!("r{name} = {v} differs from r(-alpha) = {other}"),
                    );
                }
            }
        }
        for k in 0..rd.num_roots() {
            let a = rd.root(k);
            if !self.in_domain(&a) {
                continue;
            }
            let wa = self.w.act_on_root(rd, &a);
            if self.residual_of(&wa) != self.residual_of(&a) {
                rep.push(
                    ViolationCode::ResidualNotInvariant,
                    format!("r{a:?} != r{wa:?} although w maps one to the other"),
                );
                break;
            }
        }
        if rep
            .violations
            .iter()
            .all(|v| v.code != ViolationCode::RankMismatch)
        {
            let d = self.disc_full_sum();
            if !d.is_integer() {
                rep.push(
                    ViolationCode::DiscNotIntegral,
                    format!("d = {d} is not an integer"),
                );
            }
        }
        self.check_kappa(&mut rep);
        rep
    }

    fn check_kappa(&self, rep: &mut ValidationReport) {
        let pi1 = self.rd.fundamental_group();
        let kappa = match pi1.normalize(&self.kappa) {
            Ok(k) => k,
            Err(_) => {
                rep.push(
                    ViolationCode::KappaShape,
                    format!(
                        "kappa has {} entries, pi_1 has invariant factors {:?}",
                        self.kappa.len(),
                        pi1.invariant_factors
                    ),
                );
                return;
            }
        };
        // π₁(G)⊗ℚ vanishes for semisimple G, so only split classes pin κ down.
        if self.is_split() && self.rd.in_lattice(&self.nu_bar) {
            let expected = self.rd.project(&self.nu_bar).expect("in lattice");
            if expected != kappa {
                rep.push(
                    ViolationCode::KappaMismatch,
                    format!("kappa = {kappa:?} but the split class has p_G(nu_bar) = {expected:?}"),
                );
            }
        }
    }

    pub fn check(&self) -> Result<()> {
        let rep = self.validate();
        if rep.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidClass(rep))
        }
    }

    /// `κ` normalized to the invariant-factor coordinates of `π₁(G)`.
    pub fn kappa_normalized(&self) -> Result<Vec<i64>> {
        self.rd.fundamental_group().normalize(&self.kappa)
    }

    /// `Σ_{α∈Φ} val(α(γ) − 1)`.
    fn disc_full_sum(&self) -> Rational {
        (0..self.rd.num_roots())
            .map(|k| self.root_valuation(&self.rd.root(k)))
            .sum()
    }

    /// `d(γ)` via the dominant form `2Σ_{α>0, ⟨α,ν⟩=0} r_α − ⟨2ρ, ν⟩`.
    fn disc_dominant_form(&self) -> Rational {
        let rd = &self.rd;
        let (nu, word) = rd.dominant_reduce(&self.nu_bar);
        // u(ν̄) = ν, so the residual of α after reduction is r_{u⁻¹α}.
        let inv: Vec<usize> = word.iter().rev().copied().collect();
        let mut s = Rational::zero();
        for a in rd.positive_roots() {
            if rd.pair_root(a, &nu).is_zero() {
                s += self.residual_of(&rd.apply_word_to_root(&inv, a));
            }
        }
        s * 2 - nu.height() * 2
    }
}

pub fn validate(cd: &ClassDatum) -> ValidationReport {
    cd.validate()
}

/// Dominant representative of `ν̄`.
pub fn newton_point(cd: &ClassDatum) -> Result<Coweight> {
    cd.check()?;
    Ok(cd.rd.dominant_reduce(&cd.nu_bar).0)
}

/// `d(γ)`, computed both in the dominant-chamber form and as the
/// W-invariant sum over all roots.
pub fn disc_valuation(cd: &ClassDatum) -> Result<i64> {
    cd.check()?;
    let a = cd.disc_dominant_form();
    let b = cd.disc_full_sum();
    if a != b {
        return Err(Error::Inconsistent(format!(
            "discriminant routes disagree: {a} vs {b}"
        )));
    }
    if !a.is_integer() {
        return Err(Error::NonIntegral(format!("d = {a}")));
    }
    Ok(a.to_integer())
}

/// `c(γ) = r − dim Λ^w`.
pub fn c_invariant(cd: &ClassDatum) -> usize {
    cd.rank() - cd.w.fixed_space_dim()
}

/// `Σ_{α>0} val(α(γ) − 1)`.
pub fn r_gamma(cd: &ClassDatum) -> Rational {
    cd.rd
        .positive_roots()
        .iter()
        .map(|a| cd.root_valuation(a))
        .sum()
}

fn in_levi(root: &[i64], levi: &BTreeSet<usize>) -> bool {
    root.iter()
        .enumerate()
        .all(|(i, &x)| x == 0 || levi.contains(&i))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviRelation {
    #[serde(with = "crate::rational::serde_rational")]
    pub r_n: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub d_g: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub d_m: Rational,
    /// `⟨2ρ_N, ν̄⟩`; zero when `γ ∈ M(𝒪)`.
    #[serde(with = "crate::rational::serde_rational")]
    pub two_rho_n: Rational,
    /// `d_G = d_M + 2 r_N − ⟨2ρ_N, ν̄⟩`.
    pub holds: bool,
}

/// `r_N(γ) = Σ_{α∈Φ_N} val(α(γ) − 1)` for the unipotent radical of the
/// standard parabolic with Levi `L_I`.
pub fn r_n(cd: &ClassDatum, levi: &BTreeSet<usize>) -> Result<Rational> {
    if !cd.is_split() {
        return Err(Error::Unsupported(
            "r_N is only defined here for split classes".into(),
        ));
    }
    if let Some(&i) = levi.iter().find(|&&i| i >= cd.rank()) {
        return Err(Error::Precondition(format!(
            "simple root index {} out of range",
            i + 1
        )));
    }
    cd.check()?;
    Ok(cd
        .rd
        .positive_roots()
        .iter()
        .filter(|a| !in_levi(a, levi))
        .map(|a| cd.root_valuation(a))
        .sum())
}

pub fn levi_relation(cd: &ClassDatum, levi: &BTreeSet<usize>) -> Result<LeviRelation> {
    let r_n = r_n(cd, levi)?;
    let rd = &cd.rd;
    let mut d_m = Rational::zero();
    let mut d_g = Rational::zero();
    for k in 0..rd.num_roots() {
        let a = rd.root(k);
        let v = cd.root_valuation(&a);
        d_g += v;
        if in_levi(&a, levi) {
            d_m += v;
        }
    }
    let two_rho_n: Rational = rd
        .positive_roots()
        .iter()
        .filter(|a| !in_levi(a, levi))
        .map(|a| rd.pair_root(a, &cd.nu_bar))
        .sum();
    let holds = d_g == d_m + r_n * 2 - two_rho_n;
    Ok(LeviRelation {
        r_n,
        d_g,
        d_m,
        two_rho_n,
        holds,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IsogenyJson {
    Named(String),
    Generators(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub root: Vec<i64>,
    pub val: RationalJson,
}

/// File format for a class datum. `w` is a 1-based word; residuals are
/// given for positive roots and extended to negatives by symmetry.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDatumJson {
    #[serde(rename = "type")]
    pub label: String,
    #[serde(default)]
    pub isogeny: Option<IsogenyJson>,
    pub w: Vec<usize>,
    pub e: u64,
    pub nu_bar: Coweight,
    #[serde(default)]
    pub residual: Vec<ResidualEntry>,
    #[serde(default)]
    pub kappa: Vec<i64>,
}

impl ClassDatumJson {
    /// Build the datum over the given root datum, or over the one named in
    /// the file when `rd` is `None`. Structural problems are parse errors;
    /// invariant violations are left for [`ClassDatum::validate`].
    pub fn into_datum(self, rd: Option<&RootDatum>) -> Result<ClassDatum> {
        let rd = match rd {
            Some(rd) => rd.clone(),
            None => {
                let iso = match self.isogeny {
                    None => Isogeny::SimplyConnected,
                    Some(IsogenyJson::Named(s)) => s.parse()?,
                    Some(IsogenyJson::Generators(g)) => Isogeny::Custom(g),
                };
                RootDatum::build(&self.label, iso)?
            }
        };
        let r = rd.rank();
        if self.nu_bar.rank() != r {
            return Err(Error::Parse(format!(
                "field `nu_bar`: expected {r} coordinates, got {}",
                self.nu_bar.rank()
            )));
        }
        let word: Vec<usize> = self
            .w
            .iter()
            .map(|&i| {
                if i == 0 || i > r {
                    Err(Error::Parse(format!(
                        "field `w`: index {i} outside 1..={r}"
                    )))
                } else {
                    Ok(i - 1)
                }
            })
            .collect::<Result<_>>()?;
        let w = WeylElement::from_word(&rd, &word)?;
        let mut residual = BTreeMap::new();
        for entry in &self.residual {
            if entry.root.len() != r {
                return Err(Error::Parse(format!(
                    "field `residual`: root {:?} must have {r} coordinates",
                    entry.root
                )));
            }
            let v = Rational::try_from(entry.val)
                .map_err(|e| Error::Parse(format!("field `residual`: {e}")))?;
            residual.insert(entry.root.clone(), v);
        }
        // fill negatives by symmetry
        let given: Vec<(Vec<i64>, Rational)> =
            residual.iter().map(|(k, v)| (k.clone(), *v)).collect();
        for (root, v) in given {
            residual.entry(neg(&root)).or_insert(v);
        }
        Ok(ClassDatum {
            rd,
            w,
            e: self.e,
            nu_bar: self.nu_bar,
            residual,
            kappa: self.kappa,
        })
    }
}

impl ClassDatum {
    pub fn from_json(s: &str, rd: Option<&RootDatum>) -> Result<ClassDatum> {
        let j: ClassDatumJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("class datum: {e}")))?;
        j.into_datum(rd)
    }

    pub fn to_json(&self) -> ClassDatumJson {
        let residual = self
            .residual
            .iter()
            .filter(|(root, _)| {
                self.rd
                    .root_index(root)
                    .is_some_and(|k| self.rd.is_positive_index(k))
            })
            .map(|(root, v)| ResidualEntry {
                root: root.clone(),
                val: (*v).into(),
            })
            .collect();
        let isogeny = Some(match self.rd.isogeny() {
            Isogeny::SimplyConnected => IsogenyJson::Named("sc".into()),
            Isogeny::Adjoint => IsogenyJson::Named("adjoint".into()),
            Isogeny::Custom(g) => IsogenyJson::Generators(g.clone()),
        });
        ClassDatumJson {
            label: self.rd.label_string(),
            isogeny,
            w: self.w.reduced_word().iter().map(|i| i + 1).collect(),
            e: self.e,
            nu_bar: self.nu_bar.clone(),
            residual,
            kappa: self.kappa.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::weyl::coxeter_elements;

    fn sc(l: &str) -> RootDatum {
        RootDatum::simply_connected(l).unwrap()
    }

    fn sl2_ramified(r: Rational) -> ClassDatum {
        let rd = sc("A1");
        let mut cd = ClassDatum {
            w: WeylElement::simple(&rd, 0),
            rd,
            e: 2,
            nu_bar: Coweight::zero(1),
            residual: BTreeMap::new(),
            kappa: vec![],
        };
        cd.set_residual(&[1], r);
        cd
    }

    #[test]
    fn validation_examples() {
        let rd = sc("A1");
        let ok = ClassDatum::split(&rd, Coweight::integral(vec![1]), BTreeMap::new()).unwrap();
        assert!(ok.validate().is_ok());

        let mut bad = sl2_ramified(rat(1, 2));
        bad.nu_bar = Coweight::new(vec![1], 2).unwrap();
        assert!(bad.validate().has(ViolationCode::NuNotFixed));

        let third = sl2_ramified(rat(1, 3));
        let rep = third.validate();
        assert!(rep.has(ViolationCode::ResidualDenominator));
        assert!(rep.to_string().contains("residual_denominator"));

        let mut wrong_e = sl2_ramified(rat(1, 2));
        wrong_e.e = 3;
        assert!(wrong_e.validate().has(ViolationCode::OrderMismatch));
    }

    #[test]
    fn residual_domain_and_symmetry() {
        let rd = sc("A2");
        let mut cd =
            ClassDatum::split(&rd, Coweight::integral(vec![1, 0]), BTreeMap::new()).unwrap();
        // ⟨α_1, α_1∨⟩ = 2, so α_1 is off the domain
        cd.set_residual(&[1, 0], int(1));
        assert!(cd.validate().has(ViolationCode::ResidualOutsideDomain));

        let mut asym = ClassDatum::split(&rd, rd.zero(), BTreeMap::new()).unwrap();
        asym.residual.insert(vec![1, 0], int(1));
        asym.residual.insert(vec![-1, 0], int(2));
        assert!(asym.validate().has(ViolationCode::ResidualAsymmetric));
    }

    #[test]
    fn w_invariance_of_residuals() {
        let rd = sc("A2");
        let cox = coxeter_elements(&rd).unwrap().remove(0);
        let mut cd = ClassDatum {
            rd: rd.clone(),
            w: cox,
            e: 3,
            nu_bar: rd.zero(),
            residual: BTreeMap::new(),
            kappa: vec![],
        };
        cd.set_residual(&[1, 0], rat(1, 3));
        assert!(cd.validate().has(ViolationCode::ResidualNotInvariant));
        for a in rd.positive_roots().to_vec() {
            cd.set_residual(&a, rat(1, 3));
        }
        assert!(cd.validate().is_ok(), "{}", cd.validate());
        assert_eq!(disc_valuation(&cd).unwrap(), 2);
        assert_eq!(c_invariant(&cd), 2);
    }

    #[test]
    fn kappa_checks() {
        let rd = RootDatum::adjoint("A1").unwrap();
        let mut cd =
            ClassDatum::split(&rd, Coweight::new(vec![1], 2).unwrap(), BTreeMap::new()).unwrap();
        assert_eq!(cd.kappa, vec![1]);
        assert!(cd.validate().is_ok(), "{}", cd.validate());
        cd.kappa = vec![0];
        assert!(cd.validate().has(ViolationCode::KappaMismatch));
        cd.kappa = vec![0, 0];
        assert!(cd.validate().has(ViolationCode::KappaShape));
        // sc: [] and [0] both denote the trivial class
        let a1 = sc("A1");
        let mut t = ClassDatum::split(&a1, a1.zero(), BTreeMap::new()).unwrap();
        t.kappa = vec![0];
        assert!(t.validate().is_ok());
    }

    #[test]
    fn newton_examples() {
        let rd = sc("A2");
        let nu = Coweight::integral(vec![1, 1]);
        let cd = ClassDatum::split(&rd, nu.clone(), BTreeMap::new()).unwrap();
        assert_eq!(newton_point(&cd).unwrap(), nu);
        let anti =
            ClassDatum::split(&rd, Coweight::integral(vec![-1, -1]), BTreeMap::new()).unwrap();
        assert_eq!(newton_point(&anti).unwrap(), nu);
        assert_eq!(
            newton_point(&sl2_ramified(rat(1, 2))).unwrap(),
            Coweight::zero(1)
        );
    }

    #[test]
    fn disc_examples() {
        let rd = sc("A1");
        for n in 0..4 {
            let mut res = BTreeMap::new();
            res.insert(vec![1], int(n));
            let cd = ClassDatum::split(&rd, rd.zero(), res).unwrap();
            assert_eq!(disc_valuation(&cd).unwrap(), 2 * n);
        }
        // ν̄ = α∨: ⟨2ρ, α∨⟩ = 2
        let cd = ClassDatum::split(&rd, Coweight::integral(vec![1]), BTreeMap::new()).unwrap();
        assert_eq!(disc_valuation(&cd).unwrap(), -2);
        assert_eq!(disc_valuation(&sl2_ramified(rat(1, 2))).unwrap(), 1);
    }

    #[test]
    fn disc_independent_of_weyl_image() {
        let rd = sc("B2");
        let nu = Coweight::integral(vec![1, 0]);
        let mut base = ClassDatum::split(&rd, nu.clone(), BTreeMap::new()).unwrap();
        for a in rd.positive_roots().to_vec() {
            if base.in_domain(&a) {
                base.set_residual(&a, int(3));
            }
        }
        let d0 = disc_valuation(&base).unwrap();
        for w in crate::weyl::enumerate_group(&rd).unwrap() {
            let mut cd = base.clone();
            cd.nu_bar = w.act(&nu);
            cd.residual = base
                .residual
                .iter()
                .map(|(a, v)| (w.act_on_root(&rd, a), *v))
                .collect();
            assert_eq!(disc_valuation(&cd).unwrap(), d0);
        }
    }

    #[test]
    fn c_examples() {
        let a1 = sc("A1");
        let split = ClassDatum::split(&a1, a1.zero(), BTreeMap::new()).unwrap();
        assert_eq!(c_invariant(&split), 0);
        assert_eq!(c_invariant(&sl2_ramified(rat(1, 2))), 1);
    }

    #[test]
    fn levi_examples() {
        let rd = sc("A2");
        let mut res = BTreeMap::new();
        res.insert(vec![1, 0], int(1));
        res.insert(vec![0, 1], int(2));
        res.insert(vec![1, 1], int(3));
        let cd = ClassDatum::split(&rd, rd.zero(), res).unwrap();
        let rel = levi_relation(&cd, &[0].into()).unwrap();
        assert_eq!(rel.r_n, int(5));
        assert_eq!(rel.d_g, int(12));
        assert_eq!(rel.d_m, int(2));
        assert!(rel.holds);
        let full = levi_relation(&cd, &[0, 1].into()).unwrap();
        assert_eq!(full.r_n, int(0));
        assert_eq!(full.d_g, full.d_m);
        let borel = levi_relation(&cd, &BTreeSet::new()).unwrap();
        assert_eq!(borel.d_m, int(0));
        assert_eq!(borel.r_n * 2, borel.d_g);
        assert!(r_n(&sl2_ramified(rat(1, 2)), &BTreeSet::new()).is_err());
    }

    #[test]
    fn levi_relation_with_nonzero_nu() {
        let rd = sc("A2");
        let cd = ClassDatum::split(&rd, Coweight::integral(vec![1, 0]), BTreeMap::new()).unwrap();
        let rel = levi_relation(&cd, &[1].into()).unwrap();
        assert!(rel.holds);
        assert!(!rel.two_rho_n.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"type": "A2", "isogeny": "sc", "w": [1,2], "e": 3,
                    "nu_bar": {"num": [0,0], "den": 1},
                    "residual": [{"root": [1,0], "val": {"num":1,"den":3}},
                                 {"root": [0,1], "val": {"num":1,"den":3}},
                                 {"root": [1,1], "val": {"num":1,"den":3}}],
                    "kappa": [0]}"#;
        let cd = ClassDatum::from_json(s, None).unwrap();
        assert!(cd.validate().is_ok(), "{}", cd.validate());
        assert_eq!(cd.residual_of(&[-1, -1]), rat(1, 3));
        let back = serde_json::to_string(&cd.to_json()).unwrap();
        let cd2 = ClassDatum::from_json(&back, None).unwrap();
        assert_eq!(cd2.w, cd.w);
        assert_eq!(cd2.residual, cd.residual);
        let err = ClassDatum::from_json(r#"{"type": "A2", "w": []}"#, None).unwrap_err();
        assert!(err.to_string().contains("missing field"), "{err}");
        let err = ClassDatum::from_json(
            r#"{"type": "A2", "w": [3], "e": 1, "nu_bar": {"num":[0,0],"den":1}}"#,
            None,
        )
        .unwrap_err();
        assert!(err.to_string().contains("field `w`"));
    }
}
