//! Bounded sweeps checking the closed-form claims against independent
//! oracles. Each suite yields rows plus a list of failures; rows are
//! produced in parallel and emitted in a fixed order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::conjugacy::{levi_relation, r_gamma, ClassDatum};
use crate::error::{Error, Result};
use crate::kv::{
    best_integral_approx, chen_zhu_approx, dimension, regular_orbit_bound, unramified_dimension,
};
use crate::linalg;
use crate::multiplicity::{
    dominant_below, multiplicity_kostant, orbit_size, sweep_lambdas, weight_system,
};
use crate::rational::{fmt_rational, int, Coweight, Rational};
use crate::rootdata::RootDatum;
use crate::strata::{polytope_intersection, polytope_member};
use crate::vinberg::{nilcone_report, nilcone_strata};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    LowerBound,
    Nilcone,
    FreudenthalKostant,
    DimensionConsistency,
    StratificationDisjoint,
    ChenZhuCompare,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::LowerBound,
        Suite::Nilcone,
        Suite::FreudenthalKostant,
        Suite::DimensionConsistency,
        Suite::StratificationDisjoint,
        Suite::ChenZhuCompare,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::LowerBound => "lower-bound",
            Suite::Nilcone => "nilcone",
            Suite::FreudenthalKostant => "freudenthal-kostant",
            Suite::DimensionConsistency => "dimension-consistency",
            Suite::StratificationDisjoint => "stratification-disjoint",
            Suite::ChenZhuCompare => "chen-zhu-compare",
        }
    }

    /// Report-only suites never fail.
    pub fn is_assertive(self) -> bool {
        self != Suite::ChenZhuCompare
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown verify suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// `⟨ρ, λ⟩` bound; for `freudenthal-kostant` the bound on `⟨λ + ρ∨, θ⟩`.
    pub height: i64,
    /// Largest denominator of rational grid points.
    pub den: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { height: 6, den: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub label: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, rd: &RootDatum, header: &[&str]) -> Self {
        SuiteReport {
            suite,
            label: format!("{} {}", rd.label_string(), rd.isogeny()),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: vec![],
            failures: vec![],
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `PASS`, `FAIL`, or `REPORT` for non-assertive suites.
    pub fn verdict(&self) -> &'static str {
        if !self.suite.is_assertive() {
            "REPORT"
        } else if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }

    /// Header, rows, failure lines prefixed `#`, and the verdict.
    pub fn to_tsv(&self) -> String {
        let mut s = format!("# {} {}\n", self.suite, self.label);
        s += &self.header.join("\t");
        s.push('\n');
        for r in &self.rows {
            s += &r.join("\t");
            s.push('\n');
        }
        for f in &self.failures {
            s += &format!("# failure: {f}\n");
        }
        s += self.verdict();
        s.push('\n');
        s
    }
}

/// Turn invariant failures into a failure line; propagate everything else.
fn soft<T>(
    r: Result<T>,
    failures: &mut Vec<String>,
    ctx: impl FnOnce() -> String,
) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_invariant_failure() => {
            failures.push(format!("{}: {e}", ctx()));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn pass_str(b: bool) -> String {
    if b { "pass" } else { "FAIL" }.to_string()
}

fn cw_str(c: &Coweight) -> String {
    format!("({c})")
}

/// Dominant coweights of the cocharacter lattice with `⟨ρ, λ⟩ ≤ h`, sorted
/// by height and then by fundamental coordinates.
pub fn dominant_by_height(rd: &RootDatum, h: Rational) -> Vec<Coweight> {
    let r = rd.rank();
    let hts: Vec<Rational> = (0..r)
        .map(|i| rd.rho_pairing(&rd.fundamental_coweight(i)))
        .collect();
    let mut out = vec![];
    let mut n = vec![0i64; r];
    fn rec(
        rd: &RootDatum,
        hts: &[Rational],
        k: usize,
        budget: Rational,
        n: &mut Vec<i64>,
        out: &mut Vec<Coweight>,
    ) {
        if k == hts.len() {
            let l = rd.integral_lattice_point(n);
            if rd.in_lattice(&l) {
                out.push(l);
            }
            return;
        }
        let mut x = 0;
        while hts[k] * x <= budget {
            n[k] = x;
            rec(rd, hts, k + 1, budget - hts[k] * x, n, out);
            x += 1;
        }
        n[k] = 0;
    }
    rec(rd, &hts, 0, h, &mut n, &mut out);
    out.sort_by_cached_key(|l| (rd.rho_pairing(l), rd.dominance_values(l)));
    out
}

/// Dominant rational coweights whose simple-coroot coordinates have
/// denominators at most `den`, with `⟨ρ, ν⟩ ≤ h`.
pub fn rational_grid(rd: &RootDatum, den: i64, h: Rational) -> Vec<Coweight> {
    let r = rd.rank();
    let mut set = BTreeSet::new();
    for d in 1..=den.max(1) {
        let top = (h * d).floor().to_integer().max(0);
        let mut n = vec![0i64; r];
        fn rec(
            rd: &RootDatum,
            k: usize,
            left: i64,
            d: i64,
            n: &mut Vec<i64>,
            set: &mut BTreeSet<Coweight>,
        ) {
            if k == n.len() {
                let c = Coweight::new(n.clone(), d).expect("positive denominator");
                if rd.is_dominant(&c) {
                    set.insert(c);
                }
                return;
            }
            for x in 0..=left {
                n[k] = x;
                rec(rd, k + 1, left - x, d, n, set);
            }
            n[k] = 0;
        }
        rec(rd, 0, top, d, &mut n, &mut set);
    }
    let mut v: Vec<Coweight> = set.into_iter().collect();
    v.sort_by_cached_key(|c| (c.height(), c.coords()));
    v
}

/// Compare `polytope_intersection` against grid membership: every grid
/// point lies in `P_{λ₁} ∩ P_{λ₂}` iff it lies in `P_μ`. Returns `μ` and the
/// mismatching points.
pub fn intersection_vs_grid(
    rd: &RootDatum,
    l1: &Coweight,
    l2: &Coweight,
    den: i64,
) -> Result<(Coweight, Vec<Coweight>)> {
    let mu = polytope_intersection(rd, l1, l2)?;
    let h = rd.rho_pairing(l1).max(rd.rho_pairing(l2));
    let bad = rational_grid(rd, den, h)
        .into_iter()
        .filter(|nu| {
            let both = rd.leq_q(nu, l1) && rd.leq_q(nu, l2);
            both != rd.leq_q(nu, &mu)
        })
        .collect();
    Ok((mu, bad))
}

pub fn run_suite(suite: Suite, rd: &RootDatum, bounds: Bounds) -> Result<SuiteReport> {
    match suite {
        Suite::LowerBound => lower_bound(rd, bounds.height),
        Suite::Nilcone => nilcone(rd),
        Suite::FreudenthalKostant => freudenthal_kostant(rd, bounds.height),
        Suite::DimensionConsistency => dimension_consistency(rd, bounds.height),
        Suite::StratificationDisjoint => stratification_disjoint(rd, bounds.height, bounds.den),
        Suite::ChenZhuCompare => chen_zhu_compare(rd, bounds.height, bounds.den),
    }
}

/// `m_{λμ} ≥ |Cox(W,S)|` for `λ` regular, `λ − μ` strictly positive.
pub fn lower_bound(rd: &RootDatum, height: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        Suite::LowerBound,
        rd,
        &["lambda", "mu", "m", "bound", "pass"],
    );
    let bound = regular_orbit_bound(rd)?;
    let lambdas: Vec<Coweight> = dominant_by_height(rd, int(height))
        .into_iter()
        .filter(|l| rd.dominance_values(l).iter().all(|q| q > &Rational::zero()))
        .collect();
    let per: Vec<Vec<(Coweight, Coweight, u64)>> = lambdas
        .par_iter()
        .map(|l| {
            let ws = weight_system(rd, l)?;
            Ok(dominant_below(rd, l)?
                .into_iter()
                .filter(|mu| l.sub(mu).is_strictly_positive())
                .map(|mu| {
                    let m = ws.multiplicity(&mu);
                    (l.clone(), mu, m)
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    for (l, mu, m) in per.into_iter().flatten() {
        let ok = m >= bound;
        if !ok {
            rep.failures
                .push(format!("m = {m} < {bound} for lambda = ({l}), mu = ({mu})"));
        }
        rep.rows.push(vec![
            cw_str(&l),
            cw_str(&mu),
            m.to_string(),
            bound.to_string(),
            pass_str(ok),
        ]);
    }
    Ok(rep)
}

pub fn nilcone(rd: &RootDatum) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Nilcone, rd, &["J", "w", "length", "dim", "top"]);
    for s in nilcone_strata(rd)? {
        rep.rows.push(vec![
            s.j_string(),
            s.w.word_string(),
            s.w.length().to_string(),
            s.dim.to_string(),
            s.is_top.to_string(),
        ]);
    }
    soft(nilcone_report(rd), &mut rep.failures, || rd.label_string())?;
    Ok(rep)
}

/// Freudenthal against Kostant for all dominant pairs, plus the dimension
/// sum `Σ m·|Wμ| = dim V(λ)`.
pub fn freudenthal_kostant(rd: &RootDatum, sweep: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        Suite::FreudenthalKostant,
        rd,
        &["lambda", "mu", "freudenthal", "kostant", "pass"],
    );
    type Block = (Vec<(Coweight, u64, u64)>, Coweight, u64, u64);
    let blocks: Vec<Block> = sweep_lambdas(rd, sweep)
        .par_iter()
        .map(|l| {
            let ws = weight_system(rd, l)?;
            let mut rows = vec![];
            let mut total = 0u64;
            for mu in dominant_below(rd, l)? {
                let f = ws.multiplicity(&mu);
                let k = multiplicity_kostant(rd, l, &mu)?;
                total += f * orbit_size(rd, &mu);
                rows.push((mu, f, k));
            }
            Ok((rows, l.clone(), total, rd.weyl_dimension(l)?))
        })
        .collect::<Result<_>>()?;
    for (rows, l, total, weyl) in blocks {
        for (mu, f, k) in rows {
            if f != k {
                rep.failures
                    .push(format!("lambda = ({l}), mu = ({mu}): {f} != {k}"));
            }
            rep.rows.push(vec![
                cw_str(&l),
                cw_str(&mu),
                f.to_string(),
                k.to_string(),
                pass_str(f == k),
            ]);
        }
        if total != weyl {
            rep.failures.push(format!(
                "lambda = ({l}): weight count {total} != Weyl dimension {weyl}"
            ));
        }
        rep.rows.push(vec![
            cw_str(&l),
            "sum".into(),
            total.to_string(),
            weyl.to_string(),
            pass_str(total == weyl),
        ]);
    }
    Ok(rep)
}

/// Deterministic residual data on the positive roots orthogonal to `μ`.
pub fn residual_pattern(rd: &RootDatum, mu: &Coweight, salt: i64) -> BTreeMap<Vec<i64>, Rational> {
    rd.positive_roots()
        .iter()
        .filter(|a| rd.pair_root(a, mu).is_zero())
        .enumerate()
        .map(|(k, a)| {
            (
                a.clone(),
                int((a.iter().sum::<i64>() + k as i64 + salt).rem_euclid(3)),
            )
        })
        .collect()
}

fn subsets(r: usize) -> Vec<BTreeSet<usize>> {
    (0u32..(1 << r))
        .map(|m| (0..r).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Split classes `ν = μ`: the general dimension formula, the unramified one
/// and `⟨ρ, λ − μ⟩ + r(γ)` agree; `d_G = d_M + 2r_N − ⟨2ρ_N, ν⟩` for
/// every standard Levi.
pub fn dimension_consistency(rd: &RootDatum, height: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        Suite::DimensionConsistency,
        rd,
        &[
            "kind",
            "lambda_or_levi",
            "mu",
            "value_a",
            "value_b",
            "value_c",
            "pass",
        ],
    );
    let all = dominant_by_height(rd, int(height));
    let levis = subsets(rd.rank());
    type Out = (Vec<Vec<String>>, Vec<String>);
    let per: Vec<Out> = all
        .par_iter()
        .enumerate()
        .map(|(k, mu)| {
            let mut rows = vec![];
            let mut fails = vec![];
            let res = residual_pattern(rd, mu, k as i64);
            let cd = ClassDatum::split(rd, mu.clone(), res.clone())?;
            for l in all.iter().filter(|l| rd.leq_integral(mu, l)) {
                let ctx = || format!("lambda = ({l}), mu = ({mu})");
                let Some(a) = soft(dimension(&cd, l), &mut fails, ctx)? else {
                    continue;
                };
                let Some((b, _)) = soft(unramified_dimension(rd, mu, &res, l), &mut fails, ctx)?
                else {
                    continue;
                };
                let c = rd.rho_pairing(&l.sub(mu)) + r_gamma(&cd);
                let ok = Rational::from_integer(a) == c && a == b;
                if !ok {
                    fails.push(format!("{}: {a}, {b}, {c}", ctx()));
                }
                rows.push(vec![
                    "dim".into(),
                    cw_str(l),
                    cw_str(mu),
                    a.to_string(),
                    b.to_string(),
                    fmt_rational(&c),
                    pass_str(ok),
                ]);
            }
            for levi in &levis {
                let lr = levi_relation(&cd, levi)?;
                let name: Vec<String> = levi.iter().map(|i| (i + 1).to_string()).collect();
                if !lr.holds {
                    fails.push(format!("Levi {{{}}}, mu = ({mu}): {lr:?}", name.join(",")));
                }
                rows.push(vec![
                    "levi".into(),
                    format!("{{{}}}", name.join(",")),
                    cw_str(mu),
                    fmt_rational(&lr.d_g),
                    fmt_rational(&(lr.d_m + lr.r_n * 2)),
                    fmt_rational(&lr.two_rho_n),
                    pass_str(lr.holds),
                ]);
            }
            Ok((rows, fails))
        })
        .collect::<Result<_>>()?;
    for (rows, fails) in per {
        rep.rows.extend(rows);
        rep.failures.extend(fails);
    }
    Ok(rep)
}

/// Height slack guaranteeing that every `λ` with `ν ∈ P_λ°` is enumerated:
/// `λ` lies below `Σ ⌈n_i⌉ ω_i∨` shifted into its class.
fn candidate_slack(rd: &RootDatum) -> Rational {
    let det: i64 = linalg::smith(rd.cartan())
        .0
        .iter()
        .map(|d| d.abs())
        .product();
    let s: Rational = (0..rd.rank())
        .map(|i| rd.rho_pairing(&rd.fundamental_coweight(i)))
        .sum();
    s * det
}

/// Every grid point lies in exactly one `P_λ°` within each `π₁` class.
pub fn stratification_disjoint(rd: &RootDatum, height: i64, den: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        Suite::StratificationDisjoint,
        rd,
        &["nu", "class", "lambdas", "count", "pass"],
    );
    let cands = dominant_by_height(rd, int(height) + candidate_slack(rd));
    let mut classes: BTreeMap<Vec<i64>, Vec<Coweight>> = BTreeMap::new();
    for l in cands {
        classes.entry(rd.project(&l)?).or_default().push(l);
    }
    let grid = rational_grid(rd, den, int(height));
    type Out = (Vec<Vec<String>>, Vec<String>);
    let per: Vec<Out> = grid
        .par_iter()
        .map(|nu| {
            let mut rows = vec![];
            let mut fails = vec![];
            for (kappa, ls) in &classes {
                let mut hits = vec![];
                for l in ls.iter().filter(|l| rd.leq_q(nu, l)) {
                    let ctx = || format!("nu = ({nu}), lambda = ({l})");
                    if soft(polytope_member(rd, nu, l, true), &mut fails, ctx)? == Some(true) {
                        hits.push(l.clone());
                    }
                }
                let ok = hits.len() == 1;
                let class = format!("{kappa:?}");
                if !ok {
                    fails.push(format!(
                        "nu = ({nu}) in class {class}: {} open strata",
                        hits.len()
                    ));
                }
                let names: Vec<String> = hits.iter().map(cw_str).collect();
                rows.push(vec![
                    cw_str(nu),
                    class,
                    names.join(" "),
                    hits.len().to_string(),
                    pass_str(ok),
                ]);
            }
            Ok((rows, fails))
        })
        .collect::<Result<_>>()?;
    for (rows, fails) in per {
        rep.rows.extend(rows);
        rep.failures.extend(fails);
    }
    Ok(rep)
}

/// `μ*` against the maximal-below approximation; reports only.
pub fn chen_zhu_compare(rd: &RootDatum, height: i64, den: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        Suite::ChenZhuCompare,
        rd,
        &["lambda", "nu", "mu_star", "chen_zhu", "relation"],
    );
    let lambdas = dominant_by_height(rd, int(height));
    let grid = rational_grid(rd, den, int(height));
    let per: Vec<Vec<Vec<String>>> = lambdas
        .par_iter()
        .map(|l| {
            let mut rows = vec![];
            for nu in grid.iter().filter(|nu| rd.leq_q(nu, l)) {
                let star = match best_integral_approx(rd, nu, l) {
                    Ok(m) => cw_str(&m),
                    Err(e) if e.is_invariant_failure() => format!("error: {e}"),
                    Err(e) => return Err(e),
                };
                let cz = chen_zhu_approx(rd, nu, l)?;
                let (czs, rel) = match &cz.mu {
                    Some(m) if cw_str(m) == star => (cw_str(m), "equal"),
                    Some(m) => (cw_str(m), "different"),
                    None if cz.maximal.is_empty() => ("-".into(), "absent"),
                    None => {
                        let v: Vec<String> = cz.maximal.iter().map(cw_str).collect();
                        (v.join(" "), "not_unique")
                    }
                };
                rows.push(vec![cw_str(l), cw_str(nu), star, czs, rel.into()]);
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    rep.rows = per.into_iter().flatten().collect();
    Ok(rep)
}
