//! Acceptance sweeps. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kv_core::conjugacy::levi_relation;
use kv_core::kv::{best_integral_approx, dimension, extended_disc_valuation, nonempty};
use kv_core::multiplicity::dominant_below;
use kv_core::rational::{int, rat};
use kv_core::strata::steinberg_stratum;
use kv_core::verify::{self, dominant_by_height, rational_grid};
use kv_core::vinberg::nilcone_report;
use kv_core::weyl::{coxeter_elements, coxeter_elements_brute};
use kv_core::{ClassDatum, Coweight, Error, Rational, RootDatum, ValuationVector, WeylElement};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn sc(l: &str) -> RootDatum {
    RootDatum::simply_connected(l).unwrap()
}

fn adj(l: &str) -> RootDatum {
    RootDatum::adjoint(l).unwrap()
}

fn e(err: Error) -> String {
    err.to_string()
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    if t.elapsed() > limit {
        Err(format!("{what} took {:.1?}, limit {limit:?}", t.elapsed()))
    } else {
        Ok(())
    }
}

fn coxeter_counts() -> Outcome {
    let t = Instant::now();
    let labels = [
        "A1", "A2", "A3", "A4", "A5", "B2", "B3", "C3", "D4", "G2", "F4", "A1xA1", "A2xB2",
        "A1xG2", "A3xA1", "B2xB2", "A1xA1xA1", "G2xA2",
    ];
    for l in labels {
        let rd = sc(l);
        let brute = coxeter_elements_brute(&rd).map_err(e)?.len() as u64;
        let per_factor = coxeter_elements(&rd).map_err(e)?.len() as u64;
        let formula: u64 = rd.label().iter().map(|t| 1u64 << (t.rank() - 1)).product();
        if brute != formula || per_factor != formula {
            return Err(format!(
                "{l}: brute {brute}, per-factor {per_factor}, 2^(r-1) {formula}"
            ));
        }
    }
    within(t, Duration::from_secs(30), "enumeration")?;
    Ok(format!("{} types in {:.1?}", labels.len(), t.elapsed()))
}

/// Freudenthal/Kostant rows and dimension-sum rows from one sweep.
fn multiplicity_sweep() -> Result<(Outcome, Outcome), String> {
    let t = Instant::now();
    let mut pairs = 0;
    let mut sums = 0;
    let mut bad_pairs = vec![];
    let mut bad_sums = vec![];
    for l in ["A1", "A2", "B2", "G2"] {
        let rep = verify::freudenthal_kostant(&adj(l), 12).map_err(e)?;
        for r in &rep.rows {
            let ok = r[4] == "pass";
            if r[1] == "sum" {
                sums += 1;
                if !ok {
                    bad_sums.push(format!("{l} {r:?}"));
                }
            } else {
                pairs += 1;
                if !ok {
                    bad_pairs.push(format!("{l} {r:?}"));
                }
            }
        }
    }
    let time = within(t, Duration::from_secs(120), "sweep");
    let fk = if !bad_pairs.is_empty() {
        Err(format!(
            "{} mismatches, first {}",
            bad_pairs.len(),
            bad_pairs[0]
        ))
    } else {
        time.clone()
            .map(|_| format!("{pairs} dominant pairs agree in {:.1?}", t.elapsed()))
    };
    let ds = if !bad_sums.is_empty() {
        Err(format!(
            "{} mismatches, first {}",
            bad_sums.len(),
            bad_sums[0]
        ))
    } else {
        time.map(|_| format!("{sums} highest weights"))
    };
    Ok((fk, ds))
}

fn lower_bound() -> Outcome {
    let t = Instant::now();
    let mut rows = 0;
    for (l, cox) in [("A2", 2), ("B2", 2), ("G2", 2), ("A3", 4)] {
        let rep = verify::lower_bound(&adj(l), 10).map_err(e)?;
        if let Some(r) = rep.rows.first() {
            if r[3] != cox.to_string() {
                return Err(format!("{l}: bound {} expected {cox}", r[3]));
            }
        } else {
            return Err(format!("{l}: empty sweep"));
        }
        if !rep.passed() {
            return Err(format!("{l}: {}", rep.failures[0]));
        }
        rows += rep.rows.len();
    }
    within(t, Duration::from_secs(300), "sweep")?;
    Ok(format!("{rows} pairs in {:.1?}", t.elapsed()))
}

fn nilcone() -> Outcome {
    let t = Instant::now();
    let mut out = vec![];
    for l in ["A1", "A2", "B2", "G2", "A3"] {
        let rep = nilcone_report(&sc(l)).map_err(e)?;
        out.push(format!("{l}:{}x{}", rep.dim_nilcone, rep.top_strata));
    }
    within(t, Duration::from_secs(60), "strata")?;
    Ok(out.join(" "))
}

fn by_class(rd: &RootDatum, h: i64) -> Vec<Vec<Coweight>> {
    let mut m: BTreeMap<Vec<i64>, Vec<Coweight>> = BTreeMap::new();
    for l in dominant_by_height(rd, int(h)) {
        m.entry(rd.project(&l).unwrap()).or_default().push(l);
    }
    m.into_values().collect()
}

fn polytope_pairs(rng: &mut ChaCha8Rng) -> Outcome {
    let mut checked = 0;
    for l in ["A2", "B2"] {
        let rd = adj(l);
        let classes = by_class(&rd, 8);
        for _ in 0..100 {
            let cls = classes.choose(rng).unwrap();
            let l1 = cls.choose(rng).unwrap();
            let l2 = cls.choose(rng).unwrap();
            let (mu, bad) = verify::intersection_vs_grid(&rd, l1, l2, 4).map_err(e)?;
            if let Some(p) = bad.first() {
                return Err(format!("{l}: ({l1}) & ({l2}) -> ({mu}) disagrees at ({p})"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs"))
}

fn disjointness() -> Outcome {
    let mut pts = 0;
    for rd in [sc("A2"), adj("A2")] {
        let rep = verify::stratification_disjoint(&rd, 6, 6).map_err(e)?;
        if !rep.passed() {
            return Err(format!("{}: {}", rep.label, rep.failures[0]));
        }
        pts += rep.rows.len();
    }
    Ok(format!("{pts} (point, class) checks"))
}

fn steinberg(rng: &mut ChaCha8Rng) -> Outcome {
    let data = [sc("A1"), adj("A1"), sc("A2"), adj("A2")];
    for k in 0..100 {
        let rd = &data[k % data.len()];
        let lambdas = dominant_by_height(rd, int(6));
        let lambda = lambdas.choose(rng).unwrap();
        let below = dominant_below(rd, lambda).map_err(e)?;
        let mu = below.choose(rng).unwrap();
        let v = ValuationVector::generic_split(rd, lambda, mu).map_err(e)?;
        let s = steinberg_stratum(rd, &v, lambda).map_err(e)?;
        let b = best_integral_approx(rd, mu, lambda).map_err(e)?;
        if &s != mu || &b != mu {
            return Err(format!(
                "{}: lambda ({lambda}), mu ({mu}): stratum ({s}), best ({b})",
                rd.label_string()
            ));
        }
    }
    Ok("100 cases".into())
}

fn random_residual(
    rd: &RootDatum,
    nu: &Coweight,
    rng: &mut ChaCha8Rng,
    max: i64,
) -> BTreeMap<Vec<i64>, Rational> {
    rd.positive_roots()
        .iter()
        .filter(|a| rd.pair_root(a, nu) == int(0))
        .map(|a| (a.clone(), int(rng.gen_range(0..=max))))
        .collect()
}

fn coherence(rng: &mut ChaCha8Rng) -> Outcome {
    let mut dims = 0;
    for rd in [sc("A1"), adj("A1"), sc("A2"), adj("A2"), sc("B2"), sc("G2")] {
        let rep = verify::dimension_consistency(&rd, 6).map_err(e)?;
        if !rep.passed() {
            return Err(format!("{}: {}", rep.label, rep.failures[0]));
        }
        dims += rep.rows.iter().filter(|r| r[0] == "dim").count();
    }
    let mut levis = 0;
    for l in ["A2", "A3"] {
        let rd = sc(l);
        let subsets: Vec<BTreeSet<usize>> = (0u32..(1 << rd.rank()))
            .map(|m| (0..rd.rank()).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        for _ in 0..50 {
            let nu = rd.zero();
            let res = random_residual(&rd, &nu, rng, 5);
            let cd = ClassDatum::split(&rd, nu, res).map_err(e)?;
            for i in &subsets {
                let lr = levi_relation(&cd, i).map_err(e)?;
                if lr.d_g != lr.d_m + lr.r_n * 2 || lr.two_rho_n != int(0) {
                    return Err(format!("{l} Levi {i:?}: {lr:?}"));
                }
                levis += 1;
            }
        }
    }
    Ok(format!("{dims} split dimensions, {levis} Levi checks"))
}

/// Ramified examples: the SL2 anisotropic class and A2 Coxeter classes.
fn ramified_classes() -> Vec<ClassDatum> {
    let mut out = vec![];
    let a1 = sc("A1");
    let mut cd = ClassDatum {
        rd: a1.clone(),
        w: WeylElement::simple(&a1, 0),
        e: 2,
        nu_bar: Coweight::new(vec![0], 1).unwrap(),
        residual: BTreeMap::new(),
        kappa: vec![],
    };
    cd.set_residual(&[1], rat(1, 2));
    out.push(cd);
    let a2 = sc("A2");
    for r in [rat(1, 3), rat(2, 3), rat(4, 3)] {
        let mut cd = ClassDatum {
            rd: a2.clone(),
            w: WeylElement::from_word(&a2, &[0, 1]).unwrap(),
            e: 3,
            nu_bar: a2.zero(),
            residual: BTreeMap::new(),
            kappa: vec![],
        };
        for a in a2.positive_roots().to_vec() {
            cd.set_residual(&a, r);
        }
        out.push(cd);
    }
    out
}

fn degenerate(rng: &mut ChaCha8Rng) -> Outcome {
    let mut zero = 0;
    let mut seen = 0;
    let data = [
        sc("A1"),
        adj("A1"),
        sc("A2"),
        adj("A2"),
        sc("B2"),
        adj("B2"),
        sc("G2"),
    ];
    let mut classes = ramified_classes();
    for k in 0..300 {
        let rd = &data[k % data.len()];
        let lambdas = dominant_by_height(rd, int(5));
        let nu = lambdas.choose(rng).unwrap().clone();
        let res = random_residual(rd, &nu, rng, 1);
        classes.push(ClassDatum::split(rd, nu, res).map_err(e)?);
    }
    for cd in &classes {
        for lambda in dominant_by_height(&cd.rd, int(5)) {
            if !nonempty(cd, &lambda).map_err(e)? {
                continue;
            }
            seen += 1;
            let dp = extended_disc_valuation(cd, &lambda).map_err(e)?;
            if dp == int(0) {
                zero += 1;
                let dim = dimension(cd, &lambda).map_err(e)?;
                if dim != 0 || !cd.is_split() || cd.nu_bar != lambda {
                    return Err(format!("d_+ = 0 at lambda ({lambda}) but dim {dim}"));
                }
            }
        }
    }
    if zero == 0 {
        return Err("no d_+ = 0 case was generated".into());
    }
    let mut approx = 0;
    for rd in [adj("A1"), adj("A2"), adj("B2"), adj("G2"), sc("A3")] {
        let grid = rational_grid(&rd, 4, int(5));
        for lambda in dominant_by_height(&rd, int(5)) {
            for nu in grid.iter().filter(|nu| rd.leq_q(nu, &lambda)) {
                best_integral_approx(&rd, nu, &lambda).map_err(e)?;
                approx += 1;
            }
        }
    }
    Ok(format!(
        "{zero} of {seen} nonempty cases with d_+ = 0; {approx} approximations unique"
    ))
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b56);
    let (fk, ds) = match multiplicity_sweep() {
        Ok(p) => p,
        Err(m) => (Err(m.clone()), Err(m)),
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("coxeter counts", coxeter_counts()),
        ("freudenthal = kostant", fk),
        ("dimension sums", ds),
        ("coxeter lower bound", lower_bound()),
        ("nilpotent cone strata", nilcone()),
        ("polytope intersection", polytope_pairs(&mut rng)),
        ("stratification disjointness", disjointness()),
        ("steinberg = best approximation", steinberg(&mut rng)),
        ("dimension coherence", coherence(&mut rng)),
        ("degenerate cases", degenerate(&mut rng)),
    ];
    let mut failed = 0;
    for (k, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("PASS {:>2} {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
