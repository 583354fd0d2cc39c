use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kv_core::kv::{best_integral_approx, predicted_components, regular_orbit_bound};
use kv_core::multiplicity::{
    multiplicity_freudenthal, multiplicity_kostant, orbit_size, weight_system,
};
use kv_core::rational::fmt_rational;
use kv_core::strata::{polytope_intersection, polytope_member, steinberg_stratum};
use kv_core::verify::run_suite;
use kv_core::vinberg::{nilcone_report, nilcone_strata};
use kv_core::weyl::coxeter_elements;
use kv_core::{
    Bounds, ClassDatum, Coweight, Error, Isogeny, KVReport, RootDatum, Suite, ValuationVector,
    WeylGroup,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "kv-calc",
    version,
    about = "Combinatorics of Kottwitz-Viehmann varieties"
)]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct DatumArgs {
    /// Root system label, e.g. A2, G2, A1xB2.
    #[arg(long = "type")]
    label: String,
    /// sc, adjoint, or custom:<file.json> holding generators in
    /// fundamental-coweight coordinates.
    #[arg(long, default_value = "sc")]
    isogeny: String,
}

#[derive(Args, Clone, Copy)]
struct Format {
    #[arg(long, conflicts_with = "tsv")]
    json: bool,
    #[arg(long)]
    tsv: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weyl group data; `--coxeter` lists the Coxeter elements.
    Weyl {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        coxeter: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Weight multiplicities of the dual group.
    Mult {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: Option<String>,
        #[command(flatten)]
        format: Format,
    },
    /// Dimension report for a class datum.
    Dim {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        format: Format,
    },
    /// Predicted number of irreducible components up to symmetry.
    Components {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        format: Format,
    },
    /// Coweight polytopes and Steinberg-base strata.
    Strata {
        #[command(subcommand)]
        which: StrataCmd,
    },
    /// Strata of the nilpotent cone of the Vinberg monoid.
    Nilcone {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        format: Format,
    },
    /// Run a verification sweep.
    Verify {
        suite: String,
        /// One or more comma-separated labels.
        #[arg(long = "type")]
        label: String,
        #[arg(long, default_value = "sc")]
        isogeny: String,
        #[arg(long, default_value_t = 6)]
        height: i64,
        /// Bound on `<lambda + rho, theta>` for freudenthal-kostant.
        #[arg(long)]
        sweep: Option<i64>,
        /// Largest denominator of rational grid points.
        #[arg(long, default_value_t = 4)]
        den: i64,
    },
}

#[derive(Subcommand)]
enum StrataCmd {
    /// Membership of `--nu` in P_lambda, or the intersection with P_lambda2.
    Polytope {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        nu: Option<String>,
        #[arg(long)]
        lambda2: Option<String>,
        #[command(flatten)]
        format: Format,
    },
    /// Stratum of a valuation vector given by `--cvals` or generic for `--mu`.
    Steinberg {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long, conflicts_with = "mu")]
        cvals: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[command(flatten)]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
    Claim(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Out = Result<String, Failure>;

fn load_datum(d: &DatumArgs) -> Result<RootDatum, Failure> {
    let iso = match d.isogeny.strip_prefix("custom:") {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
            let gens: Vec<Vec<i64>> = serde_json::from_str(&text).map_err(|e| {
                Failure::Usage(format!("{path}: expected a list of generators: {e}"))
            })?;
            Isogeny::Custom(gens)
        }
        None => d.isogeny.parse()?,
    };
    Ok(RootDatum::build(&d.label, iso)?)
}

fn coweight(rd: &RootDatum, s: &str) -> Result<Coweight, Failure> {
    let c: Coweight = s.parse()?;
    rd.check_rank(&c)?;
    Ok(c)
}

fn load_class(path: &PathBuf) -> Result<ClassDatum, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let cd = ClassDatum::from_json(&text, None)?;
    cd.check()?;
    Ok(cd)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn cmd_weyl(d: &DatumArgs, coxeter: bool, f: Format) -> Out {
    let rd = load_datum(d)?;
    if coxeter {
        let cox = coxeter_elements(&rd)?;
        let words: Vec<String> = cox.iter().map(|w| w.word_string()).collect();
        if f.json {
            return Ok(pretty(&json!({ "coxeter": words, "count": cox.len() })));
        }
        let mut s: String = words.iter().map(|w| format!("{w}\n")).collect();
        s += &format!("count\t{}\n", cox.len());
        return Ok(s);
    }
    let group = WeylGroup::new(&rd)?;
    let longest = group.longest().word_string();
    let fg = rd.fundamental_group();
    if f.json {
        return Ok(pretty(&json!({
            "type": rd.label_string(),
            "rank": rd.rank(),
            "order": group.order(),
            "positive_roots": rd.num_positive_roots(),
            "longest": longest,
            "coxeter_count": regular_orbit_bound(&rd)?,
            "fundamental_group": fg.invariant_factors,
        })));
    }
    Ok(format!(
        "type\t{}\nrank\t{}\norder\t{}\npositive_roots\t{}\nlongest\t{}\ncoxeter_count\t{}\nfundamental_group\t{:?}\n",
        rd.label_string(),
        rd.rank(),
        group.order(),
        rd.num_positive_roots(),
        longest,
        regular_orbit_bound(&rd)?,
        fg.invariant_factors,
    ))
}

fn cmd_mult(d: &DatumArgs, lambda: &str, mu: Option<&str>, f: Format) -> Out {
    let rd = load_datum(d)?;
    let lambda = coweight(&rd, lambda)?;
    if let Some(mu) = mu {
        let mu = coweight(&rd, mu)?;
        let m = multiplicity_freudenthal(&rd, &lambda, &mu)?;
        let k = multiplicity_kostant(&rd, &lambda, &mu)?;
        if m != k {
            return Err(Failure::Claim(format!(
                "Freudenthal gives {m}, Kostant gives {k}"
            )));
        }
        if f.json {
            return Ok(pretty(
                &json!({ "lambda": lambda, "mu": mu, "multiplicity": m }),
            ));
        }
        return Ok(format!("{m}\n"));
    }
    let ws = weight_system(&rd, &lambda)?;
    let dim = ws.dimension(&rd);
    let weyl = rd.weyl_dimension(&lambda)?;
    if dim != weyl {
        return Err(Failure::Claim(format!(
            "weight count {dim} differs from Weyl dimension {weyl}"
        )));
    }
    if f.json {
        let rows: Vec<_> = ws
            .entries
            .iter()
            .map(|(mu, m)| json!({ "mu": mu, "multiplicity": m, "orbit": orbit_size(&rd, mu) }))
            .collect();
        return Ok(pretty(
            &json!({ "lambda": lambda, "dimension": dim, "weights": rows }),
        ));
    }
    let mut s = String::from("mu\tmultiplicity\torbit\n");
    for (mu, m) in &ws.entries {
        s += &format!("{mu}\t{m}\t{}\n", orbit_size(&rd, mu));
    }
    s += &format!("dimension\t{dim}\n");
    Ok(s)
}

fn cmd_dim(class: &PathBuf, lambda: &str, f: Format) -> Out {
    let cd = load_class(class)?;
    let lambda = coweight(&cd.rd, lambda)?;
    let rep = KVReport::compute(&cd, &lambda)?;
    if f.json {
        return Ok(serde_json::to_string_pretty(&rep).expect("report serializes") + "\n");
    }
    Ok(rep.to_text())
}

fn cmd_components(class: &PathBuf, lambda: &str, f: Format) -> Out {
    let cd = load_class(class)?;
    let lambda = coweight(&cd.rd, lambda)?;
    let m = predicted_components(&cd, &lambda)?;
    let nu = kv_core::conjugacy::newton_point(&cd)?;
    let mu = best_integral_approx(&cd.rd, &nu, &lambda)?;
    if f.json {
        return Ok(pretty(&json!({ "mu_star": mu, "orbits": m })));
    }
    Ok(format!("mu_star\t{mu}\norbits\t{m}\n"))
}

fn cmd_polytope(
    d: &DatumArgs,
    lambda: &str,
    nu: Option<&str>,
    lambda2: Option<&str>,
    f: Format,
) -> Out {
    let rd = load_datum(d)?;
    let lambda = coweight(&rd, lambda)?;
    match (nu, lambda2) {
        (Some(nu), None) => {
            let nu = coweight(&rd, nu)?;
            let closed = polytope_member(&rd, &nu, &lambda, false)?;
            let open = closed && polytope_member(&rd, &nu, &lambda, true)?;
            if f.json {
                return Ok(pretty(&json!({ "closed": closed, "open": open })));
            }
            Ok(format!("closed\t{closed}\nopen\t{open}\n"))
        }
        (None, Some(l2)) => {
            let l2 = coweight(&rd, l2)?;
            let mu = polytope_intersection(&rd, &lambda, &l2)?;
            if f.json {
                return Ok(pretty(&json!({ "mu": mu })));
            }
            Ok(format!("{mu}\n"))
        }
        _ => Err(Failure::Usage(
            "give exactly one of --nu and --lambda2".into(),
        )),
    }
}

fn cmd_steinberg(
    d: &DatumArgs,
    lambda: &str,
    cvals: Option<&str>,
    mu: Option<&str>,
    f: Format,
) -> Out {
    let rd = load_datum(d)?;
    let lambda = coweight(&rd, lambda)?;
    let v = match (cvals, mu) {
        (Some(c), None) => ValuationVector::from_cvals(&rd, &lambda, c)?,
        (None, Some(mu)) => ValuationVector::generic_split(&rd, &lambda, &coweight(&rd, mu)?)?,
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --cvals and --mu".into(),
            ))
        }
    };
    let s = steinberg_stratum(&rd, &v, &lambda)?;
    if f.json {
        return Ok(pretty(&json!({ "valuations": v, "stratum": s })));
    }
    let b: Vec<String> = v.b_vals.iter().map(fmt_rational).collect();
    let c: Vec<String> = v.c_vals.iter().map(|x| x.to_string()).collect();
    Ok(format!(
        "b\t{}\nc\t{}\nstratum\t{s}\n",
        b.join(","),
        c.join(",")
    ))
}

fn cmd_nilcone(d: &DatumArgs, f: Format) -> Out {
    let rd = load_datum(d)?;
    let strata = nilcone_strata(&rd)?;
    let report = nilcone_report(&rd).map_err(|e| Failure::Claim(e.to_string()))?;
    if f.json {
        let rows: Vec<_> = strata
            .iter()
            .map(|s| {
                let j: Vec<usize> = s.j.iter().map(|i| i + 1).collect();
                json!({ "J": j, "w": s.w.word_string(), "dim": s.dim, "top": s.is_top })
            })
            .collect();
        return Ok(pretty(&json!({ "summary": report, "strata": rows })));
    }
    let mut s = String::from("J\tw\tdim\ttop\n");
    for st in &strata {
        s += &format!(
            "{}\t{}\t{}\t{}\n",
            st.j_string(),
            st.w.word_string(),
            st.dim,
            st.is_top
        );
    }
    s += &format!(
        "# dim G = {}, rank = {}, dim N = {}, top strata = {}, Coxeter elements = {}\n",
        report.dim_group, report.rank, report.dim_nilcone, report.top_strata, report.coxeter_count
    );
    Ok(s)
}

fn cmd_verify(
    suite: &str,
    labels: &str,
    isogeny: &str,
    height: i64,
    sweep: Option<i64>,
    den: i64,
) -> Out {
    let suite: Suite = suite.parse()?;
    let height = match suite {
        Suite::FreudenthalKostant => sweep.unwrap_or(height),
        _ => height,
    };
    let mut out = String::new();
    let mut failed = false;
    for label in labels.split(',') {
        let rd = load_datum(&DatumArgs {
            label: label.trim().into(),
            isogeny: isogeny.into(),
        })?;
        let rep = run_suite(suite, &rd, Bounds { height, den })?;
        failed |= suite.is_assertive() && !rep.passed();
        out += &rep.to_tsv();
    }
    if failed {
        print!("{out}");
        return Err(Failure::Claim(format!("{suite}: FAIL")));
    }
    Ok(out)
}

fn run(cli: Cli) -> Out {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match &cli.cmd {
        Cmd::Weyl {
            datum,
            coxeter,
            format,
        } => cmd_weyl(datum, *coxeter, *format),
        Cmd::Mult {
            datum,
            lambda,
            mu,
            format,
        } => cmd_mult(datum, lambda, mu.as_deref(), *format),
        Cmd::Dim {
            class,
            lambda,
            format,
        } => cmd_dim(class, lambda, *format),
        Cmd::Components {
            class,
            lambda,
            format,
        } => cmd_components(class, lambda, *format),
        Cmd::Strata { which } => match which {
            StrataCmd::Polytope {
                datum,
                lambda,
                nu,
                lambda2,
                format,
            } => cmd_polytope(datum, lambda, nu.as_deref(), lambda2.as_deref(), *format),
            StrataCmd::Steinberg {
                datum,
                lambda,
                cvals,
                mu,
                format,
            } => cmd_steinberg(datum, lambda, cvals.as_deref(), mu.as_deref(), *format),
        },
        Cmd::Nilcone { datum, format } => cmd_nilcone(datum, *format),
        Cmd::Verify {
            suite,
            label,
            isogeny,
            height,
            sweep,
            den,
        } => cmd_verify(suite, label, isogeny, *height, *sweep, *den),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_invariant_failure() { 2 } else { 1 })
        }
        Err(Failure::Claim(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
