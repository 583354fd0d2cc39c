use std::path::PathBuf;
use std::process::{Command, Output};

use kv_core::KVReport;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kv-calc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn coxeter_words_a2() {
    let o = run(&["weyl", "--type", "A2", "--coxeter"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "s1 s2\ns2 s1\ncount\t2\n");
}

#[test]
fn weyl_summary() {
    let o = run(&["weyl", "--type", "B3"]);
    let s = stdout(&o);
    assert!(s.contains("order\t48\n"), "{s}");
    assert!(s.contains("coxeter_count\t4\n"), "{s}");
}

#[test]
fn custom_isogeny_file() {
    let iso = format!("custom:{}", data("so3_su2.json"));
    let o = run(&["weyl", "--type", "A1xA1", "--isogeny", &iso]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("fundamental_group\t[2]"));
}

#[test]
fn multiplicities() {
    let o = run(&["mult", "--type", "A2", "--lambda", "2,2", "--mu", "1,1"]);
    assert_eq!(stdout(&o), "2\n");
    let o = run(&["mult", "--type", "A2", "--lambda", "1,1"]);
    let s = stdout(&o);
    assert!(s.contains("0,0\t2\t1\n"), "{s}");
    assert!(s.ends_with("dimension\t8\n"), "{s}");
}

#[test]
fn non_dominant_lambda_is_usage_error() {
    let o = run(&["mult", "--type", "A2", "--lambda", "1,-1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dim_split_class() {
    let o = run(&["dim", "--class", &data("split_a2.json"), "--lambda", "1,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("dimension\t3\n") && s.contains("d\t2\n"), "{s}");
}

#[test]
fn dim_json_round_trips() {
    let o = run(&[
        "dim",
        "--class",
        &data("coxeter_a2.json"),
        "--lambda",
        "1,1",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rep: KVReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((rep.d, rep.c, rep.dimension), (2, 2, Some(2)));
    let again: KVReport = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
    assert_eq!(rep, again);
}

#[test]
fn invalid_class_names_violation() {
    let o = run(&["dim", "--class", &data("bad.json"), "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("nu_not_fixed_by_w"), "{}", stderr(&o));
}

#[test]
fn malformed_class_names_field() {
    let o = run(&["dim", "--class", &data("malformed.json"), "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("colour"), "{}", stderr(&o));
}

#[test]
fn components() {
    let o = run(&[
        "components",
        "--class",
        &data("split_a2.json"),
        "--lambda",
        "2,2",
    ]);
    assert_eq!(stdout(&o), "mu_star\t0,0\norbits\t3\n");
}

#[test]
fn polytope_commands() {
    let o = run(&[
        "strata",
        "polytope",
        "--type",
        "A2",
        "--isogeny",
        "adjoint",
        "--lambda",
        "2,1",
        "--lambda2",
        "1,2",
    ]);
    assert_eq!(stdout(&o), "1,1\n");
    let o = run(&[
        "strata", "polytope", "--type", "A1", "--lambda", "2", "--nu", "3/2",
    ]);
    assert_eq!(stdout(&o), "closed\ttrue\nopen\ttrue\n");
    let o = run(&[
        "strata", "polytope", "--type", "A1", "--lambda", "2", "--nu", "1",
    ]);
    assert_eq!(stdout(&o), "closed\ttrue\nopen\tfalse\n");
}

#[test]
fn steinberg_commands() {
    let o = run(&[
        "strata",
        "steinberg",
        "--type",
        "A1",
        "--lambda",
        "1",
        "--cvals",
        "inf",
    ]);
    assert!(stdout(&o).ends_with("stratum\t0\n"), "{}", stdout(&o));
    let o = run(&[
        "strata",
        "steinberg",
        "--type",
        "A2",
        "--lambda",
        "2,2",
        "--mu",
        "1,1",
    ]);
    assert!(stdout(&o).ends_with("stratum\t1,1\n"), "{}", stdout(&o));
}

#[test]
fn nilcone_a2() {
    let o = run(&["nilcone", "--type", "A2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.ends_with("\ttrue")).count(), 2);
    assert!(s.contains("dim N = 6"));
}

#[test]
fn verify_freudenthal_kostant_b2() {
    let o = run(&[
        "verify",
        "freudenthal-kostant",
        "--type",
        "B2",
        "--height",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS\n"));
}

#[test]
fn verify_lower_bound_tsv() {
    let o = run(&["verify", "lower-bound", "--type", "G2", "--height", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().nth(1).unwrap() == "lambda\tmu\tm\tbound\tpass");
    assert!(s.ends_with("PASS\n"));
}

#[test]
fn verify_several_types() {
    let o = run(&["verify", "nilcone", "--type", "A1,A2,B2,G2,A3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| *l == "PASS").count(), 5);
}

#[test]
fn chen_zhu_is_report_only() {
    let o = run(&[
        "verify",
        "chen-zhu-compare",
        "--type",
        "A2",
        "--height",
        "3",
        "--den",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("REPORT\n"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "stratification-disjoint",
        "--type",
        "A2",
        "--isogeny",
        "adjoint",
        "--height",
        "3",
        "--jobs",
        "3",
    ];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(
        run(&["verify", "nope", "--type", "A2"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["weyl", "--type", "Q7"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
