use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_delpezzo"))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out: Output = bin().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn lines_smooth_and_nodal() {
    let (code, out, _) = run(&["lines", "--mode", "smooth"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("mode: smooth\n27 lines\n"));
    assert_eq!(out.lines().filter(|l| l.contains(" degree 10: ")).count(), 27);
    assert!(out.contains("45 tritangent triples"));

    let (code, out, _) = run(&["lines", "--mode", "nodal"]);
    assert_eq!(code, 0);
    assert!(out.contains("6 curves meet C"));
    let meets: Vec<&str> = out
        .lines()
        .filter(|l| l.contains("[meets C]"))
        .map(|l| l.split(' ').next().unwrap())
        .collect();
    assert_eq!(meets, ["E1", "E2", "E3", "L45", "L46", "L56"]);

    let (code, _, err) = run(&["lines", "--mode", "bogus"]);
    assert_eq!(code, 1);
    assert!(err.contains("bogus"));
}

#[test]
fn lct_reports() {
    let (code, out, _) = run(&["lct", "x*y*(x+y)", "--method", "both"]);
    assert_eq!(code, 0);
    assert!(out.contains("lct: 2/3\n"));
    assert!(out.contains("agree: true"));

    let (code, out, _) = run(&["lct", "y^2-x^3", "--method", "blowup"]);
    assert_eq!(code, 0);
    assert!(out.contains("blowup: 5/6 (exact"));
    assert!(out.contains("nodes: (1,2) (2,3) (4,6)"));

    let (code, out, _) = run(&["lct", "(y^2-x^3)^2", "--method", "newton"]);
    assert_eq!(code, 0);
    assert!(out.contains("lct: 5/12"));

    let (code, out, _) = run(&["lct", "--file", &data("cusp.poly")]);
    assert_eq!(code, 0);
    assert!(out.contains("lct: 5/6"));
    assert_eq!(run(&["lct", "--file", &data("missing.poly")]).0, 1);
    assert_eq!(run(&["lct"]).0, 1);

    assert_eq!(run(&["lct", "x+"]).0, 1);
    assert_eq!(run(&["lct", "1+x"]).0, 1);
}

#[test]
fn depth_bound_from_environment() {
    let out = bin()
        .args(["lct", "y^2-x^3", "--method", "blowup"])
        .env("DELPEZZO_MAX_BLOWUPS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["lct", "y^2-x^3"])
        .env("DELPEZZO_MAX_BLOWUPS", "three")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin()
        .args(["lct", "y^2-x^3"])
        .env("DELPEZZO_MAX_BLOWUPS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn eckardt_modes() {
    let (code, out, _) = run(&["eckardt", "--cubic", &data("example.cubic"), "--point", "1 0 0 0"]);
    assert_eq!(code, 0);
    assert!(out.contains("eckardt: true"));
    assert!(out.contains("restricted: "));
    assert!(!out.contains("s0"));

    let (_, out, _) = run(&["eckardt", "--cubic", &data("fermat.cubic"), "--point", "3 4 5 -6"]);
    assert!(out.contains("eckardt: false"));
    let (_, out, _) = run(&["eckardt", "--form", "z0^3+z1^3+z2^3+z3^3", "--point", "1:-1:0:0"]);
    assert!(out.contains("eckardt: true"));

    let (code, _, err) = run(&["eckardt", "--form", "z0^3+z1^3+z2^3+z3^3", "--point", "1 0 0 0"]);
    assert_eq!(code, 1);
    assert!(err.contains("not on the surface"));
    let (code, _, err) = run(&["eckardt", "--form", "z1^3+z2^3+z3^3", "--point", "1 0 0 0"]);
    assert_eq!(code, 1);
    assert!(err.contains("singular"));

    let (code, out, _) = run(&["eckardt", "--config", &data("concurrent.cfg")]);
    assert_eq!(code, 0);
    assert!(out.contains("{L12, L34, L56} at (1:1:0)"));
    let (_, out, _) = run(&["eckardt", "--config", &data("tangency.cfg")]);
    assert!(out.contains("{E1, L12, F2} at infinitely near p1"));
}

#[test]
fn validate_and_alpha1() {
    let (code, out, _) = run(&["validate", "--config", &data("general.cfg")]);
    assert_eq!((code, out.as_str()), (0, "smooth: valid\n"));
    let (code, out, _) = run(&["validate", "--config", &data("collinear.cfg")]);
    assert_eq!(code, 1);
    assert!(out.contains("collinear points p1, p2, p3"));
    assert_eq!(run(&["validate", "--config", &data("nodal.cfg")]).0, 0);
    assert_eq!(run(&["validate", "--config", &data("missing.cfg")]).0, 1);

    let (code, out, _) = run(&["alpha1", "--config", &data("concurrent.cfg")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("alpha1: 2/3"));
}

#[test]
fn verify_lemmas() {
    let (code, out, _) = run(&["verify", "--lemma", "5.1", "--m", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("survivor: 3C + E1+E2+E3+L45+L46+L56\n"));
    assert!(out.contains("lattice sum: -2K"));
    let (code, out, _) = run(&["verify", "--lemma", "5.1", "--m", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("no survivor (m odd)"));
    let (code, out, _) = run(&["verify", "--lemma", "3.1", "--m", "4", "--lambda", "2/3"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 survivors"));
    let (_, out, _) = run(&["verify", "--lemma", "3.1", "--m", "2", "--candidates"]);
    assert!(out.lines().filter(|l| l.starts_with("case ")).count() > 10);
    assert_eq!(run(&["verify", "--lemma", "4.2", "--m", "2"]).0, 1);
}

#[test]
fn case_reports() {
    let (code, out, _) = run(&["case", "--id", "3", "--m", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("mu=3 nu=3 d=6"));
    let (_, out, _) = run(&["case", "--id", "3", "--m", "5"]);
    assert!(out.contains("mu=5/2 : integrality contradiction"));
    let (_, out, _) = run(&["case", "--id", "2", "--m", "6"]);
    assert!(out.contains("mu=2 multOmega=8"));
    let (_, out, _) = run(&["case", "--id", "nodal", "--m", "6"]);
    assert!(out.contains("multS: > 9, <= 12"));
    assert!(out.contains("multOmega: <= 5"));
    assert_eq!(run(&["case", "--id", "7", "--m", "6"]).0, 1);
}

#[test]
fn solve_bounds_holder_monomial() {
    let dir = std::env::temp_dir().join("delpezzo-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("sys.txt");
    std::fs::write(&file, "int mu\nmu >= m/2\nmu <= m/2\n").unwrap();
    let (code, out, _) = run(&["solve", file.to_str().unwrap(), "--m", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("mu=5/2 : integrality contradiction"));

    let (code, out, _) = run(&["bounds", "(y-x^2)^3"]);
    assert_eq!(code, 0);
    assert!(out.contains("lct: 1/3") && out.contains("equality structure certified: true"));
    let (_, out, _) = run(&["holder", "y^2-x^3", "y^2-x^3"]);
    assert!(out.contains("c(fg): 5/12") && out.contains("equality: true"));
    let (code, out, _) = run(&["monomial", "--k", "2", "y^2-x^3+x^2"]);
    assert_eq!(code, 0);
    assert!(out.contains("holds: true"));
    assert_eq!(run(&["monomial", "--k", "2", "x*(x+y)"]).0, 1);
}

#[test]
fn json_and_determinism() {
    let (code, out, _) = run(&["--json", "case", "--id", "3", "--m", "4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], 0);
    assert_eq!(v["result"]["contradiction"], false);
    let mu = v["result"]["forced"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["name"] == "mu")
        .unwrap();
    assert_eq!(mu["value"], "2");

    let (_, out, _) = run(&["lct", "x*y*(x+y)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["lct"], "2/3");

    let a = run(&["verify", "--lemma", "5.1", "--m", "2", "--json"]);
    let b = run(&["verify", "--lemma", "5.1", "--m", "2", "--json"]);
    assert_eq!(a, b);
}

#[test]
fn help_and_usage_errors() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("lines") && out.contains("eckardt"));
    assert_eq!(run(&[]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
}
