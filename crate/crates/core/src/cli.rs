//! Command-line frontend. [`run`] parses arguments and produces a
//! [`RunReport`]; the binary only prints it and exits with its status.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::constraints::encodings::{encode_case2, encode_case3, encode_nodal, NodalBranch, Stage};
use crate::constraints::text::parse_system;
use crate::constraints::{solve, Bound, ConstraintSystem, SolveReport};
use crate::lattice::{enumerate_negative_curves, incidence_graph, tritangent_triples, SurfaceMode};
use crate::lct::{
    blowup_lct_with_bound, check_monomial_bound, check_mult_bounds, holder_product_bound, newton_lct, CurveGerm,
    LctError, LctReport, DEFAULT_MAX_BLOWUPS,
};
use crate::lemma_verify::{alpha1_report, nodal_expected, nodal_scan, smooth_scan, CaseVerdict, Outcome};
use crate::plane_config::{
    eckardt_cone_test, eckardt_points, parse_config, parse_cubic, validate, CubicForm, ProjPoint,
};
use crate::scalar::{fmt_rational, parse_rational};
use crate::Rational;

pub const MAX_BLOWUPS_ENV: &str = "DELPEZZO_MAX_BLOWUPS";

#[derive(Debug, Parser)]
#[command(
    name = "delpezzo",
    version,
    about = "Cubic-surface lattice, Eckardt and log canonical threshold toolkit"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Newton,
    Blowup,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StageArg {
    Before,
    Full,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BranchArg {
    QOnC,
    QOnL,
    QGeneric,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the negative curves of a model with their incidences.
    Lines {
        #[arg(long)]
        mode: String,
    },
    /// Log canonical threshold of a germ in x, y at the origin.
    Lct {
        #[arg(required_unless_present = "file")]
        poly: Option<String>,
        /// Read the polynomial from a file; `#` starts a comment.
        #[arg(long, conflicts_with = "poly")]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// Eckardt points of a six-point configuration, or the cone test at a
    /// point of an explicit cubic.
    Eckardt {
        #[arg(long, conflicts_with_all = ["cubic", "form"])]
        config: Option<PathBuf>,
        /// Cubic file: twenty `monomial coefficient` lines.
        #[arg(long, conflicts_with = "form")]
        cubic: Option<PathBuf>,
        /// Cubic as an expression in z0..z3.
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        point: Option<String>,
    },
    /// Check the position conditions of a six-point configuration.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// First anticanonical threshold of a smooth configuration.
    Alpha1 {
        #[arg(long)]
        config: PathBuf,
    },
    /// Scan decompositions of a non-log-canonical divisor in `|-mK|`.
    Verify {
        /// `3.1` or `smooth` for the smooth model, `5.1` or `nodal` for the nodal one.
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        m: i64,
        #[arg(long, default_value = "2/3")]
        lambda: String,
        /// Print every candidate with its outcome.
        #[arg(long)]
        candidates: bool,
    },
    /// Solve a multiplicity case system (2, 3 or nodal).
    Case {
        #[arg(long)]
        id: String,
        #[arg(long)]
        m: i64,
        #[arg(long, value_enum, default_value = "full")]
        stage: StageArg,
        /// Nodal sub-case for the position of the blown-up point.
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
    },
    /// Solve a constraint system from a text file.
    Solve {
        file: PathBuf,
        #[arg(long)]
        m: String,
    },
    /// Multiplicity bounds 1/k <= lct <= 2/k.
    Bounds { poly: String },
    /// Product bound 1/c(fg) <= 1/c(f) + 1/c(g).
    Holder { f: String, g: String },
    /// Threshold of x^(2k) y^k h against 1/(3k).
    Monomial {
        #[arg(long)]
        k: u32,
        h: String,
    },
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    /// 0 success, 1 invalid input or failed check, 2 resolution depth exceeded.
    pub status: i32,
    pub text: String,
    pub body: Value,
    /// Diagnostic for stderr.
    pub error: Option<String>,
    #[serde(skip)]
    pub json: bool,
}

impl RunReport {
    /// What the binary writes to stdout.
    pub fn stdout(&self) -> String {
        if self.json {
            let v = json!({
                "command": self.command,
                "status": self.status,
                "result": self.body,
                "error": self.error,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        } else {
            self.text.clone()
        }
    }
}

struct Failure {
    status: i32,
    msg: String,
}

impl Failure {
    fn input(msg: impl ToString) -> Self {
        Failure {
            status: 1,
            msg: msg.to_string(),
        }
    }
}

impl From<LctError> for Failure {
    fn from(e: LctError) -> Self {
        let status = if matches!(e, LctError::DepthExceeded { .. }) {
            2
        } else {
            1
        };
        Failure {
            status,
            msg: e.to_string(),
        }
    }
}

/// Text, JSON body and status of a successful command.
struct Output {
    text: String,
    body: Value,
    status: i32,
}

fn ok(text: String, body: Value) -> Result<Output, Failure> {
    Ok(Output { text, body, status: 0 })
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn max_blowups() -> Result<usize, Failure> {
    match std::env::var(MAX_BLOWUPS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("{MAX_BLOWUPS_ENV} must be a non-negative integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_MAX_BLOWUPS),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn rational_arg(s: &str, what: &str) -> Result<Rational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::input(format!("invalid {what} '{s}'")))
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I) -> RunReport
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let command = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let info = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            return RunReport {
                command,
                status: if info { 0 } else { 1 },
                text: if info { rendered.clone() } else { String::new() },
                body: Value::Null,
                error: (!info).then_some(rendered),
                json: false,
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => RunReport {
            command,
            status: out.status,
            text: out.text,
            body: out.body,
            error: None,
            json,
        },
        Err(f) => RunReport {
            command,
            status: f.status,
            text: String::new(),
            body: Value::Null,
            error: Some(format!("error: {}", f.msg)),
            json,
        },
    }
}

fn dispatch(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Lines { mode } => cmd_lines(&mode),
        Command::Lct { poly, file, method } => {
            let poly = match (poly, file) {
                (Some(p), _) => p,
                (None, Some(path)) => read(&path)?
                    .lines()
                    .map(|l| l.split('#').next().unwrap_or(""))
                    .collect::<Vec<_>>()
                    .join(" "),
                (None, None) => unreachable!("clap requires one"),
            };
            cmd_lct(&poly, method)
        }
        Command::Eckardt {
            config,
            cubic,
            form,
            point,
        } => cmd_eckardt(config, cubic, form, point),
        Command::Validate { config } => cmd_validate(&config),
        Command::Alpha1 { config } => cmd_alpha1(&config),
        Command::Verify {
            lemma,
            m,
            lambda,
            candidates,
        } => cmd_verify(&lemma, m, &lambda, candidates),
        Command::Case { id, m, stage, branch } => cmd_case(&id, m, stage, branch),
        Command::Solve { file, m } => {
            let m = rational_arg(&m, "level")?;
            let sys = parse_system(&read(&file)?, &m).map_err(Failure::input)?;
            Ok(solve_output(&sys))
        }
        Command::Bounds { poly } => cmd_bounds(&poly),
        Command::Holder { f, g } => cmd_holder(&f, &g),
        Command::Monomial { k, h } => cmd_monomial(k, &h),
    }
}

fn cmd_lines(mode: &str) -> Result<Output, Failure> {
    let mode: SurfaceMode = mode.parse().map_err(Failure::input)?;
    let curves = enumerate_negative_curves(mode);
    let graph = incidence_graph(&curves);
    let c_index = curves.index_of("C");
    let mut text = String::new();
    let n_lines = curves.lines().count();
    match mode {
        SurfaceMode::Smooth => writeln!(text, "mode: smooth\n{n_lines} lines").unwrap(),
        SurfaceMode::Nodal => writeln!(text, "mode: nodal\n{n_lines} (-1)-curves plus C").unwrap(),
    }
    let mut entries = Vec::new();
    for (i, c) in curves.curves.iter().enumerate() {
        let nbrs: Vec<&str> = graph[i].iter().map(|&(j, _)| curves.curves[j].label.as_str()).collect();
        let meets_c = c_index.is_some_and(|ci| ci != i && graph[i].iter().any(|&(j, _)| j == ci));
        write!(text, "{} {} degree {}", c.label, c.class, nbrs.len()).unwrap();
        if meets_c {
            text.push_str(" [meets C]");
        }
        writeln!(text, ": {}", nbrs.join(" ")).unwrap();
        entries.push(json!({
            "label": c.label,
            "class": c.class.to_string(),
            "self_intersection": c.class.square(),
            "neighbors": nbrs,
            "meets_c": meets_c,
        }));
    }
    let mut body = json!({ "mode": mode, "curves": entries });
    if let Some(ci) = c_index {
        let adj = graph[ci].len();
        writeln!(text, "{adj} curves meet C").unwrap();
        body["adjacent_to_c"] = json!(adj);
    }
    if mode == SurfaceMode::Smooth {
        let triples = tritangent_triples(&curves);
        writeln!(text, "{} tritangent triples", triples.len()).unwrap();
        let labels: Vec<Vec<&str>> = triples
            .iter()
            .map(|t| t.iter().map(|&i| curves.curves[i].label.as_str()).collect())
            .collect();
        for t in &labels {
            writeln!(text, "{}", t.join(" ")).unwrap();
        }
        body["tritangent"] = json!(labels);
    }
    ok(text, body)
}

fn lct_block(r: &LctReport) -> String {
    let mut s = format!(
        "{}: {} ({}, witness {})\n",
        match r.method {
            crate::lct::Method::Newton => "newton",
            crate::lct::Method::Blowup => "blowup",
        },
        fmt_rational(&r.value),
        if r.exact { "exact" } else { "not certified" },
        r.witness
    );
    if !r.nodes.is_empty() {
        let nodes: Vec<String> = r.nodes.iter().map(|n| format!("({},{})", n.a, n.b)).collect();
        writeln!(s, "nodes: {}", nodes.join(" ")).unwrap();
    }
    s
}

fn cmd_lct(poly: &str, method: MethodArg) -> Result<Output, Failure> {
    let f = CurveGerm::parse(poly)?;
    let bound = max_blowups()?;
    let mut text = format!("f: {f}\n");
    let mut body = json!({ "f": f.to_string() });
    let newton = matches!(method, MethodArg::Newton | MethodArg::Both).then(|| newton_lct(&f));
    let blowup = match method {
        MethodArg::Blowup | MethodArg::Both => Some(blowup_lct_with_bound(&f, bound)?),
        MethodArg::Newton => None,
    };
    for r in newton.iter().chain(blowup.iter()) {
        text.push_str(&lct_block(r));
    }
    if let Some(n) = &newton {
        body["newton"] = to_json(n);
    }
    if let Some(b) = &blowup {
        body["blowup"] = to_json(b);
    }
    let value = blowup
        .as_ref()
        .or(newton.as_ref())
        .map(|r| r.value.clone())
        .expect("one method runs");
    writeln!(text, "lct: {}", fmt_rational(&value)).unwrap();
    body["lct"] = json!(fmt_rational(&value));
    let mut status = 0;
    if let (Some(n), Some(b)) = (&newton, &blowup) {
        let agree = if n.exact { Some(n.value == b.value) } else { None };
        match agree {
            Some(a) => writeln!(text, "agree: {a}").unwrap(),
            None => writeln!(
                text,
                "agree: n/a (newton not certified, bound {} >= {})",
                fmt_rational(&n.value),
                fmt_rational(&b.value)
            )
            .unwrap(),
        }
        body["agree"] = json!(agree);
        if agree == Some(false) {
            status = 1;
        }
    }
    Ok(Output { text, body, status })
}

fn cmd_eckardt(
    config: Option<PathBuf>,
    cubic: Option<PathBuf>,
    form: Option<String>,
    point: Option<String>,
) -> Result<Output, Failure> {
    if let Some(path) = config {
        let cfg = parse_config(&read(&path)?).map_err(Failure::input)?;
        let recs = eckardt_points(&cfg).map_err(Failure::input)?;
        let mut text = format!("{} eckardt points\n", recs.len());
        for r in &recs {
            writeln!(text, "{r}").unwrap();
        }
        return ok(text, json!({ "records": to_json(&recs) }));
    }
    let f = match (cubic, form) {
        (Some(path), _) => parse_cubic(&read(&path)?).map_err(Failure::input)?,
        (None, Some(expr)) => CubicForm::from_expression(&expr).map_err(Failure::input)?,
        (None, None) => return Err(Failure::input("one of --config, --cubic or --form is required")),
    };
    let point = point.ok_or_else(|| Failure::input("--point is required with a cubic"))?;
    let p = ProjPoint::parse(&point).map_err(Failure::input)?;
    let t = eckardt_cone_test(&f, &p).map_err(Failure::input)?;
    let text = format!(
        "point: {p}\nrestricted: {}\neckardt: {}\n",
        t.restricted_string(),
        t.eckardt
    );
    ok(
        text,
        json!({ "point": p.to_string(), "restricted": t.restricted_string(), "eckardt": t.eckardt }),
    )
}

fn cmd_validate(path: &PathBuf) -> Result<Output, Failure> {
    let src = read(path)?;
    match parse_config(&src) {
        Ok(cfg) => {
            let r = validate(&cfg);
            ok(format!("{r}\n"), to_json(&r))
        }
        Err(crate::plane_config::PlaneError::InvalidConfig(r)) => Ok(Output {
            text: format!("{r}\n"),
            body: to_json(&r),
            status: 1,
        }),
        Err(e) => Err(Failure::input(e)),
    }
}

fn cmd_alpha1(path: &PathBuf) -> Result<Output, Failure> {
    let cfg = parse_config(&read(path)?).map_err(Failure::input)?;
    let r = alpha1_report(&cfg).map_err(Failure::input)?;
    let text = if r.exact {
        format!("alpha1: {} (eckardt {})\n", fmt_rational(&r.value), r.witness.join(" "))
    } else {
        format!(
            "alpha1 <= {} (upper bound, triangle {})\n",
            fmt_rational(&r.value),
            r.witness.join(" ")
        )
    };
    ok(text, to_json(&r))
}

fn verdict_text(v: &CaseVerdict, all: bool) -> String {
    let mut text = String::new();
    if all {
        for c in &v.candidates {
            writeln!(text, "{c}").unwrap();
        }
    }
    let mut tally: std::collections::BTreeMap<String, usize> = std::collections::BTreeMap::new();
    for c in &v.candidates {
        let key = match &c.outcome {
            Outcome::Contradicted(r) => {
                let j = to_json(r);
                j["reason"].as_str().unwrap_or("other").to_string()
            }
            Outcome::Survives { .. } => "survives".into(),
        };
        *tally.entry(key).or_default() += 1;
    }
    writeln!(text, "{}", v.summary()).unwrap();
    for (k, n) in tally {
        writeln!(text, "  {k}: {n}").unwrap();
    }
    text
}

fn cmd_verify(scan: &str, m: i64, lambda: &str, all: bool) -> Result<Output, Failure> {
    match scan {
        "3.1" | "smooth" => {
            let lambda = rational_arg(lambda, "lambda")?;
            let v = smooth_scan(m, &lambda).map_err(Failure::input)?;
            let n = v.survivors().len();
            let mut text = verdict_text(&v, all);
            for s in v.survivors() {
                writeln!(text, "survivor: {}", s.z_string()).unwrap();
            }
            writeln!(text, "{n} survivors").unwrap();
            Ok(Output {
                text,
                body: to_json(&v),
                status: i32::from(n != 0),
            })
        }
        "5.1" | "nodal" => {
            if lambda != "2/3" {
                return Err(Failure::input("the nodal scan runs at lambda = 2/3"));
            }
            let v = nodal_scan(m).map_err(Failure::input)?;
            let mut text = verdict_text(&v, all);
            let survivors = v.survivors();
            let expected = nodal_expected(m);
            let matches = match (&expected, survivors.as_slice()) {
                (None, []) => true,
                (Some(e), [s]) => s.decomposition == *e && s.decomposition.is_lattice_identity(),
                _ => false,
            };
            for s in &survivors {
                writeln!(text, "survivor: {}", s.z_string()).unwrap();
                if s.decomposition.is_lattice_identity() {
                    writeln!(text, "lattice sum: -{m}K").unwrap();
                }
            }
            if survivors.is_empty() {
                let why = if m % 2 == 1 { " (m odd)" } else { "" };
                writeln!(text, "no survivor{why}").unwrap();
            }
            Ok(Output {
                text,
                body: to_json(&v),
                status: i32::from(!matches),
            })
        }
        other => Err(Failure::input(format!("unknown scan '{other}' (expected 3.1 or 5.1)"))),
    }
}

fn fmt_bound(b: &Option<Bound<Rational>>, lower: bool) -> Option<String> {
    b.as_ref().map(|b| {
        let op = match (lower, b.strict) {
            (true, true) => ">",
            (true, false) => ">=",
            (false, true) => "<",
            (false, false) => "<=",
        };
        format!("{op} {}", fmt_rational(&b.value))
    })
}

fn bound_json(b: &Option<Bound<Rational>>) -> Value {
    match b {
        Some(b) => json!({ "value": fmt_rational(&b.value), "strict": b.strict }),
        None => Value::Null,
    }
}

fn solve_output(sys: &ConstraintSystem<Rational>) -> Output {
    let r: SolveReport<Rational> = solve(sys);
    let mut text = String::new();
    if !r.feasible {
        text.push_str("infeasible\n");
    } else {
        let forced: Vec<String> = r
            .forced
            .iter()
            .map(|f| format!("{}={}", f.name, fmt_rational(&f.value)))
            .collect();
        if !forced.is_empty() {
            writeln!(text, "forced: {}", forced.join(" ")).unwrap();
        }
        for b in &r.bounds {
            if r.forced.iter().any(|f| f.name == b.name) {
                continue;
            }
            let parts: Vec<String> = [fmt_bound(&b.lower, true), fmt_bound(&b.upper, false)]
                .into_iter()
                .flatten()
                .collect();
            let range = if parts.is_empty() {
                "free".to_string()
            } else {
                parts.join(", ")
            };
            writeln!(text, "{}: {range}", b.name).unwrap();
        }
        for f in r.integrality_failures() {
            writeln!(
                text,
                "{}={} : integrality contradiction",
                f.name,
                fmt_rational(&f.value)
            )
            .unwrap();
        }
    }
    writeln!(text, "contradiction: {}", r.contradiction()).unwrap();
    let body = json!({
        "feasible": r.feasible,
        "contradiction": r.contradiction(),
        "forced": r.forced.iter().map(|f| json!({
            "name": f.name, "value": fmt_rational(&f.value), "integral": f.integral,
        })).collect::<Vec<_>>(),
        "bounds": r.bounds.iter().map(|b| json!({
            "name": b.name, "lower": bound_json(&b.lower), "upper": bound_json(&b.upper),
        })).collect::<Vec<_>>(),
    });
    Output { text, body, status: 0 }
}

fn cmd_case(id: &str, m: i64, stage: StageArg, branch: Option<BranchArg>) -> Result<Output, Failure> {
    if m < 1 {
        return Err(Failure::input(format!("level must be positive, got {m}")));
    }
    let stage = match stage {
        StageArg::Before => Stage::BeforeBlowup,
        StageArg::Full => Stage::Full,
    };
    let sys = match id {
        "2" => encode_case2::<Rational>(m, stage),
        "3" => encode_case3::<Rational>(m, stage),
        "nodal" => encode_nodal::<Rational>(
            m,
            branch.map(|b| match b {
                BranchArg::QOnC => NodalBranch::QOnC,
                BranchArg::QOnL => NodalBranch::QOnL,
                BranchArg::QGeneric => NodalBranch::QGeneric,
            }),
        ),
        other => {
            return Err(Failure::input(format!(
                "unknown case '{other}' (expected 2, 3 or nodal)"
            )))
        }
    };
    Ok(solve_output(&sys))
}

fn cmd_bounds(poly: &str) -> Result<Output, Failure> {
    let f = CurveGerm::parse(poly)?;
    let v = check_mult_bounds(&f)?;
    let mut text = format!(
        "k: {}\nlct: {}\n1/k <= lct: {}\nlct <= 2/k: {}\n",
        v.k,
        fmt_rational(&v.value),
        v.lower_holds,
        v.upper_holds
    );
    if let Some(s) = v.equality_structure {
        writeln!(text, "equality structure certified: {s}").unwrap();
    }
    Ok(Output {
        body: to_json(&v),
        status: i32::from(!v.holds()),
        text,
    })
}

fn cmd_holder(f: &str, g: &str) -> Result<Output, Failure> {
    let v = holder_product_bound(&CurveGerm::parse(f)?, &CurveGerm::parse(g)?)?;
    let text = format!(
        "c(f): {}\nc(g): {}\nc(fg): {}\nholds: {}\nequality: {}\n",
        fmt_rational(&v.c_f),
        fmt_rational(&v.c_g),
        fmt_rational(&v.c_fg),
        v.holds,
        v.equality
    );
    Ok(Output {
        body: to_json(&v),
        status: i32::from(!v.holds),
        text,
    })
}

fn cmd_monomial(k: u32, h: &str) -> Result<Output, Failure> {
    let v = check_monomial_bound(k, &CurveGerm::parse(h)?)?;
    let text = format!(
        "f: {}\nlct: {}\nthreshold: {}\nholds: {}\n",
        v.f,
        fmt_rational(&v.value),
        fmt_rational(&v.threshold),
        v.holds
    );
    Ok(Output {
        body: to_json(&v),
        status: i32::from(!v.holds),
        text,
    })
}
