//! Command-line front end. [`run`] parses arguments and renders one of the
//! three output formats; `main` only prints and sets the exit status.

use clap::{Args, Parser, Subcommand, ValueEnum};
use evenpoints::combinatorics::{enumerate_admissible_partitions, kostka_bruteforce};
use evenpoints::hilbert::{
    degree, degree_cross_checked, hilbert_series, koszul_numerical_check, rational_form, HilbertFunction,
};
use evenpoints::polytope::{build_pw, build_qw, lattice_points, normality_check, HPolytope};
use evenpoints::subsets::{ensure_subset_cap, DEFAULT_SUBSET_CAP};
use evenpoints::toric::{
    buchberger_check, export_basis, generate_basis, groebner_certify, radical_certificate, BasisEntry,
    TermOrderContext, BUCHBERGER_VARIABLE_LIMIT,
};
use evenpoints::{Error, Int, WeightVector};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "evenpoints", version, about = "Invariants of weighted points on the projective line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert function h(0..dmax)
    Hilbert(HilbertArgs),
    /// Degree of the quotient, or a table over 1^n / 2^n
    Degree(DegreeArgs),
    /// Hilbert series and its rational form over (1-z)^(n-2)
    Series(SeriesArgs),
    /// Coefficients of 1/H(-z) and the numerical Koszul verdict
    Koszul(KoszulArgs),
    /// Brute-force stretched Kostka numbers
    Kostka(KostkaArgs),
    /// H-representation and lattice points of P_w or Q_w
    Polytope(PolytopeArgs),
    /// Normality, Groebner and radical certificates for even weights
    Certify(CertifyArgs),
    /// Type A and type B relations as JSON or CSV
    ExportGb(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Refuse subset sums over more weights than this
    #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
    pub subset_cap: usize,
    /// Ignore the subset cap
    #[arg(long)]
    pub force: bool,
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    /// Weights, e.g. 1^8 or 2,2,4,1^2
    #[arg(short, long)]
    pub weights: WeightVector,
    #[arg(long, default_value_t = 10)]
    pub dmax: u64,
    /// Cross-check every value against the brute-force tableau count
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    /// 1^n for even n from 4 to n-max
    Ones,
    /// 2^n for n from 4 to n-max
    Twos,
}

#[derive(Args, Debug)]
pub struct DegreeArgs {
    #[arg(short, long, required_unless_present = "table", conflicts_with = "table")]
    pub weights: Option<WeightVector>,
    #[arg(long)]
    pub table: Option<Table>,
    #[arg(long, default_value_t = 16, requires = "table")]
    pub n_max: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(short, long)]
    pub weights: WeightVector,
    #[arg(long, default_value_t = 10)]
    pub dmax: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct KoszulArgs {
    #[arg(short, long)]
    pub weights: WeightVector,
    #[arg(long, default_value_t = 10)]
    pub depth: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct KostkaArgs {
    #[arg(short, long)]
    pub weights: WeightVector,
    #[arg(long, default_value_t = 3)]
    pub dmax: u64,
    /// Also list the admissible first-row contents
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// P_w in R^(n-3), lattice (2Z)^(n-3); needs even weights
    Pw,
    /// Q_w in R^n, lattice Z^n
    Qw,
}

#[derive(Args, Debug)]
pub struct PolytopeArgs {
    #[arg(short, long)]
    pub weights: WeightVector,
    #[arg(long, value_enum, default_value_t = Which::Pw)]
    pub which: Which,
    /// Count lattice points of dP for d = 0..dmax
    #[arg(long, default_value_t = 1)]
    pub dmax: u64,
    /// List the lattice points
    #[arg(long)]
    pub points: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(short, long)]
    pub weights: WeightVector,
    /// Degree bound for the standard-monomial comparison
    #[arg(long, default_value_t = 3)]
    pub dmax: u64,
    /// Level bound for normality (defaults to dmax)
    #[arg(long)]
    pub mmax: Option<u64>,
    /// Also run Buchberger's criterion on the relations
    #[arg(long)]
    pub buchberger: bool,
    /// Variable limit for the Buchberger check
    #[arg(long, default_value_t = BUCHBERGER_VARIABLE_LIMIT)]
    pub max_vars: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(short, long)]
    pub weights: WeightVector,
    #[command(flatten)]
    pub common: Common,
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Response {
    fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: ensure_newline(msg.into()) }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// A result in all three formats.
struct Output {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    plain: Vec<String>,
    code: i32,
}

impl Output {
    fn render(self, format: Format) -> Response {
        let stdout = match format {
            Format::Json => {
                serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n"
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
            }
            Format::Plain => self.plain.iter().map(|l| format!("{l}\n")).collect(),
        };
        Response { code: self.code, stdout, stderr: String::new() }
    }
}

fn big(n: &Int) -> Value {
    serde_json::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn point(coords: &[i64]) -> String {
    format!("({})", joined(coords))
}

/// Mathematical cross-check failures exit with 2, everything else with 1.
fn error_response(e: Error) -> Response {
    let code = match e {
        Error::PolynomialMismatch { .. } | Error::DegreeMismatch { .. } | Error::NormalityViolation { .. } => {
            EXIT_CHECK_FAILED
        }
        _ => EXIT_USAGE,
    };
    Response { code, stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn odd_hint(w: &WeightVector) -> String {
    let doubled: Vec<String> = w.entries().iter().map(|x| (2 * x).to_string()).collect();
    format!(
        "hint: the even-degree part of R_w is R_2w, so try -w {}",
        doubled.join(",")
    )
}

fn check_cap(w: &WeightVector, common: &Common) -> Result<(), Response> {
    if common.force {
        return Ok(());
    }
    ensure_subset_cap(w.n(), common.subset_cap)
        .map_err(|e| Response::usage(format!("error: {e} (use --force to override)")))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Response
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli.command),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Response { code, stdout: String::new(), stderr: text }
            } else {
                Response { code, stdout: text, stderr: String::new() }
            }
        }
    }
}

fn dispatch(command: Command) -> Response {
    let (format, result) = match command {
        Command::Hilbert(a) => (a.common.format, cmd_hilbert(&a)),
        Command::Degree(a) => (a.common.format, cmd_degree(&a)),
        Command::Series(a) => (a.common.format, cmd_series(&a)),
        Command::Koszul(a) => (a.common.format, cmd_koszul(&a)),
        Command::Kostka(a) => (a.common.format, cmd_kostka(&a)),
        Command::Polytope(a) => (a.common.format, cmd_polytope(&a)),
        Command::Certify(a) => (a.common.format, cmd_certify(&a)),
        Command::ExportGb(a) => (a.common.format, cmd_export(&a)),
    };
    match result {
        Ok(out) => out.render(format),
        Err(resp) => resp,
    }
}

type CmdResult = Result<Output, Response>;

fn cmd_hilbert(a: &HilbertArgs) -> CmdResult {
    let w = &a.weights;
    check_cap(w, &a.common)?;
    let h = HilbertFunction::new(w);
    let values: Vec<Int> = (0..=a.dmax).map(|d| h.at(d)).collect();
    let mut mismatches = Vec::new();
    if a.oracle {
        for (d, v) in values.iter().enumerate() {
            let k = Int::from(kostka_bruteforce(w, d as i64));
            if &k != v {
                mismatches.push(json!({"d": d, "formula": big(v), "oracle": big(&k)}));
            }
        }
    }
    let mut plain = vec![joined(&values)];
    let mut json = json!({
        "weights": w,
        "table": values.iter().enumerate().map(|(d, v)| json!({"d": d, "h": big(v)})).collect::<Vec<_>>(),
    });
    if a.oracle {
        json["oracle"] = json!({"agrees": mismatches.is_empty(), "mismatches": mismatches});
        plain.push(if mismatches.is_empty() {
            format!("oracle: agrees for d = 0..{}", a.dmax)
        } else {
            format!("oracle: MISMATCH at {} degrees", mismatches.len())
        });
    }
    Ok(Output {
        json,
        header: vec!["d", "h"],
        rows: values.iter().enumerate().map(|(d, v)| vec![d.to_string(), v.to_string()]).collect(),
        plain,
        code: if mismatches.is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn checked_degree(w: &WeightVector) -> Result<Int, Response> {
    if w.half().is_none() {
        return Err(Response::usage(format!("error: |w| = {} is odd\n{}", w.total(), odd_hint(w))));
    }
    let formula: Int = degree(w).map_err(error_response)?;
    let polynomial: Int = degree_cross_checked(w).map_err(error_response)?;
    if formula != polynomial {
        return Err(error_response(Error::DegreeMismatch {
            formula: formula.to_string(),
            polynomial: polynomial.to_string(),
        }));
    }
    Ok(formula)
}

fn cmd_degree(a: &DegreeArgs) -> CmdResult {
    let weights: Vec<WeightVector> = match (&a.weights, a.table) {
        (Some(w), _) => vec![w.clone()],
        (None, Some(Table::Ones)) => (4..=a.n_max).step_by(2).map(|n| WeightVector::uniform(1, n)).collect::<Result<_, _>>().map_err(error_response)?,
        (None, Some(Table::Twos)) => (4..=a.n_max).map(|n| WeightVector::uniform(2, n)).collect::<Result<_, _>>().map_err(error_response)?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    let mut rows = Vec::new();
    for w in &weights {
        check_cap(w, &a.common)?;
        rows.push((w, checked_degree(w)?));
    }
    let values: Vec<&Int> = rows.iter().map(|(_, d)| d).collect();
    Ok(Output {
        json: if a.table.is_some() {
            json!(rows.iter().map(|(w, d)| json!({"n": w.n(), "weights": w, "degree": big(d)})).collect::<Vec<_>>())
        } else {
            json!({"weights": rows[0].0, "degree": big(&rows[0].1)})
        },
        header: vec!["n", "weights", "degree"],
        rows: rows.iter().map(|(w, d)| vec![w.n().to_string(), w.to_string(), d.to_string()]).collect(),
        plain: vec![joined(&values)],
        code: EXIT_OK,
    })
}

fn cmd_series(a: &SeriesArgs) -> CmdResult {
    let w = &a.weights;
    check_cap(w, &a.common)?;
    let e = w.n() - 2;
    // enough terms beyond the numerator to make the vanishing check meaningful
    let depth = (a.dmax as usize).max(2 * e + 2);
    let long = hilbert_series::<Int>(w, depth);
    let shown = long.truncate(a.dmax as usize);
    let form = rational_form(&long, e).ok();
    let mut plain = vec![shown.to_string()];
    match &form {
        Some(f) => plain.push(f.to_string()),
        None => plain.push(format!("no rational form with denominator (1-z)^{e}")),
    }
    if w.half().is_none() {
        plain.push(odd_hint(w));
    }
    let coeffs: Vec<Value> = shown.coeffs().iter().map(big).collect();
    Ok(Output {
        json: json!({
            "weights": w,
            "series": coeffs,
            "rational_form": form.as_ref().map(|f| json!({
                "numerator": f.numerator().iter().map(big).collect::<Vec<_>>(),
                "denominator_exponent": f.denominator_exponent(),
            })),
        }),
        header: vec!["d", "h"],
        rows: shown.coeffs().iter().enumerate().map(|(d, v)| vec![d.to_string(), v.to_string()]).collect(),
        plain,
        code: EXIT_OK,
    })
}

fn cmd_koszul(a: &KoszulArgs) -> CmdResult {
    let w = &a.weights;
    check_cap(w, &a.common)?;
    let check = koszul_numerical_check::<Int>(w, a.depth);
    let coeffs = check.coefficients.coeffs();
    let verdict = match check.first_negative {
        Some(k) => format!("NEGATIVE-AT-{k} ({})", coeffs[k]),
        None => format!("INCONCLUSIVE-TO-{}", a.depth),
    };
    Ok(Output {
        json: json!({
            "weights": w,
            "depth": a.depth,
            "coefficients": coeffs.iter().map(big).collect::<Vec<_>>(),
            "first_negative": check.first_negative,
            "verdict": verdict,
        }),
        header: vec!["k", "coefficient"],
        rows: coeffs.iter().enumerate().map(|(k, v)| vec![k.to_string(), v.to_string()]).collect(),
        plain: vec![check.coefficients.to_string(), verdict],
        code: EXIT_OK,
    })
}

fn cmd_kostka(a: &KostkaArgs) -> CmdResult {
    let w = &a.weights;
    let levels: Vec<(u64, Vec<Vec<i64>>)> = (0..=a.dmax)
        .map(|d| {
            let parts = enumerate_admissible_partitions(w, d as i64);
            (d, parts.into_iter().map(|p| p.into_entries()).collect())
        })
        .collect();
    let counts: Vec<usize> = levels.iter().map(|(_, p)| p.len()).collect();
    let mut plain = vec![joined(&counts)];
    if a.list {
        for (d, parts) in &levels {
            for p in parts {
                plain.push(format!("{d}: {}", point(p)));
            }
        }
    }
    Ok(Output {
        json: json!({
            "weights": w,
            "table": levels.iter().map(|(d, p)| {
                let mut entry = json!({"d": d, "count": p.len()});
                if a.list {
                    entry["partitions"] = json!(p);
                }
                entry
            }).collect::<Vec<_>>(),
        }),
        header: vec!["d", "count"],
        rows: levels.iter().map(|(d, p)| vec![d.to_string(), p.len().to_string()]).collect(),
        plain,
        code: EXIT_OK,
    })
}

fn cmd_polytope(a: &PolytopeArgs) -> CmdResult {
    let w = &a.weights;
    let poly: HPolytope = match a.which {
        Which::Pw => build_pw(w).map_err(|e| {
            let mut r = error_response(e);
            if !w.all_even() {
                r.stderr.push_str(&odd_hint(w));
                r.stderr.push('\n');
            }
            r
        })?,
        Which::Qw => build_qw(w),
    };
    let mut levels = Vec::new();
    for d in 0..=a.dmax {
        levels.push((d, lattice_points(&poly, d).map_err(error_response)?));
    }
    let lattice = serde_json::to_value(poly.lattice).expect("serializes");
    let mut plain = vec![format!(
        "dim {}, lattice {}, {} equalities, {} inequalities",
        poly.dim,
        lattice.as_str().unwrap_or_default(),
        poly.equalities.len(),
        poly.inequalities.len()
    )];
    let mut rows = Vec::new();
    for (d, pts) in &levels {
        plain.push(format!("level {d}: {} points", pts.len()));
        if a.points {
            plain.extend(pts.iter().map(|p| format!("  {p}")));
        }
        rows.extend(pts.iter().map(|p| vec![d.to_string(), joined(&p.coords)]));
    }
    let json = json!({
        "weights": w,
        "polytope": poly,
        "levels": levels.iter().map(|(d, pts)| {
            let mut entry = json!({"level": d, "count": pts.len()});
            if a.points {
                entry["points"] = json!(pts.iter().map(|p| &p.coords).collect::<Vec<_>>());
            }
            entry
        }).collect::<Vec<_>>(),
    });
    Ok(Output { json, header: vec!["level", "point"], rows, plain, code: EXIT_OK })
}

fn require_even(w: &WeightVector) -> Result<(), Response> {
    if w.all_even() {
        return Ok(());
    }
    let mut msg = format!("error: weights must be even, got {w}");
    if w.half().is_none() {
        msg.push('\n');
        msg.push_str(&odd_hint(w));
    }
    Err(Response::usage(msg))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_certify(a: &CertifyArgs) -> CmdResult {
    let w = &a.weights;
    require_even(w)?;
    if w.n() < 4 {
        return Err(Response::usage(format!("error: need at least 4 weights, got {}", w.n())));
    }
    let mmax = a.mmax.unwrap_or(a.dmax);
    let normality = normality_check(w, mmax).map_err(error_response)?;
    let groebner = groebner_certify(w, a.dmax).map_err(error_response)?;
    let radical = radical_certificate(w).map_err(error_response)?;
    let buchberger = if a.buchberger {
        Some(buchberger_check(w, a.max_vars).map_err(error_response)?)
    } else {
        None
    };
    let normality_ok = normality.passed();
    let groebner_ok = groebner.passed();
    let buchberger_ok = buchberger.as_ref().is_none_or(|b| b.passed());
    let all = normality_ok && groebner_ok && radical && buchberger_ok;

    let standard: Vec<u64> = groebner.degrees.iter().map(|c| c.standard).collect();
    let mut plain = vec![
        format!("weights {w}: {} variables, {} type A, {} type B", groebner.variables, groebner.type_a, groebner.type_b),
        format!("normality (m <= {mmax}): {}", verdict(normality_ok)),
        format!("groebner (d <= {}): {} [{}]", a.dmax, verdict(groebner_ok), joined(&standard)),
        format!("radical: {}", verdict(radical)),
    ];
    let mut rows = vec![
        vec!["normality".to_string(), verdict(normality_ok).to_string()],
        vec!["groebner".to_string(), verdict(groebner_ok).to_string()],
        vec!["radical".to_string(), verdict(radical).to_string()],
    ];
    if let Some(b) = &buchberger {
        plain.push(format!("buchberger ({} S-pairs): {}", b.pairs_checked, verdict(b.passed())));
        rows.push(vec!["buchberger".to_string(), verdict(b.passed()).to_string()]);
    }
    if let Some(d) = groebner.mismatch() {
        plain.push(format!("first mismatch at degree {d}"));
    }
    plain.push(if all { "ALL PASS".to_string() } else { "FAILED".to_string() });
    Ok(Output {
        json: json!({
            "weights": w,
            "passed": all,
            "normality": normality,
            "groebner": groebner,
            "radical": radical,
            "buchberger": buchberger,
        }),
        header: vec!["check", "result"],
        rows,
        plain,
        code: if all { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn monomial_text(points: &[Vec<i64>]) -> String {
    points.iter().map(|p| format!("X{}", point(p))).collect::<Vec<_>>().join(" ")
}

fn cmd_export(a: &ExportArgs) -> CmdResult {
    let w = &a.weights;
    require_even(w)?;
    let ctx = TermOrderContext::new(w).map_err(error_response)?;
    let basis = generate_basis(&ctx).map_err(error_response)?;
    let entries: Vec<BasisEntry> = export_basis(&ctx, &basis);
    let position = |e: &BasisEntry| e.position.map(|p| p.to_string()).unwrap_or_default();
    Ok(Output {
        json: serde_json::to_value(&entries).expect("serializes"),
        header: vec!["type", "position", "lhs", "rhs"],
        rows: entries
            .iter()
            .map(|e| vec![e.kind.to_string(), position(e), monomial_text(&e.lhs), monomial_text(&e.rhs)])
            .collect(),
        plain: entries
            .iter()
            .map(|e| {
                let tag = match e.position {
                    Some(j) => format!("B{j}"),
                    None => "A".to_string(),
                };
                format!("{tag:<4}{} - {}", monomial_text(&e.lhs), monomial_text(&e.rhs))
            })
            .collect(),
        code: EXIT_OK,
    })
}
