//! Command-line front end. Every subcommand prints one JSON document (or a
//! flat CSV table) to stdout; identical flags give byte-identical output.
//!
//! Exit codes: 0 success, 1 a check ran and failed, 2 usage or input error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bmodule::{hodge_type, BCharacters};
use crate::characters::CharacterTable;
use crate::combinat::{CycleType, NumericalPartition};
use crate::diag_algebra::{graded_trace, invariant_series, variant_hilbert_series, VariantTag};
use crate::error::Error;
use crate::macdonald::sym_product_betti;
use crate::oracle::cross_validate;
use crate::series::{bigint_json, LaurentWindow, Window};
use crate::stable::{
    abel_jacobi_check, c_infty_series, c_s_agreement, curve_power_series, decorated_series,
    stable_cutoff, twisted_series, AjConvention, CVariant, CutoffContext, NPolicy, PointLabels,
    StableModel,
};
use crate::symplectic::{schur_weyl_check, sp_irrep_dimension};

#[derive(Debug, Parser)]
#[command(name = "mcg-stable", version, about = "Stable cohomology of mapping class groups with symplectic coefficients")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Character table of the symmetric group.
    CharTable {
        #[arg(long)]
        s: usize,
    },
    /// Hilbert series, invariants or graded traces of a diagonal algebra.
    ASeries(ASeriesArgs),
    /// Hilbert series of the isotypic piece B_λ.
    BSeries {
        #[arg(long, value_parser = parse_partition)]
        lambda: NumericalPartition,
        #[arg(long)]
        max_degree: i64,
        /// Attach the Hodge type of every nonzero degree.
        #[arg(long)]
        hodge: bool,
    },
    /// Dimension of an irreducible Sp(2g)-module.
    SpDim {
        #[arg(long)]
        g: usize,
        #[arg(long, value_parser = parse_partition)]
        lambda: NumericalPartition,
    },
    /// Multiplicity-one dimension identity for the Weyl space.
    SchurWeylCheck {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        s: usize,
    },
    /// Stable series: twisted coefficients, decorated groups or curve powers.
    Stable(StableArgs),
    /// The invariant algebras C_inf and C'_inf, bigraded by point-weight.
    CSeries {
        #[arg(long, value_enum)]
        variant: CSeriesVariant,
        #[arg(long)]
        max_degree: i64,
        #[arg(long)]
        weight_cap: usize,
        /// Instead compare the weight <= S part with the invariants on S points.
        #[arg(long)]
        agreement_s: Option<usize>,
    },
    /// Compare both sides of the Abel–Jacobi series identity.
    AbelJacobiCheck {
        #[arg(long)]
        max_s: usize,
        #[arg(long)]
        max_degree: i64,
        #[arg(long, value_enum, default_value_t = ConventionArg::CohomologicalShift)]
        convention: ConventionArg,
        /// `default` or a JSON series file.
        #[arg(long, default_value = "default")]
        model: String,
    },
    /// Betti numbers of the symmetric power of a curve.
    Macdonald {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        s: usize,
    },
    /// Cross-check B_s against its explicit construction.
    OracleCheck {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        max_degree: i64,
    },
}

#[derive(Debug, Args)]
struct ASeriesArgs {
    #[arg(long)]
    s: usize,
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    max_degree: i64,
    /// Hilbert series of the symmetric-group invariants.
    #[arg(long, conflicts_with = "trace")]
    invariant: bool,
    /// Graded trace of a permutation with this cycle type.
    #[arg(long, value_parser = parse_cycle_type)]
    trace: Option<CycleType>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("quantity").required(true).args(["lambda", "decorated", "curve"])))]
struct StableArgs {
    /// Twisted coefficients S_<λ>.
    #[arg(long, value_parser = parse_partition)]
    lambda: Option<NumericalPartition>,
    /// Decorated group with this many marked points.
    #[arg(long)]
    decorated: Option<usize>,
    /// Count unordered marked points.
    #[arg(long, requires = "decorated")]
    unlabeled: bool,
    /// Power of the universal curve with this many factors.
    #[arg(long)]
    curve: Option<usize>,
    #[arg(long, value_enum, default_value_t = CurveVariant::A, requires = "curve")]
    curve_variant: CurveVariant,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long, value_enum, default_value_t = PolicyArg::Ivanov)]
    policy: PolicyArg,
    /// `default` or a JSON series file.
    #[arg(long, default_value = "default")]
    model: String,
    #[arg(long)]
    max_degree: i64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Atilde,
    A,
    Aprime,
    Adoubleprime,
}

impl From<VariantArg> for VariantTag {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Atilde => VariantTag::ATilde,
            VariantArg::A => VariantTag::A,
            VariantArg::Aprime => VariantTag::APrime,
            VariantArg::Adoubleprime => VariantTag::ADoublePrime,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CurveVariant {
    A,
    Aprime,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CSeriesVariant {
    C,
    Cprime,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Ivanov,
    Harer85,
    #[value(name = "harer93-upper")]
    Harer93Upper,
}

impl From<PolicyArg> for NPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Ivanov => NPolicy::Ivanov,
            PolicyArg::Harer85 => NPolicy::Harer85,
            PolicyArg::Harer93Upper => NPolicy::Harer93Upper,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConventionArg {
    CohomologicalShift,
    PointWeight,
}

fn parse_partition(s: &str) -> Result<NumericalPartition, String> {
    s.parse::<NumericalPartition>().map_err(|e| e.to_string())
}

fn parse_cycle_type(s: &str) -> Result<CycleType, String> {
    s.parse::<CycleType>().map_err(|e| e.to_string())
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

/// A finished report: the document and whether its check passed.
struct Report {
    doc: Value,
    csv: Vec<Vec<String>>,
    pass: bool,
}

impl Report {
    fn ok(doc: Value, csv: Vec<Vec<String>>) -> Self {
        Report { doc, csv, pass: true }
    }
}

/// Runs the CLI on `args` (the first item is the program name).
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CliOutput { code: 0, stdout: text, stderr: String::new() }
                }
                _ => CliOutput { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return usage_error("--threads must be at least 1".into());
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return usage_error(format!("cannot start worker threads: {e}")),
    };
    let format = cli.format;
    match pool.install(|| execute(cli.command)) {
        Ok(report) => {
            let stdout = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.doc).expect("values serialize");
                    s.push('\n');
                    s
                }
                Format::Csv => write_csv(&report.csv),
            };
            CliOutput { code: if report.pass { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(msg)) => usage_error(msg),
        Err(Failure::Input(e)) => usage_error(e.to_string()),
    }
}

fn usage_error(msg: String) -> CliOutput {
    CliOutput { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

fn write_csv(rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

/// The series fields merged into a document that already has metadata.
fn with_series(mut doc: Map<String, Value>, series: &LaurentWindow) -> Value {
    if let Value::Object(fields) = to_value(series) {
        doc.extend(fields);
    }
    Value::Object(doc)
}

fn series_csv(series: &LaurentWindow) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["degree".to_string(), "value".to_string()]];
    rows.extend(series.terms().map(|(d, c)| vec![d.to_string(), c.to_string()]));
    rows
}

fn meta(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn window(lo: i64, hi: i64) -> Result<Window, Failure> {
    if hi < lo {
        return Err(Failure::Usage(format!("--max-degree {hi} is below the lowest degree {lo}")));
    }
    Ok(Window::new(lo, hi)?)
}

fn load_model(source: &str) -> Result<StableModel, Failure> {
    if source == "default" {
        return Ok(StableModel::default());
    }
    let text = std::fs::read_to_string(PathBuf::from(source))
        .map_err(|e| Failure::Input(Error::Io(format!("cannot read {source}: {e}"))))?;
    Ok(StableModel::from_json(&text)?)
}

fn execute(command: Command) -> Result<Report, Failure> {
    match command {
        Command::CharTable { s } => char_table(s),
        Command::ASeries(args) => a_series(args),
        Command::BSeries { lambda, max_degree, hodge } => b_series(&lambda, max_degree, hodge),
        Command::SpDim { g, lambda } => {
            let dim = sp_irrep_dimension(g, &lambda);
            let doc = json!({
                "command": "sp-dim",
                "g": g,
                "lambda": lambda.to_string(),
                "dimension": bigint_json(&dim.clone().into()),
            });
            let csv = vec![
                vec!["g".into(), "lambda".into(), "dimension".into()],
                vec![g.to_string(), lambda.to_string(), dim.to_string()],
            ];
            Ok(Report::ok(doc, csv))
        }
        Command::SchurWeylCheck { g, s } => {
            if g == 0 {
                return Err(Failure::Usage("--g must be at least 1".into()));
            }
            let r = schur_weyl_check(g, s)?;
            let mut doc = meta(vec![("command", json!("schur-weyl-check"))]);
            if let Value::Object(fields) = to_value(&r) {
                doc.extend(fields);
            }
            let mut csv = vec![vec!["lambda".into(), "f_lambda".into(), "sp_dim".into(), "product".into()]];
            for row in &r.table {
                csv.push(vec![
                    row.lambda.clone(),
                    row.f_lambda.to_string(),
                    row.sp_dim.to_string(),
                    row.product.to_string(),
                ]);
            }
            Ok(Report { doc: Value::Object(doc), csv, pass: r.pass })
        }
        Command::Stable(args) => stable(args),
        Command::CSeries { variant, max_degree, weight_cap, agreement_s } => {
            c_series(variant, max_degree, weight_cap, agreement_s)
        }
        Command::AbelJacobiCheck { max_s, max_degree, convention, model } => {
            let model = load_model(&model)?;
            if max_degree < 0 {
                return Err(Failure::Usage("--max-degree must be nonnegative".into()));
            }
            if max_s > 6 {
                return Err(Failure::Input(Error::SizeOutOfRange { size: max_s, min: 0, max: 6 }));
            }
            let convention = match convention {
                ConventionArg::CohomologicalShift => AjConvention::CohomologicalShift,
                ConventionArg::PointWeight => AjConvention::PointWeight,
            };
            let r = abel_jacobi_check(max_s, &model, max_degree, convention)?;
            let mut doc = meta(vec![
                ("command", json!("abel-jacobi-check")),
                ("base_model", json!(model.label())),
            ]);
            if let Value::Object(fields) = to_value(&r) {
                doc.extend(fields);
            }
            let mut csv = vec![vec!["s".into(), "compared_through".into(), "first_discrepancy".into(), "pass".into()]];
            for row in &r.rows {
                csv.push(vec![
                    row.s.to_string(),
                    row.compared_through.to_string(),
                    row.first_discrepancy.map_or(String::new(), |d| d.to_string()),
                    row.pass.to_string(),
                ]);
            }
            Ok(Report { doc: Value::Object(doc), csv, pass: r.pass })
        }
        Command::Macdonald { g, s } => {
            let betti = sym_product_betti(g, s)?;
            let doc = json!({"command": "macdonald", "g": g, "s": s, "betti": betti});
            let mut csv = vec![vec!["degree".to_string(), "betti".to_string()]];
            csv.extend(betti.iter().enumerate().map(|(n, b)| vec![n.to_string(), b.to_string()]));
            Ok(Report::ok(doc, csv))
        }
        Command::OracleCheck { s, max_degree } => {
            let w = window(-(s as i64), max_degree)?;
            let r = cross_validate(s, w)?;
            let mut doc = meta(vec![("command", json!("oracle-check"))]);
            if let Value::Object(fields) = to_value(&r) {
                doc.extend(fields);
            }
            let csv = vec![
                vec!["s".into(), "degrees_checked".into(), "isotypic_cells".into(), "trace_cells".into(), "pass".into()],
                vec![
                    s.to_string(),
                    r.degrees_checked.to_string(),
                    r.isotypic_cells.to_string(),
                    r.trace_cells.to_string(),
                    r.pass.to_string(),
                ],
            ];
            Ok(Report { doc: Value::Object(doc), csv, pass: r.pass })
        }
    }
}

fn char_table(s: usize) -> Result<Report, Failure> {
    if s == 0 || s > 20 {
        return Err(Failure::Input(Error::SizeOutOfRange { size: s, min: 1, max: 20 }));
    }
    let table = CharacterTable::new(s);
    let partitions: Vec<String> = table.partitions().iter().map(ToString::to_string).collect();
    let classes: Vec<String> = table.classes().iter().map(ToString::to_string).collect();
    let values: Vec<Vec<Value>> = table
        .values()
        .iter()
        .map(|row| row.iter().map(bigint_json).collect())
        .collect();
    let mut csv = vec![vec!["lambda".to_string(), "class".to_string(), "value".to_string()]];
    for (l, row) in partitions.iter().zip(table.values()) {
        for (c, v) in classes.iter().zip(row) {
            csv.push(vec![l.clone(), c.clone(), v.to_string()]);
        }
    }
    let doc = json!({
        "command": "char-table",
        "s": s,
        "partitions": partitions,
        "classes": classes,
        "values": values,
    });
    Ok(Report::ok(doc, csv))
}

fn a_series(args: ASeriesArgs) -> Result<Report, Failure> {
    let v: VariantTag = args.variant.into();
    let w = window(0, args.max_degree)?;
    let (mode, series) = if let Some(mu) = &args.trace {
        ("trace", graded_trace(mu, v, args.s, w)?)
    } else if args.invariant {
        ("invariant", invariant_series(v, args.s, w)?)
    } else {
        ("hilbert", variant_hilbert_series(v, args.s, w)?)
    };
    let doc = meta(vec![
        ("command", json!("a-series")),
        ("s", json!(args.s)),
        ("variant", json!(v.name())),
        ("mode", json!(mode)),
        ("trace_class", args.trace.as_ref().map_or(Value::Null, |m| json!(m.to_string()))),
    ]);
    Ok(Report::ok(with_series(doc, &series), series_csv(&series)))
}

fn b_series(lambda: &NumericalPartition, max_degree: i64, hodge: bool) -> Result<Report, Failure> {
    if lambda.is_empty() {
        return Err(Failure::Usage("--lambda must be a nonempty partition".into()));
    }
    let s = lambda.size();
    let w = window(-(s as i64), max_degree)?;
    let series = BCharacters::new(s, w)?.isotypic_series(lambda)?;
    let mut doc = meta(vec![("command", json!("b-series")), ("lambda", json!(lambda.to_string()))]);
    if hodge {
        let types: Vec<Value> = series
            .terms()
            .map(|(n, _)| hodge_type(lambda, n).map(|(d, _)| json!([n, d])))
            .collect::<Result<_, _>>()?;
        doc.insert("hodge".into(), Value::Array(types));
    }
    Ok(Report::ok(with_series(doc, &series), series_csv(&series)))
}

fn stable(args: StableArgs) -> Result<Report, Failure> {
    let model = load_model(&args.model)?.with_policy(args.policy.into());
    let (quantity, series, ctx_lambda) = if let Some(lambda) = &args.lambda {
        if lambda.is_empty() {
            return Err(Failure::Usage("--lambda must be a nonempty partition".into()));
        }
        let w = window(-(lambda.size() as i64), args.max_degree)?;
        ("twisted", twisted_series(lambda, &model, w)?, Some(lambda.clone()))
    } else if let Some(s) = args.decorated {
        let labels = if args.unlabeled { PointLabels::Unlabeled } else { PointLabels::Labeled };
        let name = if args.unlabeled { "decorated-unlabeled" } else { "decorated-labeled" };
        (name, decorated_series(s, labels, &model, window(0, args.max_degree)?)?, None)
    } else {
        let s = args.curve.expect("argument group is required");
        let v = match args.curve_variant {
            CurveVariant::A => VariantTag::A,
            CurveVariant::Aprime => VariantTag::APrime,
        };
        ("curve-power", curve_power_series(s, v, &model, window(0, args.max_degree)?)?, None)
    };
    let cutoff = match args.g {
        Some(g) => {
            let ctx = match &ctx_lambda {
                Some(l) => CutoffContext::Twisted(l),
                None => CutoffContext::Curve,
            };
            json!(stable_cutoff(model.policy, g, ctx)?)
        }
        None => Value::Null,
    };
    let doc = meta(vec![
        ("command", json!("stable")),
        ("quantity", json!(quantity)),
        ("lambda", ctx_lambda.map_or(Value::Null, |l| json!(l.to_string()))),
        ("points", json!(args.decorated.or(args.curve))),
        ("g", json!(args.g)),
        ("policy", json!(model.policy.name())),
        ("stable_cutoff", cutoff),
        ("base_model", json!(model.label())),
    ]);
    Ok(Report::ok(with_series(doc, &series), series_csv(&series)))
}

fn c_series(
    variant: CSeriesVariant,
    max_degree: i64,
    weight_cap: usize,
    agreement_s: Option<usize>,
) -> Result<Report, Failure> {
    if max_degree < 0 {
        return Err(Failure::Usage("--max-degree must be nonnegative".into()));
    }
    if let Some(s) = agreement_s {
        let r = c_s_agreement(s, max_degree)?;
        let mut doc = meta(vec![("command", json!("c-series")), ("check", json!("agreement"))]);
        if let Value::Object(fields) = to_value(&r) {
            doc.extend(fields);
        }
        let csv = vec![
            vec!["s".into(), "verified_through".into(), "agreement_through".into(), "pass".into()],
            vec![s.to_string(), r.verified_through.to_string(), r.agreement_through.to_string(), r.pass.to_string()],
        ];
        return Ok(Report { doc: Value::Object(doc), csv, pass: r.pass });
    }
    let v = match variant {
        CSeriesVariant::C => CVariant::C,
        CSeriesVariant::Cprime => CVariant::CPrime,
    };
    let series = c_infty_series(v, max_degree, weight_cap, None)?;
    let mut doc = meta(vec![
        ("command", json!("c-series")),
        ("variant", json!(match v {
            CVariant::C => "c",
            CVariant::CPrime => "cprime",
        })),
    ]);
    if let Value::Object(fields) = to_value(&series) {
        doc.extend(fields);
    }
    let mut csv = vec![vec!["degree".to_string(), "weight".to_string(), "value".to_string()]];
    for d in 0..=max_degree {
        for wt in 0..=weight_cap {
            let c = series.coeff(d, wt).expect("inside window");
            if !num_traits::Zero::is_zero(c) {
                csv.push(vec![d.to_string(), wt.to_string(), c.to_string()]);
            }
        }
    }
    Ok(Report::ok(Value::Object(doc), csv))
}
