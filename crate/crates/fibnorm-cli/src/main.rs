//! fibnorm: exact Fibonacci vectors, matrices, p-norms, p-distances,
//! identity verification, the threshold exponent, and benchmarks.
//!
//! Exit codes: 0 success, 1 verification refutation, 2 usage error,
//! 3 degenerate-value error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use fibnorm_core::bench::{run_bench, BenchCase, BenchQuantity};
use fibnorm_core::distances::{golden_approx, parallelogram_check, sum_diff_one_norm, ShiftedPair};
use fibnorm_core::identities::{RangeOverrides, Registry, Status};
use fibnorm_core::norm::{matrix_pnorm, pnorm, NormOrder, PNormResult};
use fibnorm_core::real::Precision;
use fibnorm_core::structs::{fib_vector, fib_window, reorganized_rows, FibMatrix};
use fibnorm_core::threshold::{minimal_exponent, verify_theorem, ThresholdQuery};
use fibnorm_core::{kfib, Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "fibnorm",
    version,
    about = "Exact Fibonacci sequence, vector and matrix p-norms, with oracle-backed identity verification"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: Format,

    /// Working precision in significand bits for floating paths
    #[arg(long, global = true, env = "FIBNORM_PRECISION", default_value_t = 128)]
    precision: u32,

    /// Seed for benchmark execution-order shuffling
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a run of k-Fibonacci numbers g(k)_from .. g(k)_to
    Seq {
        /// Sequence order (2 = the Fibonacci sequence)
        #[arg(long, default_value_t = 2)]
        k: u32,
        from: u64,
        to: u64,
    },
    /// p-norm of a Fibonacci vector
    VectorNorm {
        #[command(subcommand)]
        object: VectorObject,
    },
    /// Entrywise p-norm of a Fibonacci matrix
    MatrixNorm {
        #[command(subcommand)]
        object: MatrixObject,
    },
    /// Verify closed-form identities against brute-force oracles
    Verify {
        /// Identity ids, or "all" for every registered identity
        #[arg(required = true)]
        ids: Vec<String>,
        /// Narrow the n sweep, e.g. 1..50
        #[arg(long)]
        n_range: Option<String>,
        /// Narrow the r sweep, e.g. 1..10
        #[arg(long)]
        r_range: Option<String>,
    },
    /// Sufficient exponent making the p-norm sit within epsilon of the max
    ThresholdP { n: u64, epsilon: f64 },
    /// p-distance between window vectors d positions apart
    Distance { n: u64, r: u64, d: u64, p: u32 },
    /// Time closed-form vs direct evaluation (correctness-checked first)
    Bench {
        /// Problem sizes, comma separated
        #[arg(long, value_delimiter = ',', default_value = "100000")]
        sizes: Vec<u64>,
        /// Quantities: q1norm, q2norm_sq, s1norm
        #[arg(long, value_delimiter = ',', default_value = "q1norm,q2norm_sq")]
        quantities: Vec<String>,
        /// Repetitions per strategy (minimum 3)
        #[arg(long, default_value_t = 3)]
        reps: u32,
    },
}

#[derive(Subcommand)]
enum VectorObject {
    /// Prefix vector (F_1 ... F_n)
    Qvec {
        n: u64,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Window vector (F_{n+1} ... F_{n+r})
    Nrvec {
        n: u64,
        r: u64,
        #[command(flatten)]
        order: OrderArg,
    },
}

#[derive(Subcommand)]
enum MatrixObject {
    /// Lower-triangular k-Fibonacci matrix of order n
    Fmat {
        k: u32,
        n: u64,
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        show: ShowArg,
    },
    /// Symmetric k-Fibonacci matrix of order n
    Qmat {
        k: u32,
        n: u64,
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        show: ShowArg,
    },
    /// Hankel k-Fibonacci matrix of order n
    Smat {
        k: u32,
        n: u64,
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        show: ShowArg,
    },
}

#[derive(Args)]
struct OrderArg {
    /// Norm order: an integer, a real like 2.5, "inf", "-inf", or "0"
    #[arg(long, allow_hyphen_values = true)]
    order: String,
}

#[derive(Args)]
struct ShowArg {
    /// Also print the matrix itself (and the reorganized triangle for smat)
    #[arg(long)]
    show: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    fn degenerate(message: impl Into<String>) -> Failure {
        Failure { code: 3, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::RangeOverflow(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let prec = Precision::new(cli.precision);
    match cli.command {
        Command::Seq { k, from, to } => cmd_seq(k, from, to, cli.format),
        Command::VectorNorm { object } => cmd_vector_norm(object, cli.format, prec),
        Command::MatrixNorm { object } => cmd_matrix_norm(object, cli.format, prec),
        Command::Verify { ids, n_range, r_range } => {
            cmd_verify(ids, n_range, r_range, cli.format, prec)
        }
        Command::ThresholdP { n, epsilon } => cmd_threshold(n, epsilon, cli.format, prec),
        Command::Distance { n, r, d, p } => cmd_distance(n, r, d, p, cli.format, prec),
        Command::Bench { sizes, quantities, reps } => {
            cmd_bench(sizes, quantities, reps, cli.seed, cli.format)
        }
    }
}

fn cmd_seq(k: u32, from: u64, to: u64, format: Format) -> Result<u8, Failure> {
    if from < 1 || from > to {
        return Err(Failure::usage(format!("need 1 <= from <= to, got {from}..{to}")));
    }
    let values: Vec<String> =
        (from..=to).map(|n| kfib(k, n).map(|v| v.to_string())).collect::<Result<_, _>>()?;
    match format {
        Format::Plain => println!("{}", values.join(" ")),
        Format::Csv => println!("{}", values.join(",")),
        Format::Json => println!("{}", json!({ "k": k, "values": values })),
    }
    Ok(0)
}

fn norm_exit_code(result: &PNormResult) -> u8 {
    // a degenerate infinite value has no exact representation to print
    if result.degenerate && result.value.is_infinite() {
        3
    } else {
        0
    }
}

fn render_norm(
    object: String,
    params: Vec<(&str, u64)>,
    result: &PNormResult,
    format: Format,
) -> u8 {
    let exact = result.exact_string();
    let value = result.value.to_string();
    match format {
        Format::Plain => {
            let ps: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!("object: {} {}", object, ps.join(" "));
            println!("order: {}", result.order.token());
            match &exact {
                Some(e) => println!("exact: {e}"),
                None => println!("exact: (none)"),
            }
            println!("value: {value}");
            println!("degenerate: {}", result.degenerate);
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("object".into(), json!(object));
            for (k, v) in &params {
                obj.insert((*k).into(), json!(v));
            }
            obj.insert("order".into(), json!(result.order.token()));
            obj.insert("exact".into(), exact.clone().map(Json::String).unwrap_or(Json::Null));
            obj.insert("value".into(), json!(value));
            obj.insert("degenerate".into(), json!(result.degenerate));
            println!("{}", Json::Object(obj));
        }
        Format::Csv => {
            let ps: Vec<String> = params.iter().map(|(_, v)| v.to_string()).collect();
            println!(
                "{},{},{},{},{},{}",
                object,
                ps.join(":"),
                result.order.token(),
                exact.unwrap_or_else(|| "".into()),
                value,
                result.degenerate
            );
        }
    }
    norm_exit_code(result)
}

fn cmd_vector_norm(object: VectorObject, format: Format, prec: Precision) -> Result<u8, Failure> {
    match object {
        VectorObject::Qvec { n, order } => {
            if n < 1 {
                return Err(Failure::usage("qvec needs n >= 1"));
            }
            let order = NormOrder::parse(&order.order)?;
            let result = pnorm(&fib_vector(n), order, prec)?;
            Ok(render_norm("qvec".into(), vec![("n", n)], &result, format))
        }
        VectorObject::Nrvec { n, r, order } => {
            if r < 1 {
                return Err(Failure::usage("nrvec needs r >= 1"));
            }
            let order = NormOrder::parse(&order.order)?;
            let result = pnorm(&fib_window(n, r), order, prec)?;
            Ok(render_norm("nrvec".into(), vec![("n", n), ("r", r)], &result, format))
        }
    }
}

fn build_matrix(kind: &str, k: u32, n: u64) -> Result<FibMatrix, Failure> {
    if n < 1 {
        return Err(Failure::usage("matrix order must be >= 1"));
    }
    let m = match kind {
        "fmat" => FibMatrix::lower_triangular(k, n as usize)?,
        "qmat" => FibMatrix::symmetric(k, n as usize)?,
        "smat" => FibMatrix::hankel(k, n as usize)?,
        _ => unreachable!(),
    };
    Ok(m)
}

fn cmd_matrix_norm(object: MatrixObject, format: Format, prec: Precision) -> Result<u8, Failure> {
    let (kind, k, n, order, show) = match object {
        MatrixObject::Fmat { k, n, order, show } => ("fmat", k, n, order, show),
        MatrixObject::Qmat { k, n, order, show } => ("qmat", k, n, order, show),
        MatrixObject::Smat { k, n, order, show } => ("smat", k, n, order, show),
    };
    let order = NormOrder::parse(&order.order)?;
    let matrix = build_matrix(kind, k, n)?;
    let result = matrix_pnorm(matrix.matrix(), order, prec)?;

    if show.show {
        match format {
            Format::Plain => {
                println!("{}", matrix.to_csv().replace(',', " "));
                if kind == "smat" && k == 2 {
                    println!("reorganized:");
                    for (value, count) in reorganized_rows(n as usize) {
                        let row = vec![value.to_string(); count as usize].join(" ");
                        println!("{row}");
                    }
                }
            }
            Format::Json => println!("{}", matrix.to_json()),
            Format::Csv => println!("{}", matrix.to_csv()),
        }
    }

    Ok(render_norm(kind.into(), vec![("k", k as u64), ("n", n)], &result, format))
}

fn parse_range(text: &str) -> Result<(u64, u64), Failure> {
    let cleaned = text.replace("..=", "..");
    let parts: Vec<&str> = if cleaned.contains("..") {
        cleaned.splitn(2, "..").collect()
    } else {
        cleaned.splitn(2, ':').collect()
    };
    if parts.len() != 2 {
        return Err(Failure::usage(format!("cannot parse range `{text}` (use lo..hi)")));
    }
    let lo = parts[0].parse::<u64>().map_err(|e| Failure::usage(e.to_string()))?;
    let hi = parts[1].parse::<u64>().map_err(|e| Failure::usage(e.to_string()))?;
    Ok((lo, hi))
}

fn report_to_json(report: &fibnorm_core::identities::IdentityReport) -> Json {
    let mut obj = serde_json::Map::new();
    obj.insert("id".into(), json!(report.id));
    obj.insert("range".into(), json!(report.range));
    obj.insert("status".into(), json!(report.status.token()));
    if let Some(ce) = &report.counterexample {
        obj.insert(
            "counterexample".into(),
            json!({ "params": ce.params, "closed": ce.closed, "oracle": ce.oracle }),
        );
    }
    if let Some(note) = &report.erratum_note {
        obj.insert("erratum_note".into(), json!(note));
    }
    Json::Object(obj)
}

fn cmd_verify(
    ids: Vec<String>,
    n_range: Option<String>,
    r_range: Option<String>,
    format: Format,
    prec: Precision,
) -> Result<u8, Failure> {
    let registry = Registry::standard(prec);
    let overrides = RangeOverrides {
        n: n_range.as_deref().map(parse_range).transpose()?,
        r: r_range.as_deref().map(parse_range).transpose()?,
        p: None,
    };

    let reports = if ids.len() == 1 && ids[0] == "all" {
        registry.verify_all(&overrides)
    } else {
        let mut out = Vec::new();
        for id in &ids {
            out.push(registry.verify(id, &overrides)?);
        }
        out
    };

    match format {
        Format::Plain => {
            for rep in &reports {
                println!("{} [{}] {}", rep.id, rep.range, rep.status.token());
                if let Some(ce) = &rep.counterexample {
                    println!("  at {}: closed {} vs oracle {}", ce.params, ce.closed, ce.oracle);
                }
                if let Some(note) = &rep.erratum_note {
                    println!("  note: {note}");
                }
            }
        }
        Format::Json => {
            let arr: Vec<Json> = reports.iter().map(report_to_json).collect();
            println!("{}", Json::Array(arr));
        }
        Format::Csv => {
            println!("id,range,status,counterexample,erratum");
            for rep in &reports {
                let ce = rep
                    .counterexample
                    .as_ref()
                    .map(|c| format!("{}: {} vs {}", c.params, c.closed, c.oracle))
                    .unwrap_or_default();
                println!(
                    "{},{},{},\"{}\",\"{}\"",
                    rep.id,
                    rep.range,
                    rep.status.token(),
                    ce,
                    rep.erratum_note.clone().unwrap_or_default()
                );
            }
        }
    }

    let refuted = reports.iter().any(|r| r.status == Status::Refuted);
    Ok(if refuted { 1 } else { 0 })
}

fn cmd_threshold(n: u64, epsilon: f64, format: Format, prec: Precision) -> Result<u8, Failure> {
    let query = ThresholdQuery::new(n, epsilon)?;
    let report = verify_theorem(query, &[0.0, 1.0, 10.0], prec);
    let p_empirical = minimal_exponent(query, prec);
    match format {
        Format::Plain => {
            println!("n: {n}");
            println!("epsilon: {epsilon}");
            println!("p_bound: {}", report.p_bound);
            println!("p_empirical: {p_empirical}");
            println!("gap_at_bound: {}", report.gap_at_bound);
            println!("bound_holds: {}", report.all_good());
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "n": n,
                    "epsilon": epsilon,
                    "p_bound": report.p_bound,
                    "p_empirical": p_empirical,
                    "gap_at_bound": report.gap_at_bound,
                })
            );
        }
        Format::Csv => {
            println!("n,epsilon,p_bound,p_empirical,gap_at_bound");
            println!("{n},{epsilon},{},{p_empirical},{}", report.p_bound, report.gap_at_bound);
        }
    }
    if !report.all_good() {
        return Err(Failure::degenerate("threshold bound failed verification".to_string()));
    }
    Ok(0)
}

fn cmd_distance(
    n: u64,
    r: u64,
    d: u64,
    p: u32,
    format: Format,
    prec: Precision,
) -> Result<u8, Failure> {
    if r < 1 || d < 1 || p < 1 {
        return Err(Failure::usage("distance needs r >= 1, d >= 1, p >= 1"));
    }
    let pair = ShiftedPair::new(n, r, d);
    let exact = pair.distance_power_sum(p, prec);
    let closed = match d {
        2 => Some(fibnorm_core::d2_power_sum_closed(n, r, p)),
        3 => Some(fibnorm_core::d3_power_sum_closed(n, r, p)),
        _ => None,
    };
    let value = pair
        .distance(fibnorm_core::NormOrder::Integer(p as i64), prec)
        .value
        .to_string();

    let mut extra = serde_json::Map::new();
    if p == 2 {
        let para = parallelogram_check(n, r, d, prec);
        let golden = golden_approx(n, r, d, prec);
        extra.insert("parallelogram_lhs".into(), json!(para.lhs().to_string()));
        extra.insert("parallelogram_rhs".into(), json!(para.rhs_direct.to_string()));
        extra.insert("approx".into(), json!(golden.approx.to_string()));
        extra.insert("abs_err".into(), json!(golden.abs_err.to_f64()));
        extra.insert("rel_err".into(), json!(golden.rel_err));
    }
    if p == 1 && n >= 1 {
        let sd = sum_diff_one_norm(n, r, d, prec);
        extra.insert("sum_diff_direct".into(), json!(sd.direct.to_string()));
        if sd.agrees() {
            extra.insert("sum_diff_closed".into(), json!(sd.closed.to_string()));
        }
    }

    match format {
        Format::Plain => {
            println!("n: {n}  r: {r}  d: {d}  p: {p}");
            println!("exact: {exact}");
            match &closed {
                Some(c) => println!("closed_form: {c}"),
                None => println!("closed_form: (direct evaluation; no closed form for d={d})"),
            }
            println!("value: {value}");
            for (key, val) in &extra {
                println!("{key}: {val}");
            }
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("n".into(), json!(n));
            obj.insert("r".into(), json!(r));
            obj.insert("d".into(), json!(d));
            obj.insert("p".into(), json!(p));
            obj.insert("exact".into(), json!(exact.to_string()));
            obj.insert(
                "closed_form".into(),
                closed.map(|c| Json::String(c.to_string())).unwrap_or(Json::Null),
            );
            obj.insert("value".into(), json!(value));
            for (key, val) in extra {
                obj.insert(key, val);
            }
            println!("{}", Json::Object(obj));
        }
        Format::Csv => {
            println!("n,r,d,p,exact,closed_form,value");
            println!(
                "{n},{r},{d},{p},{exact},{},{value}",
                closed.map(|c| c.to_string()).unwrap_or_default()
            );
        }
    }
    Ok(0)
}

fn cmd_bench(
    sizes: Vec<u64>,
    quantities: Vec<String>,
    reps: u32,
    seed: Option<u64>,
    format: Format,
) -> Result<u8, Failure> {
    let quantities: Vec<BenchQuantity> =
        quantities.iter().map(|q| BenchQuantity::parse(q)).collect::<Result<_, _>>()?;

    let mut rows: Vec<Json> = Vec::new();
    if format == Format::Csv {
        println!("quantity,n,strategy,median_ns,digest");
    }
    for &n in &sizes {
        for &quantity in &quantities {
            let case = BenchCase::new(quantity, n, reps)?;
            let report = run_bench(&case, seed)?;
            for timing in &report.timings {
                match format {
                    Format::Plain => println!(
                        "{:<10} n={:<8} {:<12} median {:>12} ns  digest {}",
                        report.quantity.token(),
                        report.n,
                        timing.strategy.token(),
                        timing.median_ns,
                        report.digest
                    ),
                    Format::Csv => println!(
                        "{},{},{},{},{}",
                        report.quantity.token(),
                        report.n,
                        timing.strategy.token(),
                        timing.median_ns,
                        report.digest
                    ),
                    Format::Json => rows.push(json!({
                        "quantity": report.quantity.token(),
                        "n": report.n,
                        "strategy": timing.strategy.token(),
                        "median_ns": timing.median_ns as u64,
                        "digest": report.digest,
                    })),
                }
            }
        }
    }
    if format == Format::Json {
        println!("{}", Json::Array(rows));
    }
    Ok(0)
}
