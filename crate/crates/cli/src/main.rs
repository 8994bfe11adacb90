//! Batch front-end: construct, power, shift, verify and compare metric
//! pairs; enumerate power bases and take matrix superpowers.  Output is
//! JSON on stdout, human-readable notes on stderr.

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superpairs::catalog::{
    type_i, type_ii, type_iii, verify_example_ii, verify_example_iii, ExampleOutcome,
};
use superpairs::jordan::{check_metric_pair, tensor_shift, MetricPair};
use superpairs::json::{assert_rational_pair, PairJson, SuperMatrixJson};
use superpairs::lie::Report;
use superpairs::pair_powers::{
    oracle_power_pair, power_pair, restricted_tensor_power, PairPowerKind,
};
use superpairs::powers::{
    dim_power, enum_indices, matrix_power, superminor, IndexTuple, PowerKind,
};
use superpairs::{EvenMap, Parity, Scalar};

#[derive(Parser)]
#[command(
    name = "superpairs",
    version,
    about = "exact superpowers of metric Jordan superpairs"
)]
struct Cli {
    /// Scalar field accepted in input documents.
    #[arg(long, global = true, value_enum, default_value_t = Field::Rational)]
    field: Field,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Rational,
    Gaussian,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Alt,
    Sym,
}

impl Kind {
    fn power(self) -> PowerKind {
        match self {
            Kind::Alt => PowerKind::Alt,
            Kind::Sym => PowerKind::Sym,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PowerVerb {
    Alt,
    Sym,
    Tensor,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "II")]
    Ii,
    #[value(name = "III")]
    Iii,
}

#[derive(Args)]
struct PairSource {
    /// Catalog pair: typeI:p,q — typeII:n — typeIII:n.
    #[arg(long, conflicts_with = "file")]
    pair: Option<String>,
    /// Path to a pair JSON document.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the n-th power basis.
    Dims {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        d0: usize,
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        n: usize,
    },
    /// Enumerate the canonical power basis labels.
    Enum {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        d0: usize,
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        n: usize,
    },
    /// Superminor of an even supermatrix at a pair of index tuples.
    Minor {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Path to a supermatrix JSON document.
        #[arg(long)]
        file: String,
        #[arg(long)]
        row: String,
        #[arg(long)]
        col: String,
    },
    /// The n-th power of an even supermatrix.
    Matpow {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        file: String,
        #[arg(long)]
        n: usize,
    },
    /// Emit a catalog pair (or re-emit a pair document).
    Build {
        #[command(flatten)]
        source: PairSource,
    },
    /// Alternating, symmetric, or restricted tensor power of a pair.
    Power {
        #[arg(long, value_enum)]
        kind: PowerVerb,
        #[command(flatten)]
        source: PairSource,
        #[arg(long)]
        n: usize,
    },
    /// Tensor-shift of a pair by (lambda, parity).
    Shift {
        #[command(flatten)]
        source: PairSource,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// 0 for even, 1 for odd.
        #[arg(long, default_value_t = 0)]
        parity: u8,
    },
    /// Check all metric pair axioms; exits 1 when any fail.
    Verify {
        #[command(flatten)]
        source: PairSource,
    },
    /// Compare the closed-form power against the Faulkner-route oracle.
    OracleDiff {
        #[arg(long, value_enum)]
        kind: PowerVerb,
        #[command(flatten)]
        source: PairSource,
        #[arg(long)]
        n: usize,
    },
    /// Run a worked isomorphism verification.
    Examples {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        n: usize,
    },
}

enum Outcome {
    Ok(Value),
    Fail(Value),
}

fn malformed(msg: impl Into<String>) -> String {
    msg.into()
}

fn load_pair(source: &PairSource, field: Field) -> Result<MetricPair, String> {
    match (&source.pair, &source.file) {
        (Some(name), None) => build_catalog_pair(name),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| malformed(format!("cannot read {path}: {e}")))?;
            let doc: PairJson = serde_json::from_str(&text)
                .map_err(|e| malformed(format!("malformed pair JSON in {path}: {e}")))?;
            let mp = doc
                .into_pair()
                .map_err(|e| malformed(format!("invalid pair document {path}: {e}")))?;
            if matches!(field, Field::Rational) {
                assert_rational_pair(&mp).map_err(|e| malformed(format!("{e}")))?;
            }
            Ok(mp)
        }
        _ => Err(malformed("exactly one of --pair or --file is required")),
    }
}

fn build_catalog_pair(name: &str) -> Result<MetricPair, String> {
    let (head, args) = name.split_once(':').ok_or_else(|| {
        malformed(format!(
            "unknown pair name {name:?}; expected typeI:p,q / typeII:n / typeIII:n"
        ))
    })?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|a| {
            a.trim()
                .parse::<usize>()
                .map_err(|_| malformed(format!("bad pair parameter in {name:?}")))
        })
        .collect::<Result<_, _>>()?;
    let made = match (head, nums.as_slice()) {
        ("typeI", [p, q]) => type_i(*p, *q),
        ("typeII", [n]) => type_ii(*n),
        ("typeIII", [n]) => type_iii(*n),
        _ => return Err(malformed(format!("unknown pair name {name:?}"))),
    };
    made.map_err(|e| malformed(format!("cannot build {name}: {e}")))
}

fn load_even_matrix(path: &str) -> Result<EvenMap, String> {
    let text =
        fs::read_to_string(path).map_err(|e| malformed(format!("cannot read {path}: {e}")))?;
    let doc: SuperMatrixJson = serde_json::from_str(&text)
        .map_err(|e| malformed(format!("malformed supermatrix JSON in {path}: {e}")))?;
    let sm = doc
        .into_matrix()
        .map_err(|e| malformed(format!("invalid supermatrix document {path}: {e}")))?;
    EvenMap::new(sm).map_err(|e| malformed(format!("{path}: {e}")))
}

fn report_json(report: &Report) -> Value {
    Value::Array(
        report
            .violations
            .iter()
            .map(|v| json!({"law": v.law, "witness": v.witness}))
            .collect(),
    )
}

fn scalar_json(s: &Scalar) -> Value {
    serde_json::to_value(s).expect("scalar serialization")
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Dims { kind, d0, d1, n } => {
            let dim =
                dim_power(kind.power(), *d0, *d1, *n).map_err(|e| malformed(format!("{e}")))?;
            Ok(Outcome::Ok(json!({"dim": dim})))
        }
        Command::Enum { kind, d0, d1, n } => {
            let space = superpairs::SuperSpace::new(*d0, *d1);
            let tuples =
                enum_indices(kind.power(), space, *n).map_err(|e| malformed(format!("{e}")))?;
            let labels: Vec<String> = tuples.iter().map(|t| t.to_string()).collect();
            Ok(Outcome::Ok(json!({
                "kind": kind.power().label(),
                "n": n,
                "tuples": labels,
            })))
        }
        Command::Minor {
            kind,
            file,
            row,
            col,
        } => {
            let m = load_even_matrix(file)?;
            let rt = IndexTuple::parse(kind.power(), m.row_space, row)
                .map_err(|e| malformed(format!("--row: {e}")))?;
            let ct = IndexTuple::parse(kind.power(), m.col_space, col)
                .map_err(|e| malformed(format!("--col: {e}")))?;
            let v =
                superminor(kind.power(), &m, &rt, &ct).map_err(|e| malformed(format!("{e}")))?;
            eprintln!("superminor at ({rt}, {ct})");
            Ok(Outcome::Ok(json!({"value": scalar_json(&v)})))
        }
        Command::Matpow { kind, file, n } => {
            let m = load_even_matrix(file)?;
            let p = matrix_power(kind.power(), &m, *n).map_err(|e| malformed(format!("{e}")))?;
            let rows: Vec<String> = p.row_tuples.iter().map(|t| t.to_string()).collect();
            let cols: Vec<String> = p.col_tuples.iter().map(|t| t.to_string()).collect();
            let entries: Vec<Vec<Value>> = (0..p.mat.rows())
                .map(|i| {
                    (0..p.mat.cols())
                        .map(|j| scalar_json(p.mat.at(i, j)))
                        .collect()
                })
                .collect();
            Ok(Outcome::Ok(json!({
                "kind": kind.power().label(),
                "n": n,
                "rowLabels": rows,
                "colLabels": cols,
                "entries": entries,
            })))
        }
        Command::Build { source } => {
            let mp = load_pair(source, cli.field)?;
            eprintln!(
                "pair on ({}|{}) x ({}|{})",
                mp.pair.minus.d0, mp.pair.minus.d1, mp.pair.plus.d0, mp.pair.plus.d1
            );
            Ok(Outcome::Ok(
                serde_json::to_value(PairJson::from_pair(&mp)).unwrap(),
            ))
        }
        Command::Power { kind, source, n } => {
            let mp = load_pair(source, cli.field)?;
            let powered = match kind {
                PowerVerb::Alt => power_pair(PowerKind::Alt, &mp, *n),
                PowerVerb::Sym => power_pair(PowerKind::Sym, &mp, *n),
                PowerVerb::Tensor => restricted_tensor_power(&mp, *n),
            }
            .map_err(|e| malformed(format!("{e}")))?;
            eprintln!("power dimension {}", powered.pair.minus.dim());
            Ok(Outcome::Ok(
                serde_json::to_value(PairJson::from_pair(&powered)).unwrap(),
            ))
        }
        Command::Shift {
            source,
            lambda,
            parity,
        } => {
            let mp = load_pair(source, cli.field)?;
            let l = Scalar::from_str(lambda).map_err(|e| malformed(format!("--lambda: {e}")))?;
            let a = match parity {
                0 => Parity::Even,
                1 => Parity::Odd,
                other => return Err(malformed(format!("--parity must be 0 or 1, got {other}"))),
            };
            let shifted = tensor_shift(&mp, &l, a).map_err(|e| malformed(format!("{e}")))?;
            Ok(Outcome::Ok(
                serde_json::to_value(PairJson::from_pair(&shifted)).unwrap(),
            ))
        }
        Command::Verify { source } => {
            let mp = load_pair(source, cli.field)?;
            let report = check_metric_pair(&mp);
            let valid = report.is_valid();
            let body = json!({"valid": valid, "violations": report_json(&report)});
            eprintln!("{} violations", report.violations.len());
            if valid {
                Ok(Outcome::Ok(body))
            } else {
                Ok(Outcome::Fail(body))
            }
        }
        Command::OracleDiff { kind, source, n } => {
            let mp = load_pair(source, cli.field)?;
            let (closed, kind3) = match kind {
                PowerVerb::Alt => (power_pair(PowerKind::Alt, &mp, *n), PairPowerKind::Alt),
                PowerVerb::Sym => (power_pair(PowerKind::Sym, &mp, *n), PairPowerKind::Sym),
                PowerVerb::Tensor => (restricted_tensor_power(&mp, *n), PairPowerKind::Tensor),
            };
            let closed = closed.map_err(|e| malformed(format!("{e}")))?;
            let oracle =
                oracle_power_pair(kind3, &mp, *n).map_err(|e| malformed(format!("{e}")))?;
            let equal = closed.coefficients_equal(&oracle);
            let body = json!({"equal": equal});
            eprintln!(
                "closed form vs oracle: {}",
                if equal { "equal" } else { "DIFFER" }
            );
            if equal {
                Ok(Outcome::Ok(body))
            } else {
                Ok(Outcome::Fail(body))
            }
        }
        Command::Examples { which, n } => {
            let outcome: ExampleOutcome = match which {
                Which::Ii => verify_example_ii(*n),
                Which::Iii => verify_example_iii(*n),
            }
            .map_err(|e| malformed(format!("{e}")))?;
            let multiplier = outcome
                .multiplier
                .as_ref()
                .map(scalar_json)
                .unwrap_or(Value::Null);
            let body = json!({
                "result": if outcome.pass { "PASS" } else { "FAIL" },
                "multiplier": multiplier,
                "violations": report_json(&outcome.report),
            });
            if outcome.pass {
                Ok(Outcome::Ok(body))
            } else {
                Ok(Outcome::Fail(body))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(v)) => {
            println!("{v}");
            ExitCode::from(1)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
