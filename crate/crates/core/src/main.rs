use std::fmt::Write as _;
use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Number, Value};

use plurigenus::infer::infer_basket;
use plurigenus::table::read_table;
use plurigenus::verify::{render_plain, verify_rows, DEFAULT_TRUNCATION};
use plurigenus::{
    builtin_table, certify, family_thresholds, h0_sequence, hilbert_coeffs, parse_basket,
    reid_h0, AbFamily, Error, Execution, NumericalData, Rational, SetupParams, WeightedFamily,
};

/// Exact orbifold Riemann-Roch, Hilbert series and Fano 3-fold table checks.
#[derive(Debug, Parser)]
#[command(name = "plurigenus", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Plurigenera h0(-mK) from volume and basket.
    Rr(RrArgs),
    /// Hilbert series coefficients of a weighted hypersurface.
    Hilbert(HilbertArgs),
    /// Verify the hypersurface table.
    Verify(VerifyArgs),
    /// Generic finiteness / birationality thresholds.
    Thresholds(ThresholdArgs),
    /// Search for baskets matching the Hilbert series of X_6d in P(1,a,b,2d,3d).
    InferBasket(InferArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("degree").required(true).args(["m", "upto"])))]
struct RrArgs {
    #[arg(long)]
    volume: String,
    #[arg(long)]
    basket: String,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    upto: Option<u64>,
}

#[derive(Debug, Args)]
struct HilbertArgs {
    #[arg(long)]
    weights: String,
    #[arg(long)]
    degree: u64,
    #[arg(long)]
    upto: u64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// `builtin` or a path to a no,a,b,volume,basket CSV file.
    #[arg(long, default_value = "builtin")]
    table: String,
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    upto: u64,
    /// Verify rows one after another instead of in parallel.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("family").multiple(true).args(["a", "b"]).conflicts_with("raw")))]
#[command(group(ArgGroup::new("raw").multiple(true).args(["m0", "m1"])))]
struct ThresholdArgs {
    #[arg(long, requires = "b")]
    a: Option<u64>,
    #[arg(long, requires = "a")]
    b: Option<u64>,
    #[arg(long, requires = "m1")]
    m0: Option<u64>,
    #[arg(long, requires = "m0")]
    m1: Option<u64>,
    #[arg(long)]
    mu0: Option<String>,
    #[arg(long)]
    zeta: Option<String>,
    #[arg(long)]
    genus: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
}

#[derive(Debug, Args)]
struct InferArgs {
    #[arg(long)]
    a: u64,
    #[arg(long)]
    b: u64,
    #[arg(long)]
    r_max: u64,
    #[arg(long)]
    max_points: u64,
    /// Degrees compared; defaults to 6d.
    #[arg(long)]
    upto: Option<u64>,
}

enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// A requested check did not hold: exit code 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InconsistentData { .. } | Error::NegativeCoefficient { .. } => {
                Failure::Check(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Rr(args) => run_rr(args, cli.format),
        Command::Hilbert(args) => run_hilbert(args, cli.format),
        Command::Verify(args) => run_verify(args, cli.format),
        Command::Thresholds(args) => run_thresholds(args, cli.format),
        Command::InferBasket(args) => run_infer(args, cli.format),
    }
}

fn big(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal integer"))
}

fn render_series(values: &[BigUint], column: &str, format: Format) -> String {
    match format {
        Format::Plain => {
            let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
            format!("{}\n", parts.join(" "))
        }
        Format::Json => {
            let arr = Value::Array(values.iter().map(big).collect());
            format!("{arr}\n")
        }
        Format::Csv => {
            let mut out = format!("m,{column}\n");
            for (m, v) in values.iter().enumerate() {
                let _ = writeln!(out, "{m},{v}");
            }
            out
        }
    }
}

fn run_rr(args: &RrArgs, format: Format) -> Outcome {
    let volume: Rational = args.volume.parse()?;
    let basket = parse_basket(&args.basket)?;
    let data = NumericalData::new(volume, basket)?;
    let text = match (args.m, args.upto) {
        (Some(m), _) => {
            let h = reid_h0(&data, m)?;
            match format {
                Format::Plain => format!("{h}\n"),
                Format::Json => format!("{}\n", big(&h)),
                Format::Csv => format!("m,h0\n{m},{h}\n"),
            }
        }
        (None, Some(n)) => render_series(&h0_sequence(&data, n)?, "h0", format),
        (None, None) => return Err(Failure::Usage("one of --m or --upto is required".into())),
    };
    Ok((text, true))
}

fn parse_weights(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|w| {
            w.trim()
                .parse::<u64>()
                .map_err(|_| Failure::Usage(format!("invalid weight '{}'", w.trim())))
        })
        .collect()
}

fn run_hilbert(args: &HilbertArgs, format: Format) -> Outcome {
    let weights = parse_weights(&args.weights)?;
    let family = WeightedFamily::new(&weights, args.degree)?;
    let coeffs = hilbert_coeffs(&family, args.upto)?;
    Ok((render_series(&coeffs, "coefficient", format), true))
}

fn run_verify(args: &VerifyArgs, format: Format) -> Outcome {
    let rows = if args.table == "builtin" {
        builtin_table()
    } else {
        let path = PathBuf::from(&args.table);
        let file = File::open(&path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        read_table(file)?
    };
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let reports = verify_rows(&rows, args.upto, exec)?;
    let ok = reports.iter().all(|r| r.overall);
    let text = match format {
        Format::Plain => render_plain(&reports),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&reports).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("row_no,check,pass,m,detail\n");
            for r in &reports {
                for c in &r.checks {
                    let m = c.m.map(|m| m.to_string()).unwrap_or_default();
                    let detail = c.detail.as_deref().unwrap_or("").replace('"', "\"\"");
                    let _ = writeln!(out, "{},{},{},{m},\"{detail}\"", r.row_no, c.name, c.pass);
                }
            }
            out
        }
    };
    Ok((text, ok))
}

fn parse_rational_opt(text: &Option<String>) -> Result<Option<Rational>, Failure> {
    text.as_deref()
        .map(|s| s.parse::<Rational>().map_err(Failure::from))
        .transpose()
}

fn run_thresholds(args: &ThresholdArgs, format: Format) -> Outcome {
    let mut text = String::new();
    let (m0, m1) = match (args.a, args.b, args.m0, args.m1) {
        (Some(a), Some(b), _, _) => {
            let family = AbFamily::new(a, b)?;
            let (gen_finite_at, birational_at) = family_thresholds(&family);
            text += &match format {
                Format::Plain => {
                    format!("gen-finite at {gen_finite_at}, birational at {birational_at}\n")
                }
                Format::Json => format!(
                    "{}\n",
                    json!({"gen_finite_at": gen_finite_at, "birational_at": birational_at})
                ),
                Format::Csv => format!("gen_finite_at,birational_at\n{gen_finite_at},{birational_at}\n"),
            };
            if args.m.is_none() {
                return Ok((text, true));
            }
            (a, b)
        }
        (_, _, Some(m0), Some(m1)) => (m0, m1),
        _ => return Err(Failure::Usage("give either --a/--b or --m0/--m1".into())),
    };
    let params = SetupParams::new(
        m0,
        m1,
        parse_rational_opt(&args.mu0)?,
        parse_rational_opt(&args.zeta)?,
        args.genus,
    )?;
    let m = args
        .m
        .ok_or_else(|| Failure::Usage("--m is required with --m0/--m1".into()))?;
    let cert = certify(&params, m);
    let rule = cert.rule.map(|r| r.label()).unwrap_or("none");
    text += &match format {
        Format::Plain => {
            let word = |s: plurigenus::Status| {
                if s.is_certified() {
                    "certified"
                } else {
                    "not certified"
                }
            };
            format!(
                "m = {m}\ngenerically finite: {}\nbirational: {}\nrule: {rule}\n",
                word(cert.gen_finite),
                word(cert.birational)
            )
        }
        Format::Json => format!("{}\n", serde_json::to_string(&cert).expect("serializable")),
        Format::Csv => format!(
            "m,gen_finite,birational,rule\n{m},{},{},{rule}\n",
            cert.gen_finite.is_certified(),
            cert.birational.is_certified()
        ),
    };
    Ok((text, true))
}

fn run_infer(args: &InferArgs, format: Format) -> Outcome {
    let family = AbFamily::new(args.a, args.b)?;
    let n = args.upto.unwrap_or(6 * family.d());
    let search = infer_basket(&family, args.r_max, args.max_points, n)?;
    if let Some(diag) = &search.diagnostic {
        eprintln!("note: {diag}");
    }
    let text = match format {
        Format::Plain => search.matches.iter().map(|b| format!("{b}\n")).collect(),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(&search.matches).expect("serializable")
        ),
        Format::Csv => {
            let mut out = String::from("index,basket\n");
            for (i, b) in search.matches.iter().enumerate() {
                let _ = writeln!(out, "{i},\"{b}\"");
            }
            out
        }
    };
    Ok((text, true))
}
