use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use welzl::bench::{self, Suite};
use welzl::cover;
use welzl::engine::{self, AnyEngine, OrderEngine, SearchOptions};
use welzl::generators::{Family, GenSpec, PREFIX_CLI_CAP};
use welzl::io::{self, read_system};
use welzl::verify;
use welzl::{Error, LinearityParams, Order};

const EXIT_FALSE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_CERT: u8 = 4;
const EXIT_CAP: u8 = 5;

#[derive(Parser)]
#[command(name = "welzl", version, about = "Low-crossing orders for set systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug)]
enum CArg {
    Value(f64),
    Auto,
}

impl FromStr for CArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(CArg::Auto);
        }
        s.parse::<f64>().map(CArg::Value).map_err(|_| format!("expected a number or `auto`, found {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Ssys,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance: prefix N | grid R C | bounded-degree N D | halfplane P S
    Gen {
        family: String,
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "ssys")]
        format: Format,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compute a low-crossing order
    Order {
        input: PathBuf,
        #[arg(long)]
        c: CArg,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Run traces as JSON
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Certify an order against the crossing bound
    Verify {
        input: PathBuf,
        order: PathBuf,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 1)]
        d: u32,
    },
    /// Build and audit a neighborhood cover from an order
    Cover {
        input: PathBuf,
        order: PathBuf,
        #[arg(long)]
        c: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark suite
    Bench {
        suite: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
}

enum Failure {
    Input(Error),
    Code(u8, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LinearityCapExceeded { .. } => Failure::Code(EXIT_CAP, e.to_string()),
            e => Failure::Input(e),
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(e.into())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Input(e.into())),
    }
}

fn gen_spec(family: &str, params: &[usize], seed: u64) -> Result<GenSpec, Failure> {
    let bad = |usage: &str| Failure::Input(Error::InvalidParameter(format!("usage: gen {usage}")));
    let family = match (family, params) {
        ("prefix", &[n]) => {
            if n > PREFIX_CLI_CAP {
                return Err(Failure::Input(Error::TooLarge { size: n, limit: PREFIX_CLI_CAP }));
            }
            Family::Prefix { n }
        }
        ("prefix", _) => return Err(bad("prefix N")),
        ("grid", &[rows, cols]) => Family::Grid { rows, cols },
        ("grid", _) => return Err(bad("grid ROWS COLS")),
        ("bounded-degree", &[n, degree]) => Family::BoundedDegree { n, degree },
        ("bounded-degree", _) => return Err(bad("bounded-degree N DEGREE")),
        ("halfplane", &[points, sets]) => Family::Halfplane { points, sets },
        ("halfplane", _) => return Err(bad("halfplane POINTS SETS")),
        (other, _) => {
            return Err(Failure::Input(Error::InvalidParameter(format!("unknown family {other:?}"))));
        }
    };
    Ok(GenSpec::new(family, seed))
}

fn read_order(path: &Path, n: usize) -> Result<Order, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(e.into()))?;
    Ok(Order::parse(&text, n)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { family, params, seed, format, out } => {
            let spec = gen_spec(&family, &params, seed)?;
            let sys = spec.generate()?;
            let text = match format {
                Format::Ssys => io::to_ssys_with_comment(&sys, &spec.header()),
                Format::Json => io::to_json(&sys) + "\n",
            };
            emit(out.as_deref(), &text)
        }
        Command::Order { input, c, d, seed, trials, out, trace } => {
            let sys = read_system(&input)?;
            let (order, c_used, traces) = match c {
                CArg::Auto => {
                    let options = SearchOptions { trials_per_level: trials, d, ..SearchOptions::default() };
                    let found = engine::with_unknown_c(&sys, seed, options)?;
                    (Some(found.order), found.c_used, found.traces)
                }
                CArg::Value(c) => {
                    let engine = AnyEngine::for_params(LinearityParams::new(c, d)?)?;
                    let result = engine::boosted(&engine as &dyn OrderEngine, &sys, trials, seed)?;
                    (result.order, c, result.traces)
                }
            };
            if let Some(path) = trace {
                let json = serde_json::to_string_pretty(&traces).expect("traces serialize");
                fs::write(path, json + "\n").map_err(|e| Failure::Input(e.into()))?;
            }
            let iterations: Vec<String> = traces.iter().map(|t| t.num_iterations().to_string()).collect();
            eprintln!("c_used={c_used} trials={} iterations={}", traces.len(), iterations.join(","));
            match order {
                Some(order) => emit(out.as_deref(), &order.to_text()),
                None => Err(Failure::Code(EXIT_FALSE, format!("all {trials} trials returned false at c={c_used}"))),
            }
        }
        Command::Verify { input, order, c, d } => {
            let sys = read_system(&input)?;
            let order = read_order(&order, sys.num_elements())?;
            let report = verify::certify(&sys, &order, LinearityParams::new(c, d)?)?;
            emit(None, &report.to_text())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Code(EXIT_CERT, format!("crossing number {} exceeds the bound", report.max)))
            }
        }
        Command::Cover { input, order, c, out } => {
            let graph = read_system(&input)?;
            let order = read_order(&order, graph.num_elements())?;
            let built = cover::build_cover(&graph, &order)?;
            let audit = cover::audit_cover(&graph, &built, cover::overlap_target(c, graph.num_elements()))?;
            emit(out.as_deref(), &built.to_text())?;
            eprintln!(
                "coverage={} max_weak_diameter={} diameter_exact={} overlap={} overlap_target={} clusters={}",
                audit.coverage as u8,
                audit.max_weak_diameter.map_or("inf".to_string(), |d| d.to_string()),
                audit.diameter_exact as u8,
                audit.overlap,
                audit.overlap_target,
                audit.num_clusters
            );
            if audit.passed() {
                Ok(())
            } else {
                Err(Failure::Code(EXIT_CERT, "cover audit failed".into()))
            }
        }
        Command::Bench { suite, json, tsv } => {
            let text = fs::read_to_string(&suite).map_err(|e| Failure::Input(e.into()))?;
            let report = bench::run_suite(&Suite::parse(&text)?);
            if let Some(path) = json {
                fs::write(path, report.to_json() + "\n").map_err(|e| Failure::Input(e.into()))?;
            }
            emit(tsv.as_deref(), &report.rows_tsv())?;
            eprint!("{}", report.summary());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Code(code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
