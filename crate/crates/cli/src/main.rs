mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use crg_core::arrangement::ArrangementSpec;
use crg_core::catalog::GroupSpec;
use crg_core::matgroup::DEFAULT_ORDER_BOUND;
use crg_core::report::{self, Report, Suite};

#[derive(Parser)]
#[command(
    name = "crg",
    version,
    about = "Exact computations with finite complex reflection groups"
)]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the monodromy basepoint and random paths.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Refuse groups larger than this.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    order_bound: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group, arrangement, Φ, κ and the χ table for n = 0..κ-1.
    Analyze { spec: PathBuf },
    /// κ for G(de,e,r) over parameter ranges, with the exceptional reference values.
    KappaTable {
        /// Ranges for d, e and r, e.g. `1..3,1..3,2..3`.
        #[arg(long, default_value = "1..6,1..6,2..3")]
        family: String,
        /// Skip parameters with de above this.
        #[arg(long, default_value_t = 6)]
        max_de: u32,
        /// Leave out the exceptional reference rows.
        #[arg(long)]
        no_reference: bool,
    },
    /// χₙ on each conjugacy class.
    Chi {
        spec: PathBuf,
        #[arg(long, default_value = "0..6")]
        n_range: String,
    },
    /// Run verification suites and report each check.
    Verify {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Poincaré polynomial and Φ rank of a plain arrangement.
    Poincare { arrangement: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Phi,
    Kappa,
    Chi,
    Monodromy,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Phi => Suite::Phi,
            SuiteArg::Kappa => Suite::Kappa,
            SuiteArg::Chi => Suite::Chi,
            SuiteArg::Monodromy => Suite::Monodromy,
            SuiteArg::All => Suite::All,
        }
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let s = s.trim();
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: i64 = a.trim().parse().map_err(|_| format!("bad range {:?}", s))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad range {:?}", s))?;
    if a > b {
        return Err(format!("empty range {:?}", s));
    }
    Ok((a, b))
}

fn parse_family(s: &str) -> Result<[(u32, u32); 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three ranges d,e,r, got {:?}", s));
    }
    let mut out = [(0, 0); 3];
    for (slot, p) in out.iter_mut().zip(parts) {
        let (a, b) = parse_range(p)?;
        if a < 1 || b > u32::MAX as i64 {
            return Err(format!("range {:?} must be positive", p));
        }
        *slot = (a as u32, b as u32);
    }
    Ok(out)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e))
}

fn run(cli: &Cli) -> Result<Report, String> {
    let bound = cli.order_bound;
    let report = match &cli.command {
        Command::Analyze { spec } => report::analyze(&read_json::<GroupSpec>(spec)?, bound),
        Command::KappaTable {
            family,
            max_de,
            no_reference,
        } => {
            let [d, e, r] = parse_family(family)?;
            report::kappa_table(
                d,
                e,
                (r.0 as usize, r.1 as usize),
                Some(*max_de),
                bound,
                !no_reference,
            )
        }
        Command::Chi { spec, n_range } => {
            let (a, b) = parse_range(n_range)?;
            let n: Vec<i64> = (a..=b).collect();
            report::chi_table(&read_json::<GroupSpec>(spec)?, bound, &n)
        }
        Command::Verify { spec, suite } => report::verify(
            &read_json::<GroupSpec>(spec)?,
            bound,
            (*suite).into(),
            cli.seed,
        ),
        Command::Poincare { arrangement } => read_json::<ArrangementSpec>(arrangement)?
            .build()
            .and_then(|a| report::poincare_report(&a)),
    };
    report.map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {}", msg);
            return ExitCode::from(2);
        }
    };
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        print!("{}", render::render(&report));
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        for c in report.failures() {
            eprintln!("FAIL {}: {}", c.name, c.detail);
        }
        ExitCode::from(1)
    }
}
