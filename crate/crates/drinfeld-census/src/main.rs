use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use drinfeld_census::runner::{self, Format, Mode, RunConfig};

/// Exact censuses, Galois-image verdicts, and density bounds for Drinfeld
/// modules over Fq[T].
#[derive(Parser)]
#[command(name = "census-cli", version, about)]
struct Cli {
    /// Base field size as a prime power: 5, 4, or 2^2.
    #[arg(long)]
    q: String,

    /// rank1 | rank2 | bounds | sieve | group-tables.
    #[arg(long)]
    mode: String,

    /// Degree box exponent (coefficients range over deg < L).
    #[arg(long = "L", default_value_t = 2)]
    l: usize,

    /// Comma-separated torsion primes, e.g. "T,T+1".
    #[arg(long = "S", default_value = "")]
    s: String,

    /// Degree cap for Frobenius sampling primes; the sieve cut-off K.
    #[arg(long = "frob-deg-cap", default_value_t = 2)]
    frob_deg_cap: usize,

    /// Seed for the shuffled-basis spot check in rank-2 runs.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Verdict cache directory (DD_CACHE_DIR overrides).
    #[arg(long = "cache-dir")]
    cache_dir: Option<PathBuf>,

    /// json | csv | table.
    #[arg(long, default_value = "table")]
    format: String,

    /// Emit the flipped sieve orientation next to the standard one.
    #[arg(long = "both-sieve-orientations", default_value_t = false)]
    both_sieve_orientations: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> drinfeld_census::Result<String> {
    let (p, e) = runner::parse_q(&cli.q)?;
    let cfg = RunConfig {
        p,
        e,
        mode: Mode::parse(&cli.mode)?,
        l: cli.l,
        s: cli
            .s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(String::from)
            .collect(),
        d_cap: cli.frob_deg_cap,
        seed: cli.seed,
        cache_dir: cli.cache_dir.clone(),
        format: Format::parse(&cli.format)?,
        both_orientations: cli.both_sieve_orientations,
    };
    runner::run(&cfg)
}
