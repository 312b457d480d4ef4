mod commands;
mod output;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use abc_spectra::families::FAMILY_GRAMMAR;
use abc_spectra::spectra::DEFAULT_SEED;
use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "abc-spectra",
    version,
    about = "ABC spectral radii of graphs, tree orderings and claim checks",
    after_help = format!("Graph families (--family):\n{FAMILY_GRAMMAR}")
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Comparison tolerance for strict inequalities (default 1e-9).
    #[arg(long, global = true, value_parser = positive_float)]
    pub tolerance: Option<f64>,
    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long, global = true, env = "ABC_SPECTRA_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Seed for randomized samples (decimal or 0x-prefixed hex).
    #[arg(long, global = true, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// Exactly one graph source.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// A graph in graph6 format.
    #[arg(long)]
    pub graph6: Option<String>,
    /// A file of graph6 lines.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// A family spec such as star:10 or t:4:12.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct BoundsInput {
    #[arg(long)]
    pub graph6: Option<String>,
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<String>,
    /// Every tree with order in the range, e.g. 2..10.
    #[arg(long, value_parser = parse_range)]
    pub trees: Option<RangeInclusive<usize>>,
    /// Every connected graph with order in the range (at most 8).
    #[arg(long, value_parser = parse_range)]
    pub connected: Option<RangeInclusive<usize>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral radius, Perron vector and spectrum of each input graph.
    Spectrum(Input),
    /// Trees of one order ranked by spectral radius.
    Order {
        #[arg(long)]
        n: usize,
        /// Only trees with exactly this maximum degree.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Keep only the first K rows.
        #[arg(long)]
        top: Option<usize>,
    },
    /// Check a claim; run `verify --claim list` for the identifiers.
    Verify {
        #[arg(long)]
        claim: String,
        /// Order or order range, e.g. 12 or 10..12.
        #[arg(long, value_parser = parse_range)]
        n: Option<RangeInclusive<usize>>,
        /// Evaluate outside the hypothesis range instead of reporting inapplicable.
        #[arg(long)]
        explore: bool,
        /// Random pairs for the determinant identities.
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// Connected graphs of order 4..=N with radius at most sqrt 2.
    Conjecture {
        #[arg(long)]
        max_n: usize,
    },
    /// Extreme radii among trees with a given order and maximum degree.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: usize,
    },
    /// Invariants and classical bounds per graph.
    Bounds(BoundsInput),
}

fn positive_float(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got '{s}'")),
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.parse(),
    };
    parsed.map_err(|_| format!("expected an unsigned integer seed, got '{s}'"))
}

/// `12`, `10..12` or `10..=12`, inclusive.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected N or A..B, got '{s}'");
    let (lo, hi) = match s.split_once("..") {
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim_start_matches('=').trim().parse().map_err(|_| bad())?,
        ),
    };
    if lo > hi {
        return Err(format!("empty range '{s}'"));
    }
    Ok(lo..=hi)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.render().to_string();
            let first = text.lines().next().unwrap_or("error: invalid arguments");
            eprintln!("{first} (see --help)");
            return ExitCode::from(1);
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: cannot start {} worker threads: {e}", cli.threads);
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok((text, violated)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if violated { 2 } else { 0 })
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("12").unwrap(), 12..=12);
        assert_eq!(parse_range("10..12").unwrap(), 10..=12);
        assert_eq!(parse_range("10..=12").unwrap(), 10..=12);
        assert!(parse_range("12..10").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn seeds() {
        assert_eq!(parse_seed("0x0abc_2020").unwrap(), DEFAULT_SEED);
        assert_eq!(parse_seed("7").unwrap(), 7);
        assert!(parse_seed("-1").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
