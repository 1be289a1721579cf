//! `rflight`: random-flight integrals, Fourier-Bessel kernels and their
//! verification suites from the command line.
//!
//! Exit codes: 0 success, 1 verification or computation failure, 2 usage error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rflight_core::verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "rflight", version, about = "Random-flight integrals, Fourier-Bessel kernels and their verification")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Write output to PATH instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Quadrature tolerance
    #[arg(long, global = true, value_parser = positive_real)]
    pub tol: Option<f64>,
    /// Truncation N of Fourier-Bessel series
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub terms: Option<u64>,
    /// Seed for Monte Carlo sampling and randomised verification grids
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Emit JSON instead of CSV / key=value text
    #[arg(long, global = true)]
    pub json: bool,
}

/// Comma-separated positive decimals, no whitespace.
#[derive(Debug, Clone, PartialEq)]
pub struct Lengths(pub Vec<f64>);

fn parse_lengths(s: &str) -> Result<Lengths, String> {
    if s.is_empty() {
        return Err("expected at least one length".into());
    }
    if s.chars().any(char::is_whitespace) {
        return Err("whitespace is not allowed; write e.g. 1,0.5,2".into());
    }
    s.split(',')
        .map(|t| match t.parse::<f64>() {
            Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
            _ => Err(format!("{t:?} is not a positive decimal")),
        })
        .collect::<Result<_, _>>()
        .map(Lengths)
}

/// Comma-separated positive integers.
#[derive(Debug, Clone, PartialEq)]
pub struct Counts(pub Vec<usize>);

fn parse_counts(s: &str) -> Result<Counts, String> {
    s.split(',')
        .map(|t| match t.parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("{t:?} is not a positive integer")),
        })
        .collect::<Result<_, _>>()
        .map(Counts)
}

fn positive_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("{s:?} is not a positive number")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestFunction {
    /// f = 1
    One,
    /// f = z
    Z,
    /// f = z^2
    Z2,
    /// f = z (S - z)
    Parabola,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlightMethod {
    Direct,
    Recursive,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExtendedMethod {
    Direct,
    Contraction,
    Series,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive zeros of j_l as `index,zero`
    Zeros {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Kernel partial sums K_N(z, z') over a grid as `z,zprime,K_N`
    Kernel {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
        /// Interior grid points i/(G+1), i = 1..G
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
        grid_size: u64,
    },
    /// Smoothed test function F_N[f](z) against f(z)
    DeltaTest {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value = "one")]
        f: TestFunction,
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
        grid_size: u64,
    },
    /// Fourier-Bessel coefficients of a test function on [0, S]
    Expand {
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1.0, value_parser = positive_real)]
        s: f64,
        #[arg(long, value_enum, default_value = "parabola")]
        f: TestFunction,
    },
    /// The flight integral J_m(r; r_1..r_n), or a grid of all three routes
    Flight {
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_lengths)]
        lengths: Lengths,
        #[arg(long, value_parser = positive_real, required_unless_present = "grid")]
        r: Option<f64>,
        #[arg(long, value_enum, default_value = "direct")]
        method: FlightMethod,
        /// Emit `r,J_direct,J_recursive,J_series` at G interior points of the support
        #[arg(long, conflicts_with = "r", value_parser = clap::value_parser!(u64).range(1..))]
        grid: Option<u64>,
    },
    /// The extended flight function F_{l,m}
    Extended {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        /// Origin to observer
        #[arg(long = "R", value_parser = positive_real)]
        big_r: f64,
        /// Exit point to observer
        #[arg(long = "X", value_parser = positive_real)]
        x: f64,
        #[arg(long, value_parser = parse_lengths)]
        lengths: Lengths,
        #[arg(long, value_enum, default_value = "direct")]
        method: ExtendedMethod,
    },
    /// Representation gap of the one-step extended flight as `l,m,R,X,r1,N,lhs,rhs,gap`
    Gap {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "R", value_parser = positive_real)]
        big_r: f64,
        #[arg(long = "X", value_parser = positive_real)]
        x: f64,
        #[arg(long, value_parser = positive_real)]
        r1: f64,
        /// Truncations to sweep, e.g. 50,100,200,400 (default: --terms, else 400)
        #[arg(long, value_parser = parse_counts)]
        sweep: Option<Counts>,
    },
    /// Monte Carlo histogram of end-to-end distances as `bin_lo,bin_hi,count,density`
    Mc {
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_lengths)]
        lengths: Lengths,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        bins: u64,
    },
    /// Run a verification suite and write its JSON report
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(Suite::VARIANTS.map(Suite::name))
            .map(|s| s.parse::<Suite>().expect("listed suite")))]
        suite: Suite,
        /// Relative shift applied to every zero table (fault injection)
        #[arg(long, hide = true, default_value_t = 0.0, allow_negative_numbers = true)]
        perturb_zeros: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, &cli.global) {
        Ok(commands::Status::Pass) => ExitCode::SUCCESS,
        Ok(commands::Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if commands::is_usage(&e) { 2 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn lengths() {
        assert_eq!(parse_lengths("1,0.5,2").unwrap(), Lengths(vec![1.0, 0.5, 2.0]));
        assert!(parse_lengths("1, 2").is_err());
        assert!(parse_lengths("1,-2").is_err());
        assert!(parse_lengths("1,,2").is_err());
        assert!(parse_lengths("").is_err());
        assert!(parse_lengths("1,inf").is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(parse_counts("50,100").unwrap(), Counts(vec![50, 100]));
        assert!(parse_counts("0").is_err());
    }
}
