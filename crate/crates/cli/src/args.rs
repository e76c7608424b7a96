use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quasifourier::cutproject::Window;
use quasifourier::discretize::PathMode;
use quasifourier::fibonacci::{half_shift, FunctionKind};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "quasifourier", version, about = "Fourier-Bohr analysis on the Fibonacci model set")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Model set points with tile tags.
    Points {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
        hi: f64,
    },
    /// Projected data points for refinement N along the path.
    DataPoints,
    /// Frequency representatives for refinement N.
    Frequencies,
    /// Coefficients from one or all estimators.
    Coeffs {
        #[arg(long, value_enum, default_value_t = Estimator::All)]
        estimator: Estimator,
    },
    /// Coefficient table for the nearest-distance function.
    Table1,
    /// Function and approximant values at the tabulated points, nearest-distance function.
    Table2,
    /// Coefficient table for the interval-sign function.
    Table3,
    /// Function and approximant values at the tabulated points, interval-sign function.
    Table4,
    /// Function and all approximants on a sample grid, with sup-error summaries.
    Compare {
        /// Where to write the sup-error summary as CSV.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Sum-approximant error near the singular points, default versus shifted window.
    Singularity,
    /// Sampled cell and strip oscillations and the resulting error bound.
    ErrorBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Estimator {
    Exact,
    Integral,
    Sum,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionArg {
    Nearest,
    Interval,
}

impl FunctionArg {
    pub fn kind(self) -> FunctionKind {
        match self {
            FunctionArg::Nearest => FunctionKind::NearestDistance,
            FunctionArg::Interval => FunctionKind::IntervalSign,
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// Refinement N; the frequency set has N² elements.
    #[arg(long, global = true, default_value_t = 3)]
    pub n: u32,
    /// Path length as a number of cell crossings.
    #[arg(long, global = true, conflicts_with_all = ["range", "wraps"])]
    pub passes: Option<u32>,
    /// Path length as a range, truncated to the last crossing.
    #[arg(long, global = true, conflicts_with = "wraps")]
    pub range: Option<f64>,
    /// Path length as a number of wraps in the τ̃ direction (default 10).
    #[arg(long, global = true)]
    pub wraps: Option<u32>,
    /// Integration range for the integral estimator (default: the path length).
    #[arg(long, global = true)]
    pub int_range: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = FunctionArg::Nearest)]
    pub function: FunctionArg,
    /// `default`, `shifted`, or `LO:HI` with optional `[`/`(` and `]`/`)` brackets.
    #[arg(long, global = true, default_value = "default", allow_hyphen_values = true)]
    pub window: WindowSpec,
    /// Highest cosine frequency of the periodic baseline.
    #[arg(long, global = true, default_value_t = 50)]
    pub cosine_n: usize,
    /// Halve the constant term of the cosine baseline.
    #[arg(long, global = true)]
    pub cosine_dc_halved: bool,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Sample grid `LO:HI:COUNT`.
    #[arg(long, global = true, default_value = "0:15:301", allow_hyphen_values = true)]
    pub grid: Grid,
}

impl Common {
    pub fn path_mode(&self) -> PathMode {
        match (self.passes, self.range, self.wraps) {
            (Some(m), _, _) => PathMode::Passes(m),
            (_, Some(r), _) => PathMode::Range(r),
            (_, _, Some(m)) => PathMode::Wraps(m),
            _ => PathMode::Wraps(10),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowSpec {
    pub text: String,
    pub window: Window,
}

impl FromStr for WindowSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let window = match s {
            "default" => Window::fibonacci(),
            "shifted" => Window::fibonacci()
                .shifted(&half_shift())
                .map_err(|e| e.to_string())?,
            _ => {
                let (includes_lo, rest) = match s.strip_prefix('(') {
                    Some(rest) => (false, rest),
                    None => (true, s.strip_prefix('[').unwrap_or(s)),
                };
                let (includes_hi, body) = match rest.strip_suffix(']') {
                    Some(body) => (true, body),
                    None => (false, rest.strip_suffix(')').unwrap_or(rest)),
                };
                let (lo, hi) = body
                    .split_once(':')
                    .ok_or_else(|| format!("window `{s}` is not `default`, `shifted` or LO:HI"))?;
                let parse = |v: &str| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| format!("window endpoint `{v}` is not a number"))
                };
                Window::approximate(parse(lo)?, parse(hi)?, includes_lo, includes_hi)
                    .map_err(|e| e.to_string())?
            }
        };
        Ok(WindowSpec {
            text: s.to_string(),
            window,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        (0..self.count)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.count - 1) as f64)
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts.as_slice() else {
            return Err(format!("grid `{s}` is not LO:HI:COUNT"));
        };
        let lo: f64 = lo.parse().map_err(|_| format!("grid start `{lo}` is not a number"))?;
        let hi: f64 = hi.parse().map_err(|_| format!("grid end `{hi}` is not a number"))?;
        let count: usize = count
            .parse()
            .map_err(|_| format!("grid count `{count}` is not a positive integer"))?;
        if count == 0 || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(format!("grid `{s}` needs LO <= HI and COUNT >= 1"));
        }
        Ok(Grid { lo, hi, count })
    }
}
