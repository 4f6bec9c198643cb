//! Experiment configuration: JSON file merged with command-line overrides.

use crate::expr;
use serde::Deserialize;
use std::path::PathBuf;

/// Raw JSON config; every field is optional and overridable by the flag of
/// the same name.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FileConfig {
    pub function: Option<String>,
    pub n: Option<usize>,
    pub q: Option<usize>,
    pub rmax: Option<usize>,
    pub delta: Option<f64>,
    pub ns: Option<Vec<usize>>,
    pub out: Option<PathBuf>,
    pub plot: Option<bool>,
    pub d3: Option<bool>,
}

/// Fully resolved configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub function: String,
    pub n: usize,
    pub q: usize,
    pub rmax: Option<usize>,
    pub delta: f64,
    pub ns: Vec<usize>,
    pub out: PathBuf,
    pub plot: bool,
    pub d3: bool,
}

pub struct Overrides {
    pub function: Option<String>,
    pub n: Option<usize>,
    pub q: Option<usize>,
    pub rmax: Option<usize>,
    pub delta: Option<f64>,
    pub ns: Option<Vec<usize>>,
    pub out: Option<PathBuf>,
    pub plot: bool,
    pub d3: bool,
}

pub fn resolve(
    file: FileConfig,
    cli: Overrides,
    default_function: &str,
) -> Result<Config, String> {
    let function = cli
        .function
        .or(file.function)
        .unwrap_or_else(|| default_function.to_string());
    let n = cli.n.or(file.n).unwrap_or(16);
    // non-smooth reference functions default to heavier oversampling
    let q = cli
        .q
        .or(file.q)
        .unwrap_or(if function == "expcos" { 4 } else { 8 });
    let cfg = Config {
        function,
        n,
        q,
        rmax: cli.rmax.or(file.rmax),
        delta: cli.delta.or(file.delta).unwrap_or(1e-6),
        ns: cli.ns.or(file.ns).unwrap_or_else(|| vec![8, 16, 32, 64]),
        out: cli.out.or(file.out).unwrap_or_else(|| PathBuf::from("results")),
        plot: cli.plot || file.plot.unwrap_or(false),
        d3: cli.d3 || file.d3.unwrap_or(false),
    };
    if cfg.n < 1 {
        return Err("n must be at least 1".into());
    }
    if cfg.q < 2 {
        return Err("q must be at least 2".into());
    }
    if let Some(rmax) = cfg.rmax {
        if rmax > 2 * cfg.n + 1 {
            return Err(format!("rmax {} exceeds 2n+1 = {}", rmax, 2 * cfg.n + 1));
        }
    }
    if !(cfg.delta > 1e-12 && cfg.delta < 1e-1) {
        return Err(format!("delta must lie in (1e-12, 1e-1), got {}", cfg.delta));
    }
    if cfg.ns.is_empty() || cfg.ns.iter().any(|&n| n < 1) {
        return Err("ns must be a nonempty list of positive levels".into());
    }
    Ok(cfg)
}

/// A named reference function or a parsed custom expression.
pub enum Function2D {
    Named(fn(f64, f64) -> f64),
    Custom(expr::Expr),
}

impl Function2D {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Function2D::Named(f) => f(x, y),
            Function2D::Custom(e) => e.eval(x, y),
        }
    }
}

/// Resolve a function tag; unknown tags are parsed as expressions in x and y.
pub fn resolve_function_2d(tag: &str) -> Result<Function2D, String> {
    match tag {
        "r06" => Ok(Function2D::Named(|x, y| (x * x + y * y).powf(0.3))),
        "absdiag" => Ok(Function2D::Named(|x, y| {
            (x + y).abs().powf(0.6)
        })),
        "expcos" => Ok(Function2D::Named(|x, y| {
            (x.cos() * y.cos()).exp()
        })),
        "ring" => Ok(Function2D::Named(|x, y| {
            (1.0 - (x * x + y * y)).abs().powf(0.95)
        })),
        other => expr::parse(other).map(Function2D::Custom).map_err(|e| {
            format!(
                "'{other}' is not a known tag (r06|absdiag|expcos|ring) and does not parse \
                 as an expression: {e}"
            )
        }),
    }
}

/// The 3-way reference functions.
pub fn resolve_function_3d(tag: &str) -> Result<fn(f64, f64, f64) -> f64, String> {
    match tag {
        "r06" => Ok(|x, y, z| (x * x + y * y + z * z).powf(0.3)),
        "expcos" => Ok(|x, y, z| (x.cos() * y.cos() * z.cos()).exp()),
        other => Err(format!(
            "'{other}' has no 3-variable form; use r06 or expcos"
        )),
    }
}
