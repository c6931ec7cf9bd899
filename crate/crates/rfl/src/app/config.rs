//! Experiment configuration: defaults, JSON file, flag overrides and
//! range validation.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use rfl_core::FellerParams;

use crate::error::{Error, Result};
use crate::grid::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Verify,
    Bandwidth,
    Bernstein,
    ExpType,
    RadialPw,
    Lks,
    Evolve,
    KernelCompare,
    DumpSymbol,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Verify => "verify",
            Mode::Bandwidth => "bandwidth",
            Mode::Bernstein => "bernstein",
            Mode::ExpType => "exp-type",
            Mode::RadialPw => "radial-pw",
            Mode::Lks => "lks",
            Mode::Evolve => "evolve",
            Mode::KernelCompare => "kernel-compare",
            Mode::DumpSymbol => "dump-symbol",
        }
    }

    /// Modes that evaluate the Cauchy solution below the boundary.
    fn uses_lower_branch(self) -> bool {
        matches!(self, Mode::ExpType | Mode::Evolve)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Symbol tabulated by `dump-symbol`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SymbolChoice {
    Dirac,
    RieszDerivative,
    RieszHilbert,
    ChiPlus,
    ChiMinus,
    HTheta,
    RieszFeller,
    Semigroup,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n: usize,
    /// One size for every axis, or one per axis.
    pub grid: Vec<usize>,
    pub spacing: f64,
    pub alpha: f64,
    pub theta: f64,
    pub p: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    pub eps: f64,
    pub kmax: u32,
    pub x0: Vec<f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub timing: bool,
    pub symbol: SymbolChoice,
}

/// Partial configuration: every key optional. Used for both the JSON file
/// and the command-line flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigPatch {
    pub mode: Option<Mode>,
    pub n: Option<usize>,
    pub grid: Option<Vec<usize>>,
    pub spacing: Option<f64>,
    pub alpha: Option<f64>,
    pub theta: Option<f64>,
    pub p: Option<f64>,
    #[serde(rename = "R")]
    pub radius: Option<f64>,
    pub eps: Option<f64>,
    pub kmax: Option<u32>,
    pub x0: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub timing: Option<bool>,
    pub symbol: Option<SymbolChoice>,
}

pub const KNOWN_KEYS: [&str; 16] = [
    "mode", "n", "grid", "spacing", "alpha", "theta", "p", "R", "eps", "kmax", "x0", "seed", "out", "format",
    "timing", "symbol",
];

pub const DEFAULT_X0: [f64; 7] = [-1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0];

/// Default lattice size: 64 per axis up to `n = 2`, 32 at `n = 3`, 16 beyond.
pub fn default_grid(n: usize) -> usize {
    match n {
        0..=2 => 64,
        3 => 32,
        _ => 16,
    }
}

impl ConfigPatch {
    /// Parses a JSON object, listing every unknown key in the error.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::input(format!("config is not valid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::input("config must be a JSON object"))?;
        let unknown: BTreeSet<&str> = obj
            .keys()
            .map(String::as_str)
            .filter(|k| !KNOWN_KEYS.contains(k))
            .collect();
        if !unknown.is_empty() {
            let list: Vec<&str> = unknown.into_iter().collect();
            return Err(Error::input(format!("unknown config keys: {}", list.join(", "))));
        }
        serde_json::from_value(value).map_err(|e| Error::input(format!("bad config value: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    /// Keys set in `over` win.
    pub fn overlay(self, over: ConfigPatch) -> ConfigPatch {
        ConfigPatch {
            mode: over.mode.or(self.mode),
            n: over.n.or(self.n),
            grid: over.grid.or(self.grid),
            spacing: over.spacing.or(self.spacing),
            alpha: over.alpha.or(self.alpha),
            theta: over.theta.or(self.theta),
            p: over.p.or(self.p),
            radius: over.radius.or(self.radius),
            eps: over.eps.or(self.eps),
            kmax: over.kmax.or(self.kmax),
            x0: over.x0.or(self.x0),
            seed: over.seed.or(self.seed),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
            timing: over.timing.or(self.timing),
            symbol: over.symbol.or(self.symbol),
        }
    }

    /// Fills the gaps with defaults and validates.
    pub fn resolve(self, mode: Mode) -> Result<ExperimentConfig> {
        let n = self.n.unwrap_or(2);
        let cfg = ExperimentConfig {
            mode: self.mode.unwrap_or(mode),
            n,
            grid: self.grid.unwrap_or_else(|| vec![default_grid(n)]),
            spacing: self.spacing.unwrap_or(0.5),
            alpha: self.alpha.unwrap_or(1.0),
            theta: self.theta.unwrap_or(1.0),
            p: self.p.unwrap_or(2.0),
            radius: self.radius.unwrap_or(2.0),
            eps: self.eps.unwrap_or(0.25),
            kmax: self.kmax.unwrap_or(32),
            x0: self.x0.unwrap_or_else(|| DEFAULT_X0.to_vec()),
            seed: self.seed.unwrap_or(0),
            out: self.out,
            format: self.format.unwrap_or(OutputFormat::Csv),
            timing: self.timing.unwrap_or(false),
            symbol: self.symbol.unwrap_or(SymbolChoice::RieszFeller),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ConfigPatch::default()
            .resolve(Mode::Verify)
            .expect("defaults are valid")
    }
}

impl ExperimentConfig {
    pub fn grid_spec(&self) -> Result<GridSpec> {
        let sizes = match self.grid.len() {
            1 => vec![self.grid[0]; self.n],
            l if l == self.n => self.grid.clone(),
            l => {
                return Err(Error::input(format!(
                    "grid lists {l} sizes for n = {}; give one or n",
                    self.n
                )))
            }
        };
        GridSpec::new(sizes, vec![self.spacing; self.n])
    }

    pub fn params(&self) -> Result<FellerParams> {
        Ok(FellerParams::new(self.alpha, self.theta)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=6).contains(&self.n) {
            return Err(Error::input(format!("n must be in 1..=6, got {}", self.n)));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::input(format!(
                "alpha must satisfy 0 < alpha <= 1, got {}",
                self.alpha
            )));
        }
        if !self.theta.is_finite() {
            return Err(Error::input("theta must be finite"));
        }
        if !(self.p > 1.0 && self.p.is_finite()) {
            return Err(Error::input(format!("p must be finite and > 1, got {}", self.p)));
        }
        let grid = self.grid_spec()?;
        let ny = grid.nyquist_radius();
        if !(self.radius > 0.0 && self.radius <= ny) {
            return Err(Error::input(format!(
                "R must satisfy 0 < R <= {ny} (grid Nyquist radius), got {}",
                self.radius
            )));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::input(format!("eps must be positive, got {}", self.eps)));
        }
        if self.mode == Mode::RadialPw && self.radius + self.eps > ny {
            return Err(Error::input(format!(
                "R + eps = {} exceeds the grid Nyquist radius {ny}",
                self.radius + self.eps
            )));
        }
        if self.kmax == 0 || self.kmax > 4096 {
            return Err(Error::input(format!("kmax must be in 1..=4096, got {}", self.kmax)));
        }
        if let Some(x) = self.x0.iter().find(|x| !x.is_finite()) {
            return Err(Error::input(format!("x0 values must be finite, got {x}")));
        }
        let params = self.params()?;
        if self.mode.uses_lower_branch() && self.x0.iter().any(|&x| x < 0.0) && !params.cauchy_admissible() {
            return Err(Error::input(format!(
                "theta = {} is not admissible for negative x0: need |1 - theta| < alpha/2 (alpha = {})",
                self.theta, self.alpha
            )));
        }
        Ok(())
    }
}
