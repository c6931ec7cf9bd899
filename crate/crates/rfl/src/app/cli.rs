//! Command-line front end of the `rfl` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::app::config::{ConfigPatch, Mode, OutputFormat, SymbolChoice};
use crate::app::run::run;
use crate::error::{Error, Result};

/// Riesz-Feller spectral lab: Paley-Wiener and Bernstein experiments for
/// Clifford-valued fields on periodic grids.
///
/// Exit codes: 0 all checks passed, 1 an invariant check failed,
/// 2 invalid input, 3 I/O failure. RFL_THREADS caps the worker count.
#[derive(Debug, Parser)]
#[command(name = "rfl", version, about, long_about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the invariant suite (algebra, operators, semigroup, Bernstein,
    /// bandwidth, LKS, kernels). CSV columns: check,value,bound,pass
    Verify(Flags),
    /// Bandwidth estimates a_k, k = 1..kmax, of a random band-limited field.
    /// CSV columns: k,value,bound,pass (bound = oracle radius)
    Bandwidth(Flags),
    /// Bernstein ratios of both Hardy components, plus a control normalised
    /// by half the oracle radius. CSV columns: series,k,value,bound,pass
    Bernstein(Flags),
    /// Exponential-type profile, pointwise sup and pairing bound over the x0
    /// schedule, repeated on a doubled grid. CSV columns: series,x0,value,bound,pass
    ExpType(Flags),
    /// s_k^(1/k) for the Urysohn bump with (R, eps), m = 0 and 1.
    /// CSV columns: series,k,value,bound,pass,side_condition
    RadialPw(Flags),
    /// Favard constants and the Landau-Kolmogorov-Stein inequality on 100
    /// random fields per (k, l). CSV columns: series,trial,value,bound,pass
    Lks(Flags),
    /// Cauchy solution over the x0 schedule; at alpha = theta = 1 each row
    /// carries the kernel closed-form error. CSV columns:
    /// x0,norm,residual,kernel_error,pass[,wall_time]
    Evolve(Flags),
    /// FFT kernels against the Poisson and Cauchy closed forms (alpha = 1)
    /// at t = |x0|. CSV columns: series,t,value,bound,pass
    KernelCompare(Flags),
    /// Tabulate a Fourier symbol on the frequency lattice (FFT order).
    /// CSV columns: xi_1..xi_n,blade,re,im
    DumpSymbol(Flags),
}

impl Command {
    pub fn split(self) -> (Mode, Flags) {
        match self {
            Command::Verify(f) => (Mode::Verify, f),
            Command::Bandwidth(f) => (Mode::Bandwidth, f),
            Command::Bernstein(f) => (Mode::Bernstein, f),
            Command::ExpType(f) => (Mode::ExpType, f),
            Command::RadialPw(f) => (Mode::RadialPw, f),
            Command::Lks(f) => (Mode::Lks, f),
            Command::Evolve(f) => (Mode::Evolve, f),
            Command::KernelCompare(f) => (Mode::KernelCompare, f),
            Command::DumpSymbol(f) => (Mode::DumpSymbol, f),
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Spatial dimension [default: 2]
    #[arg(long)]
    pub n: Option<usize>,
    /// Points per axis, one value or one per axis [default: 64, 32 at n = 3]
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<usize>>,
    /// Lattice spacing h [default: 0.5]
    #[arg(long)]
    pub spacing: Option<f64>,
    /// Operator order, 0 < alpha <= 1 [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Skewness theta [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Norm exponent, p > 1 [default: 2]
    #[arg(long)]
    pub p: Option<f64>,
    /// Band radius, at most the grid Nyquist radius [default: 2]
    #[arg(long = "R")]
    pub radius: Option<f64>,
    /// Urysohn transition width [default: 0.25]
    #[arg(long)]
    pub eps: Option<f64>,
    /// Largest operator power [default: 32]
    #[arg(long)]
    pub kmax: Option<u32>,
    /// Boundary distance, repeatable [default: -1,-0.5,-0.25,0,0.25,0.5,1]
    #[arg(long, allow_negative_numbers = true)]
    pub x0: Vec<f64>,
    /// RNG seed [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Directory receiving <mode>.csv and <mode>.json
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file; flags override its keys
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Standard output format [default: csv]
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Record wall-clock times (reports are then no longer reproducible)
    #[arg(long)]
    pub timing: bool,
    /// Symbol for dump-symbol [default: riesz-feller]
    #[arg(long, value_enum)]
    pub symbol: Option<SymbolChoice>,
}

impl Flags {
    pub fn patch(&self, mode: Mode) -> ConfigPatch {
        ConfigPatch {
            mode: Some(mode),
            n: self.n,
            grid: self.grid.clone(),
            spacing: self.spacing,
            alpha: self.alpha,
            theta: self.theta,
            p: self.p,
            radius: self.radius,
            eps: self.eps,
            kmax: self.kmax,
            x0: (!self.x0.is_empty()).then(|| self.x0.clone()),
            seed: self.seed,
            out: self.out.clone(),
            format: self.format,
            timing: self.timing.then_some(true),
            symbol: self.symbol,
        }
    }
}

/// Caps the global worker pool from `RFL_THREADS` when set.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("RFL_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::Input(format!("RFL_THREADS must be a positive integer, got {raw:?}")))?;
    // a second initialisation (tests calling in-process) keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn execute(mode: Mode, flags: &Flags, stdout: &mut dyn Write) -> Result<i32> {
    configure_threads()?;
    let file = match &flags.config {
        Some(path) => ConfigPatch::from_file(path)?,
        None => ConfigPatch::default(),
    };
    let cfg = file.overlay(flags.patch(mode)).resolve(mode)?;
    let report = run(&cfg)?;
    if let Some(dir) = &cfg.out {
        report.write_to(dir)?;
    }
    let body = report.render(cfg.format)?;
    stdout
        .write_all(body.as_bytes())
        .map_err(|e| Error::Io {
            path: "<stdout>".into(),
            source: e,
        })?;
    Ok(report.exit_code())
}

/// Parses `args`, runs, and returns the process exit code. Errors go to `stderr`.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(stderr, "{}", e.render());
            if !e.use_stderr() {
                let _ = write!(stdout, "{}", e.render());
            }
            return code;
        }
    };
    let (mode, flags) = cli.command.split();
    match execute(mode, &flags, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "rfl {}: {e}", mode.name());
            e.exit_code()
        }
    }
}
