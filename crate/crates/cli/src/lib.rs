//! `phasebell` command-line driver.
//!
//! [`run`] takes the argument list and output streams and returns the exit
//! code: 0 on success, 1 on runtime or verification failure, 2 on usage
//! errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use phasebell_core::bell::{bell_value, corr_tmss_lossy};
use phasebell_core::optimize::{
    bound_efficiency, maximize_bell, EfficiencyMode, OptimizationResult, OptimizerConfig, VIOLATION_MARGIN,
};
use phasebell_core::verify::{run_suite, Suite, VerifyConfig};
use phasebell_core::{BellKind, ComplexAmplitude, CorrelationOrder, DetectorModel, MeasurementSettings, TmssParams};

pub const CSV_HEADER: &str =
    "kind,d,r,eta_a,eta_b,bell_value,violated,a1_re,a1_im,a2_re,a2_im,b1_re,b1_im,b2_re,b2_im,evals";

/// Parses `re`, `imi` or `re±imi`, e.g. `0.3`, `1i`, `-0.1+0.2i`.
pub fn parse_complex(text: &str) -> Result<ComplexAmplitude, String> {
    let t = text.trim();
    let bad = || format!("malformed complex literal `{text}`");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return parse_real(t).map(|re| ComplexAmplitude::new(re, 0.0)).map_err(|_| bad());
    };
    // last sign that is neither leading nor part of an exponent
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, c)| (c == '+' || c == '-') && i > 0 && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i);
    let (re, im) = match split {
        Some(i) => (parse_real(&body[..i]).map_err(|_| bad())?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => parse_real(s).map_err(|_| bad())?,
    };
    Ok(ComplexAmplitude::new(re, im))
}

fn parse_real(s: &str) -> Result<f64, String> {
    let v = f64::from_str(s).map_err(|e| format!("`{s}`: {e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// Inclusive `start:stop:step` axis; a single number is a one-point axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridAxis {
    /// `floor((stop - start) / step) + 1`, with a relative slack of `1e-9`
    /// steps so a decimal endpoint such as `0.1:3.0:0.1` is kept.
    pub fn len(&self) -> usize {
        if self.start == self.stop {
            return 1;
        }
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for GridAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let axis = match parts.as_slice() {
            [x] => {
                let x = parse_real(x)?;
                Self { start: x, stop: x, step: 1.0 }
            }
            [a, b, c] => Self { start: parse_real(a)?, stop: parse_real(b)?, step: parse_real(c)? },
            _ => return Err(format!("grid `{s}` is not start:stop:step")),
        };
        if !(axis.step > 0.0) {
            return Err(format!("grid `{s}`: step must be positive"));
        }
        if axis.start > axis.stop {
            return Err(format!("grid `{s}`: start exceeds stop"));
        }
        Ok(axis)
    }
}

/// One optimized grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub kind: BellKind,
    pub d: u32,
    pub r: f64,
    pub eta_a: f64,
    pub eta_b: f64,
    pub bell_value: f64,
    pub violated: bool,
    pub settings: MeasurementSettings,
    pub evaluations: u64,
}

impl SweepRow {
    fn new(kind: BellKind, d: u32, r: f64, det: DetectorModel, result: OptimizationResult) -> Self {
        Self {
            kind,
            d,
            r,
            eta_a: det.eta_a(),
            eta_b: det.eta_b(),
            bell_value: result.best_value,
            violated: result.best_value > 2.0 + VIOLATION_MARGIN,
            settings: result.best_settings,
            evaluations: result.evaluations,
        }
    }

    pub fn csv(&self) -> String {
        let s = &self.settings;
        let mut fields = vec![self.kind.to_string(), self.d.to_string()];
        fields.extend([self.r, self.eta_a, self.eta_b, self.bell_value].map(real));
        fields.push(self.violated.to_string());
        for z in [s.alpha1, s.alpha2, s.beta1, s.beta2] {
            fields.push(real(z.re));
            fields.push(real(z.im));
        }
        fields.push(self.evaluations.to_string());
        fields.join(",")
    }
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the header and rows to `path`.
pub fn emit_csv(rows: &[SweepRow], path: &Path) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_csv(rows, &mut w)?;
    w.flush()
}

fn write_csv(rows: &[SweepRow], w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(w, "{}", row.csv())?;
    }
    Ok(())
}

#[derive(Parser, Debug)]
#[command(name = "phasebell", version, about = "Phase-space CGLMP and SLK Bell tests for the two-mode squeezed vacuum")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Random optimizer starts per maximization.
    #[arg(long, global = true, default_value_t = 32)]
    starts: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Oracle agreement tolerance for `verify`.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args, Debug)]
struct Efficiency {
    #[arg(long, default_value_t = 1.0)]
    eta_a: f64,
    #[arg(long, default_value_t = 1.0)]
    eta_b: f64,
}

impl Efficiency {
    fn detector(&self) -> phasebell_core::Result<DetectorModel> {
        DetectorModel::new(self.eta_a, self.eta_b)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One correlation C^(n)(alpha, beta).
    Corr {
        #[arg(long, default_value = "cglmp")]
        kind: BellKind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: f64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        alpha: ComplexAmplitude,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        beta: ComplexAmplitude,
        #[command(flatten)]
        eff: Efficiency,
    },
    /// Bell value for explicit settings.
    Bell {
        #[arg(long)]
        kind: BellKind,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: f64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a1: ComplexAmplitude,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a2: ComplexAmplitude,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        b1: ComplexAmplitude,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        b2: ComplexAmplitude,
        #[command(flatten)]
        eff: Efficiency,
    },
    /// Maximize over settings; prints one CSV row.
    Optimize {
        #[arg(long)]
        kind: BellKind,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: f64,
        #[command(flatten)]
        eff: Efficiency,
        /// Search real displacements only.
        #[arg(long)]
        real: bool,
    },
    /// Optimized value per (d, r); rows d-major, then r.
    SweepR {
        #[arg(long)]
        kind: BellKind,
        /// Comma-separated dimensions.
        #[arg(long, value_delimiter = ',', required = true)]
        d_list: Vec<u32>,
        #[arg(long)]
        r: GridAxis,
        #[command(flatten)]
        eff: Efficiency,
        /// CSV destination (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimized value per (r, eta) at fixed d; rows r-major, then eta.
    Region {
        #[arg(long)]
        kind: BellKind,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: GridAxis,
        #[arg(long)]
        eta: GridAxis,
        #[arg(long, default_value = "symmetric")]
        mode: EfficiencyMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Threshold detection efficiency.
    BoundEta {
        #[arg(long)]
        kind: BellKind,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value = "symmetric")]
        mode: EfficiencyMode,
        #[arg(long, default_value_t = 1e-3)]
        eta_tol: f64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
    /// Report already printed.
    Verification,
}

impl From<phasebell_core::BellError> for Failure {
    fn from(e: phasebell_core::BellError) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Runs the driver on `args` (without the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("phasebell")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.global.threads {
        if n == 0 {
            let _ = writeln!(err, "error: --threads must be at least 1");
            return 2;
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| execute(&cli, &mut buf));
    if let Err(e) = out.write_all(&buf).and_then(|()| out.flush()) {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Runtime(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(Failure::Verification) => 1,
    }
}

fn optimizer_config(g: &Global) -> Result<OptimizerConfig, Failure> {
    let cfg = OptimizerConfig { starts: g.starts, seed: g.seed, ..OptimizerConfig::default() };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Corr { kind: _, n, d, r, alpha, beta, eff } => {
            let order = CorrelationOrder::new(*n, *d)?;
            let c = corr_tmss_lossy(order, *alpha, *beta, TmssParams::new(*r)?, eff.detector()?)?;
            // avoid printing "-0i"
            let im = if c.im == 0.0 { 0.0 } else { c.im };
            writeln!(out, "{}{:+}i", c.re, im)?;
        }
        Command::Bell { kind, d, r, a1, a2, b1, b2, eff } => {
            let settings = MeasurementSettings::new(*a1, *a2, *b1, *b2)?;
            let v = bell_value(*kind, &settings, TmssParams::new(*r)?, *d, eff.detector()?)?;
            writeln!(out, "{v:?}")?;
        }
        Command::Optimize { kind, d, r, eff, real } => {
            let cfg = OptimizerConfig { restrict_real: *real, ..optimizer_config(g)? };
            let det = eff.detector()?;
            let result = maximize_bell(*kind, *d, TmssParams::new(*r)?, det, &cfg)?;
            write_csv(&[SweepRow::new(*kind, *d, *r, det, result)], out)?;
        }
        Command::SweepR { kind, d_list, r, eff, out: path } => {
            let cfg = optimizer_config(g)?;
            let det = eff.detector()?;
            let points: Vec<(u32, f64)> =
                d_list.iter().flat_map(|&d| r.points().into_iter().map(move |r| (d, r))).collect();
            let rows = points
                .par_iter()
                .map(|&(d, r)| -> phasebell_core::Result<SweepRow> {
                    let result = maximize_bell(*kind, d, TmssParams::new(r)?, det, &cfg)?;
                    Ok(SweepRow::new(*kind, d, r, det, result))
                })
                .collect::<phasebell_core::Result<Vec<_>>>()?;
            finish_csv(&rows, path.as_deref(), out)?;
        }
        Command::Region { kind, d, r, eta, mode, out: path } => {
            let cfg = optimizer_config(g)?;
            let points: Vec<(f64, f64)> =
                r.points().into_iter().flat_map(|r| eta.points().into_iter().map(move |e| (r, e))).collect();
            let rows = points
                .par_iter()
                .map(|&(r, eta)| -> phasebell_core::Result<SweepRow> {
                    let det = mode.detector(eta)?;
                    let result = maximize_bell(*kind, *d, TmssParams::new(r)?, det, &cfg)?;
                    Ok(SweepRow::new(*kind, *d, r, det, result))
                })
                .collect::<phasebell_core::Result<Vec<_>>>()?;
            finish_csv(&rows, path.as_deref(), out)?;
        }
        Command::BoundEta { kind, d, r, mode, eta_tol } => {
            let cfg = optimizer_config(g)?;
            let scan = bound_efficiency(*kind, *d, TmssParams::new(*r)?, *mode, *eta_tol, &cfg)?;
            writeln!(out, "{}", scan.threshold)?;
        }
        Command::Verify { suite } => {
            if !(g.tol > 0.0) {
                return Err(Failure::Usage(format!("--tol {} must be positive", g.tol)));
            }
            let cfg = VerifyConfig { seed: g.seed, tol: g.tol, optimizer: optimizer_config(g)?, ..VerifyConfig::default() };
            let report = run_suite(*suite, &cfg)?;
            writeln!(out, "{report}")?;
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn finish_csv(rows: &[SweepRow], path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => emit_csv(rows, p).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display()))),
        None => Ok(write_csv(rows, out)?),
    }
}
