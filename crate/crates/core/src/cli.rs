//! Batch front end behind the `semiaxis-gabor` binary.
//!
//! Every option can come from a flag or from a flat `key = value` config file
//! (`--config`); keys are the long flag names and flags win. Outputs go to
//! `--output` or stdout.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dominance;
use crate::error::Error;
use crate::framecert::{self, Verdict};
use crate::grids::{self, GridSpec, SemiIrregularGrid};
use crate::windows::{Atom, Window};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for a run that failed.
pub const EXIT_ERROR: i32 = 1;
/// Exit status for `certify` when the answer is "not a frame".
pub const EXIT_NOT_FRAME: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "semiaxis-gabor", version, about = "Frame certificates for Gabor systems with one-sided windows")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Classify and certify a lower frame bound (JSON report).
    Certify,
    /// Per-x extreme singular values of the truncated fibers (CSV).
    Bounds,
    /// Verdicts and bounds over an (alpha, beta) rectangle (CSV).
    Sweep,
    /// Certify on a semi-irregular translation set (JSON report).
    Irregular,
    /// Non-frame evidence.
    Demo {
        #[arg(value_enum)]
        kind: DemoKind,
    },
    /// Random-matrix check of the dominance certificate.
    DominanceTest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoKind {
    /// Indicator in the gap left by the translates (JSON).
    Incompleteness,
    /// Frame sums of shrinking boundary indicators (CSV).
    Boundary,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Flat `key = value` file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// one-sided-exp:RATE | trunc-linear:X0 | trunc-exp:RATE:X0 |
    /// cauchy:MASS@LOC,... | tabulated:PATH
    #[arg(long, global = true)]
    pub window: Option<String>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// Points on the x grid of [0, 1/beta) [default: 32, sweep 8].
    #[arg(long = "x-grid", global = true)]
    pub x_grid: Option<usize>,
    /// Column half-width of the fibers [default: 64, sweep 12].
    #[arg(long, global = true)]
    pub truncation: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    #[arg(long = "C", global = true)]
    pub c: Option<f64>,
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    /// Matrices in a dominance campaign [default: 200].
    #[arg(long, global = true)]
    pub count: Option<usize>,
    /// Translation points, one per line.
    #[arg(long, global = true)]
    pub points: Option<PathBuf>,
    /// Jitter of a generated semi-irregular set [default: 0.1].
    #[arg(long, global = true)]
    pub jitter: Option<f64>,
    /// Size of a generated semi-irregular set [default: 128].
    #[arg(long = "point-count", global = true)]
    pub point_count: Option<usize>,
    /// Modulation cutoff of direct frame sums [default: 64].
    #[arg(long, global = true)]
    pub cutoff: Option<usize>,
    /// Comma-separated decreasing epsilons [default: 0.2,0.1,0.05,0.025].
    #[arg(long, global = true)]
    pub eps: Option<String>,
    /// START:STOP:STEP [default: 0.05:1.5:0.05].
    #[arg(long = "alpha-range", global = true)]
    pub alpha_range: Option<String>,
    /// START:STOP:STEP [default: 0.05:1.5:0.05].
    #[arg(long = "beta-range", global = true)]
    pub beta_range: Option<String>,
    /// Largest residual accepted by the incompleteness witness [default: 1e-12].
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

/// Per-cell sizes for sweeps; small lattice products make the fibers tall.
const SWEEP_X_GRID: usize = 8;
const SWEEP_TRUNCATION: usize = 12;

const CONFIG_KEYS: &[&str] = &[
    "command",
    "demo",
    "window",
    "alpha",
    "beta",
    "x-grid",
    "truncation",
    "seed",
    "output",
    "workers",
    "delta",
    "C",
    "lambda",
    "count",
    "points",
    "jitter",
    "point-count",
    "cutoff",
    "eps",
    "alpha-range",
    "beta-range",
    "tolerance",
];

/// Parsed config file: key -> (line, raw value).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, (usize, String)>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| config_error(line, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            if !CONFIG_KEYS.contains(&key) {
                return Err(config_error(line, format!("unknown key `{key}`")));
            }
            if entries.insert(key.to_string(), (line, value.to_string())).is_some() {
                return Err(config_error(line, format!("duplicate key `{key}`")));
            }
        }
        Ok(ConfigFile { entries })
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        ConfigFile::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, Error>
    where
        T::Err: Display,
    {
        self.entries
            .get(key)
            .map(|(line, v)| {
                v.parse::<T>()
                    .map_err(|e| config_error(*line, format!("field `{key}`: {e}")))
            })
            .transpose()
    }
}

fn config_error(line: usize, message: impl Into<String>) -> Error {
    Error::Config {
        line: Some(line),
        message: message.into(),
    }
}

/// Fully resolved options for one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(skip)]
    pub command: Command,
    pub window: Option<String>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub x_grid: usize,
    pub truncation: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub workers: Option<usize>,
    pub delta: Option<f64>,
    pub c: Option<f64>,
    pub lambda: Option<f64>,
    pub count: usize,
    pub points: Option<PathBuf>,
    pub jitter: f64,
    pub point_count: usize,
    pub cutoff: usize,
    pub eps: Vec<f64>,
    pub alpha_range: Vec<f64>,
    pub beta_range: Vec<f64>,
    pub tolerance: f64,
}

impl RunConfig {
    /// Merges flags over the config file (if any) over defaults.
    pub fn resolve(command: Option<Command>, flags: Flags) -> anyhow::Result<Self> {
        let file = match &flags.config {
            Some(p) => ConfigFile::read(p)?,
            None => ConfigFile::default(),
        };
        let command = match command {
            Some(c) => c,
            None => command_from_config(&file)?,
        };
        macro_rules! pick {
            ($flag:expr, $key:literal) => {
                match $flag {
                    Some(v) => Some(v),
                    None => file.get($key)?,
                }
            };
        }
        let sweep = command == Command::Sweep;
        let eps: Option<String> = pick!(flags.eps, "eps");
        let alpha_range: Option<String> = pick!(flags.alpha_range, "alpha-range");
        let beta_range: Option<String> = pick!(flags.beta_range, "beta-range");
        let cfg = RunConfig {
            command,
            window: pick!(flags.window, "window"),
            alpha: pick!(flags.alpha, "alpha"),
            beta: pick!(flags.beta, "beta"),
            x_grid: pick!(flags.x_grid, "x-grid").unwrap_or(if sweep { SWEEP_X_GRID } else { 32 }),
            truncation: pick!(flags.truncation, "truncation").unwrap_or(if sweep { SWEEP_TRUNCATION } else { 64 }),
            seed: pick!(flags.seed, "seed").unwrap_or(0),
            output: pick!(flags.output, "output"),
            workers: pick!(flags.workers, "workers"),
            delta: pick!(flags.delta, "delta"),
            c: pick!(flags.c, "C"),
            lambda: pick!(flags.lambda, "lambda"),
            count: pick!(flags.count, "count").unwrap_or(200),
            points: pick!(flags.points, "points"),
            jitter: pick!(flags.jitter, "jitter").unwrap_or(0.1),
            point_count: pick!(flags.point_count, "point-count").unwrap_or(128),
            cutoff: pick!(flags.cutoff, "cutoff").unwrap_or(64),
            eps: match eps {
                Some(s) => parse_list(&s).context("eps")?,
                None => vec![0.2, 0.1, 0.05, 0.025],
            },
            alpha_range: match alpha_range {
                Some(s) => parse_range(&s).context("alpha-range")?,
                None => framecert::default_sweep_axis(),
            },
            beta_range: match beta_range {
                Some(s) => parse_range(&s).context("beta-range")?,
                None => framecert::default_sweep_axis(),
            },
            tolerance: pick!(flags.tolerance, "tolerance").unwrap_or(framecert::WITNESS_TOLERANCE),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> anyhow::Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("delta", self.delta), ("C", self.c)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    bail!("{name} must be positive, got {v}");
                }
            }
        }
        for (name, v) in [
            ("x-grid", self.x_grid),
            ("truncation", self.truncation),
            ("count", self.count),
            ("point-count", self.point_count),
            ("cutoff", self.cutoff),
        ] {
            if v == 0 {
                bail!("{name} must be positive");
            }
        }
        if self.workers == Some(0) {
            bail!("workers must be positive");
        }
        if !(self.tolerance > 0.0) {
            bail!("tolerance must be positive");
        }
        if !(self.jitter >= 0.0) {
            bail!("jitter must be non-negative");
        }
        Ok(())
    }
}

fn command_from_config(file: &ConfigFile) -> anyhow::Result<Command> {
    let name: Option<String> = file.get("command")?;
    let name = name.ok_or_else(|| anyhow!("no subcommand given (flag or `command` key)"))?;
    Ok(match name.as_str() {
        "certify" => Command::Certify,
        "bounds" => Command::Bounds,
        "sweep" => Command::Sweep,
        "irregular" => Command::Irregular,
        "dominance-test" => Command::DominanceTest,
        "demo" => {
            let kind: Option<String> = file.get("demo")?;
            let kind = kind.ok_or_else(|| anyhow!("command `demo` needs a `demo` key"))?;
            Command::Demo {
                kind: DemoKind::from_str(&kind, false).map_err(|e| anyhow!("demo kind: {e}"))?,
            }
        }
        other => bail!("unknown command `{other}`"),
    })
}

fn parse_list(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad number `{t}`")))
        .collect()
}

/// `START:STOP:STEP`, inclusive of `STOP` up to rounding.
pub fn parse_range(s: &str) -> anyhow::Result<Vec<f64>> {
    let parts = parse_list(&s.replace(':', ","))?;
    let [start, stop, step] = parts[..] else {
        bail!("expected START:STOP:STEP, got `{s}`");
    };
    if !(step > 0.0 && start > 0.0 && stop >= start) {
        bail!("range needs 0 < START <= STOP and STEP > 0, got `{s}`");
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    // Rounded so that e.g. 0.1 + 2 * 0.05 prints as 0.2.
    Ok((0..=n).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12).collect())
}

/// Parses a `--window` spec.
pub fn parse_window(spec: &str) -> anyhow::Result<Window> {
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    let num = |t: &str| -> anyhow::Result<f64> { t.trim().parse().with_context(|| format!("bad number `{t}` in window spec")) };
    let w = match kind {
        "one-sided-exp" => Window::one_sided_exponential(num(args)?)?,
        "trunc-linear" => Window::truncated_linear(num(args)?)?,
        "trunc-exp" => {
            let (rate, x0) = args.split_once(':').ok_or_else(|| anyhow!("trunc-exp needs RATE:X0"))?;
            Window::truncated_exponential(num(rate)?, num(x0)?)?
        }
        "cauchy" => {
            let atoms = args
                .split(',')
                .map(|a| {
                    let (m, t) = a.split_once('@').ok_or_else(|| anyhow!("cauchy atoms are MASS@LOC"))?;
                    Ok(Atom {
                        mass: num(m)?,
                        location: num(t)?,
                    })
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            Window::cauchy_fourier(atoms)?
        }
        "tabulated" => Window::from_csv_path(args).with_context(|| format!("reading window table {args}"))?,
        _ => bail!("unknown window kind `{kind}`"),
    };
    Ok(w)
}

impl RunConfig {
    fn window(&self) -> anyhow::Result<Window> {
        parse_window(self.window.as_deref().ok_or_else(|| anyhow!("--window is required"))?)
    }

    fn lattice(&self) -> anyhow::Result<GridSpec> {
        let alpha = self.alpha.ok_or_else(|| anyhow!("--alpha is required"))?;
        let beta = self.beta.ok_or_else(|| anyhow!("--beta is required"))?;
        Ok(grids::regular_lattice(alpha, beta)?)
    }
}

/// Executes a resolved config and returns the exit status.
pub fn run(cfg: &RunConfig) -> anyhow::Result<i32> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.workers {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().context("starting worker pool")?;
    let mut out = Vec::new();
    let status = pool.install(|| dispatch(cfg, &mut out))?;
    match &cfg.output {
        Some(path) => std::fs::write(path, &out).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(&out)?,
    }
    Ok(status)
}

fn dispatch(cfg: &RunConfig, out: &mut Vec<u8>) -> anyhow::Result<i32> {
    match cfg.command {
        Command::Certify => {
            let report = framecert::certify_lower_frame_bound(&cfg.window()?, &cfg.lattice()?, cfg.x_grid, cfg.truncation)?;
            framecert::write_report_json(&mut *out, &report)?;
            Ok(match report.verdict {
                Verdict::NotFrame => EXIT_NOT_FRAME,
                Verdict::Frame => EXIT_OK,
                Verdict::Unsupported => EXIT_ERROR,
            })
        }
        Command::Bounds => {
            let bounds = framecert::empirical_frame_bounds(&cfg.window()?, &cfg.lattice()?, cfg.x_grid, cfg.truncation)?;
            framecert::write_bounds_csv(&mut *out, &bounds)?;
            eprintln!("empirical_A = {}\nempirical_B = {}", bounds.a, bounds.b);
            Ok(EXIT_OK)
        }
        Command::Sweep => {
            let cells = framecert::frame_set_sweep(&cfg.window()?, &cfg.alpha_range, &cfg.beta_range, cfg.x_grid, cfg.truncation)?;
            framecert::write_sweep_csv(&mut *out, &cells)?;
            Ok(EXIT_OK)
        }
        Command::Irregular => irregular(cfg, out),
        Command::Demo { kind: DemoKind::Incompleteness } => {
            let alpha = cfg.alpha.ok_or_else(|| anyhow!("--alpha is required"))?;
            let beta = cfg.beta.ok_or_else(|| anyhow!("--beta is required"))?;
            let witness = framecert::incompleteness_witness(&cfg.window()?, alpha, beta)?;
            #[derive(Serialize)]
            struct Out<'a> {
                witness: &'a framecert::IncompletenessWitness,
                tolerance: f64,
                passed: bool,
            }
            let passed = witness.residual <= cfg.tolerance;
            serde_json::to_writer_pretty(
                &mut *out,
                &Out {
                    witness: &witness,
                    tolerance: cfg.tolerance,
                    passed,
                },
            )?;
            writeln!(out)?;
            Ok(if passed { EXIT_OK } else { EXIT_ERROR })
        }
        Command::Demo { kind: DemoKind::Boundary } => {
            let w = cfg.window()?;
            let beta = cfg.beta.ok_or_else(|| anyhow!("--beta is required"))?;
            if let Some(alpha) = cfg.alpha {
                if (alpha - w.support_sup()).abs() > grids::GRID_TOLERANCE * alpha {
                    bail!("the boundary demo runs at alpha = x0 = {}", w.support_sup());
                }
            }
            let points = framecert::boundary_degeneration_demo(&w, beta, &cfg.eps, cfg.cutoff)?;
            framecert::write_degeneration_csv(&mut *out, &points)?;
            Ok(EXIT_OK)
        }
        Command::DominanceTest => {
            let need = |v: Option<f64>, name: &str| v.ok_or_else(|| anyhow!("--{name} is required"));
            let s = dominance::soundness_campaign(
                need(cfg.delta, "delta")?,
                need(cfg.c, "C")?,
                need(cfg.lambda, "lambda")?,
                cfg.count,
                cfg.seed,
            )?;
            let cert = &s.certificate;
            writeln!(out, "matrices: {}", s.matrices)?;
            writeln!(out, "sizes: {}-{}", dominance::CAMPAIGN_SIZES.0, dominance::CAMPAIGN_SIZES.1)?;
            writeln!(out, "epsilon: {}", cert.epsilon)?;
            writeln!(out, "n0: {}", cert.n0)?;
            writeln!(out, "kappa: {}", cert.kappa)?;
            writeln!(out, "min_sigma: {} (size {}, seed {})", s.min_sigma, s.min_sigma_size, s.min_sigma_seed)?;
            writeln!(out, "violations: {}", s.violations)?;
            Ok(if s.violations == 0 { EXIT_OK } else { EXIT_ERROR })
        }
    }
}

fn irregular(cfg: &RunConfig, out: &mut Vec<u8>) -> anyhow::Result<i32> {
    let w = cfg.window()?;
    let beta = cfg.beta.ok_or_else(|| anyhow!("--beta is required"))?;
    let points = match &cfg.points {
        Some(p) => grids::read_points_path(p).with_context(|| format!("reading points {}", p.display()))?,
        None => grids::jittered_lattice(cfg.alpha.unwrap_or(0.9), cfg.jitter, cfg.seed, cfg.point_count)?,
    };
    let gap = match cfg.alpha {
        Some(a) => a,
        None => grids::validate_semi_irregular(&points, f64::INFINITY)?.max_gap,
    };
    let set = SemiIrregularGrid::new(points, beta, gap)?;
    let limit = framecert::max_semi_irregular_truncation(&set, cfg.x_grid);
    if limit == 0 {
        bail!("the point list is too short to cover a single column window");
    }
    let truncation = cfg.truncation.min(limit);
    let mut report = framecert::certify_lower_frame_bound(&w, &GridSpec::SemiIrregular(set), cfg.x_grid, truncation)?;
    if truncation < cfg.truncation {
        report
            .diagnostics
            .notes
            .push(format!("truncation lowered from {} to {truncation} to stay inside the point list", cfg.truncation));
    }
    framecert::write_report_json(&mut *out, &report)?;
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs, and reports errors on stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match RunConfig::resolve(cli.command, cli.flags).and_then(|cfg| run(&cfg)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}
