//! One-sided windows `g` supported on `[0, x0]` (or the whole half-line) and
//! their decay certificates.
//!
//! A window is *stably decreasing* when for every `t > 0` there is a
//! `q(t) < 1` with `g(x + t) <= q(t) g(x)` for all `x >= 0`. The smallest such
//! `q(t)` is the supremum of `g(x + t) / g(x)` over the positive part of `g`,
//! which is what [`Window::decay_ratio`] returns.

use std::f64::consts::PI;
use std::io::Read;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest decay ratio handed out. Ratios that vanish (shift beyond a
/// compact support) are clamped here so geometric series stay finite.
pub const DECAY_FLOOR: f64 = 1e-6;

/// Number of abscissae used for the grid supremum of a tabulated window.
pub const TABULATED_DECAY_GRID: usize = 10_000;

/// One point mass of the measure behind a Fourier-side Cauchy window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub mass: f64,
    pub location: f64,
}

/// Samples of a window with linear interpolation between them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    xs: Vec<f64>,
    values: Vec<f64>,
}

impl Table {
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn interpolate(&self, x: f64) -> f64 {
        let last = self.xs.len() - 1;
        if x < 0.0 || x > self.xs[last] {
            return 0.0;
        }
        let i = self.xs.partition_point(|&s| s <= x);
        if i == 0 {
            return self.values[0];
        }
        if i > last {
            return self.values[last];
        }
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.values[i - 1], self.values[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WindowKind {
    /// `e^{-rate x}` on `[0, inf)`.
    OneSidedExponential { rate: f64 },
    /// `1 - x / support` on `[0, support]`.
    TruncatedLinear { support: f64 },
    /// `e^{-rate x}` on `[0, support]`.
    TruncatedExponential { rate: f64, support: f64 },
    /// Fourier transform of a Cauchy transform: `sum_k mass_k e^{-2 pi xi t_k}`.
    CauchyFourier { atoms: Vec<Atom> },
    Tabulated(Table),
}

/// `(x0, lim_{x -> x0-} g(x))`. The limit is meaningless when `x0` is infinite
/// and is reported as 0 there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryProfile {
    pub support_sup: f64,
    pub boundary_limit: f64,
}

impl BoundaryProfile {
    pub fn is_bounded(&self) -> bool {
        self.support_sup.is_finite()
    }
}

/// Decay ratio together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayEstimate {
    pub q: f64,
    /// Grid points used for the supremum, `None` when computed in closed form.
    pub grid_points: Option<usize>,
    /// Difference between the full-grid supremum and a half-resolution one.
    /// A rough indicator of how far the grid supremum is from the true one.
    pub grid_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Window {
    kind: WindowKind,
    support_sup: f64,
    boundary_limit: f64,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::param(format!("{name} must be a positive finite number, got {v}")))
    }
}

impl Window {
    pub fn one_sided_exponential(rate: f64) -> Result<Self> {
        let rate = positive("rate", rate)?;
        Ok(Window {
            kind: WindowKind::OneSidedExponential { rate },
            support_sup: f64::INFINITY,
            boundary_limit: 0.0,
        })
    }

    pub fn truncated_linear(support: f64) -> Result<Self> {
        let support = positive("support", support)?;
        Ok(Window {
            kind: WindowKind::TruncatedLinear { support },
            support_sup: support,
            boundary_limit: 0.0,
        })
    }

    pub fn truncated_exponential(rate: f64, support: f64) -> Result<Self> {
        let rate = positive("rate", rate)?;
        let support = positive("support", support)?;
        Ok(Window {
            kind: WindowKind::TruncatedExponential { rate, support },
            support_sup: support,
            boundary_limit: (-rate * support).exp(),
        })
    }

    /// Fourier-side window of `g(x) = int dmu(t) / (x - i t)` for a discrete
    /// measure `mu = sum_k mass_k delta_{t_k}` on `[a, inf)`, `a > 0`.
    ///
    /// Frame questions for the Cauchy window at `(alpha, beta)` are answered
    /// by this window at the swapped parameters `(beta, alpha)`.
    pub fn cauchy_fourier(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::param("Cauchy window needs at least one atom"));
        }
        for a in &atoms {
            positive("atom mass", a.mass)?;
            positive("atom location", a.location)?;
        }
        Ok(Window {
            kind: WindowKind::CauchyFourier { atoms },
            support_sup: f64::INFINITY,
            boundary_limit: 0.0,
        })
    }

    /// Piecewise linear window through `(xs[i], values[i])`. `xs` must start at
    /// 0 and increase strictly; values must be non-negative and non-increasing
    /// with `values[0] > 0`.
    pub fn tabulated(xs: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 || xs.len() != values.len() {
            return Err(Error::param("tabulated window needs at least two (x, g) samples"));
        }
        if xs[0] != 0.0 {
            return Err(Error::param("tabulated window must start at x = 0"));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) || xs.iter().any(|x| !x.is_finite()) {
            return Err(Error::param("tabulated abscissae must increase strictly"));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::param("tabulated values must be finite and non-negative"));
        }
        if values[0] <= 0.0 {
            return Err(Error::param("tabulated window must have g(0) > 0"));
        }
        if values.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::param("tabulated values must be non-increasing"));
        }
        let last_positive = values.iter().rposition(|v| *v > 0.0).unwrap_or(0);
        let (support_sup, boundary_limit) = if last_positive == values.len() - 1 {
            (xs[last_positive], values[last_positive])
        } else {
            // g falls linearly to zero on the next interval, so the left limit
            // at the end of the support is 0.
            (xs[last_positive + 1], 0.0)
        };
        let end = (last_positive + 2).min(xs.len());
        Ok(Window {
            kind: WindowKind::Tabulated(Table {
                xs: xs[..end].to_vec(),
                values: values[..end].to_vec(),
            }),
            support_sup,
            boundary_limit,
        })
    }

    /// Reads a two-column CSV `(x, g(x))`. A non-numeric first row is treated
    /// as a header.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            if record.len() != 2 {
                return Err(Error::param(format!(
                    "line {}: expected two columns, found {}",
                    i + 1,
                    record.len()
                )));
            }
            match (record[0].parse::<f64>(), record[1].parse::<f64>()) {
                (Ok(x), Ok(g)) => {
                    xs.push(x);
                    values.push(g);
                }
                _ if i == 0 => continue,
                _ => return Err(Error::param(format!("line {}: unparseable sample", i + 1))),
            }
        }
        Window::tabulated(xs, values)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        Window::from_csv_reader(std::fs::File::open(path)?)
    }

    pub fn kind(&self) -> &WindowKind {
        &self.kind
    }

    /// `g(x)`; zero for `x < 0` and for `x > x0`.
    pub fn value(&self, x: f64) -> f64 {
        if x < 0.0 || x > self.support_sup {
            return 0.0;
        }
        match &self.kind {
            WindowKind::OneSidedExponential { rate } => (-rate * x).exp(),
            WindowKind::TruncatedLinear { support } => 1.0 - x / support,
            WindowKind::TruncatedExponential { rate, .. } => (-rate * x).exp(),
            WindowKind::CauchyFourier { atoms } => atoms
                .iter()
                .map(|a| a.mass * (-2.0 * PI * x * a.location).exp())
                .sum(),
            WindowKind::Tabulated(table) => table.interpolate(x),
        }
    }

    /// `lim_{y -> x-} g(y)`.
    pub fn left_limit(&self, x: f64) -> f64 {
        if x <= 0.0 || x > self.support_sup {
            0.0
        } else if x == self.support_sup {
            self.boundary_limit
        } else {
            self.value(x)
        }
    }

    /// `lim_{y -> x+} g(y)`.
    pub fn right_limit(&self, x: f64) -> f64 {
        if x >= self.support_sup {
            0.0
        } else {
            self.value(x.max(0.0))
        }
    }

    pub fn peak(&self) -> f64 {
        self.value(0.0)
    }

    pub fn support_sup(&self) -> f64 {
        self.support_sup
    }

    pub fn boundary_profile(&self) -> BoundaryProfile {
        BoundaryProfile {
            support_sup: self.support_sup,
            boundary_limit: self.boundary_limit,
        }
    }

    /// Points in `(0, x0)` where `g` is not smooth (interpolation knots).
    pub fn interior_breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            WindowKind::Tabulated(t) => t
                .xs
                .iter()
                .copied()
                .filter(|&x| x > 0.0 && x < self.support_sup)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Length beyond which `g` stays below `rel_tol * g(0)`.
    pub fn effective_support(&self, rel_tol: f64) -> f64 {
        if self.support_sup.is_finite() {
            return self.support_sup;
        }
        let level = -rel_tol.ln();
        match &self.kind {
            WindowKind::OneSidedExponential { rate } => level / rate,
            WindowKind::CauchyFourier { atoms } => {
                let slowest = atoms.iter().map(|a| a.location).fold(f64::INFINITY, f64::min);
                level / (2.0 * PI * slowest)
            }
            _ => unreachable!("only exponential-type windows have unbounded support"),
        }
    }

    /// Smallest `q(t)` with `g(x + t) <= q(t) g(x)` on the positive part of `g`,
    /// floored at [`DECAY_FLOOR`].
    pub fn decay_ratio(&self, t: f64) -> Result<f64> {
        self.decay_estimate(t).map(|d| d.q)
    }

    pub fn decay_estimate(&self, t: f64) -> Result<DecayEstimate> {
        let t = positive("shift t", t)?;
        let closed = |q: f64| DecayEstimate {
            q,
            grid_points: None,
            grid_error: 0.0,
        };
        let (sup, estimate) = match &self.kind {
            WindowKind::OneSidedExponential { rate } => {
                let q = (-rate * t).exp();
                (q, closed(q))
            }
            WindowKind::TruncatedLinear { support } => {
                // (x0 - x - t) / (x0 - x) decreases in x, so the supremum sits at x = 0.
                let q = if t < *support { 1.0 - t / support } else { 0.0 };
                (q, closed(q))
            }
            WindowKind::TruncatedExponential { rate, support } => {
                let q = if t <= *support { (-rate * t).exp() } else { 0.0 };
                (q, closed(q))
            }
            WindowKind::CauchyFourier { atoms } => {
                // The ratio increases towards the slowest exponential and never
                // reaches it.
                let slowest = atoms.iter().map(|a| a.location).fold(f64::INFINITY, f64::min);
                let q = (-2.0 * PI * t * slowest).exp();
                (q, closed(q))
            }
            WindowKind::Tabulated(_) => {
                let fine = self.grid_sup_ratio(t, TABULATED_DECAY_GRID);
                let coarse = self.grid_sup_ratio(t, TABULATED_DECAY_GRID / 2);
                (
                    fine,
                    DecayEstimate {
                        q: fine,
                        grid_points: Some(TABULATED_DECAY_GRID),
                        grid_error: (fine - coarse).abs(),
                    },
                )
            }
        };
        if sup >= 1.0 {
            return Err(Error::NotStablyDecreasing { t, ratio: sup });
        }
        Ok(DecayEstimate {
            q: estimate.q.max(DECAY_FLOOR),
            ..estimate
        })
    }

    fn grid_sup_ratio(&self, t: f64, points: usize) -> f64 {
        let step = self.support_sup / points as f64;
        (0..points)
            .map(|i| i as f64 * step)
            .filter_map(|x| {
                let gx = self.value(x);
                (gx > 0.0).then(|| self.value(x + t) / gx)
            })
            .fold(0.0, f64::max)
    }

    /// Checks the standing hypotheses on a test grid: non-increasing values
    /// and `q(t) < 1` for a spread of shifts including `extra_shift`.
    pub fn scan_hypotheses(&self, extra_shift: f64) -> Result<()> {
        let span = self.support_sup.min(10.0);
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let x = span * i as f64 / 199.0;
            let v = self.value(x);
            if v > prev {
                return Err(Error::HypothesisScan(format!("g increases near x = {x}")));
            }
            prev = v;
        }
        if self.peak() <= 0.0 {
            return Err(Error::HypothesisScan("g(0) must be positive".into()));
        }
        let base = self.support_sup.min(1.0);
        let mut shifts: Vec<f64> = (0..8).map(|k| base * 0.5f64.powi(k)).collect();
        if extra_shift.is_finite() && extra_shift > 0.0 {
            shifts.push(extra_shift);
        }
        for t in shifts {
            self.decay_ratio(t)
                .map_err(|e| Error::HypothesisScan(e.to_string()))?;
        }
        Ok(())
    }
}

/// Fourier-side window of a Cauchy transform, see [`Window::cauchy_fourier`].
pub fn cauchy_transform_window(atoms: &[(f64, f64)]) -> Result<Window> {
    Window::cauchy_fourier(
        atoms
            .iter()
            .map(|&(mass, location)| Atom { mass, location })
            .collect(),
    )
}
