//! Frame decisions and the numerical evidence behind them.
//!
//! [`classify`] applies the closed-form frame-set description for one-sided
//! stably decreasing windows. [`certify_lower_frame_bound`] backs a `Frame`
//! verdict with an explicit lower frame bound from the reduced fibers `D_x`;
//! [`empirical_frame_bounds`] measures the truncated fibers directly. The
//! remaining functions produce evidence: the Poisson/fiber identity for the
//! frame operator, and witnesses for the two ways a system can fail.

use std::io::Write;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::dominance::{self, DominanceCertificate, HypothesisScan};
use crate::error::{Error, Result};
use crate::grids::{GridSpec, SemiIrregularGrid, GRID_TOLERANCE};
use crate::quadrature::{self, TestFunction};
use crate::ronshen::{self, Truncation};
use crate::spectral;
use crate::windows::Window;

/// Inner products below this count as vanishing in the witnesses.
pub const WITNESS_TOLERANCE: f64 = 1e-12;
/// Modulation cutoff used by the direct frame sums unless told otherwise.
pub const DEFAULT_MODULATION_CUTOFF: usize = 128;
/// Translations beyond the point where `g` falls below this fraction of
/// `g(0)` are left out of direct frame sums.
const TRANSLATION_CUTOFF: f64 = 1e-12;
const FIBER_REL_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Frame,
    NotFrame,
    /// The window fails the standing hypotheses; no verdict is given.
    Unsupported,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Frame => "Frame",
            Verdict::NotFrame => "NotFrame",
            Verdict::Unsupported => "Unsupported",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// `alpha beta > 1`.
    ProductRule,
    /// `alpha > x0`: the translates leave gaps.
    SupportRule,
    /// `alpha = x0` and `g(x0-) = 0`.
    BoundaryRule,
    /// Frame, with a lower bound from the dominance pipeline.
    Certified,
    /// Frame by the classification alone; the pipeline did not certify.
    Classified,
    /// Hypothesis scan failed.
    HypothesisFailure,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub reason: Reason,
    /// Why the hypothesis scan failed, for `Unsupported`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Frame iff `alpha beta <= 1` and either `x0 = inf`, `alpha < x0`, or
/// `alpha = x0` with `g(x0-) > 0`. Windows failing the hypothesis scan are
/// `Unsupported`.
pub fn classify(w: &Window, alpha: f64, beta: f64) -> Result<Classification> {
    let grid = crate::grids::regular_lattice(alpha, beta)?;
    let verdict = |verdict, reason| Classification {
        verdict,
        reason,
        detail: None,
    };
    if let Err(e) = w.scan_hypotheses(1.0 / beta) {
        return Ok(Classification {
            verdict: Verdict::Unsupported,
            reason: Reason::HypothesisFailure,
            detail: Some(e.to_string()),
        });
    }
    if !grid.is_admissible() {
        return Ok(verdict(Verdict::NotFrame, Reason::ProductRule));
    }
    let x0 = w.support_sup();
    if x0.is_infinite() {
        return Ok(verdict(Verdict::Frame, Reason::Classified));
    }
    let tol = GRID_TOLERANCE * x0;
    Ok(if alpha < x0 - tol {
        verdict(Verdict::Frame, Reason::Classified)
    } else if alpha > x0 + tol {
        verdict(Verdict::NotFrame, Reason::SupportRule)
    } else if w.boundary_profile().boundary_limit > 0.0 {
        verdict(Verdict::Frame, Reason::Classified)
    } else {
        verdict(Verdict::NotFrame, Reason::BoundaryRule)
    })
}

/// `x_i = (i + 1/2) / (beta n)`, `i < n`.
pub fn x_grid(beta: f64, size: usize) -> Vec<f64> {
    (0..size).map(|i| (i as f64 + 0.5) / (beta * size as f64)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberExtremes {
    pub x: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalBounds {
    #[serde(rename = "empirical_A")]
    pub a: f64,
    #[serde(rename = "empirical_B")]
    pub b: f64,
    pub truncation: Truncation,
    pub per_x: Vec<FiberExtremes>,
}

/// `beta min_x sigma_min(G_x)^2` and `beta max_x sigma_max(G_x)^2` over the
/// x grid, using the full truncated fibers.
pub fn empirical_frame_bounds(w: &Window, grid: &GridSpec, x_grid_size: usize, truncation: usize) -> Result<EmpiricalBounds> {
    check_sizes(x_grid_size, truncation)?;
    let beta = grid.beta();
    let trunc = Truncation::for_grid(grid, truncation);
    let per_x = x_grid(beta, x_grid_size)
        .into_par_iter()
        .map(|x| {
            let slice = ronshen::build_slice(w, grid, x, trunc)?;
            let s = spectral::extreme_singular_values(&slice.entries, spectral::DEFAULT_TOLERANCE)?;
            Ok(FiberExtremes {
                x,
                sigma_min: s.sigma_min,
                sigma_max: s.sigma_max,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let lo = per_x.iter().map(|e| e.sigma_min).fold(f64::INFINITY, f64::min);
    let hi = per_x.iter().map(|e| e.sigma_max).fold(0.0, f64::max);
    Ok(EmpiricalBounds {
        a: beta * lo * lo,
        b: beta * hi * hi,
        truncation: trunc,
        per_x,
    })
}

fn check_sizes(x_grid_size: usize, truncation: usize) -> Result<()> {
    if x_grid_size == 0 {
        return Err(Error::param("x grid needs at least one point"));
    }
    if truncation == 0 {
        return Err(Error::param("truncation must be positive"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberCheck {
    pub x: f64,
    pub delta_obs: f64,
    pub dominance_ok: bool,
    pub worst_row_slack: f64,
    /// Smallest singular value of the truncated `D_x`.
    pub sigma_min_d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub x_grid_size: usize,
    pub truncation: usize,
    /// `q(1 / beta)`, also the shift weight of `Id - q S`.
    pub q: Option<f64>,
    /// Analytic diagonal floor `g(alpha-)`.
    pub delta_floor: Option<f64>,
    pub per_x: Vec<FiberCheck>,
    pub failing_x: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    pub verdict: Verdict,
    pub reason: Reason,
    pub certified_epsilon: Option<f64>,
    #[serde(rename = "certified_A")]
    pub certified_a: Option<f64>,
    #[serde(rename = "empirical_A")]
    pub empirical_a: Option<f64>,
    #[serde(rename = "empirical_B")]
    pub empirical_b: Option<f64>,
    pub certificate: Option<DominanceCertificate>,
    pub diagnostics: Diagnostics,
}

impl FrameReport {
    pub fn is_certified(&self) -> bool {
        self.reason == Reason::Certified
    }
}

/// Largest column half-width the point list covers at every x of the grid.
pub fn max_semi_irregular_truncation(grid: &SemiIrregularGrid, x_grid_size: usize) -> usize {
    let xs = x_grid(grid.beta(), x_grid_size.max(1));
    let (x_lo, x_hi) = (xs[0], xs[xs.len() - 1]);
    let pts = grid.points();
    let (first, last) = (pts[0], pts[pts.len() - 1]);
    let beta = grid.beta();
    let centre = *ronshen::semi_irregular_columns(grid, 0).start() as f64;
    let fits = |m: usize| {
        let m = m as f64;
        x_lo + (centre - m) / beta >= first && x_hi + (centre + m) / beta < last
    };
    (1..).take_while(|&m| fits(m)).last().unwrap_or(0)
}

/// Certified lower frame bound for a regular lattice with a `Frame`
/// classification, or a semi-irregular set meeting the gap and separation
/// conditions with zero phases and `g(alpha-) > 0`.
///
/// Each fiber on the x grid is reduced to `D_x = G*_x (Id - q S)` and checked
/// against one certificate built from `delta = g(alpha-)`, `C = g(0) / q`,
/// `lambda = q`. If any fiber fails, the report keeps only empirical bounds
/// and lists the failing x.
pub fn certify_lower_frame_bound(w: &Window, grid: &GridSpec, x_grid_size: usize, truncation: usize) -> Result<FrameReport> {
    check_sizes(x_grid_size, truncation)?;
    let mut diagnostics = Diagnostics {
        x_grid_size,
        truncation,
        q: None,
        delta_floor: None,
        per_x: Vec::new(),
        failing_x: Vec::new(),
        notes: Vec::new(),
    };
    let alpha = grid.alpha();
    let beta = grid.beta();
    match grid {
        GridSpec::Regular { .. } => {
            let cls = classify(w, alpha, beta)?;
            if cls.verdict != Verdict::Frame {
                // Wide lattices have vacuously injective truncations, so no
                // numbers are reported for them.
                let empirical = if cls.verdict == Verdict::NotFrame && grid.is_admissible() {
                    Some(empirical_frame_bounds(w, grid, x_grid_size, truncation)?)
                } else {
                    None
                };
                diagnostics.notes.extend(cls.detail);
                return Ok(FrameReport {
                    verdict: cls.verdict,
                    reason: cls.reason,
                    certified_epsilon: None,
                    certified_a: None,
                    empirical_a: empirical.as_ref().map(|e| e.a),
                    empirical_b: empirical.as_ref().map(|e| e.b),
                    certificate: None,
                    diagnostics,
                });
            }
        }
        GridSpec::SemiIrregular(g) => {
            let report = g.validate()?;
            if !report.passed() {
                return Err(Error::precondition(format!(
                    "point set fails validation (max gap {}, separation {:?})",
                    report.max_gap, report.separation_m
                )));
            }
            if !grid.is_admissible() {
                return Err(Error::precondition(format!(
                    "gap bound times beta is {} > 1",
                    grid.density_product()
                )));
            }
            if g.has_phases() {
                return Err(Error::precondition("certification needs zero phases"));
            }
            w.scan_hypotheses(1.0 / beta)
                .map_err(|e| Error::precondition(e.to_string()))?;
            diagnostics.notes.push(format!(
                "separation checked on [{}, {}] only",
                report.checked_range.0, report.checked_range.1
            ));
        }
    }

    let delta = w.left_limit(alpha);
    if delta <= 0.0 {
        return Err(Error::precondition(format!("g({alpha}-) = {delta} must be positive")));
    }
    let q = w.decay_ratio(1.0 / beta)?;
    diagnostics.q = Some(q);
    diagnostics.delta_floor = Some(delta);
    let empirical = empirical_frame_bounds(w, grid, x_grid_size, truncation)?;

    let cert = match dominance::certificate(delta, w.peak() / q, q) {
        Ok(c) => Some(c),
        Err(e @ Error::NoAdmissiblePair { .. }) => {
            diagnostics.notes.push(e.to_string());
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(cert) = &cert {
        diagnostics.per_x = x_grid(beta, x_grid_size)
            .into_par_iter()
            .map(|x| check_fiber(w, grid, x, truncation, q, cert))
            .collect::<Result<Vec<_>>>()?;
        diagnostics.failing_x = diagnostics
            .per_x
            .iter()
            .filter(|c| !c.dominance_ok || c.sigma_min_d < cert.epsilon - dominance::SIGMA_SLACK)
            .map(|c| c.x)
            .collect();
    }
    let certified = cert.filter(|_| diagnostics.failing_x.is_empty());
    let (reason, epsilon, certified_a) = match &certified {
        Some(c) => {
            let bound = c.epsilon / (1.0 + q);
            (Reason::Certified, Some(c.epsilon), Some(beta * bound * bound))
        }
        None => (Reason::Classified, None, None),
    };
    Ok(FrameReport {
        verdict: Verdict::Frame,
        reason,
        certified_epsilon: epsilon,
        certified_a,
        empirical_a: Some(empirical.a),
        empirical_b: Some(empirical.b),
        certificate: certified,
        diagnostics,
    })
}

fn check_fiber(w: &Window, grid: &GridSpec, x: f64, truncation: usize, q: f64, cert: &DominanceCertificate) -> Result<FiberCheck> {
    let g_star = ronshen::reduce(w, grid, x, truncation)?;
    let d = ronshen::u_transform(&g_star, q)?;
    let report = ronshen::dominance_report(&d)?;
    let dm = spectral::to_complex(&d.matrix);
    let hypotheses = HypothesisScan::of(&dm, cert.lambda).check(cert).is_ok();
    let sigma = spectral::extreme_singular_values(&dm, spectral::DEFAULT_TOLERANCE)?;
    Ok(FiberCheck {
        x,
        delta_obs: report.delta_obs,
        dominance_ok: report.passed() && hypotheses,
        worst_row_slack: report.worst_row_slack,
        sigma_min_d: sigma.sigma_min,
    })
}

pub fn write_report_json<W: Write>(mut writer: W, report: &FrameReport) -> Result<()> {
    serde_json::to_writer_pretty(&mut writer, report)?;
    writeln!(writer)?;
    Ok(())
}

pub fn write_bounds_csv<W: Write>(writer: W, bounds: &EmpiricalBounds) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["x", "sigma_min", "sigma_max"])?;
    for e in &bounds.per_x {
        wtr.write_record([e.x.to_string(), e.sigma_min.to_string(), e.sigma_max.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Both sides of `<S f, f> = (1 / beta) int_0^{1/beta} ||G_x v_f(x)||^2 dx`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticForm {
    /// `sum_gamma |<f, pi_gamma g>|^2` from explicit inner products.
    pub direct: f64,
    /// The fiber integral.
    pub fiber: f64,
    pub relative_discrepancy: f64,
    pub translations: usize,
    pub modulation_cutoff: usize,
    /// Columns `k` with `x + k / beta` meeting the support of `f`.
    pub columns: (i64, i64),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Translations (with phases) whose window meets the support of `f`.
fn translations_meeting(w: &Window, grid: &GridSpec, f: &TestFunction) -> (Vec<(f64, f64)>, Option<String>) {
    let (fa, fb) = f.support();
    let reach = w.effective_support(TRANSLATION_CUTOFF);
    match grid {
        GridSpec::Regular { alpha, .. } => {
            let lo = ((fa - reach) / alpha).floor() as i64;
            let hi = (fb / alpha).ceil() as i64;
            ((lo..=hi).map(|k| (*alpha * k as f64, 0.0)).collect(), None)
        }
        GridSpec::SemiIrregular(g) => {
            let pts = g.points();
            let note = (fa < pts[0] || fb - reach > pts[pts.len() - 1]).then(|| {
                format!(
                    "support of f [{fa}, {fb}] reaches past the point list [{}, {}]",
                    pts[0],
                    pts[pts.len() - 1]
                )
            });
            let list = pts
                .iter()
                .zip(g.phases())
                .filter(|(&l, _)| l <= fb && l + reach >= fa)
                .map(|(&l, &c)| (l, c))
                .collect();
            (list, note)
        }
    }
}

/// Direct frame sum of `f` against its fiber-side expression.
pub fn frame_operator_quadratic_form(w: &Window, grid: &GridSpec, f: &TestFunction, cutoff: usize) -> Result<QuadraticForm> {
    if cutoff == 0 {
        return Err(Error::param("modulation cutoff must be positive"));
    }
    let beta = grid.beta();
    let (lambdas, note) = translations_meeting(w, grid, f);
    let direct_terms = lambdas
        .par_iter()
        .map(|&(l, c)| quadrature::modulation_sum(f, w, l, c, beta, cutoff).map(|s| s.total()))
        .collect::<Result<Vec<f64>>>()?;
    let direct: f64 = direct_terms.iter().sum();

    let period = 1.0 / beta;
    let (fa, fb) = f.support();
    let k_lo = (fa * beta).floor() as i64 - 1;
    let k_hi = (fb * beta).ceil() as i64;
    let x0 = w.support_sup();
    let mut breaks: Vec<f64> = Vec::new();
    for &(l, _) in &lambdas {
        breaks.push(l.rem_euclid(period));
        if x0.is_finite() {
            breaks.push((l + x0).rem_euclid(period));
        }
        breaks.extend(w.interior_breakpoints().iter().map(|p| (l + p).rem_euclid(period)));
    }
    breaks.extend(f.breakpoints().iter().map(|p| p.rem_euclid(period)));
    let integrand = |x: f64| -> f64 {
        lambdas
            .iter()
            .map(|&(l, c)| {
                (k_lo..=k_hi)
                    .map(|k| {
                        let y = x + k as f64 * period;
                        let v = f.value(y) * w.value(y - l);
                        if v == 0.0 || c == 0.0 {
                            num_complex::Complex64::new(v, 0.0)
                        } else {
                            num_complex::Complex64::from_polar(v, std::f64::consts::TAU * c * k as f64 * period)
                        }
                    })
                    .sum::<num_complex::Complex64>()
                    .norm_sqr()
            })
            .sum()
    };
    let panel = (period / 8.0).min(0.05);
    let fiber = quadrature::integrate_refined(integrand, 0.0, period, &breaks, panel, FIBER_REL_TOL)? / beta;
    Ok(QuadraticForm {
        direct,
        fiber,
        relative_discrepancy: (direct - fiber).abs() / direct.abs().max(f64::MIN_POSITIVE),
        translations: lambdas.len(),
        modulation_cutoff: cutoff,
        columns: (k_lo, k_hi),
        note,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncompletenessWitness {
    /// `h` is the indicator of `[start, end]`.
    pub start: f64,
    pub end: f64,
    /// `max |<h, pi_gamma g>|` over the checked translations and modulations.
    pub residual: f64,
    pub translations: RangeInclusive<i64>,
    pub modulations: RangeInclusive<i64>,
}

/// For `alpha > x0`, an indicator inside the gap `(x0, alpha)` that every
/// translate misses.
pub fn incompleteness_witness(w: &Window, alpha: f64, beta: f64) -> Result<IncompletenessWitness> {
    crate::grids::regular_lattice(alpha, beta)?;
    let x0 = w.support_sup();
    if !(x0.is_finite() && alpha > x0 * (1.0 + GRID_TOLERANCE)) {
        return Err(Error::precondition(format!(
            "an uncovered gap needs alpha > x0 (alpha = {alpha}, x0 = {x0})"
        )));
    }
    let margin = (alpha - x0) / 4.0;
    let (start, end) = (x0 + margin, alpha - margin);
    let h = TestFunction::indicator(start, end)?;
    let translations = -8..=8;
    let modulations = -32..=32;
    let mut residual = 0.0f64;
    for k in translations.clone() {
        for n in modulations.clone() {
            let ip = quadrature::inner_product_on(&h, w, alpha * k as f64, beta * n as f64, start, end)?;
            residual = residual.max(ip.norm());
        }
    }
    Ok(IncompletenessWitness {
        start,
        end,
        residual,
        translations,
        modulations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegenerationPoint {
    pub epsilon: f64,
    /// `sum_gamma |<h_eps, pi_gamma g>|^2` for `h_eps = chi_[x0 - eps, x0]`.
    pub frame_sum: f64,
    /// `frame_sum / ||h_eps||^2`.
    pub ratio: f64,
}

/// Normalised frame sums of `chi_[x0 - eps, x0]` on the lattice
/// `x0 Z x beta Z` for a window with `g(x0-) = 0`; they tend to zero.
pub fn boundary_degeneration_demo(w: &Window, beta: f64, eps_list: &[f64], cutoff: usize) -> Result<Vec<DegenerationPoint>> {
    let x0 = w.support_sup();
    if !x0.is_finite() || w.boundary_profile().boundary_limit != 0.0 {
        return Err(Error::precondition("needs a bounded support with vanishing boundary limit"));
    }
    let alpha = x0;
    if !crate::grids::regular_lattice(alpha, beta)?.is_admissible() {
        return Err(Error::precondition(format!("alpha beta = {} exceeds 1", alpha * beta)));
    }
    if eps_list.is_empty() || eps_list.iter().any(|&e| !(e > 0.0 && e <= x0)) {
        return Err(Error::param("epsilons must lie in (0, x0]"));
    }
    if eps_list.windows(2).any(|p| p[1] >= p[0]) {
        return Err(Error::param("epsilons must decrease strictly"));
    }
    eps_list
        .iter()
        .map(|&eps| {
            let h = TestFunction::indicator(x0 - eps, x0)?;
            let k_lo = ((x0 - eps - x0) / alpha).floor() as i64;
            let k_hi = (x0 / alpha).ceil() as i64;
            let frame_sum = (k_lo..=k_hi)
                .map(|k| quadrature::modulation_sum(&h, w, alpha * k as f64, 0.0, beta, cutoff).map(|s| s.total()))
                .sum::<Result<f64>>()?;
            Ok(DegenerationPoint {
                epsilon: eps,
                frame_sum,
                ratio: frame_sum / eps,
            })
        })
        .collect()
}

pub fn write_degeneration_csv<W: Write>(writer: W, points: &[DegenerationPoint]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["epsilon", "frame_sum", "ratio"])?;
    for p in points {
        wtr.write_record([p.epsilon.to_string(), p.frame_sum.to_string(), p.ratio.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCell {
    pub alpha: f64,
    pub beta: f64,
    pub verdict: Verdict,
    pub reason: Reason,
    pub certified_a: Option<f64>,
    pub empirical_a: Option<f64>,
    pub empirical_b: Option<f64>,
}

/// `0.05, 0.10, ..., 1.50`.
pub fn default_sweep_axis() -> Vec<f64> {
    (1..=30).map(|i| i as f64 / 20.0).collect()
}

/// One certification per `(alpha, beta)` cell, in row-major order of
/// `alphas x betas`.
pub fn frame_set_sweep(
    w: &Window,
    alphas: &[f64],
    betas: &[f64],
    x_grid_size: usize,
    truncation: usize,
) -> Result<Vec<SweepCell>> {
    let cells: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| betas.iter().map(move |&b| (a, b)))
        .collect();
    cells
        .into_par_iter()
        .map(|(alpha, beta)| {
            let grid = crate::grids::regular_lattice(alpha, beta)?;
            let r = certify_lower_frame_bound(w, &grid, x_grid_size, truncation)?;
            Ok(SweepCell {
                alpha,
                beta,
                verdict: r.verdict,
                reason: r.reason,
                certified_a: r.certified_a,
                empirical_a: r.empirical_a,
                empirical_b: r.empirical_b,
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(writer: W, cells: &[SweepCell]) -> Result<()> {
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["alpha", "beta", "verdict", "certified_A", "empirical_A", "empirical_B"])?;
    for c in cells {
        wtr.write_record([
            c.alpha.to_string(),
            c.beta.to_string(),
            c.verdict.to_string(),
            opt(c.certified_a),
            opt(c.empirical_a),
            opt(c.empirical_b),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}
