//! Gauss–Legendre based integration: adaptive scalar integrals and batched
//! time-frequency inner products `<f, pi_{lambda, xi} g>` over a whole
//! modulation ladder `xi = beta n + c`.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::windows::Window;

/// Target absolute error for a single inner product.
pub const INNER_PRODUCT_TOLERANCE: f64 = 1e-10;
/// Nodes per Gauss–Legendre panel.
const PANEL_ORDER: usize = 20;
/// Phase (radians) the highest frequency may sweep across one panel.
const PANEL_PHASE: f64 = 12.0;
/// Widest panel regardless of frequency.
const MAX_PANEL_WIDTH: f64 = 0.25;
const MAX_REFINEMENTS: usize = 6;
/// Gaussian bumps are cut where they fall below `e^{-36}` (about 2e-16).
const GAUSSIAN_CUTOFF: f64 = 8.5;

fn rule(order: usize) -> &'static [(f64, f64)] {
    static R10: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    static R20: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    let cell = match order {
        10 => &R10,
        20 => &R20,
        _ => unreachable!("only 10 and 20 point rules are cached"),
    };
    cell.get_or_init(|| {
        GaussLegendre::new(order)
            .expect("order >= 2")
            .into_node_weight_pairs()
    })
}

fn gauss<F: FnMut(f64) -> Complex64>(order: usize, a: f64, b: f64, f: &mut F) -> Complex64 {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    rule(order)
        .iter()
        .map(|&(x, w)| f(mid + half * x) * w)
        .sum::<Complex64>()
        * half
}

/// Adaptive bisection comparing 10- and 20-point Gauss–Legendre on each
/// piece. `breaks` are points where the integrand may be non-smooth.
pub fn adaptive_integrate<F>(mut f: F, a: f64, b: f64, breaks: &[f64], abs_tol: f64) -> Result<Complex64>
where
    F: FnMut(f64) -> Complex64,
{
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::Quadrature(format!("bad interval [{a}, {b}]")));
    }
    let pieces = split_points(a, b, breaks);
    let total = b - a;
    let mut sum = Complex64::new(0.0, 0.0);
    for w in pieces.windows(2) {
        let mut stack = vec![(w[0], w[1], 0usize)];
        while let Some((lo, hi, depth)) = stack.pop() {
            let coarse = gauss(10, lo, hi, &mut f);
            let fine = gauss(20, lo, hi, &mut f);
            let budget = abs_tol * ((hi - lo) / total).max(1e-6);
            if (fine - coarse).norm() <= budget {
                sum += fine;
            } else if depth >= 40 {
                return Err(Error::Quadrature(format!(
                    "no convergence on [{lo}, {hi}] (estimate {:e})",
                    (fine - coarse).norm()
                )));
            } else {
                let mid = 0.5 * (lo + hi);
                stack.push((mid, hi, depth + 1));
                stack.push((lo, mid, depth + 1));
            }
        }
    }
    Ok(sum)
}

/// Sorted, de-duplicated `[a, breaks inside (a, b), b]`.
pub fn split_points(a: f64, b: f64, breaks: &[f64]) -> Vec<f64> {
    let mut pts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&p| p > a && p < b))
        .chain(std::iter::once(b))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (1.0 + y.abs()));
    pts
}

/// Real test functions `f` for frame-sum computations.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFunction {
    /// `exp(-(y - center)^2 / (2 width^2))`.
    GaussianBump { center: f64, width: f64 },
    /// Indicator of `[start, end]`.
    Indicator { start: f64, end: f64 },
    /// The window itself.
    Window(Window),
}

impl TestFunction {
    pub fn gaussian(center: f64, width: f64) -> Result<Self> {
        if !(width > 0.0 && center.is_finite()) {
            return Err(Error::param("Gaussian bump needs a finite centre and positive width"));
        }
        Ok(TestFunction::GaussianBump { center, width })
    }

    pub fn indicator(start: f64, end: f64) -> Result<Self> {
        if !(start < end && start.is_finite() && end.is_finite()) {
            return Err(Error::param(format!("indicator needs start < end, got [{start}, {end}]")));
        }
        Ok(TestFunction::Indicator { start, end })
    }

    pub fn value(&self, y: f64) -> f64 {
        match self {
            TestFunction::GaussianBump { center, width } => {
                let z = (y - center) / width;
                (-0.5 * z * z).exp()
            }
            TestFunction::Indicator { start, end } => {
                if (*start..=*end).contains(&y) {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunction::Window(w) => w.value(y),
        }
    }

    pub fn left_limit(&self, y: f64) -> f64 {
        match self {
            TestFunction::Indicator { start, end } => {
                if y > *start && y <= *end {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunction::Window(w) => w.left_limit(y),
            _ => self.value(y),
        }
    }

    pub fn right_limit(&self, y: f64) -> f64 {
        match self {
            TestFunction::Indicator { start, end } => {
                if y >= *start && y < *end {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunction::Window(w) => w.right_limit(y),
            _ => self.value(y),
        }
    }

    /// Interval outside which `f` is zero (or below double precision).
    pub fn support(&self) -> (f64, f64) {
        match self {
            TestFunction::GaussianBump { center, width } => {
                (center - GAUSSIAN_CUTOFF * width, center + GAUSSIAN_CUTOFF * width)
            }
            TestFunction::Indicator { start, end } => (*start, *end),
            TestFunction::Window(w) => (0.0, w.effective_support(1e-17)),
        }
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            TestFunction::GaussianBump { .. } => Vec::new(),
            TestFunction::Indicator { start, end } => vec![*start, *end],
            TestFunction::Window(w) => {
                let mut b = vec![0.0];
                b.extend(w.interior_breakpoints());
                if w.support_sup().is_finite() {
                    b.push(w.support_sup());
                }
                b
            }
        }
    }

    pub fn norm_sq(&self) -> Result<f64> {
        match self {
            TestFunction::GaussianBump { width, .. } => Ok(width * PI.sqrt()),
            TestFunction::Indicator { start, end } => Ok(end - start),
            TestFunction::Window(_) => {
                let (a, b) = self.support();
                let v = adaptive_integrate(
                    |y| Complex64::new(self.value(y).powi(2), 0.0),
                    a,
                    b,
                    &self.breakpoints(),
                    1e-13,
                )?;
                Ok(v.re)
            }
        }
    }
}

/// Points in `[a, b]` where `y -> f(y) g(y - lambda)` may be non-smooth.
fn product_breaks(f: &TestFunction, w: &Window, lambda: f64) -> Vec<f64> {
    let mut b = f.breakpoints();
    b.push(lambda);
    if w.support_sup().is_finite() {
        b.push(lambda + w.support_sup());
    }
    b.extend(w.interior_breakpoints().into_iter().map(|p| p + lambda));
    b
}

/// Overlap of `supp f` with `supp g(. - lambda)`, if it has positive length.
pub fn overlap(f: &TestFunction, w: &Window, lambda: f64) -> Option<(f64, f64)> {
    let (fa, fb) = f.support();
    let a = fa.max(lambda);
    let b = fb.min(lambda + w.support_sup());
    (b > a).then_some((a, b))
}

/// `int_a^b f(y) g(y - lambda) e^{-2 pi i xi y} dy` by adaptive quadrature.
pub fn inner_product_on(f: &TestFunction, w: &Window, lambda: f64, xi: f64, a: f64, b: f64) -> Result<Complex64> {
    adaptive_integrate(
        |y| Complex64::from_polar(f.value(y) * w.value(y - lambda), -TAU * xi * y),
        a,
        b,
        &product_breaks(f, w, lambda),
        INNER_PRODUCT_TOLERANCE,
    )
}

/// `<f, pi_{lambda, xi} g>` where `pi_{t, w} g(y) = e^{2 pi i w y} g(y - t)`.
pub fn inner_product(f: &TestFunction, w: &Window, lambda: f64, xi: f64) -> Result<Complex64> {
    match overlap(f, w, lambda) {
        Some((a, b)) => inner_product_on(f, w, lambda, xi, a, b),
        None => Ok(Complex64::new(0.0, 0.0)),
    }
}

/// `sum_n |<f, pi_{lambda, beta n + c} g>|^2` split into the explicitly
/// integrated part `|n| <= cutoff` and an asymptotic tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulationSum {
    pub resolved: f64,
    pub tail: f64,
    /// Largest change between the last two panel refinements.
    pub refinement_change: f64,
}

impl ModulationSum {
    pub fn total(&self) -> f64 {
        self.resolved + self.tail
    }
}

fn ladder(
    f: &TestFunction,
    w: &Window,
    lambda: f64,
    pieces: &[f64],
    xi_lo: f64,
    beta: f64,
    count: usize,
    panel: f64,
) -> Vec<Complex64> {
    let mut acc = vec![Complex64::new(0.0, 0.0); count];
    let nodes = rule(PANEL_ORDER);
    for piece in pieces.windows(2) {
        let (a, b) = (piece[0], piece[1]);
        let panels = ((b - a) / panel).ceil().max(1.0) as usize;
        let width = (b - a) / panels as f64;
        for p in 0..panels {
            let lo = a + p as f64 * width;
            let (mid, half) = (lo + 0.5 * width, 0.5 * width);
            for &(x, wt) in nodes {
                let y = mid + half * x;
                let h = f.value(y) * w.value(y - lambda);
                if h == 0.0 {
                    continue;
                }
                let step = Complex64::from_polar(1.0, -TAU * beta * y);
                let mut z = Complex64::from_polar(h * wt * half, -TAU * xi_lo * y);
                for slot in acc.iter_mut() {
                    *slot += z;
                    z *= step;
                }
            }
        }
    }
    acc
}

/// Explicit inner products for `|n| <= cutoff` plus the asymptotic tail
/// from the jumps of `h(y) = f(y) g(y - lambda)`: a jump `J_p` at `p`
/// contributes `J_p e^{-2 pi i xi p} / (2 pi i xi)` to `h^(xi)` for large `xi`.
pub fn modulation_sum(f: &TestFunction, w: &Window, lambda: f64, phase: f64, beta: f64, cutoff: usize) -> Result<ModulationSum> {
    let Some((a, b)) = overlap(f, w, lambda) else {
        return Ok(ModulationSum {
            resolved: 0.0,
            tail: 0.0,
            refinement_change: 0.0,
        });
    };
    let pieces = split_points(a, b, &product_breaks(f, w, lambda));
    let k = cutoff as f64;
    let xi_lo = phase - beta * k;
    let count = 2 * cutoff + 1;
    let xi_max = beta * k + phase.abs();
    let mut panel = (PANEL_PHASE / (TAU * xi_max.max(1e-300))).min(MAX_PANEL_WIDTH);
    let mut prev = ladder(f, w, lambda, &pieces, xi_lo, beta, count, panel);
    let mut change = f64::INFINITY;
    for _ in 0..MAX_REFINEMENTS {
        panel *= 0.5;
        let next = ladder(f, w, lambda, &pieces, xi_lo, beta, count, panel);
        change = prev
            .iter()
            .zip(&next)
            .map(|(p, n)| (p - n).norm())
            .fold(0.0, f64::max);
        prev = next;
        if change <= INNER_PRODUCT_TOLERANCE {
            break;
        }
    }
    if change > INNER_PRODUCT_TOLERANCE {
        return Err(Error::Quadrature(format!(
            "modulation ladder at lambda = {lambda} did not settle (change {change:e})"
        )));
    }
    let resolved = prev.iter().map(|z| z.norm_sqr()).sum();

    let h = |y: f64| f.value(y) * w.value(y - lambda);
    let jumps: Vec<Jump> = pieces
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let right = f.right_limit(p) * w.right_limit(p - lambda);
            let left = f.left_limit(p) * w.left_limit(p - lambda);
            let slope_right = pieces.get(i + 1).map_or(0.0, |&next| one_sided_slope(&h, p, next - p));
            let slope_left = if i > 0 { one_sided_slope(&h, p, pieces[i - 1] - p) } else { 0.0 };
            Jump {
                at: p,
                value: right - left,
                slope: slope_right - slope_left,
            }
        })
        .filter(|j| j.value != 0.0 || j.slope != 0.0)
        .collect();
    let tail = jump_tail(&jumps, phase, beta, cutoff);
    Ok(ModulationSum {
        resolved,
        tail,
        refinement_change: change,
    })
}

/// Jump of `h` and of `h'` at a breakpoint.
#[derive(Debug, Clone, Copy)]
struct Jump {
    at: f64,
    value: f64,
    slope: f64,
}

/// Derivative of `h` at `p` from inside `(p, p + span)` (`span` may be
/// negative), by a second-order one-sided stencil.
fn one_sided_slope<H: Fn(f64) -> f64>(h: &H, p: f64, span: f64) -> f64 {
    let eta = 1e-5 * span.abs().min(1.0) * span.signum();
    // Evaluate just inside the piece so limits at p are taken from this side.
    let inside = p + 1e-3 * eta;
    (-3.0 * h(inside) + 4.0 * h(inside + eta) - h(inside + 2.0 * eta)) / (2.0 * eta)
}

/// `sum_{|n| > cutoff} |h^(xi_n)|^2` with `xi_n = beta n + phase`, using
/// `h^(xi) ~ sum_p e^{-i w p} (J_p / (i w) + J'_p / (i w)^2)`, `w = 2 pi xi`.
/// Summed explicitly up to `64 cutoff`; beyond that only the leading
/// non-oscillating part is kept.
fn jump_tail(jumps: &[Jump], phase: f64, beta: f64, cutoff: usize) -> f64 {
    if jumps.is_empty() {
        return 0.0;
    }
    let far = 64 * cutoff.max(1);
    let mut tail = 0.0;
    for n in cutoff + 1..=far {
        for sign in [-1.0, 1.0] {
            let omega = TAU * (beta * sign * n as f64 + phase);
            let iw = Complex64::new(0.0, omega);
            let amp: Complex64 = jumps
                .iter()
                .map(|j| Complex64::from_polar(1.0, -omega * j.at) * (j.value / iw + j.slope / (iw * iw)))
                .sum();
            tail += amp.norm_sqr();
        }
    }
    let energy: f64 = jumps.iter().map(|j| j.value * j.value).sum();
    tail + energy * 2.0 / (TAU * TAU * beta * beta * far as f64)
}

/// Composite Gauss–Legendre on `[a, b]` split at `breaks`, halving the panel
/// width until two successive results agree to `rel_tol`.
pub fn integrate_refined<F>(mut f: F, a: f64, b: f64, breaks: &[f64], initial_panel: f64, rel_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let pieces = split_points(a, b, breaks);
    let mut eval = |panel: f64| -> f64 {
        let mut sum = 0.0;
        for piece in pieces.windows(2) {
            let (lo, hi) = (piece[0], piece[1]);
            let n = ((hi - lo) / panel).ceil().max(1.0) as usize;
            let width = (hi - lo) / n as f64;
            for p in 0..n {
                let s = lo + p as f64 * width;
                sum += gauss(PANEL_ORDER, s, s + width, &mut |y| Complex64::new(f(y), 0.0)).re;
            }
        }
        sum
    };
    let mut panel = initial_panel;
    let mut prev = eval(panel);
    for _ in 0..MAX_REFINEMENTS {
        panel *= 0.5;
        let next = eval(panel);
        if (next - prev).abs() <= rel_tol * next.abs().max(1e-300) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Quadrature(format!("composite rule on [{a}, {b}] did not settle")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn adaptive_polynomial_and_oscillatory() {
        let v = adaptive_integrate(|x| Complex64::new(x * x, 0.0), 0.0, 3.0, &[], 1e-13).unwrap();
        assert_relative_eq!(v.re, 9.0, max_relative = 1e-14);
        let v = adaptive_integrate(|x| Complex64::from_polar(1.0, -TAU * 10.0 * x), 0.0, 0.25, &[], 1e-13).unwrap();
        // int_0^{1/4} e^{-20 pi i x} dx = (1 - e^{-5 pi i}) / (20 pi i) = 2 / (20 pi i)
        assert_relative_eq!(v.im, -1.0 / (10.0 * PI), epsilon = 1e-13);
        assert!(v.re.abs() < 1e-13);
    }

    #[test]
    fn self_inner_product_of_exponential() {
        let g = Window::one_sided_exponential(1.0).unwrap();
        let f = TestFunction::Window(g.clone());
        let ip = inner_product(&f, &g, 0.0, 0.0).unwrap();
        assert_relative_eq!(ip.re, 0.5, epsilon = 1e-12);
        assert_relative_eq!(f.norm_sq().unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn modulation_sum_matches_parseval_for_short_support() {
        // h = (1 - y) on [1 - eps, 1] has support shorter than 1 / beta, so
        // sum_n |h^(n)|^2 = ||h||^2 = eps^3 / 3.
        let g = Window::truncated_linear(1.0).unwrap();
        for eps in [0.2, 0.05] {
            let f = TestFunction::indicator(1.0 - eps, 1.0).unwrap();
            let s = modulation_sum(&f, &g, 0.0, 0.0, 1.0, 64).unwrap();
            assert_relative_eq!(s.total(), eps.powi(3) / 3.0, max_relative = 1e-6);
        }
    }

    #[test]
    fn modulation_sum_with_jump_matches_parseval() {
        // h = e^{-y} on [0, 0.8]: a jump at both ends.
        let g = Window::truncated_exponential(1.0, 0.8).unwrap();
        let f = TestFunction::indicator(-1.0, 2.0).unwrap();
        let s = modulation_sum(&f, &g, 0.0, 0.3, 1.0, 64).unwrap();
        let exact = (1.0 - (-1.6f64).exp()) / 2.0;
        assert_relative_eq!(s.total(), exact, max_relative = 1e-6);
        assert!(s.tail > 0.0);
    }

    #[test]
    fn refined_integration() {
        let v = integrate_refined(|x| x.exp(), 0.0, 1.0, &[0.5], 0.5, 1e-14).unwrap();
        assert_relative_eq!(v, 1f64.exp() - 1.0, max_relative = 1e-14);
    }

    #[test]
    fn test_function_limits() {
        let f = TestFunction::indicator(0.0, 1.0).unwrap();
        assert_eq!((f.left_limit(0.0), f.right_limit(0.0)), (0.0, 1.0));
        assert_eq!((f.left_limit(1.0), f.right_limit(1.0)), (1.0, 0.0));
        assert!(TestFunction::indicator(1.0, 1.0).is_err());
        assert!(TestFunction::gaussian(0.0, 0.0).is_err());
        let gb = TestFunction::gaussian(3.0, 0.5).unwrap();
        assert_relative_eq!(gb.norm_sq().unwrap(), 0.5 * PI.sqrt());
    }
}
