//! Fiber matrices of the Ron–Shen criterion and their reduction to a
//! row-dominant upper-triangular form.
//!
//! For a regular lattice the fiber at `x` is `G_x(n, m) = g(x - alpha n + m / beta)`
//! (rows are translations, columns modulation aliases). For a semi-irregular
//! set it is `G_x(lambda, n) = g(x + n / beta - lambda) e^{2 pi i c_lambda n / beta}`.
//! The frame bounds are `beta` times the extreme squared singular values of
//! `G_x` over almost every `x` in `[0, 1 / beta)`.
//!
//! Because `g` vanishes on the negative axis each row starts at some column
//! with offset `tau in [0, 1 / beta)` and decays to the right. Keeping one row
//! per column (the one with `tau < alpha`) yields an upper-triangular `G*`;
//! right-multiplying by `Id - q S` turns geometric decay into row dominance.

use std::io::Write;
use std::ops::RangeInclusive;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grids::{GridSpec, SemiIrregularGrid, GRID_TOLERANCE};
use crate::spectral::CMatrix;
use crate::windows::Window;

/// Relative window inside which a computed offset is treated as an exact
/// lattice coincidence.
const SNAP: f64 = 1e-12;
/// Off-diagonal entries of `D` above this multiple of `g(0)` count as sign
/// violations.
const SIGN_TOLERANCE: f64 = 1e-12;

/// `value = k step + r` with `r in [0, step)`, snapping values within
/// rounding of a multiple of `step` onto it.
fn floor_offset(value: f64, step: f64) -> (i64, f64) {
    let tol = SNAP * value.abs().max(step);
    let mut k = (value / step).floor();
    let mut r = value - k * step;
    if r >= step - tol {
        k += 1.0;
        r = value - k * step;
    }
    if r < 0.0 {
        if r > -tol {
            r = 0.0;
        } else {
            k -= 1.0;
            r = value - k * step;
        }
    }
    (k as i64, r)
}

fn snap_zero(arg: f64, scale: f64) -> f64 {
    if arg.abs() <= SNAP * scale {
        0.0
    } else {
        arg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Truncation {
    /// Rows `n in [-rows, rows]` (regular lattices only).
    pub rows: usize,
    /// Columns `m in [-cols, cols]`, re-centred on the point list for
    /// semi-irregular grids.
    pub cols: usize,
}

impl Truncation {
    pub fn new(rows: usize, cols: usize) -> Self {
        Truncation { rows, cols }
    }

    /// Enough rows that every row whose leading entry falls in the column
    /// window is present.
    pub fn for_grid(grid: &GridSpec, cols: usize) -> Self {
        let rows = match grid {
            GridSpec::Regular { alpha, beta } => ((cols as f64 + 1.0) / (alpha * beta)).ceil() as usize + 1,
            GridSpec::SemiIrregular(_) => 0,
        };
        Truncation { rows, cols }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberOffset {
    pub column: i64,
    /// The translation index whose leading entry sits in `column` with offset
    /// below `alpha`.
    pub row: i64,
    pub tau: f64,
}

/// For each column `m` the unique row `n = floor((x + m / beta) / alpha)` with
/// `0 <= x - alpha n + m / beta < alpha`.
pub fn fiber_offsets(x: f64, alpha: f64, beta: f64, columns: RangeInclusive<i64>) -> Result<Vec<FiberOffset>> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::param("alpha and beta must be positive"));
    }
    if alpha * beta > 1.0 + GRID_TOLERANCE {
        return Err(Error::DensityTooLow { product: alpha * beta });
    }
    Ok(columns
        .map(|m| {
            let (row, tau) = floor_offset(x + m as f64 / beta, alpha);
            FiberOffset { column: m, row, tau }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RowLabel {
    Translation { n: i64 },
    Point { index: usize, lambda: f64, phase: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RonShenSlice {
    pub x: f64,
    pub rows: Vec<RowLabel>,
    pub columns: RangeInclusive<i64>,
    pub entries: CMatrix,
    /// Leading offset of each row, in `[0, 1 / beta)`.
    pub tau: Vec<f64>,
}

impl RonShenSlice {
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// Dumps `(row, col, real, imag)` for every entry; `row` is the
    /// translation index or the point index.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(["row", "col", "real", "imag"])?;
        for (i, label) in self.rows.iter().enumerate() {
            let row = match label {
                RowLabel::Translation { n } => *n,
                RowLabel::Point { index, .. } => *index as i64,
            };
            for (j, col) in self.columns.clone().enumerate() {
                let z = self.entries[(i, j)];
                wtr.write_record([row.to_string(), col.to_string(), z.re.to_string(), z.im.to_string()])?;
            }
        }
        wtr.flush()?;
        Ok(())
    }
}

fn check_fiber_point(x: f64, beta: f64) -> Result<()> {
    if !(0.0..1.0 / beta).contains(&x) {
        return Err(Error::param(format!("fiber point x = {x} must lie in [0, 1/beta)")));
    }
    Ok(())
}

/// Columns `[c - cols, c + cols]` centred on the middle of the point list.
pub fn semi_irregular_columns(grid: &SemiIrregularGrid, cols: usize) -> RangeInclusive<i64> {
    let pts = grid.points();
    let centre = (grid.beta() * 0.5 * (pts[0] + pts[pts.len() - 1])).round() as i64;
    centre - cols as i64..=centre + cols as i64
}

pub fn build_slice(w: &Window, grid: &GridSpec, x: f64, truncation: Truncation) -> Result<RonShenSlice> {
    check_fiber_point(x, grid.beta())?;
    if truncation.cols == 0 {
        return Err(Error::param("truncation needs at least one column on each side"));
    }
    match grid {
        GridSpec::Regular { alpha, beta } => {
            if truncation.rows == 0 {
                return Err(Error::param("truncation needs at least one row on each side"));
            }
            let (alpha, beta) = (*alpha, *beta);
            let rows: Vec<i64> = (-(truncation.rows as i64)..=truncation.rows as i64).collect();
            let columns = -(truncation.cols as i64)..=truncation.cols as i64;
            let cols: Vec<i64> = columns.clone().collect();
            let entries = CMatrix::from_fn(rows.len(), cols.len(), |i, j| {
                let shift = alpha * rows[i] as f64;
                let arg = snap_zero(x - shift + cols[j] as f64 / beta, shift.abs().max(1.0 / beta));
                Complex64::new(w.value(arg), 0.0)
            });
            let tau = rows
                .iter()
                .map(|&n| floor_offset(x - alpha * n as f64, 1.0 / beta).1)
                .collect();
            Ok(RonShenSlice {
                x,
                rows: rows.into_iter().map(|n| RowLabel::Translation { n }).collect(),
                columns,
                entries,
                tau,
            })
        }
        GridSpec::SemiIrregular(g) => {
            let report = g.validate()?;
            if !report.gap_ok {
                return Err(Error::InvalidGrid(format!(
                    "gap {} exceeds the bound {}",
                    report.max_gap,
                    g.gap_bound()
                )));
            }
            let beta = g.beta();
            let columns = semi_irregular_columns(g, truncation.cols);
            semi_irregular_selection(g, x, columns.clone())?;
            let (first, last) = (*columns.start() as f64 / beta, *columns.end() as f64 / beta);
            let reach = w.support_sup();
            let idx: Vec<usize> = g
                .points()
                .iter()
                .enumerate()
                .filter(|(_, &l)| l <= x + last && l >= x + first - reach)
                .map(|(i, _)| i)
                .collect();
            let cols: Vec<i64> = columns.clone().collect();
            let entries = CMatrix::from_fn(idx.len(), cols.len(), |i, j| {
                let lambda = g.points()[idx[i]];
                let phase = g.phases()[idx[i]];
                let n = cols[j] as f64;
                let arg = snap_zero(x + n / beta - lambda, lambda.abs().max(1.0 / beta));
                let v = w.value(arg);
                if v == 0.0 || phase == 0.0 {
                    Complex64::new(v, 0.0)
                } else {
                    Complex64::from_polar(v, std::f64::consts::TAU * phase * n / beta)
                }
            });
            let tau = idx
                .iter()
                .map(|&i| floor_offset(x - g.points()[i], 1.0 / beta).1)
                .collect();
            Ok(RonShenSlice {
                x,
                rows: idx
                    .iter()
                    .map(|&i| RowLabel::Point {
                        index: i,
                        lambda: g.points()[i],
                        phase: g.phases()[i],
                    })
                    .collect(),
                columns,
                entries,
                tau,
            })
        }
    }
}

/// For each column `n`, the point `lambda` with `0 <= x + n / beta - lambda < gap`
/// closest to `x + n / beta`; returns the offsets.
fn semi_irregular_selection(g: &SemiIrregularGrid, x: f64, columns: RangeInclusive<i64>) -> Result<Vec<f64>> {
    let pts = g.points();
    let alpha = g.gap_bound();
    columns
        .map(|n| {
            let target = x + n as f64 / g.beta();
            let tol = SNAP * target.abs().max(1.0);
            let i = pts.partition_point(|&l| l <= target + tol);
            let tau = (i > 0).then(|| (target - pts[i - 1]).max(0.0));
            match tau {
                // The next point must exist too, otherwise the gap bound says
                // nothing about the stretch beyond the list.
                Some(t) if t < alpha && i < pts.len() => Ok(t),
                _ => Err(Error::InvalidGrid(format!(
                    "points do not cover column {n} at x = {x}; enlarge the list or reduce the truncation"
                ))),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReducedForm {
    /// `G*`: one row per column, upper triangular.
    UpperTriangular,
    /// `D = G* (Id - q S)`.
    Dominant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSlice {
    pub form: ReducedForm,
    pub matrix: DMatrix<f64>,
    pub columns: RangeInclusive<i64>,
    /// Offsets `tau` of the selected rows; `d(n, n) = g(tau_n)`.
    pub tau: Vec<f64>,
    /// Shift weight of `Id - q S`; `None` for `G*`.
    pub q: Option<f64>,
    /// `g(0)`, used for truncation allowances.
    pub peak: f64,
}

impl ReducedSlice {
    /// Wraps an arbitrary square matrix as a `D` form, e.g. for testing the
    /// dominance scan.
    pub fn from_matrix(matrix: DMatrix<f64>, q: f64, peak: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::param("reduced slices are square"));
        }
        let n = matrix.nrows() as i64;
        Ok(ReducedSlice {
            form: ReducedForm::Dominant,
            tau: vec![f64::NAN; matrix.nrows()],
            matrix,
            columns: 0..=n - 1,
            q: Some(q),
            peak,
        })
    }
}

fn upper_triangular_from_offsets(w: &Window, beta: f64, tau: Vec<f64>, columns: RangeInclusive<i64>) -> ReducedSlice {
    let size = tau.len();
    let matrix = DMatrix::from_fn(size, size, |i, j| {
        if j < i {
            0.0
        } else {
            w.value(tau[i] + (j - i) as f64 / beta)
        }
    });
    ReducedSlice {
        form: ReducedForm::UpperTriangular,
        matrix,
        columns,
        tau,
        q: None,
        peak: w.peak(),
    }
}

/// `G*` for a regular lattice: row `m` holds `g(tau(m) + (k - m) / beta)` for
/// `k >= m`. Dropping rows only lowers the smallest singular value, so a
/// lower bound for `G*` is a lower bound for `G_x`.
pub fn reduced_upper_triangular(
    w: &Window,
    alpha: f64,
    beta: f64,
    x: f64,
    columns: RangeInclusive<i64>,
) -> Result<ReducedSlice> {
    check_fiber_point(x, beta)?;
    let offsets = fiber_offsets(x, alpha, beta, columns.clone())?;
    let tau = offsets.iter().map(|o| o.tau).collect();
    Ok(upper_triangular_from_offsets(w, beta, tau, columns))
}

/// `G*` for a semi-irregular set with zero phases: for every column the row
/// whose leading entry falls there with offset below the gap bound.
pub fn reduced_upper_triangular_semi(w: &Window, grid: &SemiIrregularGrid, x: f64, cols: usize) -> Result<ReducedSlice> {
    check_fiber_point(x, grid.beta())?;
    if grid.has_phases() {
        return Err(Error::precondition("row reduction needs zero phases"));
    }
    if grid.gap_bound() * grid.beta() > 1.0 + GRID_TOLERANCE {
        return Err(Error::DensityTooLow {
            product: grid.gap_bound() * grid.beta(),
        });
    }
    let columns = semi_irregular_columns(grid, cols);
    let tau = semi_irregular_selection(grid, x, columns.clone())?;
    Ok(upper_triangular_from_offsets(w, grid.beta(), tau, columns))
}

/// Reduced `G*` for either grid variant with `cols` columns each side.
pub fn reduce(w: &Window, grid: &GridSpec, x: f64, cols: usize) -> Result<ReducedSlice> {
    match grid {
        GridSpec::Regular { alpha, beta } => {
            reduced_upper_triangular(w, *alpha, *beta, x, -(cols as i64)..=cols as i64)
        }
        GridSpec::SemiIrregular(g) => reduced_upper_triangular_semi(w, g, x, cols),
    }
}

/// `D = G* (Id - q S)`: `d(n, n) = g(tau_n)` and
/// `d(n, m) = g(tau_n + (m - n) / beta) - q g(tau_n + (m - n - 1) / beta)` for
/// `m > n`. Since `G*` is upper triangular, the finite product carries no
/// truncation error.
pub fn u_transform(g_star: &ReducedSlice, q: f64) -> Result<ReducedSlice> {
    if g_star.form != ReducedForm::UpperTriangular {
        return Err(Error::param("u_transform expects the upper-triangular form"));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::param(format!("q must lie in (0, 1), got {q}")));
    }
    let g = &g_star.matrix;
    let matrix = DMatrix::from_fn(g.nrows(), g.ncols(), |i, j| match j.cmp(&i) {
        std::cmp::Ordering::Less => 0.0,
        std::cmp::Ordering::Equal => g[(i, j)],
        std::cmp::Ordering::Greater => g[(i, j)] - q * g[(i, j - 1)],
    });
    Ok(ReducedSlice {
        form: ReducedForm::Dominant,
        matrix,
        columns: g_star.columns.clone(),
        tau: g_star.tau.clone(),
        q: Some(q),
        peak: g_star.peak,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominanceReport {
    /// Smallest diagonal entry.
    pub delta_obs: f64,
    /// Positive diagonal, non-positive upper off-diagonals, zero below.
    pub sign_ok: bool,
    /// `min_n (q d_nn - sum_{m > n} |d_nm|)`.
    pub worst_row_slack: f64,
    /// `max_{m != n} |d_nm| / q^{|m - n|}`.
    pub decay_c: f64,
    /// Every row satisfies the dominance inequality up to the truncation
    /// allowance `g(0) q^{M - n} / (1 - q)`.
    pub dominance_ok: bool,
}

impl DominanceReport {
    pub fn passed(&self) -> bool {
        self.sign_ok && self.dominance_ok && self.delta_obs > 0.0
    }
}

pub fn dominance_report(d: &ReducedSlice) -> Result<DominanceReport> {
    let q = match (d.form, d.q) {
        (ReducedForm::Dominant, Some(q)) => q,
        _ => return Err(Error::param("dominance_report expects the output of u_transform")),
    };
    let m = &d.matrix;
    let size = m.nrows();
    let tol = SIGN_TOLERANCE * d.peak.max(1.0);
    let mut delta_obs = f64::INFINITY;
    let mut sign_ok = true;
    let mut dominance_ok = true;
    let mut worst_row_slack = f64::INFINITY;
    let mut decay_c = 0.0f64;
    for i in 0..size {
        let diag = m[(i, i)];
        delta_obs = delta_obs.min(diag);
        sign_ok &= diag > 0.0;
        let mut row_sum = 0.0;
        for j in 0..size {
            if j == i {
                continue;
            }
            let v = m[(i, j)];
            if j < i {
                sign_ok &= v.abs() <= tol;
            } else {
                sign_ok &= v <= tol;
                row_sum += v.abs();
            }
            if v != 0.0 {
                let k = (i as i32 - j as i32).abs();
                decay_c = decay_c.max(v.abs() / q.powi(k));
            }
        }
        let slack = q * diag - row_sum;
        worst_row_slack = worst_row_slack.min(slack);
        let allowance = d.peak * q.powi((size - 1 - i) as i32) / (1.0 - q);
        dominance_ok &= slack + allowance >= -tol;
    }
    Ok(DominanceReport {
        delta_obs,
        sign_ok,
        worst_row_slack,
        decay_c,
        dominance_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::regular_lattice;
    use approx::assert_relative_eq;

    #[test]
    fn offsets_examples() {
        let o = fiber_offsets(0.3, 0.7, 1.0, -1..=1).unwrap();
        assert_eq!((o[1].row, o[1].tau), (0, 0.3));
        assert_eq!(o[2].row, 1);
        assert_relative_eq!(o[2].tau, 0.6, epsilon = 1e-15);
        assert_eq!((o[0].row, o[0].tau), (-1, 0.0));
    }

    #[test]
    fn offsets_reject_sparse_lattice() {
        assert!(matches!(
            fiber_offsets(0.1, 1.2, 1.0, 0..=0),
            Err(Error::DensityTooLow { .. })
        ));
    }

    #[test]
    fn floor_offset_snaps_coincidences() {
        assert_eq!(floor_offset(-0.7 + 1e-17, 0.7), (-1, 0.0));
        assert_eq!(floor_offset(1.0, 0.5), (2, 0.0));
        let (k, r) = floor_offset(0.999_999, 0.5);
        assert_eq!(k, 1);
        assert_relative_eq!(r, 0.499_999, epsilon = 1e-12);
    }

    #[test]
    fn regular_slice_entries() {
        let w = Window::one_sided_exponential(1.0).unwrap();
        let grid = regular_lattice(1.0, 1.0).unwrap();
        let s = build_slice(&w, &grid, 0.0, Truncation::new(2, 2)).unwrap();
        let (n0, m0) = (2, 2);
        assert_eq!(s.entries[(n0, m0)], Complex64::new(1.0, 0.0));
        assert_eq!(s.entries[(n0 + 1, m0)], Complex64::new(0.0, 0.0));
        assert!(s.is_real());
        assert!(s.tau.iter().all(|&t| (0.0..1.0).contains(&t)));
    }

    #[test]
    fn general_slice_phase() {
        let w = Window::one_sided_exponential(1.0).unwrap();
        let pts: Vec<f64> = (-8..=8).map(|k| 0.5 + k as f64 * 0.5).collect();
        let mut phases = vec![0.0; pts.len()];
        let at = pts.iter().position(|&l| l == 0.5).unwrap();
        phases[at] = 0.25;
        let g = SemiIrregularGrid::with_phases(pts, 1.0, phases, 0.5).unwrap();
        let s = build_slice(&w, &GridSpec::SemiIrregular(g), 0.0, Truncation::new(0, 2)).unwrap();
        let row = s
            .rows
            .iter()
            .position(|r| matches!(r, RowLabel::Point { lambda, .. } if *lambda == 0.5))
            .unwrap();
        let col = s.columns.clone().position(|n| n == 1).unwrap();
        let z = s.entries[(row, col)];
        assert_relative_eq!(z.re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(z.im, (-0.5f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn slice_rejects_bad_inputs() {
        let w = Window::one_sided_exponential(1.0).unwrap();
        let grid = regular_lattice(1.0, 1.0).unwrap();
        assert!(build_slice(&w, &grid, 1.0, Truncation::new(2, 2)).is_err());
        assert!(build_slice(&w, &grid, 0.5, Truncation::new(2, 0)).is_err());
        let sparse = SemiIrregularGrid::new(vec![0.0, 0.6, 1.2], 1.0, 0.5).unwrap();
        assert!(build_slice(&w, &GridSpec::SemiIrregular(sparse), 0.5, Truncation::new(0, 1)).is_err());
    }

    #[test]
    fn exponential_reduction_is_diagonal() {
        let w = Window::one_sided_exponential(1.0).unwrap();
        let g = reduced_upper_triangular(&w, 1.0, 1.0, 0.5, -3..=3).unwrap();
        assert_relative_eq!(g.matrix[(0, 0)], (-0.5f64).exp(), max_relative = 1e-15);
        assert_relative_eq!(g.matrix[(0, 1)], (-1.5f64).exp(), max_relative = 1e-15);
        let q = w.decay_ratio(1.0).unwrap();
        let d = u_transform(&g, q).unwrap();
        for i in 0..7 {
            assert_relative_eq!(d.matrix[(i, i)], (-0.5f64).exp(), max_relative = 1e-15);
            for j in 0..7 {
                if i != j {
                    assert!(d.matrix[(i, j)].abs() <= 1e-15);
                }
            }
        }
        let r = dominance_report(&d).unwrap();
        assert!(r.passed());
        assert_relative_eq!(r.worst_row_slack, q * r.delta_obs, max_relative = 1e-12);
    }

    #[test]
    fn truncated_linear_reduction() {
        let w = Window::truncated_linear(1.0).unwrap();
        let g = reduced_upper_triangular(&w, 0.5, 2.0, 0.2, -3..=3).unwrap();
        assert_relative_eq!(g.matrix[(1, 1)], 0.8, epsilon = 1e-15);
        assert_relative_eq!(g.matrix[(1, 2)], 0.3, epsilon = 1e-15);
        assert_eq!(g.matrix[(2, 1)], 0.0);
        let q = w.decay_ratio(0.5).unwrap();
        assert_eq!(q, 0.5);
        let d = u_transform(&g, q).unwrap();
        assert_relative_eq!(d.matrix[(1, 1)], 0.8, epsilon = 1e-15);
        assert_relative_eq!(d.matrix[(1, 2)], -0.1, epsilon = 1e-15);
        assert_relative_eq!(d.matrix[(1, 3)], -0.15, epsilon = 1e-15);
        assert_eq!(d.matrix[(1, 4)], 0.0);
        let r = dominance_report(&d).unwrap();
        assert!(r.passed());
        assert_relative_eq!(r.delta_obs, 0.8, epsilon = 1e-15);
        assert!(r.worst_row_slack >= 0.15 - 1e-12);
    }

    #[test]
    fn positive_off_diagonal_breaks_signs() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        let d = ReducedSlice::from_matrix(m, 0.5, 1.0).unwrap();
        let r = dominance_report(&d).unwrap();
        assert!(!r.sign_ok);
        assert!(!r.passed());
    }

    #[test]
    fn u_transform_requires_upper_form_and_valid_q() {
        let w = Window::truncated_linear(1.0).unwrap();
        let g = reduced_upper_triangular(&w, 0.5, 2.0, 0.2, -2..=2).unwrap();
        assert!(u_transform(&g, 1.0).is_err());
        let d = u_transform(&g, 0.5).unwrap();
        assert!(u_transform(&d, 0.5).is_err());
        assert!(dominance_report(&g).is_err());
    }

    #[test]
    fn semi_irregular_reduction_diagonal_and_offsets() {
        let w = Window::one_sided_exponential(1.0).unwrap();
        let pts = crate::grids::jittered_lattice(0.9, 0.1, 3, 64).unwrap();
        let grid = SemiIrregularGrid::new(pts, 1.0, 0.9).unwrap();
        let g = reduced_upper_triangular_semi(&w, &grid, 0.4, 16).unwrap();
        for (i, &t) in g.tau.iter().enumerate() {
            assert!((0.0..0.9).contains(&t));
            assert_eq!(g.matrix[(i, i)], w.value(t));
        }
        let d = u_transform(&g, w.decay_ratio(1.0).unwrap()).unwrap();
        assert!(dominance_report(&d).unwrap().passed());
    }

    #[test]
    fn slice_csv_dump() {
        let w = Window::one_sided_exponential(1.0).unwrap();
        let grid = regular_lattice(1.0, 1.0).unwrap();
        let s = build_slice(&w, &grid, 0.25, Truncation::new(1, 1)).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 9);
        assert!(text.starts_with("row,col,real,imag\n"));
    }
}
