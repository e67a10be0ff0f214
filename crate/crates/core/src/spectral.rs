//! Extreme singular values of dense real and complex matrices.
//!
//! Tall matrices are first reduced to their triangular QR factor; the square
//! factor is then orthogonalised by one-sided (Hestenes) Jacobi rotations,
//! after which the column norms are the singular values. The sweep order is
//! fixed, so identical inputs give identical outputs.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
const MAX_SWEEPS: usize = 80;
/// Columns are treated as orthogonal once their normalised inner product
/// falls below this.
const ROTATION_THRESHOLD: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralResult {
    pub sigma_min: f64,
    pub sigma_max: f64,
    /// Jacobi sweeps performed.
    pub iterations: usize,
    /// Largest normalised inner product between distinct columns at exit.
    pub residual: f64,
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|v| Complex64::new(v, 0.0))
}

/// All singular values in descending order, plus the sweep count and residual.
pub fn singular_values(m: &CMatrix, tol: f64) -> Result<(Vec<f64>, usize, f64)> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::param("matrix has no entries"));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::param("matrix has non-finite entries"));
    }
    let work = if m.nrows() >= m.ncols() { m.clone() } else { m.adjoint() };
    let mut square = if work.nrows() > work.ncols() {
        work.qr().r()
    } else {
        work
    };
    let (iterations, residual) = jacobi_orthogonalise(&mut square);
    if residual > tol {
        return Err(Error::NoConvergence { iterations, residual });
    }
    let mut sv: Vec<f64> = square.column_iter().map(|c| c.norm()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok((sv, iterations, residual))
}

/// `sigma_min` and `sigma_max`. For a wide matrix (`rows < cols`) the smallest
/// singular value of the full matrix is 0.
pub fn extreme_singular_values(m: &CMatrix, tol: f64) -> Result<SpectralResult> {
    let (sv, iterations, residual) = singular_values(m, tol)?;
    let sigma_min = if m.nrows() < m.ncols() {
        0.0
    } else {
        *sv.last().expect("non-empty")
    };
    Ok(SpectralResult {
        sigma_min,
        sigma_max: sv[0],
        iterations,
        residual,
    })
}

pub fn extreme_singular_values_real(m: &DMatrix<f64>, tol: f64) -> Result<SpectralResult> {
    extreme_singular_values(&to_complex(m), tol)
}

fn jacobi_orthogonalise(a: &mut CMatrix) -> (usize, f64) {
    let rows = a.nrows();
    let cols = a.ncols();
    let data = a.as_mut_slice();
    let mut norms: Vec<f64> = (0..cols)
        .map(|j| data[j * rows..(j + 1) * rows].iter().map(|z| z.norm_sqr()).sum())
        .collect();
    let mut residual = 0.0;
    for sweep in 1..=MAX_SWEEPS {
        residual = 0.0f64;
        for p in 0..cols {
            for q in p + 1..cols {
                let (head, tail) = data.split_at_mut(q * rows);
                let cp = &mut head[p * rows..(p + 1) * rows];
                let cq = &mut tail[..rows];
                let (np, nq) = (norms[p], norms[q]);
                if np == 0.0 || nq == 0.0 {
                    continue;
                }
                let gamma: Complex64 = cp.iter().zip(cq.iter()).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                let off = g / (np * nq).sqrt();
                residual = residual.max(off);
                if off <= ROTATION_THRESHOLD {
                    continue;
                }
                // Rotate column q by the phase of gamma so the pair's inner
                // product becomes real, then apply a real plane rotation.
                let phase = gamma.conj() / g;
                let zeta = (nq - np) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let yq = *y * phase;
                    let xp = *x;
                    *x = xp * c - yq * s;
                    *y = xp * s + yq * c;
                }
                norms[p] = cp.iter().map(|z| z.norm_sqr()).sum();
                norms[q] = cq.iter().map(|z| z.norm_sqr()).sum();
            }
        }
        if residual <= ROTATION_THRESHOLD * (cols as f64).max(1.0) {
            return (sweep, residual);
        }
    }
    (MAX_SWEEPS, residual)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub size: usize,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub residual: f64,
}

/// Extreme singular values of `builder(n)` for each requested size.
pub fn truncation_sweep<F>(mut builder: F, sizes: &[usize], tol: f64) -> Result<Vec<SweepRow>>
where
    F: FnMut(usize) -> Result<CMatrix>,
{
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::param("sweep sizes must increase"));
    }
    sizes
        .iter()
        .map(|&size| {
            let r = extreme_singular_values(&builder(size)?, tol)?;
            Ok(SweepRow {
                size,
                sigma_min: r.sigma_min,
                sigma_max: r.sigma_max,
                residual: r.residual,
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(writer: W, rows: &[SweepRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["N", "sigma_min", "sigma_max", "residual"])?;
    for r in rows {
        wtr.write_record([
            r.size.to_string(),
            r.sigma_min.to_string(),
            r.sigma_max.to_string(),
            r.residual.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn real(rows: usize, cols: usize, v: &[f64]) -> CMatrix {
        to_complex(&DMatrix::from_row_slice(rows, cols, v))
    }

    #[test]
    fn identity_and_diagonal() {
        let r = extreme_singular_values(&CMatrix::identity(3, 3), DEFAULT_TOLERANCE).unwrap();
        assert_eq!((r.sigma_min, r.sigma_max), (1.0, 1.0));
        let d = real(3, 3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 3.0]);
        let r = extreme_singular_values(&d, DEFAULT_TOLERANCE).unwrap();
        assert_relative_eq!(r.sigma_min, 1.0, max_relative = 1e-14);
        assert_relative_eq!(r.sigma_max, 3.0, max_relative = 1e-14);
    }

    #[test]
    fn permutation() {
        let p = real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let r = extreme_singular_values(&p, DEFAULT_TOLERANCE).unwrap();
        assert_relative_eq!(r.sigma_min, 1.0, max_relative = 1e-14);
        assert_relative_eq!(r.sigma_max, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn known_two_by_two() {
        // [[1, 1], [0, 1]]: singular values are the golden ratio and its inverse.
        let m = real(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let r = extreme_singular_values(&m, DEFAULT_TOLERANCE).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert_relative_eq!(r.sigma_max, phi, max_relative = 1e-14);
        assert_relative_eq!(r.sigma_min, 1.0 / phi, max_relative = 1e-14);
    }

    #[test]
    fn complex_phases_do_not_change_singular_values() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-1.0, 0.0),
            ],
        );
        let r = extreme_singular_values(&m, DEFAULT_TOLERANCE).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert_relative_eq!(r.sigma_max, phi, max_relative = 1e-14);
        assert_relative_eq!(r.sigma_min, 1.0 / phi, max_relative = 1e-14);
    }

    #[test]
    fn wide_and_tall() {
        let wide = real(1, 2, &[3.0, 4.0]);
        let r = extreme_singular_values(&wide, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.sigma_min, 0.0);
        assert_relative_eq!(r.sigma_max, 5.0, max_relative = 1e-14);
        let tall = real(3, 1, &[2.0, 3.0, 6.0]);
        let r = extreme_singular_values(&tall, DEFAULT_TOLERANCE).unwrap();
        assert_relative_eq!(r.sigma_min, 7.0, max_relative = 1e-14);
    }

    #[test]
    fn zero_matrix_and_empty() {
        let r = extreme_singular_values(&CMatrix::zeros(3, 3), DEFAULT_TOLERANCE).unwrap();
        assert_eq!((r.sigma_min, r.sigma_max), (0.0, 0.0));
        assert!(extreme_singular_values(&CMatrix::zeros(0, 0), DEFAULT_TOLERANCE).is_err());
        let mut bad = CMatrix::identity(2, 2);
        bad[(0, 1)] = Complex64::new(f64::NAN, 0.0);
        assert!(extreme_singular_values(&bad, DEFAULT_TOLERANCE).is_err());
    }

    #[test]
    fn sweep_rows() {
        let rows = truncation_sweep(|n| Ok(CMatrix::identity(n, n)), &[4], DEFAULT_TOLERANCE).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].size, rows[0].sigma_min, rows[0].sigma_max), (4, 1.0, 1.0));
        assert!(truncation_sweep(|n| Ok(CMatrix::identity(n, n)), &[4, 2], 1e-8).is_err());
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("N,sigma_min,sigma_max,residual\n"));
    }

    #[test]
    fn deterministic() {
        let m = CMatrix::from_fn(7, 5, |i, j| Complex64::new((i * 3 + j) as f64 % 5.0 - 2.0, (i + j) as f64 * 0.1));
        let a = extreme_singular_values(&m, DEFAULT_TOLERANCE).unwrap();
        let b = extreme_singular_values(&m, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(a.sigma_min.to_bits(), b.sigma_min.to_bits());
        assert_eq!(a.sigma_max.to_bits(), b.sigma_max.to_bits());
    }
}
