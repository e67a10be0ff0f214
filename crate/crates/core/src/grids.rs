//! Time-frequency index sets: regular lattices `alpha Z x beta Z` and
//! semi-irregular sets `Lambda x beta Z` with optional per-point phase offsets.

use std::io::{Read, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Relative slack used when comparing gaps against `alpha` and spans against 1.
pub const GRID_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemiIrregularGrid {
    points: Vec<f64>,
    beta: f64,
    phases: Vec<f64>,
    gap_bound: f64,
}

impl SemiIrregularGrid {
    /// Grid with all phases zero.
    pub fn new(points: Vec<f64>, beta: f64, gap_bound: f64) -> Result<Self> {
        let phases = vec![0.0; points.len()];
        SemiIrregularGrid::with_phases(points, beta, phases, gap_bound)
    }

    pub fn with_phases(points: Vec<f64>, beta: f64, phases: Vec<f64>, gap_bound: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::param(format!("beta must be positive, got {beta}")));
        }
        if !(gap_bound > 0.0 && gap_bound.is_finite()) {
            return Err(Error::param(format!("gap bound must be positive, got {gap_bound}")));
        }
        if phases.len() != points.len() {
            return Err(Error::param("one phase per point is required"));
        }
        check_increasing(&points)?;
        Ok(SemiIrregularGrid {
            points,
            beta,
            phases,
            gap_bound,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gap_bound(&self) -> f64 {
        self.gap_bound
    }

    pub fn has_phases(&self) -> bool {
        self.phases.iter().any(|c| *c != 0.0)
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        validate_semi_irregular(&self.points, self.gap_bound)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum GridSpec {
    Regular { alpha: f64, beta: f64 },
    SemiIrregular(SemiIrregularGrid),
}

impl GridSpec {
    pub fn beta(&self) -> f64 {
        match self {
            GridSpec::Regular { beta, .. } => *beta,
            GridSpec::SemiIrregular(g) => g.beta,
        }
    }

    /// Translation step (regular) or gap bound (semi-irregular).
    pub fn alpha(&self) -> f64 {
        match self {
            GridSpec::Regular { alpha, .. } => *alpha,
            GridSpec::SemiIrregular(g) => g.gap_bound,
        }
    }

    pub fn density_product(&self) -> f64 {
        self.alpha() * self.beta()
    }

    pub fn is_admissible(&self) -> bool {
        self.density_product() <= 1.0 + GRID_TOLERANCE
    }
}

/// Regular lattice `alpha Z x beta Z`; inspect [`GridSpec::is_admissible`]
/// for the `alpha beta <= 1` necessary condition.
pub fn regular_lattice(alpha: f64, beta: f64) -> Result<GridSpec> {
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::param(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(GridSpec::Regular { alpha, beta })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub gap_ok: bool,
    pub max_gap: f64,
    /// Smallest `m` with `lambda_{n+m} - lambda_n >= 1` for every `n` available
    /// in the list.
    pub separation_m: Option<usize>,
    /// The separation condition only covers `[first, last]` of the finite list.
    pub checked_range: (f64, f64),
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.gap_ok && self.separation_m.is_some()
    }
}

fn check_increasing(points: &[f64]) -> Result<()> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidGrid("points must be finite".into()));
    }
    if let Some(i) = points.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid(format!(
            "points must increase strictly (index {} -> {})",
            i,
            i + 1
        )));
    }
    Ok(())
}

pub fn validate_semi_irregular(points: &[f64], alpha: f64) -> Result<ValidationReport> {
    if points.len() < 2 {
        return Err(Error::InvalidGrid("need at least two points".into()));
    }
    if !(alpha > 0.0) {
        return Err(Error::param(format!("alpha must be positive, got {alpha}")));
    }
    check_increasing(points)?;
    let max_gap = points.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let gap_ok = max_gap <= alpha * (1.0 + GRID_TOLERANCE);
    let separation_m = (1..points.len()).find(|&m| {
        points
            .iter()
            .zip(&points[m..])
            .all(|(a, b)| b - a >= 1.0 - GRID_TOLERANCE)
    });
    Ok(ValidationReport {
        gap_ok,
        max_gap,
        separation_m,
        checked_range: (points[0], points[points.len() - 1]),
    })
}

/// `lambda_n = alpha n + u_n` with `u_n` uniform in `[-jitter, jitter]`, then
/// scaled so that no gap exceeds `alpha`.
pub fn jittered_lattice(alpha: f64, jitter: f64, seed: u64, count: usize) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::param(format!("alpha must be positive, got {alpha}")));
    }
    if !(jitter >= 0.0 && jitter < alpha / 4.0) {
        return Err(Error::param(format!("jitter must lie in [0, alpha/4), got {jitter}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<f64> = (0..count)
        .map(|n| {
            let u = if jitter > 0.0 { rng.gen_range(-jitter..=jitter) } else { 0.0 };
            alpha * n as f64 + u
        })
        .collect();
    let max_gap = points.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    if max_gap > alpha {
        let scale = alpha / max_gap;
        points.iter_mut().for_each(|p| *p *= scale);
    }
    if points.len() >= 2 {
        debug_assert!(validate_semi_irregular(&points, alpha)?.gap_ok);
    }
    Ok(points)
}

/// One value per line; a non-numeric first line is taken as a header.
pub fn read_points<R: Read>(reader: R) -> Result<Vec<f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let field = record.get(0).unwrap_or("");
        match field.parse::<f64>() {
            Ok(v) => out.push(v),
            Err(_) if i == 0 => continue,
            Err(_) => {
                return Err(Error::InvalidGrid(format!("line {}: unparseable point {field:?}", i + 1)))
            }
        }
    }
    Ok(out)
}

pub fn read_points_path(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    read_points(std::fs::File::open(path)?)
}

pub fn write_points<W: Write>(writer: W, points: &[f64]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["lambda"])?;
    for p in points {
        wtr.write_record([p.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}
