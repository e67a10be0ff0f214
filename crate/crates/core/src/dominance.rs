//! Quantitative lower bound for row-dominant matrices with geometric
//! off-diagonal decay.
//!
//! If `|d_nn| >= delta`, `|d_nm| <= C lambda^{|m-n|}` for `m != n` and
//! `sum_{m != n} |d_nm| <= lambda |d_nn|` with `0 < lambda < 1`, then
//! `||D v|| >= eps ||v||` with
//!
//! ```text
//! eps = delta (1 - q) / sqrt(1 + 2 kappa^2 / (1 - kappa^2))
//! q   = lambda kappa^{-n0} + 2 C' sum_{l > n0} (lambda / kappa)^l,   C' = C / delta
//! ```
//!
//! for any `n0 >= 1` and `lambda < kappa < 1` with `q < 1`. [`certificate`]
//! searches a fixed `(n0, kappa)` grid for the largest such `eps`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{self, CMatrix};

pub const MAX_N0: usize = 60;
pub const MAX_KAPPA_EXPONENT: i32 = 50;
/// Relative slack allowed when scanning a matrix against the hypotheses.
pub const SCAN_TOLERANCE: f64 = 1e-12;
/// Absolute slack of the singular value comparison.
pub const SIGMA_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominanceCertificate {
    pub delta: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub lambda: f64,
    pub n0: usize,
    pub kappa: f64,
    pub q_val: f64,
    pub epsilon: f64,
}

impl DominanceCertificate {
    /// `q` recomputed from the stored parameters.
    pub fn recompute_q(&self) -> f64 {
        q_value(self.n0, self.kappa, self.c, self.delta, self.lambda)
    }
}

/// Decay constant of the row-normalised matrix. Values below `lambda` are
/// lifted to `lambda`, which only weakens the hypothesis.
fn normalised_decay(c: f64, delta: f64, lambda: f64) -> f64 {
    (c / delta).max(lambda)
}

/// `lambda kappa^{-n0} + 2 C' (lambda/kappa)^{n0+1} / (1 - lambda/kappa)`,
/// infinite when `lambda >= kappa`.
pub fn q_value(n0: usize, kappa: f64, c: f64, delta: f64, lambda: f64) -> f64 {
    let ratio = lambda / kappa;
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    let c_norm = normalised_decay(c, delta, lambda);
    let n0 = n0 as i32;
    lambda * kappa.powi(-n0) + 2.0 * c_norm * ratio.powi(n0 + 1) / (1.0 - ratio)
}

/// `delta (1 - q) (1 + sum_{l != 0} kappa^{2|l|})^{-1/2}`.
pub fn epsilon_value(delta: f64, q: f64, kappa: f64) -> f64 {
    let k2 = kappa * kappa;
    delta * (1.0 - q) / (1.0 + 2.0 * k2 / (1.0 - k2)).sqrt()
}

pub fn certificate(delta: f64, c: f64, lambda: f64) -> Result<DominanceCertificate> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::param(format!("delta must be positive, got {delta}")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::param(format!("C must be positive, got {c}")));
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::param(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    let mut best: Option<DominanceCertificate> = None;
    let mut best_q = f64::INFINITY;
    for n0 in 1..=MAX_N0 {
        for j in 1..=MAX_KAPPA_EXPONENT {
            let kappa = 1.0 - 0.5f64.powi(j);
            if lambda >= kappa {
                continue;
            }
            let q_val = q_value(n0, kappa, c, delta, lambda);
            best_q = best_q.min(q_val);
            if q_val >= 1.0 {
                continue;
            }
            let epsilon = epsilon_value(delta, q_val, kappa);
            if best.map_or(true, |b| epsilon > b.epsilon) {
                best = Some(DominanceCertificate {
                    delta,
                    c,
                    lambda,
                    n0,
                    kappa,
                    q_val,
                    epsilon,
                });
            }
        }
    }
    best.ok_or(Error::NoAdmissiblePair { best_q })
}

/// Observed quantities of a matrix against the three hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypothesisScan {
    pub min_diagonal: f64,
    /// `max_{m != n} |d_nm| / lambda^{|m-n|}`.
    pub decay_constant: f64,
    /// `max_n sum_{m != n} |d_nm| / |d_nn|`.
    pub dominance_ratio: f64,
}

impl HypothesisScan {
    pub fn of(d: &CMatrix, lambda: f64) -> Self {
        let n = d.nrows();
        let mut min_diagonal = f64::INFINITY;
        let mut decay_constant = 0.0f64;
        let mut dominance_ratio = 0.0f64;
        for i in 0..n {
            let diag = d[(i, i)].norm();
            min_diagonal = min_diagonal.min(diag);
            let mut off = 0.0;
            for j in 0..d.ncols() {
                if i == j {
                    continue;
                }
                let v = d[(i, j)].norm();
                off += v;
                if v > 0.0 {
                    let k = (i as i32 - j as i32).abs();
                    decay_constant = decay_constant.max(v / lambda.powi(k));
                }
            }
            let ratio = if diag > 0.0 { off / diag } else if off > 0.0 { f64::INFINITY } else { 0.0 };
            dominance_ratio = dominance_ratio.max(ratio);
        }
        HypothesisScan {
            min_diagonal,
            decay_constant,
            dominance_ratio,
        }
    }

    /// `Ok` when the matrix satisfies the hypotheses behind `cert`.
    pub fn check(&self, cert: &DominanceCertificate) -> Result<()> {
        let slack = 1.0 + SCAN_TOLERANCE;
        if self.min_diagonal * slack < cert.delta {
            return Err(Error::HypothesisScan(format!(
                "diagonal {} below delta {}",
                self.min_diagonal, cert.delta
            )));
        }
        if self.decay_constant > cert.c * slack {
            return Err(Error::HypothesisScan(format!(
                "off-diagonal decay constant {} exceeds C {}",
                self.decay_constant, cert.c
            )));
        }
        if self.dominance_ratio > cert.lambda * slack {
            return Err(Error::HypothesisScan(format!(
                "row dominance ratio {} exceeds lambda {}",
                self.dominance_ratio, cert.lambda
            )));
        }
        Ok(())
    }
}

/// Scans `d` against the certificate's hypotheses and compares its smallest
/// singular value with `eps`. A hypothesis failure is an error; `Ok(false)`
/// would mean the bound itself is broken.
pub fn certified_sigma_min_check(d: &CMatrix, cert: &DominanceCertificate) -> Result<bool> {
    if d.nrows() != d.ncols() {
        return Err(Error::param("dominance check needs a square matrix"));
    }
    HypothesisScan::of(d, cert.lambda).check(cert)?;
    let s = spectral::extreme_singular_values(d, spectral::DEFAULT_TOLERANCE)?;
    Ok(s.sigma_min >= cert.epsilon - SIGMA_SLACK)
}

pub fn certified_sigma_min_check_real(d: &DMatrix<f64>, cert: &DominanceCertificate) -> Result<bool> {
    certified_sigma_min_check(&spectral::to_complex(d), cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryPhases {
    /// Random signs only.
    Real,
    /// Random unit-modulus phases.
    Complex,
}

/// Deterministic random matrix satisfying the hypotheses for
/// `(delta, c, lambda)`.
///
/// Diagonal magnitudes are uniform in `[delta, 2 delta]`. Each row spends its
/// dominance budget `lambda |d_nn|` left to right: an entry takes a uniform
/// fraction of `min(C lambda^{|m-n|}, remaining budget)`.
pub fn random_conforming_matrix(
    delta: f64,
    c: f64,
    lambda: f64,
    size: usize,
    seed: u64,
    phases: EntryPhases,
) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = CMatrix::zeros(size, size);
    let unit = |rng: &mut ChaCha8Rng| match phases {
        EntryPhases::Real => {
            if rng.gen::<bool>() {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(-1.0, 0.0)
            }
        }
        EntryPhases::Complex => Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)),
    };
    for i in 0..size {
        let diag = rng.gen_range(delta..=2.0 * delta);
        m[(i, i)] = unit(&mut rng) * diag;
        let mut budget = lambda * diag;
        for j in 0..size {
            if j == i {
                continue;
            }
            let k = (i as i32 - j as i32).abs();
            let cap = (c * lambda.powi(k)).min(budget);
            let mag = cap * rng.gen::<f64>();
            budget -= mag;
            m[(i, j)] = unit(&mut rng) * mag;
        }
    }
    m
}

/// Outcome of a soundness campaign over random conforming matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub certificate: DominanceCertificate,
    pub matrices: usize,
    pub violations: usize,
    /// Smallest `sigma_min` seen, with the size and seed that produced it.
    pub min_sigma: f64,
    pub min_sigma_size: usize,
    pub min_sigma_seed: u64,
}

/// Smallest and largest sizes drawn by [`soundness_campaign`].
pub const CAMPAIGN_SIZES: (usize, usize) = (2, 40);

/// `count` matrices with sizes drawn from [`CAMPAIGN_SIZES`], alternating
/// real and complex entries; counts those whose smallest singular value
/// falls below the certificate.
pub fn soundness_campaign(delta: f64, c: f64, lambda: f64, count: usize, seed: u64) -> Result<CampaignSummary> {
    let cert = certificate(delta, c, lambda)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jobs: Vec<(usize, u64, EntryPhases)> = (0..count)
        .map(|i| {
            let size = rng.gen_range(CAMPAIGN_SIZES.0..=CAMPAIGN_SIZES.1);
            let phases = if i % 2 == 0 { EntryPhases::Real } else { EntryPhases::Complex };
            (size, rng.gen::<u64>(), phases)
        })
        .collect();
    let sigmas = jobs
        .par_iter()
        .map(|&(size, s, phases)| {
            let m = random_conforming_matrix(delta, c, lambda, size, s, phases);
            HypothesisScan::of(&m, lambda).check(&cert)?;
            spectral::extreme_singular_values(&m, spectral::DEFAULT_TOLERANCE).map(|r| r.sigma_min)
        })
        .collect::<Result<Vec<f64>>>()?;
    let violations = sigmas.iter().filter(|&&s| s < cert.epsilon - SIGMA_SLACK).count();
    let (worst, &min_sigma) = sigmas
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .unwrap_or((0, &f64::INFINITY));
    Ok(CampaignSummary {
        certificate: cert,
        matrices: count,
        violations,
        min_sigma,
        min_sigma_size: jobs.get(worst).map_or(0, |j| j.0),
        min_sigma_seed: jobs.get(worst).map_or(0, |j| j.1),
    })
}
