//! Certification when the translations are irregular: a jittered lattice
//! with gaps at most 0.9 and modulations `Z`.

use semiaxis_gabor::framecert::{certify_lower_frame_bound, max_semi_irregular_truncation};
use semiaxis_gabor::grids::{jittered_lattice, GridSpec, SemiIrregularGrid};
use semiaxis_gabor::windows::Window;

pub fn run_example() -> anyhow::Result<()> {
    let g = Window::one_sided_exponential(1.0)?;
    let points = jittered_lattice(0.9, 0.1, 3, 128)?;
    let set = SemiIrregularGrid::new(points, 1.0, 0.9)?;
    let report = set.validate()?;
    println!(
        "128 points on [{:.3}, {:.3}]: max gap {:.6}, separation m = {:?}",
        report.checked_range.0, report.checked_range.1, report.max_gap, report.separation_m
    );
    anyhow::ensure!(report.passed());

    let truncation = max_semi_irregular_truncation(&set, 32);
    let r = certify_lower_frame_bound(&g, &GridSpec::SemiIrregular(set), 32, truncation)?;
    println!("columns per side: {truncation}");
    println!("certified epsilon: {:?}", r.certified_epsilon);
    println!("certified A:       {:?}", r.certified_a);
    println!("empirical A, B:    {:?}, {:?}", r.empirical_a, r.empirical_b);
    let worst = r.diagnostics.per_x.iter().map(|c| c.sigma_min_d).fold(f64::INFINITY, f64::min);
    println!("smallest sigma_min(D_x) on the grid: {worst:.6}");
    anyhow::ensure!(r.is_certified());
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}
