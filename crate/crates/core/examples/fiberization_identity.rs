//! The frame sum `<S f, f>` two ways: explicit inner products against every
//! time-frequency shift, and the integral of `||G_x v_f(x)||^2` over one
//! period. Their agreement is the Poisson summation step behind the fiber
//! description of the frame bounds.

use semiaxis_gabor::framecert::{frame_operator_quadratic_form, DEFAULT_MODULATION_CUTOFF};
use semiaxis_gabor::grids::{jittered_lattice, regular_lattice, GridSpec, SemiIrregularGrid};
use semiaxis_gabor::quadrature::TestFunction;
use semiaxis_gabor::windows::Window;

pub fn run_example() -> anyhow::Result<()> {
    let g = Window::one_sided_exponential(1.0)?;
    let f = TestFunction::gaussian(3.0, 0.5)?;

    let lattice = regular_lattice(1.0, 1.0)?;
    let q = frame_operator_quadratic_form(&g, &lattice, &f, DEFAULT_MODULATION_CUTOFF)?;
    println!(
        "lattice Z x Z:        direct {:.12} fiber {:.12} rel {:.2e} ({} translates)",
        q.direct, q.fiber, q.relative_discrepancy, q.translations
    );
    anyhow::ensure!(q.relative_discrepancy <= 1e-4);

    // Semi-irregular translations with alternating modulation phases.
    let points = jittered_lattice(0.9, 0.1, 3, 64)?;
    let phases: Vec<f64> = (0..points.len()).map(|i| if i % 2 == 0 { 0.0 } else { 0.25 }).collect();
    let mid = 0.5 * (points[0] + points[points.len() - 1]);
    let set = GridSpec::SemiIrregular(SemiIrregularGrid::with_phases(points, 1.0, phases, 0.9)?);
    let f = TestFunction::gaussian(mid, 0.5)?;
    let q = frame_operator_quadratic_form(&g, &set, &f, DEFAULT_MODULATION_CUTOFF)?;
    println!(
        "jittered, phases 0, 1/4: direct {:.12} fiber {:.12} rel {:.2e} ({} translates)",
        q.direct, q.fiber, q.relative_discrepancy, q.translations
    );
    anyhow::ensure!(q.relative_discrepancy <= 1e-4);
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}
