//! Why `g(x) = 1 - x` on `[0, 1]` fails at `alpha >= 1`.
//!
//! With `alpha = 1.5` the translates leave gaps, and an indicator inside a
//! gap is orthogonal to the whole system. With `alpha = 1` every point is
//! covered, but `g` vanishes at the right end, so indicators of
//! `[1 - eps, 1]` have frame sums of order `eps^3` against norm `eps`.

use semiaxis_gabor::framecert::{boundary_degeneration_demo, empirical_frame_bounds, incompleteness_witness};
use semiaxis_gabor::grids::regular_lattice;
use semiaxis_gabor::windows::Window;

pub fn run_example() -> anyhow::Result<()> {
    let g = Window::truncated_linear(1.0)?;

    let w = incompleteness_witness(&g, 1.5, 0.5)?;
    println!("gap indicator on [{}, {}]: max |<h, pi g>| = {:e}", w.start, w.end, w.residual);
    anyhow::ensure!(w.residual <= 1e-12);

    for truncation in [8, 16, 32] {
        let b = empirical_frame_bounds(&g, &regular_lattice(1.5, 0.5)?, 8, truncation)?;
        println!("alpha = 1.5, truncation {truncation:>2}: empirical A = {:e}", b.a);
    }

    let pts = boundary_degeneration_demo(&g, 1.0, &[0.2, 0.1, 0.05, 0.025], 64)?;
    for p in &pts {
        println!("eps = {:<6} R = {:.6e}   (eps^2 / 3 = {:.6e})", p.epsilon, p.ratio, p.epsilon * p.epsilon / 3.0);
    }
    let ratio = pts[pts.len() - 1].ratio / pts[0].ratio;
    println!("R(0.025) / R(0.2) = {ratio:.6}");
    anyhow::ensure!(ratio <= 0.1);
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}
