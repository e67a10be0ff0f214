//! Certified lower frame bounds for `g(x) = e^{-x}` on a few lattices, next
//! to the bounds read off the truncated fibers.

use semiaxis_gabor::framecert::certify_lower_frame_bound;
use semiaxis_gabor::grids::regular_lattice;
use semiaxis_gabor::windows::Window;

pub fn run_example() -> anyhow::Result<()> {
    let g = Window::one_sided_exponential(1.0)?;
    println!("{:>5} {:>5} {:>10} {:>12} {:>12} {:>12}", "alpha", "beta", "epsilon", "certified_A", "empirical_A", "empirical_B");
    for (alpha, beta) in [(1.0, 1.0), (0.5, 1.0), (0.7, 1.2)] {
        let r = certify_lower_frame_bound(&g, &regular_lattice(alpha, beta)?, 32, 64)?;
        let (eps, ca) = match (r.certified_epsilon, r.certified_a) {
            (Some(e), Some(a)) => (e, a),
            _ => anyhow::bail!("no certificate at ({alpha}, {beta}): {:?}", r.diagnostics.failing_x),
        };
        let (ea, eb) = (r.empirical_a.unwrap_or(f64::NAN), r.empirical_b.unwrap_or(f64::NAN));
        println!("{alpha:>5} {beta:>5} {eps:>10.6} {ca:>12.6e} {ea:>12.6} {eb:>12.6}");
        anyhow::ensure!(ca <= ea, "certified bound above the measured one");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}
