//! A window from a Cauchy-type transform, `g(x) = sum_k m_k e^{-2 pi t_k x}`,
//! decays at least like its slowest exponential. With masses 1 and 0.5 at
//! locations 1 and 2 it certifies on the lattice `Z x Z`.

use semiaxis_gabor::framecert::certify_lower_frame_bound;
use semiaxis_gabor::grids::regular_lattice;
use semiaxis_gabor::windows::cauchy_transform_window;

pub fn run_example() -> anyhow::Result<()> {
    let g = cauchy_transform_window(&[(1.0, 1.0), (0.5, 2.0)])?;
    for i in 1..=10 {
        let t = i as f64 / 10.0;
        let q = g.decay_ratio(t)?;
        let bound = (-2.0 * std::f64::consts::PI * t).exp();
        println!("q({t:.1}) = {q:.6e}   e^(-2 pi t) = {bound:.6e}");
        anyhow::ensure!(q <= bound + 1e-12);
    }
    let r = certify_lower_frame_bound(&g, &regular_lattice(1.0, 1.0)?, 32, 64)?;
    println!("certified A = {:?}, empirical A = {:?}", r.certified_a, r.empirical_a);
    anyhow::ensure!(r.certified_a.is_some_and(|a| a > 0.0));
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}
