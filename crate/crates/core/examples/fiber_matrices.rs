//! The matrices behind a certificate, at one fiber point.
//!
//! `G_x` is the truncated fiber; `G*` keeps one row per column and is upper
//! triangular; `D = G* (Id - q S)` is row dominant. For `g(x) = e^{-x}` on
//! `Z x Z` the second step cancels exactly and `D` is diagonal.

use semiaxis_gabor::grids::regular_lattice;
use semiaxis_gabor::ronshen::{build_slice, dominance_report, reduce, u_transform, Truncation};
use semiaxis_gabor::spectral::{extreme_singular_values, extreme_singular_values_real, DEFAULT_TOLERANCE};
use semiaxis_gabor::windows::Window;

fn show(name: &str, m: &nalgebra::DMatrix<f64>) {
    println!("{name} (top-left 4 x 4):");
    for i in 0..4.min(m.nrows()) {
        let row: Vec<String> = (0..4.min(m.ncols())).map(|j| format!("{:>9.5}", m[(i, j)])).collect();
        println!("  {}", row.join(" "));
    }
}

pub fn run_example() -> anyhow::Result<()> {
    let x = 0.3;
    for (label, g) in [
        ("e^{-x}", Window::one_sided_exponential(1.0)?),
        ("e^{-x} on [0, 1.5]", Window::truncated_exponential(1.0, 1.5)?),
    ] {
        println!("== {label}, alpha = 0.7, beta = 1, x = {x}");
        let grid = regular_lattice(0.7, 1.0)?;
        let slice = build_slice(&g, &grid, x, Truncation::for_grid(&grid, 8))?;
        let s = extreme_singular_values(&slice.entries, DEFAULT_TOLERANCE)?;
        println!("G_x: {} x {}, sigma in [{:.5}, {:.5}]", slice.entries.nrows(), slice.entries.ncols(), s.sigma_min, s.sigma_max);

        let q = g.decay_ratio(1.0)?;
        let g_star = reduce(&g, &grid, x, 8)?;
        let d = u_transform(&g_star, q)?;
        show("G*", &g_star.matrix);
        show("D", &d.matrix);
        let rep = dominance_report(&d)?;
        let sd = extreme_singular_values_real(&d.matrix, DEFAULT_TOLERANCE)?;
        println!(
            "D: delta_obs {:.5}, worst row slack {:.3e}, passed {}, sigma_min {:.5}",
            rep.delta_obs, rep.worst_row_slack, rep.passed(), sd.sigma_min
        );
    }

    let mut out = Vec::new();
    let g = Window::one_sided_exponential(1.0)?;
    let grid = regular_lattice(1.0, 1.0)?;
    build_slice(&g, &grid, x, Truncation::new(2, 2))?.write_csv(&mut out)?;
    print!("fiber table for Z x Z, 5 x 5:\n{}", String::from_utf8(out)?.lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("\n  ...");
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}
