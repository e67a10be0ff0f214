//! Verdicts over an `(alpha, beta)` rectangle for the truncated linear
//! window `g(x) = 1 - x` on `[0, 1]`. Three regions show up: frames below
//! both `alpha beta = 1` and `alpha = 1`, the product rule above the
//! hyperbola, and the gap/boundary rules at and right of `alpha = 1`.
//! Writes the CSV to the path given as the first argument, if any.

use semiaxis_gabor::framecert::{frame_set_sweep, write_sweep_csv, Verdict};
use semiaxis_gabor::windows::Window;

pub fn run_example() -> anyhow::Result<()> {
    let g = Window::truncated_linear(1.0)?;
    let axis: Vec<f64> = (1..=15).map(|i| i as f64 * 0.1).collect();
    let cells = frame_set_sweep(&g, &axis, &axis, 4, 8)?;

    // Rows are beta (top = largest), columns alpha.
    for &beta in axis.iter().rev() {
        let row: String = cells
            .iter()
            .filter(|c| c.beta == beta)
            .map(|c| match (c.verdict, c.certified_a.is_some()) {
                (Verdict::Frame, true) => '#',
                (Verdict::Frame, false) => '+',
                (Verdict::NotFrame, _) => '.',
                (Verdict::Unsupported, _) => '?',
            })
            .collect();
        println!("beta {beta:>4.1} | {row}");
    }
    println!("           alpha 0.1 .. 1.5   (# certified frame, . not a frame)");

    if let Some(path) = std::env::args().nth(1) {
        write_sweep_csv(std::fs::File::create(&path)?, &cells)?;
        println!("wrote {path}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}
