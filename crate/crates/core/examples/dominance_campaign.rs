//! The dominance certificate against random matrices that meet its
//! hypotheses: diagonal at least `delta`, off-diagonal decay `C lambda^k`,
//! row sums at most `lambda` times the diagonal.

use semiaxis_gabor::dominance::{certificate, soundness_campaign};

pub fn run_example() -> anyhow::Result<()> {
    let c = certificate(1.0, 1.0, 0.5)?;
    println!("certificate(1, 1, 0.5): eps = {:.6} at n0 = {}, kappa = {}", c.epsilon, c.n0, c.kappa);
    println!("{:>4} {:>6} {:>10} {:>10} {:>10}", "C", "lambda", "epsilon", "min sigma", "violations");
    for cc in [1.0, 2.0, 5.0] {
        for lambda in [0.3, 0.5, 0.8] {
            let s = soundness_campaign(1.0, cc, lambda, 200, 7)?;
            println!(
                "{cc:>4} {lambda:>6} {:>10.6} {:>10.6} {:>10}",
                s.certificate.epsilon, s.min_sigma, s.violations
            );
            anyhow::ensure!(s.violations == 0);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}
