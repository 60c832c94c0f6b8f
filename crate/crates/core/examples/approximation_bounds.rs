//! Analytic upper bounds on the distance between DP(α, Unif[0,1]) and its
//! three finite approximations, next to a small Monte-Carlo estimate.
//!
//! With 64 members the estimate has a noise floor near 0.03, so bounds
//! below that level are not resolved here.

use hipm_lab::experiment::{fig2_point, Summary};
use hipm_lab::measures::Approximation;
use hipm_lab::oracles::{upper_bound, Cdf};
use hipm_lab::{AscentConfig, Seed};

fn main() -> hipm_lab::Result<()> {
    let f0 = Cdf::uniform(0.0, 1.0)?;
    let alpha = 10.0;
    println!("alpha = {alpha}");
    println!("{:>5} {:>24} {:>9} {:>9}", "N", "approximation", "estimate", "bound");
    for atoms in [5, 20, 80] {
        let est = fig2_point(alpha, atoms, 64, 300, 64, 2, Seed(atoms as u64), &AscentConfig::default())?;
        for (k, approx) in Approximation::ALL.into_iter().enumerate() {
            println!(
                "{atoms:>5} {:>24} {:>9.4} {:>9.4}",
                approx.name(),
                Summary::of(&est[k]).mean,
                upper_bound(approx, alpha, atoms, &f0)?
            );
        }
    }
    Ok(())
}
