//! Draws one realization of each finite Dirichlet-process approximation and
//! prints its atoms and weights.
//!
//! ```text
//! cargo run --example sample_dirichlet_approximations -- 2.0 8
//! ```

use hipm_lab::measures::{sample_stick_breaking_weights, Approximation};
use hipm_lab::{BaseMeasure, DpParams, Seed};

fn main() -> hipm_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().map_or(Ok(2.0), |a| a.parse()).expect("alpha");
    let atoms: usize = args.next().map_or(Ok(8), |a| a.parse()).expect("number of atoms");

    let params = DpParams::new(alpha, BaseMeasure::uniform(0.0, 1.0)?)?;
    let seed = Seed(2024);
    for (k, approx) in Approximation::ALL.into_iter().enumerate() {
        let p = approx.sample(&params, atoms, &mut seed.child(k as u64).rng())?;
        println!("{} ({} atoms, mean {:.4})", approx.name(), p.len(), p.mean());
        for (x, w) in p.iter() {
            println!("  {x:.4}  {w:.4}");
        }
    }

    let sticks = sample_stick_breaking_weights(alpha, atoms, &mut seed.child(99).rng())?;
    let expected = (alpha / (alpha + 1.0)).powi(atoms as i32);
    println!("mass left after {atoms} sticks: {:.4} (expected {expected:.4})", sticks.residual);
    Ok(())
}
