//! For Dirichlet processes with equal concentration, both distances between
//! the laws reduce to the Wasserstein distance between the base measures.
//! This example estimates them and prints the closed-form reference.

use hipm_lab::experiment::{fig1_left_bases, fig1_replication, ExperimentConfig, ExperimentId, Summary};
use hipm_lab::oracles::{species_sampling_wow, Cdf};

fn main() -> hipm_lab::Result<()> {
    let (b1, b2) = fig1_left_bases();
    let reference = species_sampling_wow(&Cdf::of(&b1), &Cdf::of(&b2))?;
    let config = ExperimentConfig {
        n: vec![64],
        m: 500,
        replications: 4,
        ..ExperimentConfig::desk(ExperimentId::Fig1Left)
    };
    let samples: Vec<_> = (0..config.replications)
        .map(|r| fig1_replication(&config, 64, r))
        .collect::<hipm_lab::Result<_>>()?;
    let hipm = Summary::of(&samples.iter().map(|s| s.hipm).collect::<Vec<_>>());
    let wow = Summary::of(&samples.iter().map(|s| s.wow).collect::<Vec<_>>());
    println!("reference  {reference:.4}");
    println!("d_Lip      {:.4} ± {:.4}", hipm.mean, hipm.stderr);
    println!("W_W        {:.4} ± {:.4}", wow.mean, wow.stderr);
    Ok(())
}
