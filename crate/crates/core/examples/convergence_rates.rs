//! Distance between two independent estimates of the same Dirichlet process
//! as the number of members grows, with fitted log-log slopes.

use hipm_lab::experiment::{fig1_replication, loglog_slope, ExperimentConfig, ExperimentId, Summary};

fn main() -> hipm_lab::Result<()> {
    let ns = [8, 16, 32, 64, 128];
    let config = ExperimentConfig {
        n: ns.to_vec(),
        m: 500,
        replications: 4,
        ..ExperimentConfig::desk(ExperimentId::Fig1Right)
    };
    let (mut lip, mut ww) = (Vec::new(), Vec::new());
    println!("{:>5} {:>9} {:>9}", "n", "d_Lip", "W_W");
    for &n in &ns {
        let s: Vec<_> = (0..config.replications)
            .map(|r| fig1_replication(&config, n, r))
            .collect::<hipm_lab::Result<_>>()?;
        let h = Summary::of(&s.iter().map(|x| x.hipm).collect::<Vec<_>>()).mean;
        let w = Summary::of(&s.iter().map(|x| x.wow).collect::<Vec<_>>()).mean;
        println!("{n:>5} {h:>9.5} {w:>9.5}");
        lip.push(h);
        ww.push(w);
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    println!("slopes: d_Lip {:.3}, W_W {:.3}", loglog_slope(&xs, &lip)?, loglog_slope(&xs, &ww)?);
    Ok(())
}
