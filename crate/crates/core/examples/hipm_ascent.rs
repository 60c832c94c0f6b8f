//! Estimates the Lipschitz hierarchical IPM between two Dirichlet-process
//! estimators and compares it with its lower and upper companions.

use hipm_lab::hipm::hipm_lip_estimate;
use hipm_lab::measures::empirical_hierarchical_estimator;
use hipm_lab::{mean_lower_bound, wow_distance, AscentConfig, BaseMeasure, DpParams, Grid, Seed};

fn main() -> hipm_lab::Result<()> {
    let (n, m) = (32, 200);
    let p1 = DpParams::new(1.0, BaseMeasure::uniform(0.0, 1.0)?)?;
    let p2 = DpParams::new(5.0, BaseMeasure::uniform(0.2, 1.0)?)?;
    let q1 = empirical_hierarchical_estimator(&p1, n, m, Seed(1))?;
    let q2 = empirical_hierarchical_estimator(&p2, n, m, Seed(2))?.widen_domain(q1.domain())?;
    let q1 = q1.widen_domain(q2.domain())?;

    let grid = Grid::on(q1.domain(), 100)?;
    let config = AscentConfig {
        seed: 7,
        ..AscentConfig::default()
    };
    let est = hipm_lip_estimate(&q1, &q2, &grid, &config)?;
    let best = est
        .ascent
        .restarts
        .iter()
        .max_by(|a, b| a.value.total_cmp(&b.value))
        .expect("at least one restart");

    println!("mean lower bound   {:.5}", mean_lower_bound(&q1, &q2)?);
    println!("d_Lip estimate     {:.5}", est.value);
    println!("W_W                {:.5}", wow_distance(&q1, &q2)?);
    println!("grid step          {:.5}", grid.step());
    println!("best restart {} stopped after {} steps ({:?})", best.restart, best.iterations, best.stop);
    let f = &best.profile;
    for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
        println!("  f({x:.2}) = {:+.4}", f.eval(x));
    }
    Ok(())
}
