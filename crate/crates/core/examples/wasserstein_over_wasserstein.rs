//! Wasserstein-over-Wasserstein distance between two small laws, with the
//! pairwise cost matrix and the optimal matching.

use hipm_lab::measures::Domain;
use hipm_lab::wow::{pairwise_wasserstein_matrix, wow_assignment};
use hipm_lab::{DiscreteMeasure, EmpiricalLaw};

fn main() -> hipm_lab::Result<()> {
    let domain = Domain::new(0.0, 1.0)?;
    let q1 = EmpiricalLaw::new(
        vec![
            DiscreteMeasure::new(vec![0.1, 0.4], vec![0.5, 0.5])?,
            DiscreteMeasure::dirac(0.9)?,
            DiscreteMeasure::uniform(vec![0.2, 0.5, 0.8])?,
        ],
        domain,
    )?;
    let q2 = EmpiricalLaw::new(
        vec![
            DiscreteMeasure::dirac(0.15)?,
            DiscreteMeasure::new(vec![0.6, 1.0], vec![0.3, 0.7])?,
            DiscreteMeasure::uniform(vec![0.0, 1.0])?,
        ],
        domain,
    )?;

    let cost = pairwise_wasserstein_matrix(&q1, &q2)?;
    println!("pairwise W1:");
    for i in 0..cost.size() {
        let row: Vec<String> = cost.row(i).iter().map(|c| format!("{c:.4}")).collect();
        println!("  {}", row.join("  "));
    }
    let best = wow_assignment(&q1, &q2)?;
    println!("matching {:?}", best.permutation);
    println!("W_W = {:.6}", best.value);
    Ok(())
}
