//! Wasserstein distance over the Wasserstein space.
//!
//! Between two empirical laws with `n` members each this is an `n x n`
//! assignment problem whose costs are the pairwise 1-Wasserstein distances
//! between members.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::EmpiricalLaw;
use crate::ot1d::{solve_assignment, AssignmentResult, CostMatrix, StepCdf};

fn check_sizes(q1: &EmpiricalLaw, q2: &EmpiricalLaw) -> Result<()> {
    if q1.len() != q2.len() {
        return Err(Error::shape(format!(
            "laws have {} and {} members",
            q1.len(),
            q2.len()
        )));
    }
    Ok(())
}

/// Entry `(i, j)` is `W1(q1[i], q2[j])`.
pub fn pairwise_wasserstein_matrix(q1: &EmpiricalLaw, q2: &EmpiricalLaw) -> Result<CostMatrix> {
    check_sizes(q1, q2)?;
    let n = q1.len();
    let c1: Vec<StepCdf> = q1.members().par_iter().map(StepCdf::new).collect();
    let c2: Vec<StepCdf> = q2.members().par_iter().map(StepCdf::new).collect();
    let entries: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|k| c1[k / n].w1(&c2[k % n]))
        .collect();
    if let Some(k) = entries.iter().position(|c| !c.is_finite()) {
        return Err(Error::Numerical(format!(
            "distance between members {} and {} is {}",
            k / n,
            k % n,
            entries[k]
        )));
    }
    CostMatrix::new(n, entries)
}

/// Optimal matching of members together with its cost.
pub fn wow_assignment(q1: &EmpiricalLaw, q2: &EmpiricalLaw) -> Result<AssignmentResult> {
    solve_assignment(&pairwise_wasserstein_matrix(q1, q2)?)
}

/// Exact Wasserstein-over-Wasserstein distance between two empirical laws.
pub fn wow_distance(q1: &EmpiricalLaw, q2: &EmpiricalLaw) -> Result<f64> {
    Ok(wow_assignment(q1, q2)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::DiscreteMeasure;

    fn diracs(xs: &[f64]) -> EmpiricalLaw {
        EmpiricalLaw::with_hull_domain(xs.iter().map(|&x| DiscreteMeasure::dirac(x).unwrap()).collect()).unwrap()
    }

    #[test]
    fn dirac_members() {
        let c = pairwise_wasserstein_matrix(&diracs(&[0.0, 1.0]), &diracs(&[0.5, 3.0])).unwrap();
        assert_eq!(c.row(0), &[0.5, 3.0]);
        assert_eq!(c.row(1), &[0.5, 2.0]);
        assert_eq!(wow_distance(&diracs(&[0.0, 1.0]), &diracs(&[0.5, 3.0])).unwrap(), 1.25);
    }

    #[test]
    fn identical_laws() {
        let q = diracs(&[0.1, 0.4, 0.2]);
        let c = pairwise_wasserstein_matrix(&q, &q).unwrap();
        assert!((0..3).all(|i| c.get(i, i) == 0.0));
        assert_eq!(wow_distance(&q, &q).unwrap(), 0.0);
    }

    #[test]
    fn size_mismatch() {
        let err = wow_distance(&diracs(&[0.0]), &diracs(&[0.0, 1.0])).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
