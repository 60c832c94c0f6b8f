mod common;

use common::{brute_force_assignment, quadrature_w1, random_law, rng};
use hipm_lab::measures::{DiscreteMeasure, EmpiricalLaw};
use hipm_lab::ot1d::wasserstein1_1d;
use hipm_lab::wow::{pairwise_wasserstein_matrix, wow_distance};
use hipm_lab::Error;
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn identical_laws_are_at_zero() {
    let mut r = rng(1);
    let q = random_law(&mut r, 6, 5);
    assert_eq!(wow_distance(&q, &q).unwrap(), 0.0);
    let c = pairwise_wasserstein_matrix(&q, &q).unwrap();
    assert!((0..6).all(|i| c.get(i, i) == 0.0));
}

#[test]
fn symmetric_exactly() {
    let mut r = rng(2);
    for _ in 0..50 {
        let n = r.random_range(1..10);
        let (a, b) = (random_law(&mut r, n, 6), random_law(&mut r, n, 6));
        assert_eq!(wow_distance(&a, &b).unwrap(), wow_distance(&b, &a).unwrap());
    }
}

#[test]
fn triangle_inequality() {
    let mut r = rng(3);
    for _ in 0..50 {
        let n = r.random_range(1..8);
        let (a, b, c) = (random_law(&mut r, n, 5), random_law(&mut r, n, 5), random_law(&mut r, n, 5));
        let d = |x: &EmpiricalLaw, y: &EmpiricalLaw| wow_distance(x, y).unwrap();
        assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-10);
    }
}

#[test]
fn member_permutation_invariance() {
    let mut r = rng(4);
    for _ in 0..30 {
        let n = r.random_range(2..10);
        let (a, b) = (random_law(&mut r, n, 6), random_law(&mut r, n, 6));
        let mut members = b.members().to_vec();
        members.shuffle(&mut r);
        let shuffled = EmpiricalLaw::new(members, b.domain()).unwrap();
        assert_eq!(wow_distance(&a, &b).unwrap(), wow_distance(&a, &shuffled).unwrap());
    }
}

#[test]
fn single_member_collapses_to_w1() {
    let mut r = rng(5);
    for _ in 0..20 {
        let (a, b) = (random_law(&mut r, 1, 8), random_law(&mut r, 1, 8));
        let w1 = wasserstein1_1d(&a.members()[0], &b.members()[0]).unwrap();
        assert_eq!(wow_distance(&a, &b).unwrap(), w1);
    }
}

#[test]
fn matrix_matches_quadrature() {
    let mut r = rng(6);
    for _ in 0..5 {
        let (a, b) = (random_law(&mut r, 3, 6), random_law(&mut r, 3, 6));
        let c = pairwise_wasserstein_matrix(&a, &b).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let q = quadrature_w1(&a.members()[i], &b.members()[j], 0.0, 1.0, 200_000);
                assert!((c.get(i, j) - q).abs() < 1e-4, "({i},{j}): {} vs {q}", c.get(i, j));
            }
        }
    }
}

#[test]
fn value_matches_brute_force_on_the_pairwise_matrix() {
    let mut r = rng(7);
    for _ in 0..30 {
        let n = r.random_range(1..=6);
        let (a, b) = (random_law(&mut r, n, 4), random_law(&mut r, n, 4));
        let c = pairwise_wasserstein_matrix(&a, &b).unwrap();
        let rows: Vec<Vec<f64>> = (0..n).map(|i| c.row(i).to_vec()).collect();
        assert_eq!(wow_distance(&a, &b).unwrap(), brute_force_assignment(&rows));
    }
}

#[test]
fn dirac_members_give_abs_costs() {
    let xs = [0.0, 0.25, 1.0];
    let ys = [0.5, 0.75, 0.125];
    let law = |v: &[f64]| {
        EmpiricalLaw::with_hull_domain(v.iter().map(|&x| DiscreteMeasure::dirac(x).unwrap()).collect()).unwrap()
    };
    let c = pairwise_wasserstein_matrix(&law(&xs), &law(&ys)).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(c.get(i, j), (xs[i] - ys[j]).abs());
        }
    }
}

#[test]
fn member_count_mismatch_is_rejected() {
    let mut r = rng(8);
    let (a, b) = (random_law(&mut r, 2, 3), random_law(&mut r, 3, 3));
    assert!(matches!(wow_distance(&a, &b), Err(Error::Shape(_))));
}
