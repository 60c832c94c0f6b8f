use std::f64::consts::PI;

use hipm_lab::measures::{Approximation, BaseMeasure, DiscreteMeasure, Domain, UniformComponent};
use hipm_lab::oracles::*;

fn unit() -> Cdf {
    Cdf::uniform(0.0, 1.0).unwrap()
}

fn bases() -> Vec<BaseMeasure> {
    vec![
        BaseMeasure::uniform(0.0, 1.0).unwrap(),
        BaseMeasure::uniform(-3.0, 2.0).unwrap(),
        BaseMeasure::mixture(vec![
            UniformComponent { weight: 0.5, lo: -1.0, hi: -0.75 },
            UniformComponent { weight: 0.5, lo: 0.75, hi: 1.0 },
        ])
        .unwrap(),
        BaseMeasure::Empirical(DiscreteMeasure::new(vec![0.0, 0.3, 1.0], vec![0.2, 0.5, 0.3]).unwrap()),
    ]
}

#[test]
fn closed_forms_for_the_uniform() {
    assert!((dirmult_upper_bound(1, &unit()).unwrap() - PI / 8.0).abs() < 1e-6);
    assert!((quadratic_spread(&unit(), DEFAULT_QUADRATURE_POINTS).unwrap() - 1.0 / 6.0).abs() < 1e-6);
    assert!((stickbreaking_upper_bound(1.0, 1, &unit()).unwrap() - 1.0 / 6.0).abs() < 1e-6);
    assert!((hier_empirical_upper_bound(1.0, 1, &unit()).unwrap() - 0.27768).abs() < 1e-5);
    assert!((stickbreaking_upper_bound(1.0, 20, &unit()).unwrap() - 3.18e-7).abs() < 1e-9);
    assert!((stickbreaking_upper_bound(50.0, 50, &unit()).unwrap() - 0.1239).abs() < 1e-4);
}

#[test]
fn dirmult_and_hier_empirical_are_related() {
    for base in bases() {
        let f0 = Cdf::of(&base);
        for alpha in [0.1, 1.0, 7.5, 50.0, 1e4] {
            for n in [1, 3, 50, 1000] {
                let b1 = dirmult_upper_bound(n, &f0).unwrap();
                let b3 = hier_empirical_upper_bound(alpha, n, &f0).unwrap();
                assert!((b3 - b1 * (alpha / (alpha + 1.0)).sqrt()).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn bound_monotonicity() {
    let f0 = unit();
    let sb = |a: f64, n: usize| stickbreaking_upper_bound(a, n, &f0).unwrap();
    for n in 1..60 {
        assert!(sb(5.0, n + 1) < sb(5.0, n));
        assert!(dirmult_upper_bound(n + 1, &f0).unwrap() < dirmult_upper_bound(n, &f0).unwrap());
        assert!(hier_empirical_upper_bound(5.0, n + 1, &f0).unwrap() < hier_empirical_upper_bound(5.0, n, &f0).unwrap());
    }
    let alphas = [0.1, 0.5, 1.0, 2.0, 10.0, 100.0, 1e4];
    for w in alphas.windows(2) {
        assert!(sb(w[1], 10) > sb(w[0], 10));
        let h = |a| hier_empirical_upper_bound(a, 10, &f0).unwrap();
        assert!(h(w[1]) > h(w[0]));
        assert!(h(w[1]) < dirmult_upper_bound(10, &f0).unwrap());
    }
    for approx in Approximation::ALL {
        assert!(upper_bound(approx, 2.0, 7, &f0).unwrap() >= 0.0);
    }
}

#[test]
fn quadrature_doubling_is_stable() {
    for base in bases() {
        let f0 = Cdf::of(&base);
        let p = DEFAULT_QUADRATURE_POINTS;
        let pairs = [
            (dirmult_upper_bound_with(10, &f0, p), dirmult_upper_bound_with(10, &f0, 2 * p)),
            (stickbreaking_upper_bound_with(3.0, 4, &f0, p), stickbreaking_upper_bound_with(3.0, 4, &f0, 2 * p)),
            (hier_empirical_upper_bound_with(3.0, 10, &f0, p), hier_empirical_upper_bound_with(3.0, 10, &f0, 2 * p)),
        ];
        for (a, b) in pairs {
            assert!((a.unwrap() - b.unwrap()).abs() < 1e-6);
        }
    }
}

#[test]
fn species_identity() {
    for base in bases() {
        let f = Cdf::of(&base);
        assert_eq!(species_sampling_wow(&f, &f).unwrap(), 0.0);
    }
    let b = bases();
    let (p1, p2) = (Cdf::uniform(-0.5, 0.5).unwrap(), Cdf::of(&b[2]));
    assert!((species_sampling_wow(&p1, &p2).unwrap() - 0.625).abs() < 1e-8);
    assert_eq!(species_sampling_wow(&p1, &p2).unwrap(), species_sampling_wow(&p2, &p1).unwrap());
}

#[test]
fn cdf_boundaries() {
    for base in bases() {
        let f = Cdf::of(&base);
        let d = f.domain();
        assert_eq!(f.eval(d.lo - 1.0), 0.0);
        assert_eq!(f.eval(d.hi), 1.0);
        assert_eq!(f.eval(d.hi + 1.0), 1.0);
        let xs: Vec<f64> = (0..=200).map(|k| d.lo + d.width() * k as f64 / 200.0).collect();
        assert!(xs.windows(2).all(|w| f.eval(w[0]) <= f.eval(w[1])));
    }
    assert!(Cdf::on(&BaseMeasure::uniform(0.0, 1.0).unwrap(), Domain::new(0.5, 2.0).unwrap()).is_err());
}
