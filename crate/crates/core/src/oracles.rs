//! Closed-form ground truths and analytic upper bounds.
//!
//! Species sampling processes sharing their jump distribution are at
//! distance `W1(P1, P2)` from each other, so for two Dirichlet processes with
//! the same concentration the distance reduces to a CDF integral between the
//! base measures. The approximation bounds for the Dirichlet process are
//! integrals of the base CDF; all of them are computed by composite midpoint
//! quadrature on the support of the base.

use crate::error::{Error, Result};
use crate::measures::{Approximation, BaseMeasure, Domain};
use crate::ot1d::StepCdf;

pub const DEFAULT_QUADRATURE_POINTS: usize = 100_000;

#[derive(Debug, Clone)]
enum CdfKind {
    Base(BaseMeasure),
    Step(StepCdf),
}

/// A distribution function on `[lo, hi]`, with `F = 0` below and `F = 1` above.
#[derive(Debug, Clone)]
pub struct Cdf {
    domain: Domain,
    kind: CdfKind,
}

impl Cdf {
    /// CDF of a base measure on its own support.
    pub fn of(base: &BaseMeasure) -> Self {
        let kind = match base {
            BaseMeasure::Empirical(p) => CdfKind::Step(StepCdf::new(p)),
            other => CdfKind::Base(other.clone()),
        };
        Cdf {
            domain: base.support(),
            kind,
        }
    }

    /// Same CDF integrated over a wider interval.
    pub fn on(base: &BaseMeasure, domain: Domain) -> Result<Self> {
        let s = base.support();
        if s.lo < domain.lo || s.hi > domain.hi {
            return Err(Error::param("domain does not contain the support of the base"));
        }
        Ok(Cdf {
            domain,
            ..Self::of(base)
        })
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        Ok(Self::of(&BaseMeasure::uniform(lo, hi)?))
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            CdfKind::Base(b) => b.cdf(x),
            CdfKind::Step(s) => s.eval(x),
        }
    }
}

/// Composite midpoint rule for `∫_domain f`.
fn midpoint(domain: Domain, points: usize, f: impl Fn(f64) -> f64) -> f64 {
    let width = domain.width();
    if width == 0.0 {
        return 0.0;
    }
    let h = width / points as f64;
    (0..points)
        .map(|k| f(domain.lo + (k as f64 + 0.5) * h))
        .sum::<f64>()
        * h
}

fn check_points(points: usize) -> Result<()> {
    if points < 2 {
        return Err(Error::param(format!("need at least 2 quadrature points, got {points}")));
    }
    Ok(())
}

/// `∫ |F1 - F2|` by midpoint quadrature over the union of the domains.
pub fn wasserstein1_from_cdfs(f1: &Cdf, f2: &Cdf, quadrature_points: usize) -> Result<f64> {
    check_points(quadrature_points)?;
    let domain = f1.domain().union(&f2.domain());
    Ok(midpoint(domain, quadrature_points, |x| (f1.eval(x) - f2.eval(x)).abs()))
}

/// Exact distance between two species sampling laws with the same jump law.
///
/// Does not depend on the jumps, in particular not on the concentration of a
/// Dirichlet process.
pub fn species_sampling_wow(f1: &Cdf, f2: &Cdf) -> Result<f64> {
    wasserstein1_from_cdfs(f1, f2, DEFAULT_QUADRATURE_POINTS)
}

/// `∫ sqrt(F (1 - F))`.
pub fn sqrt_spread(f0: &Cdf, points: usize) -> Result<f64> {
    check_points(points)?;
    Ok(midpoint(f0.domain(), points, |x| {
        let u = f0.eval(x);
        (u * (1.0 - u)).max(0.0).sqrt()
    }))
}

/// `∫ F (1 - F)`, half the mean distance between two independent draws.
pub fn quadratic_spread(f0: &Cdf, points: usize) -> Result<f64> {
    check_points(points)?;
    Ok(midpoint(f0.domain(), points, |x| {
        let u = f0.eval(x);
        u * (1.0 - u)
    }))
}

fn check_alpha_n(alpha: f64, n: usize) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::param(format!("concentration must be positive, got {alpha}")));
    }
    if n == 0 {
        return Err(Error::param("number of atoms must be at least 1"));
    }
    Ok(())
}

/// Dirichlet multinomial bound `N^{-1/2} ∫ sqrt(F0 (1 - F0))`.
pub fn dirmult_upper_bound(n: usize, f0: &Cdf) -> Result<f64> {
    dirmult_upper_bound_with(n, f0, DEFAULT_QUADRATURE_POINTS)
}

pub fn dirmult_upper_bound_with(n: usize, f0: &Cdf, points: usize) -> Result<f64> {
    check_alpha_n(1.0, n)?;
    Ok(sqrt_spread(f0, points)? / (n as f64).sqrt())
}

/// Truncated stick-breaking bound `2 (α/(α+1))^N ∫ F0 (1 - F0)`.
pub fn stickbreaking_upper_bound(alpha: f64, n: usize, f0: &Cdf) -> Result<f64> {
    stickbreaking_upper_bound_with(alpha, n, f0, DEFAULT_QUADRATURE_POINTS)
}

pub fn stickbreaking_upper_bound_with(alpha: f64, n: usize, f0: &Cdf, points: usize) -> Result<f64> {
    check_alpha_n(alpha, n)?;
    let ratio = alpha / (alpha + 1.0);
    Ok(2.0 * ratio.powi(n as i32) * quadratic_spread(f0, points)?)
}

/// Hierarchical empirical bound `sqrt(α / (N (α+1))) ∫ sqrt(F0 (1 - F0))`.
pub fn hier_empirical_upper_bound(alpha: f64, n: usize, f0: &Cdf) -> Result<f64> {
    hier_empirical_upper_bound_with(alpha, n, f0, DEFAULT_QUADRATURE_POINTS)
}

pub fn hier_empirical_upper_bound_with(alpha: f64, n: usize, f0: &Cdf, points: usize) -> Result<f64> {
    check_alpha_n(alpha, n)?;
    Ok((alpha / (n as f64 * (alpha + 1.0))).sqrt() * sqrt_spread(f0, points)?)
}

/// The bound matching an approximation scheme.
pub fn upper_bound(approx: Approximation, alpha: f64, n: usize, f0: &Cdf) -> Result<f64> {
    match approx {
        Approximation::DirichletMultinomial => {
            check_alpha_n(alpha, n)?;
            dirmult_upper_bound(n, f0)
        }
        Approximation::TruncatedStickBreaking => stickbreaking_upper_bound(alpha, n, f0),
        Approximation::HierarchicalEmpirical => hier_empirical_upper_bound(alpha, n, f0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{DiscreteMeasure, UniformComponent};
    use std::f64::consts::PI;

    fn unit() -> Cdf {
        Cdf::uniform(0.0, 1.0).unwrap()
    }

    #[test]
    fn closed_form_spreads() {
        assert!((sqrt_spread(&unit(), DEFAULT_QUADRATURE_POINTS).unwrap() - PI / 8.0).abs() < 1e-8);
        assert!((quadratic_spread(&unit(), DEFAULT_QUADRATURE_POINTS).unwrap() - 1.0 / 6.0).abs() < 1e-10);
    }

    #[test]
    fn bound_values() {
        assert!((dirmult_upper_bound(1, &unit()).unwrap() - PI / 8.0).abs() < 1e-8);
        assert!((dirmult_upper_bound(64, &unit()).unwrap() - PI / 64.0).abs() < 1e-8);
        assert!((stickbreaking_upper_bound(1.0, 1, &unit()).unwrap() - 1.0 / 6.0).abs() < 1e-10);
        let b20 = stickbreaking_upper_bound(1.0, 20, &unit()).unwrap();
        assert!((b20 - 2f64.powi(-20) / 3.0).abs() < 1e-15);
        let b50 = stickbreaking_upper_bound(50.0, 50, &unit()).unwrap();
        assert!((b50 - (50.0f64 / 51.0).powi(50) / 3.0).abs() < 1e-10);
        assert!((b50 - 0.1239).abs() < 5e-4);
        let h = hier_empirical_upper_bound(1.0, 1, &unit()).unwrap();
        assert!((h - PI / 8.0 * 0.5f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn dirac_base_has_zero_bounds() {
        let dirac = Cdf::of(&BaseMeasure::Empirical(DiscreteMeasure::dirac(0.3).unwrap()));
        assert_eq!(dirmult_upper_bound(5, &dirac).unwrap(), 0.0);
        assert_eq!(stickbreaking_upper_bound(2.0, 5, &dirac).unwrap(), 0.0);
    }

    #[test]
    fn species_identity_values() {
        assert_eq!(species_sampling_wow(&unit(), &unit()).unwrap(), 0.0);
        let p1 = Cdf::uniform(-0.5, 0.5).unwrap();
        let p2 = Cdf::of(
            &BaseMeasure::mixture(vec![
                UniformComponent { weight: 0.5, lo: -1.0, hi: -0.75 },
                UniformComponent { weight: 0.5, lo: 0.75, hi: 1.0 },
            ])
            .unwrap(),
        );
        assert!((species_sampling_wow(&p1, &p2).unwrap() - 0.625).abs() < 1e-8);
        let dx = Cdf::of(&BaseMeasure::Empirical(DiscreteMeasure::dirac(0.2).unwrap()));
        let dy = Cdf::of(&BaseMeasure::Empirical(DiscreteMeasure::dirac(0.9).unwrap()));
        assert!((species_sampling_wow(&dx, &dy).unwrap() - 0.7).abs() < 1e-9);
    }

    #[test]
    fn shifted_uniform() {
        let a = Cdf::on(&BaseMeasure::uniform(0.0, 1.0).unwrap(), Domain::new(0.0, 1.25).unwrap()).unwrap();
        let b = Cdf::uniform(0.25, 1.25).unwrap();
        assert!((wasserstein1_from_cdfs(&a, &b, 10_000).unwrap() - 0.25).abs() < 1e-9);
        assert!(wasserstein1_from_cdfs(&a, &b, 1).is_err());
    }

    #[test]
    fn parameter_errors() {
        assert!(stickbreaking_upper_bound(0.0, 3, &unit()).is_err());
        assert!(hier_empirical_upper_bound(1.0, 0, &unit()).is_err());
        assert!(dirmult_upper_bound(0, &unit()).is_err());
    }
}
