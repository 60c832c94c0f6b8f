//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use hipm_lab::measures::{DiscreteMeasure, EmpiricalLaw, Grid, GriddedLaw};
use hipm_lab::Seed;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;

pub fn rng(seed: u64) -> hipm_lab::seed::Rng {
    Seed(seed).rng()
}

/// `x * 2^1074` as an exact integer.
pub fn exact_int(x: f64) -> BigInt {
    assert!(x.is_finite() && x >= 0.0);
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if raw_exp == 0 {
        BigInt::from(frac)
    } else {
        BigInt::from(frac | (1u64 << 52)) << (raw_exp - 1) as usize
    }
}

/// Nearest double to `s * 2^-1074`, ties to even.
pub fn round_exact(s: &BigInt) -> f64 {
    let bits = s.bits();
    if bits <= 53 {
        return s.to_u64().unwrap() as f64 * 2f64.powi(-1074);
    }
    let shift = bits - 53;
    let mut q: BigInt = s >> shift as usize;
    let rem: BigInt = s - (&q << shift as usize);
    let half = BigInt::one() << (shift - 1) as usize;
    if rem > half || (rem == half && q.bit(0)) {
        q += 1;
    }
    q.to_u64().unwrap() as f64 * 2f64.powi(shift as i32 - 1074)
}

/// The average of the terms with their sum rounded once.
pub fn exact_mean(terms: &[f64]) -> f64 {
    let s: BigInt = terms.iter().map(|&x| exact_int(x)).sum();
    round_exact(&s) / terms.len() as f64
}

/// Minimum over all `n!` permutations of the exact sum of selected costs,
/// reported as an average.
pub fn brute_force_assignment(cost: &[Vec<f64>]) -> f64 {
    let n = cost.len();
    let best = (0..n)
        .permutations(n)
        .map(|p| p.iter().enumerate().map(|(i, &j)| exact_int(cost[i][j])).sum::<BigInt>())
        .min()
        .unwrap();
    round_exact(&best) / n as f64
}

/// Random measure with `k` atoms in `[lo, hi]` and random positive weights.
pub fn random_measure(r: &mut impl Rng, k: usize, lo: f64, hi: f64) -> DiscreteMeasure {
    let atoms = (0..k).map(|_| r.random_range(lo..=hi)).collect();
    let weights = (0..k).map(|_| r.random_range(0.05..1.0)).collect();
    DiscreteMeasure::from_unnormalized(atoms, weights).unwrap()
}

/// Law of `n` random measures on `[0, 1]` with up to `max_atoms` atoms each.
pub fn random_law(r: &mut impl Rng, n: usize, max_atoms: usize) -> EmpiricalLaw {
    let members = (0..n)
        .map(|_| {
            let k = r.random_range(1..=max_atoms);
            random_measure(r, k, 0.0, 1.0)
        })
        .collect();
    EmpiricalLaw::new(members, hipm_lab::measures::Domain::new(0.0, 1.0).unwrap()).unwrap()
}

/// Random gridded law whose rows have `support` nonzero entries.
pub fn random_gridded(r: &mut impl Rng, grid: Grid, n: usize, support: usize) -> GriddedLaw {
    let m = grid.len();
    let mut weights = vec![0.0; n * m];
    for i in 0..n {
        let raw: Vec<(usize, f64)> = (0..support)
            .map(|_| (r.random_range(0..m), r.random_range(0.05..1.0)))
            .collect();
        let total: f64 = raw.iter().map(|(_, w)| w).sum();
        for (q, w) in raw {
            weights[i * m + q] += w / total;
        }
        let s: f64 = weights[i * m..(i + 1) * m].iter().sum();
        weights[i * m..(i + 1) * m].iter_mut().for_each(|w| *w /= s);
    }
    GriddedLaw::new(grid, weights).unwrap()
}

/// `∫ |F1 - F2|` by midpoint quadrature on `[lo, hi]`, CDFs evaluated by
/// direct summation over atoms.
pub fn quadrature_w1(p1: &DiscreteMeasure, p2: &DiscreteMeasure, lo: f64, hi: f64, points: usize) -> f64 {
    let cdf = |p: &DiscreteMeasure, x: f64| p.iter().filter(|&(a, _)| a <= x).map(|(_, w)| w).sum::<f64>();
    let h = (hi - lo) / points as f64;
    (0..points)
        .map(|k| {
            let x = lo + (k as f64 + 0.5) * h;
            (cdf(p1, x) - cdf(p2, x)).abs()
        })
        .sum::<f64>()
        * h
}

/// Exact `∫ |F1 - F2|` by sorting all breakpoints and summing rectangles.
pub fn exact_w1(p1: &DiscreteMeasure, p2: &DiscreteMeasure) -> f64 {
    let cdf = |p: &DiscreteMeasure, x: f64| p.iter().filter(|&(a, _)| a <= x).map(|(_, w)| w).sum::<f64>();
    let mut xs: Vec<f64> = p1.atoms().iter().chain(p2.atoms()).copied().collect();
    xs.sort_by(f64::total_cmp);
    xs.windows(2)
        .map(|w| (cdf(p1, w[0]) - cdf(p2, w[0])).abs() * (w[1] - w[0]))
        .sum()
}
