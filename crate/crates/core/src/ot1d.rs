//! Exact optimal transport on the line and exact assignment.
//!
//! On the real line the 1-Wasserstein distance is `∫ |F1 - F2|`, computed here
//! by a single sweep over the merged atoms. Between two uniform empirical
//! measures with the same number of points the optimal coupling is the
//! monotone one, so the assignment comes from sorting. General square cost
//! matrices go through a Hungarian (shortest augmenting path) solver, O(n³).

use std::io::Write;

use crate::error::{Error, Result};
use crate::measures::DiscreteMeasure;

/// Right-continuous CDF of a discrete measure, atoms merged and sorted.
#[derive(Debug, Clone)]
pub(crate) struct StepCdf {
    xs: Vec<f64>,
    cum: Vec<f64>,
}

impl StepCdf {
    pub(crate) fn new(p: &DiscreteMeasure) -> Self {
        let mut pairs: Vec<(f64, f64)> = p.iter().collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut xs: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut cum: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut acc = 0.0;
        for (x, w) in pairs {
            acc += w;
            if xs.last() == Some(&x) {
                *cum.last_mut().unwrap() = acc;
            } else {
                xs.push(x);
                cum.push(acc);
            }
        }
        StepCdf { xs, cum }
    }

    pub(crate) fn eval(&self, x: f64) -> f64 {
        let k = self.xs.partition_point(|&a| a <= x);
        if k == 0 {
            0.0
        } else {
            self.cum[k - 1]
        }
    }

    /// `∫ |F - G|` over the merged breakpoints.
    pub(crate) fn w1(&self, other: &StepCdf) -> f64 {
        let (a, b) = (self, other);
        let (mut i, mut j) = (0, 0);
        let (mut fa, mut fb) = (0.0f64, 0.0f64);
        let mut prev: Option<f64> = None;
        let mut total = 0.0;
        while i < a.xs.len() || j < b.xs.len() {
            let x = match (a.xs.get(i), b.xs.get(j)) {
                (Some(&u), Some(&v)) => u.min(v),
                (Some(&u), None) => u,
                (None, Some(&v)) => v,
                (None, None) => unreachable!(),
            };
            if let Some(p) = prev {
                total += (fa - fb).abs() * (x - p);
            }
            if a.xs.get(i) == Some(&x) {
                fa = a.cum[i];
                i += 1;
            }
            if b.xs.get(j) == Some(&x) {
                fb = b.cum[j];
                j += 1;
            }
            prev = Some(x);
        }
        total
    }
}

/// Exact 1-Wasserstein distance between two measures on the line.
pub fn wasserstein1_1d(p1: &DiscreteMeasure, p2: &DiscreteMeasure) -> Result<f64> {
    if p1.is_empty() || p2.is_empty() {
        return Err(Error::param("empty measure"));
    }
    Ok(StepCdf::new(p1).w1(&StepCdf::new(p2)))
}

/// Square matrix of nonnegative finite costs, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl CostMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("empty cost matrix"));
        }
        if entries.len() != n * n {
            return Err(Error::shape(format!(
                "{} entries do not form a {n}x{n} matrix",
                entries.len()
            )));
        }
        if let Some(c) = entries.iter().find(|c| !c.is_finite() || **c < 0.0) {
            return Err(Error::param(format!("invalid cost {c}")));
        }
        Ok(CostMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::shape("cost matrix is not square"));
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(n, entries)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        CostMatrix {
            n,
            entries: (0..n * n).map(|k| self.get(k % n, k / n)).collect(),
        }
    }

    /// Dumps the matrix as headerless CSV, one row per line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        for i in 0..self.n {
            let line: Vec<String> = self.row(i).iter().map(|c| format!("{c:.16e}")).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

/// An optimal bijection and its average cost.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentResult {
    /// Row `i` is matched to column `permutation[i]`.
    pub permutation: Vec<usize>,
    /// `(1/n) Σ_i C[i, σ(i)]`.
    pub value: f64,
}

/// Correctly rounded sum of `terms` (Shewchuk's exact partials).
pub(crate) fn exact_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for mut x in terms {
        let mut kept = 0;
        for k in 0..partials.len() {
            let mut y = partials[k];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        partials.truncate(kept);
        partials.push(x);
    }
    let Some(mut n) = partials.len().checked_sub(1) else {
        return 0.0;
    };
    let mut hi = partials[n];
    let mut lo = 0.0;
    while n > 0 {
        let x = hi;
        n -= 1;
        let y = partials[n];
        hi = x + y;
        lo = y - (hi - x);
        if lo != 0.0 {
            break;
        }
    }
    // Round half-way cases the way a single rounding of the exact sum would.
    if n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0)) {
        let y = lo * 2.0;
        let x = hi + y;
        if y == x - hi {
            hi = x;
        }
    }
    hi
}

/// Average of the selected costs.
///
/// The sum is rounded once, so every matching with the same exact total
/// reports the same value.
fn average_selected(terms: impl IntoIterator<Item = f64>, n: usize) -> f64 {
    exact_sum(terms) / n as f64
}

/// Arithmetic needed by the assignment solver.
trait Cost: Copy + PartialOrd + std::ops::Add<Output = Self> + std::ops::Sub<Output = Self> {
    const ZERO: Self;
    const INFINITY: Self;
}

impl Cost for f64 {
    const ZERO: Self = 0.0;
    const INFINITY: Self = f64::INFINITY;
}

impl Cost for i128 {
    const ZERO: Self = 0;
    const INFINITY: Self = i128::MAX / 4;
}

/// Shortest augmenting paths with potentials, `O(n^3)`.
fn hungarian<T: Cost>(n: usize, cost: impl Fn(usize, usize) -> T) -> Result<Vec<usize>> {
    // 1-based potentials, index 0 is the virtual source column.
    let mut u = vec![T::ZERO; n + 1];
    let mut v = vec![T::ZERO; n + 1];
    let mut matched_row = vec![0_usize; n + 1];
    let mut way = vec![0_usize; n + 1];

    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0;
        let mut min_slack = vec![T::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = T::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < min_slack[j] {
                    min_slack[j] = cur;
                    way[j] = j0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            if j1 == 0 {
                return Err(Error::Numerical("assignment solver found no augmenting column".into()));
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] = u[matched_row[j]] + delta;
                    v[j] = v[j] - delta;
                } else {
                    min_slack[j] = min_slack[j] - delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut permutation = vec![0; n];
    for j in 1..=n {
        permutation[matched_row[j] - 1] = j - 1;
    }
    Ok(permutation)
}

/// The costs as integers `c / 2^e` for a common exponent `e`, when they fit
/// with room for the potentials and path sums.
fn integer_costs(cost: &CostMatrix) -> Option<Vec<i128>> {
    // x = mantissa * 2^exp with an odd mantissa (or x = 0).
    let split = |x: f64| -> Option<(u64, i32)> {
        if x == 0.0 {
            return None;
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let tz = mant.trailing_zeros();
        Some((mant >> tz, exp + tz as i32))
    };
    let parts: Vec<Option<(u64, i32)>> = cost.entries.iter().map(|&x| split(x)).collect();
    let e_min = parts.iter().flatten().map(|&(_, e)| e).min().unwrap_or(0);
    let width = parts
        .iter()
        .flatten()
        .map(|&(m, e)| (64 - m.leading_zeros()) as i32 + e - e_min)
        .max()
        .unwrap_or(0);
    let headroom = 2 * (usize::BITS - cost.n.leading_zeros()) as i32 + 4;
    if width + headroom > 118 {
        return None;
    }
    Some(
        parts
            .iter()
            .map(|p| p.map_or(0, |(m, e)| (m as i128) << (e - e_min)))
            .collect(),
    )
}

/// Minimum-cost perfect matching on a square cost matrix.
///
/// The entries are rescaled to integers whenever their range allows it, so
/// the returned matching is optimal for the floating-point costs exactly
/// rather than up to rounding in the potentials.
pub fn solve_assignment(cost: &CostMatrix) -> Result<AssignmentResult> {
    let n = cost.n;
    let permutation = match integer_costs(cost) {
        Some(ints) => hungarian(n, |i, j| ints[i * n + j])?,
        None => hungarian(n, |i, j| cost.get(i, j))?,
    };
    let value = average_selected((0..n).map(|i| cost.get(i, permutation[i])), n);
    Ok(AssignmentResult { permutation, value })
}

/// Indices that sort `values`, ties kept in index order.
pub(crate) fn argsort(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    idx
}

/// Optimal matching of two equal-size point sets on the line under `|x - y|`.
///
/// The `k`-th smallest of `values1` goes to the `k`-th smallest of `values2`.
pub fn ot_uniform_1d_sorted(values1: &[f64], values2: &[f64]) -> Result<AssignmentResult> {
    if values1.len() != values2.len() {
        return Err(Error::shape(format!(
            "cannot match {} points with {}",
            values1.len(),
            values2.len()
        )));
    }
    if values1.is_empty() {
        return Err(Error::param("empty point sets"));
    }
    let o1 = argsort(values1);
    let o2 = argsort(values2);
    let mut permutation = vec![0; values1.len()];
    for (&i, &j) in o1.iter().zip(&o2) {
        permutation[i] = j;
    }
    let value = average_selected(
        permutation
            .iter()
            .enumerate()
            .map(|(i, &j)| (values1[i] - values2[j]).abs()),
        values1.len(),
    );
    Ok(AssignmentResult { permutation, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(atoms: &[f64], weights: &[f64]) -> DiscreteMeasure {
        DiscreteMeasure::new(atoms.to_vec(), weights.to_vec()).unwrap()
    }

    #[test]
    fn dirac_distance() {
        let d = wasserstein1_1d(&m(&[0.25], &[1.0]), &m(&[2.0], &[1.0])).unwrap();
        assert_eq!(d, 1.75);
    }

    #[test]
    fn two_point_versus_midpoint() {
        let d = wasserstein1_1d(&m(&[0.0, 1.0], &[0.5, 0.5]), &m(&[0.5], &[1.0])).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn repeated_atoms_merge() {
        let a = m(&[0.3, 0.3, 0.7], &[0.25, 0.25, 0.5]);
        let b = m(&[0.7, 0.3], &[0.5, 0.5]);
        assert_eq!(wasserstein1_1d(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn small_assignments() {
        let id = solve_assignment(&CostMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()).unwrap();
        assert_eq!(id.permutation, vec![0, 1]);
        assert_eq!(id.value, 0.0);
        let swap = solve_assignment(&CostMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()).unwrap();
        assert_eq!(swap.permutation, vec![1, 0]);
        assert_eq!(swap.value, 0.0);
    }

    #[test]
    fn cost_matrix_validation() {
        assert!(CostMatrix::from_rows(&[vec![0.0, 1.0]]).is_err());
        assert!(CostMatrix::from_rows(&[vec![f64::NAN]]).is_err());
        assert!(CostMatrix::from_rows(&[vec![-1.0]]).is_err());
        assert!(CostMatrix::new(0, vec![]).is_err());
    }

    #[test]
    fn sorted_matching() {
        let r = ot_uniform_1d_sorted(&[0.0, 1.0], &[1.0, 0.0]).unwrap();
        assert_eq!(r.permutation, vec![1, 0]);
        assert_eq!(r.value, 0.0);
        let same = ot_uniform_1d_sorted(&[0.2, 0.2, 0.9], &[0.2, 0.2, 0.9]).unwrap();
        assert_eq!(same.value, 0.0);
        assert_eq!(same.permutation, vec![0, 1, 2]);
        assert!(matches!(ot_uniform_1d_sorted(&[0.0], &[0.0, 1.0]), Err(Error::Shape(_))));
    }

    #[test]
    fn csv_dump() {
        let c = CostMatrix::from_rows(&[vec![0.0, 0.5], vec![0.25, 1.0]]).unwrap();
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().count(), 2);
        assert!(s.starts_with("0.0000000000000000e0,5.0000000000000000e-1"));
    }
}
