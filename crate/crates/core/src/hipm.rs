//! Lipschitz hierarchical IPM on an interval.
//!
//! For a test function `f` the objective is the 1-D Wasserstein distance
//! between the empirical laws of the scalars `P_i(f)`:
//!
//! ```text
//! G(f) = min_σ (1/n) Σ_i | Σ_q (w1[i,q] - w2[σ(i),q]) f_q |
//! ```
//!
//! `f` lives on a grid and is parametrized by its slopes `g ∈ [-1, 1]^{M-1}`
//! (`f_1 = 0`, `f_{q+1} = f_q + Δx g_q`), which turns the Lipschitz
//! constraint into a box. `G` is piecewise linear, so the maximization is a
//! projected gradient ascent with backtracking from the largest feasible
//! step, restarted from several initial slopes.

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{EmpiricalLaw, Grid, GriddedLaw};
use crate::ot1d::ot_uniform_1d_sorted;
use crate::seed::Seed;

/// A 1-Lipschitz function on a grid, stored by its slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzProfile {
    grid: Grid,
    slopes: Vec<f64>,
    values: Vec<f64>,
}

fn cumulative_values(slopes: &[f64], dx: f64) -> Vec<f64> {
    let mut f = Vec::with_capacity(slopes.len() + 1);
    let mut acc = 0.0;
    f.push(acc);
    for g in slopes {
        acc += dx * g;
        f.push(acc);
    }
    f
}

impl LipschitzProfile {
    pub fn new(grid: Grid, slopes: Vec<f64>) -> Result<Self> {
        if slopes.len() + 1 != grid.len() {
            return Err(Error::shape(format!(
                "{} slopes for a grid of {} points",
                slopes.len(),
                grid.len()
            )));
        }
        if let Some(g) = slopes.iter().find(|g| !(g.abs() <= 1.0)) {
            return Err(Error::param(format!("slope {g} violates the box [-1, 1]")));
        }
        let values = cumulative_values(&slopes, grid.step());
        Ok(LipschitzProfile { grid, slopes, values })
    }

    /// `f(x) = x - a`.
    pub fn identity(grid: Grid) -> Self {
        Self::new(grid, vec![1.0; grid.len() - 1]).expect("unit slopes are feasible")
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    /// Values on the grid points, `f[0] = 0`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Piecewise-linear interpolation between grid values.
    ///
    /// Every piece has slope in `[-1, 1]`, so this is 1-Lipschitz on `[a, b]`.
    /// Points outside the grid are clamped to the nearest end.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(self.grid.lo(), self.grid.hi());
        let dx = self.grid.step();
        let k = (((x - self.grid.lo()) / dx).floor() as usize).min(self.slopes.len() - 1);
        self.values[k] + (x - self.grid.point(k)) * self.slopes[k]
    }
}

/// Which slope enters the sufficient-increase test of the line search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SufficientIncrease {
    /// `aᵀ∇Ĝ` with `a` the projected direction.
    Projected,
    /// `|∇Ĝ|²`, the unprojected gradient norm.
    Raw,
}

/// Parameters of the restarted projected ascent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AscentConfig {
    pub n_init: usize,
    pub n_step: usize,
    pub epsilon: f64,
    pub include_identity_init: bool,
    pub seed: u64,
    pub sufficient_increase: SufficientIncrease,
    /// Keep per-iteration traces in the result.
    pub record_trace: bool,
}

impl Default for AscentConfig {
    fn default() -> Self {
        AscentConfig {
            n_init: 8,
            n_step: 500,
            epsilon: 1e-7,
            include_identity_init: true,
            seed: 0,
            sufficient_increase: SufficientIncrease::Projected,
            record_trace: false,
        }
    }
}

impl AscentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_init == 0 || self.n_step == 0 {
            return Err(Error::param("n_init and n_step must be at least 1"));
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::param(format!("epsilon must be nonnegative, got {}", self.epsilon)));
        }
        Ok(())
    }
}

/// Per-member integrals `s_i = Σ_q w[i,q] f_q`.
pub fn scalarize(law: &GriddedLaw, f: &[f64]) -> Result<Vec<f64>> {
    if f.len() != law.grid().len() {
        return Err(Error::shape(format!(
            "test function has {} values for a grid of {} points",
            f.len(),
            law.grid().len()
        )));
    }
    Ok(law
        .rows()
        .map(|row| row.iter().zip(f).map(|(w, v)| w * v).sum())
        .collect())
}

fn check_pair(q1: &GriddedLaw, q2: &GriddedLaw) -> Result<()> {
    if q1.grid() != q2.grid() {
        return Err(Error::shape("laws live on different grids"));
    }
    if q1.len() != q2.len() {
        return Err(Error::shape(format!(
            "laws have {} and {} members",
            q1.len(),
            q2.len()
        )));
    }
    Ok(())
}

/// Objective value and the member matching realizing it.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveValue {
    pub value: f64,
    /// Member `i` of the first law is matched to `permutation[i]` of the second.
    pub permutation: Vec<usize>,
}

pub fn objective_g(q1: &GriddedLaw, q2: &GriddedLaw, f: &[f64]) -> Result<ObjectiveValue> {
    check_pair(q1, q2)?;
    let r = ot_uniform_1d_sorted(&scalarize(q1, f)?, &scalarize(q2, f)?)?;
    Ok(ObjectiveValue {
        value: r.value,
        permutation: r.permutation,
    })
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Gradient of `G` in `f` on the current facet; `sign(0) = 0`.
pub fn gradient_g(q1: &GriddedLaw, q2: &GriddedLaw, f: &[f64]) -> Result<Vec<f64>> {
    check_pair(q1, q2)?;
    let pair = SparsePair::new(q1, q2);
    Ok(pair.gradient(&pair.evaluate(f)?))
}

/// `Aᵀ ∇G`: entry `k` is `Δx Σ_{q > k} ∇G_q`.
pub fn chain_to_slopes(grad_f: &[f64], dx: f64) -> Vec<f64> {
    let m = grad_f.len();
    let mut out = vec![0.0; m.saturating_sub(1)];
    let mut suffix = 0.0;
    for k in (0..m.saturating_sub(1)).rev() {
        suffix += grad_f[k + 1];
        out[k] = dx * suffix;
    }
    out
}

/// Gradient of `Ĝ(g) = G(Ag)` with respect to the slopes.
pub fn gradient_ghat(q1: &GriddedLaw, q2: &GriddedLaw, profile: &LipschitzProfile) -> Result<Vec<f64>> {
    if profile.grid() != q1.grid() {
        return Err(Error::shape("profile and laws use different grids"));
    }
    let grad = gradient_g(q1, q2, profile.values())?;
    Ok(chain_to_slopes(&grad, profile.grid().step()))
}

/// Rows of a gridded law with the zeros dropped.
struct SparseRows {
    start: Vec<usize>,
    col: Vec<usize>,
    w: Vec<f64>,
}

impl SparseRows {
    fn new(law: &GriddedLaw) -> Self {
        let mut start = vec![0];
        let (mut col, mut w) = (Vec::new(), Vec::new());
        for row in law.rows() {
            for (q, &x) in row.iter().enumerate() {
                if x != 0.0 {
                    col.push(q);
                    w.push(x);
                }
            }
            start.push(col.len());
        }
        SparseRows { start, col, w }
    }

    fn range(&self, i: usize) -> std::ops::Range<usize> {
        self.start[i]..self.start[i + 1]
    }

    fn scalarize(&self, f: &[f64]) -> Vec<f64> {
        (0..self.start.len() - 1)
            .map(|i| self.range(i).map(|k| self.w[k] * f[self.col[k]]).sum())
            .collect()
    }

    fn accumulate(&self, i: usize, scale: f64, out: &mut [f64]) {
        for k in self.range(i) {
            out[self.col[k]] += scale * self.w[k];
        }
    }
}

struct Evaluation {
    value: f64,
    permutation: Vec<usize>,
    s1: Vec<f64>,
    s2: Vec<f64>,
}

struct SparsePair {
    r1: SparseRows,
    r2: SparseRows,
    n: usize,
    m: usize,
}

impl SparsePair {
    fn new(q1: &GriddedLaw, q2: &GriddedLaw) -> Self {
        SparsePair {
            r1: SparseRows::new(q1),
            r2: SparseRows::new(q2),
            n: q1.len(),
            m: q1.grid().len(),
        }
    }

    fn evaluate(&self, f: &[f64]) -> Result<Evaluation> {
        if f.len() != self.m {
            return Err(Error::shape(format!(
                "test function has {} values for a grid of {} points",
                f.len(),
                self.m
            )));
        }
        let s1 = self.r1.scalarize(f);
        let s2 = self.r2.scalarize(f);
        let r = ot_uniform_1d_sorted(&s1, &s2)?;
        Ok(Evaluation {
            value: r.value,
            permutation: r.permutation,
            s1,
            s2,
        })
    }

    fn gradient(&self, e: &Evaluation) -> Vec<f64> {
        let mut grad = vec![0.0; self.m];
        let scale = 1.0 / self.n as f64;
        for (i, &j) in e.permutation.iter().enumerate() {
            let s = sign(e.s1[i] - e.s2[j]);
            if s != 0.0 {
                self.r1.accumulate(i, s * scale, &mut grad);
                self.r2.accumulate(j, -s * scale, &mut grad);
            }
        }
        grad
    }
}

/// Why a restart stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    /// Expected increase `aᵀ∇Ĝ` at or below epsilon.
    Converged,
    /// `n_step` iterations done.
    MaxSteps,
    /// The projected direction admits no positive step.
    Blocked,
    /// Backtracking shrank the step below `1e-14 t_max`.
    LineSearch,
}

/// One accepted ascent step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub restart: usize,
    pub iteration: usize,
    pub value: f64,
    pub step: f64,
}

#[derive(Debug, Clone)]
pub struct RestartOutcome {
    pub restart: usize,
    pub initial_value: f64,
    pub value: f64,
    pub profile: LipschitzProfile,
    pub iterations: usize,
    pub stop: StopReason,
    pub trace: Vec<TraceRow>,
}

#[derive(Debug, Clone)]
pub struct AscentResult {
    pub best_value: f64,
    pub best_profile: LipschitzProfile,
    pub restarts: Vec<RestartOutcome>,
}

impl AscentResult {
    /// Writes all recorded traces as CSV `restart,iteration,value,step`.
    pub fn write_trace_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in self.restarts.iter().flat_map(|r| &r.trace) {
            w.serialize(row).map_err(|e| Error::Io(e.into()))?;
        }
        w.flush()?;
        Ok(())
    }
}

const LINE_SEARCH_FLOOR: f64 = 1e-14;
const BOX_SNAP: f64 = 1e-12;

fn run_restart(
    pair: &SparsePair,
    grid: &Grid,
    mut g: Vec<f64>,
    restart: usize,
    config: &AscentConfig,
) -> Result<RestartOutcome> {
    let dx = grid.step();
    let not_finite = |iteration: usize, t: f64, v: f64| {
        Error::Numerical(format!(
            "objective {v} at restart {restart}, iteration {iteration}, step {t}"
        ))
    };
    let mut cur = pair.evaluate(&cumulative_values(&g, dx))?;
    if !cur.value.is_finite() {
        return Err(not_finite(0, 0.0, cur.value));
    }
    let initial_value = cur.value;
    let mut trace = Vec::new();
    let mut stop = StopReason::MaxSteps;
    let mut iterations = 0;

    for iteration in 0..config.n_step {
        let grad = chain_to_slopes(&pair.gradient(&cur), dx);
        let mut dir = grad.clone();
        for (a, &gq) in dir.iter_mut().zip(&g) {
            if (gq >= 1.0 && *a > 0.0) || (gq <= -1.0 && *a < 0.0) {
                *a = 0.0;
            }
        }
        let expected: f64 = dir.iter().zip(&grad).map(|(a, d)| a * d).sum();
        if !expected.is_finite() {
            return Err(not_finite(iteration, 0.0, expected));
        }
        if expected <= config.epsilon {
            stop = StopReason::Converged;
            break;
        }
        let t_max = dir
            .iter()
            .zip(&g)
            .filter_map(|(&a, &gq)| match a {
                a if a > 0.0 => Some((1.0 - gq) / a),
                a if a < 0.0 => Some((-1.0 - gq) / a),
                _ => None,
            })
            .fold(f64::INFINITY, f64::min);
        if !(t_max > 0.0) || !t_max.is_finite() {
            stop = StopReason::Blocked;
            break;
        }
        let slope = match config.sufficient_increase {
            SufficientIncrease::Projected => expected,
            SufficientIncrease::Raw => grad.iter().map(|d| d * d).sum(),
        };

        let mut t = t_max;
        let accepted = loop {
            let cand: Vec<f64> = g
                .iter()
                .zip(&dir)
                .map(|(&gq, &a)| {
                    let x = (gq + t * a).clamp(-1.0, 1.0);
                    if 1.0 - x.abs() <= BOX_SNAP {
                        x.signum()
                    } else {
                        x
                    }
                })
                .collect();
            let ev = pair.evaluate(&cumulative_values(&cand, dx))?;
            if !ev.value.is_finite() {
                return Err(not_finite(iteration, t, ev.value));
            }
            if ev.value >= cur.value + 0.5 * t * slope {
                break Some((cand, ev));
            }
            t *= 0.5;
            if t < LINE_SEARCH_FLOOR * t_max {
                break None;
            }
        };
        let Some((cand, ev)) = accepted else {
            stop = StopReason::LineSearch;
            break;
        };
        debug_assert!(cand.iter().all(|x| x.abs() <= 1.0));
        debug_assert!(ev.value >= cur.value);
        g = cand;
        cur = ev;
        iterations = iteration + 1;
        if config.record_trace {
            trace.push(TraceRow {
                restart,
                iteration,
                value: cur.value,
                step: t,
            });
        }
    }

    Ok(RestartOutcome {
        restart,
        initial_value,
        value: cur.value,
        profile: LipschitzProfile::new(*grid, g)?,
        iterations,
        stop,
        trace,
    })
}

/// Initial slopes of restart `s`.
fn initial_slopes(m: usize, restart: usize, config: &AscentConfig) -> Vec<f64> {
    if restart == 0 && config.include_identity_init {
        return vec![1.0; m - 1];
    }
    let mut rng = Seed(config.seed).child(restart as u64).rng();
    (0..m - 1).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect()
}

/// Maximizes `Ĝ` over the box from `n_init` starting points.
pub fn projected_gradient_ascent(
    q1: &GriddedLaw,
    q2: &GriddedLaw,
    config: &AscentConfig,
) -> Result<AscentResult> {
    config.validate()?;
    check_pair(q1, q2)?;
    let grid = *q1.grid();
    let pair = SparsePair::new(q1, q2);
    let restarts = (0..config.n_init)
        .into_par_iter()
        .map(|s| run_restart(&pair, &grid, initial_slopes(grid.len(), s, config), s, config))
        .collect::<Result<Vec<_>>>()?;
    let best = restarts
        .iter()
        .fold(&restarts[0], |b, r| if r.value > b.value { r } else { b });
    Ok(AscentResult {
        best_value: best.value,
        best_profile: best.profile.clone(),
        restarts,
    })
}

/// `G` evaluated exactly on the original (ungridded) laws for a test function.
pub fn objective_on_laws(q1: &EmpiricalLaw, q2: &EmpiricalLaw, f: impl Fn(f64) -> f64 + Sync) -> Result<f64> {
    if q1.len() != q2.len() {
        return Err(Error::shape(format!(
            "laws have {} and {} members",
            q1.len(),
            q2.len()
        )));
    }
    let s = |q: &EmpiricalLaw| -> Vec<f64> { q.members().par_iter().map(|p| p.integrate(&f)).collect() };
    Ok(ot_uniform_1d_sorted(&s(q1), &s(q2))?.value)
}

/// Outcome of [`hipm_lip_estimate`].
#[derive(Debug, Clone)]
pub struct HipmEstimate {
    /// Best certified value: the largest objective, evaluated on the original
    /// laws, over every restart's final profile and the identity.
    pub value: f64,
    /// Best objective of the ascent on the gridded laws.
    pub gridded_value: f64,
    pub lower_bound: f64,
    pub ascent: AscentResult,
}

/// Projects both laws onto `grid`, runs the ascent, and evaluates every
/// resulting test function on the original laws.
///
/// Each candidate is a genuine 1-Lipschitz function, so the returned value is
/// a lower estimate of the distance between the original laws; it includes
/// the identity, so it never falls below [`mean_lower_bound`].
pub fn hipm_lip_estimate(
    q1: &EmpiricalLaw,
    q2: &EmpiricalLaw,
    grid: &Grid,
    config: &AscentConfig,
) -> Result<HipmEstimate> {
    let g1 = GriddedLaw::from_law(q1, grid)?;
    let g2 = GriddedLaw::from_law(q2, grid)?;
    let ascent = projected_gradient_ascent(&g1, &g2, config)?;
    let lower_bound = mean_lower_bound(q1, q2)?;
    let mut value = lower_bound;
    for r in &ascent.restarts {
        let v = objective_on_laws(q1, q2, |x| r.profile.eval(x))?;
        if !v.is_finite() {
            return Err(Error::Numerical(format!("restart {} evaluated to {v}", r.restart)));
        }
        value = value.max(v);
    }
    Ok(HipmEstimate {
        value,
        gridded_value: ascent.best_value,
        lower_bound,
        ascent,
    })
}

/// Heuristic lower approximation of the Lipschitz hierarchical IPM.
pub fn hipm_lip_distance(q1: &EmpiricalLaw, q2: &EmpiricalLaw, grid: &Grid, config: &AscentConfig) -> Result<f64> {
    Ok(hipm_lip_estimate(q1, q2, grid, config)?.value)
}

/// 1-D Wasserstein distance between the empirical laws of the member means.
pub fn mean_lower_bound(q1: &EmpiricalLaw, q2: &EmpiricalLaw) -> Result<f64> {
    if q1.len() != q2.len() {
        return Err(Error::shape(format!(
            "laws have {} and {} members",
            q1.len(),
            q2.len()
        )));
    }
    Ok(ot_uniform_1d_sorted(&q1.member_means(), &q2.member_means())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::DiscreteMeasure;

    fn grid01(m: usize) -> Grid {
        Grid::new(0.0, 1.0, m).unwrap()
    }

    fn gridded(grid: Grid, rows: &[Vec<f64>]) -> GriddedLaw {
        GriddedLaw::new(grid, rows.concat()).unwrap()
    }

    #[test]
    fn profile_values_and_eval() {
        let p = LipschitzProfile::new(grid01(5), vec![1.0, -1.0, 0.5, 0.0]).unwrap();
        assert_eq!(p.values(), &[0.0, 0.25, 0.0, 0.125, 0.125]);
        assert_eq!(p.eval(0.125), 0.125);
        assert_eq!(p.eval(1.0), 0.125);
        assert!(LipschitzProfile::new(grid01(5), vec![1.5, 0.0, 0.0, 0.0]).is_err());
        assert!(LipschitzProfile::new(grid01(5), vec![0.0; 3]).is_err());
        let id = LipschitzProfile::identity(grid01(11));
        assert!((id.eval(0.37) - 0.37).abs() < 1e-15);
    }

    #[test]
    fn scalarize_basics() {
        let law = gridded(grid01(2), &[vec![0.5, 0.5], vec![1.0, 0.0]]);
        assert_eq!(scalarize(&law, &[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
        assert_eq!(scalarize(&law, &[1.0, 0.0]).unwrap(), vec![0.5, 1.0]);
        assert_eq!(scalarize(&law, &[0.0, 1.0]).unwrap(), vec![0.5, 0.0]);
        assert!(scalarize(&law, &[0.0]).is_err());
    }

    #[test]
    fn objective_trivial_cases() {
        let q = gridded(grid01(3), &[vec![0.2, 0.3, 0.5], vec![1.0, 0.0, 0.0]]);
        let r = gridded(grid01(3), &[vec![0.0, 0.0, 1.0], vec![0.5, 0.5, 0.0]]);
        assert_eq!(objective_g(&q, &q, &[0.0, 0.3, 1.0]).unwrap().value, 0.0);
        assert!(objective_g(&q, &r, &[0.7, 0.7, 0.7]).unwrap().value.abs() < 1e-15);
        assert!(gradient_g(&q, &q, &[0.0, 0.3, 1.0]).unwrap().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn single_member_gradient() {
        let q = gridded(grid01(3), &[vec![0.2, 0.3, 0.5]]);
        let r = gridded(grid01(3), &[vec![0.6, 0.4, 0.0]]);
        let f = [0.0, 0.5, 1.0];
        // s1 = 0.65, s2 = 0.2
        let grad = gradient_g(&q, &r, &f).unwrap();
        let expect = [0.2 - 0.6, 0.3 - 0.4, 0.5];
        for (a, b) in grad.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn chain_rule_special_vectors() {
        assert_eq!(chain_to_slopes(&[0.0; 4], 0.5), vec![0.0; 3]);
        assert_eq!(chain_to_slopes(&[0.0, 0.0, 0.0, 1.0], 0.5), vec![0.5; 3]);
        assert_eq!(chain_to_slopes(&[1.0, 2.0, 3.0, 4.0], 1.0), vec![9.0, 7.0, 4.0]);
    }

    #[test]
    fn identical_laws_give_zero() {
        let q = gridded(grid01(4), &[vec![0.1, 0.2, 0.3, 0.4], vec![0.0, 0.0, 1.0, 0.0]]);
        let r = projected_gradient_ascent(&q, &q, &AscentConfig::default()).unwrap();
        assert_eq!(r.best_value, 0.0);
    }

    #[test]
    fn diracs_at_grid_ends() {
        let grid = grid01(9);
        let q1 = EmpiricalLaw::new(vec![DiscreteMeasure::dirac(0.0).unwrap()], grid.domain()).unwrap();
        let q2 = EmpiricalLaw::new(vec![DiscreteMeasure::dirac(1.0).unwrap()], grid.domain()).unwrap();
        let est = hipm_lip_estimate(&q1, &q2, &grid, &AscentConfig::default()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
        assert!((est.gridded_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_is_monotone_and_feasible() {
        let grid = grid01(6);
        let q1 = gridded(grid, &[vec![0.5, 0.0, 0.0, 0.0, 0.0, 0.5], vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0]]);
        let q2 = gridded(grid, &[vec![0.0, 0.5, 0.0, 0.5, 0.0, 0.0], vec![0.0, 0.0, 0.0, 0.0, 0.2, 0.8]]);
        let cfg = AscentConfig {
            record_trace: true,
            n_init: 4,
            ..AscentConfig::default()
        };
        let r = projected_gradient_ascent(&q1, &q2, &cfg).unwrap();
        for run in &r.restarts {
            assert!(run.profile.slopes().iter().all(|g| g.abs() <= 1.0));
            let mut prev = run.initial_value;
            for row in &run.trace {
                assert!(row.value >= prev);
                prev = row.value;
            }
            assert!(run.value >= run.initial_value);
        }
        let mut buf = Vec::new();
        r.write_trace_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("restart,iteration,value,step"));
    }

    #[test]
    fn config_validation() {
        let bad = AscentConfig {
            n_init: 0,
            ..AscentConfig::default()
        };
        assert!(bad.validate().is_err());
        let json = serde_json::to_string(&AscentConfig::default()).unwrap();
        let back: AscentConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, AscentConfig::default());
        let partial: AscentConfig = serde_json::from_str(r#"{"n_init": 3}"#).unwrap();
        assert_eq!(partial.n_init, 3);
        assert_eq!(partial.n_step, 500);
    }
}
