//! Discrete measures, laws of random measures and their samplers.
//!
//! A [`DiscreteMeasure`] is one realization of a random probability on an
//! interval of the real line. An [`EmpiricalLaw`] is the uniform mixture of
//! `n` such realizations, i.e. a discrete law on the space of probabilities.
//! [`GriddedLaw`] is the same object after every atom has been snapped to a
//! fixed [`Grid`], which is the form consumed by the HIPM ascent.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::Seed;

/// Tolerance on `|sum(weights) - 1|` accepted by the constructors.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Samplers renormalize when the accumulated sum drifts further than this.
const RENORMALIZE_TOL: f64 = 1e-15;

/// A closed interval `[lo, hi]` of the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::param(format!("invalid domain [{lo}, {hi}]")));
        }
        Ok(Domain { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Smallest interval containing both.
    pub fn union(&self, other: &Domain) -> Domain {
        Domain {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    fn check(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain {
                atom: x,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }
}

/// Finitely supported probability measure on the real line.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    atoms: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    /// Builds a measure, checking that the weights are a probability vector.
    pub fn new(atoms: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        Self::validate_parts(&atoms, &weights)?;
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::param(format!("weights sum to {sum}, expected 1")));
        }
        Ok(DiscreteMeasure { atoms, weights })
    }

    /// Builds a measure from nonnegative weights of arbitrary positive total mass.
    pub fn from_unnormalized(atoms: Vec<f64>, mut weights: Vec<f64>) -> Result<Self> {
        Self::validate_parts(&atoms, &weights)?;
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0) || !sum.is_finite() {
            return Err(Error::param(format!("total mass {sum} is not positive")));
        }
        if (sum - 1.0).abs() > RENORMALIZE_TOL {
            weights.iter_mut().for_each(|w| *w /= sum);
        }
        Ok(DiscreteMeasure { atoms, weights })
    }

    fn validate_parts(atoms: &[f64], weights: &[f64]) -> Result<()> {
        if atoms.is_empty() {
            return Err(Error::param("a measure needs at least one atom"));
        }
        if atoms.len() != weights.len() {
            return Err(Error::shape(format!(
                "{} atoms but {} weights",
                atoms.len(),
                weights.len()
            )));
        }
        if let Some(x) = atoms.iter().find(|x| !x.is_finite()) {
            return Err(Error::param(format!("non-finite atom {x}")));
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
            return Err(Error::param(format!("invalid weight {w}")));
        }
        Ok(())
    }

    pub fn dirac(x: f64) -> Result<Self> {
        Self::new(vec![x], vec![1.0])
    }

    /// Uniform weights `1/len` on the given atoms (repeats allowed).
    pub fn uniform(atoms: Vec<f64>) -> Result<Self> {
        let w = 1.0 / atoms.len().max(1) as f64;
        let weights = vec![w; atoms.len()];
        Self::validate_parts(&atoms, &weights)?;
        Ok(DiscreteMeasure { atoms, weights })
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.atoms.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(x, w)| x * w).sum()
    }

    /// Integral of `f` against the measure.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    /// Smallest interval containing every atom.
    pub fn support_hull(&self) -> Domain {
        let lo = self.atoms.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.atoms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Domain { lo, hi }
    }

    pub fn check_domain(&self, domain: &Domain) -> Result<()> {
        self.atoms.iter().try_for_each(|&x| domain.check(x))
    }

    /// Same measure with every atom moved by `shift`.
    pub fn translated(&self, shift: f64) -> Self {
        DiscreteMeasure {
            atoms: self.atoms.iter().map(|x| x + shift).collect(),
            weights: self.weights.clone(),
        }
    }
}

/// Uniform law over `n` discrete measures sharing a domain.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalLaw {
    members: Vec<DiscreteMeasure>,
    domain: Domain,
}

impl EmpiricalLaw {
    pub fn new(members: Vec<DiscreteMeasure>, domain: Domain) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::param("an empirical law needs at least one member"));
        }
        members.iter().try_for_each(|p| p.check_domain(&domain))?;
        Ok(EmpiricalLaw { members, domain })
    }

    /// Law whose domain is the hull of all member atoms.
    pub fn with_hull_domain(members: Vec<DiscreteMeasure>) -> Result<Self> {
        let domain = members
            .iter()
            .map(DiscreteMeasure::support_hull)
            .reduce(|a, b| a.union(&b))
            .ok_or_else(|| Error::param("an empirical law needs at least one member"))?;
        Self::new(members, domain)
    }

    pub fn members(&self) -> &[DiscreteMeasure] {
        &self.members
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Means of the members, in member order.
    pub fn member_means(&self) -> Vec<f64> {
        self.members.iter().map(DiscreteMeasure::mean).collect()
    }

    /// Same law viewed on a larger domain.
    pub fn widen_domain(&self, domain: Domain) -> Result<Self> {
        Self::new(self.members.clone(), domain)
    }
}

/// Equally spaced points `a = Y_1 < ... < Y_M = b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    a: f64,
    b: f64,
    #[serde(rename = "M")]
    m: usize,
}

impl Grid {
    pub fn new(a: f64, b: f64, m: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::param(format!("grid needs a < b, got [{a}, {b}]")));
        }
        if m < 2 {
            return Err(Error::param(format!("grid needs at least 2 points, got {m}")));
        }
        Ok(Grid { a, b, m })
    }

    pub fn on(domain: Domain, m: usize) -> Result<Self> {
        Self::new(domain.lo, domain.hi, m)
    }

    pub fn lo(&self) -> f64 {
        self.a
    }

    pub fn hi(&self) -> f64 {
        self.b
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / (self.m - 1) as f64
    }

    pub fn domain(&self) -> Domain {
        Domain {
            lo: self.a,
            hi: self.b,
        }
    }

    pub fn point(&self, q: usize) -> f64 {
        if q + 1 == self.m {
            self.b
        } else {
            self.a + q as f64 * self.step()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.m).map(|q| self.point(q)).collect()
    }

    /// Index of the grid point nearest to `x`; ties go to the lower index.
    pub fn nearest_index(&self, x: f64) -> Result<usize> {
        self.domain().check(x)?;
        let t = (x - self.a) / self.step();
        let below = t.floor();
        let mut q = below as usize;
        if t - below > 0.5 {
            q += 1;
        }
        Ok(q.min(self.m - 1))
    }

    /// Default resolution `ceil(min(sqrt n, sqrt m))` clamped to `[32, 512]`.
    pub fn default_resolution(n: usize, m: usize) -> usize {
        let r = (n.min(m) as f64).sqrt().ceil() as usize;
        r.clamp(32, 512)
    }
}

/// Snaps every atom of `p` to its nearest grid point and returns the weight row.
pub fn project_to_grid(p: &DiscreteMeasure, grid: &Grid) -> Result<Vec<f64>> {
    let mut row = vec![0.0; grid.len()];
    for (x, w) in p.iter() {
        row[grid.nearest_index(x)?] += w;
    }
    Ok(row)
}

/// [`project_to_grid`] returned as a measure on the grid points carrying mass.
pub fn project_measure(p: &DiscreteMeasure, grid: &Grid) -> Result<DiscreteMeasure> {
    let row = project_to_grid(p, grid)?;
    let (atoms, weights) = row
        .iter()
        .enumerate()
        .filter(|(_, w)| **w > 0.0)
        .map(|(q, w)| (grid.point(q), *w))
        .unzip();
    DiscreteMeasure::new(atoms, weights)
}

/// `n x M` weights on a common grid, one row per member.
#[derive(Debug, Clone, PartialEq)]
pub struct GriddedLaw {
    grid: Grid,
    n: usize,
    weights: Vec<f64>,
}

impl GriddedLaw {
    /// `weights` is row-major with `grid.len()` columns.
    pub fn new(grid: Grid, weights: Vec<f64>) -> Result<Self> {
        let m = grid.len();
        if weights.is_empty() || !weights.len().is_multiple_of(m) {
            return Err(Error::shape(format!(
                "{} weights do not form rows of length {m}",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
            return Err(Error::param(format!("invalid weight {w}")));
        }
        let n = weights.len() / m;
        for (i, row) in weights.chunks(m).enumerate() {
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > WEIGHT_SUM_TOL {
                return Err(Error::param(format!("row {i} sums to {s}, expected 1")));
            }
        }
        Ok(GriddedLaw { grid, n, weights })
    }

    /// Projects every member of `law` onto `grid`.
    pub fn from_law(law: &EmpiricalLaw, grid: &Grid) -> Result<Self> {
        let rows = law
            .members()
            .par_iter()
            .map(|p| project_to_grid(p, grid))
            .collect::<Result<Vec<_>>>()?;
        Self::new(*grid, rows.concat())
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let m = self.grid.len();
        &self.weights[i * m..(i + 1) * m]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.weights.chunks(self.grid.len())
    }

    /// Row-major weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Member `i` as a measure on the grid points.
    pub fn member(&self, i: usize) -> DiscreteMeasure {
        DiscreteMeasure {
            atoms: self.grid.points(),
            weights: self.row(i).to_vec(),
        }
    }
}

/// One component of a finite mixture of uniforms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformComponent {
    pub weight: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Base measures supported by the samplers.
///
/// Uniforms and uniform mixtures cover the experiments; `Empirical` lets any
/// finitely supported measure be used as a base. New variants must provide a
/// sampler and a CDF.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseMeasure {
    Uniform { lo: f64, hi: f64 },
    UniformMixture(Vec<UniformComponent>),
    Empirical(DiscreteMeasure),
}

impl BaseMeasure {
    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        let b = BaseMeasure::Uniform { lo, hi };
        b.validate()?;
        Ok(b)
    }

    pub fn mixture(components: Vec<UniformComponent>) -> Result<Self> {
        let b = BaseMeasure::UniformMixture(components);
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let interval_ok = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && lo <= hi;
        match self {
            BaseMeasure::Uniform { lo, hi } => {
                if !interval_ok(*lo, *hi) {
                    return Err(Error::param(format!("invalid uniform [{lo}, {hi}]")));
                }
            }
            BaseMeasure::UniformMixture(cs) => {
                if cs.is_empty() {
                    return Err(Error::param("mixture without components"));
                }
                let total: f64 = cs.iter().map(|c| c.weight).sum();
                if cs.iter().any(|c| !(c.weight >= 0.0) || !interval_ok(c.lo, c.hi))
                    || (total - 1.0).abs() > WEIGHT_SUM_TOL
                {
                    return Err(Error::param("invalid uniform mixture"));
                }
            }
            BaseMeasure::Empirical(_) => {}
        }
        Ok(())
    }

    /// Smallest interval carrying all the mass.
    pub fn support(&self) -> Domain {
        match self {
            BaseMeasure::Uniform { lo, hi } => Domain { lo: *lo, hi: *hi },
            BaseMeasure::UniformMixture(cs) => cs
                .iter()
                .filter(|c| c.weight > 0.0)
                .map(|c| Domain { lo: c.lo, hi: c.hi })
                .reduce(|a, b| a.union(&b))
                .expect("validated mixture has a component"),
            BaseMeasure::Empirical(p) => p.support_hull(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            BaseMeasure::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            BaseMeasure::UniformMixture(cs) => {
                let c = &cs[pick_index(cs.iter().map(|c| c.weight), rng)];
                c.lo + (c.hi - c.lo) * rng.random::<f64>()
            }
            BaseMeasure::Empirical(p) => p.atoms()[pick_index(p.weights().iter().copied(), rng)],
        }
    }

    /// `P(X <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        fn uniform_cdf(lo: f64, hi: f64, x: f64) -> f64 {
            if x < lo {
                0.0
            } else if x >= hi {
                1.0
            } else {
                (x - lo) / (hi - lo)
            }
        }
        match self {
            BaseMeasure::Uniform { lo, hi } => uniform_cdf(*lo, *hi, x),
            BaseMeasure::UniformMixture(cs) => cs
                .iter()
                .map(|c| c.weight * uniform_cdf(c.lo, c.hi, x))
                .sum::<f64>()
                .min(1.0),
            BaseMeasure::Empirical(p) => p
                .iter()
                .filter(|(a, _)| *a <= x)
                .map(|(_, w)| w)
                .sum::<f64>()
                .min(1.0),
        }
    }
}

fn pick_index<R: Rng + ?Sized>(weights: impl Iterator<Item = f64> + Clone, rng: &mut R) -> usize {
    let total: f64 = weights.clone().sum();
    let u = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (i, w) in weights.enumerate() {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        last = i;
        if u < acc {
            return i;
        }
    }
    last
}

/// Concentration and base measure of a Dirichlet process.
#[derive(Debug, Clone, PartialEq)]
pub struct DpParams {
    alpha: f64,
    base: BaseMeasure,
}

impl DpParams {
    pub fn new(alpha: f64, base: BaseMeasure) -> Result<Self> {
        check_alpha(alpha)?;
        base.validate()?;
        Ok(DpParams { alpha, base })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn base(&self) -> &BaseMeasure {
        &self.base
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!("concentration must be positive, got {alpha}")))
    }
}

fn check_count(name: &str, n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::param(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

/// First `N` stick-breaking weights and the mass left on the stick.
#[derive(Debug, Clone, PartialEq)]
pub struct StickBreaks {
    pub weights: Vec<f64>,
    pub residual: f64,
}

/// Beta(1, alpha) by inversion of `1 - (1 - v)^alpha`.
fn beta_one_alpha(u: f64, alpha: f64) -> f64 {
    1.0 - (1.0 - u).powf(1.0 / alpha)
}

/// Stick-breaking weights driven by explicit uniforms in `[0, 1)`.
pub fn stick_breaks_from_uniforms(alpha: f64, uniforms: &[f64]) -> Result<StickBreaks> {
    check_alpha(alpha)?;
    check_count("number of sticks", uniforms.len())?;
    let mut stick = 1.0;
    let weights: Vec<f64> = uniforms
        .iter()
        .map(|&u| {
            let v = beta_one_alpha(u, alpha);
            let j = v * stick;
            stick *= 1.0 - v;
            j
        })
        .collect();
    let residual = (1.0 - weights.iter().sum::<f64>()).clamp(0.0, 1.0);
    Ok(StickBreaks { weights, residual })
}

pub fn sample_stick_breaking_weights<R: Rng + ?Sized>(
    alpha: f64,
    n: usize,
    rng: &mut R,
) -> Result<StickBreaks> {
    check_alpha(alpha)?;
    check_count("number of sticks", n)?;
    let uniforms: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    stick_breaks_from_uniforms(alpha, &uniforms)
}

fn sample_atoms<R: Rng + ?Sized>(base: &BaseMeasure, n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| base.sample(rng)).collect()
}

/// Truncated stick-breaking: `N - 1` sticks plus the remainder on the last atom.
pub fn sample_truncated_stick_breaking<R: Rng + ?Sized>(
    params: &DpParams,
    n: usize,
    rng: &mut R,
) -> Result<DiscreteMeasure> {
    check_count("number of atoms", n)?;
    let atoms = sample_atoms(&params.base, n, rng);
    let mut weights = if n > 1 {
        sample_stick_breaking_weights(params.alpha, n - 1, rng)?.weights
    } else {
        Vec::new()
    };
    let last = 1.0 - weights.iter().sum::<f64>();
    weights.push(last.max(0.0));
    DiscreteMeasure::from_unnormalized(atoms, weights)
}

/// Symmetric Dirichlet(`a`, ..., `a`) draw of length `n`.
///
/// Gamma variates are generated in log space (`G_a = G_{a+1} U^{1/a}`) so
/// that tiny shapes never produce an all-zero vector.
pub fn sample_symmetric_dirichlet<R: Rng + ?Sized>(a: f64, n: usize, rng: &mut R) -> Result<Vec<f64>> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::param(format!("Dirichlet shape must be positive, got {a}")));
    }
    check_count("Dirichlet dimension", n)?;
    let gamma = Gamma::new(a + 1.0, 1.0).map_err(|e| Error::param(e.to_string()))?;
    let logs: Vec<f64> = (0..n)
        .map(|_| {
            let g: f64 = gamma.sample(rng);
            let u = 1.0 - rng.random::<f64>();
            g.ln() + u.ln() / a
        })
        .collect();
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut w: Vec<f64> = logs.iter().map(|l| (l - max).exp()).collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    Ok(w)
}

/// Dirichlet multinomial process: `N` iid atoms with Dirichlet(alpha/N) jumps.
pub fn sample_dirichlet_multinomial<R: Rng + ?Sized>(
    params: &DpParams,
    n: usize,
    rng: &mut R,
) -> Result<DiscreteMeasure> {
    check_count("number of atoms", n)?;
    let atoms = sample_atoms(&params.base, n, rng);
    let weights = sample_symmetric_dirichlet(params.alpha / n as f64, n, rng)?;
    DiscreteMeasure::from_unnormalized(atoms, weights)
}

/// `m` exchangeable draws from a DP(alpha, P0) realization via the Pólya urn.
pub fn sample_dp_marginals_polya<R: Rng + ?Sized>(
    params: &DpParams,
    m: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    check_count("number of draws", m)?;
    let mut draws = Vec::with_capacity(m);
    for k in 0..m {
        let fresh = k == 0 || rng.random::<f64>() * (params.alpha + k as f64) < params.alpha;
        let x = if fresh {
            params.base.sample(rng)
        } else {
            draws[rng.random_range(0..k)]
        };
        draws.push(x);
    }
    Ok(draws)
}

/// Empirical measure of `N` Pólya-urn draws, weights exactly `1/N`.
pub fn hierarchical_empirical_measure<R: Rng + ?Sized>(
    params: &DpParams,
    n: usize,
    rng: &mut R,
) -> Result<DiscreteMeasure> {
    let atoms = sample_dp_marginals_polya(params, n, rng)?;
    DiscreteMeasure::uniform(atoms)
}

/// `n` independent hierarchical empirical measures with `m` atoms each.
///
/// Member `i` is drawn from `seed.child(i)`, so the first members do not
/// change when `n` grows.
pub fn empirical_hierarchical_estimator(
    params: &DpParams,
    n: usize,
    m: usize,
    seed: Seed,
) -> Result<EmpiricalLaw> {
    check_count("number of members", n)?;
    check_count("number of atoms", m)?;
    let members = (0..n as u64)
        .into_par_iter()
        .map(|i| hierarchical_empirical_measure(params, m, &mut seed.child(i).rng()))
        .collect::<Result<Vec<_>>>()?;
    EmpiricalLaw::new(members, params.base.support())
}

/// Finite-dimensional approximations of the Dirichlet process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Approximation {
    DirichletMultinomial,
    TruncatedStickBreaking,
    HierarchicalEmpirical,
}

impl Approximation {
    pub const ALL: [Approximation; 3] = [
        Approximation::DirichletMultinomial,
        Approximation::TruncatedStickBreaking,
        Approximation::HierarchicalEmpirical,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Approximation::DirichletMultinomial => "dirichlet-multinomial",
            Approximation::TruncatedStickBreaking => "truncated-stick-breaking",
            Approximation::HierarchicalEmpirical => "hierarchical-empirical",
        }
    }

    /// One realization with `n_atoms` atoms.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        params: &DpParams,
        n_atoms: usize,
        rng: &mut R,
    ) -> Result<DiscreteMeasure> {
        match self {
            Approximation::DirichletMultinomial => sample_dirichlet_multinomial(params, n_atoms, rng),
            Approximation::TruncatedStickBreaking => {
                sample_truncated_stick_breaking(params, n_atoms, rng)
            }
            Approximation::HierarchicalEmpirical => hierarchical_empirical_measure(params, n_atoms, rng),
        }
    }

    /// Empirical law of `members` independent realizations.
    pub fn law(&self, params: &DpParams, n_atoms: usize, members: usize, seed: Seed) -> Result<EmpiricalLaw> {
        check_count("number of members", members)?;
        let ms = (0..members as u64)
            .into_par_iter()
            .map(|i| self.sample(params, n_atoms, &mut seed.child(i).rng()))
            .collect::<Result<Vec<_>>>()?;
        EmpiricalLaw::new(ms, params.base.support())
    }
}

impl std::fmt::Display for Approximation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
