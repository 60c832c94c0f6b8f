//! Seeded experiment harness.
//!
//! * `fig1-left`: DP(1, Unif[-1/2, 1/2]) against DP(1, ½Unif[-1,-3/4] + ½Unif[3/4,1]),
//!   whose true distance is 5/8, for a growing number of members `n`.
//! * `fig1-right`: two independent estimators of DP(1, Unif[0, 1]); every
//!   distance decays with `n`, at different rates.
//! * `fig2-alpha`, `fig2-N`: distance between DP(α, Unif[0, 1]) and its three
//!   finite-dimensional approximations with `N` atoms, next to the analytic
//!   upper bounds.
//!
//! Every replication draws from a seed derived from `(seed, experiment, grid
//! point, replication)`, so output rows never depend on which other grid
//! points were requested or on thread scheduling.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hipm::{hipm_lip_estimate, AscentConfig};
use crate::io::fmt_f64;
use crate::measures::{
    empirical_hierarchical_estimator, Approximation, BaseMeasure, DpParams, Grid, UniformComponent,
};
use crate::oracles::{species_sampling_wow, upper_bound, Cdf};
use crate::seed::Seed;
use crate::wow::wow_distance;

pub const CONFIG_SCHEMA: u32 = 1;

/// Environment variable overriding the configured base seed.
pub const SEED_ENV: &str = "HIPM_LAB_SEED";

pub const FIG1_HEADER: &str = "n,estimator,mean,std,stderr";
pub const FIG2_HEADER: &str = "x,alpha,N,approximation,d_lip_estimate,std,upper_bound";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExperimentId {
    #[serde(rename = "fig1-left")]
    Fig1Left,
    #[serde(rename = "fig1-right")]
    Fig1Right,
    #[serde(rename = "fig2-alpha")]
    Fig2Alpha,
    #[serde(rename = "fig2-N")]
    Fig2N,
}

impl ExperimentId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentId::Fig1Left => "fig1-left",
            ExperimentId::Fig1Right => "fig1-right",
            ExperimentId::Fig2Alpha => "fig2-alpha",
            ExperimentId::Fig2N => "fig2-N",
        }
    }

    pub fn is_fig1(&self) -> bool {
        matches!(self, ExperimentId::Fig1Left | ExperimentId::Fig1Right)
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1-left" => Ok(ExperimentId::Fig1Left),
            "fig1-right" => Ok(ExperimentId::Fig1Right),
            "fig2-alpha" => Ok(ExperimentId::Fig2Alpha),
            "fig2-N" | "fig2-n" => Ok(ExperimentId::Fig2N),
            other => Err(Error::param(format!("unknown experiment `{other}`"))),
        }
    }
}

/// Parameters of one experiment run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: u32,
    pub experiment: ExperimentId,
    /// Members per law; the x axis of the fig1 experiments.
    pub n: Vec<usize>,
    /// Atoms per member of a hierarchical empirical estimator.
    pub m: usize,
    /// Grid points used by the HIPM ascent.
    #[serde(rename = "M")]
    pub grid_points: usize,
    /// Concentrations (fig2).
    pub alpha: Vec<f64>,
    /// Atoms of the approximations (fig2).
    #[serde(rename = "N")]
    pub atoms: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub ascent: AscentConfig,
}

impl ExperimentConfig {
    /// Small settings that run in minutes.
    pub fn desk(id: ExperimentId) -> Self {
        let base = ExperimentConfig {
            schema: CONFIG_SCHEMA,
            experiment: id,
            n: vec![16, 32, 64, 128, 256],
            m: 1000,
            grid_points: 128,
            alpha: vec![1.0],
            atoms: vec![50],
            replications: 8,
            seed: 20240601,
            out_dir: PathBuf::from("results"),
            ascent: AscentConfig::default(),
        };
        match id {
            ExperimentId::Fig1Left | ExperimentId::Fig1Right => base,
            ExperimentId::Fig2Alpha => ExperimentConfig {
                n: vec![64],
                alpha: vec![1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0],
                atoms: vec![50],
                replications: 4,
                ..base
            },
            ExperimentId::Fig2N => ExperimentConfig {
                n: vec![64],
                alpha: vec![50.0],
                atoms: vec![1, 2, 5, 10, 20, 50, 100, 200],
                replications: 4,
                ..base
            },
        }
    }

    /// The settings of the published figures.
    pub fn paper_scale(id: ExperimentId) -> Self {
        let desk = Self::desk(id);
        ExperimentConfig {
            n: if id.is_fig1() {
                vec![16, 32, 64, 128, 256, 512, 1024]
            } else {
                vec![256]
            },
            m: 5000,
            grid_points: 250,
            replications: if id.is_fig1() { 24 } else { 12 },
            ..desk
        }
    }

    /// Overlays the keys of a JSON document onto `self`.
    pub fn merge_json(&self, json: &str) -> Result<Self> {
        let parse_err = |e: serde_json::Error| Error::Parse {
            line: e.line() as u64,
            message: e.to_string(),
        };
        let overlay: serde_json::Value = serde_json::from_str(json).map_err(parse_err)?;
        let serde_json::Value::Object(overlay) = overlay else {
            return Err(Error::Parse {
                line: 1,
                message: "config must be a JSON object".into(),
            });
        };
        let mut doc = serde_json::to_value(self).map_err(|e| Error::param(e.to_string()))?;
        let target = doc.as_object_mut().expect("config serializes to an object");
        for (k, v) in overlay {
            if k == "ascent" {
                if let (Some(dst), serde_json::Value::Object(src)) =
                    (target.get_mut("ascent").and_then(|a| a.as_object_mut()), &v)
                {
                    for (ak, av) in src {
                        dst.insert(ak.clone(), av.clone());
                    }
                    continue;
                }
            }
            target.insert(k, v);
        }
        let cfg: ExperimentConfig = serde_json::from_value(doc).map_err(parse_err)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies `HIPM_LAB_SEED` when set.
    pub fn with_env_seed(mut self) -> Result<Self> {
        if let Ok(raw) = std::env::var(SEED_ENV) {
            self.seed = raw
                .trim()
                .parse()
                .map_err(|_| Error::param(format!("{SEED_ENV}={raw} is not an unsigned integer")))?;
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != CONFIG_SCHEMA {
            return Err(Error::param(format!(
                "unsupported config schema {}, expected {CONFIG_SCHEMA}",
                self.schema
            )));
        }
        let positive = |name: &str, v: usize| {
            if v == 0 {
                Err(Error::param(format!("{name} must be positive")))
            } else {
                Ok(())
            }
        };
        positive("m", self.m)?;
        positive("replications", self.replications)?;
        if self.grid_points < 2 {
            return Err(Error::param("M must be at least 2"));
        }
        if self.n.is_empty() || self.n.contains(&0) {
            return Err(Error::param("n must be a non-empty list of positive counts"));
        }
        if !self.experiment.is_fig1() {
            if self.alpha.is_empty() || self.alpha.iter().any(|a| !(*a > 0.0)) {
                return Err(Error::param("alpha must be a non-empty list of positive values"));
            }
            if self.atoms.is_empty() || self.atoms.contains(&0) {
                return Err(Error::param("N must be a non-empty list of positive counts"));
            }
        }
        self.ascent.validate()
    }

    fn base_seed(&self) -> Seed {
        Seed(self.seed).child_str(self.experiment.as_str())
    }

    pub fn csv_path(&self) -> PathBuf {
        self.out_dir.join(format!("{}.csv", self.experiment))
    }
}

/// Mean, sample standard deviation and standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
    pub stderr: f64,
}

impl Summary {
    pub fn of(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let std = if xs.len() > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Summary {
            mean,
            std,
            stderr: std / n.sqrt(),
        }
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::param("slope fit needs at least two paired points"));
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0)) {
        return Err(Error::param("log-log fit needs positive values"));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// The two base measures of the `fig1-left` setup.
pub fn fig1_left_bases() -> (BaseMeasure, BaseMeasure) {
    let p1 = BaseMeasure::Uniform { lo: -0.5, hi: 0.5 };
    let p2 = BaseMeasure::UniformMixture(vec![
        UniformComponent {
            weight: 0.5,
            lo: -1.0,
            hi: -0.75,
        },
        UniformComponent {
            weight: 0.5,
            lo: 0.75,
            hi: 1.0,
        },
    ]);
    (p1, p2)
}

/// One `(n, estimator)` row of a fig1 table.
#[derive(Debug, Clone, PartialEq)]
pub struct Fig1Row {
    pub n: usize,
    pub estimator: &'static str,
    pub summary: Summary,
}

/// Raw distances of one fig1 replication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig1Sample {
    pub wow: f64,
    pub hipm: f64,
    pub lower_bound: f64,
}

fn fig1_params(id: ExperimentId) -> Result<(DpParams, DpParams)> {
    match id {
        ExperimentId::Fig1Left => {
            let (p1, p2) = fig1_left_bases();
            Ok((DpParams::new(1.0, p1)?, DpParams::new(1.0, p2)?))
        }
        ExperimentId::Fig1Right => {
            let p = DpParams::new(1.0, BaseMeasure::uniform(0.0, 1.0)?)?;
            Ok((p.clone(), p))
        }
        other => Err(Error::param(format!("{other} is not a fig1 experiment"))),
    }
}

/// Draws both laws of replication `r` at size `n` and measures all distances.
pub fn fig1_replication(config: &ExperimentConfig, n: usize, r: usize) -> Result<Fig1Sample> {
    let (pa, pb) = fig1_params(config.experiment)?;
    let seed = config.base_seed().child(n as u64).child(r as u64);
    let q1 = empirical_hierarchical_estimator(&pa, n, config.m, seed.child(0))?;
    let q2 = empirical_hierarchical_estimator(&pb, n, config.m, seed.child(1))?;
    let domain = pa.base().support().union(&pb.base().support());
    let (q1, q2) = (q1.widen_domain(domain)?, q2.widen_domain(domain)?);
    let grid = Grid::on(domain, config.grid_points)?;
    let ascent = AscentConfig {
        seed: seed.child(2).0,
        ..config.ascent.clone()
    };
    let est = hipm_lip_estimate(&q1, &q2, &grid, &ascent)?;
    Ok(Fig1Sample {
        wow: wow_distance(&q1, &q2)?,
        hipm: est.value,
        lower_bound: est.lower_bound,
    })
}

/// Runs a fig1 experiment, streaming CSV rows to `out` after each `n`.
pub fn run_fig1_to<W: Write>(config: &ExperimentConfig, mut out: W) -> Result<Vec<Fig1Row>> {
    config.validate()?;
    if !config.experiment.is_fig1() {
        return Err(Error::param(format!("{} is not a fig1 experiment", config.experiment)));
    }
    let reference = match config.experiment {
        ExperimentId::Fig1Left => {
            let (p1, p2) = fig1_left_bases();
            Some(species_sampling_wow(&Cdf::of(&p1), &Cdf::of(&p2))?)
        }
        _ => None,
    };
    writeln!(out, "{FIG1_HEADER}")?;
    let mut rows = Vec::new();
    for &n in &config.n {
        let samples = (0..config.replications)
            .into_par_iter()
            .map(|r| fig1_replication(config, n, r))
            .collect::<Result<Vec<_>>>()?;
        let column = |f: fn(&Fig1Sample) -> f64| Summary::of(&samples.iter().map(f).collect::<Vec<_>>());
        let mut block = vec![
            Fig1Row {
                n,
                estimator: "wow",
                summary: column(|s| s.wow),
            },
            Fig1Row {
                n,
                estimator: "hipm",
                summary: column(|s| s.hipm),
            },
            Fig1Row {
                n,
                estimator: "lower_bound",
                summary: column(|s| s.lower_bound),
            },
        ];
        if let Some(v) = reference {
            block.push(Fig1Row {
                n,
                estimator: "reference",
                summary: Summary {
                    mean: v,
                    std: 0.0,
                    stderr: 0.0,
                },
            });
        }
        for row in &block {
            writeln!(
                out,
                "{},{},{},{},{}",
                row.n,
                row.estimator,
                fmt_f64(row.summary.mean),
                fmt_f64(row.summary.std),
                fmt_f64(row.summary.stderr)
            )?;
        }
        out.flush()?;
        rows.extend(block);
    }
    Ok(rows)
}

pub fn run_fig1(config: &ExperimentConfig) -> Result<Vec<Fig1Row>> {
    run_fig1_to(config, std::io::sink())
}

/// One `(α, N, approximation)` row of a fig2 table.
#[derive(Debug, Clone, PartialEq)]
pub struct Fig2Row {
    pub x: f64,
    pub alpha: f64,
    pub atoms: usize,
    pub approximation: Approximation,
    pub estimate: Summary,
    pub upper_bound: f64,
}

/// Distance estimates between DP(α, Unif[0,1]) and each approximation.
///
/// The DP side is a hierarchical empirical estimator with `members` members
/// of `m` atoms; the approximation side has `members` exact realizations.
/// The same DP-side law is reused for the three approximations of a
/// replication.
pub fn fig2_point(
    alpha: f64,
    atoms: usize,
    members: usize,
    m: usize,
    grid_points: usize,
    replications: usize,
    seed: Seed,
    ascent: &AscentConfig,
) -> Result<[Vec<f64>; 3]> {
    let params = DpParams::new(alpha, BaseMeasure::uniform(0.0, 1.0)?)?;
    let grid = Grid::on(params.base().support(), grid_points)?;
    let per_rep = (0..replications)
        .into_par_iter()
        .map(|r| {
            let s = seed.child(r as u64);
            let reference = empirical_hierarchical_estimator(&params, members, m, s.child(0))?;
            let mut out = [0.0; 3];
            for (k, approx) in Approximation::ALL.iter().enumerate() {
                let law = approx.law(&params, atoms, members, s.child(1 + k as u64))?;
                let cfg = AscentConfig {
                    seed: s.child(10 + k as u64).0,
                    ..ascent.clone()
                };
                out[k] = hipm_lip_estimate(&reference, &law, &grid, &cfg)?.value;
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(std::array::from_fn(|k| per_rep.iter().map(|v| v[k]).collect()))
}

/// Runs a fig2 experiment over `alpha x N`, streaming CSV rows to `out`.
pub fn run_fig2_to<W: Write>(config: &ExperimentConfig, mut out: W) -> Result<Vec<Fig2Row>> {
    config.validate()?;
    if config.experiment.is_fig1() {
        return Err(Error::param(format!("{} is not a fig2 experiment", config.experiment)));
    }
    let members = config.n[0];
    let f0 = Cdf::uniform(0.0, 1.0)?;
    writeln!(out, "{FIG2_HEADER}")?;
    let mut rows = Vec::new();
    for &alpha in &config.alpha {
        for &atoms in &config.atoms {
            let x = match config.experiment {
                ExperimentId::Fig2N => atoms as f64,
                _ => alpha,
            };
            let seed = config
                .base_seed()
                .child(alpha.to_bits())
                .child(atoms as u64);
            let estimates = fig2_point(
                alpha,
                atoms,
                members,
                config.m,
                config.grid_points,
                config.replications,
                seed,
                &config.ascent,
            )?;
            for (k, approx) in Approximation::ALL.into_iter().enumerate() {
                let row = Fig2Row {
                    x,
                    alpha,
                    atoms,
                    approximation: approx,
                    estimate: Summary::of(&estimates[k]),
                    upper_bound: upper_bound(approx, alpha, atoms, &f0)?,
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    fmt_f64(row.x),
                    fmt_f64(row.alpha),
                    row.atoms,
                    row.approximation,
                    fmt_f64(row.estimate.mean),
                    fmt_f64(row.estimate.std),
                    fmt_f64(row.upper_bound)
                )?;
                rows.push(row);
            }
            out.flush()?;
        }
    }
    Ok(rows)
}

pub fn run_fig2(config: &ExperimentConfig) -> Result<Vec<Fig2Row>> {
    run_fig2_to(config, std::io::sink())
}

#[derive(Serialize)]
struct Metadata<'a> {
    config: &'a ExperimentConfig,
    notes: Vec<&'static str>,
}

/// Runs the configured experiment, writing `<id>.csv` and `<id>.meta.json`
/// into the output directory. Returns the CSV path.
pub fn run_experiment(config: &ExperimentConfig) -> Result<PathBuf> {
    config.validate()?;
    std::fs::create_dir_all(&config.out_dir)?;
    let csv_path = config.csv_path();
    let mut notes = vec![
        "hipm: projected gradient ascent on the gridded laws; every restart's test function re-evaluated on the original laws; value is the best of those and the mean lower bound",
        "std is the sample standard deviation across replications; stderr = std / sqrt(replications)",
    ];
    if !config.experiment.is_fig1() {
        notes.push(
            "fig2: DP side is a hierarchical empirical estimator with n members of m atoms; approximation side is n exact realizations with N atoms; n is the first entry of `n`",
        );
    }
    write_metadata(&config.out_dir.join(format!("{}.meta.json", config.experiment)), &Metadata { config, notes })?;
    let mut out = BufWriter::new(File::create(&csv_path)?);
    if config.experiment.is_fig1() {
        run_fig1_to(config, &mut out)?;
    } else {
        run_fig2_to(config, &mut out)?;
    }
    out.flush()?;
    Ok(csv_path)
}

fn write_metadata(path: &Path, meta: &Metadata<'_>) -> Result<()> {
    let text = serde_json::to_string_pretty(meta).map_err(|e| Error::param(e.to_string()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_stats() {
        let s = Summary::of(&[1.0, 3.0]);
        assert_eq!(s.mean, 2.0);
        assert!((s.std - 2f64.sqrt()).abs() < 1e-15);
        assert!((s.stderr - 1.0).abs() < 1e-15);
        assert_eq!(Summary::of(&[5.0]).std, 0.0);
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [16.0, 32.0, 64.0, 128.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-0.5)).collect();
        assert!((loglog_slope(&xs, &ys).unwrap() + 0.5).abs() < 1e-12);
        assert!(loglog_slope(&[1.0], &[1.0]).is_err());
        assert!(loglog_slope(&[1.0, 2.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn config_merge_and_validation() {
        let desk = ExperimentConfig::desk(ExperimentId::Fig1Right);
        let cfg = desk
            .merge_json(r#"{"n": [4, 8], "replications": 2, "ascent": {"n_init": 2}}"#)
            .unwrap();
        assert_eq!(cfg.n, vec![4, 8]);
        assert_eq!(cfg.replications, 2);
        assert_eq!(cfg.ascent.n_init, 2);
        assert_eq!(cfg.ascent.n_step, 500);
        assert!(desk.merge_json(r#"{"schema": 2}"#).is_err());
        assert!(desk.merge_json(r#"{"bogus": 1}"#).is_err());
        assert!(desk.merge_json(r#"{"n": []}"#).is_err());
        assert!(matches!(desk.merge_json("{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn ids_round_trip() {
        for id in [
            ExperimentId::Fig1Left,
            ExperimentId::Fig1Right,
            ExperimentId::Fig2Alpha,
            ExperimentId::Fig2N,
        ] {
            assert_eq!(id.as_str().parse::<ExperimentId>().unwrap(), id);
        }
        assert!("fig3".parse::<ExperimentId>().is_err());
    }
}
