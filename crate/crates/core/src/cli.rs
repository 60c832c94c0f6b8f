//! Command implementations behind the `hipm-lab` binary.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::experiment::{run_experiment, ExperimentConfig, ExperimentId};
use crate::hipm::{hipm_lip_estimate, AscentConfig};
use crate::io::{fmt_significant, read_law_file};
use crate::measures::{Domain, EmpiricalLaw, Grid};
use crate::plot::{emit_svg_plot, PlotStyle};
use crate::wow::wow_distance;

/// Digits printed for distances.
pub const PRINT_DIGITS: usize = 12;

fn read_pair(file1: &Path, file2: &Path) -> Result<(EmpiricalLaw, EmpiricalLaw)> {
    let q1 = read_law_file(file1)?;
    let q2 = read_law_file(file2)?;
    if q1.len() != q2.len() {
        return Err(Error::Shape(format!(
            "{} has {} members but {} has {}",
            file1.display(),
            q1.len(),
            file2.display(),
            q2.len()
        )));
    }
    let mut domain = q1.domain().union(&q2.domain());
    if domain.width() == 0.0 {
        domain = Domain::new(domain.lo, domain.lo + 1.0)?;
    }
    Ok((q1.widen_domain(domain)?, q2.widen_domain(domain)?))
}

/// `hipm-lab wow <f1> <f2>`.
pub fn cmd_wow(file1: &Path, file2: &Path) -> Result<String> {
    let (q1, q2) = read_pair(file1, file2)?;
    Ok(fmt_significant(wow_distance(&q1, &q2)?, PRINT_DIGITS))
}

#[derive(Debug, Clone, Default)]
pub struct HipmOptions {
    /// Grid points; `None` picks the default resolution for the inputs.
    pub grid_points: Option<usize>,
    pub ascent: AscentConfig,
    pub with_lower_bound: bool,
    pub trace_csv: Option<PathBuf>,
}

/// `hipm-lab hipm <f1> <f2> [flags]`.
pub fn cmd_hipm(file1: &Path, file2: &Path, opts: &HipmOptions) -> Result<String> {
    let (q1, q2) = read_pair(file1, file2)?;
    let m = q1.members().iter().chain(q2.members()).map(|p| p.len()).min().unwrap_or(1);
    let points = opts.grid_points.unwrap_or_else(|| Grid::default_resolution(q1.len(), m));
    let grid = Grid::on(q1.domain(), points)?;
    let mut ascent = opts.ascent.clone();
    ascent.record_trace |= opts.trace_csv.is_some();
    let est = hipm_lip_estimate(&q1, &q2, &grid, &ascent)?;
    if let Some(path) = &opts.trace_csv {
        est.ascent.write_trace_csv(std::fs::File::create(path)?)?;
    }
    let mut out = fmt_significant(est.value, PRINT_DIGITS);
    if opts.with_lower_bound {
        out.push_str(&format!("\nlower_bound {}", fmt_significant(est.lower_bound, PRINT_DIGITS)));
    }
    Ok(out)
}

/// `hipm-lab experiment <id> [--config <json>] [--paper-scale]`.
pub fn cmd_experiment(
    id: ExperimentId,
    config: Option<&Path>,
    paper_scale: bool,
    out_dir: Option<&Path>,
) -> Result<PathBuf> {
    let defaults = if paper_scale {
        ExperimentConfig::paper_scale(id)
    } else {
        ExperimentConfig::desk(id)
    };
    let mut cfg = match config {
        Some(path) => defaults.merge_json(&std::fs::read_to_string(path)?)?,
        None => defaults,
    };
    if cfg.experiment != id {
        return Err(Error::param(format!(
            "config is for {} but {id} was requested",
            cfg.experiment
        )));
    }
    if let Some(dir) = out_dir {
        cfg.out_dir = dir.to_path_buf();
    }
    let cfg = cfg.with_env_seed()?;
    run_experiment(&cfg)
}

/// `hipm-lab plot <csv> --out <svg> [--loglog]`.
pub fn cmd_plot(csv: &Path, out: &Path, loglog: bool) -> Result<()> {
    let style = if loglog { PlotStyle::LogLog } else { PlotStyle::Linear };
    emit_svg_plot(csv, style, out)
}
