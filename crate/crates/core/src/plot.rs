//! Static SVG rendering of experiment tables.
//!
//! Reads either CSV layout written by [`crate::experiment`], draws one line per
//! estimator with a ±1 standard deviation band, dashed analytic bounds for the
//! fig2 tables, and a horizontal line for a `reference` estimator.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::{FIG1_HEADER, FIG2_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlotStyle {
    #[default]
    Linear,
    LogLog,
}

#[derive(Debug, Clone, Default)]
struct Series {
    points: Vec<(f64, f64, f64)>,
    dashed: bool,
}

#[derive(Debug, Default)]
struct Figure {
    series: BTreeMap<String, Series>,
    references: Vec<(String, f64)>,
    x_label: &'static str,
    y_label: &'static str,
}

fn parse_num(raw: &str, line: u64) -> Result<f64> {
    raw.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse `{raw}` as a number"),
    })
}

fn read_figure(text: &str) -> Result<Figure> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    let header = header.trim();
    let fig1 = match header {
        h if h == FIG1_HEADER => true,
        h if h == FIG2_HEADER => false,
        other => {
            return Err(Error::Parse {
                line: 1,
                message: format!("unrecognized header `{other}`"),
            })
        }
    };
    let mut fig = Figure {
        x_label: if fig1 { "n" } else { "x" },
        y_label: if fig1 { "distance" } else { "d_Lip" },
        ..Figure::default()
    };
    let mut refs: BTreeMap<String, f64> = BTreeMap::new();
    for (idx, line) in lines {
        let lineno = idx as u64 + 1;
        let cols: Vec<&str> = line.split(',').collect();
        let want = if fig1 { 5 } else { 7 };
        if cols.len() != want {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {want} columns, found {}", cols.len()),
            });
        }
        if fig1 {
            let (x, name) = (parse_num(cols[0], lineno)?, cols[1].to_string());
            let (y, sd) = (parse_num(cols[2], lineno)?, parse_num(cols[3], lineno)?);
            if name == "reference" {
                refs.insert(name, y);
            } else {
                fig.series.entry(name).or_default().points.push((x, y, sd));
            }
        } else {
            let x = parse_num(cols[0], lineno)?;
            let name = cols[3].to_string();
            let (y, sd, bound) = (
                parse_num(cols[4], lineno)?,
                parse_num(cols[5], lineno)?,
                parse_num(cols[6], lineno)?,
            );
            fig.series.entry(name.clone()).or_default().points.push((x, y, sd));
            let b = fig.series.entry(format!("{name} bound")).or_default();
            b.dashed = true;
            b.points.push((x, bound, 0.0));
        }
    }
    fig.references = refs.into_iter().collect();
    if fig.series.values().all(|s| s.points.is_empty()) {
        return Err(Error::Parse {
            line: 2,
            message: "no data rows".into(),
        });
    }
    for s in fig.series.values_mut() {
        s.points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    Ok(fig)
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 460.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Axis {
        let vals: Vec<f64> = values.filter(|v| v.is_finite() && (!log || *v > 0.0)).collect();
        let mut lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let mut hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !lo.is_finite() {
            (lo, hi) = (1.0, 10.0);
        }
        if log {
            (lo, hi) = (lo.log10(), hi.log10());
        }
        if hi - lo < 1e-12 {
            let pad = if lo.abs() > 0.0 { lo.abs() * 0.1 } else { 1.0 };
            (lo, hi) = (lo - pad, hi + pad);
        }
        let pad = 0.05 * (hi - lo);
        Axis {
            lo: lo - pad,
            hi: hi + pad,
            log,
        }
    }

    /// Position in `[0, 1]`, `None` for values a log axis cannot show.
    fn unit(&self, v: f64) -> Option<f64> {
        let v = if self.log {
            if v <= 0.0 {
                return None;
            }
            v.log10()
        } else {
            v
        };
        Some((v - self.lo) / (self.hi - self.lo))
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let (a, b) = (self.lo.ceil() as i32, self.hi.floor() as i32);
            let decades: Vec<f64> = (a..=b).map(|e| 10f64.powi(e)).collect();
            if decades.len() >= 2 {
                return decades;
            }
            return (0..5)
                .map(|k| 10f64.powf(self.lo + (self.hi - self.lo) * k as f64 / 4.0))
                .collect();
        }
        (0..5).map(|k| self.lo + (self.hi - self.lo) * k as f64 / 4.0).collect()
    }
}

fn tick_label(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.1e}")
    } else {
        format!("{}", (v * 1000.0).round() / 1000.0)
    }
}

fn render(fig: &Figure, style: PlotStyle) -> String {
    let log = style == PlotStyle::LogLog;
    let all = fig.series.values().flat_map(|s| s.points.iter());
    let xa = Axis::fit(all.clone().map(|p| p.0), log);
    let ys = all
        .flat_map(|p| [p.1, p.1 - p.2, p.1 + p.2])
        .chain(fig.references.iter().map(|r| r.1));
    let ya = Axis::fit(ys, log);
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| xa.unit(x).map(|u| LEFT + u * pw);
    let py = |y: f64| {
        let y = if log { y.max(10f64.powf(ya.lo)) } else { y };
        ya.unit(y).map(|u| TOP + (1.0 - u) * ph)
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for t in xa.ticks() {
        if let Some(x) = px(t) {
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                TOP + ph,
                TOP + ph + 5.0,
                TOP + ph + 18.0,
                tick_label(t)
            );
        }
    }
    for t in ya.ticks() {
        if let Some(y) = py(t) {
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 5.0,
                LEFT - 8.0,
                y + 4.0,
                tick_label(t)
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 10.0,
        fig.x_label
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{:.2}" text-anchor="middle" transform="rotate(-90 15 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        fig.y_label
    );

    let mut legend = 0usize;
    let mut color_of: BTreeMap<String, &str> = BTreeMap::new();
    for (name, series) in &fig.series {
        let base = name.trim_end_matches(" bound").to_string();
        let next = PALETTE[color_of.len() % PALETTE.len()];
        let color = *color_of.entry(base).or_insert(next);
        let pts: Vec<(f64, f64, f64)> = series.points.clone();
        if pts.len() >= 2 && pts.iter().any(|p| p.2 > 0.0) {
            let upper = pts.iter().filter_map(|p| Some((px(p.0)?, py(p.1 + p.2)?)));
            let lower = pts.iter().rev().filter_map(|p| Some((px(p.0)?, py(p.1 - p.2)?)));
            let poly: Vec<String> = upper.chain(lower).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            let _ = writeln!(
                s,
                r#"<polygon class="band" points="{}" fill="{color}" fill-opacity="0.15" stroke="none"/>"#,
                poly.join(" ")
            );
        }
        let line: Vec<String> = pts
            .iter()
            .filter_map(|p| Some(format!("{:.2},{:.2}", px(p.0)?, py(p.1)?)))
            .collect();
        let dash = if series.dashed { r#" stroke-dasharray="6,4""# } else { "" };
        if line.len() >= 2 {
            let _ = writeln!(
                s,
                r#"<polyline class="series" data-name="{name}" points="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>"#,
                line.join(" ")
            );
        }
        if !series.dashed {
            for p in &pts {
                if let (Some(x), Some(y)) = (px(p.0), py(p.1)) {
                    let _ = writeln!(s, r#"<circle class="marker" cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#);
                }
            }
        }
        let ly = TOP + 15.0 + 18.0 * legend as f64;
        let lx = LEFT + pw + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"{dash}/><text x="{:.2}" y="{:.2}">{name}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0
        );
        legend += 1;
    }
    for (name, v) in &fig.references {
        if let Some(y) = py(*v) {
            let _ = writeln!(
                s,
                r#"<line class="reference" data-value="{v}" x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black" stroke-dasharray="2,3"/>"#,
                LEFT + pw
            );
            let ly = TOP + 15.0 + 18.0 * legend as f64;
            let lx = LEFT + pw + 12.0;
            let _ = writeln!(
                s,
                r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="black" stroke-dasharray="2,3"/><text x="{:.2}" y="{:.2}">{name} ({v})</text>"#,
                lx + 20.0,
                lx + 26.0,
                ly + 4.0
            );
            legend += 1;
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Renders an experiment CSV to SVG text.
pub fn render_svg(csv_text: &str, style: PlotStyle) -> Result<String> {
    Ok(render(&read_figure(csv_text)?, style))
}

/// Reads `csv_path` and writes the plot to `out_path`.
///
/// Nothing is written when the CSV cannot be parsed or holds no rows.
pub fn emit_svg_plot(csv_path: impl AsRef<Path>, style: PlotStyle, out_path: impl AsRef<Path>) -> Result<()> {
    let text = std::fs::read_to_string(csv_path)?;
    let svg = render_svg(&text, style)?;
    std::fs::write(out_path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_an_error() {
        assert!(render_svg(&format!("{FIG1_HEADER}\n"), PlotStyle::Linear).is_err());
        assert!(render_svg("", PlotStyle::Linear).is_err());
        assert!(render_svg("a,b\n1,2\n", PlotStyle::Linear).is_err());
    }

    #[test]
    fn single_point_has_marker_but_no_band() {
        let csv = format!("{FIG1_HEADER}\n16,wow,0.5,0.1,0.05\n");
        let svg = render_svg(&csv, PlotStyle::Linear).unwrap();
        assert_eq!(svg.matches(r#"class="marker""#).count(), 1);
        assert!(!svg.contains(r#"class="band""#));
    }

    #[test]
    fn reference_line_and_bands() {
        let csv = format!(
            "{FIG1_HEADER}\n16,wow,0.7,0.1,0.03\n16,reference,0.625,0,0\n32,wow,0.66,0.05,0.02\n32,reference,0.625,0,0\n"
        );
        let svg = render_svg(&csv, PlotStyle::Linear).unwrap();
        assert!(svg.contains(r#"class="reference" data-value="0.625""#));
        assert_eq!(svg.matches(r#"class="band""#).count(), 1);
        let log = render_svg(&csv, PlotStyle::LogLog).unwrap();
        assert!(log.starts_with("<svg"));
    }

    #[test]
    fn fig2_bounds_are_dashed() {
        let csv = format!(
            "{FIG2_HEADER}\n1,1,50,dirichlet-multinomial,0.05,0.01,0.0555\n2,2,50,dirichlet-multinomial,0.04,0.01,0.0555\n"
        );
        let svg = render_svg(&csv, PlotStyle::Linear).unwrap();
        assert!(svg.contains("dirichlet-multinomial bound"));
        assert!(svg.contains("stroke-dasharray=\"6,4\""));
    }
}
