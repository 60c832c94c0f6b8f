//! On-disk formats.
//!
//! * [`DiscreteMeasure`]: CSV with header `atom,weight`.
//! * [`EmpiricalLaw`]: CSV with header `member,atom,weight`, members numbered
//!   from 0 in any row order.
//! * [`GriddedLaw`]: JSON object `{a, b, M, weights}`, weights row-major.
//!
//! Floats are written with 17 significant digits so that a round trip is exact.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{DiscreteMeasure, EmpiricalLaw, Grid, GriddedLaw};

/// 17 significant digits, scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `x` rounded to `digits` significant digits in positional notation.
pub fn fmt_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse {
            line,
            message: format!("{other:?}"),
        },
    }
}

fn parse_field<T: std::str::FromStr>(rec: &csv::StringRecord, idx: usize, name: &str) -> Result<T> {
    let line = rec.position().map(|p| p.line()).unwrap_or(0);
    let raw = rec.get(idx).ok_or_else(|| Error::Parse {
        line,
        message: format!("missing column `{name}`"),
    })?;
    raw.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse `{raw}` as {name}"),
    })
}

fn check_header(reader: &mut csv::Reader<impl Read>, expected: &[&str]) -> Result<()> {
    let header = reader.headers().map_err(csv_err)?;
    let got: Vec<&str> = header.iter().map(str::trim).collect();
    if got != expected {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header `{}`, found `{}`", expected.join(","), got.join(",")),
        });
    }
    Ok(())
}

pub fn read_measure_csv(input: impl Read) -> Result<DiscreteMeasure> {
    let mut reader = csv::ReaderBuilder::new().from_reader(input);
    check_header(&mut reader, &["atom", "weight"])?;
    let (mut atoms, mut weights) = (Vec::new(), Vec::new());
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        atoms.push(parse_field(&rec, 0, "atom")?);
        weights.push(parse_field(&rec, 1, "weight")?);
    }
    DiscreteMeasure::new(atoms, weights)
}

pub fn write_measure_csv(p: &DiscreteMeasure, mut out: impl Write) -> Result<()> {
    writeln!(out, "atom,weight")?;
    for (x, w) in p.iter() {
        writeln!(out, "{},{}", fmt_f64(x), fmt_f64(w))?;
    }
    Ok(())
}

/// Reads a law; its domain is the hull of all atoms.
pub fn read_law_csv(input: impl Read) -> Result<EmpiricalLaw> {
    let mut reader = csv::ReaderBuilder::new().from_reader(input);
    check_header(&mut reader, &["member", "atom", "weight"])?;
    let mut members: BTreeMap<usize, (Vec<f64>, Vec<f64>, u64)> = BTreeMap::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let id: usize = parse_field(&rec, 0, "member")?;
        let entry = members.entry(id).or_insert_with(|| (Vec::new(), Vec::new(), line));
        entry.0.push(parse_field(&rec, 1, "atom")?);
        entry.1.push(parse_field(&rec, 2, "weight")?);
    }
    if members.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no members".into(),
        });
    }
    for (expected, id) in members.keys().enumerate() {
        if *id != expected {
            return Err(Error::Parse {
                line: members[id].2,
                message: format!("member ids must be 0..n-1, missing {expected}"),
            });
        }
    }
    let ms = members
        .into_values()
        .map(|(a, w, line)| {
            DiscreteMeasure::new(a, w).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    EmpiricalLaw::with_hull_domain(ms)
}

pub fn write_law_csv(law: &EmpiricalLaw, mut out: impl Write) -> Result<()> {
    writeln!(out, "member,atom,weight")?;
    for (i, p) in law.members().iter().enumerate() {
        for (x, w) in p.iter() {
            writeln!(out, "{i},{},{}", fmt_f64(x), fmt_f64(w))?;
        }
    }
    Ok(())
}

pub fn read_law_file(path: impl AsRef<Path>) -> Result<EmpiricalLaw> {
    read_law_csv(BufReader::new(File::open(path)?))
}

pub fn write_law_file(law: &EmpiricalLaw, path: impl AsRef<Path>) -> Result<()> {
    let mut f = std::io::BufWriter::new(File::create(path)?);
    write_law_csv(law, &mut f)?;
    f.flush()?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct GriddedLawJson {
    a: f64,
    b: f64,
    #[serde(rename = "M")]
    m: usize,
    weights: Vec<f64>,
}

pub fn gridded_law_to_json(law: &GriddedLaw) -> Result<String> {
    let g = law.grid();
    let doc = GriddedLawJson {
        a: g.lo(),
        b: g.hi(),
        m: g.len(),
        weights: law.weights().to_vec(),
    };
    serde_json::to_string(&doc).map_err(|e| Error::param(e.to_string()))
}

pub fn gridded_law_from_json(s: &str) -> Result<GriddedLaw> {
    let doc: GriddedLawJson = serde_json::from_str(s).map_err(|e| Error::Parse {
        line: e.line() as u64,
        message: e.to_string(),
    })?;
    GriddedLaw::new(Grid::new(doc.a, doc.b, doc.m)?, doc.weights)
}
