//! CSV tables. Floats are written with 17 significant digits so identical
//! inputs give byte-identical files.

use std::io::{Read, Write};
use std::path::Path;

use bellmix_core::analysis::{CurvePoint, FrontierBin, ScanRecord, ScanSource};
use bellmix_core::FamilySpec;

use crate::error::{Error, Result};

pub const SCAN_HEADER: [&str; 7] = ["source", "seed", "index", "tau", "bell_b", "s_linear", "s_von_neumann"];
pub const FRONTIER_HEADER: [&str; 6] = ["b_lo", "b_hi", "tau_min", "tau_max", "sl_min", "sl_max"];
pub const CURVE_HEADER: [&str; 13] = [
    "family",
    "p1",
    "p2",
    "p3",
    "tau",
    "bell_b",
    "s_linear",
    "s_von_neumann",
    "closed_tau",
    "closed_bell_b",
    "closed_s_linear",
    "closed_s_von_neumann",
    "pipeline_gap",
];

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::parse(path, format!("{other:?}")),
    }
}

fn write_rows<W: Write>(out: W, path: &Path, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_scan<W: Write>(out: W, path: &Path, records: &[ScanRecord]) -> Result<()> {
    let rows = records.iter().map(|r| {
        vec![
            r.source.name().to_string(),
            r.seed.to_string(),
            r.index.to_string(),
            fmt_float(r.tau),
            fmt_float(r.bell_b),
            fmt_float(r.s_linear),
            fmt_float(r.s_von_neumann),
        ]
    });
    write_rows(out, path, &SCAN_HEADER, rows)
}

pub fn read_scan<R: Read>(input: R, path: &Path) -> Result<Vec<ScanRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers().map_err(|e| csv_err(path, e))?;
    if header.iter().ne(SCAN_HEADER) {
        return Err(Error::parse(path, format!("expected header {}", SCAN_HEADER.join(","))));
    }
    let mut records = Vec::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| csv_err(path, e))?;
        let bad = |what: &str| Error::parse(path, format!("row {}: bad {what}", line + 1));
        let float = |k: usize| -> Result<f64> {
            row[k]
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| bad(SCAN_HEADER[k]))
        };
        records.push(ScanRecord {
            source: ScanSource::from_name(&row[0]).ok_or_else(|| bad("source"))?,
            seed: row[1].parse().map_err(|_| bad("seed"))?,
            index: row[2].parse().map_err(|_| bad("index"))?,
            tau: float(3)?,
            bell_b: float(4)?,
            s_linear: float(5)?,
            s_von_neumann: float(6)?,
        });
    }
    Ok(records)
}

pub fn write_frontier<W: Write>(out: W, path: &Path, bins: &[FrontierBin]) -> Result<()> {
    let rows = bins.iter().map(|b| {
        [b.b_lo, b.b_hi, b.tau_min, b.tau_max, b.sl_min, b.sl_max]
            .map(fmt_float)
            .to_vec()
    });
    write_rows(out, path, &FRONTIER_HEADER, rows)
}

/// Family parameters padded to three columns.
fn params(spec: &FamilySpec) -> [String; 3] {
    let (p1, p2, p3) = match *spec {
        FamilySpec::Pure { a } => (a, None, None),
        FamilySpec::Werner { x } => (x, None, None),
        FamilySpec::Mems { gamma } => (gamma, None, None),
        FamilySpec::TwoBell { w } => (w, None, None),
        FamilySpec::ThreeBell { w1, w2, w3 } => (w1, Some(w2), Some(w3)),
    };
    [Some(p1), p2, p3].map(|p| p.map(fmt_float).unwrap_or_default())
}

pub fn write_curve<W: Write>(out: W, path: &Path, points: &[CurvePoint]) -> Result<()> {
    let rows = points.iter().map(|p| {
        let mut row = vec![p.family.kind().name().to_string()];
        row.extend(params(&p.family));
        row.extend(
            [
                p.tau,
                p.bell_b,
                p.s_linear,
                p.s_von_neumann,
                p.closed.tau,
                p.closed.bell_b,
                p.closed.s_linear,
                p.closed.s_von_neumann,
                p.pipeline_gap,
            ]
            .map(fmt_float),
        );
        row
    });
    write_rows(out, path, &CURVE_HEADER, rows)
}
