//! The structured text formats: arrangement files in, report/trace
//! documents out.
//!
//! Reals are serialized with 17 significant digits so every `f64`
//! round-trips exactly; files are plain `key: value` text so diffs and
//! version control stay usable.

use std::fmt::Write as _;

use zone_core::sphere::{Arrangement, UnitVector, ZoneSet};

/// Lossless `f64` serialization: 17 significant digits, scientific.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

pub fn fmt_row(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| fmt_f64(*x))
        .collect::<Vec<_>>()
        .join(" ")
}

/// A parsed arrangement file: the normals plus optional zone widths.
#[derive(Clone, Debug)]
pub struct ArrangementFile {
    pub arrangement: Arrangement,
    pub half_widths: Option<Vec<f64>>,
}

impl ArrangementFile {
    pub fn zone_set(&self) -> Option<zone_core::Result<ZoneSet>> {
        self.half_widths
            .as_ref()
            .map(|hw| ZoneSet::new(self.arrangement.clone(), hw.clone()))
    }
}

/// Serializes an arrangement (and optional half-widths) to the file
/// schema: `dim:`, `normals:` with one row per line, then optionally
/// `half_widths:` with one row of reals.
pub fn write_arrangement(arr: &Arrangement, half_widths: Option<&[f64]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim: {}", arr.dim());
    let _ = writeln!(out, "normals:");
    for v in arr.normals() {
        let _ = writeln!(out, "{}", fmt_row(v.coords()));
    }
    if let Some(hw) = half_widths {
        let _ = writeln!(out, "half_widths:");
        let _ = writeln!(out, "{}", fmt_row(hw));
    }
    out
}

fn parse_f64(tok: &str, line_no: usize) -> Result<f64, String> {
    tok.parse::<f64>()
        .map_err(|_| format!("line {line_no}: bad real '{tok}'"))
}

/// Parses the arrangement file schema. Errors carry line numbers.
pub fn parse_arrangement(text: &str) -> Result<ArrangementFile, String> {
    let mut dim: Option<usize> = None;
    let mut normals: Vec<UnitVector> = Vec::new();
    let mut half_widths: Option<Vec<f64>> = None;

    #[derive(PartialEq)]
    enum Section {
        Header,
        Normals,
        HalfWidths,
    }
    let mut section = Section::Header;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dim:") {
            dim = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("line {line_no}: bad dim '{}'", rest.trim()))?,
            );
            continue;
        }
        if line == "normals:" {
            section = Section::Normals;
            continue;
        }
        if line == "half_widths:" {
            section = Section::HalfWidths;
            continue;
        }
        match section {
            Section::Header => {
                return Err(format!("line {line_no}: unexpected '{line}'"));
            }
            Section::Normals => {
                let d = dim.ok_or_else(|| format!("line {line_no}: normals before dim"))?;
                let row: Result<Vec<f64>, String> = line
                    .split_whitespace()
                    .map(|t| parse_f64(t, line_no))
                    .collect();
                let row = row?;
                if row.len() != d {
                    return Err(format!(
                        "line {line_no}: expected {d} coordinates, got {}",
                        row.len()
                    ));
                }
                normals.push(
                    UnitVector::new(row).map_err(|e| format!("line {line_no}: {e}"))?,
                );
            }
            Section::HalfWidths => {
                let row: Result<Vec<f64>, String> = line
                    .split_whitespace()
                    .map(|t| parse_f64(t, line_no))
                    .collect();
                half_widths.get_or_insert_with(Vec::new).extend(row?);
            }
        }
    }

    if normals.is_empty() {
        return Err("no normals".into());
    }
    let arrangement = Arrangement::new(normals).map_err(|e| e.to_string())?;
    if let Some(hw) = &half_widths {
        if hw.len() != arrangement.len() {
            return Err(format!(
                "expected {} half_widths, got {}",
                arrangement.len(),
                hw.len()
            ));
        }
    }
    Ok(ArrangementFile {
        arrangement,
        half_widths,
    })
}
