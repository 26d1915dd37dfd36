//! Parsing of command-line and JSON fan descriptions.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::fan::{self, FanError, RayList, RayMatrix, SearchOptions};
use crate::lattice::IntVector;
use crate::surfaces::{self, SurfaceError, SurfaceSequence};

/// Input parsing and domain failures, mapped to exit codes by the caller.
#[derive(Debug)]
pub enum InputError {
    /// Exit code 2.
    Malformed(String),
    /// Exit code 1.
    NotRadiant(String),
}

/// The documented JSON input schema.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum FanInputDocument {
    RayMatrix { n: usize, ray_matrix: Vec<Vec<i64>> },
    Rays { n: usize, rays: Vec<Vec<i64>> },
    Sequence { sequence: Vec<i64> },
}

fn malformed(e: impl std::fmt::Display) -> InputError {
    InputError::Malformed(e.to_string())
}

/// `"a b c; d e f"` into rows.
pub fn parse_rows(s: &str) -> Result<Vec<Vec<i64>>, InputError> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|e| malformed(format!("bad integer {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    if rows.iter().all(Vec::is_empty) {
        return Err(malformed("empty matrix"));
    }
    if let Some(k) = rows.iter().position(Vec::is_empty) {
        return Err(malformed(format!("row {} is empty", k + 1)));
    }
    Ok(rows)
}

/// `"1,1,1"` into integers.
pub fn parse_sequence(s: &str) -> Result<Vec<i64>, InputError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>()
                .map_err(|e| malformed(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

pub fn read_document(path: &Path) -> Result<FanInputDocument, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| malformed(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn parse_document(text: &str) -> Result<FanInputDocument, InputError> {
    serde_json::from_str(text).map_err(|e| {
        malformed(format!(
            "input must be {{\"n\", \"ray_matrix\"}}, {{\"n\", \"rays\"}} or {{\"sequence\"}}: {e}"
        ))
    })
}

fn fan_error(e: FanError) -> InputError {
    match e {
        FanError::SearchCapExceeded { .. } => InputError::NotRadiant(e.to_string()),
        other => malformed(other),
    }
}

pub fn ray_matrix(n: usize, rows: Vec<Vec<i64>>) -> Result<RayMatrix, InputError> {
    RayMatrix::new(n, rows).map_err(malformed)
}

pub fn ray_list(n: usize, rays: Vec<Vec<i64>>) -> Result<RayList, InputError> {
    RayList::new(n, rays.into_iter().map(IntVector).collect()).map_err(malformed)
}

pub fn sequence(c: Vec<i64>) -> Result<SurfaceSequence, InputError> {
    SurfaceSequence::new(c).map_err(|e: SurfaceError| malformed(e))
}

/// Bilateralizes a ray list; a fan without a witness is not radiant.
pub fn matrix_from_rays(rl: &RayList) -> Result<RayMatrix, InputError> {
    match fan::bilateralize(rl, SearchOptions::default()).map_err(fan_error)? {
        Some(w) => Ok(w.matrix),
        None => Err(InputError::NotRadiant(
            "not radiant: no bilateral labeling of the rays exists".into(),
        )),
    }
}

pub fn matrix_from_sequence(seq: &SurfaceSequence) -> Result<RayMatrix, InputError> {
    if !surfaces::is_radiant_sequence(seq) {
        return Err(InputError::NotRadiant(format!(
            "not radiant: sequence {seq} has no two adjacent non-positive entries"
        )));
    }
    let rl = RayList::new(2, seq.rays()).map_err(malformed)?;
    matrix_from_rays(&rl)
}
