//! JSON instance files, schema `wss-1`.
//!
//! Levels are 0-based in files (`level: 0` is `X^(1)`) and 1-based in
//! memory. Matrix shapes are taken from the declared dimensions, so empty
//! matrices may be written as `[]` or as rows of empty arrays.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{SemistableDatum, StratumLevel, TransferMaps};
use crate::error::{Error, Result};
use crate::ratlin::{format_rat, parse_rat, RatMatrix};

pub const SCHEMA_VERSION: &str = "wss-1";

type RawMatrix = Vec<Vec<String>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    schema: String,
    n: usize,
    m: usize,
    levels: Vec<RawLevel>,
    #[serde(default)]
    restriction: Vec<RawMap>,
    #[serde(default)]
    gysin: Vec<RawMap>,
    ample_class: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLevel {
    level: usize,
    components: usize,
    cohomology: Vec<RawDim>,
    #[serde(default)]
    pairings: BTreeMap<usize, RawMatrix>,
    #[serde(default)]
    lefschetz: BTreeMap<usize, RawMatrix>,
    component_blocks: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDim {
    degree: usize,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    level: usize,
    degree: usize,
    matrix: RawMatrix,
}

#[derive(Deserialize)]
struct Header {
    schema: Option<serde_json::Value>,
}

fn matrix(rows: usize, cols: usize, raw: &RawMatrix, field: &str) -> Result<RatMatrix> {
    if rows == 0 && raw.is_empty() {
        return Ok(RatMatrix::zeros(0, cols));
    }
    RatMatrix::from_strings(rows, cols, raw, field)
}

pub fn from_json_str(text: &str) -> Result<SemistableDatum> {
    let header: Header = serde_json::from_str(text).map_err(|e| Error::Parse {
        field: "<document>".into(),
        message: format!("line {}, column {}: {e}", e.line(), e.column()),
    })?;
    match header.schema {
        Some(serde_json::Value::String(s)) if s == SCHEMA_VERSION => {}
        other => {
            return Err(Error::Schema {
                expected: SCHEMA_VERSION.into(),
                found: other.map_or_else(|| "<missing>".into(), |v| v.to_string()),
            })
        }
    }
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawDatum = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Parse {
            field: path,
            message: format!("line {}, column {}: {inner}", inner.line(), inner.column()),
        }
    })?;
    convert(raw)
}

fn convert(raw: RawDatum) -> Result<SemistableDatum> {
    let n = raw.n;
    let mut levels = BTreeMap::new();
    for (li, rl) in raw.levels.iter().enumerate() {
        let t = rl.level + 1;
        if t > n + 1 {
            return Err(Error::Structural(format!(
                "levels[{li}].level = {} exceeds n = {n}",
                rl.level
            )));
        }
        let d = n + 1 - t;
        let mut cohomology = vec![None; 2 * d + 1];
        for (ci, c) in rl.cohomology.iter().enumerate() {
            let slot = cohomology.get_mut(c.degree).ok_or_else(|| {
                Error::Structural(format!(
                    "levels[{li}].cohomology[{ci}].degree = {} exceeds {}",
                    c.degree,
                    2 * d
                ))
            })?;
            if slot.replace(c.dim).is_some() {
                return Err(Error::Structural(format!(
                    "levels[{li}].cohomology: degree {} listed twice",
                    c.degree
                )));
            }
        }
        let cohomology: Vec<usize> = cohomology
            .into_iter()
            .enumerate()
            .map(|(s, x)| {
                x.ok_or_else(|| {
                    Error::Structural(format!("levels[{li}].cohomology: degree {s} missing"))
                })
            })
            .collect::<Result<_>>()?;
        let h = |s: usize| cohomology.get(s).copied().unwrap_or(0);
        let mut pairings = BTreeMap::new();
        for (&s, p) in &rl.pairings {
            if s > 2 * d {
                return Err(Error::Structural(format!(
                    "levels[{li}].pairings.{s}: degree out of range"
                )));
            }
            let field = format!("levels[{li}].pairings.{s}");
            pairings.insert(s, matrix(h(s), h(2 * d - s), p, &field)?);
        }
        let mut lefschetz = BTreeMap::new();
        for (&s, p) in &rl.lefschetz {
            if s + 2 > 2 * d {
                return Err(Error::Structural(format!(
                    "levels[{li}].lefschetz.{s}: degree out of range"
                )));
            }
            let field = format!("levels[{li}].lefschetz.{s}");
            lefschetz.insert(s, matrix(h(s + 2), h(s), p, &field)?);
        }
        let level = StratumLevel {
            level: t,
            components: rl.components,
            cohomology,
            pairings,
            lefschetz,
            component_blocks: rl.component_blocks.clone(),
        };
        if levels.insert(t, level).is_some() {
            return Err(Error::Structural(format!("levels[{li}]: level {} repeated", rl.level)));
        }
    }
    let h = |t: usize, s: usize| levels.get(&t).map_or(0, |l: &StratumLevel| l.h(s));
    let mut transfers = TransferMaps::default();
    for (k, rm) in raw.restriction.iter().enumerate() {
        let t = rm.level + 1;
        if !levels.contains_key(&t) {
            return Err(Error::Structural(format!(
                "restriction[{k}]: source level {} not declared",
                rm.level
            )));
        }
        let field = format!("restriction[{k}].matrix");
        let x = matrix(h(t + 1, rm.degree), h(t, rm.degree), &rm.matrix, &field)?;
        if transfers.restriction.insert((t, rm.degree), x).is_some() {
            return Err(Error::Structural(format!("restriction[{k}]: duplicate entry")));
        }
    }
    for (k, gm) in raw.gysin.iter().enumerate() {
        let t = gm.level + 1;
        if t < 2 || !levels.contains_key(&t) {
            return Err(Error::Structural(format!(
                "gysin[{k}]: invalid source level {}",
                gm.level
            )));
        }
        let field = format!("gysin[{k}].matrix");
        let x = matrix(h(t - 1, gm.degree + 2), h(t, gm.degree), &gm.matrix, &field)?;
        if transfers.gysin.insert((t, gm.degree), x).is_some() {
            return Err(Error::Structural(format!("gysin[{k}]: duplicate entry")));
        }
    }
    let ample_class = raw
        .ample_class
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rat(s, &format!("ample_class[{i}]")))
        .collect::<Result<_>>()?;
    let datum = SemistableDatum {
        n,
        m: raw.m,
        levels,
        transfers,
        ample_class,
    };
    datum.check_structure()?;
    Ok(datum)
}

fn to_raw(d: &SemistableDatum) -> RawDatum {
    let levels = d
        .levels
        .values()
        .map(|l| RawLevel {
            level: l.level - 1,
            components: l.components,
            cohomology: l
                .cohomology
                .iter()
                .enumerate()
                .map(|(degree, &dim)| RawDim { degree, dim })
                .collect(),
            pairings: l.pairings.iter().map(|(&s, p)| (s, p.to_strings())).collect(),
            lefschetz: l.lefschetz.iter().map(|(&s, p)| (s, p.to_strings())).collect(),
            component_blocks: l.component_blocks.clone(),
        })
        .collect();
    let maps = |m: &BTreeMap<(usize, usize), RatMatrix>| {
        m.iter()
            .map(|(&(t, s), x)| RawMap {
                level: t - 1,
                degree: s,
                matrix: x.to_strings(),
            })
            .collect()
    };
    RawDatum {
        schema: SCHEMA_VERSION.into(),
        n: d.n,
        m: d.m,
        levels,
        restriction: maps(&d.transfers.restriction),
        gysin: maps(&d.transfers.gysin),
        ample_class: d.ample_class.iter().map(format_rat).collect(),
    }
}

pub fn to_json_string(d: &SemistableDatum) -> String {
    serde_json::to_string_pretty(&to_raw(d)).expect("datum serialises")
}

pub fn load(path: impl AsRef<Path>) -> Result<SemistableDatum> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    from_json_str(&text)
}

pub fn save(d: &SemistableDatum, path: impl AsRef<Path>) -> Result<()> {
    let mut text = to_json_string(d);
    text.push('\n');
    std::fs::write(path.as_ref(), text)
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}
