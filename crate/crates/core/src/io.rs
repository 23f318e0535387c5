//! Text formats: square zero-padded CSV tables, JSON with big integers as
//! decimal strings, and the decomposition record.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::RationalSeries;
use crate::tilting::{
    count_summands, count_weyl, wall_summands, DeltaMultiset, TiltingDecomposition, Weight,
};
use crate::walks::CountTable;

/// `(order + 1)` lines of `(order + 1)` comma-separated entries, row `n`
/// padded with zeros past column `n`. LF line endings, trailing newline.
pub fn table_to_csv(table: &CountTable) -> String {
    let width = table.order() + 1;
    let mut out = String::new();
    for row in table.rows() {
        for m in 0..width {
            if m > 0 {
                out.push(',');
            }
            match row.get(m) {
                Some(v) => write!(out, "{v}").unwrap(),
                None => out.push('0'),
            }
        }
        out.push('\n');
    }
    out
}

/// Parses any rectangular CSV of nonnegative integers.
pub fn parse_csv_matrix(s: &str) -> Result<Vec<Vec<BigUint>>> {
    let mut rows = Vec::new();
    for (i, line) in s.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|f| {
                f.trim()
                    .parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("line {}: bad entry {f:?}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if let Some(first) = rows.first() {
        if let Some(bad) = rows.iter().position(|r| r.len() != first.len()) {
            return Err(Error::Parse(format!(
                "line {}: expected {} fields, found {}",
                bad + 1,
                first.len(),
                rows[bad].len()
            )));
        }
    }
    Ok(rows)
}

/// The table as the same square matrix [`table_to_csv`] writes.
pub fn table_matrix(table: &CountTable) -> Vec<Vec<BigUint>> {
    let width = table.order() + 1;
    table
        .rows()
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.resize(width, BigUint::default());
            r
        })
        .collect()
}

fn to_decimal(values: &[BigUint]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn from_decimal(values: &[String]) -> Result<Vec<BigUint>> {
    values
        .iter()
        .map(|s| {
            s.parse()
                .map_err(|_| Error::Parse(format!("not a nonnegative integer: {s:?}")))
        })
        .collect()
}

/// Rows as a JSON list of lists of decimal strings (triangular, unpadded).
pub fn table_to_json(table: &CountTable) -> String {
    let rows: Vec<Vec<String>> = table.rows().iter().map(|r| to_decimal(r)).collect();
    serde_json::to_string(&rows).expect("string matrix serializes")
}

pub fn rows_from_json(s: &str) -> Result<Vec<Vec<BigUint>>> {
    let rows: Vec<Vec<String>> =
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    rows.iter().map(|r| from_decimal(r)).collect()
}

/// `n,value` lines under a header.
pub fn sums_to_csv(header: &str, values: &[BigUint]) -> String {
    let mut out = format!("n,{header}\n");
    for (n, v) in values.iter().enumerate() {
        writeln!(out, "{n},{v}").unwrap();
    }
    out
}

pub fn sums_to_json(values: &[BigUint]) -> String {
    serde_json::to_string(&to_decimal(values)).expect("string list serializes")
}

pub fn sums_from_json(s: &str) -> Result<Vec<BigUint>> {
    let v: Vec<String> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    from_decimal(&v)
}

/// Coefficients as `"p/q"` strings.
pub fn series_to_json(series: &RationalSeries) -> String {
    serde_json::to_string(&series.to_strings()).expect("string list serializes")
}

pub fn series_from_json(s: &str) -> Result<RationalSeries> {
    let v: Vec<String> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    RationalSeries::from_strings(&v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCounts {
    pub summands: String,
    pub weyl: String,
    pub wall: String,
    pub dimension: String,
}

/// Serialized form of a tilting decomposition and its Weyl factors.
/// Weights are object keys; multiplicities are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub ell: u64,
    pub summands: BTreeMap<u64, String>,
    pub weyl: BTreeMap<u64, String>,
    pub counts: DecompositionCounts,
}

impl DecompositionRecord {
    pub fn new(td: &TiltingDecomposition, weyl: &DeltaMultiset) -> Self {
        let ell = td.ell();
        Self {
            ell,
            summands: td.iter().map(|(k, m)| (k.0, m.to_string())).collect(),
            weyl: weyl.iter().map(|(k, m)| (k.0, m.to_string())).collect(),
            counts: DecompositionCounts {
                summands: count_summands(td).to_string(),
                weyl: count_weyl(weyl).to_string(),
                wall: wall_summands(td, ell).to_string(),
                dimension: td.dimension().to_string(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Rebuilds both multisets, checking that the stored counts agree.
    pub fn to_parts(&self) -> Result<(TiltingDecomposition, DeltaMultiset)> {
        let parse = |m: &String| -> Result<BigUint> {
            m.parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity {m:?}")))
        };
        let summands = self
            .summands
            .iter()
            .map(|(k, m)| Ok((Weight(*k), parse(m)?)))
            .collect::<Result<Vec<_>>>()?;
        let td = TiltingDecomposition::from_summands(self.ell, summands)?;
        let mut weyl = DeltaMultiset::new();
        for (k, m) in &self.weyl {
            weyl.add(Weight(*k), parse(m)?);
        }
        if Self::new(&td, &weyl) != *self {
            return Err(Error::Parse("decomposition counts do not match".into()));
        }
        Ok((td, weyl))
    }
}
