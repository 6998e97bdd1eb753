//! Map files.
//!
//! Text form: blocks separated by blank lines. A primal block is a header
//! `n m` followed by `n` rows of `m` bits; a dual block is a header
//! `dual n m` followed by `m` rows of `m - n` bits. Lines starting with `#`
//! are ignored. The structured form is a JSON array of
//! `{"kind": "primal" | "dual", "n", "m", "rows"}` objects.

use serde::{Deserialize, Serialize};

use crate::charmap::{CharMap, DualCharMap};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapBlock {
    /// Any `n x m` matrix; not necessarily canonical.
    Primal(BitMatrix),
    Dual(DualCharMap),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Primal,
    Dual,
}

#[derive(Serialize, Deserialize)]
struct StructuredMap {
    kind: Kind,
    n: usize,
    m: usize,
    rows: Vec<String>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn rows_to_matrix(rows: &[(usize, &str)], width: usize) -> Result<BitMatrix> {
    for &(line, r) in rows {
        if r.len() != width {
            return Err(parse_err(
                line,
                format!("row has {} entries, expected {width}", r.len()),
            ));
        }
    }
    let bare: Vec<&str> = rows.iter().map(|r| r.1).collect();
    let first = rows.first().map_or(1, |r| r.0);
    if bare.is_empty() {
        return BitMatrix::zero(0, width);
    }
    BitMatrix::parse_rows(&bare).map_err(|e| match e {
        Error::Parse { line, msg } => parse_err(first + line - 1, msg),
        other => other,
    })
}

fn build(dual: bool, n: usize, m: usize, header: usize, rows: &[(usize, &str)]) -> Result<MapBlock> {
    if n > m {
        return Err(parse_err(header, format!("n = {n} exceeds m = {m}")));
    }
    let (count, width) = if dual { (m, m - n) } else { (n, m) };
    if rows.len() != count {
        return Err(parse_err(
            header,
            format!("block declares {count} rows, found {}", rows.len()),
        ));
    }
    let matrix = rows_to_matrix(rows, width)?;
    if dual {
        DualCharMap::new(n, matrix)
            .map(MapBlock::Dual)
            .map_err(|e| parse_err(header, e.to_string()))
    } else {
        Ok(MapBlock::Primal(matrix))
    }
}

/// Parses every block of a map file, text or JSON.
pub fn parse_maps(input: &str) -> Result<Vec<MapBlock>> {
    if input.trim_start().starts_with('[') {
        return parse_structured(input);
    }
    let mut blocks = Vec::new();
    let mut current: Vec<(usize, &str)> = Vec::new();
    let lines = input.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    for (no, line) in lines.chain(std::iter::once((0, ""))) {
        if line.starts_with('#') {
            continue;
        }
        if !line.is_empty() {
            current.push((no, line));
            continue;
        }
        if current.is_empty() {
            continue;
        }
        let (header_line, header) = current[0];
        let words: Vec<&str> = header.split_whitespace().collect();
        let (dual, nums) = match words.as_slice() {
            ["dual", rest @ ..] => (true, rest.to_vec()),
            rest => (false, rest.to_vec()),
        };
        let nums: Vec<usize> = nums
            .iter()
            .map(|w| w.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(header_line, format!("bad block header {header:?}")))?;
        let [n, m] = nums[..] else {
            return Err(parse_err(header_line, format!("bad block header {header:?}")));
        };
        blocks.push(build(dual, n, m, header_line, &current[1..])?);
        current.clear();
    }
    if blocks.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(blocks)
}

fn parse_structured(input: &str) -> Result<Vec<MapBlock>> {
    let items: Vec<StructuredMap> = serde_json::from_str(input).map_err(|e| parse_err(e.line(), e.to_string()))?;
    if items.is_empty() {
        return Err(Error::EmptyInput);
    }
    items
        .iter()
        .map(|it| {
            let rows: Vec<(usize, &str)> = it.rows.iter().map(|r| (1, r.as_str())).collect();
            build(matches!(it.kind, Kind::Dual), it.n, it.m, 1, &rows)
        })
        .collect()
}

fn rows_of(matrix: &BitMatrix) -> Vec<String> {
    matrix.rows().iter().map(|r| r.to_string()).collect()
}

pub fn render_maps_text(maps: &[CharMap]) -> String {
    let blocks: Vec<String> = maps.iter().map(CharMap::render).collect();
    blocks.join("\n")
}

pub fn render_duals_text(maps: &[DualCharMap]) -> String {
    let blocks: Vec<String> = maps.iter().map(DualCharMap::render).collect();
    blocks.join("\n")
}

pub fn render_maps_structured(maps: &[CharMap]) -> String {
    let items: Vec<StructuredMap> = maps
        .iter()
        .map(|c| StructuredMap {
            kind: Kind::Primal,
            n: c.n(),
            m: c.m(),
            rows: rows_of(c.matrix()),
        })
        .collect();
    serde_json::to_string_pretty(&items).expect("serializable") + "\n"
}

pub fn render_duals_structured(maps: &[DualCharMap]) -> String {
    let items: Vec<StructuredMap> = maps
        .iter()
        .map(|d| StructuredMap {
            kind: Kind::Dual,
            n: d.n(),
            m: d.m(),
            rows: rows_of(d.matrix()),
        })
        .collect();
    serde_json::to_string_pretty(&items).expect("serializable") + "\n"
}
