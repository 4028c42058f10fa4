//! File formats: Cayley tables and semidirect product specs.
//!
//! Cayley table (plain text): first significant line is `n`, followed by
//! `n` lines of `n` space-separated 0-based indices; row `i`, column `j`
//! holds the index of `element_i * element_j`; index 0 is the identity.
//! Lines starting with `#` are comments.
//!
//! Semidirect spec: `H <catalog-spec-or-table-path>`, `order <m>`,
//! `action <n indices>` (image of each canonical element of H), with `#`
//! comments between lines.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use selfnorm_core::catalog::{build_named, CatalogError, CatalogSpec};
use selfnorm_core::group::{group_from_table, semidirect_product, FiniteGroup};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Format {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("{0}")]
    Catalog(#[from] CatalogError),
    #[error("group construction failed: {0}")]
    Group(#[from] selfnorm_core::group::GroupError),
    #[error("sd: files may nest at most {0} levels deep")]
    TooDeep(usize),
}

const MAX_SD_DEPTH: usize = 8;

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses Cayley-table text into the row matrix.
pub fn parse_cayley_table(text: &str, path: &str) -> Result<Vec<Vec<u32>>, FileError> {
    let mut lines = significant_lines(text);
    let (ln, first) = lines.next().ok_or_else(|| FileError::Format {
        path: path.into(),
        line: 0,
        msg: "empty table file".into(),
    })?;
    let n: usize = first.parse().map_err(|_| FileError::Format {
        path: path.into(),
        line: ln,
        msg: format!("expected the group order, got {first:?}"),
    })?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, row) = lines.next().ok_or_else(|| FileError::Format {
            path: path.into(),
            line: 0,
            msg: format!("expected {n} table rows"),
        })?;
        let entries: Result<Vec<u32>, _> = row.split_whitespace().map(str::parse).collect();
        let entries = entries.map_err(|_| FileError::Format {
            path: path.into(),
            line: ln,
            msg: "rows must be space-separated indices".into(),
        })?;
        if entries.len() != n {
            return Err(FileError::Format {
                path: path.into(),
                line: ln,
                msg: format!("row has {} entries, expected {n}", entries.len()),
            });
        }
        rows.push(entries);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(FileError::Format {
            path: path.into(),
            line: ln,
            msg: "trailing content after the table".into(),
        });
    }
    Ok(rows)
}

pub fn load_cayley_table(path: &Path) -> Result<FiniteGroup, FileError> {
    let text = fs::read_to_string(path).map_err(|e| FileError::Read {
        path: path.display().to_string(),
        source: e,
    })?;
    let rows = parse_cayley_table(&text, &path.display().to_string())?;
    Ok(group_from_table(rows)?)
}

pub fn render_cayley_table(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = String::new();
    out.push_str(&format!("{n}\n"));
    for i in 0..n as u32 {
        let row: Vec<String> = (0..n as u32).map(|j| g.mul(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// A parsed semidirect spec, keeping the raw `H` field for round-trips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdSpec {
    pub h_spec: String,
    pub x_order: u32,
    pub action: Vec<u32>,
}

pub fn parse_sd_spec(text: &str, path: &str) -> Result<SdSpec, FileError> {
    let mut h_spec: Option<String> = None;
    let mut x_order: Option<u32> = None;
    let mut action: Option<Vec<u32>> = None;
    for (ln, line) in significant_lines(text) {
        let bad = |msg: String| FileError::Format {
            path: path.into(),
            line: ln,
            msg,
        };
        if let Some(rest) = line.strip_prefix("H ") {
            h_spec = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("order ") {
            x_order = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| bad("bad order value".into()))?,
            );
        } else if let Some(rest) = line.strip_prefix("action ") {
            let parsed: Result<Vec<u32>, _> = rest.split_whitespace().map(str::parse).collect();
            action = Some(parsed.map_err(|_| bad("action must be indices".into()))?);
        } else {
            return Err(bad(format!("unrecognized line {line:?}")));
        }
    }
    let missing = |what: &str| FileError::Format {
        path: path.into(),
        line: 0,
        msg: format!("missing {what} line"),
    };
    Ok(SdSpec {
        h_spec: h_spec.ok_or_else(|| missing("H"))?,
        x_order: x_order.ok_or_else(|| missing("order"))?,
        action: action.ok_or_else(|| missing("action"))?,
    })
}

pub fn render_sd_spec(spec: &SdSpec) -> String {
    let action: Vec<String> = spec.action.iter().map(u32::to_string).collect();
    format!(
        "H {}\norder {}\naction {}\n",
        spec.h_spec,
        spec.x_order,
        action.join(" ")
    )
}

/// Resolves a catalog spec, loading referenced files as needed.
pub fn resolve_spec(spec: &CatalogSpec) -> Result<FiniteGroup, FileError> {
    resolve_spec_depth(spec, 0)
}

fn resolve_spec_depth(spec: &CatalogSpec, depth: usize) -> Result<FiniteGroup, FileError> {
    if depth > MAX_SD_DEPTH {
        return Err(FileError::TooDeep(MAX_SD_DEPTH));
    }
    match spec {
        CatalogSpec::TableFile(path) => load_cayley_table(Path::new(path)),
        CatalogSpec::SdFile(path) => {
            let text = fs::read_to_string(path).map_err(|e| FileError::Read {
                path: path.clone(),
                source: e,
            })?;
            let sd = parse_sd_spec(&text, path)?;
            let (base, x_order, action) = resolve_sd_parts(&sd, depth)?;
            Ok(semidirect_product(&base, x_order, &action)?)
        }
        other => Ok(build_named(other)?),
    }
}

/// Builds the base group and validated action of a semidirect spec.
pub fn resolve_sd_parts(
    sd: &SdSpec,
    depth: usize,
) -> Result<(Arc<FiniteGroup>, u32, Vec<u32>), FileError> {
    let h_spec = CatalogSpec::parse(&sd.h_spec)?;
    let base = Arc::new(resolve_spec_depth(&h_spec, depth + 1)?);
    Ok((base, sd.x_order, sd.action.clone()))
}
