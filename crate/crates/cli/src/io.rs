//! Input parsing (polytope and matrix JSON, point CSV) and report plumbing
//! shared by the subcommands.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use orthopoly::geometry::{hull_from_vertices, Polytope};
use orthopoly::rat::parse_rat;
use orthopoly::weighted::{MatrixData, ZonotopeSpec};
use orthopoly::Rat;

#[derive(Deserialize)]
struct PolytopeFile {
    dim: usize,
    vertices: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct MatrixFile {
    matrix: Vec<Vec<serde_json::Value>>,
    m: usize,
    #[serde(default)]
    kernel: Option<Vec<Vec<i64>>>,
}

/// Reads a file and returns its contents along with the hex SHA-256 digest
/// recorded in reports.
pub fn read_hashed(path: &Path) -> Result<(String, String)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let digest = Sha256::digest(text.as_bytes());
    Ok((text, format!("{digest:x}")))
}

pub fn load_polytope(path: &Path) -> Result<(Polytope<Rat>, String)> {
    let (text, hash) = read_hashed(path)?;
    let file: PolytopeFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mut vertices: Vec<Vec<Rat>> = Vec::with_capacity(file.vertices.len());
    for row in &file.vertices {
        let mut v = Vec::with_capacity(row.len());
        for entry in row {
            v.push(parse_rat(entry).with_context(|| format!("bad rational {entry:?}"))?);
        }
        vertices.push(v);
    }
    let p = hull_from_vertices(&vertices, file.dim)?;
    Ok((p, hash))
}

pub fn load_zonotope(
    path: &Path,
    m_override: Option<usize>,
    kernel_path: Option<&Path>,
) -> Result<(ZonotopeSpec, Vec<String>)> {
    let (text, hash) = read_hashed(path)?;
    let file: MatrixFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let all_strings = file
        .matrix
        .iter()
        .flatten()
        .all(|v| matches!(v, serde_json::Value::String(_)));
    let data = if all_strings {
        let rows: Vec<Vec<Rat>> = file
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        let s = v.as_str().expect("checked string");
                        parse_rat(s).with_context(|| format!("bad rational {s:?}"))
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        MatrixData::Exact(rows)
    } else {
        let rows: Vec<Vec<f64>> = file
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.as_f64()
                            .with_context(|| format!("matrix entry {v} is neither string nor number"))
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        MatrixData::Numeric(rows)
    };
    let mut spec = ZonotopeSpec::new(data, m_override.unwrap_or(file.m))?;
    let mut hashes = vec![hash];
    spec.kernel = file.kernel;
    if let Some(kpath) = kernel_path {
        let (ktext, khash) = read_hashed(kpath)?;
        spec.kernel = Some(
            serde_json::from_str(&ktext)
                .with_context(|| format!("parsing {}", kpath.display()))?,
        );
        hashes.push(khash);
    }
    Ok((spec, hashes))
}

pub fn load_points_csv(path: &Path) -> Result<(Vec<Vec<f64>>, String)> {
    let (text, hash) = read_hashed(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record?;
        let row: Vec<f64> = record
            .iter()
            .map(|s| s.trim().parse::<f64>().context("bad point coordinate"))
            .collect::<Result<_>>()?;
        points.push(row);
    }
    if points.is_empty() {
        bail!("point file {} is empty", path.display());
    }
    Ok((points, hash))
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().with_context(|| format!("bad number {x:?}")))
        .collect()
}

pub fn write_points_csv(path: &Path, points: &[Vec<f64>]) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().from_path(path)?;
    for row in points {
        writer.write_record(row.iter().map(|x| format!("{x:.17e}")))?;
    }
    writer.flush()?;
    Ok(())
}
