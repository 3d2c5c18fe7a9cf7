//! File formats: mesh documents, reports and SVG drawings.

mod meshfile;
mod report;
mod svg;

pub use meshfile::{parse_mesh_file, parse_mesh_str, write_mesh_str, MeshDoc};
pub use report::{parse_reports, render_table, serialize_reports};
pub use svg::render_level_svg;

use std::io::Write;
use std::path::Path;

use crate::error::Result;

/// Writes through a temporary file in the target directory, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Parses `"m1,m2"` or `"m1,m2:M1,M2"` into the inclusive rectangle of bi-degrees in colex order.
pub fn parse_degree_range(text: &str) -> Result<Vec<crate::Bidegree>> {
    let pair = |s: &str| -> Result<crate::Bidegree> {
        let bad =
            || crate::Error::Parse { location: "--degrees".into(), message: format!("expected m1,m2 but got {s:?}") };
        let (a, b) = s.trim().split_once(',').ok_or_else(bad)?;
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if a < 0 || b < 0 {
            return Err(bad());
        }
        Ok(crate::Bidegree(a, b))
    };
    let (lo, hi) = match text.split_once(':') {
        Some((a, b)) => (pair(a)?, pair(b)?),
        None => {
            let p = pair(text)?;
            (p, p)
        }
    };
    if lo.0 > hi.0 || lo.1 > hi.1 {
        return Err(crate::Error::Parse { location: "--degrees".into(), message: format!("empty range {text:?}") });
    }
    Ok((lo.1..=hi.1).flat_map(|b| (lo.0..=hi.0).map(move |a| crate::Bidegree(a, b))).collect())
}
