use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bidegree::Bidegree;
use crate::bounds::Analysis;
use crate::error::{Error, Result};
use crate::mesh::{build_tmesh, Orientation, Rect};
use crate::profile::build_profile;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::smoothness::{build_smoothness, Override};

/// A coordinate written either as an integer or as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    fn value(&self, location: impl Fn() -> String) -> Result<Rational> {
        match self {
            Coord::Int(n) => Ok(crate::rational::int(*n)),
            Coord::Text(s) => parse_rational(s).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse { location: location(), message },
                other => other,
            }),
        }
    }

    fn from(q: &Rational) -> Coord {
        Coord::Text(format_rational(q))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceEntry {
    rect: [Coord; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    deficit: Option<[i64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OverrideEntry {
    orientation: String,
    line: Coord,
    span: [Coord; 2],
    r: u32,
}

fn default_r() -> u32 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SmoothEntry {
    #[serde(default = "default_r")]
    default: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    overrides: Vec<OverrideEntry>,
}

impl Default for SmoothEntry {
    fn default() -> Self {
        SmoothEntry { default: default_r(), overrides: Vec::new() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    faces: Vec<FaceEntry>,
    #[serde(default)]
    smoothness: SmoothEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    levels: Option<Vec<[i64; 2]>>,
}

/// The validated content of a mesh document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshDoc {
    pub rects: Vec<Rect>,
    pub deficits: Vec<Bidegree>,
    pub default_r: u32,
    pub overrides: Vec<Override>,
    pub levels: Option<Vec<Bidegree>>,
}

impl MeshDoc {
    pub fn analysis(&self) -> Result<Analysis> {
        let mesh = build_tmesh(&self.rects)?;
        let profile = build_profile(&mesh, &self.deficits, self.levels.as_deref())?;
        let smooth = build_smoothness(&mesh, self.default_r, &self.overrides)?;
        Ok(Analysis::new(mesh, profile, smooth))
    }
}

pub fn parse_mesh_str(text: &str) -> Result<MeshDoc> {
    let file: Document = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let mut rects = Vec::with_capacity(file.faces.len());
    let mut deficits = Vec::with_capacity(file.faces.len());
    for (k, f) in file.faces.iter().enumerate() {
        let c: Vec<Rational> = f
            .rect
            .iter()
            .enumerate()
            .map(|(j, x)| x.value(|| format!("faces[{k}].rect[{j}]")))
            .collect::<Result<_>>()?;
        rects.push(Rect::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()));
        let d = f.deficit.unwrap_or([0, 0]);
        if d[0] < 0 || d[1] < 0 {
            return Err(Error::Parse { location: format!("faces[{k}].deficit"), message: "negative deficit".into() });
        }
        deficits.push(Bidegree(d[0], d[1]));
    }
    let mut overrides = Vec::new();
    for (k, o) in file.smoothness.overrides.iter().enumerate() {
        let orientation = match o.orientation.as_str() {
            "h" => Orientation::Horizontal,
            "v" => Orientation::Vertical,
            other => {
                return Err(Error::Parse {
                    location: format!("smoothness.overrides[{k}].orientation"),
                    message: format!("expected \"h\" or \"v\", got {other:?}"),
                })
            }
        };
        let line = o.line.value(|| format!("smoothness.overrides[{k}].line"))?;
        let a = o.span[0].value(|| format!("smoothness.overrides[{k}].span[0]"))?;
        let b = o.span[1].value(|| format!("smoothness.overrides[{k}].span[1]"))?;
        overrides.push(Override { orientation, line, span: (a, b), r: o.r });
    }
    let levels = file.levels.map(|l| l.into_iter().map(|p| Bidegree(p[0], p[1])).collect());
    Ok(MeshDoc { rects, deficits, default_r: file.smoothness.default, overrides, levels })
}

pub fn parse_mesh_file(path: &Path) -> Result<MeshDoc> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_mesh_str(&text)
}

pub fn write_mesh_str(doc: &MeshDoc) -> String {
    let file = Document {
        faces: doc
            .rects
            .iter()
            .zip(&doc.deficits)
            .map(|(r, d)| FaceEntry {
                rect: [Coord::from(&r.x0), Coord::from(&r.y0), Coord::from(&r.x1), Coord::from(&r.y1)],
                deficit: (!d.is_zero()).then_some([d.0, d.1]),
            })
            .collect(),
        smoothness: SmoothEntry {
            default: doc.default_r,
            overrides: doc
                .overrides
                .iter()
                .map(|o| OverrideEntry {
                    orientation: o.orientation.tag().to_string(),
                    line: Coord::from(&o.line),
                    span: [Coord::from(&o.span.0), Coord::from(&o.span.1)],
                    r: o.r,
                })
                .collect(),
        },
        levels: doc.levels.as_ref().map(|l| l.iter().map(|b| [b.0, b.1]).collect()),
    };
    serde_json::to_string_pretty(&file).expect("mesh documents always serialize")
}
