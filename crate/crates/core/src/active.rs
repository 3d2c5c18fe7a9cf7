use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::bareiss_rank_i64;
use crate::mesh::TMesh;
use crate::profile::LeveledProfile;

/// The sub-mesh of cells whose deficit is at most `n_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveLevel {
    pub index: usize,
    pub faces: Vec<usize>,
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    /// Active edges not on the domain boundary.
    pub interior_edges: Vec<usize>,
    pub interior_vertices: Vec<usize>,
    /// Active edges lying on the domain boundary.
    pub boundary_trace: Vec<usize>,
    pub c: i64,
    pub h: i64,
}

pub fn active_mesh(mesh: &TMesh, profile: &LeveledProfile, i: usize) -> Result<ActiveLevel> {
    let max = profile.levels.len();
    if i < 1 || i > max {
        return Err(Error::IndexOutOfRange { index: i, max });
    }
    let bound = profile.n(i - 1);
    let faces: Vec<usize> = (0..mesh.faces.len()).filter(|&f| profile.face_deficit[f].le(bound)).collect();
    Ok(ActiveLevel::from_faces(mesh, i, faces))
}

impl ActiveLevel {
    /// Closure of a face set: edges and vertices of the active faces.
    pub fn from_faces(mesh: &TMesh, index: usize, mut faces: Vec<usize>) -> ActiveLevel {
        faces.sort_unstable();
        faces.dedup();
        let mut edges = BTreeSet::new();
        for &f in &faces {
            edges.extend(mesh.face_edges[f].iter().map(|p| p.0));
        }
        let mut vertices = BTreeSet::new();
        for &e in &edges {
            vertices.extend(mesh.edges[e].ends);
        }
        let edges: Vec<usize> = edges.into_iter().collect();
        let vertices: Vec<usize> = vertices.into_iter().collect();
        let interior_edges = edges.iter().copied().filter(|&e| !mesh.edges[e].boundary).collect();
        let boundary_trace = edges.iter().copied().filter(|&e| mesh.edges[e].boundary).collect();
        let interior_vertices = vertices.iter().copied().filter(|&v| !mesh.vertices[v].on_boundary()).collect();
        let mut level = ActiveLevel {
            index,
            faces,
            edges,
            vertices,
            interior_edges,
            interior_vertices,
            boundary_trace,
            c: 0,
            h: 0,
        };
        let (c, h) = relative_betti(mesh, &level);
        level.c = c;
        level.h = h;
        level
    }

    /// `F - E_rel + V_rel`, which must equal `c - h`.
    pub fn relative_euler(&self) -> i64 {
        self.faces.len() as i64 - self.interior_edges.len() as i64 + self.interior_vertices.len() as i64
    }
}

/// Boundary matrices of the chain complex of the level relative to the domain boundary.
#[derive(Debug, Clone)]
pub struct RelativeComplex {
    /// Rows are relative edges, columns relative vertices.
    pub d1: Vec<Vec<i64>>,
    /// Rows are faces, columns relative edges.
    pub d2: Vec<Vec<i64>>,
}

impl RelativeComplex {
    pub fn new(mesh: &TMesh, level: &ActiveLevel) -> RelativeComplex {
        let epos = |e: usize| level.interior_edges.binary_search(&e).ok();
        let vpos = |v: usize| level.interior_vertices.binary_search(&v).ok();
        let d1 = level
            .interior_edges
            .iter()
            .map(|&e| {
                let mut row = vec![0; level.interior_vertices.len()];
                let [lo, hi] = mesh.edges[e].ends;
                if let Some(k) = vpos(hi) {
                    row[k] += 1;
                }
                if let Some(k) = vpos(lo) {
                    row[k] -= 1;
                }
                row
            })
            .collect();
        let d2 = level
            .faces
            .iter()
            .map(|&f| {
                let mut row = vec![0; level.interior_edges.len()];
                for &(e, s) in &mesh.face_edges[f] {
                    if let Some(k) = epos(e) {
                        row[k] += s as i64;
                    }
                }
                row
            })
            .collect();
        RelativeComplex { d1, d2 }
    }
}

/// `(c, h)`: ranks of relative `H_0` and `H_1` over Q.
pub fn relative_betti(mesh: &TMesh, level: &ActiveLevel) -> (i64, i64) {
    let cx = RelativeComplex::new(mesh, level);
    let r1 = bareiss_rank_i64(&cx.d1) as i64;
    let r2 = bareiss_rank_i64(&cx.d2) as i64;
    let n0 = level.interior_vertices.len() as i64;
    let n1 = level.interior_edges.len() as i64;
    (n0 - r1, n1 - r1 - r2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    /// `(level index, h)` for every level with relative holes.
    pub holes: Vec<(usize, i64)>,
}

impl AssumptionReport {
    pub fn ok(&self) -> bool {
        self.holes.is_empty()
    }
}

pub fn check_assumptions(levels: &[ActiveLevel]) -> AssumptionReport {
    AssumptionReport { holes: levels.iter().filter(|l| l.h != 0).map(|l| (l.index, l.h)).collect() }
}

pub fn all_levels(mesh: &TMesh, profile: &LeveledProfile) -> Vec<ActiveLevel> {
    (1..=profile.levels.len()).map(|i| active_mesh(mesh, profile, i).expect("index in range")).collect()
}
