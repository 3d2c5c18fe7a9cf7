use std::collections::BTreeSet;

use crate::bidegree::Bidegree;
use crate::error::{Error, Result};
use crate::mesh::TMesh;

/// Degree deficits on every cell together with the level sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeveledProfile {
    pub face_deficit: Vec<Bidegree>,
    pub edge_deficit: Vec<Bidegree>,
    pub vertex_deficit: Vec<Bidegree>,
    pub deficit_set: Vec<Bidegree>,
    /// `n_0 = (0,0) < n_1 < ... < n_l`.
    pub levels: Vec<Bidegree>,
    /// `steps[i-1] = n_i - n_{i-1}`.
    pub steps: Vec<Bidegree>,
}

const STEPS: [Bidegree; 3] = [Bidegree(1, 0), Bidegree(0, 1), Bidegree(1, 1)];

pub fn build_profile(
    mesh: &TMesh,
    face_deficits: &[Bidegree],
    explicit_levels: Option<&[Bidegree]>,
) -> Result<LeveledProfile> {
    if face_deficits.len() != mesh.faces.len() {
        return Err(Error::Malformed(format!("{} deficits given for {} faces", face_deficits.len(), mesh.faces.len())));
    }
    if let Some(d) = face_deficits.iter().find(|d| d.0 < 0 || d.1 < 0) {
        return Err(Error::Malformed(format!("negative deficit {d}")));
    }
    let set: BTreeSet<Bidegree> = face_deficits.iter().copied().collect();
    let deficit_set: Vec<Bidegree> = set.into_iter().collect();
    for (i, a) in deficit_set.iter().enumerate() {
        for b in &deficit_set[i + 1..] {
            if !a.comparable(*b) {
                return Err(Error::UnorderedDeficits(a.to_string(), b.to_string()));
            }
        }
    }
    if deficit_set[0] != Bidegree::ZERO {
        return Err(Error::MissingZero);
    }

    let levels = match explicit_levels {
        Some(l) => {
            validate_levels(l, &deficit_set)?;
            l.to_vec()
        }
        None => diagonal_first(&deficit_set),
    };
    let steps = levels.windows(2).map(|w| w[1] - w[0]).collect();

    let min_over = |faces: &[usize]| faces.iter().map(|&f| face_deficits[f]).reduce(Bidegree::min).unwrap_or_default();
    let edge_deficit = mesh.edges.iter().map(|e| min_over(&e.faces)).collect();
    let vertex_deficit = mesh.vertices.iter().map(|v| min_over(&v.faces)).collect();

    Ok(LeveledProfile {
        face_deficit: face_deficits.to_vec(),
        edge_deficit,
        vertex_deficit,
        deficit_set,
        levels,
        steps,
    })
}

/// Steps diagonally while both coordinates trail the next target, then along the remaining axis.
fn diagonal_first(targets: &[Bidegree]) -> Vec<Bidegree> {
    let mut cur = Bidegree::ZERO;
    let mut out = vec![cur];
    for &t in &targets[1..] {
        while cur != t {
            cur = if cur.0 < t.0 && cur.1 < t.1 {
                cur + Bidegree(1, 1)
            } else if cur.0 < t.0 {
                cur + Bidegree(1, 0)
            } else {
                cur + Bidegree(0, 1)
            };
            out.push(cur);
        }
    }
    out
}

fn validate_levels(levels: &[Bidegree], deficits: &[Bidegree]) -> Result<()> {
    if levels.first() != Some(&Bidegree::ZERO) {
        return Err(Error::InvalidSequence("sequence must start at (0,0)".into()));
    }
    for w in levels.windows(2) {
        let d = w[1] - w[0];
        if !STEPS.contains(&d) {
            return Err(Error::InvalidSequence(format!("step {} -> {} is not allowed", w[0], w[1])));
        }
    }
    if let Some(d) = deficits.iter().find(|d| !levels.contains(d)) {
        return Err(Error::InvalidSequence(format!("deficit {d} is missing")));
    }
    let top = *deficits.last().unwrap();
    if *levels.last().unwrap() != top {
        return Err(Error::InvalidSequence(format!("sequence must end at {top}")));
    }
    Ok(())
}

impl LeveledProfile {
    /// `l`, the index of the last level.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn n(&self, i: usize) -> Bidegree {
        self.levels[i]
    }

    /// `n_i - n_{i-1}` for `1 <= i <= l`, zero at `l + 1`.
    pub fn step(&self, i: usize) -> Bidegree {
        if i >= 1 && i <= self.top() {
            self.steps[i - 1]
        } else {
            Bidegree::ZERO
        }
    }
}
