//! Euler characteristic, constant-complex homology, dimension bounds and certification.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::active::{all_levels, check_assumptions, ActiveLevel, AssumptionReport};
use crate::bidegree::Bidegree;
use crate::error::{Error, Result};
use crate::graded::{dim_edge_increment, dim_l, dim_m, dim_shift, dim_vertex_increment};
use crate::mesh::{Orientation, TMesh};
use crate::oracle::oracle_spline_dim;
use crate::profile::LeveledProfile;
use crate::segments::{
    contribution_sets, h0_ideal_upper, order_segments, segment_weight, LevelContext, OrderingStrategy,
};
use crate::smoothness::SmoothnessProfile;

/// A mesh with its deficits, smoothness and the active levels derived from them.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub mesh: TMesh,
    pub profile: LeveledProfile,
    pub smooth: SmoothnessProfile,
    pub levels: Vec<ActiveLevel>,
    pub contexts: Vec<LevelContext>,
}

impl Analysis {
    pub fn new(mesh: TMesh, profile: LeveledProfile, smooth: SmoothnessProfile) -> Analysis {
        let levels = all_levels(&mesh, &profile);
        let contexts = levels.iter().map(|l| LevelContext::new(&mesh, &profile, &smooth, l)).collect();
        Analysis { mesh, profile, smooth, levels, contexts }
    }

    pub fn assumptions(&self) -> AssumptionReport {
        check_assumptions(&self.levels)
    }

    fn edge_shift(&self, e: usize) -> Bidegree {
        let r = self.smooth.r(e) as i64 + 1;
        match self.mesh.edges[e].orientation {
            Orientation::Horizontal => Bidegree(0, r),
            Orientation::Vertical => Bidegree(r, 0),
        }
    }

    /// `(e_h, e_v)` at an interior vertex.
    fn vertex_shifts(&self, v: usize) -> (Bidegree, Bidegree) {
        let (r_vline, r_hline) = self.smooth.vertex_pair[v].expect("interior vertex");
        (Bidegree(0, r_hline as i64 + 1), Bidegree(r_vline as i64 + 1, 0))
    }

    /// Smallest deficit among the horizontal and among the vertical edges at `v`.
    fn orientation_deficits(&self, v: usize) -> (Bidegree, Bidegree) {
        let mut out = [None::<Bidegree>; 2];
        for &e in &self.mesh.vertices[v].edges {
            let slot = &mut out[(self.mesh.edges[e].orientation == Orientation::Vertical) as usize];
            let d = self.profile.edge_deficit[e];
            *slot = Some(slot.map_or(d, |p: Bidegree| if d.le(p) { d } else { p }));
        }
        (out[0].expect("interior vertex"), out[1].expect("interior vertex"))
    }

    /// Euler characteristic of the level-`i` quotient complex.
    pub fn level_euler(&self, i: usize, m: Bidegree) -> i64 {
        let lv = &self.profile.levels;
        let level = &self.levels[i - 1];
        let dm = dim_m(lv, i, Bidegree::ZERO, m).unwrap();
        let faces = level.faces.len() as i64 * dm;
        let edges: i64 =
            level.interior_edges.iter().map(|&e| dm - dim_edge_increment(lv, i, self.edge_shift(e), m).unwrap()).sum();
        let vertices: i64 = level
            .interior_vertices
            .iter()
            .map(|&v| {
                let (eh, ev) = self.vertex_shifts(v);
                let incr = match level_orientations(&self.mesh, level, v) {
                    (true, true) => dim_vertex_increment(lv, i, eh, ev, m),
                    (true, false) => dim_edge_increment(lv, i, eh, m),
                    (false, true) => dim_edge_increment(lv, i, ev, m),
                    (false, false) => unreachable!("active vertex without active edges"),
                };
                dm - incr.unwrap()
            })
            .sum();
        faces - edges + vertices
    }

    /// `(chi, chi_direct)`: the level-decomposed value and the undecomposed one.
    pub fn euler_pair(&self, m: Bidegree) -> (i64, i64) {
        let chi = (1..=self.levels.len()).map(|i| self.level_euler(i, m)).sum();
        let p = &self.profile;
        let faces: i64 = p.face_deficit.iter().map(|&d| dim_shift(m, d)).sum();
        let edges: i64 = self
            .mesh
            .interior_edges()
            .map(|e| {
                let d = p.edge_deficit[e];
                dim_shift(m, d) - dim_shift(m, d + self.edge_shift(e))
            })
            .sum();
        let vertices: i64 = self
            .mesh
            .interior_vertices()
            .map(|v| {
                let d = p.vertex_deficit[v];
                let (eh, ev) = self.vertex_shifts(v);
                let (ah, av) = self.orientation_deficits(v);
                let both = Bidegree(ah.0.max(av.0), ah.1.max(av.1)) + eh + ev;
                let ideal = dim_shift(m, ah + eh) + dim_shift(m, av + ev) - dim_shift(m, both);
                dim_shift(m, d) - ideal
            })
            .sum();
        (chi, faces - edges + vertices)
    }

    pub fn euler_characteristic(&self, m: Bidegree) -> Result<i64> {
        let (chi, chi_direct) = self.euler_pair(m);
        if chi != chi_direct {
            return Err(Error::DecompositionMismatch { chi, chi_direct });
        }
        Ok(chi)
    }

    /// `(h2, h1, h0)` of the level-`i` constant complex.
    pub fn constant_complex_dims(&self, i: usize, m: Bidegree) -> (i64, i64, i64) {
        constant_complex_dims(&self.profile, &self.levels[i - 1], m)
    }

    pub fn configuration1_holds(&self, m: Bidegree) -> bool {
        let top = self.profile.top();
        self.levels.iter().all(|level| {
            let n = self.profile.n(level.index.min(top));
            let room = m - n;
            level.interior_vertices.iter().all(|&v| {
                let (rh, rv) = self.smooth.vertex_pair[v].unwrap();
                match level_orientations(&self.mesh, level, v) {
                    (true, true) => room.0 >= rh as i64 && room.1 >= rv as i64,
                    _ => true,
                }
            })
        })
    }

    pub fn report(&self, m: Bidegree, strategy: OrderingStrategy) -> Result<DimReport> {
        let chi = self.euler_characteristic(m)?;
        let (_, chi_direct) = self.euler_pair(m);
        let assumptions = self.assumptions();
        let config1 = self.configuration1_holds(m);
        let mut rows = Vec::new();
        for (level, ctx) in self.levels.iter().zip(&self.contexts) {
            let i = level.index;
            let dm = dim_m(&self.profile.levels, i, Bidegree::ZERO, m)?;
            let (h2_c, h1_c, h0_c) = self.constant_complex_dims(i, m);
            let mut row = LevelRow {
                i,
                n: self.profile.n(i.min(self.profile.top())),
                c: level.c,
                h: level.h,
                faces: level.faces.len(),
                dim_m: dm,
                chi: self.level_euler(i, m),
                h2_c,
                h1_c,
                h0_c,
                h0_i_upper: None,
                interior_segments: ctx.interior.len(),
                ordering: Vec::new(),
                weights: Vec::new(),
            };
            if assumptions.ok() {
                let ord = order_segments(ctx, m, strategy)?;
                let sets = contribution_sets(ctx, &ord, m);
                row.h0_i_upper = Some(h0_ideal_upper(ctx, &ord, m)?);
                row.weights = ord
                    .order
                    .iter()
                    .map(|&k| SegmentWeight {
                        segment: ctx.segments[k].label(),
                        weight: segment_weight(ctx, k, &sets, m),
                        threshold: ctx.weight_threshold(k, m),
                    })
                    .collect();
                row.ordering = ord.order.iter().map(|&k| ctx.segments[k].label()).collect();
            }
            rows.push(row);
        }

        let mut report = DimReport {
            m,
            chi,
            chi_direct,
            assumptions_ok: assumptions.ok(),
            holes: assumptions.holes,
            configuration1: config1,
            lower_general: None,
            lower_special: None,
            upper: None,
            upper_clamped: false,
            certified: false,
            exact: None,
            oracle: None,
            levels: rows,
        };
        if report.assumptions_ok {
            let c_sum: i64 = report.levels.iter().map(|r| r.h0_c).sum();
            let slack: i64 = report.levels.iter().map(|r| r.h0_i_upper.unwrap() - r.h0_c).sum();
            report.lower_general = Some(chi - c_sum);
            report.lower_special = config1.then_some(chi);
            let mut upper = chi + slack;
            if let Some(ls) = report.lower_special {
                if upper < ls {
                    upper = ls;
                    report.upper_clamped = true;
                }
            }
            report.upper = Some(upper);
            let (certified, exact) = certify_stable(&report);
            report.certified = certified;
            report.exact = exact;
        }
        Ok(report)
    }

    pub fn oracle(&self, m: Bidegree) -> i64 {
        oracle_spline_dim(&self.mesh, &self.profile, &self.smooth, m) as i64
    }

    /// Reports over a degree sweep, computed in parallel.
    pub fn sweep(&self, degrees: &[Bidegree], strategy: OrderingStrategy, with_oracle: bool) -> Result<Vec<DimReport>> {
        degrees
            .par_iter()
            .map(|&m| {
                let mut r = self.report(m, strategy)?;
                if with_oracle {
                    r.oracle = Some(self.oracle(m));
                }
                Ok(r)
            })
            .collect()
    }
}

/// Whether `v` meets a horizontal and a vertical edge of the level. A vertex with only collinear
/// active edges subdivides an edge and carries that edge's ideal.
pub fn level_orientations(mesh: &TMesh, level: &ActiveLevel, v: usize) -> (bool, bool) {
    let mut has = (false, false);
    for &e in &mesh.vertices[v].edges {
        if level.edges.binary_search(&e).is_ok() {
            match mesh.edges[e].orientation {
                Orientation::Horizontal => has.0 = true,
                Orientation::Vertical => has.1 = true,
            }
        }
    }
    has
}

pub fn constant_complex_dims(profile: &LeveledProfile, level: &ActiveLevel, m: Bidegree) -> (i64, i64, i64) {
    let lv = &profile.levels;
    let i = level.index;
    let dm = dim_m(lv, i, Bidegree::ZERO, m).unwrap();
    let h2 = if i == lv.len() { dim_l(lv, lv.len() - 1, Bidegree::ZERO, m).unwrap() } else { 0 };
    (h2, level.h * dm, level.c * dm)
}

pub fn euler_characteristic(
    mesh: &TMesh,
    profile: &LeveledProfile,
    smooth: &SmoothnessProfile,
    m: Bidegree,
) -> Result<(i64, i64)> {
    let a = Analysis::new(mesh.clone(), profile.clone(), smooth.clone());
    let pair = a.euler_pair(m);
    if pair.0 != pair.1 {
        return Err(Error::DecompositionMismatch { chi: pair.0, chi_direct: pair.1 });
    }
    Ok(pair)
}

pub fn configuration1_holds(mesh: &TMesh, profile: &LeveledProfile, smooth: &SmoothnessProfile, m: Bidegree) -> bool {
    Analysis::new(mesh.clone(), profile.clone(), smooth.clone()).configuration1_holds(m)
}

/// Full report; fails when a level has relative holes.
pub fn bounds(
    mesh: &TMesh,
    profile: &LeveledProfile,
    smooth: &SmoothnessProfile,
    m: Bidegree,
    strategy: OrderingStrategy,
) -> Result<DimReport> {
    let a = Analysis::new(mesh.clone(), profile.clone(), smooth.clone());
    let r = a.report(m, strategy)?;
    if !r.assumptions_ok {
        return Err(Error::AssumptionViolated(format!("relative holes at levels {:?}", r.holes)));
    }
    Ok(r)
}

/// Stable iff Configuration 1 holds and every level's upper bound meets `c_i dim M_i`.
pub fn certify_stable(report: &DimReport) -> (bool, Option<i64>) {
    let ok =
        report.assumptions_ok && report.configuration1 && report.levels.iter().all(|r| r.h0_i_upper == Some(r.h0_c));
    (ok, ok.then_some(report.chi))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentWeight {
    pub segment: String,
    pub weight: i64,
    pub threshold: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRow {
    pub i: usize,
    pub n: Bidegree,
    pub c: i64,
    pub h: i64,
    pub faces: usize,
    pub dim_m: i64,
    pub chi: i64,
    pub h2_c: i64,
    pub h1_c: i64,
    pub h0_c: i64,
    pub h0_i_upper: Option<i64>,
    pub interior_segments: usize,
    pub ordering: Vec<String>,
    pub weights: Vec<SegmentWeight>,
}

impl LevelRow {
    pub fn slack(&self) -> Option<i64> {
        self.h0_i_upper.map(|u| u - self.h0_c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub m: Bidegree,
    pub chi: i64,
    pub chi_direct: i64,
    pub assumptions_ok: bool,
    pub holes: Vec<(usize, i64)>,
    pub configuration1: bool,
    pub lower_general: Option<i64>,
    pub lower_special: Option<i64>,
    pub upper: Option<i64>,
    pub upper_clamped: bool,
    pub certified: bool,
    pub exact: Option<i64>,
    pub oracle: Option<i64>,
    pub levels: Vec<LevelRow>,
}
