//! Maximal segments of an active level and the upper bound on `dim H_0` of the
//! ideal complex built from their contribution sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::active::ActiveLevel;
use crate::bidegree::Bidegree;
use crate::error::{Error, Result};
use crate::graded::{dim_m, dim_power_sum_in, Direction, LevelSel, PowerGen};
use crate::mesh::{Orientation, TMesh};
use crate::profile::LeveledProfile;
use crate::rational::Rational;
use crate::smoothness::SmoothnessProfile;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxSegment {
    pub level: usize,
    pub orientation: Orientation,
    pub line: Rational,
    pub lo: Rational,
    pub hi: Rational,
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    /// No vertex on the domain boundary.
    pub interior: bool,
    pub r: u32,
    /// `(0, r+1)` for horizontal, `(r+1, 0)` for vertical segments.
    pub e: Bidegree,
    pub dp: Bidegree,
}

impl MaxSegment {
    /// The axis along which the bi-degree is tested for this segment's weight.
    pub fn axis(&self) -> usize {
        match self.orientation {
            Orientation::Horizontal => 0,
            Orientation::Vertical => 1,
        }
    }

    /// Direction of `Delta_rho`, the power of this segment's line form.
    pub fn direction(&self) -> Direction {
        match self.orientation {
            Orientation::Horizontal => Direction::AlongT,
            Orientation::Vertical => Direction::AlongS,
        }
    }

    /// `h:y=1/2[0,1]` style identifier.
    pub fn label(&self) -> String {
        use crate::rational::format_rational as f;
        match self.orientation {
            Orientation::Horizontal => format!("h:y={}[{},{}]", f(&self.line), f(&self.lo), f(&self.hi)),
            Orientation::Vertical => format!("v:x={}[{},{}]", f(&self.line), f(&self.lo), f(&self.hi)),
        }
    }

    pub fn power(&self, extra: Bidegree) -> PowerGen {
        PowerGen { knot: self.line.clone(), d: self.r as i64 + 1, extra, direction: self.direction() }
    }
}

pub fn maximal_segments(
    mesh: &TMesh,
    profile: &LeveledProfile,
    smooth: &SmoothnessProfile,
    level: &ActiveLevel,
) -> Vec<MaxSegment> {
    let i = level.index;
    let step = profile.step(i);
    let mut lines: BTreeMap<(Orientation, Rational), Vec<usize>> = BTreeMap::new();
    for &e in &level.interior_edges {
        let ed = &mesh.edges[e];
        lines.entry((ed.orientation, ed.line.clone())).or_default().push(e);
    }
    let mut out = Vec::new();
    for ((o, line), mut es) in lines {
        es.sort_by(|a, b| mesh.edges[*a].lo.cmp(&mesh.edges[*b].lo));
        let mut chains: Vec<Vec<usize>> = Vec::new();
        for e in es {
            match chains.last_mut() {
                Some(c) if mesh.edges[*c.last().unwrap()].hi == mesh.edges[e].lo => c.push(e),
                _ => chains.push(vec![e]),
            }
        }
        for edges in chains {
            let mut vertices: BTreeSet<usize> = BTreeSet::new();
            for &e in &edges {
                vertices.extend(mesh.edges[e].ends);
            }
            let vertices: Vec<usize> = vertices.into_iter().collect();
            let interior = vertices.iter().all(|&v| !mesh.vertices[v].on_boundary());
            let r = smooth.r(edges[0]);
            let (e, dp) = match o {
                Orientation::Horizontal => (Bidegree(0, r as i64 + 1), Bidegree(step.0, 0)),
                Orientation::Vertical => (Bidegree(r as i64 + 1, 0), Bidegree(0, step.1)),
            };
            out.push(MaxSegment {
                level: i,
                orientation: o,
                line: line.clone(),
                lo: mesh.edges[edges[0]].lo.clone(),
                hi: mesh.edges[*edges.last().unwrap()].hi.clone(),
                edges,
                vertices,
                interior,
                r,
                e,
                dp,
            });
        }
    }
    out
}

/// Everything segment analysis needs about one active level.
#[derive(Debug, Clone)]
pub struct LevelContext {
    pub index: usize,
    pub levels: Vec<Bidegree>,
    pub c: i64,
    pub h: i64,
    pub segments: Vec<MaxSegment>,
    /// Indices of interior segments, in canonical order.
    pub interior: Vec<usize>,
    /// Perpendicular segments sharing a vertex, per segment.
    pub crossers: Vec<Vec<usize>>,
}

impl LevelContext {
    pub fn new(mesh: &TMesh, profile: &LeveledProfile, smooth: &SmoothnessProfile, level: &ActiveLevel) -> Self {
        let segments = maximal_segments(mesh, profile, smooth, level);
        let mut at: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, s) in segments.iter().enumerate() {
            for &v in &s.vertices {
                at.entry(v).or_default().push(k);
            }
        }
        let crossers = segments
            .iter()
            .map(|s| {
                let mut c: BTreeSet<usize> = BTreeSet::new();
                for v in &s.vertices {
                    for &o in &at[v] {
                        if segments[o].orientation != s.orientation {
                            c.insert(o);
                        }
                    }
                }
                c.into_iter().collect()
            })
            .collect();
        let interior = (0..segments.len()).filter(|&k| segments[k].interior).collect();
        LevelContext {
            index: level.index,
            levels: profile.levels.clone(),
            c: level.c,
            h: level.h,
            segments,
            interior,
            crossers,
        }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// `n_{i-1}`.
    pub fn base(&self) -> Bidegree {
        self.levels[self.index - 1]
    }

    /// `n_i`, or `n_l` at the top level.
    pub fn current(&self) -> Bidegree {
        self.levels[self.index.min(self.top())]
    }

    pub fn crosses(&self, a: usize, b: usize) -> bool {
        self.crossers[a].binary_search(&b).is_ok()
    }

    pub fn dim_m_rho(&self, k: usize, m: Bidegree) -> i64 {
        dim_m(&self.levels, self.index, self.segments[k].e, m).expect("level index in range")
    }

    /// `(m_c - n_{i-1,c} - r)_+` summed over `others`, with `c` the axis of `k`.
    fn weight_over(&self, k: usize, others: impl IntoIterator<Item = usize>, m: Bidegree) -> i64 {
        let c = self.segments[k].axis();
        let top = m.get(c) - self.base().get(c);
        others.into_iter().map(|o| (top - self.segments[o].r as i64).max(0)).sum()
    }

    pub fn weight_threshold(&self, k: usize, m: Bidegree) -> i64 {
        let c = self.segments[k].axis();
        m.get(c) - self.base().get(c) + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum OrderingStrategy {
    Input,
    Greedy,
    Exhaustive,
    /// Exhaustive up to 8 interior segments, greedy beyond.
    #[default]
    Auto,
}

impl std::str::FromStr for OrderingStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "input" => Ok(Self::Input),
            "greedy" => Ok(Self::Greedy),
            "exhaustive" => Ok(Self::Exhaustive),
            "auto" => Ok(Self::Auto),
            _ => Err(Error::Parse { location: "ordering".into(), message: format!("unknown strategy {s:?}") }),
        }
    }
}

pub const EXHAUSTIVE_LIMIT: usize = 8;

/// Interior segments listed from lowest to highest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentOrdering {
    pub order: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl SegmentOrdering {
    pub fn new(ctx: &LevelContext, order: Vec<usize>) -> Result<Self> {
        let mut pos = vec![None; ctx.segments.len()];
        for (p, &k) in order.iter().enumerate() {
            if k >= ctx.segments.len() || !ctx.segments[k].interior || pos[k].is_some() {
                return Err(Error::Malformed(format!("ordering entry {k} is not a distinct interior segment")));
            }
            pos[k] = Some(p);
        }
        if order.len() != ctx.interior.len() {
            return Err(Error::Malformed("ordering must list every interior segment once".into()));
        }
        Ok(SegmentOrdering { order, pos })
    }

    pub fn pos(&self, k: usize) -> Option<usize> {
        self.pos[k]
    }

    fn below(&self, a: usize, b: usize) -> bool {
        matches!((self.pos[a], self.pos[b]), (Some(x), Some(y)) if x < y)
    }
}

/// Contribution sets of one interior segment.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SegmentSets {
    pub gamma: Vec<usize>,
    pub upsilon: Vec<(usize, usize)>,
    /// Sum of `(m_c - n_{i,c} - r)_+` over the distinct second entries of `upsilon`.
    pub upsilon_sum: i64,
    pub upsilon_threshold: i64,
    pub theta: Vec<(usize, usize)>,
    pub lambda: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributionSets {
    pub per: BTreeMap<usize, SegmentSets>,
}

fn upsilon_sum(ctx: &LevelContext, k: usize, pairs: &[(usize, usize)], m: Bidegree) -> (i64, i64) {
    let c = ctx.segments[k].axis();
    let top = m.get(c) - ctx.current().get(c);
    let seconds: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
    let sum = seconds.iter().map(|&o| (top - ctx.segments[o].r as i64).max(0)).sum();
    (sum, top + 1)
}

pub fn contribution_sets(ctx: &LevelContext, ord: &SegmentOrdering, m: Bidegree) -> ContributionSets {
    let with_new_relations = ctx.index <= ctx.top();
    let segs = &ctx.segments;
    let mut per: BTreeMap<usize, SegmentSets> = BTreeMap::new();
    for &k in &ctx.interior {
        let gamma: Vec<usize> =
            ctx.crossers[k].iter().copied().filter(|&o| !segs[o].interior || ord.below(o, k)).collect();
        let mut upsilon = Vec::new();
        if with_new_relations {
            for &a in &ctx.interior {
                if a == k || segs[a].orientation != segs[k].orientation || !ord.below(a, k) || segs[k].r < segs[a].r {
                    continue;
                }
                for &b in &ctx.crossers[k] {
                    if segs[b].interior && ctx.crosses(b, a) {
                        upsilon.push((a, b));
                    }
                }
            }
        }
        let (sum, thr) = upsilon_sum(ctx, k, &upsilon, m);
        let mut theta = Vec::new();
        if with_new_relations && !upsilon.is_empty() {
            let inner: Vec<usize> = ctx.crossers[k].iter().copied().filter(|&o| segs[o].interior).collect();
            for &a in &inner {
                let sub: Vec<(usize, usize)> = upsilon.iter().copied().filter(|p| ord.below(p.0, a)).collect();
                if sub.is_empty() {
                    continue;
                }
                let (s, t) = upsilon_sum(ctx, k, &sub, m);
                if s < t {
                    continue;
                }
                for &b in &inner {
                    if b != a && segs[b].r >= segs[a].r && ord.below(a, b) {
                        theta.push((a, b));
                    }
                }
            }
        }
        per.insert(
            k,
            SegmentSets { gamma, upsilon, upsilon_sum: sum, upsilon_threshold: thr, theta, lambda: Vec::new() },
        );
    }
    let keys: Vec<usize> = per.keys().copied().collect();
    for &k in &keys {
        let mut lambda: BTreeSet<usize> = per[&k].gamma.iter().copied().collect();
        for &o in &keys {
            for &(a, b) in &per[&o].theta {
                if b == k || (a == k && segs[o].dp.is_zero()) {
                    lambda.insert(o);
                }
            }
        }
        per.get_mut(&k).unwrap().lambda = lambda.into_iter().collect();
    }
    ContributionSets { per }
}

pub fn segment_weight(ctx: &LevelContext, k: usize, sets: &ContributionSets, m: Bidegree) -> i64 {
    ctx.weight_over(k, sets.per[&k].lambda.iter().copied(), m)
}

/// Generators of `D^rho` as `(segment, extra shift)`.
pub fn contribution_generators(ctx: &LevelContext, k: usize, sets: &ContributionSets) -> Vec<(usize, Bidegree)> {
    let s = &sets.per[&k];
    let mut gens: BTreeMap<usize, Bidegree> = s.lambda.iter().map(|&o| (o, Bidegree::ZERO)).collect();
    for &(_, b) in &s.upsilon {
        gens.entry(b).or_insert(ctx.segments[k].dp);
    }
    gens.into_iter().collect()
}

fn dim_of_generators(ctx: &LevelContext, k: usize, gens: &[(usize, Bidegree)], m: Bidegree) -> i64 {
    let powers: Vec<PowerGen> = gens.iter().map(|&(o, x)| ctx.segments[o].power(x)).collect();
    dim_power_sum_in(&ctx.levels, LevelSel::Pair(ctx.index), &powers, ctx.segments[k].e, m)
        .expect("generators cross the segment and share one direction")
}

pub fn dim_d_contribution(ctx: &LevelContext, k: usize, sets: &ContributionSets, m: Bidegree) -> i64 {
    if segment_weight(ctx, k, sets, m) >= ctx.weight_threshold(k, m) {
        return ctx.dim_m_rho(k, m);
    }
    dim_of_generators(ctx, k, &contribution_generators(ctx, k, sets), m)
}

/// Upper bound of the ideal complex `H_0` using only the plain `Gamma` generators.
pub fn h0_ideal_upper_plain(ctx: &LevelContext, ord: &SegmentOrdering, m: Bidegree) -> i64 {
    let sets = contribution_sets(ctx, ord, m);
    ctx.interior
        .iter()
        .map(|&k| {
            let gens: Vec<(usize, Bidegree)> = sets.per[&k].gamma.iter().map(|&o| (o, Bidegree::ZERO)).collect();
            ctx.dim_m_rho(k, m) - dim_of_generators(ctx, k, &gens, m)
        })
        .sum()
}

type Memo = HashMap<(usize, Vec<(usize, Bidegree)>), i64>;

fn bound_with(ctx: &LevelContext, ord: &SegmentOrdering, m: Bidegree, memo: &mut Memo) -> i64 {
    let sets = contribution_sets(ctx, ord, m);
    let mut total = 0;
    for &k in &ctx.interior {
        let full = ctx.dim_m_rho(k, m);
        if segment_weight(ctx, k, &sets, m) >= ctx.weight_threshold(k, m) {
            continue;
        }
        let gens = contribution_generators(ctx, k, &sets);
        let d = *memo.entry((k, gens)).or_insert_with_key(|(k, g)| dim_of_generators(ctx, *k, g, m));
        total += full - d;
    }
    total
}

pub fn h0_ideal_upper(ctx: &LevelContext, ord: &SegmentOrdering, m: Bidegree) -> Result<i64> {
    if ctx.h != 0 {
        return Err(Error::AssumptionViolated(format!("level {} has {} relative holes", ctx.index, ctx.h)));
    }
    Ok(bound_with(ctx, ord, m, &mut Memo::new()))
}

pub fn order_segments(ctx: &LevelContext, m: Bidegree, strategy: OrderingStrategy) -> Result<SegmentOrdering> {
    let n = ctx.interior.len();
    match strategy {
        OrderingStrategy::Input => SegmentOrdering::new(ctx, ctx.interior.clone()),
        OrderingStrategy::Greedy => greedy(ctx, m),
        OrderingStrategy::Exhaustive if n > EXHAUSTIVE_LIMIT => Err(Error::TooManyForExhaustive(n)),
        OrderingStrategy::Exhaustive => exhaustive(ctx, m),
        OrderingStrategy::Auto if n <= EXHAUSTIVE_LIMIT => exhaustive(ctx, m),
        OrderingStrategy::Auto => greedy(ctx, m),
    }
}

/// Repeatedly appends the segment with the largest weight over its already placed crossers.
fn greedy(ctx: &LevelContext, m: Bidegree) -> Result<SegmentOrdering> {
    let mut placed = vec![false; ctx.segments.len()];
    let mut order = Vec::new();
    while order.len() < ctx.interior.len() {
        let best = ctx
            .interior
            .iter()
            .copied()
            .filter(|&k| !placed[k])
            .max_by_key(|&k| {
                let w = ctx.weight_over(
                    k,
                    ctx.crossers[k].iter().copied().filter(|&o| !ctx.segments[o].interior || placed[o]),
                    m,
                );
                (w, std::cmp::Reverse(k))
            })
            .unwrap();
        placed[best] = true;
        order.push(best);
    }
    SegmentOrdering::new(ctx, order)
}

/// Tries every permutation; keeps the lexicographically first one with the smallest bound.
fn exhaustive(ctx: &LevelContext, m: Bidegree) -> Result<SegmentOrdering> {
    let mut perm = ctx.interior.clone();
    let mut memo = Memo::new();
    let mut best: Option<(i64, Vec<usize>)> = None;
    loop {
        let ord = SegmentOrdering::new(ctx, perm.clone())?;
        let b = bound_with(ctx, &ord, m, &mut memo);
        if best.as_ref().is_none_or(|(bb, _)| b < *bb) {
            best = Some((b, perm.clone()));
            if b == 0 {
                break;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    SegmentOrdering::new(ctx, best.map(|b| b.1).unwrap_or_default())
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
