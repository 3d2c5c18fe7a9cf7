//! Dimensions of graded pieces of shifted rings, level ideals and their quotients.
//!
//! Level ideals are `L_i = u^{n_i} S` for `i <= l` and `L_{l+1} = 0`, so every
//! quantity reduces to counting monomials of a shifted bi-degree.

use serde::{Deserialize, Serialize};

use crate::bidegree::{Bidegree, Shift};
use crate::error::{Error, Result};
use crate::oracle::{span_dim, Poly};
use crate::rational::Rational;

/// The variable a generator is a power of a linear form in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// Forms `t - y0 v`, attached to horizontal lines.
    AlongT,
    /// Forms `s - x0 u`, attached to vertical lines.
    AlongS,
}

impl Direction {
    fn axis(self) -> usize {
        match self {
            Direction::AlongS => 0,
            Direction::AlongT => 1,
        }
    }
}

/// `u^extra * (line form at knot)^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerGen {
    pub knot: Rational,
    pub d: i64,
    pub extra: Bidegree,
    pub direction: Direction,
}

impl PowerGen {
    pub fn poly(&self, base: Bidegree) -> Poly {
        Poly::linear_power(&self.knot, self.d, self.direction).times_u(base + self.extra)
    }
}

/// Which graded module the power sum lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelSel {
    /// Inside `L_i` alone.
    Single(usize),
    /// The image in `L_{i-1} / L_i`.
    Pair(usize),
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

pub fn dim_shift(m: Bidegree, shift: Shift) -> i64 {
    pos(m.0 - shift.0 + 1) * pos(m.1 - shift.1 + 1)
}

fn check_index(levels: &[Bidegree], i: usize, lo: usize) -> Result<()> {
    let max = levels.len();
    if i < lo || i > max {
        return Err(Error::IndexOutOfRange { index: i, max });
    }
    Ok(())
}

pub fn dim_l(levels: &[Bidegree], i: usize, shift: Shift, m: Bidegree) -> Result<i64> {
    check_index(levels, i, 0)?;
    Ok(if i < levels.len() { dim_shift(m - levels[i], shift) } else { 0 })
}

pub fn dim_m(levels: &[Bidegree], i: usize, shift: Shift, m: Bidegree) -> Result<i64> {
    check_index(levels, i, 1)?;
    Ok(dim_l(levels, i - 1, shift, m)? - dim_l(levels, i, shift, m)?)
}

pub fn dim_edge_increment(levels: &[Bidegree], i: usize, e: Bidegree, m: Bidegree) -> Result<i64> {
    dim_m(levels, i, e, m)
}

pub fn dim_vertex_increment(levels: &[Bidegree], i: usize, e_h: Bidegree, e_v: Bidegree, m: Bidegree) -> Result<i64> {
    check_index(levels, i, 1)?;
    let l = |j: usize, e: Bidegree| dim_l(levels, j, e, m);
    let e_g = e_h + e_v;
    Ok(l(i - 1, e_h)? + l(i - 1, e_v)? + l(i, e_g)? - l(i - 1, e_g)? - l(i, e_h)? - l(i, e_v)?)
}

/// Dimension of `sum_k (line form_k)^{d_k} S(-b)` in bi-degree `m`, knots distinct.
pub fn dim_power_sum(ds: &[i64], b: Shift, m: Bidegree, dir: Direction) -> i64 {
    let c = dir.axis();
    let o = 1 - c;
    let along = m.get(c) - b.get(c);
    let sum: i64 = ds.iter().map(|&d| pos(along - d + 1)).sum();
    pos(m.get(o) - b.get(o) + 1) * pos((along + 1).min(sum))
}

/// Dimension of `A = sum_k u^{n + extra_k} g_k^{d_k} S(-b)` in bi-degree `m`, where `n` is
/// `n_i` for `Single(i)` and `n_{i-1}` for `Pair(i)`; for a pair the value is that of
/// `(A + L_i(-b)) / L_i(-b)`.
pub fn dim_power_sum_in(levels: &[Bidegree], sel: LevelSel, gens: &[PowerGen], b: Shift, m: Bidegree) -> Result<i64> {
    let Some(first) = gens.first() else {
        return Ok(0);
    };
    let dir = first.direction;
    if gens.iter().any(|g| g.direction != dir) {
        return Err(Error::MixedDirection);
    }
    let top = levels.len() - 1;
    let sel = match sel {
        LevelSel::Pair(i) => {
            check_index(levels, i, 1)?;
            if i == top + 1 {
                LevelSel::Single(top)
            } else {
                LevelSel::Pair(i)
            }
        }
        LevelSel::Single(i) => {
            check_index(levels, i, 0)?;
            if i == top + 1 {
                return Ok(0);
            }
            LevelSel::Single(i)
        }
    };
    let uniform = gens.iter().all(|g| g.extra == first.extra);
    let mut knots: Vec<&Rational> = gens.iter().map(|g| &g.knot).collect();
    knots.sort();
    knots.dedup();
    let distinct = knots.len() == gens.len();
    if !(uniform && distinct) {
        return Ok(power_sum_by_span(levels, sel, gens, b, m));
    }
    let ds: Vec<i64> = gens.iter().map(|g| g.d).collect();
    let p = first.extra;
    match sel {
        LevelSel::Single(i) => Ok(dim_power_sum(&ds, b + p, m - levels[i], dir)),
        LevelSel::Pair(i) => {
            let (a, p, delta) = match dir {
                Direction::AlongT => (m - b - levels[i - 1], p, levels[i] - levels[i - 1]),
                Direction::AlongS => ((m - b - levels[i - 1]).swap(), p.swap(), (levels[i] - levels[i - 1]).swap()),
            };
            let pa = pos(a.0 - p.0 + 1);
            let sum: i64 = ds.iter().map(|&d| pos(a.1 - p.1 - d + 1)).sum();
            let w = pos((a.1 - p.1 + 1).min(sum));
            let pa_cap = pos(a.0 - p.0.max(delta.0) + 1);
            let w_cap = if delta.1 == 0 || p.1 >= 1 { w } else { pos(w - 1) };
            Ok(pa * w - pa_cap * w_cap)
        }
    }
}

/// Reference evaluation of `dim_power_sum_in` through exact span ranks.
pub fn power_sum_by_span(levels: &[Bidegree], sel: LevelSel, gens: &[PowerGen], b: Shift, m: Bidegree) -> i64 {
    let top = levels.len() - 1;
    let target = m - b;
    match sel {
        LevelSel::Single(i) => {
            if i > top {
                return 0;
            }
            let polys: Vec<Poly> = gens.iter().map(|g| g.poly(levels[i])).collect();
            span_dim(&polys, target) as i64
        }
        LevelSel::Pair(i) => {
            if i > top {
                return power_sum_by_span(levels, LevelSel::Single(top), gens, b, m);
            }
            let floor = Poly::monomial_u(levels[i]);
            let mut polys: Vec<Poly> = gens.iter().map(|g| g.poly(levels[i - 1])).collect();
            polys.push(floor.clone());
            span_dim(&polys, target) as i64 - span_dim(&[floor], target) as i64
        }
    }
}
