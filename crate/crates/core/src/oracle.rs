//! Exact ground truth: spline space dimensions by constraint nullity and
//! graded dimensions of polynomial subspaces by span rank.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bidegree::Bidegree;
use crate::graded::Direction;
use crate::linalg::{SparseEchelon, SparseRow};
use crate::mesh::{Orientation, TMesh};
use crate::profile::LeveledProfile;
use crate::rational::{common_denominator, Rational};
use crate::smoothness::SmoothnessProfile;

/// Bi-homogeneous polynomial in `(s, u; t, v)` stored dehomogenized: `terms[(a, b)]` is the
/// coefficient of `s^a u^{deg.0 - a} t^b v^{deg.1 - b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub deg: Bidegree,
    pub terms: BTreeMap<(i64, i64), Rational>,
}

fn binom(n: i64, k: i64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

impl Poly {
    pub fn monomial_u(deg: Bidegree) -> Poly {
        Poly { deg, terms: BTreeMap::from([((0, 0), Rational::one())]) }
    }

    /// `(t - knot v)^d` for `AlongT`, `(s - knot u)^d` for `AlongS`.
    pub fn linear_power(knot: &Rational, d: i64, dir: Direction) -> Poly {
        let mut terms = BTreeMap::new();
        let neg = -knot.clone();
        for j in 0..=d {
            let c = Rational::from_integer(binom(d, j)) * num_traits::pow(neg.clone(), (d - j) as usize);
            if c.is_zero() {
                continue;
            }
            let key = match dir {
                Direction::AlongT => (0, j),
                Direction::AlongS => (j, 0),
            };
            terms.insert(key, c);
        }
        let deg = match dir {
            Direction::AlongT => Bidegree(0, d),
            Direction::AlongS => Bidegree(d, 0),
        };
        Poly { deg, terms }
    }

    /// Multiplies by `u^{shift.0} v^{shift.1}`.
    pub fn times_u(mut self, shift: Bidegree) -> Poly {
        self.deg = self.deg + shift;
        self
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut terms: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &o.terms {
                *terms.entry((a + c, b + d)).or_insert_with(Rational::zero) += x * y;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Poly { deg: self.deg + o.deg, terms }
    }

    fn integer_terms(&self) -> Vec<((i64, i64), BigInt)> {
        let den = common_denominator(self.terms.values());
        self.terms.iter().map(|(k, v)| (*k, (v * Rational::from_integer(den.clone())).to_integer())).collect()
    }
}

/// Dimension of `sum_g g * S` in bi-degree `m`.
pub fn span_dim(gens: &[Poly], m: Bidegree) -> usize {
    let width = (m.1 + 1).max(1) as usize;
    let mut ech = SparseEchelon::new();
    for g in gens {
        if !g.deg.le(m) || g.terms.is_empty() {
            continue;
        }
        let it = g.integer_terms();
        for a in 0..=m.0 - g.deg.0 {
            for b in 0..=m.1 - g.deg.1 {
                let mut row: SparseRow =
                    it.iter().map(|((x, y), c)| (((x + a) as usize) * width + (y + b) as usize, c.clone())).collect();
                row.sort_by_key(|e| e.0);
                ech.insert(row);
            }
        }
    }
    ech.rank()
}

/// Dimension of the spline space of bi-degree `m - deficit` per face with the given smoothness.
pub fn oracle_spline_dim(mesh: &TMesh, profile: &LeveledProfile, smooth: &SmoothnessProfile, m: Bidegree) -> usize {
    let caps: Vec<Bidegree> = profile.face_deficit.iter().map(|&d| m - d).collect();
    let mut offset = Vec::with_capacity(caps.len());
    let mut unknowns = 0usize;
    for c in &caps {
        offset.push(unknowns);
        if c.0 >= 0 && c.1 >= 0 {
            unknowns += ((c.0 + 1) * (c.1 + 1)) as usize;
        }
    }
    let index = |f: usize, a: i64, b: i64| offset[f] + (a * (caps[f].1 + 1) + b) as usize;

    // Rows depend only on the face pair, the line and r.
    let mut seen = BTreeSet::new();
    let mut jobs = Vec::new();
    for e in mesh.interior_edges() {
        let ed = &mesh.edges[e];
        let (f, g) = (ed.faces[0].min(ed.faces[1]), ed.faces[0].max(ed.faces[1]));
        if seen.insert((f, g, ed.orientation, ed.line.clone(), smooth.r(e))) {
            jobs.push((f, g, ed.orientation, ed.line.clone(), smooth.r(e) as i64));
        }
    }

    let rows: Vec<SparseRow> = jobs
        .par_iter()
        .flat_map_iter(|(f, g, o, line, r)| {
            // `c` is the coordinate across the line, `k` the one along it.
            let (c, k) = match o {
                Orientation::Vertical => (0, 1),
                Orientation::Horizontal => (1, 0),
            };
            let p = line.numer().clone();
            let q = line.denom().clone();
            let cap = |face: usize| caps[face];
            let top = cap(*f).get(c).max(cap(*g).get(c));
            let along = cap(*f).get(k).max(cap(*g).get(k));
            let mut out = Vec::new();
            for j in 0..=*r {
                for b in 0..=along {
                    let mut row: SparseRow = Vec::new();
                    for (face, sign) in [(*f, 1i32), (*g, -1i32)] {
                        let cp = cap(face);
                        if cp.0 < 0 || cp.1 < 0 || b > cp.get(k) {
                            continue;
                        }
                        for a in j..=cp.get(c) {
                            // coefficient of (x - p/q)^j in x^a, scaled by q^top
                            let v = binom(a, j)
                                * num_traits::pow(p.clone(), (a - j) as usize)
                                * num_traits::pow(q.clone(), (top - a + j) as usize);
                            if v.is_zero() {
                                continue;
                            }
                            let (ea, eb) = if c == 0 { (a, b) } else { (b, a) };
                            row.push((index(face, ea, eb), if sign > 0 { v } else { -v }));
                        }
                    }
                    if !row.is_empty() {
                        row.sort_by_key(|x| x.0);
                        out.push(row);
                    }
                }
            }
            out
        })
        .collect();

    let mut ech = SparseEchelon::new();
    for r in rows {
        ech.insert(r);
    }
    unknowns - ech.rank()
}
