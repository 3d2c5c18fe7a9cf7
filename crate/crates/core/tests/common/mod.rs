#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use tmesh_dim::rational::frac;
use tmesh_dim::{build_profile, build_smoothness, build_tmesh, Analysis, Bidegree, Rational, Rect};

pub fn analysis(rects: &[Rect], deficits: &[Bidegree], r: u32) -> tmesh_dim::Result<Analysis> {
    let mesh = build_tmesh(rects)?;
    let profile = build_profile(&mesh, deficits, None)?;
    let smooth = build_smoothness(&mesh, r, &[])?;
    Ok(Analysis::new(mesh, profile, smooth))
}

pub fn grid(k: i64) -> Vec<Rect> {
    let mut out = Vec::new();
    for j in 0..k {
        for i in 0..k {
            out.push(Rect::from_ints(i, j, i + 1, j + 1));
        }
    }
    out
}

fn pinwheel() -> Vec<Rect> {
    let t = |n| frac(n, 3);
    [(0, 0, 2, 1), (2, 0, 3, 2), (1, 2, 3, 3), (0, 1, 1, 3), (1, 1, 2, 2)]
        .iter()
        .map(|&(a, b, c, d)| Rect::new(t(a), t(b), t(c), t(d)))
        .collect()
}

/// Cut positions strictly inside `(lo, hi)` with denominator at most 8.
fn cuts(lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    for q in 2..=8 {
        for p in 1..q {
            let x = frac(p, q);
            if &x > lo && &x < hi && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

/// Random T-mesh of the unit square by repeated splitting, optionally from a pinwheel seed.
pub fn random_rects<R: Rng>(rng: &mut R, max_faces: usize) -> Vec<Rect> {
    let target = rng.gen_range(1..=max_faces);
    let mut rects = if target >= 5 && rng.gen_bool(0.3) { pinwheel() } else { vec![Rect::from_ints(0, 0, 1, 1)] };
    let mut stall = 0;
    while rects.len() < target && stall < 50 {
        let k = rng.gen_range(0..rects.len());
        let r = rects[k].clone();
        let vertical = rng.gen_bool(0.5);
        let options = if vertical { cuts(&r.x0, &r.x1) } else { cuts(&r.y0, &r.y1) };
        let Some(c) = options.choose(rng).cloned() else {
            stall += 1;
            continue;
        };
        let (a, b) = if vertical {
            (
                Rect::new(r.x0.clone(), r.y0.clone(), c.clone(), r.y1.clone()),
                Rect::new(c, r.y0.clone(), r.x1.clone(), r.y1.clone()),
            )
        } else {
            (
                Rect::new(r.x0.clone(), r.y0.clone(), r.x1.clone(), c.clone()),
                Rect::new(r.x0.clone(), c, r.x1.clone(), r.y1.clone()),
            )
        };
        rects[k] = a;
        rects.push(b);
    }
    rects
}

/// Deficits in `{(0,0), (1,1)}` with at least one zero face.
pub fn random_deficits<R: Rng>(rng: &mut R, n: usize) -> Vec<Bidegree> {
    let mut d: Vec<Bidegree> =
        (0..n).map(|_| if rng.gen_bool(0.35) { Bidegree(1, 1) } else { Bidegree(0, 0) }).collect();
    let k = rng.gen_range(0..n);
    d[k] = Bidegree(0, 0);
    d
}

/// Dimension of univariate splines of degree `m`, `C^r` at the interior knots of `0 < 1 < ... < k`,
/// by nullity of the jump constraints on the monomial coefficients.
pub fn univariate_dim(k: usize, m: usize, r: usize) -> usize {
    let n = k * (m + 1);
    let mut rows = Vec::new();
    for j in 1..k {
        let x = BigRational::from_integer(BigInt::from(j as i64));
        for d in 0..=r.min(m) {
            let mut row = vec![BigRational::zero(); n];
            for p in d..=m {
                let falling: i64 = (p - d + 1..=p).map(|q| q as i64).product();
                let c = BigRational::from_integer(BigInt::from(falling)) * num_traits::pow(x.clone(), p - d);
                row[(j - 1) * (m + 1) + p] = c.clone();
                row[j * (m + 1) + p] = -c;
            }
            rows.push(row);
        }
    }
    n - rational_rank(rows)
}

fn rational_rank(mut a: Vec<Vec<BigRational>>) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let piv = a[rank][c].clone();
        for i in rank + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &piv;
            for j in c..cols {
                let t = &f * &a[rank][j];
                a[i][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Smith normal form diagonal of an integer matrix.
pub fn smith_diagonal(a: &[Vec<i64>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for r in m.iter_mut() {
            r.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = &m[i][t] / &m[t][t];
            if !q.is_zero() {
                for j in t..cols {
                    let x = &q * &m[t][j];
                    m[i][j] -= x;
                }
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = &m[t][j] / &m[t][t];
            if !q.is_zero() {
                for i in t..rows {
                    let x = &q * &m[i][t];
                    m[i][j] -= x;
                }
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: fold a non-divisible entry into the pivot row
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
        if let Some(i) = bad {
            for j in t..cols {
                let x = m[i][j].clone();
                m[t][j] += x;
            }
            continue;
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

pub fn smith_rank(a: &[Vec<i64>]) -> usize {
    smith_diagonal(a).len()
}

pub fn is_unit_diagonal(a: &[Vec<i64>]) -> bool {
    smith_diagonal(a).iter().all(|d| d.is_one())
}
