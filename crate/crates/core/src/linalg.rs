//! Exact rank computations over the integers (equivalently over Q).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank of a dense integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let piv = &top[rank];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for k in c + 1..cols {
                let v = &piv[c] * &row[k] - &f * &piv[k];
                row[k] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

pub fn bareiss_rank_i64(a: &[Vec<i64>]) -> usize {
    bareiss_rank(a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

/// A sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Incremental row echelon form; rows are kept primitive (content 1).
#[derive(Debug, Default, Clone)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots; returns whether it was independent.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        make_primitive(&mut row);
        while let Some((c, a)) = row.first().cloned() {
            match self.pivots.get(&c) {
                None => {
                    if a.is_negative() {
                        for (_, v) in row.iter_mut() {
                            *v = -&*v;
                        }
                    }
                    self.pivots.insert(c, row);
                    return true;
                }
                Some(p) => {
                    let b = &p[0].1;
                    let g = a.gcd(b);
                    let fr = b / &g;
                    let fp = &a / &g;
                    row = combine(&row, &fr, p, &fp);
                    make_primitive(&mut row);
                }
            }
        }
        false
    }
}

/// `fr * r - fp * p`, dropping zeros.
fn combine(r: &SparseRow, fr: &BigInt, p: &SparseRow, fp: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cj = p.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, fr * &r[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(fp * &p[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, fr * &r[i - 1].1 - fp * &p[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
}

pub fn sparse_rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut e = SparseEchelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn dense_to_sparse(row: &[BigInt]) -> SparseRow {
    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
}
