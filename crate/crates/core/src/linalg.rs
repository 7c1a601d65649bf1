//! Exact sparse linear algebra over Q, carried out on integer vectors.
//!
//! Vectors are stored as sorted `(column, value)` lists with no zero entries.
//! Elimination is fraction free: a row is reduced against a pivot row by
//! cross-multiplying with the two leading coefficients and then dividing out
//! the content, so entries stay integral and small.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type SparseVec = Vec<(usize, BigInt)>;

pub fn sparse_from_dense(v: &[BigInt]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_from_i64(v: impl IntoIterator<Item = (usize, i64)>) -> SparseVec {
    let mut out: SparseVec = v
        .into_iter()
        .filter(|(_, x)| *x != 0)
        .map(|(i, x)| (i, BigInt::from(x)))
        .collect();
    out.sort_by_key(|e| e.0);
    out
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

fn entry(v: &SparseVec, col: usize) -> Option<&BigInt> {
    v.binary_search_by_key(&col, |e| e.0).ok().map(|p| &v[p].1)
}

/// `a*v - b*w`.
fn combine(a: &BigInt, v: &SparseVec, b: &BigInt, w: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut p, mut q) = (0, 0);
    while p < v.len() || q < w.len() {
        let next = match (v.get(p), w.get(q)) {
            (Some((i, x)), Some((j, y))) if i == j => {
                p += 1;
                q += 1;
                (*i, a * x - b * y)
            }
            (Some((i, x)), Some((j, _))) if i < j => {
                p += 1;
                (*i, a * x)
            }
            (Some((i, x)), None) => {
                p += 1;
                (*i, a * x)
            }
            (_, Some((j, y))) => {
                q += 1;
                (*j, -(b * y))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Divides by the gcd of the entries and makes the leading entry positive.
pub fn normalize(v: &mut SparseVec) {
    let Some(first) = v.first() else { return };
    let mut g = first.1.abs();
    for (_, x) in v.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if first.1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// A row echelon basis of a growing subspace of Q^n.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis until its leading column is not a pivot.
    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((lead, c)) = v.first() {
            let Some(&r) = self.pivots.get(lead) else {
                break;
            };
            let row = &self.rows[r];
            let c = c.clone();
            v = combine(&row[0].1, &v, &c, row);
            normalize(&mut v);
        }
        v
    }

    /// Adds `v` to the basis; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        normalize(&mut v);
        match v.first() {
            None => false,
            Some(&(lead, _)) => {
                self.pivots.insert(lead, self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Fully reduced form: every pivot column is zero outside its own row.
    /// Rows are returned in increasing pivot order.
    pub fn reduced_rows(&self) -> Vec<SparseVec> {
        let mut order: Vec<(usize, usize)> = self.pivots.iter().map(|(&c, &r)| (c, r)).collect();
        order.sort();
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &(col, r) in order.iter().rev() {
            let mut v = self.rows[r].clone();
            loop {
                let hit = v
                    .iter()
                    .skip(1)
                    .find(|(c, _)| done.contains_key(c))
                    .map(|(c, x)| (*c, x.clone()));
                let Some((c, x)) = hit else { break };
                let s = &done[&c];
                let s_lead = entry(s, c).expect("pivot entry").clone();
                v = combine(&s_lead, &v, &x, s);
                normalize(&mut v);
            }
            done.insert(col, v);
        }
        done.into_values().collect()
    }
}

/// Rank of the span of `rows`, stopping early once `cap` is reached.
pub fn rank(rows: impl IntoIterator<Item = SparseVec>, cap: Option<usize>) -> usize {
    let mut basis = EchelonBasis::new();
    for r in rows {
        basis.insert(r);
        if cap.is_some_and(|c| basis.rank() >= c) {
            break;
        }
    }
    basis.rank()
}

/// Integer basis of the right kernel {x : r·x = 0 for all rows r} in Q^ncols.
pub fn kernel_basis(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Vec<SparseVec> {
    let mut basis = EchelonBasis::new();
    for r in rows {
        basis.insert(r);
    }
    let reduced = basis.reduced_rows();
    let mut pivot_of = vec![None; ncols];
    for (k, r) in reduced.iter().enumerate() {
        pivot_of[r[0].0] = Some(k);
    }
    // column f -> rows with a nonzero entry there
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (k, r) in reduced.iter().enumerate() {
        for (c, _) in r.iter().skip(1) {
            touching[*c].push(k);
        }
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if pivot_of[f].is_some() {
            continue;
        }
        let mut scale = BigInt::one();
        for &k in &touching[f] {
            scale = scale.lcm(&reduced[k][0].1);
        }
        let mut v: SparseVec = touching[f]
            .iter()
            .map(|&k| {
                let r = &reduced[k];
                let coeff = entry(r, f).expect("touching entry");
                (r[0].0, -(&scale / &r[0].1) * coeff)
            })
            .collect();
        v.push((f, scale));
        v.sort_by_key(|e| e.0);
        normalize(&mut v);
        out.push(v);
    }
    out
}

/// Dot product of a sparse row with a sparse column vector.
pub fn dot(a: &SparseVec, b: &SparseVec) -> BigInt {
    let (mut p, mut q) = (0, 0);
    let mut acc = BigInt::zero();
    while p < a.len() && q < b.len() {
        match a[p].0.cmp(&b[q].0) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[p].1 * &b[q].1;
                p += 1;
                q += 1;
            }
        }
    }
    acc
}
