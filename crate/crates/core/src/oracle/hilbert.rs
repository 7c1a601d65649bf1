//! Hilbert function and generator degrees by exact evaluation ranks.
//!
//! Hyperplane A_i is the zero locus of x₁,₁ − i·x₁,₀ on the first factor, and
//! likewise B_j and C_k with parameters j and k. A form of tridegree (n₁,n₂,n₃)
//! is recorded by its values on the grid of nodes {0..n₁}×{0..n₂}×{0..n₃}
//! (a point with parameter p on a factor is [1 : p]); the Lagrange basis makes
//! this a change of coordinates on R_(n₁,n₂,n₃). A form vanishes on a line iff
//! it vanishes at n+1 distinct points of it, n being the degree in the free
//! factor, so the evaluation rank at those points is exactly H.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::degrees::DegreeTriple;
use crate::hilbert::{degrees, HilbertTable};
use crate::linalg::{kernel_basis, normalize, rank, EchelonBasis, SparseVec};
use crate::variety::{Direction, VarietyOfLines};

/// Coordinates used for forms of one tridegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormBasis {
    /// Values at the nodes 0..=n of each factor.
    Lagrange,
    /// Monomials x₀^(n−e)·x₁^e of each factor.
    Monomial,
}

/// Coefficients of the point [1 : p] against the chosen basis of binary
/// forms of degree n.
fn factor_row(basis: FormBasis, n: usize, p: usize) -> Vec<(usize, BigInt)> {
    match basis {
        FormBasis::Lagrange if p <= n => vec![(p, BigInt::one())],
        FormBasis::Lagrange => (0..=n)
            .map(|q| {
                let (mut num, mut den) = (BigInt::one(), BigInt::one());
                for r in (0..=n).filter(|&r| r != q) {
                    num *= BigInt::from(p as i64 - r as i64);
                    den *= BigInt::from(q as i64 - r as i64);
                }
                (q, num / den)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect(),
        FormBasis::Monomial => (0..=n)
            .map(|e| (e, BigInt::from(p).pow(e as u32)))
            .filter(|(_, v)| !v.is_zero())
            .collect(),
    }
}

fn flat(deg: [usize; 3], x: usize, y: usize, z: usize) -> usize {
    (x * (deg[1] + 1) + y) * (deg[2] + 1) + z
}

fn unflat(deg: [usize; 3], idx: usize) -> [usize; 3] {
    let z = idx % (deg[2] + 1);
    let rest = idx / (deg[2] + 1);
    [rest / (deg[1] + 1), rest % (deg[1] + 1), z]
}

/// Parameter triples of the sample points: n+1 points on every line, n the
/// degree in its free factor.
fn sample_points(x: &VarietyOfLines, deg: [usize; 3]) -> Vec<[usize; 3]> {
    let mut pts = Vec::new();
    for line in x.lines() {
        let (p, q) = line.pair;
        match line.direction {
            Direction::Three => pts.extend((0..=deg[2]).map(|t| [p, q, t])),
            Direction::Two => pts.extend((0..=deg[1]).map(|t| [p, t, q])),
            Direction::One => pts.extend((0..=deg[0]).map(|t| [t, p, q])),
        }
    }
    pts
}

fn evaluation_row(basis: FormBasis, deg: [usize; 3], pt: [usize; 3]) -> SparseVec {
    let r: Vec<_> = (0..3).map(|f| factor_row(basis, deg[f], pt[f])).collect();
    let mut out = Vec::with_capacity(r[0].len() * r[1].len() * r[2].len());
    for (a, va) in &r[0] {
        for (b, vb) in &r[1] {
            let vab = va * vb;
            for (c, vc) in &r[2] {
                out.push((flat(deg, *a, *b, *c), &vab * vc));
            }
        }
    }
    out
}

fn dimension(deg: [usize; 3]) -> usize {
    deg.iter().map(|n| n + 1).product()
}

/// dim (R/I_X) in one tridegree.
pub fn hilbert_value(x: &VarietyOfLines, deg: [usize; 3], basis: FormBasis) -> usize {
    let rows = sample_points(x, deg)
        .into_iter()
        .map(|pt| evaluation_row(basis, deg, pt));
    rank(rows, Some(dimension(deg)))
}

fn oracle_table(x: &VarietyOfLines, bound: DegreeTriple, basis: FormBasis) -> HilbertTable {
    let cells: Vec<_> = degrees(bound.0).collect();
    let h: Vec<i64> = cells
        .par_iter()
        .map(|&(i, j, k)| hilbert_value(x, [i, j, k], basis) as i64)
        .collect();
    HilbertTable::from_h(bound.0, h)
}

/// The Hilbert function of R/I_X on the box, for any variety. The empty
/// variety has the unit ideal, so H ≡ 0.
pub fn hilbert_oracle(x: &VarietyOfLines, bound: DegreeTriple) -> HilbertTable {
    oracle_table(x, bound, FormBasis::Lagrange)
}

/// Same as [`hilbert_oracle`] with the evaluation matrix written in the
/// monomial basis; slower, kept as a cross-check.
pub fn hilbert_oracle_monomial(x: &VarietyOfLines, bound: DegreeTriple) -> HilbertTable {
    oracle_table(x, bound, FormBasis::Monomial)
}

/// Degrees where the ideal needs new minimal generators, with their number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorScan {
    pub degrees: Vec<DegreeTriple>,
    pub counts: Vec<usize>,
    /// Some of (d₁,d₂,0), (d₁,0,d₃), (0,d₂,d₃), where generators are always
    /// needed, lie outside the box.
    pub box_too_small: bool,
}

/// Values of the form at node n_f of factor f, extrapolated from nodes
/// 0..n_f−1; the weight of node q is (−1)^(n_f−1−q)·C(n_f, q).
fn extend(g: &SparseVec, from: [usize; 3], to: [usize; 3], f: usize) -> BTreeMap<usize, BigInt> {
    let n = to[f];
    let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (idx, v) in g {
        let c = unflat(from, *idx);
        *out.entry(flat(to, c[0], c[1], c[2]))
            .or_insert_with(BigInt::zero) += v;
        let q = c[f];
        let mut w = BigInt::from(binomial(n as u64, q as u64));
        if (n - 1 - q) % 2 == 1 {
            w = -w;
        }
        let mut e = c;
        e[f] = n;
        *out.entry(flat(to, e[0], e[1], e[2]))
            .or_insert_with(BigInt::zero) += w * v;
    }
    out
}

fn to_sparse(m: BTreeMap<usize, BigInt>) -> SparseVec {
    let mut v: SparseVec = m.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    normalize(&mut v);
    v
}

/// Multiplies a form of degree `from` by x_{f,0} and x_{f,1}.
fn multiples(g: &SparseVec, from: [usize; 3], f: usize) -> [SparseVec; 2] {
    let mut to = from;
    to[f] += 1;
    let ext = extend(g, from, to, f);
    let times_x1: BTreeMap<usize, BigInt> = ext
        .iter()
        .map(|(&idx, v)| (idx, v * BigInt::from(unflat(to, idx)[f])))
        .collect();
    [to_sparse(ext), to_sparse(times_x1)]
}

/// Compares dim I_δ with the span of x_{f,0}·I_{δ−e_f} and x_{f,1}·I_{δ−e_f}
/// over f; the difference is the number of minimal generators of degree δ.
pub fn generator_degree_scan(x: &VarietyOfLines, bound: DegreeTriple) -> GeneratorScan {
    let b = bound.0;
    let cells: Vec<(usize, usize, usize)> = degrees(b).collect();
    let kernels: Vec<Vec<SparseVec>> = cells
        .par_iter()
        .map(|&(i, j, k)| {
            let deg = [i, j, k];
            let rows = sample_points(x, deg)
                .into_iter()
                .map(|pt| evaluation_row(FormBasis::Lagrange, deg, pt));
            kernel_basis(rows, dimension(deg))
        })
        .collect();
    let cell_index = |d: [usize; 3]| flat(b, d[0], d[1], d[2]);
    let counts: Vec<usize> = cells
        .par_iter()
        .map(|&(i, j, k)| {
            let deg = [i, j, k];
            let target = kernels[cell_index(deg)].len();
            let mut span = EchelonBasis::new();
            'fill: for f in 0..3 {
                if deg[f] == 0 {
                    continue;
                }
                let mut from = deg;
                from[f] -= 1;
                for g in &kernels[cell_index(from)] {
                    for m in multiples(g, from, f) {
                        span.insert(m);
                        if span.rank() == target {
                            break 'fill;
                        }
                    }
                }
            }
            target - span.rank()
        })
        .collect();
    let [d1, d2, d3] = x.d();
    let box_too_small = [[d1, d2, 0], [d1, 0, d3], [0, d2, d3]]
        .iter()
        .any(|g| !DegreeTriple(*g).preceq(&bound));
    let mut out = GeneratorScan {
        degrees: Vec::new(),
        counts: Vec::new(),
        box_too_small,
    };
    for (n, &(i, j, k)) in cells.iter().enumerate() {
        if counts[n] > 0 {
            out.degrees.push(DegreeTriple::new(i, j, k));
            out.counts.push(counts[n]);
        }
    }
    out
}
