//! Cohen–Macaulayness of the Stanley–Reisner complex Δ_X via Reisner's
//! criterion, with simplicial homology over Q.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::error::OracleError;
use crate::graph::build_graph;
use crate::linalg::{rank, SparseVec};
use crate::variety::{HyperplaneId, VarietyOfLines};

/// Largest vertex count accepted by [`stanley_reisner_complex`].
pub const VERTEX_LIMIT: usize = 16;

/// A simplicial complex on at most 32 vertices, faces stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<HyperplaneId>,
    facets: Vec<u32>,
    faces: BTreeSet<u32>,
}

impl SimplicialComplex {
    pub fn from_facets(labels: Vec<HyperplaneId>, facets: Vec<u32>) -> Self {
        let mut faces = BTreeSet::new();
        for &f in &facets {
            // every submask of f, including f and ∅
            let mut s = f;
            loop {
                faces.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        SimplicialComplex {
            labels,
            facets,
            faces,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[HyperplaneId] {
        &self.labels
    }

    pub fn facets(&self) -> &[u32] {
        &self.facets
    }

    pub fn facet_labels(&self) -> Vec<Vec<HyperplaneId>> {
        self.facets
            .iter()
            .map(|&f| {
                (0..self.labels.len())
                    .filter(|&v| f >> v & 1 == 1)
                    .map(|v| self.labels[v])
                    .collect()
            })
            .collect()
    }

    pub fn faces(&self) -> &BTreeSet<u32> {
        &self.faces
    }

    pub fn contains(&self, face: u32) -> bool {
        self.faces.contains(&face)
    }

    pub fn is_pure(&self) -> bool {
        let sizes: BTreeSet<u32> = self.facets.iter().map(|f| f.count_ones()).collect();
        sizes.len() <= 1
    }

    /// lk σ = {τ ∈ Δ : τ ∩ σ = ∅, τ ∪ σ ∈ Δ}.
    pub fn link(&self, sigma: u32) -> Vec<u32> {
        self.faces
            .iter()
            .copied()
            .filter(|&t| t & sigma == 0 && self.faces.contains(&(t | sigma)))
            .collect()
    }
}

/// Ranks of the reduced homology groups H̃_q, q = −1..=dim, of the complex
/// with the given (downward closed) face list, computed over Q.
pub fn reduced_betti(faces: &[u32]) -> Vec<usize> {
    let top = faces.iter().map(|f| f.count_ones()).max().unwrap_or(0) as usize;
    // by_size[s] = faces with s vertices (s = 0 is the empty face)
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    let index: Vec<BTreeMap<u32, usize>> = by_size
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    // boundary_rank[s] = rank of ∂ from faces of size s to size s − 1
    let mut boundary_rank = vec![0; top + 2];
    for s in 1..=top {
        let rows = by_size[s].iter().map(|&f| {
            let mut v: SparseVec = Vec::new();
            let mut sign = 1i64;
            for bit in 0..32 {
                if f >> bit & 1 == 1 {
                    v.push((index[s - 1][&(f & !(1 << bit))], BigInt::from(sign)));
                    sign = -sign;
                }
            }
            v.sort_by_key(|e| e.0);
            v
        });
        boundary_rank[s] = rank(rows, None);
    }
    (0..=top)
        .map(|s| by_size[s].len() - boundary_rank[s] - boundary_rank[s + 1])
        .collect()
}

/// Δ_X: facets are the complements of the edges of G_X.
pub fn stanley_reisner_complex(x: &VarietyOfLines) -> Result<SimplicialComplex, OracleError> {
    if x.is_empty() {
        return Err(OracleError::EmptyVariety);
    }
    let g = build_graph(x);
    let n = g.vertex_count();
    if n > VERTEX_LIMIT {
        return Err(OracleError::SizeLimit {
            vertices: n,
            limit: VERTEX_LIMIT,
        });
    }
    let all: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let facets = g
        .edges()
        .into_iter()
        .map(|(u, v)| all & !(1 << u) & !(1 << v))
        .collect();
    Ok(SimplicialComplex::from_facets(
        g.vertices().to_vec(),
        facets,
    ))
}

/// Reisner: Δ is Cohen–Macaulay iff H̃_q(lk σ) = 0 for all faces σ (∅
/// included) and all q < dim lk σ.
pub fn reisner_cm(complex: &SimplicialComplex) -> bool {
    complex.faces().iter().all(|&sigma| {
        let link = complex.link(sigma);
        let betti = reduced_betti(&link);
        // betti[s] is H̃_{s−1}; dim lk σ = betti.len() − 2
        betti
            .iter()
            .take(betti.len().saturating_sub(1))
            .all(|&b| b == 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::{box_points, grid_from_points};

    fn labels(n: usize) -> Vec<HyperplaneId> {
        (1..=n).map(HyperplaneId::a).collect()
    }

    #[test]
    fn homology_of_small_complexes() {
        // hollow triangle: a circle, H̃_1 = 1 in top degree, so still CM
        let circle = SimplicialComplex::from_facets(labels(3), vec![0b011, 0b110, 0b101]);
        let faces: Vec<u32> = circle.faces().iter().copied().collect();
        assert_eq!(reduced_betti(&faces), vec![0, 0, 1]);
        assert!(reisner_cm(&circle));
        // two disjoint points: H̃_0 = 1, dimension 0, still CM
        let two = SimplicialComplex::from_facets(labels(2), vec![0b01, 0b10]);
        assert!(reisner_cm(&two));
        // two disjoint edges: disconnected 1-dimensional, not CM
        let edges = SimplicialComplex::from_facets(labels(4), vec![0b0011, 0b1100]);
        assert!(!reisner_cm(&edges));
        // a simplex
        let simplex = SimplicialComplex::from_facets(labels(4), vec![0b1111]);
        assert!(reisner_cm(&simplex));
        assert_eq!(
            reduced_betti(&simplex.faces().iter().copied().collect::<Vec<_>>()),
            vec![0; 5]
        );
        // the empty complex {∅} has H̃_{-1} = 1 and dimension −1
        assert_eq!(reduced_betti(&[0]), vec![1]);
    }

    #[test]
    fn single_line_complex() {
        let x = VarietyOfLines::new([1, 1, 0], [(1, 1)], [], []).unwrap();
        let c = stanley_reisner_complex(&x).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.facets(), &[0]);
        assert!(reisner_cm(&c));
    }

    #[test]
    fn box_grid_complex() {
        let x = grid_from_points(&box_points(2, 2, 2)).unwrap();
        let c = stanley_reisner_complex(&x).unwrap();
        assert_eq!(c.vertex_count(), 6);
        assert_eq!(c.facets().len(), 12);
        assert!(c.facets().iter().all(|f| f.count_ones() == 4));
        assert!(c.is_pure());
        assert!(reisner_cm(&c));
    }

    #[test]
    fn errors() {
        assert_eq!(
            stanley_reisner_complex(&VarietyOfLines::empty([1, 1, 1])),
            Err(OracleError::EmptyVariety)
        );
        let big = VarietyOfLines::new([9, 9, 0], [(1, 1)], [], []).unwrap();
        assert_eq!(
            stanley_reisner_complex(&big),
            Err(OracleError::SizeLimit {
                vertices: 18,
                limit: VERTEX_LIMIT
            })
        );
    }
}
