//! Generator degrees of Ferrers varieties, complete intersections, and the
//! resolution of a box grid.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::FerrersError;
use crate::ferrers::{is_ferrers_variety, resembles_ferrers};
use crate::variety::{Direction, Family, HyperplaneId, Relabeling, VarietyOfLines};

/// A multidegree in N³, partially ordered componentwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeTriple(pub [usize; 3]);

impl DegreeTriple {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        DegreeTriple([a, b, c])
    }

    /// `self ≼ other`.
    pub fn preceq(&self, other: &DegreeTriple) -> bool {
        (0..3).all(|t| self.0[t] <= other.0[t])
    }

    pub fn join(&self, other: &DegreeTriple) -> DegreeTriple {
        DegreeTriple([0, 1, 2].map(|t| self.0[t].max(other.0[t])))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..3).filter(|&t| self.0[t] > 0).collect()
    }
}

impl fmt::Display for DegreeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DegreeRole {
    D1,
    D2,
    D3,
    D,
    Dhat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSet {
    pub role: DegreeRole,
    pub elements: BTreeSet<DegreeTriple>,
}

impl DegreeSet {
    pub fn new(role: DegreeRole, elements: impl IntoIterator<Item = DegreeTriple>) -> Self {
        DegreeSet {
            role,
            elements: elements.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, t: &DegreeTriple) -> bool {
        self.elements.contains(t)
    }

    /// Whether some element is ≼ `t`.
    pub fn dominated_by(&self, t: &DegreeTriple) -> bool {
        self.elements.iter().any(|e| e.preceq(t))
    }
}

/// The ≼-minimal elements.
pub fn minimal_elements(set: &BTreeSet<DegreeTriple>) -> BTreeSet<DegreeTriple> {
    set.iter()
        .filter(|e| !set.iter().any(|f| f != *e && f.preceq(e)))
        .copied()
        .collect()
}

/// Degrees of the minimal generators of the ideal of the points of P¹×P¹
/// forming the Ferrers diagram λ (rows by first factor): (i, λ_{i+1}) for
/// i = 0 and for every i where the diagram steps down, with λ_{r+1} = 0.
/// The empty diagram gives the unit ideal, degree (0, 0).
pub fn points_generator_degrees(partition: &[usize]) -> Vec<(usize, usize)> {
    if partition.is_empty() {
        return vec![(0, 0)];
    }
    let part = |i: usize| partition.get(i).copied().unwrap_or(0);
    (0..=partition.len())
        .filter(|&i| i == 0 || part(i) < part(i - 1))
        .map(|i| (i, part(i)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSets {
    pub d1: DegreeSet,
    pub d2: DegreeSet,
    pub d3: DegreeSet,
    pub d: DegreeSet,
    pub dhat: DegreeSet,
    /// Relabelling that makes the variety literally Ferrers.
    pub relabeling: Relabeling,
}

fn embed(h: Direction, (p, q): (usize, usize)) -> DegreeTriple {
    match h {
        Direction::Three => DegreeTriple::new(p, q, 0),
        Direction::Two => DegreeTriple::new(p, 0, q),
        Direction::One => DegreeTriple::new(0, p, q),
    }
}

pub fn degree_sets(x: &VarietyOfLines) -> Result<DegreeSets, FerrersError> {
    let relabeling = is_ferrers_variety(x).ok_or(FerrersError::NotFerrers)?;
    let slice = |h: Direction, role| {
        let lambda = resembles_ferrers(x, h).partition;
        DegreeSet::new(
            role,
            points_generator_degrees(&lambda)
                .into_iter()
                .map(|g| embed(h, g)),
        )
    };
    let d3 = slice(Direction::Three, DegreeRole::D3);
    let d2 = slice(Direction::Two, DegreeRole::D2);
    let d1 = slice(Direction::One, DegreeRole::D1);
    let mut all = BTreeSet::new();
    for t3 in &d3.elements {
        for t2 in &d2.elements {
            for t1 in &d1.elements {
                all.insert(t3.join(t2).join(t1));
            }
        }
    }
    let dhat = DegreeSet::new(DegreeRole::Dhat, minimal_elements(&all));
    Ok(DegreeSets {
        d1,
        d2,
        d3,
        d: DegreeSet::new(DegreeRole::D, all),
        dhat,
        relabeling,
    })
}

/// Degrees of a minimal generating set, each standing for the product of the
/// first a A's, b B's and c C's in the Ferrers labelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub degrees: Vec<DegreeTriple>,
    /// Maps Ferrers labels back to the labels of the input variety.
    pub to_input: Relabeling,
}

impl GeneratorSet {
    /// Hyperplanes of the generator of degree `t`, in input labels.
    pub fn factors(&self, t: &DegreeTriple) -> Vec<HyperplaneId> {
        let mut out = Vec::new();
        for f in Family::ALL {
            let mut idx: Vec<usize> = (1..=t.0[f.ordinal()])
                .map(|n| self.to_input.maps[f.ordinal()][n - 1])
                .collect();
            idx.sort_unstable();
            out.extend(idx.into_iter().map(|i| HyperplaneId::new(f, i)));
        }
        out
    }

    /// Products such as `A1*A2*B1`; the unit ideal prints as `1`.
    pub fn products(&self) -> Vec<String> {
        self.degrees
            .iter()
            .map(|t| {
                let f = self.factors(t);
                if f.is_empty() {
                    "1".to_string()
                } else {
                    f.iter()
                        .map(|h| h.to_string())
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

pub fn minimal_generators(x: &VarietyOfLines) -> Result<GeneratorSet, FerrersError> {
    let sets = degree_sets(x)?;
    Ok(GeneratorSet {
        degrees: sets.dhat.elements.into_iter().collect(),
        to_input: sets.relabeling.inverse(),
    })
}

/// Degrees (F₁, F₂) when the ideal of X is generated by a regular sequence:
/// exactly two minimal generators, deg F₁ = a·eᵢ and deg F₂ supported on the
/// remaining coordinates.
pub fn detect_complete_intersection(x: &VarietyOfLines) -> Option<(DegreeTriple, DegreeTriple)> {
    let gens = minimal_generators(x).ok()?;
    let [g, h] = gens.degrees.as_slice() else {
        return None;
    };
    let (sg, sh) = (g.support(), h.support());
    if sg.is_empty() || sh.is_empty() || sg.iter().any(|t| sh.contains(t)) {
        return None;
    }
    match (sg.len(), sh.len()) {
        (1, 1) => Some(if sg[0] < sh[0] { (*g, *h) } else { (*h, *g) }),
        (1, 2) => Some((*g, *h)),
        (2, 1) => Some((*h, *g)),
        _ => None,
    }
}

/// 0 → R²(−a,−b,−c) → R(−a,−b,0) ⊕ R(−a,0,−c) ⊕ R(0,−b,−c) → I → 0 for the
/// grid of lines through the a×b×c box of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridResolution {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// Twists of the generators, as positive degrees.
    pub generator_degrees: [DegreeTriple; 3],
    /// Twist of the (rank 2) syzygy module.
    pub syzygy_degree: DegreeTriple,
    /// The 3×2 matrix whose maximal minors are the generators.
    pub hilbert_burch: [[String; 2]; 3],
}

fn product(f: Family, n: usize) -> String {
    (1..=n)
        .map(|i| HyperplaneId::new(f, i).to_string())
        .collect::<Vec<_>>()
        .join("*")
}

pub fn grid_resolution(a: usize, b: usize, c: usize) -> GridResolution {
    let (pa, pb, pc) = (
        product(Family::A, a),
        product(Family::B, b),
        product(Family::C, c),
    );
    GridResolution {
        a,
        b,
        c,
        generator_degrees: [
            DegreeTriple::new(a, b, 0),
            DegreeTriple::new(a, 0, c),
            DegreeTriple::new(0, b, c),
        ],
        syzygy_degree: DegreeTriple::new(a, b, c),
        hilbert_burch: [
            [pa.clone(), pa],
            [pb, "0".to_string()],
            ["0".to_string(), pc],
        ],
    }
}

impl GridResolution {
    pub fn ranks(&self) -> [usize; 3] {
        [2, 3, 1]
    }

    /// Hilbert function of R/I from the twists: the alternating sum of the
    /// dimensions of the shifted free modules.
    pub fn hilbert(&self, i: usize, j: usize, k: usize) -> i64 {
        let r = |u: i64, v: i64, w: i64| {
            if u < 0 || v < 0 || w < 0 {
                0
            } else {
                (u + 1) * (v + 1) * (w + 1)
            }
        };
        let (i, j, k) = (i as i64, j as i64, k as i64);
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        r(i, j, k) - r(i - a, j - b, k) - r(i - a, j, k - c) - r(i, j - b, k - c)
            + 2 * r(i - a, j - b, k - c)
    }
}

impl fmt::Display for GridResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tw = |t: &DegreeTriple| {
            let s: Vec<String> =
                t.0.iter()
                    .map(|&x| if x == 0 { "0".into() } else { format!("-{x}") })
                    .collect();
            format!("({})", s.join(","))
        };
        let [g1, g2, g3] = &self.generator_degrees;
        write!(
            f,
            "0 → R^2{} → R{} ⊕ R{} ⊕ R{} → I → 0",
            tw(&self.syzygy_degree),
            tw(g1),
            tw(g2),
            tw(g3)
        )
    }
}
