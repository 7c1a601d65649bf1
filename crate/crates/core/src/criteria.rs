//! ACM criteria: hyperplane cycle enumeration, multiplicity patterns, and the
//! consensus verdict that also consults chordality of the graph complement.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CriteriaError;
use crate::graph::{build_graph, canonical_cycle, complement, is_chordal, CycleWitness};
use crate::variety::{Direction, HyperplaneId, VarietyOfLines};

/// Multiplicities μ_ijk of the points P_ijk together with the 0/1 incidence
/// matrices M⁽³⁾ (d₁×d₂), M⁽²⁾ (d₁×d₃) and M⁽¹⁾ (d₂×d₃).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTensor {
    d: [usize; 3],
    mu: Vec<u8>,
    // m[h - 1] is M^(h), row-major
    m: [Vec<u8>; 3],
}

impl MultiplicityTensor {
    pub fn d(&self) -> [usize; 3] {
        self.d
    }

    /// μ_ijk, 1-based.
    pub fn mu(&self, i: usize, j: usize, k: usize) -> u8 {
        let [_, d2, d3] = self.d;
        self.mu[((i - 1) * d2 + (j - 1)) * d3 + (k - 1)]
    }

    /// Entry (p, q) of M⁽ʰ⁾, 1-based.
    pub fn m(&self, h: Direction, p: usize, q: usize) -> u8 {
        let cols = self.cols(h);
        self.m[h.index() - 1][(p - 1) * cols + (q - 1)]
    }

    fn rows(&self, h: Direction) -> usize {
        let (f, _) = h.families();
        self.d[f.ordinal()]
    }

    fn cols(&self, h: Direction) -> usize {
        let (_, g) = h.families();
        self.d[g.ordinal()]
    }

    /// M⁽ʰ⁾ as nested rows.
    pub fn matrix(&self, h: Direction) -> Vec<Vec<u8>> {
        (1..=self.rows(h))
            .map(|p| (1..=self.cols(h)).map(|q| self.m(h, p, q)).collect())
            .collect()
    }

    pub fn m3(&self, i: usize, j: usize) -> u8 {
        self.m(Direction::Three, i, j)
    }

    pub fn m2(&self, i: usize, k: usize) -> u8 {
        self.m(Direction::Two, i, k)
    }

    pub fn m1(&self, j: usize, k: usize) -> u8 {
        self.m(Direction::One, j, k)
    }
}

pub fn multiplicity_tensor(x: &VarietyOfLines) -> MultiplicityTensor {
    let d = x.d();
    let [d1, d2, d3] = d;
    let mut m: [Vec<u8>; 3] = [vec![0; d2 * d3], vec![0; d1 * d3], vec![0; d1 * d2]];
    for line in x.lines() {
        let (p, q) = line.pair;
        let (_, g) = line.direction.families();
        m[line.direction.index() - 1][(p - 1) * d[g.ordinal()] + (q - 1)] = 1;
    }
    let mut mu = vec![0u8; d1 * d2 * d3];
    for i in 0..d1 {
        for j in 0..d2 {
            for k in 0..d3 {
                mu[(i * d2 + j) * d3 + k] = m[2][i * d2 + j] + m[1][i * d3 + k] + m[0][j * d3 + k];
            }
        }
    }
    MultiplicityTensor { d, mu, m }
}

/// Outcome of the cycle enumeration for one n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypResult {
    pub holds: bool,
    /// A violating cyclic tuple (H₁, …, Hₙ).
    pub witness: Option<Vec<HyperplaneId>>,
}

/// Hyp_n(★) for n ∈ {4, 5, 6}.
pub fn has_hyp_star(x: &VarietyOfLines, n: usize) -> Result<HypResult, CriteriaError> {
    if !(4..=6).contains(&n) {
        return Err(CriteriaError::BadN(n));
    }
    Ok(hyp_star_unchecked(x, n))
}

/// Hyp_n(★) for any n ≥ 3: there is no cyclic tuple of n distinct hyperplanes
/// where every non-adjacent pair spans a line of X and no adjacent pair does.
/// Tuples are enumerated once per dihedral class: H₁ is the least element and
/// H₂ < Hₙ.
pub fn hyp_star_unchecked(x: &VarietyOfLines, n: usize) -> HypResult {
    let hs = x.hyperplanes();
    let line = |p: usize, q: usize| x.has_line_through(hs[p], hs[q]);
    let mut path = Vec::with_capacity(n);
    for s in 0..hs.len() {
        path.clear();
        path.push(s);
        if let Some(t) = search_tuple(&line, hs.len(), n, &mut path) {
            let t = canonical_cycle(&t);
            return HypResult {
                holds: false,
                witness: Some(t.into_iter().map(|i| hs[i]).collect()),
            };
        }
    }
    HypResult {
        holds: true,
        witness: None,
    }
}

fn search_tuple(
    line: &impl Fn(usize, usize) -> bool,
    nv: usize,
    n: usize,
    path: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let s = path[0];
    let t = path.len();
    for h in s + 1..nv {
        if path.contains(&h) {
            continue;
        }
        let prev = path[t - 1];
        if line(prev, h) {
            continue;
        }
        let last_slot = t == n - 1;
        // non-adjacent to every earlier entry except the previous one, and
        // except H₁ when h closes the cycle
        let ok = path[..t - 1].iter().enumerate().all(|(p, &e)| {
            if p == 0 && last_slot {
                !line(e, h)
            } else {
                line(e, h)
            }
        });
        if !ok {
            continue;
        }
        if last_slot {
            if path[1] < h {
                let mut out = path.clone();
                out.push(h);
                return Some(out);
            }
            continue;
        }
        path.push(h);
        if let Some(found) = search_tuple(line, nv, n, path) {
            return Some(found);
        }
        path.pop();
    }
    None
}

/// Index choices realising a forbidden multiplicity pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternWitness {
    /// The 2×2×2 block over a=(a₁,a₂), b=(b₁,b₂), c=(c₁,c₂).
    Hyp6 {
        a: [usize; 2],
        b: [usize; 2],
        c: [usize; 2],
    },
    /// Condition 1–3 for n = 5 or n = 4; unused coordinates are omitted.
    Condition {
        n: usize,
        condition: usize,
        a: Vec<usize>,
        b: Vec<usize>,
        c: Vec<usize>,
    },
    /// Rows p₁, p₂ of M⁽ʰ⁾ are not nested: (p₁,q₁), (p₂,q₂) present while
    /// (p₁,q₂), (p₂,q₁) are missing.
    SliceNotFerrers {
        direction: usize,
        rows: [usize; 2],
        cols: [usize; 2],
    },
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternWitness::Hyp6 { a, b, c } => write!(
                f,
                "6-pattern at a=({},{}), b=({},{}), c=({},{})",
                a[0], a[1], b[0], b[1], c[0], c[1]
            ),
            PatternWitness::Condition {
                n,
                condition,
                a,
                b,
                c,
            } => write!(
                f,
                "n={n} condition {condition} at a={a:?}, b={b:?}, c={c:?}"
            ),
            PatternWitness::SliceNotFerrers {
                direction,
                rows,
                cols,
            } => write!(
                f,
                "U{direction} not nested: rows ({},{}), columns ({},{})",
                rows[0], rows[1], cols[0], cols[1]
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericResult {
    pub holds: bool,
    pub witness: Option<PatternWitness>,
}

impl NumericResult {
    fn from(witness: Option<PatternWitness>) -> Self {
        NumericResult {
            holds: witness.is_none(),
            witness,
        }
    }
}

fn distinct_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |p| (1..=n).filter(move |&q| q != p).map(move |q| (p, q)))
}

/// Forbidden 2×2×2 pattern: levels c₁ and c₂ equal [[3,2],[2,2]] and [[2,2],[2,3]].
pub fn criterion_hyp6_numeric(t: &MultiplicityTensor) -> NumericResult {
    let [d1, d2, d3] = t.d();
    for (a1, a2) in distinct_pairs(d1) {
        for (b1, b2) in distinct_pairs(d2) {
            for (c1, c2) in distinct_pairs(d3) {
                let lo = [
                    t.mu(a1, b1, c1),
                    t.mu(a1, b2, c1),
                    t.mu(a2, b1, c1),
                    t.mu(a2, b2, c1),
                ];
                if lo != [3, 2, 2, 2] {
                    continue;
                }
                let hi = [
                    t.mu(a1, b1, c2),
                    t.mu(a1, b2, c2),
                    t.mu(a2, b1, c2),
                    t.mu(a2, b2, c2),
                ];
                if hi == [2, 2, 2, 3] {
                    return NumericResult::from(Some(PatternWitness::Hyp6 {
                        a: [a1, a2],
                        b: [b1, b2],
                        c: [c1, c2],
                    }));
                }
            }
        }
    }
    NumericResult::from(None)
}

/// Conditions 1–3 for n = 5: a 2×2 block of μ equal to [[2,1],[2,2]] together
/// with the matching block of M⁽ʰ⁾ equal to [[1,1],[0,1]].
pub fn criterion_hyp5_numeric(t: &MultiplicityTensor) -> NumericResult {
    const MU: [u8; 4] = [2, 1, 2, 2];
    const M: [u8; 4] = [1, 1, 0, 1];
    let [d1, d2, d3] = t.d();
    let cond = |condition, a: Vec<usize>, b: Vec<usize>, c: Vec<usize>| {
        Some(PatternWitness::Condition {
            n: 5,
            condition,
            a,
            b,
            c,
        })
    };
    // 1) block over (a, b) at level c₁, against M⁽³⁾
    for (a1, a2) in distinct_pairs(d1) {
        for (b1, b2) in distinct_pairs(d2) {
            let m = [t.m3(a1, b1), t.m3(a1, b2), t.m3(a2, b1), t.m3(a2, b2)];
            if m != M {
                continue;
            }
            for c1 in 1..=d3 {
                let mu = [
                    t.mu(a1, b1, c1),
                    t.mu(a1, b2, c1),
                    t.mu(a2, b1, c1),
                    t.mu(a2, b2, c1),
                ];
                if mu == MU {
                    return NumericResult::from(cond(1, vec![a1, a2], vec![b1, b2], vec![c1]));
                }
            }
        }
    }
    // 2) block over (a, c) at b₁, against M⁽²⁾
    for (a1, a2) in distinct_pairs(d1) {
        for (c1, c2) in distinct_pairs(d3) {
            let m = [t.m2(a1, c1), t.m2(a1, c2), t.m2(a2, c1), t.m2(a2, c2)];
            if m != M {
                continue;
            }
            for b1 in 1..=d2 {
                let mu = [
                    t.mu(a1, b1, c1),
                    t.mu(a1, b1, c2),
                    t.mu(a2, b1, c1),
                    t.mu(a2, b1, c2),
                ];
                if mu == MU {
                    return NumericResult::from(cond(2, vec![a1, a2], vec![b1], vec![c1, c2]));
                }
            }
        }
    }
    // 3) block over (b, c) at a₁, against M⁽¹⁾
    for (b1, b2) in distinct_pairs(d2) {
        for (c1, c2) in distinct_pairs(d3) {
            let m = [t.m1(b1, c1), t.m1(b1, c2), t.m1(b2, c1), t.m1(b2, c2)];
            if m != M {
                continue;
            }
            for a1 in 1..=d1 {
                let mu = [
                    t.mu(a1, b1, c1),
                    t.mu(a1, b1, c2),
                    t.mu(a1, b2, c1),
                    t.mu(a1, b2, c2),
                ];
                if mu == MU {
                    return NumericResult::from(cond(3, vec![a1], vec![b1, b2], vec![c1, c2]));
                }
            }
        }
    }
    NumericResult::from(None)
}

/// Conditions 1–3 for n = 4 (a μ column [1,1] with the matching M⁽ʰ⁾ column
/// [1,0]), plus nestedness of the rows of every M⁽ʰ⁾. Four-cycles using two
/// hyperplanes from each of two families are exactly the non-nested row
/// pairs inside one slice.
pub fn criterion_hyp4_numeric(t: &MultiplicityTensor) -> NumericResult {
    let [d1, d2, d3] = t.d();
    let cond = |condition, a: Vec<usize>, b: Vec<usize>, c: Vec<usize>| {
        Some(PatternWitness::Condition {
            n: 4,
            condition,
            a,
            b,
            c,
        })
    };
    for (a1, a2) in distinct_pairs(d1) {
        for b1 in 1..=d2 {
            if (t.m3(a1, b1), t.m3(a2, b1)) != (1, 0) {
                continue;
            }
            for c1 in 1..=d3 {
                if (t.mu(a1, b1, c1), t.mu(a2, b1, c1)) == (1, 1) {
                    return NumericResult::from(cond(1, vec![a1, a2], vec![b1], vec![c1]));
                }
            }
        }
    }
    for a1 in 1..=d1 {
        for (c1, c2) in distinct_pairs(d3) {
            if (t.m2(a1, c1), t.m2(a1, c2)) != (1, 0) {
                continue;
            }
            for b1 in 1..=d2 {
                if (t.mu(a1, b1, c1), t.mu(a1, b1, c2)) == (1, 1) {
                    return NumericResult::from(cond(2, vec![a1], vec![b1], vec![c1, c2]));
                }
            }
        }
    }
    for (b1, b2) in distinct_pairs(d2) {
        for c1 in 1..=d3 {
            if (t.m1(b1, c1), t.m1(b2, c1)) != (1, 0) {
                continue;
            }
            for a1 in 1..=d1 {
                if (t.mu(a1, b1, c1), t.mu(a1, b2, c1)) == (1, 1) {
                    return NumericResult::from(cond(3, vec![a1], vec![b1, b2], vec![c1]));
                }
            }
        }
    }
    for h in [Direction::Three, Direction::Two, Direction::One] {
        if let Some(w) = slice_nesting_violation(t, h) {
            return NumericResult::from(Some(w));
        }
    }
    NumericResult::from(None)
}

fn slice_nesting_violation(t: &MultiplicityTensor, h: Direction) -> Option<PatternWitness> {
    let (rows, cols) = (t.rows(h), t.cols(h));
    for p1 in 1..=rows {
        for p2 in p1 + 1..=rows {
            let only =
                |p: usize, o: usize| (1..=cols).find(|&q| t.m(h, p, q) == 1 && t.m(h, o, q) == 0);
            if let (Some(q1), Some(q2)) = (only(p1, p2), only(p2, p1)) {
                return Some(PatternWitness::SliceNotFerrers {
                    direction: h.index(),
                    rows: [p1, p2],
                    cols: [q1, q2],
                });
            }
        }
    }
    None
}

/// Per-route verdicts; `hyp` and `numeric` are indexed by n − 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouteVerdicts {
    pub chordal: bool,
    pub hyp: [bool; 3],
    pub numeric: [bool; 3],
}

impl RouteVerdicts {
    pub fn unanimous(&self) -> bool {
        self.hyp == self.numeric
            && self.hyp.iter().all(|&b| b) == self.chordal
            && self.numeric.iter().all(|&b| b) == self.chordal
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AcmWitness {
    Cycle(CycleWitness),
    Pattern(PatternWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcmVerdict {
    pub is_acm: bool,
    /// Smallest n for which Hyp_n(★) fails.
    pub failing_n: Option<usize>,
    pub routes: RouteVerdicts,
    pub cycle: Option<CycleWitness>,
    pub hyp_witness: Option<Vec<HyperplaneId>>,
    pub pattern: Option<PatternWitness>,
}

impl AcmVerdict {
    pub fn witness(&self) -> Option<AcmWitness> {
        self.cycle
            .clone()
            .map(AcmWitness::Cycle)
            .or_else(|| self.pattern.clone().map(AcmWitness::Pattern))
    }

    pub fn to_json(&self) -> Value {
        let per_n = |v: &[bool; 3]| json!({"4": v[0], "5": v[1], "6": v[2]});
        let witness = if self.is_acm {
            Value::Null
        } else {
            json!({
                "failing_n": self.failing_n,
                "cycle": self.cycle,
                "tuple": self.hyp_witness.as_ref().map(|t| t.iter().map(|h| h.to_string()).collect::<Vec<_>>()),
                "pattern": self.pattern,
            })
        };
        json!({
            "acm": self.is_acm,
            "routes": {
                "chordal": self.routes.chordal,
                "hyp": per_n(&self.routes.hyp),
                "numeric": per_n(&self.routes.numeric),
            },
            "witness": witness,
        })
    }
}

/// The three routes returned different answers; carries everything observed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriteriaDisagreement {
    pub variety: String,
    pub routes: RouteVerdicts,
    pub cycle: Option<CycleWitness>,
    pub hyp_witnesses: Vec<Option<Vec<HyperplaneId>>>,
    pub patterns: Vec<Option<PatternWitness>>,
}

impl fmt::Display for CriteriaDisagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "variety {}: chordal={}, hyp(4,5,6)={:?}, numeric(4,5,6)={:?}",
            self.variety, self.routes.chordal, self.routes.hyp, self.routes.numeric
        )
    }
}

/// Runs all three routes and returns their common verdict.
pub fn is_acm(x: &VarietyOfLines) -> Result<AcmVerdict, CriteriaError> {
    let chordality = is_chordal(&complement(&build_graph(x)));
    let hyps: Vec<HypResult> = (4..=6).map(|n| hyp_star_unchecked(x, n)).collect();
    let t = multiplicity_tensor(x);
    let numerics = [
        criterion_hyp4_numeric(&t),
        criterion_hyp5_numeric(&t),
        criterion_hyp6_numeric(&t),
    ];
    let routes = RouteVerdicts {
        chordal: chordality.chordal,
        hyp: [hyps[0].holds, hyps[1].holds, hyps[2].holds],
        numeric: [numerics[0].holds, numerics[1].holds, numerics[2].holds],
    };
    if !routes.unanimous() {
        return Err(CriteriaError::Disagreement(Box::new(
            CriteriaDisagreement {
                variety: x.to_json(),
                routes,
                cycle: chordality.witness,
                hyp_witnesses: hyps.into_iter().map(|h| h.witness).collect(),
                patterns: numerics.into_iter().map(|r| r.witness).collect(),
            },
        )));
    }
    let failing = routes.hyp.iter().position(|&b| !b);
    Ok(AcmVerdict {
        is_acm: routes.chordal,
        failing_n: failing.map(|p| p + 4),
        cycle: chordality.witness,
        hyp_witness: failing.and_then(|p| hyps[p].witness.clone()),
        pattern: failing.and_then(|p| numerics[p].witness.clone()),
        routes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::{box_points, grid_from_points};

    fn nine_lines() -> VarietyOfLines {
        VarietyOfLines::new(
            [2, 2, 2],
            [(1, 1), (1, 2), (2, 2)],
            [(1, 1), (2, 1), (2, 2)],
            [(1, 1), (1, 2), (2, 2)],
        )
        .unwrap()
    }

    #[test]
    fn tensor_decomposes() {
        let x = nine_lines();
        let t = multiplicity_tensor(&x);
        for i in 1..=2 {
            for j in 1..=2 {
                for k in 1..=2 {
                    assert_eq!(t.mu(i, j, k), t.m3(i, j) + t.m2(i, k) + t.m1(j, k));
                }
            }
        }
        let empty = multiplicity_tensor(&VarietyOfLines::empty([2, 2, 2]));
        assert!(empty.mu.iter().all(|&m| m == 0));
    }

    #[test]
    fn bad_n_is_rejected() {
        let x = nine_lines();
        assert!(matches!(has_hyp_star(&x, 3), Err(CriteriaError::BadN(3))));
        assert!(matches!(has_hyp_star(&x, 7), Err(CriteriaError::BadN(7))));
    }

    #[test]
    fn box_grid_is_acm() {
        for (a, b, c) in [(1, 1, 1), (2, 3, 2), (3, 1, 2)] {
            let x = grid_from_points(&box_points(a, b, c)).unwrap();
            let v = is_acm(&x).unwrap();
            assert!(v.is_acm);
            assert!(v.witness().is_none());
        }
    }

    #[test]
    fn verdict_json_shape() {
        let v = is_acm(&nine_lines()).unwrap();
        let j = v.to_json();
        assert_eq!(j["acm"], false);
        assert_eq!(j["routes"]["hyp"]["6"], false);
        assert_eq!(j["routes"]["numeric"]["6"], false);
        assert_eq!(j["routes"]["hyp"]["4"], true);
        assert_eq!(j["witness"]["failing_n"], 6);
        assert_eq!(j["witness"]["cycle"].as_array().unwrap().len(), 6);
    }
}
