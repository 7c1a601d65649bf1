//! Ferrers diagrams inside the index sets of a variety.

use std::collections::BTreeSet;

use crate::criteria::is_acm;
use crate::error::FerrersError;
use crate::variety::{Direction, Family, Relabeling, VarietyOfLines};

/// Shape of one index set U_h viewed as a 0/1 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceShape {
    pub direction: Direction,
    /// U_h equals a Ferrers diagram after permuting rows and columns.
    pub resembles: bool,
    /// U_h is a Ferrers diagram as labelled.
    pub literal: bool,
    /// Nonzero row counts in weakly decreasing order.
    pub partition: Vec<usize>,
    /// Two rows whose supports are not nested, with a column private to each.
    pub witness: Option<([usize; 2], [usize; 2])>,
}

/// Row p holds the set {q : (p, q) ∈ U}; rows are indexed 1..=rows.
fn row_sets(set: &BTreeSet<(usize, usize)>, rows: usize) -> Vec<BTreeSet<usize>> {
    let mut out = vec![BTreeSet::new(); rows];
    for &(p, q) in set {
        out[p - 1].insert(q);
    }
    out
}

/// Whether (p, q) ∈ U forces every (p', q') with p' ≤ p, q' ≤ q into U.
pub fn is_literal_ferrers(set: &BTreeSet<(usize, usize)>) -> bool {
    set.iter().all(|&(p, q)| {
        (p == 1 || set.contains(&(p - 1, q))) && (q == 1 || set.contains(&(p, q - 1)))
    })
}

/// The left-justified diagram of a partition.
pub fn ferrers_diagram(partition: &[usize]) -> BTreeSet<(usize, usize)> {
    partition
        .iter()
        .enumerate()
        .flat_map(|(p, &len)| (1..=len).map(move |q| (p + 1, q)))
        .collect()
}

pub fn resembles_ferrers(x: &VarietyOfLines, h: Direction) -> SliceShape {
    let (rf, _) = h.families();
    let set = x.index_set(h);
    let rows = row_sets(set, x.family_size(rf));
    let mut witness = None;
    'outer: for p1 in 0..rows.len() {
        for p2 in p1 + 1..rows.len() {
            let only1 = rows[p1].difference(&rows[p2]).next();
            let only2 = rows[p2].difference(&rows[p1]).next();
            if let (Some(&q1), Some(&q2)) = (only1, only2) {
                witness = Some(([p1 + 1, p2 + 1], [q1, q2]));
                break 'outer;
            }
        }
    }
    let mut partition: Vec<usize> = rows.iter().map(|r| r.len()).filter(|&n| n > 0).collect();
    partition.sort_unstable_by(|a, b| b.cmp(a));
    SliceShape {
        direction: h,
        resembles: witness.is_none(),
        literal: is_literal_ferrers(set),
        partition,
        witness,
    }
}

/// Number of lines of direction `h` through each hyperplane of family `f`
/// (which must be one of the two families cutting out those lines).
fn counts(x: &VarietyOfLines, h: Direction, f: Family) -> Vec<usize> {
    let (rf, _) = h.families();
    let mut out = vec![0; x.family_size(f)];
    for &(p, q) in x.index_set(h) {
        out[if f == rf { p } else { q } - 1] += 1;
    }
    out
}

/// The two directions whose lines lie in hyperplanes of family `f`.
fn directions_of(f: Family) -> [Direction; 2] {
    match f {
        Family::A => [Direction::Three, Direction::Two],
        Family::B => [Direction::Three, Direction::One],
        Family::C => [Direction::Two, Direction::One],
    }
}

/// Finds one relabelling of the three families that turns every index set
/// into a literal Ferrers diagram, if any exists.
///
/// Each slice must have nested rows. Then in each family the hyperplanes have
/// to be ordered by their line counts in both slices they meet, decreasing;
/// such an order exists iff sorting by the first count and breaking ties by
/// the second leaves the second count weakly decreasing.
pub fn is_ferrers_variety(x: &VarietyOfLines) -> Option<Relabeling> {
    if Direction::ALL
        .iter()
        .any(|&h| !resembles_ferrers(x, h).resembles)
    {
        return None;
    }
    let mut maps: [Vec<usize>; 3] = Default::default();
    for f in Family::ALL {
        let [h1, h2] = directions_of(f);
        let (k1, k2) = (counts(x, h1, f), counts(x, h2, f));
        let mut order: Vec<usize> = (0..x.family_size(f)).collect();
        order.sort_by(|&p, &q| k1[q].cmp(&k1[p]).then(k2[q].cmp(&k2[p])).then(p.cmp(&q)));
        if order.windows(2).any(|w| k2[w[0]] < k2[w[1]]) {
            return None;
        }
        let mut map = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new + 1;
        }
        maps[f.ordinal()] = map;
    }
    let perms = Relabeling { maps };
    let y = x.relabel(&perms).expect("sorted orders are permutations");
    debug_assert!(Direction::ALL
        .iter()
        .all(|&h| is_literal_ferrers(y.index_set(h))));
    Some(perms)
}

pub fn is_ferrers(x: &VarietyOfLines) -> bool {
    is_ferrers_variety(x).is_some()
}

/// Replaces each index set by the left-justified diagram of its row
/// partition. Defined for ACM varieties.
pub fn ferrers_companion(x: &VarietyOfLines) -> Result<VarietyOfLines, FerrersError> {
    let verdict = is_acm(x).map_err(|e| FerrersError::Inconsistent(e.to_string()))?;
    if !verdict.is_acm {
        return Err(FerrersError::NotAcm);
    }
    let part = |h| resembles_ferrers(x, h).partition;
    let (l3, l2, l1) = (
        part(Direction::Three),
        part(Direction::Two),
        part(Direction::One),
    );
    let first = |l: &[usize]| l.first().copied().unwrap_or(0);
    let d = [
        l3.len().max(l2.len()),
        first(&l3).max(l1.len()),
        first(&l2).max(first(&l1)),
    ];
    let y = VarietyOfLines::new(
        d,
        ferrers_diagram(&l3),
        ferrers_diagram(&l2),
        ferrers_diagram(&l1),
    )
    .expect("diagrams fit inside d");
    Ok(y)
}
