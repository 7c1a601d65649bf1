#![allow(dead_code)]

use std::path::PathBuf;

use acm_lines::variety::{grid_from_points, RawPointSet, Strictness};
use acm_lines::{Direction, PointTriple, Relabeling, VarietyOfLines};
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    // also used from the gate package, so go through the workspace layout
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> VarietyOfLines {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    VarietyOfLines::from_json(&text, Strictness::Lenient)
        .unwrap()
        .variety
}

pub fn fixture_points(name: &str) -> Vec<PointTriple> {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    let raw: RawPointSet = serde_json::from_str(&text).unwrap();
    raw.to_points()
}

pub fn fixture_grid(name: &str) -> VarietyOfLines {
    grid_from_points(&fixture_points(name)).unwrap()
}

fn full(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    (1..=rows)
        .flat_map(|p| (1..=cols).map(move |q| (p, q)))
        .collect()
}

/// Every variety on d with all subsets of the candidate lines (not compacted).
pub fn all_varieties(d: [usize; 3]) -> Vec<VarietyOfLines> {
    let c3 = full(d[0], d[1]);
    let c2 = full(d[0], d[2]);
    let c1 = full(d[1], d[2]);
    let total = c3.len() + c2.len() + c1.len();
    (0u64..1 << total)
        .map(|mask| {
            let pick = |cands: &[(usize, usize)], offset: usize| -> Vec<(usize, usize)> {
                cands
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| mask >> (offset + t) & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect()
            };
            VarietyOfLines::new(
                d,
                pick(&c3, 0),
                pick(&c2, c3.len()),
                pick(&c1, c3.len() + c2.len()),
            )
            .unwrap()
        })
        .collect()
}

/// Random d in 1..=dmax per family, each line kept with probability p, compacted.
pub fn random_variety<R: Rng>(rng: &mut R, dmax: [usize; 3], p: f64) -> VarietyOfLines {
    let d = [0, 1, 2].map(|f| rng.gen_range(1..=dmax[f]));
    let mut pick = |rows, cols| {
        full(rows, cols)
            .into_iter()
            .filter(|_| rng.gen_bool(p))
            .collect::<Vec<_>>()
    };
    let u3 = pick(d[0], d[1]);
    let u2 = pick(d[0], d[2]);
    let u1 = pick(d[1], d[2]);
    VarietyOfLines::new(d, u3, u2, u1).unwrap().compact()
}

/// Random partition with at most `rows` parts, each at most `cols`.
fn random_partition<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Vec<usize> {
    let mut parts: Vec<usize> = (0..rows).map(|_| rng.gen_range(0..=cols)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts.retain(|&x| x > 0);
    parts
}

fn diagram(part: &[usize]) -> Vec<(usize, usize)> {
    part.iter()
        .enumerate()
        .flat_map(|(p, &n)| (1..=n).map(move |q| (p + 1, q)))
        .collect()
}

/// A random literal Ferrers variety within dmax, compacted and nonempty.
/// Each index set is an independent diagram, which is already a Ferrers
/// variety under the identity labelling.
pub fn random_ferrers<R: Rng>(rng: &mut R, dmax: [usize; 3]) -> VarietyOfLines {
    loop {
        let d = [0, 1, 2].map(|f| rng.gen_range(1..=dmax[f]));
        let l3 = random_partition(rng, d[0], d[1]);
        let l2 = random_partition(rng, d[0], d[2]);
        let l1 = random_partition(rng, d[1], d[2]);
        let x = VarietyOfLines::new(d, diagram(&l3), diagram(&l2), diagram(&l1))
            .unwrap()
            .compact();
        // compaction removes only trailing indices, so the diagrams stay literal
        if !x.is_empty() {
            return x;
        }
    }
}

/// Random relabelling of the families of `x`.
pub fn random_relabeling<R: Rng>(rng: &mut R, d: [usize; 3]) -> Relabeling {
    use rand::seq::SliceRandom;
    let maps = d.map(|n| {
        let mut m: Vec<usize> = (1..=n).collect();
        m.shuffle(rng);
        m
    });
    Relabeling { maps }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn literal(set: &std::collections::BTreeSet<(usize, usize)>) -> bool {
    set.iter()
        .all(|&(p, q)| (1..=p).all(|a| (1..=q).all(|b| set.contains(&(a, b)))))
}

/// Exhaustive search over all family relabellings for one making every index
/// set a literal Ferrers diagram.
pub fn brute_force_ferrers(x: &VarietyOfLines) -> bool {
    let d = x.d();
    let (pa, pb, pc) = (permutations(d[0]), permutations(d[1]), permutations(d[2]));
    for a in &pa {
        for b in &pb {
            for c in &pc {
                let r = Relabeling::new(a.clone(), b.clone(), c.clone());
                let y = x.relabel(&r).unwrap();
                if Direction::ALL.iter().all(|&h| literal(y.index_set(h))) {
                    return true;
                }
            }
        }
    }
    false
}

/// Exhaustive row/column permutation check for one index set.
pub fn brute_force_resembles(x: &VarietyOfLines, h: Direction) -> bool {
    let (rf, cf) = h.families();
    let (r, c) = (x.family_size(rf), x.family_size(cf));
    let set = x.index_set(h);
    for pr in permutations(r) {
        for pc in permutations(c) {
            let moved = set.iter().map(|&(p, q)| (pr[p - 1], pc[q - 1])).collect();
            if literal(&moved) {
                return true;
            }
        }
    }
    false
}
