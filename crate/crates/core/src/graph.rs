//! The incidence graph G_X, its complement, and chordality testing.
//!
//! G_X has one vertex per hyperplane and one edge per line of X. Its cover
//! ideal is the monomial ideal attached to X, and X is ACM exactly when the
//! complement of G_X is chordal.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::variety::{HyperplaneId, VarietyOfLines};

/// Simple undirected graph on hyperplane labels, stored as an adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<HyperplaneId>,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(vertices: Vec<HyperplaneId>) -> Self {
        let n = vertices.len();
        Graph {
            vertices,
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "no loops");
        self.adj[u][v] = true;
        self.adj[v][u] = true;
    }

    pub fn vertices(&self) -> &[HyperplaneId] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn index_of(&self, h: HyperplaneId) -> Option<usize> {
        self.vertices.iter().position(|&x| x == h)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v]
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(u, _)| u)
    }

    /// Edges as index pairs `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.adj[u][v])
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in &self.vertices {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!(
                "  {} -- {};\n",
                self.vertices[u], self.vertices[v]
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// G_X: vertices a₁..a_{d₁}, b₁..b_{d₂}, c₁..c_{d₃}; an edge per line of X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph(Graph);

/// The complement of G_X; every same-family pair is an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementGraph(Graph);

impl Deref for IncidenceGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl Deref for ComplementGraph {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

pub fn build_graph(x: &VarietyOfLines) -> IncidenceGraph {
    let vertices = x.hyperplanes();
    let mut g = Graph::new(vertices);
    for line in x.lines() {
        let (h, k) = line.hyperplanes();
        let u = g.index_of(h).expect("hyperplane within d");
        let v = g.index_of(k).expect("hyperplane within d");
        g.add_edge(u, v);
    }
    IncidenceGraph(g)
}

pub fn complement(g: &IncidenceGraph) -> ComplementGraph {
    let n = g.vertex_count();
    let mut c = Graph::new(g.vertices().to_vec());
    for u in 0..n {
        for v in u + 1..n {
            if !g.adjacent(u, v) {
                c.add_edge(u, v);
            }
        }
    }
    ComplementGraph(c)
}

/// An induced cycle of length at least 4, listed in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleWitness {
    pub vertices: Vec<HyperplaneId>,
}

/// Serialized as the list of labels, e.g. `["A1","B2","C1","A2"]`.
impl Serialize for CycleWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices.iter().map(|h| h.to_string()))
    }
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks that the cycle is induced in `g`: consecutive vertices are
    /// adjacent and no other pair is.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = self.vertices.len();
        if n < 4 {
            return false;
        }
        let Some(idx): Option<Vec<usize>> = self.vertices.iter().map(|&h| g.index_of(h)).collect()
        else {
            return false;
        };
        for p in 0..n {
            for q in p + 1..n {
                let consecutive = q == p + 1 || (p == 0 && q == n - 1);
                if g.adjacent(idx[p], idx[q]) != consecutive {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.vertices.iter().map(|h| h.to_string()).collect();
        write!(f, "{}", labels.join(" - "))?;
        if let Some(first) = self.vertices.first() {
            write!(f, " - {first}")?;
        }
        Ok(())
    }
}

/// Rotates and reflects a cycle so that it starts at its least element and
/// the second element is smaller than the last.
pub fn canonical_cycle<T: Ord + Copy>(cycle: &[T]) -> Vec<T> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&i| cycle[i]).expect("nonempty");
    let fwd: Vec<T> = (0..n).map(|t| cycle[(start + t) % n]).collect();
    let bwd: Vec<T> = (0..n).map(|t| cycle[(start + n - t) % n]).collect();
    fwd.min(bwd)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chordality {
    pub chordal: bool,
    pub witness: Option<CycleWitness>,
}

/// Maximum cardinality search; ties go to the smallest vertex index.
/// Returns the visit order.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

/// Decides chordality by checking that the reverse MCS order is a perfect
/// elimination ordering; on failure extracts an induced cycle.
pub fn is_chordal(g: &Graph) -> Chordality {
    let order = maximum_cardinality_search(g);
    let mut pos = vec![0; g.vertex_count()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    for &v in &order {
        let earlier: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] < pos[v]).collect();
        for (a, &u) in earlier.iter().enumerate() {
            for &w in &earlier[a + 1..] {
                if !g.adjacent(u, w) {
                    let witness = induced_cycle_from(g, v)
                        .or_else(|| (0..g.vertex_count()).find_map(|s| induced_cycle_from(g, s)))
                        .expect("a graph failing the elimination test has an induced cycle");
                    return Chordality {
                        chordal: false,
                        witness: Some(witness),
                    };
                }
            }
        }
    }
    Chordality {
        chordal: true,
        witness: None,
    }
}

/// Looks for an induced cycle through `v`: two non-adjacent neighbours joined
/// by a shortest path that avoids the rest of v's closed neighbourhood.
fn induced_cycle_from(g: &Graph, v: usize) -> Option<CycleWitness> {
    let nbrs: Vec<usize> = g.neighbors(v).collect();
    for (a, &u) in nbrs.iter().enumerate() {
        for &w in &nbrs[a + 1..] {
            if g.adjacent(u, w) {
                continue;
            }
            let blocked = |x: usize| x == v || (g.adjacent(v, x) && x != u && x != w);
            if let Some(path) = shortest_path(g, u, w, blocked) {
                let mut cycle = vec![v];
                cycle.extend(path);
                let cycle = canonical_cycle(&cycle);
                return Some(CycleWitness {
                    vertices: cycle.into_iter().map(|i| g.vertices[i]).collect(),
                });
            }
        }
    }
    None
}

fn shortest_path(
    g: &Graph,
    from: usize,
    to: usize,
    blocked: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for y in g.neighbors(x) {
            if prev[y] == usize::MAX && !blocked(y) {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// All induced cycles of length 4..=max_len, canonicalised and sorted.
pub fn chordless_cycles(g: &Graph, max_len: usize) -> Vec<CycleWitness> {
    let n = g.vertex_count();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        for v1 in g.neighbors(s).filter(|&x| x > s) {
            let mut path = vec![s, v1];
            extend_induced(g, &mut path, max_len, &mut found);
        }
    }
    found.sort();
    found.dedup();
    found
        .into_iter()
        .map(|c| CycleWitness {
            vertices: c.into_iter().map(|i| g.vertices[i]).collect(),
        })
        .collect()
}

fn extend_induced(g: &Graph, path: &mut Vec<usize>, max_len: usize, found: &mut Vec<Vec<usize>>) {
    let s = path[0];
    let last = *path.last().expect("nonempty path");
    for x in g.neighbors(last) {
        if x <= s || path.contains(&x) {
            continue;
        }
        // x may touch only `last` among the interior of the path
        if path[1..path.len() - 1].iter().any(|&p| g.adjacent(p, x)) {
            continue;
        }
        let closes = g.adjacent(s, x);
        if closes {
            if path.len() >= 3 && path.len() < max_len && path[1] < x {
                let mut cycle = path.clone();
                cycle.push(x);
                found.push(cycle);
            }
        } else if path.len() + 1 < max_len {
            path.push(x);
            extend_induced(g, path, max_len, found);
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::{box_points, grid_from_points, Family};

    fn cycle_graph(n: usize) -> Graph {
        let mut g = Graph::new((1..=n).map(HyperplaneId::a).collect());
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    fn complete_graph(n: usize) -> Graph {
        let mut g = Graph::new((1..=n).map(HyperplaneId::a).collect());
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn counts_for_grid_and_empty() {
        let x = grid_from_points(&box_points(2, 3, 2)).unwrap();
        let g = build_graph(&x);
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 6 + 4 + 6);
        let gc = complement(&g);
        assert_eq!(gc.edge_count(), 21 - 16);
        for (u, v) in gc.edges() {
            assert_eq!(gc.vertices()[u].family, gc.vertices()[v].family);
        }

        let empty = VarietyOfLines::empty([2, 1, 1]);
        let g = build_graph(&empty);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(complement(&g).edge_count(), 6);
    }

    #[test]
    fn no_edge_inside_a_family() {
        let x = grid_from_points(&box_points(3, 2, 2)).unwrap();
        let g = build_graph(&x);
        for (u, v) in g.edges() {
            assert_ne!(g.vertices()[u].family, g.vertices()[v].family);
        }
        assert!(
            g.vertices()
                .iter()
                .filter(|h| h.family == Family::C)
                .count()
                == 2
        );
    }

    #[test]
    fn chordality_of_small_graphs() {
        assert!(is_chordal(&complete_graph(5)).chordal);
        assert!(is_chordal(&Graph::new(vec![])).chordal);
        for n in 4..=7 {
            let res = is_chordal(&cycle_graph(n));
            assert!(!res.chordal);
            let w = res.witness.unwrap();
            assert_eq!(w.len(), n);
            assert!(w.verify(&cycle_graph(n)));
        }
        let mut triangle_fan = cycle_graph(5);
        triangle_fan.add_edge(0, 2);
        triangle_fan.add_edge(0, 3);
        assert!(is_chordal(&triangle_fan).chordal);
    }

    #[test]
    fn witness_avoids_chords() {
        // 6-cycle with a chord splitting it into two 4-cycles
        let mut g = cycle_graph(6);
        g.add_edge(0, 3);
        let res = is_chordal(&g);
        let w = res.witness.unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.verify(&g));
        let all = chordless_cycles(&g, 6);
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|c| c.verify(&g)));
    }

    #[test]
    fn enumerates_single_four_cycle() {
        let g = cycle_graph(4);
        let all = chordless_cycles(&g, 6);
        assert_eq!(all.len(), 1);
        assert_eq!(
            all[0].vertices,
            (1..=4).map(HyperplaneId::a).collect::<Vec<_>>()
        );
        assert!(chordless_cycles(&complete_graph(6), 6).is_empty());
        assert!(chordless_cycles(&cycle_graph(7), 6).is_empty());
        assert_eq!(chordless_cycles(&cycle_graph(7), 7).len(), 1);
    }

    #[test]
    fn canonical_form() {
        assert_eq!(canonical_cycle(&[3, 1, 4, 2]), vec![1, 3, 2, 4]);
        assert_eq!(canonical_cycle(&[2, 4, 1, 3]), vec![1, 3, 2, 4]);
    }

    #[test]
    fn dot_output_lists_edges() {
        let x = grid_from_points(&box_points(1, 1, 1)).unwrap();
        let dot = build_graph(&x).to_dot("G");
        assert!(dot.contains("A1 -- B1;"));
        assert!(dot.contains("B1 -- C1;"));
    }
}
