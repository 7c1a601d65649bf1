//! Varieties of lines in P¹×P¹×P¹.
//!
//! A line is cut out by two hyperplanes of different families. Family A holds
//! the hyperplanes of degree e₁, B those of degree e₂ and C those of degree
//! e₃. The lines of *direction* h are the ones whose free factor is the h-th
//! one, so direction 3 lines are L(Aᵢ, Bⱼ), direction 2 lines L(Aᵢ, Cₖ) and
//! direction 1 lines L(Bⱼ, Cₖ). A variety stores one index set per direction,
//! all indices 1-based.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{VarietyError, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::A, Family::B, Family::C];

    /// Position of the family in (A, B, C), also the coordinate of its degree.
    pub fn ordinal(self) -> usize {
        match self {
            Family::A => 0,
            Family::B => 1,
            Family::C => 2,
        }
    }

    pub fn from_ordinal(i: usize) -> Option<Family> {
        Family::ALL.get(i).copied()
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    One,
    Two,
    Three,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::One, Direction::Two, Direction::Three];

    pub fn from_index(h: usize) -> Option<Direction> {
        match h {
            1 => Some(Direction::One),
            2 => Some(Direction::Two),
            3 => Some(Direction::Three),
            _ => None,
        }
    }

    /// The value 1, 2 or 3.
    pub fn index(self) -> usize {
        match self {
            Direction::One => 1,
            Direction::Two => 2,
            Direction::Three => 3,
        }
    }

    /// (row family, column family) of the index set: U₃ ⊆ [d₁]×[d₂],
    /// U₂ ⊆ [d₁]×[d₃], U₁ ⊆ [d₂]×[d₃].
    pub fn families(self) -> (Family, Family) {
        match self {
            Direction::One => (Family::B, Family::C),
            Direction::Two => (Family::A, Family::C),
            Direction::Three => (Family::A, Family::B),
        }
    }

    /// The family that does not cut out lines of this direction.
    pub fn free_family(self) -> Family {
        match self {
            Direction::One => Family::A,
            Direction::Two => Family::B,
            Direction::Three => Family::C,
        }
    }

    /// Direction of the line spanned by two hyperplanes of distinct families.
    pub fn of_families(f: Family, g: Family) -> Option<Direction> {
        match (f.min(g), f.max(g)) {
            (Family::A, Family::B) => Some(Direction::Three),
            (Family::A, Family::C) => Some(Direction::Two),
            (Family::B, Family::C) => Some(Direction::One),
            _ => None,
        }
    }

    fn slot(self) -> usize {
        self.index() - 1
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A hyperplane L(Aᵢ), L(Bⱼ) or L(Cₖ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperplaneId {
    pub family: Family,
    pub index: usize,
}

impl HyperplaneId {
    pub fn new(family: Family, index: usize) -> Self {
        HyperplaneId { family, index }
    }

    pub fn a(index: usize) -> Self {
        Self::new(Family::A, index)
    }

    pub fn b(index: usize) -> Self {
        Self::new(Family::B, index)
    }

    pub fn c(index: usize) -> Self {
        Self::new(Family::C, index)
    }

    /// Parses labels such as `A3` or `c12`.
    pub fn parse(label: &str) -> Option<Self> {
        let mut chars = label.chars();
        let family = match chars.next()?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            _ => return None,
        };
        let index: usize = chars.as_str().parse().ok()?;
        (index >= 1).then_some(HyperplaneId { family, index })
    }
}

impl fmt::Display for HyperplaneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub direction: Direction,
    pub pair: (usize, usize),
}

impl Line {
    pub fn hyperplanes(&self) -> (HyperplaneId, HyperplaneId) {
        let (f, g) = self.direction.families();
        (
            HyperplaneId::new(f, self.pair.0),
            HyperplaneId::new(g, self.pair.1),
        )
    }

    /// The line L(H, K) for hyperplanes of distinct families.
    pub fn through(h: HyperplaneId, k: HyperplaneId) -> Option<Line> {
        let direction = Direction::of_families(h.family, k.family)?;
        let (lo, hi) = if h.family < k.family { (h, k) } else { (k, h) };
        Some(Line {
            direction,
            pair: (lo.index, hi.index),
        })
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (h, k) = self.hyperplanes();
        write!(f, "L({h},{k})")
    }
}

/// The point P_ijk = L(Aᵢ) ∩ L(Bⱼ) ∩ L(Cₖ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointTriple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl PointTriple {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        PointTriple { i, j, k }
    }
}

/// All points of the box [a]×[b]×[c] (a complete intersection of type (a,b,c)).
pub fn box_points(a: usize, b: usize, c: usize) -> Vec<PointTriple> {
    let mut pts = Vec::with_capacity(a * b * c);
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                pts.push(PointTriple::new(i, j, k));
            }
        }
    }
    pts
}

/// Interchange format: `{"d":[d1,d2,d3],"U3":[[i,j],..],"U2":[[i,k],..],"U1":[[j,k],..]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawVariety {
    pub d: [usize; 3],
    #[serde(rename = "U3", default)]
    pub u3: Vec<[usize; 2]>,
    #[serde(rename = "U2", default)]
    pub u2: Vec<[usize; 2]>,
    #[serde(rename = "U1", default)]
    pub u1: Vec<[usize; 2]>,
}

/// `{"points":[[i,j,k],..]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPointSet {
    pub points: Vec<[usize; 3]>,
}

impl RawPointSet {
    pub fn to_points(&self) -> Vec<PointTriple> {
        self.points
            .iter()
            .map(|p| PointTriple::new(p[0], p[1], p[2]))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    /// Unused hyperplane indices are reported as warnings.
    Lenient,
    /// Unused hyperplane indices are errors.
    Strict,
}

#[derive(Clone, Debug)]
pub struct Validated {
    pub variety: VarietyOfLines,
    pub warnings: Vec<Violation>,
}

/// Relabeling of the three families of hyperplanes. `maps[f][old - 1] = new`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relabeling {
    pub maps: [Vec<usize>; 3],
}

impl Relabeling {
    pub fn identity(d: [usize; 3]) -> Self {
        Relabeling {
            maps: d.map(|n| (1..=n).collect()),
        }
    }

    pub fn new(a: Vec<usize>, b: Vec<usize>, c: Vec<usize>) -> Self {
        Relabeling { maps: [a, b, c] }
    }

    pub fn is_identity(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.iter().enumerate().all(|(i, &v)| v == i + 1))
    }

    /// New label of `h`.
    pub fn apply(&self, h: HyperplaneId) -> HyperplaneId {
        HyperplaneId::new(h.family, self.maps[h.family.ordinal()][h.index - 1])
    }

    pub fn inverse(&self) -> Relabeling {
        let maps = self.maps.clone().map(|m| {
            let mut inv = vec![0; m.len()];
            for (old, &new) in m.iter().enumerate() {
                if (1..=m.len()).contains(&new) {
                    inv[new - 1] = old + 1;
                }
            }
            inv
        });
        Relabeling { maps }
    }

    fn check(&self, d: [usize; 3]) -> Result<(), VarietyError> {
        for f in Family::ALL {
            let m = &self.maps[f.ordinal()];
            let n = d[f.ordinal()];
            let bad = |reason: String| VarietyError::BadPermutation {
                family: f.letter(),
                reason,
            };
            if m.len() != n {
                return Err(bad(format!("expected {n} entries, got {}", m.len())));
            }
            let mut seen = vec![false; n];
            for &v in m {
                if v == 0 || v > n {
                    return Err(bad(format!("value {v} outside 1..={n}")));
                }
                if std::mem::replace(&mut seen[v - 1], true) {
                    return Err(bad(format!("value {v} repeated")));
                }
            }
        }
        Ok(())
    }
}

/// A finite union of distinct lines, described by the hyperplane counts `d`
/// and the three index sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarietyOfLines {
    d: [usize; 3],
    // sets[h - 1] is U_h
    sets: [BTreeSet<(usize, usize)>; 3],
}

impl VarietyOfLines {
    pub fn empty(d: [usize; 3]) -> Self {
        VarietyOfLines {
            d,
            sets: Default::default(),
        }
    }

    /// Builds a variety from its index sets, checking bounds and duplicates.
    /// Unused hyperplane indices are allowed here; see [`validate`] for the
    /// strict check and [`VarietyOfLines::compact`] for normalisation.
    pub fn new(
        d: [usize; 3],
        u3: impl IntoIterator<Item = (usize, usize)>,
        u2: impl IntoIterator<Item = (usize, usize)>,
        u1: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, VarietyError> {
        let raw = RawVariety {
            d,
            u3: u3.into_iter().map(|(x, y)| [x, y]).collect(),
            u2: u2.into_iter().map(|(x, y)| [x, y]).collect(),
            u1: u1.into_iter().map(|(x, y)| [x, y]).collect(),
        };
        validate(&raw, Strictness::Lenient).map(|v| v.variety)
    }

    pub fn from_lines(
        d: [usize; 3],
        lines: impl IntoIterator<Item = Line>,
    ) -> Result<Self, VarietyError> {
        let mut raw = RawVariety {
            d,
            ..Default::default()
        };
        for l in lines {
            let p = [l.pair.0, l.pair.1];
            match l.direction {
                Direction::One => raw.u1.push(p),
                Direction::Two => raw.u2.push(p),
                Direction::Three => raw.u3.push(p),
            }
        }
        validate(&raw, Strictness::Lenient).map(|v| v.variety)
    }

    pub fn from_json(text: &str, strictness: Strictness) -> Result<Validated, VarietyError> {
        let raw: RawVariety = serde_json::from_str(text)?;
        validate(&raw, strictness)
    }

    pub fn d(&self) -> [usize; 3] {
        self.d
    }

    pub fn family_size(&self, f: Family) -> usize {
        self.d[f.ordinal()]
    }

    pub fn index_set(&self, h: Direction) -> &BTreeSet<(usize, usize)> {
        &self.sets[h.slot()]
    }

    pub fn line_count(&self) -> usize {
        self.sets.iter().map(|s| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.line_count() == 0
    }

    /// Lines in direction order 1, 2, 3, pairs ascending.
    pub fn lines(&self) -> impl Iterator<Item = Line> + '_ {
        Direction::ALL.into_iter().flat_map(move |h| {
            self.sets[h.slot()]
                .iter()
                .map(move |&pair| Line { direction: h, pair })
        })
    }

    pub fn contains(&self, line: &Line) -> bool {
        self.sets[line.direction.slot()].contains(&line.pair)
    }

    /// Whether L(h, k) is a line of the variety. Two hyperplanes of the same
    /// family never span a line.
    pub fn has_line_through(&self, h: HyperplaneId, k: HyperplaneId) -> bool {
        Line::through(h, k).is_some_and(|l| self.contains(&l))
    }

    /// All hyperplanes A₁..A_{d₁}, B₁..B_{d₂}, C₁..C_{d₃} in that order.
    pub fn hyperplanes(&self) -> Vec<HyperplaneId> {
        Family::ALL
            .into_iter()
            .flat_map(|f| (1..=self.d[f.ordinal()]).map(move |i| HyperplaneId::new(f, i)))
            .collect()
    }

    /// Number of lines contained in the hyperplane.
    pub fn lines_in(&self, h: HyperplaneId) -> usize {
        Direction::ALL
            .into_iter()
            .map(|dir| {
                let (f, g) = dir.families();
                let set = &self.sets[dir.slot()];
                if f == h.family {
                    set.iter().filter(|p| p.0 == h.index).count()
                } else if g == h.family {
                    set.iter().filter(|p| p.1 == h.index).count()
                } else {
                    0
                }
            })
            .sum()
    }

    pub fn unused_hyperplanes(&self) -> Vec<HyperplaneId> {
        let mut used: [Vec<bool>; 3] = self.d.map(|n| vec![false; n]);
        for l in self.lines() {
            let (h, k) = l.hyperplanes();
            used[h.family.ordinal()][h.index - 1] = true;
            used[k.family.ordinal()][k.index - 1] = true;
        }
        self.hyperplanes()
            .into_iter()
            .filter(|h| !used[h.family.ordinal()][h.index - 1])
            .collect()
    }

    /// Renumbers each family so that only hyperplanes containing some line
    /// remain, preserving their relative order.
    pub fn compact(&self) -> VarietyOfLines {
        let unused = self.unused_hyperplanes();
        let mut maps: [Vec<usize>; 3] = self.d.map(|n| vec![0; n]);
        let mut d = [0; 3];
        for f in Family::ALL {
            let fi = f.ordinal();
            for i in 1..=self.d[fi] {
                if !unused.contains(&HyperplaneId::new(f, i)) {
                    d[fi] += 1;
                    maps[fi][i - 1] = d[fi];
                }
            }
        }
        let mut out = VarietyOfLines::empty(d);
        for dir in Direction::ALL {
            let (f, g) = dir.families();
            out.sets[dir.slot()] = self.sets[dir.slot()]
                .iter()
                .map(|&(x, y)| (maps[f.ordinal()][x - 1], maps[g.ordinal()][y - 1]))
                .collect();
        }
        out
    }

    /// The lines of direction `h` only; `d` is kept.
    pub fn direction_slice(&self, h: Direction) -> VarietyOfLines {
        let mut out = VarietyOfLines::empty(self.d);
        out.sets[h.slot()] = self.sets[h.slot()].clone();
        out
    }

    /// Lines of the variety not contained in `h`, indices compacted.
    pub fn remove_hyperplane(&self, h: HyperplaneId) -> Result<VarietyOfLines, VarietyError> {
        if h.index == 0 || h.index > self.family_size(h.family) || self.lines_in(h) == 0 {
            return Err(VarietyError::UnknownHyperplane(h));
        }
        let mut out = self.clone();
        for dir in Direction::ALL {
            let (f, g) = dir.families();
            out.sets[dir.slot()].retain(|&(x, y)| {
                !((f == h.family && x == h.index) || (g == h.family && y == h.index))
            });
        }
        Ok(out.compact())
    }

    pub fn relabel(&self, perms: &Relabeling) -> Result<VarietyOfLines, VarietyError> {
        perms.check(self.d)?;
        let mut out = VarietyOfLines::empty(self.d);
        for dir in Direction::ALL {
            let (f, g) = dir.families();
            out.sets[dir.slot()] = self.sets[dir.slot()]
                .iter()
                .map(|&(x, y)| {
                    (
                        perms.maps[f.ordinal()][x - 1],
                        perms.maps[g.ordinal()][y - 1],
                    )
                })
                .collect();
        }
        Ok(out)
    }

    /// Union of lines; `d` is the componentwise maximum.
    pub fn union(&self, other: &VarietyOfLines) -> VarietyOfLines {
        let mut out = VarietyOfLines::empty([0, 1, 2].map(|i| self.d[i].max(other.d[i])));
        for s in 0..3 {
            out.sets[s] = self.sets[s].union(&other.sets[s]).copied().collect();
        }
        out
    }

    pub fn to_raw(&self) -> RawVariety {
        let pairs = |h: Direction| self.sets[h.slot()].iter().map(|&(x, y)| [x, y]).collect();
        RawVariety {
            d: self.d,
            u3: pairs(Direction::Three),
            u2: pairs(Direction::Two),
            u1: pairs(Direction::One),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("plain data serializes")
    }

    /// Text grid of the lines of direction `h`: rows are the first family of
    /// the index set top to bottom, columns the second, `●` marks a line.
    pub fn render(&self, h: Direction) -> String {
        let (rf, cf) = h.families();
        let rows = self.family_size(rf);
        let cols = self.family_size(cf);
        let row_labels: Vec<String> = (1..=rows)
            .map(|i| HyperplaneId::new(rf, i).to_string())
            .collect();
        let col_labels: Vec<String> = (1..=cols)
            .map(|j| HyperplaneId::new(cf, j).to_string())
            .collect();
        let rw = row_labels.iter().map(|s| s.len()).max().unwrap_or(0);
        let cw = col_labels.iter().map(|s| s.len()).max().unwrap_or(1);

        let mut out = String::new();
        out.push_str(&" ".repeat(rw));
        for l in &col_labels {
            out.push_str(&format!(" {l:>cw$}"));
        }
        out.push('\n');
        let set = self.index_set(h);
        for (i, rl) in row_labels.iter().enumerate() {
            out.push_str(&format!("{rl:<rw$}"));
            for j in 1..=cols {
                let mark = if set.contains(&(i + 1, j)) {
                    '●'
                } else {
                    '·'
                };
                out.push_str(&format!(" {mark:>cw$}"));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for VarietyOfLines {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.lines().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", lines.join(", "))
    }
}

/// Reads back the marker positions of a grid produced by [`VarietyOfLines::render`].
pub fn parse_rendered(text: &str) -> Result<BTreeSet<(usize, usize)>, VarietyError> {
    let mut out = BTreeSet::new();
    for line in text.lines().skip(1) {
        let mut tokens = line.split_whitespace();
        let Some(label) = tokens.next() else { continue };
        let row = HyperplaneId::parse(label)
            .ok_or_else(|| VarietyError::Render(format!("bad row label {label:?}")))?
            .index;
        for (j, tok) in tokens.enumerate() {
            match tok {
                "●" => {
                    out.insert((row, j + 1));
                }
                "·" => {}
                other => return Err(VarietyError::Render(format!("unexpected marker {other:?}"))),
            }
        }
    }
    Ok(out)
}

/// The grid of lines X_Y: every line through some point of `points`.
/// `d` is the largest index used in each coordinate.
pub fn grid_from_points(points: &[PointTriple]) -> Result<VarietyOfLines, VarietyError> {
    if points.is_empty() {
        return Err(VarietyError::EmptyPointSet);
    }
    let mut d = [0; 3];
    for p in points {
        if p.i == 0 || p.j == 0 || p.k == 0 {
            return Err(VarietyError::InvalidPoint(p.i, p.j, p.k));
        }
        d = [d[0].max(p.i), d[1].max(p.j), d[2].max(p.k)];
    }
    let mut x = VarietyOfLines::empty(d);
    for p in points {
        x.sets[Direction::Three.slot()].insert((p.i, p.j));
        x.sets[Direction::Two.slot()].insert((p.i, p.k));
        x.sets[Direction::One.slot()].insert((p.j, p.k));
    }
    Ok(x)
}

/// Checks bounds, duplicates and (in strict mode) unused hyperplane indices.
pub fn validate(raw: &RawVariety, strictness: Strictness) -> Result<Validated, VarietyError> {
    let mut errors = Vec::new();
    let mut x = VarietyOfLines::empty(raw.d);
    for (dir, pairs) in [
        (Direction::Three, &raw.u3),
        (Direction::Two, &raw.u2),
        (Direction::One, &raw.u1),
    ] {
        let (f, g) = dir.families();
        let (nf, ng) = (raw.d[f.ordinal()], raw.d[g.ordinal()]);
        for &[p, q] in pairs {
            let pair = (p, q);
            if p == 0 || q == 0 || p > nf || q > ng {
                errors.push(Violation::OutOfBounds {
                    direction: dir,
                    pair,
                });
            } else if !x.sets[dir.slot()].insert(pair) {
                errors.push(Violation::DuplicateLine {
                    direction: dir,
                    pair,
                });
            }
        }
    }
    if !errors.is_empty() {
        return Err(VarietyError::Invalid(errors));
    }
    let unused: Vec<Violation> = x
        .unused_hyperplanes()
        .into_iter()
        .map(Violation::UnusedHyperplane)
        .collect();
    match strictness {
        Strictness::Strict if !unused.is_empty() => Err(VarietyError::Invalid(unused)),
        _ => Ok(Validated {
            variety: x,
            warnings: unused,
        }),
    }
}
