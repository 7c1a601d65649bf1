//! Trigraded Hilbert functions on a box of degrees.

use serde_json::{json, Value};

use crate::degrees::{degree_sets, DegreeTriple};
use crate::error::FerrersError;
use crate::variety::VarietyOfLines;

/// H and its first difference ΔH on the degrees 0..=box in each coordinate,
/// stored row-major with k fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    bound: [usize; 3],
    h: Vec<i64>,
    delta: Vec<i64>,
}

impl HilbertTable {
    fn index(bound: [usize; 3], i: usize, j: usize, k: usize) -> usize {
        (i * (bound[1] + 1) + j) * (bound[2] + 1) + k
    }

    fn cells(bound: [usize; 3]) -> usize {
        bound.iter().map(|b| b + 1).product()
    }

    /// Builds the table from H; ΔH is the alternating sum over the unit cube.
    pub fn from_h(bound: [usize; 3], h: Vec<i64>) -> Self {
        assert_eq!(h.len(), Self::cells(bound));
        let get = |i: i64, j: i64, k: i64| {
            if i < 0 || j < 0 || k < 0 {
                0
            } else {
                h[Self::index(bound, i as usize, j as usize, k as usize)]
            }
        };
        let mut delta = vec![0; h.len()];
        for (i, j, k) in degrees(bound) {
            let (i, j, k) = (i as i64, j as i64, k as i64);
            let mut s = 0;
            for l in 0..2 {
                for m in 0..2 {
                    for n in 0..2 {
                        let sign = if (l + m + n) % 2 == 0 { 1 } else { -1 };
                        s += sign * get(i - l, j - m, k - n);
                    }
                }
            }
            delta[Self::index(bound, i as usize, j as usize, k as usize)] = s;
        }
        HilbertTable { bound, h, delta }
    }

    /// Builds the table from ΔH by cumulative summation in each coordinate.
    pub fn from_delta(bound: [usize; 3], delta: Vec<i64>) -> Self {
        assert_eq!(delta.len(), Self::cells(bound));
        let mut h = delta.clone();
        for (i, j, k) in degrees(bound) {
            let idx = Self::index(bound, i, j, k);
            if k > 0 {
                h[idx] += h[Self::index(bound, i, j, k - 1)];
            }
        }
        for (i, j, k) in degrees(bound) {
            if j > 0 {
                let prev = h[Self::index(bound, i, j - 1, k)];
                h[Self::index(bound, i, j, k)] += prev;
            }
        }
        for (i, j, k) in degrees(bound) {
            if i > 0 {
                let prev = h[Self::index(bound, i - 1, j, k)];
                h[Self::index(bound, i, j, k)] += prev;
            }
        }
        HilbertTable { bound, h, delta }
    }

    pub fn bound(&self) -> [usize; 3] {
        self.bound
    }

    pub fn h(&self, i: usize, j: usize, k: usize) -> i64 {
        self.h[Self::index(self.bound, i, j, k)]
    }

    pub fn delta(&self, i: usize, j: usize, k: usize) -> i64 {
        self.delta[Self::index(self.bound, i, j, k)]
    }

    pub fn degrees(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        degrees(self.bound)
    }

    /// First degree (in row-major order) where the two tables differ.
    pub fn first_difference(&self, other: &HilbertTable) -> Option<(usize, usize, usize)> {
        assert_eq!(self.bound, other.bound);
        self.degrees()
            .find(|&(i, j, k)| self.h(i, j, k) != other.h(i, j, k))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,k,deltaH,H\n");
        for (i, j, k) in self.degrees() {
            out.push_str(&format!(
                "{i},{j},{k},{},{}\n",
                self.delta(i, j, k),
                self.h(i, j, k)
            ));
        }
        out
    }

    fn nested(&self, v: &[i64]) -> Value {
        let [a, b, c] = self.bound;
        Value::Array(
            (0..=a)
                .map(|i| {
                    Value::Array(
                        (0..=b)
                            .map(|j| {
                                json!((0..=c)
                                    .map(|k| v[Self::index(self.bound, i, j, k)])
                                    .collect::<Vec<_>>())
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// `{"box":[i,j,k],"H":[[[..]]],"deltaH":[[[..]]]}` indexed `[i][j][k]`.
    pub fn to_json(&self) -> Value {
        json!({
            "box": self.bound,
            "H": self.nested(&self.h),
            "deltaH": self.nested(&self.delta),
        })
    }
}

/// All degrees of the box in row-major order.
pub fn degrees(bound: [usize; 3]) -> impl Iterator<Item = (usize, usize, usize)> {
    let [a, b, c] = bound;
    (0..=a).flat_map(move |i| (0..=b).flat_map(move |j| (0..=c).map(move |k| (i, j, k))))
}

/// ΔH of a Ferrers variety: 0 on the upward closure of the generator
/// degrees, 1 elsewhere.
pub fn delta_hilbert(x: &VarietyOfLines, bound: DegreeTriple) -> Result<Vec<i64>, FerrersError> {
    let dhat = degree_sets(x)?.dhat;
    Ok(degrees(bound.0)
        .map(|(i, j, k)| i64::from(!dhat.dominated_by(&DegreeTriple::new(i, j, k))))
        .collect())
}

pub fn hilbert_function(
    x: &VarietyOfLines,
    bound: DegreeTriple,
) -> Result<HilbertTable, FerrersError> {
    Ok(HilbertTable::from_delta(bound.0, delta_hilbert(x, bound)?))
}
