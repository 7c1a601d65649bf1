//! Arithmetically Cohen–Macaulay varieties of lines in P¹×P¹×P¹.
//!
//! The crate decides ACM-ness of a union of lines by three independent
//! combinatorial routes (chordality of a graph complement, hyperplane cycle
//! enumeration, and multiplicity patterns), computes generators and Hilbert
//! functions of Ferrers varieties, and ships brute-force oracles used to
//! cross-check all of it.

pub mod criteria;
pub mod degrees;
pub mod error;
pub mod experiment;
pub mod ferrers;
pub mod graph;
pub mod hilbert;
pub mod linalg;
pub mod oracle;
pub mod variety;

pub use criteria::{is_acm, AcmVerdict, MultiplicityTensor};
pub use degrees::{DegreeSet, DegreeTriple, GeneratorSet, GridResolution};
pub use error::{
    CriteriaError, ExperimentError, FerrersError, OracleError, VarietyError, Violation,
};
pub use graph::{CycleWitness, IncidenceGraph};
pub use hilbert::HilbertTable;
pub use variety::{
    Direction, Family, HyperplaneId, Line, PointTriple, Relabeling, Strictness, VarietyOfLines,
};
