//! Brute-force verifiers, independent of the combinatorial criteria.

pub mod hilbert;
pub mod reisner;

pub use hilbert::{generator_degree_scan, hilbert_oracle, hilbert_oracle_monomial, GeneratorScan};
pub use reisner::{reisner_cm, stanley_reisner_complex, SimplicialComplex};
