//! Randomised search comparing the Hilbert function of an ACM variety with
//! that of its Ferrers companion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::is_acm;
use crate::degrees::DegreeTriple;
use crate::error::{ExperimentError, FerrersError};
use crate::ferrers::ferrers_companion;
use crate::hilbert::hilbert_function;
use crate::oracle::hilbert_oracle;
use crate::variety::{RawVariety, VarietyOfLines};

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub trials: usize,
    /// Each d_f is drawn uniformly from 1..=dmax.
    pub dmax: usize,
    pub bound: DegreeTriple,
    pub seed: u64,
    /// Probability that a candidate line is included.
    pub p: f64,
    /// Samples drawn per trial before giving up on finding an ACM variety.
    pub max_attempts: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            trials: 500,
            dmax: 3,
            bound: DegreeTriple::new(4, 4, 4),
            seed: 42,
            p: 0.4,
            max_attempts: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub variety: RawVariety,
    pub companion: RawVariety,
    pub degree: DegreeTriple,
    pub h_variety: i64,
    pub h_companion: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub trials: usize,
    pub acm_found: usize,
    pub companions: usize,
    pub successes: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum TrialOutcome {
    NoAcm,
    Equal,
    Differs(Box<Counterexample>),
}

/// A random variety: d drawn per family, each line kept with probability p,
/// then compacted.
pub fn random_variety<R: Rng>(rng: &mut R, dmax: usize, p: f64) -> VarietyOfLines {
    let d = [0; 3].map(|_| rng.gen_range(1..=dmax));
    let mut pick = |rows: usize, cols: usize| {
        let mut out = Vec::new();
        for r in 1..=rows {
            for c in 1..=cols {
                if rng.gen_bool(p) {
                    out.push((r, c));
                }
            }
        }
        out
    };
    let u3 = pick(d[0], d[1]);
    let u2 = pick(d[0], d[2]);
    let u1 = pick(d[1], d[2]);
    VarietyOfLines::new(d, u3, u2, u1)
        .expect("sampled pairs are in range")
        .compact()
}

/// Compares H_X (oracle) with H_X' (closed form on the companion).
pub fn compare_with_companion(
    x: &VarietyOfLines,
    bound: DegreeTriple,
    trial: usize,
) -> Result<Option<Counterexample>, FerrersError> {
    let companion = ferrers_companion(x)?;
    let hx = hilbert_oracle(x, bound);
    let hy = hilbert_function(&companion, bound).expect("companions are Ferrers");
    Ok(hx.first_difference(&hy).map(|(i, j, k)| Counterexample {
        trial,
        variety: x.to_raw(),
        companion: companion.to_raw(),
        degree: DegreeTriple::new(i, j, k),
        h_variety: hx.h(i, j, k),
        h_companion: hy.h(i, j, k),
    }))
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<TrialOutcome, ExperimentError> {
    let mut rng = trial_rng(cfg.seed, trial);
    for _ in 0..cfg.max_attempts {
        let x = random_variety(&mut rng, cfg.dmax, cfg.p);
        if x.is_empty() || !is_acm(&x)?.is_acm {
            continue;
        }
        return Ok(match compare_with_companion(&x, cfg.bound, trial)? {
            None => TrialOutcome::Equal,
            Some(c) => TrialOutcome::Differs(Box::new(c)),
        });
    }
    Ok(TrialOutcome::NoAcm)
}

fn merge(outcomes: Vec<TrialOutcome>) -> ExperimentReport {
    let mut report = ExperimentReport {
        trials: outcomes.len(),
        ..Default::default()
    };
    for o in outcomes {
        match o {
            TrialOutcome::NoAcm => {}
            TrialOutcome::Equal => {
                report.acm_found += 1;
                report.companions += 1;
                report.successes += 1;
            }
            TrialOutcome::Differs(c) => {
                report.acm_found += 1;
                report.companions += 1;
                report.failures += 1;
                report.counterexamples.push(*c);
            }
        }
    }
    report
}

/// Runs the seeded trials in parallel; the report depends only on `cfg`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    let outcomes: Result<Vec<_>, _> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect();
    Ok(merge(outcomes?))
}

/// A single trial on a given variety instead of a random one.
pub fn run_fixed(
    x: &VarietyOfLines,
    bound: DegreeTriple,
) -> Result<ExperimentReport, ExperimentError> {
    let outcome = if !x.is_empty() && is_acm(x)?.is_acm {
        match compare_with_companion(x, bound, 0)? {
            None => TrialOutcome::Equal,
            Some(c) => TrialOutcome::Differs(Box::new(c)),
        }
    } else {
        TrialOutcome::NoAcm
    };
    Ok(merge(vec![outcome]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials() {
        let cfg = ExperimentConfig {
            trials: 0,
            ..Default::default()
        };
        assert_eq!(run_experiment(&cfg).unwrap(), ExperimentReport::default());
    }

    #[test]
    fn deterministic_under_seed() {
        let cfg = ExperimentConfig {
            trials: 8,
            bound: DegreeTriple::new(2, 2, 2),
            ..Default::default()
        };
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.successes + a.failures, a.companions);
        let mut r1 = trial_rng(7, 3);
        let mut r2 = trial_rng(7, 3);
        assert_eq!(
            random_variety(&mut r1, 3, 0.4),
            random_variety(&mut r2, 3, 0.4)
        );
    }
}
