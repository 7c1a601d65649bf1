//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use acm_lines::criteria::{
    criterion_hyp4_numeric, criterion_hyp5_numeric, criterion_hyp6_numeric, hyp_star_unchecked,
    multiplicity_tensor,
};
use acm_lines::degrees::{
    degree_sets, detect_complete_intersection, grid_resolution, minimal_generators,
};
use acm_lines::experiment::{run_experiment, run_fixed, ExperimentConfig};
use acm_lines::ferrers::{ferrers_companion, resembles_ferrers};
use acm_lines::graph::{build_graph, complement, is_chordal};
use acm_lines::hilbert::hilbert_function;
use acm_lines::oracle::{
    generator_degree_scan, hilbert_oracle, reisner_cm, stanley_reisner_complex,
};
use acm_lines::variety::{box_points, grid_from_points};
use acm_lines::{is_acm, DegreeTriple, Direction, VarietyOfLines};
use common::{all_varieties, fixture, random_ferrers, random_relabeling, random_variety};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn t(a: usize, b: usize, c: usize) -> DegreeTriple {
    DegreeTriple::new(a, b, c)
}

fn acm(x: &VarietyOfLines) -> Result<bool, String> {
    is_acm(x).map(|v| v.is_acm).map_err(|e| e.to_string())
}

fn golden_examples() -> Check {
    // fifteen lines: U3 is a shuffled (5,4,3,1) diagram, U1 a diagonal
    let x = fixture("fifteen_lines.json");
    let s3 = resembles_ferrers(&x, Direction::Three);
    ensure(s3.resembles && s3.partition == [5, 4, 3, 1], || {
        format!("U3 shape {s3:?}")
    })?;
    ensure(!resembles_ferrers(&x, Direction::One).resembles, || {
        "U1 resembles Ferrers".into()
    })?;
    ensure(!acm(&x)?, || "fifteen lines reported ACM".into())?;

    // three lines: claimed to have every slice Ferrers, yet not ACM. U3 is
    // {(1,1),(2,2)}, the same shape as U1 above, so the slice claim is checked
    // last and reported rather than allowed to hide the other checks.
    let x = fixture("three_lines_not_acm.json");
    let non_ferrers: Vec<String> = Direction::ALL
        .into_iter()
        .filter(|&h| !resembles_ferrers(&x, h).resembles)
        .map(|h| format!("U{h} = {:?}", x.index_set(h)))
        .collect();
    let v = is_acm(&x).map_err(|e| e.to_string())?;
    ensure(!v.is_acm, || "three lines reported ACM".into())?;
    let cycle = v.cycle.ok_or("no cycle witness")?;
    let comp = complement(&build_graph(&x));
    ensure(cycle.len() >= 4 && cycle.verify(&comp), || {
        format!("bad witness {cycle}")
    })?;

    // multiplicity example
    let x = fixture("nine_lines_multiplicity.json");
    let m = multiplicity_tensor(&x);
    let mut threes = Vec::new();
    let mut twos = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            for k in 1..=2 {
                match m.mu(i, j, k) {
                    3 => threes.push((i, j, k)),
                    2 => twos.push((i, j, k)),
                    _ => {}
                }
            }
        }
    }
    ensure(threes == [(1, 1, 1), (2, 2, 2)], || {
        format!("μ = 3 at {threes:?}")
    })?;
    let expected_twos = [
        (1, 1, 2),
        (1, 2, 1),
        (1, 2, 2),
        (2, 1, 1),
        (2, 1, 2),
        (2, 2, 1),
    ];
    ensure(twos == expected_twos, || format!("μ = 2 at {twos:?}"))?;
    for (h, expected) in [
        (Direction::Three, vec![vec![1, 1], vec![0, 1]]),
        (Direction::Two, vec![vec![1, 0], vec![1, 1]]),
        (Direction::One, vec![vec![1, 1], vec![0, 1]]),
    ] {
        ensure(m.matrix(h) == expected, || {
            format!("M^({h}) = {:?}", m.matrix(h))
        })?;
    }
    ensure(!criterion_hyp6_numeric(&m).holds, || {
        "numeric Hyp6 passes".into()
    })?;
    ensure(!acm(&x)?, || "nine lines reported ACM".into())?;

    // W = X ∪ L(A2,B1)
    let w = fixture("ten_lines_w.json");
    ensure(
        w == x.union(&VarietyOfLines::new([2, 2, 2], [(2, 1)], [], []).unwrap()),
        || "W fixture is not X ∪ L(A2,B1)".into(),
    )?;
    let v = is_acm(&w).map_err(|e| e.to_string())?;
    let r = &v.routes;
    ensure(
        v.is_acm && r.chordal && r.hyp == [true; 3] && r.numeric == [true; 3],
        || format!("W routes {r:?}"),
    )?;
    ensure(non_ferrers.is_empty(), || {
        format!(
            "other checks hold, but three-line example has non-Ferrers slice {} (identical in shape to U1 of the fifteen-line example)",
            non_ferrers.join(", ")
        )
    })?;
    Ok("four examples exact".into())
}

fn ferrers_example() -> Check {
    let x = fixture("ferrers_box_432.json");
    let sets = degree_sets(&x).map_err(|e| e.to_string())?;
    let dhat: BTreeSet<_> = sets.dhat.elements.iter().copied().collect();
    let expected: BTreeSet<_> = [t(4, 3, 0), t(4, 0, 2), t(0, 3, 2)].into();
    ensure(dhat == expected, || format!("D̂ = {dhat:?}"))?;
    let gens = minimal_generators(&x).map_err(|e| e.to_string())?;
    let products: BTreeSet<String> = gens.products().into_iter().collect();
    let expected: BTreeSet<String> = [
        "A1*A2*A3*A4*B1*B2*B3",
        "A1*A2*A3*A4*C1*C2",
        "B1*B2*B3*C1*C2",
    ]
    .map(String::from)
    .into();
    ensure(products == expected, || format!("generators {products:?}"))?;
    let table = hilbert_function(&x, t(6, 6, 6)).map_err(|e| e.to_string())?;
    for (i, j, k) in table.degrees() {
        let vanishes = (i >= 4 && j >= 3) || (i >= 4 && k >= 2) || (j >= 3 && k >= 2);
        ensure(table.delta(i, j, k) == i64::from(!vanishes), || {
            format!("ΔH({i},{j},{k})")
        })?;
    }
    Ok("D̂, generators and ΔH exact".into())
}

fn complete_intersection() -> Check {
    let x = fixture("ci_lines_432.json");
    let ci = detect_complete_intersection(&x);
    ensure(ci == Some((t(0, 3, 0), t(4, 0, 2))), || {
        format!("CI degrees {ci:?}")
    })?;
    let res = grid_resolution(2, 3, 2);
    ensure(
        res.generator_degrees == [t(2, 3, 0), t(2, 0, 2), t(0, 3, 2)],
        || "generator twists".into(),
    )?;
    ensure(
        res.syzygy_degree == t(2, 3, 2) && res.ranks() == [2, 3, 1],
        || "syzygy twist".into(),
    )?;
    let text = res.to_string();
    ensure(
        text == "0 → R^2(-2,-3,-2) → R(-2,-3,0) ⊕ R(-2,0,-2) ⊕ R(0,-3,-2) → I → 0",
        || text.clone(),
    )?;
    let g = grid_from_points(&box_points(2, 3, 2)).map_err(|e| e.to_string())?;
    let counts = [Direction::Three, Direction::Two, Direction::One].map(|h| g.index_set(h).len());
    ensure(counts == [6, 4, 6], || format!("line counts {counts:?}"))?;
    Ok("CI degrees, resolution twists, grid counts exact".into())
}

/// Runs the three routes independently and returns the shared verdict.
fn three_routes(x: &VarietyOfLines) -> Result<bool, String> {
    let chordal = is_chordal(&complement(&build_graph(x))).chordal;
    let hyp = [4, 5, 6].map(|n| hyp_star_unchecked(x, n).holds);
    let m = multiplicity_tensor(x);
    let numeric = [
        criterion_hyp4_numeric(&m).holds,
        criterion_hyp5_numeric(&m).holds,
        criterion_hyp6_numeric(&m).holds,
    ];
    let hyp_all = hyp.iter().all(|&b| b);
    if hyp != numeric || hyp_all != chordal {
        return Err(format!(
            "{x}: chordal {chordal}, hyp {hyp:?}, numeric {numeric:?}"
        ));
    }
    let v = acm(x)?;
    ensure(v == chordal, || {
        format!("{x}: is_acm {v} vs routes {chordal}")
    })?;
    Ok(chordal)
}

fn exhaustive_routes(acm_found: &mut Vec<VarietyOfLines>) -> Check {
    let all = all_varieties([2, 2, 2]);
    let mut disagreements = Vec::new();
    let mut n_acm = 0;
    for x in &all {
        let x = x.compact();
        match three_routes(&x) {
            Ok(true) => {
                n_acm += 1;
                acm_found.push(x);
            }
            Ok(false) => {}
            Err(e) => disagreements.push(e),
        }
    }
    ensure(disagreements.is_empty(), || {
        format!(
            "{} disagreements, first: {}",
            disagreements.len(),
            disagreements[0]
        )
    })?;
    Ok(format!(
        "{} varieties, {n_acm} ACM, 0 disagreements",
        all.len()
    ))
}

fn reisner_agreement(acm_found: &mut Vec<VarietyOfLines>) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tested = 0;
    let mut n_acm = 0;
    while tested < 120 {
        let x = random_variety(&mut rng, [3, 3, 3], 0.4);
        if x.is_empty() {
            continue;
        }
        tested += 1;
        let cm = reisner_cm(&stanley_reisner_complex(&x).map_err(|e| e.to_string())?);
        let a = acm(&x)?;
        ensure(cm == a, || format!("{x}: reisner {cm}, is_acm {a}"))?;
        if a {
            n_acm += 1;
            acm_found.push(x);
        }
    }
    Ok(format!("{tested} random varieties agree ({n_acm} ACM)"))
}

fn hilbert_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let bound = t(6, 6, 6);
    for n in 0..50 {
        let x = random_ferrers(&mut rng, [4, 4, 4]);
        let x = x.relabel(&random_relabeling(&mut rng, x.d())).unwrap();
        let closed = hilbert_function(&x, bound).map_err(|e| format!("{x}: {e}"))?;
        let oracle = hilbert_oracle(&x, bound);
        ensure(closed == oracle, || {
            format!(
                "variety {n} {x}: first difference at {:?}",
                closed.first_difference(&oracle)
            )
        })?;
    }
    for (a, b, c) in [(1, 1, 1), (2, 3, 2), (4, 3, 2), (3, 3, 3)] {
        let grid = grid_from_points(&box_points(a, b, c)).unwrap();
        let res = grid_resolution(a, b, c);
        let oracle = hilbert_oracle(&grid, bound);
        for (i, j, k) in oracle.degrees() {
            ensure(oracle.h(i, j, k) == res.hilbert(i, j, k), || {
                format!("grid ({a},{b},{c}) at ({i},{j},{k})")
            })?;
        }
    }
    Ok("50 Ferrers varieties and 4 full grids agree on box (6,6,6)".into())
}

fn hereditary(acm_found: &[VarietyOfLines]) -> Check {
    let mut removals = 0;
    for x in acm_found {
        for h in x.hyperplanes() {
            let y = x.remove_hyperplane(h).map_err(|e| e.to_string())?;
            removals += 1;
            if !y.is_empty() {
                ensure(acm(&y)?, || format!("{x} minus {h} is not ACM"))?;
            }
        }
    }
    Ok(format!(
        "{} ACM varieties, {removals} removals, 0 violations",
        acm_found.len()
    ))
}

fn generator_scan() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 0..25 {
        let x = random_ferrers(&mut rng, [3, 3, 3]);
        let x = x.relabel(&random_relabeling(&mut rng, x.d())).unwrap();
        let scan = generator_degree_scan(&x, t(6, 6, 6));
        let dhat: Vec<DegreeTriple> = degree_sets(&x)
            .map_err(|e| e.to_string())?
            .dhat
            .elements
            .into_iter()
            .collect();
        let mut found = scan.degrees.clone();
        found.sort();
        ensure(!scan.box_too_small, || {
            format!("variety {n}: box too small")
        })?;
        ensure(found == dhat && scan.counts.iter().all(|&c| c == 1), || {
            format!(
                "variety {n} {x}: scan {:?} x {:?}, D̂ {dhat:?}",
                scan.degrees, scan.counts
            )
        })?;
    }
    Ok("25 Ferrers varieties: scan equals D̂".into())
}

fn hf_experiment() -> Check {
    let x = fixture("three_lines_companion.json");
    let companion = ferrers_companion(&x).map_err(|e| e.to_string())?;
    let expected = VarietyOfLines::new([1, 1, 1], [(1, 1)], [(1, 1)], [(1, 1)]).unwrap();
    ensure(companion == expected, || format!("companion {companion}"))?;
    let fixed = run_fixed(&x, t(4, 4, 4)).map_err(|e| e.to_string())?;
    ensure(fixed.successes == 1 && fixed.failures == 0, || {
        format!("{fixed:?}")
    })?;
    let report = run_experiment(&ExperimentConfig::default()).map_err(|e| e.to_string())?;
    ensure(report.trials == 500, || format!("{} trials", report.trials))?;
    ensure(
        report.successes + report.failures == report.companions,
        || "report totals".into(),
    )?;
    for c in &report.counterexamples {
        println!(
            "    possible counterexample (trial {}): H_X{} = {}, H_X'{} = {}",
            c.trial, c.degree, c.h_variety, c.degree, c.h_companion
        );
    }
    Ok(format!(
        "three-line companion pair equal; 500 trials, {} ACM, {} equal, {} counterexample candidates",
        report.acm_found, report.successes, report.failures
    ))
}

fn run(n: usize, name: &str, limit: Duration, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let (ok, detail) = match result {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; took longer than {limit:?}")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {n} {}: {name} ({:.2?}) {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed
    );
    ok
}

fn main() {
    let secs = Duration::from_secs;
    let mut acm_found = Vec::new();
    let results = [
        run(1, "golden examples", secs(1), golden_examples),
        run(2, "Ferrers example", secs(1), ferrers_example),
        run(3, "complete intersection", secs(1), complete_intersection),
        run(4, "three-route consistency", secs(120), || {
            exhaustive_routes(&mut acm_found)
        }),
        run(5, "Reisner oracle", secs(300), || {
            reisner_agreement(&mut acm_found)
        }),
        run(6, "Hilbert agreement", secs(600), hilbert_agreement),
        run(7, "hereditary ACM", secs(120), || hereditary(&acm_found)),
        run(8, "generator scan", secs(600), generator_scan),
        run(9, "Hilbert function experiment", secs(600), hf_experiment),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!(
        "acceptance: {} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
