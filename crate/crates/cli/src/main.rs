use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acm_lines::degrees::{detect_complete_intersection, grid_resolution, minimal_generators};
use acm_lines::experiment::{run_experiment, run_fixed, ExperimentConfig, ExperimentReport};
use acm_lines::ferrers::{ferrers_companion, is_ferrers_variety, resembles_ferrers};
use acm_lines::graph::{build_graph, complement};
use acm_lines::hilbert::hilbert_function;
use acm_lines::oracle::{
    generator_degree_scan, hilbert_oracle, reisner_cm, stanley_reisner_complex,
};
use acm_lines::variety::{grid_from_points, RawPointSet};
use acm_lines::{
    is_acm, CriteriaError, DegreeTriple, Direction, FerrersError, GeneratorSet, Strictness,
    VarietyOfLines,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const ACM: u8 = 0;
const NOT_ACM: u8 = 1;
const INPUT_ERROR: u8 = 2;
const DISAGREEMENT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "acm-lines",
    version,
    about = "ACM varieties of lines in P1 x P1 x P1"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a variety of lines is ACM.
    Check {
        file: PathBuf,
        /// Also run the Stanley-Reisner homology check.
        #[arg(long)]
        oracle: bool,
        /// Print the obstruction when the variety is not ACM.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
        /// Write the incidence graph and its complement in DOT format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Ferrers shape of each index set and of the whole variety.
    Ferrers {
        file: PathBuf,
        /// Print the Ferrers companion (ACM input only).
        #[arg(long)]
        companion: bool,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert function table as CSV (or JSON).
    Hilbert {
        file: PathBuf,
        #[arg(long = "box", num_args = 3, value_names = ["I", "J", "K"], default_values_t = [6, 6, 6])]
        bound: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Method::Corollary)]
        method: Method,
        #[arg(long)]
        json: bool,
    },
    /// Minimal generators of a Ferrers variety.
    Gens {
        file: PathBuf,
        /// Detect generator degrees by linear algebra instead.
        #[arg(long)]
        oracle: bool,
        #[arg(long = "box", num_args = 3, value_names = ["I", "J", "K"], default_values_t = [6, 6, 6])]
        bound: Vec<usize>,
    },
    /// Grid of lines through a point set; prints variety JSON.
    Grid { points: PathBuf },
    /// Complete intersection test, or the resolution of a full grid with --grid.
    Ci {
        #[arg(required_unless_present = "grid")]
        file: Option<PathBuf>,
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"], conflicts_with = "file")]
        grid: Option<Vec<usize>>,
    },
    /// Draw index sets as marker grids.
    Render {
        file: PathBuf,
        /// 1, 2 or 3; all directions when omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        direction: Option<u8>,
    },
    /// Compare H_X with the Hilbert function of the Ferrers companion on random ACM varieties.
    HfExperiment {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        #[arg(long = "box", num_args = 3, value_names = ["I", "J", "K"], default_values_t = [4, 4, 4])]
        bound: Vec<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        /// Directory for the report and counterexample files.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run a single trial on this variety instead of random ones.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Corollary,
    Oracle,
}

/// Error carrying the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: INPUT_ERROR,
            message: message.to_string(),
        }
    }
}

impl From<CriteriaError> for Failure {
    fn from(e: CriteriaError) -> Self {
        let code = match e {
            CriteriaError::Disagreement(_) => DISAGREEMENT,
            CriteriaError::BadN(_) => INPUT_ERROR,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<FerrersError> for Failure {
    fn from(e: FerrersError) -> Self {
        let code = match e {
            FerrersError::Inconsistent(_) => DISAGREEMENT,
            _ => INPUT_ERROR,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            file,
            oracle,
            witness,
            json,
            dot,
        } => check(&file, oracle, witness, json, dot.as_deref()),
        Command::Ferrers {
            file,
            companion,
            json,
        } => ferrers(&file, companion, json),
        Command::Hilbert {
            file,
            bound,
            method,
            json,
        } => hilbert(&file, triple(&bound), method, json),
        Command::Gens {
            file,
            oracle,
            bound,
        } => gens(&file, oracle, triple(&bound)),
        Command::Grid { points } => grid(&points),
        Command::Ci { file, grid } => ci(file.as_deref(), grid),
        Command::Render { file, direction } => render(&file, direction),
        Command::HfExperiment {
            trials,
            dmax,
            bound,
            seed,
            p,
            out,
            input,
        } => {
            let cfg = ExperimentConfig {
                trials,
                dmax,
                bound: triple(&bound),
                seed,
                p,
                ..Default::default()
            };
            hf_experiment(&cfg, out.as_deref(), input.as_deref())
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn triple(v: &[usize]) -> DegreeTriple {
    DegreeTriple::new(v[0], v[1], v[2])
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Lenient load: unused hyperplanes are reported and then compacted away.
fn load(path: &Path) -> Result<VarietyOfLines, Failure> {
    let v = VarietyOfLines::from_json(&read(path)?, Strictness::Lenient).map_err(Failure::input)?;
    for w in &v.warnings {
        eprintln!("warning: {w}; relabelling without it");
    }
    Ok(if v.warnings.is_empty() {
        v.variety
    } else {
        v.variety.compact()
    })
}

fn check(path: &Path, oracle: bool, witness: bool, json: bool, dot: Option<&Path>) -> Outcome {
    let x = load(path)?;
    if let Some(dot) = dot {
        let g = build_graph(&x);
        let text = format!(
            "{}{}",
            g.to_dot("incidence"),
            complement(&g).to_dot("complement")
        );
        fs::write(dot, text).map_err(|e| Failure::input(format!("{}: {e}", dot.display())))?;
    }
    let verdict = is_acm(&x)?;
    let reisner = if oracle {
        match stanley_reisner_complex(&x) {
            Ok(c) => Some(reisner_cm(&c)),
            Err(e) => {
                eprintln!("oracle skipped: {e}");
                None
            }
        }
    } else {
        None
    };
    if json {
        let mut v = verdict.to_json();
        if oracle {
            v["oracle"] = serde_json::json!(reisner);
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&v).expect("verdict serialises")
        );
    } else {
        println!("{}", if verdict.is_acm { "ACM" } else { "not ACM" });
        if let Some(n) = verdict.failing_n {
            println!("fails Hyp_{n}(*)");
        }
        if witness && !verdict.is_acm {
            if let Some(c) = &verdict.cycle {
                println!("chordless cycle in the complement: {c}");
            }
            if let Some(t) = &verdict.hyp_witness {
                let labels: Vec<String> = t.iter().map(|h| h.to_string()).collect();
                println!("hyperplane tuple: ({})", labels.join(", "));
            }
            if let Some(p) = &verdict.pattern {
                println!("pattern: {p}");
            }
        }
        if let Some(r) = reisner {
            println!(
                "oracle: {}",
                if r {
                    "Cohen-Macaulay"
                } else {
                    "not Cohen-Macaulay"
                }
            );
        }
    }
    if reisner.is_some_and(|r| r != verdict.is_acm) {
        return Err(Failure {
            code: DISAGREEMENT,
            message: "the homology oracle disagrees with the combinatorial verdict".into(),
        });
    }
    Ok(if verdict.is_acm { ACM } else { NOT_ACM })
}

fn ferrers(path: &Path, companion: bool, json: bool) -> Outcome {
    let x = load(path)?;
    let shapes: Vec<_> = [Direction::Three, Direction::Two, Direction::One]
        .into_iter()
        .map(|h| resembles_ferrers(&x, h))
        .collect();
    let relabeling = is_ferrers_variety(&x);
    let companion = if companion {
        Some(ferrers_companion(&x)?)
    } else {
        None
    };
    if json {
        let slices: Vec<_> = shapes
            .iter()
            .map(|s| {
                serde_json::json!({
                    "direction": s.direction.index(),
                    "resembles": s.resembles,
                    "literal": s.literal,
                    "partition": s.partition,
                })
            })
            .collect();
        let v = serde_json::json!({
            "slices": slices,
            "ferrers": relabeling.is_some(),
            "relabeling": relabeling.as_ref().map(|r| &r.maps),
            "companion": companion.as_ref().map(|c| c.to_raw()),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&v).expect("report serialises")
        );
    } else {
        for s in &shapes {
            let shape = if s.resembles {
                format!("Ferrers {:?}", s.partition)
            } else {
                "not Ferrers".into()
            };
            println!("U{}: {shape}", s.direction.index());
            if let Some(([p1, p2], [q1, q2])) = s.witness {
                println!("  rows {p1} and {p2} are not nested (columns {q1}, {q2})");
            }
        }
        match &relabeling {
            Some(r) => println!(
                "Ferrers variety; relabelling A {:?} B {:?} C {:?}",
                r.maps[0], r.maps[1], r.maps[2]
            ),
            None => println!("not a Ferrers variety"),
        }
        if let Some(c) = &companion {
            println!("{}", c.to_json());
        }
    }
    Ok(if relabeling.is_some() { 0 } else { 1 })
}

fn hilbert(path: &Path, bound: DegreeTriple, method: Method, json: bool) -> Outcome {
    let x = load(path)?;
    let table = match method {
        Method::Corollary => hilbert_function(&x, bound)?,
        Method::Oracle => hilbert_oracle(&x, bound),
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&table.to_json()).expect("table serialises")
        );
    } else {
        print!("{}", table.to_csv());
    }
    Ok(0)
}

fn print_generators(gens: &GeneratorSet) {
    for (t, p) in gens.degrees.iter().zip(gens.products()) {
        println!("{t}  {p}");
    }
}

fn gens(path: &Path, oracle: bool, bound: DegreeTriple) -> Outcome {
    let x = load(path)?;
    if !oracle {
        print_generators(&minimal_generators(&x)?);
        return Ok(0);
    }
    let scan = generator_degree_scan(&x, bound);
    for (t, n) in scan.degrees.iter().zip(&scan.counts) {
        println!("{t}  x{n}");
    }
    if scan.box_too_small {
        eprintln!("warning: box {bound} does not contain every generator degree");
    }
    Ok(0)
}

fn grid(path: &Path) -> Outcome {
    let raw: RawPointSet = serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::input(format!("malformed JSON: {e}")))?;
    let x = grid_from_points(&raw.to_points()).map_err(Failure::input)?;
    println!("{}", x.to_json());
    Ok(0)
}

fn ci(path: Option<&Path>, grid: Option<Vec<usize>>) -> Outcome {
    if let Some(g) = grid {
        let res = grid_resolution(g[0], g[1], g[2]);
        println!("{res}");
        return Ok(0);
    }
    let x = load(path.expect("clap requires a file without --grid"))?;
    match detect_complete_intersection(&x) {
        Some((f1, f2)) => {
            let gens = minimal_generators(&x)?;
            let name = |t: &DegreeTriple| {
                gens.factors(t)
                    .iter()
                    .map(|h| h.to_string())
                    .collect::<Vec<_>>()
                    .join("*")
            };
            println!("complete intersection");
            println!("{f1}  {}", name(&f1));
            println!("{f2}  {}", name(&f2));
            Ok(0)
        }
        None => {
            println!("not a complete intersection");
            Ok(1)
        }
    }
}

fn render(path: &Path, direction: Option<u8>) -> Outcome {
    let x = load(path)?;
    let dirs: Vec<Direction> = match direction {
        Some(h) => vec![Direction::from_index(h as usize).expect("clap checks the range")],
        None => vec![Direction::Three, Direction::Two, Direction::One],
    };
    for (n, h) in dirs.into_iter().enumerate() {
        if n > 0 {
            println!();
        }
        println!("U{}:", h.index());
        print!("{}", x.render(h));
    }
    Ok(0)
}

fn write_json(dir: &Path, name: &str, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("report serialises");
    fs::write(dir.join(name), text + "\n")
        .map_err(|e| Failure::input(format!("{}: {e}", dir.display())))
}

fn hf_experiment(cfg: &ExperimentConfig, out: Option<&Path>, input: Option<&Path>) -> Outcome {
    let report: ExperimentReport = match input {
        Some(path) => run_fixed(&load(path)?, cfg.bound),
        None => run_experiment(cfg),
    }
    .map_err(|e| Failure {
        code: DISAGREEMENT,
        message: e.to_string(),
    })?;
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
        write_json(dir, "report.json", &report)?;
        for c in &report.counterexamples {
            write_json(dir, &format!("counterexample_{}.json", c.trial), c)?;
        }
    }
    println!(
        "trials {}  acm {}  companions {}  equal {}  different {}",
        report.trials, report.acm_found, report.companions, report.successes, report.failures
    );
    for c in &report.counterexamples {
        eprintln!(
            "possible counterexample in trial {}: H_X{} = {} but H_X'{} = {}",
            c.trial, c.degree, c.h_variety, c.degree, c.h_companion
        );
    }
    Ok(0)
}
