//! Command-line interface for Pauli-triplet verification, tomography
//! simulation, searches and bound checks.
//!
//! Every command is a thin adapter over the `pauli-span` library: it loads
//! JSON inputs, calls one library operation and renders the result as text
//! or JSON. Exit codes: 0 success / property true, 1 property false,
//! 2 usage or data error, 3 search timeout.

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pauli_span::io::{DataFile, FamilyFile, StateFile, TripletFile};
use pauli_span::search::{
    bound_check, count_spanning_six, enumerate_elementary_triplets, refute_five_elementary,
    search_fifth_triplet, search_spanning_family, SearchConfig, SearchError, SearchOutcome,
};
use pauli_span::state::reduce_state;
use pauli_span::tomography::{build_plan, forward, reconstruct, sample_shots};
use pauli_span::triplet::{triplet_span_rank, verify_triplet, SubalgebraBasis};
use pauli_span::unbiased::{prop3_crosscheck_family, weakly_unbiased_family};
use serde_json::{json, Value};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pauli-span",
    version,
    about = "Pauli-triplet subalgebras: verification, tomography and searches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output rendering on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON result to this path
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized commands
    #[arg(long, global = true, env = "PAULI_SPAN_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the triplet axioms on a triplet file, reporting each check
    VerifyTriplet {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exact traceless span rank of a triplet family
    SpanCheck {
        #[arg(long)]
        family: PathBuf,
    },
    /// Weak unbiasedness of a family plus pairwise strong-unbiasedness reports
    UnbiasedCheck {
        #[arg(long)]
        family: PathBuf,
        /// Sampled directions per side (axes always included)
        #[arg(long, default_value_t = 32)]
        samples: usize,
    },
    /// Reduced Bloch vector of a state in each subalgebra of a family
    Reduce {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Expectation values of a state for a plan, optionally with shot noise
    Simulate {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        plan: PathBuf,
        /// Shots per operator; omit for exact expectations
        #[arg(long)]
        shots: Option<u64>,
    },
    /// Least-squares reconstruction from a data file (or stdin)
    Reconstruct {
        #[arg(long)]
        plan: PathBuf,
        /// Data file; reads stdin when omitted
        #[arg(long)]
        data: Option<PathBuf>,
        /// Clip the estimate to the PSD cone and renormalize
        #[arg(long)]
        psd: bool,
    },
    /// Enumerate the elementary triplet catalog on n qubits
    SearchElementary {
        #[arg(long, default_value_t = 2)]
        qubits: usize,
    },
    /// Backtracking search for a Hadamard-alphabet fifth triplet
    SearchFifth {
        /// Fixed four off-diagonal triplets; defaults to the bundled family
        #[arg(long)]
        family: Option<PathBuf>,
        /// Budget in seconds
        #[arg(long, default_value_t = 600.0)]
        budget: f64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Budgeted randomized-greedy search for a spanning family
    SearchFamily {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        target: usize,
        /// Budget in seconds
        #[arg(long, default_value_t = 300.0)]
        budget: f64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Integer feasibility of spanning with (4^n - 1)/3 elementary triplets
    Bounds {
        #[arg(long)]
        qubits: usize,
    },
    /// Exhaustive sweep: no five elementary triplets span M_4
    RefuteFive,
}

/// What a finished command reports, before rendering.
struct Report {
    json: Value,
    text: String,
    /// `Some(false)` exits 1 (property false), `None` exits 3 (timeout).
    verdict: Option<bool>,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            verdict: Some(true),
        }
    }

    fn property(holds: bool, json: Value, text: String) -> Self {
        Report {
            json,
            text,
            verdict: Some(holds),
        }
    }

    fn timeout(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            verdict: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if let Some(path) = &cli.out {
                if let Err(e) = pauli_span::io::write_json(path, &report.json) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serializable")
                ),
                Format::Text => println!("{}", report.text),
            }
            match report.verdict {
                Some(true) => ExitCode::SUCCESS,
                Some(false) => ExitCode::from(1),
                None => ExitCode::from(3),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::VerifyTriplet { input } => verify_triplet_cmd(input),
        Command::SpanCheck { family } => span_check_cmd(family),
        Command::UnbiasedCheck { family, samples } => unbiased_cmd(family, *samples, cli.seed),
        Command::Reduce { state, family } => reduce_cmd(state, family),
        Command::Simulate { state, plan, shots } => simulate_cmd(state, plan, *shots, cli.seed),
        Command::Reconstruct { plan, data, psd } => reconstruct_cmd(plan, data.as_deref(), *psd),
        Command::SearchElementary { qubits } => search_elementary_cmd(*qubits),
        Command::SearchFifth {
            family,
            budget,
            workers,
        } => search_fifth_cmd(family.as_deref(), *budget, *workers, cli.seed),
        Command::SearchFamily {
            qubits,
            target,
            budget,
            workers,
        } => search_family_cmd(*qubits, *target, *budget, *workers, cli.seed),
        Command::Bounds { qubits } => bounds_cmd(*qubits),
        Command::RefuteFive => refute_five_cmd(),
    }
}

fn load_family_file(path: &Path) -> Result<FamilyFile> {
    pauli_span::io::read_json(path).with_context(|| format!("loading family {}", path.display()))
}

fn verify_triplet_cmd(path: &Path) -> Result<Report> {
    let tf: TripletFile =
        pauli_span::io::read_json(path).with_context(|| format!("loading {}", path.display()))?;
    let [s1, s2, s3] = tf.to_matrices()?;
    let report = verify_triplet(&s1, &s2, &s3)?;
    let pass = report.pass();
    let json = json!({
        "name": tf.name,
        "self_adjoint": report.self_adjoint,
        "unitary": report.unitary,
        "anticommutes": report.anticommutes,
        "product_identity": report.product_identity,
        "pass": pass,
    });
    let text = if pass {
        format!("{}: all triplet axioms hold (exact)", tf.name)
    } else {
        format!(
            "{}: FAILED axioms: {}",
            tf.name,
            report.failures().join(", ")
        )
    };
    Ok(Report::property(pass, json, text))
}

fn span_check_cmd(path: &Path) -> Result<Report> {
    let family = load_family_file(path)?.to_triplets()?;
    let rank = triplet_span_rank(&family)?;
    let dim = family.first().map(|t| t.dim()).unwrap_or(0);
    let full = dim * dim - 1;
    let spanning = !family.is_empty() && rank == full;
    let json = json!({
        "triplet_count": family.len(),
        "rows": 3 * family.len(),
        "ambient_dim": dim,
        "rank": rank,
        "full_rank": full,
        "spanning": spanning,
    });
    let text = format!(
        "{} triplets, ambient dim {dim}: traceless rank {rank} of {full} -> {}",
        family.len(),
        if spanning { "spans" } else { "does NOT span" }
    );
    Ok(Report::property(spanning, json, text))
}

fn unbiased_cmd(path: &Path, samples: usize, seed: u64) -> Result<Report> {
    let family = load_family_file(path)?.to_triplets()?;
    let subs: Vec<SubalgebraBasis> = family.into_iter().map(SubalgebraBasis::new).collect();
    let weakly = weakly_unbiased_family(&subs)?;
    let reports = prop3_crosscheck_family(&subs, samples, seed)?;
    let pairs: Vec<Value> = reports
        .iter()
        .map(|r| {
            let min = r
                .sampled_traces
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min);
            let max = r
                .sampled_traces
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max);
            json!({
                "pair": [r.pair.0, r.pair.1],
                "condition_i_holds": r.condition_i_holds,
                "condition_ii_holds": r.condition_ii_holds,
                "conditions_agree": r.conditions_agree(),
                "expected_trace": r.expected_trace,
                "min_trace": min,
                "max_trace": max,
                "samples": r.sampled_traces.len(),
            })
        })
        .collect();
    let strong_pairs = reports.iter().filter(|r| r.condition_ii_holds).count();
    let json = json!({
        "weakly_unbiased": weakly,
        "pairs_strongly_unbiased": strong_pairs,
        "pairs_total": reports.len(),
        "pairs": pairs,
    });
    let text = format!(
        "weakly unbiased: {weakly}; strongly unbiased pairs: {strong_pairs}/{}",
        reports.len()
    );
    Ok(Report::property(weakly, json, text))
}

fn reduce_cmd(state: &Path, family: &Path) -> Result<Report> {
    let rho = pauli_span::io::load_state(state)
        .with_context(|| format!("loading state {}", state.display()))?;
    let file = load_family_file(family)?;
    let triplets = file.to_triplets()?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for (j, (t, tf)) in triplets.into_iter().zip(&file.triplets).enumerate() {
        let bloch = reduce_state(&rho, &SubalgebraBasis::new(t))?;
        text.push_str(&format!(
            "{}: r = ({:+.6}, {:+.6}, {:+.6}), |r| = {:.6}\n",
            tf.name,
            bloch.r[0],
            bloch.r[1],
            bloch.r[2],
            bloch.norm()
        ));
        rows.push(json!({"triplet": j, "name": tf.name, "r": bloch.r, "norm": bloch.norm()}));
    }
    Ok(Report::ok(json!({ "bloch": rows }), text.trim_end().into()))
}

fn simulate_cmd(state: &Path, plan_path: &Path, shots: Option<u64>, seed: u64) -> Result<Report> {
    let rho = pauli_span::io::load_state(state)
        .with_context(|| format!("loading state {}", state.display()))?;
    let plan = build_plan(&load_family_file(plan_path)?.to_triplets()?)?;
    let mut record = forward(&rho, &plan)?;
    if let Some(n) = shots {
        record = sample_shots(&record, n, seed)?;
    }
    let data = DataFile::from_record(plan_path.display().to_string(), &record);
    let json = serde_json::to_value(&data)?;
    // the text rendering is the data payload itself so pipes compose
    let text = serde_json::to_string_pretty(&data)?;
    Ok(Report::ok(json, text))
}

fn reconstruct_cmd(plan_path: &Path, data: Option<&Path>, psd: bool) -> Result<Report> {
    let plan = build_plan(&load_family_file(plan_path)?.to_triplets()?)?;
    let data_file: DataFile = match data {
        Some(path) => pauli_span::io::read_json(path)
            .with_context(|| format!("loading data {}", path.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading data from stdin")?;
            serde_json::from_str(&buf).context("parsing data from stdin")?
        }
    };
    let record = data_file.to_record();
    record.validate()?;
    let result = reconstruct(&plan, &record, psd)?;
    let state = StateFile::from_density(&result.rho_hat);
    let json = json!({
        "rho_hat": serde_json::to_value(&state)?,
        "raw_traceless_solution": result.raw_traceless_solution,
        "residual_norm": result.residual_norm,
        "psd_projected": result.psd_projected,
        "min_eigenvalue": result.rho_hat.min_eigenvalue(),
    });
    let text = format!(
        "reconstructed state (residual {:.3e}, psd_projected: {}, min eigenvalue {:+.3e})\n{}",
        result.residual_norm,
        result.psd_projected,
        result.rho_hat.min_eigenvalue(),
        serde_json::to_string_pretty(&state)?
    );
    Ok(Report::ok(json, text))
}

fn search_elementary_cmd(qubits: usize) -> Result<Report> {
    let catalog = enumerate_elementary_triplets(qubits)?;
    let triplets: Vec<Value> = catalog
        .triplets()
        .iter()
        .map(|t| {
            let words = t.words().expect("catalog members are elementary");
            json!([
                words[0].to_string(),
                words[1].to_string(),
                words[2].to_string()
            ])
        })
        .collect();
    let json = json!({
        "qubits": qubits,
        "count": catalog.len(),
        "triplets": triplets,
    });
    let text = format!(
        "{} elementary triplets on {qubits} qubit(s), deduplicated by unsigned support",
        catalog.len()
    );
    Ok(Report::ok(json, text))
}

fn search_fifth_cmd(
    family: Option<&Path>,
    budget: f64,
    workers: usize,
    seed: u64,
) -> Result<Report> {
    let fixed = match family {
        Some(path) => load_family_file(path)?.to_triplets()?,
        None => pauli_span::families::four_off_diagonal(),
    };
    let cfg = SearchConfig::default()
        .with_budget_secs(budget)
        .with_workers(workers)
        .with_seed(seed);
    match search_fifth_triplet(&fixed, &cfg)? {
        SearchOutcome::Found { value, stats } => {
            let tf = TripletFile::from_triplet("fifth_triplet", &value.triplet);
            let json = json!({
                "found": true,
                "triplet": serde_json::to_value(&tf)?,
                "candidate_pair": [value.candidate_pair.0, value.candidate_pair.1],
                "stats": serde_json::to_value(&stats)?,
            });
            let text = format!(
                "found a fifth triplet (candidates {}, pairs checked {}, {:.3}s)\n{}",
                stats.candidates,
                stats.pairs_checked,
                stats.elapsed_s,
                serde_json::to_string_pretty(&tf)?
            );
            Ok(Report::ok(json, text))
        }
        SearchOutcome::Timeout { stats } => timeout_report("fifth-triplet search", &stats),
    }
}

fn search_family_cmd(
    qubits: usize,
    target: usize,
    budget: f64,
    workers: usize,
    seed: u64,
) -> Result<Report> {
    let cfg = SearchConfig::default()
        .with_budget_secs(budget)
        .with_workers(workers)
        .with_seed(seed);
    match search_spanning_family(qubits, target, &cfg) {
        Ok(SearchOutcome::Found { value, stats }) => {
            let file = FamilyFile::from_witness(&value, stats.elapsed_s);
            let json = serde_json::to_value(&file)?;
            let text = format!(
                "found a spanning family: {} triplets, rank {} (trial {}, {:.3}s)\n{}",
                value.triplets.len(),
                value.rank,
                value.trial,
                stats.elapsed_s,
                serde_json::to_string_pretty(&file)?
            );
            Ok(Report::ok(json, text))
        }
        Ok(SearchOutcome::Timeout { stats }) => timeout_report("spanning-family search", &stats),
        Err(SearchError::ProvablyInfeasible { n, target, reason }) => {
            let json = json!({
                "found": false,
                "provably_infeasible": true,
                "qubits": n,
                "target": target,
                "reason": reason,
            });
            let text = format!("target {target} on {n} qubits is provably infeasible: {reason}");
            Ok(Report::property(false, json, text))
        }
        Err(e) => Err(e.into()),
    }
}

fn timeout_report(what: &str, stats: &pauli_span::search::SearchStats) -> Result<Report> {
    let json = json!({
        "found": false,
        "timeout": true,
        "stats": serde_json::to_value(stats)?,
    });
    let text = format!(
        "{what} exhausted its budget ({:.1}s, {} trials, best rank {:?})",
        stats.elapsed_s, stats.trials, stats.best_rank
    );
    Ok(Report::timeout(json, text))
}

fn bounds_cmd(qubits: usize) -> Result<Report> {
    let result = bound_check(qubits)?;
    let json = serde_json::to_value(&result)?;
    let text = match result.solution {
        Some((n, m)) => format!(
            "n = {}: N + M = {} and N + 3M = {} admit (N, M) = ({n}, {m})",
            result.n, result.sum_rhs, result.imaginary_dim_rhs
        ),
        None => format!(
            "n = {}: N + M = {} and N + 3M = {} have no non-negative integer solution; \
             more than {} triplets are needed",
            result.n, result.sum_rhs, result.imaginary_dim_rhs, result.target_triplet_count
        ),
    };
    Ok(Report::property(result.feasible, json, text))
}

fn refute_five_cmd() -> Result<Report> {
    let catalog = enumerate_elementary_triplets(2)?;
    let report = refute_five_elementary(&catalog)?;
    let spanning_six = count_spanning_six(&catalog)?;
    let witness_keys: Vec<[usize; 3]> = report.witness.iter().map(|&i| catalog.key(i)).collect();
    let json = json!({
        "refuted": report.refuted,
        "max_rank": report.max_rank,
        "subsets_checked": report.subsets_checked,
        "witness_indices": report.witness,
        "witness_supports": witness_keys,
        "catalog_size": catalog.len(),
        "spanning_six_subsets": spanning_six,
    });
    let text = format!(
        "checked {} five-subsets of the {}-triplet catalog: max rank {} (<= 14), refuted: {}; \
         {} six-subsets span",
        report.subsets_checked, catalog.len(), report.max_rank, report.refuted, spanning_six
    );
    Ok(Report::property(report.refuted, json, text))
}
