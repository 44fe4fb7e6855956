//! Seeded differential campaigns: polynomial solvers against the exact
//! oracle, and reduced instances against their originals.
//!
//! A campaign is deterministic given its spec. Per-trial inputs are drawn
//! up front from one seeded stream and trials are checked in index order,
//! so a report's contents never depend on scheduling. When the subject
//! admits canonical enumeration (oriented cycles and oriented paths) and
//! the full space fits the budget, sampling is replaced by exhaustion.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::classify::classify;
use crate::generate::{generate_instance, GenClass, GenError, GenSpec};
use crate::graph::{OrientedGraph, Vertex};
use crate::instance::{serialize_instance, Configuration, Instance};
use crate::mis::all_independent_sets;
use crate::reduction::{
    planar::max_gadget_weight, lift_sequence, project_sequence,
    reduce_bipartite, reduce_planar, reduce_split, serialize_artifact,
    ReductionArtifact, ReductionKind, ReductionPolicy,
};
use crate::solver::{
    apply_and_validate, solve_auto, solve_cograph, solve_cycle, solve_exact,
    solve_exact_undirected, solve_path_forest, SearchLimits, SolveError,
    SolveResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CampaignMode {
    SolverEquivalence,
    ReductionSoundness,
}

#[derive(Debug, Clone)]
pub struct CampaignSpec {
    pub mode: CampaignMode,
    /// Solver name (`cycle`, `path_forest`, `cograph`, `auto`) or reduction
    /// kind (`planar`, `split`, `bipartite`).
    pub subject: String,
    pub n_min: u32,
    pub n_max: u32,
    /// Upper bound on drawn token counts; ignored by generator classes
    /// that place maximum independent sets.
    pub k_max: u32,
    pub trials: u64,
    pub seed: u64,
    /// Applied to every oracle run; exceeding it discards the trial.
    pub limits: SearchLimits,
    /// Exhaustion replaces sampling when the enumerable space is at most
    /// this many oracle calls.
    pub exhaustive_budget: u64,
    /// Where to persist counterexamples; in memory only when absent.
    pub output_dir: Option<PathBuf>,
    /// Reduction campaigns resolve construction choices with this; seeded
    /// policies are salted per trial.
    pub policy: ReductionPolicy,
}

impl CampaignSpec {
    pub fn new(mode: CampaignMode, subject: &str) -> Self {
        CampaignSpec {
            mode,
            subject: subject.to_string(),
            n_min: 3,
            n_max: 8,
            k_max: 3,
            trials: 200,
            seed: 0,
            limits: SearchLimits::default(),
            exhaustive_budget: 1_000_000,
            output_dir: None,
            policy: ReductionPolicy::Lexicographic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignMismatch {
    pub trial: u64,
    pub description: String,
    pub instance_text: String,
    pub map_text: Option<String>,
    /// Files the counterexample was persisted to, if any.
    pub paths: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub trials_run: u64,
    pub mismatches: Vec<CampaignMismatch>,
    /// Oracle runs discarded for exceeding the search limits.
    pub truncated: u64,
    pub wall_time_ms: u64,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> String {
        let paths: Vec<&str> = self
            .mismatches
            .iter()
            .flat_map(|m| m.paths.iter().map(String::as_str))
            .collect();
        serde_json::to_string_pretty(&json!({
            "trials_run": self.trials_run,
            "mismatch_count": self.mismatches.len(),
            "mismatch_paths": paths,
            "truncated": self.truncated,
            "wall_time_ms": self.wall_time_ms,
        }))
        .expect("report serialization cannot fail")
    }
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("unknown campaign subject '{0}'")]
    UnknownSubject(String),
    #[error("cannot persist counterexample: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy)]
enum SolverSubject {
    Cycle,
    PathForest,
    Cograph,
    Auto,
}

impl SolverSubject {
    fn parse(name: &str) -> Option<Self> {
        match name {
            "cycle" => Some(SolverSubject::Cycle),
            "path_forest" => Some(SolverSubject::PathForest),
            "cograph" => Some(SolverSubject::Cograph),
            "auto" => Some(SolverSubject::Auto),
            _ => None,
        }
    }

    fn gen_class(self) -> GenClass {
        match self {
            SolverSubject::Cycle => GenClass::Cycle,
            SolverSubject::PathForest => GenClass::PathForest,
            SolverSubject::Cograph => GenClass::Cograph,
            SolverSubject::Auto => GenClass::Arbitrary,
        }
    }

    fn call(self, i: &Instance, limits: SearchLimits) -> Result<SolveResult, SolveError> {
        match self {
            SolverSubject::Cycle => solve_cycle(i, true),
            SolverSubject::PathForest => solve_path_forest(i, true),
            SolverSubject::Cograph => solve_cograph(i, true),
            SolverSubject::Auto => solve_auto(i, limits, true),
        }
    }
}

enum Outcome {
    Agreement,
    Truncated,
    Mismatch(String),
}

/// Compares a polynomial solver's answers, and its witnesses' validity,
/// against breadth-first search over the whole spec.
pub fn run_equivalence_campaign(spec: &CampaignSpec) -> Result<CampaignReport, CampaignError> {
    let subject = SolverSubject::parse(&spec.subject)
        .ok_or_else(|| CampaignError::UnknownSubject(spec.subject.clone()))?;
    let start = Instant::now();
    let mut report = CampaignReport {
        trials_run: 0,
        mismatches: Vec::new(),
        truncated: 0,
        wall_time_ms: 0,
    };

    let space = exhaustive_space(subject.gen_class(), spec.n_min, spec.n_max, spec.k_max);
    match space {
        Some(space) if space <= spec.exhaustive_budget as u128 => {
            for_each_enumerated(subject.gen_class(), spec, &mut |trial, i| {
                record(spec, &mut report, trial, i, None, check_solver(subject, i, spec.limits))
            })?;
        }
        _ => {
            for input in draw_trials(spec) {
                let Some(i) = generate_trial_instance(subject.gen_class(), &input, &mut report)
                else {
                    continue;
                };
                record(
                    spec,
                    &mut report,
                    input.index,
                    &i,
                    None,
                    check_solver(subject, &i, spec.limits),
                )?;
            }
        }
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Reduces each generated instance and demands equal oracle answers plus
/// valid lifted and projected witnesses.
pub fn run_reduction_campaign(spec: &CampaignSpec) -> Result<CampaignReport, CampaignError> {
    let kind = match spec.subject.as_str() {
        "planar" => ReductionKind::Planar,
        "split" => ReductionKind::Split,
        "bipartite" => ReductionKind::Bipartite,
        other => return Err(CampaignError::UnknownSubject(other.to_string())),
    };
    let class = match kind {
        ReductionKind::Planar => GenClass::SubcubicMaxIs,
        ReductionKind::Split => GenClass::Split,
        ReductionKind::Bipartite => GenClass::BipartiteSubcubicMaxIs,
    };
    let start = Instant::now();
    let mut report = CampaignReport {
        trials_run: 0,
        mismatches: Vec::new(),
        truncated: 0,
        wall_time_ms: 0,
    };
    for input in draw_trials(spec) {
        let Some(original) = generate_trial_instance(class, &input, &mut report) else {
            continue;
        };
        let policy = match spec.policy {
            ReductionPolicy::Lexicographic => ReductionPolicy::Lexicographic,
            ReductionPolicy::Seeded(s) => {
                ReductionPolicy::Seeded(s.wrapping_add(input.policy_salt))
            }
        };
        let (outcome, artifact) = check_reduction(kind, &policy, &original, spec.limits);
        let map_text = artifact.as_ref().map(serialize_artifact);
        record(spec, &mut report, input.index, &original, map_text, outcome)?;
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Trial plumbing

struct TrialInput {
    index: u64,
    n: u32,
    k: u32,
    gen_seed: u64,
    policy_salt: u64,
}

/// All per-trial randomness, drawn up front in index order.
fn draw_trials(spec: &CampaignSpec) -> Vec<TrialInput> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.trials)
        .map(|index| TrialInput {
            index,
            n: rng.random_range(spec.n_min..=spec.n_max),
            k: rng.random_range(0..=spec.k_max),
            gen_seed: rng.random(),
            policy_salt: rng.random(),
        })
        .collect()
}

/// Infeasible draws produce no instance and count nowhere; anything else
/// unexpected becomes a mismatch so it can never pass silently.
fn generate_trial_instance(
    class: GenClass,
    input: &TrialInput,
    report: &mut CampaignReport,
) -> Option<Instance> {
    let gen = GenSpec {
        class,
        vertex_count: input.n,
        token_count: input.k,
        seed: input.gen_seed,
    };
    match generate_instance(&gen) {
        Ok(i) => Some(i),
        Err(GenError::InfeasibleSpec(_)) => None,
        Err(e) => {
            report.mismatches.push(CampaignMismatch {
                trial: input.index,
                description: format!("generator failed: {e}"),
                instance_text: String::new(),
                map_text: None,
                paths: Vec::new(),
            });
            None
        }
    }
}

fn record(
    spec: &CampaignSpec,
    report: &mut CampaignReport,
    trial: u64,
    instance: &Instance,
    map_text: Option<String>,
    outcome: Outcome,
) -> Result<(), CampaignError> {
    match outcome {
        Outcome::Agreement => report.trials_run += 1,
        Outcome::Truncated => report.truncated += 1,
        Outcome::Mismatch(description) => {
            report.trials_run += 1;
            let mut m = CampaignMismatch {
                trial,
                description,
                instance_text: serialize_instance(instance),
                map_text,
                paths: Vec::new(),
            };
            if let Some(dir) = &spec.output_dir {
                std::fs::create_dir_all(dir)?;
                let stem = format!("{}_trial{}", spec.subject, trial);
                let tsd = dir.join(format!("{stem}.tsd"));
                std::fs::write(&tsd, &m.instance_text)?;
                m.paths.push(tsd.display().to_string());
                if let Some(map) = &m.map_text {
                    let map_path = dir.join(format!("{stem}.map"));
                    std::fs::write(&map_path, map)?;
                    m.paths.push(map_path.display().to_string());
                }
            }
            report.mismatches.push(m);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Single-trial checks

fn check_solver(subject: SolverSubject, i: &Instance, limits: SearchLimits) -> Outcome {
    let oracle = match solve_exact(i, limits, false) {
        Ok(r) => r,
        Err(SolveError::StateLimitExceeded { .. }) => return Outcome::Truncated,
        Err(e) => return Outcome::Mismatch(format!("oracle failed: {e}")),
    };
    let subj = match subject.call(i, limits) {
        Ok(r) => r,
        Err(SolveError::StateLimitExceeded { .. }) => return Outcome::Truncated,
        Err(e) => return Outcome::Mismatch(format!("subject solver failed: {e}")),
    };
    if subj.answer != oracle.answer {
        return Outcome::Mismatch(format!(
            "subject answers {}, oracle answers {}",
            subj.answer, oracle.answer
        ));
    }
    if subj.answer {
        let Some(w) = &subj.witness else {
            return Outcome::Mismatch("yes answer without a witness".into());
        };
        match apply_and_validate(i, w) {
            Ok(end) if &end == i.target() => {}
            Ok(end) => {
                return Outcome::Mismatch(format!(
                    "subject witness ends at {end}, not at the target"
                ))
            }
            Err(e) => return Outcome::Mismatch(format!("subject witness invalid: {e}")),
        }
    }
    Outcome::Agreement
}

fn check_reduction(
    kind: ReductionKind,
    policy: &ReductionPolicy,
    original: &Instance,
    limits: SearchLimits,
) -> (Outcome, Option<ReductionArtifact>) {
    let reduced_pair = match kind {
        ReductionKind::Planar => reduce_planar(original, policy),
        ReductionKind::Split => {
            let Some(part) = classify(original.graph()).split_partition else {
                return (
                    Outcome::Mismatch("generated split graph failed classification".into()),
                    None,
                );
            };
            reduce_split(original, &part, policy)
        }
        ReductionKind::Bipartite => reduce_bipartite(original, policy),
    };
    let (reduced, artifact) = match reduced_pair {
        Ok(p) => p,
        Err(e) => return (Outcome::Mismatch(format!("reduction failed: {e}")), None),
    };

    let original_oracle = match solve_exact_undirected(original, limits, true) {
        Ok(r) => r,
        Err(SolveError::StateLimitExceeded { .. }) => {
            return (Outcome::Truncated, Some(artifact))
        }
        Err(e) => {
            return (
                Outcome::Mismatch(format!("original oracle failed: {e}")),
                Some(artifact),
            )
        }
    };
    let reduced_oracle = match solve_exact(&reduced, limits, true) {
        Ok(r) => r,
        Err(SolveError::StateLimitExceeded { .. }) => {
            return (Outcome::Truncated, Some(artifact))
        }
        Err(e) => {
            return (
                Outcome::Mismatch(format!("reduced oracle failed: {e}")),
                Some(artifact),
            )
        }
    };
    if original_oracle.answer != reduced_oracle.answer {
        let mut msg = format!(
            "original oracle answers {}, reduced oracle answers {}",
            original_oracle.answer, reduced_oracle.answer
        );
        for line in &artifact.policy_trace {
            let _ = write!(msg, "; {line}");
        }
        return (Outcome::Mismatch(msg), Some(artifact));
    }
    if original_oracle.answer {
        let witness = original_oracle.witness.expect("oracle yes carries a witness");
        let lifted = match lift_sequence(&artifact, original, &witness) {
            Ok(l) => l,
            Err(e) => {
                return (Outcome::Mismatch(format!("lift failed: {e}")), Some(artifact))
            }
        };
        if kind == ReductionKind::Planar {
            match max_gadget_weight(&artifact, &reduced, &lifted) {
                Ok(w) if w <= 2 => {}
                Ok(w) => {
                    return (
                        Outcome::Mismatch(format!("gadget weight reached {w}")),
                        Some(artifact),
                    )
                }
                Err(e) => {
                    return (
                        Outcome::Mismatch(format!("gadget weight sweep failed: {e}")),
                        Some(artifact),
                    )
                }
            }
        }
        let reduced_witness = reduced_oracle.witness.expect("oracle yes carries a witness");
        if let Err(e) = project_sequence(&artifact, &reduced, &reduced_witness) {
            return (
                Outcome::Mismatch(format!("project failed: {e}")),
                Some(artifact),
            );
        }
    }
    (Outcome::Agreement, Some(artifact))
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration for canonically orderable classes

/// Number of (orientation, source set, target set) triples the class admits
/// over the range, or `None` when the class has no canonical enumeration.
fn exhaustive_space(class: GenClass, n_min: u32, n_max: u32, k_max: u32) -> Option<u128> {
    if !matches!(class, GenClass::Cycle | GenClass::PathForest) {
        return None;
    }
    let mut total: u128 = 0;
    for n in n_min..=n_max {
        let Some((g, orientations)) = canonical_base(class, n, 0) else {
            continue;
        };
        let pairs: u128 = sets_by_size(&g, k_max)
            .iter()
            .map(|group| (group.len() as u128).pow(2))
            .sum();
        total += orientations as u128 * pairs;
    }
    Some(total)
}

/// The canonical graph of the class under an orientation bitmask, plus the
/// total number of orientations. Cycles run 1..n..1, paths run 1..n.
fn canonical_base(class: GenClass, n: u32, bits: u64) -> Option<(OrientedGraph, u64)> {
    let edges: Vec<(Vertex, Vertex)> = match class {
        GenClass::Cycle => {
            if n < 3 {
                return None;
            }
            (1..=n).map(|u| (u, if u == n { 1 } else { u + 1 })).collect()
        }
        GenClass::PathForest => (1..n).map(|u| (u, u + 1)).collect(),
        _ => return None,
    };
    let arcs: Vec<(Vertex, Vertex)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| if bits >> i & 1 == 1 { (v, u) } else { (u, v) })
        .collect();
    let g = OrientedGraph::new(n, &arcs).expect("canonical graph is well-formed");
    Some((g, 1u64 << edges.len()))
}

/// Independent sets grouped by size, sizes `0..=k_max`.
fn sets_by_size(g: &OrientedGraph, k_max: u32) -> Vec<Vec<Vec<Vertex>>> {
    let mut groups: Vec<Vec<Vec<Vertex>>> = vec![Vec::new(); k_max as usize + 1];
    for set in all_independent_sets(g, Some(k_max)) {
        groups[set.len()].push(set);
    }
    groups
}

fn for_each_enumerated(
    class: GenClass,
    spec: &CampaignSpec,
    f: &mut dyn FnMut(u64, &Instance) -> Result<(), CampaignError>,
) -> Result<(), CampaignError> {
    let mut trial = 0u64;
    for n in spec.n_min..=spec.n_max {
        let Some((_, orientations)) = canonical_base(class, n, 0) else {
            continue;
        };
        for bits in 0..orientations {
            let (g, _) = canonical_base(class, n, bits).expect("checked above");
            let groups = sets_by_size(&g, spec.k_max);
            for group in &groups {
                for s in group {
                    for t in group {
                        let i = Instance::new(
                            g.clone(),
                            Configuration::new(s.clone()).expect("independent set"),
                            Configuration::new(t.clone()).expect("independent set"),
                        )
                        .expect("independent source");
                        f(trial, &i)?;
                        trial += 1;
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_run_nothing() {
        let mut spec = CampaignSpec::new(CampaignMode::SolverEquivalence, "cograph");
        spec.trials = 0;
        let r = run_equivalence_campaign(&spec).unwrap();
        assert_eq!(r.trials_run, 0);
        assert!(r.passed());
    }

    #[test]
    fn unknown_subjects_are_rejected() {
        let spec = CampaignSpec::new(CampaignMode::SolverEquivalence, "quantum");
        assert!(matches!(
            run_equivalence_campaign(&spec),
            Err(CampaignError::UnknownSubject(_))
        ));
        let spec = CampaignSpec::new(CampaignMode::ReductionSoundness, "quantum");
        assert!(matches!(
            run_reduction_campaign(&spec),
            Err(CampaignError::UnknownSubject(_))
        ));
    }

    #[test]
    fn tiny_cycle_space_is_exhausted() {
        let mut spec = CampaignSpec::new(CampaignMode::SolverEquivalence, "cycle");
        spec.n_min = 3;
        spec.n_max = 4;
        spec.k_max = 4;
        spec.trials = 1;
        // 8 orientations x 10 pairs + 16 x 21 pairs.
        assert_eq!(
            exhaustive_space(GenClass::Cycle, 3, 4, 4),
            Some(8 * 10 + 16 * 21)
        );
        let r = run_equivalence_campaign(&spec).unwrap();
        assert_eq!(r.trials_run, 8 * 10 + 16 * 21);
        assert!(r.passed(), "{:#?}", r.mismatches);
    }

    #[test]
    fn sampled_campaigns_are_deterministic() {
        let mut spec = CampaignSpec::new(CampaignMode::SolverEquivalence, "cograph");
        spec.n_max = 7;
        spec.trials = 40;
        spec.seed = 11;
        let a = run_equivalence_campaign(&spec).unwrap();
        let b = run_equivalence_campaign(&spec).unwrap();
        assert_eq!(a.trials_run, b.trials_run);
        assert_eq!(a.truncated, b.truncated);
        assert_eq!(a.mismatches, b.mismatches);
        assert!(a.passed());
    }

    #[test]
    fn reduction_campaign_passes_on_bipartite() {
        let mut spec = CampaignSpec::new(CampaignMode::ReductionSoundness, "bipartite");
        spec.n_min = 2;
        spec.n_max = 6;
        spec.trials = 30;
        spec.seed = 5;
        let r = run_reduction_campaign(&spec).unwrap();
        assert!(r.trials_run > 0);
        assert!(r.passed(), "{:#?}", r.mismatches);
    }

    #[test]
    fn report_json_has_the_contract_fields() {
        let report = CampaignReport {
            trials_run: 7,
            mismatches: vec![CampaignMismatch {
                trial: 3,
                description: "answers differ".into(),
                instance_text: "p tsd 1 0\ns 0\nt 0\n".into(),
                map_text: None,
                paths: vec!["out/x.tsd".into()],
            }],
            truncated: 2,
            wall_time_ms: 12,
        };
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["trials_run"], 7);
        assert_eq!(v["mismatch_count"], 1);
        assert_eq!(v["mismatch_paths"][0], "out/x.tsd");
        assert_eq!(v["truncated"], 2);
        assert!(v["wall_time_ms"].is_u64());
    }
}
