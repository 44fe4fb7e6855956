//! Command-line front end: solve, transform, lift, project, generate and
//! verify token-sliding instances stored as `.tsd` files.
//!
//! Exit codes keep answers scriptable: 0 yes/success, 1 no answer or
//! campaign mismatch, 2 usage or input error, 3 resource limit exceeded,
//! 4 internal invariant failure.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tokenslide::campaign::{
    run_equivalence_campaign, run_reduction_campaign, CampaignError, CampaignMode, CampaignSpec,
};
use tokenslide::classify::classify;
use tokenslide::generate::{generate_instance, GenClass, GenError, GenSpec};
use tokenslide::instance::{
    parse_instance, parse_witness, serialize_instance, serialize_witness, Instance,
    ReconfSequence,
};
use tokenslide::reduction::{
    lift_sequence, parse_artifact, project_sequence, reduce_bipartite, reduce_planar,
    reduce_split, serialize_artifact, ReductionArtifact, ReductionError, ReductionPolicy,
};
use tokenslide::solver::{
    solve_auto, solve_cograph, solve_cycle, solve_exact, solve_path_forest, SearchLimits,
    SolveError,
};

const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMIT: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "tokenslide",
    version,
    about = "Token sliding reconfiguration on oriented graphs",
    after_help = "Exit codes: 0 yes/success, 1 no/mismatch, 2 usage or input error, \
                  3 resource limit, 4 internal failure."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide an instance; prints `yes` or `no`.
    Solve {
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Print a reconfiguration sequence after a yes.
        #[arg(long)]
        witness: bool,
        /// Abort the exact search beyond this many expanded configurations.
        #[arg(long)]
        max_states: Option<u64>,
        file: PathBuf,
    },
    /// Transform an instance; writes the image and optionally its map.
    Reduce {
        #[arg(long, value_enum)]
        kind: Kind,
        /// `lex` or `seed:<n>`.
        #[arg(long, default_value = "lex", value_parser = parse_policy)]
        policy: ReductionPolicy,
        input: PathBuf,
        output: PathBuf,
        /// Sidecar map file enabling later lift/project runs.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Translate an original witness into one valid on the reduced instance.
    Lift {
        #[arg(long)]
        map: PathBuf,
        original: PathBuf,
        witness: PathBuf,
    },
    /// Translate a reduced-instance witness back to the original.
    Project {
        #[arg(long)]
        map: PathBuf,
        reduced: PathBuf,
        witness: PathBuf,
    },
    /// Generate a seeded instance.
    Gen {
        #[arg(long, value_enum)]
        class: Class,
        #[arg(long)]
        n: u32,
        /// Token count; classes placing maximum independent sets ignore it.
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a differential campaign; prints a JSON report.
    Verify {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Solver name (cycle, path_forest, cograph, auto) or reduction
        /// kind (planar, split, bipartite).
        #[arg(long)]
        subject: String,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        nmax: Option<u32>,
        /// `lex` or `seed:<n>`; reduction campaigns only.
        #[arg(long, default_value = "lex", value_parser = parse_policy)]
        policy: ReductionPolicy,
        /// Persist counterexample files into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Auto,
    Exact,
    Cycle,
    Path,
    Cograph,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Planar,
    Split,
    Bipartite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Solver,
    Reduction,
}

/// Value names match the library's class names (`path_forest`, ...).
#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Class {
    Cycle,
    PathForest,
    Cograph,
    Split,
    BipartiteSubcubicMaxIs,
    SubcubicMaxIs,
    Arbitrary,
}

impl From<Class> for GenClass {
    fn from(c: Class) -> GenClass {
        match c {
            Class::Cycle => GenClass::Cycle,
            Class::PathForest => GenClass::PathForest,
            Class::Cograph => GenClass::Cograph,
            Class::Split => GenClass::Split,
            Class::BipartiteSubcubicMaxIs => GenClass::BipartiteSubcubicMaxIs,
            Class::SubcubicMaxIs => GenClass::SubcubicMaxIs,
            Class::Arbitrary => GenClass::Arbitrary,
        }
    }
}

fn parse_policy(s: &str) -> Result<ReductionPolicy, String> {
    if s == "lex" {
        return Ok(ReductionPolicy::Lexicographic);
    }
    if let Some(n) = s.strip_prefix("seed:") {
        return n
            .parse()
            .map(ReductionPolicy::Seeded)
            .map_err(|e| format!("bad policy seed '{n}': {e}"));
    }
    Err(format!("expected 'lex' or 'seed:<n>', got '{s}'"))
}

/// An error that already knows its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl fmt::Display) -> Failure {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Failure {
        let code = match e {
            SolveError::StateLimitExceeded { .. } => EXIT_LIMIT,
            SolveError::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Failure {
        let code = match e {
            ReductionError::InternalLiftFailure(_)
            | ReductionError::InternalProjectFailure(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Failure {
        Failure::usage(e)
    }
}

impl From<CampaignError> for Failure {
    fn from(e: CampaignError) -> Failure {
        let code = match e {
            CampaignError::UnknownSubject(_) => EXIT_USAGE,
            CampaignError::Io(_) => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read_to_string(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read_to_string(path)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_artifact(path: &Path) -> Result<ReductionArtifact, Failure> {
    parse_artifact(&read_to_string(path)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// A `no` witness carries no moves to translate.
fn load_yes_witness(path: &Path) -> Result<ReconfSequence, Failure> {
    let parsed = parse_witness(&read_to_string(path)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parsed.ok_or_else(|| {
        Failure::usage(format!("{}: witness answers no; nothing to translate", path.display()))
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Solve { algo, witness, max_states, file } => {
            let i = load_instance(&file)?;
            let mut limits = SearchLimits::default();
            if let Some(m) = max_states {
                limits.max_states = m;
            }
            let r = match algo {
                Algo::Auto => solve_auto(&i, limits, witness)?,
                Algo::Exact => solve_exact(&i, limits, witness)?,
                Algo::Cycle => solve_cycle(&i, witness)?,
                Algo::Path => solve_path_forest(&i, witness)?,
                Algo::Cograph => solve_cograph(&i, witness)?,
            };
            if witness {
                print!("{}", serialize_witness(r.witness.as_ref()));
            } else {
                println!("{}", if r.answer { "yes" } else { "no" });
            }
            Ok(if r.answer { 0 } else { EXIT_NO })
        }
        Cmd::Reduce { kind, policy, input, output, map } => {
            let i = load_instance(&input)?;
            let (reduced, artifact) = match kind {
                Kind::Planar => reduce_planar(&i, &policy)?,
                Kind::Bipartite => reduce_bipartite(&i, &policy)?,
                Kind::Split => {
                    let partition = classify(i.graph()).split_partition.ok_or_else(|| {
                        Failure::usage("input graph admits no split partition")
                    })?;
                    reduce_split(&i, &partition, &policy)?
                }
            };
            for warning in &artifact.warnings {
                eprintln!("warning: {warning}");
            }
            write_file(&output, &serialize_instance(&reduced))?;
            if let Some(map_path) = map {
                write_file(&map_path, &serialize_artifact(&artifact))?;
            }
            Ok(0)
        }
        Cmd::Lift { map, original, witness } => {
            let artifact = load_artifact(&map)?;
            let i = load_instance(&original)?;
            let seq = load_yes_witness(&witness)?;
            let lifted = lift_sequence(&artifact, &i, &seq)?;
            print!("{}", serialize_witness(Some(&lifted)));
            Ok(0)
        }
        Cmd::Project { map, reduced, witness } => {
            let artifact = load_artifact(&map)?;
            let i = load_instance(&reduced)?;
            let seq = load_yes_witness(&witness)?;
            let projected = project_sequence(&artifact, &i, &seq)?;
            print!("{}", serialize_witness(Some(&projected)));
            Ok(0)
        }
        Cmd::Gen { class, n, k, seed, output } => {
            let spec = GenSpec {
                class: class.into(),
                vertex_count: n,
                token_count: k,
                seed,
            };
            let text = serialize_instance(&generate_instance(&spec)?);
            match output {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Cmd::Verify { mode, subject, trials, seed, nmax, policy, out } => {
            let campaign_mode = match mode {
                Mode::Solver => CampaignMode::SolverEquivalence,
                Mode::Reduction => CampaignMode::ReductionSoundness,
            };
            let mut spec = CampaignSpec::new(campaign_mode, &subject);
            spec.trials = trials;
            spec.seed = seed;
            spec.policy = policy;
            spec.output_dir = out;
            if let Some(n) = nmax {
                spec.n_max = n;
            }
            let report = match mode {
                Mode::Solver => run_equivalence_campaign(&spec)?,
                Mode::Reduction => run_reduction_campaign(&spec)?,
            };
            println!("{}", report.to_json());
            Ok(if report.passed() { 0 } else { EXIT_NO })
        }
    }
}
