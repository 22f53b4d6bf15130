//! `stabent`: entanglement entropy bounds for circuit files.
//!
//! Exit codes: 0 success, 1 I/O or internal failure, 2 malformed input
//! (circuit file, cut, parameters), 3 backend or size mismatch, 4 the
//! estimate was produced but the stabilizer-dimension promise was violated.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use stabent::distinguisher::{
    clifford_maximal_ensemble, product_ensemble, run_trials, single_t_ensemble, EnsembleSpec,
};
use stabent::estimator::{bounds_from_exact_group, estimate_from_state};
use stabent::{
    entanglement_entropy_oracle, simulate_circuit, simulate_clifford, weyl_group_from_tableau,
    weyl_group_oracle, Circuit, CliffordCircuit, Cut, Error, EstimatorParams,
    StabilizerGroupEstimate,
};

#[derive(Parser)]
#[command(name = "stabent", version, about = "Entanglement entropy bounds from stabilizer structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bound the entanglement entropy of a circuit's output state at a cut.
    Estimate(EstimateArgs),
    /// Exact entropy from the dense state vector.
    Oracle(OracleArgs),
    /// Print the unsigned stabilizer group as row-reduced Pauli strings.
    Weyl(WeylArgs),
    /// Run the high/low entropy distinguisher on built-in ensembles.
    Distinguish(DistinguishArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Backend {
    Auto,
    Tableau,
    Dense,
}

#[derive(clap::Args)]
struct EstimateArgs {
    circuit: PathBuf,
    /// Qubits in side A, 1-based and comma separated.
    #[arg(long)]
    cut: String,
    /// Sampling accuracy; defaults to 1/(8n).
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 1.0 / 3.0)]
    delta: f64,
    /// Promised deficit: dim Weyl(psi) >= n - k.
    #[arg(long, conflicts_with = "t")]
    k: Option<usize>,
    /// Non-Clifford gate budget; sets k = 2t.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Backend::Auto)]
    backend: Backend,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct OracleArgs {
    circuit: PathBuf,
    #[arg(long)]
    cut: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct WeylArgs {
    circuit: PathBuf,
    #[arg(long, value_enum, default_value_t = Backend::Auto)]
    backend: Backend,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Ensemble {
    CliffordMaximal,
    Product,
    SingleT,
}

#[derive(clap::Args)]
struct DistinguishArgs {
    #[arg(long, value_enum, default_value_t = Ensemble::CliffordMaximal)]
    high: Ensemble,
    #[arg(long, value_enum, default_value_t = Ensemble::SingleT)]
    low: Ensemble,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 1.0 / 3.0)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Omit per-trial records from the report.
    #[arg(long)]
    summary: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::NonClifford(_) => 3,
            Error::Parse { .. }
            | Error::QubitOutOfRange { .. }
            | Error::InvalidCut(_)
            | Error::InvalidPauliString(_)
            | Error::InvalidParameter(_)
            | Error::GapCondition { .. }
            | Error::DimensionMismatch { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn failure(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_circuit(path: &Path) -> CliResult<Circuit> {
    let text = fs::read_to_string(path)
        .map_err(|e| failure(1, format!("cannot read {}: {e}", path.display())))?;
    Ok(text.parse()?)
}

fn parse_cut(n: usize, spec: &str) -> CliResult<Cut> {
    let indices = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| failure(2, format!("invalid qubit index {s:?} in --cut")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Cut::from_one_based(n, &indices)?)
}

fn emit(body: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, body)
            .map_err(|e| failure(1, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Picks the backend for a circuit; T gates never reach the tableau.
fn resolve_backend(requested: Backend, circuit: &Circuit) -> CliResult<Backend> {
    match requested {
        Backend::Auto if circuit.is_clifford() => Ok(Backend::Tableau),
        Backend::Auto => Ok(Backend::Dense),
        Backend::Tableau if !circuit.is_clifford() => Err(failure(
            3,
            "tableau backend cannot simulate T or TDG gates; use --backend dense",
        )),
        other => Ok(other),
    }
}

#[derive(Serialize)]
struct EstimateReport {
    lower: f64,
    upper: f64,
    estimate: f64,
    #[serde(rename = "dim_S")]
    dim_s: usize,
    r: f64,
    samples_used: usize,
    epsilon: f64,
    delta: f64,
    k: usize,
    #[serde(rename = "cut_A")]
    cut_a: Vec<usize>,
    seed: u64,
    backend: Backend,
    promise_violated: bool,
}

fn run_estimate(args: &EstimateArgs) -> CliResult<()> {
    let circuit = read_circuit(&args.circuit)?;
    let n = circuit.n();
    let cut = parse_cut(n, &args.cut)?;
    let backend = resolve_backend(args.backend, &circuit)?;
    // k beyond n promises nothing more than k = n
    let k = args
        .k
        .or(args.t.map(|t| 2 * t))
        .unwrap_or(2 * circuit.t_count())
        .min(n);
    let epsilon = args.epsilon.unwrap_or(1.0 / (8.0 * n as f64));
    let params = EstimatorParams::new(epsilon, args.delta, k, args.seed)?;

    let bounds = match backend {
        Backend::Tableau => {
            let clifford = CliffordCircuit::try_from(circuit)?;
            let group = weyl_group_from_tableau(&simulate_clifford(&clifford));
            bounds_from_exact_group(&group, &cut)?
        }
        _ => estimate_from_state(&simulate_circuit(&circuit)?, &cut, &params)?,
    };
    let report = EstimateReport {
        lower: bounds.lower,
        upper: bounds.upper,
        estimate: bounds.estimate,
        dim_s: bounds.dim_s,
        r: bounds.r,
        samples_used: bounds.samples_used,
        epsilon,
        delta: args.delta,
        k,
        cut_a: cut.a_one_based(),
        seed: args.seed,
        backend,
        promise_violated: bounds.promise_violated,
    };
    emit(&to_json(&report), args.output.as_deref())?;
    if report.promise_violated {
        return Err(failure(
            4,
            format!("sampled group has dimension {} < n - k = {}", report.dim_s, n - k),
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct OracleReport {
    entropy: f64,
    n: usize,
    #[serde(rename = "cut_A")]
    cut_a: Vec<usize>,
}

fn run_oracle(args: &OracleArgs) -> CliResult<()> {
    let circuit = read_circuit(&args.circuit)?;
    let cut = parse_cut(circuit.n(), &args.cut)?;
    let psi = simulate_circuit(&circuit)?;
    let report = OracleReport {
        entropy: entanglement_entropy_oracle(&psi, &cut)?,
        n: circuit.n(),
        cut_a: cut.a_one_based(),
    };
    emit(&to_json(&report), args.output.as_deref())
}

fn run_weyl(args: &WeylArgs) -> CliResult<()> {
    let circuit = read_circuit(&args.circuit)?;
    let group: StabilizerGroupEstimate = match resolve_backend(args.backend, &circuit)? {
        Backend::Tableau => {
            weyl_group_from_tableau(&simulate_clifford(&CliffordCircuit::try_from(circuit)?))
        }
        _ => weyl_group_oracle(&simulate_circuit(&circuit)?)?,
    };
    let mut out = format!("dim {}\n", group.dim());
    for row in group.group().basis() {
        out.push_str(&format!("{row}\n"));
    }
    emit(&out, args.output.as_deref())
}

fn ensemble(kind: Ensemble, n: usize) -> CliResult<EnsembleSpec> {
    Ok(match kind {
        Ensemble::CliffordMaximal => clifford_maximal_ensemble(n)?,
        Ensemble::Product => product_ensemble(n)?,
        Ensemble::SingleT => single_t_ensemble(n)?,
    })
}

fn run_distinguish(args: &DistinguishArgs) -> CliResult<()> {
    let high = ensemble(args.high, args.n)?;
    let low = ensemble(args.low, args.n)?;
    let mut result = run_trials(&high, &low, args.trials, args.delta, args.seed)?;
    if args.summary {
        result.outcomes.clear();
    }
    emit(&to_json(&result), args.output.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Estimate(a) => run_estimate(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Weyl(a) => run_weyl(a),
        Command::Distinguish(a) => run_distinguish(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("stabent: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
