//! Command-line front end for `clonekit`. Every subcommand writes one JSON
//! document with the fields `command`, `inputs`, `result`, `residuals` and
//! `version`.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 numerical failure.

pub mod parse;
pub mod report;

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clonekit::analysis::{
    fidelity_report, ng_prepare_and_send_fidelity, optimize_ng, optimize_symmetric_phase_covariant,
    six_state_mixture_report, ClonerSpec, Party,
};
use clonekit::bell::{bell_family, signed_permutation_to_z};
use clonekit::covariance::{fapp_residual, strict_covariance_residual, strict_covariance_up_to_phase};
use clonekit::qstate::NUMERIC_TOL;
use clonekit::reducibility::{decompose_with_tol, drop_ancilla_test, necessity_probe};
use clonekit::{
    bell_overlap_table, equator_sweep, strict_covariance_by_theorem, BellLabel, BellSide, CloningAmplitudes,
    QubitBasis, C64,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::parse::{parse_basis, parse_basis_list, resolve_cloner, ClonerArgs, Cloner};
use crate::report::*;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Upper bound on `--equator-samples`.
pub const MAX_EQUATOR_SAMPLES: usize = 1 << 16;

/// Default tolerance for `optimize`.
pub const OPTIMIZE_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl From<clonekit::Error> for CliError {
    fn from(e: clonekit::Error) -> Self {
        use clonekit::Error::*;
        match e {
            NonConvergence { .. } | NotUnitary { .. } | NotOrthonormal { .. } | NotReducible | ImpossibleOutcome { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "clonekit", version, about = "Fidelity, covariance and reducibility reports for qubit cloning machines")]
pub struct Cli {
    /// Numerical tolerance override
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// JSON output (the only mode; accepted for scripts)
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Bell states of a basis and their overlaps with another basis
    Bell(BellArgs),
    /// Clone fidelities per basis and over the equator
    Fidelity(FidelityArgs),
    /// Strict and FAPP covariance between two bases or along the equator
    Covariance(CovarianceArgs),
    /// Reducibility conditions and the two-branch decomposition
    Reduce(ReduceArgs),
    /// Symmetric optimum of the phase-covariant family
    Optimize(OptimizeArgs),
    /// Mixture of three phase-covariant cloners against the six-state protocol
    SixState(SixStateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plain,
    Ab,
    Em,
}

impl From<Side> for BellSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Plain => BellSide::Plain,
            Side::Ab => BellSide::AB,
            Side::Em => BellSide::EM,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
pub struct BellArgs {
    #[arg(long, default_value = "z")]
    pub basis: String,
    #[arg(long, value_enum, default_value = "plain")]
    pub side: Side,
    /// Second basis for the overlap table
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub against: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
pub struct FidelityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub cloner: ClonerArgs,
    #[arg(long, default_value = "x,y,z")]
    pub bases: String,
    #[arg(long, default_value_t = 0)]
    pub equator_samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
pub struct CovarianceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub cloner: ClonerArgs,
    /// Exactly two bases
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<String>,
    /// Compare X with this many equatorial bases
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equator_samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub cloner: ClonerArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OptimizeFamily {
    Fggnp,
    Ng,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
pub struct OptimizeArgs {
    #[arg(long, value_enum, default_value = "fggnp")]
    pub family: OptimizeFamily,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
pub struct SixStateArgs {}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bell(_) => "bell",
            Command::Fidelity(_) => "fidelity",
            Command::Covariance(_) => "covariance",
            Command::Reduce(_) => "reduce",
            Command::Optimize(_) => "optimize",
            Command::SixState(_) => "six-state",
        }
    }

    fn inputs(&self) -> Result<Value, CliError> {
        let v = match self {
            Command::Bell(a) => serde_json::to_value(a),
            Command::Fidelity(a) => serde_json::to_value(a),
            Command::Covariance(a) => serde_json::to_value(a),
            Command::Reduce(a) => serde_json::to_value(a),
            Command::Optimize(a) => serde_json::to_value(a),
            Command::SixState(a) => serde_json::to_value(a),
        };
        v.map_err(|e| CliError::Numerical(e.to_string()))
    }

    /// Rebuilds a command from an envelope's `command` and `inputs`.
    pub fn from_inputs(name: &str, inputs: &Value) -> Result<Command, CliError> {
        fn de<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T, CliError> {
            serde_json::from_value(v.clone()).map_err(|e| CliError::Input(format!("bad inputs: {e}")))
        }
        Ok(match name {
            "bell" => Command::Bell(de(inputs)?),
            "fidelity" => Command::Fidelity(de(inputs)?),
            "covariance" => Command::Covariance(de(inputs)?),
            "reduce" => Command::Reduce(de(inputs)?),
            "optimize" => Command::Optimize(de(inputs)?),
            "six-state" => Command::SixState(de(inputs)?),
            other => return Err(CliError::Input(format!("unknown command {other:?}"))),
        })
    }
}

fn to_value<T: Serialize>(t: &T) -> Result<Value, CliError> {
    serde_json::to_value(t).map_err(|e| CliError::Numerical(e.to_string()))
}

fn check_tol(tol: Option<f64>) -> Result<Option<f64>, CliError> {
    match tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(CliError::Input(format!("--tol must be positive, got {t}"))),
        t => Ok(t),
    }
}

fn check_samples(n: usize) -> Result<usize, CliError> {
    if n > MAX_EQUATOR_SAMPLES {
        return Err(CliError::Input(format!("--equator-samples at most {MAX_EQUATOR_SAMPLES}, got {n}")));
    }
    Ok(n)
}

fn cerf_only(cloner: Cloner, command: &str) -> Result<CloningAmplitudes, CliError> {
    match cloner {
        Cloner::Cerf(a) => Ok(a),
        Cloner::Ng(_) => Err(CliError::Input(format!(
            "{command} needs a cloner given by amplitudes (fggnp, universal or custom), not ng"
        ))),
    }
}

type Outcome = (Value, BTreeMap<String, f64>);

fn bell(args: &BellArgs) -> Result<Outcome, CliError> {
    let basis = parse_basis(&args.basis)?;
    let side = BellSide::from(args.side);
    let family = bell_family(side, &basis);
    let mut states = Vec::with_capacity(4);
    let mut orthonormality: f64 = 0.0;
    for (i, s) in family.iter().enumerate() {
        let label = BellLabel::from_index(i, side)?;
        states.push(BellStateEntry {
            m: label.m(),
            n: label.n(),
            index: i,
            amplitudes: s.amplitudes().to_vec(),
        });
        for (j, t) in family.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            orthonormality = orthonormality.max((s.inner(t)? - C64::new(want, 0.0)).norm());
        }
    }
    let (against, overlap_table) = match &args.against {
        Some(b) => {
            let other = parse_basis(b)?;
            let t = bell_overlap_table(&basis, &other);
            let rows = (0..4).map(|i| (0..4).map(|j| t[(i, j)]).collect()).collect();
            (Some(other.label().to_string()), Some(rows))
        }
        None => (None, None),
    };
    let result = BellResult {
        basis: basis.label().to_string(),
        side: format!("{:?}", args.side).to_lowercase(),
        states,
        against,
        overlap_table,
        signed_permutation_to_z: signed_permutation_to_z(&basis),
    };
    Ok((to_value(&result)?, BTreeMap::from([("orthonormality".to_string(), orthonormality)])))
}

fn fidelity(args: &FidelityArgs) -> Result<Outcome, CliError> {
    let cloner = resolve_cloner(&args.cloner)?;
    let bases = parse_basis_list(&args.bases)?;
    let samples = check_samples(args.equator_samples)?;
    let spec = match cloner {
        Cloner::Cerf(a) => ClonerSpec::Cerf(a),
        Cloner::Ng(alpha) => ClonerSpec::Ng(alpha),
    };
    let report = fidelity_report(&spec, &bases, samples)?;
    let mut residuals = BTreeMap::new();
    if let ClonerSpec::Ng(alpha) = spec {
        // correlated picture against prepare-and-send
        let mut dev: f64 = 0.0;
        for b in &bases {
            for party in [Party::Bob, Party::Eve] {
                dev = dev.max((spec.fidelity(b, party)? - ng_prepare_and_send_fidelity(alpha, b, party)?).abs());
            }
        }
        residuals.insert("prepare_and_send".to_string(), dev);
    }
    Ok((to_value(&report)?, residuals))
}

fn covariance(args: &CovarianceArgs, tol: f64) -> Result<Outcome, CliError> {
    let a = cerf_only(resolve_cloner(&args.cloner)?, "covariance")?;
    if args.bases.is_none() && args.equator_samples.is_none() {
        return Err(CliError::Input("covariance needs --bases b1,b2 or --equator-samples".into()));
    }
    let mut residuals = BTreeMap::new();
    let pair = match &args.bases {
        Some(s) => {
            let bases = parse_basis_list(s)?;
            let [b1, b2] = &bases[..] else {
                return Err(CliError::Input(format!("--bases needs exactly two bases, got {}", bases.len())));
            };
            let verdict = strict_covariance_by_theorem(&a, b1, b2);
            let strict_residual = strict_covariance_residual(&a, b1, b2);
            residuals.insert("strict".to_string(), strict_residual);
            residuals.insert("fapp".to_string(), fapp_residual(&a, b1, b2));
            Some(PairVerdict {
                bases: [b1.label().to_string(), b2.label().to_string()],
                strict: verdict.strict,
                fapp: verdict.fapp,
                violated_pairs: verdict.violated_pairs,
                strict_direct: strict_residual <= tol,
                strict_up_to_phase: strict_covariance_up_to_phase(&a, b1, b2),
            })
        }
        None => None,
    };
    let sweep = match args.equator_samples {
        Some(n) => {
            let (_, worst) = equator_sweep(&a, check_samples(n)?)?;
            residuals.insert("equator".to_string(), worst);
            Some(EquatorSweep {
                samples: n,
                all_strict: worst <= tol,
                worst_residual: worst,
            })
        }
        None => None,
    };
    let result = CovarianceResult {
        amplitudes: a.entries(),
        pair,
        equator_sweep: sweep,
    };
    Ok((to_value(&result)?, residuals))
}

fn reduce(args: &ReduceArgs, tol: f64) -> Result<Outcome, CliError> {
    let a = cerf_only(resolve_cloner(&args.cloner)?, "reduce")?;
    let report = decompose_with_tol(&a, tol)?;
    let mut drop = BTreeMap::new();
    for b in [QubitBasis::z(), QubitBasis::x(), QubitBasis::y()] {
        drop.insert(b.label().to_string(), drop_ancilla_test(&a, &b)?);
    }
    let probe = (!report.reducible).then(|| necessity_probe(&a).into());
    let mut residuals = BTreeMap::new();
    if let Some(r) = report.residual {
        residuals.insert("reconstruction".to_string(), r);
        if r > tol {
            return Err(CliError::Numerical(format!(
                "reconstruction residual {r:e} exceeds tolerance {tol:e}"
            )));
        }
    }
    let result = ReducibilityResult::new(a.entries(), &report, drop, probe);
    Ok((to_value(&result)?, residuals))
}

fn optimize(args: &OptimizeArgs, tol: f64) -> Result<Outcome, CliError> {
    let optimal = 0.5 + 1.0 / 8f64.sqrt();
    let (value, fidelity) = match args.family {
        OptimizeFamily::Fggnp => {
            let o = optimize_symmetric_phase_covariant(tol)?;
            (to_value(&o)?, o.fidelity)
        }
        OptimizeFamily::Ng => {
            let o = optimize_ng(tol)?;
            (to_value(&o)?, o.fidelity)
        }
    };
    Ok((value, BTreeMap::from([("distance_to_optimum".to_string(), (fidelity - optimal).abs())])))
}

fn six_state() -> Result<Outcome, CliError> {
    let r = six_state_mixture_report()?;
    let weights: f64 = r.components.iter().map(|c| c.weight).sum();
    Ok((to_value(&r)?, BTreeMap::from([("weights".to_string(), (weights - 1.0).abs())])))
}

/// Runs one command and wraps the outcome in an [`Envelope`].
pub fn execute(command: &Command, tol: Option<f64>) -> Result<Envelope, CliError> {
    let tol = check_tol(tol)?;
    let (result, residuals) = match command {
        Command::Bell(a) => bell(a)?,
        Command::Fidelity(a) => fidelity(a)?,
        Command::Covariance(a) => covariance(a, tol.unwrap_or(NUMERIC_TOL))?,
        Command::Reduce(a) => reduce(a, tol.unwrap_or(NUMERIC_TOL))?,
        Command::Optimize(a) => optimize(a, tol.unwrap_or(OPTIMIZE_TOL))?,
        Command::SixState(_) => six_state()?,
    };
    let mut inputs = command.inputs()?;
    if let (Some(t), Value::Object(map)) = (tol, &mut inputs) {
        map.insert("tol".to_string(), Value::from(t));
    }
    Ok(Envelope {
        command: command.name().to_string(),
        inputs,
        result,
        residuals,
        version: VERSION.to_string(),
    })
}

/// Parses an emitted document and recomputes it from its `inputs`.
pub fn replay(document: &str) -> Result<Envelope, CliError> {
    let env: Envelope = serde_json::from_str(document).map_err(|e| CliError::Input(format!("bad document: {e}")))?;
    let command = Command::from_inputs(&env.command, &env.inputs)?;
    let tol = match env.inputs.get("tol") {
        None => None,
        Some(v) => Some(v.as_f64().ok_or_else(|| CliError::Input("tol is not a number".into()))?),
    };
    execute(&command, tol)
}

/// Entry point shared by the binary and the tests. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(&cli.command, cli.tol) {
        Ok(envelope) => match serde_json::to_string_pretty(&envelope) {
            Ok(doc) => {
                let _ = writeln!(out, "{doc}");
                0
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
