//! Command-line front end.
//!
//! Every subcommand writes JSON (or CSV for `sample`) to stdout or `--out`.
//! Exit codes: 0 success, 1 usage error, 2 data error.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classical::{classical_bound, margin_report};
use crate::counts::{parse_counts, parse_counts_json, probabilities, sample_counts, serialize_counts, witness_from_counts, CountRecord};
use crate::entanglement::{classify_by_fidelity, fidelity_ceiling, rank_signature, ExcludedClass, RankSignature, DEFAULT_RANK_TOL, PAIR_CUTS};
use crate::error::{Error, Result};
use crate::mbqc::{branch_report, single_rotation_pattern, table_average, table_single, table_two_qubit, target_single, target_two_qubit, two_qubit_pattern, GateInstruction, MeasurementPattern, TableRow};
use crate::noise::{apply_noise, fit_white_p, NoiseSpec};
use crate::schmidt::schmidt_coefficients;
use crate::state::{fidelity, DensityMatrix, NamedState, PureState};
use crate::witness::{build_b2, build_b4, required_settings, witness_expectation, ObservableSum, TomographicSetting};

/// Instructions closer than this to a table row are scored against its listed ket.
const ROW_MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "clustersim", version, about = "Four-qubit cluster-state simulator")]
struct Cli {
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fidelity bounds from the two witness operators.
    Witness {
        /// Noise applied to the state, e.g. `white:0.86` or `dephase:0.05:1,2`.
        #[arg(long)]
        noise: Option<NoiseSpec>,
        /// Named four-qubit state to evaluate.
        #[arg(long, default_value = "cluster4")]
        state: NamedState,
        /// Read counts from a CSV (or `.json`) file instead of simulating.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["noise", "state"])]
        counts: Option<PathBuf>,
    },
    /// Schmidt-rank signatures and fidelity ceilings.
    Schmidt {
        /// States to report (repeatable); defaults to cluster4, ghz4, w4, dicke4.
        #[arg(long = "state")]
        states: Vec<NamedState>,
        /// Cutoff on Schmidt coefficients.
        #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
        tol: f64,
        /// Also list the classes excluded by this cluster-state fidelity.
        #[arg(long)]
        fidelity: Option<f64>,
    },
    /// Run the measurement patterns over their instruction tables.
    Mbqc {
        #[arg(long, value_enum, default_value_t = Task::All)]
        task: Task,
        /// Custom instruction angle (radians, or pi, pi/2, -pi/2, ...).
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        beta: Option<f64>,
        /// Noise applied to the cluster resource.
        #[arg(long)]
        noise: Option<NoiseSpec>,
    },
    /// Classical preparation bounds and their optimal groupings.
    Bounds {
        #[arg(long, value_enum, default_value_t = Task::All)]
        task: Task,
        /// Classical bits available to the preparer.
        #[arg(long, default_value_t = 2)]
        bits: u32,
    },
    /// Synthesize coincidence counts.
    Sample {
        #[arg(long, default_value = "cluster4")]
        state: NamedState,
        #[arg(long)]
        noise: Option<NoiseSpec>,
        /// Events per setting.
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        /// Setting k uses seed + k.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated settings; defaults to those needed by the four-setting witness.
        #[arg(long, value_delimiter = ',')]
        settings: Vec<TomographicSetting>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Witness bounds with error bars from a counts file.
    Ingest {
        #[arg(long, value_name = "FILE")]
        counts: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Task {
    TwoQubit,
    Single,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Radians, or a multiple of pi such as `pi`, `-pi/2`, `3pi/4`, `0.5*pi`.
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace(' ', "");
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let bad = || format!("invalid angle `{s}`");
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, b.parse::<f64>().map_err(|_| bad())?),
        None => (t.as_str(), 1.0),
    };
    let factor = num.strip_suffix("pi").ok_or_else(bad)?;
    let factor = factor.strip_suffix('*').unwrap_or(factor);
    let k = match factor {
        "" | "+" => 1.0,
        "-" => -1.0,
        f => f.parse::<f64>().map_err(|_| bad())?,
    };
    if den == 0.0 {
        return Err(bad());
    }
    Ok(k * PI / den)
}

#[derive(Serialize)]
struct WitnessValue {
    name: &'static str,
    bound: f64,
    sigma: f64,
    settings: Vec<TomographicSetting>,
}

#[derive(Serialize)]
struct WitnessReport {
    source: &'static str,
    state: Option<&'static str>,
    noise: Option<String>,
    witnesses: Vec<WitnessValue>,
    /// Exact fidelity to the cluster state, when simulating.
    fidelity: Option<f64>,
    /// Classes ruled out by the largest bound.
    excluded: Vec<ExcludedClass>,
    /// White-noise weight matching the four-setting bound.
    white_noise_p: Option<f64>,
}

#[derive(Serialize)]
struct RecordSummary {
    setting: TomographicSetting,
    total: u64,
    probabilities: Vec<f64>,
}

#[derive(Serialize)]
struct IngestReport {
    records: Vec<RecordSummary>,
    #[serde(flatten)]
    witness: WitnessReport,
}

#[derive(Serialize)]
struct StateSignature {
    name: &'static str,
    signature: RankSignature,
    coefficients: Vec<CutCoefficients>,
}

#[derive(Serialize)]
struct CutCoefficients {
    cut: String,
    values: Vec<f64>,
}

#[derive(Serialize)]
struct Ceiling {
    cut: String,
    k: usize,
    value: f64,
}

#[derive(Serialize)]
struct SchmidtReport {
    tol: f64,
    states: Vec<StateSignature>,
    cluster_ceilings: Vec<Ceiling>,
    fidelity: Option<f64>,
    excluded: Option<Vec<ExcludedClass>>,
}

#[derive(Serialize)]
struct MbqcRow {
    task: Task,
    alpha: f64,
    beta: f64,
    /// Listed ket the output is scored against, or `circuit` for a custom instruction.
    target: String,
    branch_fidelities: Vec<f64>,
    branch_probabilities: Vec<f64>,
    mean_fidelity: f64,
    corrections: std::collections::BTreeMap<String, String>,
    reported_fidelity: Option<f64>,
    reported_error: Option<f64>,
}

#[derive(Serialize)]
struct TableSummary {
    task: Task,
    mean_fidelity: f64,
    reported_mean: f64,
    reported_error: f64,
    classical_bound: f64,
    margin_sigma: f64,
}

#[derive(Serialize)]
struct MbqcReport {
    noise: Option<String>,
    rows: Vec<MbqcRow>,
    tables: Vec<TableSummary>,
}

#[derive(Serialize)]
struct BoundRow {
    task: Task,
    bits: u32,
    bound: f64,
    /// 1-based row numbers of the instruction table.
    groups: Vec<Vec<usize>>,
    prepared_states: Vec<PureState>,
    reported_mean: f64,
    reported_error: f64,
    margin_sigma: f64,
}

#[derive(Serialize)]
struct BoundsReport {
    results: Vec<BoundRow>,
}

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Command::Schmidt { tol, .. } = &cli.command {
        if !(*tol > 0.0) {
            let _ = writeln!(err, "error: --tol must be positive");
            return 1;
        }
    }
    match dispatch(&cli.command) {
        Ok(text) => match &cli.out {
            Some(path) => match std::fs::write(path, text) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    2
                }
            },
            None => {
                let _ = out.write_all(text.as_bytes());
                0
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn dispatch(cmd: &Command) -> Result<String> {
    match cmd {
        Command::Witness { noise, state, counts } => match counts {
            Some(path) => Ok(to_json(&witness_report_from_counts(&read_counts(path)?)?)),
            None => Ok(to_json(&witness_report_from_state(*state, noise.as_ref())?)),
        },
        Command::Schmidt { states, tol, fidelity } => Ok(to_json(&schmidt_report(states, *tol, *fidelity)?)),
        Command::Mbqc { task, alpha, beta, noise } => Ok(to_json(&mbqc_report(*task, *alpha, *beta, noise.as_ref())?)),
        Command::Bounds { task, bits } => Ok(to_json(&bounds_report(*task, *bits)?)),
        Command::Sample {
            state,
            noise,
            shots,
            seed,
            settings,
            format,
        } => {
            let rho = noisy(&state.state(), noise.as_ref())?;
            let settings = if settings.is_empty() { required_settings(&build_b4()) } else { settings.clone() };
            let records = settings
                .iter()
                .enumerate()
                .map(|(k, s)| sample_counts(&rho, s, *shots, seed.wrapping_add(k as u64)))
                .collect::<Result<Vec<_>>>()?;
            match format {
                Format::Csv => serialize_counts(&records),
                Format::Json => Ok(to_json(&records)),
            }
        }
        Command::Ingest { counts } => {
            let records = read_counts(counts)?;
            let summaries = records
                .iter()
                .map(|r| {
                    Ok(RecordSummary {
                        setting: r.setting.clone(),
                        total: r.total(),
                        probabilities: probabilities(r)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(to_json(&IngestReport {
                records: summaries,
                witness: witness_report_from_counts(&records)?,
            }))
        }
    }
}

fn read_counts(path: &Path) -> Result<Vec<CountRecord>> {
    let text = std::fs::read_to_string(path)?;
    let records = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        parse_counts_json(&text)?
    } else {
        parse_counts(&text)?
    };
    if records.is_empty() {
        return Err(Error::Empty("counts file"));
    }
    Ok(records)
}

fn noisy(state: &PureState, noise: Option<&NoiseSpec>) -> Result<DensityMatrix> {
    match noise {
        Some(spec) => apply_noise(state, spec),
        None => Ok(state.to_density()),
    }
}

fn witnesses() -> [(&'static str, ObservableSum); 2] {
    [("B2", build_b2()), ("B4", build_b4())]
}

fn summarize(source: &'static str, state: Option<&'static str>, noise: Option<String>, values: Vec<WitnessValue>, fid: Option<f64>) -> Result<WitnessReport> {
    let best = values.iter().map(|w| w.bound).fold(f64::NEG_INFINITY, f64::max);
    let excluded = classify_by_fidelity(best.clamp(0.0, 1.0))?;
    let white_noise_p = values.iter().find(|w| w.name == "B4").and_then(|w| fit_white_p(w.bound).ok());
    Ok(WitnessReport {
        source,
        state,
        noise,
        witnesses: values,
        fidelity: fid,
        excluded,
        white_noise_p,
    })
}

fn witness_report_from_state(state: NamedState, noise: Option<&NoiseSpec>) -> Result<WitnessReport> {
    let psi = state.state();
    let rho = noisy(&psi, noise)?;
    let values = witnesses()
        .into_iter()
        .map(|(name, b)| {
            Ok(WitnessValue {
                name,
                bound: witness_expectation(&rho, &b)?,
                sigma: 0.0,
                settings: required_settings(&b),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let fid = fidelity(&rho, &crate::state::cluster4())?;
    summarize("state", Some(state.name()), noise.map(|n| n.to_string()), values, Some(fid))
}

/// Witnesses whose settings are all present; errors if none is.
fn witness_report_from_counts(records: &[CountRecord]) -> Result<WitnessReport> {
    let mut values = Vec::new();
    let mut last_err = None;
    for (name, b) in witnesses() {
        match witness_from_counts(records, &b) {
            Ok((bound, sigma)) => values.push(WitnessValue {
                name,
                bound,
                sigma,
                settings: required_settings(&b),
            }),
            Err(e @ Error::MissingSetting(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    if values.is_empty() {
        return Err(last_err.unwrap_or(Error::Empty("witness settings")));
    }
    summarize("counts", None, None, values, None)
}

fn cut_name(cut: &[usize]) -> String {
    cut.iter().map(|q| q.to_string()).collect()
}

fn schmidt_report(states: &[NamedState], tol: f64, fid: Option<f64>) -> Result<SchmidtReport> {
    let defaults = [NamedState::Cluster4, NamedState::Ghz4, NamedState::W4, NamedState::Dicke4];
    let chosen: &[NamedState] = if states.is_empty() { &defaults } else { states };
    let mut out = Vec::new();
    for &s in chosen {
        let psi = s.state();
        let coefficients = PAIR_CUTS
            .iter()
            .map(|cut| {
                Ok(CutCoefficients {
                    cut: cut_name(cut),
                    values: schmidt_coefficients(&psi, cut)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(StateSignature {
            name: s.name(),
            signature: rank_signature(&psi, tol)?,
            coefficients,
        });
    }
    let c4 = crate::state::cluster4();
    let mut ceilings = Vec::new();
    for cut in &PAIR_CUTS {
        for k in 1..=4 {
            ceilings.push(Ceiling {
                cut: cut_name(cut),
                k,
                value: fidelity_ceiling(&c4, cut, k)?,
            });
        }
    }
    Ok(SchmidtReport {
        tol,
        states: out,
        cluster_ceilings: ceilings,
        fidelity: fid,
        excluded: fid.map(classify_by_fidelity).transpose()?,
    })
}

struct TaskSpec {
    task: Task,
    rows: Vec<TableRow>,
    pattern: fn(GateInstruction) -> Result<MeasurementPattern>,
    target: fn(GateInstruction) -> PureState,
}

fn task_specs(task: Task) -> Vec<TaskSpec> {
    let two = || TaskSpec {
        task: Task::TwoQubit,
        rows: table_two_qubit(),
        pattern: two_qubit_pattern,
        target: target_two_qubit,
    };
    let single = || TaskSpec {
        task: Task::Single,
        rows: table_single(),
        pattern: single_rotation_pattern,
        target: target_single,
    };
    match task {
        Task::TwoQubit => vec![two()],
        Task::Single => vec![single()],
        Task::All => vec![two(), single()],
    }
}

fn angles_match(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d) < ROW_MATCH_TOL
}

fn mbqc_row(spec: &TaskSpec, instr: GateInstruction, resource: &DensityMatrix) -> Result<MbqcRow> {
    let listed = spec
        .rows
        .iter()
        .find(|r| angles_match(r.instruction.alpha, instr.alpha) && angles_match(r.instruction.beta, instr.beta));
    let (label, ket) = match listed {
        Some(r) => (r.label.to_string(), r.ket.clone()),
        None => ("circuit".to_string(), (spec.target)(instr)),
    };
    let pattern = (spec.pattern)(instr)?;
    let report = branch_report(&pattern, resource, &ket)?;
    Ok(MbqcRow {
        task: spec.task,
        alpha: instr.alpha,
        beta: instr.beta,
        target: label,
        branch_fidelities: report.branch_fidelities,
        branch_probabilities: report.branch_probabilities,
        mean_fidelity: report.mean_fidelity,
        corrections: pattern.corrections_by_outcome(),
        reported_fidelity: listed.map(|r| r.reported_fidelity),
        reported_error: listed.map(|r| r.reported_error),
    })
}

fn mbqc_report(task: Task, alpha: Option<f64>, beta: Option<f64>, noise: Option<&NoiseSpec>) -> Result<MbqcReport> {
    let resource = noisy(&crate::state::cluster4(), noise)?;
    let custom = (alpha.is_some() || beta.is_some()).then(|| GateInstruction::new(alpha.unwrap_or(0.0), beta.unwrap_or(0.0)));
    let mut rows = Vec::new();
    let mut tables = Vec::new();
    for spec in task_specs(task) {
        match custom {
            Some(instr) => rows.push(mbqc_row(&spec, instr, &resource)?),
            None => {
                let start = rows.len();
                for r in &spec.rows {
                    rows.push(mbqc_row(&spec, r.instruction, &resource)?);
                }
                let simulated = rows[start..].iter().map(|r| r.mean_fidelity).sum::<f64>() / spec.rows.len() as f64;
                let (mean, err) = table_average(&spec.rows);
                let targets: Vec<PureState> = spec.rows.iter().map(|r| r.ket.clone()).collect();
                let (bound, _) = classical_bound(&targets, 2)?;
                tables.push(TableSummary {
                    task: spec.task,
                    mean_fidelity: simulated,
                    reported_mean: mean,
                    reported_error: err,
                    classical_bound: bound,
                    margin_sigma: margin_report(mean, err, bound)?,
                });
            }
        }
    }
    Ok(MbqcReport {
        noise: noise.map(|n| n.to_string()),
        rows,
        tables,
    })
}

fn bounds_report(task: Task, bits: u32) -> Result<BoundsReport> {
    let mut results = Vec::new();
    for spec in task_specs(task) {
        let targets: Vec<PureState> = spec.rows.iter().map(|r| r.ket.clone()).collect();
        let (bound, strategy) = classical_bound(&targets, bits)?;
        let (mean, err) = table_average(&spec.rows);
        results.push(BoundRow {
            task: spec.task,
            bits,
            bound,
            groups: strategy.groups.iter().map(|g| g.iter().map(|i| i + 1).collect()).collect(),
            prepared_states: strategy.prepared_states,
            reported_mean: mean,
            reported_error: err,
            margin_sigma: margin_report(mean, err, bound)?,
        });
    }
    Ok(BoundsReport { results })
}
