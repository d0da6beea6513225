//! One-way gate patterns on the four-qubit cluster.
//!
//! A pattern measures some qubits of the resource in order, then applies a
//! Pauli correction to the remaining (output) qubits chosen by the observed
//! outcome string. Corrections are not transcribed from anywhere; they are
//! found by simulating every branch and searching the Pauli group for the
//! word that maps the branch output onto the circuit-model target.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::LocalBasis;
use crate::error::{Error, Result};
use crate::gates::{apply_gate, apply_gate_mixed, Gate};
use crate::measure::{measure, measure_mixed, Select};
use crate::pauli::{Pauli, PauliWord};
use crate::state::{cluster4, fidelity, named_state, DensityMatrix, PureState, QuantumState};

/// Threshold for accepting a Pauli correction.
pub const CORRECTION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GateInstruction {
    pub alpha: f64,
    pub beta: f64,
}

impl GateInstruction {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementStep {
    pub qubit: usize,
    pub basis: LocalBasis,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementPattern {
    pub resource_size: usize,
    pub steps: Vec<MeasurementStep>,
    pub output_qubits: Vec<usize>,
    /// Indexed by the outcome string read as a binary number, first step most significant.
    pub corrections: Vec<PauliWord>,
}

fn outcome_bits(branch: usize, len: usize) -> Vec<u8> {
    (0..len).map(|k| ((branch >> (len - 1 - k)) & 1) as u8).collect()
}

fn outcome_index(outcomes: &[u8]) -> usize {
    outcomes.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

pub fn bitstring(outcomes: &[u8]) -> String {
    outcomes.iter().map(|b| char::from(b'0' + b)).collect()
}

fn validate_layout(resource_size: usize, steps: &[MeasurementStep], outputs: &[usize]) -> Result<()> {
    let mut seen = vec![false; resource_size + 1];
    for q in steps.iter().map(|s| s.qubit).chain(outputs.iter().copied()) {
        if q == 0 || q > resource_size {
            return Err(Error::QubitOutOfRange { label: q, n: resource_size });
        }
        if seen[q] {
            return Err(Error::InvalidPattern(format!("qubit {q} used twice")));
        }
        seen[q] = true;
    }
    if seen[1..].iter().any(|s| !s) {
        return Err(Error::InvalidPattern("measured and output qubits must cover the register".into()));
    }
    if outputs.is_empty() {
        return Err(Error::InvalidPattern("no output qubits".into()));
    }
    Ok(())
}

/// Position (1-based) of each output qubit among the survivors, which keep
/// their original relative order.
fn output_order(resource_size: usize, steps: &[MeasurementStep], outputs: &[usize]) -> Vec<usize> {
    let survivors: Vec<usize> = (1..=resource_size).filter(|q| !steps.iter().any(|s| s.qubit == *q)).collect();
    outputs
        .iter()
        .map(|o| survivors.iter().position(|s| s == o).expect("output survives") + 1)
        .collect()
}

/// Current register position of an original label, given what is already measured.
fn current_position(label: usize, measured: &[usize]) -> usize {
    label - measured.iter().filter(|&&m| m < label).count()
}

/// Runs the measurements of one explicit branch on a pure resource, without corrections.
fn run_branch(
    resource_size: usize,
    steps: &[MeasurementStep],
    outputs: &[usize],
    resource: &PureState,
    outcomes: &[u8],
) -> Result<(PureState, f64)> {
    let mut state = resource.clone();
    let mut measured = Vec::new();
    let mut probability = 1.0;
    for (step, &bit) in steps.iter().zip(outcomes) {
        let m = measure(&state, current_position(step.qubit, &measured), step.basis, Select::Outcome(bit))?;
        probability *= m.probability;
        state = m.collapsed.ok_or_else(|| Error::InvalidPattern("pattern measured every qubit".into()))?;
        measured.push(step.qubit);
    }
    let out = state.permute(&output_order(resource_size, steps, outputs))?;
    Ok((out, probability))
}

/// Finds, for every outcome branch, the first Pauli word (order `I < X < Y < Z`)
/// that maps the branch output onto `target`.
///
/// Branches that cannot occur on `resource` get the identity.
pub fn derive_feedforward(
    steps: &[MeasurementStep],
    output_qubits: &[usize],
    resource: &PureState,
    target: &PureState,
) -> Result<Vec<PauliWord>> {
    let size = resource.n_qubits();
    validate_layout(size, steps, output_qubits)?;
    if target.n_qubits() != output_qubits.len() {
        return Err(Error::DimensionMismatch {
            left: target.n_qubits(),
            right: output_qubits.len(),
        });
    }
    let k = output_qubits.len();
    let all_outputs: Vec<usize> = (1..=k).collect();
    (0..1usize << steps.len())
        .map(|branch| {
            let bits = outcome_bits(branch, steps.len());
            let out = match run_branch(size, steps, output_qubits, resource, &bits) {
                Ok((out, _)) => out,
                Err(Error::ZeroProbabilityBranch { .. }) => return Ok(PauliWord::identity(k)),
                Err(e) => return Err(e),
            };
            PauliWord::all(k)
                .find(|w| {
                    let corrected = apply_gate(&out, &Gate::Pauli(w.clone()), &all_outputs).expect("valid labels");
                    fidelity(&corrected, target).map(|f| f > 1.0 - CORRECTION_TOL).unwrap_or(false)
                })
                .ok_or_else(|| Error::NoCorrection(bitstring(&bits)))
        })
        .collect()
}

/// `(RZ(α) ⊗ RZ(β)) CZ |+⟩|+⟩`.
pub fn target_two_qubit(instr: GateInstruction) -> PureState {
    let plus = named_state("plus").expect("named state");
    let s = plus.tensor(&plus);
    let s = apply_gate(&s, &Gate::Cz, &[1, 2]).expect("two qubits");
    let s = apply_gate(&s, &Gate::Rz(instr.alpha), &[1]).expect("qubit 1");
    apply_gate(&s, &Gate::Rz(instr.beta), &[2]).expect("qubit 2")
}

/// `RX(β) RZ(α) |+⟩`.
pub fn target_single(instr: GateInstruction) -> PureState {
    let s = named_state("plus").expect("named state");
    let s = apply_gate(&s, &Gate::Rz(instr.alpha), &[1]).expect("qubit 1");
    apply_gate(&s, &Gate::Rx(instr.beta), &[1]).expect("qubit 1")
}

fn build(steps: Vec<MeasurementStep>, outputs: Vec<usize>, target: &PureState) -> Result<MeasurementPattern> {
    let corrections = derive_feedforward(&steps, &outputs, &cluster4(), target)?;
    Ok(MeasurementPattern {
        resource_size: 4,
        steps,
        output_qubits: outputs,
        corrections,
    })
}

/// Qubit 2 in `B(α)`, qubit 3 in `B(β)`; outputs on qubits 1 and 4.
///
/// Both measurements commute with each other's byproducts, so every pair of
/// angles is realized.
pub fn two_qubit_pattern(instr: GateInstruction) -> Result<MeasurementPattern> {
    let steps = vec![
        MeasurementStep {
            qubit: 2,
            basis: LocalBasis::PlanarStd(instr.alpha),
        },
        MeasurementStep {
            qubit: 3,
            basis: LocalBasis::PlanarStd(instr.beta),
        },
    ];
    build(steps, vec![1, 4], &target_two_qubit(instr))
}

/// Qubit 4 in `X`, qubit 1 in `B′(α)`, qubit 2 in `B(β)`; output on qubit 3.
///
/// The bases are fixed in advance, so an `X` byproduct from qubit 1 turns
/// `RX(β)` into `RX(−β)`. A Pauli correction absorbs that when `β` is a
/// multiple of π/2, or when `α = ±π/2` (the input is then a `Y` eigenstate);
/// otherwise this returns [`Error::NoCorrection`].
pub fn single_rotation_pattern(instr: GateInstruction) -> Result<MeasurementPattern> {
    let steps = vec![
        MeasurementStep {
            qubit: 4,
            basis: LocalBasis::X,
        },
        MeasurementStep {
            qubit: 1,
            basis: LocalBasis::PlanarHad(instr.alpha),
        },
        MeasurementStep {
            qubit: 2,
            basis: LocalBasis::PlanarStd(instr.beta),
        },
    ];
    build(steps, vec![3], &target_single(instr))
}

/// Which measurement record to follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    Explicit(Vec<u8>),
    Seeded(u64),
}

#[derive(Clone, Debug)]
pub struct Execution<S> {
    pub output: S,
    pub outcomes: Vec<u8>,
    pub branch_probability: f64,
}

impl MeasurementPattern {
    pub fn n_branches(&self) -> usize {
        1 << self.steps.len()
    }

    pub fn correction(&self, outcomes: &[u8]) -> &PauliWord {
        &self.corrections[outcome_index(outcomes)]
    }

    pub fn corrections_by_outcome(&self) -> BTreeMap<String, String> {
        (0..self.n_branches())
            .map(|b| (bitstring(&outcome_bits(b, self.steps.len())), self.corrections[b].to_string()))
            .collect()
    }

    fn check(&self, size: usize) -> Result<()> {
        if size != self.resource_size {
            return Err(Error::DimensionMismatch {
                left: size,
                right: self.resource_size,
            });
        }
        validate_layout(self.resource_size, &self.steps, &self.output_qubits)?;
        if self.corrections.len() != self.n_branches() {
            return Err(Error::InvalidPattern(format!(
                "{} corrections for {} branches",
                self.corrections.len(),
                self.n_branches()
            )));
        }
        Ok(())
    }

    fn explicit(&self, branch: &Branch) -> Result<Option<Vec<u8>>> {
        match branch {
            Branch::Explicit(bits) if bits.len() != self.steps.len() || bits.iter().any(|&b| b > 1) => {
                Err(Error::InvalidPattern(format!("branch {bits:?} does not fit {} steps", self.steps.len())))
            }
            Branch::Explicit(bits) => Ok(Some(bits.clone())),
            Branch::Seeded(_) => Ok(None),
        }
    }
}

fn step_selector(explicit: &Option<Vec<u8>>, rng: &mut ChaCha8Rng, k: usize) -> Select {
    match explicit {
        Some(bits) => Select::Outcome(bits[k]),
        None => Select::Random(rng.next_u64()),
    }
}

fn seed_of(branch: &Branch) -> u64 {
    match branch {
        Branch::Seeded(s) => *s,
        Branch::Explicit(_) => 0,
    }
}

/// Measures every step, then applies the stored correction for the observed outcomes.
pub fn execute(pattern: &MeasurementPattern, resource: &PureState, branch: &Branch) -> Result<Execution<PureState>> {
    pattern.check(resource.n_qubits())?;
    let explicit = pattern.explicit(branch)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed_of(branch));
    let mut state = resource.clone();
    let mut measured = Vec::new();
    let mut outcomes = Vec::new();
    let mut probability = 1.0;
    for (k, step) in pattern.steps.iter().enumerate() {
        let pos = current_position(step.qubit, &measured);
        let m = measure(&state, pos, step.basis, step_selector(&explicit, &mut rng, k))?;
        probability *= m.probability;
        outcomes.push(m.outcome);
        state = m.collapsed.expect("outputs remain");
        measured.push(step.qubit);
    }
    let out = state.permute(&output_order(pattern.resource_size, &pattern.steps, &pattern.output_qubits))?;
    let labels: Vec<usize> = (1..=out.n_qubits()).collect();
    let output = apply_gate(&out, &Gate::Pauli(pattern.correction(&outcomes).clone()), &labels)?;
    Ok(Execution {
        output,
        outcomes,
        branch_probability: probability,
    })
}

/// Density-matrix counterpart of [`execute`]: project, renormalize, conjugate by the correction.
pub fn execute_mixed(
    pattern: &MeasurementPattern,
    resource: &DensityMatrix,
    branch: &Branch,
) -> Result<Execution<DensityMatrix>> {
    pattern.check(resource.n_qubits())?;
    let explicit = pattern.explicit(branch)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed_of(branch));
    let mut rho = resource.clone();
    let mut measured = Vec::new();
    let mut outcomes = Vec::new();
    let mut probability = 1.0;
    for (k, step) in pattern.steps.iter().enumerate() {
        let pos = current_position(step.qubit, &measured);
        let m = measure_mixed(&rho, pos, step.basis, step_selector(&explicit, &mut rng, k))?;
        probability *= m.probability;
        outcomes.push(m.outcome);
        rho = m.collapsed.expect("outputs remain");
        measured.push(step.qubit);
    }
    let out = rho.permute(&output_order(pattern.resource_size, &pattern.steps, &pattern.output_qubits))?;
    let labels: Vec<usize> = (1..=out.n_qubits()).collect();
    let output = apply_gate_mixed(&out, &Gate::Pauli(pattern.correction(&outcomes).clone()), &labels)?;
    Ok(Execution {
        output,
        outcomes,
        branch_probability: probability,
    })
}

/// Corrected-output fidelities for every branch of a pattern.
#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub branch_fidelities: Vec<f64>,
    pub branch_probabilities: Vec<f64>,
    /// Probability-weighted mean over branches.
    pub mean_fidelity: f64,
}

/// Runs every branch of `pattern` on a pure or mixed resource and scores it against `target`.
pub fn branch_report(pattern: &MeasurementPattern, resource: &DensityMatrix, target: &PureState) -> Result<BranchReport> {
    let mut fids = Vec::new();
    let mut probs = Vec::new();
    for b in 0..pattern.n_branches() {
        let bits = outcome_bits(b, pattern.steps.len());
        match execute_mixed(pattern, resource, &Branch::Explicit(bits)) {
            Ok(run) => {
                fids.push(fidelity(&run.output, target)?);
                probs.push(run.branch_probability);
            }
            Err(Error::ZeroProbabilityBranch { .. }) => {
                fids.push(0.0);
                probs.push(0.0);
            }
            Err(e) => return Err(e),
        }
    }
    let total: f64 = probs.iter().sum();
    let mean = fids.iter().zip(&probs).map(|(f, p)| f * p).sum::<f64>() / total;
    Ok(BranchReport {
        branch_fidelities: fids,
        branch_probabilities: probs,
        mean_fidelity: mean,
    })
}

fn reassigned(dist: &[f64], flips: usize) -> Vec<f64> {
    let mut out = vec![0.0; dist.len()];
    for (o, p) in dist.iter().enumerate() {
        out[o ^ flips] = *p;
    }
    out
}

/// Checks that relabelling outcomes of the uncorrected output (flipping
/// every bit whose correction anticommutes with the measured Pauli)
/// reproduces the statistics of applying the correction, and that those
/// statistics agree across all branches. Every product of `X`, `Y`, `Z`
/// bases over the outputs is tried.
pub fn basis_reassignment_check(pattern: &MeasurementPattern, resource: &PureState) -> Result<bool> {
    pattern.check(resource.n_qubits())?;
    let k = pattern.output_qubits.len();
    let labels: Vec<usize> = (1..=k).collect();
    let settings: Vec<Vec<Pauli>> = PauliWord::all(k)
        .filter(|w| w.letters().iter().all(|&p| p != Pauli::I))
        .map(|w| w.0)
        .collect();
    let mut reference: Option<Vec<Vec<f64>>> = None;
    for b in 0..pattern.n_branches() {
        let bits = outcome_bits(b, pattern.steps.len());
        let (raw, _) = match run_branch(pattern.resource_size, &pattern.steps, &pattern.output_qubits, resource, &bits) {
            Ok(r) => r,
            Err(Error::ZeroProbabilityBranch { .. }) => continue,
            Err(e) => return Err(e),
        };
        let corr = &pattern.corrections[b];
        let corrected = apply_gate(&raw, &Gate::Pauli(corr.clone()), &labels)?;
        let mut direct_all = Vec::new();
        for setting in &settings {
            let bases: Vec<LocalBasis> = setting.iter().map(|&p| LocalBasis::pauli(p).expect("non-identity")).collect();
            let direct = corrected.product_basis_distribution(&bases);
            let flips = setting
                .iter()
                .zip(corr.letters())
                .enumerate()
                .filter(|(_, (m, c))| !m.commutes_with(**c))
                .fold(0, |acc, (q, _)| acc | (1 << (k - 1 - q)));
            let relabelled = reassigned(&raw.product_basis_distribution(&bases), flips);
            if direct.iter().zip(&relabelled).any(|(a, b)| (a - b).abs() > CORRECTION_TOL) {
                return Ok(false);
            }
            direct_all.push(direct);
        }
        match &reference {
            None => reference = Some(direct_all),
            Some(r) => {
                let same = r.iter().flatten().zip(direct_all.iter().flatten()).all(|(a, b)| (a - b).abs() <= CORRECTION_TOL);
                if !same {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// One row of a published output-fidelity table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub instruction: GateInstruction,
    pub label: &'static str,
    pub ket: PureState,
    pub reported_fidelity: f64,
    pub reported_error: f64,
}

fn two_qubit_ket(second: &str, sign: f64, other: &str) -> PureState {
    // (|H⟩|second⟩ + sign |V⟩|other⟩)/√2
    let h = named_state("h").expect("named");
    let v = named_state("v").expect("named");
    let a = h.tensor(&named_state(second).expect("named"));
    let b = v.tensor(&named_state(other).expect("named"));
    let amps = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| x + y * sign).collect();
    PureState::from_unnormalized(2, amps).expect("nonzero")
}

/// The eight two-qubit instructions with their listed output kets.
pub fn table_two_qubit() -> Vec<TableRow> {
    let rows = [
        (0.0, 0.0, "psi1 = |H>|+> + |V>|->", "plus", 1.0, "minus", 0.831, 0.033),
        (0.0, FRAC_PI_2, "psi2 = |H>|R> + |V>|L>", "r", 1.0, "l", 0.847, 0.036),
        (0.0, PI, "psi3 = |H>|-> + |V>|+>", "minus", 1.0, "plus", 0.924, 0.025),
        (0.0, -FRAC_PI_2, "psi4 = |H>|L> + |V>|R>", "l", 1.0, "r", 0.899, 0.028),
        (PI, 0.0, "psi5 = |H>|+> - |V>|->", "plus", -1.0, "minus", 0.912, 0.028),
        (PI, FRAC_PI_2, "psi6 = |H>|R> - |V>|L>", "r", -1.0, "l", 0.913, 0.028),
        (PI, PI, "psi7 = |H>|-> - |V>|+>", "minus", -1.0, "plus", 0.925, 0.024),
        (PI, -FRAC_PI_2, "psi8 = |H>|L> - |V>|R>", "l", -1.0, "r", 0.910, 0.027),
    ];
    rows.iter()
        .map(|&(a, b, label, first, sign, second, f, e)| TableRow {
            instruction: GateInstruction::new(a, b),
            label,
            ket: two_qubit_ket(first, sign, second),
            reported_fidelity: f,
            reported_error: e,
        })
        .collect()
}

/// The six single-qubit rotations with their listed output kets.
pub fn table_single() -> Vec<TableRow> {
    let rows = [
        (0.0, 0.0, "|+>", "plus", 0.944, 0.022),
        (PI, 0.0, "|->", "minus", 0.888, 0.029),
        (FRAC_PI_2, 0.0, "|R>", "r", 0.928, 0.026),
        (-FRAC_PI_2, 0.0, "|L>", "l", 0.969, 0.017),
        (FRAC_PI_2, FRAC_PI_2, "|H>", "h", 0.915, 0.029),
        (FRAC_PI_2, -FRAC_PI_2, "|V>", "v", 0.917, 0.027),
    ];
    rows.iter()
        .map(|&(a, b, label, name, f, e)| TableRow {
            instruction: GateInstruction::new(a, b),
            label,
            ket: named_state(name).expect("named"),
            reported_fidelity: f,
            reported_error: e,
        })
        .collect()
}

/// Mean of the reported fidelities and its standard error (errors added in quadrature).
pub fn table_average(rows: &[TableRow]) -> (f64, f64) {
    let n = rows.len() as f64;
    let mean = rows.iter().map(|r| r.reported_fidelity).sum::<f64>() / n;
    let err = rows.iter().map(|r| r.reported_error.powi(2)).sum::<f64>().sqrt() / n;
    (mean, err)
}
