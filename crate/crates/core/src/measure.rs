//! Destructive single-qubit measurement.
//!
//! The measured qubit leaves the register; the remaining qubits keep their
//! relative order and are relabelled `1..n-1`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::LocalBasis;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::state::{bit_pos, c, check_label, insert_bit, DensityMatrix, PureState};

/// Branches below this probability cannot be selected.
pub const MIN_BRANCH_PROBABILITY: f64 = 1e-12;

/// How the outcome of a measurement is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Select {
    /// Post-select a specific outcome bit.
    Outcome(u8),
    /// Draw from the Born distribution using a seeded generator.
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct Measurement<S> {
    pub probability: f64,
    pub outcome: u8,
    /// `None` when the last qubit of the register was measured.
    pub collapsed: Option<S>,
}

fn choose(p0: f64, select: Select) -> Result<(u8, f64)> {
    let p1 = (1.0 - p0).max(0.0);
    let outcome = match select {
        Select::Outcome(b) => b.min(1),
        Select::Random(seed) => {
            let u: f64 = ChaCha8Rng::seed_from_u64(seed).random();
            u8::from(u >= p0)
        }
    };
    let probability = if outcome == 0 { p0 } else { p1 };
    if probability < MIN_BRANCH_PROBABILITY {
        return Err(Error::ZeroProbabilityBranch { outcome, probability });
    }
    Ok((outcome, probability))
}

/// Amplitudes `⟨b_outcome|_q |ψ⟩` on the remaining qubits (unnormalized).
fn project_pure(state: &PureState, qubit: usize, v: &[Complex64; 2]) -> Vec<Complex64> {
    let n = state.n_qubits();
    let pos = bit_pos(n, qubit);
    let amps = state.amplitudes();
    (0..1usize << (n - 1))
        .map(|rest| {
            let i0 = insert_bit(rest, pos, 0);
            v[0].conj() * amps[i0] + v[1].conj() * amps[i0 | (1 << pos)]
        })
        .collect()
}

/// Born probabilities `(p0, p1)` of measuring `qubit` in `basis`.
pub fn outcome_probabilities(state: &PureState, qubit: usize, basis: LocalBasis) -> Result<[f64; 2]> {
    check_label(state.n_qubits(), qubit)?;
    let vs = basis.vectors();
    let p = |v| project_pure(state, qubit, v).iter().map(|a| a.norm_sqr()).sum::<f64>();
    Ok([p(&vs[0]), p(&vs[1])])
}

/// Measures `qubit` of a pure state and removes it from the register.
pub fn measure(state: &PureState, qubit: usize, basis: LocalBasis, select: Select) -> Result<Measurement<PureState>> {
    let n = state.n_qubits();
    check_label(n, qubit)?;
    let vs = basis.vectors();
    let branch0 = project_pure(state, qubit, &vs[0]);
    let p0: f64 = branch0.iter().map(|a| a.norm_sqr()).sum();
    let (outcome, probability) = choose(p0, select)?;
    let branch = if outcome == 0 { branch0 } else { project_pure(state, qubit, &vs[1]) };
    let collapsed = if n == 1 {
        None
    } else {
        let scale = probability.sqrt();
        Some(PureState::from_raw(n - 1, branch.into_iter().map(|a| a / scale).collect()))
    };
    Ok(Measurement {
        probability,
        outcome,
        collapsed,
    })
}

/// `⟨b|_q ρ |b⟩_q` on the remaining qubits (unnormalized).
fn project_mixed(rho: &DensityMatrix, qubit: usize, v: &[Complex64; 2]) -> Matrix {
    let n = rho.n_qubits();
    let pos = bit_pos(n, qubit);
    let m = rho.matrix();
    let dim = 1usize << (n - 1);
    Matrix::from_fn(dim, dim, |r, col| {
        let mut acc = c(0.0, 0.0);
        for b in 0..2 {
            for bp in 0..2 {
                acc += v[b].conj() * m[(insert_bit(r, pos, b), insert_bit(col, pos, bp))] * v[bp];
            }
        }
        acc
    })
}

/// Density-matrix counterpart of [`measure`].
pub fn measure_mixed(
    rho: &DensityMatrix,
    qubit: usize,
    basis: LocalBasis,
    select: Select,
) -> Result<Measurement<DensityMatrix>> {
    let n = rho.n_qubits();
    check_label(n, qubit)?;
    let vs = basis.vectors();
    let branch0 = project_mixed(rho, qubit, &vs[0]);
    let p0 = branch0.trace().re;
    let (outcome, probability) = choose(p0, select)?;
    let branch = if outcome == 0 { branch0 } else { project_mixed(rho, qubit, &vs[1]) };
    let collapsed = if n == 1 {
        None
    } else {
        Some(DensityMatrix::from_matrix_unchecked(n - 1, branch.scale(1.0 / probability))?)
    };
    Ok(Measurement {
        probability,
        outcome,
        collapsed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{cluster4, fidelity, named_state, QuantumState};

    #[test]
    fn cluster_x_measurement_is_fair() {
        let m = measure(&cluster4(), 4, LocalBasis::X, Select::Outcome(0)).unwrap();
        assert!((m.probability - 0.5).abs() < 1e-15);
        let rest = m.collapsed.unwrap();
        assert_eq!(rest.n_qubits(), 3);
        assert!((rest.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenstate_and_forbidden_branch() {
        let h = named_state("h").unwrap();
        let m = measure(&h, 1, LocalBasis::Z, Select::Outcome(0)).unwrap();
        assert_eq!(m.probability, 1.0);
        assert!(m.collapsed.is_none());
        assert!(matches!(
            measure(&h, 1, LocalBasis::Z, Select::Outcome(1)),
            Err(Error::ZeroProbabilityBranch { .. })
        ));
    }

    #[test]
    fn seeded_draw_is_deterministic() {
        let s = cluster4();
        let a = measure(&s, 2, LocalBasis::PlanarStd(0.3), Select::Random(9)).unwrap();
        let b = measure(&s, 2, LocalBasis::PlanarStd(0.3), Select::Random(9)).unwrap();
        assert_eq!(a.outcome, b.outcome);
        assert_eq!(a.collapsed, b.collapsed);
    }

    #[test]
    fn remaining_qubits_keep_order() {
        // |0⟩|1⟩|+⟩, measure the middle qubit: left with |0⟩|+⟩
        let s = named_state("h")
            .unwrap()
            .tensor(&named_state("v").unwrap())
            .tensor(&named_state("plus").unwrap());
        let m = measure(&s, 2, LocalBasis::Z, Select::Outcome(1)).unwrap();
        let expect = named_state("h").unwrap().tensor(&named_state("plus").unwrap());
        assert!((fidelity(&m.collapsed.unwrap(), &expect).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mixed_measurement_matches_pure() {
        let s = cluster4();
        for outcome in 0..2 {
            let p = measure(&s, 3, LocalBasis::PlanarHad(0.8), Select::Outcome(outcome)).unwrap();
            let m = measure_mixed(&s.to_density(), 3, LocalBasis::PlanarHad(0.8), Select::Outcome(outcome)).unwrap();
            assert!((p.probability - m.probability).abs() < 1e-14);
            let pure_rho = p.collapsed.unwrap().to_density_matrix();
            let diff = pure_rho.matrix().sub(m.collapsed.unwrap().matrix());
            assert!(diff.as_slice().iter().all(|z| z.norm() < 1e-14));
        }
    }
}
