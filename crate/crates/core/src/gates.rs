//! The gate set used by the one-way patterns: `RZ`, `RX`, `CZ` and Pauli words.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::PauliWord;
use crate::state::{apply_single, bit_pos, c, check_labels, DensityMatrix, PureState};

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    /// `exp(−iθσ_z/2)`
    Rz(f64),
    /// `exp(−iθσ_x/2)`
    Rx(f64),
    /// `|j⟩|k⟩ ↦ (−1)^{jk}|j⟩|k⟩`
    Cz,
    /// Tensor product of Paulis, one letter per listed qubit.
    Pauli(PauliWord),
}

impl Gate {
    pub fn arity(&self) -> usize {
        match self {
            Gate::Rz(_) | Gate::Rx(_) => 1,
            Gate::Cz => 2,
            Gate::Pauli(w) => w.len(),
        }
    }

    pub(crate) fn single_matrix(&self) -> Option<[[Complex64; 2]; 2]> {
        match *self {
            Gate::Rz(t) => Some([
                [Complex64::from_polar(1.0, -t / 2.0), c(0.0, 0.0)],
                [c(0.0, 0.0), Complex64::from_polar(1.0, t / 2.0)],
            ]),
            Gate::Rx(t) => {
                let (s, co) = (t / 2.0).sin_cos();
                Some([[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]])
            }
            _ => None,
        }
    }
}

fn check_arity(gate: &Gate, qubits: &[usize]) -> Result<()> {
    if gate.arity() != qubits.len() {
        return Err(Error::Arity {
            expected: gate.arity(),
            got: qubits.len(),
        });
    }
    Ok(())
}

/// Applies `gate` to the listed 1-based qubits.
pub fn apply_gate(state: &PureState, gate: &Gate, qubits: &[usize]) -> Result<PureState> {
    let n = state.n_qubits();
    check_arity(gate, qubits)?;
    check_labels(n, qubits)?;
    let mut amps = state.amplitudes().to_vec();
    match gate {
        Gate::Rz(_) | Gate::Rx(_) => {
            apply_single(&mut amps, n, qubits[0], &gate.single_matrix().expect("single-qubit gate"));
        }
        Gate::Cz => {
            let mask = (1 << bit_pos(n, qubits[0])) | (1 << bit_pos(n, qubits[1]));
            for (i, a) in amps.iter_mut().enumerate() {
                if i & mask == mask {
                    *a = -*a;
                }
            }
        }
        Gate::Pauli(word) => {
            let full = embed_word(n, word, qubits);
            let mask = full.flip_mask();
            let src = amps.clone();
            for (j, a) in src.iter().enumerate() {
                amps[j ^ mask] = full.phase_on(j) * a;
            }
        }
    }
    Ok(PureState::from_raw(n, amps))
}

/// `U ρ U†` for the same gate set.
pub fn apply_gate_mixed(rho: &DensityMatrix, gate: &Gate, qubits: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    check_arity(gate, qubits)?;
    check_labels(n, qubits)?;
    match gate {
        Gate::Rz(_) | Gate::Rx(_) => Ok(rho.conjugate_single(qubits[0], &gate.single_matrix().expect("single-qubit gate"))),
        Gate::Cz => {
            let mask = (1 << bit_pos(n, qubits[0])) | (1 << bit_pos(n, qubits[1]));
            let sign = |i: usize| if i & mask == mask { -1.0 } else { 1.0 };
            let m = rho.matrix();
            let out = crate::linalg::Matrix::from_fn(m.rows(), m.cols(), |r, col| m[(r, col)] * (sign(r) * sign(col)));
            DensityMatrix::from_matrix_unchecked(n, out)
        }
        Gate::Pauli(word) => rho.conjugate_pauli(&embed_word(n, word, qubits)),
    }
}

/// Spreads a word over the listed qubits of an `n`-qubit register.
pub(crate) fn embed_word(n: usize, word: &PauliWord, qubits: &[usize]) -> PauliWord {
    let mut full = PauliWord::identity(n);
    for (p, &q) in word.letters().iter().zip(qubits) {
        full.0[q - 1] = *p;
    }
    full
}
