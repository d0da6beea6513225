//! Schmidt decomposition across a bipartition of the register.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::state::{bit_pos, c, check_labels, PureState};

/// `|ψ⟩ = Σ_k λ_k |a_k⟩|b_k⟩` with `λ` descending.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    n: usize,
    /// Sorted labels of the first subsystem.
    pub part: Vec<usize>,
    /// Sorted labels of the complement.
    pub rest: Vec<usize>,
    pub coefficients: Vec<f64>,
    left: Matrix,
    right: Matrix,
}

/// Maps (row, col) of the reshaped amplitude matrix back to a register index.
fn joint_index(n: usize, part: &[usize], rest: &[usize], row: usize, col: usize) -> usize {
    let mut idx = 0;
    for (k, &q) in part.iter().enumerate() {
        idx |= ((row >> (part.len() - 1 - k)) & 1) << bit_pos(n, q);
    }
    for (k, &q) in rest.iter().enumerate() {
        idx |= ((col >> (rest.len() - 1 - k)) & 1) << bit_pos(n, q);
    }
    idx
}

fn split(n: usize, partition: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    check_labels(n, partition)?;
    if partition.is_empty() || partition.len() >= n {
        return Err(Error::InvalidPartition(format!(
            "{partition:?} must be a nonempty proper subset of 1..={n}"
        )));
    }
    let mut part = partition.to_vec();
    part.sort_unstable();
    let rest = (1..=n).filter(|q| !part.contains(q)).collect();
    Ok((part, rest))
}

pub fn schmidt_decomposition(state: &PureState, partition: &[usize]) -> Result<SchmidtDecomposition> {
    let n = state.n_qubits();
    let (part, rest) = split(n, partition)?;
    let (rows, cols) = (1 << part.len(), 1 << rest.len());
    let amps = state.amplitudes();
    let m = Matrix::from_fn(rows, cols, |r, col| amps[joint_index(n, &part, &rest, r, col)]);
    let svd = m.svd();
    Ok(SchmidtDecomposition {
        n,
        part,
        rest,
        coefficients: svd.values,
        left: svd.left,
        right: svd.right,
    })
}

/// Descending Schmidt coefficients; length is the smaller subsystem dimension.
pub fn schmidt_coefficients(state: &PureState, partition: &[usize]) -> Result<Vec<f64>> {
    Ok(schmidt_decomposition(state, partition)?.coefficients)
}

impl SchmidtDecomposition {
    /// Number of coefficients strictly above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.coefficients.iter().filter(|&&x| x > tol).count()
    }

    /// Normalized state keeping only the `k` largest Schmidt terms.
    pub fn truncated(&self, k: usize) -> Result<PureState> {
        let max = self.coefficients.len();
        if k == 0 || k > max {
            return Err(Error::RankOutOfRange { k, max });
        }
        let (rows, cols) = (self.left.rows(), self.right.rows());
        let mut amps = vec![c(0.0, 0.0); 1 << self.n];
        for t in 0..k {
            let lambda = self.coefficients[t];
            for r in 0..rows {
                for col in 0..cols {
                    // ψ_{rc} = Σ λ U_{rt} conj(V_{ct})
                    let z: Complex64 = self.left[(r, t)] * self.right[(col, t)].conj() * lambda;
                    amps[joint_index(self.n, &self.part, &self.rest, r, col)] += z;
                }
            }
        }
        PureState::from_unnormalized(self.n, amps)
    }
}
