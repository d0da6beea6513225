#![allow(dead_code)]

use clustersim::gates::{apply_gate, Gate};
use clustersim::linalg::Matrix;
use clustersim::state::{DensityMatrix, PureState};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state.
pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> PureState {
    let amps = (0..1usize << n).map(|_| gaussian(rng)).collect();
    PureState::from_unnormalized(n, amps).unwrap()
}

/// `GG†/Tr` with `G` of random rank `1..=2^n`.
pub fn random_density(rng: &mut ChaCha8Rng, n: usize) -> DensityMatrix {
    let dim = 1usize << n;
    let rank = rng.random_range(1..=dim);
    let g = Matrix::from_fn(dim, rank, |_, _| gaussian(rng));
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(n, m.scale(1.0 / tr)).unwrap()
}

/// Random `RZ·RX·RZ` on every qubit.
pub fn random_local_unitary(rng: &mut ChaCha8Rng, state: &PureState) -> PureState {
    let mut s = state.clone();
    for q in 1..=s.n_qubits() {
        for g in [Gate::Rz(rng.random_range(0.0..6.3)), Gate::Rx(rng.random_range(0.0..6.3)), Gate::Rz(rng.random_range(0.0..6.3))] {
            s = apply_gate(&s, &g, &[q]).unwrap();
        }
    }
    s
}

/// Local rotations interleaved with CZ layers; generic enough to entangle.
pub fn random_circuit(rng: &mut ChaCha8Rng, state: &PureState, layers: usize) -> PureState {
    let mut s = random_local_unitary(rng, state);
    for _ in 0..layers {
        for q in 1..s.n_qubits() {
            s = apply_gate(&s, &Gate::Cz, &[q, q + 1]).unwrap();
        }
        s = random_local_unitary(rng, &s);
    }
    s
}
