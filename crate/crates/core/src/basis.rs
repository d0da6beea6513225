//! Single-qubit measurement bases.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;

use crate::pauli::Pauli;
use crate::state::c;

/// An ordered orthonormal single-qubit basis. Outcome bit 0 is the first
/// vector (eigenvalue +1), bit 1 the second (eigenvalue −1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LocalBasis {
    /// `{|H⟩, |V⟩}`
    Z,
    /// `{|+⟩, |−⟩}`
    X,
    /// `{|R⟩, |L⟩}` with `|R/L⟩ = (|H⟩ ± i|V⟩)/√2`
    Y,
    /// `{(|0⟩ + e^{−iθ}|1⟩)/√2, (|0⟩ − e^{−iθ}|1⟩)/√2}`
    PlanarStd(f64),
    /// As [`LocalBasis::PlanarStd`] with `|0⟩, |1⟩` replaced by `|+⟩, |−⟩`.
    PlanarHad(f64),
}

impl LocalBasis {
    pub fn pauli(p: Pauli) -> Option<Self> {
        match p {
            Pauli::X => Some(LocalBasis::X),
            Pauli::Y => Some(LocalBasis::Y),
            Pauli::Z => Some(LocalBasis::Z),
            Pauli::I => None,
        }
    }

    /// The two basis vectors in `(|0⟩, |1⟩)` components.
    pub fn vectors(self) -> [[Complex64; 2]; 2] {
        let s = FRAC_1_SQRT_2;
        match self {
            LocalBasis::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
            LocalBasis::X => LocalBasis::PlanarStd(0.0).vectors(),
            // (|0⟩ + e^{-iθ}|1⟩)/√2 with θ = −π/2 is (|0⟩ + i|1⟩)/√2 = |R⟩
            LocalBasis::Y => LocalBasis::PlanarStd(-FRAC_PI_2).vectors(),
            LocalBasis::PlanarStd(theta) => {
                let ph = Complex64::from_polar(s, -theta);
                [[c(s, 0.0), ph], [c(s, 0.0), -ph]]
            }
            LocalBasis::PlanarHad(theta) => {
                let ph = Complex64::from_polar(1.0, -theta);
                // |+⟩ = (1, 1)/√2, |−⟩ = (1, −1)/√2
                let first = [(c(1.0, 0.0) + ph) * 0.5, (c(1.0, 0.0) - ph) * 0.5];
                let second = [(c(1.0, 0.0) - ph) * 0.5, (c(1.0, 0.0) + ph) * 0.5];
                [first, second]
            }
        }
    }

    /// Rows are the conjugated basis vectors, so applying this matrix maps
    /// amplitudes to outcome amplitudes `⟨b_o|ψ⟩`.
    pub fn projector_rows(self) -> [[Complex64; 2]; 2] {
        let v = self.vectors();
        [[v[0][0].conj(), v[0][1].conj()], [v[1][0].conj(), v[1][1].conj()]]
    }

    pub fn letter(self) -> Option<Pauli> {
        match self {
            LocalBasis::Z => Some(Pauli::Z),
            LocalBasis::X => Some(Pauli::X),
            LocalBasis::Y => Some(Pauli::Y),
            _ => None,
        }
    }
}

/// ±1 eigenvalue attached to an outcome bit.
pub fn outcome_sign(bit: usize) -> f64 {
    if bit == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::named_state;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-14
    }

    #[test]
    fn named_bases_match_named_states() {
        let pairs = [
            (LocalBasis::Z, "h", "v"),
            (LocalBasis::X, "plus", "minus"),
            (LocalBasis::Y, "r", "l"),
        ];
        for (basis, first, second) in pairs {
            let v = basis.vectors();
            let a = named_state(first).unwrap();
            let b = named_state(second).unwrap();
            assert!(close(v[0][0], a.amplitude(0)) && close(v[0][1], a.amplitude(1)), "{basis:?}");
            assert!(close(v[1][0], b.amplitude(0)) && close(v[1][1], b.amplitude(1)), "{basis:?}");
        }
    }

    #[test]
    fn bases_are_orthonormal_eigenbases() {
        for basis in [LocalBasis::PlanarStd(0.7), LocalBasis::PlanarHad(-1.3), LocalBasis::Y] {
            let v = basis.vectors();
            let ip = v[0][0].conj() * v[1][0] + v[0][1].conj() * v[1][1];
            assert!(ip.norm() < 1e-14);
            for vec in v {
                assert!(((vec[0].norm_sqr() + vec[1].norm_sqr()) - 1.0).abs() < 1e-14);
            }
        }
        // PlanarHad(0) is the Z basis: (|+⟩ + |−⟩)/√2 = |0⟩
        let h = LocalBasis::PlanarHad(0.0).vectors();
        assert!(close(h[0][0], c(1.0, 0.0)) && close(h[1][1], c(1.0, 0.0)));
    }
}
