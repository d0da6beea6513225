//! Dense pure states and density matrices.
//!
//! Qubits are labelled from 1. Qubit 1 is the most significant bit of the
//! amplitude index and basis label 0 is `|H⟩`, 1 is `|V⟩`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pauli::{PauliString, PauliWord};

/// Tolerance for normalization and Hermiticity checks.
pub const STATE_TOL: f64 = 1e-10;
/// Allowed negativity of the smallest density-matrix eigenvalue.
pub const PSD_TOL: f64 = 1e-8;
/// Largest register the dense routines accept.
pub const MAX_QUBITS: usize = 10;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Bit position of a 1-based qubit label in an `n`-qubit index.
pub(crate) fn bit_pos(n: usize, label: usize) -> usize {
    n - label
}

pub(crate) fn check_label(n: usize, label: usize) -> Result<()> {
    if label == 0 || label > n {
        Err(Error::QubitOutOfRange { label, n })
    } else {
        Ok(())
    }
}

pub(crate) fn check_labels(n: usize, labels: &[usize]) -> Result<()> {
    for (i, &l) in labels.iter().enumerate() {
        check_label(n, l)?;
        if labels[..i].contains(&l) {
            return Err(Error::DuplicateQubit(l));
        }
    }
    Ok(())
}

/// Inserts `bit` at position `pos` of `rest`, shifting higher bits up.
pub(crate) fn insert_bit(rest: usize, pos: usize, bit: usize) -> usize {
    let low = rest & ((1 << pos) - 1);
    ((rest >> pos) << (pos + 1)) | (bit << pos) | low
}

/// Applies a 2×2 matrix to one qubit of a flat amplitude vector.
pub(crate) fn apply_single(amps: &mut [Complex64], n: usize, label: usize, m: &[[Complex64; 2]; 2]) {
    let pos = bit_pos(n, label);
    for rest in 0..(1usize << (n - 1)) {
        let i0 = insert_bit(rest, pos, 0);
        let i1 = i0 | (1 << pos);
        let (a0, a1) = (amps[i0], amps[i1]);
        amps[i0] = m[0][0] * a0 + m[0][1] * a1;
        amps[i1] = m[1][0] * a0 + m[1][1] * a1;
    }
}

/// A normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Wraps amplitudes that must already have unit norm (within 1e-10).
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS || amps.len() != 1 << n {
            return Err(Error::LengthMismatch { n, len: amps.len() });
        }
        let norm = norm(&amps);
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { n, amps })
    }

    /// Normalizes the given amplitudes. Fails on the zero vector.
    pub fn from_unnormalized(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS || amps.len() != 1 << n {
            return Err(Error::LengthMismatch { n, len: amps.len() });
        }
        let norm = norm(&amps);
        if norm < 1e-300 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            n,
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub(crate) fn from_raw(n: usize, amps: Vec<Complex64>) -> Self {
        Self { n, amps }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS || index >= 1 << n {
            return Err(Error::LengthMismatch { n, len: index });
        }
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[index] = c(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Real-amplitude superposition of the given basis indices, normalized.
    pub fn superposition(n: usize, terms: &[(usize, f64)]) -> Result<Self> {
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        for &(i, w) in terms {
            if i >= amps.len() {
                return Err(Error::LengthMismatch { n, len: i });
            }
            amps[i] += c(w, 0.0);
        }
        Self::from_unnormalized(n, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        same_size(self.n, other.n)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        PureState::from_raw(self.n + other.n, amps)
    }

    pub fn with_global_phase(&self, phi: f64) -> PureState {
        let ph = Complex64::from_polar(1.0, phi);
        PureState::from_raw(self.n, self.amps.iter().map(|a| a * ph).collect())
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    /// Reorders qubits so that new qubit `k` is old qubit `order[k]`.
    pub fn permute(&self, order: &[usize]) -> Result<PureState> {
        if order.len() != self.n {
            return Err(Error::Arity { expected: self.n, got: order.len() });
        }
        check_labels(self.n, order)?;
        let n = self.n;
        let mut amps = vec![c(0.0, 0.0); self.dim()];
        for (old, a) in self.amps.iter().enumerate() {
            let mut new = 0;
            for (k, &src) in order.iter().enumerate() {
                let bit = (old >> bit_pos(n, src)) & 1;
                new |= bit << bit_pos(n, k + 1);
            }
            amps[new] = *a;
        }
        Ok(PureState::from_raw(n, amps))
    }
}

impl fmt::Display for PureState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() < 1e-12 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.4}{:+.4}i)|{:0width$b}⟩", a.re, a.im, i, width = self.n)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for PureState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StateJson {
            n: self.n,
            re: self.amps.iter().map(|a| a.re).collect(),
            im: self.amps.iter().map(|a| a.im).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PureState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = StateJson::deserialize(d)?;
        if j.re.len() != j.im.len() {
            return Err(serde::de::Error::custom("re and im lengths differ"));
        }
        let amps = j.re.iter().zip(&j.im).map(|(&r, &i)| c(r, i)).collect();
        PureState::new(j.n, amps).map_err(serde::de::Error::custom)
    }
}

fn norm(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn same_size(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// The four-photon cluster state
/// `(|HHHH⟩ + |HHVV⟩ + |VVHH⟩ − |VVVV⟩)/2`.
pub fn cluster4() -> PureState {
    let mut amps = vec![c(0.0, 0.0); 16];
    amps[0b0000] = c(0.5, 0.0);
    amps[0b0011] = c(0.5, 0.0);
    amps[0b1100] = c(0.5, 0.0);
    amps[0b1111] = c(-0.5, 0.0);
    PureState::from_raw(4, amps)
}

/// Comparison and single-qubit states available by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedState {
    Cluster4,
    Ghz4,
    W4,
    Dicke4,
    Plus,
    Minus,
    R,
    L,
    H,
    V,
}

impl NamedState {
    pub const ALL: [NamedState; 10] = [
        NamedState::Cluster4,
        NamedState::Ghz4,
        NamedState::W4,
        NamedState::Dicke4,
        NamedState::Plus,
        NamedState::Minus,
        NamedState::R,
        NamedState::L,
        NamedState::H,
        NamedState::V,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedState::Cluster4 => "cluster4",
            NamedState::Ghz4 => "ghz4",
            NamedState::W4 => "w4",
            NamedState::Dicke4 => "dicke4",
            NamedState::Plus => "plus",
            NamedState::Minus => "minus",
            NamedState::R => "r",
            NamedState::L => "l",
            NamedState::H => "h",
            NamedState::V => "v",
        }
    }

    pub fn state(self) -> PureState {
        let s = FRAC_1_SQRT_2;
        let one = |a: Complex64, b: Complex64| PureState::from_raw(1, vec![a, b]);
        match self {
            NamedState::Cluster4 => cluster4(),
            NamedState::Ghz4 => PureState::from_raw(4, indicator(16, &[0b0000, 0b1111], s)),
            NamedState::W4 => PureState::from_raw(4, indicator(16, &[0b0001, 0b0010, 0b0100, 0b1000], 0.5)),
            NamedState::Dicke4 => {
                let support: Vec<usize> = (0..16usize).filter(|i| i.count_ones() == 2).collect();
                PureState::from_raw(4, indicator(16, &support, 1.0 / 6f64.sqrt()))
            }
            NamedState::Plus => one(c(s, 0.0), c(s, 0.0)),
            NamedState::Minus => one(c(s, 0.0), c(-s, 0.0)),
            NamedState::R => one(c(s, 0.0), c(0.0, s)),
            NamedState::L => one(c(s, 0.0), c(0.0, -s)),
            NamedState::H => one(c(1.0, 0.0), c(0.0, 0.0)),
            NamedState::V => one(c(0.0, 0.0), c(1.0, 0.0)),
        }
    }
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let alias = match key.as_str() {
            "+" => "plus",
            "-" => "minus",
            "cluster" | "c4" => "cluster4",
            "ghz" => "ghz4",
            "w" => "w4",
            "dicke" | "d4" => "dicke4",
            other => other,
        };
        NamedState::ALL
            .into_iter()
            .find(|n| n.name() == alias)
            .ok_or_else(|| Error::UnknownState(s.to_string()))
    }
}

fn indicator(dim: usize, support: &[usize], value: f64) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); dim];
    for &i in support {
        v[i] = c(value, 0.0);
    }
    v
}

/// Looks up a state by name (`ghz4`, `w4`, `dicke4`, `plus`, `minus`, `r`, `l`, `h`, `v`, `cluster4`).
pub fn named_state(name: &str) -> Result<PureState> {
    Ok(name.parse::<NamedState>()?.state())
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    m: Matrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(n: usize, m: Matrix) -> Result<Self> {
        let rho = Self::from_matrix_unchecked(n, m)?;
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_matrix_unchecked(n: usize, m: Matrix) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS || m.rows() != 1 << n || !m.is_square() {
            return Err(Error::LengthMismatch { n, len: m.rows() });
        }
        Ok(Self { n, m })
    }

    pub fn validate(&self) -> Result<()> {
        let herm = self.m.hermiticity_error();
        if herm > STATE_TOL {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = self.m.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        let min = self.m.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    pub fn from_pure(s: &PureState) -> Self {
        Self {
            n: s.n,
            m: Matrix::outer(&s.amps, &s.amps),
        }
    }

    pub fn maximally_mixed(n: usize) -> Self {
        let dim = 1 << n;
        Self {
            n,
            m: Matrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// Convex combination `Σ w_i ρ_i`. Weights must be nonnegative and sum to one.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = parts.first().ok_or(Error::Empty("mixture"))?;
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.iter().any(|(w, _)| *w < 0.0) || (total - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidDensityMatrix("mixture weights must form a distribution".into()));
        }
        let mut acc = Matrix::zeros(first.m.rows(), first.m.cols());
        for (w, rho) in parts {
            same_size(first.n, rho.n)?;
            acc = acc.add(&rho.m.scale(*w));
        }
        Ok(Self { n: first.n, m: acc })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// `U ρ U†` for a single-qubit matrix on `label`.
    pub(crate) fn conjugate_single(&self, label: usize, u: &[[Complex64; 2]; 2]) -> DensityMatrix {
        let dim = self.m.rows();
        let mut left = self.m.clone();
        for col in 0..dim {
            let mut v = left.column(col);
            apply_single(&mut v, self.n, label, u);
            for (r, z) in v.into_iter().enumerate() {
                left[(r, col)] = z;
            }
        }
        // U ρ U† = U (U ρ)†, using ρ = ρ†
        let mut out = left.adjoint();
        for col in 0..dim {
            let mut v = out.column(col);
            apply_single(&mut v, self.n, label, u);
            for (r, z) in v.into_iter().enumerate() {
                out[(r, col)] = z;
            }
        }
        DensityMatrix { n: self.n, m: out }
    }

    /// `P ρ P†` for a full-register Pauli word.
    pub fn conjugate_pauli(&self, word: &PauliWord) -> Result<DensityMatrix> {
        same_size(self.n, word.len())?;
        let mask = word.flip_mask();
        let dim = self.m.rows();
        let mut out = Matrix::zeros(dim, dim);
        for r in 0..dim {
            for col in 0..dim {
                out[(r ^ mask, col ^ mask)] = word.phase_on(r) * self.m[(r, col)] * word.phase_on(col).conj();
            }
        }
        Ok(DensityMatrix { n: self.n, m: out })
    }

    /// Reorders qubits so that new qubit `k` is old qubit `order[k]`.
    pub fn permute(&self, order: &[usize]) -> Result<DensityMatrix> {
        if order.len() != self.n {
            return Err(Error::Arity { expected: self.n, got: order.len() });
        }
        check_labels(self.n, order)?;
        let n = self.n;
        let map = |old: usize| {
            order
                .iter()
                .enumerate()
                .fold(0, |acc, (k, &src)| acc | (((old >> bit_pos(n, src)) & 1) << bit_pos(n, k + 1)))
        };
        let dim = self.m.rows();
        let mut out = Matrix::zeros(dim, dim);
        for r in 0..dim {
            for col in 0..dim {
                out[(map(r), map(col))] = self.m[(r, col)];
            }
        }
        Ok(DensityMatrix { n, m: out })
    }
}

/// Operations shared by pure states and density matrices.
pub trait QuantumState {
    fn n_qubits(&self) -> usize;

    /// `⟨P⟩` for an unweighted word of full register length.
    fn word_expectation(&self, word: &PauliWord) -> f64;

    /// `⟨target|ρ|target⟩`.
    fn overlap_with(&self, target: &PureState) -> f64;

    /// Born distribution of measuring qubit `k` in `bases[k]` for all `k`,
    /// ordered by outcome index with qubit 1 most significant.
    fn product_basis_distribution(&self, bases: &[crate::basis::LocalBasis]) -> Vec<f64>;

    fn to_density_matrix(&self) -> DensityMatrix;
}

impl QuantumState for PureState {
    fn n_qubits(&self) -> usize {
        self.n
    }

    fn word_expectation(&self, word: &PauliWord) -> f64 {
        let mask = word.flip_mask();
        // ⟨ψ|P|ψ⟩ = Σ_j conj(ψ[j^mask]) phase_j ψ[j]
        self.amps
            .iter()
            .enumerate()
            .map(|(j, a)| self.amps[j ^ mask].conj() * word.phase_on(j) * a)
            .sum::<Complex64>()
            .re
    }

    fn overlap_with(&self, target: &PureState) -> f64 {
        self.amps.iter().zip(&target.amps).map(|(a, b)| b.conj() * a).sum::<Complex64>().norm_sqr()
    }

    fn product_basis_distribution(&self, bases: &[crate::basis::LocalBasis]) -> Vec<f64> {
        let mut amps = self.amps.clone();
        for (k, b) in bases.iter().enumerate() {
            apply_single(&mut amps, self.n, k + 1, &b.projector_rows());
        }
        amps.iter().map(|a| a.norm_sqr()).collect()
    }

    fn to_density_matrix(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

impl QuantumState for DensityMatrix {
    fn n_qubits(&self) -> usize {
        self.n
    }

    fn word_expectation(&self, word: &PauliWord) -> f64 {
        let mask = word.flip_mask();
        // Tr[Pρ] = Σ_j phase_j ρ[j][j^mask]
        (0..self.m.rows())
            .map(|j| word.phase_on(j) * self.m[(j, j ^ mask)])
            .sum::<Complex64>()
            .re
    }

    fn overlap_with(&self, target: &PureState) -> f64 {
        let rt = self.m.mul_vec(&target.amps);
        target.amps.iter().zip(&rt).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
    }

    fn product_basis_distribution(&self, bases: &[crate::basis::LocalBasis]) -> Vec<f64> {
        let mut rho = self.clone();
        for (k, b) in bases.iter().enumerate() {
            rho = rho.conjugate_single(k + 1, &b.projector_rows());
        }
        (0..rho.m.rows()).map(|i| rho.m[(i, i)].re.max(0.0)).collect()
    }

    fn to_density_matrix(&self) -> DensityMatrix {
        self.clone()
    }
}

/// `⟨target|a|target⟩`; for a pure `a` this is `|⟨target|a⟩|²`.
pub fn fidelity(a: &impl QuantumState, target: &PureState) -> Result<f64> {
    same_size(a.n_qubits(), target.n_qubits())?;
    Ok(a.overlap_with(target))
}

/// `coefficient · ⟨word⟩`.
pub fn pauli_expectation(state: &impl QuantumState, p: &PauliString) -> Result<f64> {
    same_size(state.n_qubits(), p.n_qubits())?;
    Ok(p.coefficient * state.word_expectation(&p.word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::LocalBasis;

    #[test]
    fn cluster_amplitudes() {
        let s = cluster4();
        assert_eq!(s.amplitude(0b0000), c(0.5, 0.0));
        assert_eq!(s.amplitude(0b1111), c(-0.5, 0.0));
        assert!((s.norm() - 1.0).abs() < 1e-15);
        let zzii = PauliString::new("ZZII", 1.0).unwrap();
        assert!((pauli_expectation(&s, &zzii).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn yyzi_on_cluster_is_minus_one() {
        let y = PauliString::new("YYZI", 1.0).unwrap();
        assert!((pauli_expectation(&cluster4(), &y).unwrap() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn named_states() {
        let ghz = named_state("ghz4").unwrap();
        assert!((ghz.amplitude(0).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((ghz.amplitude(15).re - FRAC_1_SQRT_2).abs() < 1e-15);
        let d = named_state("dicke4").unwrap();
        let nz: Vec<_> = d.amplitudes().iter().filter(|a| a.norm() > 0.0).collect();
        assert_eq!(nz.len(), 6);
        assert!(nz.iter().all(|a| (a.re - 1.0 / 6f64.sqrt()).abs() < 1e-15));
        for name in ["w4", "plus", "minus", "r", "l", "h", "v"] {
            assert!((named_state(name).unwrap().norm() - 1.0).abs() < 1e-15);
        }
        assert!(matches!(named_state("bell"), Err(Error::UnknownState(_))));
    }

    #[test]
    fn fidelity_examples() {
        let c4 = cluster4();
        assert!((fidelity(&c4, &c4).unwrap() - 1.0).abs() < 1e-15);
        let mixed = DensityMatrix::maximally_mixed(4);
        assert!((fidelity(&mixed, &c4).unwrap() - 1.0 / 16.0).abs() < 1e-15);
        // HHHH contributes +1/(2√2) and VVVV contributes −1/(2√2)
        let ghz = named_state("ghz4").unwrap();
        let f = fidelity(&ghz, &c4).unwrap();
        let by_hand = (0.5 * FRAC_1_SQRT_2 - 0.5 * FRAC_1_SQRT_2).powi(2);
        assert!((f - by_hand).abs() < 1e-15);
        assert!(fidelity(&named_state("plus").unwrap(), &c4).is_err());
    }

    #[test]
    fn mixed_state_traceless_paulis_vanish() {
        let mixed = DensityMatrix::maximally_mixed(4);
        for w in PauliWord::all(4).skip(1) {
            assert!(mixed.word_expectation(&w).abs() < 1e-15);
        }
    }

    #[test]
    fn density_validation() {
        let good = DensityMatrix::new(1, Matrix::identity(2).scale(0.5));
        assert!(good.is_ok());
        let bad_trace = DensityMatrix::new(1, Matrix::identity(2));
        assert!(bad_trace.is_err());
        let negative = DensityMatrix::new(1, Matrix::from_vec(2, 2, vec![c(1.5, 0.), c(0., 0.), c(0., 0.), c(-0.5, 0.)]));
        assert!(negative.is_err());
        assert!(PureState::new(1, vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(PureState::new(2, vec![c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn json_shape() {
        let s = named_state("r").unwrap();
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(j["n"], 1);
        assert_eq!(j["re"].as_array().unwrap().len(), 2);
        let back: PureState = serde_json::from_value(j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<PureState>(r#"{"n":1,"re":[1,1],"im":[0,0]}"#).is_err());
    }

    #[test]
    fn permute_swaps_qubits() {
        let s = PureState::basis(3, 0b100).unwrap();
        let p = s.permute(&[3, 1, 2]).unwrap();
        assert_eq!(p.amplitude(0b010), c(1.0, 0.0));
        let rho = s.to_density().permute(&[3, 1, 2]).unwrap();
        assert_eq!(rho.matrix()[(0b010, 0b010)], c(1.0, 0.0));
    }

    #[test]
    fn pure_and_mixed_distributions_agree() {
        let c4 = cluster4();
        let bases = [LocalBasis::X, LocalBasis::Y, LocalBasis::Z, LocalBasis::PlanarStd(0.3)];
        let a = c4.product_basis_distribution(&bases);
        let b = c4.to_density().product_basis_distribution(&bases);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-14);
        }
        assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }
}
