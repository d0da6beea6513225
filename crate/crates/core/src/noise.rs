//! White-noise and dephasing channels.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gates::{apply_gate_mixed, Gate};
use crate::linalg::Matrix;
use crate::pauli::{Pauli, PauliWord};
use crate::state::{check_labels, DensityMatrix, PureState};

#[derive(Clone, Debug, PartialEq)]
pub enum NoiseSpec {
    /// `p|ψ⟩⟨ψ| + (1 − p) I/2^n`
    White { p: f64 },
    /// `ρ ↦ (1 − p)ρ + p ZρZ` on each listed qubit (all qubits when `None`).
    Dephase { p: f64, qubits: Option<Vec<usize>> },
}

impl NoiseSpec {
    pub fn white(p: f64) -> Result<Self> {
        check_p(p)?;
        Ok(NoiseSpec::White { p })
    }

    pub fn dephase(p: f64, qubits: Option<Vec<usize>>) -> Result<Self> {
        check_p(p)?;
        Ok(NoiseSpec::Dephase { p, qubits })
    }

    pub fn p(&self) -> f64 {
        match self {
            NoiseSpec::White { p } | NoiseSpec::Dephase { p, .. } => *p,
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfUnitRange(p))
    }
}

/// Parses `white:P` or `dephase:P[:q1,q2,...]`.
impl FromStr for NoiseSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidNoise(s.to_string());
        let mut parts = s.trim().split(':');
        let kind = parts.next().ok_or_else(bad)?;
        let p: f64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let qubits = parts
            .next()
            .map(|list| {
                list.split(',')
                    .map(|q| q.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        if parts.next().is_some() {
            return Err(bad());
        }
        match (kind.trim().to_ascii_lowercase().as_str(), qubits) {
            ("white", None) => NoiseSpec::white(p).map_err(|_| bad()),
            ("dephase", q) => NoiseSpec::dephase(p, q).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for NoiseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseSpec::White { p } => write!(f, "white:{p}"),
            NoiseSpec::Dephase { p, qubits: None } => write!(f, "dephase:{p}"),
            NoiseSpec::Dephase { p, qubits: Some(q) } => {
                let list: Vec<String> = q.iter().map(|x| x.to_string()).collect();
                write!(f, "dephase:{p}:{}", list.join(","))
            }
        }
    }
}

pub fn apply_noise(state: &PureState, spec: &NoiseSpec) -> Result<DensityMatrix> {
    apply_noise_mixed(&state.to_density(), spec)
}

pub fn apply_noise_mixed(rho: &DensityMatrix, spec: &NoiseSpec) -> Result<DensityMatrix> {
    check_p(spec.p())?;
    let n = rho.n_qubits();
    match spec {
        NoiseSpec::White { p } => {
            let dim = 1usize << n;
            let m = rho.matrix().scale(*p).add(&Matrix::identity(dim).scale((1.0 - p) / dim as f64));
            DensityMatrix::from_matrix_unchecked(n, m)
        }
        NoiseSpec::Dephase { p, qubits } => {
            let labels: Vec<usize> = qubits.clone().unwrap_or_else(|| (1..=n).collect());
            check_labels(n, &labels)?;
            let mut out = rho.clone();
            for q in labels {
                let flipped = apply_gate_mixed(&out, &Gate::Pauli(PauliWord(vec![Pauli::Z])), &[q])?;
                let m = out.matrix().scale(1.0 - p).add(&flipped.matrix().scale(*p));
                out = DensityMatrix::from_matrix_unchecked(n, m)?;
            }
            Ok(out)
        }
    }
}

/// Inverts `⟨B4⟩ = p` for a white-noise cluster state.
pub fn fit_white_p(b4_value: f64) -> Result<f64> {
    check_p(b4_value)?;
    Ok(b4_value)
}
