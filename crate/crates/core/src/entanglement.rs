//! Schmidt-rank signatures over the three two-versus-two cuts of four qubits,
//! and the fidelity ceilings that follow from bounded Schmidt rank.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::schmidt::schmidt_decomposition;
use crate::state::PureState;

/// Default cutoff on Schmidt coefficients (not their squares).
pub const DEFAULT_RANK_TOL: f64 = 1e-7;

/// The cuts `(12)(34)`, `(13)(24)`, `(14)(23)`, named by the pair containing qubit 1.
pub const PAIR_CUTS: [[usize; 2]; 3] = [[1, 2], [1, 3], [1, 4]];

/// Schmidt ranks `(r12, r13, r14)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankSignature {
    pub r12: usize,
    pub r13: usize,
    pub r14: usize,
}

impl RankSignature {
    pub fn as_tuple(self) -> (usize, usize, usize) {
        (self.r12, self.r13, self.r14)
    }
}

impl fmt::Display for RankSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r12, self.r13, self.r14)
    }
}

pub fn rank_signature(state: &PureState, tol: f64) -> Result<RankSignature> {
    if state.n_qubits() != 4 {
        return Err(Error::DimensionMismatch {
            left: state.n_qubits(),
            right: 4,
        });
    }
    let rank = |cut: &[usize]| -> Result<usize> { Ok(schmidt_decomposition(state, cut)?.rank(tol)) };
    Ok(RankSignature {
        r12: rank(&PAIR_CUTS[0])?,
        r13: rank(&PAIR_CUTS[1])?,
        r14: rank(&PAIR_CUTS[2])?,
    })
}

/// Largest fidelity with `target` reachable by any state of Schmidt rank at
/// most `k` across `partition`: the sum of the `k` largest squared coefficients.
pub fn fidelity_ceiling(target: &PureState, partition: &[usize], k: usize) -> Result<f64> {
    let d = schmidt_decomposition(target, partition)?;
    let max = d.coefficients.len();
    if k == 0 || k > max {
        return Err(Error::RankOutOfRange { k, max });
    }
    Ok(d.coefficients[..k].iter().map(|x| x * x).sum())
}

/// Entanglement classes ruled out by a fidelity to the cluster state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExcludedClass {
    /// Mixtures of biseparable states; exclusion certifies genuine four-qubit entanglement.
    Biseparable,
    /// Mixtures of states with `r13 ≤ 2` or `r14 ≤ 2`, including GHZ and W.
    RankTwoCut,
    /// Mixtures of states with `r13 ≤ 3` or `r14 ≤ 3`, including the Dicke state.
    RankThreeCut,
}

impl ExcludedClass {
    pub fn label(self) -> &'static str {
        match self {
            ExcludedClass::Biseparable => "biseparable",
            ExcludedClass::RankTwoCut => "rank-two-cut (GHZ, W)",
            ExcludedClass::RankThreeCut => "rank-three-cut (Dicke)",
        }
    }
}

/// Strict thresholds: `f > 1/2` excludes biseparable and rank-two classes,
/// `f > 3/4` additionally excludes the rank-three class.
pub fn classify_by_fidelity(f: f64) -> Result<Vec<ExcludedClass>> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::OutOfUnitRange(f));
    }
    let mut out = Vec::new();
    if f > 0.5 {
        out.push(ExcludedClass::Biseparable);
        out.push(ExcludedClass::RankTwoCut);
    }
    if f > 0.75 {
        out.push(ExcludedClass::RankThreeCut);
    }
    Ok(out)
}
