//! Fidelity-bound operators for the cluster state.
//!
//! An observable `B` with `|C4⟩⟨C4| ≥ B` turns the measurable value `Tr[Bρ]`
//! into a lower bound on `⟨C4|ρ|C4⟩`. Two such operators are provided: one
//! needing the two settings `XXZZ`, `ZZXX`, and a tighter one that adds
//! `YYZZ`, `ZZYY`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basis::LocalBasis;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pauli::{Pauli, PauliString, PauliWord};
use crate::state::{PureState, QuantumState};

/// Weighted Pauli sum plus a multiple of the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableSum {
    pub terms: Vec<PauliString>,
    #[serde(rename = "offset")]
    pub identity_offset: f64,
}

impl ObservableSum {
    pub fn new(terms: Vec<PauliString>, identity_offset: f64) -> Result<Self> {
        if let Some(first) = terms.first() {
            if let Some(bad) = terms.iter().find(|t| t.n_qubits() != first.n_qubits()) {
                return Err(Error::DimensionMismatch {
                    left: first.n_qubits(),
                    right: bad.n_qubits(),
                });
            }
        }
        Ok(Self { terms, identity_offset })
    }

    fn from_words(words: &[(&str, f64)], offset: f64) -> Self {
        let terms = words
            .iter()
            .map(|&(w, k)| PauliString::new(w, k).expect("static Pauli word"))
            .collect();
        Self {
            terms,
            identity_offset: offset,
        }
    }

    /// Qubit count of the terms, `None` for a bare multiple of the identity.
    pub fn n_qubits(&self) -> Option<usize> {
        self.terms.first().map(PauliString::n_qubits)
    }

    pub fn to_matrix(&self, n: usize) -> Result<Matrix> {
        let mut m = Matrix::identity(1 << n).scale(self.identity_offset);
        for t in &self.terms {
            if t.n_qubits() != n {
                return Err(Error::DimensionMismatch { left: n, right: t.n_qubits() });
            }
            m = m.add(&t.word.to_matrix().scale(t.coefficient));
        }
        Ok(m)
    }

    /// Pauli expansion `Σ_P Tr[P M]/2^n · P` of a Hermitian matrix.
    /// Coefficients below `1e-14` in magnitude are dropped.
    pub fn from_matrix(n: usize, m: &Matrix) -> Result<Self> {
        if m.rows() != 1 << n || !m.is_square() {
            return Err(Error::LengthMismatch { n, len: m.rows() });
        }
        let dim = (1 << n) as f64;
        let mut terms = Vec::new();
        let mut offset = 0.0;
        for word in PauliWord::all(n) {
            let mask = word.flip_mask();
            let tr: num_complex::Complex64 = (0..m.rows()).map(|j| word.phase_on(j) * m[(j, j ^ mask)]).sum();
            let coeff = tr.re / dim;
            if coeff.abs() < 1e-14 {
                continue;
            }
            if word.is_identity() {
                offset = coeff;
            } else {
                terms.push(PauliString {
                    word,
                    coefficient: coeff,
                });
            }
        }
        Ok(Self {
            terms,
            identity_offset: offset,
        })
    }

    /// `|target⟩⟨target|` written as a Pauli sum.
    pub fn projector(target: &PureState) -> Self {
        let m = Matrix::outer(target.amplitudes(), target.amplitudes());
        Self::from_matrix(target.n_qubits(), &m).expect("square projector")
    }
}

/// `(1/4)(ZZII + IZXX + ZIXX + XXZI + IIZZ + XXIZ) − 1/2`.
pub fn build_b2() -> ObservableSum {
    let q = 0.25;
    ObservableSum::from_words(
        &[("ZZII", q), ("IZXX", q), ("ZIXX", q), ("XXZI", q), ("IIZZ", q), ("XXIZ", q)],
        -0.5,
    )
}

/// `(1/8)(XXZI + IZXX + ZIXX + XXIZ − YYZI − IZYY − ZIYY − YYIZ)`.
pub fn build_b4() -> ObservableSum {
    let e = 0.125;
    ObservableSum::from_words(
        &[
            ("XXZI", e),
            ("IZXX", e),
            ("ZIXX", e),
            ("XXIZ", e),
            ("YYZI", -e),
            ("IZYY", -e),
            ("ZIYY", -e),
            ("YYIZ", -e),
        ],
        0.0,
    )
}

/// `Tr[Bρ] = Σ_k c_k ⟨P_k⟩ + offset`.
pub fn witness_expectation(state: &impl QuantumState, b: &ObservableSum) -> Result<f64> {
    let n = state.n_qubits();
    let mut total = b.identity_offset;
    for t in &b.terms {
        if t.n_qubits() != n {
            return Err(Error::DimensionMismatch { left: n, right: t.n_qubits() });
        }
        total += t.coefficient * state.word_expectation(&t.word);
    }
    Ok(total)
}

/// Smallest eigenvalue of `|target⟩⟨target| − B`; nonnegative iff `B` is dominated.
pub fn verify_dominance(b: &ObservableSum, target: &PureState) -> Result<f64> {
    let n = target.n_qubits();
    let proj = Matrix::outer(target.amplitudes(), target.amplitudes());
    Ok(proj.sub(&b.to_matrix(n)?).min_eigenvalue())
}

/// One local Pauli basis per qubit, measured jointly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TomographicSetting(Vec<Pauli>);

impl TomographicSetting {
    pub fn new(letters: Vec<Pauli>) -> Result<Self> {
        if letters.is_empty() || letters.contains(&Pauli::I) {
            let s: String = letters.iter().map(|p| p.as_char()).collect();
            return Err(Error::InvalidPauli(s));
        }
        Ok(Self(letters))
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn bases(&self) -> Vec<LocalBasis> {
        self.0.iter().map(|&p| LocalBasis::pauli(p).expect("no identity in a setting")).collect()
    }

    /// A word is measurable if every non-identity letter matches the setting.
    pub fn is_compatible(&self, word: &PauliWord) -> bool {
        word.len() == self.0.len() && word.letters().iter().zip(&self.0).all(|(w, s)| *w == Pauli::I || w == s)
    }
}

impl FromStr for TomographicSetting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let w: PauliWord = s.parse()?;
        Self::new(w.0).map_err(|_| Error::InvalidPauli(s.to_string()))
    }
}

impl fmt::Display for TomographicSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl Serialize for TomographicSetting {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TomographicSetting {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Merges `word` into a partial setting if their letters agree wherever both are set.
fn merge(partial: &[Pauli], word: &[Pauli]) -> Option<Vec<Pauli>> {
    partial
        .iter()
        .zip(word)
        .map(|(&a, &b)| match (a, b) {
            (Pauli::I, x) | (x, Pauli::I) => Some(x),
            (x, y) if x == y => Some(x),
            _ => None,
        })
        .collect()
}

/// Assigns terms to at most `limit` blocks, trying lower block labels first.
fn assign(words: &[&[Pauli]], blocks: &mut Vec<Vec<Pauli>>, next: usize, limit: usize) -> bool {
    if next == words.len() {
        return true;
    }
    for b in 0..blocks.len() {
        if let Some(merged) = merge(&blocks[b], words[next]) {
            let saved = std::mem::replace(&mut blocks[b], merged);
            if assign(words, blocks, next + 1, limit) {
                return true;
            }
            blocks[b] = saved;
        }
    }
    if blocks.len() < limit {
        blocks.push(words[next].to_vec());
        if assign(words, blocks, next + 1, limit) {
            return true;
        }
        blocks.pop();
    }
    false
}

/// Fewest joint settings from which every term of `b` can be read off.
///
/// Terms are grouped into the smallest number of mutually compatible blocks
/// (first grouping in term order wins), and qubits left unconstrained in a
/// block are measured in `Z`, then `X`, then `Y` by priority.
pub fn required_settings(b: &ObservableSum) -> Vec<TomographicSetting> {
    let Some(n) = b.n_qubits() else {
        return Vec::new();
    };
    let words: Vec<&[Pauli]> = b.terms.iter().map(|t| t.word.letters()).filter(|w| w.iter().any(|&p| p != Pauli::I)).collect();
    if words.is_empty() {
        return vec![TomographicSetting(vec![Pauli::Z; n])];
    }
    let mut blocks = Vec::new();
    let mut limit = 1;
    while !assign(&words, &mut blocks, 0, limit) {
        blocks.clear();
        limit += 1;
    }
    let mut out: Vec<TomographicSetting> = Vec::new();
    for block in blocks {
        let filled = block.into_iter().map(|p| if p == Pauli::I { Pauli::Z } else { p }).collect();
        let setting = TomographicSetting(filled);
        if !out.contains(&setting) {
            out.push(setting);
        }
    }
    out
}
