//! Pauli letters, words and weighted Pauli strings.
//!
//! Words are written left to right starting at qubit 1, so `ZZII` applies
//! `Z` to qubits 1 and 2. Qubit 1 is the most significant bit of a basis
//! index.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Search order used when looking for corrections.
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Whether the letter flips the computational basis bit.
    pub fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Phase picked up on `|bit⟩` (before any flip).
    pub fn phase(self, bit: usize) -> Complex64 {
        let sign = if bit == 1 { -1.0 } else { 1.0 };
        match self {
            Pauli::I | Pauli::X => Complex64::new(1.0, 0.0),
            Pauli::Z => Complex64::new(sign, 0.0),
            Pauli::Y => Complex64::new(0.0, sign),
        }
    }

    pub fn commutes_with(self, other: Pauli) -> bool {
        self == Pauli::I || other == Pauli::I || self == other
    }

    pub fn matrix(self) -> Matrix {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let data = match self {
            Pauli::I => vec![o, z, z, o],
            Pauli::X => vec![z, o, o, z],
            Pauli::Y => vec![z, -i, i, z],
            Pauli::Z => vec![o, z, z, -o],
        };
        Matrix::from_vec(2, 2, data)
    }
}

/// An unweighted word over {I, X, Y, Z}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliWord(pub Vec<Pauli>);

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        Self(vec![Pauli::I; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// Bitmask of flipped basis bits, in index convention (qubit 1 = MSB).
    pub fn flip_mask(&self) -> usize {
        let n = self.len();
        self.0
            .iter()
            .enumerate()
            .filter(|(_, p)| p.flips())
            .fold(0, |m, (q, _)| m | (1 << (n - 1 - q)))
    }

    /// `P|index⟩ = phase · |index ^ flip_mask⟩`.
    pub fn phase_on(&self, index: usize) -> Complex64 {
        let n = self.len();
        self.0
            .iter()
            .enumerate()
            .map(|(q, p)| p.phase((index >> (n - 1 - q)) & 1))
            .product()
    }

    /// Every Pauli word of length `n`, ordered lexicographically by `I < X < Y < Z`.
    pub fn all(n: usize) -> impl Iterator<Item = PauliWord> {
        (0..4usize.pow(n as u32)).map(move |mut k| {
            let mut letters = vec![Pauli::I; n];
            for slot in letters.iter_mut().rev() {
                *slot = Pauli::ALL[k % 4];
                k /= 4;
            }
            PauliWord(letters)
        })
    }

    /// Dense `2^n × 2^n` matrix, built as a Kronecker product.
    pub fn to_matrix(&self) -> Matrix {
        self.0.iter().fold(Matrix::identity(1), |acc, p| acc.kron(&p.matrix()))
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters: Option<Vec<Pauli>> = s.trim().chars().map(Pauli::from_char).collect();
        match letters {
            Some(l) if !l.is_empty() => Ok(Self(l)),
            _ => Err(Error::InvalidPauli(s.to_string())),
        }
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl Serialize for PauliWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Pauli word with a real coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliString {
    pub word: PauliWord,
    #[serde(rename = "coeff")]
    pub coefficient: f64,
}

impl PauliString {
    pub fn new(word: &str, coefficient: f64) -> Result<Self> {
        Ok(Self {
            word: word.parse()?,
            coefficient,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.word.len()
    }
}

impl From<PauliWord> for PauliString {
    fn from(word: PauliWord) -> Self {
        Self { word, coefficient: 1.0 }
    }
}
