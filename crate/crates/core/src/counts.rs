//! Coincidence counts per tomographic setting.
//!
//! Outcome `o` of a setting is indexed with qubit 1 as the most significant
//! bit and labelled letter by letter: `H`/`V` for `Z`, `+`/`-` for `X`,
//! `R`/`L` for `Y`. Error bars treat every count as an independent Poisson
//! variable.
//!
//! CSV layout:
//!
//! ```text
//! setting,outcome,count
//! XXZZ,++HH,250
//! ```
//!
//! Outcomes not listed count as zero. Consecutive rows with the same setting
//! form one record until an outcome repeats.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::state::QuantumState;
use crate::witness::{ObservableSum, TomographicSetting};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub setting: TomographicSetting,
    pub counts: Vec<u64>,
}

impl CountRecord {
    pub fn new(setting: TomographicSetting, counts: Vec<u64>) -> Result<Self> {
        let n = setting.n_qubits();
        if counts.len() != 1 << n {
            return Err(Error::LengthMismatch { n, len: counts.len() });
        }
        Ok(Self { setting, counts })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Exact outcome probabilities, standing in for infinitely many events.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactRecord {
    pub setting: TomographicSetting,
    pub probabilities: Vec<f64>,
}

/// Per-setting outcome data that expectations can be read from.
pub trait OutcomeData: Sized {
    fn setting(&self) -> &TomographicSetting;

    /// Outcome frequencies summing to 1.
    fn frequencies(&self) -> Result<Vec<f64>>;

    /// Number of events behind the frequencies, `None` when exact.
    fn events(&self) -> Option<f64>;

    /// Combines records taken in the same setting.
    fn aggregate(records: &[&Self]) -> Result<Self>;
}

impl OutcomeData for CountRecord {
    fn setting(&self) -> &TomographicSetting {
        &self.setting
    }

    fn frequencies(&self) -> Result<Vec<f64>> {
        probabilities(self)
    }

    fn events(&self) -> Option<f64> {
        Some(self.total() as f64)
    }

    fn aggregate(records: &[&Self]) -> Result<Self> {
        let first = records.first().ok_or(Error::Empty("records"))?;
        let mut counts = vec![0u64; first.counts.len()];
        for r in records {
            check_same(&first.setting, &r.setting)?;
            for (acc, c) in counts.iter_mut().zip(&r.counts) {
                *acc += c;
            }
        }
        CountRecord::new(first.setting.clone(), counts)
    }
}

impl OutcomeData for ExactRecord {
    fn setting(&self) -> &TomographicSetting {
        &self.setting
    }

    fn frequencies(&self) -> Result<Vec<f64>> {
        let total: f64 = self.probabilities.iter().sum();
        if total <= 0.0 {
            return Err(Error::NoEvents(self.setting.to_string()));
        }
        Ok(self.probabilities.iter().map(|p| p / total).collect())
    }

    fn events(&self) -> Option<f64> {
        None
    }

    /// Averages the distributions.
    fn aggregate(records: &[&Self]) -> Result<Self> {
        let first = records.first().ok_or(Error::Empty("records"))?;
        let mut probabilities = vec![0.0; first.probabilities.len()];
        for r in records {
            check_same(&first.setting, &r.setting)?;
            for (acc, p) in probabilities.iter_mut().zip(r.frequencies()?) {
                *acc += p / records.len() as f64;
            }
        }
        Ok(ExactRecord {
            setting: first.setting.clone(),
            probabilities,
        })
    }
}

fn check_same(a: &TomographicSetting, b: &TomographicSetting) -> Result<()> {
    if a != b {
        return Err(Error::IncompatibleSetting {
            word: b.to_string(),
            setting: a.to_string(),
        });
    }
    Ok(())
}

fn letters_for(p: Pauli) -> [char; 2] {
    match p {
        Pauli::Z => ['H', 'V'],
        Pauli::X => ['+', '-'],
        Pauli::Y => ['R', 'L'],
        Pauli::I => unreachable!("settings carry no identity letters"),
    }
}

/// Label of outcome `index`, e.g. `++HH`.
pub fn outcome_label(setting: &TomographicSetting, index: usize) -> String {
    let n = setting.n_qubits();
    setting
        .letters()
        .iter()
        .enumerate()
        .map(|(k, &p)| letters_for(p)[(index >> (n - 1 - k)) & 1])
        .collect()
}

/// Inverse of [`outcome_label`]; accepts `−` (U+2212) for `-`.
pub fn outcome_index(setting: &TomographicSetting, label: &str) -> Result<usize> {
    let bad = || Error::InvalidPauli(format!("outcome `{label}` for setting {setting}"));
    let chars: Vec<char> = label.trim().chars().map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
    if chars.len() != setting.n_qubits() {
        return Err(bad());
    }
    let mut index = 0;
    for (c, &p) in chars.iter().zip(setting.letters()) {
        let bit = letters_for(p).iter().position(|l| l.eq_ignore_ascii_case(c)).ok_or_else(bad)?;
        index = (index << 1) | bit;
    }
    Ok(index)
}

/// Born distribution of `state` in `setting`.
pub fn born_record(state: &impl QuantumState, setting: &TomographicSetting) -> Result<ExactRecord> {
    if state.n_qubits() != setting.n_qubits() {
        return Err(Error::DimensionMismatch {
            left: state.n_qubits(),
            right: setting.n_qubits(),
        });
    }
    Ok(ExactRecord {
        setting: setting.clone(),
        probabilities: state.product_basis_distribution(&setting.bases()),
    })
}

/// Multinomial draw of `total` events from the Born distribution, seeded.
pub fn sample_counts(state: &impl QuantumState, setting: &TomographicSetting, total: u64, seed: u64) -> Result<CountRecord> {
    if total == 0 {
        return Err(Error::NoEvents(setting.to_string()));
    }
    let probs = born_record(state, setting)?.probabilities;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; probs.len()];
    let mut left = total;
    let mut mass: f64 = probs.iter().sum();
    // conditional binomials: outcome i gets Bin(left, p_i / remaining mass)
    for (i, &p) in probs.iter().enumerate() {
        if left == 0 {
            break;
        }
        if i + 1 == probs.len() {
            counts[i] = left;
            break;
        }
        let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let k = Binomial::new(left, q).expect("probability clamped to [0, 1]").sample(&mut rng);
        counts[i] = k;
        left -= k;
        mass -= p;
    }
    CountRecord::new(setting.clone(), counts)
}

/// Counts normalized by their total.
pub fn probabilities(rec: &CountRecord) -> Result<Vec<f64>> {
    let total = rec.total();
    if total == 0 {
        return Err(Error::NoEvents(rec.setting.to_string()));
    }
    Ok(rec.counts.iter().map(|&c| c as f64 / total as f64).collect())
}

/// `coefficient · ⟨word⟩` and its Poisson standard error.
///
/// The sign of outcome `o` is the product of the ±1 eigenvalues on the
/// non-identity letters; `σ = √(Σ n_o (s_o − v)²) / N`, zero for exact records.
pub fn expectation_from_counts(rec: &impl OutcomeData, term: &PauliString) -> Result<(f64, f64)> {
    let setting = rec.setting();
    if !setting.is_compatible(&term.word) {
        return Err(Error::IncompatibleSetting {
            word: term.word.to_string(),
            setting: setting.to_string(),
        });
    }
    let n = setting.n_qubits();
    let mask = term
        .word
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != Pauli::I)
        .fold(0usize, |m, (k, _)| m | 1 << (n - 1 - k));
    let sign = |o: usize| if (o & mask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    let freq = rec.frequencies()?;
    let value: f64 = freq.iter().enumerate().map(|(o, f)| sign(o) * f).sum();
    let sigma = match rec.events() {
        // Σ n_o (s_o − v)² / N² = Σ f_o (s_o − v)² / N
        Some(total) => (freq.iter().enumerate().map(|(o, f)| f * (sign(o) - value).powi(2)).sum::<f64>() / total).sqrt(),
        None => 0.0,
    };
    Ok((term.coefficient * value, term.coefficient.abs() * sigma))
}

/// `Σ coeff·⟨word⟩ + offset` with errors added in quadrature.
///
/// Records sharing a setting are aggregated first; each term is then read
/// from the first compatible setting in list order.
pub fn witness_from_counts<R: OutcomeData>(records: &[R], b: &ObservableSum) -> Result<(f64, f64)> {
    let mut groups: BTreeMap<&TomographicSetting, Vec<&R>> = BTreeMap::new();
    let mut order: Vec<&TomographicSetting> = Vec::new();
    for r in records {
        let entry = groups.entry(r.setting()).or_default();
        if entry.is_empty() {
            order.push(r.setting());
        }
        entry.push(r);
    }
    let merged: Vec<R> = order.iter().map(|s| R::aggregate(&groups[s])).collect::<Result<_>>()?;

    let mut value = b.identity_offset;
    let mut var = 0.0;
    for term in &b.terms {
        if term.word.is_identity() {
            value += term.coefficient;
            continue;
        }
        let rec = merged
            .iter()
            .find(|r| r.setting().is_compatible(&term.word))
            .ok_or_else(|| Error::MissingSetting(term.word.to_string()))?;
        let (v, s) = expectation_from_counts(rec, term)?;
        value += v;
        var += s * s;
    }
    Ok((value, var.sqrt()))
}

#[derive(Serialize, Deserialize)]
struct Row {
    setting: String,
    outcome: String,
    count: i64,
}

pub fn parse_counts(text: &str) -> Result<Vec<CountRecord>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["setting", "outcome", "count"] {
        return Err(Error::Parse {
            line: 1,
            msg: "expected header `setting,outcome,count`".into(),
        });
    }
    let mut out: Vec<CountRecord> = Vec::new();
    let mut seen: Vec<bool> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let fail = |msg: String| Error::Parse { line, msg };
        let row: Row = record.deserialize(Some(&headers)).map_err(|e| fail(e.to_string()))?;
        let setting: TomographicSetting = row.setting.parse().map_err(|e: Error| fail(e.to_string()))?;
        let idx = outcome_index(&setting, &row.outcome).map_err(|e| fail(e.to_string()))?;
        if row.count < 0 {
            return Err(fail(format!("negative count {}", row.count)));
        }
        let start_new = match out.last() {
            Some(last) => last.setting != setting || seen[idx],
            None => true,
        };
        if start_new {
            out.push(CountRecord::new(setting.clone(), vec![0; 1 << setting.n_qubits()])?);
            seen = vec![false; 1 << setting.n_qubits()];
        }
        seen[idx] = true;
        out.last_mut().expect("record pushed above").counts[idx] = row.count as u64;
    }
    Ok(out)
}

/// Every outcome of every record, zeros included, so parsing restores the input.
pub fn serialize_counts(records: &[CountRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["setting", "outcome", "count"])?;
    for r in records {
        let setting = r.setting.to_string();
        for (i, c) in r.counts.iter().enumerate() {
            w.write_record([setting.as_str(), &outcome_label(&r.setting, i), &c.to_string()])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

/// JSON form: an array of `{"setting": "XXZZ", "counts": [...]}`.
pub fn parse_counts_json(text: &str) -> Result<Vec<CountRecord>> {
    let raw: Vec<CountRecord> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    raw.into_iter().map(|r| CountRecord::new(r.setting, r.counts)).collect()
}
