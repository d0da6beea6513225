//! Best average output fidelity reachable without entanglement.
//!
//! Without shared entanglement the output side only learns which of at most
//! `2^bits` messages was sent. A strategy is therefore a grouping of the
//! instruction-indexed targets into at most `2^bits` blocks plus one prepared
//! state per block; the best state for a block is the top eigenvector of the
//! block's mean projector. Mixing strategies cannot beat the best pure one
//! because the average fidelity is linear in the strategy weights, so the
//! optimum is found by exhausting all groupings.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::partition::{enumerate_partitions, SetPartition, MAX_ELEMENTS};
use crate::state::PureState;

/// Improvements smaller than this do not displace an earlier partition.
const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct GroupingStrategy {
    /// Blocks of 0-based target indices.
    pub groups: Vec<Vec<usize>>,
    pub prepared_states: Vec<PureState>,
    pub average_fidelity: f64,
}

fn mean_projector(states: &[&PureState]) -> Result<Matrix> {
    let first = states.first().ok_or(Error::Empty("group of states"))?;
    let dim = first.dim();
    let mut acc = Matrix::zeros(dim, dim);
    for s in states {
        if s.n_qubits() != first.n_qubits() {
            return Err(Error::DimensionMismatch {
                left: first.n_qubits(),
                right: s.n_qubits(),
            });
        }
        acc = acc.add(&Matrix::outer(s.amplitudes(), s.amplitudes()));
    }
    Ok(acc.scale(1.0 / states.len() as f64))
}

fn top_eigen(states: &[&PureState]) -> Result<(PureState, f64)> {
    let m = mean_projector(states)?;
    let e = m.eigh();
    let top = e.values.len() - 1;
    let state = PureState::from_unnormalized(states[0].n_qubits(), e.vectors.column(top))?;
    Ok((state, e.values[top]))
}

/// State maximizing the mean fidelity to every member of `states`, and that mean.
pub fn optimal_group_state(states: &[PureState]) -> Result<(PureState, f64)> {
    let refs: Vec<&PureState> = states.iter().collect();
    top_eigen(&refs)
}

/// Exhaustive optimum over all groupings into at most `2^bits` blocks.
///
/// Among equally good groupings the first in growth-string order is returned.
pub fn classical_bound(targets: &[PureState], bits: u32) -> Result<(f64, GroupingStrategy)> {
    let n = targets.len();
    if n == 0 {
        return Err(Error::Empty("targets"));
    }
    if n > MAX_ELEMENTS {
        return Err(Error::TooLarge(format!("{n} targets exceeds the limit of {MAX_ELEMENTS}")));
    }
    mean_projector(&targets.iter().collect::<Vec<_>>())?;
    let max_blocks = if bits >= usize::BITS { n } else { (1usize << bits).min(n) };

    // summed fidelity of the best state for each subset, filled on demand
    let mut block_value: Vec<Option<f64>> = vec![None; 1 << n];
    let mut value_of = |mask: usize| -> Result<f64> {
        if let Some(v) = block_value[mask] {
            return Ok(v);
        }
        let members: Vec<&PureState> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &targets[i]).collect();
        let v = top_eigen(&members)?.1 * members.len() as f64;
        block_value[mask] = Some(v);
        Ok(v)
    };

    let mut best: Option<(f64, SetPartition)> = None;
    for p in enumerate_partitions(n, max_blocks)? {
        let mut total = 0.0;
        for mask in p.block_masks() {
            total += value_of(mask)?;
        }
        let avg = total / n as f64;
        if best.as_ref().is_none_or(|(b, _)| avg > b + TIE_TOL) {
            best = Some((avg, p));
        }
    }
    let (value, partition) = best.expect("at least one partition");
    let groups = partition.blocks();
    let prepared_states = groups
        .iter()
        .map(|g| {
            let members: Vec<&PureState> = g.iter().map(|&i| &targets[i]).collect();
            top_eigen(&members).map(|(s, _)| s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        value,
        GroupingStrategy {
            groups,
            prepared_states,
            average_fidelity: value,
        },
    ))
}

/// Average fidelity of a fixed grouping, each block prepared optimally.
pub fn grouping_value(targets: &[PureState], groups: &[Vec<usize>]) -> Result<f64> {
    let mut total = 0.0;
    for g in groups {
        let members: Vec<&PureState> = g.iter().map(|&i| &targets[i]).collect();
        total += top_eigen(&members)?.1 * members.len() as f64;
    }
    Ok(total / targets.len() as f64)
}

/// `(measured − bound) / error`, in standard deviations.
pub fn margin_report(measured_mean: f64, measured_err: f64, bound: f64) -> Result<f64> {
    if measured_err <= 0.0 || measured_err.is_nan() {
        return Err(Error::NonPositiveError(measured_err));
    }
    Ok((measured_mean - bound) / measured_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mbqc::{table_single, table_two_qubit};
    use crate::state::{fidelity, named_state};
    use std::f64::consts::PI;

    fn cos2_pi8() -> f64 {
        (PI / 8.0).cos().powi(2)
    }

    #[test]
    fn pair_at_45_degrees() {
        let rows = table_two_qubit();
        let (state, mean) = optimal_group_state(&[rows[0].ket.clone(), rows[1].ket.clone()]).unwrap();
        assert!((mean - cos2_pi8()).abs() < 1e-12);
        // the optimum is realized by the returned state
        let f = (fidelity(&state, &rows[0].ket).unwrap() + fidelity(&state, &rows[1].ket).unwrap()) / 2.0;
        assert!((f - mean).abs() < 1e-12);
        let (_, m) = optimal_group_state(&[named_state("plus").unwrap(), named_state("r").unwrap()]).unwrap();
        assert!((m - cos2_pi8()).abs() < 1e-12);
        let (s, m) = optimal_group_state(&[named_state("h").unwrap()]).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
        assert!((fidelity(&s, &named_state("h").unwrap()).unwrap() - 1.0).abs() < 1e-12);
        assert!(optimal_group_state(&[]).is_err());
    }

    #[test]
    fn two_qubit_bound() {
        let targets: Vec<PureState> = table_two_qubit().into_iter().map(|r| r.ket).collect();
        let (v, strat) = classical_bound(&targets, 2).unwrap();
        assert!((v - cos2_pi8()).abs() < 1e-9, "{v}");
        assert!(strat.groups.len() <= 4);
        assert!((grouping_value(&targets, &strat.groups).unwrap() - v).abs() < 1e-12);
        // the grouping quoted alongside the bound attains it
        let quoted = vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]];
        assert!((grouping_value(&targets, &quoted).unwrap() - cos2_pi8()).abs() < 1e-12);
    }

    #[test]
    fn single_qubit_bound() {
        let targets: Vec<PureState> = table_single().into_iter().map(|r| r.ket).collect();
        let (v, _) = classical_bound(&targets, 2).unwrap();
        let expected = 1.0 / 3.0 + 2.0 / 3.0 * cos2_pi8();
        assert!((v - expected).abs() < 1e-9, "{v}");
        // |H⟩, |V⟩, {|+⟩,|R⟩}, {|−⟩,|L⟩} in table order: +,−,R,L,H,V
        let quoted = vec![vec![4], vec![5], vec![0, 2], vec![1, 3]];
        assert!((grouping_value(&targets, &quoted).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn enough_bits_is_perfect() {
        let targets: Vec<PureState> = table_single().into_iter().map(|r| r.ket).collect();
        let (v, strat) = classical_bound(&targets, 3).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert_eq!(strat.groups.len(), 6);
    }

    #[test]
    fn zero_bits_is_top_eigenvalue() {
        let targets: Vec<PureState> = table_two_qubit().into_iter().map(|r| r.ket).collect();
        let (v, _) = classical_bound(&targets, 0).unwrap();
        let (_, top) = optimal_group_state(&targets).unwrap();
        assert!((v - top).abs() < 1e-12);
    }

    #[test]
    fn guards() {
        let many = vec![named_state("h").unwrap(); 13];
        assert!(classical_bound(&many, 2).is_err());
        assert!(classical_bound(&[], 2).is_err());
        assert!(classical_bound(&[named_state("h").unwrap(), crate::state::cluster4()], 1).is_err());
    }

    #[test]
    fn margins() {
        assert!((margin_report(0.895, 0.010, 0.8536).unwrap() - 4.14).abs() < 0.01);
        assert!((margin_report(0.926, 0.010, 0.9018).unwrap() - 2.42).abs() < 0.01);
        assert_eq!(margin_report(0.9, 0.3, 0.9).unwrap(), 0.0);
        assert!(margin_report(0.9, 0.0, 0.8).is_err());
    }
}
