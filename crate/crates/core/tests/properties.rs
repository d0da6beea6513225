mod common;

use clustersim::basis::LocalBasis;
use clustersim::classical::{classical_bound, grouping_value, optimal_group_state};
use clustersim::counts::{born_record, expectation_from_counts, sample_counts, witness_from_counts, ExactRecord};
use clustersim::entanglement::{fidelity_ceiling, rank_signature, DEFAULT_RANK_TOL, PAIR_CUTS};
use clustersim::gates::{apply_gate, apply_gate_mixed, Gate};
use clustersim::linalg::Matrix;
use clustersim::mbqc::{branch_report, single_rotation_pattern, table_single, table_two_qubit, target_single, target_two_qubit, two_qubit_pattern, GateInstruction, MeasurementPattern};
use clustersim::measure::{measure, outcome_probabilities, Select};
use clustersim::noise::{apply_noise, NoiseSpec};
use clustersim::partition::enumerate_partitions;
use clustersim::pauli::{PauliString, PauliWord};
use clustersim::schmidt::schmidt_decomposition;
use clustersim::state::{cluster4, fidelity, named_state, DensityMatrix, PureState, QuantumState};
use clustersim::witness::{build_b2, build_b4, required_settings, witness_expectation};
use common::{random_circuit, random_density, random_local_unitary, random_state};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pauli_letter() -> impl Strategy<Value = char> {
    prop::sample::select(vec!['I', 'X', 'Y', 'Z'])
}

fn word(n: usize) -> impl Strategy<Value = PauliWord> {
    prop::collection::vec(pauli_letter(), n).prop_map(|c| c.into_iter().collect::<String>().parse().unwrap())
}

/// The two-qubit pattern at arbitrary angles and the single-qubit one with
/// `β` a multiple of π/2, the only values it realizes without adaptive bases.
fn patterns(alpha: f64, beta: f64, quarter: i32) -> Vec<(MeasurementPattern, PureState)> {
    let two = GateInstruction::new(alpha, beta);
    let single = GateInstruction::new(alpha, quarter as f64 * std::f64::consts::FRAC_PI_2);
    vec![
        (two_qubit_pattern(two).unwrap(), target_two_qubit(two)),
        (single_rotation_pattern(single).unwrap(), target_single(single)),
    ]
}

fn dense_expectation(rho: &DensityMatrix, w: &PauliWord) -> f64 {
    (&w.to_matrix() * rho.matrix()).trace().re
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gates_preserve_norm(seed: u64, n in 2usize..=5, theta in -7.0f64..7.0) {
        let mut r = rng(seed);
        let s = random_state(&mut r, n);
        let q = r.random_range(1..n);
        for (g, qs) in [(Gate::Rz(theta), vec![q]), (Gate::Rx(theta), vec![q + 1]), (Gate::Cz, vec![q, q + 1])] {
            let out = apply_gate(&s, &g, &qs).unwrap();
            prop_assert!((out.norm() - 1.0).abs() < 1e-10);
        }
        let rho = apply_gate_mixed(&random_density(&mut r, n), &Gate::Rx(theta), &[q]).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn born_completeness(seed: u64, n in 1usize..=5, theta in -7.0f64..7.0, which in 0usize..5) {
        let mut r = rng(seed);
        let s = random_state(&mut r, n);
        let basis = [LocalBasis::Z, LocalBasis::X, LocalBasis::Y, LocalBasis::PlanarStd(theta), LocalBasis::PlanarHad(theta)][which];
        let q = r.random_range(1..=n);
        let [p0, p1] = outcome_probabilities(&s, q, basis).unwrap();
        prop_assert!((p0 + p1 - 1.0).abs() < 1e-10);
        if n > 1 {
            let m = measure(&s, q, basis, Select::Random(seed)).unwrap();
            prop_assert!((m.collapsed.unwrap().norm() - 1.0).abs() < 1e-10);
        }
        let bases = vec![basis; n];
        prop_assert!((s.product_basis_distribution(&bases).iter().sum::<f64>() - 1.0).abs() < 1e-10);
        let rho = random_density(&mut r, n);
        let dist = rho.product_basis_distribution(&bases);
        prop_assert!((dist.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        prop_assert!(dist.iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn pauli_expectation_matches_dense(seed: u64, w in word(3)) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, 3);
        prop_assert!((rho.word_expectation(&w) - dense_expectation(&rho, &w)).abs() < 1e-10);
        let s = random_state(&mut r, 3);
        let pw = w.to_matrix().mul_vec(s.amplitudes());
        let dense: Complex64 = s.amplitudes().iter().zip(&pw).map(|(a, b)| a.conj() * b).sum();
        prop_assert!((s.word_expectation(&w) - dense.re).abs() < 1e-10);
        prop_assert!((s.word_expectation(&w) - s.to_density().word_expectation(&w)).abs() < 1e-10);
    }

    #[test]
    fn global_phase_is_invisible(seed: u64, phi in -7.0f64..7.0) {
        let mut r = rng(seed);
        let s = random_state(&mut r, 4);
        let t = random_state(&mut r, 4);
        let shifted = s.with_global_phase(phi);
        prop_assert!((fidelity(&s, &t).unwrap() - fidelity(&shifted, &t).unwrap()).abs() < 1e-12);
        prop_assert!((fidelity(&shifted, &s).unwrap() - 1.0).abs() < 1e-12);
        prop_assert_eq!(rank_signature(&s, DEFAULT_RANK_TOL).unwrap(), rank_signature(&shifted, DEFAULT_RANK_TOL).unwrap());
    }

    #[test]
    fn schmidt_coefficients_are_a_distribution(seed: u64, n in 2usize..=5) {
        let mut r = rng(seed);
        let s = random_state(&mut r, n);
        let size = r.random_range(1..n);
        let mut labels: Vec<usize> = (1..=n).collect();
        for i in 0..size {
            let j = r.random_range(i..n);
            labels.swap(i, j);
        }
        let d = schmidt_decomposition(&s, &labels[..size]).unwrap();
        prop_assert!((d.coefficients.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-10);
        prop_assert!(d.coefficients.windows(2).all(|w| w[0] >= w[1] - 1e-14));
        let full = d.truncated(d.coefficients.len()).unwrap();
        prop_assert!((fidelity(&full, &s).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bounded_rank_states_respect_ceiling(seed: u64, k in 1usize..=4, cut in 0usize..3) {
        let mut r = rng(seed);
        let c4 = cluster4();
        let partition = PAIR_CUTS[cut];
        let ceiling = fidelity_ceiling(&c4, &partition, k).unwrap();
        // Cauchy-Schwarz: a rank-k state across the cut cannot beat the top-k Schmidt weight
        let phi = schmidt_decomposition(&random_state(&mut r, 4), &partition).unwrap().truncated(k).unwrap();
        prop_assert!(fidelity(&phi, &c4).unwrap() <= ceiling + 1e-12);
        let near = schmidt_decomposition(&random_circuit(&mut r, &c4, 0), &partition).unwrap().truncated(k).unwrap();
        prop_assert!(fidelity(&near, &c4).unwrap() <= ceiling + 1e-12);
    }

    #[test]
    fn ceiling_is_monotone(seed: u64, cut in 0usize..3) {
        let mut r = rng(seed);
        let s = random_state(&mut r, 4);
        let values: Vec<f64> = (1..=4).map(|k| fidelity_ceiling(&s, &PAIR_CUTS[cut], k).unwrap()).collect();
        prop_assert!(values.windows(2).all(|w| w[0] <= w[1] + 1e-14));
        prop_assert!((values[3] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn witness_is_linear(seed: u64, t in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let a = random_density(&mut r, 4);
        let b = random_density(&mut r, 4);
        let mix = DensityMatrix::mixture(&[(t, &a), (1.0 - t, &b)]).unwrap();
        for w in [build_b2(), build_b4()] {
            let lhs = witness_expectation(&mix, &w).unwrap();
            let rhs = t * witness_expectation(&a, &w).unwrap() + (1.0 - t) * witness_expectation(&b, &w).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_records_reproduce_witness(seed: u64) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, 4);
        for b in [build_b2(), build_b4()] {
            let records: Vec<ExactRecord> = required_settings(&b).iter().map(|s| born_record(&rho, s).unwrap()).collect();
            let (v, sigma) = witness_from_counts(&records, &b).unwrap();
            prop_assert!((v - witness_expectation(&rho, &b).unwrap()).abs() < 1e-12);
            prop_assert_eq!(sigma, 0.0);
        }
    }

    #[test]
    fn signature_survives_local_unitaries(seed: u64) {
        let mut r = rng(seed);
        for (name, sig) in [("cluster4", (2, 4, 4)), ("ghz4", (2, 2, 2)), ("w4", (2, 2, 2)), ("dicke4", (3, 3, 3))] {
            let s = random_local_unitary(&mut r, &named_state(name).unwrap());
            prop_assert_eq!(rank_signature(&s, DEFAULT_RANK_TOL).unwrap().as_tuple(), sig);
        }
    }

    #[test]
    fn branch_probabilities_sum_to_one(alpha in -7.0f64..7.0, beta in -7.0f64..7.0, quarter in -4i32..4, p in 0.0f64..=1.0) {
        let rho = apply_noise(&cluster4(), &NoiseSpec::white(p).unwrap()).unwrap();
        for (pattern, target) in patterns(alpha, beta, quarter) {
            let report = branch_report(&pattern, &rho, &target).unwrap();
            prop_assert!((report.branch_probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fidelity_degrades_monotonically(alpha in -7.0f64..7.0, beta in -7.0f64..7.0, quarter in -4i32..4, p in 0.0f64..=1.0, q in 0.0f64..=1.0) {
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        for (pattern, target) in patterns(alpha, beta, quarter) {
            let at = |w: f64| {
                let rho = apply_noise(&cluster4(), &NoiseSpec::white(w).unwrap()).unwrap();
                branch_report(&pattern, &rho, &target).unwrap().mean_fidelity
            };
            prop_assert!(at(lo) <= at(hi) + 1e-12);
        }
    }

    #[test]
    fn dephasing_yields_valid_states(seed: u64, p in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let s = random_state(&mut r, 4);
        let rho = apply_noise(&s, &NoiseSpec::dephase(p, Some(vec![1, 3])).unwrap()).unwrap();
        prop_assert!(rho.validate().is_ok());
        let white = apply_noise(&s, &NoiseSpec::white(p).unwrap()).unwrap();
        prop_assert!(white.validate().is_ok());
        prop_assert!((fidelity(&white, &s).unwrap() - (p + (1.0 - p) / 16.0)).abs() < 1e-12);
    }

    #[test]
    fn group_state_matches_bloch_oracle(seed: u64, m in 1usize..=6) {
        // for one qubit the mean projector is (I + r̄·σ)/2, top eigenvalue (1 + |r̄|)/2
        let mut r = rng(seed);
        let states: Vec<PureState> = (0..m).map(|_| random_state(&mut r, 1)).collect();
        let mut bloch = [0.0; 3];
        for s in &states {
            for (k, w) in ["X", "Y", "Z"].iter().enumerate() {
                bloch[k] += s.word_expectation(&w.parse().unwrap()) / m as f64;
            }
        }
        let expected = (1.0 + bloch.iter().map(|x| x * x).sum::<f64>().sqrt()) / 2.0;
        let (best, value) = optimal_group_state(&states).unwrap();
        prop_assert!((value - expected).abs() < 1e-9);
        let achieved = states.iter().map(|s| fidelity(&best, s).unwrap()).sum::<f64>() / m as f64;
        prop_assert!((achieved - value).abs() < 1e-9);
    }

    #[test]
    fn group_state_matches_power_iteration(seed: u64, m in 2usize..=4) {
        let mut r = rng(seed);
        let states: Vec<PureState> = (0..m).map(|_| random_state(&mut r, 2)).collect();
        let mut mean = Matrix::zeros(4, 4);
        for s in &states {
            mean = mean.add(&Matrix::outer(s.amplitudes(), s.amplitudes()).scale(1.0 / m as f64));
        }
        // M + I shifts the spectrum to [1, 2] so iteration converges to the top eigenvalue
        let shifted = mean.add(&Matrix::identity(4));
        let mut v: Vec<Complex64> = random_state(&mut r, 2).amplitudes().to_vec();
        for _ in 0..20_000 {
            let w = shifted.mul_vec(&v);
            let norm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            v = w.into_iter().map(|x| x / norm).collect();
        }
        let mv = mean.mul_vec(&v);
        let rayleigh: f64 = v.iter().zip(&mv).map(|(a, b)| (a.conj() * b).re).sum();
        let (_, value) = optimal_group_state(&states).unwrap();
        prop_assert!(value >= rayleigh - 1e-12);
        prop_assert!((value - rayleigh).abs() < 1e-9, "{} vs {}", value, rayleigh);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn witnesses_never_overstate_fidelity(seed: u64, t in 0.0f64..=1.0) {
        let mut r = rng(seed);
        // bias half the cases toward the cluster state where the bounds are tight
        let noise = random_density(&mut r, 4);
        let rho = DensityMatrix::mixture(&[(t, &cluster4().to_density()), (1.0 - t, &noise)]).unwrap();
        let f = fidelity(&rho, &cluster4()).unwrap();
        for b in [build_b2(), build_b4()] {
            prop_assert!(witness_expectation(&rho, &b).unwrap() <= f + 1e-10);
        }
    }
}

#[test]
fn noise_grid() {
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let rho = apply_noise(&cluster4(), &NoiseSpec::white(p).unwrap()).unwrap();
        rho.validate().unwrap();
        let b2 = witness_expectation(&rho, &build_b2()).unwrap();
        let b4 = witness_expectation(&rho, &build_b4()).unwrap();
        assert!((b2 - (3.0 * p - 1.0) / 2.0).abs() < 1e-12);
        assert!((b4 - p).abs() < 1e-12);
        assert!(b4 >= b2 - 1e-12);
        assert!((fidelity(&rho, &cluster4()).unwrap() - (p + (1.0 - p) / 16.0)).abs() < 1e-12);
    }
}

#[test]
fn local_unitary_invariance_hundred_trials() {
    let mut r = rng(2024);
    for _ in 0..100 {
        let s = random_local_unitary(&mut r, &cluster4());
        assert_eq!(rank_signature(&s, 1e-7).unwrap().as_tuple(), (2, 4, 4));
    }
}

#[test]
fn sampling_within_five_sigma() {
    let n = 100_000u64;
    for (i, setting) in required_settings(&build_b4()).iter().enumerate() {
        let exact = born_record(&cluster4(), setting).unwrap().probabilities;
        let rec = sample_counts(&cluster4(), setting, n, 77 + i as u64).unwrap();
        assert_eq!(rec.total(), n);
        for (p, &c) in exact.iter().zip(&rec.counts) {
            let sd = (p * (1.0 - p) / n as f64).sqrt();
            let freq = c as f64 / n as f64;
            if sd == 0.0 {
                assert_eq!(c, 0);
            } else {
                assert!((freq - p).abs() <= 5.0 * sd, "{setting}: {freq} vs {p}");
            }
        }
    }
}

#[test]
fn sigma_calibration() {
    let rho = apply_noise(&cluster4(), &NoiseSpec::white(0.6).unwrap()).unwrap();
    for (setting, term) in [("XXZZ", "XXZI"), ("ZZXX", "ZIXX"), ("XXZZ", "IIZZ"), ("YYZZ", "YYZI")] {
        let setting = setting.parse().unwrap();
        let term = PauliString::new(term, 1.0).unwrap();
        let runs: Vec<(f64, f64)> = (0..200)
            .map(|seed| expectation_from_counts(&sample_counts(&rho, &setting, 2000, seed).unwrap(), &term).unwrap())
            .collect();
        let mean = runs.iter().map(|r| r.0).sum::<f64>() / 200.0;
        let empirical = (runs.iter().map(|r| (r.0 - mean).powi(2)).sum::<f64>() / 199.0).sqrt();
        let reported = runs.iter().map(|r| r.1).sum::<f64>() / 200.0;
        assert!(((empirical - reported) / reported).abs() < 0.2, "{term:?}: {empirical} vs {reported}");
    }
}

#[test]
fn classical_bound_unitary_invariance() {
    let mut r = rng(99);
    let single: Vec<PureState> = table_single().into_iter().map(|row| row.ket).collect();
    let two: Vec<PureState> = table_two_qubit().into_iter().map(|row| row.ket).collect();
    let (b1, _) = classical_bound(&single, 2).unwrap();
    let (b2, _) = classical_bound(&two, 2).unwrap();
    for _ in 0..20 {
        // one random unitary, applied to every target through a shared seed
        let seed: u64 = r.random();
        let rotate = |s: &PureState, layers| random_circuit(&mut rng(seed), s, layers);
        let u1: Vec<PureState> = single.iter().map(|s| rotate(s, 0)).collect();
        let u2: Vec<PureState> = two.iter().map(|s| rotate(s, 2)).collect();
        assert!((classical_bound(&u1, 2).unwrap().0 - b1).abs() < 1e-9);
        assert!((classical_bound(&u2, 2).unwrap().0 - b2).abs() < 1e-9);
    }
}

#[test]
fn mixtures_of_strategies_do_not_help() {
    let targets: Vec<PureState> = table_single().into_iter().map(|row| row.ket).collect();
    let (best, _) = classical_bound(&targets, 2).unwrap();
    let values: Vec<f64> = enumerate_partitions(targets.len(), 4)
        .unwrap()
        .map(|p| grouping_value(&targets, &p.blocks()).unwrap())
        .collect();
    assert_eq!(values.len(), 187);
    assert!(values.iter().all(|&v| v <= best + 1e-12));
    let mut r = rng(5);
    for _ in 0..500 {
        let weights: Vec<f64> = values.iter().map(|_| r.random::<f64>()).collect();
        let total: f64 = weights.iter().sum();
        let mixed: f64 = weights.iter().zip(&values).map(|(w, v)| w * v).sum::<f64>() / total;
        assert!(mixed <= best + 1e-12);
    }
}
