//! Synthetic four-fold coincidence counts, CSV round trip, and witness bounds with error bars.

use clustersim::counts::{outcome_label, parse_counts, probabilities, sample_counts, serialize_counts, witness_from_counts};
use clustersim::noise::{apply_noise, NoiseSpec};
use clustersim::state::cluster4;
use clustersim::witness::{build_b2, build_b4, required_settings};

fn main() -> clustersim::error::Result<()> {
    let rho = apply_noise(&cluster4(), &NoiseSpec::white(0.86)?)?;
    let records = required_settings(&build_b4())
        .iter()
        .enumerate()
        .map(|(k, s)| sample_counts(&rho, s, 2000, 100 + k as u64))
        .collect::<clustersim::error::Result<Vec<_>>>()?;

    let first = &records[0];
    println!("{} coincidence probabilities:", first.setting);
    for (o, p) in probabilities(first)?.iter().enumerate() {
        if *p > 0.02 {
            println!("  {}  {p:.3}", outcome_label(&first.setting, o));
        }
    }

    let csv = serialize_counts(&records)?;
    let back = parse_counts(&csv)?;
    assert_eq!(back, records);
    println!("CSV round trip: {} rows", csv.lines().count() - 1);

    for (name, b) in [("B2", build_b2()), ("B4", build_b4())] {
        let (bound, sigma) = witness_from_counts(&back, &b)?;
        println!("F >= {name} = {bound:.3} +/- {sigma:.3}");
    }
    Ok(())
}
