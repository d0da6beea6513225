//! Fidelity lower bounds from the two- and four-setting witnesses.

use clustersim::entanglement::classify_by_fidelity;
use clustersim::noise::{apply_noise, NoiseSpec};
use clustersim::state::{cluster4, fidelity};
use clustersim::witness::{build_b2, build_b4, required_settings, verify_dominance, witness_expectation};

fn main() -> clustersim::error::Result<()> {
    let c4 = cluster4();
    for (name, b) in [("B2", build_b2()), ("B4", build_b4())] {
        let settings: Vec<String> = required_settings(&b).iter().map(|s| s.to_string()).collect();
        println!(
            "{name}: settings {settings:?}, min eig(|C4><C4| - {name}) = {:.1e}",
            verify_dominance(&b, &c4)?
        );
    }

    println!("\n   p   fidelity   B2      B4     excluded");
    for i in (0..=10).rev().step_by(2) {
        let p = i as f64 / 10.0;
        let rho = apply_noise(&c4, &NoiseSpec::white(p)?)?;
        let b2 = witness_expectation(&rho, &build_b2())?;
        let b4 = witness_expectation(&rho, &build_b4())?;
        let excluded: Vec<&str> = classify_by_fidelity(b4.max(0.0))?.iter().map(|c| c.label()).collect();
        println!("{p:4.1}   {:.4}   {b2:+.3}  {b4:+.3}  {excluded:?}", fidelity(&rho, &c4)?);
    }
    Ok(())
}
