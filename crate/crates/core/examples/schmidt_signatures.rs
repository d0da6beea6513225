//! Schmidt ranks over the three 2|2 cuts and the fidelity ceilings they imply.

use clustersim::entanglement::{fidelity_ceiling, rank_signature, DEFAULT_RANK_TOL, PAIR_CUTS};
use clustersim::schmidt::schmidt_coefficients;
use clustersim::state::{cluster4, named_state};

fn main() -> clustersim::error::Result<()> {
    for name in ["cluster4", "ghz4", "w4", "dicke4"] {
        let s = named_state(name)?;
        println!("{name:9} {}", rank_signature(&s, DEFAULT_RANK_TOL)?);
        for cut in PAIR_CUTS {
            let coeffs: Vec<String> = schmidt_coefficients(&s, &cut)?.iter().map(|c| format!("{c:.3}")).collect();
            println!("    cut {}{}: [{}]", cut[0], cut[1], coeffs.join(", "));
        }
    }

    let c4 = cluster4();
    println!("\nlargest fidelity to |C4> at Schmidt rank <= k across cut 13:");
    for k in 1..=4 {
        println!("  k = {k}: {:.3}", fidelity_ceiling(&c4, &[1, 3], k)?);
    }
    Ok(())
}
