//! Builds the four-qubit cluster state and reads off a few stabilizers.

use clustersim::pauli::PauliWord;
use clustersim::state::{cluster4, fidelity, named_state, QuantumState};

fn main() -> clustersim::error::Result<()> {
    let c4 = cluster4();
    println!("|C4> = {c4}");

    for w in ["ZZII", "IIZZ", "XXZI", "ZIXX", "XXXX", "YYZZ"] {
        let word: PauliWord = w.parse()?;
        println!("<{w}> = {:+.3}", c4.word_expectation(&word));
    }

    for name in ["ghz4", "w4", "dicke4"] {
        let other = named_state(name)?;
        println!("F({name}, C4) = {:.4}", fidelity(&other, &c4)?);
    }
    Ok(())
}
