//! Two-qubit gate by measuring the middle qubits of the cluster, with Pauli feedforward.

use clustersim::mbqc::{basis_reassignment_check, execute, table_two_qubit, two_qubit_pattern, Branch};
use clustersim::state::{cluster4, fidelity};

fn main() -> clustersim::error::Result<()> {
    let c4 = cluster4();
    for row in table_two_qubit() {
        let pattern = two_qubit_pattern(row.instruction)?;
        let mut fids = Vec::new();
        for bits in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let run = execute(&pattern, &c4, &Branch::Explicit(bits.to_vec()))?;
            fids.push(fidelity(&run.output, &row.ket)?);
        }
        println!(
            "alpha = {:+.3}, beta = {:+.3}  {:28} corrections {:?}  min F = {:.12}",
            row.instruction.alpha,
            row.instruction.beta,
            row.label,
            pattern.corrections_by_outcome().values().collect::<Vec<_>>(),
            fids.iter().cloned().fold(1.0, f64::min)
        );
    }

    let pattern = two_qubit_pattern(table_two_qubit()[0].instruction)?;
    println!("\nbasis reassignment reproduces corrected statistics: {}", basis_reassignment_check(&pattern, &c4)?);
    Ok(())
}
