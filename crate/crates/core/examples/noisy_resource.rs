//! Gate fidelity on a white-noise cluster resource, via density-matrix execution.

use clustersim::mbqc::{branch_report, table_two_qubit, two_qubit_pattern};
use clustersim::noise::{apply_noise, NoiseSpec};
use clustersim::state::cluster4;

fn main() -> clustersim::error::Result<()> {
    let row = &table_two_qubit()[0];
    let pattern = two_qubit_pattern(row.instruction)?;
    println!("instruction (0, 0), target {}", row.label);
    for p in [1.0, 0.95, 0.9, 0.86, 0.8, 0.5] {
        let rho = apply_noise(&cluster4(), &NoiseSpec::white(p)?)?;
        let rep = branch_report(&pattern, &rho, &row.ket)?;
        println!("  p = {p:.2}: mean F = {:.4}  (p + (1 - p)/4 = {:.4})", rep.mean_fidelity, p + (1.0 - p) / 4.0);
    }

    let dephased = apply_noise(&cluster4(), &"dephase:0.1:2,3".parse()?)?;
    let rep = branch_report(&pattern, &dephased, &row.ket)?;
    println!("dephasing the measured qubits: branch F = {:?}", rep.branch_fidelities);
    Ok(())
}
