//! Single-qubit rotation RX(beta) RZ(alpha)|+> on the cluster.

use std::f64::consts::FRAC_PI_2;

use clustersim::mbqc::{execute, single_rotation_pattern, table_single, Branch, GateInstruction};
use clustersim::state::{cluster4, fidelity};

fn main() -> clustersim::error::Result<()> {
    let c4 = cluster4();
    for row in table_single() {
        let pattern = single_rotation_pattern(row.instruction)?;
        // one seeded run per instruction, like a single experimental shot
        let run = execute(&pattern, &c4, &Branch::Seeded(7))?;
        println!(
            "alpha = {:+.3}, beta = {:+.3} -> {:4} outcomes {:?}  F = {:.12}",
            row.instruction.alpha,
            row.instruction.beta,
            row.label,
            run.outcomes,
            fidelity(&run.output, &row.ket)?
        );
    }
    println!();

    // fixed bases cannot absorb the sign flip of a generic beta
    for alpha in [FRAC_PI_2, 0.3] {
        match single_rotation_pattern(GateInstruction::new(alpha, 0.4)) {
            Ok(_) => println!("alpha = {alpha:.3}, beta = 0.4: realized"),
            Err(e) => println!("alpha = {alpha:.3}, beta = 0.4: {e}"),
        }
    }
    Ok(())
}
