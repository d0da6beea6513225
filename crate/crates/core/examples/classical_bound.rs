//! Best average fidelity a preparer can reach with two classical bits and no entanglement.

use clustersim::classical::{classical_bound, margin_report};
use clustersim::mbqc::{table_average, table_single, table_two_qubit, TableRow};
use clustersim::state::PureState;

fn report(title: &str, rows: &[TableRow]) -> clustersim::error::Result<()> {
    let targets: Vec<PureState> = rows.iter().map(|r| r.ket.clone()).collect();
    let (bound, strategy) = classical_bound(&targets, 2)?;
    let (mean, err) = table_average(rows);
    println!("{title}: bound {bound:.10}");
    for (group, state) in strategy.groups.iter().zip(&strategy.prepared_states) {
        let labels: Vec<&str> = group.iter().map(|&i| rows[i].label).collect();
        println!("    send one message for {labels:?}, prepare {state}");
    }
    println!(
        "    reported average {mean:.3} +/- {err:.3}: {:+.1} sigma above the bound",
        margin_report(mean, err, bound)?
    );
    Ok(())
}

fn main() -> clustersim::error::Result<()> {
    report("two-qubit gate", &table_two_qubit())?;
    report("single-qubit rotation", &table_single())
}
