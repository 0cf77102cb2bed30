//! Residues of the shifted parametrix symbols that enter the Green symbols,
//! compared entry by entry with the transcribed tables.

use edgegreen::green_assembly::{compare_fixture, residue_table_for, GreenId};

fn main() {
    let records = residue_table_for(&[GreenId::G02], 2).expect("residues");
    for r in &records {
        println!("{} Res({}, {}) on l = {}, eta {:?}: {}", r.green, r.sym.label(), r.pole, r.l, r.eta, r.value);
    }
    let checks = compare_fixture(5).expect("fixture");
    let bad: Vec<_> = checks.iter().filter(|c| !c.ok).collect();
    println!("{} transcribed entries checked, {} mismatches", checks.len(), bad.len());
    for c in checks.iter().filter(|c| c.l.is_none()) {
        println!("  {} {}: {}", c.green, c.label, c.computed);
    }
}
