//! Assembly of the Green symbols from residues and their projection onto
//! angular-momentum sectors.
//! Usage: cargo run --example green_assembly [green id] [l]

use edgegreen::green_assembly::{assemble_all, assemble_btype_named, project_sector};

fn main() {
    let id = std::env::args().nth(1).unwrap_or_else(|| "g02".into());
    let l: u32 = std::env::args().nth(2).and_then(|a| a.parse().ok()).unwrap_or(0);
    match assemble_btype_named(&id, l) {
        Ok(terms) => {
            println!("{id} through sector {l}:");
            for t in project_sector(&terms, l) {
                println!("  {}", t.render());
            }
        }
        Err(e) => println!("{id}: {e}"),
    }
    let all = assemble_all(l).expect("assembly");
    println!("{} terms in all Green symbols on sector {l}", project_sector(&all, l).len());
}
