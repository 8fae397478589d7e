//! The operator wire format: row-major [re, im] entries with dimension
//! and bandwidth metadata, exact round-trip, and the same files the
//! `isospec verify` subcommand consumes.
//!
//! ```bash
//! cargo run --example operator_io
//! ```

use isospec::fock::{build_ladder, number_operator, FockSpec};
use isospec::operator::Operator;

fn main() -> Result<(), isospec::error::Error> {
    let spec = FockSpec::boson(4)?;
    let (_, a_dag) = build_ladder(&spec);

    let text = a_dag.to_json_string();
    println!("raising operator at dimension 4:\n{text}\n");

    let back = Operator::from_json_str(&text, "inline")?;
    let identical = back.matrix() == a_dag.matrix() && back.band() == a_dag.band();
    println!("round-trip bit-identical: {identical}");

    // files carry the declared band; understating it is rejected
    let lying = text.replace("\"band\":1", "\"band\":0");
    match Operator::from_json_str(&lying, "inline") {
        Err(e) => println!("understated band: {e}"),
        Ok(_) => unreachable!(),
    }

    // write a pair to disk the way `isospec verify` expects it
    let dir = std::env::temp_dir();
    let h1_path = dir.join("isospec_example_h1.json");
    let x1_path = dir.join("isospec_example_x1.json");
    std::fs::write(&h1_path, number_operator(&spec).to_json_string()).unwrap();
    std::fs::write(&x1_path, a_dag.to_json_string()).unwrap();
    println!("\nwrote {} and {}", h1_path.display(), x1_path.display());
    println!(
        "try: isospec verify --h1 {} --x1 {}",
        h1_path.display(),
        x1_path.display()
    );
    Ok(())
}
