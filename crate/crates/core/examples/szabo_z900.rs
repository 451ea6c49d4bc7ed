//! Szabó's block swap in Z_4 × Z_9 × Z_25, mapped into Z_900.
//!
//! cargo run --example szabo_z900 -- crates/core/examples/z900.toml

use spectile::constructions::{szabo_example, verify_szabo, SzaboParams};
use spectile::residue_sets::equidistribution_profile;

const DEFAULT: &str = include_str!("z900.toml");

fn main() -> spectile::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).map_err(|e| spectile::Error::Params(format!("{path}: {e}")))?,
        None => DEFAULT.to_string(),
    };
    let out = szabo_example(&SzaboParams::from_toml(&text)?)?;
    println!("A  = {}", out.a);
    println!("B' = {}", out.b_prime);
    println!("B  = {}", out.b);
    for (i, blk) in out.blocks.iter().enumerate() {
        println!("B_{} = {} shifted by {:?}", i + 1, blk.block, blk.shift);
    }
    if let Some(img) = &out.images {
        println!("Ψ(B)   = {}", img.b);
        println!("Ψ(B_0) = {}", img.b0);
        println!("Ψ(B) by class mod 2: {:?}", equidistribution_profile(&img.b.to_integer_set(), 2));
    }
    for c in verify_szabo(&out)?.clauses {
        println!("[{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
    }
    Ok(())
}
