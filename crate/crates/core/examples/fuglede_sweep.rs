//! Compare the complement search with the spectrum search on every subset
//! of Z_N containing 0.
//!
//! cargo run --release --example fuglede_sweep -- 16

use spectile::cli::sweep::fuglede_row;

fn main() {
    let max_n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(14);
    for n in 1..=max_n {
        let row = fuglede_row(n);
        println!(
            "N = {n:2}: {:6} sets, {:4} tiles, {:4} spectral, {} disagreements",
            row.sets,
            row.tiles,
            row.spectral,
            row.disagreements.len()
        );
        for a in &row.disagreements {
            println!("  {a}");
        }
    }
}
