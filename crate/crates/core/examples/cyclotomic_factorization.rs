//! Factor mask polynomials into cyclotomic polynomials and read off S_A.
//!
//! cargo run --example cyclotomic_factorization -- "{0,4,8,9,13,17}"

use spectile::cm::compute_sa;
use spectile::cyclotomic::{cyclotomic, cyclotomic_factorization};
use spectile::residue_sets::IntegerSet;

fn main() -> spectile::Result<()> {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs =
        if inputs.is_empty() { vec!["{0,4,8,9,13,17}".to_string(), "{0,12,18,24,30,42}".to_string()] } else { inputs };
    for n in [1, 6, 12, 15] {
        println!("Φ_{n}(x) = {}", cyclotomic(n));
    }
    for lit in inputs {
        let a: IntegerSet = lit.parse()?;
        let f = cyclotomic_factorization(&a.mask_polynomial())?;
        let factors: Vec<String> =
            f.factors.iter().map(|(n, k)| if *k == 1 { format!("Φ_{n}") } else { format!("Φ_{n}^{k}") }).collect();
        println!("{a}: {} · ({})", factors.join(" "), f.cofactor);
        println!("  S_A = {}", compute_sa(&a)?);
    }
    Ok(())
}
