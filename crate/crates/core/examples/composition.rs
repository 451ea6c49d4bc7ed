//! Compose tilings of Z_N and Z_M into one of Z_NM, along with the product
//! spectrum, and split a tiling with coprime sizes.

use std::collections::BTreeMap;

use spectile::constructions::{compose_tiles, coprime_split};
use spectile::residue_sets::ResidueSet;
use spectile::spectral::{composite_spectrum, spectrum_search, verify_spectrum};

fn rs(s: &str) -> ResidueSet {
    s.parse().expect("literal")
}

fn main() -> spectile::Result<()> {
    let (a, b, c) = (rs("{0,1} mod 2"), rs("{0} mod 2"), rs("{0,2} mod 4"));
    let family = BTreeMap::from([(0, rs("{0,1} mod 4")), (1, rs("{0,3} mod 4"))]);
    let t = compose_tiles(&a, &b, &family, &c)?;
    println!("Ã = {}, B̃ = {}", t.a, t.b);

    // every A_a shares the spectrum {0,2}, so MΛ_1 + Λ_2 is a spectrum of Ã
    let family = BTreeMap::from([(0, rs("{0,2} mod 4")), (1, rs("{0,2} mod 4"))]);
    let t = compose_tiles(&a, &b, &family, &rs("{0,1} mod 4"))?;
    let outer = spectrum_search(&a).expect("A is spectral");
    let inner = spectrum_search(&family[&0]).expect("A_0 is spectral");
    let lambda = composite_spectrum(&outer, &inner)?;
    println!("Ã = {} has spectrum {}: {}", t.a, lambda, verify_spectrum(&t.a, &lambda)?.holds());

    let split = coprime_split(&rs("{0,5,6,11} mod 12"), &rs("{0,2,10} mod 12"))?;
    println!("A complete mod {}, B complete mod {}", split.a_modulus, split.b_modulus);
    Ok(())
}
