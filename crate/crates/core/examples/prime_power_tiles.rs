//! Tiles of prime-power size: Newman's valuation criterion, digit trees,
//! and the tile families with a prescribed S_A.

use spectile::cm::PrimePowerSet;
use spectile::residue_sets::IntegerSet;
use spectile::structures::{
    build_prime_power_tile, enumerate_t_s, find_structure_tree, newman_criterion, DigitTree, DEFAULT_ENUMERATION_BOUND,
};

fn main() -> spectile::Result<()> {
    for lit in ["{0,1,4,5}", "{0,1,2,3}", "{0,1,2,4}", "{0,2,9,11}"] {
        let a: IntegerSet = lit.parse()?;
        println!("{a}: Newman criterion {}", newman_criterion(&a)?);
    }

    let mut tree = DigitTree::standard(2, vec![1, 3])?;
    tree.set_system(&[1], vec![0, 1])?;
    println!("digit tree {:?} builds {}", tree.exponents(), build_prime_power_tile(&tree)?);

    let s: PrimePowerSet = "{2, 8}".parse()?;
    let a: IntegerSet = "{0,1,4,5}".parse()?;
    if let Some(t) = find_structure_tree(&a, &s) {
        println!("{a} recovered from its tree: {}", t.expand());
    }

    for lit in ["{4}", "{2, 4}", "{4, 3}", "{2, 9}"] {
        let s: PrimePowerSet = lit.parse()?;
        let family = enumerate_t_s(&s, DEFAULT_ENUMERATION_BOUND)?;
        print!("{family}");
    }
    Ok(())
}
