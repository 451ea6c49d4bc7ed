//! Check (T1)/(T2), build the canonical complement and the Łaba spectrum,
//! and confirm both against the search oracles.

use spectile::cm::{cm_report, cm_tiling_set, duality_check, laba_spectrum};
use spectile::residue_sets::{direct_sum_check, IntegerSet};
use spectile::spectral::verify_spectrum;

fn main() -> spectile::Result<()> {
    for lit in ["{0,4,8,9,13,17}", "{0,1,8,9}", "{0,5,6,11}", "{0,1,3}"] {
        let a: IntegerSet = lit.parse()?;
        let report = cm_report(&a)?;
        println!("{a}: S_A = {}, T1 {}, T2 {}", report.sa, report.t1.holds, report.t2.holds);
        if !report.is_cm() {
            continue;
        }
        let n = report.sa.lcm();
        let b = cm_tiling_set(&report.sa)?;
        let lambda = laba_spectrum(&report.sa);
        let an = a.reduce_mod(n)?;
        println!("  complement {b} tiles Z_{n}: {}", direct_sum_check(&an, &b.reduce_mod(n)?)?);
        println!("  spectrum {lambda}: {}", verify_spectrum(&an, &lambda)?.holds());
        let d = duality_check(&a)?;
        println!("  Ł_A ⊕ Ł_B = Z_{}: {}", d.modulus, d.holds());
    }
    Ok(())
}
