//! Arithmetic in GF(2^k) and the labels of Shrikhande and K4 digits.

use eqpart::gf::{label_additivity_check, shrikhande_label, z4_to_gf4, Field};
use eqpart::Result;

fn main() -> Result<()> {
    let f = Field::get(4)?;
    println!("GF(16) with modulus {:#b}", f.modulus());
    let a = f.alpha();
    for e in 0..6 {
        println!("alpha^{e} = {}", f.alpha_pow(e));
    }
    let x = f.mul(f.alpha_pow(3), f.alpha_pow(14))?;
    println!("alpha^3 * alpha^14 = {x} = alpha^{:?}", f.log(x)?);
    println!("order of alpha: {}", f.order(a)?);
    println!("Shrikhande labels over GF(4):");
    for p in 0..4u8 {
        let row: Vec<String> = (0..4u8).map(|q| shrikhande_label(p, q).to_string()).collect();
        println!("  ({p},*) -> {}", row.join(" "));
    }
    let k4: Vec<String> = (0..4u8).map(|d| z4_to_gf4(d).map(|e| e.to_string())).collect::<Result<_>>()?;
    println!("K4 digits -> GF(4): {}", k4.join(" "));
    println!("labels are additive: {}", label_additivity_check());
    Ok(())
}
