//! Completely regular codes of covering radius 2 in H(16, 4).

use eqpart::construct::rad2_code;
use eqpart::{GraphSpec, Result};

fn main() -> Result<()> {
    let s = GraphSpec::hamming(16)?;
    for b in [1, 5, 15] {
        let r = rad2_code(s, b)?;
        println!(
            "b = {b:>2}: intersection array {}, quotient [{}], {}, {} coset representatives",
            r.array,
            r.coloring.quotient,
            r.coloring.check,
            r.representatives.len()
        );
    }
    Ok(())
}
