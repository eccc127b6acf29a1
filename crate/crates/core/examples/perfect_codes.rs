//! 1-perfect codes: the Hamming code, its cosets, and partitions of Doob
//! graphs of diameter 5 into 16 perfect codes.

use eqpart::construct::{hamming_one_perfect, perfect_code_partition};
use eqpart::partition::is_mu_fold_perfect;
use eqpart::{Code, GraphSpec, Result};

fn main() -> Result<()> {
    let h = hamming_one_perfect(2)?;
    println!("{}: {} cosets on {}, quotient J - E", h.name, h.k(), h.spec());
    let cosets: Vec<Code> = (0..h.k()).map(|i| h.class(i)).collect::<Result<_>>()?;
    println!("coset 1 is 1-perfect: {}", is_mu_fold_perfect(&cosets[0], 1));
    println!("cosets partition the vertices: {}", Code::is_partition(&cosets));
    for (m, n) in [(2, 1), (1, 3)] {
        let p = perfect_code_partition(GraphSpec::new(m, n)?)?;
        let c = p.class(5)?;
        println!("{}: {} perfect codes, code 6 has {} words, 1-perfect: {}", p.spec(), p.k(), c.len(), is_mu_fold_perfect(&c, 1));
    }
    Ok(())
}
