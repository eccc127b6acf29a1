//! The composition engine: extension, diagonal products, multiplication and
//! splitting of perfect colorings.

use eqpart::construct::{
    diag_product, extend, mds_partition, merge, multiply_coloring, perfect_code_partition, split_coloring, Built,
};
use eqpart::{GraphSpec, Result};

fn show(b: &Built) {
    println!("{:<48} on {}: [{}] ({})", b.name, b.spec(), b.quotient, b.check);
}

fn main() -> Result<()> {
    let mds = mds_partition(GraphSpec::new(1, 0)?)?;
    show(&mds);
    show(&extend(&mds, 0, 1)?);
    let k4 = perfect_code_partition(GraphSpec::new(0, 1)?)?;
    show(&k4);
    show(&diag_product(&mds, &[4], &[k4.clone()])?);
    let h2 = mds_partition(GraphSpec::new(0, 2)?)?;
    show(&multiply_coloring(&h2, 2, 1, 2)?);
    show(&split_coloring(&h2, 2)?);
    show(&merge(&mds, &[vec![0, 1], vec![2, 3]])?);
    Ok(())
}
