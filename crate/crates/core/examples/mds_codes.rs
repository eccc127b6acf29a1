//! MDS partitions, the 4-class split of the D(4,0) MDS codes, and the
//! distance-3 MDS partitions behind the multipartite colorings.

use eqpart::construct::{d40_partition, mds_distance3_partition, mds_partition};
use eqpart::partition::{code_distance, completely_regular_check};
use eqpart::{GraphSpec, Result};

fn main() -> Result<()> {
    for (m, n) in [(1, 0), (0, 3), (1, 2), (2, 0)] {
        let p = mds_partition(GraphSpec::new(m, n)?)?;
        let code = p.class(0)?;
        let crc = completely_regular_check(&code)?;
        println!("{}: quotient [{}], class 1 has {} words, intersection array {}", p.spec(), p.quotient, code.len(), crc.array);
    }
    let parts = d40_partition(0)?;
    let sizes: Vec<u64> = parts.iter().map(|c| c.len()).collect();
    println!("D(4,0): MDS code C^0 splits into classes of sizes {sizes:?}");
    println!("minimum distance of the first class: {}", code_distance(&parts[0])?);
    for k in [2, 3] {
        let p = mds_distance3_partition(k)?;
        let codes = p.codes()?;
        println!(
            "{}: {} codes of size {}, minimum distance {}",
            p.spec(),
            codes.len(),
            codes[0].len(),
            code_distance(&codes[0])?
        );
    }
    Ok(())
}
