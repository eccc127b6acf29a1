//! Partitions into multifold 1-perfect codes.
//!
//! ```text
//! cargo run --release --example multifold_codes [-- m n]
//! ```

use eqpart::construct::multifold_partition;
use eqpart::partition::{is_mu_fold_perfect, multifold_exists};
use eqpart::{Code, GraphSpec, Result};

fn main() -> Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let specs = match args[..] {
        [m, n] => vec![(m, n)],
        _ => vec![(0, 5), (2, 1), (0, 9), (4, 1)],
    };
    for (m, n) in specs {
        let s = GraphSpec::new(m, n)?;
        let p = multifold_partition(s)?;
        let codes: Vec<Code> = (0..p.num_codes()).map(|i| p.code(i)).collect::<Result<_>>()?;
        let all = codes.iter().all(|c| is_mu_fold_perfect(c, p.alpha));
        println!(
            "{s}: {} disjoint {}-fold 1-perfect codes of size {} (all verified: {all}, partition: {})",
            p.num_codes(),
            p.alpha,
            codes[0].len(),
            Code::is_partition(&codes)
        );
        if let Some(d) = multifold_exists(s, 2 * p.alpha) {
            println!("  a {}-fold code also exists: alpha {} times l {}", 2 * p.alpha, d.alpha, d.l);
        }
    }
    Ok(())
}
