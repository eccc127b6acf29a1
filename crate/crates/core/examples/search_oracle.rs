//! The independent search engine: perfect codes by exact cover, perfect
//! colorings by backtracking, and a brute-force census of 2-colorings.

use eqpart::partition::necessary_conditions;
use eqpart::search::{find_perfect_code, find_perfect_coloring, perfect_two_colorings, ColoringConstraints, SearchBudget};
use eqpart::{Error, GraphSpec, QuotientMatrix, Result};

fn main() -> Result<()> {
    let budget = SearchBudget::default();
    let c = find_perfect_code(GraphSpec::new(2, 1)?, 1, &budget)?;
    println!("1-perfect code in D(2,1) with {} words", c.len());
    for (m, n) in [(1, 0), (0, 2), (1, 1)] {
        match find_perfect_code(GraphSpec::new(m, n)?, 1, &budget) {
            Err(Error::Unsatisfiable) => println!("D({m},{n}) has no 1-perfect code"),
            other => println!("D({m},{n}): {:?}", other.map(|c| c.len())),
        }
    }
    let q = QuotientMatrix::parse("1 5; 3 3")?;
    let col = find_perfect_coloring(GraphSpec::new(1, 0)?, &q, &ColoringConstraints::default(), &budget)?;
    println!("coloring of D(1,0) with quotient [{q}], class sizes {:?}", col.class_sizes());
    let s = GraphSpec::new(0, 2)?;
    let mut pairs: Vec<(u32, u32)> = perfect_two_colorings(s)?.into_iter().map(|(_, b, c)| (b, c)).collect();
    pairs.sort_unstable();
    pairs.dedup();
    for (b, c) in pairs {
        println!("H(2,4) has a perfect ({b},{c})-coloring; necessary conditions hold: {}", necessary_conditions(b, c, s).passed());
    }
    Ok(())
}
