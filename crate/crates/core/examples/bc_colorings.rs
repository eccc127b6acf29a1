//! Perfect (b, c)-colorings: admissibility and construction on the smallest
//! supported graph.
//!
//! ```text
//! cargo run --release --example bc_colorings [-- b c]
//! ```

use eqpart::construct::{bc_routes, build_bc_coloring, SpecPreference};
use eqpart::partition::admissibility;
use eqpart::Result;

fn main() -> Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let pairs = match args[..] {
        [b, c] => vec![(b, c)],
        _ => vec![(3, 1), (6, 2), (5, 3), (15, 1), (14, 2), (12, 4), (29, 3), (5, 2), (7, 1)],
    };
    for (b, c) in pairs {
        let a = admissibility(b, c);
        if !a.admissible() {
            println!("({b},{c}): not admissible, {}", a.reason);
            continue;
        }
        let routes = bc_routes(b, c)?;
        println!("({b},{c}): {} routes, smallest diameter {}", routes.len(), routes[0].diameter());
        match build_bc_coloring(b, c, SpecPreference::Minimal) {
            Ok(x) => println!("  built on {}: [{}] ({})", x.spec(), x.quotient, x.check),
            Err(e) => println!("  {e}"),
        }
    }
    Ok(())
}
