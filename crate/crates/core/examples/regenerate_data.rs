//! Re-derives the stored base objects under `data/` by search and writes
//! them, or with `--check` compares them to the stored files.
//!
//! ```text
//! cargo run --release --example regenerate_data [-- --check]
//! ```

use std::path::PathBuf;

use eqpart::construct::data::{
    format_families, search_bc_base_families, search_diameter_five_partition, search_three_j_base,
};
use eqpart::partition::io::{format_pc1, write_atomic};
use eqpart::{GraphSpec, Result};

fn main() -> Result<()> {
    let check = std::env::args().any(|a| a == "--check");
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut files = Vec::new();
    for (m, n, name) in [(2, 1, "perfect_d21.pc1"), (1, 3, "perfect_d13.pc1")] {
        let s = GraphSpec::new(m, n)?;
        eprintln!("searching a perfect partition of {s}");
        let c = search_diameter_five_partition(s)?;
        let note = vec![format!("16 disjoint 1-perfect codes of {s}, cosets of an additive code")];
        files.push((name, format_pc1(&c, &note)));
    }
    for (m, n, name) in [(2, 0, "threej_d20.pc1"), (1, 2, "threej_d12.pc1")] {
        let s = GraphSpec::new(m, n)?;
        eprintln!("searching a base coloring of {s}");
        let c = search_three_j_base(s)?;
        let note = vec![format!("8-coloring of {s} with quotient [[2J, J], [J, 2J]]")];
        files.push((name, format_pc1(&c, &note)));
    }
    for (m, n, name) in [(1, 0, "bcind_d10.fam"), (0, 3, "bcind_h3.fam")] {
        eprintln!("searching families of D({m},{n})");
        let f = search_bc_base_families(GraphSpec::new(m, n)?)?;
        files.push((name, format_families(&f)));
    }
    let mut stale = 0;
    for (name, text) in files {
        let path = dir.join(name);
        if check {
            let current = std::fs::read_to_string(&path).unwrap_or_default();
            let same = current == text;
            println!("{name}: {}", if same { "up to date" } else { "differs" });
            stale += (!same) as u32;
        } else {
            write_atomic(&path, &text)?;
            println!("wrote {}", path.display());
        }
    }
    if stale > 0 {
        std::process::exit(1);
    }
    Ok(())
}
