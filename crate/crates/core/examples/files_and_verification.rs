//! Writing colorings and codes in the pc1 and code1 text formats, reading
//! them back and verifying them.

use eqpart::construct::{multifold_partition, two_lj_four_e_coloring};
use eqpart::partition::io::{format_code1, format_pc1, parse, write_atomic, Object};
use eqpart::partition::{compute_quotient, is_mu_fold_perfect};
use eqpart::{GraphSpec, Result};

fn main() -> Result<()> {
    let dir = std::env::temp_dir().join("eqpart-example");
    std::fs::create_dir_all(&dir)?;
    let b = two_lj_four_e_coloring(1)?;
    let path = dir.join("two.pc1");
    write_atomic(&path, &format_pc1(&b.to_coloring()?, &[b.name.clone()]))?;
    let p = multifold_partition(GraphSpec::new(0, 5)?)?;
    let code_path = dir.join("hamming.code1");
    write_atomic(&code_path, &format_code1(&p.code(0)?, &["1-perfect code of H(5,4)".into()]))?;
    for f in [&path, &code_path] {
        match parse(&std::fs::read_to_string(f)?)? {
            Object::Coloring(c) => println!("{}: coloring of {}, quotient [{}]", f.display(), c.spec(), compute_quotient(&c)?),
            Object::Code(c) => println!("{}: code of {} with {} words, 1-perfect: {}", f.display(), c.spec(), c.len(), is_mu_fold_perfect(&c, 1)),
        }
    }
    Ok(())
}
