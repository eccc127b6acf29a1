//! Building colorings from recipes, a small indented tree language.
//!
//! ```text
//! cargo run --example recipes [-- recipe-file]
//! ```

use eqpart::construct::recipe::Recipe;
use eqpart::Result;

const DEFAULT: &str = "\
# 3(J-E) on D(1,1), extended by K4 and merged into a (6,6)-coloring
merge 0 0 1 1
  extend 0 1
    diag 4
      mds 1 0
      perfect 0 1
";

fn main() -> Result<()> {
    let text = match std::env::args().nth(1) {
        Some(p) => std::fs::read_to_string(p)?,
        None => DEFAULT.to_string(),
    };
    let recipe = Recipe::parse(&text)?;
    print!("{recipe}");
    let d = recipe.declare()?;
    println!("declared: {} with quotient [{}]", d.spec, d.quotient);
    let b = recipe.evaluate()?;
    println!("built:    {} with quotient [{}] ({})", b.spec(), b.quotient, b.check);
    Ok(())
}
