//! Vertices, neighbours, distances and the spectrum of a Doob graph.
//!
//! ```text
//! cargo run --example graph_basics [-- m n]
//! ```

use eqpart::{GraphSpec, Result};
use nalgebra::DMatrix;

fn main() -> Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (m, n) = match args[..] {
        [m, n] => (m, n),
        _ => (1, 0),
    };
    let s = GraphSpec::new(m, n)?;
    println!("{s}: {} vertices, degree {}, diameter {}", s.num_vertices(), s.degree(), s.diameter());
    let v = s.vertex_at(s.num_vertices() - 1)?;
    println!("last vertex {v} has neighbours:");
    for u in s.neighbors_of(&v)? {
        println!("  {u}");
    }
    let far = s.num_vertices() - 1;
    println!("distance from 0 to {far}: {}", s.distance(0, far)?);
    for (i, e) in s.eigenvalues().iter().enumerate() {
        println!("eigenvalue {e:>3} with multiplicity {}", s.eigenvalue_multiplicity(i as u32));
    }
    if s.num_vertices() <= 1024 {
        let nv = s.num_vertices() as usize;
        let mut a = DMatrix::<f64>::zeros(nv, nv);
        for x in 0..nv {
            for y in s.neighbors(x as u64)? {
                a[(x, y as usize)] = 1.0;
            }
        }
        let mut ev: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        ev.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
        println!("numeric distinct eigenvalues: {:?}", ev.iter().map(|x| x.round() as i64).collect::<Vec<_>>());
    }
    Ok(())
}
