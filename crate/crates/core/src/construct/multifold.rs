//! Partitions into disjoint multifold 1-perfect codes.

use crate::error::{Error, Result};
use crate::graph::{GraphSpec, ProductLayout};
use crate::partition::{Code, QuotientMatrix};

use super::base::perfect_code_partition;
use super::bc::DESK_LIMIT;
use super::families::three_j;
use super::{spec, unsupported, Built};

/// A partition of the vertex set into `2^k` disjoint `alpha`-fold 1-perfect
/// codes, `6m+3n+1 = alpha 2^k` with `alpha` odd. Color `i` is code `i`; the
/// quotient is `alpha J - E`.
#[derive(Clone, Debug)]
pub struct MultifoldPartition {
    pub alpha: u32,
    pub parts: Built,
}

impl MultifoldPartition {
    pub fn num_codes(&self) -> usize {
        self.parts.k()
    }

    /// Dense code `i`.
    pub fn code(&self, i: usize) -> Result<Code> {
        self.parts.class(i)
    }
}

fn alpha_and_count(d: u32) -> (u32, usize) {
    let t = 3 * d + 1;
    (t >> t.trailing_zeros(), 1 << t.trailing_zeros())
}

/// Partition of `s` into multifold 1-perfect codes, verified exhaustively.
/// Graphs beyond `4^12` vertices are refused with the spec that would be
/// built; see [`multifold_partition_sampled`].
pub fn multifold_partition(s: GraphSpec) -> Result<MultifoldPartition> {
    if s.num_vertices() > DESK_LIMIT {
        return Err(Error::DeskScaleExceeded {
            spec: s,
            vertices: s.num_vertices(),
            hint: "multifold_partition_sampled builds it with sampled verification".into(),
        });
    }
    multifold_partition_sampled(s)
}

/// As [`multifold_partition`], with sampled verification on large graphs.
pub fn multifold_partition_sampled(s: GraphSpec) -> Result<MultifoldPartition> {
    let d = s.diameter();
    if d % 4 != 1 {
        return Err(Error::Precondition(format!("diameter {d} of {s} is not 1 mod 4")));
    }
    let (alpha, _) = alpha_and_count(d);
    Ok(MultifoldPartition { alpha, parts: build(s)? })
}

fn declared(d: u32) -> QuotientMatrix {
    let (alpha, k) = alpha_and_count(d);
    QuotientMatrix::from_fn(k, |i, j| alpha - (i == j) as u32)
}

fn build(s: GraphSpec) -> Result<Built> {
    let d = s.diameter();
    let name = format!("multifold {s}");
    if d == 1 {
        return Built::from_fn(name, s, declared(1), |v| v as usize);
    }
    if d == 5 || d == 21 {
        return Ok(perfect_code_partition(s)?.renamed(name));
    }
    let r = 31 - d.leading_zeros();
    let d2 = d - (1 << r);
    let t = 3 * d2 + 1;
    let sexp = t.trailing_zeros();
    let mut last = None;
    for m2 in (0..=s.m().min(d2 / 2)).rev() {
        let n2 = d2 - 2 * m2;
        if n2 > s.n() {
            continue;
        }
        let (head_spec, tail_spec) = (spec(s.m() - m2, s.n() - n2)?, spec(m2, n2)?);
        let (g, sub) = rayon::join(|| three_j(head_spec), || build(tail_spec));
        let (g, sub) = match (g, sub) {
            (Ok(g), Ok(sub)) => (g, sub),
            (Err(e @ Error::UnsupportedSpec { .. }), _) | (_, Err(e @ Error::UnsupportedSpec { .. })) => {
                last = Some(e);
                continue;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        let layout = ProductLayout::new(head_spec, tail_spec)?;
        let (gf, sf) = (g.shared(), sub.shared());
        let q = declared(d);
        return if sexp < r {
            let shift = r - sexp;
            let mask = (1usize << sexp) - 1;
            Built::from_fn(name, layout.total(), q, move |v| {
                let (x, y) = layout.split(v);
                sf.color(y).wrapping_sub(gf.color(x) >> shift) & mask
            })
        } else if sexp > r {
            let mask = (1usize << r) - 1;
            Built::from_fn(name, layout.total(), q, move |v| {
                let (x, y) = layout.split(v);
                (sf.color(y) / 2).wrapping_sub(gf.color(x)) & mask
            })
        } else {
            Err(Error::Verification(format!("diameter {d} splits with equal exponents")))
        };
    }
    Err(last.unwrap_or_else(|| unsupported(s, "no split into supported factors")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::is_mu_fold_perfect;

    #[test]
    fn small_partitions() {
        let p = multifold_partition(GraphSpec::new(0, 1).unwrap()).unwrap();
        assert_eq!((p.alpha, p.num_codes()), (1, 4));
        let p = multifold_partition(GraphSpec::new(2, 1).unwrap()).unwrap();
        assert_eq!((p.alpha, p.num_codes()), (1, 16));
        assert!(is_mu_fold_perfect(&p.code(3).unwrap(), 1));
    }

    #[test]
    fn rejects_bad_diameter() {
        assert!(multifold_partition(GraphSpec::new(1, 1).unwrap()).is_err());
    }
}
