use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::GraphSpec;

use super::{check_exhaustive, Code};

/// Anything that assigns one of `num_colors` colors (0-based) to each vertex.
///
/// Dense colorings implement this by lookup; large composed colorings are
/// evaluated lazily so they can be checked on vertex samples.
pub trait ColorFn: Sync {
    fn spec(&self) -> GraphSpec;
    fn num_colors(&self) -> usize;
    fn color(&self, v: u64) -> usize;
}

/// A color function given by a closure.
pub struct FnColoring<F> {
    spec: GraphSpec,
    k: usize,
    f: F,
}

impl<F: Fn(u64) -> usize + Sync> FnColoring<F> {
    pub fn new(spec: GraphSpec, k: usize, f: F) -> Self {
        FnColoring { spec, k, f }
    }
}

impl<F: Fn(u64) -> usize + Sync> ColorFn for FnColoring<F> {
    fn spec(&self) -> GraphSpec {
        self.spec
    }

    fn num_colors(&self) -> usize {
        self.k
    }

    #[inline]
    fn color(&self, v: u64) -> usize {
        (self.f)(v)
    }
}

/// A surjective coloring stored densely in canonical vertex order.
///
/// Colors are 0-based in memory; files and reports use `1..=k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Coloring {
    spec: GraphSpec,
    k: usize,
    colors: Vec<u16>,
}

impl std::fmt::Debug for Coloring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Coloring({}, k={})", self.spec, self.k)
    }
}

impl Coloring {
    /// Validates range and surjectivity.
    pub fn new(spec: GraphSpec, k: usize, colors: Vec<u16>) -> Result<Coloring> {
        check_exhaustive(spec, "a dense coloring")?;
        if k == 0 || k > u16::MAX as usize {
            return Err(Error::InvalidColoring(format!("color count {k} out of range")));
        }
        if colors.len() as u64 != spec.num_vertices() {
            return Err(Error::InvalidColoring(format!(
                "{} colors given, {} has {} vertices",
                colors.len(),
                spec,
                spec.num_vertices()
            )));
        }
        let mut seen = vec![false; k];
        for (v, &c) in colors.iter().enumerate() {
            if c as usize >= k {
                return Err(Error::InvalidColoring(format!("vertex {v} has color {} > {k}", c as usize + 1)));
            }
            seen[c as usize] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidColoring(format!("color {} is never used", missing + 1)));
        }
        Ok(Coloring { spec, k, colors })
    }

    /// Materializes a color function.
    pub fn from_fn<C: ColorFn + ?Sized>(c: &C) -> Result<Coloring> {
        let spec = c.spec();
        check_exhaustive(spec, "a dense coloring")?;
        let colors: Vec<u16> = (0..spec.num_vertices()).into_par_iter().map(|v| c.color(v) as u16).collect();
        Coloring::new(spec, c.num_colors(), colors)
    }

    pub fn from_closure<F: Fn(u64) -> usize + Sync>(spec: GraphSpec, k: usize, f: F) -> Result<Coloring> {
        Coloring::from_fn(&FnColoring::new(spec, k, f))
    }

    /// Two-coloring with the code as color 0 (color `1` in files).
    pub fn from_code(code: &Code) -> Result<Coloring> {
        Coloring::from_closure(code.spec(), 2, |v| usize::from(!code.contains(v)))
    }

    pub fn spec(&self) -> GraphSpec {
        self.spec
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[u16] {
        &self.colors
    }

    #[inline]
    pub fn get(&self, v: u64) -> usize {
        self.colors[v as usize] as usize
    }

    /// Vertices of 0-based color `c`.
    pub fn class(&self, c: usize) -> Result<Code> {
        Code::from_predicate(self.spec, |v| self.get(v) == c)
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.k];
        for &c in &self.colors {
            out[c as usize] += 1;
        }
        out
    }

    /// Recolors by a permutation or relabelling map `old -> new`.
    pub fn relabel(&self, map: &[usize], k: usize) -> Result<Coloring> {
        if map.len() != self.k {
            return Err(Error::InvalidGrouping(format!("map has {} entries for {} colors", map.len(), self.k)));
        }
        Coloring::new(self.spec, k, self.colors.iter().map(|&c| map[c as usize] as u16).collect())
    }
}

impl ColorFn for Coloring {
    fn spec(&self) -> GraphSpec {
        self.spec
    }

    fn num_colors(&self) -> usize {
        self.k
    }

    #[inline]
    fn color(&self, v: u64) -> usize {
        self.colors[v as usize] as usize
    }
}

/// Unites colors: group `g` (a list of 0-based old colors) becomes new color `g`.
pub fn merge_colors(c: &Coloring, grouping: &[Vec<usize>]) -> Result<Coloring> {
    let mut map = vec![usize::MAX; c.k];
    for (g, group) in grouping.iter().enumerate() {
        if group.is_empty() {
            return Err(Error::InvalidGrouping(format!("group {} is empty", g + 1)));
        }
        for &old in group {
            if old >= c.k {
                return Err(Error::InvalidGrouping(format!("color {} does not exist", old + 1)));
            }
            if map[old] != usize::MAX {
                return Err(Error::InvalidGrouping(format!("color {} appears twice", old + 1)));
            }
            map[old] = g;
        }
    }
    if let Some(missing) = map.iter().position(|&m| m == usize::MAX) {
        return Err(Error::InvalidGrouping(format!("color {} is not assigned", missing + 1)));
    }
    c.relabel(&map, grouping.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let s = GraphSpec::new(0, 1).unwrap();
        assert!(Coloring::new(s, 2, vec![0, 1, 1, 1]).is_ok());
        assert!(Coloring::new(s, 3, vec![0, 1, 1, 1]).is_err());
        assert!(Coloring::new(s, 2, vec![0, 1, 2, 1]).is_err());
        assert!(Coloring::new(s, 2, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn merge_validation() {
        let s = GraphSpec::new(0, 1).unwrap();
        let c = Coloring::new(s, 4, vec![0, 1, 2, 3]).unwrap();
        let m = merge_colors(&c, &[vec![0], vec![1, 2, 3]]).unwrap();
        assert_eq!(m.colors(), &[0, 1, 1, 1]);
        assert!(merge_colors(&c, &[vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(merge_colors(&c, &[vec![0], vec![1, 2]]).is_err());
        assert!(merge_colors(&c, &[vec![0], vec![], vec![1, 2, 3]]).is_err());
        assert_eq!(merge_colors(&c, &[vec![0, 1, 2, 3]]).unwrap().k(), 1);
    }
}
