use crate::error::{Error, Result};
use crate::graph::GraphSpec;

use super::check_exhaustive;

/// A nonempty vertex subset stored as a bitset over canonical indices.
#[derive(Clone, PartialEq, Eq)]
pub struct Code {
    spec: GraphSpec,
    words: Vec<u64>,
    len: u64,
}

impl std::fmt::Debug for Code {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Code({}, {} vertices)", self.spec, self.len)
    }
}

impl Code {
    fn empty(spec: GraphSpec) -> Result<Code> {
        check_exhaustive(spec, "a dense code")?;
        let words = vec![0u64; (spec.num_vertices() as usize).div_ceil(64)];
        Ok(Code { spec, words, len: 0 })
    }

    pub fn from_indices<I: IntoIterator<Item = u64>>(spec: GraphSpec, indices: I) -> Result<Code> {
        let mut c = Code::empty(spec)?;
        for v in indices {
            spec.check_index(v)?;
            c.insert(v);
        }
        if c.len == 0 {
            return Err(Error::EmptyCode);
        }
        Ok(c)
    }

    /// Members are the vertices where `pred` holds.
    pub fn from_predicate<F: Fn(u64) -> bool + Sync>(spec: GraphSpec, pred: F) -> Result<Code> {
        use rayon::prelude::*;
        let mut c = Code::empty(spec)?;
        let n = spec.num_vertices();
        c.words.par_iter_mut().enumerate().for_each(|(w, word)| {
            let base = (w as u64) * 64;
            for b in 0..64u64 {
                let v = base + b;
                if v < n && pred(v) {
                    *word |= 1 << b;
                }
            }
        });
        c.len = c.words.iter().map(|w| w.count_ones() as u64).sum();
        if c.len == 0 {
            return Err(Error::EmptyCode);
        }
        Ok(c)
    }

    fn insert(&mut self, v: u64) {
        let (w, b) = ((v / 64) as usize, v % 64);
        if self.words[w] >> b & 1 == 0 {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
    }

    pub fn spec(&self) -> GraphSpec {
        self.spec
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, v: u64) -> bool {
        v < self.spec.num_vertices() && self.words[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(w as u64 * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn is_disjoint(&self, other: &Code) -> bool {
        self.spec == other.spec && self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Complement within the vertex set; fails if it would be empty.
    pub fn complement(&self) -> Result<Code> {
        let n = self.spec.num_vertices();
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = n % 64;
        if tail != 0 {
            *words.last_mut().unwrap() &= (1u64 << tail) - 1;
        }
        let len = n - self.len;
        if len == 0 {
            return Err(Error::EmptyCode);
        }
        Ok(Code { spec: self.spec, words, len })
    }

    /// Union of codes on the same graph.
    pub fn union<'a, I: IntoIterator<Item = &'a Code>>(codes: I) -> Result<Code> {
        let mut it = codes.into_iter();
        let first = it.next().ok_or(Error::EmptyCode)?;
        let mut out = first.clone();
        for c in it {
            if c.spec != out.spec {
                return Err(Error::Precondition(format!("codes on {} and {}", out.spec, c.spec)));
            }
            for (a, b) in out.words.iter_mut().zip(&c.words) {
                *a |= b;
            }
        }
        out.len = out.words.iter().map(|w| w.count_ones() as u64).sum();
        Ok(out)
    }

    /// Checks that `codes` are pairwise disjoint and cover every vertex.
    pub fn is_partition(codes: &[Code]) -> bool {
        let Some(first) = codes.first() else { return false };
        let spec = first.spec;
        if codes.iter().any(|c| c.spec != spec) {
            return false;
        }
        let total: u64 = codes.iter().map(|c| c.len).sum();
        if total != spec.num_vertices() {
            return false;
        }
        let mut acc = vec![0u64; first.words.len()];
        for c in codes {
            for (a, b) in acc.iter_mut().zip(&c.words) {
                if *a & b != 0 {
                    return false;
                }
                *a |= b;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_operations() {
        let s = GraphSpec::new(0, 2).unwrap();
        let c = Code::from_indices(s, [3, 1, 3, 15]).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.to_vec(), vec![1, 3, 15]);
        assert!(c.contains(15) && !c.contains(2) && !c.contains(99));
        let d = c.complement().unwrap();
        assert_eq!(d.len(), 13);
        assert!(c.is_disjoint(&d));
        assert!(Code::is_partition(&[c.clone(), d.clone()]));
        assert!(!Code::is_partition(&[c.clone(), c.clone()]));
        assert_eq!(Code::union([&c, &d]).unwrap().len(), 16);
        assert!(Code::from_indices(s, []).is_err());
        assert!(Code::from_indices(s, [16]).is_err());
    }

    #[test]
    fn predicate_matches_indices() {
        let s = GraphSpec::new(1, 1).unwrap();
        let a = Code::from_predicate(s, |v| v % 5 == 2).unwrap();
        let b = Code::from_indices(s, (0..64).filter(|v| v % 5 == 2)).unwrap();
        assert_eq!(a, b);
    }
}
