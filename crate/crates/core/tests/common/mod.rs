//! Reference implementations for the integration tests, written from the
//! coordinate definitions of the graphs and independent of the library's
//! adjacency, distance and quotient code.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Differences adjacent to `00` in the Shrikhande graph, as `(a, b)` in `Z4^2`.
pub const SHRIKHANDE: [(u64, u64); 6] = [(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)];

/// `D(m, n)` with the packing: Shrikhande coordinate `i` is the nibble `4a+b`
/// at bit `2n + 4(m-1-i)`, `K4` coordinate `j` the 2-bit digit at `2(n-1-j)`.
#[derive(Clone, Copy, Debug)]
pub struct Doob {
    pub m: u32,
    pub n: u32,
}

impl Doob {
    pub fn new(m: u32, n: u32) -> Doob {
        Doob { m, n }
    }

    pub fn vertices(&self) -> u64 {
        1u64 << (2 * (2 * self.m + self.n))
    }

    pub fn degree(&self) -> usize {
        (6 * self.m + 3 * self.n) as usize
    }

    fn shr_shift(&self, i: u32) -> u32 {
        2 * self.n + 4 * (self.m - 1 - i)
    }

    fn k4_shift(&self, j: u32) -> u32 {
        2 * (self.n - 1 - j)
    }

    pub fn neighbors(&self, v: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.degree());
        for i in 0..self.m {
            let s = self.shr_shift(i);
            let (a, b) = ((v >> (s + 2)) & 3, (v >> s) & 3);
            for (da, db) in SHRIKHANDE {
                let nib = (((a + da) & 3) << 2) | ((b + db) & 3);
                out.push((v & !(15 << s)) | (nib << s));
            }
        }
        for j in 0..self.n {
            let s = self.k4_shift(j);
            let d = (v >> s) & 3;
            for x in 0..4 {
                if x != d {
                    out.push((v & !(3 << s)) | (x << s));
                }
            }
        }
        out
    }

    pub fn distance(&self, u: u64, v: u64) -> u32 {
        let mut d = 0;
        for i in 0..self.m {
            let s = self.shr_shift(i);
            let da = (((u >> (s + 2)) & 3) + 4 - ((v >> (s + 2)) & 3)) & 3;
            let db = (((u >> s) & 3) + 4 - ((v >> s) & 3)) & 3;
            d += match (da, db) {
                (0, 0) => 0,
                x if SHRIKHANDE.contains(&x) => 1,
                _ => 2,
            };
        }
        for j in 0..self.n {
            let s = self.k4_shift(j);
            d += u32::from((u >> s) & 3 != (v >> s) & 3);
        }
        d
    }

    /// Coordinatewise sum in `Z4^2` and `Z4`, digit by digit.
    pub fn add(&self, u: u64, v: u64) -> u64 {
        let digits = 2 * self.m + self.n;
        (0..digits).fold(0, |acc, t| acc | (((((u >> (2 * t)) & 3) + ((v >> (2 * t)) & 3)) & 3) << (2 * t)))
    }

    /// Row of neighbour counts by color.
    pub fn row(&self, color: &dyn Fn(u64) -> usize, k: usize, v: u64) -> Vec<u32> {
        let mut r = vec![0; k];
        for u in self.neighbors(v) {
            r[color(u)] += 1;
        }
        r
    }

    /// Quotient matrix by visiting every vertex; `Err(v)` names a vertex whose
    /// row differs from the first vertex of its color.
    pub fn quotient(&self, color: &dyn Fn(u64) -> usize, k: usize) -> Result<Vec<Vec<u32>>, u64> {
        let mut rows: Vec<Option<Vec<u32>>> = vec![None; k];
        for v in 0..self.vertices() {
            let c = color(v);
            let r = self.row(color, k, v);
            match &rows[c] {
                None => rows[c] = Some(r),
                Some(x) if *x != r => return Err(v),
                _ => {}
            }
        }
        rows.into_iter().collect::<Option<Vec<_>>>().ok_or(u64::MAX)
    }

    /// Checks the rows of the given vertices against `expected`.
    pub fn check_rows(&self, color: &dyn Fn(u64) -> usize, expected: &[Vec<u32>], vs: &[u64]) -> Result<(), u64> {
        for &v in vs {
            if self.row(color, expected.len(), v) != expected[color(v)] {
                return Err(v);
            }
        }
        Ok(())
    }

    /// Number of members in the closed ball of radius 1 around `v`.
    pub fn ball_count(&self, member: &dyn Fn(u64) -> bool, v: u64) -> u32 {
        u32::from(member(v)) + self.neighbors(v).into_iter().filter(|&u| member(u)).count() as u32
    }

    pub fn random_vertices(&self, count: usize, seed: u64) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| rng.gen_range(0..self.vertices())).collect()
    }
}

/// Smallest pairwise distance within a set, by scanning all pairs.
pub fn min_distance(g: &Doob, set: &[u64]) -> u32 {
    let mut best = u32::MAX;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            best = best.min(g.distance(u, v));
        }
    }
    best
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// Carry-less product in `GF(2^k)` modulo `modulus`.
pub fn gf_mul(mut a: u32, mut b: u32, k: u32, modulus: u32) -> u32 {
    let mut r = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> k & 1 == 1 {
            a ^= modulus;
        }
    }
    r
}

/// `J - E` scaled by `s`, plus `a` on the diagonal, as rows.
pub fn je(k: usize, s: u32, a: u32) -> Vec<Vec<u32>> {
    (0..k).map(|i| (0..k).map(|j| if i == j { a } else { s }).collect()).collect()
}
