//! Doob graphs `D(m, n)` and quaternary Hamming graphs `H(n, 4) = D(0, n)`.
//!
//! A vertex is a word of `2m + n` quaternary digits packed two bits per digit
//! into a `u64`. The Shrikhande coordinates occupy the most significant digit
//! pairs (first digit of a pair is `a`, second is `b`), followed by the `K4`
//! coordinates. The packed word read as a base-4 number is the canonical
//! vertex index, so indices and packed words coincide.
//!
//! Every `D(m, n)` is a Cayley graph on `Z4^(2m+n)`: the neighbours of `x` are
//! `x + s` for `s` in the connecting set (the Shrikhande differences
//! `01, 03, 10, 30, 11, 33` in one coordinate pair, or any nonzero digit in one
//! `K4` coordinate).

use std::fmt;

use crate::error::{Error, Result};

/// Digit-wise low-bit mask for packed quaternary words.
pub(crate) const LO: u64 = 0x5555_5555_5555_5555;

/// Largest supported diameter parameter `2m + n`; keeps `4^(2m+n)` inside `u64`.
pub const MAX_DIAMETER: u32 = 31;

/// The Shrikhande connecting set as `(a, b)` differences in `Z4^2`.
pub const SHRIKHANDE_CONNECTING_SET: [(u8, u8); 6] = [(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)];

/// Shrikhande distance indexed by the packed difference `4a + b`.
const SHRIKHANDE_DIST: [u8; 16] = {
    let mut t = [2u8; 16];
    t[0] = 0;
    let mut i = 0;
    while i < 6 {
        let (a, b) = SHRIKHANDE_CONNECTING_SET[i];
        t[(4 * a + b) as usize] = 1;
        i += 1;
    }
    t
};

/// Digit-wise addition in `Z4`.
#[inline]
pub fn z4_add(x: u64, y: u64) -> u64 {
    (x ^ y) ^ ((x & y & LO) << 1)
}

/// Digit-wise negation in `Z4`.
#[inline]
pub fn z4_neg(x: u64) -> u64 {
    x ^ ((x & LO) << 1)
}

/// Digit-wise subtraction in `Z4`.
#[inline]
pub fn z4_sub(x: u64, y: u64) -> u64 {
    z4_add(x, z4_neg(y))
}

/// Number of nonzero digits of a packed word.
#[inline]
pub(crate) fn digit_weight(x: u64) -> u32 {
    ((x | (x >> 1)) & LO).count_ones()
}

/// Identifies `D(m, n)`; `m = 0` is the Hamming graph `H(n, 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphSpec {
    m: u32,
    n: u32,
}

impl GraphSpec {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::InvalidSpec { m, n, reason: "m + n must be at least 1".into() });
        }
        if 2 * m + n > MAX_DIAMETER {
            return Err(Error::InvalidSpec {
                m,
                n,
                reason: format!("2m + n exceeds the supported maximum {MAX_DIAMETER}"),
            });
        }
        Ok(GraphSpec { m, n })
    }

    /// `H(n, 4)`.
    pub fn hamming(n: u32) -> Result<Self> {
        Self::new(0, n)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The diameter parameter `2m + n` (also the number of packed digits).
    pub fn diameter(&self) -> u32 {
        2 * self.m + self.n
    }

    pub fn degree(&self) -> u32 {
        6 * self.m + 3 * self.n
    }

    pub fn num_vertices(&self) -> u64 {
        1u64 << (2 * self.diameter())
    }

    pub fn is_hamming(&self) -> bool {
        self.m == 0
    }

    /// Eigenvalues `6m + 3n - 4i`, `i = 0..=2m+n`, in descending order.
    pub fn eigenvalues(&self) -> Vec<i64> {
        let deg = self.degree() as i64;
        (0..=self.diameter() as i64).map(|i| deg - 4 * i).collect()
    }

    /// Multiplicity of the eigenvalue `6m + 3n - 4i`: `C(D, i) * 3^i`.
    pub fn eigenvalue_multiplicity(&self, i: u32) -> u64 {
        let d = self.diameter() as u64;
        let i = i as u64;
        if i > d {
            return 0;
        }
        let mut binom = 1u64;
        for t in 0..i {
            binom = binom * (d - t) / (t + 1);
        }
        binom * 3u64.pow(i as u32)
    }

    /// Bit offset of Shrikhande coordinate `i` (0-based); the pair `(a, b)` sits
    /// at `(word >> shift) & 0xF` as `4a + b`.
    #[inline]
    pub(crate) fn shr_shift(&self, i: u32) -> u32 {
        2 * self.n + 4 * (self.m - 1 - i)
    }

    /// Bit offset of `K4` coordinate `j` (0-based).
    #[inline]
    pub(crate) fn k4_shift(&self, j: u32) -> u32 {
        2 * (self.n - 1 - j)
    }

    /// Canonical index of a structured vertex.
    pub fn index(&self, v: &Vertex) -> Result<u64> {
        if v.shr.len() != self.m as usize || v.k4.len() != self.n as usize {
            return Err(Error::InvalidVertex(format!(
                "vertex has {} Shrikhande and {} K4 coordinates, D({},{}) needs {} and {}",
                v.shr.len(),
                v.k4.len(),
                self.m,
                self.n,
                self.m,
                self.n
            )));
        }
        let mut idx = 0u64;
        for &(a, b) in &v.shr {
            if a > 3 || b > 3 {
                return Err(Error::InvalidVertex(format!("Shrikhande coordinate ({a},{b}) out of Z4^2")));
            }
            idx = (idx << 4) | (4 * a as u64 + b as u64);
        }
        for &x in &v.k4 {
            if x > 3 {
                return Err(Error::InvalidVertex(format!("K4 coordinate {x} out of Z4")));
            }
            idx = (idx << 2) | x as u64;
        }
        Ok(idx)
    }

    /// Structured vertex at a canonical index.
    pub fn vertex_at(&self, index: u64) -> Result<Vertex> {
        if index >= self.num_vertices() {
            return Err(Error::InvalidVertex(format!(
                "index {index} out of range for D({},{}) with {} vertices",
                self.m,
                self.n,
                self.num_vertices()
            )));
        }
        let shr = (0..self.m)
            .map(|i| {
                let p = (index >> self.shr_shift(i)) & 0xF;
                ((p >> 2) as u8, (p & 3) as u8)
            })
            .collect();
        let k4 = (0..self.n).map(|j| ((index >> self.k4_shift(j)) & 3) as u8).collect();
        Ok(Vertex { shr, k4 })
    }

    /// The connecting set as packed differences, Shrikhande coordinates first.
    pub fn connecting_set(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for i in 0..self.m {
            let sh = self.shr_shift(i);
            for &(a, b) in &SHRIKHANDE_CONNECTING_SET {
                out.push(((4 * a + b) as u64) << sh);
            }
        }
        for j in 0..self.n {
            let sh = self.k4_shift(j);
            for d in 1..4u64 {
                out.push(d << sh);
            }
        }
        out
    }

    /// Neighbours of a vertex given by canonical index.
    pub fn neighbors(&self, v: u64) -> Result<Vec<u64>> {
        self.check_index(v)?;
        Ok(self.connecting_set().into_iter().map(|s| z4_add(v, s)).collect())
    }

    /// Neighbours of a structured vertex.
    pub fn neighbors_of(&self, v: &Vertex) -> Result<Vec<Vertex>> {
        let idx = self.index(v)?;
        self.neighbors(idx)?.into_iter().map(|u| self.vertex_at(u)).collect()
    }

    /// Graph distance, computed coordinate-wise: Shrikhande distance per pair
    /// plus the number of differing `K4` coordinates.
    pub fn distance(&self, u: u64, v: u64) -> Result<u32> {
        self.check_index(u)?;
        self.check_index(v)?;
        Ok(self.distance_unchecked(u, v))
    }

    #[inline]
    pub(crate) fn distance_unchecked(&self, u: u64, v: u64) -> u32 {
        let d = z4_sub(u, v);
        let k4 = digit_weight(d & mask_bits(2 * self.n));
        let mut shr = 0u32;
        let mut rest = d >> (2 * self.n);
        for _ in 0..self.m {
            shr += SHRIKHANDE_DIST[(rest & 0xF) as usize] as u32;
            rest >>= 4;
        }
        shr + k4
    }

    /// The radius-1 ball around `x`.
    pub fn ball(&self, x: u64) -> Result<crate::partition::Code> {
        let mut members = self.neighbors(x)?;
        members.push(x);
        crate::partition::Code::from_indices(*self, members)
    }

    pub(crate) fn check_index(&self, v: u64) -> Result<()> {
        if v >= self.num_vertices() {
            Err(Error::InvalidVertex(format!(
                "index {v} out of range for D({},{})",
                self.m, self.n
            )))
        } else {
            Ok(())
        }
    }

    /// Precomputed adjacency helper for hot loops.
    pub fn graph(&self) -> Graph {
        Graph { spec: *self, conn: self.connecting_set() }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({},{})", self.m, self.n)
    }
}

#[inline]
pub(crate) fn mask_bits(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// A vertex as `(x*_1, ..., x*_m; x'_1, ..., x'_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub shr: Vec<(u8, u8)>,
    pub k4: Vec<u8>,
}

impl Vertex {
    pub fn new(shr: Vec<(u8, u8)>, k4: Vec<u8>) -> Self {
        Vertex { shr, k4 }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let shr: Vec<String> = self.shr.iter().map(|(a, b)| format!("{a}{b}")).collect();
        write!(f, "{}", shr.join(","))?;
        write!(f, ";")?;
        let k4: Vec<String> = self.k4.iter().map(|x| x.to_string()).collect();
        write!(f, "{})", k4.join(","))
    }
}

/// A spec together with its packed connecting set.
#[derive(Clone, Debug)]
pub struct Graph {
    spec: GraphSpec,
    conn: Vec<u64>,
}

impl Graph {
    pub fn spec(&self) -> GraphSpec {
        self.spec
    }

    pub fn connecting_set(&self) -> &[u64] {
        &self.conn
    }

    #[inline]
    pub fn neighbors(&self, v: u64) -> impl Iterator<Item = u64> + '_ {
        self.conn.iter().map(move |&s| z4_add(v, s))
    }
}

/// Splits vertices of a product `D(m1+m2, n1+n2)` into the factor vertices of
/// `D(m1, n1)` (leading coordinates of each kind) and `D(m2, n2)`.
#[derive(Clone, Copy, Debug)]
pub struct ProductLayout {
    left: GraphSpec,
    right: GraphSpec,
    total: GraphSpec,
}

impl ProductLayout {
    pub fn new(left: GraphSpec, right: GraphSpec) -> Result<Self> {
        let total = GraphSpec::new(left.m + right.m, left.n + right.n)?;
        Ok(ProductLayout { left, right, total })
    }

    pub fn left(&self) -> GraphSpec {
        self.left
    }

    pub fn right(&self) -> GraphSpec {
        self.right
    }

    pub fn total(&self) -> GraphSpec {
        self.total
    }

    #[inline]
    pub fn split(&self, v: u64) -> (u64, u64) {
        let n = self.total.n;
        let shr = v >> (2 * n);
        let k4 = v & mask_bits(2 * n);
        let shr_r = shr & mask_bits(4 * self.right.m);
        let shr_l = shr >> (4 * self.right.m);
        let k4_r = k4 & mask_bits(2 * self.right.n);
        let k4_l = k4 >> (2 * self.right.n);
        ((shr_l << (2 * self.left.n)) | k4_l, (shr_r << (2 * self.right.n)) | k4_r)
    }

    #[inline]
    pub fn join(&self, l: u64, r: u64) -> u64 {
        let shr_l = l >> (2 * self.left.n);
        let k4_l = l & mask_bits(2 * self.left.n);
        let shr_r = r >> (2 * self.right.n);
        let k4_r = r & mask_bits(2 * self.right.n);
        let shr = (shr_l << (4 * self.right.m)) | shr_r;
        let k4 = (k4_l << (2 * self.right.n)) | k4_r;
        (shr << (2 * self.total.n)) | k4
    }
}

/// Splits vertices of `D(sum m_i, sum n_i)` into the vertices of a sequence of
/// factors; factor `i` takes the next `m_i` Shrikhande and next `n_i` `K4`
/// coordinates.
#[derive(Clone, Debug)]
pub struct Factorization {
    factors: Vec<GraphSpec>,
    total: GraphSpec,
    shr_offsets: Vec<u32>,
    k4_offsets: Vec<u32>,
}

impl Factorization {
    pub fn new(factors: Vec<GraphSpec>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Precondition("factorization needs at least one factor".into()));
        }
        let m: u32 = factors.iter().map(|f| f.m).sum();
        let n: u32 = factors.iter().map(|f| f.n).sum();
        let total = GraphSpec::new(m, n)?;
        let mut shr_offsets = Vec::with_capacity(factors.len());
        let mut k4_offsets = Vec::with_capacity(factors.len());
        let (mut so, mut ko) = (0, 0);
        for f in &factors {
            shr_offsets.push(so);
            k4_offsets.push(ko);
            so += f.m;
            ko += f.n;
        }
        Ok(Factorization { factors, total, shr_offsets, k4_offsets })
    }

    pub fn factors(&self) -> &[GraphSpec] {
        &self.factors
    }

    pub fn total(&self) -> GraphSpec {
        self.total
    }

    /// Vertex of factor `i` under the projection.
    #[inline]
    pub fn project(&self, i: usize, v: u64) -> u64 {
        let f = self.factors[i];
        let t = self.total;
        let shr_all = v >> (2 * t.n);
        let k4_all = v & mask_bits(2 * t.n);
        let shr_lo = t.m - self.shr_offsets[i] - f.m;
        let k4_lo = t.n - self.k4_offsets[i] - f.n;
        let shr = (shr_all >> (4 * shr_lo)) & mask_bits(4 * f.m);
        let k4 = (k4_all >> (2 * k4_lo)) & mask_bits(2 * f.n);
        (shr << (2 * f.n)) | k4
    }

    /// Assembles a product vertex from one vertex per factor.
    pub fn join(&self, parts: &[u64]) -> u64 {
        let t = self.total;
        let (mut shr, mut k4) = (0u64, 0u64);
        for (f, &p) in self.factors.iter().zip(parts) {
            shr = (shr << (4 * f.m)) | (p >> (2 * f.n));
            k4 = (k4 << (2 * f.n)) | (p & mask_bits(2 * f.n));
        }
        (shr << (2 * t.n)) | k4
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: u32, n: u32) -> GraphSpec {
        GraphSpec::new(m, n).unwrap()
    }

    #[test]
    fn index_examples() {
        let s = spec(1, 1);
        assert_eq!(s.index(&Vertex::new(vec![(0, 0)], vec![0])).unwrap(), 0);
        assert_eq!(s.index(&Vertex::new(vec![(0, 1)], vec![2])).unwrap(), 6);
        assert_eq!(spec(0, 2).vertex_at(7).unwrap(), Vertex::new(vec![], vec![1, 3]));
        assert!(spec(0, 2).vertex_at(16).is_err());
        assert!(s.index(&Vertex::new(vec![(4, 0)], vec![0])).is_err());
        assert!(s.index(&Vertex::new(vec![], vec![0])).is_err());
    }

    #[test]
    fn index_round_trip_is_bijective() {
        for s in [spec(1, 1), spec(2, 0), spec(0, 3), spec(1, 2)] {
            for i in 0..s.num_vertices() {
                let v = s.vertex_at(i).unwrap();
                assert_eq!(s.index(&v).unwrap(), i);
            }
        }
    }

    #[test]
    fn neighbor_examples() {
        let k4 = spec(0, 1);
        let mut nb = k4.neighbors(0).unwrap();
        nb.sort();
        assert_eq!(nb, vec![1, 2, 3]);

        let shr = spec(1, 0);
        let got: Vec<Vertex> = shr.neighbors_of(&Vertex::new(vec![(0, 0)], vec![])).unwrap();
        let want: Vec<Vertex> = SHRIKHANDE_CONNECTING_SET
            .iter()
            .map(|&p| Vertex::new(vec![p], vec![]))
            .collect();
        assert_eq!(got, want);

        let s = spec(1, 1);
        for v in 0..s.num_vertices() {
            let nb = s.neighbors(v).unwrap();
            assert_eq!(nb.len(), 9);
            let mut d = nb.clone();
            d.sort();
            d.dedup();
            assert_eq!(d.len(), 9);
            assert!(!nb.contains(&v));
        }
    }

    #[test]
    fn distance_examples() {
        let s = spec(1, 0);
        let a = s.index(&Vertex::new(vec![(0, 0)], vec![])).unwrap();
        let b = s.index(&Vertex::new(vec![(2, 2)], vec![])).unwrap();
        assert_eq!(s.distance(a, b).unwrap(), 2);
        assert_eq!(s.distance(a, a).unwrap(), 0);

        let s = spec(1, 1);
        let u = s.index(&Vertex::new(vec![(0, 0)], vec![0])).unwrap();
        let v = s.index(&Vertex::new(vec![(1, 1)], vec![2])).unwrap();
        assert_eq!(s.distance(u, v).unwrap(), 2);
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(spec(1, 0).eigenvalues(), vec![6, 2, -2]);
        assert_eq!(spec(0, 1).eigenvalues(), vec![3, -1]);
        assert_eq!(spec(2, 1).eigenvalues(), vec![15, 11, 7, 3, -1, -5]);
        let s = spec(2, 1);
        let total: u64 = (0..=5).map(|i| s.eigenvalue_multiplicity(i)).sum();
        assert_eq!(total, s.num_vertices());
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(spec(0, 1).ball(0).unwrap().len(), 4);
        assert_eq!(spec(1, 0).ball(5).unwrap().len(), 7);
        assert_eq!(spec(2, 1).ball(77).unwrap().len(), 16);
    }

    #[test]
    fn invalid_specs() {
        assert!(GraphSpec::new(0, 0).is_err());
        assert!(GraphSpec::new(16, 0).is_err());
        assert!(GraphSpec::new(15, 1).is_ok());
    }

    #[test]
    fn z4_arithmetic_matches_digitwise() {
        let s = spec(0, 3);
        for x in 0..64u64 {
            for y in 0..64u64 {
                let want: u64 = (0..3)
                    .map(|j| ((((x >> (2 * j)) & 3) + ((y >> (2 * j)) & 3)) % 4) << (2 * j))
                    .sum();
                assert_eq!(z4_add(x, y) & mask_bits(2 * s.diameter()), want);
                assert_eq!(z4_add(z4_sub(x, y), y), x);
            }
        }
    }

    #[test]
    fn product_layout_round_trips() {
        let lay = ProductLayout::new(spec(1, 2), spec(1, 1)).unwrap();
        assert_eq!(lay.total(), spec(2, 3));
        for v in 0..lay.total().num_vertices() {
            let (l, r) = lay.split(v);
            assert!(l < lay.left().num_vertices() && r < lay.right().num_vertices());
            assert_eq!(lay.join(l, r), v);
        }
        let f = Factorization::new(vec![spec(1, 0), spec(0, 2), spec(1, 1)]).unwrap();
        for v in (0..f.total().num_vertices()).step_by(7) {
            let parts: Vec<u64> = (0..3).map(|i| f.project(i, v)).collect();
            assert_eq!(f.join(&parts), v);
        }
    }

    #[test]
    fn product_adjacency_is_factorwise() {
        // a neighbour in the product changes exactly one factor to a neighbour
        let lay = ProductLayout::new(spec(1, 0), spec(0, 1)).unwrap();
        let g = lay.total().graph();
        for v in 0..lay.total().num_vertices() {
            let (l, r) = lay.split(v);
            for u in g.neighbors(v) {
                let (l2, r2) = lay.split(u);
                let dl = lay.left().distance(l, l2).unwrap();
                let dr = lay.right().distance(r, r2).unwrap();
                assert_eq!(dl + dr, 1);
            }
        }
    }
}
