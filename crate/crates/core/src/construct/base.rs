//! Base objects: label-sum MDS partitions, Hamming codes, diameter-5 perfect
//! code partitions, the `D(4,0)` distance-3 partition, `GF(2^k)` syndrome
//! partitions of `H(2^k, 4)` and multipartite colorings.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{packed_shrikhande_label_sum, shrikhande_label_bits, Field};
use crate::graph::{z4_add, z4_sub, GraphSpec};
use crate::partition::{Code, Coloring, FnColoring, QuotientMatrix};

use super::{data, spec, split_coloring, unsupported, Built};

/// XOR of the 2-bit digits of `w`.
#[inline]
pub(crate) fn xor_digits(mut w: u64) -> u8 {
    w ^= w >> 32;
    w ^= w >> 16;
    w ^= w >> 8;
    w ^= w >> 4;
    w ^= w >> 2;
    (w & 3) as u8
}

/// `GF(4)` sum of the labels of all coordinates of `v`.
#[inline]
pub(crate) fn label_sum(s: GraphSpec, v: u64) -> u8 {
    let n = s.n();
    let k4 = v & ((1u64 << (2 * n)) - 1);
    packed_shrikhande_label_sum(v >> (2 * n), s.m()) ^ xor_digits(k4)
}

/// Componentwise `Z4^2` sum of the Shrikhande pairs of a `D(m,0)` vertex.
#[inline]
pub(crate) fn pair_sum(v: u64, m: u32) -> u64 {
    (0..m).fold(0, |acc, i| z4_add(acc, (v >> (4 * i)) & 0xF))
}

/// 4-coloring by the label sum; every class is a 2-MDS code and the quotient
/// is `(2m+n)(J-E)`.
pub fn mds_partition(s: GraphSpec) -> Result<Built> {
    let d = s.diameter();
    Built::from_fn("mds", s, QuotientMatrix::je(4, d, 0), move |v| label_sum(s, v) as usize)
}

/// Syndrome map of the quaternary Hamming code of redundancy `l`.
#[derive(Clone, Debug)]
pub(crate) struct HammingSyndrome {
    /// `table[p][x]`: contribution of symbol `x` at position `p`.
    table: Vec<[u32; 4]>,
}

impl HammingSyndrome {
    pub(crate) fn new(l: u32) -> Result<HammingSyndrome> {
        let f = Field::get(2)?;
        let cols: Vec<u32> = (1..(1u32 << (2 * l)))
            .filter(|&c| {
                let lead = (0..l).rev().map(|i| (c >> (2 * i)) & 3).find(|&d| d != 0);
                lead == Some(1)
            })
            .collect();
        let table = cols
            .iter()
            .map(|&c| {
                let mut row = [0u32; 4];
                for (x, r) in row.iter_mut().enumerate() {
                    *r = (0..l).fold(0, |acc, i| acc | (f.mul_bits(x as u32, (c >> (2 * i)) & 3) << (2 * i)));
                }
                row
            })
            .collect();
        Ok(HammingSyndrome { table })
    }

    pub(crate) fn len(&self) -> u32 {
        self.table.len() as u32
    }

    #[inline]
    pub(crate) fn syndrome(&self, v: u64) -> u32 {
        let n = self.table.len();
        let mut s = 0;
        for (p, row) in self.table.iter().enumerate() {
            s ^= row[((v >> (2 * (n - 1 - p))) & 3) as usize];
        }
        s
    }
}

/// The `GF(4)` Hamming code of redundancy `l` in `H((4^l-1)/3, 4)`, as the
/// coloring by syndrome (color 0 is the code). Columns of the check matrix are
/// the projective points with leading coordinate 1.
pub fn hamming_one_perfect(l: u32) -> Result<Built> {
    if l == 0 || l > 4 {
        return Err(Error::Precondition(format!("Hamming code redundancy {l} outside 1..=4")));
    }
    let h = HammingSyndrome::new(l)?;
    let s = GraphSpec::hamming(h.len())?;
    let k = 1usize << (2 * l);
    Built::from_fn(format!("hamming {l}"), s, QuotientMatrix::je(k, 1, 0), move |v| h.syndrome(v) as usize)
}

/// Partition into `4^l` disjoint 1-perfect codes of a graph of diameter
/// `(4^l-1)/3`, as a coloring with quotient `J-E`.
pub fn perfect_code_partition(s: GraphSpec) -> Result<Built> {
    let d = s.diameter() as u64;
    let l = match (0..=16).find(|&l| (4u64.pow(l) - 1) / 3 == d) {
        Some(l) if l >= 1 => l,
        _ => return Err(Error::Precondition(format!("diameter {d} of {s} is not (4^l-1)/3"))),
    };
    if s.m() == 0 {
        return Ok(hamming_one_perfect(l)?.renamed(format!("perfect {s}")));
    }
    if d == 5 {
        let c = data::diameter_five_partition(s)?;
        return Built::certify(format!("perfect {s}"), Arc::new(c), QuotientMatrix::je(16, 1, 0));
    }
    Err(unsupported(s, "1-perfect partitions with Shrikhande factors are built only at diameter 5"))
}

/// Sum class and sub-class of a vertex of `D(4,0)`: the `Z4^2` sum of its four
/// pairs (as `4a+b`) and `y2 + y3 alpha + y4 alpha^2` in `GF(4)` over the
/// labels `y_i` of the last three pairs.
#[inline]
pub fn d40_class(v: u64) -> (u8, u8) {
    let f = Field::get(2).expect("GF(4)");
    let lab = |i: u32| {
        let p = (v >> (4 * (3 - i))) & 0xF;
        shrikhande_label_bits((p >> 2) as u8, (p & 3) as u8) as u32
    };
    let t = lab(1) ^ f.mul_bits(2, lab(2)) ^ f.mul_bits(3, lab(3));
    (pair_sum(v, 4) as u8, t as u8)
}

/// The four codes of distance 3 partitioning `C^a = {x : sum of pairs = a}` in
/// `D(4,0)`; `a` is a pair `4a1+a2`.
pub fn d40_partition(a: u8) -> Result<Vec<Code>> {
    if a > 15 {
        return Err(Error::Precondition(format!("{a} is not a Z4^2 element")));
    }
    let s = spec(4, 0)?;
    let c = Coloring::from_closure(s, 64, |v| {
        let (sum, t) = d40_class(v);
        4 * sum as usize + t as usize
    })?;
    (0..4).map(|t| c.class(4 * a as usize + t)).collect()
}

/// The partition of `H(2^k, 4)` from the two-row check matrix over `GF(2^k)`
/// (a row of ones and the row `0, 1, alpha, ..., alpha^(2^k-2)`), restricted to
/// the subalphabet `{0, 1, alpha, alpha+1}`.
///
/// Words with zero digit sum form a 2-MDS code `C`; its classes `L_0..L_{2^k-1}`
/// by second syndrome (`0` then `alpha^e`) have distance at least 3.
#[derive(Clone, Debug)]
pub struct MdsDistance3 {
    k: u32,
    field: &'static Field,
    labels: Vec<u32>,
}

impl MdsDistance3 {
    pub fn new(k: u32) -> Result<MdsDistance3> {
        if !(2..=4).contains(&k) {
            return Err(Error::Precondition(format!("k = {k} outside 2..=4")));
        }
        let field = Field::get(k)?;
        let labels = (0..1u64 << k).map(|p| if p == 0 { 0 } else { field.alpha_pow(p - 1).bits() }).collect();
        Ok(MdsDistance3 { k, field, labels })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn spec(&self) -> GraphSpec {
        GraphSpec::hamming(1 << self.k).expect("length at most 16")
    }

    /// Position label `h_p`.
    pub fn position_label(&self, p: u32) -> u32 {
        self.labels[p as usize]
    }

    /// `(digit sum, sum of h_p x_p)`; position 0 is the leading digit.
    #[inline]
    pub fn syndromes(&self, v: u64) -> (u8, u32) {
        let n = 1u32 << self.k;
        let mut s2 = 0;
        for p in 1..n {
            let x = ((v >> (2 * (n - 1 - p))) & 3) as u32;
            s2 ^= self.field.mul_bits(x, self.labels[p as usize]);
        }
        (xor_digits(v), s2)
    }

    #[inline]
    fn index_of(&self, s2: u32) -> usize {
        self.field.log_bits(s2).map_or(0, |e| e as usize + 1)
    }

    /// Class index of a member of `C`, `None` outside `C`.
    #[inline]
    pub fn class(&self, v: u64) -> Option<usize> {
        let (q, s2) = self.syndromes(v);
        (q == 0).then(|| self.index_of(s2))
    }

    /// Multipartite color `(a, i)`: `v - e_a` (XOR in the leading digit) is in
    /// class `i`.
    #[inline]
    pub fn multipartite(&self, v: u64) -> (usize, usize) {
        let (q, s2) = self.syndromes(v);
        (q as usize, self.index_of(s2))
    }

    /// Dense classes; only for `k <= 3`.
    pub fn codes(&self) -> Result<Vec<Code>> {
        let s = self.spec();
        crate::partition::check_exhaustive(s, "dense classes")?;
        (0..1usize << self.k).map(|i| Code::from_predicate(s, |v| self.class(v) == Some(i))).collect()
    }
}

/// Constructor for [`MdsDistance3`].
pub fn mds_distance3_partition(k: u32) -> Result<MdsDistance3> {
    MdsDistance3::new(k)
}

/// Quotient of a `k`-multipartite coloring.
pub(crate) fn multipartite_quotient(k: u32) -> QuotientMatrix {
    QuotientMatrix::from_fn(4 << k, |a, b| ((a >> k) != (b >> k)) as u32)
}

/// `k`-multipartite coloring of a graph of diameter `2^k`; color `(i, j)` is
/// `i * 2^k + j`.
pub fn multipartite(k: u32, s: GraphSpec) -> Result<Built> {
    if k < 2 || s.diameter() != 1 << k {
        return Err(Error::Precondition(format!("{s} does not have diameter 2^{k} with k >= 2")));
    }
    let name = format!("multipartite {k} {s}");
    if k == 2 {
        return multipartite_diameter_four(s).map(|b| b.renamed(name));
    }
    if s.m() == 0 {
        let p = MdsDistance3::new(k)?;
        let f = Arc::new(FnColoring::new(s, 4 << k, move |v| {
            let (a, i) = p.multipartite(v);
            (a << k) + i
        }));
        return Built::certify(name, f, multipartite_quotient(k));
    }
    if k == 3 {
        return Err(unsupported(s, "3-multipartite colorings are known only for H(8,4)"));
    }
    let base = multipartite(k - 2, GraphSpec::hamming(1 << (k - 2))?)?;
    let out = split_coloring(&base, s.m())?;
    Built::certify(name, out.shared(), multipartite_quotient(k))
}

/// Translations used to spread the slices of a perfect code over a
/// diameter-4 graph.
fn diameter_four_translations(s: GraphSpec) -> [u64; 4] {
    if s.n() >= 1 {
        [0, 1, 2, 3]
    } else {
        [0, 0b0001, 0b0100, 0b0101]
    }
}

/// From a 1-perfect code `C` of `D(m, n+1)`: `M^0_j` is the set of `x` with
/// `(x, j)` in `C`, and `M^i_j` its translate by the `i`-th translation.
fn multipartite_diameter_four(s: GraphSpec) -> Result<Built> {
    let big = spec(s.m(), s.n() + 1)?;
    let part = perfect_code_partition(big)?;
    let t = diameter_four_translations(s);
    let mut last = None;
    for coset in 0..16 {
        let code = part.class(coset)?;
        let colors: Option<Vec<u16>> = (0..s.num_vertices())
            .map(|x| {
                t.iter().enumerate().find_map(|(i, &ti)| {
                    let y = z4_sub(x, ti);
                    (0..4).find(|&j| code.contains((y << 2) | j)).map(|j| (4 * i as u64 + j) as u16)
                })
            })
            .collect();
        let Some(colors) = colors else { continue };
        let Ok(c) = Coloring::new(s, 16, colors) else { continue };
        match Built::certify("multipartite 2", Arc::new(c), multipartite_quotient(2)) {
            Ok(b) => return Ok(b),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::NotFound(format!("no slice of a perfect code of {big} spreads over {s}"))))
}
