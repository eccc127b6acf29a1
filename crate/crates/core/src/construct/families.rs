//! Colorings with structured quotients: `3J`, `3(J-E)`, MDS partitions with a
//! remainder class, radius-2 completely regular codes, `s(J-E)+aE` colorings
//! and `(b,b)`-colorings.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{GraphSpec, ProductLayout};
use crate::partition::{
    verify_quotient, verify_quotient_on, FnColoring, IntersectionArray, QuotientMatrix, EXHAUSTIVE_LIMIT,
};

use super::base::{multipartite, perfect_code_partition, xor_digits, MdsDistance3};
use super::{
    data, diag_product, log2_exact, merge, multiply_coloring, multiply_factors, sample_vertices, spec, split_coloring,
    unsupported, Built, Check,
};

fn diameter_log2(s: GraphSpec, what: &str) -> Result<u32> {
    log2_exact(s.diameter() as u64)
        .filter(|&k| k >= 2)
        .ok_or_else(|| Error::Precondition(format!("{what} needs diameter 2^k with k >= 2, {s} has {}", s.diameter())))
}

/// `2^k`-coloring with quotient `3J` of a graph of diameter `2^k`.
pub fn three_j(s: GraphSpec) -> Result<Built> {
    let k = diameter_log2(s, "a 3J coloring")?;
    let name = format!("three_j {s}");
    if k == 3 && s.m() > 0 {
        return three_j_diameter_eight(s).map(|b| b.renamed(name));
    }
    let mp = multipartite(k, s)?;
    let groups: Vec<Vec<usize>> = (0..1usize << k).map(|j| (0..4).map(|i| (i << k) | j).collect()).collect();
    Ok(merge(&mp, &groups)?.renamed(name))
}

/// Diameter 8 with a Shrikhande factor: `f(x,y) = g1(x) + g2(y)` with colors
/// `(i,j)` added in `Z2 x Z4`, where `g1` has quotient `[[J, 2J], [2J, J]]` on a
/// diameter-4 factor and `g2` the stored `[[2J, J], [J, 2J]]` coloring.
fn three_j_diameter_eight(s: GraphSpec) -> Result<Built> {
    let (m2, n2) = [(1, 2), (2, 0)]
        .into_iter()
        .find(|&(m2, n2)| s.m() >= m2 && s.n() >= n2 && 2 * (s.m() - m2) + (s.n() - n2) == 4)
        .ok_or_else(|| unsupported(s, "no diameter-4 split with a stored base coloring"))?;
    let left = spec(s.m() - m2, s.n() - n2)?;
    let right = spec(m2, n2)?;
    let mp = multipartite(2, left)?;
    let groups: Vec<Vec<usize>> = (0..8).map(|c| if c < 4 { vec![c, 4 + c] } else { vec![4 + c, 8 + c] }).collect();
    let g1 = merge(&mp, &groups)?;
    let g2 = Built::certify("three_j base", Arc::new(data::three_j_base(right)?), data::three_j_base_quotient())?;
    let layout = ProductLayout::new(left, right)?;
    let (a, b) = (g1.shared(), g2.shared());
    Built::from_fn("three_j", layout.total(), QuotientMatrix::j(8, 3), move |v| {
        let (x, y) = layout.split(v);
        let (cx, cy) = (a.color(x), b.color(y));
        (((cx >> 2) ^ (cy >> 2)) << 2) | ((cx + cy) & 3)
    })
}

/// `2^k`-coloring with quotient `3(J-E)` of a graph of diameter `2^k - 1`.
pub fn three_j_minus_e(s: GraphSpec) -> Result<Built> {
    let d = s.diameter() as u64;
    let k = log2_exact(d + 1)
        .filter(|&k| k >= 2)
        .ok_or_else(|| Error::Precondition(format!("3(J-E) needs diameter 2^k - 1, {s} has {d}")))?;
    let g = gamma_mds_coloring(spec(s.m(), s.n() + 1)?, k)?;
    let inner = g.shared();
    let top = 1usize << k;
    Built::from_fn(format!("three_j_minus_e {s}"), s, QuotientMatrix::je(top, 3, 0), move |x| {
        (0..4).map(|d| inner.color((x << 2) | d)).find(|&c| c < top).expect("MDS code meets every line")
    })
}

/// Quotient of [`gamma_mds_coloring`].
pub(crate) fn gamma_quotient(s: GraphSpec, k: u32) -> QuotientMatrix {
    let top = 1usize << k;
    let gamma = s.diameter() >> k;
    QuotientMatrix::from_fn(top + 1, |i, j| match (i == top, j == top) {
        (false, true) => s.degree(),
        (true, false) => gamma,
        (true, true) => 2 * s.diameter(),
        (false, false) => 0,
    })
}

/// `(2^k+1)`-coloring of a graph of diameter `gamma 2^k`: a 2-MDS code split
/// into `2^k` classes of distance 3, plus the remaining vertices as the last
/// color.
pub fn gamma_mds_coloring(s: GraphSpec, k: u32) -> Result<Built> {
    let d = s.diameter();
    if k < 2 || d % (1 << k) != 0 {
        return Err(Error::Precondition(format!("diameter {d} of {s} is not a multiple of 2^{k} with k >= 2")));
    }
    let gamma = d >> k;
    let q = gamma_quotient(s, k);
    let name = format!("gamma_mds {s} {k}");
    let top = 1usize << k;
    if s.m() == 0 {
        let base_spec = GraphSpec::hamming(1 << k)?;
        let p = MdsDistance3::new(k)?;
        let base = Built::from_fn("gamma_mds", base_spec, gamma_quotient(base_spec, k), move |v| {
            p.class(v).unwrap_or(top)
        })?;
        if gamma == 1 {
            return Ok(base.renamed(name));
        }
        let out = multiply_coloring(&base, gamma, 0, s.n())?;
        return Ok(out.renamed(name));
    }
    if k == 3 {
        return Err(unsupported(s, "the MDS split with 8 classes is known only for Hamming graphs"));
    }
    if k == 2 {
        for m0 in [2u32, 1, 0] {
            let base_spec = spec(m0, 4 - 2 * m0)?;
            let Some(m2) = s.m().checked_sub(m0 * gamma) else { continue };
            if multiply_factors(base_spec, gamma, m2, s.n()).is_err() {
                continue;
            }
            let mp = multipartite(2, base_spec)?;
            let groups: Vec<Vec<usize>> =
                (0..4).map(|j| vec![j]).chain(std::iter::once((4..16).collect())).collect();
            let base = merge(&mp, &groups)?;
            let out = if gamma == 1 { base } else { multiply_coloring(&base, gamma, m2, s.n())? };
            return Ok(out.renamed(name));
        }
        return Err(unsupported(s, "no diameter-4 base fits"));
    }
    let small = gamma_mds_coloring(GraphSpec::hamming(gamma << (k - 2))?, k - 2)?;
    let sp = split_coloring(&small, s.m())?;
    let groups: Vec<Vec<usize>> = (0..top).map(|c| vec![c]).chain(std::iter::once((top..top + 4).collect())).collect();
    let out = merge(&sp, &groups)?;
    if out.quotient != q {
        return Err(Error::Verification(format!("split MDS coloring has quotient [{}]", out.quotient)));
    }
    Ok(out.renamed(name))
}

/// A radius-2 completely regular code with its distance coloring.
#[derive(Clone, Debug)]
pub struct Rad2Code {
    /// Color 0 is the code, colors 1 and 2 are distances 1 and 2.
    pub coloring: Built,
    pub array: IntersectionArray,
    /// Coset representatives of a translation group preserving the coloring,
    /// when one is known.
    pub representatives: Vec<u64>,
}

/// Vertices checked at random in addition to coset representatives.
pub const RAD2_RANDOM: u64 = 10_000;

/// Union of the first `b` classes of the `2^k`-split MDS code, `2m+n = gamma 2^k`
/// with `gamma` odd and `k >= 4`.
pub fn rad2_code(s: GraphSpec, b: u32) -> Result<Rad2Code> {
    let d = s.diameter();
    let k = d.trailing_zeros();
    let gamma = d >> k;
    if k < 4 {
        return Err(Error::Precondition(format!("diameter {d} = {gamma} * 2^{k} needs k >= 4")));
    }
    if b == 0 || b >= 1 << k {
        return Err(Error::Precondition(format!("b = {b} outside 1..2^{k}")));
    }
    let g = gamma_mds_coloring(s, k)?;
    let c = gamma * b;
    let declared = QuotientMatrix::from_rows(vec![
        vec![0, s.degree(), 0],
        vec![c, 2 * d, d - c],
        vec![0, s.degree(), 0],
    ])?;
    let top = 1usize << k;
    let inner = g.shared();
    let f = Arc::new(FnColoring::new(s, 3, move |v| {
        let col = inner.color(v);
        if col < b as usize {
            0
        } else if col == top {
            1
        } else {
            2
        }
    }));
    let name = format!("rad2 {s} {b}");
    let array = IntersectionArray { up: vec![s.degree(), d - c], down: vec![c, s.degree()] };
    if s.num_vertices() <= EXHAUSTIVE_LIMIT {
        let coloring = Built::certify(name, f, declared)?;
        return Ok(Rad2Code { coloring, array, representatives: Vec::new() });
    }
    let representatives = if s.m() == 0 { rad2_representatives(s, k)? } else { Vec::new() };
    let mut vs = representatives.clone();
    vs.extend(sample_vertices(s, RAD2_RANDOM, 0x2ad2));
    verify_quotient_on(f.as_ref(), &declared, &vs)?;
    let coloring = Built::certify_with(name, f, declared, &representatives)?;
    let coloring = Built { check: Check::Sampled(vs.len() as u64), ..coloring };
    Ok(Rad2Code { coloring, array, representatives })
}

/// One vertex per coset of the kernel of `x -> (digit sum, second syndrome)`
/// of the block-summed word; the coloring is invariant under XOR by the
/// kernel, so these vertices cover every row type.
fn rad2_representatives(s: GraphSpec, k: u32) -> Result<Vec<u64>> {
    let n = s.n();
    let len = 1u32 << k;
    let gamma = n / len;
    let p = MdsDistance3::new(k)?;
    let compress = |v: u64| -> u64 {
        (0..len).fold(0u64, |acc, j| {
            let block = (v >> (2 * gamma * (len - 1 - j))) & ((1u64 << (2 * gamma)) - 1);
            (acc << 2) | xor_digits(block) as u64
        })
    };
    let target = 4usize << k;
    let mut seen = std::collections::HashMap::new();
    let mut add = |v: u64| {
        seen.entry(p.syndromes(compress(v))).or_insert(v);
    };
    add(0);
    for p1 in 0..n {
        for x in 1..4u64 {
            add(x << (2 * p1));
        }
    }
    for p1 in 0..n {
        for p2 in p1 + 1..n {
            for x in 1..4u64 {
                for y in 1..4u64 {
                    add((x << (2 * p1)) | (y << (2 * p2)));
                }
            }
        }
    }
    if seen.len() != target {
        return Err(Error::Verification(format!("found {} of {target} coset representatives", seen.len())));
    }
    let mut reps: Vec<u64> = seen.into_values().collect();
    reps.sort_unstable();
    Ok(reps)
}

/// `4^l`-coloring with quotient `s(J-E)` of a graph of diameter `s(4^l-1)/3`.
pub fn je_coloring(l: u32, s_mult: u32, g: GraphSpec) -> Result<Built> {
    let d = (4u32.pow(l) - 1) / 3;
    if l == 0 || s_mult == 0 || g.diameter() != s_mult * d {
        return Err(Error::Precondition(format!("{g} does not have diameter {s_mult}*{d}")));
    }
    let name = format!("je {l} {s_mult} {g}");
    if s_mult == 1 {
        return Ok(perfect_code_partition(g)?.renamed(name));
    }
    if multiply_factors(GraphSpec::hamming(d)?, s_mult, g.m(), g.n()).is_ok() {
        let base = perfect_code_partition(GraphSpec::hamming(d)?)?;
        return Ok(multiply_coloring(&base, s_mult, g.m(), g.n())?.renamed(name));
    }
    if s_mult % 2 == 1 {
        let m2 = g.m().min((3 * d - 1) / 2);
        let n2 = 3 * d - 2 * m2;
        if n2 <= g.n() {
            let tail = three_j_minus_e(spec(m2, n2)?)?;
            if s_mult == 3 {
                return Ok(tail.renamed(name));
            }
            let head = je_coloring(l, s_mult - 3, spec(g.m() - m2, g.n() - n2)?)?;
            return Ok(diag_product(&head, &[head.k()], &[tail])?.renamed(name));
        }
    }
    Err(unsupported(g, format!("no route to a {s_mult}(J-E) coloring with {} colors", 1u64 << (2 * l))))
}

/// `4^l`-coloring of `D(m,0)` with quotient `s(J-E)+3E`, `s` odd, `2m = s(4^l-1)/3 + 1`.
pub fn je_plus_three_coloring(l: u32, s_mult: u32, g: GraphSpec) -> Result<Built> {
    let d = (4u32.pow(l) - 1) / 3;
    if l == 0 || s_mult < 3 || s_mult % 2 == 0 || g.n() != 0 || 2 * g.m() != s_mult * d + 1 {
        return Err(Error::Precondition(format!("{g} is not D(m,0) with 2m = {s_mult}*{d}+1 for odd s >= 3")));
    }
    let m2 = 1u32 << (2 * l - 1);
    let tail = three_j(spec(m2, 0)?)?;
    let name = format!("je3 {l} {s_mult} {g}");
    if s_mult == 3 {
        return Ok(tail.renamed(name));
    }
    let head = je_coloring(l, s_mult - 3, spec(g.m() - m2, 0)?)?;
    Ok(diag_product(&head, &[head.k()], &[tail])?.renamed(name))
}

/// Pairs of consecutive 1-perfect codes: a `2^(2l-1)`-coloring with quotient
/// `2(J-E)+E` of a graph of diameter `(4^l-1)/3`.
pub fn pair_partition(g: GraphSpec) -> Result<Built> {
    let p = perfect_code_partition(g)?;
    let groups: Vec<Vec<usize>> = (0..p.k() / 2).map(|j| vec![2 * j, 2 * j + 1]).collect();
    Ok(merge(&p, &groups)?.renamed(format!("pairs {g}")))
}

/// `2^(2l-1)`-coloring of `H(n,4)` with quotient `s(J-E)+aE`, `s >= 2`, as a
/// diagonal product of `3(J-E)` colorings and paired perfect partitions.
pub fn two_l_ham_coloring(l: u32, s_mult: u32) -> Result<Built> {
    if l < 2 || s_mult < 2 {
        return Err(Error::Precondition(format!("need l >= 2 and s >= 2, got l={l} s={s_mult}")));
    }
    let t = match s_mult % 3 {
        0 => 0,
        2 => 1,
        _ => 2,
    };
    let q = (s_mult - 2 * t) / 3;
    let mut parts = Vec::new();
    for _ in 0..q {
        parts.push(three_j_minus_e(GraphSpec::hamming((1 << (2 * l - 1)) - 1)?)?);
    }
    for _ in 0..t {
        parts.push(pair_partition(GraphSpec::hamming((4u32.pow(l) - 1) / 3)?)?);
    }
    let mut acc = parts.remove(0);
    for p in parts {
        acc = diag_product(&acc, &[acc.k()], &[p])?;
    }
    let n = acc.spec().n();
    Ok(acc.renamed(format!("two_l_ham {l} {s_mult} H({n},4)")))
}

/// `2^(2l-1)`-coloring of `D(m,0)` with quotient `2(J-E)+4E`,
/// `2m = 2(2^(2l-1)+1)/3`.
pub fn two_lj_four_e_coloring(l: u32) -> Result<Built> {
    if l == 0 {
        return Err(Error::Precondition("l must be positive".into()));
    }
    if l == 1 {
        return Built::from_fn("two_lj_four_e 1", spec(1, 0)?, QuotientMatrix::two(4, 2, 2, 4), |v| {
            ((v >> 2) & 3 >= 2) as usize
        });
    }
    let prev = two_lj_four_e_coloring(l - 1)?;
    let k = 2 * (l - 1);
    let mp = multipartite(k, spec(1 << (k - 1), 0)?)?;
    let half = 1usize << (k - 1);
    let groups: Vec<Vec<usize>> =
        (0..4 * half).map(|c| vec![((c / half) << k) | (2 * (c % half)), ((c / half) << k) | (2 * (c % half) + 1)]).collect();
    let g = merge(&mp, &groups)?;
    let out = diag_product(&g, &[half; 4], &[prev.clone(), prev.clone(), prev.clone(), prev])?;
    Ok(out.renamed(format!("two_lj_four_e {l}")))
}

/// Perfect `(b,b)`-coloring of `g`: the parity of indicator sums over some
/// coordinates (`{0,1}` in a `K4`, even first component or first component in
/// `{0,1}` in a Shrikhande factor).
pub fn bb_coloring(b: u32, g: GraphSpec) -> Result<Built> {
    if b == 0 || b % 2 == 1 || b > 2 * g.diameter() {
        return Err(Error::Precondition(format!("no ({b},{b})-coloring of {g}: need b even, 2 <= b <= {}", 2 * g.diameter())));
    }
    let (m, n) = (g.m(), g.n());
    let mut rest = b;
    let k4 = n.min(rest / 2);
    rest -= 2 * k4;
    let shr4 = m.min(rest / 4);
    rest -= 4 * shr4;
    let shr2 = rest / 2;
    if shr4 + shr2 > m {
        return Err(Error::Precondition(format!("({b},{b}) does not fit {g}")));
    }
    let deg = g.degree();
    let declared = QuotientMatrix::two(deg - b, b, b, deg - b);
    Built::from_fn(format!("bb {b} {g}"), g, declared, move |v| {
        let mut parity = 0u64;
        for j in 0..k4 {
            parity ^= ((v >> (2 * (n - 1 - j))) & 3) >> 1;
        }
        for i in 0..shr4 + shr2 {
            let a = (v >> (2 * n + 4 * (m - 1 - i) + 2)) & 3;
            parity ^= if i < shr4 { a & 1 } else { a >> 1 };
        }
        parity as usize
    })
}

/// Verifies a 2-coloring against its expected quotient (used by tests).
#[allow(dead_code)]
pub(crate) fn check_two(b: &Built, q: &QuotientMatrix) -> Result<()> {
    verify_quotient(b, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(m: u32, n: u32) -> GraphSpec {
        GraphSpec::new(m, n).unwrap()
    }

    #[test]
    fn three_j_small() {
        assert_eq!(three_j(sp(0, 4)).unwrap().quotient, QuotientMatrix::j(4, 3));
        assert_eq!(three_j(sp(2, 0)).unwrap().k(), 4);
        assert_eq!(three_j_minus_e(sp(0, 3)).unwrap().quotient, QuotientMatrix::je(4, 3, 0));
        assert_eq!(three_j_minus_e(sp(1, 1)).unwrap().quotient, QuotientMatrix::je(4, 3, 0));
    }

    #[test]
    fn gamma_small() {
        let g = gamma_mds_coloring(sp(0, 4), 2).unwrap();
        assert_eq!(g.quotient.row(4), &[1, 1, 1, 1, 8]);
        let g = gamma_mds_coloring(sp(2, 0), 2).unwrap();
        assert_eq!(g.quotient.row(0), &[0, 0, 0, 0, 12]);
        let g = gamma_mds_coloring(sp(0, 8), 2).unwrap();
        assert_eq!(g.quotient.row(4), &[2, 2, 2, 2, 16]);
        assert!(gamma_mds_coloring(sp(1, 6), 3).is_err());
    }

    #[test]
    fn je_and_pairs() {
        assert_eq!(je_coloring(1, 2, sp(1, 0)).unwrap().quotient, QuotientMatrix::je(4, 2, 0));
        assert_eq!(je_coloring(1, 3, sp(1, 1)).unwrap().quotient, QuotientMatrix::je(4, 3, 0));
        assert_eq!(je_coloring(1, 5, sp(2, 1)).unwrap().quotient, QuotientMatrix::je(4, 5, 0));
        assert_eq!(je_plus_three_coloring(1, 3, sp(2, 0)).unwrap().quotient, QuotientMatrix::j(4, 3));
        assert_eq!(pair_partition(sp(2, 1)).unwrap().quotient, QuotientMatrix::je(8, 2, 1));
    }

    #[test]
    fn two_lj_four_e() {
        let g = two_lj_four_e_coloring(2).unwrap();
        assert_eq!(g.spec(), sp(3, 0));
        assert_eq!(g.quotient, QuotientMatrix::je(8, 2, 4));
    }

    #[test]
    fn bb_examples() {
        assert_eq!(bb_coloring(2, sp(0, 1)).unwrap().quotient, QuotientMatrix::two(1, 2, 2, 1));
        assert_eq!(bb_coloring(4, sp(1, 0)).unwrap().quotient, QuotientMatrix::two(2, 4, 4, 2));
        assert_eq!(bb_coloring(2, sp(2, 0)).unwrap().quotient, QuotientMatrix::two(10, 2, 2, 10));
        assert!(bb_coloring(3, sp(1, 0)).is_err());
    }
}
