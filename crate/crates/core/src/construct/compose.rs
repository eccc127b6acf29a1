//! Operations that build new perfect colorings from old ones.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::graph::{Factorization, GraphSpec, ProductLayout};
use crate::partition::{ColorFn, Coloring, FnColoring, QuotientMatrix, EXHAUSTIVE_LIMIT};

use super::base::{d40_class, label_sum, multipartite, multipartite_quotient, pair_sum};
use super::{sample_vertices, spec, Built, SAMPLE_SIZE};

/// Same colors on `D(m+m2, n+n2)`, read from the leading coordinates; the
/// quotient gains `6 m2 + 3 n2` on the diagonal.
pub fn extend(g: &Built, m2: u32, n2: u32) -> Result<Built> {
    if m2 == 0 && n2 == 0 {
        return Ok(g.clone());
    }
    let layout = ProductLayout::new(g.spec(), spec(m2, n2)?)?;
    let inner = g.shared();
    let q = g.quotient.add_diagonal(6 * m2 + 3 * n2);
    Built::from_fn(format!("extend({}) {m2} {n2}", g.name), layout.total(), q, move |v| inner.color(layout.split(v).0))
}

/// Unites colors per `grouping` (a list of 0-based color groups).
pub fn merge(g: &Built, grouping: &[Vec<usize>]) -> Result<Built> {
    let k = g.k();
    let mut map = vec![usize::MAX; k];
    for (t, grp) in grouping.iter().enumerate() {
        for &c in grp {
            if c >= k || map[c] != usize::MAX {
                return Err(Error::InvalidGrouping(format!("color {} is out of range or repeated", c + 1)));
            }
            map[c] = t;
        }
    }
    if let Some(c) = map.iter().position(|&t| t == usize::MAX) {
        return Err(Error::InvalidGrouping(format!("color {} is not in any group", c + 1)));
    }
    let q = g
        .quotient
        .merged(grouping)
        .ok_or_else(|| Error::InvalidGrouping("colors in a group have different rows".into()))?;
    let inner = g.shared();
    Built::from_fn(format!("merge({})", g.name), g.spec(), q, move |v| map[inner.color(v)])
}

/// Unites the first `r` colors and the remaining ones.
pub fn merge_first(g: &Built, r: usize) -> Result<Built> {
    if r == 0 || r >= g.k() {
        return Err(Error::InvalidGrouping(format!("cannot split {} colors after {r}", g.k())));
    }
    merge(g, &[(0..r).collect(), (r..g.k()).collect()])
}

fn equal_diagonal_block(q: &QuotientMatrix, off: usize, k: usize) -> bool {
    (0..k).all(|i| (0..k).all(|j| q.get(off + i, off + j) == q.get(off + (i + 1) % k, off + (j + 1) % k)))
}

/// `f(x,y) = (i, h_i(y) + j mod k_i)` where `g(x) = (i, j)`; the colors of `g`
/// are grouped into consecutive blocks of the given sizes.
pub fn diag_product(g: &Built, sizes: &[usize], hs: &[Built]) -> Result<Built> {
    let mismatch = |m: String| Error::BlockStructureMismatch(m);
    if sizes.iter().sum::<usize>() != g.k() || sizes.contains(&0) {
        return Err(mismatch(format!("block sizes {sizes:?} do not add up to {} colors", g.k())));
    }
    if hs.len() != sizes.len() {
        return Err(mismatch(format!("{} blocks but {} inner colorings", sizes.len(), hs.len())));
    }
    let h_spec = hs[0].spec();
    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, &s| Some(std::mem::replace(acc, *acc + s))).collect();
    let q = &g.quotient;
    for (p, (&op, &kp)) in offsets.iter().zip(sizes).enumerate() {
        if hs[p].spec() != h_spec {
            return Err(mismatch("inner colorings live on different graphs".into()));
        }
        if hs[p].k() != kp || !hs[p].quotient.is_equal_diagonal() {
            return Err(mismatch(format!("inner coloring {} is not an equal-diagonal {kp}-coloring", p + 1)));
        }
        if !equal_diagonal_block(q, op, kp) {
            return Err(mismatch(format!("diagonal block {} is not equal-diagonal", p + 1)));
        }
        for (&oq, &kq) in offsets.iter().zip(sizes) {
            if oq == op {
                continue;
            }
            let v = q.get(op, oq);
            if (0..kp).any(|i| (0..kq).any(|j| q.get(op + i, oq + j) != v)) {
                return Err(mismatch(format!("off-diagonal block at {} is not constant", p + 1)));
            }
        }
    }
    let mut block_of = Vec::with_capacity(g.k());
    for (p, &kp) in sizes.iter().enumerate() {
        block_of.extend((0..kp).map(|j| (p, j)));
    }
    let declared = QuotientMatrix::from_fn(g.k(), |a, b| {
        let (pa, ja) = block_of[a];
        let (pb, jb) = block_of[b];
        q.get(a, b) + if pa == pb { hs[pa].quotient.get(ja, jb) } else { 0 }
    });
    let layout = ProductLayout::new(g.spec(), h_spec)?;
    let inner = g.shared();
    let hs_dyn: Vec<_> = hs.iter().map(Built::shared).collect();
    let names: Vec<&str> = hs.iter().map(|h| h.name.as_str()).collect();
    let sizes = sizes.to_vec();
    Built::from_fn(format!("diag({}; {})", g.name, names.join(", ")), layout.total(), declared, move |v| {
        let (x, y) = layout.split(v);
        let (p, j) = block_of[inner.color(x)];
        offsets[p] + (hs_dyn[p].color(y) + j) % sizes[p]
    })
}

/// Factors of the product that carries the `k`-multiple of a coloring of
/// `D(m,n)`: `m` copies of `D(k,0)`, then one `D(a_j, b_j)` with
/// `2 a_j + b_j = k` per `K4` coordinate, where the `a_j` add up to `m2`.
pub fn multiply_factors(g: GraphSpec, k: u32, m2: u32, n2: u32) -> Result<Vec<GraphSpec>> {
    if k == 0 {
        return Err(Error::Precondition("multiplier must be positive".into()));
    }
    if 2 * m2 + n2 != k * g.n() {
        return Err(Error::Precondition(format!("2*{m2}+{n2} != {k}*{}", g.n())));
    }
    let mut factors: Vec<GraphSpec> = (0..g.m()).map(|_| spec(k, 0)).collect::<Result<_>>()?;
    let mut rem = m2;
    for _ in 0..g.n() {
        let a = rem.min(k / 2);
        rem -= a;
        factors.push(spec(a, k - 2 * a)?);
    }
    if rem > 0 {
        return Err(Error::Precondition(format!("{m2} Shrikhande factors do not fit: k={k} is odd and n2 < {}", g.n())));
    }
    Ok(factors)
}

/// Coloring of `D(mk+m2, n2)` with quotient `kS`: each Shrikhande coordinate
/// of `g` becomes a `D(k,0)` block read through the sum of its pairs, and each
/// `K4` coordinate a `D(a,b)` block read through its label sum.
pub fn multiply_coloring(g: &Built, k: u32, m2: u32, n2: u32) -> Result<Built> {
    let gs = g.spec();
    let fact = Factorization::new(multiply_factors(gs, k, m2, n2)?)?;
    let (m, n) = (gs.m(), gs.n());
    let inner = g.shared();
    let total = fact.total();
    let name = format!("multiply({}) {k} {m2} {n2}", g.name);
    Built::from_fn(name, total, g.quotient.scale(k), move |v| {
        let mut z = 0u64;
        for i in 0..m as usize {
            z = (z << 4) | pair_sum(fact.project(i, v), k);
        }
        for j in 0..n as usize {
            let f = fact.factors()[m as usize + j];
            z = (z << 2) | label_sum(f, fact.project(m as usize + j, v)) as u64;
        }
        inner.color(z)
    })
}

/// Factors for [`split_coloring`]: `m` copies of `D(4,0)`, then `D(a_j, 4-2a_j)`
/// per `K4` coordinate with the `a_j` adding up to `c`.
pub fn split_factors(g: GraphSpec, c: u32) -> Result<Vec<GraphSpec>> {
    if c > 2 * g.n() {
        return Err(Error::Precondition(format!("c = {c} exceeds 2n = {}", 2 * g.n())));
    }
    let mut factors: Vec<GraphSpec> = (0..g.m()).map(|_| spec(4, 0)).collect::<Result<_>>()?;
    let mut rem = c;
    for _ in 0..g.n() {
        let a = rem.min(2);
        rem -= a;
        factors.push(spec(a, 4 - 2 * a)?);
    }
    Ok(factors)
}

/// Dense 2-multipartite coloring of `D(a, 4-2a)`.
pub(crate) fn diameter_four_multipartite(a: u32) -> Result<Arc<Coloring>> {
    static CACHE: [OnceLock<Arc<Coloring>>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    if let Some(c) = CACHE[a as usize].get() {
        return Ok(c.clone());
    }
    let b = multipartite(2, spec(a, 4 - 2 * a)?)?;
    let c = Arc::new(b.to_coloring()?);
    Ok(CACHE[a as usize].get_or_init(|| c).clone())
}

/// `4k`-coloring of `D(4m+c, 4n-2c)` with quotient blocks `s_ij J_4`.
///
/// A vertex maps to `z` in `D(m,n)` (pair sums of the `D(4,0)` blocks, first
/// multipartite index of the diameter-4 blocks) and to `t` in `Z4^(m+n)`
/// (distance-3 sub-class, second multipartite index). Its color is
/// `4 g(z) + (sum of t mod 4)`.
pub fn split_coloring(g: &Built, c: u32) -> Result<Built> {
    let gs = g.spec();
    let factors = split_factors(gs, c)?;
    let mps: Vec<Option<Arc<Coloring>>> = factors
        .iter()
        .map(|f| if f.n() == 0 && f.m() == 4 { Ok(None) } else { diameter_four_multipartite(f.m()).map(Some) })
        .collect::<Result<_>>()?;
    let fact = Factorization::new(factors)?;
    let (m, n) = (gs.m() as usize, gs.n() as usize);
    let inner = g.shared();
    let q = &g.quotient;
    let declared = QuotientMatrix::from_fn(4 * g.k(), |a, b| q.get(a / 4, b / 4));
    Built::from_fn(format!("split({}) {c}", g.name), fact.total(), declared, move |v| {
        let (mut z, mut t) = (0u64, 0usize);
        for i in 0..m {
            let (sum, sub) = d40_class(fact.project(i, v));
            z = (z << 4) | sum as u64;
            t += sub as usize;
        }
        for j in 0..n {
            let col = mps[m + j].as_ref().expect("diameter-4 factor").get(fact.project(m + j, v));
            z = (z << 2) | (col >> 2) as u64;
            t += col & 3;
        }
        4 * inner.color(z) + t % 4
    })
}

/// Coverage of a family of 2-colorings: how many members give `v` color 0.
fn coverage_at(family: &[Arc<dyn ColorFn + Send + Sync>], v: u64) -> u32 {
    family.iter().filter(|f| f.color(v) == 0).count() as u32
}

/// Vertices on which a coverage property is checked.
fn coverage_vertices(s: GraphSpec) -> Vec<u64> {
    if s.num_vertices() <= EXHAUSTIVE_LIMIT {
        (0..s.num_vertices()).collect()
    } else {
        sample_vertices(s, SAMPLE_SIZE, 0xc0fe)
    }
}

/// The common coverage of a family, or `None` if it varies.
pub(crate) fn family_coverage(family: &[Arc<dyn ColorFn + Send + Sync>]) -> Option<u32> {
    let vs = coverage_vertices(family[0].spec());
    let r = coverage_at(family, vs[0]);
    vs.iter().all(|&v| coverage_at(family, v) == r).then_some(r)
}

/// Outputs of [`tiling_compose`] with their verified coverage.
#[derive(Clone, Debug)]
pub struct Tiling {
    pub outputs: Vec<Built>,
    pub coverage: u32,
}

/// `f^i(x,y) = f_{g(x)+i}(y)` for a `2^l`-coloring `g` with quotient
/// `k(J-E)+aE` and a family of `2^l` perfect 2-colorings (color 0 is the code)
/// with a common quotient and constant coverage.
pub fn tiling_compose(g: &Built, family: &[Built]) -> Result<Tiling> {
    let big_k = g.k();
    let viol = |item: u32, msg: String| Error::ConditionViolated { item, msg };
    if !big_k.is_power_of_two() || big_k < 2 {
        return Err(viol(1, format!("{big_k} colors is not a power of two")));
    }
    let (kk, a) = (g.quotient.get(0, 1), g.quotient.get(0, 0));
    if g.quotient != QuotientMatrix::je(big_k, kk, a) {
        return Err(viol(1, format!("quotient [{}] is not k(J-E)+aE", g.quotient)));
    }
    if family.len() != big_k {
        return Err(viol(2, format!("family has {} members, expected {big_k}", family.len())));
    }
    let fq = family[0].quotient.clone();
    let fs = family[0].spec();
    if fq.k() != 2 || family.iter().any(|f| f.quotient != fq || f.spec() != fs) {
        return Err(viol(2, "family members are not 2-colorings with one common quotient on one graph".into()));
    }
    let dyns: Vec<_> = family.iter().map(Built::shared).collect();
    let r = family_coverage(&dyns).ok_or_else(|| viol(3, "coverage of the family is not constant".into()))?;
    let (a1, b1, c1, d1) = (fq.get(0, 0), fq.get(0, 1), fq.get(1, 0), fq.get(1, 1));
    let l2 = big_k as u32;
    let declared = QuotientMatrix::two(
        a1 + a + (r - 1) * kk,
        b1 + (l2 - r) * kk,
        c1 + r * kk,
        d1 + (l2 - r - 1) * kk + a,
    );
    let layout = ProductLayout::new(g.spec(), fs)?;
    let dyns = Arc::new(dyns);
    let mut outputs = Vec::with_capacity(big_k);
    for i in 0..big_k {
        let inner = g.shared();
        let fam = dyns.clone();
        let f = Arc::new(FnColoring::new(layout.total(), 2, move |v| {
            let (x, y) = layout.split(v);
            fam[(inner.color(x) + i) % big_k].color(y)
        }));
        outputs.push(Built::certify(format!("tile({}) {i}", g.name), f, declared.clone())?);
    }
    let out_dyn: Vec<_> = outputs.iter().map(Built::shared).collect();
    let coverage = family_coverage(&out_dyn).ok_or_else(|| Error::Verification("tiling coverage varies".into()))?;
    Ok(Tiling { outputs, coverage })
}

/// One of the four input families of [`bc_family_compose`].
#[derive(Clone, Debug)]
pub enum BcFamily {
    /// Every member gives every vertex color 0.
    AllFirst,
    /// Every member gives every vertex color 1.
    AllSecond,
    /// `2^k` perfect 2-colorings with a common `(b, c)`, `b + c = 2^k`, such
    /// that every vertex has color 0 in exactly `c` of them.
    Members(Vec<Built>),
}

impl BcFamily {
    fn gamma(&self, k: u32) -> Result<u32> {
        Ok(match self {
            BcFamily::AllFirst => 1 << k,
            BcFamily::AllSecond => 0,
            BcFamily::Members(ms) => ms[0].quotient.bc().map(|(_, c)| c).unwrap_or(0),
        })
    }
}

fn check_bc_families(families: &[BcFamily; 4], k: u32) -> Result<GraphSpec> {
    let viol = |item: u32, msg: String| Error::ConditionViolated { item, msg };
    let mut base = None;
    for (i, fam) in families.iter().enumerate() {
        let BcFamily::Members(ms) = fam else { continue };
        if ms.len() != 1 << k {
            return Err(viol(1, format!("family {} has {} members, expected {}", i + 1, ms.len(), 1 << k)));
        }
        let q = ms[0].quotient.clone();
        let s = ms[0].spec();
        if q.k() != 2 || ms.iter().any(|g| g.quotient != q || g.spec() != s) {
            return Err(viol(1, format!("family {} is not a set of perfect (b,c)-colorings on one graph", i + 1)));
        }
        if base.is_some_and(|b| b != s) {
            return Err(viol(1, "families live on different graphs".into()));
        }
        base = Some(s);
        let (b, c) = q.bc().expect("2x2");
        if b + c != 1 << k {
            return Err(viol(2, format!("family {} has b+c = {} != 2^{k}", i + 1, b + c)));
        }
        let dyns: Vec<_> = ms.iter().map(Built::shared).collect();
        if family_coverage(&dyns) != Some(c) {
            return Err(viol(3, format!("vertices of family {} are not covered exactly {c} times", i + 1)));
        }
    }
    base.ok_or_else(|| viol(1, "at least one family must be non-constant".into()))
}

/// Perfect `(2^(k+2) - G, G)`-colorings `f^(i,j)(x,y) = g^(r+i)_(s+j)(y)`
/// where `h(x) = (r,s)` is a `k`-multipartite coloring and `G` is the sum of
/// the family coverages. Returns `f^(i,j)` for each requested `(i,j)`.
pub fn bc_family_compose(families: &[BcFamily; 4], h: &Built, which: &[(usize, usize)]) -> Result<Vec<Built>> {
    let k = (h.k() / 4).trailing_zeros();
    if h.k() != 4 << k || h.quotient != multipartite_quotient(k) {
        return Err(Error::Precondition(format!("{} is not a multipartite coloring", h.name)));
    }
    let base = check_bc_families(families, k)?;
    let gsum: u32 = families.iter().map(|f| f.gamma(k)).sum::<Result<u32>>()?;
    let layout = ProductLayout::new(h.spec(), base)?;
    let deg = layout.total().degree();
    let b_out = (4u32 << k) - gsum;
    let declared = QuotientMatrix::two(deg - b_out, b_out, gsum, deg - gsum);
    let fams: Arc<Vec<Option<Vec<Arc<dyn ColorFn + Send + Sync>>>>> = Arc::new(
        families
            .iter()
            .map(|f| match f {
                BcFamily::Members(ms) => Some(ms.iter().map(Built::shared).collect()),
                _ => None,
            })
            .collect(),
    );
    let consts: [usize; 4] =
        std::array::from_fn(|t| matches!(families[t], BcFamily::AllSecond) as usize);
    let mask = (1usize << k) - 1;
    which
        .iter()
        .map(|&(i, j)| {
            let inner = h.shared();
            let fams = fams.clone();
            let f = Arc::new(FnColoring::new(layout.total(), 2, move |v| {
                let (x, y) = layout.split(v);
                let hx = inner.color(x);
                let (r, s) = (hx >> k, hx & mask);
                let t = (r + i) % 4;
                match &fams[t] {
                    Some(ms) => ms[(s + j) & mask].color(y),
                    None => consts[t],
                }
            }));
            Built::certify(format!("bcpart({}) {i} {j}", h.name), f, declared.clone())
        })
        .collect()
}
