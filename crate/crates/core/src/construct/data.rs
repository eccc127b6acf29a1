//! Base objects found by search and checked in under `data/`.
//!
//! Each loader parses the stored object and the caller verifies it; the
//! `search_*` functions re-derive the same objects from scratch.

use crate::error::{Error, Result};
use crate::graph::GraphSpec;
use crate::partition::io::parse_pc1;
use crate::partition::{Code, Coloring, QuotientMatrix};
use crate::search::{
    find_additive_perfect_code, find_coloring_family, find_perfect_coloring, ColoringConstraints, SearchBudget,
};

const PERFECT_D21: &str = include_str!("../../data/perfect_d21.pc1");
const PERFECT_D13: &str = include_str!("../../data/perfect_d13.pc1");
const THREEJ_D20: &str = include_str!("../../data/threej_d20.pc1");
const THREEJ_D12: &str = include_str!("../../data/threej_d12.pc1");
const BCIND_D10: &str = include_str!("../../data/bcind_d10.fam");
const BCIND_H3: &str = include_str!("../../data/bcind_h3.fam");

/// Stored partition of a diameter-5 Doob graph into 16 disjoint 1-perfect
/// codes (the cosets of an additive code).
pub fn diameter_five_partition(s: GraphSpec) -> Result<Coloring> {
    let text = match (s.m(), s.n()) {
        (2, 1) => PERFECT_D21,
        (1, 3) => PERFECT_D13,
        _ => return Ok(search_diameter_five_partition(s)?),
    };
    let c = parse_pc1(text)?;
    if c.spec() != s || c.k() != 16 {
        return Err(Error::Verification(format!("stored partition does not match {s}")));
    }
    Ok(c)
}

pub fn search_diameter_five_partition(s: GraphSpec) -> Result<Coloring> {
    Ok(find_additive_perfect_code(s)?.cosets)
}

/// Quotient `[[2J, J], [J, 2J]]` of order 8.
pub fn three_j_base_quotient() -> QuotientMatrix {
    QuotientMatrix::from_fn(8, |a, b| if a / 4 == b / 4 { 2 } else { 1 })
}

/// Stored 8-coloring of `D(2,0)` or `D(1,2)` with quotient
/// [`three_j_base_quotient`].
pub fn three_j_base(s: GraphSpec) -> Result<Coloring> {
    let text = match (s.m(), s.n()) {
        (2, 0) => THREEJ_D20,
        (1, 2) => THREEJ_D12,
        _ => return Err(Error::Precondition(format!("no stored base coloring for {s}"))),
    };
    let c = parse_pc1(text)?;
    if c.spec() != s || c.k() != 8 {
        return Err(Error::Verification(format!("stored base coloring does not match {s}")));
    }
    Ok(c)
}

/// Searches for the coloring stored by [`three_j_base`], invariant under the
/// translation by `(0,1)` in the last Shrikhande coordinate.
pub fn search_three_j_base(s: GraphSpec) -> Result<Coloring> {
    if (s.m(), s.n()) != (2, 0) && (s.m(), s.n()) != (1, 2) {
        return Err(Error::Precondition(format!("{s} is not D(2,0) or D(1,2)")));
    }
    let q = three_j_base_quotient();
    let budget = SearchBudget::default();
    let cons = ColoringConstraints { translations: vec![1 << (2 * s.n())], ..ColoringConstraints::default() };
    match find_perfect_coloring(s, &q, &cons, &budget) {
        Err(Error::Unsatisfiable) => find_perfect_coloring(s, &q, &ColoringConstraints::default(), &budget),
        r => r,
    }
}

/// Families of perfect 2-colorings on a 16- or 64-vertex graph: four disjoint
/// `(6,2)` codes and eight `(5,3)` codes covering every vertex three times.
#[derive(Clone, Debug)]
pub struct BcBaseFamilies {
    pub spec: GraphSpec,
    pub b62: Vec<Code>,
    pub b53: Vec<Code>,
}

fn bc_quotient(s: GraphSpec, b: u32, c: u32) -> QuotientMatrix {
    let d = s.degree();
    QuotientMatrix::two(d - b, b, c, d - c)
}

/// Parses the `fam` text format: a header line
/// `fam m=<m> n=<n> b=<b> c=<c> coverage=<r>` followed by one code per line.
fn parse_families(text: &str) -> Result<Vec<(GraphSpec, u32, u32, Vec<Code>)>> {
    let mut out: Vec<(GraphSpec, u32, u32, Vec<Code>)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| Error::Parse { line: i + 1, msg: msg.into() };
        if let Some(rest) = line.strip_prefix("fam ") {
            let mut f = [0u32; 5];
            for (slot, key) in f.iter_mut().zip(["m", "n", "b", "c", "coverage"]) {
                let val = rest
                    .split_whitespace()
                    .find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
                    .ok_or_else(|| bad("missing header field"))?;
                *slot = val.parse().map_err(|_| bad("bad header value"))?;
            }
            out.push((GraphSpec::new(f[0], f[1])?, f[2], f[3], Vec::new()));
        } else {
            let (s, _, _, codes) = out.last_mut().ok_or_else(|| bad("code before header"))?;
            let vs: std::result::Result<Vec<u64>, _> = line.split_whitespace().map(str::parse).collect();
            codes.push(Code::from_indices(*s, vs.map_err(|_| bad("bad vertex"))?)?);
        }
    }
    Ok(out)
}

/// Formats families in the text format read by the loaders.
pub fn format_families(f: &BcBaseFamilies) -> String {
    let mut out = String::new();
    for (b, c, r, codes) in [(6, 2, 1, &f.b62), (5, 3, 3, &f.b53)] {
        out.push_str(&format!("fam m={} n={} b={b} c={c} coverage={r}\n", f.spec.m(), f.spec.n()));
        for code in codes {
            let vs: Vec<String> = code.iter().map(|v| v.to_string()).collect();
            out.push_str(&vs.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Stored base families for `D(1,0)` or `H(3,4)`.
pub fn bc_base_families(s: GraphSpec) -> Result<BcBaseFamilies> {
    let text = match (s.m(), s.n()) {
        (1, 0) => BCIND_D10,
        (0, 3) => BCIND_H3,
        _ => return Err(Error::Precondition(format!("no stored base families for {s}"))),
    };
    let mut b62 = None;
    let mut b53 = None;
    for (fs, b, c, codes) in parse_families(text)? {
        if fs != s {
            return Err(Error::Verification(format!("stored families are for {fs}, not {s}")));
        }
        match (b, c) {
            (6, 2) => b62 = Some(codes),
            (5, 3) => b53 = Some(codes),
            _ => return Err(Error::Verification(format!("unexpected stored family ({b},{c})"))),
        }
    }
    match (b62, b53) {
        (Some(b62), Some(b53)) if b62.len() == 4 && b53.len() == 8 => Ok(BcBaseFamilies { spec: s, b62, b53 }),
        _ => Err(Error::Verification(format!("stored families for {s} are incomplete"))),
    }
}

/// Re-derives [`bc_base_families`] by search.
pub fn search_bc_base_families(s: GraphSpec) -> Result<BcBaseFamilies> {
    let budget = SearchBudget::default();
    let b62 = find_coloring_family(s, &bc_quotient(s, 6, 2), 1, &budget)?.classes;
    let b53 = find_coloring_family(s, &bc_quotient(s, 5, 3), 3, &budget)?.classes;
    Ok(BcBaseFamilies { spec: s, b62, b53 })
}

/// Eight perfect `(8-c, c)`-colorings, as color-0 classes, such that every
/// vertex lies in exactly `c` of them; `c` in `2..=6`.
pub fn bc_base_family(s: GraphSpec, c: u32) -> Result<Vec<Code>> {
    let f = bc_base_families(s)?;
    let twice = |codes: &[Code]| -> Vec<Code> { codes.iter().flat_map(|x| [x.clone(), x.clone()]).collect() };
    let complement = |codes: Vec<Code>| -> Result<Vec<Code>> { codes.iter().map(Code::complement).collect() };
    match c {
        2 => Ok(twice(&f.b62)),
        3 => Ok(f.b53),
        4 => {
            let u1 = Code::union([&f.b62[0], &f.b62[1]])?;
            let u2 = Code::union([&f.b62[2], &f.b62[3]])?;
            Ok((0..8).map(|i| if i % 2 == 0 { u1.clone() } else { u2.clone() }).collect())
        }
        5 => complement(f.b53),
        6 => complement(twice(&f.b62)),
        _ => Err(Error::Precondition(format!("c = {c} outside 2..=6"))),
    }
}
