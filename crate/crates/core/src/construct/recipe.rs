//! A small tree language for composing builders.
//!
//! One node per line: a builder name followed by integer arguments. Children
//! are the following lines indented deeper than their parent. Blank lines and
//! lines starting with `#` are ignored.
//!
//! ```text
//! # 3(J-E) on D(1,1)
//! diag 4
//!   mds 1 0
//!   perfect 0 1
//! ```
//!
//! | node | arguments | children |
//! |------|-----------|----------|
//! | `mds` | `m n` | |
//! | `perfect` | `m n` | |
//! | `multipartite` | `k m n` | |
//! | `three_j`, `three_j_minus_e` | `m n` | |
//! | `gamma` | `k m n` | |
//! | `multifold` | `m n` | |
//! | `bc` | `b c [m n]` | |
//! | `bb` | `b m n` | |
//! | `extend` | `m n` | coloring |
//! | `multiply` | `k m n` | coloring |
//! | `split` | `c` | coloring |
//! | `diag` | block sizes | coloring, one coloring per block |
//! | `merge` | group of each color | coloring |
//! | `merge_first` | `r` | coloring |
//! | `tile` | `i` | `k(J-E)+aE` coloring, partition whose classes form the family |
//! | `bc_compose` | `i j` | multipartite coloring, four families |
//! | `first`, `second` | | (families only) |
//! | `family` | `c m n` | (families only) |
//!
//! Each node declares its graph and quotient matrix before anything is
//! built; evaluation fails if a built coloring does not match.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::GraphSpec;
use crate::partition::QuotientMatrix;

use super::base::{multipartite_quotient, mds_partition, multipartite, perfect_code_partition};
use super::bc::{bc_routes, build_bc_coloring, SpecPreference, DESK_LIMIT};
use super::data::bc_base_family;
use super::families::{bb_coloring, gamma_mds_coloring, gamma_quotient, three_j, three_j_minus_e};
use super::multifold::multifold_partition;
use super::{
    bc_family_compose, diag_product, extend, log2_exact, merge, merge_first, multiply_coloring, spec, split_coloring,
    tiling_compose, BcFamily, Built,
};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    line: usize,
    name: String,
    args: Vec<u32>,
    children: Vec<Node>,
}

/// A parsed recipe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    root: Node,
}

/// Graph and quotient matrix a node promises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declared {
    pub spec: GraphSpec,
    pub quotient: QuotientMatrix,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Recipe { line, msg: msg.into() }
}

impl Recipe {
    pub fn parse(text: &str) -> Result<Recipe> {
        // (indent, node, indent of its children)
        let mut stack: Vec<(usize, Node, Option<usize>)> = Vec::new();
        let mut root: Option<Node> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim_end();
            let trimmed = body.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if body.starts_with('\t') {
                return Err(err(line, "indent with spaces"));
            }
            let indent = body.len() - trimmed.len();
            let mut words = trimmed.split_whitespace();
            let name = words.next().expect("non-empty").to_string();
            let args = words
                .map(|w| w.parse::<u32>().map_err(|_| err(line, format!("argument `{w}` is not a non-negative integer"))))
                .collect::<Result<Vec<_>>>()?;
            while stack.last().is_some_and(|(ind, _, _)| *ind >= indent) {
                close(&mut stack, &mut root);
            }
            match stack.last_mut() {
                None if root.is_some() => return Err(err(line, "a recipe has a single root")),
                None if indent > 0 => return Err(err(line, "the root must not be indented")),
                Some((_, _, child)) => match child {
                    Some(c) if *c != indent => return Err(err(line, "inconsistent indentation")),
                    _ => *child = Some(indent),
                },
                None => {}
            }
            stack.push((indent, Node { line, name, args, children: Vec::new() }, None));
        }
        while !stack.is_empty() {
            close(&mut stack, &mut root);
        }
        let root = root.ok_or_else(|| err(0, "empty recipe"))?;
        Ok(Recipe { root })
    }

    /// Graph and quotient of the result, computed without building anything.
    pub fn declare(&self) -> Result<Declared> {
        declare(&self.root)
    }

    /// Builds the coloring, checking every node against its declaration.
    pub fn evaluate(&self) -> Result<Built> {
        evaluate(&self.root)
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(n: &Node, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{:width$}{}", "", n.name, width = 2 * depth)?;
            for a in &n.args {
                write!(f, " {a}")?;
            }
            writeln!(f)?;
            n.children.iter().try_for_each(|c| go(c, depth + 1, f))
        }
        go(&self.root, 0, f)
    }
}

impl std::str::FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Recipe> {
        Recipe::parse(s)
    }
}

fn close(stack: &mut Vec<(usize, Node, Option<usize>)>, root: &mut Option<Node>) {
    let (_, node, _) = stack.pop().expect("non-empty");
    match stack.last_mut() {
        Some((_, parent, _)) => parent.children.push(node),
        None => *root = Some(node),
    }
}

fn expect(n: &Node, nargs: usize, nchildren: usize) -> Result<()> {
    if n.args.len() != nargs {
        return Err(err(n.line, format!("`{}` takes {nargs} arguments, got {}", n.name, n.args.len())));
    }
    if n.children.len() != nchildren {
        return Err(err(n.line, format!("`{}` takes {nchildren} children, got {}", n.name, n.children.len())));
    }
    Ok(())
}

fn node_spec(n: &Node, m: u32, nn: u32) -> Result<GraphSpec> {
    spec(m, nn).map_err(|e| err(n.line, e.to_string()))
}

fn leaf_spec(n: &Node, nargs: usize) -> Result<GraphSpec> {
    expect(n, nargs, 0)?;
    node_spec(n, n.args[nargs - 2], n.args[nargs - 1])
}

fn diameter_exp(n: &Node, d: u32) -> Result<u32> {
    log2_exact(d as u64).ok_or_else(|| err(n.line, format!("diameter {d} is not a power of two")))
}

fn grouping(n: &Node, k: usize) -> Result<Vec<Vec<usize>>> {
    if n.args.len() != k {
        return Err(err(n.line, format!("merge lists {} groups for {k} colors", n.args.len())));
    }
    let groups = n.args.iter().max().map_or(0, |&g| g as usize + 1);
    let mut out = vec![Vec::new(); groups];
    for (c, &g) in n.args.iter().enumerate() {
        out[g as usize].push(c);
    }
    if out.iter().any(Vec::is_empty) {
        return Err(err(n.line, "merge groups must be numbered 0, 1, ... without gaps"));
    }
    Ok(out)
}

/// Declared 2-coloring `{j}` against the rest, for every class `j` of a partition.
fn class_family_quotient(n: &Node, q: &QuotientMatrix) -> Result<QuotientMatrix> {
    let k = q.k();
    let mut common = None;
    for j in 0..k {
        let groups = vec![vec![j], (0..k).filter(|&c| c != j).collect()];
        let m = q.merged(&groups).ok_or_else(|| err(n.line, "classes do not give perfect 2-colorings"))?;
        if common.as_ref().is_some_and(|c| *c != m) {
            return Err(err(n.line, "classes give 2-colorings with different quotients"));
        }
        common = Some(m);
    }
    Ok(common.expect("k > 0"))
}

fn tile_quotient(n: &Node, g: &QuotientMatrix, fam: &QuotientMatrix, members: u32, r: u32) -> Result<QuotientMatrix> {
    let (kk, a) = (g.get(0, 1), g.get(0, 0));
    if g.k() < 2 || !g.k().is_power_of_two() || *g != QuotientMatrix::je(g.k(), kk, a) {
        return Err(err(n.line, "tile needs a coloring with quotient k(J-E)+aE and 2^l colors"));
    }
    if members as usize != g.k() {
        return Err(err(n.line, format!("tile needs {} family members, got {members}", g.k())));
    }
    let (a1, b1, c1, d1) = (fam.get(0, 0), fam.get(0, 1), fam.get(1, 0), fam.get(1, 1));
    Ok(QuotientMatrix::two(a1 + a + (r - 1) * kk, b1 + (members - r) * kk, c1 + r * kk, d1 + (members - r - 1) * kk + a))
}

/// `(spec, gamma)` of a family node for `bc_compose` with `2^k` members.
fn declare_family(n: &Node, k: u32) -> Result<(Option<GraphSpec>, u32)> {
    match n.name.as_str() {
        "first" => expect(n, 0, 0).map(|_| (None, 1 << k)),
        "second" => expect(n, 0, 0).map(|_| (None, 0)),
        "family" => {
            let s = leaf_spec(n, 3)?;
            if k != 3 {
                return Err(err(n.line, "stored families have 8 members; use a 3-multipartite coloring"));
            }
            Ok((Some(s), n.args[0]))
        }
        other => Err(err(n.line, format!("`{other}` is not a family (first, second or family c m n)"))),
    }
}

fn declare(n: &Node) -> Result<Declared> {
    let d = |spec: GraphSpec, quotient: QuotientMatrix| Ok(Declared { spec, quotient });
    match n.name.as_str() {
        "mds" => {
            let s = leaf_spec(n, 2)?;
            d(s, QuotientMatrix::je(4, s.diameter(), 0))
        }
        "perfect" => {
            let s = leaf_spec(n, 2)?;
            let l = (1..=16)
                .find(|&l| (4u64.pow(l) - 1) / 3 == s.diameter() as u64)
                .ok_or_else(|| err(n.line, format!("diameter {} is not (4^l-1)/3", s.diameter())))?;
            d(s, QuotientMatrix::je(1 << (2 * l), 1, 0))
        }
        "multipartite" => {
            let s = leaf_spec(n, 3)?;
            let k = n.args[0];
            if s.diameter() != 1 << k.min(31) {
                return Err(err(n.line, format!("{s} does not have diameter 2^{k}")));
            }
            d(s, multipartite_quotient(k))
        }
        "three_j" => {
            let s = leaf_spec(n, 2)?;
            let k = diameter_exp(n, s.diameter())?;
            d(s, QuotientMatrix::j(1 << k, 3))
        }
        "three_j_minus_e" => {
            let s = leaf_spec(n, 2)?;
            let k = diameter_exp(n, s.diameter() + 1)?;
            d(s, QuotientMatrix::je(1 << k, 3, 0))
        }
        "gamma" => {
            let s = leaf_spec(n, 3)?;
            let k = n.args[0];
            if k < 2 || k > 5 || s.diameter() % (1 << k) != 0 {
                return Err(err(n.line, format!("diameter {} is not a multiple of 2^{k}", s.diameter())));
            }
            d(s, gamma_quotient(s, k))
        }
        "multifold" => {
            let s = leaf_spec(n, 2)?;
            if s.diameter() % 4 != 1 {
                return Err(err(n.line, format!("diameter {} is not 1 mod 4", s.diameter())));
            }
            let t = 3 * s.diameter() + 1;
            let alpha = t >> t.trailing_zeros();
            d(s, QuotientMatrix::from_fn(1 << t.trailing_zeros(), |i, j| alpha - (i == j) as u32))
        }
        "bc" => {
            if n.args.len() != 2 && n.args.len() != 4 || !n.children.is_empty() {
                return Err(err(n.line, "`bc` takes `b c` or `b c m n` and no children"));
            }
            let (b, c) = (n.args[0], n.args[1]);
            let s = if n.args.len() == 4 {
                node_spec(n, n.args[2], n.args[3])?
            } else {
                let routes = bc_routes(b, c).map_err(|e| err(n.line, e.to_string()))?;
                routes
                    .iter()
                    .flat_map(|r| r.specs.iter().copied())
                    .find(|s| s.num_vertices() <= DESK_LIMIT)
                    .ok_or_else(|| err(n.line, format!("no ({b},{c}) construction within 4^12 vertices")))?
            };
            let deg = s.degree();
            if b > deg || c > deg {
                return Err(err(n.line, format!("({b},{c}) exceeds the degree of {s}")));
            }
            d(s, QuotientMatrix::two(deg - b, b, c, deg - c))
        }
        "bb" => {
            let s = leaf_spec(n, 3)?;
            let (b, deg) = (n.args[0], s.degree());
            if b > deg {
                return Err(err(n.line, format!("b = {b} exceeds the degree of {s}")));
            }
            d(s, QuotientMatrix::two(deg - b, b, b, deg - b))
        }
        "extend" => {
            expect(n, 2, 1)?;
            let c = declare(&n.children[0])?;
            let (m2, n2) = (n.args[0], n.args[1]);
            d(node_spec(n, c.spec.m() + m2, c.spec.n() + n2)?, c.quotient.add_diagonal(6 * m2 + 3 * n2))
        }
        "multiply" => {
            expect(n, 3, 1)?;
            let c = declare(&n.children[0])?;
            let (k, m2, n2) = (n.args[0], n.args[1], n.args[2]);
            if k == 0 || 2 * m2 + n2 != k * c.spec.n() {
                return Err(err(n.line, format!("need k > 0 and 2*{m2}+{n2} = {k}*{}", c.spec.n())));
            }
            d(node_spec(n, c.spec.m() * k + m2, n2)?, c.quotient.scale(k))
        }
        "split" => {
            expect(n, 1, 1)?;
            let c = declare(&n.children[0])?;
            let cc = n.args[0];
            if cc > 2 * c.spec.n() {
                return Err(err(n.line, format!("c = {cc} exceeds 2n = {}", 2 * c.spec.n())));
            }
            let q = &c.quotient;
            d(
                node_spec(n, 4 * c.spec.m() + cc, 4 * c.spec.n() - 2 * cc)?,
                QuotientMatrix::from_fn(4 * q.k(), |a, b| q.get(a / 4, b / 4)),
            )
        }
        "diag" => {
            if n.children.len() != n.args.len() + 1 {
                return Err(err(n.line, "`diag` takes the outer coloring and one child per block"));
            }
            let g = declare(&n.children[0])?;
            let hs = n.children[1..].iter().map(declare).collect::<Result<Vec<_>>>()?;
            let sizes: Vec<usize> = n.args.iter().map(|&a| a as usize).collect();
            if sizes.iter().sum::<usize>() != g.quotient.k() {
                return Err(err(n.line, "block sizes do not add up to the number of colors"));
            }
            if hs.iter().any(|h| h.spec != hs[0].spec) || hs.iter().zip(&sizes).any(|(h, &s)| h.quotient.k() != s) {
                return Err(err(n.line, "inner colorings must share a graph and match the block sizes"));
            }
            let mut block_of = Vec::new();
            for (p, &kp) in sizes.iter().enumerate() {
                block_of.extend((0..kp).map(|j| (p, j)));
            }
            let q = QuotientMatrix::from_fn(g.quotient.k(), |a, b| {
                let ((pa, ja), (pb, jb)) = (block_of[a], block_of[b]);
                g.quotient.get(a, b) + if pa == pb { hs[pa].quotient.get(ja, jb) } else { 0 }
            });
            d(node_spec(n, g.spec.m() + hs[0].spec.m(), g.spec.n() + hs[0].spec.n())?, q)
        }
        "merge" => {
            if n.children.len() != 1 {
                return Err(err(n.line, "`merge` takes one child"));
            }
            let c = declare(&n.children[0])?;
            let groups = grouping(n, c.quotient.k())?;
            let q = c.quotient.merged(&groups).ok_or_else(|| err(n.line, "merged colors have different rows"))?;
            d(c.spec, q)
        }
        "merge_first" => {
            expect(n, 1, 1)?;
            let c = declare(&n.children[0])?;
            let (r, k) = (n.args[0] as usize, c.quotient.k());
            if r == 0 || r >= k {
                return Err(err(n.line, format!("cannot split {k} colors after {r}")));
            }
            let q = c
                .quotient
                .merged(&[(0..r).collect(), (r..k).collect()])
                .ok_or_else(|| err(n.line, "merged colors have different rows"))?;
            d(c.spec, q)
        }
        "tile" => {
            expect(n, 1, 2)?;
            let g = declare(&n.children[0])?;
            let p = declare(&n.children[1])?;
            let fam = class_family_quotient(n, &p.quotient)?;
            let q = tile_quotient(n, &g.quotient, &fam, p.quotient.k() as u32, 1)?;
            if n.args[0] as usize >= g.quotient.k() {
                return Err(err(n.line, "tile index out of range"));
            }
            d(node_spec(n, g.spec.m() + p.spec.m(), g.spec.n() + p.spec.n())?, q)
        }
        "bc_compose" => {
            expect(n, 2, 5)?;
            let h = declare(&n.children[0])?;
            let k = (h.quotient.k() / 4).trailing_zeros();
            if h.quotient != multipartite_quotient(k) {
                return Err(err(n.line, "the first child must be a multipartite coloring"));
            }
            let fams = n.children[1..].iter().map(|c| declare_family(c, k)).collect::<Result<Vec<_>>>()?;
            let base = fams
                .iter()
                .find_map(|f| f.0)
                .ok_or_else(|| err(n.line, "at least one family must be stored"))?;
            let gsum: u32 = fams.iter().map(|f| f.1).sum();
            let s = node_spec(n, h.spec.m() + base.m(), h.spec.n() + base.n())?;
            let b = (4u32 << k).checked_sub(gsum).ok_or_else(|| err(n.line, "coverages exceed 2^(k+2)"))?;
            let deg = s.degree();
            d(s, QuotientMatrix::two(deg - b, b, gsum, deg - gsum))
        }
        "first" | "second" | "family" => Err(err(n.line, format!("`{}` may only appear under bc_compose", n.name))),
        other => Err(err(n.line, format!("unknown node `{other}`"))),
    }
}

fn family(n: &Node) -> Result<BcFamily> {
    Ok(match n.name.as_str() {
        "first" => BcFamily::AllFirst,
        "second" => BcFamily::AllSecond,
        _ => {
            let s = leaf_spec(n, 3)?;
            let c = n.args[0];
            let deg = s.degree();
            let q = QuotientMatrix::two(deg - (8 - c.min(8)), 8 - c.min(8), c, deg - c);
            let members = bc_base_family(s, c)?
                .into_iter()
                .enumerate()
                .map(|(i, code)| Built::from_fn(format!("family {c} {s} {i}"), s, q.clone(), move |v| !code.contains(v) as usize))
                .collect::<Result<Vec<_>>>()?;
            BcFamily::Members(members)
        }
    })
}

fn evaluate(n: &Node) -> Result<Built> {
    let want = declare(n)?;
    let a = &n.args;
    let sp = |m: u32, nn: u32| node_spec(n, m, nn);
    let child = |i: usize| evaluate(&n.children[i]);
    let out = match n.name.as_str() {
        "mds" => mds_partition(sp(a[0], a[1])?)?,
        "perfect" => perfect_code_partition(sp(a[0], a[1])?)?,
        "multipartite" => multipartite(a[0], sp(a[1], a[2])?)?,
        "three_j" => three_j(sp(a[0], a[1])?)?,
        "three_j_minus_e" => three_j_minus_e(sp(a[0], a[1])?)?,
        "gamma" => gamma_mds_coloring(sp(a[1], a[2])?, a[0])?,
        "multifold" => multifold_partition(sp(a[0], a[1])?)?.parts,
        "bc" => {
            let pref = if a.len() == 4 { SpecPreference::Exact(sp(a[2], a[3])?) } else { SpecPreference::Minimal };
            build_bc_coloring(a[0], a[1], pref)?
        }
        "bb" => bb_coloring(a[0], sp(a[1], a[2])?)?,
        "extend" => extend(&child(0)?, a[0], a[1])?,
        "multiply" => multiply_coloring(&child(0)?, a[0], a[1], a[2])?,
        "split" => split_coloring(&child(0)?, a[0])?,
        "diag" => {
            let g = child(0)?;
            let hs = (1..n.children.len()).map(child).collect::<Result<Vec<_>>>()?;
            let sizes: Vec<usize> = a.iter().map(|&x| x as usize).collect();
            diag_product(&g, &sizes, &hs)?
        }
        "merge" => {
            let c = child(0)?;
            merge(&c, &grouping(n, c.k())?)?
        }
        "merge_first" => merge_first(&child(0)?, a[0] as usize)?,
        "tile" => {
            let g = child(0)?;
            let p = child(1)?;
            let k = p.k();
            let fam = (0..k)
                .map(|j| merge(&p, &[vec![j], (0..k).filter(|&c| c != j).collect()]))
                .collect::<Result<Vec<_>>>()?;
            let mut t = tiling_compose(&g, &fam)?;
            t.outputs.swap_remove(a[0] as usize)
        }
        "bc_compose" => {
            let h = child(0)?;
            let fams = n.children[1..].iter().map(family).collect::<Result<Vec<_>>>()?;
            let fams: [BcFamily; 4] = fams.try_into().expect("four families");
            bc_family_compose(&fams, &h, &[(a[0] as usize, a[1] as usize)])?.remove(0)
        }
        other => return Err(err(n.line, format!("unknown node `{other}`"))),
    };
    if out.spec() != want.spec || out.quotient != want.quotient {
        return Err(err(
            n.line,
            format!("`{}` built [{}] on {}, declared [{}] on {}", n.name, out.quotient, out.spec(), want.quotient, want.spec),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let text = "# comment\ndiag 4\n  mds 1 0\n\n  perfect 0 1\n";
        let r = Recipe::parse(text).unwrap();
        assert_eq!(r.to_string(), "diag 4\n  mds 1 0\n  perfect 0 1\n");
        assert_eq!(Recipe::parse(&r.to_string()).unwrap().to_string(), r.to_string());
    }

    #[test]
    fn declare_matches_evaluate() {
        let r = Recipe::parse("diag 4\n  mds 1 0\n  perfect 0 1\n").unwrap();
        let d = r.declare().unwrap();
        assert_eq!(d.quotient, QuotientMatrix::je(4, 3, 0));
        let b = r.evaluate().unwrap();
        assert_eq!((b.spec(), b.quotient), (d.spec, d.quotient));
    }

    #[test]
    fn errors_carry_lines() {
        let e = Recipe::parse("extend 1 0\n  mds 0 1\n mds 0 1\n").unwrap_err();
        assert!(matches!(e, Error::Recipe { line: 3, .. }), "{e}");
        let e = Recipe::parse("extend 1\n  mds 0 1\n").unwrap().declare().unwrap_err();
        assert!(matches!(e, Error::Recipe { line: 1, .. }));
        let e = Recipe::parse("frobnicate 1\n").unwrap().declare().unwrap_err();
        assert!(e.to_string().contains("unknown node"));
        let e = Recipe::parse("merge 0 0 1 1\n  mds 0 2\n").unwrap().declare().unwrap();
        assert_eq!(e.quotient, QuotientMatrix::two(2, 4, 4, 2));
    }

    #[test]
    fn tiling_recipe() {
        let r = Recipe::parse("tile 1\n  mds 0 1\n  perfect 0 1\n").unwrap();
        assert_eq!(r.declare().unwrap().quotient, QuotientMatrix::two(0, 6, 2, 4));
        assert_eq!(r.evaluate().unwrap().spec(), GraphSpec::new(0, 2).unwrap());
    }
}
