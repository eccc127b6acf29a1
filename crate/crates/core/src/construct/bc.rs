//! Perfect 2-colorings with prescribed parameters `(b, c)`.

use crate::error::{Error, Result};
use crate::graph::GraphSpec;
use crate::partition::{admissibility, necessary_conditions, QuotientMatrix};

use super::base::{multipartite, perfect_code_partition};
use super::data::bc_base_family;
use super::families::{bb_coloring, je_coloring, je_plus_three_coloring, pair_partition, two_l_ham_coloring};
use super::{bc_family_compose, extend, merge_first, spec, two_lj_four_e_coloring, BcFamily, Built};

/// Largest graph on which [`build_bc_coloring`] builds and verifies.
pub const DESK_LIMIT: u64 = 1 << 24;

/// Which graph [`build_bc_coloring`] should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecPreference {
    /// The smallest graph of the first applicable construction.
    Minimal,
    /// This graph; a smaller construction is extended to it.
    Exact(GraphSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// `(b, b)` by coordinate parities.
    Equal,
    /// `c'` of the `4^l` classes of an `s(J-E)` coloring.
    JeMerge { l: u32, s: u32, first: usize },
    /// `c'` of the `4^l` classes of an `s(J-E)+3E` coloring of `D(m,0)`.
    JePlusThree { l: u32, s: u32, first: usize },
    /// Stored families of 16- or 64-vertex graphs.
    BaseFamily,
    /// Families composed with a 3-multipartite coloring of `H(8,4)`.
    Composed,
    /// `c'` of the `2^(2l-1)` classes of a paired perfect partition.
    Pairs { first: usize },
    /// `c'` of the `2^(2l-1)` classes of a `2(J-E)+4E` coloring of `D(m,0)`.
    TwoLjFourE { l: u32, first: usize },
    /// `c'` of the `2^(2l-1)` classes of an `s(J-E)+aE` coloring of `H(n,4)`.
    TwoLHam { l: u32, s: u32, first: usize },
}

/// A construction for a pair `(b, c)` and the graphs it yields directly.
#[derive(Clone, Debug)]
pub struct BcRoute {
    pub description: String,
    /// Candidate graphs in order of preference; all have the same diameter.
    pub specs: Vec<GraphSpec>,
    /// Quotient on the first candidate graph.
    pub quotient: QuotientMatrix,
    kind: Kind,
    b: u32,
    c: u32,
}

impl BcRoute {
    pub fn diameter(&self) -> u32 {
        self.specs[0].diameter()
    }

    /// Quotient on the candidate graph `s`.
    pub fn quotient_on(&self, s: GraphSpec) -> QuotientMatrix {
        let deg = s.degree();
        QuotientMatrix::two(deg - self.b, self.b, self.c, deg - self.c)
    }

    /// Builds the coloring on candidate `s`.
    pub fn build(&self, s: GraphSpec) -> Result<Built> {
        let name = format!("bc({},{}) {s}", self.b, self.c);
        let out = match self.kind {
            Kind::Equal => bb_coloring(self.b, s)?,
            Kind::JeMerge { l, s: mult, first } => {
                let g = if mult == 1 { perfect_code_partition(s)? } else { je_coloring(l, mult, s)? };
                merge_first(&g, first)?
            }
            Kind::JePlusThree { l, s: mult, first } => merge_first(&je_plus_three_coloring(l, mult, s)?, first)?,
            Kind::BaseFamily => {
                let fam = bc_base_family(s, self.c)?;
                let code = &fam[0];
                Built::from_fn(name.clone(), s, self.quotient_on(s), {
                    let code = code.clone();
                    move |v| (!code.contains(v)) as usize
                })?
            }
            Kind::Composed => composed(self.c, s)?,
            Kind::Pairs { first } => merge_first(&pair_partition(s)?, first)?,
            Kind::TwoLjFourE { l, first } => merge_first(&two_lj_four_e_coloring(l)?, first)?,
            Kind::TwoLHam { l, s: mult, first } => merge_first(&two_l_ham_coloring(l, mult)?, first)?,
        };
        if out.quotient != self.quotient_on(s) || out.spec() != s {
            return Err(Error::Verification(format!(
                "{name}: construction produced [{}] on {}",
                out.quotient,
                out.spec()
            )));
        }
        Ok(out.renamed(name))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All graphs of diameter `d`, Hamming first.
fn all_specs(d: u32) -> Vec<GraphSpec> {
    (0..=d / 2).filter_map(|m| GraphSpec::new(m, d - 2 * m).ok()).collect()
}

/// Graphs `D(m,0)` with `2m = d`.
fn shrikhande_only(d: u32) -> Vec<GraphSpec> {
    if d % 2 == 0 {
        GraphSpec::new(d / 2, 0).ok().into_iter().collect()
    } else {
        Vec::new()
    }
}

/// The constructions that apply to `(b, c)`, smallest diameter first.
pub fn bc_routes(b: u32, c: u32) -> Result<Vec<BcRoute>> {
    let adm = admissibility(b, c);
    if !adm.admissible() {
        return Err(Error::NotAdmissible { b, c, reason: adm.reason });
    }
    let g = gcd(b, c);
    let ratio = (b + c) / g;
    let e = ratio.trailing_zeros();
    let first = (c / g) as usize;
    let mut routes = Vec::new();
    let mut oversize = None;
    let mut push = |description: String, specs: Vec<GraphSpec>, kind: Kind| {
        if specs.is_empty() {
            return;
        }
        if let Some(&s0) = specs.first() {
            let deg = s0.degree();
            routes.push(BcRoute {
                description,
                quotient: QuotientMatrix::two(deg - b, b, c, deg - c),
                specs,
                kind,
                b,
                c,
            });
        }
    };
    if b == c {
        push(format!("parity of coordinate indicators on diameter {}", b / 2), all_specs(b / 2), Kind::Equal);
    }
    if e % 2 == 0 && b != c {
        let l = e / 2;
        let d = (4u32.pow(l) - 1) / 3;
        let desc = if g == 1 {
            format!("union of {c} disjoint 1-perfect codes")
        } else {
            format!("{c}/{g} classes of a {g}(J-E) coloring with {} colors", ratio)
        };
        push(desc, all_specs(g * d), Kind::JeMerge { l, s: g, first });
        if g % 2 == 1 && g >= 3 {
            push(
                format!("{c}/{g} classes of a {g}(J-E)+3E coloring with {ratio} colors"),
                shrikhande_only(g * d + 1),
                Kind::JePlusThree { l, s: g, first },
            );
        }
    }
    if e % 2 == 1 && e >= 3 {
        let l = (e + 1) / 2;
        match g {
            1 => {
                let fixed = |m: u32, n: u32| -> Vec<GraphSpec> { GraphSpec::new(m, n).into_iter().collect() };
                if l == 2 {
                    push("stored base family member".into(), fixed(1, 0), Kind::BaseFamily);
                    push("stored base family member".into(), fixed(0, 3), Kind::BaseFamily);
                } else if l == 3 {
                    push("base families composed with a 3-multipartite coloring".into(), fixed(1, 8), Kind::Composed);
                    push("base families composed with a 3-multipartite coloring".into(), fixed(0, 11), Kind::Composed);
                } else {
                    oversize = Some((b + c - 2) / 3);
                }
            }
            2 => {
                push(format!("{first} classes of a paired 1-perfect partition"), all_specs((4u32.pow(l) - 1) / 3), Kind::Pairs { first });
                push(
                    format!("{first} classes of a 2(J-E)+4E coloring"),
                    shrikhande_only((4u32.pow(l) + 2) / 3),
                    Kind::TwoLjFourE { l, first },
                );
            }
            _ => {
                let a = match g % 3 {
                    0 => 0,
                    2 => 1,
                    _ => 2,
                };
                let n = (g * ((1 << (2 * l - 1)) - 1) + a) / 3;
                push(format!("{first} classes of a {g}(J-E)+{a}E coloring"), GraphSpec::hamming(n).into_iter().collect(), Kind::TwoLHam { l, s: g, first });
            }
        }
    }
    routes.sort_by_key(|r| r.diameter());
    if routes.is_empty() {
        let reason = match oversize {
            Some(d) => format!("the construction needs diameter {d}, beyond the supported maximum"),
            None => "no construction within the supported diameters covers this pair".into(),
        };
        return Err(Error::Precondition(format!("({b},{c}): {reason}")));
    }
    Ok(routes)
}

/// Family `f^(0,0)` of the composition of stored families over `H(8,4)`.
fn composed(c: u32, s: GraphSpec) -> Result<Built> {
    let base = spec(s.m(), s.n() - 8)?;
    if base.diameter() != 2 && base.diameter() != 3 {
        return Err(Error::UnsupportedSpec { spec: s, reason: "needs H(8,4) times D(1,0) or H(3,4)".into() });
    }
    let x = c % 8;
    let mut gammas: Vec<u32> = match x {
        1 => vec![6, 3],
        7 => vec![4, 3],
        _ => vec![x],
    };
    let rest = c - gammas.iter().sum::<u32>();
    gammas.extend(std::iter::repeat(8).take((rest / 8) as usize));
    gammas.resize(4, 0);
    let families: Vec<BcFamily> = gammas
        .iter()
        .map(|&gm| -> Result<BcFamily> {
            Ok(match gm {
                0 => BcFamily::AllSecond,
                8 => BcFamily::AllFirst,
                _ => {
                    let q = {
                        let d = base.degree();
                        QuotientMatrix::two(d - (8 - gm), 8 - gm, gm, d - gm)
                    };
                    let codes = bc_base_family(base, gm)?;
                    let members = codes
                        .into_iter()
                        .enumerate()
                        .map(|(i, code)| {
                            Built::from_fn(format!("base {gm} {i}"), base, q.clone(), move |v| !code.contains(v) as usize)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    BcFamily::Members(members)
                }
            })
        })
        .collect::<Result<_>>()?;
    let families: [BcFamily; 4] = families.try_into().expect("four families");
    let h = multipartite(3, GraphSpec::hamming(8)?)?;
    let mut out = bc_family_compose(&families, &h, &[(0, 0)])?;
    Ok(out.remove(0))
}

fn desk_exceeded(s: GraphSpec, what: &str) -> Error {
    Error::DeskScaleExceeded {
        spec: s,
        vertices: s.num_vertices(),
        hint: format!("{what} would be built on {s}; the largest supported graph has 4^12 vertices"),
    }
}

/// A perfect `(b, c)`-coloring, built and verified.
pub fn build_bc_coloring(b: u32, c: u32, pref: SpecPreference) -> Result<Built> {
    let routes = bc_routes(b, c)?;
    if let SpecPreference::Exact(target) = pref {
        let nec = necessary_conditions(b, c, target);
        if !nec.passed() {
            let reason = nec.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
            return Err(Error::Precondition(format!("({b},{c}) on {target}: {reason}")));
        }
        if target.num_vertices() > DESK_LIMIT {
            return Err(desk_exceeded(target, &format!("the ({b},{c})-coloring")));
        }
    }
    let mut last = None;
    for route in &routes {
        for &s in &route.specs {
            let (m2, n2) = match pref {
                SpecPreference::Minimal => (0, 0),
                SpecPreference::Exact(t) => match (t.m().checked_sub(s.m()), t.n().checked_sub(s.n())) {
                    (Some(m2), Some(n2)) => (m2, n2),
                    _ => continue,
                },
            };
            if s.num_vertices() > DESK_LIMIT {
                last = Some(desk_exceeded(s, &route.description));
                continue;
            }
            match route.build(s).and_then(|g| extend(&g, m2, n2)) {
                Ok(g) => {
                    let name = g.name.clone();
                    return Ok(g.renamed(format!("{name} via {}", route.description)));
                }
                Err(e @ Error::UnsupportedSpec { .. }) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
    }
    Err(last.unwrap_or_else(|| match pref {
        SpecPreference::Exact(t) => {
            Error::UnsupportedSpec { spec: t, reason: format!("no known construction of a ({b},{c})-coloring fits") }
        }
        SpecPreference::Minimal => Error::NotAdmissible { b, c, reason: "no construction applies".into() },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(m: u32, n: u32) -> GraphSpec {
        GraphSpec::new(m, n).unwrap()
    }

    #[test]
    fn small_pairs() {
        let g = build_bc_coloring(3, 1, SpecPreference::Minimal).unwrap();
        assert_eq!(g.spec(), sp(0, 1));
        assert_eq!(g.quotient, QuotientMatrix::two(0, 3, 1, 2));
        let g = build_bc_coloring(6, 2, SpecPreference::Minimal).unwrap();
        assert_eq!(g.spec().diameter(), 2);
        assert_eq!(g.quotient.bc(), Some((6, 2)));
        let g = build_bc_coloring(5, 3, SpecPreference::Minimal).unwrap();
        assert_eq!(g.spec(), sp(1, 0));
        let g = build_bc_coloring(2, 2, SpecPreference::Exact(sp(1, 1))).unwrap();
        assert_eq!(g.quotient, QuotientMatrix::two(7, 2, 2, 7));
    }

    #[test]
    fn rejects_inadmissible() {
        assert!(matches!(build_bc_coloring(7, 1, SpecPreference::Minimal), Err(Error::NotAdmissible { .. })));
        assert!(matches!(build_bc_coloring(3, 2, SpecPreference::Minimal), Err(Error::NotAdmissible { .. })));
    }
}
