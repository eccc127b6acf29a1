use std::fmt;

use crate::graph::GraphSpec;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn log2_exact(x: u32) -> Option<u32> {
    x.is_power_of_two().then(|| x.trailing_zeros())
}

/// `Some(l)` when `x = 4^l - 1`, `l >= 1`.
fn four_power_minus_one(x: u32) -> Option<u32> {
    log2_exact(x + 1).filter(|e| *e >= 2 && e % 2 == 0).map(|e| e / 2)
}

/// A violated necessary condition for a perfect `(b, c)`-coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `(b + c) / gcd(b, c)` is not a power of two.
    SizeRatio { ratio_num: u32, gcd: u32 },
    /// `b + c` is not `4i` with `1 <= i <= 2m + n`.
    Lloyd { sum: u32, max: u32 },
    /// One side is 1 but the other is not `4^l - 1`.
    OneSidedForm { other: u32 },
    /// One side is 1 and there are no `K4` coordinates.
    OneSidedNeedsK4,
    /// One side is 1 and the other is not divisible by 3 (by 6 when `n = 0`).
    CycleDivisibility { other: u32, modulus: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SizeRatio { ratio_num, gcd } => {
                write!(f, "(b+c)/gcd(b,c) = {ratio_num}/{gcd} is not a power of 2")
            }
            Violation::Lloyd { sum, max } => write!(f, "b+c = {sum} is not 4i with 1 <= i <= {max}"),
            Violation::OneSidedForm { other } => write!(f, "the side opposite 1 is {other}, not 4^l-1"),
            Violation::OneSidedNeedsK4 => write!(f, "a side equal to 1 needs n != 0"),
            Violation::CycleDivisibility { other, modulus } => {
                write!(f, "the side opposite 1 is {other}, not divisible by {modulus}")
            }
        }
    }
}

/// Outcome of [`necessary_conditions`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessaryReport {
    pub violations: Vec<Violation>,
    /// Remarks about conditions whose published wording differs from the
    /// form implemented here.
    pub notes: Vec<String>,
}

impl NecessaryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Necessary conditions for a perfect `(b, c)`-coloring of `spec`.
pub fn necessary_conditions(b: u32, c: u32, spec: GraphSpec) -> NecessaryReport {
    let mut violations = Vec::new();
    let mut notes = Vec::new();
    let g = gcd(b, c);
    if b == 0 || c == 0 {
        violations.push(Violation::SizeRatio { ratio_num: b + c, gcd: g });
        return NecessaryReport { violations, notes };
    }
    if log2_exact((b + c) / g).is_none_or(|e| e == 0) {
        violations.push(Violation::SizeRatio { ratio_num: b + c, gcd: g });
    }
    let d = spec.diameter();
    if (b + c) % 4 != 0 || (b + c) / 4 > d {
        violations.push(Violation::Lloyd { sum: b + c, max: d });
    }
    if b == 1 || c == 1 {
        let other = if c == 1 { b } else { c };
        if four_power_minus_one(other).is_none() {
            violations.push(Violation::OneSidedForm { other });
        }
        if spec.n() == 0 {
            violations.push(Violation::OneSidedNeedsK4);
        }
        let modulus = if spec.n() == 0 { 6 } else { 3 };
        if other % modulus != 0 {
            violations.push(Violation::CycleDivisibility { other, modulus });
        }
        notes.push(
            "the divisibility condition is checked as 3 | b (6 | b when n = 0), following its proof; \
             the statement's wording \"b+1 divides by 3\" contradicts b = 4^l - 1"
                .into(),
        );
    }
    NecessaryReport { violations, notes }
}

/// Classification of a pair `(b, c)` by existence for large diameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub b: u32,
    pub c: u32,
    /// Perfect `(b, c)`-colorings exist in `H(n, 4)` for all large `n`.
    pub infinity: bool,
    /// Smallest `a` in `{0, 1, 8}` for which existence in all large `D(m, n)`
    /// with `n >= a` is guaranteed.
    pub a: Option<u32>,
    /// Theorem items that apply, numbered as in the classification.
    pub items: Vec<u32>,
    pub reason: String,
}

impl Admissibility {
    pub fn admissible(&self) -> bool {
        self.infinity
    }
}

/// Classifies `(b, c)`, `b, c >= 1`.
pub fn admissibility(b: u32, c: u32) -> Admissibility {
    let mut out = Admissibility { b, c, infinity: false, a: None, items: vec![], reason: String::new() };
    if b == 0 || c == 0 {
        out.reason = "b and c must be positive".into();
        return out;
    }
    if b == 1 || c == 1 {
        let other = if c == 1 { b } else { c };
        if let Some(l) = four_power_minus_one(other) {
            out.infinity = true;
            out.a = Some(1);
            out.items = vec![1, 3];
            out.reason = format!("one side is 1 and the other is 4^{l}-1");
        } else {
            out.items = vec![1, 3];
            out.reason = format!("one side is 1 and the other ({other}) is not 4^l-1");
        }
        return out;
    }
    let g = gcd(b, c);
    let ratio = (b + c) / g;
    let Some(e) = log2_exact(ratio).filter(|e| *e >= 1) else {
        out.items = vec![2];
        out.reason = format!("(b+c)/gcd(b,c) = {ratio} is not a power of 2");
        return out;
    };
    if (b + c) % 4 != 0 {
        out.reason = format!("b+c = {} is not divisible by 4, so no diameter meets the eigenvalue condition", b + c);
        return out;
    }
    out.infinity = true;
    out.items.push(2);
    if g >= 2 {
        out.a = Some(0);
        out.items.push(4);
        out.reason = format!("gcd(b,c) = {g} >= 2 and (b+c)/gcd = 2^{e}");
    } else if e % 2 == 0 {
        out.a = Some(1);
        out.items.push(5);
        out.reason = format!("gcd(b,c) = 1 and b+c = 4^{}", e / 2);
    } else {
        out.a = Some(8);
        out.items.push(6);
        out.reason = format!("gcd(b,c) = 1 and b+c = 2^{e}, an odd power of 2");
    }
    out
}

/// Parameters of multifold 1-perfect codes: `6m+3n+1 = alpha 2^k`, `mu = alpha l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultifoldDecomposition {
    pub alpha: u32,
    pub k: u32,
    pub l: u32,
}

/// Whether a `mu`-fold 1-perfect code exists in `spec`, with the decomposition.
pub fn multifold_exists(spec: GraphSpec, mu: u32) -> Option<MultifoldDecomposition> {
    if mu == 0 || spec.diameter() % 4 != 1 {
        return None;
    }
    let t = spec.degree() + 1;
    let k = t.trailing_zeros();
    let alpha = t >> k;
    (mu % alpha == 0 && mu / alpha >= 1 && mu / alpha <= 1 << k).then_some(MultifoldDecomposition {
        alpha,
        k,
        l: mu / alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: u32, n: u32) -> GraphSpec {
        GraphSpec::new(m, n).unwrap()
    }

    #[test]
    fn necessary_examples() {
        assert!(necessary_conditions(3, 1, spec(0, 1)).passed());
        let r = necessary_conditions(3, 1, spec(2, 0));
        assert!(r.violations.contains(&Violation::OneSidedNeedsK4));
        assert!(necessary_conditions(5, 3, spec(1, 0)).passed());
        assert!(!necessary_conditions(5, 3, spec(0, 1)).passed());
        assert!(!necessary_conditions(5, 2, spec(4, 4)).passed());
        assert!(!necessary_conditions(7, 1, spec(1, 1)).passed());
        assert!(necessary_conditions(1, 3, spec(0, 1)).passed());
    }

    #[test]
    fn admissibility_examples() {
        let a = admissibility(15, 1);
        assert!(a.infinity && a.a == Some(1) && a.items == vec![1, 3]);
        let a = admissibility(6, 2);
        assert!(a.infinity && a.a == Some(0));
        let a = admissibility(29, 3);
        assert!(a.infinity && a.a == Some(8) && a.items.contains(&6));
        assert!(!admissibility(5, 2).infinity);
        assert!(!admissibility(7, 1).infinity);
        assert!(!admissibility(3, 3).infinity);
        assert_eq!(admissibility(2, 2).a, Some(0));
        assert_eq!(admissibility(5, 3).a, Some(8));
        assert_eq!(admissibility(13, 3).a, Some(1));
    }

    #[test]
    fn multifold_examples() {
        assert_eq!(multifold_exists(spec(0, 1), 1), Some(MultifoldDecomposition { alpha: 1, k: 2, l: 1 }));
        assert_eq!(multifold_exists(spec(4, 1), 7), Some(MultifoldDecomposition { alpha: 7, k: 2, l: 1 }));
        assert_eq!(multifold_exists(spec(4, 1), 28), Some(MultifoldDecomposition { alpha: 7, k: 2, l: 4 }));
        assert_eq!(multifold_exists(spec(4, 1), 35), None);
        assert_eq!(multifold_exists(spec(4, 1), 3), None);
        for mu in 1..10 {
            assert_eq!(multifold_exists(spec(1, 0), mu), None);
        }
    }
}
