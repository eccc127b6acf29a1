//! Arithmetic in `GF(2^k)` for `1 <= k <= 16`, and the labelling maps used by
//! the constructions.
//!
//! Elements are polynomials over `GF(2)` stored as bit patterns; bit `i` is the
//! coefficient of `x^i`. Multiplication reduces modulo a fixed primitive
//! polynomial per degree, so `alpha = x` generates the multiplicative group.
//!
//! The quaternary alphabet `Z4` is identified with `GF(4)` by bit pattern:
//! `0 <-> 0`, `1 <-> 1`, `2 <-> alpha`, `3 <-> alpha^2 = alpha + 1`. The same
//! patterns embed `Z4` as the subset `Q = {0, 1, x, x + 1}` of every larger
//! field.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 16;

/// Primitive polynomials indexed by degree, including the leading term.
const PRIMITIVE: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// An element of `GF(2^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    k: u32,
    bits: u32,
}

impl FieldElem {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return write!(f, "0");
        }
        let terms: Vec<String> = (0..self.k)
            .rev()
            .filter(|i| self.bits >> i & 1 == 1)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// `GF(2^k)` with exp/log tables.
#[derive(Debug)]
pub struct Field {
    k: u32,
    poly: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    pub fn new(k: u32) -> Result<Field> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::UnsupportedField(k));
        }
        let poly = PRIMITIVE[k as usize];
        let order = (1u32 << k) - 1;
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![u32::MAX; 1 << k];
        let mut v = 1u32;
        for i in 0..order {
            exp[i as usize] = v;
            log[v as usize] = i;
            v = mul_poly(v, 2, poly, k);
        }
        for i in order..2 * order {
            exp[i as usize] = exp[(i - order) as usize];
        }
        Ok(Field { k, poly, exp, log })
    }

    /// Shared instance for degree `k`.
    pub fn get(k: u32) -> Result<&'static Field> {
        static FIELDS: [OnceLock<Field>; 17] = [const { OnceLock::new() }; 17];
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::UnsupportedField(k));
        }
        Ok(FIELDS[k as usize].get_or_init(|| Field::new(k).expect("degree checked")))
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        1 << self.k
    }

    /// The reduction polynomial, leading term included.
    pub fn modulus(&self) -> u32 {
        self.poly
    }

    pub fn elem(&self, bits: u32) -> Result<FieldElem> {
        if bits >= self.size() {
            return Err(Error::Precondition(format!("{bits:#x} is not an element of GF(2^{})", self.k)));
        }
        Ok(FieldElem { k: self.k, bits })
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { k: self.k, bits: 0 }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem { k: self.k, bits: 1 }
    }

    /// The residue of `x`; for `k = 1` this is `1`.
    pub fn alpha(&self) -> FieldElem {
        FieldElem { k: self.k, bits: self.exp[1 % self.exp.len().max(1)] }
    }

    /// `alpha^e`, exponent taken modulo `2^k - 1`.
    pub fn alpha_pow(&self, e: u64) -> FieldElem {
        let order = (self.size() - 1) as u64;
        FieldElem { k: self.k, bits: self.exp[(e % order) as usize] }
    }

    fn check(&self, a: FieldElem) -> Result<()> {
        if a.k != self.k {
            Err(Error::FieldMismatch(self.k, a.k))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElem { k: self.k, bits: a.bits ^ b.bits })
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElem { k: self.k, bits: self.mul_bits(a.bits, b.bits) })
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> Result<FieldElem> {
        self.check(a)?;
        if e == 0 {
            return Ok(self.one());
        }
        if a.bits == 0 {
            return Ok(self.zero());
        }
        let order = (self.size() - 1) as u64;
        let l = self.log[a.bits as usize] as u64;
        Ok(FieldElem { k: self.k, bits: self.exp[((l * (e % order)) % order) as usize] })
    }

    /// Discrete logarithm base `alpha`; `None` for zero.
    pub fn log(&self, a: FieldElem) -> Result<Option<u32>> {
        self.check(a)?;
        Ok(self.log_bits(a.bits))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElem) -> Result<u32> {
        self.check(a)?;
        if a.bits == 0 {
            return Err(Error::Precondition("zero has no multiplicative order".into()));
        }
        let mut v = a.bits;
        let mut n = 1;
        while v != 1 {
            v = self.mul_bits(v, a.bits);
            n += 1;
        }
        Ok(n)
    }

    #[inline]
    pub(crate) fn mul_bits(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    pub(crate) fn log_bits(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize])
        }
    }
}

/// Carry-less multiplication followed by reduction.
fn mul_poly(a: u32, b: u32, poly: u32, k: u32) -> u32 {
    let mut acc = 0u64;
    for i in 0..32 {
        if b >> i & 1 == 1 {
            acc ^= (a as u64) << i;
        }
    }
    for d in (k..64).rev() {
        if acc >> d & 1 == 1 {
            acc ^= (poly as u64) << (d - k);
        }
    }
    acc as u32
}

/// Label of a Shrikhande coordinate `(a, b)`: `(a mod 2) alpha + (b mod 2)`.
/// Returned as a `GF(4)` bit pattern.
#[inline]
pub fn shrikhande_label_bits(a: u8, b: u8) -> u8 {
    ((a & 1) << 1) | (b & 1)
}

pub fn shrikhande_label(a: u8, b: u8) -> FieldElem {
    FieldElem { k: 2, bits: shrikhande_label_bits(a, b) as u32 }
}

/// `Z4 -> GF(4)` by bit pattern.
pub fn z4_to_gf4(x: u8) -> Result<FieldElem> {
    if x > 3 {
        return Err(Error::Precondition(format!("{x} is not in Z4")));
    }
    Ok(FieldElem { k: 2, bits: x as u32 })
}

/// `Z4 -> Q` inside `GF(2^k)`, `k >= 2`.
pub fn z4_to_q(field: &Field, x: u8) -> Result<FieldElem> {
    if field.k < 2 {
        return Err(Error::UnsupportedField(field.k));
    }
    if x > 3 {
        return Err(Error::Precondition(format!("{x} is not in Z4")));
    }
    Ok(FieldElem { k: field.k, bits: x as u32 })
}

/// `Q -> Z4`; `None` outside `Q`.
pub fn q_to_z4(a: FieldElem) -> Option<u8> {
    (a.bits < 4 && a.k >= 2).then_some(a.bits as u8)
}

/// Checks that the Shrikhande label is additive over all 256 pairs.
pub fn label_additivity_check() -> bool {
    (0..16u8).all(|p| {
        (0..16u8).all(|q| {
            let (a1, b1, a2, b2) = (p >> 2, p & 3, q >> 2, q & 3);
            let sum = shrikhande_label_bits((a1 + a2) % 4, (b1 + b2) % 4);
            sum == shrikhande_label_bits(a1, b1) ^ shrikhande_label_bits(a2, b2)
        })
    })
}

/// Label of every digit pair of a packed Shrikhande part, XOR-summed.
#[inline]
pub(crate) fn packed_shrikhande_label_sum(shr: u64, m: u32) -> u8 {
    let mut acc = 0u8;
    for i in 0..m {
        let p = (shr >> (4 * i)) & 0xF;
        acc ^= shrikhande_label_bits((p >> 2) as u8, (p & 3) as u8);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_examples() {
        let f = Field::get(2).unwrap();
        let a = f.alpha();
        assert_eq!(f.mul(a, a).unwrap(), f.add(a, f.one()).unwrap());
        for x in 0..4 {
            let e = f.elem(x).unwrap();
            assert!(f.add(e, e).unwrap().is_zero());
        }
    }

    #[test]
    fn gf8_cube_matches_long_division() {
        let f = Field::get(3).unwrap();
        assert_eq!(f.modulus(), 0b1011);
        let x = f.alpha();
        let x3 = f.mul(f.mul(x, x).unwrap(), x).unwrap();
        // x^3 = q(x)(x^3+x+1) + r(x) with r = x + 1
        assert_eq!(x3.bits(), 0b011);
    }

    #[test]
    fn mismatched_degrees_error() {
        let f2 = Field::get(2).unwrap();
        let f3 = Field::get(3).unwrap();
        assert!(matches!(f2.add(f2.one(), f3.one()), Err(Error::FieldMismatch(2, 3))));
        assert!(f3.mul(f2.one(), f3.one()).is_err());
        assert!(Field::get(17).is_err());
    }

    #[test]
    fn alpha_is_primitive() {
        for k in 1..=MAX_DEGREE {
            let f = Field::get(k).unwrap();
            if k <= 8 {
                assert_eq!(f.order(f.alpha()).unwrap(), (1 << k) - 1, "k={k}");
            }
            // the exp table visits every nonzero element exactly once
            let mut seen = vec![false; 1 << k];
            for i in 0..(1u64 << k) - 1 {
                let v = f.alpha_pow(i).bits() as usize;
                assert!(!seen[v]);
                seen[v] = true;
            }
            assert!(!seen[0]);
        }
    }

    #[test]
    fn mul_matches_schoolbook() {
        for k in [2, 3, 4, 5, 8] {
            let f = Field::get(k).unwrap();
            for a in 0..f.size().min(64) {
                for b in 0..f.size().min(64) {
                    assert_eq!(f.mul_bits(a, b), mul_poly(a, b, f.modulus(), k));
                }
            }
        }
    }

    #[test]
    fn pow_and_log() {
        let f = Field::get(4).unwrap();
        let a = f.alpha();
        assert_eq!(f.pow(a, 15).unwrap(), f.one());
        assert_eq!(f.pow(a, 4).unwrap().bits(), 0b0011);
        assert_eq!(f.log(f.alpha_pow(7)).unwrap(), Some(7));
        assert_eq!(f.log(f.zero()).unwrap(), None);
        assert_eq!(f.pow(f.zero(), 0).unwrap(), f.one());
    }

    #[test]
    fn shrikhande_label_examples() {
        let f = Field::get(2).unwrap();
        let a = f.alpha();
        assert!(shrikhande_label(2, 0).is_zero());
        assert_eq!(shrikhande_label(1, 0), a);
        assert_eq!(shrikhande_label(3, 3), f.mul(a, a).unwrap());
        assert!(label_additivity_check());
        assert_eq!(
            f.add(shrikhande_label(1, 1), shrikhande_label(1, 1)).unwrap(),
            shrikhande_label(2, 2)
        );
        assert_eq!(f.add(shrikhande_label(0, 1), shrikhande_label(1, 0)).unwrap(), shrikhande_label(1, 1));
    }

    #[test]
    fn label_classes_match_lemma_sets() {
        let classes: [&[(u8, u8)]; 4] = [
            &[(0, 0), (0, 2), (2, 0), (2, 2)],
            &[(0, 1), (0, 3), (2, 1), (2, 3)],
            &[(1, 0), (1, 2), (3, 0), (3, 2)],
            &[(1, 1), (1, 3), (3, 1), (3, 3)],
        ];
        for (bits, class) in classes.iter().enumerate() {
            for &(a, b) in *class {
                assert_eq!(shrikhande_label_bits(a, b) as usize, bits);
            }
        }
        for &(a, b) in &crate::graph::SHRIKHANDE_CONNECTING_SET {
            assert_ne!(shrikhande_label_bits(a, b), 0);
        }
    }

    #[test]
    fn q_subset() {
        let f = Field::get(5).unwrap();
        for x in 0..4u8 {
            for y in 0..4u8 {
                let s = f.add(z4_to_q(f, x).unwrap(), z4_to_q(f, y).unwrap()).unwrap();
                assert!(q_to_z4(s).is_some());
            }
            assert_eq!(q_to_z4(z4_to_q(f, x).unwrap()), Some(x));
        }
        assert_eq!(q_to_z4(f.elem(4).unwrap()), None);
        assert_eq!(z4_to_gf4(2).unwrap(), Field::get(2).unwrap().alpha());
    }
}
