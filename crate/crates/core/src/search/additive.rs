use crate::error::{Error, Result};
use crate::graph::{GraphSpec, SHRIKHANDE_CONNECTING_SET};
use crate::partition::{verify_quotient, Code, Coloring, QuotientMatrix};

/// Abelian groups of order 16 and exponent dividing 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetGroup {
    Z4Z4,
    Z4Z2Z2,
    Z2Z2Z2Z2,
}

impl TargetGroup {
    pub const ALL: [TargetGroup; 3] = [TargetGroup::Z4Z4, TargetGroup::Z4Z2Z2, TargetGroup::Z2Z2Z2Z2];

    fn moduli(self) -> &'static [u8] {
        match self {
            TargetGroup::Z4Z4 => &[4, 4],
            TargetGroup::Z4Z2Z2 => &[4, 2, 2],
            TargetGroup::Z2Z2Z2Z2 => &[2, 2, 2, 2],
        }
    }

    /// Addition table on the mixed-radix encoding `0..16`.
    fn table(self) -> [[u8; 16]; 16] {
        let mods = self.moduli();
        let digits = |mut x: u8| {
            let mut d = [0u8; 4];
            for (i, &q) in mods.iter().enumerate().rev() {
                d[i] = x % q;
                x /= q;
            }
            d
        };
        let mut t = [[0u8; 16]; 16];
        for (x, row) in t.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                let (dx, dy) = (digits(x as u8), digits(y as u8));
                let mut z = 0u8;
                for (i, &q) in mods.iter().enumerate() {
                    z = z * q + (dx[i] + dy[i]) % q;
                }
                *cell = z;
            }
        }
        t
    }
}

impl std::fmt::Display for TargetGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TargetGroup::Z4Z4 => "Z4^2",
            TargetGroup::Z4Z2Z2 => "Z4 x Z2^2",
            TargetGroup::Z2Z2Z2Z2 => "Z2^4",
        };
        f.write_str(s)
    }
}

/// A 1-perfect code that is the kernel of a homomorphism onto a group of
/// order 16; the fibers are its 16 cosets.
#[derive(Clone, Debug)]
pub struct AdditiveCode {
    pub group: TargetGroup,
    /// Per coordinate (Shrikhande first), the image of each symbol (`4a+b` or
    /// `x`).
    pub maps: Vec<Vec<u8>>,
    /// Coset coloring; color 0 is the code.
    pub cosets: Coloring,
}

impl AdditiveCode {
    pub fn code(&self) -> Result<Code> {
        self.cosets.class(0)
    }

    pub fn coset_codes(&self) -> Result<Vec<Code>> {
        (0..16).map(|c| self.cosets.class(c)).collect()
    }
}

fn mul(t: &[[u8; 16]; 16], g: u8, k: u8) -> u8 {
    (0..k).fold(0, |acc, _| t[acc as usize][g as usize])
}

/// Symbol tables and difference images for one coordinate.
struct Candidate {
    map: Vec<u8>,
    images: u16,
}

fn shrikhande_candidates(t: &[[u8; 16]; 16]) -> Vec<Candidate> {
    let mut out = Vec::new();
    for u in 0..16u8 {
        for w in 0..16u8 {
            let img = |a: u8, b: u8| t[mul(t, u, a) as usize][mul(t, w, b) as usize];
            let mut images = 0u16;
            let mut ok = true;
            for &(a, b) in &SHRIKHANDE_CONNECTING_SET {
                let x = img(a, b);
                if x == 0 || images & (1 << x) != 0 {
                    ok = false;
                    break;
                }
                images |= 1 << x;
            }
            if ok {
                let map = (0..16u8).map(|p| img(p >> 2, p & 3)).collect();
                out.push(Candidate { map, images });
            }
        }
    }
    out
}

fn k4_candidates(t: &[[u8; 16]; 16]) -> Vec<Candidate> {
    let mut out = Vec::new();
    let mut push = |map: Vec<u8>| {
        let images: u16 = map[1..].iter().fold(0, |acc, &x| acc | (1 << x));
        if images.count_ones() == 3 && images & 1 == 0 {
            out.push(Candidate { map, images });
        }
    };
    // K4 as the cyclic group Z4
    for g in 0..16u8 {
        push((0..4).map(|x| mul(t, g, x)).collect());
    }
    // K4 as Z2 x Z2, symbol bits (b1, b0)
    for u in 0..16u8 {
        for w in 0..16u8 {
            if t[u as usize][u as usize] == 0 && t[w as usize][w as usize] == 0 {
                push(vec![0, u, w, t[u as usize][w as usize]]);
            }
        }
    }
    out
}

fn search(cands: &[&[Candidate]], used: u16, acc: &mut Vec<usize>) -> bool {
    let i = acc.len();
    if i == cands.len() {
        return used == 0xFFFE;
    }
    for (j, c) in cands[i].iter().enumerate() {
        if used & c.images == 0 {
            acc.push(j);
            if search(cands, used | c.images, acc) {
                return true;
            }
            acc.pop();
        }
    }
    false
}

/// Searches for a homomorphism from the vertex group of a diameter-5 graph onto
/// a group of order 16 that is injective on every radius-1 ball. Its kernel is
/// a 1-perfect code and its fibers partition the vertices into 16 such codes.
pub fn find_additive_perfect_code(spec: GraphSpec) -> Result<AdditiveCode> {
    if spec.degree() != 15 {
        return Err(Error::Precondition(format!("{spec} does not have diameter 5")));
    }
    for group in TargetGroup::ALL {
        let t = group.table();
        let shr = shrikhande_candidates(&t);
        let k4 = k4_candidates(&t);
        let cands: Vec<&[Candidate]> =
            (0..spec.m()).map(|_| &shr[..]).chain((0..spec.n()).map(|_| &k4[..])).collect();
        let mut acc = Vec::new();
        if !search(&cands, 0, &mut acc) {
            continue;
        }
        let maps: Vec<Vec<u8>> = acc.iter().enumerate().map(|(i, &j)| cands[i][j].map.clone()).collect();
        let (m, n) = (spec.m(), spec.n());
        let cosets = Coloring::from_closure(spec, 16, |v| {
            let mut x = 0u8;
            for i in 0..m {
                let p = (v >> (2 * n + 4 * (m - 1 - i))) & 0xF;
                x = t[x as usize][maps[i as usize][p as usize] as usize];
            }
            for j in 0..n {
                let s = (v >> (2 * (n - 1 - j))) & 3;
                x = t[x as usize][maps[(m + j) as usize][s as usize] as usize];
            }
            x as usize
        })?;
        verify_quotient(&cosets, &QuotientMatrix::je(16, 1, 0))?;
        return Ok(AdditiveCode { group, maps, cosets });
    }
    Err(Error::NotFound(format!("no additive 1-perfect code in {spec}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::is_mu_fold_perfect;

    #[test]
    fn group_tables_are_groups() {
        for g in TargetGroup::ALL {
            let t = g.table();
            for x in 0..16 {
                assert_eq!(t[0][x], x as u8);
                let mut row: Vec<u8> = t[x].to_vec();
                row.sort_unstable();
                assert_eq!(row, (0..16).collect::<Vec<u8>>());
                for y in 0..16 {
                    assert_eq!(t[x][y], t[y][x]);
                }
            }
        }
    }

    #[test]
    fn diameter_five_codes() {
        for (m, n) in [(0, 5), (2, 1), (1, 3)] {
            let s = GraphSpec::new(m, n).unwrap();
            let a = find_additive_perfect_code(s).unwrap();
            let codes = a.coset_codes().unwrap();
            assert!(Code::is_partition(&codes));
            for c in &codes {
                assert_eq!(c.len(), 64);
                assert!(is_mu_fold_perfect(c, 1));
            }
        }
    }
}
