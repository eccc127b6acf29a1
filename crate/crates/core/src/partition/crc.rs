use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::GraphSpec;

use super::{check_exhaustive, compute_quotient, Code, Coloring, QuotientMatrix};

/// `[s01, ..., s(rho-1)rho ; s10, ..., s rho(rho-1)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionArray {
    pub up: Vec<u32>,
    pub down: Vec<u32>,
}

impl IntersectionArray {
    pub fn covering_radius(&self) -> usize {
        self.up.len()
    }
}

impl std::fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let up: Vec<String> = self.up.iter().map(|x| x.to_string()).collect();
        let down: Vec<String> = self.down.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}; {}]", up.join(", "), down.join(", "))
    }
}

/// Result of a successful complete-regularity check.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub array: IntersectionArray,
    pub quotient: QuotientMatrix,
}

/// Minimum distance between two distinct codewords, by pairwise scan.
pub fn code_distance(c: &Code) -> Result<u32> {
    if c.len() < 2 {
        return Err(Error::SingletonCode);
    }
    let spec = c.spec();
    let words = c.to_vec();
    let best = (0..words.len())
        .into_par_iter()
        .map(|i| {
            let mut best = u32::MAX;
            for &w in &words[i + 1..] {
                best = best.min(spec.distance_unchecked(words[i], w));
                if best == 1 {
                    break;
                }
            }
            best
        })
        .min()
        .unwrap();
    Ok(best)
}

/// True when no two codewords are at distance below `d`, for `d <= 3`,
/// checked by walking radius-2 neighbourhoods instead of all pairs.
pub fn has_distance_at_least(c: &Code, d: u32) -> Result<bool> {
    if d > 3 {
        return Err(Error::Precondition("local distance check supports d <= 3".into()));
    }
    let g = c.spec().graph();
    let words = c.to_vec();
    Ok(words.par_iter().all(|&x| {
        g.neighbors(x).all(|u| {
            if d >= 2 && c.contains(u) {
                return false;
            }
            d < 3 || g.neighbors(u).all(|w| w == x || !c.contains(w))
        })
    }))
}

/// Multi-source breadth-first distances from the code, as a coloring by
/// distance (color `i` = distance `i`).
pub fn distance_coloring(c: &Code) -> Result<Coloring> {
    let spec = c.spec();
    check_exhaustive(spec, "distance coloring")?;
    let g = spec.graph();
    let n = spec.num_vertices();
    let mut dist: Vec<u16> = (0..n).into_par_iter().map(|v| if c.contains(v) { 0 } else { u16::MAX }).collect();
    let mut level = 0u16;
    loop {
        let next: Vec<u64> = (0..n)
            .into_par_iter()
            .filter(|&v| dist[v as usize] == u16::MAX && g.neighbors(v).any(|u| dist[u as usize] == level))
            .collect();
        if next.is_empty() {
            break;
        }
        level += 1;
        for v in next {
            dist[v as usize] = level;
        }
    }
    if dist.contains(&u16::MAX) {
        return Err(Error::Verification("graph is not connected".into()));
    }
    Coloring::new(spec, level as usize + 1, dist)
}

/// Verifies that the distance coloring of `c` is perfect with tridiagonal
/// quotient and returns the intersection array.
pub fn completely_regular_check(c: &Code) -> Result<RegularityReport> {
    let dc = distance_coloring(c)?;
    let quotient = compute_quotient(&dc).map_err(|e| match e {
        Error::NotEquitable(w) => Error::NotCompletelyRegular(format!(
            "vertex {} at distance {} sees {:?} by distance, the first vertex at that distance sees {:?}",
            w.vertex, w.color, w.observed_row, w.expected_row
        )),
        other => other,
    })?;
    if !quotient.is_tridiagonal() {
        return Err(Error::NotCompletelyRegular(format!("distance quotient [{quotient}] is not tridiagonal")));
    }
    let rho = quotient.k() - 1;
    let array = IntersectionArray {
        up: (0..rho).map(|i| quotient.get(i, i + 1)).collect(),
        down: (1..=rho).map(|i| quotient.get(i, i - 1)).collect(),
    };
    Ok(RegularityReport { array, quotient })
}

#[inline]
fn ball_count(g: &crate::graph::Graph, c: &Code, v: u64) -> u32 {
    u32::from(c.contains(v)) + g.neighbors(v).filter(|&u| c.contains(u)).count() as u32
}

/// Every radius-1 ball contains exactly `mu` codewords.
pub fn is_mu_fold_perfect(c: &Code, mu: u32) -> bool {
    let spec = c.spec();
    let g = spec.graph();
    (0..spec.num_vertices()).into_par_iter().all(|v| ball_count(&g, c, v) == mu)
}

/// Ball counts at the given centres, for codes given by a membership predicate.
/// Returns the first centre whose ball does not hold `mu` members.
pub fn mu_fold_on<F: Fn(u64) -> bool + Sync>(spec: GraphSpec, member: F, mu: u32, centres: &[u64]) -> Option<u64> {
    let g = spec.graph();
    centres
        .par_iter()
        .copied()
        .find_first(|&v| u32::from(member(v)) + g.neighbors(v).filter(|&u| member(u)).count() as u32 != mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: u32, n: u32) -> GraphSpec {
        GraphSpec::new(m, n).unwrap()
    }

    #[test]
    fn adjacent_pair_distance() {
        let c = Code::from_indices(spec(1, 0), [0, 1]).unwrap();
        assert_eq!(code_distance(&c).unwrap(), 1);
        assert!(matches!(code_distance(&Code::from_indices(spec(1, 0), [0]).unwrap()), Err(Error::SingletonCode)));
    }

    #[test]
    fn single_vertex_is_completely_regular() {
        let s = spec(1, 0);
        let r = completely_regular_check(&Code::from_indices(s, [0]).unwrap()).unwrap();
        // Shrikhande graph: srg(16, 6, 2, 2)
        assert_eq!(r.array, IntersectionArray { up: vec![6, 3], down: vec![1, 2] });
        let h = spec(0, 3);
        let r = completely_regular_check(&Code::from_indices(h, [0]).unwrap()).unwrap();
        assert_eq!(r.array, IntersectionArray { up: vec![9, 6, 3], down: vec![1, 2, 3] });
    }

    #[test]
    fn whole_set_and_mds() {
        let s = spec(1, 1);
        let all = Code::from_predicate(s, |_| true).unwrap();
        assert!(is_mu_fold_perfect(&all, 10));
        // a 2-MDS code: label sum zero
        let mds = Code::from_predicate(s, |v| {
            let p = v >> 2;
            crate::gf::shrikhande_label_bits((p >> 2) as u8, (p & 3) as u8) == (v & 3) as u8
        })
        .unwrap();
        assert_eq!(mds.len(), 16);
        let r = completely_regular_check(&mds).unwrap();
        assert_eq!(r.array, IntersectionArray { up: vec![9], down: vec![3] });
        assert_eq!(code_distance(&mds).unwrap(), 2);
        assert!(!is_mu_fold_perfect(&mds, 1) && !is_mu_fold_perfect(&mds, 3));
    }

    #[test]
    fn local_distance_matches_pairwise() {
        let s = spec(1, 1);
        for seed in 0..20u64 {
            let c = Code::from_predicate(s, |v| (v * 2654435761 + seed * 97) % 11 == 0).unwrap();
            if c.len() < 2 {
                continue;
            }
            let d = code_distance(&c).unwrap();
            for t in 1..=3 {
                assert_eq!(has_distance_at_least(&c, t).unwrap(), d >= t, "seed {seed} t {t}");
            }
        }
    }

    #[test]
    fn sampled_ball_counts() {
        let s = spec(0, 1);
        assert_eq!(mu_fold_on(s, |v| v == 0, 1, &[0, 1, 2, 3]), None);
        assert_eq!(mu_fold_on(s, |v| v < 2, 1, &[0, 1]), Some(0));
    }
}
