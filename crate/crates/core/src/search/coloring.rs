use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{z4_add, GraphSpec};
use crate::partition::{verify_quotient, Code, Coloring, QuotientMatrix};

use super::{check_search_size, exact_cover, Budget, ExactCoverInstance, SearchBudget};

/// Side constraints for [`find_perfect_coloring`].
#[derive(Clone, Debug)]
pub struct ColoringConstraints {
    /// `(vertex, 0-based color)` pairs.
    pub fixed: Vec<(u64, usize)>,
    /// The coloring must be invariant under the translations these generate.
    pub translations: Vec<u64>,
    /// Give vertex 0 color 0 unless it is fixed otherwise.
    pub pin_origin: bool,
}

impl Default for ColoringConstraints {
    fn default() -> Self {
        ColoringConstraints { fixed: Vec::new(), translations: Vec::new(), pin_origin: true }
    }
}

/// Orbits of a translation subgroup and the neighbour multiset between them.
struct OrbitGraph {
    orbit_of: Vec<u32>,
    reps: Vec<u64>,
    nb: Vec<Vec<u32>>,
    rev: Vec<Vec<u32>>,
}

impl OrbitGraph {
    fn new(spec: GraphSpec, gens: &[u64]) -> Result<OrbitGraph> {
        let nv = spec.num_vertices();
        for &g in gens {
            spec.check_index(g)?;
        }
        let mut sub = BTreeSet::from([0u64]);
        let mut frontier = vec![0u64];
        while let Some(h) = frontier.pop() {
            for &g in gens {
                let y = z4_add(h, g);
                if sub.insert(y) {
                    frontier.push(y);
                }
            }
        }
        let sub: Vec<u64> = sub.into_iter().collect();
        let mut orbit_of = vec![u32::MAX; nv as usize];
        let mut reps = Vec::new();
        for v in 0..nv {
            if orbit_of[v as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            for &t in &sub {
                orbit_of[z4_add(v, t) as usize] = id;
            }
            reps.push(v);
        }
        let g = spec.graph();
        let nb: Vec<Vec<u32>> =
            reps.iter().map(|&r| g.neighbors(r).map(|u| orbit_of[u as usize]).collect()).collect();
        let mut rev = vec![Vec::new(); reps.len()];
        for (i, row) in nb.iter().enumerate() {
            for &j in row {
                rev[j as usize].push(i as u32);
            }
        }
        Ok(OrbitGraph { orbit_of, reps, nb, rev })
    }

    /// Breadth-first order from the orbit of vertex 0.
    fn order(&self) -> Vec<u32> {
        let mut seen = vec![false; self.reps.len()];
        let mut out = Vec::with_capacity(self.reps.len());
        for start in 0..self.reps.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut q = VecDeque::from([start as u32]);
            while let Some(x) = q.pop_front() {
                out.push(x);
                for &y in &self.nb[x as usize] {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        q.push_back(y);
                    }
                }
            }
        }
        out
    }
}

const UNSET: u16 = u16::MAX;

/// Enumerates perfect colorings with quotient `s` by backtracking over
/// translation orbits, calling `found` for each; `found` returns `false` to stop.
fn enumerate(
    spec: GraphSpec,
    s: &QuotientMatrix,
    cons: &ColoringConstraints,
    budget: &SearchBudget,
    mut found: impl FnMut(Coloring) -> Result<bool>,
) -> Result<()> {
    check_search_size(spec)?;
    let k = s.k();
    if s.row_sum() != Some(spec.degree()) {
        return Err(Error::Precondition(format!("rows of [{s}] do not sum to {}", spec.degree())));
    }
    let og = OrbitGraph::new(spec, &cons.translations)?;
    let no = og.reps.len();
    let order = og.order();
    let mut allowed: Vec<Option<u16>> = vec![None; no];
    let mut fixed = cons.fixed.clone();
    if cons.pin_origin && !fixed.iter().any(|&(v, _)| og.orbit_of[v as usize] == og.orbit_of[0]) {
        fixed.push((0, 0));
    }
    for &(v, c) in &fixed {
        spec.check_index(v)?;
        if c >= k {
            return Err(Error::Precondition(format!("fixed color {} exceeds {k}", c + 1)));
        }
        let o = og.orbit_of[v as usize] as usize;
        match allowed[o] {
            Some(prev) if prev as usize != c => return Err(Error::Unsatisfiable),
            _ => allowed[o] = Some(c as u16),
        }
    }
    let mut palette: Vec<u16> = (0..k as u16).collect();
    if budget.seed != 0 {
        palette.shuffle(&mut ChaCha8Rng::seed_from_u64(budget.seed));
    }
    let mut col = vec![UNSET; no];
    let mut cnt = vec![0u32; no * k];
    let mut next = vec![0usize; no + 1];
    let mut b: Budget = budget.start();
    let mut p = 0usize;

    let unassign = |col: &mut [u16], cnt: &mut [u32], j: usize| {
        let d = col[j] as usize;
        for &i in &og.rev[j] {
            cnt[i as usize * k + d] -= 1;
        }
        col[j] = UNSET;
    };

    loop {
        if p == no {
            let mut used = vec![false; k];
            for &c in &col {
                used[c as usize] = true;
            }
            if used.iter().all(|&u| u) {
                let colors: Vec<u16> = (0..spec.num_vertices()).map(|v| col[og.orbit_of[v as usize] as usize]).collect();
                let c = Coloring::new(spec, k, colors)?;
                verify_quotient(&c, s)?;
                if !found(c)? {
                    return Ok(());
                }
            }
            if p == 0 {
                return Ok(());
            }
            p -= 1;
            continue;
        }
        let j = order[p] as usize;
        if col[j] != UNSET {
            unassign(&mut col, &mut cnt, j);
        }
        let cands: &[u16] = match &allowed[j] {
            Some(c) => std::slice::from_ref(c),
            None => &palette,
        };
        let mut placed = false;
        while next[p] < cands.len() {
            let d = cands[next[p]];
            next[p] += 1;
            b.tick()?;
            let du = d as usize;
            // own row so far
            if (0..k).any(|e| cnt[j * k + e] > s.get(du, e)) {
                continue;
            }
            col[j] = d;
            let mut ok = true;
            for &i in &og.rev[j] {
                let i = i as usize;
                cnt[i * k + du] += 1;
                if col[i] != UNSET && cnt[i * k + du] > s.get(col[i] as usize, du) {
                    ok = false;
                }
            }
            if ok {
                placed = true;
                break;
            }
            unassign(&mut col, &mut cnt, j);
        }
        if placed {
            p += 1;
            next[p] = 0;
        } else {
            next[p] = 0;
            if p == 0 {
                return Ok(());
            }
            p -= 1;
        }
    }
}

/// A perfect coloring with quotient `s`, found by backtracking.
pub fn find_perfect_coloring(
    spec: GraphSpec,
    s: &QuotientMatrix,
    cons: &ColoringConstraints,
    budget: &SearchBudget,
) -> Result<Coloring> {
    let mut out = None;
    enumerate(spec, s, cons, budget, |c| {
        out = Some(c);
        Ok(false)
    })?;
    out.ok_or(Error::Unsatisfiable)
}

/// Color-0 classes of perfect 2-colorings whose union covers every vertex
/// exactly `coverage` times.
#[derive(Clone, Debug)]
pub struct ColoringFamily {
    pub quotient: QuotientMatrix,
    pub coverage: u32,
    pub classes: Vec<Code>,
}

impl ColoringFamily {
    pub fn colorings(&self) -> Result<Vec<Coloring>> {
        self.classes.iter().map(Coloring::from_code).collect()
    }
}

/// Finds a family of perfect colorings with quotient `s` in which each vertex
/// has color 0 exactly `coverage` times: all color-0 classes through the origin
/// are enumerated, closed under translation, and covered exactly.
pub fn find_coloring_family(
    spec: GraphSpec,
    s: &QuotientMatrix,
    coverage: u32,
    budget: &SearchBudget,
) -> Result<ColoringFamily> {
    if s.k() != 2 {
        return Err(Error::WrongColorCount { expected: 2, found: s.k() });
    }
    let nv = spec.num_vertices();
    let mut through_origin: Vec<Vec<u64>> = Vec::new();
    enumerate(spec, s, &ColoringConstraints::default(), budget, |c| {
        through_origin.push((0..nv).filter(|&v| c.get(v) == 0).collect());
        Ok(true)
    })?;
    if through_origin.is_empty() {
        return Err(Error::Unsatisfiable);
    }
    let mut pool = BTreeSet::new();
    for class in &through_origin {
        for t in 0..nv {
            let mut moved: Vec<u64> = class.iter().map(|&v| z4_add(v, t)).collect();
            moved.sort_unstable();
            pool.insert(moved);
        }
    }
    let pool: Vec<Vec<u64>> = pool.into_iter().collect();
    let inst = ExactCoverInstance::new(
        nv as usize,
        pool.iter().map(|c| c.iter().map(|&v| v as usize).collect()).collect(),
        coverage,
    )?;
    let chosen = exact_cover(&inst, budget)?;
    let classes = chosen
        .into_iter()
        .map(|i| Code::from_indices(spec, pool[i].iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    for c in &classes {
        verify_quotient(&Coloring::from_code(c)?, s)?;
    }
    Ok(ColoringFamily { quotient: s.clone(), coverage, classes })
}

/// Every perfect 2-coloring in which vertex 0 has color 0, by brute force over
/// all vertex subsets; returns `(first class, b, c)` triples.
pub fn perfect_two_colorings(spec: GraphSpec) -> Result<Vec<(Vec<u64>, u32, u32)>> {
    let nv = spec.num_vertices();
    if nv > 20 {
        return Err(Error::DeskScaleExceeded {
            spec,
            vertices: nv,
            hint: "brute-force enumeration runs on at most 20 vertices".into(),
        });
    }
    let g = spec.graph();
    let nbmask: Vec<u32> = (0..nv).map(|v| g.neighbors(v).fold(0u32, |acc, u| acc | (1 << u))).collect();
    let deg = spec.degree();
    let full = (1u32 << nv) - 1;
    let mut out = Vec::new();
    for mask in (1..full).filter(|m| m & 1 == 1) {
        let (mut b, mut c) = (None, None);
        let ok = (0..nv).all(|v| {
            let inside = (nbmask[v as usize] & mask).count_ones();
            let (slot, val) = if mask >> v & 1 == 1 { (&mut b, deg - inside) } else { (&mut c, inside) };
            match *slot {
                None => {
                    *slot = Some(val);
                    true
                }
                Some(x) => x == val,
            }
        });
        if ok {
            out.push(((0..nv).filter(|&v| mask >> v & 1 == 1).collect(), b.unwrap(), c.unwrap()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SHRIKHANDE_CONNECTING_SET;

    fn spec(m: u32, n: u32) -> GraphSpec {
        GraphSpec::new(m, n).unwrap()
    }

    #[test]
    fn finds_bc_53_in_shrikhande() {
        let s = QuotientMatrix::two(1, 5, 3, 3);
        let c = find_perfect_coloring(spec(1, 0), &s, &ColoringConstraints::default(), &SearchBudget::default()).unwrap();
        assert_eq!(c.class_sizes(), vec![6, 10]);
        assert_eq!(c.get(0), 0);
    }

    #[test]
    fn finds_label_quotient_and_62() {
        let b = SearchBudget::default();
        let cons = ColoringConstraints::default();
        let c = find_perfect_coloring(spec(1, 0), &QuotientMatrix::je(4, 2, 0), &cons, &b).unwrap();
        assert_eq!(c.class_sizes(), vec![4; 4]);
        let c = find_perfect_coloring(spec(1, 0), &QuotientMatrix::two(0, 6, 2, 4), &cons, &b).unwrap();
        assert_eq!(c.class_sizes(), vec![4, 12]);
    }

    #[test]
    fn impossible_quotient() {
        let r = find_perfect_coloring(
            spec(1, 0),
            &QuotientMatrix::two(5, 1, 1, 5),
            &ColoringConstraints::default(),
            &SearchBudget::default(),
        );
        assert!(matches!(r, Err(Error::Unsatisfiable)));
    }

    #[test]
    fn translation_invariance_respected() {
        let t = (SHRIKHANDE_CONNECTING_SET[0].0 * 4 + SHRIKHANDE_CONNECTING_SET[0].1) as u64 * 2;
        let cons = ColoringConstraints { translations: vec![t], ..Default::default() };
        let c = find_perfect_coloring(spec(1, 0), &QuotientMatrix::two(2, 4, 4, 2), &cons, &SearchBudget::default())
            .unwrap();
        for v in 0..16 {
            assert_eq!(c.get(v), c.get(z4_add(v, t)));
        }
    }

    #[test]
    fn fifty_three_family_in_shrikhande() {
        let f = find_coloring_family(spec(1, 0), &QuotientMatrix::two(1, 5, 3, 3), 3, &SearchBudget::default())
            .unwrap();
        assert_eq!(f.classes.len(), 8);
        let mut cover = [0u32; 16];
        for c in &f.classes {
            for v in c.iter() {
                cover[v as usize] += 1;
            }
        }
        assert!(cover.iter().all(|&x| x == 3));
    }

    #[test]
    fn two_colorings_of_k4() {
        let all = perfect_two_colorings(spec(0, 1)).unwrap();
        // 7 subsets containing vertex 0, all but the full set are perfect
        assert_eq!(all.len(), 7);
    }
}
