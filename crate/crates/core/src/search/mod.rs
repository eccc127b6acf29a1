//! Exact cover and quotient-constrained backtracking, used to find base
//! objects and as an independent oracle for the constructions.
//!
//! Every object returned here has been re-verified.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::GraphSpec;
use crate::partition::{is_mu_fold_perfect, Code};

mod additive;
mod coloring;
mod exact_cover;

pub use additive::{find_additive_perfect_code, AdditiveCode, TargetGroup};
pub use coloring::{
    find_coloring_family, find_perfect_coloring, perfect_two_colorings, ColoringConstraints, ColoringFamily,
};
pub use exact_cover::{exact_cover, exact_cover_with, ExactCoverInstance};

/// Limits for a single search.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
    /// Zero keeps the natural order; other values shuffle it deterministically.
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { node_limit: 50_000_000, time_limit: None, seed: 0 }
    }
}

impl SearchBudget {
    pub(crate) fn start(&self) -> Budget {
        Budget { limit: self.node_limit, deadline: self.time_limit.map(|t| Instant::now() + t), nodes: 0 }
    }
}

pub(crate) struct Budget {
    limit: u64,
    deadline: Option<Instant>,
    nodes: u64,
}

impl Budget {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExhausted { nodes: self.nodes - 1 });
        }
        if self.nodes % 4096 == 0 && self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::BudgetExhausted { nodes: self.nodes });
        }
        Ok(())
    }
}

const SEARCH_VERTEX_LIMIT: u64 = 1 << 16;

fn check_search_size(spec: GraphSpec) -> Result<()> {
    if spec.num_vertices() > SEARCH_VERTEX_LIMIT {
        return Err(Error::DeskScaleExceeded {
            spec,
            vertices: spec.num_vertices(),
            hint: "search runs on at most 4^8 vertices".into(),
        });
    }
    Ok(())
}

/// A `mu`-fold 1-perfect code, by exact cover of the vertices with radius-1
/// balls. Vertex 0 is forced into the code (the graph is vertex-transitive).
pub fn find_perfect_code(spec: GraphSpec, mu: u32, budget: &SearchBudget) -> Result<Code> {
    check_search_size(spec)?;
    let n = spec.num_vertices();
    if mu == 0 || mu > spec.degree() + 1 {
        return Err(Error::Unsatisfiable);
    }
    let g = spec.graph();
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|v| std::iter::once(v).chain(g.neighbors(v)).map(|u| u as usize).collect())
        .collect();
    let inst = ExactCoverInstance::new(n as usize, sets, mu)?;
    let chosen = exact_cover_with(&inst, &[0], budget)?;
    let code = Code::from_indices(spec, chosen.into_iter().map(|v| v as u64))?;
    if !is_mu_fold_perfect(&code, mu) {
        return Err(Error::Verification("exact cover produced a code that is not perfect".into()));
    }
    Ok(code)
}

/// Shortest-path distance by breadth-first search.
pub fn bfs_distance(spec: GraphSpec, u: u64, v: u64) -> Result<u32> {
    if spec.num_vertices() > 1 << 12 {
        return Err(Error::DeskScaleExceeded {
            spec,
            vertices: spec.num_vertices(),
            hint: "BFS distance runs on at most 4^6 vertices".into(),
        });
    }
    spec.check_index(u)?;
    spec.check_index(v)?;
    let g = spec.graph();
    let mut dist = vec![u32::MAX; spec.num_vertices() as usize];
    dist[u as usize] = 0;
    let mut q = VecDeque::from([u]);
    while let Some(x) = q.pop_front() {
        if x == v {
            return Ok(dist[x as usize]);
        }
        for y in g.neighbors(x) {
            if dist[y as usize] == u32::MAX {
                dist[y as usize] = dist[x as usize] + 1;
                q.push_back(y);
            }
        }
    }
    Err(Error::Verification("graph is not connected".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: u32, n: u32) -> GraphSpec {
        GraphSpec::new(m, n).unwrap()
    }

    #[test]
    fn bfs_examples() {
        let s = spec(1, 0);
        assert_eq!(bfs_distance(s, 3, 3).unwrap(), 0);
        assert_eq!(bfs_distance(s, 0, 0b1010).unwrap(), 2);
        let h = spec(0, 3);
        assert_eq!(bfs_distance(h, 0, 0b011011).unwrap(), 3);
        assert!(bfs_distance(spec(0, 7), 0, 1).is_err());
    }

    #[test]
    fn bfs_matches_coordinatewise_distance() {
        for (m, n) in [(1, 0), (1, 1), (0, 3), (2, 0), (1, 2)] {
            let s = spec(m, n);
            let nv = s.num_vertices();
            for u in (0..nv).step_by(37) {
                for v in 0..nv {
                    assert_eq!(bfs_distance(s, u, v).unwrap(), s.distance(u, v).unwrap());
                }
            }
        }
    }

    #[test]
    fn perfect_code_small_cases() {
        let b = SearchBudget::default();
        let c = find_perfect_code(spec(0, 1), 1, &b).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(find_perfect_code(spec(1, 0), 7, &b).unwrap().len(), 16);
        for (m, n) in [(1, 0), (0, 2), (1, 1), (0, 3), (2, 0), (1, 2), (0, 4)] {
            assert!(matches!(find_perfect_code(spec(m, n), 1, &b), Err(Error::Unsatisfiable)));
        }
    }
}
