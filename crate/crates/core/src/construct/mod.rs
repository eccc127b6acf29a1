//! Builders for perfect colorings and codes, and a composition engine.
//!
//! Every builder returns a [`Built`]: a coloring together with the quotient
//! matrix the construction promises. The coloring is verified against that
//! matrix before it is returned, exhaustively when the graph has at most
//! [`EXHAUSTIVE_LIMIT`](crate::partition::EXHAUSTIVE_LIMIT) vertices and on an
//! explicit vertex sample otherwise.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::GraphSpec;
use crate::partition::{verify_quotient, verify_quotient_on, ColorFn, Code, Coloring, FnColoring, QuotientMatrix, EXHAUSTIVE_LIMIT};

mod base;
mod bc;
mod compose;
pub mod data;
mod families;
mod multifold;
pub mod recipe;

pub use base::{
    d40_class, d40_partition, hamming_one_perfect, mds_distance3_partition, mds_partition, multipartite,
    perfect_code_partition, MdsDistance3,
};
pub use bc::{bc_routes, build_bc_coloring, BcRoute, SpecPreference, DESK_LIMIT};
pub use compose::{
    bc_family_compose, diag_product, extend, merge, merge_first, multiply_coloring, multiply_factors, split_coloring,
    split_factors, tiling_compose, BcFamily, Tiling,
};
pub use families::{
    bb_coloring, gamma_mds_coloring, je_coloring, je_plus_three_coloring, pair_partition, rad2_code, three_j,
    three_j_minus_e, two_l_ham_coloring, two_lj_four_e_coloring, Rad2Code, RAD2_RANDOM,
};
pub use multifold::{multifold_partition, multifold_partition_sampled, MultifoldPartition};

/// A shareable color function.
pub type DynColoring = Arc<dyn ColorFn + Send + Sync>;

/// How a built object was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// Every vertex.
    Exhaustive,
    /// The given number of vertices (representatives and random samples).
    Sampled(u64),
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Check::Exhaustive => write!(f, "exhaustive"),
            Check::Sampled(n) => write!(f, "sampled on {n} vertices"),
        }
    }
}

/// Vertices checked per sampled verification.
pub const SAMPLE_SIZE: u64 = 20_000;

/// A verified perfect coloring with its quotient matrix.
#[derive(Clone)]
pub struct Built {
    coloring: DynColoring,
    pub quotient: QuotientMatrix,
    pub check: Check,
    pub name: String,
}

impl std::fmt::Debug for Built {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Built({} on {}, [{}], {})", self.name, self.spec(), self.quotient, self.check)
    }
}

impl ColorFn for Built {
    fn spec(&self) -> GraphSpec {
        self.coloring.spec()
    }

    fn num_colors(&self) -> usize {
        self.coloring.num_colors()
    }

    #[inline]
    fn color(&self, v: u64) -> usize {
        self.coloring.color(v)
    }
}

/// Deterministic random vertices of `spec`.
pub fn sample_vertices(spec: GraphSpec, count: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = spec.num_vertices();
    let mut out = vec![0];
    out.extend((0..count).map(|_| rng.gen_range(0..nv)));
    out
}

impl Built {
    /// Verifies `f` against `declared` and wraps it. Colorings within the
    /// exhaustive limit are materialized first.
    pub fn certify(name: impl Into<String>, f: DynColoring, declared: QuotientMatrix) -> Result<Built> {
        Built::certify_with(name, f, declared, &[])
    }

    /// As [`Built::certify`]; beyond the exhaustive limit the `extra` vertices
    /// are checked in addition to a random sample.
    pub fn certify_with(name: impl Into<String>, f: DynColoring, declared: QuotientMatrix, extra: &[u64]) -> Result<Built> {
        let name = name.into();
        let spec = f.spec();
        if declared.k() != f.num_colors() {
            return Err(Error::WrongColorCount { expected: declared.k(), found: f.num_colors() });
        }
        if declared.row_sum() != Some(spec.degree()) {
            return Err(Error::Verification(format!("{name}: declared quotient [{declared}] has wrong row sums")));
        }
        if spec.num_vertices() <= EXHAUSTIVE_LIMIT {
            let dense = Coloring::from_fn(f.as_ref())?;
            verify_quotient(&dense, &declared)?;
            Ok(Built { coloring: Arc::new(dense), quotient: declared, check: Check::Exhaustive, name })
        } else {
            let mut vs = sample_vertices(spec, SAMPLE_SIZE, 0x5eed);
            vs.extend_from_slice(extra);
            verify_quotient_on(f.as_ref(), &declared, &vs)?;
            Ok(Built { coloring: f, quotient: declared, check: Check::Sampled(vs.len() as u64), name })
        }
    }

    /// A coloring given by a closure, verified.
    pub fn from_fn<F>(name: impl Into<String>, spec: GraphSpec, declared: QuotientMatrix, f: F) -> Result<Built>
    where
        F: Fn(u64) -> usize + Send + Sync + 'static,
    {
        let k = declared.k();
        Built::certify(name, Arc::new(FnColoring::new(spec, k, f)), declared)
    }

    pub fn spec(&self) -> GraphSpec {
        self.coloring.spec()
    }

    pub fn k(&self) -> usize {
        self.coloring.num_colors()
    }

    pub fn shared(&self) -> DynColoring {
        self.coloring.clone()
    }

    /// Dense copy of the coloring.
    pub fn to_coloring(&self) -> Result<Coloring> {
        Coloring::from_fn(self.coloring.as_ref())
    }

    /// Vertices of 0-based color `c` as a dense code.
    pub fn class(&self, c: usize) -> Result<Code> {
        Code::from_predicate(self.spec(), |v| self.color(v) == c)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Built {
        self.name = name.into();
        self
    }
}

/// Exact base-2 logarithm.
pub(crate) fn log2_exact(x: u64) -> Option<u32> {
    x.is_power_of_two().then(|| x.trailing_zeros())
}

pub(crate) fn spec(m: u32, n: u32) -> Result<GraphSpec> {
    GraphSpec::new(m, n)
}

pub(crate) fn unsupported(spec: GraphSpec, reason: impl Into<String>) -> Error {
    Error::UnsupportedSpec { spec, reason: reason.into() }
}
