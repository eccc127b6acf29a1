//! Colorings, codes and quotient matrices, with every verification predicate
//! and the parameter oracles for perfect 2-colorings.

mod code;
mod coloring;
mod crc;
pub mod io;
mod params;
mod quotient;

pub use code::Code;
pub use coloring::{merge_colors, ColorFn, Coloring, FnColoring};
pub use crc::{
    code_distance, completely_regular_check, distance_coloring, has_distance_at_least, is_mu_fold_perfect,
    mu_fold_on, IntersectionArray, RegularityReport,
};
pub use params::{
    admissibility, multifold_exists, necessary_conditions, Admissibility, MultifoldDecomposition, NecessaryReport,
    Violation,
};
pub use quotient::{compute_quotient, is_perfect_bc, verify_quotient, verify_quotient_on, QuotientMatrix};

/// Largest vertex count verified exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 24;

pub(crate) fn check_exhaustive(spec: crate::GraphSpec, what: &str) -> crate::Result<()> {
    if spec.num_vertices() > EXHAUSTIVE_LIMIT {
        Err(crate::Error::DeskScaleExceeded {
            spec,
            vertices: spec.num_vertices(),
            hint: format!("{what} needs an explicit sampled or representative vertex set"),
        })
    } else {
        Ok(())
    }
}
