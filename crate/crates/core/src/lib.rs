//! Perfect colorings (equitable partitions), completely regular codes and
//! multifold 1-perfect codes in Doob graphs `D(m, n)` and quaternary Hamming
//! graphs `H(n, 4)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] packs vertices into `u64` words and provides adjacency,
//!   distances and spectra;
//! * [`gf`] is arithmetic in `GF(2^k)` and the labelling homomorphisms;
//! * [`partition`] holds colorings, codes, quotient matrices and every
//!   verification predicate, plus the parameter oracles;
//! * [`construct`] builds colorings and codes and verifies each result before
//!   returning it;
//! * [`search`] is an independent exact-cover and backtracking engine used for
//!   base cases and as a brute-force oracle;
//! * [`cli`] is the `eqpart` command line.

pub mod cli;
pub mod construct;
pub mod error;
pub mod gf;
pub mod graph;
pub mod partition;
pub mod search;

pub use error::{Error, Result};
pub use graph::{GraphSpec, Vertex};
pub use partition::{Code, Coloring, QuotientMatrix};
