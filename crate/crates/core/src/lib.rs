//! Rainbow connectivity of tournaments.
//!
//! Builds the 2-colored tournaments of every order `n >= 6` whose rainbow
//! connection number is 2, checks their witness paths, and computes exact
//! rainbow connection numbers of small digraphs by exhaustive search.

pub mod catalog;
pub mod coloring;
pub mod digraph;
pub mod dot;
pub mod error;
pub mod proof;
pub mod rainbow;
pub mod solver;

pub use coloring::{
    enumerate_canonical_colorings, paper_coloring_even, paper_coloring_odd, paper_construction,
    paper_tournament_n6, ArcColoring, ColoredDigraph, RestrictedGrowth,
};
pub use digraph::{
    circulant_is_tournament, enumerate_tournaments, is_strong, is_tournament, make_circulant, ArcId,
    CirculantSpec, Digraph,
};
pub use error::{Error, Result};
pub use proof::{proof_certificate, validate_certificate, ProofCertificate, ValidationReport};
pub use rainbow::{
    find_rainbow_path, is_rainbow_connected, rainbow_certificate, RainbowCertificate, RainbowPath,
};
pub use solver::{rc_exact, rc_exact_with, rc_lower_bound_trivial, RcResult, RcSearch, SolverConfig};
