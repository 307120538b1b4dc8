//! Exact rational geometry: points, affine flats, position predicates,
//! polytopes, arrangement refinement and deterministic triangulation.

mod arrangement;
mod linalg;
mod point;
mod polytope;
mod position;
mod rational;
mod simplex;
mod triangulate;

use thiserror::Error;

pub use arrangement::{
    refine_arrangement, refine_arrangement_counted, refine_arrangement_counted_capped,
    refine_arrangement_with_origins,
    DEFAULT_ARRANGEMENT_CAP,
};
pub use linalg::{null_space, rank, rref, solve_affine, AffineFlat, AffineSolution};
pub use point::Point;
pub use polytope::{intersect_polytopes, HRep, Halfspace, Polytope};
pub use position::{
    affine_dim, general_position_witness, in_general_position, in_strong_general_position,
    in_strong_general_position_capped, strong_general_position_witness, DEFAULT_SGP_CAP,
};
pub use rational::{format_rational, int, one, parse_rational, rat, sign, zero, Rational};
pub use simplex::GeomSimplex;
pub use triangulate::{placing_triangulation, placing_triangulation_by};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("{what}: {found} exceeds the enumeration cap of {limit}")]
    CapExceeded { what: &'static str, limit: usize, found: usize },
    #[error("degenerate simplex: {0}")]
    Degenerate(String),
}
