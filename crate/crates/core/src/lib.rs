//! Exact rational arithmetic for Minkowski sumset bounds and the
//! classification of critical pairs.
//!
//! Everything here is exact: coordinates are arbitrary-precision rationals,
//! hulls and triangulations use exact sidedness predicates, and every
//! structural decision (bound verification, stackedness, criticality) is
//! cross-checkable against brute-force enumeration.

pub mod criticality;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod lattice;
pub mod linalg;
pub mod rat;
pub mod sumset;
pub mod triangulation;

pub use criticality::{
    check_corollary_ka, check_monotonicity, classify, generate_family, is_k_critical,
    shelling_criterion, shelling_decomposition, CorollaryKAReport, CriticalCase, CriticalVerdict,
    FamilyCase, FamilyParams, MonotonicityReport, ShellingDecomposition, ShellingRegion, Witness,
};
pub use error::Error;
pub use geometry::{
    affine_dimension, convex_hull, simplex_volume, Carrier, Chart, Facet, Hyperplane, Membership,
    Point, PointSet, Polytope, SimplexVerts,
};
pub use lattice::{
    ap_decompose, difference_lattice, dim1_critical, interior_stability_count, is_stable,
    rational_gcd, ArithProgression, DiffLattice,
};
pub use rat::Rat;
pub use sumset::{
    check_bound, corollary_ka_bound, corollary_ka_h_bound, freiman_bound, k_fold, minkowski_sum,
    mr_bound, refined_bound, simplex_sum_cardinality, BoundKind, BoundReport, HVector,
};
pub use triangulation::{
    classify_shape, f_vector, find_shelling, h_from_f, h_from_shelling, is_stacked,
    is_totally_stackable, is_unimodular, placing_triangulation, verify_triangulation, FVector,
    Shelling, StackableShape, Triangulation, DEFAULT_SHELLING_BUDGET,
};
