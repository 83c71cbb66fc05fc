//! Semigraphoids, convex rank tests, submodularity and the semigraphoid
//! semigroup, with exact rational arithmetic throughout.

pub mod ci;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod imset;
pub mod lp;
pub mod markov;
pub mod rational;
pub mod report;
pub mod semigraphoid;
pub mod submodular;
pub mod text;
pub mod verify;

pub use ci::{
    apply_permutation, build_matrix, elementary_imset, enumerate_statements, gamma, generate_axioms,
    level_counts, AxiomEquation, CiSpace, CiStatement, ElementaryMatrix, GroundSet, Imset, Permutation,
    StatementIndex, Subset,
};
pub use error::{Error, Result};
pub use geometry::{
    class_poset, edge_statement, face_lattice, is_simplicial, rank_test, statements_of_partition, vertices_from_facets,
    ClassPoset, FaceLattice, HPolytope, RankTestPartition,
};
pub use lp::RationalMatrix;
pub use imset::{enumerate_fiber, is_combinatorial, is_structural, Fiber, NonNegCombination};
pub use markov::{in_kernel, is_indispensable, orbit, prime_contains_axioms, MarkovMove, MonomialPrime};
pub use rational::Rational;
pub use report::{Check, Report};
pub use submodular::{certificate_report, count_submodular, is_submodular, CertificateReport, SubmodularDecision};
pub use semigraphoid::{closure, enumerate_all, is_coarsest, is_semigraphoid, type_signature, StatementSet};
