//! Exact graded invariants of graph products of groups.
//!
//! Given a graph and a group at each vertex, this crate computes the
//! cohomology Poincaré series of the graph product, its gocha series, and
//! the ranks of the graded Lie algebras attached to the lower central series
//! and the Zassenhaus filtration. All arithmetic is exact: power series have
//! arbitrary-precision rational coefficients and the presentation oracle
//! works over `F_p`.

pub mod fp;
pub mod graph;
pub mod numtheory;
pub mod presentation;
pub mod product;
pub mod ranks;
pub mod scalar;
pub mod series;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use graph::{enumerate_cliques, induced_subgraph, Clique, CliqueList, Graph, GraphError};
pub use presentation::{
    GeneratorLabel, GradedDimensions, KoszulReport, PresentationError, QuadraticPresentation, ResourceCap,
};
pub use product::{
    assemble_presentation, cohomological_dimension, dual_census, dual_family, gocha_series, poincare_series,
    vertex_poincare, CohomologicalDimension, DualCensus, FamilySpec, ProductError, VertexGroup,
};
pub use ranks::{verify_identities, IdentityReport, RankError, RankTable};
pub use scalar::Scalar;
pub use series::{
    euler_product, jennings_product, peel_exponents, ExponentSequence, PeelMode, SeriesError, TruncatedSeries,
};

/// Power series over the rationals, the default for every generating function.
pub type Series = TruncatedSeries<BigRational>;

/// Power series over the integers.
pub type IntSeries = TruncatedSeries<BigInt>;
