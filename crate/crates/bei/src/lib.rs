//! Binomial edge ideals of trees: d-sequence classification of edge binomials,
//! exact Groebner-basis machinery, and Castelnuovo-Mumford regularity of powers.
//!
//! The crate is organized around five subsystems:
//!
//! * [`graph`] — labeled simple graphs, tree classification by degree sequence,
//!   tree enumeration, and the graph deformations the algebra needs.
//! * [`poly`] — exact multivariate polynomials over `Q` and prime fields with
//!   pluggable monomial orders.
//! * [`ideal`] — reduced Groebner bases, membership, colon ideals, products,
//!   powers, and minimal generators.
//! * [`binomial_edge`] — building `J_G` and deciding the d-sequence property of
//!   edge binomials, by direct definition checking and by ordering search.
//! * [`regularity`] — graded Betti numbers via Koszul homology, regularity
//!   computation, and closed-form predictions for the supported families.

pub mod binomial_edge;
pub mod graph;
pub mod ideal;
pub mod poly;
pub mod regularity;

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum BeiError {
    #[error("graph parse error: {0}")]
    Parse(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("edge {{{0},{1}}} is already present")]
    EdgePresent(usize, usize),
    #[error("vertex {0} is not a free vertex")]
    NotFreeVertex(usize),
    #[error("edge {{{0},{1}}} is not a bridge in G + e")]
    NotABridge(usize, usize),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("graph does not classify into a d-sequence family")]
    NotClassified,
    #[error("coefficient field mismatch")]
    FieldMismatch,
    #[error("variable count mismatch")]
    ArityMismatch,
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error("internal error: division by the colon denominator was not exact")]
    DivisionNotExact,
    #[error("search budget exceeded after {0} Buchberger runs")]
    BudgetExceeded(u64),
    #[error("no prediction rule applies")]
    NoRuleApplies,
    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),
    #[error("resource limit reached: {0}")]
    ResourceLimit(String),
    #[error("empty edge set")]
    EmptyEdgeSet,
}

pub type Result<T> = std::result::Result<T, BeiError>;
