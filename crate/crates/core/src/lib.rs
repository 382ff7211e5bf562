//! Minimum-distance upper bounds for type-1 quasi-cyclic LDPC codes.
//!
//! The crate models a code through its weight matrix and its polynomial
//! (exponent) matrix over `F2[x]/(x^s - 1)`, builds explicit low-weight
//! codewords from determinants of column selections, and checks the
//! resulting bounds against an exhaustive minimum-distance search.

pub mod bounds;
pub mod code;
pub mod construct;
pub mod error;
pub mod format;
pub mod oracle;
pub mod ring;
pub mod sample;

pub use bounds::{
    base_distance, constructive_bound, det_bound, lifted_base_codeword, simple_bound, summarize,
    summarize_weights, BoundReport, BoundSummary, ConstructiveBound, DetBoundReport,
};
pub use code::{
    BinaryMatrix, BinaryVector, CodewordPoly, DegreeDistribution, ExponentMatrix, PolyMatrix,
    SyndromeCheck, WeightMatrix,
};
pub use construct::{
    construct_nonzero_codeword, det, lemma_codeword, max_nonzero_minor, Construction,
    ConstructionPath, MinorSelection,
};
pub use error::{Error, Result};
pub use oracle::{det_cofactor_oracle, min_distance_exhaustive, nullspace, rank_f2, MinDistance};
pub use ring::CyclicPoly;
