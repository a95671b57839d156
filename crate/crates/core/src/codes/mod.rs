//! Sliding-block codes, generalised projections and isomorphism search.

mod analysis;
mod block;
mod finite;

pub use analysis::{
    apply_code, canonical_offset_sets, canonical_shifts, intersection_pattern_check, limit_points,
    search_isomorphism_code, verify_generalized_projection, verify_realization, PairOrigin, PatternReport,
    PatternTuple, PatternVerdict, ProjectionVerdict, Realization, SearchCertificate, SearchOutcome,
    MAX_FREE_COMPLETIONS, MAX_PATTERN_TUPLES, MAX_PROJECTION_DEPTH,
};
pub use block::{BlockCode, LocalRule};
pub use finite::{apply_finite_code, extract_finite_code, FiniteBlockCode};

use crate::Symbol;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("rules need a nonempty alphabet and arity")]
    EmptyRule,
    #[error("rule table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("code offsets must be strictly increasing")]
    OffsetsNotIncreasing,
    #[error("{offsets} offsets for a rule of arity {arity}")]
    ArityMismatch { offsets: usize, arity: usize },
    #[error("symbol {0} is outside the rule's input alphabet")]
    AlphabetMismatch(Symbol),
    #[error("bound exceeded: {0}")]
    BoundsExceeded(&'static str),
    #[error("oracle error: {0}")]
    Oracle(alloc::string::String),
    #[error("map does not intertwine the right shifts")]
    NotEquivariant,
}
