//! Exact algebraic substrate: Cayley-table groups, ℤ/3ℤ × B, and real
//! quadratic fields.

pub mod catalog;
pub mod group;
pub mod qnum;
pub mod rational;
pub mod z3b;

pub use qnum::is_squarefree;
pub use group::{DedekindVerdict, ElementSet, FiniteGroup, SubgroupLattice, DEFAULT_SUBGROUP_BOUND};
pub use qnum::{frac_part, qnum_compare, solve_hit, QuadraticNumber};
pub use rational::Rational;
pub use z3b::{z3b_f, Z3BElement};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("empty Cayley table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is not an element")]
    NotClosed { row: usize, col: usize, value: usize },
    #[error("not associative: ({a}·{b})·{c} != {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("{names} names given for a group of order {order}")]
    NamesMismatch { names: usize, order: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("d = {0} is not a squarefree integer >= 2")]
    NotSquarefree(u32),
    #[error("mixed quadratic fields Q(sqrt({0})) and Q(sqrt({1}))")]
    MismatchedField(u32, u32),
    #[error("rotation number must be irrational")]
    RationalAlpha,
    #[error("invalid Z3 x B element: {0}")]
    InvalidZ3B(&'static str),
    #[error("circle coordinate outside [0, 1)")]
    OutOfUnitInterval,
}
