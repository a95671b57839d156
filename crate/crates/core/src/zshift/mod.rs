//! Sequences over ℤ as total oracles, and windowed analysis of their words.

mod recur;
mod set;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

pub use recur::{
    initial_words, max_gap, occurrences, uniform_recurrence_certificate, CertificateVerdict, Extent, GapStats,
    OccurrenceEvidence, RecurrenceCertificate, RefutationKind, MAX_CERTIFICATE_LENGTH, MAX_CERTIFICATE_RADIUS,
};
pub use set::{SetExpr, Tail, MAX_TAIL_PERIOD};

use crate::codes::BlockCode;
use crate::rotation::{RotationCoding, RotationError};
use crate::Symbol;

/// Largest window `eval_window` accepts.
pub const MAX_WINDOW: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ZshiftError {
    #[error("window [{lo}, {hi}] is empty")]
    InvalidWindow { lo: i64, hi: i64 },
    #[error("window of {len} positions exceeds the limit of {MAX_WINDOW}")]
    WindowTooLarge { len: u64 },
    #[error("symbol {0} is not in the oracle alphabet")]
    AlphabetMismatch(Symbol),
    #[error("word patterns need at least one symbol")]
    EmptyWord,
    #[error("word offsets must be strictly increasing")]
    OffsetsNotIncreasing,
    #[error("{offsets} offsets for {symbols} symbols")]
    LengthMismatch { offsets: usize, symbols: usize },
    #[error("periodic word is empty")]
    EmptyPeriod,
    #[error("bound exceeded: {0}")]
    BoundsExceeded(&'static str),
    #[error(transparent)]
    Rotation(#[from] RotationError),
}

/// Symbols `s₁…s_k` at offsets `g₁ < … < g_k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WordPattern {
    offsets: Vec<i64>,
    symbols: Vec<Symbol>,
}

impl WordPattern {
    pub fn new(offsets: Vec<i64>, symbols: Vec<Symbol>) -> Result<Self, ZshiftError> {
        if symbols.is_empty() {
            return Err(ZshiftError::EmptyWord);
        }
        if offsets.len() != symbols.len() {
            return Err(ZshiftError::LengthMismatch { offsets: offsets.len(), symbols: symbols.len() });
        }
        if offsets.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ZshiftError::OffsetsNotIncreasing);
        }
        Ok(WordPattern { offsets, symbols })
    }

    /// The word `s₁…s_k` at offsets `0..k`.
    pub fn contiguous(symbols: Vec<Symbol>) -> Result<Self, ZshiftError> {
        let offsets = (0..symbols.len() as i64).collect();
        Self::new(offsets, symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn min_offset(&self) -> i64 {
        self.offsets[0]
    }

    pub fn max_offset(&self) -> i64 {
        *self.offsets.last().expect("nonempty")
    }

    pub fn pairs(&self) -> impl Iterator<Item = (i64, Symbol)> + '_ {
        self.offsets.iter().copied().zip(self.symbols.iter().copied())
    }
}

impl fmt::Display for WordPattern {
    /// `(s₁,…,s_k;g₁,…,g_k)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", s)?;
        }
        f.write_str(";")?;
        for (i, g) in self.offsets.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", g)?;
        }
        f.write_str(")")
    }
}

/// A total, deterministic sequence `ℤ → K`.
#[derive(Clone, PartialEq, Debug)]
pub enum SequenceOracle {
    /// `n ↦ word[n mod |word|]`
    Periodic(Vec<Symbol>),
    /// indicator of a set
    SetDefined(SetExpr),
    /// `n ↦ label of {nα + base}`
    RotationCoded(Arc<RotationCoding>),
    /// `n ↦ ψ(inner(n + g₁), …, inner(n + g_k))`
    CodeImage { code: BlockCode, inner: Box<SequenceOracle> },
    /// `inner` with finitely many positions replaced
    Override { inner: Box<SequenceOracle>, patch: BTreeMap<i64, Symbol> },
    /// `n ↦ inner(n + by)`
    Shifted { inner: Box<SequenceOracle>, by: i64 },
}

impl SequenceOracle {
    pub fn periodic(word: Vec<Symbol>) -> Result<Self, ZshiftError> {
        if word.is_empty() {
            return Err(ZshiftError::EmptyPeriod);
        }
        Ok(SequenceOracle::Periodic(word))
    }

    /// The constant sequence `0`.
    pub fn zero() -> Self {
        SequenceOracle::Periodic(alloc::vec![0])
    }

    pub fn set(expr: SetExpr) -> Self {
        SequenceOracle::SetDefined(expr)
    }

    pub fn rotation(coding: RotationCoding) -> Self {
        SequenceOracle::RotationCoded(Arc::new(coding))
    }

    pub fn code_image(code: BlockCode, inner: SequenceOracle) -> Result<Self, ZshiftError> {
        let accepted = code.rule().input_alphabet();
        if let Some(s) = inner.alphabet().into_iter().find(|s| accepted.binary_search(s).is_err()) {
            return Err(ZshiftError::AlphabetMismatch(s));
        }
        Ok(SequenceOracle::CodeImage { code, inner: Box::new(inner) })
    }

    pub fn with_patch(inner: SequenceOracle, patch: BTreeMap<i64, Symbol>) -> Self {
        SequenceOracle::Override { inner: Box::new(inner), patch }
    }

    pub fn shifted(inner: SequenceOracle, by: i64) -> Self {
        if by == 0 {
            return inner;
        }
        SequenceOracle::Shifted { inner: Box::new(inner), by }
    }

    /// Symbols the oracle may produce, ascending.
    pub fn alphabet(&self) -> Vec<Symbol> {
        let mut out = match self {
            SequenceOracle::Periodic(w) => w.clone(),
            SequenceOracle::SetDefined(_) => alloc::vec![0, 1],
            SequenceOracle::RotationCoded(c) => c.labels(),
            SequenceOracle::CodeImage { code, .. } => code.rule().output_alphabet(),
            SequenceOracle::Override { inner, patch } => {
                let mut a = inner.alphabet();
                a.extend(patch.values().copied());
                a
            }
            SequenceOracle::Shifted { inner, .. } => inner.alphabet(),
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn eval(&self, n: i64) -> Result<Symbol, ZshiftError> {
        Ok(match self {
            SequenceOracle::Periodic(w) => w[n.rem_euclid(w.len() as i64) as usize],
            SequenceOracle::SetDefined(s) => s.contains(n) as Symbol,
            SequenceOracle::RotationCoded(c) => c.cell_symbol(n)?,
            SequenceOracle::CodeImage { code, inner } => {
                let mut window = Vec::with_capacity(code.offsets().len());
                for g in code.offsets() {
                    window.push(inner.eval(n + g)?);
                }
                code.rule().apply(&window).ok_or(ZshiftError::AlphabetMismatch(window[0]))?
            }
            SequenceOracle::Override { inner, patch } => match patch.get(&n) {
                Some(s) => *s,
                None => inner.eval(n)?,
            },
            SequenceOracle::Shifted { inner, by } => inner.eval(n + by)?,
        })
    }

    /// `o(lo), …, o(hi)`.
    pub fn eval_window(&self, lo: i64, hi: i64) -> Result<Vec<Symbol>, ZshiftError> {
        check_window(lo, hi)?;
        self.window_unchecked(lo, hi)
    }

    pub(crate) fn window_unchecked(&self, lo: i64, hi: i64) -> Result<Vec<Symbol>, ZshiftError> {
        Ok(match self {
            SequenceOracle::Periodic(_) | SequenceOracle::SetDefined(_) => {
                (lo..=hi).map(|n| self.eval(n)).collect::<Result<_, _>>()?
            }
            SequenceOracle::RotationCoded(c) => c.label_window(lo, hi)?,
            SequenceOracle::CodeImage { code, inner } => {
                let values = inner.window_unchecked(lo + code.min_offset(), hi + code.max_offset())?;
                code.apply_slice(&values).map_err(|e| match e {
                    crate::codes::CodeError::AlphabetMismatch(s) => ZshiftError::AlphabetMismatch(s),
                    _ => ZshiftError::BoundsExceeded("code application"),
                })?
            }
            SequenceOracle::Override { inner, patch } => {
                let mut v = inner.window_unchecked(lo, hi)?;
                for (&k, &s) in patch.range(lo..=hi) {
                    v[(k - lo) as usize] = s;
                }
                v
            }
            SequenceOracle::Shifted { inner, by } => inner.window_unchecked(lo + by, hi + by)?,
        })
    }

    /// Eventual periodicity in both directions, when it can be derived
    /// structurally. Rotation codings of irrational rotations never have one.
    pub fn tail(&self) -> Option<Tail> {
        match self {
            SequenceOracle::Periodic(w) => Some(Tail { threshold: 0, period: w.len() as i64 }),
            SequenceOracle::SetDefined(s) => s.tail(),
            SequenceOracle::RotationCoded(_) => None,
            SequenceOracle::CodeImage { code, inner } => {
                let t = inner.tail()?;
                let reach = code.min_offset().abs().max(code.max_offset().abs());
                Some(Tail { threshold: t.threshold.checked_add(reach)?, period: t.period })
            }
            SequenceOracle::Override { inner, patch } => {
                let t = inner.tail()?;
                let m = patch.keys().map(|k| k.checked_abs()).try_fold(0i64, |acc, k| k.map(|k| acc.max(k + 1)))?;
                Some(Tail { threshold: t.threshold.max(m), period: t.period })
            }
            SequenceOracle::Shifted { inner, by } => {
                let t = inner.tail()?;
                Some(Tail { threshold: t.threshold.checked_add(by.checked_abs()?)?, period: t.period })
            }
        }
    }

    /// The two-sided periodic limits of the tails, each as one period
    /// `y(0), …, y(P − 1)`: first the `+∞` tail, then the `−∞` tail.
    pub fn limit_blocks(&self) -> Result<Option<(Vec<Symbol>, Vec<Symbol>)>, ZshiftError> {
        let Some(t) = self.tail() else { return Ok(None) };
        let p = t.period;
        let right = p * div_ceil(t.threshold, p);
        let left = p * div_ceil(t.threshold + p, p);
        Ok(Some((self.window_unchecked(right, right + p - 1)?, self.window_unchecked(-left, -left + p - 1)?)))
    }

    /// Whether `w` occurs anywhere in ℤ, when this is decidable from the
    /// oracle's structure.
    pub fn occurs_anywhere(&self, w: &WordPattern) -> Result<Option<bool>, ZshiftError> {
        if let SequenceOracle::RotationCoded(c) = self {
            return Ok(Some(!matches!(c.classify_word(w)?, crate::rotation::WordClass::Empty)));
        }
        let Some(t) = self.tail() else { return Ok(None) };
        let lo = -t.threshold - w.max_offset() - t.period;
        let hi = t.threshold - w.min_offset() + t.period;
        if (hi - lo) as u64 >= MAX_WINDOW {
            return Err(ZshiftError::BoundsExceeded("exact occurrence scan"));
        }
        let values = self.window_unchecked(lo + w.min_offset(), hi + w.max_offset())?;
        let base = lo + w.min_offset();
        Ok(Some((lo..=hi).any(|h| w.pairs().all(|(g, s)| values[(h + g - base) as usize] == s))))
    }
}

pub(crate) fn div_ceil(a: i64, b: i64) -> i64 {
    num_integer::Integer::div_ceil(&a, &b)
}

pub(crate) fn check_window(lo: i64, hi: i64) -> Result<(), ZshiftError> {
    if lo > hi {
        return Err(ZshiftError::InvalidWindow { lo, hi });
    }
    let len = (hi as i128 - lo as i128 + 1) as u128;
    if len > MAX_WINDOW as u128 {
        return Err(ZshiftError::WindowTooLarge { len: len.min(u64::MAX as u128) as u64 });
    }
    Ok(())
}

/// Pinned ℤ examples: `a = 1_{0,1,3,5,…}`, `b = b′ = 1_{2,4,6,…}`,
/// `a′ = 1_{1,2,3,…}` and the step `1_{n ≥ 0}`.
pub mod fixtures {
    use super::*;

    /// `{2, 4, 6, …}`
    pub fn evens_from_two() -> SetExpr {
        SetExpr::Inter(alloc::vec![SetExpr::Progression { a: 0, d: 2 }, SetExpr::HalfLine { from: 2 }])
    }

    /// `{0, 1, 3, 5, …}`
    pub fn zero_and_positive_odds() -> SetExpr {
        SetExpr::Union(alloc::vec![
            SetExpr::Inter(alloc::vec![SetExpr::Progression { a: 1, d: 2 }, SetExpr::HalfLine { from: 1 }]),
            SetExpr::Finite(alloc::vec![0]),
        ])
    }

    pub fn pinned_a() -> SequenceOracle {
        SequenceOracle::set(zero_and_positive_odds())
    }

    pub fn pinned_b() -> SequenceOracle {
        SequenceOracle::set(evens_from_two())
    }

    pub fn pinned_a_prime() -> SequenceOracle {
        SequenceOracle::set(SetExpr::HalfLine { from: 1 })
    }

    pub fn pinned_b_prime() -> SequenceOracle {
        pinned_b()
    }

    pub fn step() -> SequenceOracle {
        SequenceOracle::set(SetExpr::HalfLine { from: 0 })
    }
}
