use alloc::vec::Vec;
use core::fmt;

use super::CodeError;
use crate::Symbol;

/// A total rule `A^k → A'` stored as a dense table.
///
/// Inputs are indexed in mixed radix `|A|` with the first coordinate most
/// significant, so table order is lexicographic in the input tuple.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LocalRule {
    inputs: Vec<Symbol>,
    arity: usize,
    table: Vec<Symbol>,
}

impl LocalRule {
    pub fn new(mut inputs: Vec<Symbol>, arity: usize, table: Vec<Symbol>) -> Result<Self, CodeError> {
        inputs.sort_unstable();
        inputs.dedup();
        if inputs.is_empty() || arity == 0 {
            return Err(CodeError::EmptyRule);
        }
        let expected = table_size(inputs.len(), arity)?;
        if table.len() != expected {
            return Err(CodeError::TableSize { expected, found: table.len() });
        }
        Ok(LocalRule { inputs, arity, table })
    }

    pub fn from_fn(inputs: Vec<Symbol>, arity: usize, mut f: impl FnMut(&[Symbol]) -> Symbol) -> Result<Self, CodeError> {
        let mut inputs = inputs;
        inputs.sort_unstable();
        inputs.dedup();
        if inputs.is_empty() || arity == 0 {
            return Err(CodeError::EmptyRule);
        }
        let size = table_size(inputs.len(), arity)?;
        let mut tuple = alloc::vec![0; arity];
        let table = (0..size)
            .map(|i| {
                decode(&inputs, arity, i, &mut tuple);
                f(&tuple)
            })
            .collect();
        Ok(LocalRule { inputs, arity, table })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn input_alphabet(&self) -> &[Symbol] {
        &self.inputs
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    /// Distinct table values, ascending.
    pub fn output_alphabet(&self) -> Vec<Symbol> {
        let mut out = self.table.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn index_of(&self, window: &[Symbol]) -> Option<usize> {
        if window.len() != self.arity {
            return None;
        }
        let base = self.inputs.len();
        let mut idx = 0usize;
        for s in window {
            idx = idx * base + self.inputs.binary_search(s).ok()?;
        }
        Some(idx)
    }

    pub fn apply(&self, window: &[Symbol]) -> Option<Symbol> {
        self.index_of(window).map(|i| self.table[i])
    }

    /// The input tuple at table position `index`.
    pub fn tuple(&self, index: usize) -> Vec<Symbol> {
        let mut t = alloc::vec![0; self.arity];
        decode(&self.inputs, self.arity, index, &mut t);
        t
    }
}

pub(crate) fn table_size(alphabet: usize, arity: usize) -> Result<usize, CodeError> {
    u32::try_from(arity)
        .ok()
        .and_then(|k| alphabet.checked_pow(k))
        .filter(|&n| n <= 1 << 24)
        .ok_or(CodeError::BoundsExceeded("rule table larger than 2^24 entries"))
}

fn decode(inputs: &[Symbol], arity: usize, mut index: usize, out: &mut [Symbol]) {
    let base = inputs.len();
    for slot in (0..arity).rev() {
        out[slot] = inputs[index % base];
        index /= base;
    }
}

/// A sliding-block code over ℤ: `φ(x)(n) = ψ(x(n + g₁), …, x(n + g_k))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BlockCode {
    offsets: Vec<i64>,
    rule: LocalRule,
}

impl BlockCode {
    pub fn new(offsets: Vec<i64>, rule: LocalRule) -> Result<Self, CodeError> {
        if offsets.is_empty() {
            return Err(CodeError::EmptyRule);
        }
        if offsets.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CodeError::OffsetsNotIncreasing);
        }
        if offsets.len() != rule.arity {
            return Err(CodeError::ArityMismatch { offsets: offsets.len(), arity: rule.arity });
        }
        Ok(BlockCode { offsets, rule })
    }

    /// The coordinate projection on `alphabet`.
    pub fn identity(alphabet: Vec<Symbol>) -> Self {
        let rule = LocalRule::from_fn(alphabet, 1, |w| w[0]).expect("nonempty alphabet");
        BlockCode { offsets: alloc::vec![0], rule }
    }

    /// Binary code `x ↦ Σ x(n + g) mod 2`.
    pub fn parity(offsets: Vec<i64>) -> Result<Self, CodeError> {
        let rule = LocalRule::from_fn(alloc::vec![0, 1], offsets.len(), |w| w.iter().sum::<Symbol>() % 2)?;
        BlockCode::new(offsets, rule)
    }

    /// Binary code swapping 0 and 1.
    pub fn complement() -> Self {
        let rule = LocalRule::new(alloc::vec![0, 1], 1, alloc::vec![1, 0]).expect("valid table");
        BlockCode { offsets: alloc::vec![0], rule }
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    pub fn min_offset(&self) -> i64 {
        self.offsets[0]
    }

    pub fn max_offset(&self) -> i64 {
        *self.offsets.last().expect("nonempty")
    }

    /// `max offset − min offset`.
    pub fn span(&self) -> i64 {
        self.max_offset() - self.min_offset()
    }

    /// Applies the code to `values`, which hold `x(lo + i)`; returns the
    /// outputs at `lo − min_offset .. ` for as long as the window allows.
    pub fn apply_slice(&self, values: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        let span = self.span() as usize;
        if values.len() <= span {
            return Ok(Vec::new());
        }
        let base = self.min_offset();
        let mut window = alloc::vec![0; self.offsets.len()];
        let mut out = Vec::with_capacity(values.len() - span);
        for start in 0..values.len() - span {
            for (slot, g) in window.iter_mut().zip(&self.offsets) {
                *slot = values[start + (g - base) as usize];
            }
            out.push(self.rule.apply(&window).ok_or(CodeError::AlphabetMismatch(window[0]))?);
        }
        Ok(out)
    }

    /// `c₂ ∘ c₁` as a single code, with offsets `{a + b : a ∈ c₂, b ∈ c₁}`.
    pub fn compose(outer: &BlockCode, inner: &BlockCode) -> Result<BlockCode, CodeError> {
        let mut offsets: Vec<i64> = outer
            .offsets
            .iter()
            .flat_map(|a| inner.offsets.iter().map(move |b| a + b))
            .collect();
        offsets.sort_unstable();
        offsets.dedup();
        let pos = |x: i64| offsets.binary_search(&x).expect("offset present");
        let mut inner_window = alloc::vec![0; inner.offsets.len()];
        let mut outer_window = alloc::vec![0; outer.offsets.len()];
        let mut failed: Option<Symbol> = None;
        let outer_rule = &outer.rule;
        let locate: Vec<Vec<usize>> =
            outer.offsets.iter().map(|a| inner.offsets.iter().map(|b| pos(a + b)).collect()).collect();
        let rule = LocalRule::from_fn(inner.rule.inputs.clone(), offsets.len(), |w| {
            for (o, idx) in outer_window.iter_mut().zip(&locate) {
                for (slot, &i) in inner_window.iter_mut().zip(idx) {
                    *slot = w[i];
                }
                *o = inner.rule.apply(&inner_window).expect("inner input alphabet");
            }
            match outer_rule.apply(&outer_window) {
                Some(s) => s,
                None => {
                    failed.get_or_insert(outer_window[0]);
                    0
                }
            }
        })?;
        if let Some(s) = failed {
            return Err(CodeError::AlphabetMismatch(s));
        }
        BlockCode::new(offsets, rule)
    }
}

impl fmt::Display for BlockCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("offsets [")?;
        for (i, g) in self.offsets.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", g)?;
        }
        f.write_str("] rule {")?;
        for i in 0..self.rule.table.len() {
            if i > 0 {
                f.write_str(", ")?;
            }
            for s in self.rule.tuple(i) {
                write!(f, "{}", s)?;
            }
            write!(f, ":{}", self.rule.table[i])?;
        }
        f.write_str("}")
    }
}
