//! Witness searches for recurrence notions.
//!
//! A set `R` is a set of recurrence when a property holds for every minimal
//! system, which no finite computation decides. Everything here reports
//! either a concrete witness or the exhaustion of a bounded search.

use alloc::vec::Vec;

use crate::algebra::{z3b_f, FiniteGroup, Z3BElement};
use crate::systems::FiniteConfig;
use crate::zshift::{SequenceOracle, WordPattern, ZshiftError};
use crate::Symbol;

pub const MAX_EQTECH_SEARCH_BOUND: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RecurrenceError {
    #[error("candidate sets may not contain the identity")]
    ContainsIdentity,
    #[error("element {0} is not in the group")]
    NotAnElement(usize),
    #[error("element {0} has support outside 1..={1}")]
    SupportOutOfBound(alloc::string::String, u32),
    #[error("bound exceeded: {0}")]
    BoundsExceeded(&'static str),
    #[error("configuration length {found} differs from the group order {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Oracle(#[from] ZshiftError),
}

/// `R* = R ∖ {e}`, deduplicated and sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CandidateSet<T> {
    elements: Vec<T>,
}

impl CandidateSet<i64> {
    pub fn integers(mut v: Vec<i64>) -> Result<Self, RecurrenceError> {
        if v.contains(&0) {
            return Err(RecurrenceError::ContainsIdentity);
        }
        v.sort_unstable();
        v.dedup();
        Ok(CandidateSet { elements: v })
    }
}

impl CandidateSet<usize> {
    pub fn group_elements(group: &FiniteGroup, mut v: Vec<usize>) -> Result<Self, RecurrenceError> {
        if let Some(&g) = v.iter().find(|&&g| g >= group.order()) {
            return Err(RecurrenceError::NotAnElement(g));
        }
        if v.contains(&group.identity()) {
            return Err(RecurrenceError::ContainsIdentity);
        }
        v.sort_unstable();
        v.dedup();
        Ok(CandidateSet { elements: v })
    }
}

impl<T> CandidateSet<T> {
    pub fn elements(&self) -> &[T] {
        &self.elements
    }
}

/// Window positions ordered `0, −1, 1, −2, 2, …`.
fn centred(radius: i64) -> impl Iterator<Item = i64> {
    (0..=radius).flat_map(|k| if k == 0 { alloc::vec![0] } else { alloc::vec![-k, k] })
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum RecurrenceVerdict<G> {
    /// `h` and `g·h` (or `h + g`) lie in the colour class `colour`.
    Found { colour: Symbol, g: G, h: G },
    /// `exact` when no position anywhere can be a witness.
    NotFoundInWindow { exact: bool },
}

impl<G> RecurrenceVerdict<G> {
    pub fn is_found(&self) -> bool {
        matches!(self, RecurrenceVerdict::Found { .. })
    }
}

fn pair_word(colour: Symbol, second: Symbol, g: i64) -> WordPattern {
    let (offsets, symbols) = if g > 0 { (alloc::vec![0, g], alloc::vec![colour, second]) } else { (alloc::vec![g, 0], alloc::vec![second, colour]) };
    WordPattern::new(offsets, symbols).expect("g is nonzero")
}

/// First `(g, colour, h)` with `χ(h) = χ(h + g)`, `g` ascending, colours
/// ascending, `h` by distance from 0 within `[−N, N]`.
pub fn chromatic_recurrence_check(
    r: &CandidateSet<i64>,
    colouring: &SequenceOracle,
    radius: i64,
) -> Result<RecurrenceVerdict<i64>, RecurrenceError> {
    let colours = colouring.alphabet();
    let reach = r.elements.iter().map(|g| g.abs()).max().unwrap_or(0);
    let values = colouring.eval_window(-radius - reach, radius + reach)?;
    let at = |n: i64| values[(n + radius + reach) as usize];
    for &g in &r.elements {
        for &c in &colours {
            if let Some(h) = centred(radius).find(|&h| at(h) == c && at(h + g) == c) {
                return Ok(RecurrenceVerdict::Found { colour: c, g, h });
            }
        }
    }
    let mut exact = true;
    for &g in &r.elements {
        for &c in &colours {
            exact &= colouring.occurs_anywhere(&pair_word(c, c, g))? == Some(false);
        }
    }
    Ok(RecurrenceVerdict::NotFoundInWindow { exact })
}

/// First `(g, colour, h)` with `χ(h) = χ(g·h)` on a finite group; always exact.
pub fn chromatic_recurrence_check_finite(
    group: &FiniteGroup,
    r: &CandidateSet<usize>,
    colouring: &FiniteConfig,
) -> Result<RecurrenceVerdict<usize>, RecurrenceError> {
    if colouring.len() != group.order() {
        return Err(RecurrenceError::LengthMismatch { expected: group.order(), found: colouring.len() });
    }
    let mut colours = colouring.symbols().to_vec();
    colours.sort_unstable();
    colours.dedup();
    for &g in &r.elements {
        for &c in &colours {
            if let Some(h) = group.elements().find(|&h| colouring.at(h) == c && colouring.at(group.mul(g, h)) == c) {
                return Ok(RecurrenceVerdict::Found { colour: c, g, h });
            }
        }
    }
    Ok(RecurrenceVerdict::NotFoundInWindow { exact: true })
}

/// First `(g, h)` with `h ∈ S` and `h + g ∈ S`.
pub fn syndetic_return_check(
    r: &CandidateSet<i64>,
    set: &SequenceOracle,
    radius: i64,
) -> Result<RecurrenceVerdict<i64>, RecurrenceError> {
    let reach = r.elements.iter().map(|g| g.abs()).max().unwrap_or(0);
    let values = set.eval_window(-radius - reach, radius + reach)?;
    let at = |n: i64| values[(n + radius + reach) as usize];
    for &g in &r.elements {
        if let Some(h) = centred(radius).find(|&h| at(h) == 1 && at(h + g) == 1) {
            return Ok(RecurrenceVerdict::Found { colour: 1, g, h });
        }
    }
    let mut exact = true;
    for &g in &r.elements {
        exact &= set.occurs_anywhere(&pair_word(1, 1, g))? == Some(false);
    }
    Ok(RecurrenceVerdict::NotFoundInWindow { exact })
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EqtechCheck {
    pub a: Z3BElement,
    pub b: Z3BElement,
    /// `f(a·x⁻¹·b)`
    pub lhs: i8,
    /// `f(a·(cx)⁻¹·b)`
    pub rhs: i8,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EqtechWitness {
    pub c: Z3BElement,
    pub x: Z3BElement,
    pub f_x: i8,
    pub f_cx: i8,
    pub transcript: Vec<EqtechCheck>,
    pub pairs_tried: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum EqtechOutcome {
    Found(EqtechWitness),
    Exhausted { search_bound: u32, pairs_tried: u64 },
}

/// Checks the two conditions for one pair, recording every `(a, b)`.
pub fn eqtech_verify(s: &[Z3BElement], c: &Z3BElement, x: &Z3BElement) -> Option<(i8, i8, Vec<EqtechCheck>)> {
    let cx = c.mul(x);
    let (f_x, f_cx) = (z3b_f(x), z3b_f(&cx));
    if f_x == f_cx {
        return None;
    }
    let (xi, cxi) = (x.inverse(), cx.inverse());
    let mut transcript = Vec::with_capacity(s.len() * s.len());
    for a in s {
        for b in s {
            let lhs = z3b_f(&a.mul(&xi).mul(b));
            let rhs = z3b_f(&a.mul(&cxi).mul(b));
            if lhs != rhs {
                return None;
            }
            transcript.push(EqtechCheck { a: a.clone(), b: b.clone(), lhs, rhs });
        }
    }
    Some((f_x, f_cx, transcript))
}

fn subsets_of_size(bound: u32, size: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: u32, bound: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=bound {
            if bound - i + 1 < left {
                break;
            }
            cur.push(i);
            go(i + 1, bound, left - 1, cur, out);
            cur.pop();
        }
    }
    go(1, bound, size, &mut cur, &mut out);
    out
}

/// Searches `(c, x)` with supports in `1..=B′` for
/// `f(x) ≠ f(cx)` and `f(a x⁻¹ b) = f(a (cx)⁻¹ b)` for all `a, b ∈ S`.
///
/// Pairs are ordered by total support size, then by `(c, x)`
/// lexicographically.
pub fn eqtech_search(s: &[Z3BElement], support_bound: u32, search_bound: u32) -> Result<EqtechOutcome, RecurrenceError> {
    if search_bound > MAX_EQTECH_SEARCH_BOUND {
        return Err(RecurrenceError::BoundsExceeded("eqtech search bound above 10"));
    }
    if let Some(bad) = s.iter().find(|e| e.support().iter().any(|&i| i > support_bound)) {
        return Err(RecurrenceError::SupportOutOfBound(alloc::format!("{}", bad), support_bound));
    }
    let by_size: Vec<Vec<Z3BElement>> = (0..=search_bound)
        .map(|k| {
            let mut v: Vec<Z3BElement> = subsets_of_size(search_bound, k)
                .into_iter()
                .flat_map(|supp| (0..3u8).map(move |r| Z3BElement::new(r, supp.clone()).expect("valid support")))
                .collect();
            v.sort();
            v
        })
        .collect();
    let mut tried = 0u64;
    for total in 0..=2 * search_bound {
        let mut pairs: Vec<(&Z3BElement, &Z3BElement)> = Vec::new();
        for kc in total.saturating_sub(search_bound)..=total.min(search_bound) {
            let kx = total - kc;
            for c in &by_size[kc as usize] {
                for x in &by_size[kx as usize] {
                    pairs.push((c, x));
                }
            }
        }
        pairs.sort();
        for (c, x) in pairs {
            tried += 1;
            if let Some((f_x, f_cx, transcript)) = eqtech_verify(s, c, x) {
                return Ok(EqtechOutcome::Found(EqtechWitness {
                    c: c.clone(),
                    x: x.clone(),
                    f_x,
                    f_cx,
                    transcript,
                    pairs_tried: tried,
                }));
            }
        }
    }
    Ok(EqtechOutcome::Exhausted { search_bound, pairs_tried: tried })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::rotation::fixtures;
    use crate::zshift::SetExpr;

    #[test]
    fn candidate_sets() {
        assert_eq!(CandidateSet::integers(alloc::vec![0, 1]), Err(RecurrenceError::ContainsIdentity));
        assert_eq!(CandidateSet::integers(alloc::vec![5, 1, 5]).unwrap().elements(), &[1, 5]);
        let s3 = catalog::symmetric3();
        assert_eq!(CandidateSet::group_elements(&s3, alloc::vec![0]), Err(RecurrenceError::ContainsIdentity));
        assert_eq!(CandidateSet::group_elements(&s3, alloc::vec![6]), Err(RecurrenceError::NotAnElement(6)));
    }

    #[test]
    fn chromatic_examples() {
        let alt = SequenceOracle::periodic(alloc::vec![0, 1]).unwrap();
        let r2 = CandidateSet::integers(alloc::vec![2]).unwrap();
        assert_eq!(chromatic_recurrence_check(&r2, &alt, 100).unwrap(), RecurrenceVerdict::Found { colour: 0, g: 2, h: 0 });
        let r1 = CandidateSet::integers(alloc::vec![1]).unwrap();
        assert_eq!(chromatic_recurrence_check(&r1, &alt, 1000).unwrap(), RecurrenceVerdict::NotFoundInWindow { exact: true });
        let four = SequenceOracle::rotation(fixtures::four_colouring());
        let r12 = CandidateSet::integers(alloc::vec![1, 2]).unwrap();
        match chromatic_recurrence_check(&r12, &four, 1000).unwrap() {
            RecurrenceVerdict::Found { g, h, .. } => {
                assert_eq!(g, 1);
                assert!(h.abs() <= 10);
            }
            v => panic!("{:?}", v),
        }
    }

    #[test]
    fn chromatic_finite() {
        let z4 = catalog::cyclic(4);
        let col = FiniteConfig::new(alloc::vec![0, 1, 0, 1]);
        let r = CandidateSet::group_elements(&z4, alloc::vec![1, 3]).unwrap();
        assert_eq!(chromatic_recurrence_check_finite(&z4, &r, &col).unwrap(), RecurrenceVerdict::NotFoundInWindow { exact: true });
        let r = CandidateSet::group_elements(&z4, alloc::vec![2]).unwrap();
        assert!(chromatic_recurrence_check_finite(&z4, &r, &col).unwrap().is_found());
    }

    #[test]
    fn syndetic_examples() {
        let third = SequenceOracle::rotation(fixtures::third_interval());
        let r1 = CandidateSet::integers(alloc::vec![1]).unwrap();
        let found = syndetic_return_check(&r1, &third, 1000).unwrap();
        let RecurrenceVerdict::Found { h, .. } = found else { panic!("{:?}", found) };
        assert_eq!((third.eval(h).unwrap(), third.eval(h + 1).unwrap()), (1, 1));
        let evens = SequenceOracle::set(SetExpr::Progression { a: 0, d: 2 });
        assert_eq!(syndetic_return_check(&r1, &evens, 1000).unwrap(), RecurrenceVerdict::NotFoundInWindow { exact: true });
        let r2 = CandidateSet::integers(alloc::vec![2]).unwrap();
        assert_eq!(syndetic_return_check(&r2, &evens, 1000).unwrap(), RecurrenceVerdict::Found { colour: 1, g: 2, h: 0 });
    }

    #[test]
    fn eqtech_identity() {
        let s = alloc::vec![Z3BElement::identity()];
        let EqtechOutcome::Found(w) = eqtech_search(&s, 8, 4).unwrap() else { panic!() };
        assert_eq!(w.c, Z3BElement::new(0, alloc::vec![1]).unwrap());
        assert_eq!(w.x, Z3BElement::new(2, alloc::vec![]).unwrap());
        assert!(eqtech_verify(&s, &w.c, &w.x).is_some());
        assert_eq!(w.transcript.len(), 1);
    }

    #[test]
    fn eqtech_bounds() {
        let s = alloc::vec![Z3BElement::new(1, alloc::vec![9]).unwrap()];
        assert!(matches!(eqtech_search(&s, 8, 4), Err(RecurrenceError::SupportOutOfBound(_, 8))));
        assert!(matches!(eqtech_search(&[], 8, 11), Err(RecurrenceError::BoundsExceeded(_))));
    }
}
