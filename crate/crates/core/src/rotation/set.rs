//! Finite unions of arcs and points on the circle `[0, 1)`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::algebra::{AlgebraError, QuadraticNumber, Rational};

/// One arc as written in scenario files: from `lo` counterclockwise to `hi`.
///
/// `lo ∈ [0, 1)` and `hi ∈ [0, 1]`; `hi < lo` wraps through 0, and
/// `hi ≡ lo` is a full turn.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CircleArc {
    pub lo: QuadraticNumber,
    pub lo_closed: bool,
    pub hi: QuadraticNumber,
    pub hi_closed: bool,
}

impl CircleArc {
    pub fn new(lo: QuadraticNumber, lo_closed: bool, hi: QuadraticNumber, hi_closed: bool) -> Self {
        CircleArc { lo, lo_closed, hi, hi_closed }
    }

    /// Length in `(0, 1]`, as a float.
    pub fn length_f64(&self) -> f64 {
        let l = self.hi.to_f64() - self.lo.to_f64();
        if l <= 0.0 {
            l + 1.0
        } else {
            l
        }
    }
}

impl fmt::Display for CircleArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Break {
    at: QuadraticNumber,
    /// membership of `at` itself
    point: bool,
    /// membership of the open gap from `at` to the next break
    after: bool,
}

/// A subset of the circle, stored as sorted breakpoints.
///
/// Between consecutive breakpoints membership is constant. The form is
/// normalized: no breakpoint agrees with both neighbouring gaps, so equal sets
/// have equal representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CircleIntervalSet {
    breaks: Vec<Break>,
    /// membership of every point when there are no breakpoints
    full: bool,
}

#[inline]
fn cmpq(a: &QuadraticNumber, b: &QuadraticNumber) -> Ordering {
    a.compare(b).expect("circle points share one field")
}

fn check_unit(x: &QuadraticNumber, allow_one: bool) -> Result<(), AlgebraError> {
    let zero = QuadraticNumber::rational(Rational::ZERO, 2)?;
    let one = QuadraticNumber::rational(Rational::ONE, 2)?;
    let lo_ok = x.compare(&zero)? != Ordering::Less;
    let hi = x.compare(&one)?;
    if lo_ok && (hi == Ordering::Less || (allow_one && hi == Ordering::Equal)) {
        Ok(())
    } else {
        Err(AlgebraError::OutOfUnitInterval)
    }
}

impl CircleIntervalSet {
    pub fn empty() -> Self {
        CircleIntervalSet { breaks: Vec::new(), full: false }
    }

    pub fn full() -> Self {
        CircleIntervalSet { breaks: Vec::new(), full: true }
    }

    pub fn point(p: QuadraticNumber) -> Result<Self, AlgebraError> {
        check_unit(&p, false)?;
        Ok(CircleIntervalSet { breaks: alloc::vec![Break { at: p, point: true, after: false }], full: false })
    }

    pub fn from_arc(arc: &CircleArc) -> Result<Self, AlgebraError> {
        check_unit(&arc.lo, false)?;
        check_unit(&arc.hi, true)?;
        arc.lo.compare(&arc.hi)?;
        let lo = arc.lo;
        let hi = if arc.hi.compare(&QuadraticNumber::rational(Rational::ONE, 2)?)? == Ordering::Equal {
            QuadraticNumber::rational(Rational::ZERO, 2)?
        } else {
            arc.hi
        };
        let breaks = match cmpq(&lo, &hi) {
            Ordering::Equal => alloc::vec![Break { at: lo, point: arc.lo_closed || arc.hi_closed, after: true }],
            Ordering::Less => alloc::vec![
                Break { at: lo, point: arc.lo_closed, after: true },
                Break { at: hi, point: arc.hi_closed, after: false },
            ],
            Ordering::Greater => alloc::vec![
                Break { at: hi, point: arc.hi_closed, after: false },
                Break { at: lo, point: arc.lo_closed, after: true },
            ],
        };
        Ok(Self::normalized(breaks, false))
    }

    /// Union of the given arcs and points in normalized form.
    pub fn normalize(arcs: &[CircleArc], points: &[QuadraticNumber]) -> Result<Self, AlgebraError> {
        let mut out = Self::empty();
        for a in arcs {
            out = out.union(&Self::from_arc(a)?)?;
        }
        for p in points {
            out = out.union(&Self::point(*p)?)?;
        }
        Ok(out)
    }

    fn normalized(mut breaks: Vec<Break>, full: bool) -> Self {
        breaks.sort_by(|a, b| cmpq(&a.at, &b.at));
        let n = breaks.len();
        if n == 0 {
            return CircleIntervalSet { breaks, full };
        }
        let keep: Vec<bool> = (0..n)
            .map(|i| {
                let before = breaks[(i + n - 1) % n].after;
                !(breaks[i].point == before && breaks[i].after == before)
            })
            .collect();
        let full = breaks[0].after;
        let kept: Vec<Break> = breaks.into_iter().zip(keep).filter(|(_, k)| *k).map(|(b, _)| b).collect();
        if kept.is_empty() {
            CircleIntervalSet { breaks: kept, full }
        } else {
            CircleIntervalSet { breaks: kept, full: false }
        }
    }

    fn field(&self) -> Option<u32> {
        self.breaks.iter().find(|b| !b.at.is_rational()).map(|b| b.at.d())
    }

    fn check_field(&self, other: &Self) -> Result<(), AlgebraError> {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) if a != b => Err(AlgebraError::MismatchedField(a, b)),
            _ => Ok(()),
        }
    }

    /// `Ok(i)` if `p` is break `i`; `Err(j)` where break `j` opens the gap
    /// holding `p`.
    fn locate(&self, p: &QuadraticNumber) -> Result<usize, usize> {
        let n = self.breaks.len();
        match self.breaks.binary_search_by(|b| cmpq(&b.at, p)) {
            Ok(i) => Ok(i),
            Err(0) => Err(n - 1),
            Err(i) => Err(i - 1),
        }
    }

    fn before(&self, i: usize) -> bool {
        let n = self.breaks.len();
        self.breaks[(i + n - 1) % n].after
    }

    /// Membership of `p ∈ [0, 1)`; `p` must be in the set's field.
    pub fn contains(&self, p: &QuadraticNumber) -> bool {
        if self.breaks.is_empty() {
            return self.full;
        }
        match self.locate(p) {
            Ok(i) => self.breaks[i].point,
            Err(j) => self.breaks[j].after,
        }
    }

    /// Membership of points just counterclockwise of `p`.
    pub fn contains_right_of(&self, p: &QuadraticNumber) -> bool {
        if self.breaks.is_empty() {
            return self.full;
        }
        match self.locate(p) {
            Ok(i) => self.breaks[i].after,
            Err(j) => self.breaks[j].after,
        }
    }

    /// Membership of points just clockwise of `p`.
    pub fn contains_left_of(&self, p: &QuadraticNumber) -> bool {
        if self.breaks.is_empty() {
            return self.full;
        }
        match self.locate(p) {
            Ok(i) => self.before(i),
            Err(j) => self.breaks[j].after,
        }
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self, AlgebraError> {
        self.check_field(other)?;
        if self.breaks.is_empty() && other.breaks.is_empty() {
            return Ok(CircleIntervalSet { breaks: Vec::new(), full: op(self.full, other.full) });
        }
        let mut at: Vec<QuadraticNumber> = self.breaks.iter().chain(&other.breaks).map(|b| b.at).collect();
        at.sort_by(cmpq);
        at.dedup_by(|a, b| cmpq(a, b) == Ordering::Equal);
        let breaks = at
            .into_iter()
            .map(|p| Break {
                at: p,
                point: op(self.contains(&p), other.contains(&p)),
                after: op(self.contains_right_of(&p), other.contains_right_of(&p)),
            })
            .collect();
        Ok(Self::normalized(breaks, false))
    }

    pub fn union(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        CircleIntervalSet {
            breaks: self.breaks.iter().map(|b| Break { at: b.at, point: !b.point, after: !b.after }).collect(),
            full: self.breaks.is_empty() && !self.full,
        }
    }

    /// `{x : x + t ∈ self}`, i.e. the set rotated clockwise by `t`.
    pub fn rotate_back(&self, t: &QuadraticNumber) -> Result<Self, AlgebraError> {
        let mut breaks = Vec::with_capacity(self.breaks.len());
        for b in &self.breaks {
            breaks.push(Break { at: b.at.checked_sub(t)?.frac_part(), ..*b });
        }
        breaks.sort_by(|a, b| cmpq(&a.at, &b.at));
        Ok(CircleIntervalSet { breaks, full: self.full })
    }

    pub fn interior(&self) -> Self {
        let n = self.breaks.len();
        let breaks = (0..n)
            .map(|i| {
                let b = self.breaks[i];
                Break { point: b.point && b.after && self.before(i), ..b }
            })
            .collect();
        Self::normalized(breaks, self.full)
    }

    pub fn closure(&self) -> Self {
        let n = self.breaks.len();
        let breaks = (0..n)
            .map(|i| {
                let b = self.breaks[i];
                Break { point: b.point || b.after || self.before(i), ..b }
            })
            .collect();
        Self::normalized(breaks, self.full)
    }

    /// `closure ∖ interior`.
    pub fn boundary(&self) -> Self {
        self.closure().difference(&self.interior()).expect("same field")
    }

    pub fn is_empty(&self) -> bool {
        self.breaks.is_empty() && !self.full
    }

    pub fn is_full(&self) -> bool {
        self.breaks.is_empty() && self.full
    }

    pub fn has_interior(&self) -> bool {
        self.is_full() || self.breaks.iter().any(|b| b.after)
    }

    /// True for a nonempty set with no interior, i.e. finitely many points.
    pub fn is_finite_nonempty(&self) -> bool {
        !self.is_empty() && !self.has_interior()
    }

    /// All breakpoints (arc endpoints and isolated points), ascending.
    pub fn endpoints(&self) -> Vec<QuadraticNumber> {
        self.breaks.iter().map(|b| b.at).collect()
    }

    pub fn isolated_points(&self) -> Vec<QuadraticNumber> {
        (0..self.breaks.len())
            .filter(|&i| self.breaks[i].point && !self.breaks[i].after && !self.before(i))
            .map(|i| self.breaks[i].at)
            .collect()
    }

    /// Maximal arcs, each reported whole even when it wraps through 0.
    pub fn arcs(&self) -> Vec<CircleArc> {
        let zero = QuadraticNumber::rational(Rational::ZERO, 2).expect("2 is squarefree");
        let one = QuadraticNumber::rational(Rational::ONE, 2).expect("2 is squarefree");
        if self.breaks.is_empty() {
            return if self.full { alloc::vec![CircleArc::new(zero, true, one, false)] } else { Vec::new() };
        }
        let n = self.breaks.len();
        let mut out = Vec::new();
        for i in 0..n {
            let b = self.breaks[i];
            if !b.after || (b.point && self.before(i)) {
                continue;
            }
            let mut j = (i + 1) % n;
            while j != i && self.breaks[j].point && self.breaks[j].after {
                j = (j + 1) % n;
            }
            let end = self.breaks[j];
            let closed = if j == i { false } else { end.point };
            let hi = if end.at.is_zero() { one } else { end.at };
            out.push(CircleArc::new(b.at, b.point, hi, closed));
        }
        out
    }

    /// Length of the longest arc, as a float; 0 when there is no interior.
    pub fn longest_arc_f64(&self) -> f64 {
        self.arcs().iter().map(|a| a.length_f64()).fold(0.0, f64::max)
    }
}

impl fmt::Display for CircleIntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs = self.arcs();
        let points = self.isolated_points();
        if arcs.is_empty() && points.is_empty() {
            return f.write_str("{}");
        }
        let mut parts: Vec<(QuadraticNumber, alloc::string::String)> = Vec::new();
        for a in arcs {
            parts.push((a.lo, alloc::format!("{}", a)));
        }
        for p in points {
            parts.push((p, alloc::format!("{{{}}}", p)));
        }
        parts.sort_by(|a, b| cmpq(&a.0, &b.0));
        for (i, (_, s)) in parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" U ")?;
            }
            f.write_str(s)?;
        }
        Ok(())
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for CircleIntervalSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CircleIntervalSet", 3)?;
        st.serialize_field("text", &alloc::format!("{}", self))?;
        st.serialize_field("arcs", &self.arcs())?;
        st.serialize_field("points", &self.isolated_points())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> QuadraticNumber {
        QuadraticNumber::rational(Rational::new(n, d), 5).unwrap()
    }

    fn alpha() -> QuadraticNumber {
        QuadraticNumber::new(Rational::from(-2), Rational::ONE, 5).unwrap()
    }

    fn arc(lo: QuadraticNumber, lc: bool, hi: QuadraticNumber, hc: bool) -> CircleIntervalSet {
        CircleIntervalSet::from_arc(&CircleArc::new(lo, lc, hi, hc)).unwrap()
    }

    #[test]
    fn single_arc_is_kept() {
        let s = arc(r(0, 1), true, r(1, 7), false);
        assert_eq!(s.arcs(), alloc::vec![CircleArc::new(r(0, 1), true, r(1, 7), false)]);
        assert_eq!(alloc::format!("{}", s), "[0, 1/7)");
    }

    #[test]
    fn abutting_arcs_merge() {
        let s = CircleIntervalSet::normalize(
            &[CircleArc::new(r(0, 1), true, r(1, 4), true), CircleArc::new(r(1, 4), false, r(1, 2), false)],
            &[],
        )
        .unwrap();
        assert_eq!(s, arc(r(0, 1), true, r(1, 2), false));
        assert_eq!(s.endpoints().len(), 2);
    }

    #[test]
    fn wrapping_arc_reported_whole() {
        let s = arc(r(6, 7), false, r(1, 7), false);
        assert_eq!(s.arcs(), alloc::vec![CircleArc::new(r(6, 7), false, r(1, 7), false)]);
        assert!(s.contains(&r(0, 1)));
        assert!(!s.contains(&r(1, 2)));
        let upto_one = arc(r(6, 7), false, r(1, 1), false);
        assert!(!upto_one.contains(&r(0, 1)));
        assert_eq!(alloc::format!("{}", upto_one), "(6/7, 1)");
    }

    #[test]
    fn sturmian_locus_is_a_point() {
        let a = alpha();
        let cell = arc(a, true, a.scale(Rational::from(2)), true);
        let j = cell.intersection(&cell.rotate_back(&a).unwrap()).unwrap();
        assert!(j.is_finite_nonempty());
        assert_eq!(j.isolated_points(), alloc::vec![a]);
    }

    #[test]
    fn complement_interior_boundary() {
        let s = arc(r(1, 3), false, r(2, 3), false);
        let c = s.complement();
        assert!(c.contains(&r(1, 3)) && c.contains(&r(0, 1)));
        assert_eq!(c.union(&s).unwrap(), CircleIntervalSet::full());
        assert_eq!(c.complement(), s);
        assert_eq!(c, CircleIntervalSet::full().difference(&s).unwrap());
        assert_eq!(c.intersection(&s).unwrap(), CircleIntervalSet::empty());
        assert_eq!(s.boundary().isolated_points(), alloc::vec![r(1, 3), r(2, 3)]);
        let closed = arc(r(1, 3), true, r(2, 3), true);
        assert_eq!(closed.interior(), s);
        assert_eq!(s.closure(), closed);
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(CircleIntervalSet::point(r(1, 1)), Err(AlgebraError::OutOfUnitInterval));
        let other = QuadraticNumber::new(Rational::ZERO, Rational::new(1, 2), 2).unwrap();
        let s2 = CircleIntervalSet::point(other).unwrap();
        let s5 = CircleIntervalSet::point(alpha()).unwrap();
        assert_eq!(s2.union(&s5), Err(AlgebraError::MismatchedField(2, 5)));
    }
}
