use alloc::boxed::Box;
use alloc::vec::Vec;

use num_integer::Integer;

/// A subset of ℤ built from residue classes, half-lines and finite sets.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum SetExpr {
    Empty,
    All,
    /// `{n : n ≡ a (mod d)}`, `d ≥ 1`
    Progression { a: i64, d: i64 },
    /// `{n : n ≥ from}`
    HalfLine { from: i64 },
    /// sorted, deduplicated
    Finite(Vec<i64>),
    Union(Vec<SetExpr>),
    Inter(Vec<SetExpr>),
    Complement(Box<SetExpr>),
}

/// Bounds past which a sequence repeats: `s(n + period) = s(n)` for
/// `n ≥ threshold` and `s(n − period) = s(n)` for `n ≤ −threshold`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Tail {
    pub threshold: i64,
    pub period: i64,
}

/// Periods above this are not tracked.
pub const MAX_TAIL_PERIOD: i64 = 1 << 20;

impl Tail {
    pub(crate) fn join(self, other: Tail) -> Option<Tail> {
        let period = self.period.lcm(&other.period);
        (period <= MAX_TAIL_PERIOD).then_some(Tail { threshold: self.threshold.max(other.threshold), period })
    }
}

impl SetExpr {
    pub fn progression(a: i64, d: i64) -> Option<Self> {
        (d >= 1).then_some(SetExpr::Progression { a: a.rem_euclid(d), d })
    }

    pub fn finite(mut v: Vec<i64>) -> Self {
        v.sort_unstable();
        v.dedup();
        SetExpr::Finite(v)
    }

    pub fn complement(self) -> Self {
        SetExpr::Complement(Box::new(self))
    }

    pub fn contains(&self, n: i64) -> bool {
        match self {
            SetExpr::Empty => false,
            SetExpr::All => true,
            SetExpr::Progression { a, d } => n.rem_euclid(*d) == *a,
            SetExpr::HalfLine { from } => n >= *from,
            SetExpr::Finite(v) => v.binary_search(&n).is_ok(),
            SetExpr::Union(parts) => parts.iter().any(|p| p.contains(n)),
            SetExpr::Inter(parts) => parts.iter().all(|p| p.contains(n)),
            SetExpr::Complement(inner) => !inner.contains(n),
        }
    }

    pub fn tail(&self) -> Option<Tail> {
        match self {
            SetExpr::Empty | SetExpr::All => Some(Tail { threshold: 0, period: 1 }),
            SetExpr::Progression { d, .. } => (*d <= MAX_TAIL_PERIOD).then_some(Tail { threshold: 0, period: *d }),
            SetExpr::HalfLine { from } => Some(Tail { threshold: from.checked_abs()? + 1, period: 1 }),
            SetExpr::Finite(v) => {
                let m = v.iter().map(|x| x.checked_abs()).try_fold(0i64, |acc, x| x.map(|x| acc.max(x)))?;
                Some(Tail { threshold: m + 1, period: 1 })
            }
            SetExpr::Union(parts) | SetExpr::Inter(parts) => parts
                .iter()
                .try_fold(Tail { threshold: 0, period: 1 }, |acc, p| acc.join(p.tail()?)),
            SetExpr::Complement(inner) => inner.tail(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let evens_from_two = SetExpr::Inter(alloc::vec![
            SetExpr::progression(0, 2).unwrap(),
            SetExpr::HalfLine { from: 2 },
        ]);
        let got: Vec<bool> = (-2..=3).map(|n| evens_from_two.contains(n)).collect();
        assert_eq!(got, alloc::vec![false, false, false, false, true, false]);
        assert_eq!(SetExpr::progression(-1, 3), Some(SetExpr::Progression { a: 2, d: 3 }));
        let c = SetExpr::finite(alloc::vec![3, 1, 3]).complement();
        assert!(!c.contains(1) && c.contains(2));
    }

    #[test]
    fn tails() {
        let s = SetExpr::Union(alloc::vec![
            SetExpr::progression(1, 2).unwrap(),
            SetExpr::progression(0, 3).unwrap(),
            SetExpr::finite(alloc::vec![-7]),
        ]);
        assert_eq!(s.tail(), Some(Tail { threshold: 8, period: 6 }));
        assert_eq!(SetExpr::HalfLine { from: -4 }.tail(), Some(Tail { threshold: 5, period: 1 }));
    }
}
