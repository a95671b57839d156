//! The group ℤ/3ℤ × B, with B the countable Boolean group of finite subsets of
//! the positive integers under symmetric difference.

use alloc::vec::Vec;
use core::fmt;

use super::AlgebraError;

/// `(r, s)` with `r ∈ ℤ/3ℤ` and `s` a finite set of positive indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Z3BElement {
    r: u8,
    support: Vec<u32>,
}

impl Z3BElement {
    pub fn new(r: u8, mut support: Vec<u32>) -> Result<Self, AlgebraError> {
        if r >= 3 {
            return Err(AlgebraError::InvalidZ3B("r must be 0, 1 or 2"));
        }
        if support.contains(&0) {
            return Err(AlgebraError::InvalidZ3B("support indices start at 1"));
        }
        support.sort_unstable();
        let before = support.len();
        support.dedup();
        if support.len() != before {
            return Err(AlgebraError::InvalidZ3B("duplicate support index"));
        }
        Ok(Z3BElement { r, support })
    }

    pub fn identity() -> Self {
        Z3BElement { r: 0, support: Vec::new() }
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn is_identity(&self) -> bool {
        self.r == 0 && self.support.is_empty()
    }

    /// `(r + r' mod 3, s △ s')`.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.support, &other.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Z3BElement { r: (self.r + other.r) % 3, support: out }
    }

    pub fn inverse(&self) -> Self {
        Z3BElement { r: (3 - self.r) % 3, support: self.support.clone() }
    }

    /// Length `m` if the support is exactly `{1, .., m}` with `m >= 1`.
    fn initial_segment(&self) -> Option<u32> {
        let m = self.support.len() as u32;
        (m >= 1 && self.support.iter().enumerate().all(|(i, &x)| x == i as u32 + 1)).then_some(m)
    }
}

/// The witness function on ℤ/3ℤ × B: `0` at the identity, `1` on `(1, {1..2k})`
/// for `k >= 1` and on `(2, {1..2k+1})` for `k >= 0`, `-1` elsewhere.
pub fn z3b_f(g: &Z3BElement) -> i8 {
    if g.is_identity() {
        return 0;
    }
    match (g.r, g.initial_segment()) {
        (1, Some(m)) if m % 2 == 0 => 1,
        (2, Some(m)) if m % 2 == 1 => 1,
        _ => -1,
    }
}

impl fmt::Display for Z3BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{", self.r)?;
        for (i, s) in self.support.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", s)?;
        }
        f.write_str("})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn el(r: u8, s: &[u32]) -> Z3BElement {
        Z3BElement::new(r, s.to_vec()).unwrap()
    }

    #[test]
    fn witness_function_values() {
        assert_eq!(z3b_f(&Z3BElement::identity()), 0);
        assert_eq!(z3b_f(&el(1, &[1, 2])), 1);
        assert_eq!(z3b_f(&el(1, &[1, 3])), -1);
        assert_eq!(z3b_f(&el(2, &[1])), 1);
        assert_eq!(z3b_f(&el(2, &[1, 2, 3])), 1);
        assert_eq!(z3b_f(&el(2, &[1, 2])), -1);
        assert_eq!(z3b_f(&el(1, &[])), -1);
        assert_eq!(z3b_f(&el(0, &[1, 2])), -1);
    }

    #[test]
    fn group_law() {
        let x = el(1, &[1, 3]);
        let y = el(2, &[3, 4]);
        assert_eq!(x.mul(&y), el(0, &[1, 4]));
        assert!(x.mul(&x.inverse()).is_identity());
    }

    #[test]
    fn rejects_bad_elements() {
        assert!(Z3BElement::new(3, vec![]).is_err());
        assert!(Z3BElement::new(0, vec![0]).is_err());
        assert!(Z3BElement::new(0, vec![2, 2]).is_err());
    }
}
