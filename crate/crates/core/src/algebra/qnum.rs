//! Exact elements `u + v·√d` of a real quadratic field ℚ(√d).

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Roots;

use super::rational::Rational;
use super::AlgebraError;

/// An element `u + v·√d` of ℚ(√d), `d >= 2` squarefree.
///
/// A value with `v = 0` is a rational embedded in the field; it combines with
/// elements of any field. Two values with `v != 0` must share `d`.
#[derive(Clone, Copy)]
pub struct QuadraticNumber {
    u: Rational,
    v: Rational,
    d: u32,
}

/// Returns true if `d >= 2` and no prime square divides `d`.
pub fn is_squarefree(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k: u32 = 2;
    while (k as u64) * (k as u64) <= d as u64 {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadraticNumber {
    pub fn new(u: Rational, v: Rational, d: u32) -> Result<Self, AlgebraError> {
        if !is_squarefree(d) {
            return Err(AlgebraError::NotSquarefree(d));
        }
        Ok(QuadraticNumber { u, v, d })
    }

    pub fn rational(u: Rational, d: u32) -> Result<Self, AlgebraError> {
        Self::new(u, Rational::ZERO, d)
    }

    pub fn integer(n: i64, d: u32) -> Result<Self, AlgebraError> {
        Self::new(Rational::from(n), Rational::ZERO, d)
    }

    /// `√d`.
    pub fn sqrt(d: u32) -> Result<Self, AlgebraError> {
        Self::new(Rational::ZERO, Rational::ONE, d)
    }

    pub fn u(&self) -> Rational {
        self.u
    }

    pub fn v(&self) -> Rational {
        self.v
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    fn common_d(&self, other: &Self) -> Result<u32, AlgebraError> {
        if self.d == other.d || other.v.is_zero() {
            Ok(self.d)
        } else if self.v.is_zero() {
            Ok(other.d)
        } else {
            Err(AlgebraError::MismatchedField(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        let d = self.common_d(other)?;
        Ok(QuadraticNumber { u: self.u + other.u, v: self.v + other.v, d })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-*other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let d = self.common_d(other)?;
        let dr = Rational::from_integer(d as i128);
        Ok(QuadraticNumber {
            u: self.u * other.u + self.v * other.v * dr,
            v: self.u * other.v + self.v * other.u,
            d,
        })
    }

    pub fn scale(&self, k: Rational) -> Self {
        QuadraticNumber { u: self.u * k, v: self.v * k, d: self.d }
    }

    pub fn add_rational(&self, k: Rational) -> Self {
        QuadraticNumber { u: self.u + k, v: self.v, d: self.d }
    }

    /// Sign of the real embedding, decided with integer arithmetic only.
    pub fn signum(&self) -> i32 {
        let (su, sv) = (self.u.signum(), self.v.signum());
        if sv == 0 {
            return su;
        }
        if su == 0 || su == sv {
            return sv;
        }
        // opposite signs: compare u^2 with v^2 d
        let dr = Rational::from_integer(self.d as i128);
        match (self.u * self.u).cmp(&(self.v * self.v * dr)) {
            Ordering::Greater => su,
            Ordering::Less => sv,
            Ordering::Equal => 0,
        }
    }

    /// Exact comparison of real embeddings.
    pub fn compare(&self, other: &Self) -> Result<Ordering, AlgebraError> {
        let diff = self.checked_sub(other)?;
        Ok(diff.signum().cmp(&0))
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> i128 {
        if self.v.is_zero() {
            return self.u.floor();
        }
        // |v|·√d = √(r²d)/s; integer square roots give a guess within a few units
        let r = self.v.numer().unsigned_abs();
        let s = self.v.denom().unsigned_abs();
        let rad = r
            .checked_mul(r)
            .and_then(|x| x.checked_mul(self.d as u128))
            .expect("quadratic floor overflowed");
        let approx = (rad.sqrt() / s) as i128;
        let mut guess = self.u.floor() + if self.v.signum() > 0 { approx } else { -approx };
        while self.add_rational(Rational::from_integer(-guess)).signum() < 0 {
            guess -= 1;
        }
        while self.add_rational(Rational::from_integer(-(guess + 1))).signum() >= 0 {
            guess += 1;
        }
        guess
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn frac_part(&self) -> Self {
        self.add_rational(Rational::from_integer(-self.floor()))
    }

    /// Decimal approximation, for diagnostics and cross-checks only.
    pub fn to_f64(&self) -> f64 {
        let u = self.u.numer() as f64 / self.u.denom() as f64;
        let v = self.v.numer() as f64 / self.v.denom() as f64;
        u + v * libm_sqrt(self.d as f64)
    }
}

fn libm_sqrt(x: f64) -> f64 {
    // Newton iteration; no_std has no f64::sqrt
    if x == 0.0 {
        return 0.0;
    }
    let mut y = x.max(1.0);
    for _ in 0..64 {
        y = 0.5 * (y + x / y);
    }
    y
}

/// `frac_part` as a free function.
pub fn frac_part(x: &QuadraticNumber) -> QuadraticNumber {
    x.frac_part()
}

/// Exact three-way comparison; both sides must live in the same field.
pub fn qnum_compare(x: &QuadraticNumber, y: &QuadraticNumber) -> Result<Ordering, AlgebraError> {
    x.compare(y)
}

/// The unique `n` with `n·α - p ∈ ℤ`, if any.
///
/// Writing `α = a + b√d` and `p = u + v√d`, the irrational parts force
/// `n = v / b`; that candidate is accepted when it is an integer and
/// `n·a - u` is an integer.
pub fn solve_hit(alpha: &QuadraticNumber, p: &QuadraticNumber) -> Result<Option<i64>, AlgebraError> {
    if alpha.is_rational() {
        return Err(AlgebraError::RationalAlpha);
    }
    alpha.common_d(p)?;
    let n = p.v / alpha.v;
    if !n.is_integer() {
        return Ok(None);
    }
    let rest = n * alpha.u - p.u;
    if !rest.is_integer() {
        return Ok(None);
    }
    Ok(i64::try_from(n.numer()).ok())
}

// rationals compare equal whatever field they were built in
impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u && self.v == other.v && (self.v.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadraticNumber {}

impl core::hash::Hash for QuadraticNumber {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.u.hash(state);
        self.v.hash(state);
        if !self.v.is_zero() {
            self.d.hash(state);
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for QuadraticNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Add for QuadraticNumber {
    type Output = QuadraticNumber;
    /// Panics on mismatched fields; use [`QuadraticNumber::checked_add`] otherwise.
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("mismatched quadratic fields")
    }
}

impl Sub for QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("mismatched quadratic fields")
    }
}

impl Mul for QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("mismatched quadratic fields")
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> Self {
        QuadraticNumber { u: -self.u, v: -self.v, d: self.d }
    }
}

impl PartialOrd for QuadraticNumber {
    /// `None` only for mismatched fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

impl fmt::Display for QuadraticNumber {
    /// Renders in the scenario grammar, e.g. `-2+sqrt(5)` or `1/7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        if !self.u.is_zero() {
            write!(f, "{}", self.u)?;
            if self.v.signum() > 0 {
                f.write_str("+")?;
            }
        }
        if self.v.signum() < 0 {
            f.write_str("-")?;
        }
        let av = self.v.abs();
        if av != Rational::ONE {
            write!(f, "{}*", av)?;
        }
        write!(f, "sqrt({})", self.d)
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(u: (i128, i128), v: (i128, i128)) -> QuadraticNumber {
        QuadraticNumber::new(Rational::new(u.0, u.1), Rational::new(v.0, v.1), 5).unwrap()
    }

    fn alpha() -> QuadraticNumber {
        q((-2, 1), (1, 1))
    }

    #[test]
    fn compare_examples() {
        let seventh = q((1, 7), (0, 1));
        assert_eq!(qnum_compare(&alpha(), &seventh).unwrap(), Ordering::Greater);
        assert_eq!(qnum_compare(&alpha(), &alpha()).unwrap(), Ordering::Equal);
        let two_alpha = alpha().scale(Rational::from_integer(2));
        assert_eq!(qnum_compare(&two_alpha, &q((1, 2), (0, 1))).unwrap(), Ordering::Less);
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = QuadraticNumber::sqrt(5).unwrap();
        let b = QuadraticNumber::sqrt(3).unwrap();
        assert_eq!(qnum_compare(&a, &b), Err(AlgebraError::MismatchedField(5, 3)));
        // rationals embed in every field
        let r = QuadraticNumber::integer(2, 3).unwrap();
        assert_eq!(qnum_compare(&a, &r).unwrap(), Ordering::Greater);
    }

    #[test]
    fn frac_part_examples() {
        assert_eq!(q((3, 2), (0, 1)).frac_part(), q((1, 2), (0, 1)));
        let two_alpha = alpha().scale(Rational::from_integer(2));
        assert_eq!(two_alpha.frac_part(), two_alpha);
        let five_alpha = alpha().scale(Rational::from_integer(5));
        assert_eq!(five_alpha.frac_part(), q((-11, 1), (5, 1)));
        assert_eq!(q((0, 1), (-3, 1)).floor(), -7);
    }

    #[test]
    fn solve_hit_examples() {
        assert_eq!(solve_hit(&alpha(), &alpha()).unwrap(), Some(1));
        assert_eq!(solve_hit(&alpha(), &q((1, 7), (0, 1))).unwrap(), None);
        assert_eq!(solve_hit(&alpha(), &q((0, 1), (0, 1))).unwrap(), Some(0));
        assert_eq!(
            solve_hit(&q((1, 2), (0, 1)), &alpha()),
            Err(AlgebraError::RationalAlpha)
        );
    }

    #[test]
    fn display_uses_scenario_grammar() {
        assert_eq!(alpha().to_string(), "-2+sqrt(5)");
        assert_eq!(q((0, 1), (-1, 2)).to_string(), "-1/2*sqrt(5)");
        assert_eq!(q((6, 7), (0, 1)).to_string(), "6/7");
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(5));
        assert!(is_squarefree(6));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(1));
    }
}
