use rug::{Integer, Rational};
use std::fmt::Debug;

/// Commutative ring with exact (or explicitly approximate) arithmetic.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync + 'static {
    /// False for floating-point carriers, where zero tests are only approximate.
    const EXACT: bool = true;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;

    /// `self / o` when the quotient exists in the ring.
    fn try_div(&self, o: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
    fn sub_assign(&mut self, o: &Self) {
        *self = self.sub(o);
    }
    fn mul_assign(&mut self, o: &Self) {
        *self = self.mul(o);
    }
    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
    fn powu(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
    /// Coarse magnitude used for pivot selection; exact rings only need zero/nonzero.
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Self;
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
}

/// Exact square roots when they exist in the ring.
pub trait ExactSqrt: Ring {
    fn exact_sqrt(&self) -> Option<Self>;
}

impl ExactSqrt for Rational {
    fn exact_sqrt(&self) -> Option<Self> {
        if self.cmp0().is_lt() {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        if n.is_perfect_square() && d.is_perfect_square() {
            Some(Rational::from((n.clone().sqrt(), d.clone().sqrt())))
        } else {
            None
        }
    }
}

/// Rings containing the rationals.
pub trait QAlgebra: Ring {
    fn from_rational(q: &Rational) -> Self;
    /// The rational value when the element is one.
    fn as_rational(&self) -> Option<Rational>;
}

impl Ring for Integer {
    fn zero() -> Self {
        Integer::new()
    }
    fn one() -> Self {
        Integer::from(1)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn add(&self, o: &Self) -> Self {
        Integer::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Integer::from(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Integer::from(self * o)
    }
    fn neg(&self) -> Self {
        Integer::from(-self)
    }
    fn from_i64(n: i64) -> Self {
        Integer::from(n)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        if self.is_divisible(o) {
            Some(Integer::from(self.div_exact_ref(o)))
        } else {
            None
        }
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_assign(&mut self, o: &Self) {
        *self *= o;
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn from_i64(n: i64) -> Self {
        Rational::from(n)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(Rational::from(self / o))
        }
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_assign(&mut self, o: &Self) {
        *self *= o;
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += Rational::from(a * b);
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        Rational::from(self.recip_ref())
    }
    fn div(&self, o: &Self) -> Self {
        Rational::from(self / o)
    }
}

impl QAlgebra for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// `p/q` convenience constructor.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::from((p, q))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: Integer = a.trim().parse().ok()?;
        let b: Integer = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(Rational::from((a, b)))
    } else {
        let a: Integer = s.parse().ok()?;
        Some(Rational::from(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms() {
        let q = rat(6, -4);
        assert_eq!(*q.numer(), -3);
        assert_eq!(*q.denom(), 2);
    }

    #[test]
    fn integer_div_exact() {
        assert_eq!(Integer::from(12).try_div(&Integer::from(4)), Some(Integer::from(3)));
        assert_eq!(Integer::from(12).try_div(&Integer::from(5)), None);
        assert_eq!(Integer::from(1).try_div(&Integer::new()), None);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/100"), Some(rat(1, 100)));
        assert_eq!(parse_rational("-7"), Some(rat(-7, 1)));
        assert_eq!(parse_rational("3/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(rat(2, 3).powu(5), rat(32, 243));
        assert_eq!(Integer::from(7).powu(0), Integer::from(1));
    }
}
