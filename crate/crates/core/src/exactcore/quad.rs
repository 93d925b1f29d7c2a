use super::ring::{Field, QAlgebra, Ring};
use rug::Rational;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

/// Minimal polynomial `α² = c1·α + c0` of a real quadratic generator.
pub trait QuadModulus: Clone + Copy + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    const C1: i64;
    const C0: i64;
    const NAME: &'static str;
    /// Numerical value of the chosen real root.
    fn alpha_f64() -> f64;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sqrt2;
impl QuadModulus for Sqrt2 {
    const C1: i64 = 0;
    const C0: i64 = 2;
    const NAME: &'static str = "sqrt2";
    fn alpha_f64() -> f64 {
        std::f64::consts::SQRT_2
    }
}

/// `α = ζ₅ + ζ₅⁻¹`, root of `α² + α − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Golden;
impl QuadModulus for Golden {
    const C1: i64 = -1;
    const C0: i64 = 1;
    const NAME: &'static str = "zeta5-trace";
    fn alpha_f64() -> f64 {
        (5f64.sqrt() - 1.0) / 2.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sqrt17;
impl QuadModulus for Sqrt17 {
    const C1: i64 = 0;
    const C0: i64 = 17;
    const NAME: &'static str = "sqrt17";
    fn alpha_f64() -> f64 {
        17f64.sqrt()
    }
}

/// `a + b·α` with rational `a, b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad<M: QuadModulus> {
    pub a: Rational,
    pub b: Rational,
    _m: PhantomData<M>,
}

impl<M: QuadModulus> Quad<M> {
    pub fn new(a: Rational, b: Rational) -> Self {
        Quad { a, b, _m: PhantomData }
    }
    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(Rational::from(a), Rational::from(b))
    }
    pub fn alpha() -> Self {
        Self::from_ints(0, 1)
    }
    /// Galois conjugate `α ↦ c1 − α`.
    pub fn conj(&self) -> Self {
        Self::new(Rational::from(&self.a + Rational::from(&self.b * M::C1)), Rational::from(-&self.b))
    }
    pub fn norm(&self) -> Rational {
        let p = self.mul(&self.conj());
        debug_assert!(p.b.cmp0().is_eq());
        p.a
    }
    pub fn trace(&self) -> Rational {
        self.add(&self.conj()).a
    }
    /// Membership in `ℤ[α]`.
    pub fn is_integral(&self) -> bool {
        *self.a.denom() == 1 && *self.b.denom() == 1
    }
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * M::alpha_f64()
    }
}

impl<M: QuadModulus> fmt::Debug for Quad<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<M: QuadModulus> fmt::Display for Quad<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.cmp0().is_eq() {
            write!(f, "{}", self.a)
        } else if self.a.cmp0().is_eq() {
            write!(f, "{}*a", self.b)
        } else {
            write!(f, "{}+{}*a", self.a, self.b)
        }
    }
}

impl<M: QuadModulus> Ring for Quad<M> {
    fn zero() -> Self {
        Self::from_ints(0, 0)
    }
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
    fn is_zero(&self) -> bool {
        self.a.cmp0().is_eq() && self.b.cmp0().is_eq()
    }
    fn add(&self, o: &Self) -> Self {
        Self::new(Rational::from(&self.a + &o.a), Rational::from(&self.b + &o.b))
    }
    fn sub(&self, o: &Self) -> Self {
        Self::new(Rational::from(&self.a - &o.a), Rational::from(&self.b - &o.b))
    }
    fn mul(&self, o: &Self) -> Self {
        // (a + bα)(c + dα) = ac + c0·bd + (ad + bc + c1·bd)α
        let bd = Rational::from(&self.b * &o.b);
        let a = Rational::from(&self.a * &o.a) + Rational::from(&bd * M::C0);
        let b = Rational::from(&self.a * &o.b) + Rational::from(&self.b * &o.a) + Rational::from(&bd * M::C1);
        Self::new(a, b)
    }
    fn neg(&self) -> Self {
        Self::new(Rational::from(-&self.a), Rational::from(-&self.b))
    }
    fn from_i64(n: i64) -> Self {
        Self::from_ints(n, 0)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(self.mul(&o.inv()))
        }
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl<M: QuadModulus> Field for Quad<M> {
    fn inv(&self) -> Self {
        let n = self.norm();
        let c = self.conj();
        Self::new(Rational::from(&c.a / &n), Rational::from(&c.b / &n))
    }
}

impl<M: QuadModulus> QAlgebra for Quad<M> {
    fn from_rational(q: &Rational) -> Self {
        Self::new(q.clone(), Rational::new())
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.b.cmp0().is_eq() {
            Some(self.a.clone())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_squares() {
        let a = Quad::<Sqrt2>::alpha();
        assert_eq!(a.mul(&a), Quad::from_ints(2, 0));
        let g = Quad::<Golden>::alpha();
        assert_eq!(g.mul(&g), Quad::from_ints(1, -1));
        let s = Quad::<Sqrt17>::alpha();
        assert_eq!(s.mul(&s), Quad::from_ints(17, 0));
    }

    #[test]
    fn conjugation_is_ring_involution() {
        let x = Quad::<Golden>::from_ints(3, -2);
        let y = Quad::<Golden>::from_ints(-1, 5);
        assert_eq!(x.conj().conj(), x);
        assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
        assert_eq!(x.add(&y).conj(), x.conj().add(&y.conj()));
    }

    #[test]
    fn inverse() {
        let x = Quad::<Sqrt2>::from_ints(1, 1);
        assert_eq!(x.inv(), Quad::from_ints(-1, 1));
        assert_eq!(x.mul(&x.inv()), Quad::one());
    }

    #[test]
    fn golden_root_value() {
        let g = Quad::<Golden>::alpha();
        let v = g.to_f64();
        assert!((v * v + v - 1.0).abs() < 1e-15);
    }
}
