use super::poly::Poly;
use super::ring::{ExactSqrt, Field, QAlgebra, Ring};
use rug::Rational;

/// Element of `K(t)`, kept reduced with a monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<K: Field> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RatFunc<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let (num, den) = if den.deg() == 0 {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.deg() > 0 {
                (num.divrem(&g).0, den.divrem(&g).0)
            } else {
                (num, den)
            }
        };
        let l = den.lead().inv();
        RatFunc { num: num.scale(&l), den: den.scale(&l) }
    }
    pub fn from_poly(p: Poly<K>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }
    pub fn num(&self) -> &Poly<K> {
        &self.num
    }
    pub fn den(&self) -> &Poly<K> {
        &self.den
    }
    pub fn is_poly(&self) -> bool {
        self.den.deg() == 0
    }
    /// Value at a point; `None` at a pole.
    pub fn eval(&self, t: &K) -> Option<K> {
        let d = self.den.eval(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t).div(&d))
        }
    }
    pub fn derivative(&self) -> Self {
        if self.is_poly() {
            return Self::new(self.num.derivative(), self.den.clone());
        }
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den))
    }
    /// `p(self)` without intermediate reductions.
    pub fn compose_into(p: &Poly<K>, inner: &Self) -> Self {
        let d = match p.degree() {
            None => return Self::zero(),
            Some(d) => d,
        };
        let mut num = Poly::zero();
        let mut npow = Poly::one();
        let mut dpows = vec![Poly::one()];
        for k in 1..=d {
            let next = dpows[k - 1].mul(&inner.den);
            dpows.push(next);
        }
        for k in 0..=d {
            let c = p.coeff(k);
            if !c.is_zero() {
                num = num.add(&npow.mul(&dpows[d - k]).scale(&c));
            }
            if k < d {
                npow = npow.mul(&inner.num);
            }
        }
        Self::new(num, dpows[d].clone())
    }
    /// `self(inner)` for a rational inner function.
    pub fn compose(&self, inner: &Self) -> Self {
        Self::compose_into(&self.num, inner).mul(&Self::compose_into(&self.den, inner).inv())
    }
    /// `t ↦ −t`.
    pub fn reflect(&self) -> Self {
        let f = |p: &Poly<K>| {
            Poly::new(
                p.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 1 { c.neg() } else { c.clone() })
                    .collect(),
            )
        };
        Self::new(f(&self.num), f(&self.den))
    }
}

impl<K: Field> Ring for RatFunc<K> {
    const EXACT: bool = K::EXACT;
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_poly() && o.is_poly() {
            let s = self.den.lead().mul(&o.den.lead()).inv();
            return RatFunc { num: self.num.mul(&o.num).scale(&s), den: Poly::one() };
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_i64(n: i64) -> Self {
        Self::from_poly(Poly::constant(K::from_i64(n)))
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(self.mul(&o.inv()))
        }
    }
}

impl<K: Field> Field for RatFunc<K> {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl<K: Field + QAlgebra> QAlgebra for RatFunc<K> {
    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(Poly::constant(K::from_rational(q)))
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.num.deg() <= 0 && self.den.deg() == 0 {
            self.num.coeff(0).div(&self.den.coeff(0)).as_rational()
        } else {
            None
        }
    }
}

pub type QT = RatFunc<Rational>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::ring::rat;

    #[test]
    fn reduces_to_lowest_terms() {
        let t = QT::var();
        let one = QT::one();
        let a = t.mul(&t).sub(&one); // t^2 - 1
        let b = t.sub(&one);
        let q = a.div(&b);
        assert_eq!(q, t.add(&one));
        assert!(q.is_poly());
    }

    #[test]
    fn field_identities() {
        let t = QT::var();
        let x = t.add(&QT::from_i64(3)).div(&t.mul(&t).add(&QT::one()));
        assert_eq!(x.mul(&x.inv()), QT::one());
        assert_eq!(x.eval(&rat(1, 1)), Some(rat(2, 1)));
        assert_eq!(x.reflect().eval(&rat(-1, 1)), Some(rat(2, 1)));
    }
}

impl<K: Field + ExactSqrt> ExactSqrt for RatFunc<K> {
    fn exact_sqrt(&self) -> Option<Self> {
        Some(Self::new(self.num.exact_sqrt()?, self.den.exact_sqrt()?))
    }
}
