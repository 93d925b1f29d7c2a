use super::poly::Poly;
use super::ring::{QAlgebra, Ring};
use crate::error::{usage, Error, Result};
use rug::Rational;

/// Exponent offset `e` of a series `x^e Σ c_n x^n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, serde::Serialize)]
pub enum Offset {
    Zero,
    Half,
}

impl Offset {
    pub fn as_rational(self) -> Rational {
        match self {
            Offset::Zero => Rational::new(),
            Offset::Half => Rational::from((1, 2)),
        }
    }
}

/// `x^e · Σ_{n≤N} c_n x^n` with exact truncation bookkeeping.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<R: Ring> {
    c: Vec<R>,
    offset: Offset,
    var: char,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Pads or truncates `c` to `order + 1` coefficients.
    pub fn new(mut c: Vec<R>, order: usize) -> Self {
        c.resize(order + 1, R::zero());
        TruncatedSeries { c, offset: Offset::Zero, var: 'x' }
    }
    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }
    pub fn with_offset(mut self, offset: Offset) -> Self {
        self.offset = offset;
        self
    }
    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }
    pub fn one(order: usize) -> Self {
        Self::new(vec![R::one()], order)
    }
    pub fn constant(r: R, order: usize) -> Self {
        Self::new(vec![r], order)
    }
    pub fn from_poly(p: &Poly<R>, order: usize) -> Self {
        Self::new(p.coeffs().iter().take(order + 1).cloned().collect(), order)
    }
    /// Geometric series `Σ xⁿ`.
    pub fn geometric(order: usize) -> Self {
        Self::new(vec![R::one(); order + 1], order)
    }
    pub fn order(&self) -> usize {
        self.c.len() - 1
    }
    pub fn offset(&self) -> Offset {
        self.offset
    }
    pub fn var(&self) -> char {
        self.var
    }
    pub fn coeffs(&self) -> &[R] {
        &self.c
    }
    pub fn coeff(&self, n: usize) -> R {
        self.c.get(n).cloned().unwrap_or_else(R::zero)
    }
    pub fn set_coeff(&mut self, n: usize, r: R) {
        if n < self.c.len() {
            self.c[n] = r;
        }
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|a| a.is_zero())
    }
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }
    /// Drops to a lower truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise truncation order");
        TruncatedSeries { c: self.c[..=order].to_vec(), offset: self.offset, var: self.var }
    }
    pub fn to_poly(&self) -> Poly<R> {
        Poly::new(self.c.clone())
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.var != o.var {
            return usage(format!("series variables differ: {} vs {}", self.var, o.var));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        if self.offset != o.offset {
            return usage("adding series with different exponent offsets");
        }
        let n = self.order().min(o.order());
        let c = (0..=n).map(|i| self.c[i].add(&o.c[i])).collect();
        Ok(TruncatedSeries { c, offset: self.offset, var: self.var })
    }
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("incompatible series")
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        TruncatedSeries { c: self.c.iter().map(|a| a.neg()).collect(), offset: self.offset, var: self.var }
    }
    pub fn scale(&self, r: &R) -> Self {
        TruncatedSeries { c: self.c.iter().map(|a| a.mul(r)).collect(), offset: self.offset, var: self.var }
    }
    /// Product; two half offsets combine into one power of the variable.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let n = self.order().min(o.order());
        let mut c = vec![R::zero(); n + 1];
        for (i, a) in self.c.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().take(n + 1 - i).enumerate() {
                c[i + j].add_mul(a, b);
            }
        }
        let out = TruncatedSeries { c, offset: Offset::Zero, var: self.var };
        Ok(match (self.offset, o.offset) {
            (Offset::Zero, Offset::Zero) => out,
            (Offset::Half, Offset::Half) => out.shift(1),
            _ => out.with_offset(Offset::Half),
        })
    }
    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("incompatible series")
    }
    pub fn mul_poly(&self, p: &Poly<R>) -> Self {
        self.mul(&Self::from_poly(p, self.order()).with_var(self.var))
    }
    /// Multiplication by `x^k` keeping the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut c = vec![R::zero(); n + 1];
        for i in k..=n {
            c[i] = self.c[i - k].clone();
        }
        TruncatedSeries { c, offset: self.offset, var: self.var }
    }
    /// Division by `x^k`; the lost tail lowers the order.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if self.c[..k.min(self.c.len())].iter().any(|a| !a.is_zero()) || k > self.order() {
            return Err(Error::Domain(format!("series not divisible by {}^{k}", self.var)));
        }
        Ok(TruncatedSeries { c: self.c[k..].to_vec(), offset: self.offset, var: self.var })
    }
    pub fn hadamard(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        if self.offset != Offset::Zero || o.offset != Offset::Zero {
            return usage("Hadamard product requires zero exponent offsets");
        }
        let n = self.order().min(o.order());
        Ok(TruncatedSeries { c: (0..=n).map(|i| self.c[i].mul(&o.c[i])).collect(), offset: Offset::Zero, var: self.var })
    }
    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inv(&self) -> Result<Self> {
        let a0 = &self.c[0];
        let inv0 = R::one()
            .try_div(a0)
            .ok_or_else(|| Error::Domain("constant term is not a unit".into()))?;
        let n = self.order();
        let mut b: Vec<R> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for k in 1..=n {
            let mut s = R::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    s.add_mul(&self.c[j], &b[k - j]);
                }
            }
            b.push(s.mul(&inv0).neg());
        }
        Ok(TruncatedSeries { c: b, offset: Offset::Zero, var: self.var })
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        self.try_mul(&o.inv()?)
    }
    /// `self ∘ inner`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.c[0].is_zero() {
            return usage("inner series of a composition must have zero constant term");
        }
        if self.offset != Offset::Zero || inner.offset != Offset::Zero {
            return usage("composition requires zero exponent offsets");
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::zero(n).with_var(inner.var);
        for a in self.c[..=n].iter().rev() {
            acc = acc.mul(&inner);
            acc.c[0].add_assign(a);
        }
        Ok(acc)
    }
    /// Derivative of an offset-zero series; the order drops by one.
    pub fn derivative(&self) -> Self {
        assert_eq!(self.offset, Offset::Zero, "derivative of offset series");
        let n = self.order();
        if n == 0 {
            return Self::zero(0).with_var(self.var);
        }
        let c = (1..=n).map(|i| self.c[i].mul(&R::from_i64(i as i64))).collect();
        TruncatedSeries { c, offset: Offset::Zero, var: self.var }
    }
    /// Agreement of all coefficients up to the smaller order.
    pub fn eq_to_order(&self, o: &Self) -> bool {
        let n = self.order().min(o.order());
        self.offset == o.offset && (0..=n).all(|i| self.c[i] == o.c[i])
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries { c: self.c.iter().map(f).collect(), offset: self.offset, var: self.var }
    }
    /// Evaluation of the truncated sum at a point (offset ignored).
    pub fn eval_trunc(&self, x: &R) -> R {
        let mut acc = R::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }
}

impl<R: QAlgebra> TruncatedSeries<R> {
    /// `a^p` for constant term 1 by the binomial series recurrence `a·b' = p·a'·b`.
    pub fn pow_rational(&self, p: &Rational) -> Result<Self> {
        if !self.c[0].is_one() {
            return Err(Error::Domain("series_pow requires constant term 1".into()));
        }
        if self.offset != Offset::Zero {
            return usage("series_pow requires zero exponent offset");
        }
        let n = self.order();
        let mut b: Vec<R> = Vec::with_capacity(n + 1);
        b.push(R::one());
        for m in 1..=n {
            let mut s = R::zero();
            for k in 1..=m {
                if self.c[k].is_zero() {
                    continue;
                }
                let coef = Rational::from(p * Rational::from(k as i64)) - Rational::from((m - k) as i64);
                if coef.cmp0().is_eq() {
                    continue;
                }
                s.add_assign(&self.c[k].mul(&b[m - k]).mul(&R::from_rational(&coef)));
            }
            b.push(s.mul(&R::from_rational(&Rational::from((1, m as i64)))));
        }
        Ok(TruncatedSeries { c: b, offset: Offset::Zero, var: self.var })
    }
    pub fn sqrt(&self) -> Result<Self> {
        self.pow_rational(&Rational::from((1, 2)))
    }
    /// `exp(a)` for zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.c[0].is_zero() {
            return Err(Error::Domain("exp requires zero constant term".into()));
        }
        let n = self.order();
        let mut b: Vec<R> = Vec::with_capacity(n + 1);
        b.push(R::one());
        for m in 1..=n {
            let mut s = R::zero();
            for k in 1..=m {
                if !self.c[k].is_zero() {
                    s.add_assign(&self.c[k].mul(&b[m - k]).mul(&R::from_i64(k as i64)));
                }
            }
            b.push(s.mul(&R::from_rational(&Rational::from((1, m as i64)))));
        }
        Ok(TruncatedSeries { c: b, offset: Offset::Zero, var: self.var })
    }
    /// Primitive with zero constant term; the order grows by one.
    pub fn integral(&self) -> Self {
        assert_eq!(self.offset, Offset::Zero, "integral of offset series");
        let mut c = vec![R::zero()];
        for (i, a) in self.c.iter().enumerate() {
            c.push(a.mul(&R::from_rational(&Rational::from((1, i as i64 + 1)))));
        }
        TruncatedSeries { c, offset: Offset::Zero, var: self.var }
    }
}

/// Free-function forms matching the operation names used across the crate.
pub fn series_hadamard<R: Ring>(a: &TruncatedSeries<R>, b: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
    a.hadamard(b)
}

pub fn series_pow<R: QAlgebra>(a: &TruncatedSeries<R>, p: &Rational) -> Result<TruncatedSeries<R>> {
    a.pow_rational(p)
}

pub fn series_sqrt<R: QAlgebra>(a: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
    a.sqrt()
}

pub fn series_compose<R: Ring>(outer: &TruncatedSeries<R>, inner: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
    outer.compose(inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::ring::rat;
    use crate::exactcore::sequences::central_binomial;

    type S = TruncatedSeries<Rational>;

    fn s(v: &[i64], n: usize) -> S {
        S::new(v.iter().map(|&k| Rational::from(k)).collect(), n)
    }

    #[test]
    fn hadamard_geometric() {
        let g = S::geometric(10);
        assert_eq!(g.hadamard(&g).unwrap(), g);
        assert_eq!(s(&[1, 2], 1).hadamard(&s(&[3, 5], 1)).unwrap(), s(&[3, 10], 1));
    }

    #[test]
    fn hadamard_rejects_other_variable() {
        let a = S::geometric(3);
        let b = S::geometric(3).with_var('z');
        assert!(matches!(a.hadamard(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn inverse_sqrt_gives_central_binomials() {
        let a = s(&[1, -4], 20);
        let b = a.pow_rational(&rat(-1, 2)).unwrap();
        for n in 0..=20 {
            assert_eq!(b.coeff(n), Rational::from(central_binomial(n as u32)));
        }
    }

    #[test]
    fn eighth_root_is_integral() {
        let a = s(&[1, 16], 40);
        let b = a.pow_rational(&rat(1, 8)).unwrap();
        assert!(b.coeffs().iter().all(|c| *c.denom() == 1));
        assert_eq!(b.coeff(1), rat(2, 1));
    }

    #[test]
    fn pow_of_one_is_one() {
        let one = S::one(8);
        assert_eq!(one.sqrt().unwrap(), one);
        assert!(matches!(s(&[2, 1], 4).sqrt(), Err(Error::Domain(_))));
    }

    #[test]
    fn compose_examples() {
        let n = 9;
        // z/(1+z^2)
        let inner = s(&[0, 1], n).div(&s(&[1, 0, 1], n)).unwrap();
        let xs = s(&[0, 1], n);
        let out = xs.compose(&inner).unwrap();
        assert_eq!(out, s(&[0, 1, 0, -1, 0, 1, 0, -1, 0, 1], n));
        let ident = s(&[7, 3, -2, 5], n);
        assert_eq!(ident.compose(&xs).unwrap(), ident);
        let geo = S::geometric(n);
        let sq = s(&[0, 0, 1], n);
        assert_eq!(geo.compose(&sq).unwrap(), s(&[1, 0, 1, 0, 1, 0, 1, 0, 1, 0], n));
        assert!(geo.compose(&geo).is_err());
    }

    #[test]
    fn half_offsets_combine() {
        let a = S::one(5).with_offset(Offset::Half);
        let p = a.mul(&a);
        assert_eq!(p.offset(), Offset::Zero);
        assert_eq!(p, s(&[0, 1], 5));
    }

    #[test]
    fn exp_of_two_x() {
        let e = s(&[0, 2], 6).exp().unwrap();
        assert_eq!(e.coeff(3), rat(8, 6));
    }
}
