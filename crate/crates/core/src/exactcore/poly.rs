use super::ring::{ExactSqrt, Field, QAlgebra, Ring};
use rug::{Integer, Rational};
use std::fmt;

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<R: Ring> {
    c: Vec<R>,
}

pub type UniPoly = Poly<Rational>;
pub type IntPoly = Poly<Integer>;

impl<R: Ring> Poly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    pub fn one() -> Self {
        Self::constant(R::one())
    }
    pub fn constant(r: R) -> Self {
        Self::new(vec![r])
    }
    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(1, R::one())
    }
    pub fn monomial(deg: usize, r: R) -> Self {
        let mut c = vec![R::zero(); deg + 1];
        c[deg] = r;
        Self::new(c)
    }
    /// From small integer coefficients, ascending.
    pub fn from_i64s(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&n| R::from_i64(n)).collect())
    }
    pub fn coeffs(&self) -> &[R] {
        &self.c
    }
    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }
    pub fn lead(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }
    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(c)
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        Poly { c: self.c.iter().map(|a| a.neg()).collect() }
    }
    pub fn scale(&self, r: &R) -> Self {
        Self::new(self.c.iter().map(|a| a.mul(r)).collect())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j].add_mul(a, b);
            }
        }
        Self::new(c)
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }
    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&R::from_i64(i as i64)))
                .collect(),
        )
    }
    /// `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(a.clone()));
        }
        acc
    }
    /// `self(x0 + x)`.
    pub fn taylor_shift(&self, x0: &R) -> Self {
        self.compose(&Self::new(vec![x0.clone(), R::one()]))
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.c.iter().map(f).collect())
    }
    /// Truncation to degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.c.iter().take(n).cloned().collect())
    }
    /// `p(x) -> x^deg p(1/x)` with the given nominal degree.
    pub fn reverse(&self, deg: usize) -> Self {
        let mut c = vec![R::zero(); deg + 1];
        for (i, a) in self.c.iter().enumerate() {
            assert!(i <= deg, "reverse: degree exceeds nominal degree");
            c[deg - i] = a.clone();
        }
        Self::new(c)
    }

    /// Exact division; `None` when the divisor does not divide in `R[x]`.
    pub fn try_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = d.c.len() - 1;
        if self.c.len() - 1 < dd {
            return None;
        }
        let lc = d.lead();
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let f = top.try_div(&lc)?;
            for (j, b) in d.c.iter().enumerate() {
                r[k + j].sub_assign(&f.mul(b));
            }
            q[k] = f;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    pub fn fmt_var(&self, var: &str) -> String
    where
        R: fmt::Display,
    {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                parts.push(format!("({a})"));
            } else if a.is_one() {
                parts.push(mono);
            } else {
                parts.push(format!("({a})*{mono}"));
            }
        }
        parts.join(" + ")
    }
}

impl<R: Field> Poly<R> {
    /// Euclidean division.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.c.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let dd = d.c.len() - 1;
        let inv = d.lead().inv();
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = r[k + dd].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j].sub_assign(&f.mul(b));
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().inv())
    }
    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        self.mul(o).divrem(&self.gcd(o)).0.monic()
    }
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<R: Field + ExactSqrt> ExactSqrt for Poly<R> {
    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.degree().unwrap();
        if n % 2 == 1 {
            return None;
        }
        let d = n / 2;
        let mut q = vec![R::zero(); d + 1];
        q[d] = self.lead().exact_sqrt()?;
        let two_lead = q[d].add(&q[d]);
        for k in 1..=d {
            let mut acc = self.coeff(n - k);
            for i in (d - k + 1)..d {
                let j = n - k - i;
                if j > d - k && j < d {
                    acc.sub_assign(&q[i].mul(&q[j]));
                }
            }
            q[d - k] = acc.div(&two_lead);
        }
        let q = Poly::new(q);
        (q.mul(&q) == *self).then_some(q)
    }
}

impl<R: QAlgebra> Poly<R> {
    pub fn from_rationals(v: &[Rational]) -> Self {
        Self::new(v.iter().map(R::from_rational).collect())
    }
    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut c = vec![R::zero()];
        for (i, a) in self.c.iter().enumerate() {
            c.push(a.mul(&R::from_rational(&Rational::from((1, i as i64 + 1)))));
        }
        Self::new(c)
    }
}

impl Poly<Integer> {
    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for a in &self.c {
            g.gcd_mut(a);
        }
        g
    }
    pub fn to_rational(&self) -> UniPoly {
        self.map(|a| Rational::from(a.clone()))
    }
}

impl Poly<Rational> {
    /// Integer coefficients when all coefficients are integral.
    pub fn to_integer(&self) -> Option<IntPoly> {
        let mut c = Vec::with_capacity(self.c.len());
        for a in &self.c {
            if *a.denom() != 1 {
                return None;
            }
            c.push(a.numer().clone());
        }
        Some(Poly::new(c))
    }
    /// Least common denominator of the coefficients.
    pub fn denominator_lcm(&self) -> Integer {
        let mut l = Integer::from(1);
        for a in &self.c {
            l.lcm_mut(a.denom());
        }
        l
    }
    /// Rational roots by the rational root test.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        let mut p = self.clone();
        if let Some(v) = p.valuation() {
            if v > 0 {
                out.push(Rational::new());
                p = Poly::new(p.c[v..].to_vec());
            }
        }
        let l = p.denominator_lcm();
        let ip = p.scale(&Rational::from(l)).to_integer().unwrap();
        let ip = {
            let g = ip.content();
            ip.map(|a| Integer::from(a.div_exact_ref(&g)))
        };
        if ip.deg() < 1 {
            return out;
        }
        let a0 = ip.coeff(0).abs();
        let an = ip.lead().abs();
        let da = small_divisors(&a0);
        let dn = small_divisors(&an);
        let mut cands: Vec<Rational> = Vec::new();
        for p0 in &da {
            for q0 in &dn {
                let r = Rational::from((p0.clone(), q0.clone()));
                cands.push(r.clone());
                cands.push(Rational::from(-r));
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            if self.eval(&r).is_zero() {
                out.push(r);
            }
        }
        out
    }
}

/// Positive divisors by trial division (inputs here are small).
fn small_divisors(n: &Integer) -> Vec<Integer> {
    let n = n.clone().abs();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut d = Integer::from(1);
    while Integer::from(&d * &d) <= n {
        if n.is_divisible(&d) {
            out.push(d.clone());
            let e = Integer::from(n.div_exact_ref(&d));
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

impl<R: Ring> Ring for Poly<R> {
    const EXACT: bool = R::EXACT;
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn from_i64(n: i64) -> Self {
        Poly::constant(R::from_i64(n))
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        Poly::try_div(self, o)
    }
}

impl<R: QAlgebra> QAlgebra for Poly<R> {
    fn from_rational(q: &Rational) -> Self {
        Poly::constant(R::from_rational(q))
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.c.len() {
            0 => Some(Rational::new()),
            1 => self.c[0].as_rational(),
            _ => None,
        }
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::ring::rat;

    fn q(v: &[i64]) -> UniPoly {
        Poly::from_i64s(v)
    }

    #[test]
    fn exact_sqrt_of_square() {
        let a = q(&[3, -1, 0, 2]);
        let sq = a.mul(&a);
        let r = sq.exact_sqrt().unwrap();
        assert!(r == a || r == a.neg());
        assert!(q(&[1, 0, 1]).exact_sqrt().is_none());
        assert_eq!(q(&[0, 0, 9]).exact_sqrt(), Some(q(&[0, 3])));
    }

    #[test]
    fn degree_and_trim() {
        let p = Poly::new(vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(UniPoly::zero().degree(), None);
    }

    #[test]
    fn divrem_roundtrip() {
        let a = q(&[3, -1, 4, 1, -5, 9]);
        let b = q(&[2, 0, 7]);
        let (qq, r) = a.divrem(&b);
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_of_products() {
        let f = q(&[-1, 1]);
        let g = q(&[2, 0, 1]);
        let h = q(&[5, 3]);
        let a = f.mul(&g);
        let b = f.mul(&h);
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn exact_division_over_integers() {
        let a: IntPoly = Poly::from_i64s(&[-1, 0, 1]);
        let b: IntPoly = Poly::from_i64s(&[1, 1]);
        assert_eq!(a.try_div(&b), Some(Poly::from_i64s(&[-1, 1])));
        let c: IntPoly = Poly::from_i64s(&[1, 2]);
        assert_eq!(a.try_div(&c), None);
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let p = q(&[1, -2, 0, 3]);
        let s = p.taylor_shift(&rat(2, 3));
        assert_eq!(s.eval(&rat(1, 5)), p.eval(&rat(13, 15)));
    }

    #[test]
    fn rational_roots_found() {
        // (2x-1)(x+3)x
        let p = q(&[0, -3, 5, 2]);
        let mut r = p.rational_roots();
        r.sort();
        assert_eq!(r, vec![rat(-3, 1), rat(0, 1), rat(1, 2)]);
    }

    #[test]
    fn content_of_int_poly() {
        let p: IntPoly = Poly::from_i64s(&[6, -9, 15]);
        assert_eq!(p.content(), 3);
    }
}
