use crate::exactcore::ring::{Field, QAlgebra, Ring};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Complex, Float, Rational};
use std::fmt;

pub const DEFAULT_PREC: u32 = 256;

/// Complex scalar that stays exact until an approximate value enters.
///
/// Exact values carry rational real and imaginary parts. Approximate values carry
/// an explicit binary precision; mixed operations adopt the larger precision.
#[derive(Clone)]
pub enum HPComplex {
    Exact(Rational, Rational),
    Approx(Complex),
}

impl fmt::Debug for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HPComplex::Exact(a, b) => write!(f, "({a} + {b}i)"),
            HPComplex::Approx(z) => write!(f, "{:.30e}", z),
        }
    }
}

impl PartialEq for HPComplex {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (HPComplex::Exact(a, b), HPComplex::Exact(c, d)) => a == c && b == d,
            _ => {
                let p = self.prec().max(o.prec());
                self.to_complex(p) == o.to_complex(p)
            }
        }
    }
}

impl HPComplex {
    pub fn exact(re: Rational, im: Rational) -> Self {
        HPComplex::Exact(re, im)
    }
    pub fn real(re: Rational) -> Self {
        HPComplex::Exact(re, Rational::new())
    }
    pub fn i() -> Self {
        HPComplex::Exact(Rational::new(), Rational::from(1))
    }
    pub fn from_complex(z: Complex) -> Self {
        HPComplex::Approx(z)
    }
    pub fn from_float(x: Float) -> Self {
        let p = x.prec();
        HPComplex::Approx(Complex::with_val(p, (x, 0)))
    }
    pub fn from_f64(x: f64, prec: u32) -> Self {
        HPComplex::Approx(Complex::with_val(prec, (x, 0.0)))
    }
    pub fn pi(prec: u32) -> Self {
        Self::from_float(Float::with_val(prec, Constant::Pi))
    }
    pub fn is_exact(&self) -> bool {
        matches!(self, HPComplex::Exact(..))
    }
    /// Precision in bits; exact values report 0.
    pub fn prec(&self) -> u32 {
        match self {
            HPComplex::Exact(..) => 0,
            HPComplex::Approx(z) => z.prec().0,
        }
    }
    pub fn to_complex(&self, prec: u32) -> Complex {
        let prec = prec.max(2);
        match self {
            HPComplex::Exact(a, b) => Complex::with_val(prec, (a, b)),
            HPComplex::Approx(z) => Complex::with_val(prec, z),
        }
    }
    /// Approximate form at `prec` bits.
    pub fn approx(&self, prec: u32) -> Self {
        HPComplex::Approx(self.to_complex(prec))
    }
    fn work_prec(&self, o: &Self) -> u32 {
        let p = self.prec().max(o.prec());
        if p == 0 {
            DEFAULT_PREC
        } else {
            p
        }
    }
    fn own_prec(&self) -> u32 {
        match self.prec() {
            0 => DEFAULT_PREC,
            p => p,
        }
    }
    pub fn re_f64(&self) -> f64 {
        match self {
            HPComplex::Exact(a, _) => a.to_f64(),
            HPComplex::Approx(z) => z.real().to_f64(),
        }
    }
    pub fn im_f64(&self) -> f64 {
        match self {
            HPComplex::Exact(_, b) => b.to_f64(),
            HPComplex::Approx(z) => z.imag().to_f64(),
        }
    }
    pub fn re(&self) -> HPComplex {
        match self {
            HPComplex::Exact(a, _) => HPComplex::real(a.clone()),
            HPComplex::Approx(z) => Self::from_float(z.real().clone()),
        }
    }
    pub fn im(&self) -> HPComplex {
        match self {
            HPComplex::Exact(_, b) => HPComplex::real(b.clone()),
            HPComplex::Approx(z) => Self::from_float(z.imag().clone()),
        }
    }
    pub fn conj(&self) -> HPComplex {
        match self {
            HPComplex::Exact(a, b) => HPComplex::Exact(a.clone(), Rational::from(-b)),
            HPComplex::Approx(z) => HPComplex::Approx(z.clone().conj()),
        }
    }
    /// Modulus as a float at the value's precision.
    pub fn abs_float(&self) -> Float {
        let z = self.to_complex(self.own_prec());
        Float::with_val(z.prec().0, z.abs_ref()).clone()
    }
    pub fn abs_f64(&self) -> f64 {
        let h = self.re_f64().hypot(self.im_f64());
        if h.is_finite() && h > 1e-290 {
            h
        } else {
            self.abs_float().to_f64()
        }
    }
    /// `log₂|z|` valid far outside the f64 range.
    pub fn log2_abs(&self) -> f64 {
        let a = self.abs_float();
        if a.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, e) = a.to_f64_exp();
        m.abs().log2() + e as f64
    }
    /// Principal square root.
    pub fn sqrt(&self) -> HPComplex {
        if let HPComplex::Exact(a, b) = self {
            if b.cmp0().is_eq() && a.cmp0().is_ge() {
                if let (Some(n), Some(d)) = (exact_isqrt(a.numer()), exact_isqrt(a.denom())) {
                    return HPComplex::real(Rational::from((n, d)));
                }
            }
        }
        HPComplex::Approx(unsigned_zero(self.to_complex(self.own_prec())).sqrt())
    }
    pub fn sqrt_prec(&self, prec: u32) -> HPComplex {
        HPComplex::Approx(unsigned_zero(self.to_complex(prec)).sqrt())
    }
    pub fn exp(&self) -> HPComplex {
        HPComplex::Approx(self.to_complex(self.own_prec()).exp())
    }
    pub fn ln(&self) -> HPComplex {
        HPComplex::Approx(unsigned_zero(self.to_complex(self.own_prec())).ln())
    }
    /// Principal power with a rational exponent.
    pub fn pow_rational(&self, p: &Rational) -> HPComplex {
        if *p.denom() == 1 {
            if let Some(e) = p.numer().to_i32() {
                let base = if e < 0 { self.inv() } else { self.clone() };
                return base.powu(e.unsigned_abs());
            }
        }
        let prec = self.own_prec();
        let z = unsigned_zero(self.to_complex(prec));
        let e = Float::with_val(prec, p);
        HPComplex::Approx(z.pow(&e))
    }
    pub fn scale_rational(&self, q: &Rational) -> HPComplex {
        self.mul(&HPComplex::real(q.clone()))
    }
    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            HPComplex::Exact(a, b) if b.cmp0().is_eq() => format!("{a}"),
            HPComplex::Exact(a, b) => format!("{a} + {b}*I"),
            HPComplex::Approx(z) => {
                let re = z.real().to_string_radix(10, Some(digits));
                let im = z.imag();
                if im.is_zero() {
                    re
                } else {
                    format!("{re} + {}*I", im.to_string_radix(10, Some(digits)))
                }
            }
        }
    }
}

fn exact_isqrt(n: &rug::Integer) -> Option<rug::Integer> {
    if n.cmp0().is_lt() {
        return None;
    }
    let (s, r) = n.clone().sqrt_rem(rug::Integer::new());
    if r.cmp0().is_eq() {
        Some(s)
    } else {
        None
    }
}

impl Ring for HPComplex {
    const EXACT: bool = false;
    fn zero() -> Self {
        HPComplex::Exact(Rational::new(), Rational::new())
    }
    fn one() -> Self {
        HPComplex::Exact(Rational::from(1), Rational::new())
    }
    fn is_zero(&self) -> bool {
        match self {
            HPComplex::Exact(a, b) => a.cmp0().is_eq() && b.cmp0().is_eq(),
            HPComplex::Approx(z) => z.real().is_zero() && z.imag().is_zero(),
        }
    }
    fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (HPComplex::Exact(a, b), HPComplex::Exact(c, d)) => {
                HPComplex::Exact(Rational::from(a + c), Rational::from(b + d))
            }
            (HPComplex::Approx(z), HPComplex::Exact(..)) if o.is_zero() => HPComplex::Approx(z.clone()),
            (HPComplex::Exact(..), HPComplex::Approx(z)) if self.is_zero() => HPComplex::Approx(z.clone()),
            _ => {
                let p = self.work_prec(o);
                HPComplex::Approx(self.to_complex(p) + o.to_complex(p))
            }
        }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (HPComplex::Exact(a, b), HPComplex::Exact(c, d)) => {
                let re = Rational::from(a * c) - Rational::from(b * d);
                let im = Rational::from(a * d) + Rational::from(b * c);
                HPComplex::Exact(re, im)
            }
            (HPComplex::Approx(z), HPComplex::Exact(c, d)) | (HPComplex::Exact(c, d), HPComplex::Approx(z)) => {
                let p = z.prec().0;
                if d.cmp0().is_eq() {
                    if c.cmp0().is_eq() {
                        return HPComplex::zero();
                    }
                    if *c == 1 {
                        return HPComplex::Approx(z.clone());
                    }
                    return HPComplex::Approx(Complex::with_val(p, z * Float::with_val(p, c)));
                }
                HPComplex::Approx(Complex::with_val(p, z * Complex::with_val(p, (c, d))))
            }
            (HPComplex::Approx(z), HPComplex::Approx(w)) => {
                let p = z.prec().0.max(w.prec().0);
                HPComplex::Approx(Complex::with_val(p, z * w))
            }
        }
    }
    fn neg(&self) -> Self {
        match self {
            HPComplex::Exact(a, b) => HPComplex::Exact(Rational::from(-a), Rational::from(-b)),
            HPComplex::Approx(z) => HPComplex::Approx(Complex::with_val(z.prec(), -z)),
        }
    }
    fn from_i64(n: i64) -> Self {
        HPComplex::Exact(Rational::from(n), Rational::new())
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(self.mul(&o.inv()))
        }
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if let (HPComplex::Approx(s), HPComplex::Approx(x), HPComplex::Approx(y)) = (&mut *self, a, b) {
            *s += Complex::with_val(s.prec(), x * y);
            return;
        }
        *self = self.add(&a.mul(b));
    }
    fn magnitude(&self) -> f64 {
        let m = self.abs_f64();
        if m == 0.0 && !self.is_zero() {
            f64::MIN_POSITIVE
        } else {
            m
        }
    }
}

impl Field for HPComplex {
    fn inv(&self) -> Self {
        match self {
            HPComplex::Exact(a, b) => {
                let n = Rational::from(a * a) + Rational::from(b * b);
                HPComplex::Exact(Rational::from(a / &n), Rational::from(-b) / n)
            }
            HPComplex::Approx(z) => HPComplex::Approx(z.clone().recip()),
        }
    }
}

impl QAlgebra for HPComplex {
    fn from_rational(q: &Rational) -> Self {
        HPComplex::Exact(q.clone(), Rational::new())
    }
    fn as_rational(&self) -> Option<Rational> {
        match self {
            HPComplex::Exact(a, b) if b.cmp0().is_eq() => Some(a.clone()),
            _ => None,
        }
    }
}

/// Float helpers.
/// Clears a negative-zero imaginary part so branch cuts are approached from above.
fn unsigned_zero(mut z: Complex) -> Complex {
    if z.imag().is_zero() {
        z.mut_imag().assign(0);
    }
    z
}

pub fn float(prec: u32, x: impl Into<f64>) -> Float {
    Float::with_val(prec, x.into())
}

pub fn pi_float(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::ring::rat;

    #[test]
    fn exact_until_approximate() {
        let a = HPComplex::real(rat(1, 3));
        let b = a.mul(&HPComplex::i());
        assert!(b.is_exact());
        let c = b.add(&HPComplex::from_f64(0.5, 128));
        assert!(!c.is_exact());
        assert_eq!(c.prec(), 128);
    }

    #[test]
    fn square_roots() {
        assert_eq!(HPComplex::real(rat(9, 4)).sqrt(), HPComplex::real(rat(3, 2)));
        let s = HPComplex::real(rat(2, 1)).sqrt_prec(200);
        let d = s.mul(&s).sub(&HPComplex::from_i64(2));
        assert!(d.log2_abs() < -190.0);
        // principal branch of √(−1)
        let i = HPComplex::from_i64(-1).sqrt_prec(64);
        assert!((i.im_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_exact_and_approx() {
        let z = HPComplex::exact(rat(1, 1), rat(1, 1));
        assert_eq!(z.inv(), HPComplex::exact(rat(1, 2), rat(-1, 2)));
        let w = z.approx(100).inv().mul(&z);
        assert!(w.sub(&HPComplex::one()).log2_abs() < -95.0);
    }
}
