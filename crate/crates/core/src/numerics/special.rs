use super::hpcomplex::HPComplex;
use super::quadrature::{integrate_endpoint_singular, Node, QuadratureSpec};
use crate::error::{Error, Result};
use crate::exactcore::ring::Ring;
use rug::Rational;

/// `₂F₁(a,b;c|z)` by its defining series for `|z| < 1`, summed to working precision.
pub fn hyp2f1_eval(a: &Rational, b: &Rational, c: &Rational, z: &HPComplex, prec: u32) -> Result<HPComplex> {
    let r = z.abs_f64();
    if r >= 1.0 {
        return Err(Error::Domain("hypergeometric series evaluated outside its disk".into()));
    }
    let wp = prec + 32;
    let z = z.approx(wp);
    let mut term = HPComplex::one().approx(wp);
    let mut sum = term.clone();
    let stop = -(wp as f64);
    let max_terms = ((wp as f64) / -r.log2().min(-1e-3)).ceil() as usize + 64;
    for n in 0..max_terms {
        let n = n as i64;
        let den = Rational::from(c + n) * Rational::from(n + 1);
        if den.cmp0().is_eq() {
            return Err(Error::Domain("lower parameter is a nonpositive integer".into()));
        }
        let q = Rational::from(a + n) * Rational::from(b + n) / den;
        term = term.mul(&z).scale_rational(&q);
        sum.add_assign(&term);
        if term.is_zero() || term.log2_abs() - sum.log2_abs().max(0.0) < stop {
            return Ok(sum);
        }
    }
    Err(Error::Precision("hypergeometric series did not converge within the term budget".into()))
}

/// `∂ᵏ/∂xᵏ ∫_a^b f(v, x) dv` from a closed-form `k`-th derivative of the integrand.
pub fn derivative_under_integral<F>(f: F, a: &HPComplex, b: &HPComplex, k: usize, spec: &QuadratureSpec) -> Result<(HPComplex, f64)>
where
    F: Fn(&Node, usize) -> HPComplex + Sync,
{
    integrate_endpoint_singular(|n| f(n, k), a, b, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::ring::rat;
    use crate::exactcore::Field;

    #[test]
    fn hyp2f1_elementary_cases() {
        let p = 200;
        let z = HPComplex::real(rat(1, 3));
        // ₂F₁(1,1;2|z) = −log(1−z)/z
        let v = hyp2f1_eval(&rat(1, 1), &rat(1, 1), &rat(2, 1), &z, p).unwrap();
        let want = HPComplex::real(rat(2, 3)).approx(p).ln().neg().mul(&HPComplex::from_i64(3));
        assert!(v.sub(&want).log2_abs() < -190.0);
        // ₂F₁(a,b;b|z) = (1−z)^{−a}
        let v = hyp2f1_eval(&rat(3, 8), &rat(5, 8), &rat(5, 8), &z, p).unwrap();
        let want = HPComplex::real(rat(2, 3)).approx(p).pow_rational(&rat(-3, 8));
        assert!(v.sub(&want).log2_abs() < -190.0);
        assert!(hyp2f1_eval(&rat(1, 2), &rat(1, 2), &rat(1, 1), &HPComplex::from_i64(2), p).is_err());
    }

    #[test]
    fn derivative_of_simple_integral() {
        // ∂/∂x ∫₀¹ (1+xv)^{−1/2} dv at x = 1 equals 1/√2 − 2(√2 − 1)
        let p = 200;
        let spec = QuadratureSpec::new(p).with_exponents(rat(0, 1), rat(0, 1));
        let x = HPComplex::one();
        let f = |n: &Node, k: usize| -> HPComplex {
            let base = HPComplex::one().add(&x.mul(&n.v));
            let mut c = HPComplex::one();
            for j in 0..k {
                c = c.mul(&HPComplex::real(rat(-1, 2) - Rational::from(j as i64))).mul(&n.v);
            }
            c.mul(&base.pow_rational(&(rat(-1, 2) - Rational::from(k as i64))))
        };
        let (v0, _) = derivative_under_integral(f, &HPComplex::zero(), &HPComplex::one(), 0, &spec).unwrap();
        let s2 = HPComplex::from_i64(2).approx(p).sqrt();
        assert!(v0.sub(&s2.sub(&HPComplex::one()).mul(&HPComplex::from_i64(2))).log2_abs() < -180.0);
        let (v1, _) = derivative_under_integral(f, &HPComplex::zero(), &HPComplex::one(), 1, &spec).unwrap();
        let want = s2.inv().sub(&s2.sub(&HPComplex::one()).mul(&HPComplex::from_i64(2)));
        assert!(v1.sub(&want).log2_abs() < -180.0);
    }
}
