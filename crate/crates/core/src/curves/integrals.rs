use super::fibre::fibre_pq;
use crate::error::{Error, Result};
use crate::exactcore::{Field, Ring};
use crate::holonomic::catalog::{pf_operator, Sign};
use crate::numerics::quadrature::{Node, QuadratureSpec};
use crate::numerics::{derivative_under_integral, specialize, HPComplex};
use rug::Rational;
use std::sync::atomic::{AtomicBool, Ordering};

#[derive(Clone, Debug)]
pub struct IntegralValue {
    pub value: HPComplex,
    pub error_log2: f64,
    /// Every sampled radicand had positive real part.
    pub principal_branch_safe: bool,
}

/// `√(2u² − 2u)` on the principal branch.
pub fn radical_s(u: &HPComplex, prec: u32) -> HPComplex {
    let u = u.approx(prec);
    u.mul(&u).mul(&HPComplex::from_i64(2)).sub(&u.mul(&HPComplex::from_i64(2))).sqrt()
}

/// `c_± = −u ± √(2u² − 2u)`.
pub fn c_pm(u: &HPComplex, sign: Sign, prec: u32) -> HPComplex {
    let s = radical_s(u, prec);
    let s = if sign == Sign::Plus { s } else { s.neg() };
    u.approx(prec).neg().add(&s)
}

/// `∂ᵏ/∂xᵏ I_±(u, x)` by quadrature of the differentiated integrand.
pub fn i_pm(u: &HPComplex, x: &HPComplex, sign: Sign, k: usize, prec: u32) -> Result<IntegralValue> {
    let wp = prec + 32;
    let (u, x) = (u.approx(wp), x.approx(wp));
    let c = c_pm(&u, sign, wp);
    let (p, q) = fibre_pq(&u);
    let mut falling = HPComplex::one().approx(wp);
    for j in 0..k {
        falling = falling.scale_rational(&(Rational::from((-1, 2)) - j as i64));
    }
    let pi = HPComplex::pi(wp);
    let safe = AtomicBool::new(true);
    let f = |n: &Node, k: usize| -> HPComplex {
        let qv = q.eval(&n.v);
        let r = p.eval(&n.v).add(&x.mul(&qv));
        if r.re_f64() <= 0.0 {
            safe.store(false, Ordering::Relaxed);
        }
        let num = HPComplex::one().add(&c.mul(&n.v));
        let rk = r.powu(k as u32);
        let den = r.sqrt().mul(&rk).mul(&n.from_a.mul(&n.to_b).sqrt());
        num.mul(&falling).mul(&qv.powu(k as u32)).mul(&den.inv())
    };
    let spec = QuadratureSpec::new(wp).with_target(-(prec as i64) - 8);
    let (v, err) = derivative_under_integral(f, &HPComplex::zero(), &HPComplex::one(), k, &spec)?;
    Ok(IntegralValue { value: v.mul(&pi.inv()), error_log2: err, principal_branch_safe: safe.into_inner() })
}

/// `t = √((u−1)/(2u))` with `u = 1/(1−2t²)`, principal branch.
pub fn t_of_u(u: &HPComplex, prec: u32) -> HPComplex {
    let u = u.approx(prec);
    u.sub(&HPComplex::one()).mul(&u.mul(&HPComplex::from_i64(2)).inv()).sqrt()
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PfReport {
    pub sign: String,
    pub u: String,
    pub x: String,
    /// `log₂` of the monic residual.
    pub residual_log2: f64,
    pub quadrature_error_log2: f64,
    pub principal_branch_safe: bool,
}

/// Applies the monic `L^PF_±` to `I_±` at `(u, x)`.
pub fn pf_annihilation(u: &Rational, x: &Rational, sign: Sign, prec: u32) -> Result<PfReport> {
    pf_apply(u, x, sign, sign, prec)
}

/// Applies the monic `L^PF` of sign `op` to `I` of sign `integral`.
pub fn pf_apply(u: &Rational, x: &Rational, op: Sign, integral: Sign, prec: u32) -> Result<PfReport> {
    let sign = op;
    let wp = prec + 32;
    let uc = HPComplex::real(u.clone());
    if u.cmp0().is_eq() || *u == 1 {
        return Err(Error::Usage("u must avoid 0 and 1".into()));
    }
    let t = t_of_u(&uc, wp);
    let l = specialize(&pf_operator(sign)?, &t)?;
    let xc = HPComplex::real(x.clone()).approx(wp);
    let lead = l.leading().eval(&xc);
    if lead.is_zero() || lead.log2_abs() < -(prec as f64) / 2.0 {
        return Err(Error::Usage("x is a singular point of the operator".into()));
    }
    let mut acc = HPComplex::zero();
    let mut qerr = f64::NEG_INFINITY;
    let mut safe = true;
    for k in 0..=l.order() {
        let d = i_pm(&uc, &xc, integral, k, prec)?;
        qerr = qerr.max(d.error_log2);
        safe &= d.principal_branch_safe;
        acc = acc.add(&l.coeff(k).eval(&xc).mul(&d.value));
    }
    let r = acc.mul(&lead.inv());
    Ok(PfReport {
        sign: format!("{op:?}/{integral:?}"),
        u: u.to_string(),
        x: x.to_string(),
        residual_log2: r.log2_abs(),
        quadrature_error_log2: qerr,
        principal_branch_safe: safe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;

    #[test]
    fn degenerate_parameters() {
        let v = i_pm(&HPComplex::zero(), &HPComplex::one(), Sign::Plus, 0, 128).unwrap();
        assert!(v.value.sub(&HPComplex::one()).log2_abs() < -120.0);
        let v = i_pm(&HPComplex::zero(), &HPComplex::one(), Sign::Minus, 0, 128).unwrap();
        assert!(v.value.sub(&HPComplex::one()).log2_abs() < -120.0);
    }

    #[test]
    fn t_branch_matches_radical() {
        for u in [rat(1, 2), rat(1, 3)] {
            let uc = HPComplex::real(u);
            let t = t_of_u(&uc, 128);
            let two_tu = t.mul(&uc).mul(&HPComplex::from_i64(2));
            assert!(two_tu.sub(&radical_s(&uc, 128)).log2_abs() < -120.0);
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let p = 128;
        let u = HPComplex::real(rat(1, 2));
        let x = HPComplex::real(rat(1, 10));
        let h = HPComplex::real(rat(1, 1 << 20));
        let d = i_pm(&u, &x, Sign::Plus, 1, p).unwrap().value;
        let a = i_pm(&u, &x.add(&h), Sign::Plus, 0, p).unwrap().value;
        let b = i_pm(&u, &x.sub(&h), Sign::Plus, 0, p).unwrap().value;
        let fd = a.sub(&b).mul(&h.mul(&HPComplex::from_i64(2)).inv());
        assert!(fd.sub(&d).abs_f64() < 1e-10);
    }

    #[test]
    fn pf_annihilates() {
        let r = pf_annihilation(&rat(1, 2), &rat(1, 10), Sign::Plus, 160).unwrap();
        assert!(r.residual_log2 < -100.0, "{r:?}");
        assert!(r.principal_branch_safe);
        let r = pf_annihilation(&rat(1, 2), &rat(1, 10), Sign::Minus, 160).unwrap();
        assert!(r.residual_log2 < -100.0, "{r:?}");
        let r = pf_apply(&rat(1, 2), &rat(1, 10), Sign::Plus, Sign::Minus, 160).unwrap();
        assert!(r.residual_log2 > -20.0, "{r:?}");
    }
}
