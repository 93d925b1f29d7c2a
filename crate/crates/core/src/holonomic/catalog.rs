//! Explicit operators and recurrences of the Legendre-square problem.

use super::operator::{operator_substitute, DiffOperator, Scalar};
use super::recurrence::PRecurrence;
use crate::error::Result;
use crate::exactcore::{Field, Poly, Quad, RatFunc, Ring, Sqrt17, UniPoly, QT};
use rug::Rational;

fn k<K: Ring>(n: i64) -> Poly<K> {
    Poly::constant(K::from_i64(n))
}

fn c<K: Ring>(a: &K) -> Poly<K> {
    Poly::constant(a.clone())
}

/// Sign selecting the `±` member of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value<K: Ring>(self) -> K {
        match self {
            Sign::Plus => K::one(),
            Sign::Minus => K::from_i64(-1),
        }
    }
}

/// `L^z_±` at a fixed value of `y`, in the variable `z`.
pub fn lz<K: Scalar>(y: &K, sign: Sign) -> Result<DiffOperator<K>> {
    let z = Poly::<K>::x();
    let y2 = c(&y.mul(y));
    let one4z = k::<K>(1).add(&z.scale(&K::from_i64(4)));
    let one4z2 = one4z.mul(&one4z);
    let inner = one4z2.sub(&k::<K>(16).mul(&y2).mul(&z));
    let a2 = z.mul(&k::<K>(1).sub(&z.scale(&K::from_i64(4)))).mul(&one4z2).mul(&inner);
    let a1 = z
        .mul(&Poly::<K>::new(vec![K::from_i64(-3), K::from_i64(8), K::from_i64(48)]))
        .scale(&K::from_i64(8))
        .mul(&y2)
        .add(&Poly::<K>::new(vec![K::one(), K::zero(), K::from_i64(-32)]).mul(&one4z2))
        .mul(&one4z);
    let a0 = Poly::<K>::new(vec![K::from_i64(-1), K::from_i64(4), K::from_i64(80), K::from_i64(64)])
        .mul(&y2)
        .sub(&z.scale(&K::from_i64(3)).mul(&one4z2).mul(&one4z));
    let b0 = Poly::<K>::new(vec![K::one(), K::from_i64(-8)]).scale(&y.mul(&sign.value()));
    let r = k::<K>(2).mul(&k::<K>(1).sub(&z.scale(&K::from_i64(4)))).mul(&inner);
    Ok(DiffOperator::with_radical(vec![a0, a1, a2], vec![b0], Some(r))?.with_var('z'))
}

/// `L^y_±` at a fixed value of `z`, in the variable `y`.
pub fn ly<K: Scalar>(z: &K, sign: Sign) -> Result<DiffOperator<K>> {
    let y = Poly::<K>::x();
    let y2 = y.mul(&y);
    let y4 = y2.mul(&y2);
    let zc = c(z);
    let kk = |n: i64| K::from_i64(n);
    let one4z = k::<K>(1).add(&zc.scale(&kk(4)));
    let inner = one4z.mul(&one4z).sub(&zc.scale(&kk(16)).mul(&y2));
    let q = y2.scale(&kk(2)).sub(&zc.scale(&kk(4))).sub(&k(1));
    let a2 = k::<K>(2).mul(&k::<K>(1).sub(&y2)).mul(&q).mul(&q).mul(&inner);
    let t1 = zc.scale(&kk(32)).mul(&y4);
    let t2 = one4z.mul(&k::<K>(1).add(&zc.scale(&kk(28))).mul(&y2).sub(&zc.scale(&kk(4)).mul(&k::<K>(3).add(&zc.scale(&kk(4))))));
    let a1 = y.scale(&kk(4)).mul(&q).mul(&t1.sub(&t2));
    let z2 = zc.mul(&zc);
    let a0 = k::<K>(16)
        .mul(&y2.scale(&kk(2)).sub(&zc.scale(&kk(14))).sub(&k(3)))
        .mul(&zc)
        .mul(&y4)
        .add(&one4z.mul(&k::<K>(1).add(&zc.scale(&kk(32))).add(&z2.scale(&kk(80)))).mul(&y2))
        .sub(&one4z.mul(&one4z).mul(&k::<K>(1).add(&zc.scale(&kk(4))).add(&z2.scale(&kk(8)))));
    let b0 = k::<K>(2)
        .mul(&k::<K>(1).add(&zc.scale(&kk(8))))
        .mul(&y2)
        .sub(&k::<K>(4).mul(&one4z).mul(&k::<K>(1).sub(&zc)))
        .mul(&y)
        .scale(&sign.value());
    let r = k::<K>(2).mul(&k::<K>(1).sub(&zc.scale(&kk(4)))).mul(&inner);
    Ok(DiffOperator::with_radical(vec![a0, a1, a2], vec![b0], Some(r))?.with_var('y'))
}

fn tpoly(v: &[i64]) -> QT {
    RatFunc::from_poly(UniPoly::from_i64s(v))
}

fn xpoly(v: Vec<QT>) -> Poly<QT> {
    Poly::new(v)
}

/// `(t+1)(t−1)³`.
pub fn t_shift_constant() -> QT {
    tpoly(&[1, 1]).mul(&tpoly(&[-1, 1]).powu(3))
}

/// `L^x_+` over `ℚ(t)`.
pub fn lx_plus() -> Result<DiffOperator<QT>> {
    let x = Poly::<QT>::x();
    let one = RatFunc::<QT>::one();
    let c1 = t_shift_constant();
    let lin = x.add(&Poly::constant(c1.clone()));
    // x² + (2t⁴+4t²−2)x + (t²−1)⁴
    let quad = xpoly(vec![tpoly(&[-1, 0, 1]).powu(4), tpoly(&[-2, 0, 4, 0, 2]), QT::one()]);
    let p1 = RatFunc::new(Poly::one(), x.clone())
        .sub(&RatFunc::new(Poly::one(), lin.clone()))
        .add(&RatFunc::new(xpoly(vec![tpoly(&[-1, 0, 2, 0, 1]), QT::one()]).scale(&QT::from_i64(2)), quad.clone()));
    let num = xpoly(vec![
        tpoly(&[-5, 4, 12, -8, 4]).mul(&c1),
        tpoly(&[-9, 20, -4, -16, 8]),
        QT::from_i64(4),
    ]);
    let den = x.mul(&quad).mul(&lin).scale(&QT::from_i64(16));
    let p0 = RatFunc::new(num, den);
    Ok(DiffOperator::from_fractions(&[p0, p1, one])?.with_var('x'))
}

/// `t ↦ −t` on an operator over `ℚ(t)`.
pub fn reflect_t(l: &DiffOperator<QT>) -> Result<DiffOperator<QT>> {
    l.map_coeffs(|a| a.reflect())
}

pub fn lx_minus() -> Result<DiffOperator<QT>> {
    reflect_t(&lx_plus()?)
}

/// `m = 1/(64x) − (t+1)(t−1)³`.
pub fn m_map() -> RatFunc<QT> {
    RatFunc::new(Poly::one(), Poly::<QT>::x().scale(&QT::from_i64(64))).sub(&RatFunc::from_poly(Poly::constant(t_shift_constant())))
}

/// `L^m = L^x_+ |_{x ↦ m}`.
pub fn lm() -> Result<DiffOperator<QT>> {
    operator_substitute(&lx_plus()?, &m_map())
}

/// `u = 1/(1 − 2t²)` as an element of `ℚ(t)`.
pub fn u_of_t() -> QT {
    tpoly(&[1, 0, -2]).inv()
}

/// `L^PF_± = L^x_± |_{x ↦ −x/(4u²)}` with `u = 1/(1−2t²)`.
pub fn pf_operator(sign: Sign) -> Result<DiffOperator<QT>> {
    let base = match sign {
        Sign::Plus => lx_plus()?,
        Sign::Minus => lx_minus()?,
    };
    let u = u_of_t();
    let scale = u.mul(&u).mul(&QT::from_i64(-4)).inv();
    operator_substitute(&base, &RatFunc::from_poly(Poly::<QT>::x().scale(&scale)))
}

/// `L₅` over `ℚ(u)`.
pub fn l5() -> Result<DiffOperator<QT>> {
    let x = Poly::<QT>::x();
    let s = tpoly(&[1, 6, 1]);
    let d = xpoly(vec![tpoly(&[0, 0, 16]), tpoly(&[0, 8, 8]), s.clone(), QT::one()]);
    let p1 = RatFunc::new(xpoly(vec![tpoly(&[0, 0, -16]), QT::zero(), s, QT::from_i64(2)]), x.mul(&d));
    let p0 = RatFunc::new(
        xpoly(vec![tpoly(&[0, -120, -40]), tpoly(&[-9, -6, -1]), QT::from_i64(25)]),
        x.mul(&d).scale(&QT::from_i64(100)),
    );
    Ok(DiffOperator::from_fractions(&[p0, p1, RatFunc::one()])?.with_var('x'))
}

/// The pulled-back Heun operator over `ℚ(√17)`, in the variable `t`.
pub fn l_heun() -> Result<DiffOperator<Quad<Sqrt17>>> {
    type Q17 = Quad<Sqrt17>;
    let q = |a: i64, b: i64| Q17::new(Rational::from(a), Rational::from(b));
    let t = Poly::<Q17>::x();
    let base = t.mul(&Poly::new(vec![q(-1, 0), q(1, 0)])).mul(&Poly::new(vec![q(895, -217), q(256, 0)]));
    let p1 = RatFunc::new(Poly::new(vec![q(-895, 217), q(1276, -434), q(768, 0)]), base.clone());
    let p0 = RatFunc::new(Poly::new(vec![q(180, -60), q(240, 0)]), base);
    Ok(DiffOperator::from_fractions(&[p0, p1, RatFunc::one()])?.with_var('t'))
}

/// The order-2 operator in `t` on the locus `H(1−t) = 0`.
pub fn teichmuller_operator() -> Result<DiffOperator<Rational>> {
    let p = |v: &[i64]| UniPoly::from_i64s(v);
    let base = p(&[-1, 1]).mul(&p(&[-1, 0, 4])).mul(&p(&[-1, 0, 2]));
    let p1 = RatFunc::new(p(&[-1, 6, 0, -16, 8]).scale(&Rational::from(2)), base.clone());
    let p0 = RatFunc::new(p(&[-1, -6, 15, -4, 2]), base.mul(&p(&[-1, 1])));
    Ok(DiffOperator::from_fractions(&[p0, p1, RatFunc::one()])?.with_var('t'))
}

fn np(coeffs: Vec<UniPoly>) -> Poly<UniPoly> {
    Poly::new(coeffs)
}

/// The order-3 recurrence for `u_n(t)` with `u_0 = 1`.
pub fn op1_recurrence() -> PRecurrence<UniPoly> {
    let p = |v: &[i64]| UniPoly::from_i64s(v);
    let sc = |a: &UniPoly, s: i64| a.scale(&Rational::from(s));
    // (n+1)²
    let p3 = np(vec![p(&[1]), p(&[2]), p(&[1])]);
    // −4(16 A (n²+n) + B)
    let a = p(&[-1, 6, -4, -6, 1]);
    let b = p(&[-3, 20, -12, -24, 4]);
    let p2 = np(vec![sc(&b, -4), sc(&a, -64), sc(&a, -64)]);
    // −2¹¹ t(t−1)³(t+1)(8(t²+2t−1)n² − 2t² − 6t + 3)
    let pre = p(&[0, 1]).mul(&p(&[-1, 1]).pow(3)).mul(&p(&[1, 1]));
    let p1 = np(vec![sc(&pre.mul(&p(&[3, -6, -2])), -2048), UniPoly::zero(), sc(&pre.mul(&p(&[-8, 16, 8])), -2048)]);
    // 2¹⁸ t²(t−1)⁶(t+1)²(2n+1)(2n−3) = …(4n² − 4n − 3)
    let pre0 = p(&[0, 0, 1]).mul(&p(&[-1, 1]).pow(6)).mul(&p(&[1, 1]).pow(2)).scale(&Rational::from(1 << 18));
    let p0 = np(vec![sc(&pre0, -3), sc(&pre0, -4), sc(&pre0, 4)]);
    PRecurrence::new(vec![p0, p1, p2, p3], vec![UniPoly::one()]).expect("valid recurrence")
}

/// The order-3 recurrence for `a_n(u)` attached to `L₅`.
pub fn l5_recurrence() -> PRecurrence<UniPoly> {
    let p = |v: &[i64]| UniPoly::from_i64s(v);
    let p3 = np(vec![p(&[1]), p(&[2]), p(&[1])]);
    // 5((5n+3)(5n+2)u² − 2(2n+1)²) = 5((25n²+25n+6)u² − 8n² − 8n − 2)
    let p2 = np(vec![p(&[-10, 0, 30]), p(&[-40, 0, 125]), p(&[-40, 0, 125])]);
    // 100(5u−3)((10u−4)n² − 3u + 1)
    let f = p(&[-3, 5]).scale(&Rational::from(100));
    let p1 = np(vec![f.mul(&p(&[1, -3])), UniPoly::zero(), f.mul(&p(&[-4, 10]))]);
    // 500(5u−3)²(4n² − 4n − 3)
    let g = p(&[-3, 5]).pow(2).scale(&Rational::from(500));
    let p0 = np(vec![g.scale(&Rational::from(-3)), g.scale(&Rational::from(-4)), g.scale(&Rational::from(4))]);
    PRecurrence::new(vec![p0, p1, p2, p3], vec![UniPoly::one()]).expect("valid recurrence")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holonomic::{frobenius_solve, recurrence_unroll, Point};

    #[test]
    fn op1_first_terms() {
        let u = recurrence_unroll(&op1_recurrence(), 1).unwrap();
        assert_eq!(u[0], UniPoly::one());
        assert_eq!(u[1], UniPoly::from_i64s(&[-12, 80, -48, -96, 16]));
    }

    #[test]
    fn l5_first_terms() {
        let a = recurrence_unroll(&l5_recurrence(), 1).unwrap();
        assert_eq!(a[1], UniPoly::from_i64s(&[10, 0, -30]));
    }

    #[test]
    fn lx_minus_is_reflection() {
        let p = lx_plus().unwrap();
        let m = lx_minus().unwrap();
        assert_ne!(p, m);
        assert_eq!(reflect_t(&m).unwrap(), p);
    }

    #[test]
    fn lm_reproduces_op1() {
        let l = lm().unwrap();
        let sols = frobenius_solve(&l, &Point::Finite(QT::zero()), None, 4).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].exponent, Rational::from((1, 2)));
        assert!(sols[0].unique && sols[0].log_present);
        let u = recurrence_unroll(&op1_recurrence(), 4).unwrap();
        for n in 0..=4 {
            assert_eq!(sols[0].series.coeff(n), RatFunc::from_poly(u[n].clone()), "n = {n}");
        }
    }

    #[test]
    fn teich_operator_is_monic_form() {
        let l = teichmuller_operator().unwrap();
        assert_eq!(l.order(), 2);
        let f = l.monic_fractions();
        assert_eq!(f[2], RatFunc::one());
        assert_eq!(f[1].den().degree(), Some(5));
    }
}
