use crate::error::{Error, Result};
use crate::exactcore::sequences::central_binomial;
use crate::exactcore::{IntPoly, Poly, QAlgebra, Ring, TruncatedSeries, UniPoly};
use crate::holonomic::catalog::op1_recurrence;
use crate::holonomic::{recurrence_unroll, PRecurrence};
use crate::numerics::quadrature::{integrate_endpoint_singular, QuadratureSpec};
use crate::numerics::HPComplex;
use rug::{Integer, Rational};

/// Polynomials in `x` with coefficients in `ℚ[t]`.
pub type XPoly = Poly<UniPoly>;

fn tp(v: &[i64]) -> UniPoly {
    UniPoly::from_i64s(v)
}

fn sc(p: &UniPoly, k: i64) -> UniPoly {
    p.scale(&Rational::from(k))
}

fn pow2(p: &UniPoly, e: u32) -> UniPoly {
    p.scale(&Rational::from(Integer::from(1) << e))
}

/// `S(x, t)`.
pub fn s_poly() -> XPoly {
    let tm1 = tp(&[-1, 1]);
    let tp1 = tp(&[1, 1]);
    let f1 = XPoly::new(vec![UniPoly::one(), sc(&tp1.mul(&tm1.pow(3)), -16)]);
    let f2 = XPoly::new(vec![
        UniPoly::one(),
        pow2(&tp(&[0, -1, 1, 1]), 6),
        pow2(&tp(&[0, 0, 1, 1]).mul(&tm1.pow(3)), 10).neg(),
    ]);
    f1.mul(&f2)
}

/// `A(x, t)`.
pub fn a_poly() -> XPoly {
    let tm1 = tp(&[-1, 1]);
    let t2m1 = tp(&[-1, 2]);
    XPoly::new(vec![
        UniPoly::one(),
        pow2(&t2m1.pow(2), 7),
        pow2(&tm1.pow(3).mul(&t2m1).mul(&tp(&[-1, 5, 2])), 11).neg(),
        pow2(&tp(&[0, 1]).mul(&tm1.pow(6)).mul(&tp(&[-1, 2, 2])), 17),
        pow2(&tp(&[0, 0, 1, 1]).mul(&tm1.pow(9)), 21).neg(),
    ])
}

/// The algebraic series `Z(x) = (R₋^{1/8} + R₊^{1/8}) / (2√S)` over `ℚ[t]`.
#[derive(Clone, Debug)]
pub struct AlgebraicZ {
    pub s: XPoly,
    pub a: XPoly,
    pub z: TruncatedSeries<UniPoly>,
}

impl AlgebraicZ {
    /// Coefficients as integer polynomials, or the first index that is not integral.
    pub fn integer_coefficients(&self) -> std::result::Result<Vec<IntPoly>, usize> {
        self.z.coeffs().iter().enumerate().map(|(n, c)| c.to_integer().ok_or(n)).collect()
    }
}

/// `√G` for `G(0) = g0²` by the coefficient recursion, dividing exactly in `ℚ[t]`.
fn sqrt_with_root(g: &TruncatedSeries<UniPoly>, g0: &UniPoly) -> Result<TruncatedSeries<UniPoly>> {
    if g0.mul(g0) != g.coeff(0) {
        return Err(Error::Domain("given root does not square to the constant term".into()));
    }
    let n = g.order();
    let two_g0 = sc(g0, 2);
    let mut h = vec![g0.clone()];
    for m in 1..=n {
        let mut acc = g.coeff(m);
        for k in 1..m {
            acc.sub_assign(&h[k].mul(&h[m - k]));
        }
        let q = acc
            .try_div(&two_g0)
            .ok_or_else(|| Error::Domain(format!("square root coefficient {m} leaves ℚ[t]")))?;
        h.push(q);
    }
    Ok(TruncatedSeries::new(h, n))
}

/// Expands `Z` through `x^order` via the auxiliary variable `s = √x`.
pub fn build_z(order: usize) -> Result<AlgebraicZ> {
    let s = s_poly();
    let a = a_poly();
    let a2m1 = a.mul(&a).sub(&XPoly::one());
    // A² − 1 = x · G
    let g = TruncatedSeries::new(a2m1.coeffs()[1..].to_vec(), order);
    let h = sqrt_with_root(&g, &sc(&tp(&[-1, 2]), 16))?;
    let n2 = 2 * order + 1;
    let mut r = vec![UniPoly::zero(); n2 + 1];
    for k in 0..=order {
        r[2 * k] = a.coeff(k);
        r[2 * k + 1] = h.coeff(k);
    }
    let rp = TruncatedSeries::new(r, n2).pow_rational(&Rational::from((1, 8)))?;
    let even = TruncatedSeries::new((0..=order).map(|k| rp.coeff(2 * k)).collect(), order);
    let sinv = TruncatedSeries::from_poly(&s, order).pow_rational(&Rational::from((-1, 2)))?;
    Ok(AlgebraicZ { s, a, z: even.mul(&sinv) })
}

/// Integrality of `Z` and agreement of `C(2n,n) Z_n` with the `u_n` recurrence.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ZReport {
    pub order: usize,
    pub first_non_integral: Option<usize>,
    pub first_mismatch: Option<usize>,
}

impl ZReport {
    pub fn holds(&self) -> bool {
        self.first_non_integral.is_none() && self.first_mismatch.is_none()
    }
}

pub fn check_z(order: usize) -> Result<ZReport> {
    let z = build_z(order)?;
    let u = recurrence_unroll(&op1_recurrence(), order)?;
    let first_non_integral = z.integer_coefficients().err();
    let first_mismatch = (0..=order)
        .find(|&n| z.z.coeff(n).scale(&Rational::from(central_binomial(n as u32))) != u[n]);
    Ok(ZReport { order, first_non_integral, first_mismatch })
}

// ---------------------------------------------------------------------------
// Rational parametrization

/// Polynomials in `v` over `ℤ[t]`.
type VPoly = Poly<IntPoly>;

#[derive(Clone, Debug)]
struct Frac {
    n: VPoly,
    d: VPoly,
}

impl Frac {
    fn poly(n: VPoly) -> Self {
        Frac { n, d: VPoly::one() }
    }
    fn mul(&self, o: &Frac) -> Frac {
        Frac { n: self.n.mul(&o.n), d: self.d.mul(&o.d) }
    }
    fn add(&self, o: &Frac) -> Frac {
        if self.d == o.d {
            return Frac { n: self.n.add(&o.n), d: self.d.clone() };
        }
        Frac { n: self.n.mul(&o.d).add(&o.n.mul(&self.d)), d: self.d.mul(&o.d) }
    }
    fn add_int(&self, k: i64) -> Frac {
        Frac { n: self.n.add(&self.d.scale(&IntPoly::from_i64(k))), d: self.d.clone() }
    }
}

fn tc(v: &[i64]) -> VPoly {
    VPoly::constant(IntPoly::from_i64s(v))
}

fn int_xpoly(p: &XPoly) -> Vec<IntPoly> {
    p.coeffs().iter().map(|c| c.to_integer().expect("integral coefficients")).collect()
}

/// `P(a/b)` with a common denominator `b^deg P`.
fn eval_at_frac(p: &[IntPoly], x: &Frac) -> Frac {
    let deg = p.len() - 1;
    let mut n = VPoly::zero();
    let mut an = VPoly::one();
    let dpow: Vec<VPoly> = (0..=deg).map(|k| x.d.pow(k as u32)).collect();
    for (k, c) in p.iter().enumerate() {
        n = n.add(&an.mul(&dpow[deg - k]).scale(c));
        an = an.mul(&x.n);
    }
    Frac { n, d: dpow[deg].clone() }
}

fn k_poly() -> VPoly {
    // t v⁴ + (t+1)(t−1)²(t² − t − 2v²)
    let c = IntPoly::from_i64s(&[1, 1]).mul(&IntPoly::from_i64s(&[-1, 1]).pow(2));
    VPoly::new(vec![c.mul(&IntPoly::from_i64s(&[0, -1, 1])), IntPoly::zero(), c.scale(&Integer::from(-2)), IntPoly::zero(), IntPoly::x()])
}

fn x_of_v() -> Frac {
    let num = VPoly::new(vec![IntPoly::from_i64s(&[0, 0, 1]), IntPoly::zero(), IntPoly::from_i64s(&[-1])]);
    Frac { n: num, d: k_poly().mul(&tc(&[0, 16])) }
}

fn z2_of_v() -> Frac {
    let v = VPoly::x();
    let nz = VPoly::new(vec![IntPoly::from_i64s(&[-1, 1]), IntPoly::one()]).mul(&k_poly());
    let quartic = VPoly::new(vec![
        IntPoly::from_i64s(&[-1, 0, 1]).pow(2),
        IntPoly::zero(),
        IntPoly::from_i64s(&[0, 0, -2]),
        IntPoly::zero(),
        IntPoly::one(),
    ]);
    let dz = v.mul(&quartic);
    let vmt = VPoly::new(vec![IntPoly::from_i64s(&[0, -1]), IntPoly::one()]);
    // 2t(t² + tv − 1)
    let q = VPoly::new(vec![IntPoly::from_i64s(&[-1, 0, 1]), IntPoly::x()]).mul(&tc(&[0, 2]));
    Frac { n: nz.mul(&nz).mul(&vmt), d: dz.mul(&dz).mul(&q) }
}

/// Numerator of `((4SZ²−2)²−2)² − 2 − 2A` after substituting the parametrization.
fn relation_numerator(a_extra: Option<&[IntPoly]>) -> VPoly {
    let x = x_of_v();
    let s = eval_at_frac(&int_xpoly(&s_poly()), &x);
    let mut a = int_xpoly(&a_poly());
    if let Some(extra) = a_extra {
        if a.len() < extra.len() {
            a.resize(extra.len(), IntPoly::zero());
        }
        for (c, e) in a.iter_mut().zip(extra) {
            *c = c.add(e);
        }
    }
    let a = eval_at_frac(&a, &x);
    let w = s.mul(&z2_of_v()).mul(&Frac::poly(tc(&[4]))).add_int(-2);
    let w = w.mul(&w).add_int(-2);
    let w = w.mul(&w).add_int(-2);
    let rhs = Frac { n: a.n.scale(&IntPoly::from_i64(2)), d: a.d };
    let lhs_minus = w.add(&Frac { n: rhs.n.neg(), d: rhs.d });
    lhs_minus.n
}

/// Numerator of `1 − 16(1+t)(1−t)³x` under the parametrization.
fn factor_numerator() -> VPoly {
    let x = x_of_v();
    let c = IntPoly::from_i64s(&[1, 1]).mul(&IntPoly::from_i64s(&[1, -1]).pow(3)).scale(&Integer::from(16));
    x.d.sub(&x.n.scale(&c))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ParametrizationReport {
    /// The substituted relation vanishes identically in `ℤ[t, v]`.
    pub numerator_zero: bool,
    /// The numerator is an exact multiple of the factor numerator.
    pub divisible: bool,
    /// Size of the numerator before the division, as `(v-degree, terms)`.
    pub numerator_shape: (i64, usize),
}

impl ParametrizationReport {
    pub fn holds(&self) -> bool {
        self.divisible
    }
}

fn report_for(num: &VPoly) -> ParametrizationReport {
    let f = factor_numerator();
    let divisible = num.is_zero() || num.try_div(&f).is_some();
    let terms = num.coeffs().iter().map(|c| c.coeffs().iter().filter(|a| !a.is_zero()).count()).sum();
    ParametrizationReport { numerator_zero: num.is_zero(), divisible, numerator_shape: (num.deg(), terms) }
}

/// Exact check of the parametrized algebraic relation.
pub fn check_parametrization() -> ParametrizationReport {
    report_for(&relation_numerator(None))
}

fn perturbation() -> Vec<IntPoly> {
    let mut e = vec![IntPoly::zero(); 6];
    e[5] = IntPoly::one();
    e
}

/// Remainder in `ℚ[v]` of the relation numerator modulo the factor numerator at `t = t0`,
/// optionally with `x⁵` added to `A`.
pub fn parametrization_remainder_at(t0: &Rational, perturb_a: bool) -> UniPoly {
    let extra = perturbation();
    let num = relation_numerator(perturb_a.then_some(extra.as_slice()));
    let at = |p: &VPoly| p.map(|c| c.to_rational().eval(t0));
    at(&num).divrem(&at(&factor_numerator())).1
}

/// Evaluates both sides of the relation at numeric `(t, v)` in floating point.
pub fn parametrization_spot_check(t: &Rational, v: &Rational, prec: u32) -> (HPComplex, HPComplex) {
    let c = |q: &Rational| HPComplex::real(q.clone()).approx(prec);
    let (t, v) = (c(t), c(v));
    let r = |k: i64| HPComplex::from_i64(k);
    let t2 = t.mul(&t);
    let v2 = v.mul(&v);
    let k = t.mul(&v2.mul(&v2)).add(&t.add(&r(1)).mul(&t.sub(&r(1)).powu(2)).mul(&t2.sub(&v2.mul(&r(2))).sub(&t)));
    let x = t2.sub(&v2).div_by(&r(16).mul(&t).mul(&k));
    let d = v.mul(&v2.mul(&v2).sub(&r(2).mul(&t2).mul(&v2)).add(&t2.sub(&r(1)).powu(2)));
    let zr = t.sub(&r(1)).add(&v).mul(&k).div_by(&d);
    let z2 = zr.mul(&zr).mul(&v.sub(&t)).div_by(&r(2).mul(&t).mul(&t2.add(&t.mul(&v)).sub(&r(1))));
    let s = eval_xpoly(&s_poly(), &t, &x);
    let a = eval_xpoly(&a_poly(), &t, &x);
    let w = r(4).mul(&s).mul(&z2).sub(&r(2));
    let w = w.mul(&w).sub(&r(2));
    let lhs = w.mul(&w).sub(&r(2));
    (lhs, r(2).mul(&a))
}

fn eval_xpoly(p: &XPoly, t: &HPComplex, x: &HPComplex) -> HPComplex {
    let mut acc = HPComplex::zero();
    for c in p.coeffs().iter().rev() {
        let ct = c.map(HPComplex::from_rational).eval(t);
        acc = acc.mul(x).add(&ct);
    }
    acc
}

/// `Z(x)` at numeric `(x, t)` from the radical formula, principal branches.
pub fn z_closed_form(x: &HPComplex, t: &HPComplex) -> HPComplex {
    let a = eval_xpoly(&a_poly(), t, x);
    let s = eval_xpoly(&s_poly(), t, x);
    let r = a.mul(&a).sub(&HPComplex::one()).sqrt();
    let e = Rational::from((1, 8));
    let num = a.add(&r).pow_rational(&e).add(&a.sub(&r).pow_rational(&e));
    num.div_by(&HPComplex::from_i64(2).mul(&s.sqrt()))
}

/// `u_n(t0)` for the specialized recurrence.
pub fn u_values_at(t0: &Rational, n_max: usize) -> Result<Vec<Rational>> {
    let rec = op1_recurrence();
    let coeffs = rec.coeffs.iter().map(|p| p.map(|c| c.eval(t0))).collect();
    let spec = PRecurrence::new(coeffs, vec![Rational::from(1)])?;
    recurrence_unroll(&spec, n_max)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct HadamardReport {
    pub integral: String,
    pub series: String,
    pub difference: f64,
    pub terms: usize,
    /// `A ≥ 1` and `S > 0` at every sampled point of `[0, 4x0]`.
    pub branches_real: bool,
}

/// `(1/π)∫₀^{4x0} Z(ξ)/√(ξ(4x0−ξ)) dξ` against `Σ u_n(t0) x0ⁿ`.
pub fn check_hadamard_integral(t0: &Rational, x0: &Rational, prec: u32) -> Result<HadamardReport> {
    let b = Rational::from(x0 * 4u32);
    let branches_real = (0..=64).all(|k| {
        let xi = Rational::from(&b * Rational::from((k, 64)));
        let at = |p: &XPoly| p.coeffs().iter().rev().fold(Rational::new(), |acc, c| acc * &xi + c.eval(t0));
        at(&a_poly()) >= 1 && at(&s_poly()).cmp0().is_gt()
    });
    let t = HPComplex::real(t0.clone()).approx(prec);
    let spec = QuadratureSpec::new(prec);
    let bb = HPComplex::real(b.clone());
    let (val, _) = integrate_endpoint_singular(
        |node| {
            let w = node.from_a.mul(&node.to_b).sqrt();
            z_closed_form(&node.v, &t).div_by(&w)
        },
        &HPComplex::zero(),
        &bb,
        &spec,
    )?;
    let integral = val.div_by(&HPComplex::pi(prec + 32));
    let target = Rational::from((1, 1)) / (Integer::from(1) << prec);
    let mut sum = Rational::new();
    let mut xn = Rational::from(1);
    let mut terms = 0;
    let mut n_max = 64;
    loop {
        let u = u_values_at(t0, n_max)?;
        let mut small = 0;
        for un in u.iter().skip(terms) {
            let term = Rational::from(un * &xn);
            sum += &term;
            xn *= x0;
            terms += 1;
            small = if term.clone().abs() < target { small + 1 } else { 0 };
        }
        if small >= 4 || n_max > 8192 {
            break;
        }
        n_max *= 2;
    }
    let series = HPComplex::real(sum).approx(prec);
    let difference = integral.sub(&series).abs_f64();
    Ok(HadamardReport { integral: integral.to_decimal(40), series: series.to_decimal(40), difference, terms, branches_real })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;

    #[test]
    fn z_starts_with_one_and_matches_unroll() {
        let z = build_z(6).unwrap();
        assert_eq!(z.z.coeff(0), UniPoly::one());
        let r = check_z(12).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn s_and_a_at_origin() {
        assert_eq!(s_poly().coeff(0), UniPoly::one());
        assert_eq!(a_poly().coeff(0), UniPoly::one());
        assert_eq!(a_poly().coeff(1), UniPoly::from_i64s(&[128, -512, 512]));
    }

    #[test]
    fn parametrization_exact_and_controls() {
        let rep = check_parametrization();
        assert!(rep.holds(), "{rep:?}");
        assert!(parametrization_remainder_at(&Rational::from(3), false).is_zero());
        assert!(!parametrization_remainder_at(&Rational::from(3), true).is_zero());
        let (l, r) = parametrization_spot_check(&Rational::from(3), &rat(1, 2), 256);
        assert!(l.sub(&r).abs_f64() < 1e-30);
    }

    #[test]
    fn closed_form_at_origin() {
        let z = z_closed_form(&HPComplex::zero(), &HPComplex::real(rat(1, 3)).approx(128));
        assert!(z.sub(&HPComplex::one()).abs_f64() < 1e-30);
    }
}
