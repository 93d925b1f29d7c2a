use crate::error::{Error, Result};
use crate::exactcore::{Field, Poly, Ring, TruncatedSeries, UniPoly};
use crate::holonomic::catalog::teichmuller_operator;
use crate::numerics::quadrature::{integrate_vec, QuadratureSpec};
use crate::numerics::{hyp2f1_eval, HPComplex};
use rug::Rational;

/// Polynomials in `x` over `ℚ[t]`.
type XPoly = Poly<UniPoly>;
/// Polynomials in `v` over `ℚ[t][x]`.
type VPoly = Poly<XPoly>;

fn tp(v: &[i64]) -> UniPoly {
    UniPoly::from_i64s(v)
}

fn tc(v: &[i64]) -> XPoly {
    XPoly::constant(tp(v))
}

/// `K(v) = tv⁴ + (t+1)(t−1)²(t² − t − 2v²)` with coefficients in `ℚ[t]`.
fn k_quartic() -> Poly<UniPoly> {
    let c = tp(&[1, 1]).mul(&tp(&[-1, 1]).pow(2));
    Poly::new(vec![c.mul(&tp(&[0, -1, 1])), UniPoly::zero(), c.scale(&Rational::from(-2)), UniPoly::zero(), tp(&[0, 1])])
}

/// `H(v) = (v+t)(tv+t²−1)(v² − t² + 64tx·K(v))`.
pub fn teichmuller_sextic() -> VPoly {
    let lift = |p: &Poly<UniPoly>| VPoly::new(p.coeffs().iter().map(|c| XPoly::constant(c.clone())).collect());
    let k = lift(&k_quartic()).scale(&XPoly::new(vec![UniPoly::zero(), tp(&[0, 64])]));
    let q = VPoly::new(vec![tc(&[0, 0, -1]), XPoly::zero(), XPoly::one()]).add(&k);
    VPoly::new(vec![tc(&[0, 1]), XPoly::one()])
        .mul(&VPoly::new(vec![tc(&[-1, 0, 1]), tc(&[0, 1])]))
        .mul(&q)
}

/// `H(1−t) = (t−1)(1 − 2t − 128t(1−t)³x)` as an identity in `ℚ[t, x]`.
pub fn check_locus_factorization() -> bool {
    let h = teichmuller_sextic().eval(&tc(&[1, -1]));
    let tm1 = tp(&[-1, 1]);
    let want = XPoly::new(vec![tm1.mul(&tp(&[1, -2])), tp(&[0, -128]).mul(&tp(&[1, -1]).pow(3)).mul(&tm1)]);
    h == want
}

/// On the locus, `2(1−t)³ · (v² − t² + 64tx·K) = t·(v−t+1)(v+t−1)(v²(1−2t) + 2t³ − 3t² + 1)`.
pub fn check_locus_radicand() -> bool {
    let vp = |c: Vec<UniPoly>| Poly::new(c);
    let omt3 = tp(&[1, -1]).pow(3).scale(&Rational::from(2));
    let lhs = vp(vec![tp(&[0, 0, -1]), UniPoly::zero(), UniPoly::one()])
        .scale(&omt3)
        .add(&k_quartic().scale(&tp(&[1, -2])));
    let rhs = vp(vec![tp(&[1, -1]), UniPoly::one()])
        .mul(&vp(vec![tp(&[-1, 1]), UniPoly::one()]))
        .mul(&vp(vec![tp(&[1, 0, -3, 2]), UniPoly::zero(), tp(&[1, -2])]))
        .scale(&tp(&[0, 1]));
    lhs == rhs
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TeichmullerReport {
    pub t0: String,
    pub locus_x: String,
    pub argument: String,
    pub factorization: bool,
    pub locus_radicand: bool,
    pub integral: String,
    pub ode_residual_log10: f64,
    /// `(1−t)/t^{3/2} · ₂F₁(3/8, 5/8; 1 | z)`.
    pub hyp2f1_log10_difference: Option<f64>,
    /// The same with lower parameters `3/8, 3/8`.
    pub printed_parameters_ratio: Option<String>,
}

impl TeichmullerReport {
    pub fn holds(&self, tol_log10: f64) -> bool {
        self.factorization
            && self.locus_radicand
            && self.ode_residual_log10 < tol_log10
            && self.hyp2f1_log10_difference.is_some_and(|d| d < tol_log10)
    }
}

type Jet = TruncatedSeries<HPComplex>;

fn jet_pow(a: &Jet, p: &Rational) -> Result<Jet> {
    let a0 = a.coeff(0);
    let mut unit = a.scale(&a0.inv());
    unit.set_coeff(0, HPComplex::one());
    Ok(unit.pow_rational(p)?.scale(&a0.pow_rational(p)))
}

/// `I(t), I'(t), I''(t)` for the locus integral from `v = −t` to `v = 1/t − t`.
pub fn locus_integral_jet(t0: &Rational, prec: u32) -> Result<([HPComplex; 3], f64)> {
    let wp = prec + 32;
    let t = Jet::new(vec![HPComplex::real(t0.clone()).approx(wp), HPComplex::one()], 2);
    let tinv = t.inv()?;
    let c = |q: i64| Jet::constant(HPComplex::from_i64(q), 2);
    let tm1 = t.sub(&c(1));
    let pref = jet_pow(&tm1, &Rational::from((3, 2)))?.mul(&tinv).scale(&HPComplex::from_i64(2).mul(&HPComplex::pi(wp).inv()));
    let t2 = t.mul(&t);
    let quad_c = t2.mul(&t).scale(&HPComplex::from_i64(2)).sub(&t2.scale(&HPComplex::from_i64(3))).add(&c(1));
    let one_m2t = c(1).sub(&t.scale(&HPComplex::from_i64(2)));
    let f = |n: &crate::numerics::Node| -> Vec<HPComplex> {
        let s = Jet::constant(n.v.clone(), 2);
        let v = s.mul(&tinv).sub(&t);
        let b = s.mul(&tinv).sub(&c(1));
        let rest = v.sub(&t).add(&c(1)).mul(&b).mul(&v.mul(&v).mul(&one_m2t).add(&quad_c));
        let r = rest.mul(&tinv).neg();
        let w = n.from_a.mul(&n.to_b).sqrt().inv();
        let rp = jet_pow(&r, &Rational::from((-1, 2))).expect("unit constant term");
        pref.mul(&b).mul(&rp).scale(&w).coeffs().to_vec()
    };
    let spec = QuadratureSpec::new(wp).with_target(-(prec as i64) - 8);
    let r = integrate_vec(f, &HPComplex::zero(), &HPComplex::one(), &spec)?;
    if !r.converged {
        return Err(Error::Accuracy { estimate: r.error_log2.exp2() });
    }
    let mut v = r.values.clone();
    v.resize(3, HPComplex::zero());
    Ok(([v[0].clone(), v[1].clone(), v[2].mul(&HPComplex::from_i64(2))], r.error_log2))
}

fn is_degenerate(t: &Rational) -> bool {
    let t2 = Rational::from(t * t);
    t.cmp0().is_eq() || t2 == 1 || Rational::from(&t2 * 4) == 1 || Rational::from(&t2 * 2) == 1
}

pub fn teichmuller_locus_check(t0: &Rational, prec: u32) -> Result<TeichmullerReport> {
    if is_degenerate(t0) {
        return crate::error::usage("t₀ must avoid 0, ±1, ±1/2, ±1/√2");
    }
    let t = t0.clone();
    let omt = Rational::from(1 - &t);
    let locus_x = Rational::from(1 - Rational::from(&t * 2)) / (Rational::from(&t * 128) * omt.clone() * &omt * &omt);
    let t2 = Rational::from(&t * &t);
    let z = (Rational::from(&t2 * 4) - 1u32) / (Rational::from(&t2 * &t2) * 4u32);
    let ([i0, i1, i2], _) = locus_integral_jet(&t, prec)?;
    let op = teichmuller_operator()?;
    let tc = HPComplex::real(t.clone());
    let ev = |k: usize| op.coeff(k).map(|c| HPComplex::real(c.clone())).eval(&tc).approx(prec + 32);
    let res = ev(0).mul(&i0).add(&ev(1).mul(&i1)).add(&ev(2).mul(&i2)).mul(&ev(2).inv());
    let to10 = |l2: f64| l2 * std::f64::consts::LOG10_2;
    let (diff, ratio) = if z.clone().abs() < 1 && t > 1 {
        let zc = HPComplex::real(z.clone());
        let front = HPComplex::real(omt.clone()).mul(&tc.approx(prec + 32).pow_rational(&Rational::from((-3, 2))));
        let a = Rational::from((3, 8));
        let good = hyp2f1_eval(&a, &Rational::from((5, 8)), &Rational::from(1), &zc, prec)?.mul(&front);
        let printed = hyp2f1_eval(&a, &a, &Rational::from(1), &zc, prec)?.mul(&front);
        (Some(to10(good.sub(&i0).log2_abs())), Some(i0.mul(&printed.inv()).to_decimal(12)))
    } else {
        (None, None)
    };
    Ok(TeichmullerReport {
        t0: t.to_string(),
        locus_x: locus_x.to_string(),
        argument: z.to_string(),
        factorization: check_locus_factorization(),
        locus_radicand: check_locus_radicand(),
        integral: i0.to_decimal(30),
        ode_residual_log10: to10(res.log2_abs()),
        hyp2f1_log10_difference: diff,
        printed_parameters_ratio: ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;

    #[test]
    fn symbolic_parts() {
        assert!(check_locus_factorization());
        assert!(check_locus_radicand());
    }

    #[test]
    fn locus_at_three() {
        let r = teichmuller_locus_check(&rat(3, 1), 192).unwrap();
        assert_eq!(r.locus_x, "5/3072");
        assert_eq!(r.argument, "35/324");
        assert!(r.holds(-20.0), "{r:?}");
        assert!(r.printed_parameters_ratio.as_deref().unwrap().starts_with("1.0107"));
        assert!(teichmuller_locus_check(&rat(1, 2), 64).is_err());
    }

    #[test]
    fn continuation_matches_closed_form() {
        use crate::exactcore::Matrix;
        use crate::numerics::{ode_continue, ContinuationSpec, ContourPath};
        let p = 160;
        let ([i0, i1, _], _) = locus_integral_jet(&rat(5, 1), p).unwrap();
        let l = teichmuller_operator().unwrap().map_coeffs(|c| HPComplex::real(c.clone())).unwrap();
        let path = ContourPath::open((0..=4).map(|k| HPComplex::real(rat(10 - k, 2))).collect()).unwrap();
        let start = Matrix::from_rows(vec![vec![i0], vec![i1]]);
        let r = ode_continue(&l, &path, Some(&start), &ContinuationSpec::new(p)).unwrap();
        let t = HPComplex::real(rat(3, 1)).approx(p);
        let front = HPComplex::real(rat(-2, 1)).mul(&t.pow_rational(&rat(-3, 2)));
        let want = hyp2f1_eval(&rat(3, 8), &rat(5, 8), &rat(1, 1), &HPComplex::real(rat(35, 324)), p).unwrap().mul(&front);
        assert!(r.end_data[(0, 0)].sub(&want).abs_f64() < 1e-25);
    }
}
