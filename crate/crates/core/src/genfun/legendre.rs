use crate::error::{usage, Result};
use crate::exactcore::sequences::{central_binomial, central_binomial_series, hyp2f1_series, pochhammer};
use crate::exactcore::{BiPoly, Poly, QAlgebra, Ring, TruncatedSeries, UniPoly};
use rug::{Integer, Rational};

/// Series in `z` whose coefficients are polynomials in `y`, or scalars at a fixed `y`.
pub type BivariateTruncation<R> = TruncatedSeries<R>;

/// Outcome of comparing two truncated expansions coefficientwise.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IdentityReport {
    /// Highest order compared.
    pub order: usize,
    /// Lowest order with a nonzero residual.
    pub first_nonzero: Option<usize>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.first_nonzero.is_none()
    }
    /// The residual vanishes through this order.
    pub fn agrees_through(&self) -> Option<usize> {
        match self.first_nonzero {
            None => Some(self.order),
            Some(0) => None,
            Some(k) => Some(k - 1),
        }
    }
    fn from_residual<R: Ring>(res: &[R]) -> Self {
        IdentityReport { order: res.len().saturating_sub(1), first_nonzero: res.iter().position(|c| !c.is_zero()) }
    }
}

/// `P_0(y) … P_n(y)` in any ℚ-algebra.
pub fn legendre_values<R: QAlgebra>(y: &R, n: usize) -> Vec<R> {
    let mut out = vec![R::one()];
    let mut prev = R::zero();
    for k in 0..n {
        let cur = out[k].clone();
        let a = y.mul(&cur).mul(&R::from_i64(2 * k as i64 + 1));
        let b = prev.mul(&R::from_i64(k as i64));
        let next = a.sub(&b).mul(&R::from_rational(&Rational::from((1, k as i64 + 1))));
        prev = cur;
        out.push(next);
    }
    out
}

/// `Σ C(2n,n) P_n(y)² zⁿ` through `z^order`.
pub fn build_fp2_twisted<R: QAlgebra>(y: &R, order: usize) -> BivariateTruncation<R> {
    let p = legendre_values(y, order);
    let c = p
        .iter()
        .enumerate()
        .map(|(n, pn)| pn.mul(pn).mul(&R::from_rational(&Rational::from(central_binomial(n as u32)))))
        .collect();
    TruncatedSeries::new(c, order).with_var('z')
}

/// `Σ P_n(y)^k zⁿ`.
pub fn legendre_power_series<R: QAlgebra>(y: &R, k: u32, order: usize) -> TruncatedSeries<R> {
    let c = legendre_values(y, order).iter().map(|p| p.powu(k)).collect();
    TruncatedSeries::new(c, order).with_var('z')
}

fn residual<R: Ring>(a: &TruncatedSeries<R>, b: &TruncatedSeries<R>) -> IdentityReport {
    let n = a.order().min(b.order());
    let d: Vec<R> = (0..=n).map(|i| a.coeff(i).sub(&b.coeff(i))).collect();
    IdentityReport::from_residual(&d)
}

/// Right side of the squared-Legendre `₂F₁` identity, `y` symbolic.
pub fn wan_rhs(order: usize) -> Result<TruncatedSeries<UniPoly>> {
    let y2 = UniPoly::monomial(2, Rational::from(1));
    let d = TruncatedSeries::new(vec![UniPoly::one(), y2.scale(&Rational::from(-2)), UniPoly::one()], order);
    let one_minus = UniPoly::one().sub(&y2);
    let num = TruncatedSeries::new(vec![UniPoly::zero(), UniPoly::zero(), one_minus.mul(&one_minus).scale(&Rational::from(4))], order);
    let arg = num.mul(&d.pow_rational(&Rational::from(-2))?);
    let f = hyp2f1_series::<UniPoly>(&Rational::from((1, 4)), &Rational::from((3, 4)), &Rational::from(1), order);
    Ok(d.pow_rational(&Rational::from((-1, 2)))?.mul(&f.compose(&arg)?))
}

/// Compares `Σ P_n(y)² zⁿ` with its closed form through `z^order`.
pub fn check_wan_identity(order: usize) -> Result<IdentityReport> {
    let lhs = legendre_power_series(&UniPoly::x(), 2, order);
    Ok(residual(&lhs, &wan_rhs(order)?))
}

/// Outcome of a bivariate comparison by total degree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BivariateReport {
    pub total_degree: u32,
    pub first_nonzero: Option<u32>,
    pub residual_terms: usize,
}

impl BivariateReport {
    pub fn holds(&self) -> bool {
        self.residual_terms == 0
    }
}

fn truncate_total(p: &BiPoly<Rational>, n: u32) -> BiPoly<Rational> {
    let mut out = BiPoly::zero();
    for (&(i, j), c) in p.terms() {
        if i + j <= n {
            out.add_term(i, j, c.clone());
        }
    }
    out
}

fn nonpositive_integer(c: &Rational) -> bool {
    *c.denom() == 1 && c.cmp0().is_le()
}

/// Both sides of the Appell `F₄` product identity in `(x, y)` through total degree `n`.
pub fn check_f4_identity(a: &Rational, b: &Rational, c1: &Rational, c2: &Rational, n: u32) -> Result<BivariateReport> {
    if Rational::from(c1 + c2) != Rational::from(a + b) + 1u32 {
        return usage("F4 product identity requires c1 + c2 = a + b + 1");
    }
    if nonpositive_integer(c1) || nonpositive_integer(c2) {
        return usage("lower parameters must not be nonpositive integers");
    }
    Ok(f4_residual(a, b, c1, c2, n))
}

fn f4_residual(a: &Rational, b: &Rational, c1: &Rational, c2: &Rational, n: u32) -> BivariateReport {
    let xs = BiPoly::<Rational>::from_i64_terms(&[(1, 0, 1), (1, 1, -1)]);
    let ys = BiPoly::<Rational>::from_i64_terms(&[(0, 1, 1), (1, 1, -1)]);
    let mut xp = vec![BiPoly::one()];
    let mut yp = vec![BiPoly::one()];
    for k in 1..=n as usize {
        xp.push(truncate_total(&xp[k - 1].mul(&xs), n));
        yp.push(truncate_total(&yp[k - 1].mul(&ys), n));
    }
    let fact = |k: u32| Rational::from(Integer::from(Integer::factorial(k)));
    let mut lhs = BiPoly::zero();
    for m in 0..=n {
        for k in 0..=(n - m) {
            let c = pochhammer(a, m + k) * pochhammer(b, m + k)
                / (fact(m) * fact(k) * pochhammer(c1, m) * pochhammer(c2, k));
            let t = truncate_total(&xp[m as usize].mul(&yp[k as usize]), n);
            lhs = lhs.add(&t.scale(&c));
        }
    }
    let f1 = hyp2f1_series::<Rational>(a, b, c1, n as usize);
    let f2 = hyp2f1_series::<Rational>(a, b, c2, n as usize);
    let rhs = truncate_total(
        &BiPoly::from_poly_a(&f1.to_poly()).mul(&BiPoly::from_poly_b(&f2.to_poly())),
        n,
    );
    let res = lhs.sub(&rhs);
    BivariateReport {
        total_degree: n,
        first_nonzero: res.terms().map(|(&(i, j), _)| i + j).min(),
        residual_terms: res.len(),
    }
}

/// Residuals of the two partial differential equations satisfied by the twisted series.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PdeReport {
    pub order: usize,
    /// Orders at which the first equation leaves a nonzero coefficient.
    pub first_nonzero: Vec<usize>,
    /// Same for the second equation, multiplied through by `y`.
    pub second_nonzero: Vec<usize>,
}

impl PdeReport {
    pub fn holds(&self) -> bool {
        self.first_nonzero.is_empty() && self.second_nonzero.is_empty()
    }
}

/// Applies both equations to the exact truncation with `y` symbolic.
pub fn check_pde_system(order: usize) -> PdeReport {
    check_pde_system_perturbed(order, &Rational::new())
}

/// As [`check_pde_system`], with the `yz ∂F/∂z` coefficient of the first equation
/// changed from `1` to `1 + delta`.
pub fn check_pde_system_perturbed(order: usize, delta: &Rational) -> PdeReport {
    let f = build_fp2_twisted(&UniPoly::x(), order + 1);
    let fk = |k: i64| -> UniPoly {
        if k < 0 {
            UniPoly::zero()
        } else {
            f.coeff(k as usize)
        }
    };
    let dk = |k: i64| fk(k).derivative();
    let y = UniPoly::x();
    let y2 = y.mul(&y);
    let q = |a: i64, b: i64| Rational::from((a, b));
    let one = Rational::from(1);
    let lam = Rational::from(&one + delta);
    let mut first = Vec::new();
    let mut second = Vec::new();
    for n in 0..=order {
        let ni = n as i64;
        let nq = Rational::from(ni);
        // z(y² − 2z − 1/2) F_yz + (y/2)(1 − y²) F_yy − (y² + z) F_y + (1+δ) y z F_z
        let mut r = y2.mul(&dk(ni)).scale(&nq);
        r = r.sub(&dk(ni).scale(&q(ni, 2)));
        r = r.sub(&dk(ni - 1).scale(&Rational::from(2 * (ni - 1))));
        r = r.add(&y.mul(&UniPoly::one().sub(&y2)).mul(&fk(ni).derivative().derivative()).scale(&q(1, 2)));
        r = r.sub(&y2.mul(&dk(ni))).sub(&dk(ni - 1));
        r = r.add(&y.mul(&fk(ni)).scale(&Rational::from(&nq * &lam)));
        if !r.is_zero() {
            first.push(n);
        }
        // y·[F + (2z² − z/2) F_zz + (5z − 1/2) F_z] + (y² − 1)((z + 1/4) F_yz + F_y/2)
        let mut s = y.mul(&fk(ni));
        s = s.add(&y.mul(&fk(ni)).scale(&Rational::from(2 * ni * (ni - 1))));
        s = s.sub(&y.mul(&fk(ni + 1)).scale(&q((ni + 1) * ni, 2)));
        s = s.add(&y.mul(&fk(ni)).scale(&Rational::from(5 * ni)));
        s = s.sub(&y.mul(&fk(ni + 1)).scale(&q(ni + 1, 2)));
        let inner = dk(ni).scale(&nq).add(&dk(ni + 1).scale(&q(ni + 1, 4))).add(&dk(ni).scale(&q(1, 2)));
        s = s.add(&y2.sub(&UniPoly::one()).mul(&inner));
        if !s.is_zero() {
            second.push(n);
        }
    }
    PdeReport { order, first_nonzero: first, second_nonzero: second }
}

/// `F_{P³}` through its Hadamard-product representation at a fixed `y`.
pub fn cube_rhs<R: QAlgebra>(y: &R, order: usize) -> Result<TruncatedSeries<R>> {
    let r = |q: Rational| R::from_rational(&q);
    let y2 = y.mul(y);
    let p = TruncatedSeries::new(
        vec![
            R::one(),
            y2.mul(y).neg(),
            y2.mul(&R::from_i64(3)).sub(&R::from_i64(2)).mul(&r(Rational::from((1, 4)))),
        ],
        order,
    );
    let w = y2.sub(&R::one()).powu(3);
    let quartic = TruncatedSeries::new(
        vec![R::zero(), R::zero(), w.clone(), R::zero(), w.mul(&r(Rational::from((-1, 4))))],
        order,
    );
    let arg = quartic.mul(&p.pow_rational(&Rational::from(-2))?);
    let f = hyp2f1_series::<R>(&Rational::from((1, 4)), &Rational::from((3, 4)), &Rational::from(1), order);
    let h = p.pow_rational(&Rational::from((-1, 2)))?.mul(&f.compose(&arg)?);
    let cb = central_binomial_series(order).map(|c| R::from_rational(c));
    let star = h.hadamard(&cb)?;
    // x = z/(1 + z²)
    let one_plus = TruncatedSeries::new(vec![R::one(), R::zero(), R::one()], order);
    let xz = one_plus.inv()?.shift(1);
    Ok(one_plus.pow_rational(&Rational::from((-1, 2)))?.mul(&star.compose(&xz)?).with_var('z'))
}

/// Compares `Σ P_n(y)³ zⁿ` with its Hadamard-product form through `z^order`.
pub fn check_cube_theorem<R: QAlgebra>(y: &R, order: usize) -> Result<IdentityReport> {
    if order < 2 {
        return usage("cube identity check needs order at least 2");
    }
    let lhs = legendre_power_series(y, 3, order);
    Ok(residual(&lhs, &cube_rhs(y, order)?))
}

/// `C(2n,n) P_n(y)²` for fixed rational `y`.
pub fn twisted_coefficients(y: &Rational, n: usize) -> Vec<Rational> {
    build_fp2_twisted(y, n).coeffs().to_vec()
}

/// Empirical growth rate `(M(n)/M(n/2))^{2/n}` of the twisted coefficients, where `M`
/// is the maximum absolute value over a window of 16 consecutive indices.
pub fn growth_rate_estimate(y: &Rational, n: usize) -> f64 {
    const WINDOW: usize = 16;
    let c = twisted_coefficients(y, n);
    let log_max = |end: usize| -> f64 {
        c[end + 1 - WINDOW..=end]
            .iter()
            .filter(|q| q.cmp0().is_ne())
            .map(|q| {
                let f = rug::Float::with_val(128, q.clone().abs());
                f.log2().to_f64()
            })
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let half = n / 2;
    ((log_max(n) - log_max(half)) / (n - half) as f64).exp2()
}

/// `1/R_y = 4 / min|y ± √(y²−1)|²` for real `y`.
pub fn inverse_radius(y: f64) -> f64 {
    let m = if y.abs() <= 1.0 {
        1.0
    } else {
        let s = (y * y - 1.0).sqrt();
        (y - s).abs().min((y + s).abs())
    };
    4.0 / (m * m)
}

/// `P_n(y)` values as exact polynomials for `n ≤ order`.
pub fn legendre_polys(order: usize) -> Vec<Poly<Rational>> {
    legendre_values(&UniPoly::x(), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;
    use crate::exactcore::sequences::legendre_explicit;

    #[test]
    fn twisted_low_orders() {
        let f = build_fp2_twisted(&UniPoly::x(), 3);
        assert_eq!(f.coeff(0), UniPoly::one());
        assert_eq!(f.coeff(1), UniPoly::from_i64s(&[0, 0, 2]));
        let f0 = build_fp2_twisted(&Rational::from(1), 6);
        for n in 0..=6 {
            assert_eq!(f0.coeff(n), Rational::from(central_binomial(n as u32)));
        }
    }

    #[test]
    fn legendre_values_match_explicit_sum() {
        let p = legendre_polys(9);
        for (n, pn) in p.iter().enumerate() {
            assert_eq!(*pn, legendre_explicit(n));
        }
    }

    #[test]
    fn wan_identity_low_order() {
        let r = check_wan_identity(12).unwrap();
        assert!(r.holds(), "{r:?}");
        let rhs = wan_rhs(2).unwrap();
        assert_eq!(rhs.coeff(0), UniPoly::one());
        assert_eq!(rhs.coeff(1), UniPoly::from_i64s(&[0, 0, 1]));
    }

    #[test]
    fn f4_identity() {
        let q = |a, b| rat(a, b);
        assert!(check_f4_identity(&q(1, 4), &q(3, 4), &q(1, 1), &q(1, 1), 6).unwrap().holds());
        assert!(check_f4_identity(&q(1, 2), &q(1, 2), &q(1, 1), &q(1, 1), 6).unwrap().holds());
        assert!(check_f4_identity(&q(1, 3), &q(1, 2), &q(1, 2), &q(4, 3), 5).unwrap().holds());
        assert!(check_f4_identity(&q(1, 4), &q(3, 4), &q(1, 1), &q(2, 1), 4).is_err());
        assert!(check_f4_identity(&q(-1, 2), &q(1, 2), &q(0, 1), &q(1, 1), 4).is_err());
    }

    #[test]
    fn f4_fails_off_constraint_line() {
        let q = |a, b| rat(a, b);
        let r = f4_residual(&q(1, 4), &q(3, 4), &q(1, 1), &q(3, 2), 4);
        assert!(!r.holds());
        assert_eq!(r.first_nonzero, Some(2));
    }

    #[test]
    fn pde_system_and_control() {
        assert!(check_pde_system(1).holds());
        assert!(check_pde_system(6).holds());
        let bad = check_pde_system_perturbed(6, &rat(1, 7));
        assert!(!bad.holds());
        assert!(bad.second_nonzero.is_empty());
    }

    #[test]
    fn cube_identity() {
        assert!(check_cube_theorem(&rat(1, 2), 12).unwrap().holds());
        assert!(check_cube_theorem(&Rational::from(1), 8).unwrap().holds());
        let r = cube_rhs(&rat(1, 3), 3).unwrap();
        assert_eq!(r.coeff(0), Rational::from(1));
        assert_eq!(r.coeff(1), rat(1, 27));
    }

    #[test]
    fn growth_rates_match_radius() {
        for y in [rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1)] {
            let est = growth_rate_estimate(&y, 400);
            let want = inverse_radius(y.to_f64());
            assert!((est / want - 1.0).abs() < 0.01, "y = {y}: {est} vs {want}");
        }
    }
}
