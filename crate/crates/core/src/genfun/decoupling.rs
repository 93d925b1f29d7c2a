use super::legendre::build_fp2_twisted;
use crate::curves::i_pm;
use crate::error::Result;
use crate::exactcore::Ring;
use crate::holonomic::catalog::Sign;
use crate::numerics::HPComplex;
use rug::Rational;

#[derive(Clone, Debug, serde::Serialize)]
pub struct DecouplingReport {
    pub y: String,
    pub z: String,
    pub terms: usize,
    pub lhs: String,
    pub rhs: String,
    pub difference_log2: f64,
    pub quadrature_error_log2: f64,
    pub principal_branch_safe: bool,
}

/// `w = √((1+4z)² − 16y²z) + 4y√(−z)` with `√(−z) = i√z` for `z > 0`.
pub fn decoupling_w(y: &Rational, z: &Rational, prec: u32) -> HPComplex {
    let (yc, zc) = (HPComplex::real(y.clone()).approx(prec), HPComplex::real(z.clone()).approx(prec));
    let four = HPComplex::from_i64(4);
    let a = HPComplex::one().add(&four.mul(&zc));
    let r = a.mul(&a).sub(&HPComplex::from_i64(16).mul(&yc).mul(&yc).mul(&zc)).sqrt();
    r.add(&four.mul(&yc).mul(&zc.neg().sqrt()))
}

/// Compares the exact partial sum of `F̃(y, z)` with `w · I₊(4z, w²) · I₋(4z, w²)`.
pub fn check_decoupling(y: &Rational, z: &Rational, terms: usize, prec: u32) -> Result<DecouplingReport> {
    if terms == 0 {
        return crate::error::usage("at least one term is required");
    }
    let f = build_fp2_twisted(y, terms - 1);
    let lhs = f.eval_trunc(z);
    let w = decoupling_w(y, z, prec + 32);
    let u = HPComplex::real(Rational::from(z * 4u32));
    let x = w.mul(&w);
    let ip = i_pm(&u, &x, Sign::Plus, 0, prec)?;
    let im = i_pm(&u, &x, Sign::Minus, 0, prec)?;
    let rhs = w.mul(&ip.value).mul(&im.value);
    let diff = HPComplex::real(lhs.clone()).approx(prec + 32).sub(&rhs);
    Ok(DecouplingReport {
        y: y.to_string(),
        z: z.to_string(),
        terms,
        lhs: HPComplex::real(lhs).approx(prec).to_decimal(40),
        rhs: rhs.to_decimal(40),
        difference_log2: diff.log2_abs(),
        quadrature_error_log2: ip.error_log2.max(im.error_log2),
        principal_branch_safe: ip.principal_branch_safe && im.principal_branch_safe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;

    #[test]
    fn decoupling_small() {
        let r = check_decoupling(&rat(1, 2), &rat(1, 100), 60, 160).unwrap();
        assert!(r.difference_log2 < -120.0, "{r:?}");
        assert!(r.principal_branch_safe);
    }

    #[test]
    fn w_at_zero() {
        let w = decoupling_w(&rat(1, 3), &rat(0, 1), 64);
        assert!(w.sub(&HPComplex::one()).log2_abs() < -60.0);
    }
}
