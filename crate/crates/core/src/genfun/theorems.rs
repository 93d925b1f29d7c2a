use crate::error::{Error, Result};
use crate::exactcore::sequences::central_binomial;
use crate::exactcore::{IntPoly, Poly, RatFunc, Ring, UniPoly, QT};
use crate::holonomic::catalog::{l5, l5_recurrence, op1_recurrence};
use crate::holonomic::{frobenius_solve, operator_substitute, recurrence_unroll, Point};
use rug::Rational;

/// Integrality, central-binomial divisibility and degree of a polynomial sequence.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IntegralityReport {
    pub n_max: usize,
    pub first_non_integral: Option<usize>,
    pub first_not_divisible: Option<usize>,
    pub first_wrong_degree: Option<usize>,
}

impl IntegralityReport {
    pub fn holds(&self) -> bool {
        self.first_non_integral.is_none() && self.first_not_divisible.is_none() && self.first_wrong_degree.is_none()
    }
    /// The named failure for the first violated assertion.
    pub fn into_result(self) -> Result<Self> {
        if let Some(n) = self.first_non_integral {
            return Err(Error::Mismatch(format!("coefficient {n} has non-integral coefficients")));
        }
        if let Some(n) = self.first_not_divisible {
            return Err(Error::Mismatch(format!("coefficient {n} is not divisible by C(2n,n)")));
        }
        if let Some(n) = self.first_wrong_degree {
            return Err(Error::Mismatch(format!("coefficient {n} has the wrong degree")));
        }
        Ok(self)
    }
}

fn integrality(seq: &[UniPoly], degree: Option<&dyn Fn(usize) -> i64>) -> IntegralityReport {
    let mut rep = IntegralityReport {
        n_max: seq.len() - 1,
        first_non_integral: None,
        first_not_divisible: None,
        first_wrong_degree: None,
    };
    for (n, p) in seq.iter().enumerate() {
        let ip: Option<IntPoly> = p.to_integer();
        match ip {
            None => {
                rep.first_non_integral.get_or_insert(n);
            }
            Some(ip) => {
                let c = ip.content();
                if !c.is_divisible(&central_binomial(n as u32)) {
                    rep.first_not_divisible.get_or_insert(n);
                }
            }
        }
        if let Some(d) = degree {
            if p.deg() != d(n) {
                rep.first_wrong_degree.get_or_insert(n);
            }
        }
    }
    rep
}

/// Unrolls the `u_n(t)` recurrence and checks integrality, divisibility and `deg u_n = 4n`.
pub fn check_theorem_th1(n_max: usize) -> Result<IntegralityReport> {
    if n_max < 1 {
        return crate::error::usage("n_max must be at least 1");
    }
    let u = recurrence_unroll(&op1_recurrence(), n_max)?;
    Ok(integrality(&u, Some(&|n| 4 * n as i64)))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct L5Report {
    pub recursion: IntegralityReport,
    pub series_order: usize,
    pub frobenius_exponent: String,
    pub first_mismatch: Option<usize>,
}

impl L5Report {
    pub fn holds(&self) -> bool {
        self.recursion.holds() && self.first_mismatch.is_none()
    }
}

/// `L₅` in the local parameter `X = 1/(5x)` at infinity with `u ↦ 5u − 3`.
pub fn l5_transformed() -> Result<crate::holonomic::DiffOperator<QT>> {
    let inv = RatFunc::new(Poly::one(), Poly::from_i64s(&[0, 5]));
    let at_inf = operator_substitute(&l5()?, &inv)?;
    let shift = QT::from_poly(UniPoly::from_i64s(&[-3, 5]));
    at_inf.map_coeffs(|c| c.compose(&shift))
}

/// Checks the `a_n(u)` recursion and its agreement with the transformed local solution of `L₅`.
pub fn check_l5_remark(n_max: usize, order: usize) -> Result<L5Report> {
    if n_max < 2 {
        return crate::error::usage("n_max must be at least 2");
    }
    let a = recurrence_unroll(&l5_recurrence(), n_max.max(order))?;
    let recursion = integrality(&a[..=n_max], None);
    let l = l5_transformed()?;
    let sols = frobenius_solve(&l, &Point::Finite(QT::zero()), None, order)?;
    let sol = sols
        .iter()
        .find(|s| s.exponent == Rational::from((1, 2)))
        .ok_or_else(|| Error::Mismatch("no local solution with exponent 1/2".into()))?;
    let c0 = sol.series.coeff(0);
    let first_mismatch = (0..=order).find(|&n| {
        let cn = sol.series.coeff(n);
        cn != c0.mul(&QT::from_poly(a[n].clone()))
    });
    Ok(L5Report {
        recursion,
        series_order: order,
        frobenius_exponent: sol.exponent.to_string(),
        first_mismatch,
    })
}

/// `u_1 / 2`, for reference.
pub fn u1_half() -> Result<UniPoly> {
    let u = recurrence_unroll(&op1_recurrence(), 1)?;
    Ok(u[1].scale(&Rational::from((1, 2))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn th1_small() {
        let r = check_theorem_th1(30).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(u1_half().unwrap(), UniPoly::from_i64s(&[-6, 40, -24, -48, 8]));
    }

    #[test]
    fn l5_remark_small() {
        let r = check_l5_remark(20, 12).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.frobenius_exponent, "1/2");
    }
}
