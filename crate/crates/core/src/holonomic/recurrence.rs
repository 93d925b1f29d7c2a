use crate::error::{usage, Error, Result};
use crate::exactcore::{Poly, Ring};

/// `Σ_{i=0}^{r} p_i(n) u_{n+1−r+i} = 0` for `n ≥ s−1`, where `s` is the number of
/// initial values and `u_k = 0` for `k < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PRecurrence<R: Ring> {
    /// `p_0 … p_r` as polynomials in `n`; `p_r` multiplies the newest term.
    pub coeffs: Vec<Poly<R>>,
    pub init: Vec<R>,
}

impl<R: Ring> PRecurrence<R> {
    pub fn new(coeffs: Vec<Poly<R>>, init: Vec<R>) -> Result<Self> {
        match coeffs.last() {
            None => usage("empty recurrence"),
            Some(p) if p.is_zero() => usage("leading recurrence coefficient is identically zero"),
            _ if init.is_empty() => usage("at least one initial value is required"),
            _ => Ok(PRecurrence { coeffs, init }),
        }
    }
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `u_0 … u_{n_max}` by exact forward unrolling.
pub fn recurrence_unroll<R: Ring>(rec: &PRecurrence<R>, n_max: usize) -> Result<Vec<R>> {
    let r = rec.order() as i64;
    let mut u: Vec<R> = rec.init.iter().take(n_max + 1).cloned().collect();
    let get = |u: &[R], k: i64| -> R {
        if k < 0 {
            R::zero()
        } else {
            u[k as usize].clone()
        }
    };
    while u.len() <= n_max {
        let n = u.len() as i64 - 1;
        let nn = R::from_i64(n);
        let lead = rec.coeffs[r as usize].eval(&nn);
        if lead.is_zero() {
            return Err(Error::SingularIndex { index: n + 1 });
        }
        let mut acc = R::zero();
        for i in 0..r {
            let k = n + 1 - r + i;
            let v = get(&u, k);
            if v.is_zero() {
                continue;
            }
            acc.add_assign(&rec.coeffs[i as usize].eval(&nn).mul(&v));
        }
        let next = acc
            .neg()
            .try_div(&lead)
            .ok_or_else(|| Error::Domain(format!("u_{} is not defined over the coefficient ring", n + 1)))?;
        u.push(next);
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn factorial_reciprocals() {
        // (n+1) u_{n+1} − u_n = 0
        let rec = PRecurrence::new(
            vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[1, 1])],
            vec![Rational::from(1)],
        )
        .unwrap();
        let u = recurrence_unroll(&rec, 5).unwrap();
        assert_eq!(u[5], Rational::from((1, 120)));
    }

    #[test]
    fn singular_index_reported() {
        // (n−2) u_{n+1} = u_n
        let rec = PRecurrence::new(
            vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[-2, 1])],
            vec![Rational::from(1)],
        )
        .unwrap();
        assert_eq!(recurrence_unroll(&rec, 6), Err(Error::SingularIndex { index: 3 }));
    }
}
