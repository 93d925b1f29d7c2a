use super::operator::{operator_substitute, DiffOperator, LocalOperator, Scalar, ThetaForm};
use crate::error::{usage, Error, Result};
use crate::exactcore::{Matrix, Offset, Poly, RatFunc, TruncatedSeries};
use rug::Rational;

/// Expansion point of a local solution.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<K> {
    Finite(K),
    Infinity,
}

/// Non-logarithmic solution `x^e Σ c_n x^n` in the local parameter.
#[derive(Clone, Debug)]
pub struct FrobeniusSolution<K: Scalar> {
    pub point: Point<K>,
    pub exponent: Rational,
    pub series: TruncatedSeries<K>,
    /// The only non-logarithmic solution in its exponent class.
    pub unique: bool,
    /// Logarithmic solutions exist in this exponent class.
    pub log_present: bool,
}

impl<K: Scalar> FrobeniusSolution<K> {
    /// The solution as a series with offset `0` or `1/2`, when the exponent permits.
    pub fn as_offset_series(&self) -> Option<TruncatedSeries<K>> {
        let fl = self.exponent.clone().floor();
        let frac = Rational::from(&self.exponent - &fl);
        let offset = if frac == 0 {
            Offset::Zero
        } else if frac == Rational::from((1, 2)) {
            Offset::Half
        } else {
            return None;
        };
        let k = fl.numer().to_i64()?;
        if k < 0 {
            return None;
        }
        let k = k as usize;
        let mut c = vec![K::zero(); k];
        c.extend(self.series.coeffs().iter().cloned());
        let n = self.series.order();
        Some(TruncatedSeries::new(c, n).with_offset(offset).with_var(self.series.var()))
    }
}

/// `x^e Σ_j (log^j x / j!) Σ_n parts[j][n] x^n`.
#[derive(Clone, Debug)]
pub struct LogSolution<K: Scalar> {
    pub exponent: Rational,
    pub parts: Vec<Vec<K>>,
}

impl<K: Scalar> LogSolution<K> {
    pub fn has_log(&self) -> bool {
        self.parts.iter().skip(1).any(|p| p.iter().any(|c| !c.is_zero()))
    }
}

/// Classes of exponents congruent mod 1, each sorted, with multiplicities.
fn exponent_classes(roots: Vec<(Rational, usize)>) -> Vec<Vec<(Rational, usize)>> {
    let mut classes: Vec<Vec<(Rational, usize)>> = Vec::new();
    for (e, m) in roots {
        let slot = classes.iter_mut().find(|c| {
            let d = Rational::from(&c[0].0 - &e);
            d.is_integer()
        });
        match slot {
            Some(c) => c.push((e, m)),
            None => classes.push(vec![(e, m)]),
        }
    }
    for c in &mut classes {
        c.sort_by(|a, b| a.0.cmp(&b.0));
    }
    classes
}

fn indicial_exponents<K: Scalar>(q0: &Poly<K>, hint: Option<&[Rational]>) -> Result<Vec<(Rational, usize)>> {
    let m = q0.degree().unwrap_or(0);
    if let Some(h) = hint {
        let mut out: Vec<(Rational, usize)> = Vec::new();
        for e in h {
            match out.iter_mut().find(|(x, _)| x == e) {
                Some(slot) => slot.1 += 1,
                None => out.push((e.clone(), 1)),
            }
        }
        if K::EXACT {
            for (e, mult) in &out {
                let shifted = q0.taylor_shift(&K::from_rational(e));
                if (0..*mult).any(|i| !shifted.coeff(i).is_zero()) {
                    return Err(Error::Domain(format!("hinted exponent {e} is not an indicial root of that multiplicity")));
                }
            }
        }
        return Ok(out);
    }
    let rq: Option<Vec<Rational>> = q0.monic().coeffs().iter().map(|c| c.as_rational()).collect();
    let rq = rq.ok_or_else(|| Error::Unsupported("indicial polynomial is not rational; supply exponents".into()))?;
    let p = Poly::new(rq);
    let mut out = Vec::new();
    let mut total = 0;
    for r in p.rational_roots() {
        let mut mult = 0;
        let mut cur = p.clone();
        let lin = Poly::new(vec![Rational::from(-&r), Rational::from(1)]);
        while let Some(q) = cur.try_div(&lin) {
            mult += 1;
            cur = q;
        }
        total += mult;
        out.push((r, mult));
    }
    if total < m {
        return Err(Error::Unsupported("indicial polynomial has irrational roots; supply exponents".into()));
    }
    Ok(out)
}

/// Full local basis (with logarithms) by the Frobenius recurrence on the θ-form.
pub fn frobenius_basis<K: Scalar>(tf: &ThetaForm<K>, hint: Option<&[Rational]>, order: usize) -> Result<Vec<LogSolution<K>>> {
    if tf.q.len() <= order {
        return usage("θ-form is shorter than the requested order");
    }
    let roots = indicial_exponents(tf.indicial(), hint)?;
    let mut out = Vec::new();
    for class in exponent_classes(roots) {
        out.extend(class_basis(tf, &class, order));
    }
    Ok(out)
}

fn class_basis<K: Scalar>(tf: &ThetaForm<K>, class: &[(Rational, usize)], order: usize) -> Vec<LogSolution<K>> {
    let e0 = class[0].0.clone();
    let total: usize = class.iter().map(|c| c.1).sum();
    let (jn, pn) = (total, total);
    let mult_at = |n: usize| -> usize {
        let s = Rational::from(&e0 + Rational::from(n as i64));
        class.iter().find(|c| c.0 == s).map_or(0, |c| c.1)
    };
    let mut phi: Vec<Vec<Vec<K>>> = Vec::with_capacity(order + 1);
    let mut next_param = 0;
    for n in 0..=order {
        let s = K::from_rational(&Rational::from(&e0 + Rational::from(n as i64)));
        let mut rhs = vec![vec![K::zero(); pn]; jn];
        for k in 1..=n.min(tf.q.len() - 1) {
            if tf.q[k].is_zero() {
                continue;
            }
            let prev = &phi[n - k];
            if prev.iter().all(|r| r.iter().all(|c| c.is_zero())) {
                continue;
            }
            let d = tf.q[k].taylor_shift(&s.sub(&K::from_i64(k as i64)));
            for j in 0..jn {
                for (i, di) in d.coeffs().iter().enumerate() {
                    if j + i >= jn || di.is_zero() {
                        continue;
                    }
                    for p in 0..pn {
                        if !prev[j + i][p].is_zero() {
                            let t = di.mul(&prev[j + i][p]);
                            rhs[j][p].sub_assign(&t);
                        }
                    }
                }
            }
        }
        let mu = mult_at(n);
        let d = tf.q[0].taylor_shift(&s);
        let mut cur = vec![vec![K::zero(); pn]; jn];
        for l in 0..mu.min(jn) {
            if next_param + l < pn {
                cur[l][next_param + l] = K::one();
            }
        }
        next_param += mu;
        let pivot = d.coeff(mu);
        for j in (0..jn).rev() {
            if j + mu >= jn {
                continue;
            }
            let mut acc = rhs[j].clone();
            for i in (mu + 1)..=d.degree().unwrap_or(0) {
                if j + i >= jn {
                    break;
                }
                let di = d.coeff(i);
                if di.is_zero() {
                    continue;
                }
                for p in 0..pn {
                    let t = di.mul(&cur[j + i][p]);
                    acc[p].sub_assign(&t);
                }
            }
            let inv = pivot.inv();
            for p in 0..pn {
                cur[j + mu][p] = acc[p].mul(&inv);
            }
        }
        phi.push(cur);
    }
    (0..pn)
        .map(|p| LogSolution {
            exponent: e0.clone(),
            parts: (0..jn).map(|j| (0..=order).map(|n| phi[n][j][p].clone()).collect()).collect(),
        })
        .collect()
}

/// Non-logarithmic members of a local basis, in echelon form by leading exponent.
pub fn non_log_solutions<K: Scalar>(basis: &[LogSolution<K>], negligible: f64) -> Vec<(Rational, Vec<K>, bool, bool)> {
    let mut out = Vec::new();
    let mut classes: Vec<Vec<&LogSolution<K>>> = Vec::new();
    for b in basis {
        match classes.iter_mut().find(|c| c[0].exponent == b.exponent) {
            Some(c) => c.push(b),
            None => classes.push(vec![b]),
        }
    }
    for class in classes {
        let pn = class.len();
        let jn = class[0].parts.len();
        let order = class[0].parts[0].len();
        let mut rows = Vec::new();
        for j in 1..jn {
            for n in 0..order {
                rows.push((0..pn).map(|p| class[p].parts[j][n].clone()).collect::<Vec<K>>());
            }
        }
        let kernel: Vec<Vec<K>> = if rows.is_empty() {
            (0..pn).map(|p| (0..pn).map(|q| if p == q { K::one() } else { K::zero() }).collect()).collect()
        } else {
            Matrix::from_rows(rows).kernel_with(&|c: &K| c.is_zero() || c.magnitude() <= negligible)
        };
        let log_present = kernel.len() < pn;
        // series coefficient vectors, then echelon
        let mut series: Vec<Vec<K>> = kernel
            .iter()
            .map(|v| {
                (0..order)
                    .map(|n| {
                        let mut acc = K::zero();
                        for p in 0..pn {
                            if !v[p].is_zero() {
                                acc.add_assign(&v[p].mul(&class[p].parts[0][n]));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let ns = series.len();
        let mut lead_cols = Vec::new();
        let mut row = 0;
        for col in 0..order {
            if row == ns {
                break;
            }
            let piv = (row..ns).max_by(|&a, &b| {
                series[a][col].magnitude().partial_cmp(&series[b][col].magnitude()).unwrap_or(std::cmp::Ordering::Equal)
            });
            let piv = match piv {
                Some(p) if series[p][col].magnitude() > negligible && !series[p][col].is_zero() => p,
                _ => continue,
            };
            series.swap(row, piv);
            let inv = series[row][col].inv();
            series[row] = series[row].iter().map(|c| c.mul(&inv)).collect();
            for r in 0..ns {
                if r != row && !series[r][col].is_zero() {
                    let f = series[r][col].clone();
                    let sub: Vec<K> = series[row].iter().map(|c| c.mul(&f)).collect();
                    for (a, b) in series[r].iter_mut().zip(sub.iter()) {
                        a.sub_assign(b);
                    }
                }
            }
            lead_cols.push(col);
            row += 1;
        }
        let unique = lead_cols.len() == 1;
        for (r, col) in lead_cols.iter().enumerate() {
            let e = Rational::from(&class[0].exponent + Rational::from(*col as i64));
            let coeffs = series[r][*col..].to_vec();
            out.push((e, coeffs, unique, log_present));
        }
    }
    out
}

/// Non-logarithmic Frobenius solutions of `L` at a point.
pub fn frobenius_solve<K: Scalar>(
    l: &DiffOperator<K>,
    point: &Point<K>,
    exponent_hint: Option<&[Rational]>,
    order: usize,
) -> Result<Vec<FrobeniusSolution<K>>> {
    if l.has_radical() {
        return usage("operator carries a radical; localize it with a radical series");
    }
    let local = match point {
        Point::Finite(x0) => l.localize(x0, None, order + 2 * l.order() + 4)?,
        Point::Infinity => {
            let inv = RatFunc::new(Poly::one(), Poly::x());
            operator_substitute(l, &inv)?.localize(&K::zero(), None, order + 2 * l.order() + 4)?
        }
    };
    frobenius_solve_local(&local, point.clone(), exponent_hint, order, l.var())
}

pub fn frobenius_solve_local<K: Scalar>(
    local: &LocalOperator<K>,
    point: Point<K>,
    exponent_hint: Option<&[Rational]>,
    order: usize,
    var: char,
) -> Result<Vec<FrobeniusSolution<K>>> {
    let tf = local.theta_form()?;
    let basis = frobenius_basis(&tf, exponent_hint, order)?;
    let negligible = if K::EXACT { 0.0 } else { 1e-40 };
    Ok(non_log_solutions(&basis, negligible)
        .into_iter()
        .map(|(exponent, c, unique, log_present)| {
            let n = c.len() - 1;
            FrobeniusSolution {
                point: point.clone(),
                exponent,
                series: TruncatedSeries::new(c, n).with_var(var),
                unique,
                log_present,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::UniPoly;

    fn qp(v: &[i64]) -> UniPoly {
        Poly::from_i64s(v)
    }

    #[test]
    fn second_derivative() {
        let l = DiffOperator::new(vec![qp(&[0]), qp(&[0]), qp(&[1])]).unwrap();
        let sols = frobenius_solve(&l, &Point::Finite(Rational::new()), None, 8).unwrap();
        assert_eq!(sols.len(), 2);
        let e: Vec<Rational> = sols.iter().map(|s| s.exponent.clone()).collect();
        assert!(e.contains(&Rational::from(0)) && e.contains(&Rational::from(1)));
        for s in &sols {
            assert_eq!(s.series.coeff(0), 1);
            assert!(s.series.coeffs()[1..].iter().all(|c| c.cmp0().is_eq()));
            assert!(!s.log_present);
        }
    }

    #[test]
    fn euler_double_root_has_log() {
        // θ² : x²∂² + x∂
        let l = DiffOperator::new(vec![qp(&[0]), qp(&[0, 1]), qp(&[0, 0, 1])]).unwrap();
        let sols = frobenius_solve(&l, &Point::Finite(Rational::new()), None, 5).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0].log_present && sols[0].unique);
    }

    #[test]
    fn irregular_point_rejected() {
        // x²∂ − 1
        let l = DiffOperator::new(vec![qp(&[-1]), qp(&[0, 0, 1])]).unwrap();
        assert!(matches!(
            frobenius_solve(&l, &Point::Finite(Rational::new()), None, 5),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn bessel_like_resonance() {
        // Bessel order 1: x²y'' + x y' + (x² − 1) y, exponents ±1, log at −1
        let l = DiffOperator::new(vec![qp(&[-1, 0, 1]), qp(&[0, 1]), qp(&[0, 0, 1])]).unwrap();
        let sols = frobenius_solve(&l, &Point::Finite(Rational::new()), None, 10).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].exponent, 1);
        assert!(sols[0].log_present);
        // J1 ∝ x/2 − x³/16 + …
        assert_eq!(sols[0].series.coeff(2), Rational::from((-1, 8)));
    }
}
