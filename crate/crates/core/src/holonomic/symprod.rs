use super::frobenius::{frobenius_basis, LogSolution};
use super::operator::{LocalOperator, Scalar};
use crate::error::{usage, Result};
use crate::exactcore::{Matrix, TruncatedSeries};
use rug::{Integer, Rational};
use std::collections::BTreeMap;

/// Options for [`symprod_membership`].
#[derive(Clone, Debug, Default)]
pub struct SymprodOptions {
    pub hint_plus: Option<Vec<Rational>>,
    pub hint_minus: Option<Vec<Rational>>,
    /// Magnitude below which residuals count as zero; `0` for exact fields.
    pub negligible: f64,
}

/// Coefficients `c_ab` with `f = Σ c_ab y_a^+ y_b^-`.
#[derive(Clone, Debug)]
pub struct SymprodCertificate<K: Scalar> {
    pub member: bool,
    pub pairs: Vec<(usize, usize)>,
    pub coefficients: Vec<K>,
    pub residual: f64,
    pub equations: usize,
}

pub const SYMPROD_MARGIN: usize = 10;

fn product<K: Scalar>(a: &LogSolution<K>, b: &LogSolution<K>, order: usize) -> Vec<Vec<K>> {
    let jn = a.parts.len() + b.parts.len() - 1;
    let mut out = vec![vec![K::zero(); order + 1]; jn];
    for (j1, pa) in a.parts.iter().enumerate() {
        for (j2, pb) in b.parts.iter().enumerate() {
            let w = Integer::from(Integer::binomial_u((j1 + j2) as u32, j1 as u32));
            let w = K::from_rational(&Rational::from(w));
            for (i, x) in pa.iter().enumerate().take(order + 1) {
                if x.is_zero() {
                    continue;
                }
                let xw = x.mul(&w);
                for (k, y) in pb.iter().enumerate().take(order + 1 - i) {
                    if !y.is_zero() {
                        out[j1 + j2][i + k].add_mul(&xw, y);
                    }
                }
            }
        }
    }
    out
}

fn split(e: &Rational) -> (Rational, i64) {
    let fl = e.clone().floor();
    let frac = Rational::from(e - &fl);
    (frac, fl.numer().to_i64().expect("exponent too large"))
}

/// Decides whether `f` lies in the span of products of local solutions of
/// `L_plus` and `L_minus` at the expansion point.
pub fn symprod_membership<K: Scalar>(
    l_plus: &LocalOperator<K>,
    l_minus: &LocalOperator<K>,
    f: &TruncatedSeries<K>,
    opts: &SymprodOptions,
) -> Result<SymprodCertificate<K>> {
    let n = f.order();
    let need = l_plus.order() * l_minus.order() + SYMPROD_MARGIN;
    if n < need {
        return usage(format!("series order {n} below the required {need}"));
    }
    let bp = frobenius_basis(&l_plus.theta_form()?, opts.hint_plus.as_deref(), n)?;
    let bm = frobenius_basis(&l_minus.theta_form()?, opts.hint_minus.as_deref(), n)?;
    let (ffrac, fint) = split(&f.offset().as_rational());
    let mut pairs = Vec::new();
    let mut prods = Vec::new();
    let mut min_start = fint;
    for (i, a) in bp.iter().enumerate() {
        for (j, b) in bm.iter().enumerate() {
            let e = Rational::from(&a.exponent + &b.exponent);
            let (fr, int) = split(&e);
            min_start = min_start.min(int);
            pairs.push((i, j));
            prods.push((fr, int, product(a, b, n)));
        }
    }
    let pmax = min_start + n as i64;
    let mut rows: BTreeMap<(Rational, usize, i64), usize> = BTreeMap::new();
    let mut entries: Vec<Vec<K>> = Vec::new();
    let mut rhs: Vec<K> = Vec::new();
    let unknowns = prods.len();
    let mut row_of = |key: (Rational, usize, i64), entries: &mut Vec<Vec<K>>, rhs: &mut Vec<K>| -> usize {
        *rows.entry(key).or_insert_with(|| {
            entries.push(vec![K::zero(); unknowns]);
            rhs.push(K::zero());
            entries.len() - 1
        })
    };
    for (c, (fr, int, p)) in prods.iter().enumerate() {
        for (jl, part) in p.iter().enumerate() {
            for (k, v) in part.iter().enumerate() {
                let pow = int + k as i64;
                if pow > pmax {
                    break;
                }
                let r = row_of((fr.clone(), jl, pow), &mut entries, &mut rhs);
                entries[r][c] = v.clone();
            }
        }
    }
    for (k, v) in f.coeffs().iter().enumerate() {
        let pow = fint + k as i64;
        if pow > pmax {
            break;
        }
        let r = row_of((ffrac.clone(), 0, pow), &mut entries, &mut rhs);
        rhs[r] = v.clone();
    }
    let neg = opts.negligible;
    let a = Matrix::from_rows(entries.clone());
    let sol = a.solve_with(&rhs, &|c: &K| c.is_zero() || c.magnitude() <= neg);
    let equations = rhs.len();
    match sol {
        None => Ok(SymprodCertificate { member: false, pairs, coefficients: Vec::new(), residual: f64::INFINITY, equations }),
        Some(c) => {
            let ac = a.mul_vec(&c);
            let mut residual: f64 = 0.0;
            let mut exact_zero = true;
            for (x, y) in ac.iter().zip(rhs.iter()) {
                let d = x.sub(y);
                if !d.is_zero() {
                    exact_zero = false;
                    residual = residual.max(d.magnitude());
                }
            }
            let member = if K::EXACT { exact_zero } else { residual <= neg };
            Ok(SymprodCertificate { member, pairs, coefficients: c, residual, equations })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::Poly;
    use crate::holonomic::DiffOperator;

    #[test]
    fn exp_squared_is_member() {
        let l = DiffOperator::new(vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[1])]).unwrap();
        let loc = l.localize(&Rational::new(), None, 40).unwrap();
        // e^{2x}
        let mut c = vec![Rational::from(1)];
        for k in 1..=20 {
            let prev = c[k - 1].clone();
            c.push(prev * Rational::from((2, k as i64)));
        }
        let f = TruncatedSeries::new(c, 20);
        let cert = symprod_membership(&loc, &loc, &f, &SymprodOptions::default()).unwrap();
        assert!(cert.member);
        assert_eq!(cert.coefficients, vec![Rational::from(1)]);
        // e^{3x} is not a product of two exp solutions
        let mut c = vec![Rational::from(1)];
        for k in 1..=20 {
            let prev = c[k - 1].clone();
            c.push(prev * Rational::from((3, k as i64)));
        }
        let g = TruncatedSeries::new(c, 20);
        assert!(!symprod_membership(&loc, &loc, &g, &SymprodOptions::default()).unwrap().member);
    }
}
