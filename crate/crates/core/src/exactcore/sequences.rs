use super::poly::{Poly, UniPoly};
use super::ring::QAlgebra;
use super::series::TruncatedSeries;
use rug::{Integer, Rational};

/// `P_n(y)` from `(n+1)P_{n+1} = (2n+1) y P_n − n P_{n−1}`, `P_0 = 1`, `P_{−1} = 0`.
pub fn legendre_poly(n: usize) -> UniPoly {
    legendre_table(n).pop().unwrap()
}

/// `[P_0, …, P_n]`.
pub fn legendre_table(n: usize) -> Vec<UniPoly> {
    let y = UniPoly::x();
    let mut out = vec![UniPoly::one()];
    let mut prev = UniPoly::zero();
    for k in 0..n {
        let cur = out[k].clone();
        let a = y.mul(&cur).scale(&Rational::from(2 * k as i64 + 1));
        let b = prev.scale(&Rational::from(k as i64));
        let next = a.sub(&b).scale(&Rational::from((1, k as i64 + 1)));
        prev = cur;
        out.push(next);
    }
    out
}

/// `Σ_k C(n,k) C(n+k,k) ((y−1)/2)^k`.
pub fn legendre_explicit(n: usize) -> UniPoly {
    let w = UniPoly::from_rationals(&[Rational::from((-1, 2)), Rational::from((1, 2))]);
    let mut acc = UniPoly::zero();
    let mut wk = UniPoly::one();
    for k in 0..=n {
        let c = binomial(n as u32, k as u32) * binomial((n + k) as u32, k as u32);
        acc = acc.add(&wk.scale(&Rational::from(c)));
        wk = wk.mul(&w);
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

/// `C(2n, n)`.
pub fn central_binomial(n: u32) -> Integer {
    binomial(2 * n, n)
}

/// Rising factorial `(a)_n`.
pub fn pochhammer(a: &Rational, n: u32) -> Rational {
    let mut acc = Rational::from(1);
    for j in 0..n {
        acc *= Rational::from(a + j);
    }
    acc
}

/// `₂F₁(a,b;c|X)` truncated at order `n` over any ℚ-algebra.
pub fn hyp2f1_series<R: QAlgebra>(a: &Rational, b: &Rational, c: &Rational, order: usize) -> TruncatedSeries<R> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut t = Rational::from(1);
    for n in 0..=order {
        coeffs.push(R::from_rational(&t));
        let n = n as i64;
        let num = Rational::from(a + n) * Rational::from(b + n);
        let den = Rational::from(c + n) * Rational::from(n + 1);
        if den.cmp0().is_eq() {
            // c a nonpositive integer: the caller validated parameters
            break;
        }
        t *= num / den;
    }
    TruncatedSeries::new(coeffs, order)
}

/// `Σ C(2n,n) xⁿ`.
pub fn central_binomial_series(order: usize) -> TruncatedSeries<Rational> {
    TruncatedSeries::new((0..=order).map(|n| Rational::from(central_binomial(n as u32))).collect(), order)
}

/// Coefficient list of a polynomial in the form used by `Poly::from_rationals`.
pub fn poly_from_ints(v: &[i64]) -> UniPoly {
    Poly::from_i64s(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::ring::rat;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_poly(0), UniPoly::one());
        assert_eq!(legendre_poly(1), UniPoly::x());
        assert_eq!(legendre_poly(2), UniPoly::from_rationals(&[rat(-1, 2), rat(0, 1), rat(3, 2)]));
    }

    #[test]
    fn legendre_matches_explicit_sum() {
        let t = legendre_table(30);
        for (n, p) in t.iter().enumerate() {
            assert_eq!(*p, legendre_explicit(n), "n = {n}");
        }
    }

    #[test]
    fn central_binomials() {
        assert_eq!(central_binomial(0), 1);
        assert_eq!(central_binomial(1), 2);
        // 10!/(5!5!)
        let f = |k: u32| (1..=k).fold(Integer::from(1), |a, j| a * j);
        assert_eq!(central_binomial(5), f(10) / (f(5) * f(5)));
        assert_eq!(central_binomial(5), 252);
    }

    #[test]
    fn legendre_generating_function() {
        // Σ P_n(y) z^n = (1 − 2yz + z²)^{−1/2} with y symbolic
        let n = 20;
        let y = UniPoly::x();
        let base = TruncatedSeries::new(
            vec![UniPoly::one(), y.scale(&rat(-2, 1)), UniPoly::one()],
            n,
        );
        let g = base.pow_rational(&rat(-1, 2)).unwrap();
        let t = legendre_table(n);
        for k in 0..=n {
            assert_eq!(g.coeff(k), t[k]);
        }
    }

    #[test]
    fn hypergeometric_coefficients() {
        let s: TruncatedSeries<Rational> = hyp2f1_series(&rat(1, 2), &rat(1, 2), &rat(1, 1), 4);
        assert_eq!(s.coeff(1), rat(1, 4));
        assert_eq!(s.coeff(2), rat(9, 64));
    }
}
