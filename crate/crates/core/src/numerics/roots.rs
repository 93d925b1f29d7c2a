use super::hpcomplex::HPComplex;
use crate::error::{Error, Result};
use crate::exactcore::poly::{Poly, UniPoly};
use crate::exactcore::ring::Ring;

/// Roots of a polynomial with complex coefficients (ascending order).
///
/// Aberth–Ehrlich iteration at working precision from a circle start, followed by
/// clustering: roots closer than `2^{−prec/3}` (relative) are merged and reported
/// with multiplicity by repetition.
pub fn poly_roots_hp(coeffs: &[HPComplex], prec: u32) -> Result<Vec<HPComplex>> {
    let mut c: Vec<HPComplex> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::Usage("roots of the zero polynomial".into()));
    }
    let wp = prec + 64;
    let c: Vec<HPComplex> = c.iter().map(|x| x.approx(wp)).collect();
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    // exact zero roots first
    let v = c.iter().position(|x| !x.is_zero()).unwrap();
    let mut out: Vec<HPComplex> = (0..v).map(|_| HPComplex::zero()).collect();
    let c: Vec<HPComplex> = c[v..].to_vec();
    let n = c.len() - 1;
    if n == 0 {
        return Ok(out);
    }
    let lead = c[n].clone();
    let monic: Vec<HPComplex> = c.iter().map(|x| x.div_by(&lead)).collect();
    // Fujiwara-type bound for the start radius
    let mut r = 0f64;
    for (k, a) in monic.iter().enumerate().take(n) {
        let m = a.abs_f64();
        if m > 0.0 {
            r = r.max(2.0 * m.powf(1.0 / (n - k) as f64));
        }
    }
    let r = if r == 0.0 { 1.0 } else { r };
    let mut z: Vec<HPComplex> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.4) / n as f64 + 0.3;
            HPComplex::from_complex(rug::Complex::with_val(wp, (r * 0.8 * th.cos(), r * 0.8 * th.sin())))
        })
        .collect();
    let eval = |x: &HPComplex| -> (HPComplex, HPComplex) {
        let mut p = HPComplex::zero().approx(wp);
        let mut d = HPComplex::zero().approx(wp);
        for a in monic.iter().rev() {
            d = d.mul(x).add(&p);
            p = p.mul(x).add(a);
        }
        (p, d)
    };
    let tol = -(prec as f64) - 16.0;
    let mut converged = vec![false; n];
    for _iter in 0..(40 + 8 * prec as usize) {
        let mut moved = false;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (p, d) = eval(&z[i]);
            if p.is_zero() {
                converged[i] = true;
                continue;
            }
            let ratio = p.div_by(&d);
            let mut s = HPComplex::zero().approx(wp);
            for j in 0..n {
                if j != i {
                    s = s.add(&z[i].sub(&z[j]).inv_or_zero());
                }
            }
            let denom = HPComplex::one().sub(&ratio.mul(&s));
            let step = if denom.is_zero() { ratio.clone() } else { ratio.div_by(&denom) };
            let scale = z[i].abs_f64().max(1.0).log2();
            if step.log2_abs() < tol + scale {
                converged[i] = true;
            }
            z[i] = z[i].sub(&step);
            moved = true;
        }
        if !moved || converged.iter().all(|&b| b) {
            break;
        }
    }
    // clustering
    let rad = -(prec as f64) / 3.0;
    let mut used = vec![false; n];
    let mut clustered: Vec<HPComplex> = Vec::with_capacity(n);
    for i in 0..n {
        if used[i] {
            continue;
        }
        let mut members = vec![i];
        used[i] = true;
        for j in (i + 1)..n {
            if used[j] {
                continue;
            }
            let scale = z[i].abs_f64().max(1.0).log2();
            if z[i].sub(&z[j]).log2_abs() < rad + scale {
                used[j] = true;
                members.push(j);
            }
        }
        let m = members.len();
        let mut centre = HPComplex::zero().approx(wp);
        for &k in &members {
            centre = centre.add(&z[k]);
        }
        centre = centre.div_by(&HPComplex::from_i64(m as i64));
        if m > 1 {
            // a genuine multiple root makes the first m−1 derivatives small as well
            let (p, d) = eval(&centre);
            let scale = centre.abs_f64().max(1.0).log2() * n as f64;
            if p.log2_abs() > rad + scale && d.log2_abs() > rad + scale {
                return Err(Error::Precision("root cluster is ambiguous at this precision".into()));
            }
        }
        for _ in 0..m {
            clustered.push(centre.approx(prec));
        }
    }
    if !converged.iter().all(|&b| b) {
        let unresolved = clustered.len() == n && {
            // unconverged roots are acceptable only inside a cluster
            let mut ok = true;
            for i in 0..n {
                if !converged[i] {
                    let near = (0..n).any(|j| j != i && z[i].sub(&z[j]).log2_abs() < rad + 4.0);
                    ok &= near;
                }
            }
            !ok
        };
        if unresolved {
            return Err(Error::Precision("root iteration did not converge".into()));
        }
    }
    out.extend(clustered);
    Ok(out)
}

/// Roots of a rational polynomial.
pub fn poly_roots_rational(p: &UniPoly, prec: u32) -> Result<Vec<HPComplex>> {
    let c: Vec<HPComplex> = p.coeffs().iter().map(|a| HPComplex::real(a.clone())).collect();
    poly_roots_hp(&c, prec)
}

pub fn poly_roots(p: &Poly<HPComplex>, prec: u32) -> Result<Vec<HPComplex>> {
    poly_roots_hp(p.coeffs(), prec)
}

/// Sorts real-looking roots ascending by real part.
pub fn sort_by_real(roots: &mut [HPComplex]) {
    roots.sort_by(|a, b| a.re_f64().partial_cmp(&b.re_f64()).unwrap_or(std::cmp::Ordering::Equal));
}

impl HPComplex {
    pub(crate) fn div_by(&self, o: &HPComplex) -> HPComplex {
        use crate::exactcore::ring::Field;
        self.mul(&o.inv())
    }
    pub(crate) fn inv_or_zero(&self) -> HPComplex {
        use crate::exactcore::ring::Field;
        if self.is_zero() {
            HPComplex::zero()
        } else {
            self.inv()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::ring::rat;

    #[test]
    fn square_root_two() {
        let p = UniPoly::from_rationals(&[rat(-2, 1), rat(0, 1), rat(1, 1)]);
        let mut r = poly_roots_rational(&p, 200).unwrap();
        sort_by_real(&mut r);
        let s2 = HPComplex::from_i64(2).sqrt_prec(220);
        assert!(r[1].sub(&s2).log2_abs() < -190.0);
        assert!(r[0].add(&s2).log2_abs() < -190.0);
    }

    #[test]
    fn double_root_clustered() {
        // (x−1)²(x+2)
        let p = UniPoly::from_rationals(&[rat(2, 1), rat(-3, 1), rat(0, 1), rat(1, 1)]);
        let mut r = poly_roots_rational(&p, 128).unwrap();
        sort_by_real(&mut r);
        assert_eq!(r.len(), 3);
        assert!(r[1].sub(&HPComplex::one()).log2_abs() < -30.0);
        assert!(r[2].sub(&HPComplex::one()).log2_abs() < -30.0);
    }

    #[test]
    fn complex_roots() {
        // x² + 1
        let p = UniPoly::from_rationals(&[rat(1, 1), rat(0, 1), rat(1, 1)]);
        let r = poly_roots_rational(&p, 128).unwrap();
        for z in r {
            assert!(z.mul(&z).add(&HPComplex::one()).log2_abs() < -120.0);
        }
    }
}
