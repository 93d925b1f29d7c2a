use super::fibre::{check_smooth, CurveFibre};
use crate::error::{usage, Result};
use crate::exactcore::{Field, Poly, Ring};
use crate::numerics::{poly_roots, HPComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

/// Labeling under which the quintic model satisfies the `Δ = 8` condition.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HumbertWitness {
    pub to_infinity: usize,
    pub to_zero: usize,
    /// Root indices in the order `a₁, a₂, a₃, a₄`.
    pub order: [usize; 4],
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct HumbertResult {
    pub holds: bool,
    pub witness: Option<HumbertWitness>,
    /// Smallest normalized residual over all labelings, as `log₁₀`.
    pub best_log10: f64,
    pub threshold_log10: f64,
    pub tests: usize,
}

/// `(LHS, RHS)` of Humbert's condition for `a₁ … a₄`.
pub fn humbert_sides<R: Ring>(a: &[R; 4]) -> (R, R) {
    let [a1, a2, a3, a4] = a;
    let inner = a1.add(a3).mul(&a2.add(a4)).sub(&R::from_i64(2).mul(&a1.mul(a3))).sub(&R::from_i64(2).mul(&a2.mul(a4)));
    let lhs = R::from_i64(4).mul(a1).mul(a2).mul(a3).mul(a4).mul(&inner.mul(&inner));
    let d24 = a2.sub(a4);
    let d13 = a1.sub(a3);
    let s = a1.mul(a3).add(&a2.mul(a4));
    let rhs = d24.mul(&d24).mul(&d13.mul(&d13)).mul(&s.mul(&s));
    (lhs, rhs)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Humbert test on six branch points, over all `30 × 24` normalizations.
pub fn humbert8_roots(roots: &[HPComplex], prec: u32) -> HumbertResult {
    let digits = prec as f64 * std::f64::consts::LOG10_2;
    let threshold_log10 = -digits / 3.0;
    let perms = permutations4();
    let mut best = (f64::INFINITY, None);
    let mut tests = 0;
    for p in 0..6 {
        for q in 0..6 {
            if p == q {
                continue;
            }
            let rest: Vec<usize> = (0..6).filter(|&i| i != p && i != q).collect();
            // v ↦ (v − r_q)/(v − r_p)
            let a: Vec<HPComplex> = rest.iter().map(|&i| roots[i].sub(&roots[q]).mul(&roots[i].sub(&roots[p]).inv())).collect();
            for perm in &perms {
                tests += 1;
                let arr = [a[perm[0]].clone(), a[perm[1]].clone(), a[perm[2]].clone(), a[perm[3]].clone()];
                let (l, r) = humbert_sides(&arr);
                let den = l.abs_f64() + r.abs_f64();
                let res = l.sub(&r).abs_f64() / den;
                let lg = if res == 0.0 { -digits } else { res.log10() };
                if lg < best.0 {
                    let order = [rest[perm[0]], rest[perm[1]], rest[perm[2]], rest[perm[3]]];
                    best = (lg, Some(HumbertWitness { to_infinity: p, to_zero: q, order }));
                }
            }
        }
    }
    let holds = best.0 < threshold_log10;
    HumbertResult { holds, witness: if holds { best.1 } else { None }, best_log10: best.0, threshold_log10, tests }
}

pub fn humbert8_test(fibre: &CurveFibre) -> HumbertResult {
    let wp = fibre.prec;
    let roots: Vec<HPComplex> = fibre.roots.iter().map(|r| r.approx(wp)).collect();
    humbert8_roots(&roots, wp)
}

/// Humbert test on the curve `y² = Σ cᵢ vⁱ` of degree 6.
pub fn humbert8_sextic(coeffs: &[Rational], prec: u32) -> Result<HumbertResult> {
    if coeffs.len() != 7 || coeffs[6].cmp0().is_eq() {
        return usage("a sextic needs seven coefficients with nonzero leading term");
    }
    let h = Poly::new(coeffs.iter().map(|c| HPComplex::real(c.clone()).approx(prec + 64)).collect());
    let roots = poly_roots(&h, prec + 64)?;
    Ok(humbert8_roots(&roots, prec))
}

/// Seeded smooth parameters `(u, x)` of the family.
pub fn sample_family_parameters(seed: u64, n: usize, prec: u32) -> Vec<(Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let u = Rational::from((rng.gen_range(-30..30), rng.gen_range(1..12)));
        let x = Rational::from((rng.gen_range(-30..30), rng.gen_range(1..12)));
        if check_smooth(&HPComplex::real(u.clone()), &HPComplex::real(x.clone()), prec).is_ok() {
            out.push((u, x));
        }
    }
    out
}

/// Seeded integer sextics with nonzero leading and constant terms.
pub fn sample_sextics(seed: u64, n: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut c: Vec<Rational> = (0..7).map(|_| Rational::from(rng.gen_range(-20..=20))).collect();
            for k in [0, 6] {
                if c[k].cmp0().is_eq() {
                    c[k] = Rational::from(1);
                }
            }
            c
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::fibre::build_fibre_rational;
    use crate::exactcore::rat;

    #[test]
    fn base_and_generic_fibres() {
        for (u, x) in [(rat(1, 2), rat(1, 1)), (rat(1, 3), rat(2, 5))] {
            let f = build_fibre_rational(&u, &x, 256).unwrap();
            let r = humbert8_test(&f);
            assert!(r.holds, "{u} {x}: {r:?}");
            assert_eq!(r.tests, 720);
            let w = r.witness.unwrap();
            let a: Vec<HPComplex> = w
                .order
                .iter()
                .map(|&i| f.roots[i].sub(&f.roots[w.to_zero]).mul(&f.roots[i].sub(&f.roots[w.to_infinity]).inv()))
                .collect();
            let (l, rr) = humbert_sides(&[a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone()]);
            assert!(l.sub(&rr).abs_f64() < 1e-40 * (1.0 + l.abs_f64()));
        }
    }

    #[test]
    fn random_sextic_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let roots: Vec<HPComplex> = (0..6)
            .map(|_| HPComplex::exact(rat(rng.gen_range(-40..40), rng.gen_range(1..9)), rat(rng.gen_range(-40..40), rng.gen_range(1..9))))
            .collect();
        let r = humbert8_roots(&roots, 256);
        assert!(!r.holds, "{r:?}");
        assert!(r.best_log10 > -10.0);
    }

    #[test]
    fn sampled_fibres_and_sextics() {
        for (u, x) in sample_family_parameters(3, 3, 256) {
            let f = build_fibre_rational(&u, &x, 256).unwrap();
            assert!(humbert8_test(&f).holds, "{u} {x}");
        }
        for c in sample_sextics(5, 3) {
            assert!(!humbert8_sextic(&c, 256).unwrap().holds);
        }
    }
}
