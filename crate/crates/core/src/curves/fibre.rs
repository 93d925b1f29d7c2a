use crate::error::{Error, Result};
use crate::exactcore::{Poly, Ring};
use crate::numerics::{poly_roots, sort_by_real, HPComplex};
use rug::Rational;

/// Branch data of `Y² = H(u, x, v)`.
#[derive(Clone, Debug)]
pub struct CurveFibre {
    pub u: HPComplex,
    pub x: HPComplex,
    pub prec: u32,
    pub h: Poly<HPComplex>,
    /// Ascending at real configurations, tracked from the base fibre otherwise.
    pub roots: Vec<HPComplex>,
    /// Cut pairing on root indices.
    pub cuts: [(usize, usize); 3],
    pub all_real: bool,
}

/// `(1−v)(1−u²v)(1+uv)²` and `v(1−uv)²`.
pub fn fibre_pq<R: Ring>(u: &R) -> (Poly<R>, Poly<R>) {
    let one = R::one();
    let l = |c0: R, c1: R| Poly::new(vec![c0, c1]);
    let p = l(one.clone(), one.neg())
        .mul(&l(one.clone(), u.mul(u).neg()))
        .mul(&l(one.clone(), u.clone()).pow(2));
    let q = Poly::x().mul(&l(one, u.neg()).pow(2));
    (p, q)
}

/// `H = v(1−v)(P + xQ)`.
pub fn fibre_sextic<R: Ring>(u: &R, x: &R) -> Poly<R> {
    let (p, q) = fibre_pq(u);
    let vv = Poly::new(vec![R::zero(), R::one(), R::one().neg()]);
    vv.mul(&p.add(&q.scale(x)))
}

/// `disc_v H = 16u⁶x³(u−1)⁶(x² − 2(u²−6u+1)x + (u+1)⁴)²`.
pub fn discriminant_closed_form<R: Ring>(u: &R, x: &R) -> R {
    let q = singular_quadratic(u, x);
    R::from_i64(16).mul(&u.powu(6)).mul(&x.powu(3)).mul(&u.sub(&R::one()).powu(6)).mul(&q.mul(&q))
}

fn singular_quadratic<R: Ring>(u: &R, x: &R) -> R {
    let m = u.mul(u).sub(&u.mul(&R::from_i64(6))).add(&R::one());
    x.mul(x).sub(&R::from_i64(2).mul(&m).mul(x)).add(&u.add(&R::one()).powu(4))
}

/// The singular members `x₁, x₃` at parameter `u` (principal square root for `x₁`).
pub fn singular_x13(u: &HPComplex, prec: u32) -> (HPComplex, HPComplex) {
    let u = u.approx(prec);
    let m = u.mul(&u).sub(&u.mul(&HPComplex::from_i64(6))).add(&HPComplex::one());
    let r = m.mul(&m).sub(&u.add(&HPComplex::one()).powu(4)).sqrt();
    (m.add(&r), m.sub(&r))
}

fn negligible(z: &HPComplex, scale: f64, prec: u32) -> bool {
    z.is_zero() || (!z.is_exact() && z.log2_abs() < scale.log2() - prec as f64 / 2.0)
}

/// Rejects degenerate parameters, naming the singular member that was hit.
pub fn check_smooth(u: &HPComplex, x: &HPComplex, prec: u32) -> Result<()> {
    for (k, name) in [(0, "u = 0 degenerates the family"), (1, "u = 1 degenerates the family")] {
        if negligible(&u.sub(&HPComplex::from_i64(k)), 1.0, prec) {
            return Err(Error::SingularFibre(name.into()));
        }
    }
    if negligible(x, 1.0, prec) {
        return Err(Error::SingularFibre("x = 0".into()));
    }
    let scale = 1.0 + x.abs_f64().powi(2) + (1.0 + u.abs_f64()).powi(4);
    if negligible(&singular_quadratic(u, x), scale, prec) {
        let (x1, x3) = singular_x13(u, prec);
        let d1 = x.approx(prec).sub(&x1).abs_f64();
        let d3 = x.approx(prec).sub(&x3).abs_f64();
        let name = if d1 <= d3 { "x₁" } else { "x₃" };
        return Err(Error::SingularFibre(format!("x = {name}")));
    }
    Ok(())
}

const BASE_U: (i64, i64) = (1, 2);
const BASE_X: i64 = 1;

fn min_pair_distance(r: &[HPComplex]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            m = m.min(r[i].sub(&r[j]).abs_f64());
        }
    }
    m
}

fn roots_at(u: &HPComplex, x: &HPComplex, prec: u32) -> Result<Vec<HPComplex>> {
    poly_roots(&fibre_sextic(&u.approx(prec), &x.approx(prec)), prec)
}

/// Relabels `new` to follow `old` by nearest-neighbor matching; `None` if any root
/// moved more than a third of its distance to the nearest other root.
fn match_roots(old: &[HPComplex], new: &[HPComplex]) -> Option<Vec<HPComplex>> {
    let mut used = vec![false; new.len()];
    let mut out = Vec::with_capacity(old.len());
    for (i, o) in old.iter().enumerate() {
        let nn = old
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| o.sub(p).abs_f64())
            .fold(f64::INFINITY, f64::min);
        let (j, d) = new
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, n)| (j, o.sub(n).abs_f64()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if d > nn / 3.0 {
            return None;
        }
        used[j] = true;
        out.push(new[j].clone());
    }
    Some(out)
}

/// Follows the base-fibre labeling along the polygon `waypoints` in `(u, x)`.
fn track_along(waypoints: &[(HPComplex, HPComplex)], prec: u32) -> Result<Vec<HPComplex>> {
    let tp = 64;
    let (u0, x0) = &waypoints[0];
    let mut roots = roots_at(u0, x0, tp)?;
    sort_by_real(&mut roots);
    for w in waypoints.windows(2) {
        let (ua, xa) = (w[0].0.approx(tp), w[0].1.approx(tp));
        let (du, dx) = (w[1].0.approx(tp).sub(&ua), w[1].1.approx(tp).sub(&xa));
        let mut lam = 0.0f64;
        let mut step = 1.0 / 32.0;
        let mut budget = 1500;
        while lam < 1.0 {
            budget -= 1;
            if budget == 0 {
                return Err(Error::Path("root tracking step budget exhausted".into()));
            }
            let next = (lam + step).min(1.0);
            let l = HPComplex::from_f64(next, tp);
            let (u, x) = (ua.add(&du.mul(&l)), xa.add(&dx.mul(&l)));
            let cand = roots_at(&u, &x, tp)?;
            let ok = match_roots(&roots, &cand).filter(|m| min_pair_distance(m) >= min_pair_distance(&roots) / 2.0);
            match ok {
                Some(m) => {
                    roots = m;
                    lam = next;
                    step = (step * 1.5).min(0.25);
                }
                None => {
                    step /= 2.0;
                    if step < 1e-6 {
                        return Err(Error::Path("root tracking passes too close to a singular fibre".into()));
                    }
                }
            }
        }
    }
    let (u, x) = waypoints.last().unwrap();
    let fine = roots_at(u, x, prec)?;
    match_roots(&roots, &fine).ok_or_else(|| Error::Path("final root refinement is ambiguous".into()))
}

/// Builds the fibre at `(u, x)`.
pub fn build_fibre(u: &HPComplex, x: &HPComplex, prec: u32) -> Result<CurveFibre> {
    check_smooth(u, x, prec)?;
    let h = fibre_sextic(u, x);
    let mut roots = poly_roots(&h, prec)?;
    let tol = -(prec as f64) / 2.0;
    let all_real = roots.iter().all(|r| r.im().is_zero() || r.im().log2_abs() < tol);
    if all_real {
        let wp = prec + 32;
        roots = roots.iter().map(|r| r.approx(wp).re()).collect();
        sort_by_real(&mut roots);
    } else {
        let base = (HPComplex::real(Rational::from(BASE_U)), HPComplex::from_i64(BASE_X));
        let target = (u.clone(), x.clone());
        let mut attempt = Err(Error::Path("no tracking path".into()));
        for off in [0.5, -0.5, 0.0, 1.5, -1.5] {
            let i = HPComplex::i().mul(&HPComplex::from_f64(off, 64));
            let mid = |a: &HPComplex, b: &HPComplex| {
                let d = b.approx(64).sub(&a.approx(64));
                a.approx(64).add(&d.mul(&HPComplex::from_f64(0.5, 64))).add(&i.mul(&HPComplex::from_f64(d.abs_f64().max(0.25), 64)))
            };
            let m = (mid(&base.0, &target.0), mid(&base.1, &target.1));
            attempt = track_along(&[base.clone(), m, target.clone()], prec);
            if attempt.is_ok() {
                break;
            }
        }
        roots = attempt?;
    }
    Ok(CurveFibre { u: u.clone(), x: x.clone(), prec, h, roots, cuts: [(0, 1), (2, 3), (4, 5)], all_real })
}

pub fn build_fibre_rational(u: &Rational, x: &Rational, prec: u32) -> Result<CurveFibre> {
    build_fibre(&HPComplex::real(u.clone()), &HPComplex::real(x.clone()), prec)
}

impl CurveFibre {
    pub fn leading(&self) -> HPComplex {
        self.h.lead()
    }

    /// `lead · ∏_{i≠skip} (v − rᵢ)`.
    pub fn eval_factored(&self, v: &HPComplex, skip: &[usize]) -> HPComplex {
        let mut acc = self.leading().approx(self.prec + 32);
        for (i, r) in self.roots.iter().enumerate() {
            if !skip.contains(&i) {
                acc = acc.mul(&v.sub(r));
            }
        }
        acc
    }

    /// `lead^{10} ∏_{i<j} (rᵢ − rⱼ)²`.
    pub fn discriminant_from_roots(&self) -> HPComplex {
        let mut d = self.leading().approx(self.prec + 32).powu(10);
        for i in 0..6 {
            for j in i + 1..6 {
                let e = self.roots[i].sub(&self.roots[j]);
                d = d.mul(&e.mul(&e));
            }
        }
        d
    }

    pub fn min_root_separation(&self) -> f64 {
        min_pair_distance(&self.roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;

    #[test]
    fn base_fibre_roots() {
        let f = build_fibre_rational(&rat(1, 2), &rat(1, 1), 256).unwrap();
        assert!(f.all_real);
        let s17 = HPComplex::from_i64(17).approx(300).sqrt();
        let three = HPComplex::from_i64(3);
        let half = HPComplex::real(rat(1, 2));
        let want = [
            three.add(&s17).neg(),
            three.sub(&s17).mul(&half),
            HPComplex::zero(),
            HPComplex::one(),
            s17.sub(&three),
            three.add(&s17).mul(&half),
        ];
        for (r, w) in f.roots.iter().zip(&want) {
            assert!(r.sub(w).abs_f64() < 1e-60, "{r:?} vs {w:?}");
        }
    }

    #[test]
    fn discriminant_matches_closed_form() {
        for (u, x) in [(rat(1, 3), rat(2, 5)), (rat(-2, 7), rat(3, 1)), (rat(5, 2), rat(-1, 9))] {
            let f = build_fibre_rational(&u, &x, 256).unwrap();
            let want = discriminant_closed_form(&u, &x);
            let got = f.discriminant_from_roots();
            let rel = got.sub(&HPComplex::real(want.clone())).abs_f64() / want.to_f64().abs();
            assert!(rel < 1e-50, "{u} {x}: {rel}");
        }
    }

    #[test]
    fn singular_members_are_named() {
        let p = 256;
        let (x1, x3) = singular_x13(&HPComplex::real(rat(1, 2)), p);
        let want = HPComplex::real(rat(-7, 4)).add(&HPComplex::from_i64(-2).approx(p).sqrt());
        assert!(x1.sub(&want).abs_f64() < 1e-70);
        let half = HPComplex::real(rat(1, 2));
        let e = build_fibre(&half, &x1, p).unwrap_err();
        assert_eq!(e, Error::SingularFibre("x = x₁".into()));
        let e = build_fibre(&half, &x3, p).unwrap_err();
        assert_eq!(e, Error::SingularFibre("x = x₃".into()));
        assert!(matches!(build_fibre_rational(&rat(0, 1), &rat(1, 1), p), Err(Error::SingularFibre(_))));
        assert!(matches!(build_fibre_rational(&rat(1, 1), &rat(1, 1), p), Err(Error::SingularFibre(_))));
        assert_eq!(build_fibre_rational(&rat(1, 2), &rat(0, 1), p).unwrap_err(), Error::SingularFibre("x = 0".into()));
    }

    #[test]
    fn complex_fibre_is_tracked() {
        let f = build_fibre_rational(&rat(1, 2), &rat(-1, 1), 128).unwrap();
        assert!(!f.all_real);
        assert_eq!(f.roots.len(), 6);
        for r in &f.roots {
            assert!(f.h.eval(&r.approx(160)).abs_f64() < 1e-30);
        }
    }
}
