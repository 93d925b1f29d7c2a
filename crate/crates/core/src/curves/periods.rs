use super::fibre::CurveFibre;
use crate::error::{Error, Result};
use crate::exactcore::{Field, Matrix, Ring};
use crate::numerics::quadrature::{integrate_endpoint_singular, QuadratureSpec};
use crate::numerics::{ContourPath, HPComplex};
use rayon::prelude::*;

/// A cycle as an integer combination of the loops `γ_k` around `[r_k, r_{k+1}]`, `k = 1..5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub name: &'static str,
    pub loops: Vec<(usize, i64)>,
    /// Sheet on which the loop starts, `±1` relative to the cut-segment branch.
    pub sheet: i8,
}

/// `α₁ = γ₁, β₁ = γ₂, α₂ = γ₄, β₂ = γ₅`.
#[derive(Clone, Debug)]
pub struct CycleBasis {
    pub cycles: [Cycle; 4],
}

impl Default for CycleBasis {
    fn default() -> Self {
        let c = |name, k| Cycle { name, loops: vec![(k, 1)], sheet: 1 };
        CycleBasis { cycles: [c("α₁", 1), c("β₁", 2), c("α₂", 4), c("β₂", 5)] }
    }
}

/// `γ_i · γ_j` from adjacency of the encircled segments.
pub fn loop_intersection(i: usize, j: usize) -> i64 {
    if j == i + 1 {
        1
    } else if i == j + 1 {
        -1
    } else {
        0
    }
}

impl CycleBasis {
    pub fn intersection(a: &Cycle, b: &Cycle) -> i64 {
        a.loops
            .iter()
            .flat_map(|&(i, ci)| b.loops.iter().map(move |&(j, cj)| ci * cj * loop_intersection(i, j)))
            .sum()
    }

    /// Intersection matrix in the order `(α₁, β₁, α₂, β₂)`.
    pub fn intersection_matrix(&self) -> Matrix<rug::Integer> {
        let rows = (0..4)
            .map(|i| (0..4).map(|j| rug::Integer::from(Self::intersection(&self.cycles[i], &self.cycles[j]))).collect())
            .collect();
        Matrix::from_rows(rows)
    }

    /// An ellipse around each encircled segment of the fibre.
    pub fn path(&self, fibre: &CurveFibre, idx: usize, n: usize) -> Result<ContourPath> {
        let (k, _) = self.cycles[idx].loops[0];
        let (a, b) = (&fibre.roots[k - 1], &fibre.roots[k]);
        let p = fibre.prec;
        let mid = a.add(b).scale_rational(&rug::Rational::from((1, 2)));
        let half = b.sub(a).scale_rational(&rug::Rational::from((1, 2)));
        let gap = fibre.min_root_separation() / half.abs_f64().max(1e-300) / 3.0;
        let mut pts = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let th = 2.0 * std::f64::consts::PI * (j % n) as f64 / n as f64;
            let e = HPComplex::from_f64(1.0 + gap.min(0.5), p)
                .mul(&HPComplex::from_f64(th.cos(), p))
                .add(&HPComplex::i().mul(&HPComplex::from_f64(gap.min(0.5) * th.sin(), p)));
            pts.push(mid.add(&half.mul(&e)));
        }
        ContourPath::new(pts, true)
    }
}

/// Periods of `ω₁ = dv/√H`, `ω₂ = v dv/√H` and the normalized `τ`.
#[derive(Clone, Debug)]
pub struct PeriodMatrix {
    /// Columns `(α₁, α₂, β₁, β₂)`.
    pub omega: Matrix<HPComplex>,
    pub tau: Matrix<HPComplex>,
    pub error_log2: f64,
}

impl PeriodMatrix {
    pub fn triple(&self) -> [HPComplex; 3] {
        [self.tau[(0, 0)].clone(), self.tau[(0, 1)].clone(), self.tau[(1, 1)].clone()]
    }
    /// `log₂ |τ₁₂ − τ₂₁|`.
    pub fn symmetry_defect_log2(&self) -> f64 {
        self.tau[(0, 1)].sub(&self.tau[(1, 0)]).log2_abs()
    }
    pub fn im_positive_definite(&self) -> bool {
        let [t1, t2, t3] = self.triple();
        let (a, b, c) = (t1.im_f64(), t2.im_f64(), t3.im_f64());
        a > 0.0 && a * c - b * b > 0.0
    }
}

/// `∫_{r_k}^{r_{k+1}} v^e dv / √|H|` on a real configuration, `k` 1-based.
pub fn segment_integral(fibre: &CurveFibre, k: usize, e: u32) -> Result<(HPComplex, f64)> {
    if !fibre.all_real {
        return Err(Error::Unsupported("cut-segment periods need a real branch configuration".into()));
    }
    let (a, b) = (&fibre.roots[k - 1], &fibre.roots[k]);
    let lead = fibre.leading().approx(fibre.prec + 32).abs_float();
    let others: Vec<usize> = (0..6).filter(|&i| i != k - 1 && i != k).collect();
    let f = |n: &crate::numerics::Node| -> HPComplex {
        let mut d = HPComplex::from_float(lead.clone()).mul(&n.from_a).mul(&n.to_b);
        for &i in &others {
            d = d.mul(&n.v.sub(&fibre.roots[i]));
        }
        let d = HPComplex::from_float(d.abs_float());
        n.v.powu(e).mul(&d.sqrt().inv())
    };
    integrate_endpoint_singular(f, a, b, &QuadratureSpec::new(fibre.prec))
}

/// Branch factor of `√H` on segment `j` (between `r_j` and `r_{j+1}`, `0 ≤ j ≤ 6`).
pub fn branch_phase(fibre: &CurveFibre, j: usize) -> HPComplex {
    let mut ph = if fibre.leading().re_f64() < 0.0 { HPComplex::i() } else { HPComplex::one() };
    for _ in j..6 {
        ph = HPComplex::i().mul(&ph);
    }
    ph
}

/// `∫_{γ_k} v^e dv/√H = −2/phase_k · ∫ segment`.
pub fn loop_period(fibre: &CurveFibre, k: usize, e: u32) -> Result<(HPComplex, f64)> {
    let (j, err) = segment_integral(fibre, k, e)?;
    Ok((j.mul(&HPComplex::from_i64(-2)).mul(&branch_phase(fibre, k).inv()), err + 1.0))
}

pub fn period_matrix(fibre: &CurveFibre) -> Result<PeriodMatrix> {
    let basis = CycleBasis::default();
    let order = [0usize, 2, 1, 3];
    let jobs: Vec<(usize, u32)> = order.iter().flat_map(|&c| [(c, 0u32), (c, 1u32)]).collect();
    let vals: Vec<Result<(HPComplex, f64)>> = jobs
        .par_iter()
        .map(|&(c, e)| {
            let mut acc = HPComplex::zero();
            let mut err = f64::NEG_INFINITY;
            for &(k, m) in &basis.cycles[c].loops {
                let (v, er) = loop_period(fibre, k, e)?;
                acc = acc.add(&v.mul(&HPComplex::from_i64(m * basis.cycles[c].sheet as i64)));
                err = err.max(er);
            }
            Ok((acc, err))
        })
        .collect();
    let mut omega = Matrix::zeros(2, 4);
    let mut error_log2 = f64::NEG_INFINITY;
    for (idx, v) in vals.into_iter().enumerate() {
        let (z, er) = v?;
        omega[(idx % 2, idx / 2)] = z;
        error_log2 = error_log2.max(er);
    }
    let oa = omega.block(0, 0, 2, 2);
    let ob = omega.block(0, 2, 2, 2);
    let inv = oa.inverse().ok_or_else(|| Error::Domain("A-periods are degenerate".into()))?;
    Ok(PeriodMatrix { tau: inv.mul(&ob), omega, error_log2 })
}

/// An integer relation `Aτ₁ + Bτ₂ + Cτ₃ + D(τ₂² − τ₁τ₃) + E = 0`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TauRelation {
    pub coeffs: [i64; 5],
    pub discriminant: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Exhaustive search over `|A|, …, |E| ≤ bound`, primitive relations with a leading positive entry.
///
/// Candidates are screened in double precision and confirmed at working precision
/// to `2^{−tol_bits}`.
pub fn tau_relation_search(tau: &[HPComplex; 3], bound: i64, tol_bits: u32) -> Vec<TauRelation> {
    let [t1, t2, t3] = tau;
    let q = t2.mul(t2).sub(&t1.mul(t3));
    let f = |z: &HPComplex| (z.re_f64(), z.im_f64());
    let (f1, f2, f3, f4) = (f(t1), f(t2), f(t3), f(&q));
    let scale = 1.0 + [f1, f2, f3, f4].iter().map(|z| z.0.hypot(z.1)).fold(0.0, f64::max);
    let screen = 1e-9 * scale * bound as f64;
    let mut found: Vec<TauRelation> = (-bound..=bound)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut local = Vec::new();
            for b in -bound..=bound {
                for c in -bound..=bound {
                    for d in -bound..=bound {
                        let (a_, b_, c_, d_) = (a as f64, b as f64, c as f64, d as f64);
                        let im = a_ * f1.1 + b_ * f2.1 + c_ * f3.1 + d_ * f4.1;
                        if im.abs() > screen {
                            continue;
                        }
                        let re = a_ * f1.0 + b_ * f2.0 + c_ * f3.0 + d_ * f4.0;
                        let e = (-re).round();
                        if e.abs() > bound as f64 || (re + e).abs() > screen {
                            continue;
                        }
                        let e = e as i64;
                        let v = [a, b, c, d, e];
                        if v.iter().all(|&z| z == 0) || v.iter().fold(0, |g, &z| gcd(g, z)) != 1 {
                            continue;
                        }
                        if v.iter().find(|&&z| z != 0).is_some_and(|&z| z < 0) {
                            continue;
                        }
                        local.push(v);
                    }
                }
            }
            local
        })
        .filter(|v| {
            let s = t1
                .mul(&HPComplex::from_i64(v[0]))
                .add(&t2.mul(&HPComplex::from_i64(v[1])))
                .add(&t3.mul(&HPComplex::from_i64(v[2])))
                .add(&q.mul(&HPComplex::from_i64(v[3])))
                .add(&HPComplex::from_i64(v[4]));
            s.log2_abs() < -(tol_bits as f64)
        })
        .map(|v| TauRelation { coeffs: v, discriminant: v[1] * v[1] - 4 * v[0] * v[2] - 4 * v[3] * v[4] })
        .collect();
    found.sort_by_key(|r| (r.coeffs.iter().map(|z| z.abs()).sum::<i64>(), r.coeffs));
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::fibre::build_fibre_rational;
    use crate::exactcore::rat;

    #[test]
    fn basis_is_symplectic() {
        let m = CycleBasis::default().intersection_matrix();
        let j = Matrix::from_i64_rows(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        assert_eq!(m, j);
    }

    #[test]
    fn base_tau_and_relation() {
        let f = build_fibre_rational(&rat(1, 2), &rat(1, 1), 192).unwrap();
        let pm = period_matrix(&f).unwrap();
        assert!(pm.symmetry_defect_log2() < -96.0);
        assert!(pm.im_positive_definite());
        let [t1, t2, t3] = pm.triple();
        assert!((t1.im_f64() - 0.739_624_384_333_999_8).abs() < 1e-14 && t1.re_f64().abs() < 1e-40);
        assert!((t2.re_f64() + 0.447_891_994_441_417).abs() < 1e-14);
        assert!((t3.im_f64() - 1.479_248_768_667_999_6).abs() < 1e-14);
        // the three loops around odd segments bound the complement of all cuts
        for e in 0..2 {
            let s = (1..=5).step_by(2).map(|k| loop_period(&f, k, e).unwrap().0).fold(HPComplex::zero(), |a, b| a.add(&b));
            assert!(s.log2_abs() < -150.0);
        }
        let rels = tau_relation_search(&pm.triple(), 12, 120);
        assert_eq!(rels[0].coeffs, [2, 0, -1, 0, 0]);
        assert!(rels.iter().any(|r| r.discriminant == 8));
    }

    #[test]
    fn loop_paths_close() {
        let f = build_fibre_rational(&rat(1, 2), &rat(1, 1), 64).unwrap();
        let b = CycleBasis::default();
        for i in 0..4 {
            let p = b.path(&f, i, 32).unwrap();
            assert!(p.is_closed());
        }
    }
}
