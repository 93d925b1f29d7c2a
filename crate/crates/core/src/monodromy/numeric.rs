use super::symplectic::{monodromy_tuple, IntMatrix4};
use crate::curves::{singular_x13, t_of_u};
use crate::error::{Error, Result};
use crate::exactcore::{Matrix, Ring};
use crate::holonomic::catalog::{pf_operator, Sign};
use crate::numerics::{max_abs_diff, ode_continue, specialize, ContinuationSpec, ContourPath, HPComplex};
use rayon::prelude::*;
use rug::Rational;

/// The four loops at base point `x = 1`: lassos about `x₁`, `0`, `x₃` and a clockwise
/// turn about all finite singular points.
pub fn base_loops(u: &HPComplex, radius: f64, prec: u32) -> Result<[ContourPath; 4]> {
    let base = HPComplex::one();
    let (x1, x3) = singular_x13(u, prec);
    let l1 = ContourPath::lasso(&base, &x1, radius, true, 16, prec)?;
    let l2 = ContourPath::lasso(&base, &HPComplex::zero(), radius, true, 16, prec)?;
    let l3 = ContourPath::lasso(&base, &x3, radius, true, 16, prec)?;
    let centre = HPComplex::from_i64(-1);
    let outer = ContourPath::circle(&centre, 3.0, 0.0, false, 32, prec);
    let spoke = ContourPath::open(vec![base.clone(), HPComplex::from_i64(2)])?;
    let l4 = spoke.then(&outer)?.then(&spoke.reversed())?;
    Ok([l1, l2, l3, ContourPath::new(l4.points().to_vec(), true)?])
}

fn segment_distance(a: &HPComplex, b: &HPComplex, p: &HPComplex) -> f64 {
    let (ax, ay, bx, by, px, py) = (a.re_f64(), a.im_f64(), b.re_f64(), b.im_f64(), p.re_f64(), p.im_f64());
    let (dx, dy) = (bx - ax, by - ay);
    let l2 = dx * dx + dy * dy;
    let s = if l2 == 0.0 { 0.0 } else { (((px - ax) * dx + (py - ay) * dy) / l2).clamp(0.0, 1.0) };
    ((ax + s * dx - px).powi(2) + (ay + s * dy - py).powi(2)).sqrt()
}

/// Smallest distance from any loop to a singular point.
pub fn loop_clearance(loops: &[ContourPath], sing: &[HPComplex]) -> f64 {
    loops
        .iter()
        .flat_map(|l| l.points().windows(2).map(|w| (w[0].clone(), w[1].clone())).collect::<Vec<_>>())
        .flat_map(|(a, b)| sing.iter().map(move |s| segment_distance(&a, &b, s)))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct NumericMonodromyReport {
    pub prec: u32,
    pub words_checked: usize,
    /// Largest `|tr M_w − tr N_w|` over words of length `≤ 3`.
    pub max_trace_error: f64,
    pub worst_word: String,
    pub rounded_traces_match: bool,
    /// `log₁₀ ‖N₁N₂N₃N₄ − I‖`.
    pub composite_log10: f64,
    pub clearance: f64,
    pub clearance_required: f64,
    pub steps: usize,
    pub block_traces: Vec<[String; 2]>,
}

impl NumericMonodromyReport {
    pub fn holds(&self, trace_tol: f64, composite_log10_tol: f64) -> bool {
        self.max_trace_error < trace_tol && self.rounded_traces_match && self.composite_log10 < composite_log10_tol
    }
}

fn block_diag(a: &Matrix<HPComplex>, b: &Matrix<HPComplex>) -> Matrix<HPComplex> {
    let mut m = Matrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = a[(i, j)].clone();
            m[(i + 2, j + 2)] = b[(i, j)].clone();
        }
    }
    m
}

pub fn words_up_to(len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..len {
        layer = layer.iter().flat_map(|w| (0..4).map(move |i| [w.clone(), vec![i]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Continues the two order-2 factors of `L^PF` along the base loops at parameter `u`.
///
/// Numeric transition matrices act on coordinate rows, so they are transposed to
/// compose in the same order as the exact tuple.
pub fn numeric_tuple(u: &Rational, prec: u32) -> Result<([Matrix<HPComplex>; 4], f64, f64, usize)> {
    let uc = HPComplex::real(u.clone());
    let t = t_of_u(&uc, prec);
    let (x1, x3) = singular_x13(&uc, prec);
    let true_sing = [x1.clone(), HPComplex::zero(), x3.clone()];
    let nearest = [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| true_sing[i].sub(&true_sing[j]).abs_f64()).fold(f64::INFINITY, f64::min);
    let loops = base_loops(&uc, 0.25 * nearest, prec)?;
    let clearance = loop_clearance(&loops, &true_sing);
    let ops = [Sign::Plus, Sign::Minus].map(|s| pf_operator(s).and_then(|l| specialize(&l, &t)));
    let ops: Vec<_> = ops.into_iter().collect::<Result<_>>()?;
    let spec = ContinuationSpec::new(prec);
    let jobs: Vec<(usize, usize)> = (0..2).flat_map(|s| (0..4).map(move |k| (s, k))).collect();
    let res: Vec<Result<(Matrix<HPComplex>, usize)>> = jobs
        .par_iter()
        .map(|&(s, k)| {
            let r = ode_continue(&ops[s], &loops[k], None, &spec)?;
            let m = r.transition.ok_or_else(|| Error::Path("loop is not closed".into()))?;
            Ok((m.transpose(), r.steps))
        })
        .collect();
    let mut mats = Vec::new();
    let mut steps = 0;
    for r in res {
        let (m, s) = r?;
        mats.push(m);
        steps += s;
    }
    let tuple = [0, 1, 2, 3].map(|k| block_diag(&mats[k], &mats[4 + k]));
    Ok((tuple, clearance, 0.2 * nearest, steps))
}

fn exact_word(ms: &[IntMatrix4; 4], w: &[usize]) -> IntMatrix4 {
    w.iter().fold(Matrix::identity(4), |acc, &i| acc.mul(&ms[i]))
}

fn numeric_word(ns: &[Matrix<HPComplex>; 4], w: &[usize]) -> Matrix<HPComplex> {
    w.iter().fold(Matrix::identity(4), |acc, &i| acc.mul(&ns[i]))
}

pub fn match_numeric_monodromy(u: &Rational, prec: u32) -> Result<NumericMonodromyReport> {
    if prec < 192 {
        return crate::error::usage("numeric monodromy needs at least 192 bits");
    }
    let (ns, clearance, clearance_required, steps) = numeric_tuple(u, prec)?;
    let ms = monodromy_tuple();
    let words = words_up_to(3);
    let mut max_err = 0.0f64;
    let mut worst = String::new();
    let mut rounded = true;
    for w in &words {
        let te = exact_word(&ms, w).trace();
        let tn = numeric_word(&ns, w).trace();
        let err = tn.sub(&HPComplex::real(Rational::from(te.clone()))).abs_f64();
        if err > max_err || worst.is_empty() {
            max_err = max_err.max(err);
            worst = w.iter().map(|i| format!("ℓ{}", i + 1)).collect();
        }
        let r = tn.re_f64().round();
        rounded &= tn.im_f64().abs() < 0.25 && te.to_f64() == r;
    }
    let comp = numeric_word(&ns, &[0, 1, 2, 3]);
    let composite = max_abs_diff(&comp, &Matrix::identity(4));
    let block_traces = ns
        .iter()
        .map(|n| [n.block(0, 0, 2, 2).trace().to_decimal(15), n.block(2, 2, 2, 2).trace().to_decimal(15)])
        .collect();
    Ok(NumericMonodromyReport {
        prec,
        words_checked: words.len(),
        max_trace_error: max_err,
        worst_word: worst,
        rounded_traces_match: rounded,
        composite_log10: composite.log10(),
        clearance,
        clearance_required,
        steps,
        block_traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_count() {
        assert_eq!(words_up_to(3).len(), 4 + 16 + 64);
    }

    #[test]
    fn numeric_matches_exact() {
        let r = match_numeric_monodromy(&Rational::from((1, 2)), 256).unwrap();
        assert!(r.clearance >= r.clearance_required, "{r:?}");
        assert!(r.holds(1e-10, -20.0), "{r:?}");
    }

    #[test]
    fn refinement_keeps_transition() {
        let prec = 192;
        let u = HPComplex::real(Rational::from((1, 2)));
        let l = specialize(&pf_operator(Sign::Plus).unwrap(), &t_of_u(&u, prec)).unwrap();
        let loops = base_loops(&u, 0.5, prec).unwrap();
        let spec = ContinuationSpec::new(prec);
        let a = ode_continue(&l, &loops[1], None, &spec).unwrap().transition.unwrap();
        let b = ode_continue(&l, &loops[1].refined(), None, &spec).unwrap().transition.unwrap();
        assert!(max_abs_diff(&a, &b) < 1e-40);
    }
}
