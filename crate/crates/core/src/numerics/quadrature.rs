use super::hpcomplex::HPComplex;
use crate::error::{Error, Result};
use crate::exactcore::ring::Ring;
use rayon::prelude::*;
use rug::float::Constant;
use rug::{Float, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// tanh-sinh
    DoubleExponential,
    GaussLegendre,
}

/// Quadrature configuration.
#[derive(Clone, Debug)]
pub struct QuadratureSpec {
    pub rule: Rule,
    /// Working precision in bits.
    pub prec: u32,
    /// Target absolute error as `2^target_log2`.
    pub target_log2: i64,
    pub max_level: u32,
    /// Exponents of the integrand's endpoint behavior `(v−a)^ea (b−v)^eb`.
    pub endpoint_exponents: (Rational, Rational),
}

impl QuadratureSpec {
    pub fn new(prec: u32) -> Self {
        QuadratureSpec {
            rule: Rule::DoubleExponential,
            prec,
            target_log2: -(prec as i64) + 24,
            max_level: 14,
            endpoint_exponents: (Rational::from((-1, 2)), Rational::from((-1, 2))),
        }
    }
    pub fn with_target(mut self, log2: i64) -> Self {
        self.target_log2 = log2;
        self
    }
    pub fn with_rule(mut self, rule: Rule) -> Self {
        self.rule = rule;
        self
    }
    pub fn with_exponents(mut self, ea: Rational, eb: Rational) -> Self {
        self.endpoint_exponents = (ea, eb);
        self
    }
    pub fn with_max_level(mut self, l: u32) -> Self {
        self.max_level = l;
        self
    }
}

/// Quadrature node with accurately computed distances to both endpoints.
#[derive(Clone, Debug)]
pub struct Node {
    pub v: HPComplex,
    /// `v − a`
    pub from_a: HPComplex,
    /// `b − v`
    pub to_b: HPComplex,
}

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub values: Vec<HPComplex>,
    /// `log₂` of the estimated absolute error.
    pub error_log2: f64,
    pub level: u32,
    pub converged: bool,
}

impl QuadResult {
    pub fn value(&self) -> &HPComplex {
        &self.values[0]
    }
}

struct Sample {
    w: Float,
    c: Float,
    near_b: bool,
}

/// Integrates a vector-valued `f` over the segment `[a, b]`.
///
/// Endpoint singularities up to the declared exponents (> −1) are absorbed by the
/// tanh-sinh change of variables; the node complements are formed without
/// cancellation so singular factors can be evaluated from `from_a`, `to_b`.
pub fn integrate_vec<F>(f: F, a: &HPComplex, b: &HPComplex, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(&Node) -> Vec<HPComplex> + Sync,
{
    match spec.rule {
        Rule::DoubleExponential => tanh_sinh(f, a, b, spec),
        Rule::GaussLegendre => gauss_legendre(f, a, b, spec),
    }
}

/// Scalar form; fails with an accuracy error carrying the estimate.
pub fn integrate_endpoint_singular<F>(f: F, a: &HPComplex, b: &HPComplex, spec: &QuadratureSpec) -> Result<(HPComplex, f64)>
where
    F: Fn(&Node) -> HPComplex + Sync,
{
    let r = integrate_vec(|n| vec![f(n)], a, b, spec)?;
    if !r.converged {
        return Err(Error::Accuracy { estimate: r.error_log2.exp2() });
    }
    Ok((r.values[0].clone(), r.error_log2))
}

fn tanh_sinh<F>(f: F, a: &HPComplex, b: &HPComplex, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(&Node) -> Vec<HPComplex> + Sync,
{
    let prec = spec.prec + 32;
    let a = a.approx(prec);
    let b = b.approx(prec);
    let half_len = b.sub(&a).mul(&HPComplex::from_f64(0.5, prec));
    let pi2 = Float::with_val(prec, Constant::Pi) / 2u32;
    let emin = spec.endpoint_exponents.0.clone().min(spec.endpoint_exponents.1.clone()).to_f64();
    if emin <= -1.0 {
        return Err(Error::Usage("endpoint exponents must exceed -1".into()));
    }
    // tail cutoff: weight·|f| ~ c^{1+e}·cosh t below 2^{-prec-16}
    let need = (spec.prec as f64 + 16.0) * std::f64::consts::LN_2 / (2.0 * (1.0 + emin));
    let t_max = ((need / std::f64::consts::FRAC_PI_2) + 1.0).asinh() + 0.5;

    let eval = |t: &Float| -> Sample {
        let sh = Float::with_val(prec, t.sinh_ref());
        let ch = Float::with_val(prec, t.cosh_ref());
        let u = Float::with_val(prec, &pi2 * &sh);
        // c = 1 − tanh u = 2 / (e^{2u} + 1)
        let e2u = Float::with_val(prec, Float::with_val(prec, &u * 2u32).exp_ref());
        let c = Float::with_val(prec, 2u32) / (e2u + 1u32);
        let two_minus_c = Float::with_val(prec, 2u32 - &c);
        let w = Float::with_val(prec, &pi2 * &ch) * Float::with_val(prec, &c * &two_minus_c);
        Sample { w, c, near_b: true }
    };
    let node_of = |s: &Sample| -> Node {
        let small = half_len.mul(&HPComplex::from_float(s.c.clone()));
        let big = half_len.mul(&HPComplex::from_float(Float::with_val(prec, 2u32 - &s.c)));
        if s.near_b {
            Node { v: b.sub(&small), from_a: big, to_b: small }
        } else {
            Node { v: a.add(&small), from_a: small, to_b: big }
        }
    };

    let mut total: Option<Vec<HPComplex>> = None;
    let mut prev: Option<Vec<HPComplex>> = None;
    let mut prev_err = f64::INFINITY;
    let target = spec.target_log2 as f64;
    for level in 0..=spec.max_level {
        let h = Float::with_val(prec, Float::with_val(prec, 1u32) >> level);
        let n_max = (t_max * (1u64 << level) as f64).ceil() as u64;
        let idx: Vec<u64> = if level == 0 { (0..=n_max).collect() } else { (1..=n_max).step_by(2).collect() };
        let contributions: Vec<Vec<HPComplex>> = idx
            .par_iter()
            .map(|&j| {
                let t = Float::with_val(prec, &h * j);
                let s = eval(&t);
                if s.c.is_zero() {
                    return Vec::new();
                }
                let w = HPComplex::from_float(s.w.clone());
                if j == 0 {
                    let node = Node { v: a.add(&half_len), from_a: half_len.clone(), to_b: half_len.clone() };
                    return f(&node).iter().map(|y| y.mul(&w)).collect();
                }
                let nb = node_of(&s);
                let na = node_of(&Sample { w: s.w.clone(), c: s.c.clone(), near_b: false });
                let fb = f(&nb);
                let fa = f(&na);
                fb.iter().zip(fa.iter()).map(|(x, y)| x.add(y).mul(&w)).collect()
            })
            .collect();
        let mut acc = match total.take() {
            Some(t) => t,
            None => Vec::new(),
        };
        for c in contributions {
            if c.is_empty() {
                continue;
            }
            if acc.is_empty() {
                acc = vec![HPComplex::zero().approx(prec); c.len()];
            }
            for (s, x) in acc.iter_mut().zip(c.iter()) {
                s.add_assign(x);
            }
        }
        // level-k estimate h·Σ·(b−a)/2
        let hh = HPComplex::from_float(h.clone()).mul(&half_len);
        let est: Vec<HPComplex> = acc.iter().map(|s| s.mul(&hh)).collect();
        total = Some(acc);
        if let Some(p) = &prev {
            let err = est
                .iter()
                .zip(p.iter())
                .map(|(x, y)| x.sub(y).log2_abs())
                .fold(f64::NEG_INFINITY, f64::max);
            let err = if err.is_finite() { err } else { -(prec as f64) };
            if level >= 3 && (err < target || (err > prev_err - 1.0 && err < target + 8.0 && level > 8)) {
                return Ok(QuadResult { values: est, error_log2: err, level, converged: err < target });
            }
            prev_err = err;
        }
        prev = Some(est);
    }
    Ok(QuadResult { values: prev.unwrap_or_default(), error_log2: prev_err, level: spec.max_level, converged: prev_err < target })
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` by Newton iteration.
pub fn gauss_legendre_nodes(n: usize, prec: u32) -> Vec<(Float, Float)> {
    let pi = Float::with_val(prec, Constant::Pi);
    let mut out = Vec::with_capacity(n);
    for i in 0..n.div_ceil(2) {
        let guess = ((i as f64 + 0.75) / (n as f64 + 0.5) * std::f64::consts::PI).cos();
        let mut x = Float::with_val(prec, guess);
        let _ = &pi;
        let mut dp = Float::with_val(prec, 0);
        for _ in 0..200 {
            let (p, d) = legendre_eval(n, &x, prec);
            dp = d.clone();
            let dx = Float::with_val(prec, &p / &d);
            x -= &dx;
            if dx.is_zero() || dx.get_exp().unwrap_or(i32::MIN) < -(prec as i32) + 4 {
                let (_, d2) = legendre_eval(n, &x, prec);
                dp = d2;
                break;
            }
        }
        let x2 = Float::with_val(prec, &x * &x);
        let w = Float::with_val(prec, 2u32) / (Float::with_val(prec, 1u32 - x2) * Float::with_val(prec, &dp * &dp));
        out.push((x.clone(), w.clone()));
        if 2 * i + 1 != n {
            out.push((Float::with_val(prec, -&x), w));
        }
    }
    out
}

fn legendre_eval(n: usize, x: &Float, prec: u32) -> (Float, Float) {
    let mut p0 = Float::with_val(prec, 1u32);
    let mut p1 = x.clone();
    if n == 0 {
        return (p0, Float::with_val(prec, 0));
    }
    for k in 1..n {
        let k = k as u32;
        let a = Float::with_val(prec, x * &p1) * (2 * k + 1);
        let b = Float::with_val(prec, &p0 * k);
        let p2 = (a - b) / (k + 1);
        p0 = p1;
        p1 = p2;
    }
    // P_n'(x) = n (x P_n − P_{n−1}) / (x² − 1)
    let x2m1 = Float::with_val(prec, x * x) - 1u32;
    let d = Float::with_val(prec, Float::with_val(prec, x * &p1) - &p0) * (n as u32) / x2m1;
    (p1, d)
}

fn gauss_legendre<F>(f: F, a: &HPComplex, b: &HPComplex, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(&Node) -> Vec<HPComplex> + Sync,
{
    let prec = spec.prec + 32;
    let a = a.approx(prec);
    let b = b.approx(prec);
    let half_len = b.sub(&a).mul(&HPComplex::from_f64(0.5, prec));
    let mut prev: Option<Vec<HPComplex>> = None;
    let mut prev_err = f64::INFINITY;
    for level in 2..=spec.max_level {
        let n = 1usize << level;
        let nodes = gauss_legendre_nodes(n, prec);
        let parts: Vec<Vec<HPComplex>> = nodes
            .par_iter()
            .map(|(x, w)| {
                let one_plus = HPComplex::from_float(Float::with_val(prec, 1u32 + x));
                let one_minus = HPComplex::from_float(Float::with_val(prec, 1u32 - x));
                let node = Node { v: a.add(&half_len.mul(&one_plus)), from_a: half_len.mul(&one_plus), to_b: half_len.mul(&one_minus) };
                let ww = HPComplex::from_float(w.clone()).mul(&half_len);
                f(&node).iter().map(|y| y.mul(&ww)).collect()
            })
            .collect();
        let mut acc: Vec<HPComplex> = Vec::new();
        for p in parts {
            if acc.is_empty() {
                acc = vec![HPComplex::zero().approx(prec); p.len()];
            }
            for (s, x) in acc.iter_mut().zip(p.iter()) {
                s.add_assign(x);
            }
        }
        if let Some(p) = &prev {
            let err = acc.iter().zip(p.iter()).map(|(x, y)| x.sub(y).log2_abs()).fold(f64::NEG_INFINITY, f64::max);
            let err = if err.is_finite() { err } else { -(prec as f64) };
            if err < spec.target_log2 as f64 {
                return Ok(QuadResult { values: acc, error_log2: err, level, converged: true });
            }
            prev_err = err;
        }
        prev = Some(acc);
    }
    Ok(QuadResult { values: prev.unwrap_or_default(), error_log2: prev_err, level: spec.max_level, converged: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::ring::Field;

    #[test]
    fn beta_half_half_is_pi() {
        let spec = QuadratureSpec::new(256).with_target(-180);
        let (v, _) = integrate_endpoint_singular(
            |n| n.from_a.mul(&n.to_b).sqrt().inv(),
            &HPComplex::zero(),
            &HPComplex::one(),
            &spec,
        )
        .unwrap();
        let d = v.sub(&HPComplex::pi(300));
        assert!(d.log2_abs() < -170.0, "error 2^{}", d.log2_abs());
    }

    #[test]
    fn smooth_gauss() {
        let spec = QuadratureSpec::new(128).with_rule(Rule::GaussLegendre).with_target(-100);
        let (v, _) = integrate_endpoint_singular(|n| n.v.mul(&n.v), &HPComplex::zero(), &HPComplex::one(), &spec).unwrap();
        let d = v.sub(&HPComplex::real(Rational::from((1, 3))));
        assert!(d.log2_abs() < -100.0);
    }
}
