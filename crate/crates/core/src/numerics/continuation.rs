use super::hpcomplex::HPComplex;
use super::roots::poly_roots;
use crate::error::{usage, Error, Result};
use crate::exactcore::{Field, Matrix, Poly, Ring, QT};
use crate::holonomic::DiffOperator;
use rug::{Complex, Float};

/// Piecewise-linear path in the complex plane.
#[derive(Clone, Debug)]
pub struct ContourPath {
    points: Vec<HPComplex>,
    closed: bool,
}

impl ContourPath {
    pub fn new(points: Vec<HPComplex>, closed: bool) -> Result<Self> {
        if points.len() < 2 {
            return usage("a path needs at least two waypoints");
        }
        if closed {
            let d = points[0].sub(points.last().unwrap());
            if d.magnitude() > 1e-30 {
                return usage("closed path must end at its first waypoint");
            }
        }
        Ok(ContourPath { points, closed })
    }
    pub fn open(points: Vec<HPComplex>) -> Result<Self> {
        Self::new(points, false)
    }
    pub fn points(&self) -> &[HPComplex] {
        &self.points
    }
    pub fn is_closed(&self) -> bool {
        self.closed
    }
    pub fn start(&self) -> &HPComplex {
        &self.points[0]
    }
    pub fn end(&self) -> &HPComplex {
        self.points.last().unwrap()
    }
    pub fn reversed(&self) -> Self {
        let mut p = self.points.clone();
        p.reverse();
        ContourPath { points: p, closed: self.closed }
    }
    /// Traverses `self` then `o`; `o` must start where `self` ends.
    pub fn then(&self, o: &Self) -> Result<Self> {
        if self.end().sub(o.start()).magnitude() > 1e-30 {
            return usage("paths do not connect");
        }
        let mut p = self.points.clone();
        p.extend(o.points.iter().skip(1).cloned());
        let closed = p[0].sub(p.last().unwrap()).magnitude() <= 1e-30;
        Ok(ContourPath { points: p, closed })
    }
    /// Inserts midpoints on every segment; same homotopy class.
    pub fn refined(&self) -> Self {
        let mut p = Vec::with_capacity(2 * self.points.len());
        let half = HPComplex::real(rug::Rational::from((1, 2)));
        for w in self.points.windows(2) {
            p.push(w[0].clone());
            p.push(w[0].add(&w[1]).mul(&half));
        }
        p.push(self.end().clone());
        ContourPath { points: p, closed: self.closed }
    }
    /// Polygonal circle of `n` sides with positive or negative orientation.
    pub fn circle(center: &HPComplex, radius: f64, start_angle: f64, ccw: bool, n: usize, prec: u32) -> Self {
        let sgn = if ccw { 1.0 } else { -1.0 };
        let mut p = Vec::with_capacity(n + 1);
        for k in 0..n {
            let th = Float::with_val(prec, start_angle) + Float::with_val(prec, sgn * 2.0 * (k as f64) / (n as f64)) * Float::with_val(prec, rug::float::Constant::Pi);
            let r = Float::with_val(prec, radius);
            let (s, c) = th.sin_cos(Float::new(prec));
            let z = Complex::with_val(prec, (Float::with_val(prec, &r * &c), Float::with_val(prec, &r * &s)));
            p.push(center.add(&HPComplex::from_complex(z)));
        }
        p.push(p[0].clone());
        ContourPath { points: p, closed: true }
    }
    /// Goes straight from `base` to the circle of `radius` about `center`, makes one
    /// turn, and returns along the same segment.
    pub fn lasso(base: &HPComplex, center: &HPComplex, radius: f64, ccw: bool, n: usize, prec: u32) -> Result<Self> {
        let d = base.sub(center);
        let dist = d.abs_f64();
        if dist <= radius {
            return usage("base point lies inside the lasso circle");
        }
        let ang = d.im_f64().atan2(d.re_f64());
        let circle = Self::circle(center, radius, ang, ccw, n, prec);
        let entry = circle.start().clone();
        let mut p = vec![base.clone(), entry.clone()];
        p.extend(circle.points.iter().skip(1).cloned());
        p.push(base.clone());
        Self::new(p, true)
    }
}

/// Taylor continuation parameters.
#[derive(Clone, Debug)]
pub struct ContinuationSpec {
    pub prec: u32,
    /// Step as a fraction of the distance to the nearest singularity.
    pub step_fraction: f64,
    /// Minimal admissible distance from the path to a singularity.
    pub margin: f64,
    /// Safety factor on the last-term truncation heuristic, as a power of two.
    pub safety_log2: i64,
    pub max_terms: usize,
}

impl ContinuationSpec {
    pub fn new(prec: u32) -> Self {
        ContinuationSpec { prec, step_fraction: 0.4, margin: 1e-6, safety_log2: 8, max_terms: 4 * prec as usize + 64 }
    }
}

/// Result of transporting a fundamental system along a path.
#[derive(Clone, Debug)]
pub struct Continuation {
    /// Column `j` holds `(y_j, y_j', …, y_j^{(m−1)})` at the end point.
    pub end_data: Matrix<HPComplex>,
    /// `W₀⁻¹ W₁` for closed paths.
    pub transition: Option<Matrix<HPComplex>>,
    pub steps: usize,
    /// Accumulated `log₂` truncation estimate.
    pub error_log2: f64,
}

/// Evaluates a `ℚ(t)`-coefficient operator at a numeric parameter value.
pub fn specialize(l: &DiffOperator<QT>, t: &HPComplex) -> Result<DiffOperator<HPComplex>> {
    let ev = |q: &QT| -> Option<HPComplex> {
        let n = q.num().map(|c| HPComplex::real(c.clone())).eval(t);
        let d = q.den().map(|c| HPComplex::real(c.clone())).eval(t);
        (!d.is_zero()).then(|| n.mul(&d.inv()))
    };
    if l.has_radical() {
        return Err(Error::Unsupported("numeric specialization of radical operators".into()));
    }
    let mut a = Vec::new();
    for p in l.coeffs() {
        let mut c = Vec::new();
        for q in p.coeffs() {
            c.push(ev(q).ok_or_else(|| Error::Domain("parameter is a pole of a coefficient".into()))?);
        }
        a.push(Poly::new(c));
    }
    Ok(DiffOperator::new(a)?.with_var(l.var()))
}

fn cx(z: &HPComplex, prec: u32) -> Complex {
    z.to_complex(prec)
}

fn abs_f64(z: &Complex) -> f64 {
    let a = Float::with_val(53, z.abs_ref());
    a.to_f64()
}

fn log2_abs(z: &Complex) -> f64 {
    let a = Float::with_val(64, z.abs_ref());
    if a.is_zero() {
        f64::NEG_INFINITY
    } else {
        a.log2().to_f64()
    }
}

struct Stepper<'a> {
    l: &'a DiffOperator<HPComplex>,
    sing: Vec<HPComplex>,
    spec: &'a ContinuationSpec,
}

impl<'a> Stepper<'a> {
    fn dist(&self, z: &HPComplex) -> f64 {
        self.sing.iter().map(|s| s.sub(z).abs_f64()).fold(f64::INFINITY, f64::min)
    }

    /// One Taylor step from `c` to `c + h` applied to every column of `data`.
    fn step(&self, c: &HPComplex, h: &HPComplex, data: &[Vec<Complex>]) -> Result<(Vec<Vec<Complex>>, f64)> {
        let prec = self.spec.prec;
        let m = self.l.order();
        let shifted: Vec<Vec<Complex>> = (0..=m)
            .map(|i| self.l.coeff(i).taylor_shift(c).coeffs().iter().map(|a| cx(a, prec)).collect())
            .collect();
        let lead = shifted[m][0].clone();
        if abs_f64(&lead) == 0.0 {
            return Err(Error::Path("step starts on a singularity".into()));
        }
        let hc = cx(h, prec);
        let habs = log2_abs(&hc);
        let target = -(prec as f64) - self.spec.safety_log2 as f64;
        let mut out = Vec::with_capacity(data.len());
        let mut worst = f64::NEG_INFINITY;
        for col in data {
            // Taylor coefficients y_n
            let mut y: Vec<Complex> = Vec::with_capacity(128);
            let mut fact = Float::with_val(prec, 1);
            for (i, v) in col.iter().enumerate() {
                if i > 0 {
                    fact *= i as u32;
                }
                y.push(Complex::with_val(prec, v / &fact));
            }
            let mut small = 0;
            let mut n = 0usize;
            loop {
                // coefficient of h^n in L(y) gives y_{n+m}
                let mut acc = Complex::with_val(prec, 0);
                for (i, a) in shifted.iter().enumerate() {
                    for (k, ak) in a.iter().enumerate() {
                        if (i == m && k == 0) || k > n {
                            continue;
                        }
                        let j = n - k;
                        // y^{(i)} coefficient j: (j+1)…(j+i) y_{j+i}
                        let mut ff: u64 = 1;
                        for q in 1..=i {
                            ff *= (j + q) as u64;
                        }
                        let t = Complex::with_val(prec, ak * &y[j + i]);
                        acc += t * Float::with_val(prec, ff);
                    }
                }
                let mut ff: u64 = 1;
                for q in 1..=m {
                    ff *= (n + q) as u64;
                }
                let denom = Complex::with_val(prec, &lead * Float::with_val(prec, ff));
                let next = Complex::with_val(prec, -acc / denom);
                let idx = n + m;
                let mag = log2_abs(&next) + habs * idx as f64;
                y.push(next);
                let colmax = col.iter().map(log2_abs).fold(0.0f64, f64::max);
                if mag < target + colmax {
                    small += 1;
                } else {
                    small = 0;
                }
                n += 1;
                if small >= m + 2 {
                    worst = worst.max(mag + self.spec.safety_log2 as f64);
                    break;
                }
                if y.len() > self.spec.max_terms {
                    return Err(Error::Precision(format!(
                        "Taylor series did not reach the error budget within {} terms",
                        self.spec.max_terms
                    )));
                }
            }
            // evaluate derivatives at h by Horner on each derivative series
            let mut vals = Vec::with_capacity(m);
            for d in 0..m {
                let mut s = Complex::with_val(prec, 0);
                for j in (d..y.len()).rev() {
                    let mut ff: u64 = 1;
                    for q in 0..d {
                        ff *= (j - q) as u64;
                    }
                    s *= &hc;
                    s += Complex::with_val(prec, &y[j] * Float::with_val(prec, ff));
                }
                vals.push(s);
            }
            out.push(vals);
        }
        Ok((out, worst))
    }
}

/// Continues the solutions with initial derivative data `basis` (columns) along `path`.
///
/// With `basis = None` the start data is the identity, i.e. the Wronskian basis.
pub fn ode_continue(
    l: &DiffOperator<HPComplex>,
    path: &ContourPath,
    basis: Option<&Matrix<HPComplex>>,
    spec: &ContinuationSpec,
) -> Result<Continuation> {
    let m = l.order();
    if m == 0 {
        return usage("operator of order zero");
    }
    let prec = spec.prec;
    let sing = if l.leading().degree().unwrap_or(0) == 0 { Vec::new() } else { poly_roots(l.leading(), prec)? };
    let st = Stepper { l, sing, spec };
    let w0 = match basis {
        Some(b) => {
            if b.rows() != m {
                return usage(format!("basis data must have {m} rows"));
            }
            b.clone()
        }
        None => Matrix::identity(m),
    };
    let mut data: Vec<Vec<Complex>> = (0..w0.cols()).map(|j| (0..m).map(|i| cx(&w0[(i, j)], prec)).collect()).collect();
    let mut steps = 0;
    let mut err = f64::NEG_INFINITY;
    for w in path.points().windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let seg = b.sub(a);
        let len = seg.abs_f64();
        if len == 0.0 {
            continue;
        }
        let mut pos = a.clone();
        let mut done = 0.0f64;
        if st.dist(a) < spec.margin {
            return Err(Error::Path(format!("waypoint within {} of a singularity", spec.margin)));
        }
        while done < len {
            let d = st.dist(&pos);
            if d < spec.margin {
                return Err(Error::Path(format!("path passes within {} of a singularity", spec.margin)));
            }
            let mut h = spec.step_fraction * d;
            let last = done + h >= len;
            let next = if last {
                b.clone()
            } else {
                let frac = HPComplex::from_f64((done + h) / len, prec);
                a.add(&seg.mul(&frac))
            };
            if last {
                h = len - done;
            }
            let hh = next.sub(&pos);
            let (nd, e) = st.step(&pos, &hh, &data)?;
            data = nd;
            err = if err == f64::NEG_INFINITY { e } else { err.max(e) + 1.0 };
            steps += 1;
            pos = next;
            done += h;
        }
    }
    let end_data = Matrix::from_rows((0..m).map(|i| data.iter().map(|c| HPComplex::from_complex(c[i].clone())).collect()).collect());
    let transition = if path.is_closed() && w0.cols() == m {
        let inv = w0.map(|z| z.approx(prec)).inverse().ok_or_else(|| usage_err("basis data is singular"))?;
        Some(inv.mul(&end_data))
    } else {
        None
    };
    Ok(Continuation { end_data, transition, steps, error_log2: err })
}

fn usage_err(s: &str) -> Error {
    Error::Usage(s.into())
}

/// Entrywise maximum of `|A − B|`.
pub fn max_abs_diff(a: &Matrix<HPComplex>, b: &Matrix<HPComplex>) -> f64 {
    a.entries().iter().zip(b.entries()).map(|(x, y)| x.sub(y).abs_f64()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    const P: u32 = 192;

    fn op(v: &[&[i64]]) -> DiffOperator<HPComplex> {
        DiffOperator::new(v.iter().map(|c| Poly::new(c.iter().map(|&n| HPComplex::from_i64(n)).collect())).collect()).unwrap()
    }

    #[test]
    fn loop_without_singularity_is_identity() {
        // y'' + y = 0 has no singularities
        let l = op(&[&[1], &[0], &[1]]);
        let path = ContourPath::circle(&HPComplex::from_i64(0), 1.5, 0.0, true, 12, P);
        let c = ode_continue(&l, &path, None, &ContinuationSpec::new(P)).unwrap();
        let t = c.transition.unwrap();
        assert!(max_abs_diff(&t, &Matrix::identity(2)) < 1e-40);
    }

    #[test]
    fn sqrt_monodromy_is_minus_one() {
        // 2x y' − y = 0 annihilates √x
        let l = op(&[&[-1], &[0, 2]]);
        let path = ContourPath::lasso(&HPComplex::from_i64(1), &HPComplex::from_i64(0), 0.5, true, 8, P).unwrap();
        let c = ode_continue(&l, &path, None, &ContinuationSpec::new(P)).unwrap();
        let t = c.transition.unwrap();
        assert!(t[(0, 0)].add(&HPComplex::one()).abs_f64() < 1e-40);
    }

    #[test]
    fn log_monodromy_is_unipotent() {
        // x y'' + y' = 0: solutions 1, log x
        let l = op(&[&[0], &[1], &[0, 1]]);
        let path = ContourPath::lasso(&HPComplex::from_i64(1), &HPComplex::from_i64(0), 0.5, true, 10, P).unwrap();
        let c = ode_continue(&l, &path, None, &ContinuationSpec::new(P)).unwrap();
        let t = c.transition.unwrap();
        // basis (y(1), y'(1)) = (1,0) ↦ 1 and (0,1) ↦ log x ↦ log x + 2πi
        let two_pi_i = HPComplex::pi(P).mul(&HPComplex::from_i64(2)).mul(&HPComplex::i());
        assert!(t[(0, 1)].sub(&two_pi_i).abs_f64() < 1e-40);
        assert!(t[(1, 1)].sub(&HPComplex::one()).abs_f64() < 1e-40);
        assert!(t[(1, 0)].abs_f64() < 1e-40);
    }

    #[test]
    fn open_path_matches_exponential() {
        let l = op(&[&[-1], &[1]]);
        let path = ContourPath::open(vec![HPComplex::from_i64(0), HPComplex::from_i64(3)]).unwrap();
        let c = ode_continue(&l, &path, None, &ContinuationSpec::new(P)).unwrap();
        let e3 = HPComplex::from_i64(3).approx(P).exp();
        assert!(c.end_data[(0, 0)].sub(&e3).abs_f64() < 1e-40);
    }

    #[test]
    fn reverse_path_undoes_continuation() {
        let l = op(&[&[0], &[1], &[0, 1]]);
        let p = ContourPath::open(vec![HPComplex::from_i64(1), HPComplex::exact(Rational::from(-1), Rational::from(2))]).unwrap();
        let spec = ContinuationSpec::new(P);
        let there = ode_continue(&l, &p, None, &spec).unwrap();
        let back = ode_continue(&l, &p.reversed(), Some(&there.end_data), &spec).unwrap();
        assert!(max_abs_diff(&back.end_data, &Matrix::identity(2)) < 1e-40);
    }

    #[test]
    fn path_through_singularity_rejected() {
        let l = op(&[&[-1], &[0, 2]]);
        let p = ContourPath::open(vec![HPComplex::from_i64(1), HPComplex::from_i64(-1)]).unwrap();
        assert!(matches!(ode_continue(&l, &p, None, &ContinuationSpec::new(P)), Err(Error::Path(_))));
    }

    #[test]
    fn closed_path_must_close() {
        let p = vec![HPComplex::from_i64(0), HPComplex::from_i64(1)];
        assert!(ContourPath::new(p, true).is_err());
    }
}
