use crate::error::{usage, Error, Result};
use crate::exactcore::{ExactSqrt, Field, Offset, Poly, QAlgebra, RatFunc, Ring, TruncatedSeries};
use rug::Rational;

/// Coefficient fields usable for operators: fields containing ℚ.
pub trait Scalar: Field + QAlgebra {}
impl<T: Field + QAlgebra> Scalar for T {}

/// `Σ (a_i(x) + b_i(x)·s) ∂^i` with polynomial coefficients and an optional radical `s² = r(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator<K: Scalar> {
    a: Vec<Poly<K>>,
    b: Vec<Poly<K>>,
    radicand: Option<Poly<K>>,
    var: char,
}

impl<K: Scalar> DiffOperator<K> {
    pub fn new(a: Vec<Poly<K>>) -> Result<Self> {
        Self::with_radical(a, Vec::new(), None)
    }

    pub fn with_radical(mut a: Vec<Poly<K>>, mut b: Vec<Poly<K>>, radicand: Option<Poly<K>>) -> Result<Self> {
        let radicand = radicand.filter(|r| !r.is_zero());
        if radicand.is_none() || b.iter().all(|p| p.is_zero()) {
            b.clear();
        }
        let radicand = if b.is_empty() { None } else { radicand };
        let len = a.len().max(b.len());
        a.resize(len, Poly::zero());
        b.resize(if radicand.is_some() { len } else { 0 }, Poly::zero());
        while a.last().is_some_and(|p| p.is_zero()) && b.last().map_or(true, |p| p.is_zero()) {
            a.pop();
            b.pop();
        }
        match a.last() {
            None => return usage("zero operator"),
            Some(p) if p.is_zero() => return usage("leading coefficient lies in the radical part"),
            _ => {}
        }
        let mut op = DiffOperator { a, b, radicand, var: 'x' };
        op.normalize();
        Ok(op)
    }

    /// Clears the denominators of rational-function coefficients.
    pub fn from_fractions(a: &[RatFunc<K>]) -> Result<Self> {
        Self::from_fractions_radical(a, &[], None)
    }

    pub fn from_fractions_radical(a: &[RatFunc<K>], b: &[RatFunc<K>], radicand: Option<Poly<K>>) -> Result<Self> {
        let mut l = Poly::one();
        for f in a.iter().chain(b.iter()) {
            if !f.is_zero() {
                l = l.lcm(f.den());
            }
        }
        let clear = |f: &RatFunc<K>| -> Poly<K> {
            if f.is_zero() {
                Poly::zero()
            } else {
                f.num().mul(&l.divrem(f.den()).0)
            }
        };
        Self::with_radical(a.iter().map(clear).collect(), b.iter().map(clear).collect(), radicand)
    }

    fn normalize(&mut self) {
        if !K::EXACT {
            return;
        }
        let mut g = Poly::zero();
        for p in self.a.iter().chain(self.b.iter()) {
            if !p.is_zero() {
                g = if g.is_zero() { p.monic() } else { g.gcd(p) };
            }
        }
        if g.deg() > 0 {
            for p in self.a.iter_mut().chain(self.b.iter_mut()) {
                *p = p.divrem(&g).0;
            }
        }
        let s = self.a.last().unwrap().lead().inv();
        for p in self.a.iter_mut().chain(self.b.iter_mut()) {
            *p = p.scale(&s);
        }
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }
    pub fn var(&self) -> char {
        self.var
    }
    pub fn order(&self) -> usize {
        self.a.len() - 1
    }
    pub fn coeffs(&self) -> &[Poly<K>] {
        &self.a
    }
    pub fn coeff(&self, i: usize) -> Poly<K> {
        self.a.get(i).cloned().unwrap_or_else(Poly::zero)
    }
    pub fn radical_coeff(&self, i: usize) -> Poly<K> {
        self.b.get(i).cloned().unwrap_or_else(Poly::zero)
    }
    pub fn radicand(&self) -> Option<&Poly<K>> {
        self.radicand.as_ref()
    }
    pub fn has_radical(&self) -> bool {
        self.radicand.is_some()
    }
    pub fn leading(&self) -> &Poly<K> {
        self.a.last().unwrap()
    }

    pub fn map_coeffs<K2: Scalar>(&self, f: impl Fn(&K) -> K2) -> Result<DiffOperator<K2>> {
        let m = |v: &[Poly<K>]| v.iter().map(|p| p.map(&f)).collect::<Vec<_>>();
        Ok(DiffOperator::with_radical(m(&self.a), m(&self.b), self.radicand.as_ref().map(|r| r.map(&f)))?.with_var(self.var))
    }

    /// `a_i / a_m`.
    pub fn monic_fractions(&self) -> Vec<RatFunc<K>> {
        let lead = self.leading();
        self.a.iter().map(|p| RatFunc::new(p.clone(), lead.clone())).collect()
    }

    /// Equality after dividing by the leading coefficients.
    pub fn equal_up_to_factor(&self, o: &Self) -> bool {
        if self.order() != o.order() || self.radicand != o.radicand {
            return false;
        }
        let (l1, l2) = (self.leading(), o.leading());
        let cross = |x: &Poly<K>, y: &Poly<K>| x.mul(l2) == y.mul(l1);
        (0..=self.order()).all(|i| cross(&self.coeff(i), &o.coeff(i)) && cross(&self.radical_coeff(i), &o.radical_coeff(i)))
    }

    /// Coefficients as series in `X = x − x0`; `sqrt_series` supplies `s(x0 + X)`.
    pub fn localize(&self, x0: &K, sqrt_series: Option<&TruncatedSeries<K>>, order: usize) -> Result<LocalOperator<K>> {
        if self.has_radical() && sqrt_series.is_none() {
            return usage("operator carries a radical; a local series for it is required");
        }
        let mut coeffs = Vec::with_capacity(self.a.len());
        for i in 0..self.a.len() {
            let mut c = TruncatedSeries::from_poly(&self.a[i].taylor_shift(x0), order);
            if let Some(s) = sqrt_series {
                let b = self.radical_coeff(i);
                if !b.is_zero() {
                    if s.order() < order {
                        return usage("radical series is shorter than the requested order");
                    }
                    let bs = TruncatedSeries::from_poly(&b.taylor_shift(x0), order).mul(&s.truncate(order).with_var('x'));
                    c = c.add(&bs);
                }
            }
            coeffs.push(c);
        }
        Ok(LocalOperator { coeffs })
    }

    fn to_frac(&self) -> (Vec<RatFunc<K>>, Vec<RatFunc<K>>) {
        let f = |v: &[Poly<K>]| v.iter().map(|p| RatFunc::from_poly(p.clone())).collect();
        (f(&self.a), f(&self.b))
    }

    /// Replaces `s` by an explicit polynomial square root of the radicand.
    pub fn fold_radical(&self, root: &Poly<K>) -> Result<Self> {
        let r = match &self.radicand {
            None => return Ok(self.clone()),
            Some(r) => r,
        };
        if root.mul(root) != *r {
            return Err(Error::Domain("supplied root does not square to the radicand".into()));
        }
        let a = (0..self.a.len()).map(|i| self.a[i].add(&self.radical_coeff(i).mul(root))).collect();
        Ok(Self::new(a)?.with_var(self.var))
    }
}

impl<K: Scalar + ExactSqrt> DiffOperator<K> {
    /// Folds the radical when the radicand is a perfect square; `None` otherwise.
    pub fn rationalize_radical(&self) -> Option<Self> {
        match &self.radicand {
            None => Some(self.clone()),
            Some(r) => self.fold_radical(&r.exact_sqrt()?).ok(),
        }
    }
}

/// Operator with truncated-series coefficients in a local variable.
#[derive(Clone, Debug)]
pub struct LocalOperator<K: Scalar> {
    pub coeffs: Vec<TruncatedSeries<K>>,
}

/// `L = x^w Σ_k x^k Q_k(θ)`, `θ = x d/dx`.
#[derive(Clone, Debug)]
pub struct ThetaForm<K: Scalar> {
    pub shift: i64,
    pub q: Vec<Poly<K>>,
}

fn falling_factorial<K: Scalar>(i: usize) -> Poly<K> {
    let mut p = Poly::one();
    for j in 0..i {
        p = p.mul(&Poly::new(vec![K::from_i64(-(j as i64)), K::one()]));
    }
    p
}

impl<K: Scalar> LocalOperator<K> {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn series_order(&self) -> usize {
        self.coeffs.iter().map(|c| c.order()).min().unwrap_or(0)
    }

    /// θ-form; fails at irregular singular points.
    pub fn theta_form(&self) -> Result<ThetaForm<K>> {
        let m = self.order();
        let n = self.series_order() as i64;
        let mut w = i64::MAX;
        for (i, c) in self.coeffs.iter().enumerate() {
            if let Some(v) = c.valuation() {
                w = w.min(v as i64 - i as i64);
            }
        }
        let vm = self.coeffs[m].valuation();
        if w == i64::MAX || vm.is_none() {
            return usage("leading coefficient vanishes to the truncation order");
        }
        if vm.unwrap() as i64 - m as i64 != w {
            return Err(Error::Unsupported("irregular singular point".into()));
        }
        let kmax = n - w - m as i64;
        if kmax < 0 {
            return usage("truncation order too small for the θ-form");
        }
        let ff: Vec<Poly<K>> = (0..=m).map(falling_factorial).collect();
        let mut q = Vec::with_capacity(kmax as usize + 1);
        for k in 0..=kmax {
            let mut acc = Poly::zero();
            for (i, c) in self.coeffs.iter().enumerate() {
                let idx = k + w + i as i64;
                if idx >= 0 {
                    let a = c.coeff(idx as usize);
                    if !a.is_zero() {
                        acc = acc.add(&ff[i].scale(&a));
                    }
                }
            }
            q.push(acc);
        }
        Ok(ThetaForm { shift: w, q })
    }
}

impl<K: Scalar> ThetaForm<K> {
    pub fn indicial(&self) -> &Poly<K> {
        &self.q[0]
    }
    /// Coefficients of `x^{−w−e} L(x^e Σ f_n x^n)`, as many as both inputs allow.
    pub fn apply(&self, e: &K, f: &[K]) -> Vec<K> {
        let n = f.len().min(self.q.len());
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = K::zero();
            for k in 0..=j {
                let fj = &f[j - k];
                if fj.is_zero() || self.q[k].is_zero() {
                    continue;
                }
                let arg = e.add(&K::from_i64((j - k) as i64));
                acc.add_assign(&self.q[k].eval(&arg).mul(fj));
            }
            out.push(acc);
        }
        out
    }
}

/// `L(f)` for a series at the origin, normalized as `x^{−w} L(f)` with `w` the θ-shift.
pub fn operator_apply<K: Scalar>(l: &DiffOperator<K>, f: &TruncatedSeries<K>) -> Result<TruncatedSeries<K>> {
    operator_apply_with(l, None, f)
}

/// As [`operator_apply`], with a local series for the operator's radical.
pub fn operator_apply_with<K: Scalar>(
    l: &DiffOperator<K>,
    sqrt_series: Option<&TruncatedSeries<K>>,
    f: &TruncatedSeries<K>,
) -> Result<TruncatedSeries<K>> {
    if f.var() != l.var() {
        return usage(format!("series variable {} does not match operator variable {}", f.var(), l.var()));
    }
    let n = f.order();
    let m = l.order();
    if n <= m {
        return usage("truncation order must exceed the operator order");
    }
    if f.is_zero() {
        return Ok(f.clone());
    }
    let local = l.localize(&K::zero(), sqrt_series, n + 2 * m + 2)?;
    let tf = match local.theta_form() {
        Ok(tf) => tf,
        Err(Error::Unsupported(_)) => return apply_direct(l, &local, f),
        Err(e) => return Err(e),
    };
    let e = K::from_rational(&f.offset().as_rational());
    let out = tf.apply(&e, f.coeffs());
    Ok(TruncatedSeries::new(out, n).with_offset(f.offset()).with_var(f.var()))
}

fn apply_direct<K: Scalar>(l: &DiffOperator<K>, local: &LocalOperator<K>, f: &TruncatedSeries<K>) -> Result<TruncatedSeries<K>> {
    if f.offset() != Offset::Zero {
        return Err(Error::Unsupported("offset series at an irregular point".into()));
    }
    let n = f.order();
    let mut acc = TruncatedSeries::zero(n).with_var(f.var());
    let mut d = f.clone();
    for i in 0..=l.order() {
        let di = TruncatedSeries::new(d.coeffs().to_vec(), n).with_var(f.var());
        acc = acc.add(&local.coeffs[i].truncate(n).with_var(f.var()).mul(&di));
        d = d.derivative();
    }
    Ok(acc.truncate(n - l.order()))
}

/// Operator with `K(x)` coefficients, used for chain-rule manipulations.
type FracOp<K> = Vec<RatFunc<K>>;

/// `(p ∂ + q) ∘ E`.
fn left_compose<K: Scalar>(p: &RatFunc<K>, q: &RatFunc<K>, e: &FracOp<K>) -> FracOp<K> {
    let mut out: FracOp<K> = vec![RatFunc::zero(); e.len() + 1];
    for (k, c) in e.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = p.mul(&c.derivative()).add(&q.mul(c));
        out[k] = out[k].add(&t);
        out[k + 1] = out[k + 1].add(&p.mul(c));
    }
    out
}

fn combine<K: Scalar>(
    a: &[RatFunc<K>],
    b: &[RatFunc<K>],
    e: &[FracOp<K>],
    radicand: Option<Poly<K>>,
    var: char,
) -> Result<DiffOperator<K>> {
    let m = e.len() - 1;
    let mut na: FracOp<K> = vec![RatFunc::zero(); m + 1];
    let mut nb: FracOp<K> = vec![RatFunc::zero(); m + 1];
    for i in 0..=m {
        for (k, c) in e[i].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !a[i].is_zero() {
                na[k] = na[k].add(&a[i].mul(c));
            }
            if i < b.len() && !b[i].is_zero() {
                nb[k] = nb[k].add(&b[i].mul(c));
            }
        }
    }
    Ok(DiffOperator::from_fractions_radical(&na, &nb, radicand)?.with_var(var))
}

/// Operator annihilating `f ∘ φ` for every solution `f` of `L`.
pub fn operator_substitute<K: Scalar>(l: &DiffOperator<K>, map: &RatFunc<K>) -> Result<DiffOperator<K>> {
    let dphi = map.derivative();
    if dphi.is_zero() {
        return usage("substitution map is constant");
    }
    let psi = dphi.inv();
    let m = l.order();
    let mut e: Vec<FracOp<K>> = vec![vec![RatFunc::one()]];
    for i in 0..m {
        let next = left_compose(&psi, &RatFunc::zero(), &e[i]);
        e.push(next);
    }
    let (a, b) = l.to_frac();
    let a: Vec<RatFunc<K>> = a.iter().map(|f| RatFunc::compose_into(f.num(), map)).collect();
    let (b, radicand) = match l.radicand() {
        None => (Vec::new(), None),
        Some(r) => {
            let rc = RatFunc::compose_into(r, map);
            let dinv = RatFunc::from_poly(rc.den().clone()).inv();
            let b: Vec<RatFunc<K>> = b.iter().map(|f| RatFunc::compose_into(f.num(), map).mul(&dinv)).collect();
            (b, Some(rc.num().mul(rc.den())))
        }
    };
    combine(&a, &b, &e, radicand, l.var())
}

/// Operator whose solutions are `f / F` for solutions `f` of `L`, where
/// `F = Π p_k^{e_k}` is given by its factors.
pub fn gauge_transform<K: Scalar>(l: &DiffOperator<K>, factor: &[(Poly<K>, Rational)]) -> Result<DiffOperator<K>> {
    let mut g = RatFunc::zero();
    for (p, e) in factor {
        if p.is_zero() {
            return usage("zero factor in gauge transformation");
        }
        if p.deg() > 0 {
            let ld = RatFunc::new(p.derivative(), p.clone());
            g = g.add(&ld.mul(&RatFunc::from_poly(Poly::constant(K::from_rational(e)))));
        }
    }
    let m = l.order();
    let mut ops: Vec<FracOp<K>> = vec![vec![RatFunc::one()]];
    for i in 0..m {
        let next = left_compose(&RatFunc::one(), &g, &ops[i]);
        ops.push(next);
    }
    let (a, b) = l.to_frac();
    combine(&a, &b, &ops, l.radicand().cloned(), l.var())
}

/// Rewrites an operator in `y` whose coefficients have parity `(−1)^i` as an
/// operator in `Y = y²` acting on `g` with `f(y) = g(y²)`.
/// The radical part must be odd; its `y` factor moves into the radicand.
pub fn even_reduction<K: Scalar>(l: &DiffOperator<K>) -> Result<DiffOperator<K>> {
    let m = l.order();
    let two_y = Poly::new(vec![K::zero(), K::from_i64(2)]);
    // ∂_y^i = Σ_j e_ij(y) ∂_Y^j
    let mut e: Vec<Vec<Poly<K>>> = vec![vec![Poly::one()]];
    for i in 0..m {
        let prev = &e[i];
        let mut next = vec![Poly::zero(); prev.len() + 1];
        for (j, c) in prev.iter().enumerate() {
            next[j] = next[j].add(&c.derivative());
            next[j + 1] = next[j + 1].add(&c.mul(&two_y));
        }
        e.push(next);
    }
    let collect = |coeffs: &dyn Fn(usize) -> Poly<K>| -> Vec<Poly<K>> {
        let mut out = vec![Poly::zero(); m + 1];
        for i in 0..=m {
            let c = coeffs(i);
            if c.is_zero() {
                continue;
            }
            for (j, ej) in e[i].iter().enumerate() {
                out[j] = out[j].add(&c.mul(ej));
            }
        }
        out
    };
    let split = |p: &Poly<K>, parity: usize| -> Result<Poly<K>> {
        let mut c = Vec::new();
        for (k, a) in p.coeffs().iter().enumerate() {
            if k % 2 != parity {
                if !a.is_zero() {
                    return Err(Error::Unsupported("operator is not parity-symmetric".into()));
                }
                continue;
            }
            c.push(a.clone());
        }
        // for odd parity drop the leading y
        Ok(Poly::new(c))
    };
    let a = collect(&|i| l.coeff(i));
    // an odd operator becomes even after left multiplication by y
    let odd = a
        .iter()
        .find_map(|p| p.coeffs().iter().position(|c| !c.is_zero()))
        .is_some_and(|k| k % 2 == 1);
    let lift = |v: Vec<Poly<K>>| -> Vec<Poly<K>> {
        if odd {
            v.iter().map(|p| p.shift_up(1)).collect()
        } else {
            v
        }
    };
    let a = lift(a);
    let a: Vec<Poly<K>> = a.iter().map(|p| split(p, 0)).collect::<Result<_>>()?;
    match l.radicand() {
        None => Ok(DiffOperator::new(a)?.with_var(l.var())),
        Some(r) => {
            let b = lift(collect(&|i| l.radical_coeff(i)));
            let b: Vec<Poly<K>> = b.iter().map(|p| split(p, 1)).collect::<Result<_>>()?;
            let r = split(r, 0)?;
            let r = r.shift_up(1);
            Ok(DiffOperator::with_radical(a, b, Some(r))?.with_var(l.var()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{rat, UniPoly};

    fn qp(v: &[i64]) -> UniPoly {
        Poly::from_i64s(v)
    }

    #[test]
    fn sqrt_annihilated() {
        // 2x∂ − 1
        let l = DiffOperator::new(vec![qp(&[-1]), qp(&[0, 2])]).unwrap();
        let f = TruncatedSeries::one(6).with_offset(Offset::Half);
        assert!(operator_apply(&l, &f).unwrap().is_zero());
        let z = TruncatedSeries::<Rational>::zero(6);
        assert!(operator_apply(&l, &z).unwrap().is_zero());
    }

    #[test]
    fn exp_series_annihilated() {
        let l = DiffOperator::new(vec![qp(&[-1]), qp(&[1])]).unwrap();
        let mut c = vec![Rational::from(1)];
        for n in 1..12 {
            let prev = c[n - 1].clone();
            c.push(prev / Rational::from(n as i64));
        }
        let f = TruncatedSeries::new(c, 11);
        assert!(operator_apply(&l, &f).unwrap().is_zero());
    }

    #[test]
    fn order_too_small_is_usage_error() {
        let l = DiffOperator::new(vec![qp(&[0]), qp(&[0]), qp(&[1])]).unwrap();
        let f = TruncatedSeries::<Rational>::one(1);
        assert!(matches!(operator_apply(&l, &f), Err(Error::Usage(_))));
    }

    #[test]
    fn identity_substitution() {
        let l = DiffOperator::new(vec![qp(&[1, 2]), qp(&[0, 3, 1]), qp(&[0, 1, 0, 1])]).unwrap();
        let s = operator_substitute(&l, &RatFunc::var()).unwrap();
        assert_eq!(s, l);
        let c = RatFunc::from_poly(qp(&[3]));
        assert!(operator_substitute(&l, &c).is_err());
    }

    #[test]
    fn gauge_sqrt_gives_derivative() {
        let l = DiffOperator::new(vec![qp(&[-1]), qp(&[0, 2])]).unwrap();
        let g = gauge_transform(&l, &[(qp(&[0, 1]), rat(1, 2))]).unwrap();
        assert!(g.equal_up_to_factor(&DiffOperator::new(vec![qp(&[0]), qp(&[1])]).unwrap()));
        let same = gauge_transform(&l, &[]).unwrap();
        assert_eq!(same, l);
    }

    #[test]
    fn substitution_of_exp() {
        // f' = f, x ↦ 2x gives g' = 2g
        let l = DiffOperator::new(vec![qp(&[-1]), qp(&[1])]).unwrap();
        let s = operator_substitute(&l, &RatFunc::from_poly(qp(&[0, 2]))).unwrap();
        assert!(s.equal_up_to_factor(&DiffOperator::new(vec![qp(&[-2]), qp(&[1])]).unwrap()));
    }

    #[test]
    fn even_reduction_of_parity_operator() {
        // y f'' − f' is odd; in Y it becomes Y g''
        let l = DiffOperator::new(vec![qp(&[0]), qp(&[-1]), qp(&[0, 1])]).unwrap();
        let r = even_reduction(&l).unwrap();
        assert!(r.equal_up_to_factor(&DiffOperator::new(vec![qp(&[0]), qp(&[0]), qp(&[1])]).unwrap()));
    }

    #[test]
    fn radical_fold() {
        let l = DiffOperator::with_radical(vec![qp(&[1]), qp(&[1])], vec![qp(&[1])], Some(qp(&[1, 2, 1]))).unwrap();
        let f = l.rationalize_radical().unwrap();
        let expect = DiffOperator::new(vec![qp(&[2, 1]), qp(&[1])]).unwrap();
        let alt = DiffOperator::new(vec![qp(&[0, -1]), qp(&[1])]).unwrap();
        assert!(f.equal_up_to_factor(&expect) || f.equal_up_to_factor(&alt));
    }
}
