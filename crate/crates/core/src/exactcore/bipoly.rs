use super::poly::Poly;
use super::ring::Ring;
use std::collections::BTreeMap;

/// Sparse bivariate polynomial `Σ c_ij a^i b^j`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct BiPoly<R: Ring> {
    terms: BTreeMap<(u32, u32), R>,
}

impl<R: Ring> Default for BiPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> BiPoly<R> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }
    pub fn constant(r: R) -> Self {
        Self::term(0, 0, r)
    }
    pub fn one() -> Self {
        Self::constant(R::one())
    }
    pub fn term(i: u32, j: u32, r: R) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert((i, j), r);
        }
        BiPoly { terms }
    }
    /// First variable.
    pub fn var_a() -> Self {
        Self::term(1, 0, R::one())
    }
    /// Second variable.
    pub fn var_b() -> Self {
        Self::term(0, 1, R::one())
    }
    /// From a univariate polynomial in the first variable.
    pub fn from_poly_a(p: &Poly<R>) -> Self {
        let mut out = Self::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as u32, 0, c.clone());
        }
        out
    }
    pub fn from_poly_b(p: &Poly<R>) -> Self {
        let mut out = Self::zero();
        for (j, c) in p.coeffs().iter().enumerate() {
            out.add_term(0, j as u32, c.clone());
        }
        out
    }
    pub fn from_i64_terms(v: &[(u32, u32, i64)]) -> Self {
        let mut out = Self::zero();
        for &(i, j, c) in v {
            out.add_term(i, j, R::from_i64(c));
        }
        out
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &R)> {
        self.terms.iter()
    }
    pub fn coeff(&self, i: u32, j: u32) -> R {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(R::zero)
    }
    pub fn add_term(&mut self, i: u32, j: u32, r: R) {
        if r.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(c) => {
                c.add_assign(&r);
                if c.is_zero() {
                    self.terms.remove(&(i, j));
                }
            }
            None => {
                self.terms.insert((i, j), r);
            }
        }
    }
    pub fn deg_a(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }
    pub fn deg_b(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c.neg());
        }
        out
    }
    pub fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }
    pub fn scale(&self, r: &R) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c.mul(r));
        }
        out
    }
    pub fn mul(&self, o: &Self) -> Self {
        let (da, db) = match (self.deg_a(), self.deg_b(), o.deg_a(), o.deg_b()) {
            (Some(a1), Some(b1), Some(a2), Some(b2)) => ((a1 + a2) as usize + 1, (b1 + b2) as usize + 1),
            _ => return Self::zero(),
        };
        // dense accumulation is faster for the moderately dense operands used here
        let mut acc = vec![R::zero(); da * db];
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                acc[(i1 + i2) as usize * db + (j1 + j2) as usize].add_mul(c1, c2);
            }
        }
        let mut terms = BTreeMap::new();
        for (k, c) in acc.into_iter().enumerate() {
            if !c.is_zero() {
                terms.insert(((k / db) as u32, (k % db) as u32), c);
            }
        }
        BiPoly { terms }
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    /// Partial derivative in the first variable.
    pub fn diff_a(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c.mul(&R::from_i64(i as i64)));
            }
        }
        out
    }
    pub fn diff_b(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c.mul(&R::from_i64(j as i64)));
            }
        }
        out
    }
    /// Specializes the first variable.
    pub fn eval_a(&self, a: &R) -> Poly<R> {
        let mut c: Vec<R> = vec![R::zero(); self.deg_b().map_or(0, |d| d as usize + 1)];
        for (&(i, j), v) in &self.terms {
            c[j as usize].add_assign(&v.mul(&a.powu(i)));
        }
        Poly::new(c)
    }
    pub fn eval_b(&self, b: &R) -> Poly<R> {
        let mut c: Vec<R> = vec![R::zero(); self.deg_a().map_or(0, |d| d as usize + 1)];
        for (&(i, j), v) in &self.terms {
            c[i as usize].add_assign(&v.mul(&b.powu(j)));
        }
        Poly::new(c)
    }
    pub fn eval(&self, a: &R, b: &R) -> R {
        self.eval_a(a).eval(b)
    }
    /// View as a polynomial in the second variable with coefficients in the first.
    pub fn as_poly_in_b(&self) -> Poly<Poly<R>> {
        let db = self.deg_b().map_or(0, |d| d as usize + 1);
        let mut cols: Vec<Vec<(u32, R)>> = vec![Vec::new(); db];
        for (&(i, j), c) in &self.terms {
            cols[j as usize].push((i, c.clone()));
        }
        Poly::new(
            cols.into_iter()
                .map(|col| {
                    let n = col.iter().map(|x| x.0 as usize + 1).max().unwrap_or(0);
                    let mut v = vec![R::zero(); n];
                    for (i, c) in col {
                        v[i as usize] = c;
                    }
                    Poly::new(v)
                })
                .collect(),
        )
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> BiPoly<S> {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, f(c));
        }
        out
    }
}

impl<R: Ring> Ring for BiPoly<R> {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn one() -> Self {
        BiPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        BiPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        BiPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        BiPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        BiPoly::neg(self)
    }
    fn from_i64(n: i64) -> Self {
        BiPoly::constant(R::from_i64(n))
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        // exact division through the nested univariate representation
        let a = self.as_poly_in_b();
        let b = o.as_poly_in_b();
        let q = a.try_div(&b)?;
        let mut out = BiPoly::zero();
        for (j, col) in q.coeffs().iter().enumerate() {
            for (i, c) in col.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, c.clone());
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Integer;

    type B = BiPoly<Integer>;

    #[test]
    fn no_stored_zeros() {
        let a = B::var_a().add(&B::var_b());
        let d = a.sub(&B::var_b());
        assert_eq!(d.len(), 1);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn binomial_square() {
        let s = B::var_a().add(&B::var_b());
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(1, 1), 2);
        assert_eq!(sq.coeff(2, 0), 1);
        assert_eq!(sq.len(), 3);
    }

    #[test]
    fn exact_division() {
        let s = B::var_a().add(&B::var_b());
        let d = B::var_a().sub(&B::var_b());
        let p = s.mul(&d);
        assert_eq!(Ring::try_div(&p, &d), Some(s.clone()));
        assert_eq!(Ring::try_div(&p.add(&B::one()), &d), None);
    }

    #[test]
    fn eval_and_diff() {
        // a^2 b + 3 b^2
        let p = B::from_i64_terms(&[(2, 1, 1), (0, 2, 3)]);
        assert_eq!(p.eval(&Integer::from(2), &Integer::from(5)), 20 + 75);
        assert_eq!(p.diff_a(), B::from_i64_terms(&[(1, 1, 2)]));
        assert_eq!(p.diff_b(), B::from_i64_terms(&[(2, 0, 1), (0, 1, 6)]));
    }
}
