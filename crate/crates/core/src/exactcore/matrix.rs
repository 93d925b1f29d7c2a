use super::ring::{Field, Ring};
use std::fmt;

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    e: Vec<R>,
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:?}", self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> std::ops::Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.e[i * self.cols + j]
    }
}

impl<R: Ring> std::ops::IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.e[i * self.cols + j]
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, e: vec![R::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, e: rows.into_iter().flatten().collect() }
    }
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| R::from_i64(x)).collect()).collect())
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn row(&self, i: usize) -> Vec<R> {
        self.e[i * self.cols..(i + 1) * self.cols].to_vec()
    }
    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }
    pub fn entries(&self) -> &[R] {
        &self.e
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, e: self.e.iter().map(f).collect() }
    }
    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, e: self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, e: self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b)).collect() }
    }
    pub fn neg(&self) -> Self {
        self.map(|a| a.neg())
    }
    pub fn scale(&self, r: &R) -> Self {
        self.map(|a| a.mul(r))
    }
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    m.e[idx].add_mul(a, &o[(k, j)]);
                }
            }
        }
        m
    }
    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = R::zero();
                for j in 0..self.cols {
                    s.add_mul(&self[(i, j)], &v[j]);
                }
                s
            })
            .collect()
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    pub fn trace(&self) -> R {
        let mut s = R::zero();
        for i in 0..self.rows.min(self.cols) {
            s.add_assign(&self[(i, i)]);
        }
        s
    }
    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|a| a.is_zero())
    }
    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }
    /// Determinant by cofactor expansion along the first row (small sizes).
    pub fn det(&self) -> R {
        assert!(self.is_square());
        let n = self.rows;
        match n {
            0 => R::one(),
            1 => self[(0, 0)].clone(),
            2 => self[(0, 0)].mul(&self[(1, 1)]).sub(&self[(0, 1)].mul(&self[(1, 0)])),
            _ => {
                let mut s = R::zero();
                for j in 0..n {
                    if self[(0, j)].is_zero() {
                        continue;
                    }
                    let minor = self.minor(0, j);
                    let t = self[(0, j)].mul(&minor.det());
                    if j % 2 == 0 {
                        s.add_assign(&t);
                    } else {
                        s.sub_assign(&t);
                    }
                }
                s
            }
        }
    }
    fn minor(&self, r: usize, c: usize) -> Self {
        let mut rows = Vec::new();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            rows.push((0..self.cols).filter(|&j| j != c).map(|j| self[(i, j)].clone()).collect());
        }
        Self::from_rows(rows)
    }
    /// Adjugate, so that `A·adj(A) = det(A)·I` (small sizes).
    pub fn adjugate(&self) -> Self {
        let n = self.rows;
        let mut m = Self::zeros(n, n);
        if n == 1 {
            m[(0, 0)] = R::one();
            return m;
        }
        for i in 0..n {
            for j in 0..n {
                let d = self.minor(j, i).det();
                m[(i, j)] = if (i + j) % 2 == 0 { d } else { d.neg() };
            }
        }
        m
    }
    /// Inverse when the determinant is a unit of the ring.
    pub fn try_inverse(&self) -> Option<Self> {
        let d = self.det();
        let di = R::one().try_div(&d)?;
        Some(self.adjugate().scale(&di))
    }
    /// Block extraction.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        let mut m = Self::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }
}

/// Reduced row echelon data.
pub struct Echelon<K: Field> {
    pub rref: Matrix<K>,
    pub pivots: Vec<usize>,
}

impl<K: Field> Matrix<K> {
    /// Gauss–Jordan with largest-magnitude pivoting; `negligible` classifies zeros.
    pub fn echelon_with(&self, negligible: &dyn Fn(&K) -> bool) -> Echelon<K> {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let mut best = None;
            let mut best_mag = -1.0;
            for i in r..m {
                if negligible(&a[(i, c)]) {
                    continue;
                }
                let mag = a[(i, c)].magnitude();
                if mag > best_mag {
                    best_mag = mag;
                    best = Some(i);
                }
            }
            let Some(p) = best else {
                for i in r..m {
                    a[(i, c)] = K::zero();
                }
                continue;
            };
            for j in 0..n {
                a.e.swap(p * n + j, r * n + j);
            }
            let inv = a[(r, c)].inv();
            for j in c..n {
                a[(r, j)] = a[(r, j)].mul(&inv);
            }
            for i in 0..m {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..n {
                    let t = f.mul(&a[(r, j)]);
                    a[(i, j)].sub_assign(&t);
                }
                a[(i, c)] = K::zero();
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: a, pivots }
    }
    pub fn echelon(&self) -> Echelon<K> {
        self.echelon_with(&|x: &K| x.is_zero())
    }
    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }
    /// Basis of the right kernel.
    pub fn kernel_with(&self, negligible: &dyn Fn(&K) -> bool) -> Vec<Vec<K>> {
        let ech = self.echelon_with(negligible);
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
        let mut out = Vec::new();
        for &f in &free {
            let mut v = vec![K::zero(); n];
            v[f] = K::one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[p] = ech.rref[(r, f)].neg();
            }
            out.push(v);
        }
        out
    }
    pub fn kernel(&self) -> Vec<Vec<K>> {
        self.kernel_with(&|x: &K| x.is_zero())
    }
    /// Solves `A x = b`; `None` when inconsistent.
    pub fn solve_with(&self, b: &[K], negligible: &dyn Fn(&K) -> bool) -> Option<Vec<K>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let ech = aug.echelon_with(negligible);
        if ech.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![K::zero(); self.cols];
        for (r, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.rref[(r, self.cols)].clone();
        }
        Some(x)
    }
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        self.solve_with(b, &|x: &K| x.is_zero())
    }
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = K::one();
        }
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(ech.rref.block(0, n, n, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::{Integer, Rational};

    #[test]
    fn det_and_inverse() {
        let m: Matrix<Rational> = Matrix::from_i64_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), Rational::from(18));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.adjugate(), inv.scale(&Rational::from(18)));
    }

    #[test]
    fn kernel_dimension() {
        let m: Matrix<Rational> = Matrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn integer_unimodular_inverse() {
        let m: Matrix<Integer> = Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.try_inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let s: Matrix<Integer> = Matrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(s.try_inverse().is_none());
    }

    #[test]
    fn solve_consistency() {
        let m: Matrix<Rational> = Matrix::from_i64_rows(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[Rational::from(3), Rational::from(1)]).unwrap();
        assert_eq!(x, vec![Rational::from(2), Rational::from(1)]);
        let z: Matrix<Rational> = Matrix::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert!(z.solve(&[Rational::from(1), Rational::from(3)]).is_none());
    }
}
