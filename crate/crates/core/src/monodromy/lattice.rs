use crate::exactcore::Matrix;
use rug::{Integer, Rational};

/// Saturated integer basis of `ker(A) ∩ ℤⁿ` for an integer matrix `A`.
pub fn integer_kernel(a: &Matrix<Integer>) -> Vec<Vec<Integer>> {
    let q: Matrix<Rational> = a.map(|x| Rational::from(x.clone()));
    let basis: Vec<Vec<Integer>> = q.kernel().into_iter().map(|v| primitive(&v)).collect();
    saturate(basis)
}

/// Clears denominators and removes the content.
fn primitive(v: &[Rational]) -> Vec<Integer> {
    let mut den = Integer::from(1);
    for x in v {
        den.lcm_mut(x.denom());
    }
    let ints: Vec<Integer> = v.iter().map(|x| Integer::from(x.numer() * Integer::from(&den / x.denom()))).collect();
    let mut g = Integer::new();
    for x in &ints {
        g.gcd_mut(x);
    }
    if g == 0 {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `gcd` of the maximal minors of the rows of `b`.
fn minor_gcd(b: &[Vec<Integer>]) -> Integer {
    let k = b.len();
    let n = b[0].len();
    let mut g = Integer::new();
    for cols in combinations(n, k) {
        let m = Matrix::from_rows(b.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect());
        g.gcd_mut(&m.det());
        if g == 1 {
            break;
        }
    }
    g
}

fn smallest_prime_factor(g: &Integer) -> Integer {
    let mut p = Integer::from(2);
    while Integer::from(&p * &p) <= *g {
        if g.is_divisible(&p) {
            return p;
        }
        p += 1;
    }
    g.clone()
}

/// Nonzero `c` with `Σ cᵢ bᵢ ≡ 0 (mod p)` and an index where `cᵢ = 1`.
fn relation_mod_p(b: &[Vec<Integer>], p: &Integer) -> Option<(Vec<Integer>, usize)> {
    let k = b.len();
    let n = b[0].len();
    let md = |x: Integer| -> Integer { x.modulo(p) };
    // columns of the n×k system Bᵀ c = 0
    let mut m: Vec<Vec<Integer>> = (0..n).map(|j| (0..k).map(|i| md(b[i][j].clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(pr) = (r..n).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].clone().invert(p).ok()?;
        for j in 0..k {
            m[r][j] = md(Integer::from(&m[r][j] * &inv));
        }
        for i in 0..n {
            if i != r && m[i][c] != 0 {
                let f = m[i][c].clone();
                for j in 0..k {
                    let t = Integer::from(&f * &m[r][j]);
                    m[i][j] = md(Integer::from(&m[i][j] - t));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..k).rev().find(|c| !pivots.contains(c))?;
    let mut c = vec![Integer::new(); k];
    c[free] = Integer::from(1);
    for (row, &pc) in pivots.iter().enumerate() {
        c[pc] = md(Integer::from(-&m[row][free]));
    }
    Some((c, free))
}

/// Enlarges a basis to `span_ℚ ∩ ℤⁿ`.
pub fn saturate(mut b: Vec<Vec<Integer>>) -> Vec<Vec<Integer>> {
    if b.is_empty() {
        return b;
    }
    loop {
        let g = minor_gcd(&b);
        if g == 1 || g == 0 {
            return b;
        }
        let p = smallest_prime_factor(&g);
        let Some((c, idx)) = relation_mod_p(&b, &p) else { return b };
        let n = b[0].len();
        let mut v = vec![Integer::new(); n];
        for (ci, row) in c.iter().zip(&b) {
            for j in 0..n {
                v[j] += Integer::from(ci * &row[j]);
            }
        }
        b[idx] = v.into_iter().map(|x| x / &p).collect();
    }
}

/// Antisymmetric `4×4` integer matrix from its six upper entries `(01, 02, 03, 12, 13, 23)`.
pub fn antisymmetric4(v: &[Integer]) -> Matrix<Integer> {
    let mut m = Matrix::zeros(4, 4);
    let mut k = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            m[(i, j)] = v[k].clone();
            m[(j, i)] = Integer::from(-&v[k]);
            k += 1;
        }
    }
    m
}

pub fn is_zero_matrix(m: &Matrix<Integer>) -> bool {
    m.entries().iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturation_divides_out_common_index() {
        let b = vec![vec![Integer::from(2), Integer::from(0)], vec![Integer::from(0), Integer::from(2)]];
        let s = saturate(b);
        assert_eq!(minor_gcd(&s), 1);
        let a = Matrix::from_i64_rows(&[&[1, 1, 0]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        assert_eq!(minor_gcd(&k), 1);
    }
}
