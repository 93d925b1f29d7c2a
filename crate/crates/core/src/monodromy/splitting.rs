use super::lattice::integer_kernel;
use super::symplectic::{monodromy_tuple, rm, Check, IntMatrix4};
use crate::exactcore::{Matrix, Quad, Ring, Sqrt2};
use rug::{Integer, Rational};

pub type Q2 = Quad<Sqrt2>;
pub type QuadraticMatrix2 = Matrix<Q2>;

/// Saturated integer basis of `{A : AMᵢ = MᵢA}`.
pub fn commutant(mats: &[IntMatrix4]) -> Vec<IntMatrix4> {
    let n = mats.first().map_or(4, |m| m.rows());
    let units: Vec<IntMatrix4> = (0..n * n)
        .map(|k| {
            let mut e = Matrix::zeros(n, n);
            e[(k / n, k % n)] = Integer::from(1);
            e
        })
        .collect();
    let mut rows: Vec<Vec<Integer>> = Vec::new();
    for m in mats {
        let images: Vec<IntMatrix4> = units.iter().map(|u| u.mul(m).sub(&m.mul(u))).collect();
        for i in 0..n {
            for j in 0..n {
                rows.push(images.iter().map(|x| x[(i, j)].clone()).collect());
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![Integer::new(); n * n]);
    }
    integer_kernel(&Matrix::from_rows(rows))
        .into_iter()
        .map(|v| Matrix::from_rows(v.chunks(n).map(|c| c.to_vec()).collect()))
        .collect()
}

fn q(a: (i64, i64), b: (i64, i64)) -> Q2 {
    Quad::new(Rational::from(a), Rational::from(b))
}

fn qi(a: i64, b: i64) -> Q2 {
    Quad::from_ints(a, b)
}

/// `Ã₁ … Ã₄`, entries `a + b√2`.
pub fn a_matrices() -> [QuadraticMatrix2; 4] {
    let m = |e: [Q2; 4]| {
        let [a, b, c, d] = e;
        Matrix::from_rows(vec![vec![a, b], vec![c, d]])
    };
    [
        m([qi(2, -1), q((1, 1), (-1, 2)), qi(-2, 1), qi(0, 1)]),
        m([qi(1, 0), qi(0, 0), qi(-2, 0), qi(1, 0)]),
        m([qi(0, -1), q((1, 1), (1, 2)), qi(-2, -1), qi(2, 1)]),
        m([qi(-1, 0), qi(-1, 0), qi(0, 0), qi(-1, 0)]),
    ]
}

/// Columns are eigenvectors of `RM` for `±√2`.
pub fn splitting_matrix() -> Matrix<Q2> {
    let h = q((0, 1), (1, 2));
    let z = qi(0, 0);
    let rows = vec![
        vec![z.clone(), h.clone(), z.clone(), h.neg()],
        vec![qi(0, 1), z.clone(), qi(0, -1), z.clone()],
        vec![z.clone(), qi(1, 0), z.clone(), qi(1, 0)],
        vec![qi(1, 0), z.clone(), qi(1, 0), z],
    ];
    Matrix::from_rows(rows)
}

pub fn conj_matrix(m: &QuadraticMatrix2) -> QuadraticMatrix2 {
    m.map(|x| x.conj())
}

fn lift(m: &IntMatrix4) -> Matrix<Q2> {
    m.map(|x| Quad::new(Rational::from(x.clone()), Rational::new()))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SplittingReport {
    pub checks: Vec<Check>,
    pub commutant_rank: usize,
}

impl SplittingReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Span of the columns `cols` of `p` is `M`-invariant.
fn span_invariant(m: &Matrix<Q2>, p: &Matrix<Q2>, cols: &[usize]) -> bool {
    let basis: Vec<Vec<Q2>> = cols.iter().map(|&c| p.col(c)).collect();
    cols.iter().all(|&c| {
        let img = m.mul_vec(&p.col(c));
        let mut a = Matrix::zeros(4, basis.len());
        for (j, b) in basis.iter().enumerate() {
            for i in 0..4 {
                a[(i, j)] = b[i].clone();
            }
        }
        a.solve(&img).is_some()
    })
}

pub fn verify_splitting() -> SplittingReport {
    let mut checks = Vec::new();
    let mut add = |name: String, holds: bool| checks.push(Check { name, holds });
    let ms = monodromy_tuple();
    let comm = commutant(&ms[..3]);
    let r = rm();
    add("End(ρ) has rank 2".into(), comm.len() == 2);
    let lattice_has = |x: &IntMatrix4| -> bool {
        let q: Matrix<Rational> = Matrix::from_rows(
            (0..16).map(|k| comm.iter().map(|b| Rational::from(b[(k / 4, k % 4)].clone())).collect()).collect(),
        );
        let rhs: Vec<Rational> = (0..16).map(|k| Rational::from(x[(k / 4, k % 4)].clone())).collect();
        q.solve(&rhs).is_some_and(|c| c.iter().all(|z| *z.denom() == 1))
    };
    add("End(ρ) = ℤ Id ⊕ ℤ RM".into(), comm.len() == 2 && lattice_has(&Matrix::identity(4)) && lattice_has(&r) && {
        let q: Matrix<Rational> =
            Matrix::from_rows((0..16).map(|k| vec![Rational::from(i32::from(k / 4 == k % 4)), Rational::from(r[(k / 4, k % 4)].clone())]).collect());
        comm.iter().all(|b| {
            let rhs: Vec<Rational> = (0..16).map(|k| Rational::from(b[(k / 4, k % 4)].clone())).collect();
            q.solve(&rhs).is_some_and(|c| c.iter().all(|z| *z.denom() == 1))
        })
    });
    add("RM² = 2 Id".into(), r.mul(&r) == Matrix::identity(4).scale(&Integer::from(2)));
    add("RM commutes with M4".into(), r.mul(&ms[3]) == ms[3].mul(&r));
    let p = splitting_matrix();
    let pinv = p.inverse();
    add("P invertible".into(), pinv.is_some());
    let Some(pinv) = pinv else { return SplittingReport { checks, commutant_rank: comm.len() } };
    let rq = lift(&r);
    for c in 0..4 {
        let lam = if c < 2 { qi(0, 1) } else { qi(0, -1) };
        let col = p.col(c);
        let img = rq.mul_vec(&col);
        add(format!("P column {} is a {}-eigenvector of RM", c + 1, if c < 2 { "√2" } else { "−√2" }), img == col.iter().map(|x| x.mul(&lam)).collect::<Vec<_>>());
    }
    let a = a_matrices();
    for (i, m) in ms.iter().enumerate() {
        let mq = lift(m);
        let b = pinv.mul(&mq).mul(&p);
        let off_zero = b.block(0, 2, 2, 2).is_zero() && b.block(2, 0, 2, 2).is_zero();
        add(format!("P⁻¹ M{} P block diagonal", i + 1), off_zero);
        add(format!("upper block of M{} is A{}", i + 1, i + 1), b.block(0, 0, 2, 2) == a[i]);
        add(format!("lower block of M{} is conj A{}", i + 1, i + 1), b.block(2, 2, 2, 2) == conj_matrix(&a[i]));
        add(format!("√2-span invariant under M{}", i + 1), span_invariant(&mq, &p, &[0, 1]));
        add(format!("−√2-span invariant under M{}", i + 1), span_invariant(&mq, &p, &[2, 3]));
    }
    let a4sq = a[3].mul(&a[3]);
    add("A4² = ((1,2),(0,1))".into(), a4sq == Matrix::from_rows(vec![vec![qi(1, 0), qi(2, 0)], vec![qi(0, 0), qi(1, 0)]]));
    SplittingReport { checks, commutant_rank: comm.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::symplectic::m2;

    #[test]
    fn splitting_holds() {
        let r = verify_splitting();
        let bad: Vec<_> = r.checks.iter().filter(|c| !c.holds).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn commutant_ranks() {
        assert_eq!(commutant(&[Matrix::identity(4)]).len(), 16);
        assert!(commutant(&[m2()]).len() > 2);
        let c = commutant(&monodromy_tuple()[..3]);
        assert_eq!(c.len(), 2);
        let conj = conj_matrix(&a_matrices()[0]);
        assert_eq!(conj_matrix(&conj), a_matrices()[0]);
    }
}
