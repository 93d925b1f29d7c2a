use crate::error::{usage, Result};
use crate::exactcore::{Golden, Matrix, Quad, QuadModulus, Ring, Sqrt17, Sqrt2};
use rug::Rational;

/// Ordered 4-tuple of 2×2 matrices over `ℚ(α)`.
pub type MatrixTuple<M> = [Matrix<Quad<M>>; 4];

/// Traces of the fixed word set, a simultaneous-conjugation invariant.
pub type TupleFingerprint<M> = Vec<Quad<M>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BraidMove {
    B12,
    B23,
    B34,
    B12Inv,
    B23Inv,
    B34Inv,
}

impl BraidMove {
    pub const ALL: [BraidMove; 6] = [BraidMove::B12, BraidMove::B23, BraidMove::B34, BraidMove::B12Inv, BraidMove::B23Inv, BraidMove::B34Inv];

    pub fn inverse(self) -> Self {
        match self {
            BraidMove::B12 => BraidMove::B12Inv,
            BraidMove::B23 => BraidMove::B23Inv,
            BraidMove::B34 => BraidMove::B34Inv,
            BraidMove::B12Inv => BraidMove::B12,
            BraidMove::B23Inv => BraidMove::B23,
            BraidMove::B34Inv => BraidMove::B34,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "12" => BraidMove::B12,
            "23" => BraidMove::B23,
            "34" => BraidMove::B34,
            "12-" | "-12" => BraidMove::B12Inv,
            "23-" | "-23" => BraidMove::B23Inv,
            "34-" | "-34" => BraidMove::B34Inv,
            _ => return usage(format!("unknown braid move {s:?}")),
        })
    }
}

fn mat<M: QuadModulus>(e: [Quad<M>; 4]) -> Matrix<Quad<M>> {
    let [a, b, c, d] = e;
    Matrix::from_rows(vec![vec![a, b], vec![c, d]])
}

fn q<M: QuadModulus>(a: (i64, i64), b: (i64, i64)) -> Quad<M> {
    Quad::new(Rational::from(a), Rational::from(b))
}

fn qi<M: QuadModulus>(a: i64, b: i64) -> Quad<M> {
    Quad::from_ints(a, b)
}

/// Algebraic integer with algebraic-integer inverse.
pub fn is_unit<M: QuadModulus>(x: &Quad<M>) -> bool {
    if x.is_zero() {
        return false;
    }
    let n = x.norm();
    *x.trace().denom() == 1 && *n.denom() == 1 && (n == 1 || n == -1)
}

fn inv2<M: QuadModulus>(m: &Matrix<Quad<M>>) -> Matrix<Quad<M>> {
    m.inverse().expect("unit determinant")
}

pub fn check_units<M: QuadModulus>(t: &MatrixTuple<M>) -> Result<()> {
    for (i, m) in t.iter().enumerate() {
        if m.rows() != 2 || m.cols() != 2 {
            return usage(format!("matrix {} is not 2×2", i + 1));
        }
        if !is_unit(&m.det()) {
            return usage(format!("matrix {} has non-unit determinant {}", i + 1, m.det()));
        }
    }
    Ok(())
}

pub fn tuple_product<M: QuadModulus>(t: &MatrixTuple<M>) -> Matrix<Quad<M>> {
    t[0].mul(&t[1]).mul(&t[2]).mul(&t[3])
}

/// One braid move; `Braid₃₄` carries the sign flip on slots 3 and 4.
pub fn braid_move<M: QuadModulus>(t: &MatrixTuple<M>, mv: BraidMove) -> Result<MatrixTuple<M>> {
    check_units(t)?;
    Ok(braid_move_unchecked(t, mv))
}

pub(crate) fn braid_move_unchecked<M: QuadModulus>(t: &MatrixTuple<M>, mv: BraidMove) -> MatrixTuple<M> {
    let [a, b, c, d] = t.clone();
    let conj = |x: &Matrix<Quad<M>>, g: &Matrix<Quad<M>>| inv2(g).mul(x).mul(g);
    let conj_back = |x: &Matrix<Quad<M>>, g: &Matrix<Quad<M>>| g.mul(x).mul(&inv2(g));
    match mv {
        BraidMove::B12 => [b.clone(), conj(&a, &b), c, d],
        BraidMove::B12Inv => [conj_back(&b, &a), a, c, d],
        BraidMove::B23 => [a, c.clone(), conj(&b, &c), d],
        BraidMove::B23Inv => [a, conj_back(&c, &b), b, d],
        BraidMove::B34 => [a, b, d.neg(), conj(&c, &d).neg()],
        BraidMove::B34Inv => [a, b, conj_back(&d, &c).neg(), c.neg()],
    }
}

/// Traces of `M₁, M₂, M₃, M₁M₂, M₁M₃, M₂M₃, M₁M₂M₃`.
pub fn fingerprint<M: QuadModulus>(t: &MatrixTuple<M>) -> TupleFingerprint<M> {
    let [a, b, c, _] = t;
    let ab = a.mul(b);
    vec![a.trace(), b.trace(), c.trace(), ab.trace(), a.mul(c).trace(), b.mul(c).trace(), ab.mul(c).trace()]
}

/// Traces of every word of length `≤ 4` in `M₁, M₂, M₃`.
pub fn fingerprint_refined<M: QuadModulus>(t: &MatrixTuple<M>) -> TupleFingerprint<M> {
    let mut out = Vec::new();
    let mut layer = vec![Matrix::<Quad<M>>::identity(2)];
    for _ in 0..4 {
        layer = layer.iter().flat_map(|w| t[..3].iter().map(move |g| w.mul(g))).collect();
        out.extend(layer.iter().map(|m| m.trace()));
    }
    out
}

/// A conjugator `X` with `X·aᵢ = bᵢ·X`, invertible, if one exists.
pub fn conjugator<M: QuadModulus>(a: &MatrixTuple<M>, b: &MatrixTuple<M>) -> Option<Matrix<Quad<M>>> {
    // unknowns x00 x01 x10 x11
    let mut rows = Vec::new();
    for (ai, bi) in a.iter().zip(b) {
        for r in 0..2 {
            for c in 0..2 {
                let mut row = vec![Quad::<M>::zero(); 4];
                for k in 0..2 {
                    // (X a)_{rc} = Σ_k x_{rk} a_{kc};  (b X)_{rc} = Σ_k b_{rk} x_{kc}
                    row[2 * r + k].add_assign(&ai[(k, c)]);
                    row[2 * k + c].sub_assign(&bi[(r, k)]);
                }
                rows.push(row);
            }
        }
    }
    let ker = Matrix::from_rows(rows).kernel();
    let to_mat = |v: &[Quad<M>]| Matrix::from_rows(vec![v[..2].to_vec(), v[2..].to_vec()]);
    for v in &ker {
        let x = to_mat(v);
        if !x.det().is_zero() {
            return Some(x);
        }
    }
    if ker.len() >= 2 {
        for s in 1..=4i64 {
            let v: Vec<Quad<M>> = (0..4).map(|i| ker.iter().enumerate().fold(Quad::zero(), |acc, (k, w)| acc.add(&w[i].mul(&Quad::from_ints(s.pow(k as u32), 0))))).collect();
            let x = to_mat(&v);
            if !x.det().is_zero() {
                return Some(x);
            }
        }
    }
    None
}

/// Fingerprint equality confirmed by an exact conjugation solve.
pub fn tuple_equivalent_same<M: QuadModulus>(a: &MatrixTuple<M>, b: &MatrixTuple<M>) -> bool {
    fingerprint(a) == fingerprint(b) && conjugator(a, b).is_some()
}

/// A tuple tagged with its coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyTuple {
    Sqrt2(MatrixTuple<Sqrt2>),
    Golden(MatrixTuple<Golden>),
    Sqrt17(MatrixTuple<Sqrt17>),
}

impl AnyTuple {
    pub fn ring(&self) -> &'static str {
        match self {
            AnyTuple::Sqrt2(_) => Sqrt2::NAME,
            AnyTuple::Golden(_) => Golden::NAME,
            AnyTuple::Sqrt17(_) => Sqrt17::NAME,
        }
    }
}

pub fn tuple_equivalent(a: &AnyTuple, b: &AnyTuple) -> Result<bool> {
    match (a, b) {
        (AnyTuple::Sqrt2(x), AnyTuple::Sqrt2(y)) => Ok(tuple_equivalent_same(x, y)),
        (AnyTuple::Golden(x), AnyTuple::Golden(y)) => Ok(tuple_equivalent_same(x, y)),
        (AnyTuple::Sqrt17(x), AnyTuple::Sqrt17(y)) => Ok(tuple_equivalent_same(x, y)),
        _ => usage(format!("tuples over different rings: {} vs {}", a.ring(), b.ring())),
    }
}

/// `(1,1;0,1), (1,0;α−2,1), (1,0;−α−2,1), (1,−1;4,−3)`.
pub fn o8_pattern<M: QuadModulus>() -> MatrixTuple<M> {
    [
        mat([qi(1, 0), qi(1, 0), qi(0, 0), qi(1, 0)]),
        mat([qi(1, 0), qi(0, 0), qi(-2, 1), qi(1, 0)]),
        mat([qi(1, 0), qi(0, 0), qi(-2, -1), qi(1, 0)]),
        mat([qi(1, 0), qi(-1, 0), qi(4, 0), qi(-3, 0)]),
    ]
}

pub fn seed_zeta8() -> MatrixTuple<Sqrt2> {
    o8_pattern()
}

pub fn seed_zeta5() -> MatrixTuple<Golden> {
    o8_pattern()
}

/// Heun monodromy; the fourth matrix is the inverse product.
pub fn seed_heun() -> MatrixTuple<Sqrt17> {
    let h1 = mat([qi(1, 0), qi(1, 0), qi(0, 0), qi(1, 0)]);
    let h2 = mat([qi(1, 0), qi(0, 0), q((-7, 2), (-1, 2)), qi(1, 0)]);
    let h3 = mat([q((-3, 2), (-1, 2)), q((9, 8), (1, 8)), q((-13, 2), (-3, 2)), q((7, 2), (1, 2))]);
    let h4 = inv2(&h1.mul(&h2).mul(&h3));
    [h1, h2, h3, h4]
}

/// `A₁ … A₄` from the real-multiplication splitting.
pub fn a_tuple() -> MatrixTuple<Sqrt2> {
    crate::monodromy::a_matrices()
}

pub fn seed_by_name(name: &str) -> Result<AnyTuple> {
    Ok(match name {
        "zeta8" | "o8" => AnyTuple::Sqrt2(seed_zeta8()),
        "zeta5" => AnyTuple::Golden(seed_zeta5()),
        "heun" => AnyTuple::Sqrt17(seed_heun()),
        "a" | "a-tuple" => AnyTuple::Sqrt2(a_tuple()),
        _ => return usage(format!("unknown seed {name:?}; expected zeta8, zeta5, heun or a-tuple")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_have_unit_determinants() {
        check_units(&seed_zeta8()).unwrap();
        check_units(&seed_zeta5()).unwrap();
        check_units(&seed_heun()).unwrap();
        check_units(&a_tuple()).unwrap();
        assert!(tuple_product(&seed_heun()).is_identity());
        assert!(tuple_product(&a_tuple()).is_identity());
    }

    #[test]
    fn moves_invert_and_preserve_product() {
        let t = seed_zeta8();
        let p = tuple_product(&t);
        for mv in BraidMove::ALL {
            let s = braid_move(&t, mv).unwrap();
            assert_eq!(tuple_product(&s), p, "{mv:?}");
            assert_eq!(braid_move(&s, mv.inverse()).unwrap(), t, "{mv:?}");
        }
        let s = braid_move(&t, BraidMove::B12).unwrap();
        assert_ne!(fingerprint(&s), fingerprint(&t));
    }

    #[test]
    fn non_unit_determinant_rejected() {
        let mut t = seed_zeta8();
        t[0] = t[0].scale(&Quad::from_ints(2, 0));
        assert!(braid_move(&t, BraidMove::B12).is_err());
    }

    #[test]
    fn conjugate_tuples_are_equivalent() {
        let t = seed_zeta8();
        let g = mat([qi(2, 1), qi(1, 0), qi(1, 1), qi(1, 1)]);
        let gi = inv2(&g);
        let s: MatrixTuple<Sqrt2> = t.clone().map(|m| gi.mul(&m).mul(&g));
        assert!(tuple_equivalent(&AnyTuple::Sqrt2(t.clone()), &AnyTuple::Sqrt2(s)).unwrap());
        let b = braid_move(&t, BraidMove::B12).unwrap();
        assert!(!tuple_equivalent(&AnyTuple::Sqrt2(t), &AnyTuple::Sqrt2(b)).unwrap());
        assert!(tuple_equivalent(&AnyTuple::Sqrt2(seed_zeta8()), &AnyTuple::Golden(seed_zeta5())).is_err());
    }

    #[test]
    fn pure_braid_preserves_slot_classes() {
        let t = seed_zeta8();
        let s = braid_move(&braid_move(&t, BraidMove::B34).unwrap(), BraidMove::B34).unwrap();
        for i in 0..4 {
            assert_eq!(s[i].trace(), t[i].trace());
        }
    }
}
