use super::lattice::{antisymmetric4, integer_kernel, is_zero_matrix};
use crate::exactcore::Matrix;
use rug::{Integer, Rational};

pub type IntMatrix4 = Matrix<Integer>;
/// Coordinates in `(α₁, β₁, α₂, β₂)`.
pub type HomologyVector = [i64; 4];

fn m(rows: [[i64; 4]; 4]) -> IntMatrix4 {
    let r: Vec<&[i64]> = rows.iter().map(|r| &r[..]).collect();
    Matrix::from_i64_rows(&r)
}

/// The standard pairing: `α₁·β₁ = α₂·β₂ = 1`.
pub fn standard_j() -> IntMatrix4 {
    m([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
}

pub fn m1() -> IntMatrix4 {
    m([[0, -1, 1, 1], [2, 2, -1, -2], [2, 1, 0, -2], [-1, -1, 1, 2]])
}
pub fn m2() -> IntMatrix4 {
    m([[1, -1, 0, 0], [0, 1, 0, 0], [0, 0, 1, -2], [0, 0, 0, 1]])
}
pub fn m3() -> IntMatrix4 {
    m([[2, -1, 1, -1], [2, 0, 1, -2], [2, -1, 2, -2], [1, -1, 1, 0]])
}
pub fn m4() -> IntMatrix4 {
    m([[-1, 0, 0, 0], [-2, -1, 0, 0], [0, 0, -1, 0], [0, 0, -1, -1]])
}
pub fn monodromy_tuple() -> [IntMatrix4; 4] {
    [m1(), m2(), m3(), m4()]
}

pub fn t_delta1_printed() -> IntMatrix4 {
    m([[1, 0, 0, 0], [1, 1, 0, -1], [1, 0, 1, -1], [0, 0, 0, 1]])
}
pub fn t_delta2_printed() -> IntMatrix4 {
    m([[0, -1, 1, 1], [1, 2, -1, -1], [1, 1, 0, -1], [-1, -1, 1, 2]])
}
pub fn t_delta3_printed() -> IntMatrix4 {
    m([[2, -1, 1, -1], [1, 0, 1, -1], [1, -1, 2, -1], [1, -1, 1, 0]])
}
pub fn t_alpha2_printed() -> IntMatrix4 {
    m([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1], [0, 0, 0, 1]])
}
/// The real-multiplication endomorphism.
pub fn rm() -> IntMatrix4 {
    m([[0, 0, 1, 0], [0, 0, 0, 2], [2, 0, 0, 0], [0, 1, 0, 0]])
}

pub const ALPHA1: HomologyVector = [1, 0, 0, 0];
pub const ALPHA2: HomologyVector = [0, 0, 1, 0];
pub const DELTA1: HomologyVector = [0, -1, -1, 0];
pub const DELTA2: HomologyVector = [-1, 1, 1, -1];
pub const DELTA3: HomologyVector = [1, 1, 1, 1];
pub const DELTA4: HomologyVector = [0, 1, 1, 0];

/// `γ·γ' = γᵀ J γ'`.
pub fn pairing(a: &HomologyVector, b: &HomologyVector, j: &IntMatrix4) -> Integer {
    let mut s = Integer::new();
    for (i, ai) in a.iter().enumerate() {
        for (k, bk) in b.iter().enumerate() {
            s += Integer::from(&j[(i, k)] * (ai * bk));
        }
    }
    s
}

/// Matrix of `γ ↦ γ − (δ·γ)δ`, columns the images of the basis vectors.
pub fn symplectic_reflection(delta: &HomologyVector, j: &IntMatrix4) -> IntMatrix4 {
    let mut t = Matrix::identity(4);
    for c in 0..4 {
        let mut e = [0i64; 4];
        e[c] = 1;
        let p = pairing(delta, &e, j);
        for r in 0..4 {
            t[(r, c)] -= Integer::from(&p * delta[r]);
        }
    }
    t
}

/// Lattice of antisymmetric forms preserved by all inputs.
#[derive(Clone, Debug)]
pub struct InvariantForms {
    pub rank: usize,
    pub basis: Vec<IntMatrix4>,
}

impl InvariantForms {
    pub fn generator(&self) -> Option<&IntMatrix4> {
        (self.rank == 1).then(|| &self.basis[0])
    }
}

/// Solves `MᵀJM = J` over the six antisymmetric coordinates.
pub fn find_invariant_form(mats: &[IntMatrix4]) -> InvariantForms {
    let units: Vec<IntMatrix4> = (0..6)
        .map(|k| {
            let mut v = vec![Integer::new(); 6];
            v[k] = Integer::from(1);
            antisymmetric4(&v)
        })
        .collect();
    let mut rows: Vec<Vec<Integer>> = Vec::new();
    for mm in mats {
        let images: Vec<IntMatrix4> = units.iter().map(|u| mm.transpose().mul(u).mul(mm).sub(u)).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                rows.push(images.iter().map(|x| x[(i, j)].clone()).collect());
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![Integer::new(); 6]);
    }
    let basis: Vec<IntMatrix4> = integer_kernel(&Matrix::from_rows(rows)).iter().map(|v| antisymmetric4(v)).collect();
    // sign: α₁·β₁ positive where possible
    let basis = basis
        .into_iter()
        .map(|b| if b[(0, 1)] < 0 || (b[(0, 1)] == 0 && b.entries().iter().find(|x| **x != 0).is_some_and(|x| *x < 0)) { b.neg() } else { b })
        .collect::<Vec<_>>();
    InvariantForms { rank: basis.len(), basis }
}

/// One named identity and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PropositionReport {
    pub checks: Vec<Check>,
    pub traces: [i64; 4],
}

impl PropositionReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect()
    }
}

fn rank_q(a: &IntMatrix4) -> usize {
    a.map(|x| Rational::from(x.clone())).rank()
}

/// `(M − εI)² = 0` and `rank(M − εI) = 2`.
pub fn jordan_two_blocks(mm: &IntMatrix4, eps: i64) -> bool {
    let n = mm.sub(&Matrix::identity(4).scale(&Integer::from(eps)));
    is_zero_matrix(&n.mul(&n)) && rank_q(&n) == 2
}

fn commute(a: &IntMatrix4, b: &IntMatrix4) -> bool {
    a.mul(b) == b.mul(a)
}

pub fn verify_proposition_matrices() -> PropositionReport {
    let j = standard_j();
    let ms = monodromy_tuple();
    let mut checks = Vec::new();
    let mut add = |name: String, holds: bool| checks.push(Check { name, holds });
    for (i, mm) in ms.iter().enumerate() {
        add(format!("M{}ᵀ J M{} = J", i + 1, i + 1), mm.transpose().mul(&j).mul(mm) == j);
    }
    add("M1 M2 M3 M4 = Id".into(), ms[0].mul(&ms[1]).mul(&ms[2]).mul(&ms[3]).is_identity());
    let td = [DELTA1, DELTA2, DELTA3, DELTA4].map(|d| symplectic_reflection(&d, &j));
    add("T_δ1 as printed".into(), td[0] == t_delta1_printed());
    add("T_δ2 as printed".into(), td[1] == t_delta2_printed());
    add("T_δ3 as printed".into(), td[2] == t_delta3_printed());
    add("T_δ4 = T_δ1".into(), td[3] == td[0]);
    add("T_δ1 T_δ2 = M1".into(), td[0].mul(&td[1]) == ms[0]);
    add("[T_δ1, T_δ2] = 0".into(), commute(&td[0], &td[1]));
    add("T_δ3 T_δ4 = M3".into(), td[2].mul(&td[3]) == ms[2]);
    add("[T_δ3, T_δ4] = 0".into(), commute(&td[2], &td[3]));
    let ta1 = symplectic_reflection(&ALPHA1, &j);
    let ta2 = symplectic_reflection(&ALPHA2, &j);
    add("T_α2 as printed".into(), ta2 == t_alpha2_printed());
    add("M2 = T_α1 T_α2²".into(), ta1.mul(&ta2).mul(&ta2) == ms[1]);
    for (i, mm) in ms.iter().enumerate() {
        let eps = if i < 3 { 1 } else { -1 };
        add(format!("M{} Jordan blocks at {eps}", i + 1), jordan_two_blocks(mm, eps));
    }
    for (k, g) in [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]].iter().enumerate() {
        let lhs = pairing(&DELTA1, g, &j);
        let rhs = -pairing(&[0, 1, 1, 0], g, &j);
        add(format!("δ1·e{} = −(β1+α2)·e{}", k + 1, k + 1), lhs == rhs);
    }
    let traces = ms.clone().map(|mm| mm.trace().to_i64().unwrap_or(i64::MAX));
    PropositionReport { checks, traces }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proposition_holds() {
        let r = verify_proposition_matrices();
        assert!(r.holds(), "{:?}", r.failures());
        assert_eq!(r.traces, [4, 4, 4, -4]);
    }

    #[test]
    fn invariant_forms() {
        // RM is self-adjoint for J, so J·RM is invariant too
        let f = find_invariant_form(&monodromy_tuple());
        assert_eq!(f.rank, 2);
        assert!(f.generator().is_none());
        assert!(f.basis.contains(&standard_j()));
        assert!(f.basis.contains(&standard_j().mul(&rm())));
        assert_eq!(find_invariant_form(&[m1(), m2(), m3(), m4(), m2().mul(&m3())]).rank, 2);
        assert_eq!(find_invariant_form(&[Matrix::identity(4)]).rank, 6);
        assert!(find_invariant_form(&[m2()]).rank > 1);
    }

    #[test]
    fn reflections() {
        let j = standard_j();
        assert!(symplectic_reflection(&[0, 0, 0, 0], &j).is_identity());
        let t = symplectic_reflection(&DELTA2, &j);
        assert_eq!(t.transpose().mul(&j).mul(&t), j);
    }
}
