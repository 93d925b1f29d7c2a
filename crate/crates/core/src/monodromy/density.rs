use super::splitting::{a_matrices, QuadraticMatrix2, Q2};
use crate::error::{Error, Result};
use crate::exactcore::{Field, Matrix, Quad, Ring};
use std::collections::HashMap;

/// Letter `(i, inverse)` standing for `Aᵢ` or `Aᵢ⁻¹`, `i` 1-based.
pub type Letter = (usize, bool);

pub fn word_string(w: &[Letter]) -> String {
    w.iter().map(|&(i, inv)| if inv { format!("A{i}⁻¹") } else { format!("A{i}") }).collect::<Vec<_>>().join(" ")
}

pub fn eval_word(gens: &[QuadraticMatrix2], w: &[Letter]) -> QuadraticMatrix2 {
    let mut m = Matrix::identity(2);
    for &(i, inv) in w {
        let g = &gens[i - 1];
        m = m.mul(&if inv { g.inverse().expect("unimodular generator") } else { g.clone() });
    }
    m
}

fn upper(b: Q2) -> QuadraticMatrix2 {
    Matrix::from_rows(vec![vec![Q2::one(), b], vec![Q2::zero(), Q2::one()]])
}

fn lower(c: Q2) -> QuadraticMatrix2 {
    Matrix::from_rows(vec![vec![Q2::one(), Q2::zero()], vec![c, Q2::one()]])
}

/// `((1, 2√2), (0, 1))`.
pub fn target_u() -> QuadraticMatrix2 {
    upper(Quad::from_ints(0, 2))
}

/// `((1, 0), (4√2, 1))`.
pub fn target_l() -> QuadraticMatrix2 {
    lower(Quad::from_ints(0, 4))
}

/// Words of length `≤ depth` reaching each target, by meet-in-the-middle over
/// balls of radius `⌈depth/2⌉`. Returned words are shortest.
pub fn find_words(gens: &[QuadraticMatrix2], targets: &[QuadraticMatrix2], depth: usize) -> Vec<Option<Vec<Letter>>> {
    let letters: Vec<(Letter, QuadraticMatrix2)> = (1..=gens.len())
        .flat_map(|i| [false, true].map(|inv| ((i, inv), eval_word(gens, &[(i, inv)]))))
        .collect();
    let mut seen: HashMap<QuadraticMatrix2, Vec<Letter>> = HashMap::new();
    seen.insert(Matrix::identity(2), Vec::new());
    let mut frontier = vec![Matrix::identity(2)];
    let mut found: Vec<Option<Vec<Letter>>> = vec![None; targets.len()];
    let half = depth.div_ceil(2);
    for r in 0..=half {
        if r > 0 {
            let mut next = Vec::new();
            for x in &frontier {
                let w = seen[x].clone();
                for (l, g) in &letters {
                    if w.last().is_some_and(|&(i, inv)| i == l.0 && inv != l.1) {
                        continue;
                    }
                    let y = x.mul(g);
                    if !seen.contains_key(&y) {
                        let mut wy = w.clone();
                        wy.push(*l);
                        seen.insert(y.clone(), wy);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        for (t, slot) in targets.iter().zip(found.iter_mut()) {
            for (x, wx) in &seen {
                let Some(xi) = x.inverse() else { continue };
                if let Some(wz) = seen.get(&xi.mul(t)) {
                    if wx.len() + wz.len() <= depth && slot.as_ref().is_none_or(|s| wx.len() + wz.len() < s.len()) {
                        *slot = Some(wx.iter().chain(wz).copied().collect());
                    }
                }
            }
        }
        if found.iter().all(|f| f.is_some()) && r * 2 >= found.iter().flatten().map(|w| w.len()).max().unwrap_or(0) {
            break;
        }
    }
    found
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DensityCertificate {
    pub depth: usize,
    pub u_word: String,
    pub l_word: String,
    pub u_length: usize,
    pub l_length: usize,
    /// Translation lengths `(2√2, 2)` of `u` and `A₄²`.
    pub upper_translations: [String; 2],
    /// Translation lengths `(4√2, −2)` of `l` and `A₂`.
    pub lower_translations: [String; 2],
    pub upper_ratio_irrational: bool,
    pub lower_ratio_irrational: bool,
}

impl DensityCertificate {
    pub fn holds(&self) -> bool {
        self.upper_ratio_irrational && self.lower_ratio_irrational
    }
}

fn is_upper_unipotent(m: &QuadraticMatrix2) -> bool {
    m[(0, 0)] == Q2::one() && m[(1, 1)] == Q2::one() && m[(1, 0)].is_zero()
}

fn is_lower_unipotent(m: &QuadraticMatrix2) -> bool {
    m[(0, 0)] == Q2::one() && m[(1, 1)] == Q2::one() && m[(0, 1)].is_zero()
}

/// Two translations generate a dense subgroup of `ℝ` iff their ratio is irrational.
fn ratio_irrational(a: &Q2, b: &Q2) -> bool {
    !a.is_zero() && !b.is_zero() && a.mul(&b.inv()).b.cmp0().is_ne()
}

pub fn density_certificate(depth: usize) -> Result<DensityCertificate> {
    if depth == 0 {
        return crate::error::usage("search depth must be at least 1");
    }
    let gens = a_matrices();
    let words = find_words(&gens, &[target_u(), target_l()], depth);
    let (Some(wu), Some(wl)) = (words[0].clone(), words[1].clone()) else {
        return Err(Error::DepthExceeded { depth });
    };
    let u = eval_word(&gens, &wu);
    let l = eval_word(&gens, &wl);
    let a4sq = gens[3].mul(&gens[3]);
    let a2 = &gens[1];
    if !(is_upper_unipotent(&u) && is_upper_unipotent(&a4sq) && is_lower_unipotent(&l) && is_lower_unipotent(a2)) {
        return Err(Error::Mismatch("translation witnesses are not unipotent".into()));
    }
    let (tu, t4) = (u[(0, 1)].clone(), a4sq[(0, 1)].clone());
    let (tl, t2) = (l[(1, 0)].clone(), a2[(1, 0)].clone());
    Ok(DensityCertificate {
        depth,
        u_length: wu.len(),
        l_length: wl.len(),
        u_word: word_string(&wu),
        l_word: word_string(&wl),
        upper_ratio_irrational: ratio_irrational(&tu, &t4),
        lower_ratio_irrational: ratio_irrational(&tl, &t2),
        upper_translations: [tu.to_string(), t4.to_string()],
        lower_translations: [tl.to_string(), t2.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_words_evaluate() {
        let g = a_matrices();
        let u = [(1, false), (2, false), (1, false), (2, true), (3, true), (4, false), (1, false), (4, true)];
        assert_eq!(eval_word(&g, &u), target_u());
        let l = [(1, false), (2, false), (2, false), (4, false), (1, true), (2, false), (2, false), (2, false)];
        assert_eq!(eval_word(&g, &l), target_l());
    }

    #[test]
    fn certificate_at_default_depth() {
        let c = density_certificate(12).unwrap();
        assert!(c.holds());
        assert!(c.u_length <= 8 && c.l_length <= 8);
        assert_eq!(c.upper_translations[1], "2");
        assert!(matches!(density_certificate(2), Err(Error::DepthExceeded { depth: 2 })));
    }
}
