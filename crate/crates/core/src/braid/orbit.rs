use super::tuple::*;
use crate::error::{usage, Error, Result};
use crate::exactcore::{Quad, QuadModulus};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};

/// Regression sizes of the two finite orbits.
pub const ZETA8_ORBIT_SIZE: usize = 24;
pub const ZETA5_ORBIT_SIZE: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitStatus {
    Finite,
    Exceeded,
}

#[derive(Clone, Debug)]
pub struct OrbitReport<M: QuadModulus> {
    pub status: OrbitStatus,
    /// Orbit size when finite, states seen when the bound was hit.
    pub size: usize,
    pub elements: Vec<MatrixTuple<M>>,
    pub fingerprints: HashSet<TupleFingerprint<M>>,
    pub refined: bool,
    pub collisions_checked: usize,
    pub max_entry_bits: u32,
    pub depth: usize,
}

#[derive(Clone, Debug, Default)]
pub struct OrbitOptions {
    /// Shuffles each frontier with this seed.
    pub shuffle_seed: Option<u64>,
}

fn entry_bits<M: QuadModulus>(t: &MatrixTuple<M>) -> u32 {
    t.iter()
        .flat_map(|m| m.entries().iter())
        .flat_map(|q: &Quad<M>| [q.a.numer().significant_bits(), q.a.denom().significant_bits(), q.b.numer().significant_bits(), q.b.denom().significant_bits()])
        .max()
        .unwrap_or(0)
}

enum Outcome<M: QuadModulus> {
    Done(OrbitReport<M>),
    Collision,
}

fn enumerate<M: QuadModulus>(seed: &MatrixTuple<M>, bound: usize, refined: bool, opts: &OrbitOptions) -> Result<Outcome<M>> {
    let key = |t: &MatrixTuple<M>| if refined { fingerprint_refined(t) } else { fingerprint(t) };
    let product = tuple_product(seed);
    let mut rng = opts.shuffle_seed.map(ChaCha8Rng::seed_from_u64);
    let mut seen: HashMap<TupleFingerprint<M>, MatrixTuple<M>> = HashMap::new();
    let mut order: Vec<TupleFingerprint<M>> = Vec::new();
    let k0 = key(seed);
    seen.insert(k0.clone(), seed.clone());
    order.push(k0);
    let mut frontier = vec![seed.clone()];
    let mut collisions = 0usize;
    let mut depth = 0usize;
    let mut max_bits = entry_bits(seed);
    while !frontier.is_empty() {
        if let Some(r) = rng.as_mut() {
            frontier.shuffle(r);
        }
        let children: Vec<(MatrixTuple<M>, TupleFingerprint<M>)> = frontier
            .par_iter()
            .flat_map_iter(|t| BraidMove::ALL.iter().map(move |&mv| braid_move_unchecked(t, mv)))
            .map(|s| {
                let k = key(&s);
                (s, k)
            })
            .collect();
        let mut next = Vec::new();
        let mut to_confirm = Vec::new();
        for (s, k) in children {
            if tuple_product(&s) != product {
                return Err(Error::Mismatch("a braid move changed the tuple product".into()));
            }
            match seen.get(&k) {
                Some(rep) => to_confirm.push((rep.clone(), s)),
                None => {
                    max_bits = max_bits.max(entry_bits(&s));
                    seen.insert(k.clone(), s.clone());
                    order.push(k);
                    next.push(s);
                    if seen.len() > bound {
                        return Ok(Outcome::Done(OrbitReport {
                            status: OrbitStatus::Exceeded,
                            size: seen.len(),
                            elements: Vec::new(),
                            fingerprints: seen.into_keys().collect(),
                            refined,
                            collisions_checked: collisions + to_confirm.len(),
                            max_entry_bits: max_bits,
                            depth: depth + 1,
                        }));
                    }
                }
            }
        }
        collisions += to_confirm.len();
        if !to_confirm.par_iter().all(|(a, b)| conjugator(a, b).is_some()) {
            return Ok(Outcome::Collision);
        }
        frontier = next;
        depth += 1;
    }
    let elements = order.iter().map(|k| seen[k].clone()).collect();
    Ok(Outcome::Done(OrbitReport {
        status: OrbitStatus::Finite,
        size: seen.len(),
        elements,
        fingerprints: seen.into_keys().collect(),
        refined,
        collisions_checked: collisions,
        max_entry_bits: max_bits,
        depth,
    }))
}

/// Orbit of `seed` under the three braid moves and their inverses, up to
/// simultaneous conjugation.
pub fn orbit_enumerate<M: QuadModulus>(seed: &MatrixTuple<M>, bound: usize) -> Result<OrbitReport<M>> {
    orbit_enumerate_with(seed, bound, &OrbitOptions::default())
}

pub fn orbit_enumerate_with<M: QuadModulus>(seed: &MatrixTuple<M>, bound: usize, opts: &OrbitOptions) -> Result<OrbitReport<M>> {
    if bound < 1 {
        return usage("orbit bound must be at least 1");
    }
    check_units(seed)?;
    match enumerate(seed, bound, false, opts)? {
        Outcome::Done(r) => Ok(r),
        Outcome::Collision => match enumerate(seed, bound, true, opts)? {
            Outcome::Done(r) => Ok(r),
            Outcome::Collision => Err(Error::Mismatch("fingerprint collision between non-conjugate tuples persists after refinement".into())),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Member,
    NotMember,
    Inconclusive,
}

pub fn membership_in_orbit_same<M: QuadModulus>(t: &MatrixTuple<M>, seed: &MatrixTuple<M>, bound: usize) -> Result<Membership> {
    check_units(t)?;
    let orbit = orbit_enumerate(seed, bound)?;
    let fp = if orbit.refined { fingerprint_refined(t) } else { fingerprint(t) };
    let found = match orbit.status {
        OrbitStatus::Finite => orbit.elements.iter().any(|e| (if orbit.refined { fingerprint_refined(e) } else { fingerprint(e) }) == fp && conjugator(e, t).is_some()),
        OrbitStatus::Exceeded => orbit.fingerprints.contains(&fp),
    };
    Ok(match (found, orbit.status) {
        (true, _) => Membership::Member,
        (false, OrbitStatus::Finite) => Membership::NotMember,
        (false, OrbitStatus::Exceeded) => Membership::Inconclusive,
    })
}

/// Membership across coefficient fields; different fields are never in one orbit.
pub fn membership_in_orbit(t: &AnyTuple, seed: &AnyTuple, bound: usize) -> Result<Membership> {
    match (t, seed) {
        (AnyTuple::Sqrt2(a), AnyTuple::Sqrt2(b)) => membership_in_orbit_same(a, b, bound),
        (AnyTuple::Golden(a), AnyTuple::Golden(b)) => membership_in_orbit_same(a, b, bound),
        (AnyTuple::Sqrt17(a), AnyTuple::Sqrt17(b)) => membership_in_orbit_same(a, b, bound),
        _ => {
            let exceeded = match seed {
                AnyTuple::Sqrt2(b) => orbit_enumerate(b, bound)?.status,
                AnyTuple::Golden(b) => orbit_enumerate(b, bound)?.status,
                AnyTuple::Sqrt17(b) => orbit_enumerate(b, bound)?.status,
            };
            Ok(if exceeded == OrbitStatus::Finite { Membership::NotMember } else { Membership::Inconclusive })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta8_orbit_is_finite() {
        let r = orbit_enumerate(&seed_zeta8(), 100_000).unwrap();
        assert_eq!(r.status, OrbitStatus::Finite);
        assert_eq!(r.size, ZETA8_ORBIT_SIZE);
    }

    #[test]
    fn zeta5_orbit_is_finite() {
        let r = orbit_enumerate(&seed_zeta5(), 100_000).unwrap();
        assert_eq!(r.status, OrbitStatus::Finite);
        assert_eq!(r.size, ZETA5_ORBIT_SIZE);
    }

    #[test]
    fn randomized_order_gives_same_set() {
        let a = orbit_enumerate_with(&seed_zeta8(), 1000, &OrbitOptions { shuffle_seed: Some(1) }).unwrap();
        let b = orbit_enumerate_with(&seed_zeta8(), 1000, &OrbitOptions { shuffle_seed: Some(2) }).unwrap();
        assert_eq!(a.fingerprints, b.fingerprints);
    }

    #[test]
    fn a_tuple_in_zeta8_orbit() {
        assert_eq!(membership_in_orbit(&AnyTuple::Sqrt2(a_tuple()), &AnyTuple::Sqrt2(seed_zeta8()), 1000).unwrap(), Membership::Member);
        assert_eq!(membership_in_orbit(&AnyTuple::Sqrt2(seed_zeta8()), &AnyTuple::Sqrt2(seed_zeta8()), 1000).unwrap(), Membership::Member);
        assert_ne!(membership_in_orbit(&AnyTuple::Sqrt17(seed_heun()), &AnyTuple::Sqrt2(seed_zeta8()), 1000).unwrap(), Membership::Member);
    }

    #[test]
    fn heun_exceeds_small_bound() {
        let r = orbit_enumerate(&seed_heun(), 500).unwrap();
        assert_eq!(r.status, OrbitStatus::Exceeded);
    }
}
