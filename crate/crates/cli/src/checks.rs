use crate::config::CheckConfig;
use hyperleg_core::braid::{self, AnyTuple, OrbitReport, OrbitStatus};
use hyperleg_core::curves::*;
use hyperleg_core::exactcore::QuadModulus;
use hyperleg_core::genfun::*;
use hyperleg_core::holonomic::catalog::Sign;
use hyperleg_core::monodromy::{self, find_invariant_form, monodromy_tuple};
use hyperleg_core::rug::Rational;
use hyperleg_core::Error;
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub schema: u32,
    pub check: String,
    pub status: Status,
    pub details: Value,
    pub wall_time_ms: u128,
    pub config: CheckConfig,
}

/// A registered check with its parameters.
#[derive(Clone, Debug)]
pub enum Check {
    TheoremMain { points: Vec<(Rational, Rational)>, terms: usize },
    Th1 { n_max: usize },
    Wan,
    F4 { params: [Rational; 4], degree: u32 },
    Pde,
    Parametrization,
    HadamardIntegral { t: Rational, x: Rational },
    Humbert { fibres: Vec<(Rational, Rational)>, samples: usize },
    Periods { u: Rational, x: Rational },
    MonodromyExact,
    MonodromyNumeric { u: Rational },
    Density,
    BraidOrbit { seed: String },
    HeunGrowth { bound: Option<usize> },
    L5 { n_max: usize },
    Teich { t: Rational },
    Cube { ys: Vec<Rational> },
}

fn r(a: i64, b: i64) -> Rational {
    Rational::from((a, b))
}

impl Check {
    pub fn id(&self) -> &'static str {
        match self {
            Check::TheoremMain { .. } => "verify-theorem-main",
            Check::Th1 { .. } => "verify-th1",
            Check::Wan => "verify-wan",
            Check::F4 { .. } => "verify-f4",
            Check::Pde => "verify-pde",
            Check::Parametrization => "verify-parametrization",
            Check::HadamardIntegral { .. } => "verify-hadamard-integral",
            Check::Humbert { .. } => "verify-humbert",
            Check::Periods { .. } => "verify-periods",
            Check::MonodromyExact => "verify-monodromy-exact",
            Check::MonodromyNumeric { .. } => "verify-monodromy-numeric",
            Check::Density => "verify-density",
            Check::BraidOrbit { .. } => "braid-orbit",
            Check::HeunGrowth { .. } => "verify-heun-growth",
            Check::L5 { .. } => "verify-l5",
            Check::Teich { .. } => "verify-teich",
            Check::Cube { .. } => "verify-cube",
        }
    }

    /// Every check at its default parameters, in a fixed order.
    pub fn all() -> Vec<Check> {
        vec![
            Check::TheoremMain { points: vec![(r(1, 2), r(1, 100)), (r(1, 5), r(1, 50))], terms: 200 },
            Check::Th1 { n_max: 200 },
            Check::Wan,
            Check::F4 { params: [r(1, 4), r(3, 4), r(1, 1), r(1, 1)], degree: 6 },
            Check::Pde,
            Check::Parametrization,
            Check::HadamardIntegral { t: r(1, 3), x: r(1, 100) },
            Check::Humbert { fibres: vec![(r(1, 2), r(1, 1)), (r(1, 3), r(2, 5))], samples: 20 },
            Check::Periods { u: r(1, 2), x: r(1, 1) },
            Check::MonodromyExact,
            Check::MonodromyNumeric { u: r(1, 2) },
            Check::Density,
            Check::BraidOrbit { seed: "zeta8".into() },
            Check::BraidOrbit { seed: "zeta5".into() },
            Check::HeunGrowth { bound: None },
            Check::L5 { n_max: 100 },
            Check::Teich { t: r(3, 1) },
            Check::Cube { ys: vec![r(1, 2), r(1, 1)] },
        ]
    }

    pub fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let start = Instant::now();
        let (status, details) = match self.execute(cfg) {
            Ok(v) => v,
            Err(e) => (error_status(&e), json!({ "error": e.to_string() })),
        };
        CheckReport {
            schema: 1,
            check: self.id().to_string(),
            status,
            details: decimal_floats(details),
            wall_time_ms: start.elapsed().as_millis(),
            config: cfg.clone(),
        }
    }

    fn execute(&self, cfg: &CheckConfig) -> hyperleg_core::Result<(Status, Value)> {
        let prec = cfg.precision_bits;
        let tol = cfg.tolerance_log2();
        Ok(match self {
            Check::TheoremMain { points, terms } => {
                let reps = points.iter().map(|(y, z)| check_decoupling(y, z, *terms, prec)).collect::<hyperleg_core::Result<Vec<_>>>()?;
                let ok = reps.iter().all(|r| r.difference_log2 < tol);
                (Status::from_bool(ok), json!({ "tolerance_log2": tol, "points": to_json(&reps) }))
            }
            Check::Th1 { n_max } => {
                let rep = check_theorem_th1(*n_max)?;
                (Status::from_bool(rep.holds()), to_json(&rep))
            }
            Check::Wan => {
                let rep = check_wan_identity(cfg.order.unwrap_or(12))?;
                (Status::from_bool(rep.holds()), to_json(&rep))
            }
            Check::F4 { params: [a, b, c1, c2], degree } => {
                let rep = check_f4_identity(a, b, c1, c2, *degree)?;
                (Status::from_bool(rep.holds()), to_json(&rep))
            }
            Check::Pde => {
                let rep = check_pde_system(cfg.order.unwrap_or(6));
                (Status::from_bool(rep.holds()), to_json(&rep))
            }
            Check::Parametrization => {
                let rep = check_parametrization();
                let z = check_z(cfg.order.unwrap_or(24))?;
                (Status::from_bool(rep.holds() && z.holds()), json!({ "parametrization": to_json(&rep), "z_series": to_json(&z) }))
            }
            Check::HadamardIntegral { t, x } => {
                let rep = check_hadamard_integral(t, x, prec)?;
                let ok = rep.branches_real && (rep.difference == 0.0 || rep.difference.log2() < tol);
                (Status::from_bool(ok), to_json(&rep))
            }
            Check::Humbert { fibres, samples } => {
                let mut family = Vec::new();
                let mut all: Vec<(Rational, Rational)> = fibres.clone();
                all.extend(sample_family_parameters(cfg.seed, *samples, prec));
                for (u, x) in &all {
                    let f = build_fibre_rational(u, x, prec)?;
                    family.push(json!({ "u": u.to_string(), "x": x.to_string(), "result": to_json(&humbert8_test(&f)) }));
                }
                let mut off = Vec::new();
                for c in sample_sextics(cfg.seed.wrapping_add(1), *samples) {
                    let res = humbert8_sextic(&c, prec)?;
                    off.push(json!({ "coefficients": c.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "result": to_json(&res) }));
                }
                let ok = family.iter().all(|v| v["result"]["holds"] == true) && off.iter().all(|v| v["result"]["holds"] == false);
                (Status::from_bool(ok), json!({ "family": family, "off_family": off }))
            }
            Check::Periods { u, x } => {
                let f = build_fibre_rational(u, x, prec)?;
                let pm = period_matrix(&f)?;
                let tau = pm.triple();
                let rels = tau_relation_search(&tau, 12, prec / 2);
                let pf = [Sign::Plus, Sign::Minus]
                    .iter()
                    .flat_map(|&s| [(r(1, 2), r(1, 10)), (r(1, 3), r(1, 5))].into_iter().map(move |(uu, xx)| (s, uu, xx)))
                    .map(|(s, uu, xx)| pf_annihilation(&uu, &xx, s, prec))
                    .collect::<hyperleg_core::Result<Vec<_>>>()?;
                let ok = pm.symmetry_defect_log2() < tol
                    && pm.im_positive_definite()
                    && rels.iter().any(|r| r.discriminant == 8)
                    && pf.iter().all(|p| p.residual_log2 < tol);
                (
                    Status::from_bool(ok),
                    json!({
                        "tau": tau.iter().map(|t| t.to_decimal(30)).collect::<Vec<_>>(),
                        "symmetry_defect_log2": pm.symmetry_defect_log2(),
                        "im_positive_definite": pm.im_positive_definite(),
                        "quadrature_error_log2": pm.error_log2,
                        "relations": to_json(&rels),
                        "picard_fuchs": to_json(&pf),
                    }),
                )
            }
            Check::MonodromyExact => {
                let prop = monodromy::verify_proposition_matrices();
                let split = monodromy::verify_splitting();
                let forms = find_invariant_form(&monodromy_tuple());
                let ok = prop.holds() && split.holds();
                (
                    Status::from_bool(ok),
                    json!({
                        "proposition": to_json(&prop),
                        "splitting": to_json(&split),
                        "invariant_form_rank": forms.rank,
                    }),
                )
            }
            Check::MonodromyNumeric { u } => {
                let rep = monodromy::match_numeric_monodromy(u, prec)?;
                (Status::from_bool(rep.holds(1e-10, -20.0)), to_json(&rep))
            }
            Check::Density => {
                let cert = monodromy::density_certificate(cfg.search_depth)?;
                (Status::from_bool(cert.holds()), to_json(&cert))
            }
            Check::BraidOrbit { seed } => {
                let (status, details) = match braid::seed_by_name(seed)? {
                    AnyTuple::Sqrt2(t) => orbit_details(&braid::orbit_enumerate(&t, cfg.orbit_bound)?),
                    AnyTuple::Golden(t) => orbit_details(&braid::orbit_enumerate(&t, cfg.orbit_bound)?),
                    AnyTuple::Sqrt17(t) => orbit_details(&braid::orbit_enumerate(&t, cfg.orbit_bound)?),
                };
                let mut details = details;
                details["seed"] = json!(seed);
                if status == OrbitStatus::Finite && seed == "zeta8" {
                    let m = braid::membership_in_orbit(&AnyTuple::Sqrt2(braid::a_tuple()), &AnyTuple::Sqrt2(braid::seed_zeta8()), cfg.orbit_bound)?;
                    details["a_tuple_membership"] = json!(m);
                }
                (if status == OrbitStatus::Finite { Status::Pass } else { Status::Inconclusive }, details)
            }
            Check::HeunGrowth { bound } => {
                let b = bound.unwrap_or(10_000.min(cfg.orbit_bound));
                let rep = braid::orbit_enumerate(&braid::seed_heun(), b)?;
                let (status, details) = orbit_details(&rep);
                (Status::from_bool(status == OrbitStatus::Exceeded), details)
            }
            Check::L5 { n_max } => {
                let rep = check_l5_remark(*n_max, cfg.order.unwrap_or(40))?;
                (Status::from_bool(rep.holds()), to_json(&rep))
            }
            Check::Teich { t } => {
                let rep = teichmuller_locus_check(t, prec)?;
                let tol10 = tol * std::f64::consts::LOG10_2;
                (Status::from_bool(rep.holds(tol10.max(-20.0))), to_json(&rep))
            }
            Check::Cube { ys } => {
                let reps = ys.iter().map(|y| check_cube_theorem(y, cfg.order.unwrap_or(12))).collect::<hyperleg_core::Result<Vec<_>>>()?;
                let ok = reps.iter().all(|r| r.holds());
                (Status::from_bool(ok), json!({ "y": ys.iter().map(|y| y.to_string()).collect::<Vec<_>>(), "reports": to_json(&reps) }))
            }
        })
    }
}

fn orbit_details<M: QuadModulus>(rep: &OrbitReport<M>) -> (OrbitStatus, Value) {
    (
        rep.status,
        json!({
            "ring": M::NAME,
            "status": rep.status,
            "size": rep.size,
            "bfs_depth": rep.depth,
            "refined_fingerprint": rep.refined,
            "collisions_checked": rep.collisions_checked,
            "max_entry_bits": rep.max_entry_bits,
        }),
    )
}

fn error_status(e: &Error) -> Status {
    match e {
        Error::Accuracy { .. } | Error::DepthExceeded { .. } | Error::Precision(_) => Status::Inconclusive,
        _ => Status::Fail,
    }
}

/// Non-integral numbers become decimal strings.
pub fn decimal_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => Value::String(n.as_f64().map(|f| format!("{f:e}")).unwrap_or_default()),
        Value::Array(a) => Value::Array(a.into_iter().map(decimal_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, decimal_floats(v))).collect()),
        other => other,
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_become_strings() {
        let v = decimal_floats(json!({ "a": 1, "b": [0.5, -3], "c": { "d": 1e-80 } }));
        assert_eq!(v, json!({ "a": 1, "b": ["5e-1", -3], "c": { "d": "1e-80" } }));
    }

    #[test]
    fn ids_are_unique_and_cover_the_registry() {
        let mut ids: Vec<_> = Check::all().iter().map(|c| (c.id(), format!("{c:?}"))).collect();
        ids.dedup();
        assert_eq!(ids.len(), 18);
    }

    #[test]
    fn quick_checks_pass() {
        let cfg = CheckConfig::default();
        for c in [Check::Th1 { n_max: 20 }, Check::Wan, Check::Pde, Check::MonodromyExact, Check::Cube { ys: vec![r(1, 2)] }] {
            let rep = c.run(&cfg);
            assert_eq!(rep.status, Status::Pass, "{}", rep.details);
        }
    }

    #[test]
    fn errors_land_in_reports() {
        let rep = Check::BraidOrbit { seed: "nope".into() }.run(&CheckConfig::default());
        assert_eq!(rep.status, Status::Fail);
        assert!(rep.details["error"].as_str().unwrap().contains("unknown seed"));
        let cfg = CheckConfig { search_depth: 2, ..CheckConfig::default() };
        assert_eq!(Check::Density.run(&cfg).status, Status::Inconclusive);
    }
}
