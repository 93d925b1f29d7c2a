//! One PASS/FAIL line per acceptance criterion.

use hyperleg_core::braid::{orbit_enumerate, seed_heun, seed_zeta5, seed_zeta8, OrbitStatus, ZETA5_ORBIT_SIZE, ZETA8_ORBIT_SIZE};
use hyperleg_core::curves::*;
use hyperleg_core::genfun::*;
use hyperleg_core::holonomic::catalog::Sign;
use hyperleg_core::monodromy::{density_certificate, match_numeric_monodromy, verify_proposition_matrices, verify_splitting};
use rug::Rational;
use std::time::Instant;

fn r(a: i64, b: i64) -> Rational {
    Rational::from((a, b))
}

type Outcome = Result<String, String>;

fn pass_if(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1() -> Outcome {
    let rep = check_theorem_th1(200).map_err(|e| e.to_string())?;
    pass_if(rep.holds(), format!("n ≤ {}", rep.n_max))
}

fn c2() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for (y, z) in [(r(1, 2), r(1, 100)), (r(1, 5), r(1, 50))] {
        let rep = check_decoupling(&y, &z, 200, 512).map_err(|e| e.to_string())?;
        worst = worst.max(rep.difference_log2);
    }
    pass_if(worst < -80.0, format!("max log2 |LHS − RHS| = {worst:.1}"))
}

fn c3() -> Outcome {
    let wan = check_wan_identity(12).map_err(|e| e.to_string())?;
    let f4a = check_f4_identity(&r(1, 4), &r(3, 4), &r(1, 1), &r(1, 1), 6).map_err(|e| e.to_string())?;
    let f4b = check_f4_identity(&r(1, 2), &r(1, 2), &r(1, 1), &r(1, 1), 6).map_err(|e| e.to_string())?;
    pass_if(wan.holds() && f4a.holds() && f4b.holds(), format!("Wan through z^{}, F4 through total degree {}", wan.order, f4a.total_degree))
}

fn c4() -> Outcome {
    let rep = check_pde_system(6);
    pass_if(rep.holds(), format!("order {}", rep.order))
}

fn c5() -> Outcome {
    let rep = check_parametrization();
    pass_if(rep.holds(), format!("numerator zero: {}", rep.numerator_zero))
}

fn c6() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for (u, x) in [(r(1, 2), r(1, 10)), (r(1, 3), r(1, 5))] {
        for s in [Sign::Plus, Sign::Minus] {
            let rep = pf_annihilation(&u, &x, s, 256).map_err(|e| e.to_string())?;
            worst = worst.max(rep.residual_log2);
        }
    }
    pass_if(worst < -80.0, format!("max log2 residual = {worst:.1}"))
}

fn c7() -> Outcome {
    let base = build_fibre_rational(&r(1, 2), &r(1, 1), 256).map_err(|e| e.to_string())?;
    let mut ok = humbert8_test(&base).holds;
    let mut family = 0;
    for (u, x) in sample_family_parameters(2024, 20, 256) {
        let f = build_fibre_rational(&u, &x, 256).map_err(|e| format!("({u}, {x}): {e}"))?;
        if humbert8_test(&f).holds {
            family += 1;
        }
    }
    let mut off = 0;
    for c in sample_sextics(2025, 20) {
        if !humbert8_sextic(&c, 256).map_err(|e| e.to_string())?.holds {
            off += 1;
        }
    }
    ok &= family == 20 && off == 20;
    pass_if(ok, format!("base fibre + {family}/20 family fibres hold, {off}/20 off-family sextics fail"))
}

fn c8() -> Outcome {
    let rep = verify_proposition_matrices();
    pass_if(rep.holds(), format!("{} identities, failures {:?}", rep.checks.len(), rep.failures()))
}

fn c9() -> Outcome {
    let rep = verify_splitting();
    pass_if(rep.holds(), format!("{} checks, commutant rank {}", rep.checks.len(), rep.commutant_rank))
}

fn c10() -> Outcome {
    let rep = match_numeric_monodromy(&r(1, 2), 256).map_err(|e| e.to_string())?;
    pass_if(
        rep.holds(1e-10, -20.0),
        format!("{} words, max trace error {:.1e}, composite log10 {:.1}", rep.words_checked, rep.max_trace_error, rep.composite_log10),
    )
}

fn c11() -> Outcome {
    let cert = density_certificate(12).map_err(|e| e.to_string())?;
    pass_if(cert.holds(), format!("|u-word| = {}, |l-word| = {}", cert.u_length, cert.l_length))
}

fn c12() -> Outcome {
    let o8 = orbit_enumerate(&seed_zeta8(), 100_000).map_err(|e| e.to_string())?;
    let o5 = orbit_enumerate(&seed_zeta5(), 100_000).map_err(|e| e.to_string())?;
    let heun = orbit_enumerate(&seed_heun(), 10_000).map_err(|e| e.to_string())?;
    let ok = o8.status == OrbitStatus::Finite
        && o8.size == ZETA8_ORBIT_SIZE
        && o5.status == OrbitStatus::Finite
        && o5.size == ZETA5_ORBIT_SIZE
        && heun.status == OrbitStatus::Exceeded;
    pass_if(ok, format!("|O(ζ₈)| = {}, |O(ζ₅)| = {}, Heun {:?} at {}", o8.size, o5.size, heun.status, heun.size))
}

fn c13() -> Outcome {
    let rep = check_l5_remark(100, 40).map_err(|e| e.to_string())?;
    pass_if(rep.holds(), format!("n ≤ {}, series order {}", rep.recursion.n_max, rep.series_order))
}

fn c14() -> Outcome {
    let rep = teichmuller_locus_check(&r(3, 1), 256).map_err(|e| e.to_string())?;
    pass_if(
        rep.holds(-20.0),
        format!("ODE residual 1e{:.1}, 2F1 difference 1e{:.1}", rep.ode_residual_log10, rep.hyp2f1_log10_difference.unwrap_or(f64::NAN)),
    )
}

fn c15() -> Outcome {
    let a = check_cube_theorem(&r(1, 2), 12).map_err(|e| e.to_string())?;
    let b = check_cube_theorem(&r(1, 1), 12).map_err(|e| e.to_string())?;
    pass_if(a.holds() && b.holds(), format!("through z^{}", a.order))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("integrality of u_n for n ≤ 200", c1),
        ("generating function equals w·I₊·I₋ at two points", c2),
        ("squared-Legendre 2F1 and F4 product identities", c3),
        ("rank-4 PDE system residuals", c4),
        ("parametrization identity", c5),
        ("Picard–Fuchs operators annihilate I±", c6),
        ("Humbert Δ = 8 condition", c7),
        ("integral monodromy matrix identities", c8),
        ("real multiplication and splitting", c9),
        ("numeric monodromy matches exact tuple", c10),
        ("density certificate at depth 12", c11),
        ("braid orbit sizes", c12),
        ("L₅ recursion and local solution", c13),
        ("Teichmüller locus at t = 3", c14),
        ("cube theorem at y = 1/2 and y = 1", c15),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(d) => println!("PASS {:>2} {name}: {d} [{secs:.1} s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {d} [{secs:.1} s]", i + 1)
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
