//! Doubling the working precision never moves a value by more than the coarse error estimate.

use hyperleg_core::curves::{i_pm, teichmuller_locus_check};
use hyperleg_core::genfun::check_decoupling;
use hyperleg_core::holonomic::catalog::Sign;
use hyperleg_core::{HPComplex, Ring};
use rug::Rational;

fn r(a: i64, b: i64) -> Rational {
    Rational::from((a, b))
}

#[test]
fn period_integrals_are_self_consistent() {
    let (u, x) = (HPComplex::real(r(1, 3)), HPComplex::real(r(1, 5)));
    for sign in [Sign::Plus, Sign::Minus] {
        let lo = i_pm(&u, &x, sign, 0, 128).unwrap();
        let hi = i_pm(&u, &x, sign, 0, 256).unwrap();
        let moved = lo.value.sub(&hi.value).log2_abs();
        assert!(moved <= lo.error_log2.max(-120.0) + 1.0, "{sign:?}: moved 2^{moved}, estimate 2^{}", lo.error_log2);
    }
}

#[test]
fn decoupling_digits_are_stable() {
    let lo = check_decoupling(&r(1, 2), &r(1, 100), 120, 160).unwrap();
    let hi = check_decoupling(&r(1, 2), &r(1, 100), 120, 320).unwrap();
    assert_eq!(lo.rhs[..32], hi.rhs[..32]);
}

#[test]
fn teichmuller_integral_is_stable() {
    let lo = teichmuller_locus_check(&r(3, 1), 128).unwrap();
    let hi = teichmuller_locus_check(&r(3, 1), 256).unwrap();
    assert_eq!(lo.integral[..30], hi.integral[..30]);
}
