use num_bigint::BigInt;
use ordtri::bounds::*;
use ordtri::real::Real;
use proptest::prelude::*;

const D: u32 = DEFAULT_DIGITS;

// Reference values from an independent 80-digit evaluation (mpmath).
const FINAL_7697: &str = "10.9999663405813933354751460539502276080429719185784840344371";
const FINAL_7696: &str = "11.0000113310330602824469771372750521059339190748091188450021";
const LIMIT: &str = "10.3484692283495342945918522241176741758978424419700103852981";
const REGIME_SQRT2: &str = "5.25841593492405731836014661246649371685959440935892098247747";
const FINAL_1E6: &str = "10.4025223199043651744109539325010664041146199246274463499778";
const FINAL_1E14: &str = "10.3484746055746736020815533252514989167656027333163290451384";
const CASE2_7697: &str = "10.9984923609833252568349194074601465670204255547243010029789";

fn real(s: &str) -> Real {
    parse_real(s, D).unwrap()
}

fn tol(exp: u32) -> Real {
    Real::from_ratio(1, BigInt::from(10).pow(exp), D + GUARD_DIGITS)
}

fn close(a: &Real, b: &Real, exp: u32) -> bool {
    a.sub(b).abs() < tol(exp)
}

#[test]
fn final_bound_reference_values() {
    assert!(close(&final_bound(7697, D).unwrap(), &real(FINAL_7697), 48));
    assert!(close(&final_bound(7696, D).unwrap(), &real(FINAL_7696), 48));
    assert!(close(&final_bound(1_000_000, D).unwrap(), &real(FINAL_1E6), 48));
    assert!(close(&limit_constant(D), &real(LIMIT), 48));
    assert_eq!(limit_constant(D).to_sig_string(10), "10.34846923");
}

#[test]
fn convergence_to_the_limit() {
    // 10⁻⁵ is out of reach at n = 10¹² (gap ≈ 5.4·10⁻⁵) and met by n = 10¹⁴
    let limit = limit_constant(D);
    let at_1e12 = final_bound(1_000_000_000_000, D).unwrap().sub(&limit);
    assert!(at_1e12 > tol(5) && at_1e12 < tol(4));
    let v = final_bound(100_000_000_000_000, D).unwrap();
    assert!(close(&v, &real(FINAL_1E14), 48));
    assert!(v.sub(&limit) < tol(5));
}

#[test]
fn regime_bound_reference_values() {
    let b = sqrt_int(2, D);
    assert!(close(&regime_bound(1_000_000, &b, D).unwrap(), &real(REGIME_SQRT2), 45));
    let lo = regime_bound(1_000_000, &b, D).unwrap();
    let mid = regime_bound(1_000_000, &real("2"), D).unwrap();
    let hi = regime_bound(1_000_000, &real("2.4"), D).unwrap();
    assert!(lo < mid && mid < hi);
    assert_eq!(mid.to_sig_string(12), "8.03408573904");
}

#[test]
fn case2_reference_value() {
    let n = 7697u64;
    let v = case2_bound(n, n.div_ceil(3), n * n / 6, D).unwrap();
    assert!(v.is_positive());
    assert!(close(&v, &real(CASE2_7697), 45));
}

#[test]
fn regime_meets_final_bound_at_sqrt6() {
    let n = 1_000_000;
    let at = regime_expression(n, &sqrt_int(6, D), D).unwrap();
    assert!(close(&at, &final_bound(n, D).unwrap(), 40));
    // just inside the interval: B = √6 − 10⁻²⁰
    let inside = sqrt_int(6, D).sub(&tol(20));
    let v = regime_bound(n, &inside, D).unwrap();
    assert!(close(&v, &final_bound(n, D).unwrap(), 15));
    assert!(v < final_bound(n, D).unwrap());
}

#[test]
fn threshold_for_eleven() {
    assert_eq!(threshold_n(11).unwrap(), 7697);
    assert!(final_bound_below(7697, 11));
    assert!(!final_bound_below(7696, 11));
    let report = threshold_report(11, D).unwrap();
    assert!(report.exact_confirmed);
    assert!(report.bound_at_threshold.starts_with("10.99996634058139333547514605395022760804297191857"));
}

#[test]
fn threshold_consistency_over_c() {
    let mut prev = u64::MAX;
    for c in 11..=100u64 {
        let t = threshold_n(c).unwrap();
        assert!(t <= prev, "threshold must not grow with c");
        prev = t;
        let cr = Real::from_int(c, D + GUARD_DIGITS);
        assert!(final_bound(t, D).unwrap() < cr, "c = {c}");
        if t - 1 > 27 {
            assert!(final_bound(t - 1, D).unwrap() >= cr, "c = {c}");
        }
        assert!(threshold_report(c, D).unwrap().exact_confirmed);
    }
    assert_eq!(threshold_n(10), Err(BoundError::Unreachable { c: 10 }));
}

proptest! {
    #[test]
    fn final_bound_decreasing(n in 28u64..10_000_000) {
        prop_assert!(final_bound(n + 1, 30).unwrap() < final_bound(n, 30).unwrap());
    }

    #[test]
    fn exact_predicate_matches_high_precision(n in 28u64..200_000, c in 1u64..40) {
        let cr = Real::from_int(c, 30 + GUARD_DIGITS);
        prop_assert_eq!(final_bound_below(n, c), final_bound(n, 30).unwrap() < cr);
    }

    #[test]
    fn regime_increasing_in_b(a in 0u32..1000, b in 0u32..1000, n in 100u64..10_000_000) {
        prop_assume!(a != b);
        let (a, b) = (a.min(b), a.max(b));
        // B = √2 + t(√6 − √2)·0.999, t = a/1000 or b/1000
        let s = D + GUARD_DIGITS;
        let lo = sqrt_int(2, D);
        let span = sqrt_int(6, D).sub(&lo).mul(&Real::from_ratio(999, 1000, s));
        let ba = lo.add(&span.mul(&Real::from_ratio(a, 1000, s)));
        let bb = lo.add(&span.mul(&Real::from_ratio(b, 1000, s)));
        match (regime_bound(n, &ba, D), regime_bound(n, &bb, D)) {
            (Ok(x), Ok(y)) => prop_assert!(x < y),
            (Err(BoundError::DegenerateDenominator(_)), _) | (_, Err(BoundError::DegenerateDenominator(_))) => {}
            (x, y) => prop_assert!(false, "{:?} {:?}", x, y),
        }
    }
}
