use chainvol::bounds::{self, ZeroCase};
use chainvol::classify::{self, ChainLinkId, ResidualRange, Verdict};
use chainvol::cusp::{self, BaseFamily, SlopeSpec};
use chainvol::numerics::{
    iv_basic, iv_pow_3_2, iv_sqrt, lobachevsky, lobachevsky_interval, pi_enclosure, BasicOp,
};
use chainvol::{Context, Execution, Interval};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use proptest::prelude::*;

const FAMILIES: [BaseFamily; 2] = [BaseFamily::MinTwistBase, BaseFamily::HalfTwistBase];

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// A point of `[lo, hi]` at rational position `k / 64`.
fn inner(lo: f64, hi: f64, k: u8) -> BigRational {
    let t = BigRational::new(BigInt::from(k), BigInt::from(64));
    exact(lo) + (exact(hi) - exact(lo)) * t
}

fn contains(iv: Interval, x: &BigRational) -> bool {
    exact(iv.lo()) <= *x && *x <= exact(iv.hi())
}

fn interval() -> impl Strategy<Value = (f64, f64)> {
    let endpoint = prop_oneof![
        -1e6..1e6f64,
        -1.0..1.0f64,
        (-1e-3..1e-3f64),
        (-40i32..40).prop_map(|k| k as f64 * 0.125),
    ];
    (endpoint.clone(), endpoint).prop_map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn arithmetic_contains_exact_results(
        (alo, ahi) in interval(),
        (blo, bhi) in interval(),
        ka in 0u8..=64,
        kb in 0u8..=64,
    ) {
        let a = Interval::new(alo, ahi);
        let b = Interval::new(blo, bhi);
        let x = inner(alo, ahi, ka);
        let y = inner(blo, bhi, kb);

        prop_assert!(contains(iv_basic(a, b, BasicOp::Add).unwrap(), &(&x + &y)));
        prop_assert!(contains(iv_basic(a, b, BasicOp::Sub).unwrap(), &(&x - &y)));
        prop_assert!(contains(iv_basic(a, b, BasicOp::Mul).unwrap(), &(&x * &y)));
        match iv_basic(a, b, BasicOp::Div) {
            Ok(q) => {
                prop_assert!(!b.contains(0.0));
                prop_assert!(contains(q, &(&x / &y)));
            }
            Err(_) => prop_assert!(b.contains(0.0)),
        }
    }

    #[test]
    fn roots_contain_exact_results((lo, hi) in interval(), k in 0u8..=64) {
        let (lo, hi) = (lo.abs().min(hi.abs()), lo.abs().max(hi.abs()));
        let a = Interval::new(lo, hi);
        let x = inner(lo, hi, k);

        // lo² ≤ x ≤ hi² certifies √x ∈ [lo, hi]; likewise with x³ for x^{3/2}.
        let s = iv_sqrt(a).unwrap();
        prop_assert!(s.lo() >= 0.0);
        prop_assert!(exact(s.lo()).pow(2) <= x && x <= exact(s.hi()).pow(2));

        let p = iv_pow_3_2(a).unwrap();
        prop_assert!(p.lo() >= 0.0);
        let cube = x.pow(3);
        prop_assert!(exact(p.lo()).pow(2) <= cube && cube <= exact(p.hi()).pow(2));
    }
}

#[test]
fn negative_radicands_are_rejected() {
    assert!(iv_sqrt(Interval::new(-1.0, 4.0)).is_err());
    assert!(iv_pow_3_2(Interval::new(-1e-300, 4.0)).is_err());
    assert!(iv_basic(Interval::ONE, Interval::new(-1.0, 1.0), BasicOp::Div).is_err());
}

fn lambda(theta: Interval, tol: f64) -> Interval {
    lobachevsky_interval(theta, tol, Execution::default())
        .unwrap()
        .value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lambda_is_odd(theta in -10.0..10.0f64) {
        let a = lobachevsky(theta, 1e-10).unwrap().value;
        let b = lobachevsky(-theta, 1e-10).unwrap().value;
        prop_assert!((a.mid() + b.mid()).abs() <= a.width() + b.width());
    }

    #[test]
    fn lambda_has_period_pi(theta in -10.0..10.0f64) {
        let t = Interval::point(theta);
        prop_assert!(lambda(t, 1e-10).overlaps(&lambda(t + pi_enclosure(), 1e-10)));
    }

    #[test]
    fn lambda_duplication(theta in 1e-3..(std::f64::consts::FRAC_PI_2 - 1e-3)) {
        let t = Interval::point(theta);
        let half_pi = pi_enclosure().scale(0.5);
        let lhs = lambda(t.scale(2.0), 1e-10);
        let rhs = (lambda(t, 1e-10) + lambda(t + half_pi, 1e-10)).scale(2.0);
        prop_assert!(lhs.overlaps(&rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn tighter_tolerance_stays_inside(theta in -4.0..4.0f64, e in 3i32..11) {
        let tol = 10f64.powi(-e);
        let loose = lobachevsky(theta, tol).unwrap();
        let tight = lobachevsky(theta, tol / 2.0).unwrap();
        prop_assert!(tight.value.overlaps(&loose.value));
        prop_assert!(loose.value.contains(tight.value.mid()));
        prop_assert!(tight.terms_used >= loose.terms_used);
    }

    #[test]
    fn fkp_bound_is_monotone_in_length(l1 in 6.3..1e6f64, grow in 0.0..1e3f64) {
        let v = Context::standard().octahedron_volume().scale(7.0);
        let l2 = l1 + grow;
        let a = bounds::fkp_lower_bound(v, Interval::point(l1));
        let b = bounds::fkp_lower_bound(v, Interval::point(l2));
        prop_assert!(a.applicable && b.applicable);
        prop_assert!(a.lower_bound.lo() <= b.lower_bound.hi());
        prop_assert!(b.lower_bound.hi() <= v.hi());
    }

    #[test]
    fn slope_walk_matches_closed_form(n in 5i64..=100_000, m in -10_000i64..=10_000, half in any::<bool>()) {
        let family = if half { BaseFamily::HalfTwistBase } else { BaseFamily::MinTwistBase };
        let s = SlopeSpec::new(n, m, family).unwrap();
        prop_assert_eq!(cusp::slope_walk(&s).squared_norm(), cusp::slope_length_squared(&s));
    }
}

#[test]
fn fkp_factor_tends_to_one() {
    let v8 = Context::standard().octahedron_volume();
    let b = bounds::fkp_lower_bound(v8, Interval::point(1e6));
    assert!((b.lower_bound.lo() - v8.lo()).abs() <= 1e-9);
    assert!((b.lower_bound.hi() - v8.hi()).abs() <= 1e-9);
}

#[test]
fn twisting_lengthens_slopes() {
    for n in 5..=200 {
        for family in FAMILIES {
            let sq = |m| cusp::slope_length_squared(&SlopeSpec::new(n, m, family).unwrap());
            for m in 0..50 {
                assert!(sq(m + 1) > sq(m), "n={n} m={m} {family:?}");
            }
            for m in -50..-1 {
                assert!(sq(m) > sq(m + 1), "n={n} m={m} {family:?}");
            }
            assert_eq!(
                cusp::slope_length_squared(&SlopeSpec::new(n, 0, BaseFamily::MinTwistBase).unwrap()),
                cusp::longitude_length_squared(n).unwrap()
            );
        }
    }
}

#[test]
fn comparison_sign_agrees_with_verdict() {
    let ctx = Context::standard();
    for n in 5..=120 {
        for r in -41..=41 {
            let (family, m) = bounds::split_half_twists(r);
            let Ok(f) = bounds::comparison_f_nm(n, m, family) else {
                continue;
            };
            let report = classify::classify_chain(ctx, ChainLinkId::new(n, r)).unwrap();
            if f.is_positive() {
                assert_eq!(report.verdict, Verdict::ExcludedByBound, "n={n} r={r}");
            } else if f.is_negative() {
                assert_ne!(report.verdict, Verdict::ExcludedByBound, "n={n} r={r}");
            }
        }
    }
}

#[test]
fn zero_windows_match_brute_force_signs() {
    for n in 5..=59 {
        for case in ZeroCase::ALL.into_iter().filter(|c| c.n_is_even() == (n % 2 == 0)) {
            let window = bounds::zero_window(n, case).unwrap();
            for m in -20..=20 {
                let inside = window.locate(m as f64).expect("no integer sits on a zero");
                let f = bounds::comparison_f_nm(n, m, case.family());
                if inside {
                    assert!(f.map_or(true, |v| v.is_negative()), "n={n} m={m} {case:?}");
                } else {
                    assert!(f.unwrap().is_positive(), "n={n} m={m} {case:?}");
                }
            }
        }
    }
}

#[test]
fn f_rises_then_falls() {
    for n in 7..=117 {
        let (a, b) = (bounds::comparison_f(n as f64).unwrap(), bounds::comparison_f((n + 1) as f64).unwrap());
        assert!(b.certainly_gt(&a), "f({}) <= f({n})", n + 1);
    }
    for n in 118..=1000 {
        let (a, b) = (bounds::comparison_f(n as f64).unwrap(), bounds::comparison_f((n + 1) as f64).unwrap());
        assert!(b.certainly_lt(&a), "f({}) >= f({n})", n + 1);
    }
}

#[test]
fn f_stays_positive_past_sixty() {
    for n in 60..=100_000 {
        assert!(bounds::comparison_f(n as f64).unwrap().is_positive(), "n={n}");
    }
}

#[test]
fn large_n_is_excluded_beyond_the_residual_list() {
    let ctx = Context::standard();
    let listed: std::collections::HashSet<(BaseFamily, i64, i64)> =
        classify::enumerate_residual(ResidualRange::Large)
            .into_iter()
            .map(|c| (c.base, c.n, c.m))
            .collect();
    for n in 11..=59 {
        for family in FAMILIES {
            for m in -20..=20 {
                if listed.contains(&(family, n, m)) || (family, m) == (BaseFamily::MinTwistBase, 0) {
                    continue;
                }
                let r = if family == BaseFamily::MinTwistBase { 2 * m } else { 2 * m + 1 };
                let report = classify::classify_chain(ctx, ChainLinkId::new(n, r)).unwrap();
                assert_eq!(report.verdict, Verdict::ExcludedByBound, "n={n} r={r}");
            }
        }
    }
}

#[test]
fn dedup_never_orphans_a_case() {
    for range in [ResidualRange::Large, ResidualRange::Small] {
        let cases = classify::enumerate_residual(range);
        for c in cases.iter().filter(|c| !c.canonical) {
            let (pf, pm) = classify::isometric_partner(c.n, c.base, c.m);
            let partner_listed = cases
                .iter()
                .any(|p| p.canonical && (p.base, p.n, p.m) == (pf, c.n, pm));
            let partner_is_untwisted = range == ResidualRange::Large
                && (pf, pm) == (BaseFamily::MinTwistBase, 0);
            assert!(partner_listed || partner_is_untwisted, "{c:?}");
            assert!((pf, pm) < (c.base, c.m));
        }
    }
}

#[test]
fn bounds_stay_below_tabulated_twisted_volumes() {
    let ctx = Context::standard();
    let refs = chainvol::reference::ReferenceSet::bundled();
    for row in refs.rows.iter().filter(|r| r.m.is_some()) {
        let b = bounds::chain_volume_lower_bound(ctx, row.n, row.half_twists().unwrap()).unwrap();
        if b.applicable {
            assert!(b.lower_bound.lo() < row.volume.value.lo(), "line {}", row.line);
        }
    }
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let seq = Context::new(1e-12).unwrap().with_execution(Execution::Sequential);
    let par = Context::new(1e-12).unwrap().with_execution(Execution::Parallel);
    assert_eq!(
        chainvol::report::table_rows(&seq, 5, 80).unwrap(),
        chainvol::report::table_rows(&par, 5, 80).unwrap()
    );
    let ids: Vec<ChainLinkId> = (5..40).flat_map(|n| (-9..9).map(move |r| ChainLinkId::new(n, r))).collect();
    assert_eq!(classify::classify_many(&seq, &ids), classify::classify_many(&par, &ids));
}

#[test]
fn rational_oracle_sanity() {
    // The oracle itself: exact conversion and midpoint placement.
    assert_eq!(exact(0.5), BigRational::new(BigInt::one(), BigInt::from(2)));
    assert_eq!(inner(1.0, 3.0, 32), BigRational::from_integer(BigInt::from(2)));
    assert!(exact(-0.0).is_zero() && exact(-1.0).is_negative());
}
