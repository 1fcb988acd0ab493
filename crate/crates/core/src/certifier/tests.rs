use super::*;
use crate::exactmath::{parse_expression, rational, Polynomial};
use crate::sequences::Recurrence;

fn clf() -> Recurrence {
    Recurrence::catalan_larcombe_french()
}

fn fibonacci() -> Recurrence {
    Recurrence::new(
        Polynomial::one(),
        Polynomial::one(),
        Polynomial::one(),
        1,
        (integer(1), integer(1)),
    )
    .unwrap()
}

fn rf(text: &str) -> RationalFunction {
    parse_expression(text).unwrap()
}

fn clf_lower() -> RatioBound {
    RatioBound::new(rf("232*n / (15*(n + 2))"), Direction::Lower, 1).unwrap()
}

fn clf_upper() -> RatioBound {
    RatioBound::new(rf("16 - 16/n - 16/n^3"), Direction::Upper, 6).unwrap()
}

fn poly(coeffs: &[i64]) -> Polynomial {
    Polynomial::from_integers(coeffs)
}

#[test]
fn normalize_rewrites_the_recurrence() {
    let nr = normalize(&clf()).unwrap();
    assert_eq!(nr.valid_from(), 2);
    // a(n) = 8 (3n^2 - 3n + 1) / n^2, b(n) = -128 (n - 1)^2 / n^2.
    let n_sq = poly(&[0, 0, 1]);
    let a = RationalFunction::new(poly(&[8, -24, 24]), n_sq.clone()).unwrap();
    let b = RationalFunction::new(poly(&[-128, 256, -128]), n_sq).unwrap();
    assert_eq!(nr.a(), &a);
    assert_eq!(nr.b(), &b);
    // Shifting forward recovers the raw coefficient quotients.
    let rec = clf();
    let p2 = RationalFunction::from_polynomial(rec.p2().clone());
    assert_eq!(
        nr.a().shift(&integer(1)),
        RationalFunction::from_polynomial(rec.p1().clone())
            .checked_div(&p2)
            .unwrap()
    );
    assert_eq!(
        nr.b().shift(&integer(1)),
        RationalFunction::from_polynomial(rec.p0().clone())
            .checked_div(&p2)
            .unwrap()
    );
}

#[test]
fn normalize_rejects_vanishing_leading_coefficient() {
    let rec = Recurrence::new(
        poly(&[-4, 1]),
        poly(&[1]),
        poly(&[1]),
        1,
        (integer(1), integer(1)),
    )
    .unwrap();
    assert_eq!(
        normalize(&rec),
        Err(ExactMathError::PoleOnRay(4).into())
    );
}

#[test]
fn fibonacci_coefficients_all_vanish() {
    let nr = normalize(&fibonacci()).unwrap();
    let cx = chenxia_coefficients(&nr);
    for r in [&cx.c0, &cx.c1, &cx.c2, &cx.c3, &cx.delta] {
        assert!(r.is_zero());
    }
}

#[test]
fn clf_c3_matches_its_closed_form() {
    let cx = chenxia_coefficients(&normalize(&clf()).unwrap());
    let num = poly(&[9, 63, 177, 234, 112, -32, -27, 5, 3]).scale(&integer(-512));
    let den = &(&poly(&[1, 1]).pow(6) * &poly(&[2, 1]).pow(2)) * &poly(&[3, 1]).pow(2);
    assert_eq!(cx.c3, RationalFunction::new(num, den).unwrap());
    assert_eq!(cx.c3.eval_int(1).unwrap(), rational(-272, 9));
}

#[test]
fn clf_delta_margin_matches_its_closed_form() {
    let cx = chenxia_coefficients(&normalize(&clf()).unwrap());
    let delta = delta_margin(&cx.c2, &cx.c3, &clf_lower()).unwrap();
    let num = poly(&[
        -135, -798, -1500, 1293, 10550, 17632, 12157, 3556, 472, 129, 32,
    ])
    .scale(&rational(8192, 5));
    let den = &(&poly(&[1, 1]).pow(6) * &poly(&[2, 1]).pow(4)) * &poly(&[3, 1]).pow(2);
    assert_eq!(delta, RationalFunction::new(num, den).unwrap());
    assert_eq!(delta.eval_int(1).unwrap(), rational(347104, 405));
}

#[test]
fn clf_delta_squared_minus_discriminant_matches_its_closed_form() {
    let cx = chenxia_coefficients(&normalize(&clf()).unwrap());
    let delta = delta_margin(&cx.c2, &cx.c3, &clf_lower()).unwrap();
    let margin = &delta * &delta - &cx.delta;
    let num = (Polynomial::variable()
        * poly(&[
            -70470,
            -975888,
            -6269211,
            -24910146,
            -68012397,
            -131841558,
            -178037517,
            -153766236,
            -63005002,
            14486584,
            25505142,
            5191280,
            -3302168,
            -1256916,
            155517,
            97994,
            6983,
            2158,
            699,
        ]))
    .scale(&rational(67108864, 25));
    let den = &(&poly(&[1, 1]).pow(12) * &poly(&[2, 1]).pow(7)) * &poly(&[3, 1]).pow(4);
    assert_eq!(margin, RationalFunction::new(num, den).unwrap());
}

#[test]
fn clf_cubic_at_upper_bound_matches_its_closed_form() {
    let cx = chenxia_coefficients(&normalize(&clf()).unwrap());
    let cubic = cubic_at_bound(&cx, &clf_upper()).unwrap();
    let num = poly(&[
        72, 576, 2154, 4953, 7688, 7969, 4156, -2284, -7416, -8383, -5340, -1529, 644, 916, 378,
        54,
    ])
    .scale(&integer(1048576));
    let den = &(&Polynomial::monomial(integer(1), 9) * &poly(&[1, 1]).pow(6))
        * &(&poly(&[2, 1]).pow(4) * &poly(&[3, 1]).pow(2));
    assert_eq!(cubic, RationalFunction::new(num, den).unwrap());
}

#[test]
fn clf_ray_starts_match_direct_scans() {
    let cx = chenxia_coefficients(&normalize(&clf()).unwrap());
    let delta = delta_margin(&cx.c2, &cx.c3, &clf_lower()).unwrap();
    let margin = &delta * &delta - &cx.delta;
    let cubic = cubic_at_bound(&cx, &clf_upper()).unwrap();
    assert_eq!(smallest_ray_start(&cx.c3, 1, SignKind::Negative), Some(1));
    assert_eq!(smallest_ray_start(&delta, 1, SignKind::Nonnegative), Some(1));
    assert_eq!(smallest_ray_start(&margin, 1, SignKind::Nonnegative), Some(3));
    assert_eq!(smallest_ray_start(&cubic, 6, SignKind::Nonnegative), Some(6));
}

#[test]
fn clf_lower_bound_certificate() {
    let cert = certify_ratio_bound(&clf(), &clf_lower(), 12, &CertifyOptions::default()).unwrap();
    assert_eq!(cert.direction, Direction::Lower);
    assert_eq!(cert.b_sign, SignKind::Negative);
    assert_eq!(cert.step_from, 1);
    // Step gap: a(k+1) + b(k+1)/f(k) - f(k+1) = 8 (14k^3 + 447k^2 - 873k + 464)
    // over 435 (k+1)^2 (k+3).
    let num = poly(&[464, -873, 447, 14]).scale(&rational(8, 435));
    let den = &poly(&[1, 1]).pow(2) * &poly(&[3, 1]);
    assert_eq!(cert.step_gap, RationalFunction::new(num, den).unwrap());
    assert!(cert.step_verdict.kind.implies(SignKind::Positive));
    assert_eq!(cert.base_checks.len(), 12);
    assert!(cert.base_checks.iter().all(|c| c.strict));
    assert_eq!(cert.base_checks[0].ratio, integer(8));
    assert_eq!(cert.base_checks[0].bound, rational(232, 45));
}

#[test]
fn clf_upper_bound_certificate() {
    let cert = certify_ratio_bound(&clf(), &clf_upper(), 12, &CertifyOptions::default()).unwrap();
    assert_eq!(cert.direction, Direction::Upper);
    assert_eq!(cert.b_sign, SignKind::Negative);
    assert_eq!(cert.step_from, 2);
    // Step gap: g(k+1) - a(k+1) - b(k+1)/g(k) = 8 (5k^2 + 2k + 3) over
    // (k+1)^3 (k^3 - k^2 - 1).
    let num = poly(&[3, 2, 5]).scale(&integer(8));
    let den = &poly(&[1, 1]).pow(3) * &poly(&[-1, 0, -1, 1]);
    assert_eq!(cert.step_gap, RationalFunction::new(num, den).unwrap());
    assert_eq!(cert.base_checks.len(), 7);
    assert_eq!(cert.base_checks[0].index, 6);
    assert_eq!(cert.base_checks[0].ratio, rational(1823744, 137728));
    assert_eq!(cert.base_checks[0].bound, rational(358, 27));
}

#[test]
fn upper_bound_fails_before_six() {
    let early = RatioBound::new(rf("16 - 16/n - 16/n^3"), Direction::Upper, 5).unwrap();
    let err = certify_ratio_bound(&clf(), &early, 12, &CertifyOptions::default()).unwrap_err();
    assert_eq!(
        err,
        CertifierError::BaseCaseFails {
            index: 5,
            ratio: Box::new(rational(2152, 169)),
            bound: Box::new(rational(1584, 125)),
        }
    );
}

#[test]
fn constant_lower_bound_fails_at_the_first_ratio() {
    let bound = RatioBound::new(rf("16"), Direction::Lower, 1).unwrap();
    let err = certify_ratio_bound(&clf(), &bound, 12, &CertifyOptions::default()).unwrap_err();
    assert_eq!(
        err,
        CertifierError::BaseCaseFails {
            index: 1,
            ratio: Box::new(integer(8)),
            bound: Box::new(integer(16)),
        }
    );
}

#[test]
fn upper_bound_needs_nonpositive_b() {
    let bound = RatioBound::new(rf("2"), Direction::Upper, 1).unwrap();
    let err = certify_ratio_bound(&fibonacci(), &bound, 12, &CertifyOptions::default())
        .unwrap_err();
    assert!(matches!(
        err,
        CertifierError::WrongCoefficientSign {
            direction: Direction::Upper,
            ..
        }
    ));
}

#[test]
fn fibonacci_lower_bound_certificate() {
    let bound = RatioBound::new(rf("1/2"), Direction::Lower, 1).unwrap();
    let cert =
        certify_ratio_bound(&fibonacci(), &bound, 12, &CertifyOptions::default()).unwrap();
    assert_eq!(cert.b_sign, SignKind::Positive);
    // With b >= 0 the step gap drops the b term: a(k+1) - f(k+1) = 1/2.
    assert_eq!(cert.step_gap, RationalFunction::constant(rational(1, 2)));
    assert_eq!(cert.step_from, 1);
}

#[test]
fn nonpositive_bound_is_rejected_up_front() {
    let err = RatioBound::new(rf("n - 5"), Direction::Lower, 1).unwrap_err();
    assert_eq!(
        err,
        CertifierError::BoundNotPositive {
            from: 1,
            kind: SignKind::Mixed,
        }
    );
}

#[test]
fn certify_clf_end_to_end() {
    let cert = certify_two_log_convex(
        &clf(),
        &clf_lower(),
        &clf_upper(),
        16,
        &CertifyOptions::default(),
    )
    .unwrap();
    assert_eq!(cert.verdict, CertVerdict::Certified);
    assert!(cert.strict);
    assert_eq!(cert.n0, Some(6));
    let ray_summary: Vec<(&str, i64)> = cert
        .rays
        .iter()
        .map(|r| (r.name.as_str(), r.from))
        .collect();
    assert_eq!(
        ray_summary,
        vec![
            ("c3", 1),
            ("delta", 1),
            ("deltaSqMinusDelta", 3),
            ("cubicAtUpperBound", 6),
        ]
    );
    assert!(cert.rays.iter().all(|r| r.verdict.kind.implies(r.claim)));
    assert_eq!(cert.bounds.len(), 2);
    assert_eq!(cert.prefix_checks.len(), 8);
    assert_eq!(cert.prefix_checks[0].index, 1);
    assert!(cert.prefix_checks.iter().all(|c| c.strict));
    let witness_names: Vec<&str> = cert.witnesses.keys().map(String::as_str).collect();
    assert_eq!(
        witness_names,
        vec![
            "Delta",
            "c0",
            "c1",
            "c2",
            "c3",
            "cubicAtUpperBound",
            "delta",
            "deltaSqMinusDelta",
            "lowerInductionGap",
            "upperInductionGap",
        ]
    );
}

#[test]
fn certify_fibonacci_is_inapplicable() {
    let lower = RatioBound::new(rf("1/2"), Direction::Lower, 1).unwrap();
    let upper = RatioBound::new(rf("2"), Direction::Upper, 1).unwrap();
    let cert = certify_two_log_convex(&fibonacci(), &lower, &upper, 16, &CertifyOptions::default())
        .unwrap();
    match &cert.verdict {
        CertVerdict::Inapplicable { reason } => assert!(reason.contains("c3")),
        other => panic!("expected inapplicable, got {other:?}"),
    }
    assert_eq!(cert.n0, None);
    assert_eq!(cert.rays.len(), 1);
    assert_eq!(cert.rays[0].verdict.kind, SignKind::Zero);
}

#[test]
fn certify_refutes_a_non_log_convex_start() {
    // Same recurrence as the main example, but the inflated middle value
    // breaks log-convexity at the very first window.
    let rec = clf();
    let rec = Recurrence::new(
        rec.p2().clone(),
        rec.p1().clone(),
        rec.p0().clone(),
        1,
        (integer(1), integer(100)),
    )
    .unwrap();
    let cert = certify_two_log_convex(
        &rec,
        &clf_lower(),
        &clf_upper(),
        16,
        &CertifyOptions::default(),
    )
    .unwrap();
    match &cert.verdict {
        CertVerdict::Refuted { violation } => {
            assert_eq!(violation.stage, 0);
            assert_eq!(violation.index, 1);
            assert_eq!(violation.lhs, integer(10000));
            assert_eq!(violation.rhs, integer(1368));
        }
        other => panic!("expected refuted, got {other:?}"),
    }
}

#[test]
fn certify_demands_a_long_enough_prefix() {
    let err = certify_two_log_convex(
        &clf(),
        &clf_lower(),
        &clf_upper(),
        10,
        &CertifyOptions::default(),
    )
    .unwrap_err();
    assert_eq!(err, CertifierError::PrefixTooShort { needed: 11, got: 10 });
}

#[test]
fn certify_rejects_swapped_bounds() {
    let err = certify_two_log_convex(
        &clf(),
        &clf_upper(),
        &clf_lower(),
        16,
        &CertifyOptions::default(),
    )
    .unwrap_err();
    assert_eq!(
        err,
        CertifierError::BadBoundDirection {
            expected: Direction::Lower,
            got: Direction::Upper,
        }
    );
}

#[test]
fn degree_cap_is_enforced() {
    let err = certify_two_log_convex(
        &clf(),
        &clf_lower(),
        &clf_upper(),
        16,
        &CertifyOptions { max_degree: 4 },
    )
    .unwrap_err();
    assert!(matches!(err, CertifierError::DegreeCapExceeded { .. }));
}

#[test]
fn certificate_json_round_trips() {
    let cert = certify_two_log_convex(
        &clf(),
        &clf_lower(),
        &clf_upper(),
        16,
        &CertifyOptions::default(),
    )
    .unwrap();
    let json = cert.to_json();
    assert!(json.contains("\"N0\": 6"));
    assert!(json.contains("\"kind\": \"certified\""));
    let reloaded = Certificate::from_json(&json).unwrap();
    assert_eq!(reloaded, cert);
    assert_eq!(reloaded.to_json(), json);
}
