//! Property-based laws for the exact-arithmetic layers and the certifier:
//! algebraic homomorphisms, canonical-form invariants, soundness of sign
//! verdicts against brute-force evaluation, agreement of the two sign
//! decision paths, behavior-check equivalences, and exact soundness of the
//! certificates themselves.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use seqcert_core::certifier::{
    certify_ratio_bound, certify_two_log_convex, chenxia_coefficients, cubic_at_bound,
    delta_margin, normalize, CertVerdict, CertifyOptions, Direction, RatioBound,
};
use seqcert_core::exactmath::{
    integer, parse_expression, poly_sign_by_shift, poly_sign_by_sturm, rational, sign_on_ray,
    Polynomial, RationalFunction, SignKind,
};
use seqcert_core::sequences::{
    check_log_behavior, l_transform, LogBehavior, Recurrence, TermTable,
};

fn clf() -> Recurrence {
    Recurrence::catalan_larcombe_french()
}

fn clf_lower() -> RatioBound {
    let f = parse_expression("232*n / (15*(n + 2))").unwrap();
    RatioBound::new(f, Direction::Lower, 1).unwrap()
}

fn clf_upper() -> RatioBound {
    let g = parse_expression("16 - 16/n - 16/n^3").unwrap();
    RatioBound::new(g, Direction::Upper, 6).unwrap()
}

// ---------------------------------------------------------------------------
// Strategies

fn small_polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-50i64..=50, 0..=7).prop_map(|c| Polynomial::from_integers(&c))
}

fn nonzero_polynomial() -> impl Strategy<Value = Polynomial> {
    small_polynomial().prop_filter("nonzero", |p| !p.is_zero())
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rational(p, q))
}

fn positive_rational() -> impl Strategy<Value = BigRational> {
    (1i64..=400, 1i64..=40).prop_map(|(p, q)| rational(p, q))
}

fn rational_function() -> impl Strategy<Value = RationalFunction> {
    (small_polynomial(), nonzero_polynomial())
        .prop_map(|(num, den)| RationalFunction::new(num, den).unwrap())
}

/// A positive table anchored at index 0, long enough for every behavior
/// check used below.
fn positive_table() -> impl Strategy<Value = TermTable> {
    prop::collection::vec(positive_rational(), 7..=20)
        .prop_map(|values| TermTable::new(0, values))
}

// ---------------------------------------------------------------------------
// exactmath: algebraic laws

proptest! {
    #[test]
    fn taylor_shift_is_an_evaluation_homomorphism(
        p in small_polynomial(),
        s in small_rational(),
        x in small_rational(),
    ) {
        let shifted = p.taylor_shift(&s);
        prop_assert_eq!(shifted.eval(&x), p.eval(&(&x + &s)));
    }

    #[test]
    fn taylor_shifts_compose(
        p in small_polynomial(),
        s in small_rational(),
        t in small_rational(),
    ) {
        prop_assert_eq!(
            p.taylor_shift(&s).taylor_shift(&t),
            p.taylor_shift(&(&s + &t))
        );
    }

    #[test]
    fn ring_operations_match_pointwise_evaluation(
        p in small_polynomial(),
        q in small_polynomial(),
        x in small_rational(),
    ) {
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
    }

    #[test]
    fn rational_function_arithmetic_stays_canonical(
        r1 in rational_function(),
        r2 in rational_function(),
        x in -30i64..=30,
    ) {
        for r in [&r1 + &r2, &r1 - &r2, &r1 * &r2] {
            // Canonical form: coprime numerator/denominator, monic denominator.
            let g = r.numerator().gcd(r.denominator());
            prop_assert!(g.is_constant());
            prop_assert_eq!(r.denominator().leading_coefficient(), Some(&integer(1)));
        }
        // Arithmetic agrees with pointwise evaluation away from poles.
        if let (Ok(v1), Ok(v2)) = (r1.eval_int(x), r2.eval_int(x)) {
            prop_assert_eq!((&r1 + &r2).eval_int(x).unwrap(), &v1 + &v2);
            prop_assert_eq!((&r1 * &r2).eval_int(x).unwrap(), &v1 * &v2);
        }
    }

    #[test]
    fn rational_function_serde_round_trip_is_bit_exact(r in rational_function()) {
        let json = serde_json::to_string(&r).unwrap();
        let back: RationalFunction = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn display_expressions_reparse_to_the_same_function(r in rational_function()) {
        let text = r.to_string();
        prop_assert_eq!(parse_expression(&text).unwrap(), r);
    }
}

// ---------------------------------------------------------------------------
// exactmath: sign decision soundness

proptest! {
    #[test]
    fn sign_verdicts_are_sound_on_sampled_points(
        r in rational_function(),
        from in -20i64..=20,
    ) {
        match sign_on_ray(&r, from) {
            Err(seqcert_core::exactmath::ExactMathError::PoleOnRay(p)) => {
                // The reported pole is on the ray and is the first one.
                prop_assert!(p >= from);
                prop_assert!(r.denominator().eval_int(p).is_zero());
                for x in from..p {
                    prop_assert!(!r.denominator().eval_int(x).is_zero());
                }
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
            Ok(v) => {
                // An Unknown verdict promises nothing, not even that the
                // ray is pole-free; everything else is checked by sampling
                // a quadratic spread reaching ~10^6 past the ray start.
                if v.kind != SignKind::Unknown {
                    for k in 0..200i64 {
                        let x = from + k * k * 25;
                        let value = r.eval_int(x).expect("no poles on a decided ray");
                        let fits = match v.kind {
                            SignKind::Positive => value.is_positive(),
                            SignKind::Negative => value.is_negative(),
                            SignKind::Zero => value.is_zero(),
                            SignKind::Nonnegative => !value.is_negative(),
                            SignKind::Nonpositive => !value.is_positive(),
                            SignKind::Mixed | SignKind::Unknown => true,
                        };
                        prop_assert!(fits, "kind {:?} but r({x}) = {value}", v.kind);
                    }
                }
                // Witnesses are honest evaluations.
                for w in &v.witnesses {
                    prop_assert!(w.point >= from);
                    prop_assert_eq!(r.eval_int(w.point).unwrap(), w.value.clone());
                }
                if v.kind == SignKind::Mixed {
                    prop_assert!(v.witnesses.iter().any(|w| w.value.is_positive()));
                    prop_assert!(v.witnesses.iter().any(|w| w.value.is_negative()));
                }
            }
        }
    }

    #[test]
    fn shift_and_sturm_paths_agree(
        p in prop::collection::vec(-50i64..=50, 1..=9),
        from in -10i64..=10,
    ) {
        let p = Polynomial::from_integers(&p);
        if let Some(by_shift) = poly_sign_by_shift(&p, from, 64) {
            let by_sturm = poly_sign_by_sturm(&p, from);
            prop_assert_eq!(by_shift.kind, by_sturm.kind);
        }
    }
}

// ---------------------------------------------------------------------------
// sequences: behavior-check equivalences

proptest! {
    #[test]
    fn l_transform_annihilates_geometric_sequences(
        c in positive_rational(),
        q in positive_rational(),
        len in 3usize..=20,
    ) {
        let mut values = Vec::with_capacity(len);
        let mut v = c;
        for _ in 0..len {
            values.push(v.clone());
            v *= &q;
        }
        let s = l_transform(&TermTable::new(0, values)).unwrap();
        prop_assert!(s.values().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn log_convex_iff_ratios_nondecreasing(table in positive_table(), strict in any::<bool>()) {
        let verdict = check_log_behavior(&table, LogBehavior::LogConvex, strict).unwrap();
        let ratios = table.ratios().unwrap();
        let monotone = ratios.windows(2).all(|w| {
            if strict { w[1].1 > w[0].1 } else { w[1].1 >= w[0].1 }
        });
        prop_assert_eq!(verdict.holds, monotone);
    }

    #[test]
    fn log_balanced_matches_the_factorial_definition(table in positive_table()) {
        let balanced = check_log_behavior(&table, LogBehavior::LogBalanced, false)
            .unwrap()
            .holds;
        // Log-balanced <=> log-convex and {z_n / n!} log-concave.
        let convex = check_log_behavior(&table, LogBehavior::LogConvex, false)
            .unwrap()
            .holds;
        let mut factorial = BigRational::one();
        let scaled: Vec<BigRational> = table
            .iter()
            .map(|(i, v)| {
                if i > 0 {
                    factorial *= integer(i);
                }
                v / &factorial
            })
            .collect();
        let scaled_concave = check_log_behavior(
            &TermTable::new(0, scaled),
            LogBehavior::LogConcave,
            false,
        )
        .unwrap()
        .holds;
        prop_assert_eq!(balanced, convex && scaled_concave);
    }

    #[test]
    fn one_log_convex_is_plain_log_convex(table in positive_table(), strict in any::<bool>()) {
        let plain = check_log_behavior(&table, LogBehavior::LogConvex, strict).unwrap();
        let layered = check_log_behavior(&table, LogBehavior::KLogConvex(1), strict).unwrap();
        prop_assert_eq!(plain.holds, layered.holds);
        prop_assert_eq!(plain.first_violation, layered.first_violation);
    }

    #[test]
    fn strict_verdicts_imply_non_strict(table in positive_table()) {
        for property in [
            LogBehavior::LogConcave,
            LogBehavior::LogConvex,
            LogBehavior::LogBalanced,
            LogBehavior::KLogConvex(1),
            LogBehavior::KLogConvex(2),
            LogBehavior::QuotientLogConcave,
        ] {
            let strict = check_log_behavior(&table, property, true).unwrap();
            let lax = check_log_behavior(&table, property, false).unwrap();
            prop_assert!(!strict.holds || lax.holds);
        }
    }
}

// ---------------------------------------------------------------------------
// certifier: formula agreement and algebraic identities

/// The scalar coefficient formulas, computed directly from evaluated
/// `a(n+1..n+3)`, `b(n+1..n+3)` — an independent path to the symbolic one.
fn coefficients_at_point(
    a: &RationalFunction,
    b: &RationalFunction,
    n: i64,
) -> [BigRational; 5] {
    let a1 = a.eval_int(n + 1).unwrap();
    let a2 = a.eval_int(n + 2).unwrap();
    let a3 = a.eval_int(n + 3).unwrap();
    let b1 = b.eval_int(n + 1).unwrap();
    let b2 = b.eval_int(n + 2).unwrap();
    let b3 = b.eval_int(n + 3).unwrap();
    let k = |v: i64| BigRational::from_integer(v.into());
    let c0 = -(&b1 * &b1) * (&a2 * &a2 + &b1 - &a2 * &a3 - &b3);
    let c1 = &b1
        * (k(2) * &a2 * &b1 + k(2) * &a3 * &a2 * &a1 + &a3 * &b2 + k(2) * &a1 * &b3
            - k(2) * &a2 * &a2 * &a1
            - k(2) * &a2 * &b2
            - k(3) * &a1 * &b1);
    let c2 = k(4) * &a1 * &a2 * &b1 + k(2) * &b1 * &b2 + &a1 * &a1 * &a2 * &a3
        + &a1 * &a3 * &b2
        + &a1 * &a1 * &b3
        - k(3) * &a1 * &a1 * &b1
        - &a3 * &a2 * &b1
        - &a2 * &a2 * &a1 * &a1
        - &b3 * &b1
        - k(2) * &a2 * &a1 * &b2
        - &b2 * &b2;
    let c3 = k(2) * &a1 * &a1 * &a2 + k(2) * &a1 * &b2
        - &a1 * &b3
        - &a1 * &a1 * &a1
        - &a1 * &a2 * &a3
        - &a3 * &b2;
    let delta = k(4) * &c2 * &c2 - k(12) * &c1 * &c3;
    [c0, c1, c2, c3, delta]
}

#[test]
fn clf_symbolic_coefficients_agree_with_numeric_substitution() {
    let nr = normalize(&clf()).unwrap();
    let cx = chenxia_coefficients(&nr);
    let f = clf_lower();
    let g = clf_upper();
    let delta = delta_margin(&cx.c2, &cx.c3, &f).unwrap();
    let cubic = cubic_at_bound(&cx, &g).unwrap();
    for n in 4..=100i64 {
        let [c0, c1, c2, c3, disc] = coefficients_at_point(nr.a(), nr.b(), n);
        assert_eq!(cx.c0.eval_int(n).unwrap(), c0);
        assert_eq!(cx.c1.eval_int(n).unwrap(), c1);
        assert_eq!(cx.c2.eval_int(n).unwrap(), c2);
        assert_eq!(cx.c3.eval_int(n).unwrap(), c3);
        assert_eq!(cx.delta.eval_int(n).unwrap(), disc);
        let fv = f.expr().eval_int(n).unwrap();
        let gv = g.expr().eval_int(n).unwrap();
        let six: BigRational = integer(6);
        let two: BigRational = integer(2);
        assert_eq!(
            delta.eval_int(n).unwrap(),
            -(&six * &c3 * &fv) - &two * &c2
        );
        assert_eq!(
            cubic.eval_int(n).unwrap(),
            ((&c3 * &gv + &c2) * &gv + &c1) * &gv + &c0
        );
    }
}

proptest! {
    /// Same agreement on arbitrary polynomial-coefficient recurrences
    /// (constant leading coefficient, so normalization introduces no poles).
    #[test]
    fn symbolic_coefficients_agree_for_random_recurrences(
        p1 in prop::collection::vec(-9i64..=9, 1..=3),
        p0 in prop::collection::vec(-9i64..=9, 1..=3),
        n in 4i64..=40,
    ) {
        let rec = Recurrence::new(
            Polynomial::one(),
            Polynomial::from_integers(&p1),
            Polynomial::from_integers(&p0),
            1,
            (integer(1), integer(1)),
        )
        .unwrap();
        let nr = normalize(&rec).unwrap();
        let cx = chenxia_coefficients(&nr);
        let [c0, c1, c2, c3, disc] = coefficients_at_point(nr.a(), nr.b(), n);
        prop_assert_eq!(cx.c0.eval_int(n).unwrap(), c0);
        prop_assert_eq!(cx.c1.eval_int(n).unwrap(), c1);
        prop_assert_eq!(cx.c2.eval_int(n).unwrap(), c2);
        prop_assert_eq!(cx.c3.eval_int(n).unwrap(), c3);
        prop_assert_eq!(cx.delta.eval_int(n).unwrap(), disc);
    }

    /// The radical-free form of the root condition is an algebraic identity:
    /// delta^2 - Delta = 12 c3 (3 c3 f^2 + 2 c2 f + c1) for any f whatsoever.
    #[test]
    fn delta_squared_identity_holds_symbolically(
        p1 in prop::collection::vec(-9i64..=9, 1..=3),
        p0 in prop::collection::vec(-9i64..=9, 1..=3),
        f in rational_function(),
    ) {
        let rec = Recurrence::new(
            Polynomial::one(),
            Polynomial::from_integers(&p1),
            Polynomial::from_integers(&p0),
            1,
            (integer(1), integer(1)),
        )
        .unwrap();
        let cx = chenxia_coefficients(&normalize(&rec).unwrap());
        let delta = cx.c3.scale(&integer(-6)) * &f + cx.c2.scale(&integer(-2));
        let lhs = &delta * &delta - &cx.delta;
        let parabola = cx.c3.scale(&integer(3)) * &f * &f
            + cx.c2.scale(&integer(2)) * &f
            + &cx.c1;
        prop_assert_eq!(lhs, parabola.scale(&integer(12)) * &cx.c3);
    }

    #[test]
    fn normalization_round_trips_to_the_coefficient_quotients(
        p2 in prop::collection::vec(1i64..=9, 1..=2),
        p1 in prop::collection::vec(-9i64..=9, 1..=3),
        p0 in prop::collection::vec(-9i64..=9, 1..=3),
    ) {
        // All-positive p2 coefficients keep it nonvanishing on the ray.
        let rec = Recurrence::new(
            Polynomial::from_integers(&p2),
            Polynomial::from_integers(&p1),
            Polynomial::from_integers(&p0),
            1,
            (integer(1), integer(1)),
        )
        .unwrap();
        let nr = normalize(&rec).unwrap();
        let p2_rf = RationalFunction::from_polynomial(rec.p2().clone());
        let one = integer(1);
        prop_assert_eq!(
            nr.a().shift(&one) * &p2_rf,
            RationalFunction::from_polynomial(rec.p1().clone())
        );
        prop_assert_eq!(
            nr.b().shift(&one) * &p2_rf,
            RationalFunction::from_polynomial(rec.p0().clone())
        );
    }
}

// ---------------------------------------------------------------------------
// certifier: exact soundness of certificates on long prefixes

#[test]
fn delta_equivalence_holds_pointwise_up_to_200() {
    let nr = normalize(&clf()).unwrap();
    let cx = chenxia_coefficients(&nr);
    let f = clf_lower();
    let delta = delta_margin(&cx.c2, &cx.c3, &f).unwrap();
    for n in 3..=200i64 {
        let c1 = cx.c1.eval_int(n).unwrap();
        let c2 = cx.c2.eval_int(n).unwrap();
        let c3 = cx.c3.eval_int(n).unwrap();
        let disc = cx.delta.eval_int(n).unwrap();
        let d = delta.eval_int(n).unwrap();
        let fv = f.expr().eval_int(n).unwrap();
        assert!(c3.is_negative());
        assert!(!disc.is_negative());
        assert!(!d.is_negative());
        assert!(&d * &d >= disc);
        // f at or above the larger root of 3 c3 x^2 + 2 c2 x + c1: with
        // c3 < 0 that parabola is nonpositive there, and the vertex
        // condition is exactly delta >= 0.
        let parabola =
            integer(3) * &c3 * &fv * &fv + integer(2) * &c2 * &fv + &c1;
        assert!(!parabola.is_positive(), "n = {n}");
    }
}

#[test]
fn certified_conclusion_verified_exactly_up_to_200() {
    let cert = certify_two_log_convex(
        &clf(),
        &clf_lower(),
        &clf_upper(),
        203,
        &CertifyOptions::default(),
    )
    .unwrap();
    assert_eq!(cert.verdict, CertVerdict::Certified);
    assert!(cert.strict);
    let terms = clf().generate_terms(203).unwrap();
    let s = l_transform(&terms).unwrap();
    for n in 1..=200i64 {
        let lhs = s.get(n).unwrap() * s.get(n + 2).unwrap();
        let rhs = s.get(n + 1).unwrap() * s.get(n + 1).unwrap();
        assert!(lhs > rhs, "n = {n}");
    }
}

#[test]
fn bound_certificates_verified_exactly_up_to_200() {
    let opts = CertifyOptions::default();
    certify_ratio_bound(&clf(), &clf_lower(), 200, &opts).unwrap();
    certify_ratio_bound(&clf(), &clf_upper(), 200, &opts).unwrap();
    let terms = clf().generate_terms(200).unwrap();
    let f = clf_lower();
    let g = clf_upper();
    for (n, ratio) in terms.ratios().unwrap() {
        assert!(ratio > f.expr().eval_int(n).unwrap(), "lower at {n}");
        if n >= 6 {
            assert!(ratio <= g.expr().eval_int(n).unwrap(), "upper at {n}");
        }
    }
}
