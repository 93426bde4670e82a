use proptest::prelude::*;

use super::*;
use crate::rational::{frac, int, Rational};

fn pf(v: Vec<Rational>) -> PeriodicFunction {
    PeriodicFunction::new(v).unwrap()
}

/// Closed form of the lattice count of `k·[-1/p, 0]`: `floor(k/p) + 1`,
/// sampled and interpolated.
fn segment_qp(p: i64) -> QuasiPolynomial {
    let samples: Vec<(i64, Rational)> = (1..=2 * p).map(|k| (k, int(k.div_euclid(p) + 1))).collect();
    interpolate(&samples, 1, p as usize).unwrap()
}

#[test]
fn add_examples() {
    let t = QuasiPolynomial::monomial(int(1), 1);
    let one = QuasiPolynomial::constant(int(1));
    assert_eq!(qp_add(&t, &one), QuasiPolynomial::polynomial(vec![int(1), int(1)]));

    let a = QuasiPolynomial::new(vec![pf(vec![int(1), frac(1, 2)]), pf(vec![frac(1, 2)])]);
    let b = QuasiPolynomial::new(vec![pf(vec![int(0), frac(1, 2)]), pf(vec![frac(-1, 2)])]);
    let sum = qp_add(&a, &b);
    assert_eq!(sum, QuasiPolynomial::constant(int(1)));
    assert_eq!(sum.degree(), 0);
    assert_eq!(sum.coefficients()[0].period(), 1);

    let s = qp_add(&segment_qp(2), &segment_qp(3));
    assert_eq!(s.eval(6), int(7));
    assert_eq!(s.eval(6), int(6 / 2 + 1 + 6 / 3 + 1));
}

#[test]
fn mul_examples() {
    let lin = QuasiPolynomial::polynomial(vec![int(1), int(2)]);
    assert_eq!(
        qp_mul(&lin, &lin),
        QuasiPolynomial::polynomial(vec![int(1), int(4), int(4)])
    );

    let a = QuasiPolynomial::new(vec![pf(vec![int(1), frac(1, 2)]), pf(vec![frac(1, 2)])]);
    assert_eq!(qp_mul(&a, &QuasiPolynomial::constant(int(1))), a);

    // direct count of the square [-k/2, 0]^2
    let sq = qp_mul(&segment_qp(2), &segment_qp(2));
    for k in 1..=8i64 {
        let mut count = 0;
        for x in -k..=0 {
            for y in -k..=0 {
                if 2 * x >= -k && 2 * y >= -k {
                    count += 1;
                }
            }
        }
        assert_eq!(sq.eval(k), int(count), "k = {k}");
    }
}

#[test]
fn equivalence_examples() {
    let t = QuasiPolynomial::monomial(int(1), 1);
    let t7 = QuasiPolynomial::polynomial(vec![int(7), int(1)]);
    assert!(qp_equivalent(&t, &t7));

    let a = QuasiPolynomial::new(vec![pf(vec![int(0)]), pf(vec![int(1), frac(1, 2)])]);
    assert!(!qp_equivalent(&a, &t));
}

#[test]
fn period_sequence_examples() {
    assert_eq!(segment_qp(2).period_sequence(), PeriodSequence(vec![2, 1]));
    let square = QuasiPolynomial::polynomial(vec![int(1), int(2), int(1)]);
    assert_eq!(square.period_sequence(), PeriodSequence(vec![1, 1, 1]));
    assert_eq!(segment_qp(5).period_sequence().to_string(), "5,1");
}

#[test]
fn interpolate_examples() {
    let qp = interpolate(
        &[(1, int(1)), (2, int(2)), (3, int(2)), (4, int(3))],
        1,
        2,
    )
    .unwrap();
    let expected = QuasiPolynomial::new(vec![pf(vec![int(1), frac(1, 2)]), pf(vec![frac(1, 2)])]);
    assert_eq!(qp, expected);

    let c = interpolate(&[(1, int(1)), (2, int(1)), (3, int(1))], 0, 1).unwrap();
    assert_eq!(c, QuasiPolynomial::constant(int(1)));

    // dilates of conv{(0,0),(1,1),(2,4)}: 4, 9, 16
    let tri = interpolate(&[(1, int(4)), (2, int(9)), (3, int(16))], 2, 1).unwrap();
    assert_eq!(tri, QuasiPolynomial::polynomial(vec![int(1), int(2), int(1)]));
}

#[test]
fn interpolate_errors() {
    let err = interpolate(&[(1, int(1)), (3, int(2)), (2, int(1))], 1, 2).unwrap_err();
    assert_eq!(
        err,
        crate::Error::InsufficientSamples {
            residue: 0,
            needed: 2,
            found: 1
        }
    );
    let err = interpolate(&[(1, int(1)), (2, int(2)), (3, int(4))], 1, 1).unwrap_err();
    assert!(matches!(err, crate::Error::InconsistentSamples { .. }));
}

#[test]
fn json_round_trip_and_format() {
    let qp = segment_qp(2);
    let s = qp.to_json_string();
    assert_eq!(
        s,
        r#"{"degree":1,"coefficients":[{"period":2,"values":["1/1","1/2"]},{"period":1,"values":["1/2"]}]}"#
    );
    assert_eq!(QuasiPolynomial::from_json_str(&s).unwrap(), qp);
    let relaxed = r#"{"degree":0,"coefficients":[{"period":2,"values":["3","6/2"]}]}"#;
    assert_eq!(
        QuasiPolynomial::from_json_str(relaxed).unwrap(),
        QuasiPolynomial::constant(int(3))
    );
    for bad in [
        r#"{"degree":1,"coefficients":[{"period":1,"values":["1"]}]}"#,
        r#"{"degree":0,"coefficients":[{"period":2,"values":["1"]}]}"#,
        r#"{"degree":0,"coefficients":[{"period":0,"values":[]}]}"#,
        r#"{"degree":0,"coefficients":[{"period":1,"values":["1/0"]}]}"#,
    ] {
        assert!(QuasiPolynomial::from_json_str(bad).is_err(), "{bad}");
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn periodic(max_period: usize) -> impl Strategy<Value = PeriodicFunction> {
    (1..=max_period)
        .prop_flat_map(|s| prop::collection::vec(small_rational(), s))
        .prop_map(pf)
}

fn quasi(max_degree: usize, max_period: usize) -> impl Strategy<Value = QuasiPolynomial> {
    prop::collection::vec(periodic(max_period), 1..=max_degree + 1).prop_map(QuasiPolynomial::new)
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = QuasiPolynomial> {
    prop::collection::vec(small_rational(), 1..=max_degree + 1).prop_map(QuasiPolynomial::polynomial)
}

proptest! {
    #[test]
    fn minimal_period_divides_period(f in periodic(12)) {
        prop_assert_eq!(f.period() % f.minimal_period(), 0);
    }

    #[test]
    fn ring_ops_are_pointwise(a in quasi(3, 4), b in quasi(3, 4), k in -10i64..=10) {
        prop_assert_eq!(qp_add(&a, &b).eval(k), a.eval(k) + b.eval(k));
        prop_assert_eq!(qp_mul(&a, &b).eval(k), a.eval(k) * b.eval(k));
    }

    #[test]
    fn equivalence_is_an_equivalence(a in quasi(2, 3), b in quasi(2, 3), c in quasi(2, 3), f in polynomial(3)) {
        prop_assert!(qp_equivalent(&a, &a));
        prop_assert_eq!(qp_equivalent(&a, &b), qp_equivalent(&b, &a));
        if qp_equivalent(&a, &b) && qp_equivalent(&b, &c) {
            prop_assert!(qp_equivalent(&a, &c));
        }
        let shifted = qp_add(&a, &f);
        prop_assert!(qp_equivalent(&a, &shifted));
        prop_assert_eq!(qp_equivalent(&shifted, &b), qp_equivalent(&a, &b));
    }

    #[test]
    fn polynomial_substitution(q in quasi(2, 3), f in polynomial(2), g in polynomial(2)) {
        // r = q + g is equivalent to q by construction
        let r = qp_add(&q, &g);
        prop_assert!(qp_equivalent(&qp_mul(&f, &q), &qp_mul(&f, &r)));
    }

    #[test]
    fn interpolation_inverts_sampling(degree in 0usize..=3, s in 1usize..=4, seed in quasi(3, 4)) {
        // restrict the random quasi-polynomial to the requested degree and period
        let coeffs: Vec<PeriodicFunction> = (0..=degree)
            .map(|i| {
                let c = seed.coefficient(i).cloned().unwrap_or_else(PeriodicFunction::zero);
                pf((0..s as i64).map(|r| c.at(r).clone()).collect())
            })
            .collect();
        let q = QuasiPolynomial::new(coeffs);
        let samples: Vec<(i64, Rational)> = (1..=(s * (degree + 1)) as i64).map(|k| (k, q.eval(k))).collect();
        prop_assert_eq!(interpolate(&samples, degree, s).unwrap(), q);
    }

    #[test]
    fn period_sequence_ignores_representation(q in quasi(3, 3), reps in 1usize..=3) {
        let inflated = QuasiPolynomial::new(
            q.coefficients()
                .iter()
                .map(|c| pf(c.extended(c.period() * reps)))
                .collect(),
        );
        prop_assert_eq!(inflated.period_sequence(), q.period_sequence());
        prop_assert_eq!(inflated, q);
    }
}
