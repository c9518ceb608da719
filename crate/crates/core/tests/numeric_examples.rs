use num_bigint::BigInt;
use num_traits::{One, Zero};
use qapery_core::identity::remainder;
use qapery_core::numeric::{classical_limit_check, first_increase, series_agreement};
use qapery_core::{
    eval_exact, kl_classical_check, markov_parametric_check, q_binomial, q_int, remainder_decay_profile,
    series_term, sum_series, terms_to_tolerance, zeta_reference, Error, ExactRational, HarmonicDepth,
    PrecisionReal, QRationalFunction, SeriesSpec, SummationOptions,
};

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn eval_exact_examples() {
    let one = ExactRational::one();
    let f = QRationalFunction::from_poly(&q_int(3).unwrap());
    assert_eq!(eval_exact(&f, &one).unwrap(), rat(3, 1));
    let b = QRationalFunction::from_poly(&q_binomial(4, 2).unwrap());
    assert_eq!(eval_exact(&b, &one).unwrap(), rat(6, 1));
    let h = qapery_core::harmonic_q(2, HarmonicDepth::new(1).unwrap());
    assert_eq!(eval_exact(&h, &rat(1, 2)).unwrap(), rat(11, 18));
    let pole = QRationalFunction::one().checked_div(&QRationalFunction::from_poly(&q_int(2).unwrap())).unwrap();
    assert!(matches!(eval_exact(&pole, &rat(-1, 1)), Err(Error::PoleAtPoint(_))));
}

#[test]
fn plain_and_accelerated_r0_agree() {
    let report = series_agreement(
        &SeriesSpec::PlainQZeta { r: 0 },
        &SeriesSpec::RFamilyRhs { r: 0 },
        Some(&rat(1, 2)),
        None,
        30,
        28,
        &SummationOptions::default(),
    )
    .unwrap();
    assert!(report.passed(), "{}", report.witness);
}

#[test]
fn q_even_and_bivariate_agree() {
    for (lhs, rhs, x) in [
        (SeriesSpec::QEvenLhs, SeriesSpec::QEvenRhs, rat(1, 3)),
        (SeriesSpec::MainBivariateLhs, SeriesSpec::MainBivariateRhs, rat(1, 2)),
    ] {
        let report = series_agreement(&lhs, &rhs, Some(&rat(1, 2)), Some(&x), 25, 23, &SummationOptions::default()).unwrap();
        assert!(report.passed(), "{lhs}: {}", report.witness);
    }
}

#[test]
fn q_even_x0_special_case() {
    for q in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        let report = series_agreement(&SeriesSpec::QEvenLhs, &SeriesSpec::QEvenRhs, Some(&q), None, 27, 25, &SummationOptions::default()).unwrap();
        assert!(report.passed(), "q={q}: {}", report.witness);
    }
}

#[test]
fn bivariate_expands_into_r_family() {
    // sum_r x^(2r) (r-family) reproduces the bivariate left side; the r-th
    // coefficient is about q^(r+1), so at q = x = 1/2 the omitted tail is
    // below 8^-R.
    let prec = PrecisionReal::working_bits(20);
    let q = PrecisionReal::parse("1/2", prec).unwrap();
    let x = PrecisionReal::parse("1/2", prec).unwrap();
    let opts = SummationOptions::default();
    let target = sum_series(&SeriesSpec::MainBivariateLhs, Some(&q), Some(&x), 20, &opts).unwrap().value;
    let x2 = x.mul(&x);
    let mut acc = PrecisionReal::zero(prec);
    let mut w = PrecisionReal::from_i64(1, prec);
    for r in 0..25 {
        let term = sum_series(&SeriesSpec::RFamilyRhs { r }, Some(&q), None, 22, &opts).unwrap().value;
        acc = acc.add(&term.mul(&w));
        w = w.mul(&x2);
    }
    assert!(acc.sub(&target).abs().log10_abs() < -18.0);
}

#[test]
fn acceleration_and_term_counts() {
    let opts = SummationOptions::default();
    let q = PrecisionReal::parse("0.5", PrecisionReal::working_bits(30)).unwrap();
    let plain = terms_to_tolerance(&SeriesSpec::PlainQZeta { r: 0 }, Some(&q), None, 30, &opts).unwrap();
    let fast = terms_to_tolerance(&SeriesSpec::RFamilyRhs { r: 0 }, Some(&q), None, 30, &opts).unwrap();
    assert!(plain >= 3 * fast, "plain {plain} vs accelerated {fast}");
    let ma = terms_to_tolerance(&SeriesSpec::MarkovAperyClassical { r: 0 }, None, None, 12, &opts).unwrap();
    assert!(ma <= 40);
    let err = terms_to_tolerance(
        &SeriesSpec::MarkovParametricLhs { a: 0 },
        None,
        None,
        12,
        &SummationOptions { term_cap: 500, ..opts },
    )
    .unwrap_err();
    assert!(matches!(err, Error::NonGeometric { .. }));
}

#[test]
fn exact_and_floating_partial_sums_reconcile() {
    let q0 = rat(1, 2);
    let prec = PrecisionReal::working_bits(30);
    let qf = PrecisionReal::from_rational(&q0, prec);
    let qs = QRationalFunction::q_monomial(1);
    for spec in [SeriesSpec::RFamilyRhs { r: 1 }, SeriesSpec::QEvenRhs, SeriesSpec::PlainQZeta { r: 2 }] {
        let mut exact_sum = QRationalFunction::zero();
        let mut float_sum = PrecisionReal::zero(prec);
        for k in 1..=8 {
            exact_sum = &exact_sum + &series_term(&spec, k, &qs, None).unwrap();
            float_sum = float_sum.add(&series_term(&spec, k, &qf, None).unwrap());
        }
        let exact = PrecisionReal::from_rational(&eval_exact(&exact_sum, &q0).unwrap(), prec);
        let gap = exact.sub(&float_sum).abs();
        assert!(gap.is_zero() || gap.log2_abs() < -((prec - 50) as f64), "{spec}");
    }
}

#[test]
fn r_family_numeric_matches_exact_finite_form() {
    // partial sums of the numeric r-family plus the exact remainder agree with
    // the exact left member at q = 1/2.
    let q0 = rat(1, 2);
    let qs = QRationalFunction::q_monomial(1);
    for r in 0..=2 {
        for n in 1..=6 {
            let main: QRationalFunction = (1..=n)
                .map(|k| series_term(&SeriesSpec::RFamilyRhs { r }, k, &qs, None).unwrap())
                .sum();
            let lhs: ExactRational = (1..=n)
                .map(|k| series_term(&SeriesSpec::RFamilyLhs { r }, k, &q0, None).unwrap())
                .fold(ExactRational::zero(), |a, b| a + b);
            let rem = remainder(n, r).eval(&q0).unwrap();
            assert_eq!(main.eval(&q0).unwrap() - rem, lhs);
        }
    }
}

#[test]
fn zeta_reference_examples() {
    let z2 = zeta_reference(2, 10).unwrap();
    assert_eq!(z2.to_decimal(10), "1.644934066e0");
    assert!(classical_limit_check(0, 12).unwrap().passed());
    assert!(classical_limit_check(1, 10).unwrap().passed());
}

#[test]
fn markov_parametric_examples() {
    assert!(markov_parametric_check(0, 12).unwrap().passed());
    assert!(markov_parametric_check(1, 12).unwrap().passed());
    assert!(markov_parametric_check(3, 10).unwrap().passed());
}

#[test]
fn kl_classical_examples() {
    let report = kl_classical_check(4, &rat(1, 2), 10).unwrap();
    assert!(report.passed(), "{}", report.witness);
    assert!(kl_classical_check(2, &ExactRational::zero(), 10).unwrap().passed());
    assert!(matches!(kl_classical_check(2, &ExactRational::one(), 10), Err(Error::Pole { k: 1, .. })));
}

#[test]
fn remainder_profiles() {
    let prof = remainder_decay_profile(0, &rat(1, 2), 12).unwrap();
    assert_eq!(first_increase(&prof, 3), None);
    let prof = remainder_decay_profile(2, &rat(1, 2), 10).unwrap();
    assert_eq!(first_increase(&prof, 3), None);
    let prof = remainder_decay_profile(0, &rat(9, 10), 12).unwrap();
    assert_eq!(first_increase(&prof, 3), None);
    assert!(prof[11].1 < prof[0].1);
    assert!(remainder_decay_profile(0, &rat(3, 2), 4).is_err());
}
