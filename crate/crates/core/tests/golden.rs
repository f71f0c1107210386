mod support;

use std::collections::BTreeSet;

use isosieve_core::arith::{factorize, DivisorSet, FactorConfig};
use isosieve_core::criteria::{
    eliminate, exceptional_candidates, p_ell_star, r_ideal_for_curve, sieve_prime, CandidateStatus,
    DirectTraces, Splitting,
};
use isosieve_core::ellcurve::CurveModel;
use isosieve_core::intpoly::{adams, star_pow, IntPoly};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use support::*;

fn traces_above(curve: &CurveModel, ell: u64) -> Vec<i64> {
    let mut t: Vec<i64> = curve
        .field()
        .factor_prime(ell)
        .unwrap()
        .iter()
        .map(|q| curve.trace_of_frobenius(q).unwrap().trace.try_into().unwrap())
        .collect();
    t.sort_unstable();
    t
}

fn primes(list: &[u64]) -> BTreeSet<BigUint> {
    list.iter().map(|&p| BigUint::from(p)).collect()
}

#[test]
fn traces_match_worked_examples() {
    assert_eq!(traces_above(&q_sqrt5(), 7), [-12]);
    let e = q_i();
    assert_eq!(traces_above(&e, 5), [-2, 1]);
    assert_eq!(traces_above(&e, 7), [6]);
    assert_eq!(traces_above(&e, 3), [-3]);
    let e = q_sqrt2();
    assert_eq!(traces_above(&e, 11), [4]);
    assert_eq!(traces_above(&e, 13), [-14]);
    assert_eq!(traces_above(&e, 19), [26]);
    assert_eq!(traces_above(&e, 29), [1]);
    assert_eq!(traces_above(&e, 41), [-3, 2]);
    assert_eq!(traces_above(&q_sqrt13(), 3), [-3, -3]);
    let e = cubic();
    assert_eq!(traces_above(&e, 17), [-3, -3, 3]);
    assert_eq!(traces_above(&e, 19), [-5, -5, 5]);
    assert_eq!(traces_above(&e, 37), [-7, -7, 7]);
    assert_eq!(traces_above(&e, 53), [-3, 3, 3]);
    assert_eq!(traces_above(&e, 7), [-36]);
    let e = biquadratic_good_at_3().integralize().unwrap();
    assert_eq!(traces_above(&e, 5), [-4, -4]);
    assert_eq!(traces_above(&e, 7), [-2, -2]);
    assert_eq!(traces_above(&e, 3), [0]);
    assert_eq!(traces_above(&e, 17), [-10, -10]);
}

#[test]
fn sieve_integers_over_q_i() {
    let e = q_i();
    let b5 = factored(&[
        (2, 28), (3, 16), (5, 39), (11, 2), (17, 1), (61, 1), (73, 1), (277, 1),
        (397, 1), (557, 1), (653, 1), (757, 1), (23833, 1),
    ]);
    let b7 = factored(&[
        (2, 14), (3, 8), (5, 2), (7, 13), (11, 1), (13, 5), (37, 2), (2089, 1), (2689, 1), (3889, 1),
    ]);
    let s5 = sieve_prime(&e, 5, &DirectTraces).unwrap();
    let s7 = sieve_prime(&e, 7, &DirectTraces).unwrap();
    assert_eq!(s5.b_ell.abs(), b5);
    assert_eq!(s7.b_ell.abs(), b7);
    assert_eq!(s5.fast_path.as_ref().unwrap().splitting, Splitting::Split);
    assert_eq!(s7.fast_path.as_ref().unwrap().splitting, Splitting::Inert);
    let report = exceptional_candidates(&e, &[5, 7], &DirectTraces, &FactorConfig::default()).unwrap();
    assert_eq!(report.intersection, DivisorSet::Primes(primes(&[2, 3, 5, 11])));
}

#[test]
fn theorem_two_on_the_biquadratic_curve() {
    let e = biquadratic().integralize().unwrap();
    let k = e.field();
    let q5 = k.factor_prime(5).unwrap().remove(0);
    let r5 = r_ideal_for_curve(&e, &q5, 1, &m_gamma5(), &DirectTraces).unwrap();
    assert_eq!(r5.frobenius.frobenius_poly, IntPoly::from_i64s(&[25, 4, 1]));
    let p12 = IntPoly::new(vec![
        BigInt::from(5).pow(24),
        BigInt::from(-2 * 47 * 1_163_039i64),
        BigInt::from(1),
    ]);
    assert_eq!(r5.p_twisted, p12);
    // V_12 of the roots of X^2 -+ sqrt(-7) X + 5 is 13203794.
    let quad = IntPoly::new(vec![BigInt::from(5).pow(12), BigInt::from(-13_203_794), BigInt::from(1)]);
    assert_eq!(r5.m_twisted, quad.pow(2));
    let expected5 = factored(&[
        (2, 126), (3, 100), (5, 225), (7, 21), (11, 1), (13, 8), (19, 1), (37, 11), (41, 8),
        (59, 16), (103, 1), (109, 8), (149, 8), (193, 1), (373, 2), (2137, 1), (4201, 2),
        (7753, 2), (24061, 2),
    ]);
    assert_eq!(r5.value.abs(), expected5);

    let q7 = k.factor_prime(7).unwrap().remove(0);
    let r7 = r_ideal_for_curve(&e, &q7, 1, &m_gamma7(), &DirectTraces).unwrap();
    assert_eq!(r7.frobenius.frobenius_poly, IntPoly::from_i64s(&[7, 2, 1]));
    let expected7 = factored(&[
        (2, 105), (3, 59), (5, 26), (7, 116), (11, 2), (13, 2), (17, 8), (23, 8), (31, 1),
        (79, 1), (137, 2), (191, 4), (193, 1), (463, 1), (487, 2), (673, 1), (1033, 2),
        (1471, 1), (2953, 1), (3697, 1),
    ]);
    assert_eq!(r7.value.abs(), expected7);
}

#[test]
fn star_square_of_m_gamma5() {
    // The star-square has the factor (X - 5^12)^8 and a quadratic factor.
    let m12 = adams(&m_gamma5(), 12).unwrap();
    let sq = star_pow(&m12, 2).unwrap();
    let lin = IntPoly::new(vec![-BigInt::from(5).pow(12), BigInt::from(1)]);
    let rest = sq.div_exact(&lin.pow(8)).unwrap();
    assert_eq!(rest.deg(), 8);
    let v = BigInt::from(13_203_794);
    let mid = &v * &v - BigInt::from(2) * BigInt::from(5).pow(12);
    let quad = IntPoly::new(vec![BigInt::from(5).pow(24), -mid, BigInt::from(1)]);
    assert_eq!(rest, quad.pow(4));
}

#[test]
fn degenerate_sieve_on_the_biquadratic_curve() {
    let e = biquadratic_good_at_3().integralize().unwrap();
    let s3 = sieve_prime(&e, 3, &DirectTraces).unwrap();
    let x3 = IntPoly::new(vec![-BigInt::from(3).pow(24), BigInt::from(1)]);
    assert_eq!(s3.p_ell_star, x3.pow(2));
    assert_eq!(s3.b_ell, BigInt::from(0));
    let s7 = sieve_prime(&e, 7, &DirectTraces).unwrap();
    let x7 = IntPoly::new(vec![-BigInt::from(7).pow(24), BigInt::from(1)]);
    let quad = IntPoly::new(vec![
        BigInt::from(7).pow(48),
        "-371728108602950083202".parse().unwrap(),
        BigInt::from(1),
    ]);
    assert_eq!(s7.p_ell_star, &x7.pow(2) * &quad);
    assert_eq!(s7.b_ell, BigInt::from(0));
    let s5 = sieve_prime(&e, 5, &DirectTraces).unwrap();
    assert_eq!(s5.b_ell, BigInt::from(0));
}

#[test]
fn both_biquadratic_models_agree_away_from_3() {
    let a = biquadratic().integralize().unwrap();
    let b = biquadratic_good_at_3().integralize().unwrap();
    assert_eq!(a.j_invariant(), b.j_invariant());
    assert!(!a.good_reduction_at(3).unwrap());
    assert!(b.good_reduction_at(3).unwrap());
    for ell in [5, 7, 11, 13, 17] {
        assert_eq!(traces_above(&a, ell), traces_above(&b, ell), "{ell}");
    }
}

#[test]
fn biquadratic_candidates_from_r_values() {
    use isosieve_core::criteria::assemble;
    let e = biquadratic().integralize().unwrap();
    let k = e.field();
    let q5 = k.factor_prime(5).unwrap().remove(0);
    let q7 = k.factor_prime(7).unwrap().remove(0);
    let r = vec![
        r_ideal_for_curve(&e, &q5, 1, &m_gamma5(), &DirectTraces).unwrap(),
        r_ideal_for_curve(&e, &q7, 1, &m_gamma7(), &DirectTraces).unwrap(),
    ];
    let sieve = vec![sieve_prime(&e, 5, &DirectTraces).unwrap()];
    let report = assemble(&e, sieve, Vec::new(), r, &FactorConfig::default()).unwrap();
    assert_eq!(report.intersection, DivisorSet::Primes(primes(&[2, 3, 5, 7, 11, 13, 193])));
    let DivisorSet::Primes(c) = &report.candidates else { panic!("infinite candidate set") };
    assert!(primes(&[2, 3, 5, 7, 11, 13, 193]).is_subset(c));
}

#[test]
fn q_sqrt2_pipeline() {
    let e = q_sqrt2();
    let mut report = exceptional_candidates(&e, &[11, 13], &DirectTraces, &FactorConfig::default()).unwrap();
    assert_eq!(report.screening_primes, primes(&[2, 3, 5, 7, 17, 23, 79]));
    assert_eq!(report.intersection, DivisorSet::Primes(primes(&[2, 3, 5, 7, 13])));
    let norm = e.discriminant_norm().unwrap();
    assert_eq!(factorize(&norm).unwrap().to_string(), "-2^25 * 3^18 * 5^4 * 7^2 * 17^15 * 23^6 * 79^6");
    eliminate(&e, &mut report, 50, &DirectTraces).unwrap();
    assert_eq!(report.undecided(), primes(&[13]));
    let sqrt2 = e.field().theta();
    assert!(isosieve_core::criteria::x0_witness(&e, 13, &sqrt2).unwrap());
    report.record_witness(&BigUint::from(13u32), "X_0(13) at sqrt 2").unwrap();
    assert_eq!(report.witnessed(), primes(&[13]));
    assert_eq!(report.eliminated(), primes(&[2, 3, 5, 7, 17, 23, 79]));
}

#[test]
fn q_i_pipeline_eliminates_everything() {
    let e = q_i();
    let mut report = exceptional_candidates(&e, &[5, 7], &DirectTraces, &FactorConfig::default()).unwrap();
    eliminate(&e, &mut report, 10, &DirectTraces).unwrap();
    for p in [2u32, 3, 5, 11] {
        assert!(matches!(report.statuses[&BigUint::from(p)], CandidateStatus::Eliminated(_)), "{p}");
    }
    eliminate(&e, &mut report, 100, &DirectTraces).unwrap();
    assert!(report.undecided().is_empty());
    assert!(report.witnessed().is_empty());
}

#[test]
fn cubic_pipeline_eliminates_everything() {
    let e = cubic();
    let mut report =
        exceptional_candidates(&e, &[17, 19, 37], &DirectTraces, &FactorConfig::default()).unwrap();
    assert_eq!(report.intersection, DivisorSet::Primes(primes(&[2, 3, 5])));
    eliminate(&e, &mut report, 60, &DirectTraces).unwrap();
    assert!(report.undecided().is_empty());
}

#[test]
fn elimination_certificates_from_the_examples() {
    // P_3 = X^2 + 3X + 9 over Q(i) settles 2, 5 and 11.
    let e = q_i();
    let report = {
        let mut r = exceptional_candidates(&e, &[5, 7], &DirectTraces, &FactorConfig::default()).unwrap();
        eliminate(&e, &mut r, 10, &DirectTraces).unwrap();
        r
    };
    for p in [2u32, 5, 11] {
        let CandidateStatus::Eliminated(c) = &report.statuses[&BigUint::from(p)] else { panic!() };
        assert_eq!(c.ideal.ell, 3);
        assert_eq!(c.frobenius_poly, IntPoly::from_i64s(&[9, 3, 1]));
    }
    let CandidateStatus::Eliminated(c) = &report.statuses[&BigUint::from(3u32)] else { panic!() };
    assert_eq!(c.ideal.ell, 5);
}

#[test]
fn p_ell_star_from_frobenius_data() {
    let e = q_i();
    let fd: Vec<_> = e
        .field()
        .factor_prime(5)
        .unwrap()
        .iter()
        .map(|q| e.trace_of_frobenius(q).unwrap())
        .collect();
    let p = p_ell_star(&fd).unwrap();
    assert_eq!(p.deg(), 4);
    assert_eq!(p.constant_term(), BigInt::from(5).pow(48));
}

#[test]
fn witnesses_of_exceptional_primes() {
    use isosieve_core::criteria::{reduced_forms, two_torsion_witness, x0_witness};
    let e = q_sqrt2();
    assert!(x0_witness(&e, 13, &e.field().theta()).unwrap());
    assert!(!x0_witness(&e, 3, &e.field().theta()).unwrap());

    let e = q_sqrt3();
    let k = e.field();
    assert!(x0_witness(&e, 3, &elt(k, &[243, -162])).unwrap());
    assert!(!x0_witness(&e, 3, &k.one()).unwrap());
    assert!(matches!(
        x0_witness(&e, 3, &k.zero()),
        Err(isosieve_core::Error::DivisionByZero)
    ));
    assert_eq!(*e.j_invariant(), elt(k, &[76_771_008, -44_330_496]));
    let m = k.min_poly(e.j_invariant()).unwrap().to_int_poly().unwrap();
    assert_eq!(m, IntPoly::from_i64s(&[-1_790_957_481_984, -153_542_016, 1]));
    assert!(two_torsion_witness(&e, &elt(k, &[-420, -224]), &elt(k, &[15288, 4704])));
    assert!(!two_torsion_witness(&e, &elt(k, &[-420, -224]), &elt(k, &[15288, 4705])));

    let e = q_sqrt5();
    let k = e.field();
    assert!(two_torsion_witness(&e, &k.zero(), &k.zero()));

    assert_eq!(reduced_forms(-36).unwrap(), vec![(1, 0, 9), (2, 2, 5)]);
}

#[test]
fn q_sqrt13_elimination_by_p_q3() {
    // P_q3 = X^2 + 3X + 3 is irreducible mod 2 and mod 17.
    use isosieve_core::finfield::is_irreducible_mod_p;
    let p = IntPoly::from_i64s(&[3, 3, 1]);
    assert!(is_irreducible_mod_p(&p, &BigUint::from(2u32)).unwrap());
    assert!(is_irreducible_mod_p(&p, &BigUint::from(17u32)).unwrap());
    let e = q_sqrt13();
    for q in e.field().factor_prime(3).unwrap() {
        assert_eq!(e.trace_of_frobenius(&q).unwrap().frobenius_poly, p);
    }
}

#[test]
fn q_sqrt5_mod_3_certificate() {
    // t_7 = -12 gives P_7 = X^2 + 12X + 49 = X^2 + 1 mod 3.
    let e = q_sqrt5();
    let q7 = e.field().factor_prime(7).unwrap().remove(0);
    let fd = e.trace_of_frobenius(&q7).unwrap();
    assert_eq!(fd.frobenius_poly, IntPoly::from_i64s(&[49, 12, 1]));
    use isosieve_core::finfield::is_irreducible_mod_p;
    assert!(is_irreducible_mod_p(&fd.frobenius_poly, &BigUint::from(3u32)).unwrap());
}
