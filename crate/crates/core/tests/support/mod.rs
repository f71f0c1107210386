//! Curves and fields from the worked examples, shared by the test targets.
#![allow(dead_code)]

pub mod newton;

use std::sync::Arc;

use isosieve_core::ellcurve::CurveModel;
use isosieve_core::intpoly::IntPoly;
use isosieve_core::numfield::{KElement, NumberField};
use num_bigint::BigInt;
use num_traits::One;

pub fn field(coeffs: &[i64], disc: i64) -> Arc<NumberField> {
    Arc::new(NumberField::from_i64s(coeffs, disc).unwrap())
}

pub fn elt(k: &NumberField, coords: &[i64]) -> KElement {
    k.element_i64s(coords, 1).unwrap()
}

pub fn big_elt(k: &NumberField, coords: &[&str]) -> KElement {
    let c = coords.iter().map(|s| s.parse::<BigInt>().unwrap()).collect();
    k.element(IntPoly::new(c), BigInt::one()).unwrap()
}

pub fn short(k: &Arc<NumberField>, a4: KElement, a6: KElement) -> CurveModel {
    CurveModel::short(Arc::clone(k), a4, a6).unwrap()
}

/// `prod p^e`.
pub fn factored(pairs: &[(u64, u32)]) -> BigInt {
    pairs
        .iter()
        .fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e))
}

/// `y^2 = x^3 + 2x^2 + omega x` over `Q(sqrt 5)`.
pub fn q_sqrt5() -> CurveModel {
    let k = field(&[-1, -1, 1], 5);
    let z = k.zero();
    CurveModel::new(Arc::clone(&k), [z.clone(), k.from_int(2), z.clone(), k.theta(), z]).unwrap()
}

/// `y^2 = x^3 - (313 + 240 omega) x - 17` over `Q(sqrt 13)`.
pub fn q_sqrt13() -> CurveModel {
    let k = field(&[-3, -1, 1], 13);
    short(&k, elt(&k, &[-313, -240]), elt(&k, &[-17]))
}

/// `y^2 = x^3 + 2(3 + 2i) x + 2(3 + 2i)` over `Q(i)`.
pub fn q_i() -> CurveModel {
    let k = field(&[1, 0, 1], -4);
    short(&k, elt(&k, &[6, 4]), elt(&k, &[6, 4]))
}

/// The curve over `Q(sqrt 2)` with a 13-isogeny.
pub fn q_sqrt2() -> CurveModel {
    let k = field(&[-2, 0, 1], 8);
    let c = BigInt::from(-663_255); // -3^3 5 17^3
    let a4 = k
        .element(
            IntPoly::new(vec![&c * BigInt::from(428_525), &c * BigInt::from(303_032)]),
            BigInt::one(),
        )
        .unwrap();
    let c = BigInt::from(1_326_510); // 2 3^3 5 17^3
    let a6 = k
        .element(
            IntPoly::new(vec![&c * BigInt::from(62_176_502_533i64), &c * BigInt::from(43_965_551_956i64)]),
            BigInt::one(),
        )
        .unwrap();
    short(&k, a4, a6)
}

/// The CM curve over `Q(sqrt 3)` with `a1, a4, a6` nonzero.
pub fn q_sqrt3() -> CurveModel {
    let k = field(&[-3, 0, 1], 12);
    let z = k.zero();
    let a = [
        elt(&k, &[252, -112]),
        z.clone(),
        z,
        elt(&k, &[10584, 11466]),
        elt(&k, &[-24_202_080, 15_616_104]),
    ];
    CurveModel::new(Arc::clone(&k), a).unwrap()
}

/// `y^2 = x^3 + 2(1 + a)^2 x + 24 a (2 + a)` over `Q(2 cos(2 pi / 9))`.
pub fn cubic() -> CurveModel {
    let k = field(&[1, -3, 0, 1], 81);
    short(&k, elt(&k, &[2, 4, 2]), elt(&k, &[0, 48, 24]))
}

/// The Q-curve over `Q(sqrt -3, sqrt -7)`, with `theta` a root of
/// `X^4 + 5X^2 + 1`.
pub fn biquadratic() -> CurveModel {
    let k = field(&[1, 0, 5, 0, 1], 441);
    let a4 = k.element_i64s(&[-648, 81, -1377, -567], 2).unwrap();
    let a6 = elt(&k, &[-3726, 1944, -14904, 4860]);
    short(&k, a4, a6)
}

/// The same curve after `(x, y) -> (9x + 9r, 27y)` with `r = (1 + theta^2)/3`:
/// a model with good reduction at the prime above 3.
pub fn biquadratic_good_at_3() -> CurveModel {
    let k = field(&[1, 0, 5, 0, 1], 441);
    let z = k.zero();
    let a = [
        z.clone(),
        elt(&k, &[1, 0, 1]),
        z,
        k.element_i64s(&[-8, 1, -19, -7], 2).unwrap(),
        k.element_i64s(&[-7, 8, -20, 23], 2).unwrap(),
    ];
    CurveModel::new(Arc::clone(&k), a).unwrap()
}

pub fn m_gamma5() -> IntPoly {
    IntPoly::from_i64s(&[25, 0, 17, 0, 1])
}

pub fn m_gamma7() -> IntPoly {
    IntPoly::from_i64s(&[7, 14, 11, 4, 1])
}
