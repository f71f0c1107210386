//! Inputs shared by the benchmarks.

use std::sync::Arc;

use isosieve_core::ellcurve::CurveModel;
use isosieve_core::intpoly::IntPoly;
use isosieve_core::numfield::NumberField;

/// `y^2 = x^3 + 2(3 + 2i) x + 2(3 + 2i)` over `Q(i)`.
pub fn curve_over_q_i() -> CurveModel {
    let k = Arc::new(NumberField::from_i64s(&[1, 0, 1], -4).expect("Q(i)"));
    let c = k.element_i64s(&[6, 4], 1).expect("element");
    CurveModel::short(k, c.clone(), c).expect("nonsingular")
}

/// `y^2 = x^3 + 2(1 + a)^2 x + 24 a (2 + a)` over the cubic field of
/// discriminant 81.
pub fn curve_over_cubic() -> CurveModel {
    let k = Arc::new(NumberField::from_i64s(&[1, -3, 0, 1], 81).expect("cubic field"));
    let a4 = k.element_i64s(&[2, 4, 2], 1).expect("element");
    let a6 = k.element_i64s(&[0, 48, 24], 1).expect("element");
    CurveModel::short(k, a4, a6).expect("nonsingular")
}

/// `X^2 - t X + q`.
pub fn frobenius_poly(t: i64, q: i64) -> IntPoly {
    IntPoly::from_i64s(&[q, -t, 1])
}
