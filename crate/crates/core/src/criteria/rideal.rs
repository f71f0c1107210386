//! The integer `R_q` attached to a prime ideal `q` with `q^h = (gamma)`.

use num_bigint::BigInt;
use num_traits::One;

use super::TraceSource;
use crate::ellcurve::{CurveModel, FrobeniusData};
use crate::error::{Error, Result};
use crate::intpoly::{adams, resultant, star_pow, IntPoly};
use crate::numfield::PrimeIdealData;

#[derive(Clone, Debug)]
pub struct RIdealResult {
    pub frobenius: FrobeniusData,
    pub h: u32,
    pub m_gamma: IntPoly,
    /// `P_q^{(12h)}`.
    pub p_twisted: IntPoly,
    /// `m_gamma^{(12)}`.
    pub m_twisted: IntPoly,
    /// `Res(P_q^{(12h)}, (m_gamma^{(12)})^{*k})` for `k = 0..=d/2`.
    pub factors: Vec<BigInt>,
    pub value: BigInt,
}

/// `R_q = prod_{k=0}^{d/2} Res(P_q^{(12h)}, (m_gamma^{(12)})^{*k})`.
///
/// `m_gamma` must be monic with `|m_gamma(0)|^{d / deg m_gamma} = N(q)^h`.
pub fn r_ideal(frobenius: &FrobeniusData, h: u32, m_gamma: &IntPoly, d: usize) -> Result<RIdealResult> {
    if !m_gamma.in_monoid() {
        return Err(Error::NotInMonoid);
    }
    if h == 0 {
        return Err(Error::Invalid("class exponent h must be positive".into()));
    }
    let r = m_gamma.deg();
    if !d.is_multiple_of(r) {
        return Err(Error::Invalid(format!(
            "minimal polynomial of degree {r} cannot belong to a field of degree {d}"
        )));
    }
    let found = m_gamma.constant_term().magnitude().pow((d / r) as u32);
    let expected = frobenius.norm.magnitude().pow(h);
    if found != expected {
        return Err(Error::NormMismatch { found, expected });
    }
    let p_twisted = adams(&frobenius.frobenius_poly, 12 * h as usize)?;
    let m_twisted = adams(m_gamma, 12)?;
    let mut factors = Vec::with_capacity(d / 2 + 1);
    for k in 0..=d / 2 {
        factors.push(resultant(&p_twisted, &star_pow(&m_twisted, k as u32)?)?);
    }
    let value = factors.iter().fold(BigInt::one(), |acc, v| acc * v);
    Ok(RIdealResult {
        frobenius: frobenius.clone(),
        h,
        m_gamma: m_gamma.clone(),
        p_twisted,
        m_twisted,
        factors,
        value,
    })
}

/// [`r_ideal`] at an ideal of `curve`. Only the norm condition on
/// `m_gamma` can be checked; that `gamma` generates `q^h` is asserted.
pub fn r_ideal_for_curve(
    curve: &CurveModel,
    q: &PrimeIdealData,
    h: u32,
    m_gamma: &IntPoly,
    source: &dyn TraceSource,
) -> Result<RIdealResult> {
    if !curve.good_reduction_at(q.ell)? {
        return Err(Error::BadReductionPrime(q.ell));
    }
    let frobenius = source.frobenius(curve, q)?;
    r_ideal(&frobenius, h, m_gamma, curve.field().degree())
}
