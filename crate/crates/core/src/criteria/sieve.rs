//! The polynomials `P_ell^*`, the sieve integers `B_ell`, and the closed
//! forms available over quadratic fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::TraceSource;
use crate::ellcurve::{CurveModel, FrobeniusData};
use crate::error::{Error, Result};
use crate::intpoly::{adams, lucas_v, star, IntPoly};

/// Everything computed at one sieve prime.
#[derive(Clone, Debug)]
pub struct SieveResult {
    pub ell: u64,
    pub frobenius: Vec<FrobeniusData>,
    pub p_ell_star: IntPoly,
    /// `P_ell^*(ell^{12k})` for `k = 0..=d/2`.
    pub values: Vec<BigInt>,
    pub b_ell: BigInt,
    pub fast_path: Option<QuadraticFastPath>,
}

impl SieveResult {
    /// The integer whose prime divisors form the sieve set at `ell`. For
    /// `d = 1` the criterion says nothing about `p = ell`, so `ell` joins.
    pub fn sieve_integer(&self, d: usize) -> BigInt {
        if d == 1 {
            &self.b_ell * BigInt::from(self.ell)
        } else {
            self.b_ell.clone()
        }
    }
}

/// Frobenius data at every ideal above `ell`, after checking the screen
/// `ell ∤ N(disc)`.
pub fn frobenius_above(curve: &CurveModel, ell: u64, source: &dyn TraceSource) -> Result<Vec<FrobeniusData>> {
    if !curve.good_reduction_at(ell)? {
        return Err(Error::BadReductionPrime(ell));
    }
    curve
        .field()
        .factor_prime(ell)?
        .iter()
        .map(|q| source.frobenius(curve, q))
        .collect()
}

/// `P_ell^*`: the composed product over `q | ell` of `P_q^{(12 e_q)}`.
pub fn p_ell_star(frobenius: &[FrobeniusData]) -> Result<IntPoly> {
    let mut acc = IntPoly::psi(1);
    for fd in frobenius {
        let twisted = adams(&fd.frobenius_poly, 12 * fd.ideal.ramification)?;
        acc = star(&acc, &twisted)?;
    }
    Ok(acc)
}

/// Degree `2^g`, constant term `ell^{12 d 2^{g-1}}`, and the weighted
/// palindrome `a_i = a_{n-i} M^{n-2i}` with `M = ell^{6d}`.
pub fn check_p_ell_star(poly: &IntPoly, ell: u64, d: usize, g: usize) -> Result<()> {
    let fail = |what: &str| Err(Error::InternalInconsistency(format!("P_{ell}^*: {what}")));
    let n = 1usize << g;
    if poly.degree() != Some(n) || !poly.is_monic() {
        return fail("wrong degree");
    }
    let ell_big = BigInt::from(ell);
    if poly.constant_term() != ell_big.pow((12 * d * (n / 2)) as u32) {
        return fail("wrong constant term");
    }
    let m = ell_big.pow(6 * d as u32);
    for i in 0..n / 2 {
        if poly.coeff(i) != poly.coeff(n - i) * m.pow((n - 2 * i) as u32) {
            return fail("weighted palindrome broken");
        }
    }
    Ok(())
}

/// `P_ell^*(ell^{12k})` for `k = 0..=d/2`.
pub fn sieve_values(poly: &IntPoly, ell: u64, d: usize) -> Result<Vec<BigInt>> {
    let ell_big = BigInt::from(ell);
    let mut out = Vec::with_capacity(d / 2 + 1);
    for k in 0..=d / 2 {
        let v = poly.eval(&ell_big.pow(12 * k as u32));
        if k >= 1 && !v.is_multiple_of(&ell_big) {
            return Err(Error::InternalInconsistency(format!(
                "P_{ell}^*({ell}^{}) is not divisible by {ell}",
                12 * k
            )));
        }
        out.push(v);
    }
    Ok(out)
}

/// All sieve data at `ell` for an integral model.
pub fn sieve_prime(curve: &CurveModel, ell: u64, source: &dyn TraceSource) -> Result<SieveResult> {
    let d = curve.field().degree();
    let frobenius = frobenius_above(curve, ell, source)?;
    let poly = p_ell_star(&frobenius)?;
    check_p_ell_star(&poly, ell, d, frobenius.len())?;
    let values = sieve_values(&poly, ell, d)?;
    let b_ell = values.iter().fold(BigInt::one(), |acc, v| acc * v);
    let fast_path = if d == 2 {
        let fast = quadratic_fast_path(&frobenius, ell, d)?;
        if fast.p_ell_star != poly {
            return Err(Error::InternalInconsistency(format!(
                "quadratic closed form disagrees with the resultant path at {ell}"
            )));
        }
        Some(fast)
    } else {
        None
    };
    Ok(SieveResult { ell, frobenius, p_ell_star: poly, values, b_ell, fast_path })
}

/// `B_ell = prod_{k=0}^{d/2} P_ell^*(ell^{12k})`.
pub fn b_ell(curve: &CurveModel, ell: u64, source: &dyn TraceSource) -> Result<BigInt> {
    Ok(sieve_prime(curve, ell, source)?.b_ell)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    Ramified,
    Inert,
    Split,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Ramified => "ramified",
            Splitting::Inert => "inert",
            Splitting::Split => "split",
        })
    }
}

/// Why `P_ell^*(ell^{12})` vanishes over a quadratic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanishingReason {
    /// `t_q ≡ 0 mod ell` (ramified or inert).
    Supersingular,
    /// `t_1 = ±t_2`.
    EqualTraces,
    /// `t_1^2 + t_2^2 ± t_1 t_2 = 3 ell`.
    ThreeEll,
    /// `t_1^2 + t_2^2 = 4 ell`.
    FourEll,
}

impl fmt::Display for VanishingReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VanishingReason::Supersingular => "supersingular reduction",
            VanishingReason::EqualTraces => "t1 = ±t2",
            VanishingReason::ThreeEll => "t1^2 + t2^2 ± t1 t2 = 3 ell",
            VanishingReason::FourEll => "t1^2 + t2^2 = 4 ell",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFastPath {
    pub splitting: Splitting,
    pub p_ell_star: IntPoly,
    /// `P_ell^*(ell^{12})` from the factored closed form.
    pub value_at_ell12: BigInt,
    pub vanishing: Option<VanishingReason>,
}

/// `P_ell^*` over a quadratic field from Lucas sequences, with
/// `P_ell^*(ell^{12})` from its factored closed form.
pub fn quadratic_fast_path(frobenius: &[FrobeniusData], ell: u64, d: usize) -> Result<QuadraticFastPath> {
    if d != 2 {
        return Err(Error::WrongDegree { expected: 2, found: d });
    }
    let l = BigInt::from(ell);
    let n12 = l.pow(12);
    let sq = |x: &BigInt| x * x;
    let (splitting, poly, value, vanishing) = match frobenius {
        [fd] if fd.ideal.ramification == 2 => {
            let t = &fd.trace;
            let poly = IntPoly::new(vec![l.pow(24), -lucas_v(24, t, &l), BigInt::one()]);
            let t2 = sq(t);
            let value = -&n12
                * &t2
                * sq(&(&t2 - &l))
                * (&t2 - &l * 4)
                * sq(&(&t2 - &l * 2))
                * sq(&(&t2 - &l * 3))
                * sq(&(sq(&t2) - &l * 4 * &t2 + sq(&l)));
            let vanishing = t.is_multiple_of(&l).then_some(VanishingReason::Supersingular);
            (Splitting::Ramified, poly, value, vanishing)
        }
        [fd] if fd.ideal.residue_degree == 2 => {
            let t = &fd.trace;
            let l2 = sq(&l);
            let poly = IntPoly::new(vec![l.pow(24), -lucas_v(12, t, &l2), BigInt::one()]);
            let t2 = sq(t);
            let value = -&n12
                * &t2
                * sq(&(&t2 - &l2))
                * (&t2 - &l2 * 4)
                * sq(&(&t2 - &l2 * 3));
            let vanishing = t.is_multiple_of(&l).then_some(VanishingReason::Supersingular);
            (Splitting::Inert, poly, value, vanishing)
        }
        [f1, f2] => {
            let (t1, t2) = (&f1.trace, &f2.trace);
            let (u1, u2) = (lucas_v(12, t1, &l), lucas_v(12, t2, &l));
            let n = &n12;
            let poly = IntPoly::new(vec![
                n.pow(4),
                -(n * n) * &u1 * &u2,
                n * (sq(&u1) + sq(&u2)) - BigInt::from(2) * n * n,
                -(&u1 * &u2),
                BigInt::one(),
            ]);
            let (s1, s2) = (sq(t1), sq(t2));
            let sum = &s1 + &s2;
            let prod = &s1 * &s2;
            let value = l.pow(36)
                * sq(&(&s1 - &s2))
                * sq(&(sq(&(&sum - &l * 3)) - &prod))
                * sq(&(&sum - &l * 4))
                * sq(&(sq(&(&sum - &l)) - &prod * 3));
            let t1t2 = t1 * t2;
            let vanishing = if s1 == s2 {
                Some(VanishingReason::EqualTraces)
            } else if &sum + &t1t2 == &l * 3 || &sum - &t1t2 == &l * 3 {
                Some(VanishingReason::ThreeEll)
            } else if sum == &l * 4 {
                Some(VanishingReason::FourEll)
            } else {
                None
            };
            (Splitting::Split, poly, value, vanishing)
        }
        _ => {
            return Err(Error::Invalid(format!(
                "ideals above {ell} do not match a quadratic splitting type"
            )))
        }
    };
    if poly.eval(&n12) != value {
        return Err(Error::InternalInconsistency(format!(
            "closed form of P_{ell}^*({ell}^12) disagrees with direct evaluation ({splitting})"
        )));
    }
    if value.is_zero() != vanishing.is_some() {
        return Err(Error::InternalInconsistency(format!(
            "vanishing of P_{ell}^*({ell}^12) not explained by a known condition"
        )));
    }
    Ok(QuadraticFastPath { splitting, p_ell_star: poly, value_at_ell12: value, vanishing })
}
