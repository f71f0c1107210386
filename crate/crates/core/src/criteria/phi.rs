//! Irreducibility predicates from the order of the semistability defect
//! `Phi_q` at a prime of additive, potentially good reduction.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiInput {
    pub ell: u64,
    pub residue_degree: u32,
    pub phi_order: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiConclusion {
    /// `E[p]` is irreducible for every `p >= 5`.
    IrreducibleAllPGe5,
    /// `E[p]` is irreducible for every `p >= 3` other than `ell`.
    IrreducibleAllPGe3ExceptEll,
    NoConclusion,
}

impl fmt::Display for PhiConclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhiConclusion::IrreducibleAllPGe5 => "irreducible for all p >= 5",
            PhiConclusion::IrreducibleAllPGe3ExceptEll => "irreducible for all p >= 3 except ell",
            PhiConclusion::NoConclusion => "no conclusion",
        })
    }
}

fn legal_orders(ell: u64) -> &'static [u32] {
    match ell {
        2 => &[2, 3, 4, 6, 8, 12, 24],
        3 => &[2, 3, 4, 6, 12],
        _ => &[2, 3, 4, 6],
    }
}

pub fn phi_uniform_test(input: PhiInput) -> Result<PhiConclusion> {
    let PhiInput { ell, residue_degree: f, phi_order: n } = input;
    if !is_prime_u64(ell) {
        return Err(Error::Invalid(format!("{ell} is not prime")));
    }
    if f == 0 {
        return Err(Error::Invalid("residue degree must be positive".into()));
    }
    if !legal_orders(ell).contains(&n) {
        return Err(Error::IllegalPhiOrder { ell, order: n });
    }
    let f_odd = f % 2 == 1;
    let non_cyclic = (ell == 2 && (n == 8 || n == 24)) || (ell == 3 && n == 12);
    if non_cyclic || (ell == 2 && (n == 3 || n == 6) && f_odd) || (ell == 3 && n == 4 && f_odd) {
        return Ok(PhiConclusion::IrreducibleAllPGe5);
    }
    // |Phi| divides N^k (N - 1) for some k iff its prime-to-ell part divides N - 1.
    let mut prime_to_ell = n as u64;
    while prime_to_ell.is_multiple_of(ell) {
        prime_to_ell /= ell;
    }
    let n_minus_one = BigUint::from(ell).pow(f) - BigUint::one();
    if !(n_minus_one % prime_to_ell).is_zero() {
        return Ok(PhiConclusion::IrreducibleAllPGe3ExceptEll);
    }
    Ok(PhiConclusion::NoConclusion)
}

/// `|Phi_q| = 12 / gcd(v, 12)` for `ell >= 5`, where `v` is the valuation of
/// the minimal discriminant at `q`. The valuation is taken on trust.
pub fn phi_order_from_valuation(ell: u64, v: u32) -> Result<u32> {
    if ell < 5 {
        return Err(Error::Invalid(format!(
            "|Phi| at residue characteristic {ell} is not determined by the discriminant valuation"
        )));
    }
    Ok(12 / v.gcd(&12))
}
