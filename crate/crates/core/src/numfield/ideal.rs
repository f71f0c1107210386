use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{KElement, NumberField};
use crate::error::{Error, Result};
use crate::finfield::{factor_mod_p, reduce_bigint, FiniteField, FpPoly, FqElement};
use crate::intpoly::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdealSource {
    Computed,
    Override,
}

/// A prime ideal `(ell, g(theta))` above `ell`, with its residue field
/// `F_ell[t]/(g)`.
#[derive(Clone, Debug)]
pub struct PrimeIdealData {
    pub ell: u64,
    /// Monic, irreducible mod `ell`, coefficients in `[0, ell)`.
    pub local_gen: IntPoly,
    pub ramification: usize,
    pub residue_degree: usize,
    pub source: IdealSource,
    residue_field: Arc<FiniteField>,
}

impl PartialEq for PrimeIdealData {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell
            && self.local_gen == other.local_gen
            && self.ramification == other.ramification
            && self.residue_degree == other.residue_degree
    }
}

impl Eq for PrimeIdealData {}

impl PrimeIdealData {
    /// Ideal data with `g` reduced mod `ell` and checked irreducible there.
    pub fn new(ell: u64, local_gen: &IntPoly, ramification: usize, source: IdealSource) -> Result<Self> {
        let g = FpPoly::from_int_poly(local_gen, ell).monic();
        let residue_field = FiniteField::new(g.clone())?;
        if ramification == 0 {
            return Err(Error::Invalid("ramification index must be positive".into()));
        }
        Ok(PrimeIdealData {
            ell,
            local_gen: g.to_int_poly(),
            ramification,
            residue_degree: g.deg(),
            source,
            residue_field,
        })
    }

    /// `N(q) = ell^f`.
    pub fn norm(&self) -> BigInt {
        BigInt::from(self.ell).pow(self.residue_degree as u32)
    }

    pub fn residue_field(&self) -> &Arc<FiniteField> {
        &self.residue_field
    }
}

impl fmt::Display for PrimeIdealData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) e={} f={}",
            self.ell,
            self.local_gen.to_string().replace('X', "t"),
            self.ramification,
            self.residue_degree
        )
    }
}

impl NumberField {
    /// Dedekind's criterion: whether `ell` does not divide `[O_K : Z[theta]]`.
    pub fn dedekind_index_test(&self, ell: u64) -> Result<bool> {
        let f = self.defining_poly();
        let factors = factor_mod_p(f, ell)?;
        let p = BigInt::from(ell);
        let lift = |g: &FpPoly| g.to_int_poly();
        // f = G H mod ell with G the radical and H = f / G.
        let mut g_rad = FpPoly::one(ell);
        let mut h = FpPoly::one(ell);
        let mut gh = IntPoly::one();
        for (g, m) in &factors {
            g_rad = g_rad.mul(g);
            for _ in 1..*m {
                h = h.mul(g);
            }
            gh = &gh * &lift(g).pow(*m);
        }
        let diff = f - &gh;
        if diff.coeffs().iter().any(|c| !c.is_multiple_of(&p)) {
            return Err(Error::InternalInconsistency(format!(
                "factorization of {f} mod {ell} does not reassemble"
            )));
        }
        let big_f = IntPoly::new(diff.coeffs().iter().map(|c| c / &p).collect());
        let big_f = FpPoly::from_int_poly(&big_f, ell);
        let common = big_f.gcd(&g_rad).gcd(&h);
        Ok(common.is_one())
    }

    /// The prime ideals above `ell`, from an override if one is registered,
    /// otherwise by Dedekind factorization of `f` mod `ell`.
    pub fn factor_prime(&self, ell: u64) -> Result<Vec<PrimeIdealData>> {
        if let Some(ideals) = self.overrides().get(&ell) {
            return Ok(ideals.clone());
        }
        if !self.dedekind_index_test(ell)? {
            return Err(Error::IndexDivisor(ell));
        }
        let ideals = factor_mod_p(self.defining_poly(), ell)?
            .into_iter()
            .map(|(g, e)| PrimeIdealData::new(ell, &g.to_int_poly(), e as usize, IdealSource::Computed))
            .collect::<Result<Vec<_>>>()?;
        let total: usize = ideals.iter().map(|q| q.ramification * q.residue_degree).sum();
        if total != self.degree() {
            return Err(Error::InternalInconsistency(format!(
                "sum of e*f above {ell} is {total}, expected {}",
                self.degree()
            )));
        }
        Ok(ideals)
    }

    /// Image of `x` in `O_K / q`, sending `theta` to `t`.
    pub fn residue_reduction(&self, q: &PrimeIdealData, x: &KElement) -> Result<FqElement> {
        let ell = q.ell;
        let den = reduce_bigint(x.denominator(), ell);
        if den.is_zero() {
            return Err(Error::NotLIntegral(ell));
        }
        let field = q.residue_field();
        let num = field.from_poly(&FpPoly::from_int_poly(x.numerator(), ell));
        num.mul(&field.from_u64(den).inv()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedekind_examples() {
        let qi = NumberField::from_i64s(&[1, 0, 1], -4).unwrap();
        assert!(qi.dedekind_index_test(5).unwrap());
        assert!(qi.dedekind_index_test(2).unwrap());
        let q2 = NumberField::from_i64s(&[-2, 0, 1], 8).unwrap();
        assert!(q2.dedekind_index_test(7).unwrap());
        // Z[sqrt(-3)] has index 2.
        let k = NumberField::from_i64s(&[3, 0, 1], -3).unwrap();
        assert!(!k.dedekind_index_test(2).unwrap());
        assert!(k.dedekind_index_test(3).unwrap());
        let biq = NumberField::from_i64s(&[1, 0, 5, 0, 1], 441).unwrap();
        assert!(!biq.dedekind_index_test(2).unwrap());
        assert!(biq.dedekind_index_test(3).unwrap());
        assert!(biq.dedekind_index_test(7).unwrap());
        assert!(matches!(biq.factor_prime(2), Err(Error::IndexDivisor(2))));
    }

    #[test]
    fn factor_prime_examples() {
        let qi = NumberField::from_i64s(&[1, 0, 1], -4).unwrap();
        let ideals = qi.factor_prime(5).unwrap();
        assert_eq!(ideals.len(), 2);
        assert!(ideals.iter().all(|q| q.ramification == 1 && q.residue_degree == 1));
        let q5 = NumberField::from_i64s(&[-1, -1, 1], 5).unwrap();
        let ideals = q5.factor_prime(7).unwrap();
        assert_eq!((ideals.len(), ideals[0].residue_degree), (1, 2));
        let biq = NumberField::from_i64s(&[1, 0, 5, 0, 1], 441).unwrap();
        let ideals = biq.factor_prime(5).unwrap();
        assert_eq!(ideals.len(), 2);
        assert!(ideals.iter().all(|q| q.ramification == 1 && q.residue_degree == 2));
        let ideals = biq.factor_prime(7).unwrap();
        assert_eq!(ideals.len(), 2);
        assert!(ideals.iter().all(|q| q.ramification == 2 && q.residue_degree == 1));
        let ideals = biq.factor_prime(3).unwrap();
        assert_eq!(ideals.len(), 1);
        assert_eq!((ideals[0].ramification, ideals[0].residue_degree), (2, 2));
    }

    #[test]
    fn residue_examples() {
        let qi = NumberField::from_i64s(&[1, 0, 1], -4).unwrap();
        let ideals = qi.factor_prime(5).unwrap();
        let q = ideals.iter().find(|q| q.local_gen == IntPoly::from_i64s(&[3, 1])).unwrap();
        let r = qi.residue_reduction(q, &qi.theta()).unwrap();
        assert_eq!(r.coords(), &[2]);
        let quarter = qi.element_i64s(&[1], 4).unwrap();
        assert_eq!(qi.residue_reduction(q, &quarter).unwrap().coords(), &[4]);
        let fifth = qi.element_i64s(&[1], 5).unwrap();
        assert!(matches!(qi.residue_reduction(q, &fifth), Err(Error::NotLIntegral(5))));
    }
}
