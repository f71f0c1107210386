//! Weierstrass models over a number field, their reductions at prime ideals
//! and traces of Frobenius by point counting.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::finfield::{count_quadratic_roots, FiniteField, FqElement, MAX_EVEN_ENUMERATION};
use crate::intpoly::IntPoly;
use crate::numfield::{KElement, NumberField, PrimeIdealData};

/// Largest odd-characteristic residue field whose points are counted.
pub const MAX_ODD_COUNT: u64 = 1 << 20;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over `K`, with the
/// standard invariants precomputed.
#[derive(Clone, Debug)]
pub struct CurveModel {
    field: Arc<NumberField>,
    a: [KElement; 5],
    b2: KElement,
    b4: KElement,
    b6: KElement,
    b8: KElement,
    c4: KElement,
    c6: KElement,
    disc: KElement,
    j: KElement,
}

impl CurveModel {
    /// Builds the model from `[a1, a2, a3, a4, a6]`.
    pub fn new(field: Arc<NumberField>, a: [KElement; 5]) -> Result<Self> {
        let k = &*field;
        let [a1, a2, a3, a4, a6] = &a;
        let int = |c: i64| k.from_int(c);
        let m = |x: &KElement, y: &KElement| k.mul(x, y);
        let b2 = k.add(&m(a1, a1), &m(&int(4), a2));
        let b4 = k.add(&m(&int(2), a4), &m(a1, a3));
        let b6 = k.add(&m(a3, a3), &m(&int(4), a6));
        let b8 = {
            let t1 = m(&m(a1, a1), a6);
            let t2 = m(&int(4), &m(a2, a6));
            let t3 = m(&m(a1, a3), a4);
            let t4 = m(a2, &m(a3, a3));
            let t5 = m(a4, a4);
            k.sub(&k.add(&k.sub(&k.add(&t1, &t2), &t3), &t4), &t5)
        };
        let c4 = k.sub(&m(&b2, &b2), &m(&int(24), &b4));
        let c6 = {
            let t1 = k.neg(&m(&b2, &m(&b2, &b2)));
            let t2 = m(&int(36), &m(&b2, &b4));
            let t3 = m(&int(216), &b6);
            k.sub(&k.add(&t1, &t2), &t3)
        };
        let disc = {
            let t1 = k.neg(&m(&m(&b2, &b2), &b8));
            let t2 = m(&int(8), &m(&b4, &m(&b4, &b4)));
            let t3 = m(&int(27), &m(&b6, &b6));
            let t4 = m(&int(9), &m(&b2, &m(&b4, &b6)));
            k.add(&k.sub(&k.sub(&t1, &t2), &t3), &t4)
        };
        if disc.is_zero() {
            return Err(Error::SingularModel);
        }
        let c4_cubed = m(&c4, &m(&c4, &c4));
        if k.sub(&c4_cubed, &m(&c6, &c6)) != m(&int(1728), &disc) {
            return Err(Error::InternalInconsistency("c4^3 - c6^2 != 1728 disc".into()));
        }
        if m(&int(4), &b8) != k.sub(&m(&b2, &b6), &m(&b4, &b4)) {
            return Err(Error::InternalInconsistency("4 b8 != b2 b6 - b4^2".into()));
        }
        let j = k.div(&c4_cubed, &disc)?;
        Ok(CurveModel { field, a, b2, b4, b6, b8, c4, c6, disc, j })
    }

    /// `y^2 = x^3 + a4 x + a6`.
    pub fn short(field: Arc<NumberField>, a4: KElement, a6: KElement) -> Result<Self> {
        let zero = field.zero();
        Self::new(field, [zero.clone(), zero.clone(), zero, a4, a6])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// `[a1, a2, a3, a4, a6]`.
    pub fn coefficients(&self) -> &[KElement; 5] {
        &self.a
    }

    pub fn b_invariants(&self) -> [&KElement; 4] {
        [&self.b2, &self.b4, &self.b6, &self.b8]
    }

    pub fn c4(&self) -> &KElement {
        &self.c4
    }

    pub fn c6(&self) -> &KElement {
        &self.c6
    }

    pub fn discriminant(&self) -> &KElement {
        &self.disc
    }

    pub fn j_invariant(&self) -> &KElement {
        &self.j
    }

    /// Whether every `a_i` has denominator 1 in the power basis.
    pub fn is_integral(&self) -> bool {
        self.a.iter().all(KElement::is_integral_over_power_basis)
    }

    /// An isomorphic model with `a_i` replaced by `u^i a_i`, `u` the lcm of
    /// the denominators, so that every coefficient lies in `Z[theta]`.
    pub fn integralize(&self) -> Result<Self> {
        let u = self
            .a
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denominator()));
        if u.is_one() {
            return Ok(self.clone());
        }
        let k = &*self.field;
        let weights = [1u32, 2, 3, 4, 6];
        let a = std::array::from_fn(|i| k.mul(&self.a[i], &k.from_int(u.pow(weights[i]))));
        Self::new(Arc::clone(&self.field), a)
    }

    /// `N_{K/Q}(disc)` of an integral model.
    pub fn discriminant_norm(&self) -> Result<BigInt> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let n = self.field.norm(&self.disc)?;
        if !n.is_integer() {
            return Err(Error::InternalInconsistency("norm of an integral discriminant is not an integer".into()));
        }
        Ok(n.to_integer())
    }

    /// Sufficient test for good reduction at every ideal above `ell`:
    /// `ell` does not divide `N(disc)`.
    pub fn good_reduction_at(&self, ell: u64) -> Result<bool> {
        Ok(!self.discriminant_norm()?.is_multiple_of(&BigInt::from(ell)))
    }

    /// The reduction of the model modulo `q`.
    pub fn reduce(&self, q: &PrimeIdealData) -> Result<ReducedCurve> {
        let k = &*self.field;
        let a = self
            .a
            .iter()
            .map(|x| k.residue_reduction(q, x))
            .collect::<Result<Vec<_>>>()?;
        let curve = ReducedCurve::new(a.try_into().expect("five coefficients"))?;
        if curve.discriminant().is_zero() {
            return Err(Error::BadReductionAtIdeal(q.ell));
        }
        Ok(curve)
    }

    /// `t_q = N(q) + 1 - #E(O_K/q)`.
    pub fn trace_of_frobenius(&self, q: &PrimeIdealData) -> Result<FrobeniusData> {
        let count = self.reduce(q)?.count_points()?;
        FrobeniusData::new(q.clone(), q.norm() + 1 - BigInt::from(count))
    }

    /// Whether `(x, y)` lies on the curve and is fixed by negation.
    pub fn is_order_two_point(&self, x: &KElement, y: &KElement) -> bool {
        let k = &*self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = k.add(&k.mul(y, y), &k.mul(&k.add(&k.mul(a1, x), a3), y));
        let rhs = k.eval_k(&[a6, a4, a2, &k.one()], x);
        let tangent = k.add(&k.add(&k.mul(&k.from_int(2), y), &k.mul(a1, x)), a3);
        lhs == rhs && tangent.is_zero()
    }
}

impl NumberField {
    /// `c_0 + c_1 x + c_2 x^2 + ...` with coefficients in `K`.
    pub fn eval_k(&self, coeffs: &[&KElement], x: &KElement) -> KElement {
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }
}

/// A Weierstrass model over a finite field.
#[derive(Clone, Debug)]
pub struct ReducedCurve {
    field: Arc<FiniteField>,
    a: [FqElement; 5],
}

impl ReducedCurve {
    pub fn new(a: [FqElement; 5]) -> Result<Self> {
        let field = Arc::clone(a[0].field());
        if a.iter().any(|x| x.field().id() != field.id()) {
            return Err(Error::FieldMismatch);
        }
        Ok(ReducedCurve { field, a })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coefficients(&self) -> &[FqElement; 5] {
        &self.a
    }

    pub fn discriminant(&self) -> FqElement {
        let f = &self.field;
        let raw = |x: &FqElement| x.coords().to_vec();
        let c = |n: u64| f.from_u64(n).coords().to_vec();
        let [a1, a2, a3, a4, a6] = self.a.each_ref().map(raw);
        let mul = |x: &[u64], y: &[u64]| f.mul_raw(x, y);
        let add = |x: &[u64], y: &[u64]| f.add_raw(x, y);
        let sub = |x: &[u64], y: &[u64]| f.sub_raw(x, y);
        let b2 = add(&mul(&a1, &a1), &mul(&c(4), &a2));
        let b4 = add(&mul(&c(2), &a4), &mul(&a1, &a3));
        let b6 = add(&mul(&a3, &a3), &mul(&c(4), &a6));
        let b8 = {
            let plus = add(&add(&mul(&mul(&a1, &a1), &a6), &mul(&c(4), &mul(&a2, &a6))), &mul(&a2, &mul(&a3, &a3)));
            let minus = add(&mul(&mul(&a1, &a3), &a4), &mul(&a4, &a4));
            sub(&plus, &minus)
        };
        let t1 = mul(&mul(&b2, &b2), &b8);
        let t2 = mul(&c(8), &mul(&b4, &mul(&b4, &b4)));
        let t3 = mul(&c(27), &mul(&b6, &b6));
        let t4 = mul(&c(9), &mul(&b2, &mul(&b4, &b6)));
        let d = sub(&sub(&sub(&t4, &t1), &t2), &t3);
        f.from_poly(&crate::finfield::FpPoly::new(f.characteristic(), d))
    }

    /// Projective point count. Odd characteristic completes the square and
    /// reads a table of squares; characteristic 2 solves each quadratic in
    /// `y` by enumeration.
    pub fn count_points(&self) -> Result<u64> {
        let f = &self.field;
        let p = f.characteristic();
        let too_large = || Error::FieldTooLargeForEnumeration(f.order().clone());
        if p == 2 {
            let q = f.order_u64().filter(|&q| q <= MAX_EVEN_ENUMERATION).ok_or_else(too_large)?;
            let [a1, a2, a3, a4, a6] = &self.a;
            let one = f.one();
            let mut count = 1u64;
            for i in 0..q {
                let x = f.element(i);
                let lin = a1.mul(&x)?.add(a3)?;
                let rhs = x.add(a2)?.mul(&x)?.add(a4)?.mul(&x)?.add(a6)?;
                count += count_quadratic_roots(&one, &lin, &rhs.neg())? as u64;
            }
            return Ok(count);
        }
        let q = f.order_u64().filter(|&q| q <= MAX_ODD_COUNT).ok_or_else(too_large)?;
        let mut is_square = vec![false; q as usize];
        for i in 0..q {
            let x = f.element(i);
            is_square[f.index_raw(&f.mul_raw(x.coords(), x.coords())) as usize] = true;
        }
        let [a1, a2, a3, a4, a6] = self.a.each_ref().map(|x| x.coords().to_vec());
        let four = f.from_u64(4).coords().to_vec();
        let mut count = 1u64;
        for i in 0..q {
            let x = f.element(i);
            let x = x.coords();
            let lin = f.add_raw(&f.mul_raw(&a1, x), &a3);
            let rhs = f.add_raw(&f.mul_raw(&f.add_raw(&f.mul_raw(&f.add_raw(x, &a2), x), &a4), x), &a6);
            let disc = f.add_raw(&f.mul_raw(&four, &rhs), &f.mul_raw(&lin, &lin));
            count += if disc.iter().all(|&c| c == 0) {
                1
            } else if is_square[f.index_raw(&disc) as usize] {
                2
            } else {
                0
            };
        }
        Ok(count)
    }

    /// Projective point count by testing every affine pair.
    pub fn count_points_naive(&self) -> Result<u64> {
        let f = &self.field;
        let q = f
            .order_u64()
            .filter(|&q| q <= MAX_EVEN_ENUMERATION)
            .ok_or_else(|| Error::FieldTooLargeForEnumeration(f.order().clone()))?;
        let [a1, a2, a3, a4, a6] = &self.a;
        let mut count = 1;
        for i in 0..q {
            let x = f.element(i);
            let rhs = x.add(a2)?.mul(&x)?.add(a4)?.mul(&x)?.add(a6)?;
            let lin = a1.mul(&x)?.add(a3)?;
            for j in 0..q {
                let y = f.element(j);
                if y.add(&lin)?.mul(&y)? == rhs {
                    count += 1;
                }
            }
        }
        Ok(count)
    }
}

/// Frobenius data at a prime of good reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusData {
    pub ideal: PrimeIdealData,
    pub trace: BigInt,
    pub norm: BigInt,
    /// `X^2 - t X + N(q)`.
    pub frobenius_poly: IntPoly,
}

impl FrobeniusData {
    /// Checks the Hasse bound `t^2 <= 4 N(q)`.
    pub fn new(ideal: PrimeIdealData, trace: BigInt) -> Result<Self> {
        let norm = ideal.norm();
        if &trace * &trace > BigInt::from(4) * &norm {
            return Err(Error::InternalInconsistency(format!(
                "trace {trace} at {ideal} violates the Hasse bound"
            )));
        }
        let frobenius_poly = IntPoly::new(vec![norm.clone(), -trace.clone(), BigInt::one()]);
        Ok(FrobeniusData { ideal, trace, norm, frobenius_poly })
    }

    pub fn is_supersingular(&self) -> bool {
        (&self.trace % BigInt::from(self.ideal.ell)).is_zero()
    }
}
