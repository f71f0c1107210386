//! The number field `K = Q[theta]/(f)` with elements in the power basis over
//! a common denominator.

mod ideal;
mod irreducible;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intpoly::rational::RatPoly;
use crate::intpoly::{resultant, resultant_over_zx, IntPoly};

pub use ideal::{IdealSource, PrimeIdealData};
pub use irreducible::is_irreducible_over_q;

/// `num / den` with `num` of degree below `d` in `theta`, `den > 0`, and no
/// common factor between `den` and the content of `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KElement {
    num: IntPoly,
    den: BigInt,
}

impl KElement {
    fn canonical(num: IntPoly, den: BigInt) -> Self {
        if num.is_zero() {
            return KElement { num, den: BigInt::one() };
        }
        let mut g = num.content().gcd(&den);
        if den.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return KElement { num, den };
        }
        let num = IntPoly::new(num.coeffs().iter().map(|c| c / &g).collect());
        KElement { num, den: den / g }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral_over_power_basis(&self) -> bool {
        self.den.is_one()
    }

    /// Coordinate `i` as a rational number.
    pub fn coord(&self, i: usize) -> BigRational {
        BigRational::new(self.num.coeff(i), self.den.clone())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.num.deg() == 0).then(|| self.coord(0))
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.num.to_string().replace('X', "t");
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

/// A number field given by a monic irreducible defining polynomial, with
/// its discriminant and class number supplied by the caller.
#[derive(Clone, Debug)]
pub struct NumberField {
    f: IntPoly,
    poly_disc: BigInt,
    field_disc: BigInt,
    index: BigInt,
    class_number: u64,
    class_number_asserted: bool,
    overrides: BTreeMap<u64, Vec<PrimeIdealData>>,
}

/// `(-1)^{d(d-1)/2} Res(f, f')` for monic `f`.
pub fn poly_discriminant(f: &IntPoly) -> Result<BigInt> {
    let d = f.deg();
    let r = resultant(f, &f.derivative())?;
    Ok(if (d * (d.saturating_sub(1)) / 2) % 2 == 1 { -r } else { r })
}

/// Remainder of `g` modulo the monic `f`, over the integers.
fn rem_monic(g: &IntPoly, f: &IntPoly) -> IntPoly {
    let d = f.deg();
    let mut c = g.coeffs().to_vec();
    while c.len() > d {
        let top = c.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = c.len() - d;
        for (i, fc) in f.coeffs()[..d].iter().enumerate() {
            c[shift + i] -= &top * fc;
        }
    }
    IntPoly::new(c)
}

impl NumberField {
    /// Builds `Q[X]/(f)`, checking irreducibility and that `poly_disc / D_K`
    /// is a perfect square. `class_number = None` records `h = 1` as asserted.
    pub fn new(f: IntPoly, field_disc: BigInt, class_number: Option<u64>) -> Result<Self> {
        if !f.is_monic() || f.deg() == 0 {
            return Err(Error::Invalid(format!("defining polynomial {f} must be monic of degree >= 1")));
        }
        if !is_irreducible_over_q(&f)? {
            return Err(Error::Invalid(format!("defining polynomial {f} is reducible over Q")));
        }
        let poly_disc = poly_discriminant(&f)?;
        if field_disc.is_zero() || !poly_disc.is_multiple_of(&field_disc) {
            return Err(Error::Invalid(format!(
                "D_K = {field_disc} does not divide disc(f) = {poly_disc}"
            )));
        }
        let quotient = &poly_disc / &field_disc;
        let index = if quotient.is_positive() { quotient.sqrt() } else { BigInt::zero() };
        if &index * &index != quotient {
            return Err(Error::Invalid(format!(
                "disc(f) / D_K = {quotient} is not a perfect square"
            )));
        }
        Ok(NumberField {
            f,
            poly_disc,
            field_disc,
            index,
            class_number: class_number.unwrap_or(1),
            class_number_asserted: class_number.is_none(),
            overrides: BTreeMap::new(),
        })
    }

    pub fn from_i64s(coeffs: &[i64], field_disc: i64) -> Result<Self> {
        Self::new(IntPoly::from_i64s(coeffs), BigInt::from(field_disc), None)
    }

    pub fn defining_poly(&self) -> &IntPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.deg()
    }

    pub fn poly_disc(&self) -> &BigInt {
        &self.poly_disc
    }

    pub fn field_disc(&self) -> &BigInt {
        &self.field_disc
    }

    /// `[O_K : Z[theta]]`, from the supplied `D_K`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn class_number(&self) -> u64 {
        self.class_number
    }

    pub fn class_number_asserted(&self) -> bool {
        self.class_number_asserted
    }

    /// Element `num(theta) / den`, reduced modulo `f`.
    pub fn element(&self, num: IntPoly, den: BigInt) -> Result<KElement> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = if den.sign() == Sign::Minus { (-num, -den) } else { (num, den) };
        Ok(KElement::canonical(rem_monic(&num, &self.f), den))
    }

    pub fn element_i64s(&self, coords: &[i64], den: i64) -> Result<KElement> {
        self.element(IntPoly::from_i64s(coords), BigInt::from(den))
    }

    pub fn from_int(&self, c: impl Into<BigInt>) -> KElement {
        KElement::canonical(IntPoly::constant(c.into()), BigInt::one())
    }

    pub fn from_rational(&self, c: &BigRational) -> KElement {
        KElement::canonical(IntPoly::constant(c.numer().clone()), c.denom().clone())
    }

    pub fn zero(&self) -> KElement {
        self.from_int(0)
    }

    pub fn one(&self) -> KElement {
        self.from_int(1)
    }

    pub fn theta(&self) -> KElement {
        KElement::canonical(rem_monic(&IntPoly::x(), &self.f), BigInt::one())
    }

    pub fn add(&self, a: &KElement, b: &KElement) -> KElement {
        let num = &a.num.scale(&b.den) + &b.num.scale(&a.den);
        KElement::canonical(num, &a.den * &b.den)
    }

    pub fn sub(&self, a: &KElement, b: &KElement) -> KElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &KElement) -> KElement {
        KElement { num: -&a.num, den: a.den.clone() }
    }

    pub fn mul(&self, a: &KElement, b: &KElement) -> KElement {
        KElement::canonical(rem_monic(&(&a.num * &b.num), &self.f), &a.den * &b.den)
    }

    pub fn scale(&self, a: &KElement, c: &BigRational) -> KElement {
        KElement::canonical(a.num.scale(c.numer()), &a.den * c.denom())
    }

    pub fn pow(&self, a: &KElement, e: u32) -> KElement {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Evaluates an integer polynomial at `x`.
    pub fn eval(&self, p: &IntPoly, x: &KElement) -> KElement {
        p.coeffs()
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), &self.from_int(c.clone())))
    }

    /// Inverse from the characteristic polynomial:
    /// `x^{-1} = -(x^{d-1} + c_{d-1} x^{d-2} + ... + c_1) / c_0`.
    pub fn inv(&self, x: &KElement) -> Result<KElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let chi = self.char_poly(x)?;
        let d = self.degree();
        let mut acc = self.zero();
        for i in (1..=d).rev() {
            acc = self.add(&self.mul(&acc, x), &self.from_rational(&chi.coeff(i)));
        }
        let c0 = chi.coeff(0);
        Ok(self.scale(&acc, &(-c0.recip())))
    }

    pub fn div(&self, a: &KElement, b: &KElement) -> Result<KElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `N_{K/Q}(x) = Res(f, num) / den^d`.
    pub fn norm(&self, x: &KElement) -> Result<BigRational> {
        if x.is_zero() {
            return Ok(BigRational::zero());
        }
        let r = resultant(&self.f, &x.num)?;
        Ok(BigRational::new(r, x.den.pow(self.degree() as u32)))
    }

    /// `Tr_{K/Q}(x)`, read off the characteristic polynomial.
    pub fn trace(&self, x: &KElement) -> Result<BigRational> {
        let chi = self.char_poly(x)?;
        Ok(-chi.coeff(self.degree() - 1))
    }

    /// Characteristic polynomial of multiplication by `x`, as
    /// `Res_Y(f(Y), X - num(Y))` rescaled by the denominator.
    pub fn char_poly(&self, x: &KElement) -> Result<RatPoly> {
        let d = self.degree();
        let a: Vec<IntPoly> = self.f.coeffs().iter().cloned().map(IntPoly::constant).collect();
        let mut b: Vec<IntPoly> = x.num.coeffs().iter().map(|c| IntPoly::constant(-c)).collect();
        if b.is_empty() {
            b.push(IntPoly::zero());
        }
        b[0] = &b[0] + &IntPoly::x();
        let chi = resultant_over_zx(&a, &b)?;
        // charpoly_{g/e}(X) = e^{-d} charpoly_g(eX).
        let coeffs = (0..=d)
            .map(|i| BigRational::new(chi.coeff(i), x.den.pow((d - i) as u32)))
            .collect();
        Ok(RatPoly::new(coeffs))
    }

    /// Squarefree part of the characteristic polynomial.
    pub fn min_poly(&self, x: &KElement) -> Result<RatPoly> {
        let chi = self.char_poly(x)?;
        let g = chi.gcd(&chi.derivative());
        Ok(chi.div_rem(&g).0.monic())
    }

    /// Registers explicit ideal data for a prime dividing the index.
    pub fn with_override(mut self, ell: u64, ideals: Vec<PrimeIdealData>) -> Result<Self> {
        let total: usize = ideals.iter().map(|q| q.ramification * q.residue_degree).sum();
        if total != self.degree() {
            return Err(Error::Invalid(format!(
                "override at {ell}: sum of e*f is {total}, expected {}",
                self.degree()
            )));
        }
        if ideals.iter().any(|q| q.ell != ell) {
            return Err(Error::Invalid(format!("override at {ell} lists an ideal above another prime")));
        }
        self.overrides.insert(ell, ideals);
        Ok(self)
    }

    pub fn overrides(&self) -> &BTreeMap<u64, Vec<PrimeIdealData>> {
        &self.overrides
    }
}
