//! Finite fields `F_q = F_p[t]/(m)`, quadratic characters and root counts,
//! and irreducibility of integer polynomials modulo a prime.

mod poly;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

pub use poly::{factor_mod_p, factor_mod_p_seeded, reduce_bigint, FpPoly};
pub(crate) use poly::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod};

/// Largest field enumerated in characteristic 2.
pub const MAX_EVEN_ENUMERATION: u64 = 1 << 16;

static NEXT_FIELD_ID: AtomicU64 = AtomicU64::new(0);

/// `F_p[t]/(m)` for a monic irreducible `m` of degree `f`.
#[derive(Debug)]
pub struct FiniteField {
    id: u64,
    p: u64,
    modulus: FpPoly,
    order: BigUint,
}

impl FiniteField {
    /// Builds the field, checking that `modulus` is irreducible over `F_p`.
    pub fn new(modulus: FpPoly) -> Result<Arc<Self>> {
        let p = modulus.modulus();
        if !crate::arith::is_prime_u64(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if !poly::is_irreducible_fp(&modulus) {
            return Err(Error::ReducibleModulus(p));
        }
        let modulus = modulus.monic();
        let order = BigUint::from(p).pow(modulus.deg() as u32);
        Ok(Arc::new(FiniteField {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            p,
            modulus,
            order,
        }))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        Self::new(FpPoly::x(p))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    /// Cardinality `p^f`.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Cardinality, if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn zero(self: &Arc<Self>) -> FqElement {
        self.wrap(vec![0; self.degree()])
    }

    pub fn one(self: &Arc<Self>) -> FqElement {
        self.from_u64(1)
    }

    pub fn from_u64(self: &Arc<Self>, c: u64) -> FqElement {
        let mut rep = vec![0; self.degree()];
        rep[0] = c % self.p;
        self.wrap(rep)
    }

    pub fn from_bigint(self: &Arc<Self>, c: &BigInt) -> FqElement {
        self.from_u64(reduce_bigint(c, self.p))
    }

    /// The class of `t`.
    pub fn generator(self: &Arc<Self>) -> FqElement {
        self.from_poly(&FpPoly::x(self.p))
    }

    /// Reduces an `F_p` polynomial in `t` modulo `m`.
    pub fn from_poly(self: &Arc<Self>, g: &FpPoly) -> FqElement {
        let r = g.rem(&self.modulus);
        let mut rep = vec![0; self.degree()];
        rep[..r.coeffs().len()].copy_from_slice(r.coeffs());
        self.wrap(rep)
    }

    /// The element whose base-`p` digits are its coordinates.
    pub fn element(self: &Arc<Self>, mut index: u64) -> FqElement {
        let mut rep = vec![0; self.degree()];
        for c in rep.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        self.wrap(rep)
    }

    /// All elements in index order; `None` if the field has more than `cap` elements.
    pub fn elements(self: &Arc<Self>, cap: u64) -> Option<impl Iterator<Item = FqElement> + '_> {
        let q = self.order_u64().filter(|&q| q <= cap)?;
        Some((0..q).map(move |i| self.element(i)))
    }

    fn wrap(self: &Arc<Self>, rep: Vec<u64>) -> FqElement {
        FqElement { field: Arc::clone(self), rep }
    }

    pub(crate) fn add_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| add_mod(x, y, self.p)).collect()
    }

    pub(crate) fn sub_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| sub_mod(x, y, self.p)).collect()
    }

    pub(crate) fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let f = self.degree();
        if f == 1 {
            return vec![mul_mod(a[0], b[0], p)];
        }
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
        let m = self.modulus.coeffs();
        for k in (f..2 * f - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..f {
                prod[k - f + i] = sub_mod(prod[k - f + i], mul_mod(c, m[i], p), p);
            }
        }
        prod.truncate(f);
        prod
    }

    /// Base-`p` index of a coordinate vector.
    pub(crate) fn index_raw(&self, a: &[u64]) -> u64 {
        a.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }
}

/// An element of a [`FiniteField`], tied to its parent by identity.
#[derive(Clone, Debug)]
pub struct FqElement {
    field: Arc<FiniteField>,
    rep: Vec<u64>,
}

impl PartialEq for FqElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.id == other.field.id && self.rep == other.rep
    }
}

impl Eq for FqElement {}

impl FqElement {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    /// Coordinates in the basis `1, t, ..., t^(f-1)`.
    pub fn coords(&self) -> &[u64] {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(|&c| c == 0)
    }

    pub fn index(&self) -> u64 {
        self.field.index_raw(&self.rep)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field.id == other.field.id {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.add_raw(&self.rep, &other.rep)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.sub_raw(&self.rep, &other.rep)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.field.mul_raw(&self.rep, &other.rep)))
    }

    pub fn neg(&self) -> Self {
        self.field.wrap(self.field.sub_raw(&vec![0; self.rep.len()], &self.rep))
    }

    pub fn pow(&self, e: &BigUint) -> Self {
        let mut acc = self.field.one().rep;
        for i in (0..e.bits()).rev() {
            acc = self.field.mul_raw(&acc, &acc);
            if e.bit(i) {
                acc = self.field.mul_raw(&acc, &self.rep);
            }
        }
        self.field.wrap(acc)
    }

    /// Multiplicative inverse, `a^(q-2)`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(&(self.field.order() - 2u32)))
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            write!(f, "{}", self.rep[0])
        } else {
            let g = FpPoly::new(self.field.p, self.rep.clone());
            write!(f, "{g} mod {}", self.field.modulus)
        }
    }
}

/// Quadratic character on `F_q`, `q` odd, by Euler's criterion.
pub fn quadratic_character(a: &FqElement) -> Result<i8> {
    if a.field.p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if a.is_zero() {
        return Ok(0);
    }
    let e = (a.field.order() - 1u32) >> 1;
    Ok(if a.pow(&e) == a.field.one() { 1 } else { -1 })
}

/// Number of `y` in `F_q` with `A y^2 + B y + C = 0`, for `A != 0`.
pub fn count_quadratic_roots(a: &FqElement, b: &FqElement, c: &FqElement) -> Result<u32> {
    a.same_field(b)?;
    a.same_field(c)?;
    if a.is_zero() {
        return Err(Error::Invalid("leading coefficient must be nonzero".into()));
    }
    let field = &a.field;
    if field.p != 2 {
        let disc = b.mul(b)?.sub(&field.from_u64(4).mul(a)?.mul(c)?)?;
        return Ok((1 + quadratic_character(&disc)?) as u32);
    }
    let elements = field
        .elements(MAX_EVEN_ENUMERATION)
        .ok_or_else(|| Error::FieldTooLargeForEnumeration(field.order().clone()))?;
    let mut count = 0;
    for y in elements {
        let v = a.mul(&y)?.add(b)?.mul(&y)?.add(c)?;
        if v.is_zero() {
            count += 1;
        }
    }
    Ok(count)
}

fn legendre_big(a: &BigUint, p: &BigUint) -> i8 {
    let a = a % p;
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Whether `P mod p` is irreducible over `F_p`.
///
/// Degree 2 is decided by the discriminant for any prime size; higher
/// degrees need `p < 2^64`.
pub fn is_irreducible_mod_p(f: &IntPoly, p: &BigUint) -> Result<bool> {
    let Some(lc) = f.leading() else {
        return Err(Error::ZeroPolynomial);
    };
    let pb = BigInt::from(p.clone());
    if lc.mod_floor(&pb).is_zero() {
        return Err(Error::DegreeDropped(p.clone()));
    }
    match f.deg() {
        0 => Ok(false),
        1 => Ok(true),
        2 => {
            let r = |i: usize| f.coeff(i).mod_floor(&pb);
            let (c, b, a) = (r(0), r(1), r(2));
            if *p == BigUint::from(2u32) {
                // a = 1 here, and X^2 + X + 1 is the only irreducible quadratic.
                return Ok(b.is_one() && c.is_one());
            }
            let disc = (&b * &b - BigInt::from(4) * a * c).mod_floor(&pb);
            Ok(legendre_big(disc.magnitude(), p) == -1)
        }
        _ => {
            let small = p
                .to_u64()
                .ok_or_else(|| Error::Invalid("irreducibility above degree 2 needs p < 2^64".into()))?;
            Ok(poly::is_irreducible_fp(&FpPoly::from_int_poly(f, small)))
        }
    }
}

/// Resultant over `F_p`, `lc(A)^{deg B} prod B(alpha)`.
fn resultant_fp(a: &FpPoly, b: &FpPoly) -> u64 {
    let p = a.modulus();
    if a.is_zero() || b.is_zero() {
        return 0;
    }
    let (da, db) = (a.deg(), b.deg());
    if db == 0 {
        return pow_mod(b.leading(), da as u64, p);
    }
    if da == 0 {
        return pow_mod(a.leading(), db as u64, p);
    }
    let r = a.rem(b);
    if r.is_zero() {
        return 0;
    }
    let mut out = mul_mod(pow_mod(b.leading(), (da - r.deg()) as u64, p), resultant_fp(b, &r), p);
    if da * db % 2 == 1 {
        out = sub_mod(0, out, p);
    }
    out
}

/// Composed product over `F_p` by evaluation at `deg P * deg Q + 1` points
/// and interpolation. Needs `p > deg P * deg Q`.
pub fn star_mod_p(pp: &FpPoly, qq: &FpPoly) -> Result<FpPoly> {
    let p = pp.modulus();
    let (n, m) = (pp.deg(), qq.deg());
    if pp.leading() != 1 || qq.leading() != 1 || pp.coeff(0) == 0 || qq.coeff(0) == 0 {
        return Err(Error::NotInMonoid);
    }
    let target = n * m;
    if p <= target as u64 {
        return Err(Error::Invalid(format!("need p > {target} interpolation points")));
    }
    let xs: Vec<u64> = (0..=target as u64).collect();
    let ys: Vec<u64> = xs
        .iter()
        .map(|&x| {
            let b: Vec<u64> = (0..=m)
                .map(|k| mul_mod(qq.coeff(m - k), pow_mod(x, (m - k) as u64, p), p))
                .collect();
            resultant_fp(pp, &FpPoly::new(p, b))
        })
        .collect();
    // Lagrange interpolation.
    let mut out = FpPoly::zero(p);
    for (i, (&xi, &yi)) in xs.iter().zip(&ys).enumerate() {
        let mut basis = FpPoly::one(p);
        let mut denom = 1u64;
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&FpPoly::new(p, vec![sub_mod(0, xj, p), 1]));
                denom = mul_mod(denom, sub_mod(xi, xj, p), p);
            }
        }
        out = out.add(&basis.scale(mul_mod(yi, inv_mod(denom, p), p)));
    }
    Ok(out)
}
