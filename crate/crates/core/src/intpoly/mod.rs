//! Dense univariate polynomials over the integers and the composed-product
//! monoid on monic polynomials with nonzero constant term.
//!
//! `star(P, Q)` is the monic polynomial whose roots are all products of a root
//! of `P` with a root of `Q`. It is computed as a resultant in an auxiliary
//! variable with fraction-free elimination, so every intermediate value is an
//! exact integer polynomial.

mod bareiss;
pub mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use bareiss::{bareiss_determinant, ExactRing};

/// Polynomial with arbitrary-precision integer coefficients, lowest degree first.
///
/// Trailing zeros are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `c * X^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `X - a`.
    pub fn linear_root(a: BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    /// `X^r - 1`.
    pub fn psi(r: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); r + 1];
        coeffs[0] = -BigInt::one();
        coeffs[r] = BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, treating the zero polynomial as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Membership in the monoid carrier: monic and not vanishing at 0.
    pub fn in_monoid(&self) -> bool {
        self.is_monic() && !self.constant_term().is_zero()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `self(other(X))`.
    pub fn compose(&self, other: &IntPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * other) + &Self::constant(c.clone()))
    }

    /// `self(X^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    /// `self(c * X)`.
    pub fn scale_variable(&self, c: &BigInt) -> Self {
        let mut power = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power *= c;
        }
        Self::new(out)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact quotient `self / divisor`; fails unless the division is exact in `Z[X]`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let Some(nd) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if nd < dd {
            return Err(inexact());
        }
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Err(inexact());
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(inexact());
        }
        Ok(IntPoly::new(quot))
    }
}

fn inexact() -> Error {
    Error::InternalInconsistency("polynomial division is not exact".into())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Sylvester matrix of `a` and `b` (coefficient lists, lowest degree first).
fn sylvester<T: ExactRing>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    let n = a.len() - 1;
    let m = b.len() - 1;
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![T::zero_elem(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![T::zero_elem(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

fn generic_resultant<T: ExactRing>(a: &[T], b: &[T]) -> Result<T> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let n = a.len() - 1;
    let m = b.len() - 1;
    if n == 0 {
        return Ok(a[0].pow_elem(m));
    }
    if m == 0 {
        return Ok(b[0].pow_elem(n));
    }
    bareiss_determinant(sylvester(a, b))
}

/// Resultant `lc(A)^{deg B} * prod B(alpha)` over the roots `alpha` of `A`,
/// as the Sylvester determinant with fraction-free elimination.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    generic_resultant(a.coeffs(), b.coeffs())
}

/// Resultant in an auxiliary variable `Z` of two polynomials whose
/// coefficients (in `Z`, lowest first) are themselves polynomials in `X`.
pub fn resultant_over_zx(a: &[IntPoly], b: &[IntPoly]) -> Result<IntPoly> {
    let trim = |v: &[IntPoly]| {
        let mut v = v.to_vec();
        while v.last().is_some_and(IntPoly::is_zero) {
            v.pop();
        }
        v
    };
    generic_resultant(&trim(a), &trim(b))
}

fn check_monoid(p: &IntPoly) -> Result<()> {
    if p.in_monoid() {
        Ok(())
    } else {
        Err(Error::NotInMonoid)
    }
}

/// Composed product: the monic polynomial with roots `alpha_i * beta_j`.
///
/// Computed as `Res_Z(P(Z), Q(X/Z) Z^{deg Q})`.
pub fn star(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    check_monoid(p)?;
    check_monoid(q)?;
    let identity = IntPoly::psi(1);
    if *p == identity {
        return Ok(q.clone());
    }
    if *q == identity {
        return Ok(p.clone());
    }
    let out = if q.deg() == 2 {
        star_quadratic(p, q)
    } else if p.deg() == 2 {
        star_quadratic(q, p)
    } else {
        return star_sylvester(p, q);
    };
    if out.degree() != Some(p.deg() * q.deg()) || !out.is_monic() {
        return Err(Error::InternalInconsistency(format!(
            "composed product of {p} and {q} is not monic of degree {}",
            p.deg() * q.deg()
        )));
    }
    Ok(out)
}

/// `P * Q` for monic quadratic `Q = Z^2 - sZ + n` with roots `b1, b2`:
/// reduce `B(Z) = Z^{deg P} P(X/Z)` to `u + vZ` modulo `Q`, then
/// `B(b1) B(b2) = u^2 + s u v + n v^2`.
fn star_quadratic(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let s = -q.coeff(1);
    let n = q.coeff(0);
    let deg = p.deg();
    // Z^j = alpha_j + beta_j Z modulo Q.
    let mut powers = Vec::with_capacity(deg + 1);
    let (mut alpha, mut beta) = (BigInt::one(), BigInt::zero());
    for _ in 0..=deg {
        powers.push((alpha.clone(), beta.clone()));
        let next_beta = &alpha + &s * &beta;
        alpha = -&n * &beta;
        beta = next_beta;
    }
    let mut u = vec![BigInt::zero(); deg + 1];
    let mut v = vec![BigInt::zero(); deg + 1];
    for (k, c) in p.coeffs().iter().enumerate() {
        let (a, b) = &powers[deg - k];
        u[k] = c * a;
        v[k] = c * b;
    }
    let (u, v) = (IntPoly::new(u), IntPoly::new(v));
    &(&(&u * &u) + &(&u * &v).scale(&s)) + &(&v * &v).scale(&n)
}

/// Composed product through the Sylvester matrix over `Z[X]`, valid for
/// any degrees. [`star`] uses it except when an operand is quadratic.
pub fn star_sylvester(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    check_monoid(p)?;
    check_monoid(q)?;
    let a: Vec<IntPoly> = p.coeffs().iter().cloned().map(IntPoly::constant).collect();
    let m = q.deg();
    // Coefficient of Z^k in Q(X/Z) Z^m is b_{m-k} X^{m-k}.
    let b: Vec<IntPoly> = (0..=m)
        .map(|k| IntPoly::monomial(q.coeff(m - k), m - k))
        .collect();
    let out = resultant_over_zx(&a, &b)?;
    if out.degree() != Some(p.deg() * m) || !out.is_monic() {
        return Err(Error::InternalInconsistency(format!(
            "composed product of {p} and {q} is not monic of degree {}",
            p.deg() * m
        )));
    }
    Ok(out)
}

/// `P * P * ... * P` (k factors); `X - 1` for `k = 0`.
pub fn star_pow(p: &IntPoly, k: u32) -> Result<IntPoly> {
    check_monoid(p)?;
    let mut acc = IntPoly::psi(1);
    for _ in 0..k {
        acc = star(&acc, p)?;
    }
    Ok(acc)
}

/// The polynomial whose roots are the `r`-th powers of the roots of `P`,
/// read off from `P * (X^r - 1)`, which must be a polynomial in `X^r`.
pub fn adams(p: &IntPoly, r: usize) -> Result<IntPoly> {
    check_monoid(p)?;
    if r == 0 {
        return Err(Error::Invalid("adams exponent must be at least 1".into()));
    }
    if r == 1 {
        return Ok(p.clone());
    }
    let full = star(p, &IntPoly::psi(r))?;
    let mut coeffs = Vec::with_capacity(p.deg() + 1);
    for (i, c) in full.coeffs().iter().enumerate() {
        if i % r == 0 {
            coeffs.push(c.clone());
        } else if !c.is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "coefficient of X^{i} in P * Psi_{r} is nonzero"
            )));
        }
    }
    Ok(IntPoly::new(coeffs))
}

/// Lucas sequence `V_n = alpha^n + beta^n` for the roots of `X^2 - tX + q`.
pub fn lucas_v(n: u32, t: &BigInt, q: &BigInt) -> BigInt {
    let (mut prev, mut cur) = (BigInt::from(2), t.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = t * &cur - q * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Chebyshev polynomial of the first kind and its Dickson normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chebyshev {
    /// `T_n`, with `T_n(cos x) = cos(n x)`.
    pub t: IntPoly,
    /// `2 T_n(X / 2)`, monic for `n >= 1`.
    pub dickson: IntPoly,
}

pub fn chebyshev(n: u32) -> Chebyshev {
    let two_x = IntPoly::from_i64s(&[0, 2]);
    let x = IntPoly::x();
    let (mut t0, mut t1) = (IntPoly::one(), x.clone());
    let (mut d0, mut d1) = (IntPoly::from_i64s(&[2]), x.clone());
    if n == 0 {
        return Chebyshev { t: t0, dickson: d0 };
    }
    for _ in 1..n {
        let t2 = &(&two_x * &t1) - &t0;
        let d2 = &(&x * &d1) - &d0;
        t0 = std::mem::replace(&mut t1, t2);
        d0 = std::mem::replace(&mut d1, d2);
    }
    Chebyshev { t: t1, dickson: d1 }
}
