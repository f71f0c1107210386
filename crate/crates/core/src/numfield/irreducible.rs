//! Irreducibility over `Q` for small-degree monic integer polynomials.
//!
//! Factor degrees allowed by factorizations modulo small primes are
//! intersected first. Any degree that survives is settled by forming every
//! product of that many complex roots, rounding to an integer polynomial and
//! testing exact division. A factor over `Z` has coefficients bounded by
//! Mignotte's bound; when that bound is too large for double precision the
//! check reports an error rather than guessing.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::arith::primes_up_to;
use crate::error::{Error, Result};
use crate::finfield::factor_mod_p;
use crate::intpoly::rational::RatPoly;
use crate::intpoly::IntPoly;

const SIEVE_PRIMES: usize = 40;
const MAX_SAFE_COEFF: f64 = (1u64 << 40) as f64;

/// Whether the monic `f` is irreducible over `Q`.
pub fn is_irreducible_over_q(f: &IntPoly) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::Invalid("irreducibility check expects a monic polynomial".into()));
    }
    let d = f.deg();
    if d <= 1 {
        return Ok(d == 1);
    }
    if f.constant_term().is_zero() {
        return Ok(false);
    }
    if crate::numfield::poly_discriminant(f)?.is_zero() {
        return Ok(false);
    }
    let candidates = allowed_factor_degrees(f)?;
    if candidates.is_empty() {
        return Ok(true);
    }
    let roots = complex_roots(f)?;
    let norm2 = f
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY).powi(2))
        .sum::<f64>()
        .sqrt();
    for k in candidates {
        let bound = binomial(k, k / 2) * norm2;
        // Also rejects NaN.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(bound < MAX_SAFE_COEFF) {
            return Err(Error::Invalid(format!(
                "cannot certify irreducibility of {f}: factor coefficients may reach {bound:e}"
            )));
        }
        if has_factor_of_degree(f, &roots, k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degrees `1 <= k <= d/2` compatible with the factorization pattern modulo
/// every sieve prime.
fn allowed_factor_degrees(f: &IntPoly) -> Result<BTreeSet<usize>> {
    let d = f.deg();
    let mut allowed: BTreeSet<usize> = (1..=d / 2).collect();
    let disc = crate::numfield::poly_discriminant(f)?;
    for p in primes_up_to(1000).into_iter().take(SIEVE_PRIMES) {
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let degrees: Vec<usize> = factor_mod_p(f, p)?
            .iter()
            .flat_map(|(g, m)| std::iter::repeat_n(g.deg(), *m as usize))
            .collect();
        let mut sums = BTreeSet::from([0usize]);
        for deg in degrees {
            let shifted: Vec<usize> = sums.iter().map(|s| s + deg).collect();
            sums.extend(shifted);
        }
        allowed.retain(|k| sums.contains(k));
        if allowed.is_empty() {
            break;
        }
    }
    Ok(allowed)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)
}

/// All complex roots by Durand-Kerner iteration.
fn complex_roots(f: &IntPoly) -> Result<Vec<Complex64>> {
    let coeffs: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| c.to_f64().filter(|v| v.is_finite()))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Invalid("coefficients too large for root isolation".into()))?;
    let d = f.deg();
    let radius = 1.0 + coeffs[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|i| seed.powu(i as u32) * radius.min(2.0)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let zi = roots[i];
            let denom = (0..d)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (zi - roots[j]));
            let step = eval(&coeffs, zi) / denom;
            roots[i] = zi - step;
            delta = delta.max(step.norm() / (1.0 + zi.norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    for &z in &roots {
        let scale = coeffs.iter().fold(0.0, |acc, c| acc * z.norm() + c.abs());
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(eval(&coeffs, z).norm() <= 1e-8 * scale.max(1.0)) {
            return Err(Error::Invalid("root isolation did not converge".into()));
        }
    }
    Ok(roots)
}

fn has_factor_of_degree(f: &IntPoly, roots: &[Complex64], k: usize) -> bool {
    let d = roots.len();
    let target = RatPoly::from(f);
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        if let Some(g) = rounded_product(roots, &subset) {
            let (_, r) = target.div_rem(&RatPoly::from(&g));
            if r.is_zero() {
                return true;
            }
        }
        // Next k-subset in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| subset[i] < d - k + i) else {
            return false;
        };
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

fn rounded_product(roots: &[Complex64], subset: &[usize]) -> Option<IntPoly> {
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for &i in subset {
        let mut next = vec![Complex64::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * roots[i];
        }
        poly = next;
    }
    let mut coeffs = Vec::with_capacity(poly.len());
    for c in poly {
        let r = c.re.round();
        if c.im.abs() > 1e-4 || (c.re - r).abs() > 1e-4 {
            return None;
        }
        coeffs.push(BigInt::from(r as i64));
    }
    Some(IntPoly::new(coeffs))
}
