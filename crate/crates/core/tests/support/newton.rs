//! Composed products and Adams maps through Newton power sums: an oracle
//! that shares no code with the resultant implementation.

use isosieve_core::intpoly::IntPoly;
use num_bigint::BigInt;
use num_traits::Zero;

/// Power sums `p_1..=p_count` of the roots of the monic `f`.
pub fn power_sums(f: &IntPoly, count: usize) -> Vec<BigInt> {
    let n = f.deg();
    let e: Vec<BigInt> = (0..=n)
        .map(|k| if k % 2 == 0 { f.coeff(n - k) } else { -f.coeff(n - k) })
        .collect();
    let mut p = vec![BigInt::zero(); count + 1];
    for k in 1..=count {
        let mut acc = BigInt::zero();
        for i in 1..=k.min(n) {
            let term = if i == k { &e[i] * BigInt::from(k) } else { &e[i] * &p[k - i] };
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[k] = acc;
    }
    p
}

/// The monic polynomial of degree `n` with power sums `p[1..=n]`.
pub fn from_power_sums(p: &[BigInt], n: usize) -> IntPoly {
    let mut e = vec![BigInt::zero(); n + 1];
    e[0] = BigInt::from(1);
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        assert!((&acc % BigInt::from(k)).is_zero(), "power sums are not integral");
        e[k] = acc / BigInt::from(k);
    }
    let coeffs = (0..=n)
        .map(|i| {
            let k = n - i;
            if k.is_multiple_of(2) { e[k].clone() } else { -e[k].clone() }
        })
        .collect();
    IntPoly::new(coeffs)
}

pub fn star(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let n = f.deg() * g.deg();
    let (pf, pg) = (power_sums(f, n), power_sums(g, n));
    let p: Vec<BigInt> = pf.iter().zip(&pg).map(|(a, b)| a * b).collect();
    from_power_sums(&p, n)
}

pub fn adams(f: &IntPoly, r: usize) -> IntPoly {
    let n = f.deg();
    let pf = power_sums(f, n * r);
    let p: Vec<BigInt> = (0..=n).map(|k| pf[k * r].clone()).collect();
    from_power_sums(&p, n)
}
