use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Integral domain with exact division, enough for fraction-free elimination.
pub trait ExactRing: Clone {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// `self / divisor`, failing if the quotient is not in the ring.
    fn div_exact_elem(&self, divisor: &Self) -> Result<Self>;

    fn pow_elem(&self, e: usize) -> Self {
        (0..e).fold(Self::one_elem(), |acc, _| acc.mul_elem(self))
    }
}

impl ExactRing for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, divisor: &Self) -> Result<Self> {
        if Zero::is_zero(divisor) {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.div_rem(divisor);
        if Zero::is_zero(&r) {
            Ok(q)
        } else {
            Err(Error::InternalInconsistency("integer division is not exact".into()))
        }
    }
}

impl ExactRing for IntPoly {
    fn zero_elem() -> Self {
        IntPoly::zero()
    }
    fn one_elem() -> Self {
        IntPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, divisor: &Self) -> Result<Self> {
        IntPoly::div_exact(self, divisor)
    }
}

/// Determinant by Bareiss elimination. Every division is exact by Sylvester's
/// identity; a remainder means an arithmetic bug and is reported as such.
pub fn bareiss_determinant<T: ExactRing>(mut m: Vec<Vec<T>>) -> Result<T> {
    let n = m.len();
    if n == 0 {
        return Ok(T::one_elem());
    }
    let mut negate = false;
    let mut prev = T::one_elem();
    for k in 0..n - 1 {
        if m[k][k].is_zero_elem() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero_elem()) else {
                return Ok(T::zero_elem());
            };
            m.swap(k, swap);
            negate = !negate;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let cross = row[j].mul_elem(pivot).sub_elem(&factor.mul_elem(&pivot_row[j]));
                row[j] = cross.div_exact_elem(&prev)?;
            }
            row[k] = T::zero_elem();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg_elem() } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leibniz(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * leibniz(&minor)
            })
            .sum()
    }

    #[test]
    fn matches_cofactor_expansion() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]],
            vec![vec![0, 2, 1], vec![0, 3, 2], vec![4, 1, 1]],
            vec![vec![0, 0, 1, 2], vec![3, 0, 0, 1], vec![0, 5, 0, 0], vec![1, 1, 1, 7]],
            vec![vec![1, 2], vec![2, 4]],
        ];
        for m in cases {
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            assert_eq!(bareiss_determinant(big).unwrap(), BigInt::from(leibniz(&m)), "{m:?}");
        }
    }
}
