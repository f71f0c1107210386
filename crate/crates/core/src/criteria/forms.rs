use crate::error::{Error, Result};
use num_integer::Integer;

/// Primitive reduced positive definite forms `a x^2 + b xy + c y^2` of
/// discriminant `disc`, ordered by `(a, b)`.
pub fn reduced_forms(disc: i64) -> Result<Vec<(i64, i64, i64)>> {
    if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
        return Err(Error::BadDiscriminant(disc));
    }
    let abs = disc.unsigned_abs() as i128;
    let mut out = Vec::new();
    let mut b_abs: i128 = abs % 2 ;
    // Reduced forms satisfy 3 b^2 <= 3 a^2 <= 4ac - b^2 + b^2 = |D| + b^2.
    while 3 * b_abs * b_abs <= abs {
        let four_ac = abs + b_abs * b_abs;
        let mut a = b_abs.max(1);
        while a * a <= four_ac / 4 {
            if four_ac % (4 * a) == 0 {
                let c = four_ac / (4 * a);
                let signs: &[i128] = if b_abs == 0 || b_abs == a || a == c { &[1] } else { &[1, -1] };
                for b in signs.iter().map(|s| s * b_abs) {
                    if c >= a && a.gcd(&b).gcd(&c) == 1 {
                        out.push((a as i64, b as i64, c as i64));
                    }
                }
            }
            a += 1;
        }
        b_abs += 2;
    }
    out.sort_unstable();
    Ok(out)
}
