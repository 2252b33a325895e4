//! Little-endian encoding of number tuples as naturals.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::StructureError;

/// Encodes `t` as `sum_i t_i * (n+1)^i` (0-based `i`).
pub fn num_encode(t: &[usize], n: usize) -> Result<BigUint, StructureError> {
    let base = BigUint::from(n + 1);
    let mut acc = BigUint::zero();
    for &d in t.iter().rev() {
        if d > n {
            return Err(StructureError::NumberOutOfRange { value: d, max: n });
        }
        acc = acc * &base + BigUint::from(d);
    }
    Ok(acc)
}

/// Inverse of [`num_encode`] for tuples of width `k`.
pub fn num_decode(v: &BigUint, k: usize, n: usize) -> Result<Vec<usize>, StructureError> {
    let base = BigUint::from(n + 1);
    let mut rest = v.clone();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let digit = &rest % &base;
        out.push(digit.to_usize().expect("digit below base"));
        rest /= &base;
    }
    if !rest.is_zero() {
        return Err(StructureError::EncodingRange {
            width: k,
            base: n + 1,
        });
    }
    Ok(out)
}
