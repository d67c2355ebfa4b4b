//! Small exact counts used by the closed-form orbit sizes.

use crate::error::{Error, Result};

fn overflow() -> Error {
    Error::InvalidParameters("count does not fit in 128 bits".into())
}

/// Number of `k`-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: u32, k: u32, q: u128) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num = num.checked_mul(q.checked_pow(n - i).ok_or_else(overflow)? - 1).ok_or_else(overflow)?;
        den = den.checked_mul(q.checked_pow(i + 1).ok_or_else(overflow)? - 1).ok_or_else(overflow)?;
    }
    Ok(num / den)
}

/// `|GL(n, q)|`.
pub fn gl_order(n: u32, q: u128) -> Result<u128> {
    let qn = q.checked_pow(n).ok_or_else(overflow)?;
    (0..n).try_fold(1u128, |acc, i| acc.checked_mul(qn - q.pow(i)).ok_or_else(overflow))
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn exact_div(a: u128, b: u128) -> Result<u128> {
    if b == 0 || a % b != 0 {
        return Err(Error::NotDivisible(a, b));
    }
    Ok(a / b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), 3);
        assert_eq!(gaussian_binomial(5, 2, 3).unwrap(), 1210);
        assert_eq!(gaussian_binomial(3, 4, 2).unwrap(), 0);
        assert_eq!(gl_order(2, 2).unwrap(), 6);
        assert_eq!(gl_order(3, 2).unwrap(), 168);
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(exact_div(7, 2).unwrap_err(), Error::NotDivisible(7, 2));
    }
}
