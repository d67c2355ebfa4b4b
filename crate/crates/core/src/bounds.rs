//! Exact classical group orders, the order-bound searches for the
//! extraspecial-normaliser and tensor-induced cases, and the subfield-case
//! bound predicates.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::eta;
use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Gl,
    Sp,
    /// Unitary group `GU(n, q0)` over GF(q0^2); `q` is `q0`.
    Gu,
    OOdd,
    OPlus,
    OMinus,
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn pow(q: u64, k: u64) -> BigUint {
    num_traits::pow(big(q), k as usize)
}

/// Order of the full isometry group (or `GL`) in dimension `n` over GF(q).
pub fn group_order(family: Family, n: u64, q: u64) -> Result<BigUint> {
    if prime_power(q).is_none() {
        return Err(Error::InvalidParameters(format!("{q} is not a prime power")));
    }
    let bad = |msg: &str| Err(Error::InvalidParameters(msg.to_string()));
    let prod = |range: std::ops::RangeInclusive<u64>, g: &dyn Fn(u64) -> BigUint| range.fold(BigUint::one(), |acc, i| acc * g(i));
    Ok(match family {
        Family::Gl => pow(q, n * n.saturating_sub(1) / 2) * prod(1..=n, &|i| pow(q, i) - 1u32),
        Family::Sp => {
            if n % 2 != 0 {
                return bad("symplectic groups need even dimension");
            }
            let m = n / 2;
            pow(q, m * m) * prod(1..=m, &|i| pow(q, 2 * i) - 1u32)
        }
        Family::Gu => {
            let qi = BigInt::from(q);
            let v = prod(1..=n, &|i| {
                let sign = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
                let t = num_traits::pow(qi.clone(), i as usize) - sign;
                t.to_biguint().expect("positive")
            });
            pow(q, n * n.saturating_sub(1) / 2) * v
        }
        Family::OOdd => {
            if n % 2 == 0 || q % 2 == 0 {
                return bad("odd orthogonal groups need odd n and odd q");
            }
            let m = (n - 1) / 2;
            big(2) * pow(q, m * m) * prod(1..=m, &|i| pow(q, 2 * i) - 1u32)
        }
        Family::OPlus | Family::OMinus => {
            if n % 2 != 0 || n == 0 {
                return bad("even orthogonal groups need even positive n");
            }
            let m = n / 2;
            let qm = pow(q, m);
            let middle = if family == Family::OPlus { qm - 1u32 } else { qm + 1u32 };
            big(2) * pow(q, m * (m - 1)) * middle * prod(1..=m - 1, &|i| pow(q, 2 * i) - 1u32)
        }
    })
}

fn signed(x: BigUint) -> BigInt {
    BigInt::from(x)
}

/// `((r-1)(q-1) r^(2t) |Sp(2t, r)|)^2 + 1 - q^(r^t)`.
pub fn pi_type1(q: u64, r: u64, t: u64) -> Result<BigInt> {
    let sp = group_order(Family::Sp, 2 * t, r)?;
    let base = big(r - 1) * big(q - 1) * pow(r, 2 * t) * sp;
    Ok(signed(&base * &base) + 1 - signed(pow(q, r.pow(t as u32))))
}

/// `(2(q-1) 2^(2t) |Sp(2t, 2)|)^2 + 1 - q^(2^t)`.
pub fn pi_type2(q: u64, t: u64) -> Result<BigInt> {
    let sp = group_order(Family::Sp, 2 * t, 2)?;
    let base = big(2) * big(q - 1) * pow(2, 2 * t) * sp;
    Ok(signed(&base * &base) + 1 - signed(pow(q, 1 << t)))
}

/// `((q-1) 2^(2t) |O^-(2t, 2)|)^2 + 1 - q^(2^t)`.
pub fn pi_type4(q: u64, t: u64) -> Result<BigInt> {
    let o = group_order(Family::OMinus, 2 * t, 2)?;
    let base = big(q - 1) * pow(2, 2 * t) * o;
    Ok(signed(&base * &base) + 1 - signed(pow(q, 1 << t)))
}

/// Largest `q` beyond which `pi_type1(q, r, t) < 0` is guaranteed: the
/// floor of `((r-1) r^(2t) |Sp(2t, r)|)^(2 / (r^t - 2))`.
pub fn type1_cap(r: u64, t: u64) -> Result<u64> {
    let x = big(r - 1) * pow(r, 2 * t) * group_order(Family::Sp, 2 * t, r)?;
    let k = r.pow(t as u32) - 2;
    to_u64((&x * &x).nth_root(k as u32))
}

/// Floor of `(2^(2t+1) |Sp(2t, 2)|)^(1 / (2^(t-1) - 1))`.
pub fn type2_cap(t: u64) -> Result<u64> {
    let x = pow(2, 2 * t + 1) * group_order(Family::Sp, 2 * t, 2)?;
    to_u64(x.nth_root(((1u64 << (t - 1)) - 1) as u32))
}

/// Floor of `(2^(2t) |O^-(2t, 2)|)^(1 / (2^(t-1) - 1))`.
pub fn type4_cap(t: u64) -> Result<u64> {
    let x = pow(2, 2 * t) * group_order(Family::OMinus, 2 * t, 2)?;
    to_u64(x.nth_root(((1u64 << (t - 1)) - 1) as u32))
}

fn to_u64(x: BigUint) -> Result<u64> {
    x.to_u64().ok_or(Error::InvalidParameters("search cap exceeds 64 bits".into()))
}

/// Prime powers `q = p^l <= cap` with `q = 1 (mod r)` and `l <= r - 1`.
pub fn admissible_type1(r: u64, cap: u64) -> Vec<u64> {
    (2..=cap).filter(|&q| q % r == 1 && prime_power(q).is_some_and(|(_, l)| (l as u64) < r)).collect()
}

/// Prime powers `q = p^l <= cap` with `q = 1 (mod 4)` and `l <= 2`.
pub fn admissible_type2(cap: u64) -> Vec<u64> {
    (2..=cap).filter(|&q| q % 4 == 1 && prime_power(q).is_some_and(|(_, l)| l <= 2)).collect()
}

/// Odd primes `q <= cap`.
pub fn admissible_type4(cap: u64) -> Vec<u64> {
    (3..=cap).filter(|&q| is_prime(q)).collect()
}

/// Largest admissible `q` with `pi(q) > 0`, scanning down from the top.
fn largest_positive(candidates: &[u64], pi: impl Fn(u64) -> Result<BigInt> + Sync) -> Result<Option<u64>> {
    // Candidates are tested in parallel blocks; the first hit from the top wins.
    const BLOCK: usize = 64;
    for chunk in candidates.rchunks(BLOCK) {
        let hits: Vec<Option<u64>> = chunk.par_iter().map(|&q| pi(q).map(|v| v.is_positive().then_some(q))).collect::<Result<_>>()?;
        if let Some(q) = hits.into_iter().flatten().max() {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// `q0(r, t)` for the type-1 case, or `None` if no admissible `q` exists.
pub fn search_type1(r: u64, t: u64) -> Result<Option<u64>> {
    let cap = type1_cap(r, t)?;
    largest_positive(&admissible_type1(r, cap), |q| pi_type1(q, r, t))
}

pub fn search_type2(t: u64) -> Result<Option<u64>> {
    let cap = type2_cap(t)?;
    largest_positive(&admissible_type2(cap), |q| pi_type2(q, t))
}

pub fn search_type4(t: u64) -> Result<Option<u64>> {
    let cap = type4_cap(t)?;
    largest_positive(&admissible_type4(cap), |q| pi_type4(q, t))
}

/// Whether the crude exponent bound already rules out every `q` for the
/// type-1 pair `(r, t)`: `4t^2 + 6t + 4 < r^t`.
pub fn type1_excluded_analytically(r: u64, t: u64) -> bool {
    (4 * t * t + 6 * t + 4) < r.checked_pow(t as u32).unwrap_or(u64::MAX)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type1Table {
    pub ts: Vec<u64>,
    pub rs: Vec<u64>,
    /// `cells[i][j]` is `q0(rs[i], ts[j])`.
    pub cells: Vec<Vec<Option<u64>>>,
    /// `r0(t)` for each `t`.
    pub r0: Vec<Option<u64>>,
}

/// Odd primes `r` for which the pair `(r, t)` survives the crude bound.
pub fn type1_candidate_rs(t: u64) -> Vec<u64> {
    (3..).step_by(2).filter(|&r| is_prime(r)).take_while(|&r| !type1_excluded_analytically(r, t)).collect()
}

pub fn regenerate_type1(ts: &[u64], rs: &[u64]) -> Result<Type1Table> {
    let mut cells = vec![vec![None; ts.len()]; rs.len()];
    let mut r0 = Vec::new();
    for (j, &t) in ts.iter().enumerate() {
        let mut best = None;
        for r in type1_candidate_rs(t) {
            let found = search_type1(r, t)?;
            if found.is_some() {
                best = Some(r);
            }
            if let Some(i) = rs.iter().position(|&x| x == r) {
                cells[i][j] = found;
            }
        }
        r0.push(best);
    }
    Ok(Type1Table { ts: ts.to_vec(), rs: rs.to_vec(), cells, r0 })
}

pub fn regenerate_type2(ts: &[u64]) -> Result<Vec<Option<u64>>> {
    ts.iter().map(|&t| search_type2(t)).collect()
}

pub fn regenerate_type4(ts: &[u64]) -> Result<Vec<Option<u64>>> {
    ts.iter().map(|&t| search_type4(t)).collect()
}

/// Whether `t^2 + (2m^2 - 3)t + 4 < m^t`.
pub fn tensor_inequality(m: u64, t: u64) -> bool {
    let lhs = BigInt::from(t * t) + BigInt::from(2 * m * m) * t - BigInt::from(3 * t) + 4;
    lhs < BigInt::from(pow(m, t))
}

/// Largest `m >= 2` for which the tensor inequality fails. Beyond
/// `m = t^2 + 2t + 4` the inequality holds for every `t >= 3`, since then
/// `m^t >= m^3 > (2t + t^2 + 4) m^2`.
pub fn m0(t: u64) -> Option<u64> {
    let limit = t * t + 2 * t + 4;
    (2..=limit).filter(|&m| !tensor_inequality(m, t)).max()
}

/// Which sufficient conditions for diameter greater than two fire for a
/// subfield-case orbit with `c(v) = a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C5Verdicts {
    /// `2 <= a < min(n, r) / 2`.
    pub small_span: bool,
    /// Window condition with `+k1` in the upper limit.
    pub window_plus: bool,
    /// Window condition with `-k1` in the upper limit, as derived from the counting bound.
    pub window_minus: bool,
    /// Symplectic variant: `a < min(n, r) / 2`.
    pub sp_small_span: bool,
    /// Symplectic variant: `3 <= n <= r`, `a >= n / 2`, `r > (n^2 + n + 2st) / (n - 2)`.
    pub sp_window: bool,
}

impl C5Verdicts {
    /// The general-linear verdict used for claims: the `-k1` window.
    pub fn gl_fires(&self) -> bool {
        self.small_span || self.window_minus
    }

    pub fn sp_fires(&self) -> bool {
        self.sp_small_span || self.sp_window
    }
}

/// Largest divisor of `e` not exceeding `eta(a)`.
pub fn window_s(a: u32, r: u32, q0: u64) -> Result<u64> {
    let (_, e0) = prime_power(q0).ok_or(Error::InvalidParameters(format!("{q0} is not a prime power")))?;
    let e = e0 as u64 * r as u64;
    let bound = eta(a, r, q0)?;
    Ok(crate::counting::divisors(e).into_iter().filter(|&d| d as u128 <= bound).max().unwrap_or(1))
}

/// `s_gl` feeds the general-linear window (normally [`window_s`]); `s_sp`
/// is the order of the field automorphism group for the symplectic variant.
pub fn c5_bound_predicates(n: u64, r: u64, q0: u64, a: u64, s_gl: u64, s_sp: u64) -> Result<C5Verdicts> {
    if prime_power(q0).is_none() || n < 1 || r < 2 || a < 1 || a > n.min(r) {
        return Err(Error::InvalidParameters(format!("need q0 a prime power, 1 <= a <= min(n, r); got n={n} r={r} q0={q0} a={a}")));
    }
    let (n_, r_, a_, s, ss) = (n as i128, r as i128, a as i128, s_gl as i128, s_sp as i128);
    let mn = n_.min(r_);
    let small_span = a_ >= 2 && 2 * a_ < mn;
    let in_window = (3..r_).contains(&n_) && 2 * a_ >= n_;
    // a < (r(n-2) -/+ k1) / (2n), scaled to integers.
    let (window_plus, window_minus) = if q0 == 2 {
        // k1 = 18 s / 17
        let base = 17 * r_ * (n_ - 2);
        (in_window && 34 * n_ * a_ < base + 18 * s, in_window && 34 * n_ * a_ < base - 18 * s)
    } else {
        // k1 = s - 5/4
        let base = 4 * r_ * (n_ - 2);
        let k = 4 * s - 5;
        (in_window && 8 * n_ * a_ < base + k, in_window && 8 * n_ * a_ < base - k)
    };
    let sp_small_span = 2 * a_ < mn;
    // r (n-2) > n^2 + n + 2 s t with t = 9/17 (q0 = 2) or 1/2
    let sp_threshold = if q0 == 2 { 17 * r_ * (n_ - 2) > 17 * (n_ * n_ + n_) + 18 * ss } else { r_ * (n_ - 2) > n_ * n_ + n_ + ss };
    let sp_window = n_ >= 3 && n_ <= r_ && 2 * a_ >= n_ && sp_threshold;
    Ok(C5Verdicts { small_span, window_plus, window_minus, sp_small_span, sp_window })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(group_order(Family::Sp, 2, 2).unwrap(), big(6));
        assert_eq!(group_order(Family::Gl, 2, 3).unwrap(), big(48));
        assert_eq!(group_order(Family::OMinus, 2, 2).unwrap(), big(6));
        assert_eq!(group_order(Family::OMinus, 6, 2).unwrap(), big(51840));
        assert_eq!(group_order(Family::Gu, 2, 2).unwrap(), big(18));
        assert_eq!(group_order(Family::OOdd, 3, 3).unwrap(), big(48));
        assert!(group_order(Family::Sp, 3, 2).is_err());
        assert!(group_order(Family::Gl, 2, 6).is_err());
    }

    #[test]
    fn table9_values() {
        let got: Vec<Option<u64>> = (3..=6).map(m0).collect();
        assert_eq!(got, vec![Some(6), Some(2), Some(2), Some(2)]);
    }

    #[test]
    fn type2_first_entry() {
        assert_eq!(search_type2(2).unwrap(), Some(23029));
    }

    #[test]
    fn type4_first_entry() {
        assert_eq!(search_type4(2).unwrap(), Some(1913));
    }

    #[test]
    fn predicate_examples() {
        let v = c5_bound_predicates(5, 5, 2, 2, 1, 1).unwrap();
        assert!(v.small_span && v.gl_fires());
        let v = c5_bound_predicates(5, 5, 2, 5, 1, 1).unwrap();
        assert!(!v.small_span && !v.window_minus && !v.window_plus);
        let v = c5_bound_predicates(3, 23, 2, 2, 1, 1).unwrap();
        assert!(v.sp_window);
        assert!(c5_bound_predicates(3, 3, 2, 4, 1, 1).is_err());
    }

    #[test]
    fn sp_window_threshold_boundary() {
        // (9 + 3 + 18/17) / 1 = 13.06: r = 13 does not fire, r = 14 does
        assert!(!c5_bound_predicates(3, 13, 2, 2, 1, 1).unwrap().sp_window);
        assert!(c5_bound_predicates(3, 14, 2, 2, 1, 1).unwrap().sp_window);
    }
}
