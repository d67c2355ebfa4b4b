//! Arithmetic in GF(p^e).
//!
//! Elements are stored as their rank in the lexicographic enumeration of
//! coefficient vectors `(c0, c1, .., c_{e-1})`, constant term first, so the
//! constant coefficient is the most significant base-`p` digit of the code.
//! The defining modulus is the lexicographically smallest monic irreducible
//! polynomial of degree `e` under the same ordering.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`Field::new`].
pub const FIELD_CAP: u64 = 1 << 24;

/// Fields up to this order get exp/log tables.
const TABLE_CAP: u32 = 1 << 20;

/// Fields up to this order with odd characteristic get an addition table.
const ADD_TABLE_CAP: u32 = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Zero,
    Square,
    Nonsquare,
}

/// A subfield GF(p^e0) of a field GF(p^e), identified by its degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Subfield {
    pub degree: u32,
    pub order: u32,
}

struct LogTables {
    // exp has length 2(q-1) so that exp[log a + log b] needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    weights: Vec<u32>,
    primitive: Fe,
    tables: Option<LogTables>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns `(p, e)` when `n = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = prime_factors(n);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut e = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    Some((p, e))
}

// Polynomials over GF(p) as coefficient vectors, constant term first.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    // b is monic
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let lead = *r.last().unwrap();
        for (i, &bi) in b.iter().enumerate() {
            let t = (r[shift + i] + p - (lead * bi) % p) % p;
            r[shift + i] = t;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn digits_msd_first(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = code % p;
        code /= p;
    }
    out
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        let count = (p as u64).pow(k as u32);
        for lower in 0..count {
            let mut g = digits_msd_first(lower as u32, p, k);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `e`
/// over GF(p), as coefficients constant term first (length `e + 1`).
pub fn lex_smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for lower in 0..count {
        let mut f = digits_msd_first(lower as u32, p, e as usize);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl Field {
    pub fn new(p: u32, e: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= FIELD_CAP)
            .ok_or(Error::FieldTooLarge { p: p as u64, e, cap: FIELD_CAP })?;
        let q = q as u32;
        let modulus = lex_smallest_irreducible(p, e);
        let weights = (0..e).map(|i| p.pow(e - 1 - i)).collect();
        let mut field = Field {
            p,
            e,
            q,
            modulus,
            weights,
            primitive: Fe::ZERO,
            tables: None,
            add_table: None,
        };
        field.primitive = field.find_primitive();
        if q <= TABLE_CAP {
            field.tables = Some(field.build_tables());
        }
        if p != 2 && q <= ADD_TABLE_CAP {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = Some(t);
        }
        Ok(field)
    }

    /// Builds GF(q) from the order itself.
    pub fn from_order(q: u64) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or(Error::InvalidParameters(format!("{q} is not a prime power")))?;
        Field::new(p as u32, e)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe(self.weights[0])
    }

    /// The polynomial generator `x` of the basis (equal to the constant
    /// root of the modulus when `e = 1`).
    pub fn basis_generator(&self) -> Fe {
        if self.e == 1 {
            Fe((self.p - self.modulus[0]) % self.p)
        } else {
            Fe(self.weights[1])
        }
    }

    /// The smallest element, in enumeration order, of multiplicative order `q - 1`.
    pub fn primitive(&self) -> Fe {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> {
        (1..self.q).map(Fe)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        let c = n.rem_euclid(self.p as i64) as u32;
        Fe(c * self.weights[0])
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        digits_msd_first(a.0, self.p, self.e as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Fe {
        let mut code = 0;
        for (i, &ci) in c.iter().enumerate().take(self.e as usize) {
            code += (ci % self.p) * self.weights[i];
        }
        Fe(code)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let (mut r, mut w) = (0, 1);
        while a > 0 || b > 0 {
            r += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        r
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if let Some(t) = &self.add_table {
            return Fe(t[(a.0 * self.q + b.0) as usize]);
        }
        Fe(self.add_digits(a.0, b.0))
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut x, mut r, mut w) = (a.0, 0, 1);
        while x > 0 {
            r += ((p - x % p) % p) * w;
            x /= p;
            w *= p;
        }
        Fe(r)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        let prod = poly_mul(&self.coeffs(a), &self.coeffs(b), self.p);
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.from_coeffs(&r)
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: Fe, k: u64) -> Fe {
        if k == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        if let Some(t) = &self.tables {
            let l = (t.log[a.0 as usize] as u64 * (k % (self.q as u64 - 1))) % (self.q as u64 - 1);
            return Fe(t.exp[l as usize]);
        }
        self.pow_slow(a, k)
    }

    fn pow_slow(&self, a: Fe, mut k: u64) -> Fe {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Ok(Fe(t.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
            }
            None => Ok(self.pow_slow(a, self.q as u64 - 2)),
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Discrete logarithm to the base [`Field::primitive`].
    pub fn log(&self, a: Fe) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        match &self.tables {
            Some(t) => Ok(t.log[a.0 as usize]),
            None => {
                let mut x = self.one();
                for i in 0..self.q - 1 {
                    if x == a {
                        return Ok(i);
                    }
                    x = self.mul_slow(x, self.primitive);
                }
                unreachable!("primitive element generates the multiplicative group")
            }
        }
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: Fe, k: u32) -> Fe {
        let k = k % self.e;
        if k == 0 {
            return a;
        }
        self.pow(a, (self.p as u64).pow(k))
    }

    pub fn subfield(&self, degree: u32) -> Result<Subfield> {
        if degree == 0 || self.e % degree != 0 {
            return Err(Error::InvalidSubfield(degree, self.e));
        }
        Ok(Subfield { degree, order: self.p.pow(degree) })
    }

    pub fn in_subfield(&self, a: Fe, sub: Subfield) -> bool {
        self.frobenius(a, sub.degree) == a
    }

    /// A generator of the multiplicative group of the subfield.
    pub fn subfield_primitive(&self, sub: Subfield) -> Fe {
        self.pow(self.primitive, ((self.q - 1) / (sub.order - 1)) as u64)
    }

    pub fn trace_to(&self, a: Fe, sub: Subfield) -> Fe {
        let steps = self.e / sub.degree;
        (0..steps).fold(Fe::ZERO, |acc, i| self.add(acc, self.frobenius(a, i * sub.degree)))
    }

    pub fn norm_to(&self, a: Fe, sub: Subfield) -> Fe {
        let steps = self.e / sub.degree;
        (0..steps).fold(self.one(), |acc, i| self.mul(acc, self.frobenius(a, i * sub.degree)))
    }

    /// Elements of the subfield that are linearly independent over GF(p),
    /// chosen greedily in enumeration order.
    pub fn subfield_prime_basis(&self, sub: Subfield) -> Vec<Fe> {
        let members: Vec<Fe> = self.elements().filter(|&a| self.in_subfield(a, sub)).collect();
        crate::linalg::greedy_prime_basis(self, members.into_iter(), sub.degree as usize)
    }

    pub fn square_class(&self, a: Fe) -> Result<SquareClass> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if a.0 == 0 {
            return Ok(SquareClass::Zero);
        }
        let half = (self.q as u64 - 1) / 2;
        Ok(if self.pow(a, half) == self.one() { SquareClass::Square } else { SquareClass::Nonsquare })
    }

    /// First nonsquare in enumeration order (odd characteristic only).
    pub fn first_nonsquare(&self) -> Result<Fe> {
        for a in self.nonzero() {
            if self.square_class(a)? == SquareClass::Nonsquare {
                return Ok(a);
            }
        }
        unreachable!("odd-order fields have nonsquares")
    }

    pub fn format(&self, a: Fe) -> String {
        if self.e == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let coeff = if ci == 1 && i > 0 { String::new() } else { ci.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    fn find_primitive(&self) -> Fe {
        let order = self.q as u64 - 1;
        let primes = prime_factors(order);
        for g in 1..self.q {
            let g = Fe(g);
            if primes.iter().all(|&l| self.pow_slow(g, order / l) != self.one()) {
                return g;
            }
        }
        unreachable!("finite fields have cyclic multiplicative groups")
    }

    fn build_tables(&self) -> LogTables {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.q as usize];
        let mut x = self.one();
        for i in 0..n {
            exp[i] = x.0;
            exp[i + n] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, self.primitive);
        }
        LogTables { exp, log }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_modulus_and_generator() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = f.basis_generator();
        assert_eq!(f.mul(w, w), f.add(w, f.one()));
    }

    #[test]
    fn small_moduli() {
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(Field::new(5, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn gf8_generator_cubed() {
        let f = Field::new(2, 3).unwrap();
        let x = f.basis_generator();
        let x3 = f.pow(x, 3);
        let x2 = f.mul(x, x);
        assert_eq!(x3, f.add(x2, f.one()));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(2, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(Field::new(2, 25), Err(Error::FieldTooLarge { .. })));
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.inv(Fe::ZERO).unwrap_err(), Error::DivisionByZero);
        assert_eq!(f.subfield(2).unwrap_err(), Error::InvalidSubfield(2, 1));
        assert_eq!(Field::new(2, 2).unwrap().square_class(Fe(1)).unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn square_classes_gf3() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.square_class(f.from_int(2)).unwrap(), SquareClass::Nonsquare);
        assert_eq!(f.square_class(f.from_int(1)).unwrap(), SquareClass::Square);
        assert_eq!(f.square_class(Fe::ZERO).unwrap(), SquareClass::Zero);
        assert_eq!(f.first_nonsquare().unwrap(), f.from_int(2));
    }

    #[test]
    fn trace_and_norm_gf9_over_gf3() {
        let f = Field::new(3, 2).unwrap();
        let sub = f.subfield(1).unwrap();
        for a in f.elements() {
            let t = f.trace_to(a, sub);
            let n = f.norm_to(a, sub);
            assert!(f.in_subfield(t, sub));
            assert!(f.in_subfield(n, sub));
            assert_eq!(t, f.add(a, f.frobenius(a, 1)));
        }
        let members = f.elements().filter(|&a| f.in_subfield(a, sub)).count();
        assert_eq!(members, 3);
    }

    #[test]
    fn slow_path_agrees_with_tables() {
        let f = Field::new(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn primitive_has_full_order() {
        for (p, e) in [(2, 1), (2, 4), (3, 2), (5, 1), (7, 2)] {
            let f = Field::new(p, e).unwrap();
            let g = f.primitive();
            let mut seen = std::collections::HashSet::new();
            let mut x = f.one();
            for _ in 0..f.order() - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, f.order() - 1);
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn format_polynomials() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.format(f.one()), "1");
        assert_eq!(f.format(f.basis_generator()), "x");
        assert_eq!(f.format(Fe(3)), "x+1");
    }
}
