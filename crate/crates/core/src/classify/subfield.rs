//! Vectors of GF(q)^n, `q = q0^r`, classified by the GF(q0)-span of their
//! coordinates.

use std::collections::HashSet;
use std::sync::Arc;

use super::{check_nonzero, OrbitLabel};
use crate::counting::{divisors, exact_div, gaussian_binomial, gl_order};
use crate::error::{Error, Result};
use crate::field::{prime_power, Fe, Field, Subfield};
use crate::linalg::prime_span_key;

pub struct SubfieldClassifier {
    field: Arc<Field>,
    sub: Subfield,
    n: usize,
    sub_basis: Vec<Fe>,
}

impl SubfieldClassifier {
    pub fn new(field: Arc<Field>, sub: Subfield, n: usize) -> Result<SubfieldClassifier> {
        if sub.degree == field.degree() {
            return Err(Error::InvalidParameters("subfield must be proper".into()));
        }
        let sub_basis = field.subfield_prime_basis(sub);
        Ok(SubfieldClassifier { field, sub, n, sub_basis })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn subfield(&self) -> Subfield {
        self.sub
    }

    pub fn r(&self) -> u32 {
        self.field.degree() / self.sub.degree
    }

    /// A GF(q0)-basis of GF(q), chosen greedily in enumeration order.
    pub fn relative_basis(&self) -> Vec<Fe> {
        let f = &*self.field;
        let mut basis: Vec<Fe> = Vec::new();
        let mut dim = 0;
        for a in f.nonzero() {
            let mut trial = basis.clone();
            trial.push(a);
            let d = self.span_key(&trial).len();
            if d > dim {
                basis = trial;
                dim = d;
            }
            if basis.len() as u32 == self.r() {
                break;
            }
        }
        basis
    }

    /// GF(p)-key of the GF(q0)-span of `elems`.
    pub fn span_key(&self, elems: &[Fe]) -> Vec<Fe> {
        let f = &*self.field;
        prime_span_key(f, elems.iter().flat_map(|&a| self.sub_basis.iter().map(move |&b| f.mul(a, b))))
    }

    pub fn subspace(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        check_nonzero(v, self.n)?;
        Ok(self.span_key(v))
    }

    pub fn c_value(&self, v: &[Fe]) -> Result<usize> {
        Ok(self.subspace(v)?.len() / self.sub.degree as usize)
    }

    fn transform(&self, key: &[Fe], lambda: Fe, sigma: u32) -> Vec<Fe> {
        let f = &*self.field;
        prime_span_key(f, key.iter().map(|&x| f.mul(lambda, f.frobenius(x, sigma))))
    }

    /// Every image of the span `key` under nonzero scalars, and under field
    /// automorphisms as well when `galois` is set.
    pub fn class_keys(&self, key: &[Fe], galois: bool) -> HashSet<Vec<Fe>> {
        let sigmas = if galois { self.field.degree() } else { 1 };
        let mut out = HashSet::new();
        for sigma in 0..sigmas {
            for lambda in self.field.nonzero() {
                out.insert(self.transform(key, lambda, sigma));
            }
        }
        out
    }

    fn canonical(&self, key: &[Fe], galois: bool) -> Vec<Fe> {
        self.class_keys(key, galois).into_iter().min().expect("class is nonempty")
    }

    /// Label of the orbit under scalars, GF(q0)-linear maps and field automorphisms.
    pub fn label(&self, v: &[Fe]) -> Result<OrbitLabel> {
        let key = self.subspace(v)?;
        let c = key.len() / self.sub.degree as usize;
        Ok(OrbitLabel::Subfield { c, key: self.canonical(&key, true) })
    }

    /// Label of the orbit under scalars and GF(q0)-linear maps only.
    pub fn linear_label(&self, v: &[Fe]) -> Result<OrbitLabel> {
        let key = self.subspace(v)?;
        let c = key.len() / self.sub.degree as usize;
        Ok(OrbitLabel::Subfield { c, key: self.canonical(&key, false) })
    }
}

fn q0_order(q0: u64) -> Result<u128> {
    prime_power(q0).ok_or(Error::InvalidParameters(format!("{q0} is not a prime power")))?;
    Ok(q0 as u128)
}

/// `|GF(q)^# : K(a)^#|` with `K(a) = GF(q)` when `a = r` and `GF(q0)` otherwise.
pub fn k_index(a: u32, r: u32, q0: u64) -> Result<u128> {
    let q0 = q0_order(q0)?;
    if a == 0 || a > r {
        return Err(Error::InvalidParameters(format!("need 1 <= a <= r, got a = {a}, r = {r}")));
    }
    if a == r {
        return Ok(1);
    }
    exact_div(q0.pow(r) - 1, q0 - 1)
}

/// Number of classes of `a`-dimensional GF(q0)-subspaces of GF(q0^r) under
/// multiplication by nonzero scalars.
pub fn eta(a: u32, r: u32, q0: u64) -> Result<u128> {
    let idx = k_index(a, r, q0)?;
    exact_div(gaussian_binomial(r, a, q0 as u128)?, idx)
}

/// Size of the orbit, under scalars and GF(q0)-linear maps, of a vector of
/// GF(q0^r)^n whose coordinates span an `a`-dimensional GF(q0)-space, and the
/// possible ratios of the orbit under the full group with automorphisms:
/// the divisors of `log_p q` that do not exceed `eta(a)`.
pub fn c5_orbit_size(a: u32, n: u32, r: u32, q0: u64) -> Result<(u128, Vec<u64>)> {
    let q0w = q0_order(q0)?;
    if a > n {
        return Err(Error::InvalidParameters(format!("a = {a} exceeds n = {n}")));
    }
    let size = gaussian_binomial(n, a, q0w)?
        .checked_mul(gl_order(a, q0w)?)
        .and_then(|x| x.checked_mul(k_index(a, r, q0).ok()?))
        .ok_or(Error::InvalidParameters("orbit size overflow".into()))?;
    let (_, e0) = prime_power(q0).expect("checked above");
    let e = e0 as u64 * r as u64;
    let bound = eta(a, r, q0)?;
    let s = divisors(e).into_iter().filter(|&d| d as u128 <= bound).collect();
    Ok((size, s))
}
