//! Indexing of the vectors of GF(q)^n by integers.
//!
//! The index of `v` is `sum code(v_i) * q^(n-1-i)`. Since element codes are
//! base-`p` digit strings, the index is a base-`p` digit string as well and
//! vector addition is digit-wise addition modulo `p`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// Largest space on which orbit closure and BFS run.
pub const SPACE_CAP: u64 = 1 << 22;

pub struct VectorSpace {
    field: Arc<Field>,
    n: usize,
    size: u32,
    chunk: u32,
    chunk_add: Vec<u32>,
    chunk_neg: Vec<u32>,
}

impl std::fmt::Debug for VectorSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VectorSpace(GF({})^{})", self.field.order(), self.n)
    }
}

impl VectorSpace {
    pub fn new(field: Arc<Field>, n: usize) -> Result<VectorSpace> {
        Self::with_cap(field, n, SPACE_CAP)
    }

    pub fn with_cap(field: Arc<Field>, n: usize, cap: u64) -> Result<VectorSpace> {
        if n == 0 {
            return Err(Error::InvalidParameters("dimension must be at least 1".into()));
        }
        let size = (field.order() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if size > cap {
            return Err(Error::CapExceeded { what: "vector space", size, cap });
        }
        let p = field.characteristic();
        let mut chunk = p;
        while chunk * p <= 256 {
            chunk *= p;
        }
        let (mut chunk_add, mut chunk_neg) = (Vec::new(), Vec::new());
        if p != 2 {
            let digit_add = |mut a: u32, mut b: u32| {
                let (mut r, mut w) = (0, 1);
                while a > 0 || b > 0 {
                    r += ((a % p + b % p) % p) * w;
                    a /= p;
                    b /= p;
                    w *= p;
                }
                r
            };
            chunk_add = vec![0; (chunk * chunk) as usize];
            for a in 0..chunk {
                for b in 0..chunk {
                    chunk_add[(a * chunk + b) as usize] = digit_add(a, b);
                }
            }
            chunk_neg = vec![0; chunk as usize];
            for a in 0..chunk {
                let mut x = a;
                let (mut r, mut w) = (0, 1);
                while w < chunk {
                    r += ((p - x % p) % p) * w;
                    x /= p;
                    w *= p;
                }
                chunk_neg[a as usize] = r;
            }
        }
        Ok(VectorSpace { field, n, size: size as u32, chunk, chunk_add, chunk_neg })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Field> {
        self.field.clone()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn index(&self, v: &[Fe]) -> u32 {
        let q = self.field.order();
        v.iter().fold(0u32, |acc, x| acc * q + x.0)
    }

    pub fn vector(&self, idx: u32) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.n];
        self.write_vector(idx, &mut v);
        v
    }

    pub fn write_vector(&self, mut idx: u32, out: &mut [Fe]) {
        let q = self.field.order();
        for slot in out.iter_mut().rev() {
            *slot = Fe(idx % q);
            idx /= q;
        }
    }

    pub fn add(&self, mut a: u32, mut b: u32) -> u32 {
        if self.field.characteristic() == 2 {
            return a ^ b;
        }
        let c = self.chunk;
        let (mut r, mut w) = (0u32, 1u32);
        while a > 0 || b > 0 {
            r += self.chunk_add[((a % c) * c + b % c) as usize] * w;
            a /= c;
            b /= c;
            w = w.wrapping_mul(c);
        }
        r
    }

    pub fn neg(&self, mut a: u32) -> u32 {
        if self.field.characteristic() == 2 {
            return a;
        }
        let c = self.chunk;
        let (mut r, mut w) = (0u32, 1u32);
        while a > 0 {
            r += self.chunk_neg[(a % c) as usize] * w;
            a /= c;
            w = w.wrapping_mul(c);
        }
        r
    }

    pub fn nonzero(&self) -> impl Iterator<Item = u32> {
        1..self.size
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_addition_matches_field_addition() {
        for (p, e, n) in [(3, 1, 3), (3, 2, 2), (5, 1, 2), (2, 2, 3), (7, 1, 2)] {
            let f = Arc::new(Field::new(p, e).unwrap());
            let s = VectorSpace::new(f.clone(), n).unwrap();
            for a in 0..s.size() {
                let va = s.vector(a);
                assert_eq!(s.index(&va), a);
                let neg: Vec<Fe> = va.iter().map(|&x| f.neg(x)).collect();
                assert_eq!(s.neg(a), s.index(&neg));
                for b in (0..s.size()).step_by(3) {
                    let vb = s.vector(b);
                    let sum: Vec<Fe> = va.iter().zip(&vb).map(|(&x, &y)| f.add(x, y)).collect();
                    assert_eq!(s.add(a, b), s.index(&sum));
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = Arc::new(Field::new(2, 1).unwrap());
        assert!(matches!(VectorSpace::new(f.clone(), 23), Err(Error::CapExceeded { .. })));
        assert!(VectorSpace::new(f, 0).is_err());
    }
}
