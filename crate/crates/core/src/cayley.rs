//! Cayley graphs `Cay(V, S)` of the additive group of a vector space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::span_rank;
use crate::space::VectorSpace;

/// A validated connection set: nonzero, closed under negation, and
/// generating `V` as an additive group.
#[derive(Clone, Debug)]
pub struct ConnectionSet<'a> {
    space: &'a VectorSpace,
    members: Vec<u32>,
}

impl<'a> ConnectionSet<'a> {
    pub fn validate(space: &'a VectorSpace, members: &[u32]) -> Result<ConnectionSet<'a>> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.first() == Some(&0) {
            return Err(Error::ContainsZero);
        }
        if members.iter().any(|&x| x >= space.size()) {
            return Err(Error::InvalidParameters("vector index out of range".into()));
        }
        if members.iter().any(|&x| members.binary_search(&space.neg(x)).is_err()) {
            return Err(Error::NotSymmetric);
        }
        // The index of a vector is its base-p digit string, so additive
        // generation is a rank condition over GF(p) on those digits.
        let f = space.field();
        let p = f.characteristic();
        let width = space.dim() * f.degree() as usize;
        let prime = Field::new(p, 1)?;
        let digits: Vec<Vec<Fe>> = members
            .iter()
            .map(|&x| {
                let mut d = vec![Fe::ZERO; width];
                let mut x = x;
                for slot in d.iter_mut().rev() {
                    *slot = Fe(x % p);
                    x /= p;
                }
                d
            })
            .collect();
        if span_rank(digits.iter().map(|v| v.as_slice()), width, &prime) < width {
            return Err(Error::NotSpanning);
        }
        Ok(ConnectionSet { space, members })
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn space(&self) -> &VectorSpace {
        self.space
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterReport {
    /// Every vertex is reachable from zero.
    pub connected: bool,
    /// Largest finite distance from zero.
    pub diameter: u32,
    /// Number of vertices at each distance from the zero vector.
    pub histogram: Vec<u64>,
    pub degree: u64,
}

/// Breadth-first distance profile from the zero vector; by vertex
/// transitivity this is the profile from every vertex.
pub fn distance_profile(s: &ConnectionSet<'_>) -> DiameterReport {
    let space = s.space;
    let size = space.size() as usize;
    let mut dist = vec![u8::MAX; size];
    dist[0] = 0;
    let mut frontier = vec![0u32];
    let mut histogram = vec![1u64];
    let mut level = 0u8;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &g in &s.members {
                let y = space.add(x, g);
                if dist[y as usize] == u8::MAX {
                    dist[y as usize] = level + 1;
                    next.push(y);
                }
            }
        }
        level += 1;
        if !next.is_empty() {
            histogram.push(next.len() as u64);
        }
        frontier = next;
    }
    let reached: u64 = histogram.iter().sum();
    DiameterReport { connected: reached == size as u64, diameter: histogram.len() as u32 - 1, histogram, degree: s.len() as u64 }
}

/// Decides diameter two from `S + S`, computed with coordinate-wise field
/// arithmetic rather than index arithmetic.
pub fn diam2_by_sumset(s: &ConnectionSet<'_>) -> bool {
    let space = s.space;
    let f = space.field();
    let size = space.size() as usize;
    if s.len() + 1 == size {
        // complete graph
        return false;
    }
    let mut covered = vec![false; size];
    covered[0] = true;
    let vectors: Vec<Vec<Fe>> = s.members.iter().map(|&x| space.vector(x)).collect();
    for &x in &s.members {
        covered[x as usize] = true;
    }
    let mut sum = vec![Fe::ZERO; space.dim()];
    for (i, u) in vectors.iter().enumerate() {
        for w in &vectors[i..] {
            for (k, slot) in sum.iter_mut().enumerate() {
                *slot = f.add(u[k], w[k]);
            }
            covered[space.index(&sum) as usize] = true;
        }
    }
    covered.iter().all(|&c| c)
}

/// The counting condition `|V| <= |S|^2 + 1` that every diameter-two
/// Cayley graph satisfies.
pub fn eq1_necessary(s_size: u128, v_size: u128) -> bool {
    s_size.checked_mul(s_size).map_or(true, |sq| v_size <= sq + 1)
}
