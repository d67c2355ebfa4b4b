//! Closed-form orbit labels for the affine stabilisers in [`crate::oracle`].

mod subfield;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use subfield::{c5_orbit_size, eta, k_index, SubfieldClassifier};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::forms::VectorClass;
use crate::linalg::reshape_to_matrix;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OrbitLabel {
    /// Number of nonzero blocks.
    Blocks(usize),
    /// Exactly one of the two totally isotropic halves is nonzero.
    OneHalf,
    /// Both halves nonzero; the Frobenius class of the pairing value.
    Pairing(Vec<Fe>),
    /// Rank of the coefficient matrix of a tensor.
    TensorRank(usize),
    /// Dimension `c` of the subfield span and the canonical key of its class.
    Subfield { c: usize, key: Vec<Fe> },
    Form(VectorClass),
    /// An orbit found by closure only.
    Orbit(u32),
}

impl OrbitLabel {
    pub fn render(&self, f: &Field) -> String {
        let list = |xs: &[Fe]| xs.iter().map(|&x| f.format(x)).collect::<Vec<_>>().join(",");
        match self {
            OrbitLabel::Pairing(b) => format!("W{{{}}}", list(b)),
            OrbitLabel::Subfield { c, key } => format!("c{c}[{}]", list(key)),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes = |xs: &[Fe]| xs.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(",");
        match self {
            OrbitLabel::Blocks(s) => write!(f, "X{s}"),
            OrbitLabel::OneHalf => f.write_str("X1"),
            OrbitLabel::Pairing(b) => write!(f, "W{{{}}}", codes(b)),
            OrbitLabel::TensorRank(s) => write!(f, "Y{s}"),
            OrbitLabel::Subfield { c, key } => write!(f, "c{c}[{}]", codes(key)),
            OrbitLabel::Form(c) => write!(f, "{c}"),
            OrbitLabel::Orbit(id) => write!(f, "O{id}"),
        }
    }
}

fn check_nonzero(v: &[Fe], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// Number of nonzero blocks of `v` in `V = U_1 + .. + U_t`, `dim U_i = m`.
pub fn block_count(v: &[Fe], m: usize, t: usize) -> Result<usize> {
    check_nonzero(v, m * t)?;
    Ok(v.chunks(m).filter(|b| b.iter().any(|x| !x.is_zero())).count())
}

/// Label of `v = (u, w)` in `U_1 + U_2` with totally isotropic halves of
/// dimension `m`: one half zero, or the Frobenius class of `sum u_i w_i`.
pub fn pairing_label(v: &[Fe], m: usize, f: &Field) -> Result<OrbitLabel> {
    check_nonzero(v, 2 * m)?;
    let (u, w) = v.split_at(m);
    if u.iter().all(|x| x.is_zero()) || w.iter().all(|x| x.is_zero()) {
        return Ok(OrbitLabel::OneHalf);
    }
    let beta = crate::linalg::dot(u, w, f);
    Ok(OrbitLabel::Pairing(frobenius_class(beta, f)))
}

/// Sorted, deduplicated Galois conjugates of `a`.
pub fn frobenius_class(a: Fe, f: &Field) -> Vec<Fe> {
    let mut class: Vec<Fe> = (0..f.degree()).map(|k| f.frobenius(a, k)).collect();
    class.sort_unstable();
    class.dedup();
    class
}

/// Rank of the `k x m` coefficient matrix of `v` in `U (x) W`.
pub fn tensor_rank(v: &[Fe], k: usize, m: usize, f: &Field) -> Result<usize> {
    check_nonzero(v, k * m)?;
    Ok(reshape_to_matrix(v, k, m)?.rank(f))
}
