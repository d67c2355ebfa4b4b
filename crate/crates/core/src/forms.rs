//! Standard nondegenerate classical forms and their vector classes.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field, SquareClass};
use crate::linalg::{dot, vec_mul, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FormKind {
    Symplectic,
    Unitary,
    /// Odd dimension, tail `z^2`.
    QuadraticOddSquare,
    /// Odd dimension, tail `c z^2` with `c` the first nonsquare.
    QuadraticOddNonsquare,
    QuadraticPlus,
    QuadraticMinus,
}

impl FormKind {
    pub fn is_quadratic(self) -> bool {
        !matches!(self, FormKind::Symplectic | FormKind::Unitary)
    }

    pub fn is_odd_quadratic(self) -> bool {
        matches!(self, FormKind::QuadraticOddSquare | FormKind::QuadraticOddNonsquare)
    }
}

/// The set `S_lambda` a nonzero vector belongs to, coarsened to the level
/// of detail that distinguishes similarity orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VectorClass {
    Singular,
    Nonsingular,
    SquareValue,
    NonsquareValue,
}

impl fmt::Display for VectorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VectorClass::Singular => "S0",
            VectorClass::Nonsingular => "S#",
            VectorClass::SquareValue => "Ssq",
            VectorClass::NonsquareValue => "Snsq",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClassicalForm {
    kind: FormKind,
    field: Arc<Field>,
    n: usize,
    gram: Matrix,
    quad: Option<Matrix>,
    conj: u32,
}

/// First `(c, b)` in enumeration order, `c` outermost, with `x^2 + b x + c`
/// irreducible over the field.
pub fn first_irreducible_quadratic(f: &Field) -> (Fe, Fe) {
    for c in f.elements() {
        for b in f.elements() {
            let has_root = f.elements().any(|x| f.add(f.add(f.mul(x, x), f.mul(b, x)), c).is_zero());
            if !has_root {
                return (b, c);
            }
        }
    }
    unreachable!("irreducible quadratics exist over every finite field")
}

impl ClassicalForm {
    pub fn standard(kind: FormKind, n: usize, field: Arc<Field>) -> Result<ClassicalForm> {
        let f = &*field;
        let one = f.one();
        let odd_char = f.characteristic() != 2;
        let bad = |msg: &str| Err(Error::IncompatibleForm(msg.to_string()));
        if n == 0 {
            return bad("dimension must be positive");
        }
        let mut conj = 0;
        let (gram, quad) = match kind {
            FormKind::Symplectic => {
                if n % 2 != 0 {
                    return bad("symplectic forms need even dimension");
                }
                let m = n / 2;
                let mut g = Matrix::zeros(n, n);
                for i in 0..m {
                    g.set(i, m + i, one);
                    g.set(m + i, i, f.neg(one));
                }
                (g, None)
            }
            FormKind::Unitary => {
                if f.degree() % 2 != 0 {
                    return bad("unitary forms need a square field order");
                }
                conj = f.degree() / 2;
                let m = n / 2;
                let mut g = Matrix::zeros(n, n);
                for i in 0..m {
                    g.set(i, m + i, one);
                    g.set(m + i, i, one);
                }
                if n % 2 == 1 {
                    g.set(n - 1, n - 1, one);
                }
                (g, None)
            }
            FormKind::QuadraticOddSquare | FormKind::QuadraticOddNonsquare => {
                if n % 2 == 0 {
                    return bad("odd quadratic kinds need odd dimension");
                }
                if !odd_char {
                    return bad("odd-dimensional quadratic forms are degenerate in characteristic 2");
                }
                let m = (n - 1) / 2;
                let mut qc = Matrix::zeros(n, n);
                for i in 0..m {
                    qc.set(i, m + i, one);
                }
                let c = if kind == FormKind::QuadraticOddSquare { one } else { f.first_nonsquare()? };
                qc.set(n - 1, n - 1, c);
                (polar(&qc, f), Some(qc))
            }
            FormKind::QuadraticPlus => {
                if n % 2 != 0 {
                    return bad("plus-type forms need even dimension");
                }
                let m = n / 2;
                let mut qc = Matrix::zeros(n, n);
                for i in 0..m {
                    qc.set(i, m + i, one);
                }
                (polar(&qc, f), Some(qc))
            }
            FormKind::QuadraticMinus => {
                if n % 2 != 0 {
                    return bad("minus-type forms need even dimension");
                }
                let m = n / 2 - 1;
                let mut qc = Matrix::zeros(n, n);
                for i in 0..m {
                    qc.set(i, m + i, one);
                }
                let (b, c) = first_irreducible_quadratic(f);
                qc.set(n - 2, n - 2, one);
                qc.set(n - 2, n - 1, b);
                qc.set(n - 1, n - 1, c);
                (polar(&qc, f), Some(qc))
            }
        };
        Ok(ClassicalForm { kind, field, n, gram, quad, conj })
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Field> {
        self.field.clone()
    }

    /// Gram matrix of the bilinear, sesquilinear or polar form.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Upper-triangular matrix of the quadratic form, if any.
    pub fn quad_matrix(&self) -> Option<&Matrix> {
        self.quad.as_ref()
    }

    /// Field automorphism exponent applied to the second argument.
    pub fn conjugation(&self) -> u32 {
        self.conj
    }

    fn check_len(&self, v: &[Fe]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        Ok(())
    }

    pub fn eval_bilinear(&self, u: &[Fe], v: &[Fe]) -> Result<Fe> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.bilinear_unchecked(u, v))
    }

    pub(crate) fn bilinear_unchecked(&self, u: &[Fe], v: &[Fe]) -> Fe {
        let f = &*self.field;
        let ug = vec_mul(u, &self.gram, f);
        if self.conj == 0 {
            dot(&ug, v, f)
        } else {
            ug.iter().zip(v).fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, f.frobenius(b, self.conj))))
        }
    }

    pub fn eval_quadratic(&self, v: &[Fe]) -> Result<Fe> {
        self.check_len(v)?;
        if self.quad.is_none() {
            return Err(Error::IncompatibleForm("not a quadratic form".into()));
        }
        Ok(self.quadratic_unchecked(v))
    }

    pub(crate) fn quadratic_unchecked(&self, v: &[Fe]) -> Fe {
        let f = &*self.field;
        let qc = self.quad.as_ref().expect("quadratic form");
        dot(&vec_mul(v, qc, f), v, f)
    }

    /// `Q(v)` for quadratic forms and `phi(v, v)` otherwise.
    pub fn phi_bar(&self, v: &[Fe]) -> Result<Fe> {
        self.check_len(v)?;
        Ok(self.phi_bar_unchecked(v))
    }

    pub(crate) fn phi_bar_unchecked(&self, v: &[Fe]) -> Fe {
        if self.quad.is_some() {
            self.quadratic_unchecked(v)
        } else {
            self.bilinear_unchecked(v, v)
        }
    }

    pub fn vector_class(&self, v: &[Fe]) -> Result<VectorClass> {
        self.check_len(v)?;
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let val = self.phi_bar_unchecked(v);
        if val.is_zero() {
            return Ok(VectorClass::Singular);
        }
        if self.kind.is_odd_quadratic() {
            return Ok(match self.field.square_class(val)? {
                SquareClass::Square => VectorClass::SquareValue,
                _ => VectorClass::NonsquareValue,
            });
        }
        Ok(VectorClass::Nonsingular)
    }

    /// Returns `lambda` when `g` scales the form by `lambda`.
    pub fn similarity_multiplier(&self, g: &Matrix) -> Result<Option<Fe>> {
        let f = &*self.field;
        if g.rows() != self.n || !g.is_square() {
            return Err(Error::DimensionMismatch { expected: self.n, got: g.rows() });
        }
        let gbar_t = g.frobenius(self.conj, f).transpose();
        let (image, reference) = match &self.quad {
            Some(qc) => (g.mul(qc, f)?.mul(&g.transpose(), f)?, qc),
            None => (g.mul(&self.gram, f)?.mul(&gbar_t, f)?, &self.gram),
        };
        let Some(lambda) = self.field.nonzero().find(|&l| {
            let scaled = reference.map(|x| f.mul(l, x));
            match &self.quad {
                Some(_) => same_quadratic(&image, &scaled, f),
                None => image == scaled,
            }
        }) else {
            return Ok(None);
        };
        Ok(Some(lambda))
    }

    pub fn is_isometry(&self, g: &Matrix) -> Result<bool> {
        Ok(self.similarity_multiplier(g)? == Some(self.field.one()))
    }
}

fn polar(qc: &Matrix, f: &Field) -> Matrix {
    qc.add(&qc.transpose(), f).expect("square")
}

/// Whether two square matrices define the same quadratic form.
fn same_quadratic(a: &Matrix, b: &Matrix, f: &Field) -> bool {
    let n = a.rows();
    for i in 0..n {
        if a.get(i, i) != b.get(i, i) {
            return false;
        }
        for j in i + 1..n {
            if f.add(a.get(i, j), a.get(j, i)) != f.add(b.get(i, j), b.get(j, i)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::VectorSpace;

    fn census(kind: FormKind, p: u32, e: u32, n: usize) -> std::collections::BTreeMap<VectorClass, usize> {
        let f = Arc::new(Field::new(p, e).unwrap());
        let form = ClassicalForm::standard(kind, n, f.clone()).unwrap();
        let s = VectorSpace::new(f, n).unwrap();
        let mut out = std::collections::BTreeMap::new();
        for i in s.nonzero() {
            *out.entry(form.vector_class(&s.vector(i)).unwrap()).or_default() += 1;
        }
        out
    }

    #[test]
    fn unitary_plane_over_gf4() {
        let c = census(FormKind::Unitary, 2, 2, 2);
        assert_eq!(c[&VectorClass::Singular], 9);
        assert_eq!(c[&VectorClass::Nonsingular], 6);
    }

    #[test]
    fn symplectic_is_totally_isotropic() {
        let c = census(FormKind::Symplectic, 3, 1, 4);
        assert_eq!(c.len(), 1);
        assert_eq!(c[&VectorClass::Singular], 80);
    }

    #[test]
    fn minus_plane_is_anisotropic() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let c = census(FormKind::QuadraticMinus, p, e, 2);
            assert!(!c.contains_key(&VectorClass::Singular));
        }
    }

    #[test]
    fn singular_counts_match_closed_forms() {
        // plus type in dimension 2m has (q^m - 1)(q^(m-1) + 1) singular vectors
        assert_eq!(census(FormKind::QuadraticPlus, 3, 1, 4)[&VectorClass::Singular], 8 * 4);
        // minus type has (q^m + 1)(q^(m-1) - 1)
        assert_eq!(census(FormKind::QuadraticMinus, 3, 1, 4)[&VectorClass::Singular], 10 * 2);
        // odd dimension 2m + 1 has q^(2m) - 1
        assert_eq!(census(FormKind::QuadraticOddSquare, 3, 1, 3)[&VectorClass::Singular], 8);
    }

    #[test]
    fn odd_kinds_have_both_value_classes() {
        let c = census(FormKind::QuadraticOddNonsquare, 3, 1, 3);
        assert_eq!(c[&VectorClass::SquareValue] + c[&VectorClass::NonsquareValue], 18);
    }

    #[test]
    fn rejects_incompatible_requests() {
        let f2 = Arc::new(Field::new(2, 1).unwrap());
        let f3 = Arc::new(Field::new(3, 1).unwrap());
        assert!(ClassicalForm::standard(FormKind::Symplectic, 3, f3.clone()).is_err());
        assert!(ClassicalForm::standard(FormKind::Unitary, 2, f3.clone()).is_err());
        assert!(ClassicalForm::standard(FormKind::QuadraticOddSquare, 3, f2).is_err());
        let sp = ClassicalForm::standard(FormKind::Symplectic, 2, f3.clone()).unwrap();
        assert!(sp.eval_quadratic(&[Fe::ZERO, Fe::ZERO]).is_err());
        assert_eq!(sp.vector_class(&[Fe::ZERO, Fe::ZERO]).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn scalar_multipliers() {
        let f = Arc::new(Field::new(5, 1).unwrap());
        let form = ClassicalForm::standard(FormKind::QuadraticPlus, 2, f.clone()).unwrap();
        let two = f.from_int(2);
        let g = Matrix::scalar(2, two);
        assert_eq!(form.similarity_multiplier(&g).unwrap(), Some(f.from_int(4)));
        let sp = ClassicalForm::standard(FormKind::Symplectic, 2, f.clone()).unwrap();
        assert!(sp.is_isometry(&Matrix::identity(2, &f)).unwrap());
    }
}
