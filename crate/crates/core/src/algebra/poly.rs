//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored in ascending degree order with trailing zeros
//! stripped, so the zero polynomial has an empty coefficient list and no
//! degree.

use std::fmt;

use super::scalar::{Field, Scalar};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::from_coeffs(c.field(), vec![c])
    }

    /// The indeterminate itself.
    pub fn x(field: Field) -> Poly {
        Poly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    /// `x - root`.
    pub fn linear_factor(root: &Scalar) -> Poly {
        let field = root.field();
        Poly::from_coeffs(field, vec![-root, field.one()])
    }

    pub fn from_coeffs(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    pub fn monic(&self) -> Result<Poly, Error> {
        let lead = self.leading().ok_or(Error::DivisionByZero)?;
        self.div_scalar(lead)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn div_scalar(&self, s: &Scalar) -> Result<Poly, Error> {
        Ok(self.scale(&s.inv()?))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(self.field, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(self.field, (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(self.field, out)
    }

    /// Multiplies by `x - root`.
    pub fn mul_linear(&self, root: &Scalar) -> Poly {
        self.mul(&Poly::linear_factor(root))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Checks that a sequence has no repeated entries; reports the later index
/// of the first repeat.
pub fn check_distinct(values: &[Scalar]) -> Result<(), Error> {
    for j in 1..values.len() {
        if values[..j].contains(&values[j]) {
            return Err(Error::DuplicateEigenvalue(j));
        }
    }
    Ok(())
}

/// `prod_{k<i} (x - values[k])` for `i = 0..=len`, built incrementally.
pub fn falling_products(field: Field, values: &[Scalar]) -> Vec<Poly> {
    let mut out = Vec::with_capacity(values.len() + 1);
    out.push(Poly::one(field));
    for v in values {
        let next = out.last().unwrap().mul_linear(v);
        out.push(next);
    }
    out
}

/// The pair `(tau_i, eta_i)`: the monic products over the first `i`
/// eigenvalues taken from the front and from the back respectively.
pub fn tau_eta_polys(eigs: &[Scalar], i: usize) -> Result<(Poly, Poly), Error> {
    let field = eigs.first().map(Scalar::field).ok_or(Error::IndexOutOfRange { index: i, max: 0 })?;
    check_distinct(eigs)?;
    let d = eigs.len() - 1;
    if i > d {
        return Err(Error::IndexOutOfRange { index: i, max: d });
    }
    let tau = eigs[..i].iter().fold(Poly::one(field), |p, t| p.mul_linear(t));
    let eta = eigs.iter().rev().take(i).fold(Poly::one(field), |p, t| p.mul_linear(t));
    Ok((tau, eta))
}

/// Coordinates of `target` in a basis whose `i`-th member has degree
/// exactly `i`, by back-substitution from the top degree.
pub fn expand_in_poly_basis(target: &Poly, basis: &[Poly]) -> Result<Vec<Scalar>, Error> {
    for (i, b) in basis.iter().enumerate() {
        if b.degree() != Some(i) {
            return Err(Error::NotGraded(i));
        }
    }
    let field = target.field();
    let top = basis.len();
    if let Some(deg) = target.degree() {
        if deg >= top {
            return Err(Error::NotGraded(deg));
        }
    }
    let mut rest = target.clone();
    let mut out = vec![field.zero(); top];
    for i in (0..top).rev() {
        let c = rest.coeff(i).checked_div(basis[i].leading().unwrap())?;
        if !c.is_zero() {
            rest = rest.sub(&basis[i].scale(&c));
        }
        out[i] = c;
    }
    debug_assert!(rest.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(k: i64) -> Scalar {
        Field::Rational.from_i64(k)
    }

    fn poly(cs: &[i64]) -> Poly {
        Poly::from_coeffs(Field::Rational, cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero(Field::Rational).degree(), None);
        assert_eq!(poly(&[0, 0, 0]).degree(), None);
        assert_eq!(poly(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn tau_eta_examples() {
        let eigs = [q(2), q(0), q(-2)];
        assert_eq!(tau_eta_polys(&eigs, 0).unwrap(), (poly(&[1]), poly(&[1])));
        // (x-2)x and (x+2)x
        assert_eq!(tau_eta_polys(&eigs, 2).unwrap(), (poly(&[0, -2, 1]), poly(&[0, 2, 1])));
        assert_eq!(
            tau_eta_polys(&[q(1), q(-1)], 1).unwrap(),
            (poly(&[-1, 1]), poly(&[1, 1]))
        );
        assert_eq!(tau_eta_polys(&eigs, 3), Err(Error::IndexOutOfRange { index: 3, max: 2 }));
        assert_eq!(tau_eta_polys(&[q(1), q(1)], 0), Err(Error::DuplicateEigenvalue(1)));
    }

    #[test]
    fn expansion_examples() {
        let basis = [poly(&[1]), poly(&[2, 1]), poly(&[0, 2, 1])];
        let target = poly(&[0, -2, 1]);
        assert_eq!(expand_in_poly_basis(&target, &basis).unwrap(), vec![q(8), q(-4), q(1)]);
        assert_eq!(expand_in_poly_basis(&basis[1], &basis).unwrap(), vec![q(0), q(1), q(0)]);
        assert_eq!(
            expand_in_poly_basis(&Poly::zero(Field::Rational), &basis).unwrap(),
            vec![q(0); 3]
        );
        let ungraded = [poly(&[1]), poly(&[0, 2, 1])];
        assert_eq!(expand_in_poly_basis(&target, &ungraded), Err(Error::NotGraded(1)));
    }

    proptest! {
        #[test]
        fn falling_products_recurrence(vals in proptest::collection::vec(-20i64..20, 1..7)) {
            let eigs: Vec<Scalar> = vals.iter().map(|&v| q(v)).collect();
            let fam = falling_products(Field::Rational, &eigs);
            for (i, e) in eigs.iter().enumerate() {
                prop_assert_eq!(fam[i].mul_linear(e), fam[i + 1].clone());
                prop_assert!(fam[i + 1].is_monic());
                prop_assert_eq!(fam[i + 1].degree(), Some(i + 1));
            }
        }

        #[test]
        fn expansion_resums_to_target(
            roots in proptest::collection::vec(-9i64..9, 1..6),
            target in proptest::collection::vec(-9i64..9, 0..6),
        ) {
            let eigs: Vec<Scalar> = roots.iter().map(|&v| q(v)).collect();
            let basis = falling_products(Field::Rational, &eigs);
            let mut t = target.clone();
            t.truncate(basis.len());
            let target = poly(&t);
            let coords = expand_in_poly_basis(&target, &basis).unwrap();
            let resum = coords
                .iter()
                .zip(&basis)
                .fold(Poly::zero(Field::Rational), |acc, (c, b)| acc.add(&b.scale(c)));
            prop_assert_eq!(resum, target);
        }
    }
}
