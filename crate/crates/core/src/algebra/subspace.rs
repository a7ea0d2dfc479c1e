//! Subspaces of a coordinate space in canonical form.
//!
//! The stored basis is in reduced column-echelon form: each column has its
//! topmost nonzero entry equal to 1, those pivot rows strictly increase from
//! left to right, and every other column vanishes on each pivot row. Two
//! subspaces are therefore equal exactly when their stored bases are equal.

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(field, ambient, 0) }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::identity(field, ambient) }
    }

    /// Canonical span of arbitrary (possibly dependent) vectors.
    pub fn spanned_by(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut m = Matrix::zeros(field, vectors.len(), ambient);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
            for (j, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        let rank = m.rref_in_place().len();
        let cols: Vec<Vec<Scalar>> = (0..rank).map(|i| m.row(i).to_vec()).collect();
        Subspace { basis: Matrix::from_columns(field, ambient, &cols) }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The canonical basis, one column per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vector(&self, k: usize) -> Vec<Scalar> {
        self.basis.column(k)
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|k| self.basis_vector(k)).collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut vs = self.basis_vectors();
        vs.push(v.to_vec());
        Subspace::spanned_by(self.field(), self.ambient(), &vs).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient() == other.ambient() && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient(),
                found: other.ambient(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Ok(Subspace::spanned_by(self.field(), self.ambient(), &vs))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.field(), self.ambient()));
        }
        // Solve U x + W y = 0; the U x are exactly the common vectors.
        let mut joined = Matrix::zeros(self.field(), self.ambient(), a + b);
        for i in 0..self.ambient() {
            for j in 0..a {
                joined.set(i, j, self.basis.get(i, j).clone());
            }
            for j in 0..b {
                joined.set(i, a + j, other.basis.get(i, j).clone());
            }
        }
        let common: Vec<Vec<Scalar>> = joined
            .kernel()
            .basis_vectors()
            .iter()
            .map(|xy| self.basis.mul_vec(&xy[..a]))
            .collect();
        Ok(Subspace::spanned_by(self.field(), self.ambient(), &common))
    }

    /// The image `M * self`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient(), "operator does not act on this space");
        (m * &self.basis).column_space()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(k: i64) -> Scalar {
        Field::Rational.from_i64(k)
    }

    fn span(vs: &[&[i64]]) -> Subspace {
        let n = vs.first().map_or(0, |v| v.len());
        let vecs: Vec<Vec<Scalar>> = vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
        Subspace::spanned_by(Field::Rational, n, &vecs)
    }

    #[test]
    fn intersection_examples() {
        let u = span(&[&[1, 2, 0], &[0, 1, 1]]);
        assert_eq!(u.intersect(&u).unwrap(), u);
        let full = Subspace::full(Field::Rational, 3);
        assert_eq!(full.intersect(&u).unwrap(), u);
        let a = span(&[&[1, 0]]);
        let b = span(&[&[1, 1]]);
        assert!(a.intersect(&b).unwrap().is_zero());
        let small = Subspace::zero(Field::Rational, 2);
        assert_eq!(
            small.intersect(&u),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn canonical_form_is_reduced_column_echelon() {
        let u = span(&[&[0, 2, 4], &[3, 3, 3]]);
        let b = u.basis();
        assert_eq!(b.column(0), vec![q(1), q(0), q(-1)]);
        assert_eq!(b.column(1), vec![q(0), q(1), q(2)]);
    }

    #[test]
    fn image_and_sum() {
        let swap = Matrix::from_rows(Field::Rational, vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert_eq!(span(&[&[1, 0]]).image(&swap), span(&[&[0, 1]]));
        assert_eq!(
            span(&[&[1, 0]]).sum(&span(&[&[1, 1]])).unwrap(),
            Subspace::full(Field::Rational, 2)
        );
    }

    proptest! {
        #[test]
        fn canonical_basis_ignores_spanning_set(
            base in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 4), 1..4),
            mix in proptest::collection::vec(-3i64..=3, 9),
        ) {
            let vecs: Vec<Vec<Scalar>> = base.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
            let first = Subspace::spanned_by(Field::Rational, 4, &vecs);
            // Random combinations plus the originals span the same space.
            let mut other: Vec<Vec<Scalar>> = (0..3)
                .map(|k| {
                    let mut acc = vec![q(0); 4];
                    for (idx, v) in vecs.iter().enumerate() {
                        let c = q(mix[(k * 3 + idx) % mix.len()]);
                        for t in 0..4 {
                            acc[t] = &acc[t] + &(&c * &v[t]);
                        }
                    }
                    acc
                })
                .collect();
            other.extend(vecs.iter().rev().cloned());
            prop_assert_eq!(Subspace::spanned_by(Field::Rational, 4, &other), first);
        }

        #[test]
        fn intersection_dimension_bound(
            a in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..4),
            b in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..4),
        ) {
            let to = |vs: &Vec<Vec<i64>>| {
                let vecs: Vec<Vec<Scalar>> = vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
                Subspace::spanned_by(Field::Rational, 4, &vecs)
            };
            let (u, w) = (to(&a), to(&b));
            let cap = u.intersect(&w).unwrap();
            prop_assert!(cap.dim() + 4 >= u.dim() + w.dim());
            prop_assert!(cap.is_subspace_of(&u) && cap.is_subspace_of(&w));
            prop_assert_eq!(cap.dim() + u.sum(&w).unwrap().dim(), u.dim() + w.dim());
        }
    }
}
