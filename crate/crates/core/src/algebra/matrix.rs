//! Dense exact matrices.
//!
//! Shapes are checked with assertions in the arithmetic operators (a shape
//! mismatch there is a programming error); operations whose failure depends
//! on the entries, such as inversion, return `Result`.

use std::ops::{Add, Index, Mul, Neg, Sub};

use super::poly::Poly;
use super::scalar::{Field, Scalar};
use super::subspace::Subspace;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix::diagonal(field, &vec![field.one(); n])
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(field, diag.len(), diag.len());
        for (i, v) in diag.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Lower bidiagonal: `diag` on the diagonal, `sub` just below it.
    pub fn lower_bidiagonal(field: Field, diag: &[Scalar], sub: &[Scalar]) -> Matrix {
        assert_eq!(sub.len() + 1, diag.len());
        let mut m = Matrix::diagonal(field, diag);
        for (i, v) in sub.iter().enumerate() {
            m.set(i + 1, i, v.clone());
        }
        m
    }

    /// Upper bidiagonal: `diag` on the diagonal, `sup` just above it.
    pub fn upper_bidiagonal(field: Field, diag: &[Scalar], sup: &[Scalar]) -> Matrix {
        assert_eq!(sup.len() + 1, diag.len());
        let mut m = Matrix::diagonal(field, diag);
        for (i, v) in sup.iter().enumerate() {
            m.set(i, i + 1, v.clone());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    /// Builds a `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// `self - s * I`.
    pub fn shift(&self, s: &Scalar) -> Matrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) - s;
            m.set(i, i, v);
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Result<Scalar, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc += self.get(i, i);
        }
        Ok(acc)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    /// Coordinates of the first entry where `self` and `other` differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((self.rows.min(other.rows), self.cols.min(other.cols)));
        }
        (0..self.data.len())
            .find(|&k| self.data[k] != other.data[k])
            .map(|k| (k / self.cols, k % self.cols))
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.field, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a.get(col, col).inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.add_row_multiple(r, col, &f);
                    inv.add_row_multiple(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);
            let s = self.get(row, col).inv().expect("pivot is nonzero");
            self.scale_row(row, &s);
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let f = self.get(r, col).clone();
                    self.add_row_multiple(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub fn kernel(&self) -> Subspace {
        let mut r = self.clone();
        let pivots = r.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(k, f);
                }
                v
            })
            .collect();
        Subspace::spanned_by(self.field, self.cols, &vectors)
    }

    pub fn column_space(&self) -> Subspace {
        let cols: Vec<Vec<Scalar>> = (0..self.cols).map(|j| self.column(j)).collect();
        Subspace::spanned_by(self.field, self.rows, &cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for j in 0..self.cols {
            self.data[r * self.cols + j] *= s;
        }
    }

    /// row[target] -= f * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, f: &Scalar) {
        for j in 0..self.cols {
            let s = self.get(source, j);
            if !s.is_zero() {
                let delta = f * s;
                self.data[target * self.cols + j] -= &delta;
            }
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j)
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-self.field.one())
    }
}

/// Horner evaluation of `p` at a square matrix.
pub fn poly_apply(p: &Poly, m: &Matrix) -> Matrix {
    assert!(m.is_square());
    let n = m.rows();
    let mut acc = Matrix::zeros(m.field(), n, n);
    for c in p.coeffs().iter().rev() {
        acc = &acc * m;
        for i in 0..n {
            let v = acc.get(i, i) + c;
            acc.set(i, i, v);
        }
    }
    acc
}

/// `tr(a * b)` without forming the product.
pub fn trace_of_product(a: &Matrix, b: &Matrix) -> Scalar {
    assert_eq!((a.rows(), a.cols()), (b.cols(), b.rows()));
    let mut acc = a.field().zero();
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = a.get(i, k);
            let y = b.get(k, i);
            if !x.is_zero() && !y.is_zero() {
                acc += &(x * y);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(k: i64) -> Scalar {
        Field::Rational.from_i64(k)
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            Field::Rational,
            rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn poly_apply_basics() {
        let m = mat(&[&[1, 2], &[3, 4]]);
        let f = Field::Rational;
        assert_eq!(poly_apply(&Poly::one(f), &m), Matrix::identity(f, 2));
        assert_eq!(poly_apply(&Poly::x(f), &m), m);
        assert_eq!(poly_apply(&Poly::zero(f), &m), Matrix::zeros(f, 2, 2));
        let sq = Poly::from_coeffs(f, vec![q(-1), q(0), q(1)]);
        assert_eq!(poly_apply(&sq, &m), &(&m * &m) - &Matrix::identity(f, 2));
    }

    #[test]
    fn identity_cases() {
        let f = Field::Rational;
        let i3 = Matrix::identity(f, 3);
        assert_eq!(i3.kernel().dim(), 0);
        assert_eq!(i3.inverse().unwrap(), i3);
        assert_eq!(Matrix::diagonal(f, &[q(2), q(0), q(-2)]).trace().unwrap(), q(0));
    }

    #[test]
    fn singular_inverse_is_reported() {
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
        assert!(matches!(mat(&[&[1, 2]]).inverse(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = mat(&[&[1, 1], &[2, 2]]).kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[q(1), q(-1)]));
    }

    #[test]
    fn triangularity_and_difference() {
        let l = mat(&[&[1, 0], &[5, 1]]);
        assert!(l.is_lower_triangular());
        assert!(!l.is_upper_triangular());
        assert_eq!(l.first_difference(&l), None);
        assert_eq!(l.first_difference(&mat(&[&[1, 0], &[4, 1]])), Some((1, 0)));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
            Matrix::from_rows(
                Field::Rational,
                v.chunks(n).map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn inverse_is_exact(n in 1usize..=6, seed in any::<u64>()) {
            let m = {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                Matrix::from_rows(
                    Field::Rational,
                    (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-6..=6))).collect()).collect(),
                ).unwrap()
            };
            match m.inverse() {
                Ok(inv) => {
                    prop_assert_eq!(&m * &inv, Matrix::identity(Field::Rational, n));
                    prop_assert_eq!(&inv * &m, Matrix::identity(Field::Rational, n));
                }
                Err(Error::Singular) => prop_assert!(m.rank() < n),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }

        #[test]
        fn prime_field_inverse(v in proptest::collection::vec(0u64..10007, 16)) {
            let f = Field::Prime(10007);
            let m = Matrix::from_rows(
                f,
                v.chunks(4).map(|r| r.iter().map(|&x| f.from_i64(x as i64)).collect()).collect(),
            ).unwrap();
            if let Ok(inv) = m.inverse() {
                prop_assert_eq!(&m * &inv, Matrix::identity(f, 4));
            }
        }

        #[test]
        fn kernel_vectors_are_annihilated(m in arb_matrix(4)) {
            let k = m.kernel();
            prop_assert_eq!(k.dim() + m.rank(), 4);
            for j in 0..k.dim() {
                prop_assert!(m.mul_vec(&k.basis_vector(j)).iter().all(Scalar::is_zero));
            }
        }
    }
}
