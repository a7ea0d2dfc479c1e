use crate::algebra::{check_distinct, Matrix, Scalar};
use crate::error::Error;
use crate::parameter_array::D4Element;

/// Primitive idempotents `E_i = prod_{j != i} (M - theta_j I)/(theta_i - theta_j)`.
pub fn idempotents(m: &Matrix, eigs: &[Scalar]) -> Result<Vec<Matrix>, Error> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.rows() != eigs.len() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: eigs.len() });
    }
    check_distinct(eigs)?;
    let field = m.field();
    let shifts: Vec<Matrix> = eigs.iter().map(|t| m.shift(t)).collect();
    let mut out = Vec::with_capacity(eigs.len());
    for (i, ti) in eigs.iter().enumerate() {
        let mut acc = Matrix::identity(field, m.rows());
        let mut denom = field.one();
        for (j, tj) in eigs.iter().enumerate() {
            if i != j {
                acc = &acc * &shifts[j];
                denom *= &(ti - tj);
            }
        }
        out.push(acc.scale(&denom.inv()?));
    }
    Ok(out)
}

/// A pair of multiplicity-free matrices together with an ordering of each
/// one's eigenvalues, i.e. the data `(A; {E_i}; A*; {E*_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    first: Matrix,
    first_eigs: Vec<Scalar>,
    first_idem: Vec<Matrix>,
    second: Matrix,
    second_eigs: Vec<Scalar>,
    second_idem: Vec<Matrix>,
}

impl System {
    pub fn new(first: Matrix, first_eigs: Vec<Scalar>, second: Matrix, second_eigs: Vec<Scalar>) -> Result<System, Error> {
        let first_idem = idempotents(&first, &first_eigs)?;
        let second_idem = idempotents(&second, &second_eigs)?;
        Ok(System { first, first_eigs, first_idem, second, second_eigs, second_idem })
    }

    pub fn d(&self) -> usize {
        self.first_eigs.len() - 1
    }

    pub fn first(&self) -> &Matrix {
        &self.first
    }

    pub fn second(&self) -> &Matrix {
        &self.second
    }

    pub fn first_eigenvalues(&self) -> &[Scalar] {
        &self.first_eigs
    }

    pub fn second_eigenvalues(&self) -> &[Scalar] {
        &self.second_eigs
    }

    pub fn first_idempotents(&self) -> &[Matrix] {
        &self.first_idem
    }

    pub fn second_idempotents(&self) -> &[Matrix] {
        &self.second_idem
    }

    /// The relative `g` of this system: reorder the idempotent families and
    /// possibly swap the halves. Nothing is recomputed.
    pub fn relative(&self, g: D4Element) -> System {
        let order = |eigs: &[Scalar], idem: &[Matrix], rev: bool| {
            let (mut e, mut m) = (eigs.to_vec(), idem.to_vec());
            if rev {
                e.reverse();
                m.reverse();
            }
            (e, m)
        };
        let (fe, fi) = order(&self.first_eigs, &self.first_idem, g.rev_e);
        let (se, si) = order(&self.second_eigs, &self.second_idem, g.rev_es);
        let a = (self.first.clone(), fe, fi);
        let b = (self.second.clone(), se, si);
        let (x, y) = if g.swapped { (b, a) } else { (a, b) };
        System {
            first: x.0,
            first_eigs: x.1,
            first_idem: x.2,
            second: y.0,
            second_eigs: y.1,
            second_idem: y.2,
        }
    }
}
