//! Recognition of Leonard pairs given in split form: `A` lower bidiagonal
//! with subdiagonal 1 and `A*` upper bidiagonal.

use std::fmt;

use crate::algebra::{check_distinct, Matrix, Scalar};
use crate::error::Error;
use crate::outcome::Outcome;
use crate::parameter_array::{validate_pa, Condition, ParameterArray};
use crate::realization::{idempotents, split_sequences_from_traces, switching_element};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidiagonalPair {
    pub a: Matrix,
    pub a_star: Matrix,
}

impl BidiagonalPair {
    /// Only checks that both matrices are square of the same size; the
    /// bidiagonal shape is judged by [`recognize`].
    pub fn new(a: Matrix, a_star: Matrix) -> Result<BidiagonalPair, Error> {
        for m in [&a, &a_star] {
            if !m.is_square() || m.rows() == 0 {
                return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
            }
        }
        if a.rows() != a_star.rows() {
            return Err(Error::DimensionMismatch { expected: a.rows(), found: a_star.rows() });
        }
        if a.field() != a_star.field() {
            return Err(Error::Parse(format!("fields differ: {} and {}", a.field(), a_star.field())));
        }
        Ok(BidiagonalPair { a, a_star })
    }

    pub fn d(&self) -> usize {
        self.a.rows() - 1
    }

    fn diagonal(m: &Matrix) -> Vec<Scalar> {
        (0..m.rows()).map(|i| m.get(i, i).clone()).collect()
    }

    pub fn theta(&self) -> Vec<Scalar> {
        Self::diagonal(&self.a)
    }

    pub fn theta_star(&self) -> Vec<Scalar> {
        Self::diagonal(&self.a_star)
    }

    /// The superdiagonal of `A*`.
    pub fn varphi(&self) -> Vec<Scalar> {
        (1..self.a_star.rows()).map(|i| self.a_star.get(i - 1, i).clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RejectReason {
    Shape(String),
    Condition(Condition),
    DegenerateTrace(usize),
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::Shape(s) => write!(f, "shape: {s}"),
            RejectReason::Condition(c) => write!(f, "{c}"),
            RejectReason::DegenerateTrace(i) => write!(f, "trace denominator vanishes at index {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept { array: ParameterArray, s: Matrix },
    Reject { reason: RejectReason },
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        matches!(self, Verdict::Accept { .. })
    }
}

fn shape_problem(pair: &BidiagonalPair) -> Option<String> {
    let n = pair.a.rows();
    for i in 0..n {
        for j in 0..n {
            let a = pair.a.get(i, j);
            if i == j + 1 {
                if !a.is_one() {
                    return Some(format!("A[{i},{j}] = {a}, subdiagonal entries must be 1"));
                }
            } else if i != j && !a.is_zero() {
                return Some(format!("A[{i},{j}] = {a}, A must be lower bidiagonal"));
            }
            let b = pair.a_star.get(i, j);
            if i != j && j != i + 1 && !b.is_zero() {
                return Some(format!("A*[{i},{j}] = {b}, A* must be upper bidiagonal"));
            }
        }
    }
    None
}

fn reject(reason: RejectReason) -> Verdict {
    Verdict::Reject { reason }
}

/// Reads `theta`, `theta*`, `varphi` off the matrices, finds `phi` from
/// traces and accepts exactly when the resulting array is valid. On
/// acceptance the switching element is returned, after confirming that it
/// conjugates `A*` into the reversed form.
pub fn recognize(pair: &BidiagonalPair) -> Result<Verdict, Error> {
    if let Some(s) = shape_problem(pair) {
        return Ok(reject(RejectReason::Shape(s)));
    }
    let (theta, theta_star, varphi) = (pair.theta(), pair.theta_star(), pair.varphi());
    if check_distinct(&theta).is_err() || check_distinct(&theta_star).is_err() {
        return Ok(reject(RejectReason::Condition(Condition::PA2)));
    }
    if varphi.iter().any(Scalar::is_zero) {
        return Ok(reject(RejectReason::Condition(Condition::PA1)));
    }
    let phi = match split_sequences_from_traces(&pair.a, &pair.a_star, &theta, &theta_star) {
        Ok((_, phi)) => phi,
        Err(Error::DegenerateTrace(i)) => return Ok(reject(RejectReason::DegenerateTrace(i))),
        Err(e) => return Err(e),
    };
    let arr = ParameterArray::new(pair.a.field(), theta.clone(), theta_star, varphi, phi.clone())?;
    if let Some(c) = validate_pa(&arr).first_failure() {
        return Ok(reject(RejectReason::Condition(c)));
    }
    let s = switching_element(&arr, &idempotents(&pair.a, &theta)?)?;
    if let Outcome::Fail(w) = conjugation_witness_check(pair, &s, &phi)? {
        return Err(Error::Internal(format!("switching element is not a conjugation witness: {w}")));
    }
    Ok(Verdict::Accept { array: arr, s })
}

/// `X^-1 A X = A` and `X^-1 A* X` upper bidiagonal with diagonal
/// `theta*_d, ..., theta*_0` and superdiagonal `phi_d, ..., phi_1`.
pub fn conjugation_witness_check(pair: &BidiagonalPair, x: &Matrix, phi: &[Scalar]) -> Result<Outcome, Error> {
    if phi.len() != pair.d() {
        return Err(Error::LengthMismatch { what: "phi", expected: pair.d(), found: phi.len() });
    }
    let xi = x.inverse()?;
    let rev_ts: Vec<Scalar> = pair.theta_star().into_iter().rev().collect();
    let rev_phi: Vec<Scalar> = phi.iter().rev().cloned().collect();
    let want = Matrix::upper_bidiagonal(x.field(), &rev_ts, &rev_phi);
    Ok(Outcome::all([
        Outcome::matrices(&(&(&xi * &pair.a) * x), &pair.a).at("X^-1 A X vs A"),
        Outcome::matrices(&(&(&xi * &pair.a_star) * x), &want).at("X^-1 A* X vs reversed form"),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::realization::realize;

    const Q: Field = Field::Rational;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(Q, rows.iter().map(|r| r.iter().map(|&k| Q.from_i64(k)).collect()).collect()).unwrap()
    }

    fn k1() -> ParameterArray {
        ParameterArray::from_ints(Q, &[1, -1], &[1, -1], &[-2], &[2]).unwrap()
    }

    fn k2() -> ParameterArray {
        ParameterArray::from_ints(Q, &[2, 0, -2], &[2, 0, -2], &[-4, -4], &[4, 4]).unwrap()
    }

    fn pair_of(arr: &ParameterArray) -> BidiagonalPair {
        let r = realize(arr).unwrap();
        BidiagonalPair::new(r.a().clone(), r.a_star().clone()).unwrap()
    }

    #[test]
    fn desk_round_trips() {
        let Verdict::Accept { array, s } = recognize(&pair_of(&k1())).unwrap() else { panic!("K1 rejected") };
        assert_eq!(array, k1());
        assert_eq!(s, m(&[&[1, 0], &[1, -1]]));
        let si = s.inverse().unwrap();
        assert_eq!(&(&si * &pair_of(&k1()).a_star) * &s, m(&[&[-1, 2], &[0, 1]]));
        let Verdict::Accept { array, .. } = recognize(&pair_of(&k2())).unwrap() else { panic!("K2 rejected") };
        assert_eq!(array, k2());
    }

    #[test]
    fn duplicate_theta_star_is_pa2() {
        let mut p = pair_of(&k2());
        p.a_star.set(2, 2, Q.from_i64(2));
        assert_eq!(recognize(&p).unwrap(), Verdict::Reject { reason: RejectReason::Condition(Condition::PA2) });
    }

    #[test]
    fn shape_gate() {
        let mut p = pair_of(&k2());
        p.a.set(1, 0, Q.from_i64(2));
        assert!(matches!(recognize(&p).unwrap(), Verdict::Reject { reason: RejectReason::Shape(_) }));
        let mut p = pair_of(&k2());
        p.a_star.set(2, 0, Q.one());
        assert!(matches!(recognize(&p).unwrap(), Verdict::Reject { reason: RejectReason::Shape(_) }));
    }

    #[test]
    fn zeroed_varphi_is_pa1() {
        let mut p = pair_of(&k2());
        p.a_star.set(0, 1, Q.zero());
        assert_eq!(recognize(&p).unwrap(), Verdict::Reject { reason: RejectReason::Condition(Condition::PA1) });
    }

    #[test]
    fn diagonal_edit_rejects_d2() {
        let mut p = pair_of(&k2());
        p.a.set(1, 1, Q.from_i64(1));
        assert!(!recognize(&p).unwrap().accepted());
    }

    #[test]
    fn witness_check() {
        let p1 = pair_of(&k1());
        let r1 = realize(&k1()).unwrap();
        assert_eq!(conjugation_witness_check(&p1, r1.s(), &[Q.from_i64(2)]).unwrap(), Outcome::Pass);
        assert!(conjugation_witness_check(&p1, &Matrix::identity(Q, 2), &[Q.from_i64(2)]).unwrap().failed());
        let r2 = realize(&k2()).unwrap();
        let four = Q.from_i64(4);
        assert_eq!(conjugation_witness_check(&pair_of(&k2()), r2.s(), &[four.clone(), four]).unwrap(), Outcome::Pass);
        let zero = Matrix::zeros(Q, 2, 2);
        assert_eq!(conjugation_witness_check(&p1, &zero, &[Q.from_i64(2)]), Err(Error::Singular));
    }
}
