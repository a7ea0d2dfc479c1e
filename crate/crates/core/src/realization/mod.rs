//! Split-basis realization of a Leonard system.
//!
//! In the split basis `A` is lower bidiagonal with diagonal `theta` and
//! subdiagonal 1, and `A*` is upper bidiagonal with diagonal `theta_star`
//! and superdiagonal `varphi`. The vector `e_0` spans `E*_0 V` and
//! `tau_i(A) e_0 = e_i`.

mod brackets;
mod identities;
mod polys;
mod system;

use crate::algebra::{falling_products, poly_apply, trace_of_product, Field, Matrix, Poly, Scalar};
use crate::error::Error;
use crate::parameter_array::{require_valid, D4Element, ParameterArray};

pub use brackets::{bracket_routes, brackets, brackets_closed_form_check, q_pochhammer, BracketTable, BracketRoute};
pub use identities::{
    mu_identities, s_es0_identities, s_matrix_closed_form, s_star_matrix_closed_form, s_times_tau_relations,
    NamedOutcome,
};
pub use polys::{compute_p_u_polys, PuPolys};
pub use system::{idempotents, System};

/// Coefficient of `E_r` in `S`: `phi_d ... phi_{d-r+1} / (varphi_1 ... varphi_r)`.
pub fn switching_coefficient(arr: &ParameterArray, r: usize) -> Result<Scalar, Error> {
    let d = arr.d();
    arr.phi_prod(d + 1 - r, d).checked_div(&arr.varphi_prod(1, r))
}

/// Coefficient of `E*_r` in `S*`: `phi_1 ... phi_r / (varphi_1 ... varphi_r)`.
pub fn dual_switching_coefficient(arr: &ParameterArray, r: usize) -> Result<Scalar, Error> {
    arr.phi_prod(1, r).checked_div(&arr.varphi_prod(1, r))
}

fn combine(field: Field, n: usize, coeffs: &[Scalar], mats: &[Matrix]) -> Matrix {
    let mut out = Matrix::zeros(field, n, n);
    for (c, m) in coeffs.iter().zip(mats) {
        out = &out + &m.scale(c);
    }
    out
}

/// `S = sum_r c_r E_r` for the idempotents `e` of `A`.
pub fn switching_element(arr: &ParameterArray, e: &[Matrix]) -> Result<Matrix, Error> {
    let coeffs = (0..=arr.d()).map(|r| switching_coefficient(arr, r)).collect::<Result<Vec<_>, _>>()?;
    Ok(combine(arr.field(), arr.d() + 1, &coeffs, e))
}

/// `S^-1`, with reciprocal coefficients.
pub fn switching_inverse(arr: &ParameterArray, e: &[Matrix]) -> Result<Matrix, Error> {
    let coeffs = (0..=arr.d())
        .map(|r| switching_coefficient(arr, r)?.inv())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(combine(arr.field(), arr.d() + 1, &coeffs, e))
}

/// `S*` for the idempotents `e_star` of `A*`.
pub fn dual_switching_element(arr: &ParameterArray, e_star: &[Matrix]) -> Result<Matrix, Error> {
    let coeffs = (0..=arr.d()).map(|r| dual_switching_coefficient(arr, r)).collect::<Result<Vec<_>, _>>()?;
    Ok(combine(arr.field(), arr.d() + 1, &coeffs, e_star))
}

pub fn dual_switching_inverse(arr: &ParameterArray, e_star: &[Matrix]) -> Result<Matrix, Error> {
    let coeffs = (0..=arr.d())
        .map(|r| dual_switching_coefficient(arr, r)?.inv())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(combine(arr.field(), arr.d() + 1, &coeffs, e_star))
}

/// Split sequences from traces, given the first matrix, its eigenvalue
/// ordering, the idempotent `E*_0` of the second and the second eigenvalue
/// ordering.
pub fn split_sequences_with(
    a: &Matrix,
    theta: &[Scalar],
    es0: &Matrix,
    theta_star: &[Scalar],
) -> Result<(Vec<Scalar>, Vec<Scalar>), Error> {
    let field = a.field();
    let d = theta.len() - 1;
    let rev: Vec<Scalar> = theta.iter().rev().cloned().collect();
    let tau = falling_products(field, &theta[..d]);
    let eta = falling_products(field, &rev[..d]);
    let traces = |family: &[Poly]| -> Vec<Scalar> {
        family.iter().map(|p| trace_of_product(&poly_apply(p, a), es0)).collect()
    };
    let (tt, te) = (traces(&tau), traces(&eta));
    let mut varphi = Vec::with_capacity(d);
    let mut phi = Vec::with_capacity(d);
    for i in 1..=d {
        let scale = &theta_star[0] - &theta_star[i];
        let v = tt[i].checked_div(&tt[i - 1]).map_err(|_| Error::DegenerateTrace(i))?;
        let w = te[i].checked_div(&te[i - 1]).map_err(|_| Error::DegenerateTrace(i))?;
        varphi.push(&scale * &v);
        phi.push(&scale * &w);
    }
    Ok((varphi, phi))
}

/// `(varphi, phi)` of the pair `A, A*` under the given eigenvalue orderings.
pub fn split_sequences_from_traces(
    a: &Matrix,
    a_star: &Matrix,
    theta: &[Scalar],
    theta_star: &[Scalar],
) -> Result<(Vec<Scalar>, Vec<Scalar>), Error> {
    if a.rows() != theta.len() || a_star.rows() != theta_star.len() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: theta.len() });
    }
    let es = idempotents(a_star, theta_star)?;
    split_sequences_with(a, theta, &es[0], theta_star)
}

/// The concrete matrices of a Leonard system in its split basis.
#[derive(Clone, Debug)]
pub struct Realization {
    arr: ParameterArray,
    system: System,
    s: Matrix,
    s_inv: Matrix,
    s_star: Matrix,
    s_star_inv: Matrix,
    tau_a: Vec<Matrix>,
    eta_a: Vec<Matrix>,
    tau_as: Vec<Matrix>,
    eta_as: Vec<Matrix>,
}

fn poly_family(m: &Matrix, eigs: &[Scalar], reversed: bool) -> Vec<Matrix> {
    let field = m.field();
    let mut out = vec![Matrix::identity(field, m.rows())];
    let order: Vec<&Scalar> = if reversed { eigs.iter().rev().collect() } else { eigs.iter().collect() };
    for t in order.into_iter().take(eigs.len() - 1) {
        let next = out.last().unwrap() * &m.shift(t);
        out.push(next);
    }
    out
}

pub fn realize(arr: &ParameterArray) -> Result<Realization, Error> {
    require_valid(arr)?;
    let field = arr.field();
    let d = arr.d();
    let a = Matrix::lower_bidiagonal(field, arr.theta(), &vec![field.one(); d]);
    let a_star = Matrix::upper_bidiagonal(field, arr.theta_star(), arr.varphi_seq());
    let system = System::new(a, arr.theta().to_vec(), a_star, arr.theta_star().to_vec())?;
    let s = switching_element(arr, system.first_idempotents())?;
    let s_inv = switching_inverse(arr, system.first_idempotents())?;
    let s_star = dual_switching_element(arr, system.second_idempotents())?;
    let s_star_inv = dual_switching_inverse(arr, system.second_idempotents())?;
    let tau_a = poly_family(system.first(), arr.theta(), false);
    let eta_a = poly_family(system.first(), arr.theta(), true);
    let tau_as = poly_family(system.second(), arr.theta_star(), false);
    let eta_as = poly_family(system.second(), arr.theta_star(), true);
    Ok(Realization { arr: arr.clone(), system, s, s_inv, s_star, s_star_inv, tau_a, eta_a, tau_as, eta_as })
}

impl Realization {
    pub fn array(&self) -> &ParameterArray {
        &self.arr
    }

    pub fn field(&self) -> Field {
        self.arr.field()
    }

    pub fn d(&self) -> usize {
        self.arr.d()
    }

    pub fn system(&self) -> &System {
        &self.system
    }

    pub fn a(&self) -> &Matrix {
        self.system.first()
    }

    pub fn a_star(&self) -> &Matrix {
        self.system.second()
    }

    pub fn e(&self, i: usize) -> &Matrix {
        &self.system.first_idempotents()[i]
    }

    pub fn e_star(&self, i: usize) -> &Matrix {
        &self.system.second_idempotents()[i]
    }

    pub fn e_all(&self) -> &[Matrix] {
        self.system.first_idempotents()
    }

    pub fn e_star_all(&self) -> &[Matrix] {
        self.system.second_idempotents()
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn s_inv(&self) -> &Matrix {
        &self.s_inv
    }

    pub fn s_star(&self) -> &Matrix {
        &self.s_star
    }

    pub fn s_star_inv(&self) -> &Matrix {
        &self.s_star_inv
    }

    /// `tau_i(A)`.
    pub fn tau_a(&self, i: usize) -> &Matrix {
        &self.tau_a[i]
    }

    /// `eta_i(A)`.
    pub fn eta_a(&self, i: usize) -> &Matrix {
        &self.eta_a[i]
    }

    /// `tau*_i(A*)`.
    pub fn tau_as(&self, i: usize) -> &Matrix {
        &self.tau_as[i]
    }

    /// `eta*_i(A*)`.
    pub fn eta_as(&self, i: usize) -> &Matrix {
        &self.eta_as[i]
    }

    /// `varphi_1 ... varphi_d` and `phi_1 ... phi_d`.
    pub fn split_products(&self) -> (Scalar, Scalar) {
        let d = self.d();
        (self.arr.varphi_prod(1, d), self.arr.phi_prod(1, d))
    }

    /// `(switching, dual switching)` of the relative `g`, read off the
    /// relatives table from `S`, `S*` and their inverses.
    pub fn relative_switching(&self, g: D4Element) -> (Matrix, Matrix) {
        let (vp, p) = self.split_products();
        let r = vp.checked_div(&p).expect("PA1 holds");
        let rinv = r.inv().expect("PA1 holds");
        let (s, si, ss, ssi) = (&self.s, &self.s_inv, &self.s_star, &self.s_star_inv);
        match (g.swapped, g.rev_e, g.rev_es) {
            (false, false, false) => (s.clone(), ss.clone()),
            (false, false, true) => (si.clone(), ss.scale(&r)),
            (false, true, false) => (s.scale(&r), ssi.clone()),
            (false, true, true) => (si.scale(&rinv), ssi.scale(&rinv)),
            (true, false, false) => (ss.clone(), s.clone()),
            (true, false, true) => (ss.scale(&r), si.clone()),
            (true, true, false) => (ssi.clone(), s.scale(&r)),
            (true, true, true) => (ssi.scale(&rinv), si.scale(&rinv)),
        }
    }

    /// The relative system `g` acting on the same space.
    pub fn relative_system(&self, g: D4Element) -> System {
        self.system.relative(g)
    }
}

/// Switching elements of a system computed from scratch: its split sequences
/// by traces, then the defining sums over its own idempotents.
pub fn switching_pair_of(system: &System) -> Result<(ParameterArray, Matrix, Matrix), Error> {
    let (varphi, phi) = split_sequences_with(
        system.first(),
        system.first_eigenvalues(),
        &system.second_idempotents()[0],
        system.second_eigenvalues(),
    )?;
    let arr = ParameterArray::new(
        system.first().field(),
        system.first_eigenvalues().to_vec(),
        system.second_eigenvalues().to_vec(),
        varphi,
        phi,
    )?;
    let s = switching_element(&arr, system.first_idempotents())?;
    let ss = dual_switching_element(&arr, system.second_idempotents())?;
    Ok((arr, s, ss))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parameter_array::ParameterArray;

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

    #[test]
    fn k1_matrices() {
        let r = realize(&k1()).unwrap();
        assert_eq!(r.a(), &m(&[&[1, 0], &[1, -1]]));
        assert_eq!(r.a_star(), &m(&[&[1, -2], &[0, -1]]));
        assert_eq!(r.s(), r.a());
        let coeffs: Vec<Scalar> = (0..=1).map(|k| switching_coefficient(&k1(), k).unwrap()).collect();
        assert_eq!(coeffs, vec![Q.one(), Q.from_i64(-1)]);
    }

    #[test]
    fn k2_switching_element() {
        let r = realize(&k2()).unwrap();
        let two = Q.from_i64(2);
        let want = (&(r.a() * r.a()) - &Matrix::identity(Q, 3).scale(&two)).scale(&Q.ratio(1, 2).unwrap());
        assert_eq!(r.s(), &want);
        let coeffs: Vec<Scalar> = (0..=2).map(|k| switching_coefficient(&k2(), k).unwrap()).collect();
        assert_eq!(coeffs, vec![Q.one(), Q.from_i64(-1), Q.one()]);
        assert_eq!(&(r.s() * r.s_inv()), &Matrix::identity(Q, 3));
        assert_eq!(r.s_inv(), r.s());
        assert_eq!(r.trace_a(), Q.zero());
    }

    impl Realization {
        fn trace_a(&self) -> Scalar {
            self.a().trace().unwrap()
        }
    }

    #[test]
    fn trace_round_trip() {
        for arr in [k1(), k2()] {
            let r = realize(&arr).unwrap();
            let (v, p) = split_sequences_from_traces(r.a(), r.a_star(), arr.theta(), arr.theta_star()).unwrap();
            assert_eq!(v, arr.varphi_seq());
            assert_eq!(p, arr.phi_seq());
        }
        let d0 = ParameterArray::from_ints(Q, &[5], &[7], &[], &[]).unwrap();
        let r = realize(&d0).unwrap();
        assert_eq!(r.a(), &m(&[&[5]]));
        assert_eq!(r.s(), &Matrix::identity(Q, 1));
        let (v, p) = split_sequences_from_traces(r.a(), r.a_star(), d0.theta(), d0.theta_star()).unwrap();
        assert!(v.is_empty() && p.is_empty());
    }

    #[test]
    fn relatives_table_examples() {
        use crate::parameter_array::Generator;
        let r2 = realize(&k2()).unwrap();
        let down = D4Element::generator(Generator::Down);
        assert_eq!(r2.relative_switching(down).0, r2.s().clone());
        let ddown = D4Element::generator(Generator::DoubleDown);
        assert_eq!(r2.relative_switching(ddown).0, r2.s().clone());
        let r1 = realize(&k1()).unwrap();
        let star = D4Element::generator(Generator::Star);
        let want = r1.e_star(0) - r1.e_star(1);
        assert_eq!(r1.relative_switching(star).0, want);
    }

    #[test]
    fn rejects_invalid_arrays() {
        let bad = ParameterArray::from_ints(Q, &[2, 0, -2], &[2, 0, -2], &[-4, -4], &[-4, -4]).unwrap();
        assert!(matches!(realize(&bad), Err(Error::InvalidArray(_))));
    }
}
