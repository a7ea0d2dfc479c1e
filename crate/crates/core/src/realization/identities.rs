//! Closed-form triangular matrices and the operator identities relating
//! `S`, `S*`, the idempotents and the product polynomials.

use super::{BracketTable, Realization};
use crate::algebra::{Matrix, Scalar};
use crate::error::Error;
use crate::outcome::{for_each_index, Outcome};
use crate::parameter_array::ParameterArray;

pub type NamedOutcome = (String, Outcome);

/// `prod_{m<k} (x - eigs[m])`.
pub(crate) fn tau_at(eigs: &[Scalar], k: usize, x: &Scalar) -> Scalar {
    eigs[..k].iter().fold(x.one_like(), |acc, e| acc * (x - e))
}

/// `prod_{m<k} (x - eigs[d-m])`.
pub(crate) fn eta_at(eigs: &[Scalar], k: usize, x: &Scalar) -> Scalar {
    eigs.iter().rev().take(k).fold(x.one_like(), |acc, e| acc * (x - e))
}

fn div(a: Scalar, b: Scalar) -> Scalar {
    a.checked_div(&b).expect("denominators are nonzero for valid arrays")
}

/// Lower triangular `(S, S^-1)` from the bracket formulas.
pub fn s_matrix_closed_form(arr: &ParameterArray, br: &BracketTable) -> Result<(Matrix, Matrix), Error> {
    let field = arr.field();
    let d = arr.d();
    let ts = arr.theta_star();
    let mut s = Matrix::zeros(field, d + 1, d + 1);
    let mut si = Matrix::zeros(field, d + 1, d + 1);
    for i in 0..=d {
        for j in 0..=i {
            let b = br.get(j, i - j, d - i);
            let num = b * &arr.phi_prod(d + 1 - j, d) * tau_at(ts, i - j, &ts[d]);
            s.set(i, j, num.checked_div(&arr.varphi_prod(1, i))?);
            let num = b * &arr.varphi_prod(1, j) * eta_at(ts, i - j, &ts[0]);
            si.set(i, j, num.checked_div(&arr.phi_prod(d + 1 - i, d))?);
        }
    }
    Ok((s, si))
}

/// Upper triangular `(S*, S*^-1)` from the bracket formulas.
pub fn s_star_matrix_closed_form(arr: &ParameterArray, br: &BracketTable) -> Result<(Matrix, Matrix), Error> {
    let field = arr.field();
    let d = arr.d();
    let t = arr.theta();
    let mut s = Matrix::zeros(field, d + 1, d + 1);
    let mut si = Matrix::zeros(field, d + 1, d + 1);
    for i in 0..=d {
        for j in i..=d {
            let b = br.get(i, j - i, d - j);
            let num = b * &arr.phi_prod(1, i) * tau_at(t, j - i, &t[d]);
            s.set(i, j, num.checked_div(&arr.varphi_prod(1, i))?);
            let num = b * &arr.varphi_prod(1, j) * eta_at(t, j - i, &t[0]);
            si.set(i, j, num.checked_div(&arr.phi_prod(1, j))?);
        }
    }
    Ok((s, si))
}

fn zeros(r: &Realization) -> Matrix {
    Matrix::zeros(r.field(), r.d() + 1, r.d() + 1)
}

/// Expansions of `S tau_j(A)`, `S^-1 tau_j(A)`, `S* tau_j(A) E*_0`,
/// `S*^-1 tau_j(A) E*_0` in the `tau_i(A)` family, and the four relations
/// sending `eta*`-images of `E_0`, `E_d` (and `eta`-images of `E*_0`,
/// `E*_d`) to `tau*`- (and `tau`-) images.
pub fn s_times_tau_relations(r: &Realization, br: &BracketTable) -> Vec<NamedOutcome> {
    let arr = r.array();
    let d = r.d();
    let (t, ts) = (arr.theta(), arr.theta_star());
    let es0 = r.e_star(0);
    let mut out = Vec::new();

    let s_tau = for_each_index(0..=d, |j| {
        let mut rhs = zeros(r);
        for i in j..=d {
            let c = div(br.get(j, i - j, d - i) * &arr.phi_prod(d + 1 - j, d) * tau_at(ts, i - j, &ts[d]), arr.varphi_prod(1, i));
            rhs = &rhs + &r.tau_a(i).scale(&c);
        }
        Outcome::matrices(&(r.s() * r.tau_a(j)), &rhs)
    });
    out.push(("s_tau".to_string(), s_tau));

    let s_inv_tau = for_each_index(0..=d, |j| {
        let mut rhs = zeros(r);
        for i in j..=d {
            let c = div(br.get(j, i - j, d - i) * &arr.varphi_prod(1, j) * eta_at(ts, i - j, &ts[0]), arr.phi_prod(d + 1 - i, d));
            rhs = &rhs + &r.tau_a(i).scale(&c);
        }
        Outcome::matrices(&(r.s_inv() * r.tau_a(j)), &rhs)
    });
    out.push(("s_inv_tau".to_string(), s_inv_tau));

    let ss_tau = for_each_index(0..=d, |j| {
        let mut rhs = zeros(r);
        for i in 0..=j {
            let c = div(br.get(i, j - i, d - j) * &arr.phi_prod(1, i) * tau_at(t, j - i, &t[d]), arr.varphi_prod(1, i));
            rhs = &rhs + &(r.tau_a(i) * es0).scale(&c);
        }
        Outcome::matrices(&(&(r.s_star() * r.tau_a(j)) * es0), &rhs)
    });
    out.push(("s_star_tau_es0".to_string(), ss_tau));

    let ssi_tau = for_each_index(0..=d, |j| {
        let mut rhs = zeros(r);
        for i in 0..=j {
            let c = div(br.get(i, j - i, d - j) * &arr.varphi_prod(1, j) * eta_at(t, j - i, &t[0]), arr.phi_prod(1, j));
            rhs = &rhs + &(r.tau_a(i) * es0).scale(&c);
        }
        Outcome::matrices(&(&(r.s_star_inv() * r.tau_a(j)) * es0), &rhs)
    });
    out.push(("s_star_inv_tau_es0".to_string(), ssi_tau));

    let (e0, ed, esd) = (r.e(0), r.e(d), r.e_star(d));
    let coef_s = |i: usize| div(arr.phi_prod(d + 1 - i, d), arr.varphi_prod(1, i));
    let coef_ss = |i: usize| div(arr.phi_prod(1, i), arr.varphi_prod(1, i));
    let rel1 = for_each_index(0..=d, |i| {
        Outcome::matrices(&(&(r.s() * r.eta_as(d - i)) * ed), &(r.tau_as(d - i) * ed).scale(&coef_s(i)))
    });
    let rel2 = for_each_index(0..=d, |i| {
        Outcome::matrices(&(&(r.s() * r.eta_as(i)) * e0), &(r.tau_as(i) * e0).scale(&coef_s(i)))
    });
    let rel3 = for_each_index(0..=d, |i| {
        Outcome::matrices(&(&(r.s_star() * r.eta_a(d - i)) * esd), &(r.tau_a(d - i) * esd).scale(&coef_ss(i)))
    });
    let rel4 = for_each_index(0..=d, |i| {
        Outcome::matrices(&(&(r.s_star() * r.eta_a(i)) * es0), &(r.tau_a(i) * es0).scale(&coef_ss(i)))
    });
    out.push(("s_eta_star_ed".to_string(), rel1));
    out.push(("s_eta_star_e0".to_string(), rel2));
    out.push(("s_star_eta_esd".to_string(), rel3));
    out.push(("s_star_eta_es0".to_string(), rel4));
    out
}

/// The eight relations `eta_i(A) E*_0 E_0 = c eta*_{d-i}(A*) E_0` and
/// companions, plus `E_0 E*_d E_d E*_0 = c E_0 E*_0`.
pub fn mu_identities(r: &Realization) -> Vec<NamedOutcome> {
    let arr = r.array();
    let d = r.d();
    let (t, ts) = (arr.theta(), arr.theta_star());
    let (e0, ed, es0, esd) = (r.e(0), r.e(d), r.e_star(0), r.e_star(d));
    let eta_s_d0 = eta_at(ts, d, &ts[0]);
    let tau_s_dd = tau_at(ts, d, &ts[d]);
    let eta_d0 = eta_at(t, d, &t[0]);
    let tau_dd = tau_at(t, d, &t[d]);

    type Side<'a> = Box<dyn Fn(usize) -> (Matrix, Scalar, Matrix) + 'a>;
    let fams: Vec<(&str, Side)> = vec![
        ("eta_es0_e0", Box::new(|i| (&(r.eta_a(i) * es0) * e0, div(arr.phi_prod(1, i), eta_s_d0.clone()), r.eta_as(d - i) * e0))),
        ("eta_esd_e0", Box::new(|i| (&(r.eta_a(i) * esd) * e0, div(arr.varphi_prod(d + 1 - i, d), tau_s_dd.clone()), r.tau_as(d - i) * e0))),
        ("tau_es0_ed", Box::new(|i| (&(r.tau_a(i) * es0) * ed, div(arr.varphi_prod(1, i), eta_s_d0.clone()), r.eta_as(d - i) * ed))),
        ("tau_esd_ed", Box::new(|i| (&(r.tau_a(i) * esd) * ed, div(arr.phi_prod(d + 1 - i, d), tau_s_dd.clone()), r.tau_as(d - i) * ed))),
        ("eta_star_e0_es0", Box::new(|i| (&(r.eta_as(i) * e0) * es0, div(arr.phi_prod(d + 1 - i, d), eta_d0.clone()), r.eta_a(d - i) * es0))),
        ("eta_star_ed_es0", Box::new(|i| (&(r.eta_as(i) * ed) * es0, div(arr.varphi_prod(d + 1 - i, d), tau_dd.clone()), r.tau_a(d - i) * es0))),
        ("tau_star_e0_esd", Box::new(|i| (&(r.tau_as(i) * e0) * esd, div(arr.varphi_prod(1, i), eta_d0.clone()), r.eta_a(d - i) * esd))),
        ("tau_star_ed_esd", Box::new(|i| (&(r.tau_as(i) * ed) * esd, div(arr.phi_prod(1, i), tau_dd.clone()), r.tau_a(d - i) * esd))),
    ];
    let mut out: Vec<NamedOutcome> = fams
        .into_iter()
        .map(|(name, f)| {
            let o = for_each_index(0..=d, |i| {
                let (lhs, c, rhs) = f(i);
                Outcome::matrices(&lhs, &rhs.scale(&c))
            });
            (format!("mu.{name}"), o)
        })
        .collect();
    let lhs = &(&(e0 * esd) * ed) * es0;
    let c = div(arr.varphi_prod(1, d), &tau_dd * &tau_s_dd);
    out.push(("mu.e0_esd_ed_es0".to_string(), Outcome::matrices(&lhs, &(e0 * es0).scale(&c))));
    out
}

/// The eight expressions for `S E*_0`, `S^-1 E*_d`, `S* E_0`, `S*^-1 E_d`.
pub fn s_es0_identities(r: &Realization) -> Vec<NamedOutcome> {
    let arr = r.array();
    let d = r.d();
    let (t, ts) = (arr.theta(), arr.theta_star());
    let (e0, ed, es0, esd) = (r.e(0), r.e(d), r.e_star(0), r.e_star(d));
    let (vp, p) = r.split_products();
    let tau_dd = tau_at(t, d, &t[d]);
    let eta_d0 = eta_at(t, d, &t[0]);
    let tau_s_dd = tau_at(ts, d, &ts[d]);
    let eta_s_d0 = eta_at(ts, d, &ts[0]);
    let triple = |x: &Matrix, y: &Matrix, z: &Matrix| &(x * y) * z;
    let cases: Vec<(&str, Matrix, Scalar, Matrix)> = vec![
        ("s_es0.a", r.s() * es0, div(&tau_dd * &tau_s_dd, vp.clone()), triple(esd, ed, es0)),
        ("s_es0.b", r.s() * es0, div(&eta_d0 * &tau_s_dd, vp.clone()), triple(esd, e0, es0)),
        ("s_inv_esd.a", r.s_inv() * esd, div(&tau_dd * &eta_s_d0, p.clone()), triple(es0, ed, esd)),
        ("s_inv_esd.b", r.s_inv() * esd, div(&eta_d0 * &eta_s_d0, p.clone()), triple(es0, e0, esd)),
        ("s_star_e0.a", r.s_star() * e0, div(&tau_s_dd * &tau_dd, vp.clone()), triple(ed, esd, e0)),
        ("s_star_e0.b", r.s_star() * e0, div(&eta_s_d0 * &tau_dd, vp.clone()), triple(ed, es0, e0)),
        ("s_star_inv_ed.a", r.s_star_inv() * ed, div(&tau_s_dd * &eta_d0, p.clone()), triple(e0, esd, ed)),
        ("s_star_inv_ed.b", r.s_star_inv() * ed, div(&eta_s_d0 * &eta_d0, p.clone()), triple(e0, es0, ed)),
    ];
    cases
        .into_iter()
        .map(|(name, lhs, c, rhs)| (name.to_string(), Outcome::matrices(&lhs, &rhs.scale(&c))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::realization::{brackets, realize};

    const Q: Field = Field::Rational;

    fn k1() -> ParameterArray {
        ParameterArray::from_ints(Q, &[1, -1], &[1, -1], &[-2], &[2]).unwrap()
    }

    fn k2() -> ParameterArray {
        ParameterArray::from_ints(Q, &[2, 0, -2], &[2, 0, -2], &[-4, -4], &[4, 4]).unwrap()
    }

    #[test]
    fn closed_form_matches_spectral_on_desk_arrays() {
        for arr in [k1(), k2()] {
            let r = realize(&arr).unwrap();
            let br = brackets(&arr).unwrap();
            let (s, si) = s_matrix_closed_form(&arr, &br).unwrap();
            assert_eq!(&s, r.s());
            assert_eq!(&si, r.s_inv());
            assert_eq!(s.get(0, 0), &Q.one());
            let (ss, ssi) = s_star_matrix_closed_form(&arr, &br).unwrap();
            assert_eq!(&ss, r.s_star());
            assert_eq!(&ssi, r.s_star_inv());
        }
        let (s, _) = s_matrix_closed_form(&k1(), &brackets(&k1()).unwrap()).unwrap();
        let want = Matrix::from_rows(Q, vec![vec![Q.one(), Q.zero()], vec![Q.one(), Q.from_i64(-1)]]).unwrap();
        assert_eq!(s, want);
    }

    #[test]
    fn identity_bundles_pass_on_desk_arrays() {
        let d0 = ParameterArray::from_ints(Q, &[5], &[7], &[], &[]).unwrap();
        for arr in [k1(), k2(), d0] {
            let r = realize(&arr).unwrap();
            let br = brackets(&arr).unwrap();
            let all = s_times_tau_relations(&r, &br)
                .into_iter()
                .chain(mu_identities(&r))
                .chain(s_es0_identities(&r));
            for (name, o) in all {
                assert_eq!(o, Outcome::Pass, "{name} on d={}", arr.d());
            }
        }
    }

    #[test]
    fn k2_mu_scalar() {
        let r = realize(&k2()).unwrap();
        let lhs = &(&(r.e(0) * r.e_star(2)) * r.e(2)) * r.e_star(0);
        assert_eq!(lhs, (r.e(0) * r.e_star(0)).scale(&Q.ratio(16, 64).unwrap()));
    }
}
