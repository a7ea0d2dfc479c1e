use super::Realization;
use crate::algebra::{Matrix, Poly, Scalar};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuPolys {
    /// Monic, `p_i(A) E*_0 V = E*_i V`.
    pub p: Vec<Poly>,
    /// `u_i = p_i / p_i(theta_0)`.
    pub u: Vec<Poly>,
}

/// Finds each `p_i` from the coordinates of a spanning vector of `E*_i V`
/// in the cyclic basis `A^k e_0`, then checks
/// `p_i(theta_0) = varphi_1 ... varphi_i / tau*_i(theta*_i)`.
pub fn compute_p_u_polys(real: &Realization) -> Result<PuPolys, Error> {
    let field = real.field();
    let d = real.d();
    let n = d + 1;
    let a = real.a();
    let mut krylov_cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut v: Vec<Scalar> = (0..n).map(|k| if k == 0 { field.one() } else { field.zero() }).collect();
    for _ in 0..n {
        krylov_cols.push(v.clone());
        v = a.mul_vec(&v);
    }
    // Invertible exactly when I, A, ..., A^d act independently on e_0.
    let kinv = Matrix::from_columns(field, n, &krylov_cols)
        .inverse()
        .map_err(|_| Error::Internal("cyclic basis is degenerate".into()))?;
    let arr = real.array();
    let ts = arr.theta_star();
    let mut p = Vec::with_capacity(n);
    let mut u = Vec::with_capacity(n);
    for i in 0..n {
        let es = real.e_star(i);
        let col = (0..n)
            .map(|j| es.column(j))
            .find(|c| c.iter().any(|x| !x.is_zero()))
            .ok_or_else(|| Error::Internal(format!("E*_{i} vanishes")))?;
        let poly = Poly::from_coeffs(field, kinv.mul_vec(&col));
        if poly.degree() != Some(i) {
            return Err(Error::Internal(format!("p_{i} has degree {:?}", poly.degree())));
        }
        let pi = poly.monic()?;
        let at0 = pi.eval(&arr.theta()[0]);
        let tau_star_i = ts[..i].iter().fold(field.one(), |acc, t| acc * (&ts[i] - t));
        let want = arr.varphi_prod(1, i).checked_div(&tau_star_i)?;
        if at0 != want || at0.is_zero() {
            return Err(Error::Internal(format!("p_{i}(theta_0) = {at0}, expected {want}")));
        }
        u.push(pi.div_scalar(&at0)?);
        p.push(pi);
    }
    Ok(PuPolys { p, u })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::parameter_array::ParameterArray;
    use crate::realization::realize;

    const Q: Field = Field::Rational;

    fn poly(cs: &[i64]) -> Poly {
        Poly::from_coeffs(Q, cs.iter().map(|&c| Q.from_i64(c)).collect())
    }

    #[test]
    fn desk_polynomials() {
        let k2 = ParameterArray::from_ints(Q, &[2, 0, -2], &[2, 0, -2], &[-4, -4], &[4, 4]).unwrap();
        let pu = compute_p_u_polys(&realize(&k2).unwrap()).unwrap();
        assert_eq!(pu.p[0], Poly::one(Q));
        assert_eq!(pu.u[0], Poly::one(Q));
        assert_eq!(pu.p[2], poly(&[-2, 0, 1]));
        assert_eq!(pu.u[2], poly(&[-2, 0, 1]).scale(&Q.ratio(1, 2).unwrap()));

        let k1 = ParameterArray::from_ints(Q, &[1, -1], &[1, -1], &[-2], &[2]).unwrap();
        let pu = compute_p_u_polys(&realize(&k1).unwrap()).unwrap();
        assert_eq!(pu.p[1], Poly::x(Q));
        assert_eq!(pu.u[1], Poly::x(Q));
    }
}
