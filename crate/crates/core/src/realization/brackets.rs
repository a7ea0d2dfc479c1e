//! The coefficients `[r,s,t]_q` (with `r + s + t = d`), computed by
//! expanding one of the product families `tau, eta, tau*, eta*` in another.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{expand_in_poly_basis, falling_products, Poly, Scalar};
use crate::error::Error;
use crate::outcome::Outcome;
use crate::parameter_array::{require_valid, ParameterArray};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketRoute {
    /// `tau_j` in the `eta` basis, divided by `tau_{j-i}(theta_d)`.
    TauInEta,
    /// `eta_j` in the `tau` basis, divided by `eta_{j-i}(theta_0)`.
    EtaInTau,
    /// `tau*_j` in the `eta*` basis, divided by `tau*_{j-i}(theta*_d)`.
    TauStarInEtaStar,
    /// `eta*_j` in the `tau*` basis, divided by `eta*_{j-i}(theta*_0)`.
    EtaStarInTauStar,
}

impl BracketRoute {
    pub const ALL: [BracketRoute; 4] = [
        BracketRoute::TauInEta,
        BracketRoute::EtaInTau,
        BracketRoute::TauStarInEtaStar,
        BracketRoute::EtaStarInTauStar,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    d: usize,
    entries: BTreeMap<(usize, usize, usize), Scalar>,
}

impl BracketTable {
    pub fn d(&self) -> usize {
        self.d
    }

    /// `[r,s,t]`; panics unless `r + s + t = d`.
    pub fn get(&self, r: usize, s: usize, t: usize) -> &Scalar {
        self.entries
            .get(&(r, s, t))
            .unwrap_or_else(|| panic!("bracket [{r},{s},{t}] needs r+s+t = {}", self.d))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Scalar)> {
        self.entries.iter()
    }

    /// First triple whose value changes under some permutation.
    pub fn symmetry_violation(&self) -> Option<(usize, usize, usize)> {
        for (&(r, s, t), v) in &self.entries {
            let perms = [(r, t, s), (s, r, t), (s, t, r), (t, r, s), (t, s, r)];
            if perms.iter().any(|&(a, b, c)| self.get(a, b, c) != v) {
                return Some((r, s, t));
            }
        }
        None
    }

    /// First triple where two tables differ.
    pub fn first_difference(&self, other: &BracketTable) -> Option<(usize, usize, usize)> {
        self.entries
            .iter()
            .find(|(k, v)| other.entries.get(k) != Some(v))
            .map(|(k, _)| *k)
    }
}

fn route_table(
    d: usize,
    target: &[Poly],
    basis: &[Poly],
    divisor: impl Fn(usize) -> Scalar,
) -> Result<BracketTable, Error> {
    let mut entries = BTreeMap::new();
    for j in 0..=d {
        let coeffs = expand_in_poly_basis(&target[j], &basis[..=j])?;
        for (i, c) in coeffs.iter().enumerate() {
            entries.insert((i, j - i, d - j), c.checked_div(&divisor(j - i))?);
        }
    }
    Ok(BracketTable { d, entries })
}

/// The table produced by each of the four expansion routes.
pub fn bracket_routes(arr: &ParameterArray) -> Result<Vec<(BracketRoute, BracketTable)>, Error> {
    let field = arr.field();
    let d = arr.d();
    let fam = |eigs: &[Scalar]| {
        let rev: Vec<Scalar> = eigs.iter().rev().cloned().collect();
        (falling_products(field, &eigs[..d]), falling_products(field, &rev[..d]))
    };
    let (tau, eta) = fam(arr.theta());
    let (tau_s, eta_s) = fam(arr.theta_star());
    let (t, ts) = (arr.theta(), arr.theta_star());
    let mut out = Vec::with_capacity(4);
    for route in BracketRoute::ALL {
        let table = match route {
            BracketRoute::TauInEta => route_table(d, &tau, &eta, |k| tau[k].eval(&t[d]))?,
            BracketRoute::EtaInTau => route_table(d, &eta, &tau, |k| eta[k].eval(&t[0]))?,
            BracketRoute::TauStarInEtaStar => route_table(d, &tau_s, &eta_s, |k| tau_s[k].eval(&ts[d]))?,
            BracketRoute::EtaStarInTauStar => route_table(d, &eta_s, &tau_s, |k| eta_s[k].eval(&ts[0]))?,
        };
        out.push((route, table));
    }
    Ok(out)
}

/// The bracket table, from the `tau`-in-`eta` expansion, after confirming
/// that the other three routes and all permutations agree.
pub fn brackets(arr: &ParameterArray) -> Result<BracketTable, Error> {
    require_valid(arr)?;
    let routes = bracket_routes(arr)?;
    let (_, main) = &routes[0];
    for (route, table) in &routes[1..] {
        if let Some(k) = main.first_difference(table) {
            return Err(Error::Internal(format!("bracket route {route:?} disagrees at {k:?}")));
        }
    }
    if let Some(k) = main.symmetry_violation() {
        return Err(Error::Internal(format!("bracket table is not symmetric at {k:?}")));
    }
    Ok(main.clone())
}

/// `(q;q)_n = (1-q)(1-q^2)...(1-q^n)`.
pub fn q_pochhammer(q: &Scalar, n: usize) -> Scalar {
    let one = q.one_like();
    let mut acc = one.clone();
    let mut pow = one.clone();
    for _ in 0..n {
        pow *= q;
        acc *= &(&one - &pow);
    }
    acc
}

/// Compares the table with
/// `(q;q)_{r+s} (q;q)_{r+t} (q;q)_{s+t} / ((q;q)_r (q;q)_s (q;q)_t (q;q)_{r+s+t})`.
pub fn brackets_closed_form_check(table: &BracketTable, q: &Scalar) -> Result<Outcome, Error> {
    let one = q.one_like();
    if q.is_zero() || q == &one || q == &(-&one) {
        return Err(Error::NotApplicable(format!("closed form needs q outside {{0, 1, -1}}, got {q}")));
    }
    let d = table.d();
    let qq: Vec<Scalar> = (0..=d).map(|n| q_pochhammer(q, n)).collect();
    if let Some(n) = qq.iter().position(Scalar::is_zero) {
        return Err(Error::NotApplicable(format!("(q;q)_{n} vanishes in the base field")));
    }
    for (&(r, s, t), v) in table.iter() {
        let num = [&qq[r + s], &qq[r + t], &qq[s + t]].into_iter().fold(one.clone(), |a, x| a * x);
        let den = [&qq[r], &qq[s], &qq[t], &qq[d]].into_iter().fold(one.clone(), |a, x| a * x);
        let want = num.checked_div(&den)?;
        if &want != v {
            return Ok(Outcome::Fail(format!("[{r},{s},{t}]: table {v}, closed form {want}")));
        }
    }
    Ok(Outcome::Pass)
}
