//! Parameter arrays, their validity conditions, and the split-sequence
//! solver.
//!
//! Naming: `varphi` is the first split sequence and `phi` the second. Both
//! are indexed from 1 in the mathematics and stored from 0 here, so
//! `varphi(i)` reads entry `i - 1` of the vector.

mod d4;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Scalar};
use crate::error::Error;

pub use d4::{d4_apply, D4Element, Generator};
pub(crate) use d4::apply_word;

/// The five validity conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    PA1,
    PA2,
    PA3,
    PA4,
    PA5,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::PA1,
        Condition::PA2,
        Condition::PA3,
        Condition::PA4,
        Condition::PA5,
    ];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::PA1 => "PA1",
            Condition::PA2 => "PA2",
            Condition::PA3 => "PA3",
            Condition::PA4 => "PA4",
            Condition::PA5 => "PA5",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterArray {
    field: Field,
    theta: Vec<Scalar>,
    theta_star: Vec<Scalar>,
    varphi: Vec<Scalar>,
    phi: Vec<Scalar>,
}

impl ParameterArray {
    /// Checks lengths, field membership and (over a prime field) that the
    /// modulus exceeds `d + 1`. Validity is a separate question, see
    /// [`validate_pa`].
    pub fn new(
        field: Field,
        theta: Vec<Scalar>,
        theta_star: Vec<Scalar>,
        varphi: Vec<Scalar>,
        phi: Vec<Scalar>,
    ) -> Result<ParameterArray, Error> {
        if theta.is_empty() {
            return Err(Error::LengthMismatch { what: "theta", expected: 1, found: 0 });
        }
        let d = theta.len() - 1;
        let checks = [
            ("theta_star", &theta_star, d + 1),
            ("varphi", &varphi, d),
            ("phi", &phi, d),
        ];
        for (what, v, expected) in checks {
            if v.len() != expected {
                return Err(Error::LengthMismatch { what, expected, found: v.len() });
            }
        }
        if let Some(p) = field.modulus() {
            if p <= (d as u64) + 1 {
                return Err(Error::InvalidModulus(p, "modulus must exceed d+1"));
            }
        }
        let all = theta.iter().chain(&theta_star).chain(&varphi).chain(&phi);
        if all.into_iter().any(|x| x.field() != field) {
            return Err(Error::Parse("scalar from a different field".into()));
        }
        Ok(ParameterArray { field, theta, theta_star, varphi, phi })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(
        field: Field,
        theta: &[i64],
        theta_star: &[i64],
        varphi: &[i64],
        phi: &[i64],
    ) -> Result<ParameterArray, Error> {
        let conv = |v: &[i64]| v.iter().map(|&k| field.from_i64(k)).collect::<Vec<_>>();
        ParameterArray::new(field, conv(theta), conv(theta_star), conv(varphi), conv(phi))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn d(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn theta(&self) -> &[Scalar] {
        &self.theta
    }

    pub fn theta_star(&self) -> &[Scalar] {
        &self.theta_star
    }

    /// First split sequence, stored from index 0.
    pub fn varphi_seq(&self) -> &[Scalar] {
        &self.varphi
    }

    /// Second split sequence, stored from index 0.
    pub fn phi_seq(&self) -> &[Scalar] {
        &self.phi
    }

    /// `varphi_i` for `1 <= i <= d`.
    pub fn varphi(&self, i: usize) -> &Scalar {
        &self.varphi[i - 1]
    }

    /// `phi_i` for `1 <= i <= d`.
    pub fn phi(&self, i: usize) -> &Scalar {
        &self.phi[i - 1]
    }

    /// `varphi_lo * ... * varphi_hi`; 1 when `lo > hi`.
    pub fn varphi_prod(&self, lo: usize, hi: usize) -> Scalar {
        range_prod(self.field, &self.varphi, lo, hi)
    }

    /// `phi_lo * ... * phi_hi`; 1 when `lo > hi`.
    pub fn phi_prod(&self, lo: usize, hi: usize) -> Scalar {
        range_prod(self.field, &self.phi, lo, hi)
    }

    pub(crate) fn into_parts(self) -> (Field, Vec<Scalar>, Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
        (self.field, self.theta, self.theta_star, self.varphi, self.phi)
    }
}

fn range_prod(field: Field, seq: &[Scalar], lo: usize, hi: usize) -> Scalar {
    let mut acc = field.one();
    for i in lo..=hi {
        if i >= 1 {
            acc *= &seq[i - 1];
        }
    }
    acc
}

/// Outcome of one condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionStatus {
    Pass,
    /// First index at which the condition fails.
    FailsAt(usize),
    /// The condition's expressions divide by zero because PA2 fails.
    Undefined,
}

impl ConditionStatus {
    pub fn passed(&self) -> bool {
        matches!(self, ConditionStatus::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub statuses: [(Condition, ConditionStatus); 5],
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.statuses.iter().all(|(_, s)| s.passed())
    }

    pub fn status(&self, c: Condition) -> ConditionStatus {
        self.statuses.iter().find(|(k, _)| *k == c).map(|(_, s)| *s).unwrap()
    }

    /// The first condition (in PA1..PA5 order) that does not pass.
    pub fn first_failure(&self) -> Option<Condition> {
        self.statuses.iter().find(|(_, s)| !s.passed()).map(|(c, _)| *c)
    }
}

fn first_repeat(v: &[Scalar]) -> Option<usize> {
    (1..v.len()).find(|&j| v[..j].contains(&v[j]))
}

/// `sum_{h<i} (theta_h - theta_{d-h}) / (theta_0 - theta_d)`; `None` when
/// `theta_0 = theta_d` with `d >= 1`.
fn pa_sums(theta: &[Scalar]) -> Option<Vec<Scalar>> {
    let field = theta[0].field();
    let d = theta.len() - 1;
    let mut out = vec![field.zero()];
    if d == 0 {
        return Some(out);
    }
    let den = (&theta[0] - &theta[d]).inv().ok()?;
    let mut acc = field.zero();
    for h in 0..d {
        acc += &((&theta[h] - &theta[d - h]) * &den);
        out.push(acc.clone());
    }
    Some(out)
}

fn pa3_value(theta: &[Scalar], ts: &[Scalar], sums: &[Scalar], phi1: &Scalar, i: usize) -> Scalar {
    let d = theta.len() - 1;
    phi1 * &sums[i] + (&ts[i] - &ts[0]) * (&theta[i - 1] - &theta[d])
}

fn pa4_value(theta: &[Scalar], ts: &[Scalar], sums: &[Scalar], varphi1: &Scalar, i: usize) -> Scalar {
    let d = theta.len() - 1;
    varphi1 * &sums[i] + (&ts[i] - &ts[0]) * (&theta[d - i + 1] - &theta[0])
}

/// Status of the PA5 condition on two eigenvalue sequences.
fn pa5_status(theta: &[Scalar], ts: &[Scalar]) -> ConditionStatus {
    let d = theta.len() - 1;
    if d < 3 {
        return ConditionStatus::Pass;
    }
    let ratio = |t: &[Scalar], i: usize| (&t[i - 2] - &t[i + 1]).checked_div(&(&t[i - 1] - &t[i]));
    let mut common: Option<Scalar> = None;
    for i in 2..d {
        let (Ok(b), Ok(bs)) = (ratio(theta, i), ratio(ts, i)) else {
            return ConditionStatus::Undefined;
        };
        let c = common.get_or_insert_with(|| b.clone());
        if &b != c || &bs != c {
            return ConditionStatus::FailsAt(i);
        }
    }
    ConditionStatus::Pass
}

pub fn validate_pa(arr: &ParameterArray) -> ValidityReport {
    let d = arr.d();
    let (theta, ts) = (arr.theta(), arr.theta_star());
    let pa1 = (1..=d)
        .find(|&i| arr.varphi(i).is_zero() || arr.phi(i).is_zero())
        .map_or(ConditionStatus::Pass, ConditionStatus::FailsAt);
    let pa2 = match (first_repeat(theta), first_repeat(ts)) {
        (None, None) => ConditionStatus::Pass,
        (a, b) => ConditionStatus::FailsAt(a.into_iter().chain(b).min().unwrap()),
    };
    let (pa3, pa4) = match pa_sums(theta) {
        None => (ConditionStatus::Undefined, ConditionStatus::Undefined),
        Some(sums) => {
            let p3 = (1..=d).find(|&i| &pa3_value(theta, ts, &sums, arr.phi(1), i) != arr.varphi(i));
            let p4 = (1..=d).find(|&i| &pa4_value(theta, ts, &sums, arr.varphi(1), i) != arr.phi(i));
            (
                p3.map_or(ConditionStatus::Pass, ConditionStatus::FailsAt),
                p4.map_or(ConditionStatus::Pass, ConditionStatus::FailsAt),
            )
        }
    };
    ValidityReport {
        statuses: [
            (Condition::PA1, pa1),
            (Condition::PA2, pa2),
            (Condition::PA3, pa3),
            (Condition::PA4, pa4),
            (Condition::PA5, pa5_status(theta, ts)),
        ],
    }
}

/// Error unless the array satisfies all five conditions.
pub fn require_valid(arr: &ParameterArray) -> Result<(), Error> {
    match validate_pa(arr).first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::InvalidArray(c)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Valid(ParameterArray),
    /// The assembled array fails the named condition.
    Inconsistent(Condition, ParameterArray),
}

/// Completes eigenvalue sequences to a parameter array with `phi_1 = seed`,
/// using PA3 and PA4 as defining equations.
pub fn solve_splits(theta: &[Scalar], theta_star: &[Scalar], seed: &Scalar) -> Result<Solution, Error> {
    let field = seed.field();
    if theta.len() != theta_star.len() {
        return Err(Error::LengthMismatch {
            what: "theta_star",
            expected: theta.len(),
            found: theta_star.len(),
        });
    }
    if theta.is_empty() {
        return Err(Error::LengthMismatch { what: "theta", expected: 1, found: 0 });
    }
    let d = theta.len() - 1;
    if first_repeat(theta).is_some() || first_repeat(theta_star).is_some() {
        return Err(Error::InvalidArray(Condition::PA2));
    }
    if !pa5_status(theta, theta_star).passed() {
        return Err(Error::InvalidArray(Condition::PA5));
    }
    if d >= 1 && seed.is_zero() {
        return Err(Error::ZeroSeed);
    }
    let sums = pa_sums(theta).expect("PA2 checked above");
    let mut varphi = Vec::with_capacity(d);
    let mut phi = Vec::with_capacity(d);
    if d >= 1 {
        // PA4 at i = 1 has sum 1, so it pins varphi_1.
        let v1 = seed - (&theta_star[1] - &theta_star[0]) * (&theta[d] - &theta[0]);
        for i in 1..=d {
            varphi.push(pa3_value(theta, theta_star, &sums, seed, i));
            phi.push(pa4_value(theta, theta_star, &sums, &v1, i));
        }
    }
    let arr = ParameterArray::new(field, theta.to_vec(), theta_star.to_vec(), varphi, phi)?;
    Ok(match validate_pa(&arr).first_failure() {
        None => Solution::Valid(arr),
        Some(c) => Solution::Inconsistent(c, arr),
    })
}

/// The base of the eigenvalue progressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QParameter {
    /// `d <= 2`: the ratio condition has no instances.
    Undetermined,
    Value(Scalar),
    /// The defining quadratic has no root in the base field.
    NotInField,
}

/// Solves `q^2 - (c-1) q + 1 = 0` for `c = (theta_0 - theta_3)/(theta_1 - theta_2)`.
///
/// The two roots are `q` and `1/q`. Over the rationals the larger one is
/// returned, over a prime field the smaller residue.
pub fn q_parameter(arr: &ParameterArray) -> Result<QParameter, Error> {
    if arr.d() <= 2 {
        return Ok(QParameter::Undetermined);
    }
    let t = arr.theta();
    let field = arr.field();
    let c = (&t[0] - &t[3]).checked_div(&(&t[1] - &t[2]))?;
    let b = &c - &field.one();
    let disc = &b * &b - field.from_i64(4);
    let Some(r) = disc.sqrt() else {
        return Ok(QParameter::NotInField);
    };
    let two = field.from_i64(2);
    let r1 = (&b + &r).checked_div(&two)?;
    let r2 = (&b - &r).checked_div(&two)?;
    let pick = match field {
        Field::Rational => std::cmp::max_by(r1, r2, |x, y| x.canonical_cmp(y)),
        Field::Prime(_) => std::cmp::min_by(r1, r2, |x, y| x.canonical_cmp(y)),
    };
    Ok(QParameter::Value(pick))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&k| Q.from_i64(k)).collect()
    }

    pub(crate) fn k1() -> ParameterArray {
        ParameterArray::from_ints(Q, &[1, -1], &[1, -1], &[-2], &[2]).unwrap()
    }

    pub(crate) fn k2() -> ParameterArray {
        ParameterArray::from_ints(Q, &[2, 0, -2], &[2, 0, -2], &[-4, -4], &[4, 4]).unwrap()
    }

    #[test]
    fn desk_arrays_are_valid() {
        assert!(validate_pa(&k1()).is_valid());
        assert!(validate_pa(&k2()).is_valid());
        let d0 = ParameterArray::from_ints(Q, &[5], &[7], &[], &[]).unwrap();
        assert!(validate_pa(&d0).is_valid());
    }

    #[test]
    fn zero_split_entry_fails_pa1() {
        let bad = ParameterArray::from_ints(Q, &[2, 0, -2], &[2, 0, -2], &[-4, -4], &[0, 4]).unwrap();
        let rep = validate_pa(&bad);
        assert_eq!(rep.status(Condition::PA1), ConditionStatus::FailsAt(1));
        assert!(!rep.is_valid());
    }

    #[test]
    fn duplicate_eigenvalue_fails_pa2() {
        let bad = ParameterArray::from_ints(Q, &[2, 0, -2], &[2, 0, 2], &[-4, -4], &[4, 4]).unwrap();
        assert_eq!(validate_pa(&bad).first_failure(), Some(Condition::PA2));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let err = ParameterArray::from_ints(Q, &[1, 2], &[1, 2], &[1, 1], &[1]).unwrap_err();
        assert_eq!(err, Error::LengthMismatch { what: "varphi", expected: 1, found: 2 });
        let small = ParameterArray::from_ints(Field::Prime(3), &[0, 1, 2], &[0, 1, 2], &[1, 1], &[1, 1]);
        assert!(matches!(small, Err(Error::InvalidModulus(3, _))));
    }

    #[test]
    fn solver_examples() {
        assert_eq!(solve_splits(&ints(&[2, 0, -2]), &ints(&[2, 0, -2]), &Q.from_i64(4)).unwrap(), Solution::Valid(k2()));
        assert_eq!(solve_splits(&ints(&[1, -1]), &ints(&[1, -1]), &Q.from_i64(2)).unwrap(), Solution::Valid(k1()));
        match solve_splits(&ints(&[1, -1]), &ints(&[1, -1]), &Q.from_i64(4)).unwrap() {
            Solution::Inconsistent(Condition::PA1, arr) => assert!(arr.varphi(1).is_zero()),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(solve_splits(&ints(&[1, -1]), &ints(&[1, -1]), &Q.zero()), Err(Error::ZeroSeed));
        assert_eq!(
            solve_splits(&ints(&[1, 1]), &ints(&[1, -1]), &Q.one()),
            Err(Error::InvalidArray(Condition::PA2))
        );
        assert_eq!(
            solve_splits(&ints(&[0, 1, 2, 4]), &ints(&[0, 1, 2, 3]), &Q.one()),
            Err(Error::InvalidArray(Condition::PA5))
        );
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_parameter(&k2()).unwrap(), QParameter::Undetermined);
        let aff = ints(&[3, 5, 7, 9, 11]);
        let Solution::Valid(arr) = solve_splits(&aff, &ints(&[0, -1, -2, -3, -4]), &Q.from_i64(7)).unwrap() else {
            panic!("affine array should be valid");
        };
        assert_eq!(q_parameter(&arr).unwrap(), QParameter::Value(Q.one()));
        let geo = ints(&[1, 2, 4, 8]);
        let dual: Vec<Scalar> = [8, 4, 2, 1].iter().map(|&k| Q.ratio(1, k).unwrap()).collect();
        let Solution::Valid(arr) = solve_splits(&geo, &dual, &Q.from_i64(3)).unwrap() else {
            panic!("geometric array should be valid");
        };
        assert_eq!(q_parameter(&arr).unwrap(), QParameter::Value(Q.from_i64(2)));
    }

    #[test]
    fn q_outside_the_field() {
        // c = 2 gives q^2 - q + 1 = 0 with negative discriminant.
        let theta = ints(&[0, 1, 3, 4]);
        let c = q_parameter_for(&theta);
        assert_eq!(c, QParameter::NotInField);
    }

    fn q_parameter_for(theta: &[Scalar]) -> QParameter {
        let Solution::Valid(arr) = solve_splits(theta, theta, &Q.from_i64(100)).unwrap() else {
            panic!("expected a valid completion");
        };
        q_parameter(&arr).unwrap()
    }

    proptest! {
        #[test]
        fn solver_reads_back_inputs(a in -5i64..5, b in 1i64..5, a2 in -5i64..5, b2 in 1i64..5, seed in 1i64..50, d in 1usize..7) {
            let theta: Vec<Scalar> = (0..=d as i64).map(|i| Q.from_i64(a + b * i)).collect();
            let ts: Vec<Scalar> = (0..=d as i64).map(|i| Q.from_i64(a2 - b2 * i)).collect();
            let s = Q.from_i64(seed);
            let arr = match solve_splits(&theta, &ts, &s).unwrap() {
                Solution::Valid(arr) | Solution::Inconsistent(_, arr) => arr,
            };
            prop_assert_eq!(arr.theta(), &theta[..]);
            prop_assert_eq!(arr.theta_star(), &ts[..]);
            prop_assert_eq!(arr.phi(1), &s);
        }
    }
}
