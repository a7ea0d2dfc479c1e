//! Exact scalars over the rationals or a prime field.
//!
//! A [`Field`] is a lightweight descriptor; a [`Scalar`] carries enough
//! information to do arithmetic on its own (the modulus travels with every
//! prime-field residue). Mixing scalars of different fields is a contract
//! violation and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::rat::Rat;

use crate::error::Error;

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds a prime field, rejecting composite or tiny moduli.
    pub fn prime(modulus: u64) -> Result<Field, Error> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus, "modulus must be at least 2"));
        }
        if !is_prime(modulus) {
            return Err(Error::InvalidModulus(modulus, "modulus is not prime"));
        }
        if modulus > (1 << 62) {
            return Err(Error::InvalidModulus(modulus, "modulus must be below 2^62"));
        }
        Ok(Field::Prime(modulus))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(Rat::from_i64(k)),
            Field::Prime(p) => Scalar::Prime {
                value: k.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `numer / denom` as a field element.
    pub fn ratio(&self, numer: i64, denom: i64) -> Result<Scalar, Error> {
        self.from_i64(numer).checked_div(&self.from_i64(denom))
    }

    /// Parses `"p"` or `"p/q"`. Over a prime field the value is reduced.
    pub fn parse(&self, text: &str) -> Result<Scalar, Error> {
        let t = text.trim();
        let bad = |why: &str| Error::Parse(format!("`{text}`: {why}"));
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let num = BigInt::from_str(num).map_err(|_| bad("not an integer or fraction"))?;
        let den = match den {
            Some(d) => BigInt::from_str(d).map_err(|_| bad("bad denominator"))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        match *self {
            Field::Rational => Ok(Scalar::Rational(Rat::from_big(BigRational::new(num, den)))),
            Field::Prime(p) => {
                let reduce = |x: &BigInt| -> Scalar {
                    let r = x.mod_floor(&BigInt::from(p));
                    Scalar::Prime {
                        value: r.to_u64().expect("residue fits in u64"),
                        modulus: p,
                    }
                };
                reduce(&num)
                    .checked_div(&reduce(&den))
                    .map_err(|_| bad("denominator vanishes modulo p"))
            }
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match *self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    #[doc(hidden)]
    Rational(Rat),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = self.one_like();
        for _ in 0..exp {
            acc *= self;
        }
        acc
    }

    /// A square root in the base field, if one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let r = r.to_big();
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                (&n * &n == *r.numer() && &d * &d == *r.denom())
                    .then(|| Scalar::Rational(Rat::from_big(BigRational::new(n, d))))
            }
            Scalar::Prime { value, modulus } => {
                sqrt_mod(*value, *modulus).map(|v| Scalar::Prime { value: v, modulus: *modulus })
            }
        }
    }

    /// Total order used for canonical choices: numeric order on the
    /// rationals, residue order on a prime field.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Prime { value: a, .. }, Scalar::Prime { value: b, .. }) => a.cmp(b),
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch() -> ! {
    panic!("scalar field mismatch")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.add(b)),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Scalar::Prime { value: add_mod(*a, *b, *p), modulus: *p }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.sub(b)),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Scalar::Prime { value: add_mod(*a, *p - *b, *p), modulus: *p }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.mul(b)),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) if p == q => {
                Scalar::Prime { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.neg()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a = a.add(b),
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a = a.sub(b),
            _ => *self = &*self - rhs,
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a = a.mul(b),
            _ => *self = &*self * rhs,
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Tonelli-Shanks; returns the smaller of the two roots.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_strings_are_canonical() {
        let q = Field::Rational;
        assert_eq!(q.parse("6/-4").unwrap().to_string(), "-3/2");
        assert_eq!(q.parse("8/4").unwrap().to_string(), "2");
        assert_eq!(q.parse(" -7 ").unwrap().to_string(), "-7");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("abc").is_err());
    }

    #[test]
    fn prime_parsing_reduces() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.parse("-1").unwrap().to_string(), "6");
        assert_eq!(f.parse("1/2").unwrap().to_string(), "4");
        assert!(f.parse("1/7").is_err());
    }

    #[test]
    fn division_by_zero_is_reported() {
        for field in [Field::Rational, Field::Prime(11)] {
            assert_eq!(field.one().checked_div(&field.zero()), Err(Error::DivisionByZero));
            assert_eq!(field.zero().inv(), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn modulus_validation() {
        assert!(Field::prime(10007).is_ok());
        assert!(Field::prime(10005).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn square_roots() {
        let q = Field::Rational;
        assert_eq!(q.parse("9/4").unwrap().sqrt(), Some(q.parse("3/2").unwrap()));
        assert_eq!(q.parse("2").unwrap().sqrt(), None);
        assert_eq!(q.parse("-4").unwrap().sqrt(), None);
        let f = Field::Prime(10007);
        for a in 1..200u64 {
            let x = f.from_i64(a as i64);
            if let Some(r) = x.sqrt() {
                assert_eq!(&r * &r, x);
            }
        }
        // 10007 = 3 mod 4, so -1 is a non-residue.
        assert_eq!(f.from_i64(-1).sqrt(), None);
    }

    #[test]
    #[should_panic(expected = "scalar field mismatch")]
    fn mixing_fields_panics() {
        let _ = Field::Rational.one() + Field::Prime(5).one();
    }

    proptest! {
        #[test]
        fn prime_inverse_roundtrip(a in 1u64..10007) {
            let x = Field::Prime(10007).from_i64(a as i64);
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

        #[test]
        fn rational_field_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50) {
            let q = Field::Rational;
            let x = q.ratio(a, b).unwrap();
            let y = q.from_i64(c);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(&x * &(&y + &q.one()), &(&x * &y) + &x);
        }
    }
}
