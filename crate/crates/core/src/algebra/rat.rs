//! Rationals with a machine-word fast path.
//!
//! Values that fit in `Ratio<i64>` stay there; anything that overflows is
//! promoted to `BigRational` and demoted again as soon as it fits. The
//! representation is canonical, so derived equality and hashing agree with
//! numeric equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rat {
    pub fn from_i64(k: i64) -> Rat {
        Rat::small(Ratio::from_integer(k)).unwrap_or_else(|| Rat::Big(BigRational::from_integer(k.into())))
    }

    /// Keeps `i64::MIN` out of the small form so negation and reciprocal
    /// never overflow.
    fn small(r: Ratio<i64>) -> Option<Rat> {
        (*r.numer() != i64::MIN).then_some(Rat::Small(r))
    }

    pub fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rat::Small(Ratio::new_raw(n, d)),
            _ => Rat::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rat::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_zero(),
            Rat::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_one(),
            Rat::Big(r) => r.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_negative(),
            Rat::Big(r) => r.is_negative(),
        }
    }

    pub fn recip(&self) -> Rat {
        match self {
            Rat::Small(r) => Rat::Small(r.recip()),
            Rat::Big(r) => Rat::from_big(r.recip()),
        }
    }

    pub fn neg(&self) -> Rat {
        match self {
            Rat::Small(r) => Rat::Small(-r),
            Rat::Big(r) => Rat::from_big(-r),
        }
    }

    fn binop(
        &self,
        rhs: &Rat,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, rhs) {
            if let Some(r) = small(a, b).and_then(Rat::small) {
                return r;
            }
        }
        Rat::from_big(big(&self.to_big(), &rhs.to_big()))
    }

    pub fn add(&self, rhs: &Rat) -> Rat {
        self.binop(rhs, |a, b| a.checked_add(b), |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Rat) -> Rat {
        self.binop(rhs, |a, b| a.checked_sub(b), |a, b| a - b)
    }

    pub fn mul(&self, rhs: &Rat) -> Rat {
        self.binop(rhs, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (self, other) {
            (Rat::Small(a), Rat::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(r) => write!(f, "{r}"),
            Rat::Big(r) => write!(f, "{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let m = Rat::from_i64(i64::MAX);
        let sq = m.mul(&m);
        assert!(matches!(sq, Rat::Big(_)));
        let back = sq.mul(&m.recip());
        assert_eq!(back, m);
        assert!(matches!(back, Rat::Small(_)));
        assert!(matches!(Rat::from_i64(i64::MIN), Rat::Big(_)));
        assert_eq!(Rat::from_i64(i64::MIN).neg().neg(), Rat::from_i64(i64::MIN));
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), e in 1i64..1000) {
            let (x, y) = (Rat::from_big(big(a, b)), Rat::from_big(big(c, e)));
            let (bx, by) = (big(a, b), big(c, e));
            prop_assert_eq!(x.add(&y), Rat::from_big(&bx + &by));
            prop_assert_eq!(x.sub(&y), Rat::from_big(&bx - &by));
            prop_assert_eq!(x.mul(&y), Rat::from_big(&bx * &by));
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        }
    }
}
