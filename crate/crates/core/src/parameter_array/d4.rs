//! The dihedral action on Leonard systems and their parameter arrays.
//!
//! A group element is stored in normal form as three bits describing the
//! relative system it produces from `(A; E; A*; E*)`:
//!
//! * `swapped`: the starred and unstarred halves trade places,
//! * `rev_e`: the idempotents of `A` are listed in reverse,
//! * `rev_es`: the idempotents of `A*` are listed in reverse.
//!
//! Words act on the right and are read left to right, so the word
//! `down, star` sends `P` to `(P^down)^star`.

use std::fmt;
use std::str::FromStr;

use super::{require_valid, ParameterArray};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Swap the two halves of the system.
    Star,
    /// Reverse the idempotent ordering in the fourth slot.
    Down,
    /// Reverse the idempotent ordering in the second slot.
    DoubleDown,
}

impl Generator {
    pub fn name(&self) -> &'static str {
        match self {
            Generator::Star => "star",
            Generator::Down => "down",
            Generator::DoubleDown => "Down",
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    /// Case matters: `down` and `Down` are different generators.
    fn from_str(s: &str) -> Result<Generator, Error> {
        match s.trim() {
            "star" | "*" => Ok(Generator::Star),
            "down" => Ok(Generator::Down),
            "Down" => Ok(Generator::DoubleDown),
            other => Err(Error::Parse(format!("unknown generator `{other}` (expected star, down or Down)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct D4Element {
    pub swapped: bool,
    pub rev_e: bool,
    pub rev_es: bool,
}

impl D4Element {
    pub const IDENTITY: D4Element = D4Element { swapped: false, rev_e: false, rev_es: false };

    /// All eight elements, identity first.
    pub fn all() -> [D4Element; 8] {
        let mut out = [D4Element::IDENTITY; 8];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = D4Element { swapped: k & 4 != 0, rev_e: k & 2 != 0, rev_es: k & 1 != 0 };
        }
        out
    }

    pub fn generator(g: Generator) -> D4Element {
        D4Element::IDENTITY.then(g)
    }

    /// `self` followed by `g`.
    pub fn then(self, g: Generator) -> D4Element {
        let mut out = self;
        match g {
            Generator::Star => out.swapped = !out.swapped,
            Generator::Down if self.swapped => out.rev_e = !out.rev_e,
            Generator::Down => out.rev_es = !out.rev_es,
            Generator::DoubleDown if self.swapped => out.rev_es = !out.rev_es,
            Generator::DoubleDown => out.rev_e = !out.rev_e,
        }
        out
    }

    pub fn from_word(word: &[Generator]) -> D4Element {
        word.iter().fold(D4Element::IDENTITY, |acc, &g| acc.then(g))
    }

    /// `self` followed by `other`.
    pub fn compose(self, other: D4Element) -> D4Element {
        other.word().iter().fold(self, |acc, &g| acc.then(g))
    }

    /// The canonical reduced word: `Down` if `rev_e`, then `down` if
    /// `rev_es`, then `star` if `swapped`.
    pub fn word(&self) -> Vec<Generator> {
        let mut w = Vec::new();
        if self.rev_e {
            w.push(Generator::DoubleDown);
        }
        if self.rev_es {
            w.push(Generator::Down);
        }
        if self.swapped {
            w.push(Generator::Star);
        }
        w
    }

    /// Parses a comma-separated word; the empty string is the identity.
    pub fn parse_word(text: &str) -> Result<D4Element, Error> {
        let gens = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty() && *s != "id" && *s != "identity")
            .map(Generator::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(D4Element::from_word(&gens))
    }
}

impl fmt::Display for D4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word();
        if w.is_empty() {
            return f.write_str("id");
        }
        let names: Vec<&str> = w.iter().map(Generator::name).collect();
        f.write_str(&names.join(","))
    }
}

fn apply_generator(g: Generator, arr: ParameterArray) -> ParameterArray {
    let (field, mut theta, mut ts, mut varphi, mut phi) = arr.into_parts();
    match g {
        Generator::Star => {
            std::mem::swap(&mut theta, &mut ts);
            phi.reverse();
        }
        Generator::Down => {
            ts.reverse();
            varphi.reverse();
            phi.reverse();
            std::mem::swap(&mut varphi, &mut phi);
        }
        Generator::DoubleDown => {
            theta.reverse();
            std::mem::swap(&mut varphi, &mut phi);
        }
    }
    ParameterArray::new(field, theta, ts, varphi, phi).expect("shape is preserved")
}

/// The parameter array of the relative obtained by `g`.
pub fn d4_apply(g: D4Element, arr: &ParameterArray) -> Result<ParameterArray, Error> {
    require_valid(arr)?;
    Ok(apply_word(&g.word(), arr))
}

/// Applies generators one at a time without a validity gate.
pub(crate) fn apply_word(word: &[Generator], arr: &ParameterArray) -> ParameterArray {
    word.iter().fold(arr.clone(), |a, &g| apply_generator(g, a))
}
