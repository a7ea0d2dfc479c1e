//! Results of individual identity checks.

use serde::{Deserialize, Serialize};

use crate::algebra::{Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    /// The witness names the first failing index or matrix entry.
    Fail(String),
    /// The check has no content for this input (for example the closed
    /// bracket formula when `q` is not in the field).
    Skipped(String),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    pub fn check(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(witness())
        }
    }

    /// Exact matrix equality; the witness is the first differing entry.
    pub fn matrices(lhs: &Matrix, rhs: &Matrix) -> Outcome {
        if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
            return Outcome::Fail(format!(
                "shape {}x{} vs {}x{}",
                lhs.rows(),
                lhs.cols(),
                rhs.rows(),
                rhs.cols()
            ));
        }
        match lhs.first_difference(rhs) {
            None => Outcome::Pass,
            Some((i, j)) => Outcome::Fail(format!("entry ({i},{j}): {} vs {}", lhs.get(i, j), rhs.get(i, j))),
        }
    }

    pub fn subspaces(lhs: &Subspace, rhs: &Subspace) -> Outcome {
        Outcome::check(lhs == rhs, || format!("dimension {} vs {}", lhs.dim(), rhs.dim()))
    }

    /// Tags a failure with an index, e.g. the `i` of an indexed family.
    pub fn at(self, label: impl std::fmt::Display) -> Outcome {
        match self {
            Outcome::Fail(w) => Outcome::Fail(format!("{label}: {w}")),
            other => other,
        }
    }

    /// First failure of a sequence, or `Pass` (skips count as passes).
    pub fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
        outcomes.into_iter().find(Outcome::failed).unwrap_or(Outcome::Pass)
    }
}

/// `Outcome::all` over an indexed family, tagging failures with the index.
pub fn for_each_index(range: impl IntoIterator<Item = usize>, mut f: impl FnMut(usize) -> Outcome) -> Outcome {
    for i in range {
        let o = f(i);
        if o.failed() {
            return o.at(format!("i={i}"));
        }
    }
    Outcome::Pass
}
