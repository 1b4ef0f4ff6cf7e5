//! The reversal-avoidance predicate and unavoidable-set checks.
//!
//! If `x` and `x^R` both occur with `|x| > k`, then the length-`k` prefix of
//! `x` and its reversal (a suffix of `x^R`) occur too. Checking conflicts in
//! the length-`k` factor set is therefore enough; [`reduction_equivalence`]
//! keeps the slow all-lengths quantifier around as an oracle for that.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{all_words, FactorSet, Word};

/// "No subword of length at least `k` has its reversal as a subword",
/// optionally together with squarefreeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AvoidanceQuery {
    pub k: usize,
    pub require_squarefree: bool,
}

impl AvoidanceQuery {
    pub fn new(k: usize, require_squarefree: bool) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("k must be at least 1".into()));
        }
        Ok(Self { k, require_squarefree })
    }

    /// Reversal avoidance only.
    pub fn reversal(k: usize) -> Result<Self> {
        Self::new(k, false)
    }

    pub fn squarefree(k: usize) -> Result<Self> {
        Self::new(k, true)
    }
}

/// `x` occurs at `position_x` and `x^R` at `position_xr`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConflictWitness {
    pub x: Word,
    pub position_x: usize,
    pub position_xr: usize,
}

/// Why a word fails a query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Reversal(ConflictWitness),
    /// The square `xx` with `|x| = half` starting at `offset`.
    Square { offset: usize, half: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Reversal(c) => write!(
                f,
                "conflict {}/{} at offsets {} and {}",
                c.x,
                c.x.reverse(),
                c.position_x,
                c.position_xr
            ),
            Violation::Square { offset, half } => {
                write!(f, "square of period {half} at offset {offset}")
            }
        }
    }
}

/// True iff some member's reversal is also a member. Palindromes conflict
/// with themselves.
pub fn has_reversal_conflict(set: &FactorSet) -> bool {
    set.iter().any(|x| set.contains(&x.reverse()))
}

/// The lexicographically first length-`k` factor whose reversal also occurs.
pub fn first_conflict(w: &Word, k: usize) -> Option<ConflictWitness> {
    let set = w.factors(k).ok()?;
    let x = set.iter().find(|x| set.contains(&x.reverse()))?;
    let xr = x.reverse();
    Some(ConflictWitness {
        position_x: w.find(x.symbols()).expect("factor occurs"),
        position_xr: w.find(xr.symbols()).expect("factor occurs"),
        x: x.clone(),
    })
}

/// Checks `w` against `q`, reporting the first violation. Words shorter
/// than `k` pass the reversal part vacuously.
pub fn check(w: &Word, q: &AvoidanceQuery) -> std::result::Result<(), Violation> {
    if let Some(witness) = first_conflict(w, q.k) {
        return Err(Violation::Reversal(witness));
    }
    if q.require_squarefree {
        if let Some((offset, half)) = w.find_square() {
            return Err(Violation::Square { offset, half });
        }
    }
    Ok(())
}

pub fn is_valid(w: &Word, q: &AvoidanceQuery) -> bool {
    check(w, q).is_ok()
}

/// The unreduced predicate: compares every pair of subwords of each length
/// from `k` up to `|w|`.
pub fn brute_force_reversal_free(w: &Word, k: usize) -> bool {
    let n = w.len();
    let s = w.symbols();
    for len in k.max(1)..=n {
        for i in 0..=n - len {
            let x = &s[i..i + len];
            for j in 0..=n - len {
                let y = &s[j..j + len];
                if x.iter().eq(y.iter().rev()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether the all-lengths quantifier agrees with the length-`k` factor set
/// check on `w`. Always true; exposed so the reduction can be tested.
pub fn reduction_equivalence(w: &Word, k: usize) -> Result<bool> {
    if k == 0 || w.len() < k {
        return Err(Error::Domain(format!(
            "reduction needs 1 <= k <= |w|, got k = {k}, |w| = {}",
            w.len()
        )));
    }
    let reduced = !has_reversal_conflict(&w.factors(k)?);
    Ok(reduced == brute_force_reversal_free(w, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "counterexample", rename_all = "snake_case")]
pub enum Unavoidability {
    Unavoidable,
    /// A word of the tested length containing no member of the set.
    Avoided(Word),
}

impl Unavoidability {
    pub fn holds(&self) -> bool {
        matches!(self, Unavoidability::Unavoidable)
    }
}

/// Does every word of length `length` over `alphabet` letters contain a
/// member of `set`? Containment is monotone under extension, so this also
/// settles every longer length.
pub fn verify_unavoidable(alphabet: usize, length: usize, set: &[Word]) -> Result<Unavoidability> {
    if length == 0 {
        return Err(Error::Domain("length must be at least 1".into()));
    }
    if let Some(bad) = set.iter().find(|u| u.alphabet() != alphabet) {
        return Err(Error::AlphabetMismatch {
            expected: alphabet as u8,
            found: bad.alphabet() as u8,
        });
    }
    for candidate in all_words(alphabet, length)? {
        if !set.iter().any(|u| candidate.contains(u)) {
            return Ok(Unavoidability::Avoided(candidate));
        }
    }
    Ok(Unavoidability::Unavoidable)
}
