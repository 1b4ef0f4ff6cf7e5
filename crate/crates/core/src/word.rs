//! Finite words over a small alphabet `{0, 1, ..., s-1}` and the elementary
//! operators on them.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A letter of the alphabet `{0, ..., s-1}`.
pub type Symbol = u8;

/// Largest supported alphabet; symbols render as the digits `0`-`9`.
pub const MAX_ALPHABET: usize = 10;

/// A finite word together with the size of the alphabet it lives over.
///
/// The alphabet size is part of the value: `01` over two letters and `01`
/// over three letters are different words for complement and search.
/// Ordering is lexicographic on the symbols (shorter prefixes first).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    symbols: Vec<Symbol>,
    alphabet: u8,
}

pub(crate) fn check_alphabet(alphabet: usize) -> Result<u8> {
    if alphabet == 0 || alphabet > MAX_ALPHABET {
        return Err(Error::AlphabetSize(alphabet));
    }
    Ok(alphabet as u8)
}

impl Word {
    pub fn new(symbols: Vec<Symbol>, alphabet: usize) -> Result<Self> {
        let alphabet = check_alphabet(alphabet)?;
        if let Some(&symbol) = symbols.iter().find(|&&c| c >= alphabet) {
            return Err(Error::SymbolOutOfRange { symbol, alphabet });
        }
        Ok(Self { symbols, alphabet })
    }

    /// Builds a word without range checks. Callers guarantee the invariant.
    pub(crate) fn from_raw(symbols: Vec<Symbol>, alphabet: u8) -> Self {
        debug_assert!(symbols.iter().all(|&c| c < alphabet));
        Self { symbols, alphabet }
    }

    /// The empty word ε.
    pub fn empty(alphabet: usize) -> Result<Self> {
        Self::new(Vec::new(), alphabet)
    }

    /// Parses a string of digits over an alphabet of the given size.
    pub fn parse(text: &str, alphabet: usize) -> Result<Self> {
        let alphabet = check_alphabet(alphabet)?;
        let symbols = text
            .trim()
            .chars()
            .map(|ch| {
                let digit = ch
                    .to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("unexpected character {ch:?} in word")))?;
                Ok(digit as u8)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols, alphabet as usize)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet as usize
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The contiguous subword occupying `range`.
    pub fn subword(&self, range: Range<usize>) -> Word {
        Word::from_raw(self.symbols[range].to_vec(), self.alphabet)
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.subword(0..n.min(self.len()))
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.symbols.starts_with(&self.symbols)
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet,
                found: other.alphabet,
            });
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(Word::from_raw(symbols, self.alphabet))
    }

    /// `w^R`: the word read backwards.
    pub fn reverse(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word::from_raw(symbols, self.alphabet)
    }

    /// Swaps 0 and 1. Only defined over the binary alphabet.
    pub fn complement(&self) -> Result<Word> {
        if self.alphabet != 2 {
            return Err(Error::Domain(format!(
                "complement requires a binary alphabet, word is over {} letters",
                self.alphabet
            )));
        }
        Ok(Word::from_raw(
            self.symbols.iter().map(|&c| 1 - c).collect(),
            2,
        ))
    }

    /// Applies a relabelling `c -> perm[c]` of the alphabet.
    pub fn permute(&self, perm: &[Symbol]) -> Result<Word> {
        if perm.len() != self.alphabet() {
            return Err(Error::Domain(format!(
                "permutation has {} entries, alphabet has {}",
                perm.len(),
                self.alphabet
            )));
        }
        let mut seen = vec![false; perm.len()];
        for &c in perm {
            if (c as usize) >= perm.len() || std::mem::replace(&mut seen[c as usize], true) {
                return Err(Error::Domain(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(Word::from_raw(
            self.symbols.iter().map(|&c| perm[c as usize]).collect(),
            self.alphabet,
        ))
    }

    /// Rotation moving the first `by` symbols to the end.
    pub fn rotate(&self, by: usize) -> Word {
        let mut symbols = self.symbols.clone();
        if !symbols.is_empty() {
            let by = by % symbols.len();
            symbols.rotate_left(by);
        }
        Word::from_raw(symbols, self.alphabet)
    }

    /// All distinct rotations of a nonempty word.
    pub fn cyclic_shifts(&self) -> Result<BTreeSet<Word>> {
        if self.is_empty() {
            return Err(Error::Domain("cyclic shifts of the empty word".into()));
        }
        Ok((0..self.len()).map(|r| self.rotate(r)).collect())
    }

    /// Offset of the first occurrence of `needle` as a contiguous subword.
    pub fn find(&self, needle: &[Symbol]) -> Option<usize> {
        if needle.is_empty() {
            return Some(0);
        }
        self.symbols.windows(needle.len()).position(|win| win == needle)
    }

    pub fn contains(&self, needle: &Word) -> bool {
        self.find(&needle.symbols).is_some()
    }

    /// The set of every length-`n` contiguous window.
    pub fn factors(&self, n: usize) -> Result<FactorSet> {
        if n == 0 {
            return Err(Error::Domain("factor length must be at least 1".into()));
        }
        let members = self
            .symbols
            .windows(n)
            .map(|win| Word::from_raw(win.to_vec(), self.alphabet))
            .collect();
        Ok(FactorSet { length: n, members })
    }

    /// Leftmost square `xx` as `(offset, |x|)`, preferring the shortest
    /// half at the leftmost offset.
    pub fn find_square(&self) -> Option<(usize, usize)> {
        find_square(&self.symbols)
    }

    pub fn is_squarefree(&self) -> bool {
        self.find_square().is_none()
    }
}

/// Scans every half-length `p` with a running count of positions where
/// `w[i] == w[i + p]`; a run of `p` matches is a square.
pub(crate) fn find_square(symbols: &[Symbol]) -> Option<(usize, usize)> {
    let n = symbols.len();
    let mut best: Option<(usize, usize)> = None;
    for half in 1..=n / 2 {
        let mut run = 0;
        for i in 0..n - half {
            if symbols[i] == symbols[i + half] {
                run += 1;
                if run == half {
                    let start = i + 1 - half;
                    if best.is_none_or(|(off, _)| start < off) {
                        best = Some((start, half));
                    }
                    break;
                }
            } else {
                run = 0;
            }
        }
    }
    best
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε/{}", self.alphabet)
        } else {
            write!(f, "{self}/{}", self.alphabet)
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The set of all length-`n` subwords of a word or family of words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorSet {
    length: usize,
    members: BTreeSet<Word>,
}

impl FactorSet {
    pub fn new(length: usize, members: impl IntoIterator<Item = Word>) -> Result<Self> {
        if length == 0 {
            return Err(Error::Domain("factor length must be at least 1".into()));
        }
        let members: BTreeSet<Word> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|w| w.len() != length) {
            return Err(Error::Domain(format!(
                "factor {bad} has length {}, expected {length}",
                bad.len()
            )));
        }
        Ok(Self { length, members })
    }

    /// Parses a list of digit strings over the given alphabet.
    pub fn parse<'a>(
        length: usize,
        alphabet: usize,
        words: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self> {
        let words = words
            .into_iter()
            .map(|w| Word::parse(w, alphabet))
            .collect::<Result<Vec<_>>>()?;
        Self::new(length, words)
    }

    /// Every word of length `n` over an alphabet of size `alphabet`.
    pub fn universe(alphabet: usize, n: usize) -> Result<Self> {
        Self::new(n, all_words(alphabet, n)?)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.members.iter()
    }

    pub fn members(&self) -> &BTreeSet<Word> {
        &self.members
    }

    pub fn union(&self, other: &FactorSet) -> Result<FactorSet> {
        if self.length != other.length {
            return Err(Error::Domain("union of factor sets of different lengths".into()));
        }
        Ok(FactorSet {
            length: self.length,
            members: self.members.union(&other.members).cloned().collect(),
        })
    }

    pub(crate) fn insert(&mut self, w: Word) {
        debug_assert_eq!(w.len(), self.length);
        self.members.insert(w);
    }

    pub(crate) fn empty_of_length(length: usize) -> Self {
        Self {
            length,
            members: BTreeSet::new(),
        }
    }
}

impl fmt::Display for FactorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, w) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}}")
    }
}

/// Lexicographic iterator over all words of a fixed length.
pub struct AllWords {
    alphabet: u8,
    current: Option<Vec<Symbol>>,
}

impl Iterator for AllWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.current.as_mut()?;
        let out = Word::from_raw(current.clone(), self.alphabet);
        // odometer step from the right
        let mut i = current.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < self.alphabet {
                break;
            }
            current[i] = 0;
        }
        Some(out)
    }
}

/// All `s^n` words of length `n`, in lexicographic order.
pub fn all_words(alphabet: usize, n: usize) -> Result<AllWords> {
    let alphabet = check_alphabet(alphabet)?;
    Ok(AllWords {
        alphabet,
        current: Some(vec![0; n]),
    })
}
