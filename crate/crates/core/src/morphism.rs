//! Morphisms `h(xy) = h(x)h(y)` given by the images of single letters, their
//! image factor sets and the block-decoding facts behind nonperiodicity
//! arguments.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{all_words, check_alphabet, FactorSet, Symbol, Word, MAX_ALPHABET};

/// A morphism from `{0, ..., domain_size-1}` into words over a codomain
/// alphabet, each image nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    images: Vec<Word>,
    codomain: u8,
}

impl Morphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let first = images
            .first()
            .ok_or_else(|| Error::Domain("a morphism needs at least one image".into()))?;
        check_alphabet(images.len())?;
        let codomain = first.alphabet() as u8;
        for (c, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(Error::Domain(format!("image of {c} is empty")));
            }
            if image.alphabet() as u8 != codomain {
                return Err(Error::AlphabetMismatch {
                    expected: codomain,
                    found: image.alphabet() as u8,
                });
            }
        }
        Ok(Self { images, codomain })
    }

    /// Builds a morphism from digit strings over a codomain of the given size.
    pub fn from_images(images: &[&str], codomain: usize) -> Result<Self> {
        let images = images
            .iter()
            .map(|s| Word::parse(s, codomain))
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn identity(alphabet: usize) -> Result<Self> {
        let images = (0..alphabet)
            .map(|c| Word::new(vec![c as Symbol], alphabet))
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain as usize
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of a single letter. Panics if `c` is outside the domain.
    pub fn image(&self, c: Symbol) -> &Word {
        &self.images[c as usize]
    }

    /// The common image length, if all images share one.
    pub fn uniform_length(&self) -> Option<usize> {
        let len = self.images[0].len();
        self.images.iter().all(|w| w.len() == len).then_some(len)
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform_length().is_some()
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(Word::len).min().unwrap_or(0)
    }

    /// Replaces the image of one letter.
    pub fn with_image(&self, c: Symbol, image: Word) -> Result<Self> {
        let mut images = self.images.clone();
        let slot = images
            .get_mut(c as usize)
            .ok_or_else(|| Error::Domain(format!("{c} is outside the morphism domain")))?;
        *slot = image;
        Self::new(images)
    }

    /// Letterwise image of `w`.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        if let Some(&symbol) = w.symbols().iter().find(|&&c| c as usize >= self.domain_size()) {
            return Err(Error::SymbolOutOfRange {
                symbol,
                alphabet: self.domain_size() as u8,
            });
        }
        let symbols = w
            .symbols()
            .iter()
            .flat_map(|&c| self.images[c as usize].symbols().iter().copied())
            .collect();
        Ok(Word::from_raw(symbols, self.codomain))
    }

    /// All length-`k` windows of `h(u)` for `u` in a universe of preimage
    /// words of common length `m`.
    ///
    /// The universe must be long enough that every length-`k` window of
    /// `h(w)`, for any `w` whose length-`m` factors lie in the universe, fits
    /// inside the image of one member: `(m - 1) * min_image_len + 1 >= k`.
    pub fn image_factor_set(&self, k: usize, universe: &FactorSet) -> Result<FactorSet> {
        if k == 0 {
            return Err(Error::Domain("factor length must be at least 1".into()));
        }
        let m = universe.length();
        if (m - 1) * self.min_image_len() + 1 < k {
            return Err(Error::Domain(format!(
                "preimage length {m} does not cover windows of length {k} \
                 (minimum image length {})",
                self.min_image_len()
            )));
        }
        let mut out = FactorSet::empty_of_length(k);
        for u in universe.iter() {
            for win in self.apply(u)?.symbols().windows(k) {
                out.insert(Word::from_raw(win.to_vec(), self.codomain));
            }
        }
        Ok(out)
    }

    /// Locates every occurrence of `marker` inside `h(a)h(b)` over all letter
    /// pairs and decides whether the marker only ever appears at the start of
    /// an image block, always the same one.
    pub fn marker_sync_check(&self, marker: &Word) -> Result<MarkerReport> {
        let block = self.uniform_length().ok_or_else(|| {
            Error::Unsupported("marker synchronisation needs a uniform morphism".into())
        })?;
        if marker.is_empty() || marker.len() > block {
            return Err(Error::Domain(format!(
                "marker length {} must be between 1 and the image length {block}",
                marker.len()
            )));
        }
        if marker.alphabet() != self.codomain_size() {
            return Err(Error::AlphabetMismatch {
                expected: self.codomain,
                found: marker.alphabet() as u8,
            });
        }

        let mut occurrences = Vec::new();
        let mut aligned_blocks = Vec::new();
        let mut aligned = true;
        for a in 0..self.domain_size() as Symbol {
            for b in 0..self.domain_size() as Symbol {
                let pair = self.apply(&Word::from_raw(vec![a, b], self.domain_size() as u8))?;
                for (offset, win) in pair.symbols().windows(marker.len()).enumerate() {
                    if win != marker.symbols() {
                        continue;
                    }
                    occurrences.push(MarkerOccurrence { first: a, second: b, offset });
                    match offset {
                        0 => aligned_blocks.push(a),
                        o if o == block => aligned_blocks.push(b),
                        _ => aligned = false,
                    }
                }
            }
        }
        let decoding_symbol = match aligned_blocks.split_first() {
            Some((&c, rest)) if rest.iter().all(|&d| d == c) => Some(c),
            _ => None,
        };
        let synchronized = aligned && !occurrences.is_empty() && decoding_symbol.is_some();
        Ok(MarkerReport {
            marker: marker.clone(),
            occurrences,
            decoding_symbol: decoding_symbol.filter(|_| aligned),
            synchronized,
        })
    }

    /// Applies the morphism to each of the 12 squarefree ternary words of
    /// length 3 (generated, not listed) and checks the images for squares.
    pub fn squarefree_morphism_test(&self) -> Result<SquarefreeTest> {
        if self.domain_size() != 3 {
            return Err(Error::Domain(format!(
                "the length-3 test is for ternary morphisms, domain has {} letters",
                self.domain_size()
            )));
        }
        let preimages: Vec<Word> = all_words(3, 3)?.filter(Word::is_squarefree).collect();
        let mut failure = None;
        for u in &preimages {
            let image = self.apply(u)?;
            if !image.is_squarefree() {
                failure = Some(SquarefreeFailure {
                    preimage: u.clone(),
                    image,
                });
                break;
            }
        }
        Ok(SquarefreeTest { preimages, failure })
    }

    /// Block-wise inverse for a uniform morphism: returns `u` with `h(u) = y`
    /// when `y` splits into images of letters, `None` otherwise (including
    /// for non-uniform morphisms).
    pub fn decode_blocks(&self, y: &Word) -> Option<Word> {
        let block = self.uniform_length()?;
        if y.alphabet() != self.codomain_size() || !y.len().is_multiple_of(block) {
            return None;
        }
        let symbols = y
            .symbols()
            .chunks(block)
            .map(|chunk| {
                self.images
                    .iter()
                    .position(|img| img.symbols() == chunk)
                    .map(|c| c as Symbol)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Word::from_raw(symbols, self.domain_size() as u8))
    }
}

/// `a b @ offset`: the marker occurs at `offset` inside `h(a)h(b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MarkerOccurrence {
    pub first: Symbol,
    pub second: Symbol,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkerReport {
    pub marker: Word,
    pub occurrences: Vec<MarkerOccurrence>,
    /// The letter whose image every aligned occurrence starts, when unique.
    pub decoding_symbol: Option<Symbol>,
    pub synchronized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquarefreeFailure {
    pub preimage: Word,
    pub image: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquarefreeTest {
    pub preimages: Vec<Word>,
    pub failure: Option<SquarefreeFailure>,
}

impl SquarefreeTest {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Parses `c -> image` lines, one per letter in order `0, 1, ...`.
///
/// An optional `alphabet=s` line fixes the codomain size; otherwise it is one
/// more than the largest digit used in any image.
impl FromStr for Morphism {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut codomain = None;
        let mut rules: Vec<(usize, String)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(size) = line.strip_prefix("alphabet=") {
                let size = size
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {}: bad alphabet size", lineno + 1)))?;
                codomain = Some(size);
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("line {}: expected `c -> image`", lineno + 1)))?;
            let letter = lhs
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("line {}: bad letter {:?}", lineno + 1, lhs.trim())))?;
            rules.push((letter, rhs.trim().to_string()));
        }
        rules.sort_by_key(|(c, _)| *c);
        for (expected, (c, _)) in rules.iter().enumerate() {
            if *c != expected {
                return Err(Error::Parse(format!(
                    "letters must be 0..n with one rule each, found {c} where {expected} was expected"
                )));
            }
        }
        let codomain = match codomain {
            Some(size) => size,
            None => rules
                .iter()
                .flat_map(|(_, img)| img.chars())
                .filter_map(|ch| ch.to_digit(10))
                .max()
                .map_or(1, |d| d as usize + 1)
                .min(MAX_ALPHABET),
        };
        let images = rules
            .iter()
            .map(|(_, img)| Word::parse(img, codomain))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(images)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, image) in self.images.iter().enumerate() {
            writeln!(f, "{c} -> {image}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, a: usize) -> Word {
        Word::parse(s, a).unwrap()
    }

    fn h2() -> Morphism {
        Morphism::from_images(&["0012", "0112"], 3).unwrap()
    }

    fn h6() -> Morphism {
        Morphism::from_images(&["0001011", "0010111"], 2).unwrap()
    }

    fn h8() -> Morphism {
        Morphism::from_images(&["012", "013", "014"], 5).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(h2().apply(&w("01", 2)).unwrap(), w("00120112", 3));
        assert_eq!(h2().apply(&w("", 2)).unwrap(), w("", 3));
        assert_eq!(h8().apply(&w("012", 3)).unwrap(), w("012013014", 5));
        assert!(matches!(
            h2().apply(&w("012", 3)),
            Err(Error::SymbolOutOfRange { symbol: 2, .. })
        ));
    }

    #[test]
    fn image_factor_set_of_h2() {
        let set = h2().image_factor_set(3, &FactorSet::universe(2, 2).unwrap()).unwrap();
        let expected =
            FactorSet::parse(3, 3, ["001", "011", "012", "112", "120", "200", "201"]).unwrap();
        assert_eq!(set, expected);
    }

    #[test]
    fn image_factor_set_of_h8() {
        let set = h8().image_factor_set(2, &FactorSet::universe(3, 2).unwrap()).unwrap();
        let expected =
            FactorSet::parse(2, 5, ["01", "12", "13", "14", "20", "30", "40"]).unwrap();
        assert_eq!(set, expected);
    }

    #[test]
    fn image_factor_set_rejects_short_universe() {
        let universe = FactorSet::universe(2, 1).unwrap();
        assert!(h2().image_factor_set(2, &universe).is_err());
        assert!(h2().image_factor_set(1, &universe).is_ok());
        let pairs = FactorSet::universe(2, 2).unwrap();
        assert!(h2().image_factor_set(5, &pairs).is_ok());
        assert!(h2().image_factor_set(6, &pairs).is_err());
    }

    #[test]
    fn marker_examples() {
        let report = h2().marker_sync_check(&w("00", 3)).unwrap();
        assert!(report.synchronized);
        assert_eq!(report.decoding_symbol, Some(0));

        let report = h6().marker_sync_check(&w("000", 2)).unwrap();
        assert!(report.synchronized);
        // h(0)h(0) holds the marker at both block starts
        assert!(report.occurrences.contains(&MarkerOccurrence { first: 0, second: 0, offset: 7 }));

        let report = h2().marker_sync_check(&w("01", 3)).unwrap();
        assert!(!report.synchronized);
        assert!(report.occurrences.iter().any(|o| o.offset == 1));
    }

    #[test]
    fn marker_occurrences_are_genuine() {
        for (h, marker) in [(h2(), w("00", 3)), (h6(), w("000", 2)), (h2(), w("12", 3))] {
            let report = h.marker_sync_check(&marker).unwrap();
            for occ in &report.occurrences {
                let pair = h.apply(&w(&format!("{}{}", occ.first, occ.second), 2)).unwrap();
                assert_eq!(pair.subword(occ.offset..occ.offset + marker.len()), marker);
            }
        }
    }

    #[test]
    fn marker_rejects_non_uniform() {
        let h = Morphism::from_images(&["012", "02", "1"], 3).unwrap();
        assert!(matches!(h.marker_sync_check(&w("0", 3)), Err(Error::Unsupported(_))));
        assert!(h2().marker_sync_check(&w("00120", 3)).is_err());
    }

    #[test]
    fn squarefree_test_examples() {
        let report = h8().squarefree_morphism_test().unwrap();
        assert!(report.passed());
        assert_eq!(report.preimages.len(), 12);

        assert!(Morphism::identity(3).unwrap().squarefree_morphism_test().unwrap().passed());

        let constant = Morphism::from_images(&["0", "0", "0"], 1).unwrap();
        let report = constant.squarefree_morphism_test().unwrap();
        let failure = report.failure.unwrap();
        assert_eq!(failure.preimage, w("010", 3));
        assert_eq!(failure.image, w("000", 1));

        assert!(h2().squarefree_morphism_test().is_err());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(h2().decode_blocks(&w("00120112", 3)), Some(w("01", 2)));
        assert_eq!(h2().decode_blocks(&w("0012", 3)), Some(w("0", 2)));
        assert_eq!(h2().decode_blocks(&w("1200", 3)), None);
        assert_eq!(h2().decode_blocks(&w("001", 3)), None);
        assert_eq!(h2().decode_blocks(&w("", 3)), Some(w("", 2)));
    }

    #[test]
    fn text_format_round_trips() {
        for h in [h2(), h6(), h8()] {
            let parsed: Morphism = h.to_string().parse().unwrap();
            assert_eq!(parsed, h);
        }
        let h: Morphism = "alphabet=4\n1 -> 10\n0 -> 01\n".parse().unwrap();
        assert_eq!(h.codomain_size(), 4);
        assert_eq!(h.image(1), &w("10", 4));
        assert!("0 -> 01\n2 -> 1".parse::<Morphism>().is_err());
        assert!("0 = 01".parse::<Morphism>().is_err());
        assert!("0 -> ".parse::<Morphism>().is_err());
    }
}
