//! Finite descriptions of infinite words.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::word::{FactorSet, Symbol, Word};

/// Infinite words generated by a fixed rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Fixed point of `0 -> 012, 1 -> 02, 2 -> 1` starting from `0`.
    ThueSquarefreeTernary,
    /// `1 10 100 1000 ...`: runs of zeros of strictly increasing length.
    NonperiodicBinary,
}

impl Builtin {
    pub const ALL: [Builtin; 2] = [Builtin::ThueSquarefreeTernary, Builtin::NonperiodicBinary];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::ThueSquarefreeTernary => "thue-squarefree-ternary",
            Builtin::NonperiodicBinary => "nonperiodic-binary",
        }
    }

    pub fn alphabet(self) -> usize {
        match self {
            Builtin::ThueSquarefreeTernary => 3,
            Builtin::NonperiodicBinary => 2,
        }
    }

    fn prefix(self, n: usize) -> Vec<Symbol> {
        match self {
            Builtin::ThueSquarefreeTernary => {
                const IMAGES: [&[Symbol]; 3] = [&[0, 1, 2], &[0, 2], &[1]];
                let mut current: Vec<Symbol> = vec![0];
                while current.len() < n {
                    current = current
                        .iter()
                        .flat_map(|&c| IMAGES[c as usize].iter().copied())
                        .collect();
                }
                current.truncate(n);
                current
            }
            Builtin::NonperiodicBinary => {
                let mut out = Vec::with_capacity(n);
                let mut zeros = 0;
                while out.len() < n {
                    out.push(1);
                    out.extend(std::iter::repeat_n(0, zeros));
                    zeros += 1;
                }
                out.truncate(n);
                out
            }
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown builtin stream {s:?}")))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite description of an infinite word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StreamSpec {
    /// `preamble · period^ω`.
    Periodic { preamble: Word, period: Word },
    /// `morphism(inner)`.
    MorphicImage {
        morphism: Morphism,
        inner: Box<StreamSpec>,
    },
    Builtin(Builtin),
}

impl StreamSpec {
    pub fn periodic(preamble: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Domain("period of a periodic stream must be nonempty".into()));
        }
        if preamble.alphabet() != period.alphabet() {
            return Err(Error::AlphabetMismatch {
                expected: period.alphabet() as u8,
                found: preamble.alphabet() as u8,
            });
        }
        Ok(StreamSpec::Periodic { preamble, period })
    }

    pub fn morphic_image(morphism: Morphism, inner: StreamSpec) -> Result<Self> {
        if inner.alphabet() != morphism.domain_size() {
            return Err(Error::AlphabetMismatch {
                expected: morphism.domain_size() as u8,
                found: inner.alphabet() as u8,
            });
        }
        Ok(StreamSpec::MorphicImage {
            morphism,
            inner: Box::new(inner),
        })
    }

    pub fn alphabet(&self) -> usize {
        match self {
            StreamSpec::Periodic { period, .. } => period.alphabet(),
            StreamSpec::MorphicImage { morphism, .. } => morphism.codomain_size(),
            StreamSpec::Builtin(b) => b.alphabet(),
        }
    }

    /// The first `n` symbols of the described word.
    pub fn prefix(&self, n: usize) -> Word {
        match self {
            StreamSpec::Periodic { preamble, period } => {
                let mut symbols: Vec<Symbol> = preamble.symbols().iter().copied().take(n).collect();
                symbols.extend(period.symbols().iter().copied().cycle().take(n - symbols.len()));
                Word::from_raw(symbols, period.alphabet() as u8)
            }
            StreamSpec::MorphicImage { morphism, inner } => {
                // every image is nonempty, so n inner symbols always suffice
                let preimage = inner.prefix(n);
                let mut symbols = Vec::with_capacity(n);
                for &c in preimage.symbols() {
                    if symbols.len() >= n {
                        break;
                    }
                    symbols.extend_from_slice(morphism.image(c).symbols());
                }
                symbols.truncate(n);
                Word::from_raw(symbols, morphism.codomain_size() as u8)
            }
            StreamSpec::Builtin(b) => Word::from_raw(b.prefix(n), b.alphabet() as u8),
        }
    }

    /// Length-`n` factors observed in the first `prefix_len` symbols.
    pub fn prefix_factors(&self, n: usize, prefix_len: usize) -> Result<FactorSet> {
        self.prefix(prefix_len).factors(n)
    }
}

/// Exact length-`n` factor set of `preamble · period^ω`.
///
/// Every window of the infinite word starting at or after the preamble
/// repeats with the period, so a prefix covering the preamble plus one full
/// period of window starts determines the set.
pub fn periodic_factors(preamble: &Word, period: &Word, n: usize) -> Result<FactorSet> {
    let spec = StreamSpec::periodic(preamble.clone(), period.clone())?;
    let copies = (n + preamble.len()).div_ceil(period.len()) + 1;
    let len = preamble.len() + copies * period.len();
    spec.prefix(len).factors(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::all_words;

    fn w(s: &str, a: usize) -> Word {
        Word::parse(s, a).unwrap()
    }

    #[test]
    fn periodic_prefix_examples() {
        let spec = StreamSpec::periodic(w("", 3), w("012", 3)).unwrap();
        assert_eq!(spec.prefix(7), w("0120120", 3));
        let spec = StreamSpec::periodic(w("00", 2), w("01", 2)).unwrap();
        assert_eq!(spec.prefix(5), w("00010", 2));
        assert_eq!(spec.prefix(1), w("0", 2));
        assert!(StreamSpec::periodic(w("", 2), w("", 2)).is_err());
    }

    #[test]
    fn nonperiodic_binary_prefix() {
        let spec = StreamSpec::Builtin(Builtin::NonperiodicBinary);
        assert_eq!(spec.prefix(11), w("11010010001", 2));
        assert_eq!(spec.prefix(0), w("", 2));
    }

    #[test]
    fn thue_ternary_prefix_is_squarefree() {
        let spec = StreamSpec::Builtin(Builtin::ThueSquarefreeTernary);
        assert_eq!(spec.prefix(12), w("012021012102", 3));
        assert!(spec.prefix(2000).is_squarefree());
    }

    #[test]
    fn builtin_names_round_trip() {
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        }
        assert!("thue".parse::<Builtin>().is_err());
    }

    #[test]
    fn periodic_factor_examples() {
        let set = periodic_factors(&w("", 2), &w("001011", 2), 5).unwrap();
        let expected =
            FactorSet::parse(5, 2, ["00101", "01011", "01100", "10010", "10110", "11001"]).unwrap();
        assert_eq!(set, expected);
        let set = periodic_factors(&w("", 3), &w("012", 3), 2).unwrap();
        assert_eq!(set, FactorSet::parse(2, 3, ["01", "12", "20"]).unwrap());
        let set = periodic_factors(&w("0", 2), &w("01", 2), 1).unwrap();
        assert_eq!(set, FactorSet::parse(1, 2, ["0", "1"]).unwrap());
    }

    #[test]
    fn periodic_factors_stabilize() {
        for period_len in 1..=4 {
            for period in all_words(2, period_len).unwrap() {
                for preamble_len in 0..=2 {
                    for preamble in all_words(2, preamble_len).unwrap() {
                        for n in 1..=8 {
                            let exact = periodic_factors(&preamble, &period, n).unwrap();
                            let spec = StreamSpec::periodic(preamble.clone(), period.clone()).unwrap();
                            let base = preamble.len() + (n.div_ceil(period.len()) + 1) * period.len();
                            for extra in [0, 1, 7, 40] {
                                let seen = spec.prefix_factors(n, base + extra).unwrap();
                                assert_eq!(seen, exact, "{preamble}·({period})^ω n={n}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn morphic_image_prefix() {
        let h: Morphism = "0 -> 0012\n1 -> 0112".parse().unwrap();
        let spec = StreamSpec::morphic_image(h, StreamSpec::Builtin(Builtin::NonperiodicBinary)).unwrap();
        assert_eq!(spec.prefix(10), w("0112011200", 3));
        assert_eq!(spec.alphabet(), 3);
        let h3: Morphism = "0 -> 012\n1 -> 013\n2 -> 014".parse().unwrap();
        assert!(StreamSpec::morphic_image(h3, StreamSpec::Builtin(Builtin::NonperiodicBinary)).is_err());
    }
}
