//! Word list text format: one word per line as digits, with an optional
//! leading `alphabet=s` header. An empty line is the empty word.

use crate::error::{Error, Result};
use crate::word::Word;

const HEADER: &str = "alphabet=";

/// Parses a word list. The header, when present, overrides `default_alphabet`.
pub fn parse_word_list(text: &str, default_alphabet: Option<usize>) -> Result<(usize, Vec<Word>)> {
    let mut lines = text.lines().peekable();
    let mut alphabet = default_alphabet;
    if let Some(size) = lines.peek().and_then(|l| l.trim().strip_prefix(HEADER)) {
        alphabet = Some(
            size.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad alphabet header {size:?}")))?,
        );
        lines.next();
    }
    let alphabet =
        alphabet.ok_or_else(|| Error::Parse("word list has no `alphabet=` header".into()))?;
    let words = lines
        .map(|line| Word::parse(line, alphabet))
        .collect::<Result<Vec<_>>>()?;
    Ok((alphabet, words))
}

pub fn render_word_list<'a>(alphabet: usize, words: impl IntoIterator<Item = &'a Word>) -> String {
    let mut out = format!("{HEADER}{alphabet}\n");
    for w in words {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn header_and_empty_word() {
        let (a, words) = parse_word_list("alphabet=3\n012\n\n21\n", None).unwrap();
        assert_eq!(a, 3);
        assert_eq!(words.len(), 3);
        assert!(words[1].is_empty());
        assert_eq!(render_word_list(a, &words), "alphabet=3\n012\n\n21\n");
    }

    #[test]
    fn missing_header_needs_default() {
        assert!(parse_word_list("01\n", None).is_err());
        assert_eq!(parse_word_list("01\n", Some(2)).unwrap().1[0].to_string(), "01");
        assert!(parse_word_list("alphabet=2\n012\n", None).is_err());
    }

    proptest! {
        #[test]
        fn render_then_parse(alphabet in 1usize..=5, raw in prop::collection::vec(prop::collection::vec(0u8..5, 0..12), 0..8)) {
            let words: Vec<Word> = raw
                .into_iter()
                .map(|s| Word::new(s.into_iter().map(|c| c % alphabet as u8).collect(), alphabet).unwrap())
                .collect();
            let text = render_word_list(alphabet, &words);
            let (a, back) = parse_word_list(&text, None).unwrap();
            prop_assert_eq!(a, alphabet);
            prop_assert_eq!(back, words);
        }
    }
}
