//! Exhaustive backtracking over the prefix-closed tree of valid words.
//!
//! Validity is closed under taking prefixes, so the search only ever extends
//! valid words. Each extension checks just the new length-`k` suffix window
//! against the factors seen so far, and when squarefreeness is required,
//! just the squares ending at the new last position.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::avoidance::{self, AvoidanceQuery};
use crate::error::{Error, Result};
use crate::stream::StreamSpec;
use crate::word::{check_alphabet, Symbol, Word};

/// Growing word plus the multiset of its length-`k` windows.
struct Path {
    alphabet: u8,
    query: AvoidanceQuery,
    symbols: Vec<Symbol>,
    windows: HashMap<Vec<Symbol>, u32>,
    scratch: Vec<Symbol>,
}

impl Path {
    fn new(alphabet: u8, query: AvoidanceQuery) -> Self {
        Self {
            alphabet,
            query,
            symbols: Vec::new(),
            windows: HashMap::new(),
            scratch: Vec::new(),
        }
    }

    /// Appends `c` if the result stays valid.
    fn push(&mut self, c: Symbol) -> bool {
        self.symbols.push(c);
        let n = self.symbols.len();
        let k = self.query.k;
        if n >= k {
            let window = &self.symbols[n - k..];
            self.scratch.clear();
            self.scratch.extend(window.iter().rev());
            if self.scratch == window || self.windows.get(self.scratch.as_slice()).is_some_and(|&m| m > 0) {
                self.symbols.pop();
                return false;
            }
        }
        if self.query.require_squarefree && self.square_at_end() {
            self.symbols.pop();
            return false;
        }
        if n >= k {
            let window = &self.symbols[n - k..];
            match self.windows.get_mut(window) {
                Some(m) => *m += 1,
                None => {
                    self.windows.insert(window.to_vec(), 1);
                }
            }
        }
        true
    }

    fn pop(&mut self) {
        let n = self.symbols.len();
        let k = self.query.k;
        if n >= k {
            let m = self
                .windows
                .get_mut(&self.symbols[n - k..])
                .expect("window was recorded on push");
            *m -= 1;
        }
        self.symbols.pop();
    }

    fn square_at_end(&self) -> bool {
        let s = &self.symbols;
        let n = s.len();
        (1..=n / 2).any(|half| s[n - 2 * half..n - half] == s[n - half..])
    }

    fn word(&self) -> Word {
        Word::from_raw(self.symbols.clone(), self.alphabet)
    }

    /// Replays `prefix`; false if it is not valid.
    fn extend_from(&mut self, prefix: &[Symbol]) -> bool {
        prefix.iter().all(|&c| self.push(c))
    }
}

/// Children allowed under symmetry pruning: a new letter must be the
/// smallest one not yet used.
fn child_limit(symbols: &[Symbol], alphabet: u8, symmetry: bool) -> u8 {
    if !symmetry {
        return alphabet;
    }
    let used = symbols.iter().copied().max().map_or(0, |m| m + 1);
    (used + 1).min(alphabet)
}

/// All valid words of length exactly `length`, in lexicographic order.
pub fn enumerate_valid(alphabet: usize, query: &AvoidanceQuery, length: usize) -> Result<Vec<Word>> {
    let alphabet = check_alphabet(alphabet)?;
    let mut path = Path::new(alphabet, *query);
    let mut out = Vec::new();
    collect_at_depth(&mut path, length, &mut out);
    Ok(out)
}

fn collect_at_depth(path: &mut Path, depth: usize, out: &mut Vec<Word>) {
    if path.symbols.len() == depth {
        out.push(path.word());
        return;
    }
    for c in 0..path.alphabet {
        if path.push(c) {
            collect_at_depth(path, depth, out);
            path.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Split the tree at depth two and search subtrees on the rayon pool.
    pub parallel: bool,
    /// Only explore words whose letters first appear in order `0, 1, ...`,
    /// then expand the witnesses under every relabelling.
    pub symmetry_pruning: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bound {
    /// The tree dies: no valid word is longer than `max_length`.
    Finite { max_length: usize, witnesses: Vec<Word> },
    /// Some valid word reaches `cap` symbols.
    ExceedsCap { cap: usize, sample_survivor: Word },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub bound: Bound,
    pub nodes_explored: u64,
}

impl SearchOutcome {
    pub fn max_length(&self) -> Option<usize> {
        match self.bound {
            Bound::Finite { max_length, .. } => Some(max_length),
            Bound::ExceedsCap { .. } => None,
        }
    }

    pub fn witnesses(&self) -> &[Word] {
        match &self.bound {
            Bound::Finite { witnesses, .. } => witnesses,
            Bound::ExceedsCap { .. } => &[],
        }
    }
}

struct Deepest {
    cap: usize,
    symmetry: bool,
    max_length: usize,
    witnesses: Vec<Word>,
    survivor: Option<Word>,
    nodes: u64,
}

impl Deepest {
    fn new(cap: usize, symmetry: bool) -> Self {
        Self {
            cap,
            symmetry,
            max_length: 0,
            witnesses: Vec::new(),
            survivor: None,
            nodes: 0,
        }
    }

    /// Returns true once a survivor of length `cap` has been found.
    fn visit(&mut self, path: &mut Path) -> bool {
        self.nodes += 1;
        let depth = path.symbols.len();
        if depth == self.cap {
            self.survivor = Some(path.word());
            return true;
        }
        if depth > self.max_length {
            self.max_length = depth;
            self.witnesses.clear();
        }
        if depth == self.max_length {
            self.witnesses.push(path.word());
        }
        let limit = child_limit(&path.symbols, path.alphabet, self.symmetry);
        for c in 0..limit {
            if path.push(c) {
                let done = self.visit(path);
                path.pop();
                if done {
                    return true;
                }
            }
        }
        false
    }

    fn merge(mut self, other: Deepest) -> Deepest {
        self.nodes += other.nodes;
        if self.survivor.is_some() {
            return self;
        }
        if other.survivor.is_some() {
            self.survivor = other.survivor;
            return self;
        }
        match other.max_length.cmp(&self.max_length) {
            std::cmp::Ordering::Greater => {
                self.max_length = other.max_length;
                self.witnesses = other.witnesses;
            }
            std::cmp::Ordering::Equal => self.witnesses.extend(other.witnesses),
            std::cmp::Ordering::Less => {}
        }
        self
    }
}

fn permutations(n: usize) -> Vec<Vec<Symbol>> {
    fn rec(current: &mut Vec<Symbol>, used: &mut Vec<bool>, out: &mut Vec<Vec<Symbol>>) {
        if current.len() == used.len() {
            out.push(current.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                current.push(c as Symbol);
                rec(current, used, out);
                current.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Depth-first search for the longest valid word, stopping at `cap`.
///
/// Reports every valid word of maximal length when the tree dies before
/// `cap`, and the lexicographically first survivor otherwise.
pub fn max_valid_length(
    alphabet: usize,
    query: &AvoidanceQuery,
    cap: usize,
    options: SearchOptions,
) -> Result<SearchOutcome> {
    if cap == 0 {
        return Err(Error::Domain("cap must be at least 1".into()));
    }
    let alphabet = check_alphabet(alphabet)?;
    let symmetry = options.symmetry_pruning;

    let result = if options.parallel && cap > 2 {
        // nodes above the split depth are visited once here, then each
        // depth-2 subtree independently
        let mut top = Deepest::new(cap, symmetry);
        let mut seeds = Vec::new();
        let mut path = Path::new(alphabet, *query);
        top.nodes += 1;
        top.max_length = 0;
        top.witnesses.push(path.word());
        let limit = child_limit(&path.symbols, alphabet, symmetry);
        for a in 0..limit {
            if !path.push(a) {
                continue;
            }
            top.nodes += 1;
            if top.max_length < 1 {
                top.max_length = 1;
                top.witnesses.clear();
            }
            top.witnesses.push(path.word());
            let limit = child_limit(&path.symbols, alphabet, symmetry);
            for b in 0..limit {
                if path.push(b) {
                    seeds.push(path.symbols.clone());
                    path.pop();
                }
            }
            path.pop();
        }
        let parts: Vec<Deepest> = seeds
            .par_iter()
            .map(|seed| {
                let mut path = Path::new(alphabet, *query);
                assert!(path.extend_from(seed));
                let mut part = Deepest::new(cap, symmetry);
                part.visit(&mut path);
                part
            })
            .collect();
        parts.into_iter().fold(top, Deepest::merge)
    } else {
        let mut path = Path::new(alphabet, *query);
        let mut all = Deepest::new(cap, symmetry);
        all.visit(&mut path);
        all
    };

    let bound = match result.survivor {
        Some(sample_survivor) => Bound::ExceedsCap { cap, sample_survivor },
        None => {
            let witnesses: Vec<Word> = if symmetry {
                let perms = permutations(alphabet as usize);
                let expanded: BTreeSet<Word> = result
                    .witnesses
                    .iter()
                    .flat_map(|w| perms.iter().map(move |p| w.permute(p).expect("valid permutation")))
                    .collect();
                expanded.into_iter().collect()
            } else {
                let mut w = result.witnesses;
                w.sort();
                w
            };
            Bound::Finite {
                max_length: result.max_length,
                witnesses,
            }
        }
    };
    Ok(SearchOutcome {
        bound,
        nodes_explored: result.nodes,
    })
}

/// Extends `seed` one letter at a time for `steps` steps, as long as exactly
/// one letter keeps the word `k`-reversal-free. `None` at the first branch
/// point or dead end.
pub fn forced_extension_check(alphabet: usize, k: usize, seed: &Word, steps: usize) -> Result<Option<Word>> {
    let query = AvoidanceQuery::reversal(k)?;
    let alphabet = check_alphabet(alphabet)?;
    if seed.alphabet() != alphabet as usize {
        return Err(Error::AlphabetMismatch {
            expected: alphabet,
            found: seed.alphabet() as u8,
        });
    }
    let mut path = Path::new(alphabet, query);
    if !path.extend_from(seed.symbols()) {
        return Err(Error::Domain(format!("seed {seed} is not valid for k = {k}")));
    }
    for _ in 0..steps {
        let mut next = None;
        for c in 0..alphabet {
            if path.push(c) {
                path.pop();
                if next.replace(c).is_some() {
                    return Ok(None);
                }
            }
        }
        match next {
            Some(c) => {
                path.push(c);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(path.word()))
}

/// The preambles `ε, 0, 1, 00, 11` that may precede the periodic part of an
/// infinite binary 5-reversal-free word.
pub fn standard_preambles() -> Vec<Word> {
    ["", "0", "1", "00", "11"]
        .iter()
        .map(|s| Word::parse(s, 2).expect("binary literal"))
        .collect()
}

/// Every rotation of `z` and of its complement.
pub fn rotation_class(z: &Word) -> Result<BTreeSet<Word>> {
    let mut set = z.cyclic_shifts()?;
    set.extend(z.complement()?.cyclic_shifts()?);
    Ok(set)
}

/// Length of the words checked by the first characterization fact.
pub const FACT1_LENGTH: usize = 9;
/// Length of the words checked by the second characterization fact.
pub const FACT2_LENGTH: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterizationReport {
    /// Every valid length-9 word starts with `y'y` for a preamble `y'` and
    /// some `y` in the set.
    pub fact1_holds: bool,
    /// Every valid length-15 word starting with `y` in the set continues
    /// with `y` again.
    pub fact2_holds: bool,
    pub valid_count_len9: usize,
    pub valid_count_len15: usize,
    pub fact1_exceptions: Vec<Word>,
    pub fact2_exceptions: Vec<Word>,
}

impl CharacterizationReport {
    pub fn exceptions(&self) -> impl Iterator<Item = &Word> {
        self.fact1_exceptions.iter().chain(&self.fact2_exceptions)
    }
}

/// Checks the two finite facts that force every infinite binary
/// 5-reversal-free word into the form `y' y^ω`.
pub fn characterization_facts(periods: &[Word]) -> Result<CharacterizationReport> {
    let Some(first) = periods.first() else {
        return Err(Error::Domain("the period set is empty".into()));
    };
    let len = first.len();
    if len == 0 || 2 * len > FACT2_LENGTH || len + 2 > FACT1_LENGTH {
        return Err(Error::Domain(format!("period length {len} is out of range")));
    }
    if let Some(bad) = periods.iter().find(|y| y.alphabet() != 2 || y.len() != len) {
        return Err(Error::Domain(format!(
            "period {bad:?} is not a binary word of length {len}"
        )));
    }
    let query = AvoidanceQuery::reversal(5)?;
    let preambles = standard_preambles();

    let valid9 = enumerate_valid(2, &query, FACT1_LENGTH)?;
    let fact1_exceptions: Vec<Word> = valid9
        .iter()
        .filter(|w| {
            !preambles.iter().any(|p| {
                periods.iter().any(|y| {
                    let head = p.concat(y).expect("binary words");
                    head.is_prefix_of(w)
                })
            })
        })
        .cloned()
        .collect();

    let valid15 = enumerate_valid(2, &query, FACT2_LENGTH)?;
    let fact2_exceptions: Vec<Word> = valid15
        .iter()
        .filter(|w| {
            periods
                .iter()
                .any(|y| y.is_prefix_of(w) && w.subword(len..2 * len) != *y)
        })
        .cloned()
        .collect();

    Ok(CharacterizationReport {
        fact1_holds: fact1_exceptions.is_empty(),
        fact2_holds: fact2_exceptions.is_empty(),
        valid_count_len9: valid9.len(),
        valid_count_len15: valid15.len(),
        fact1_exceptions,
        fact2_exceptions,
    })
}

/// Shortest length a prefix must have before matching against the family.
pub const MATCH_MIN_PREFIX: usize = 15;

/// Finds `(y', y)` with `prefix` a prefix of `y' y^ω`.
///
/// Several members can describe the same infinite word (`0·(001011)^ω` is
/// `00·(010110)^ω`), so the result is the match with the shortest preamble,
/// ties broken lexicographically.
pub fn match_ultimately_periodic(
    prefix: &Word,
    periods: &[Word],
    preambles: &[Word],
) -> Result<Option<(Word, Word)>> {
    if prefix.len() < MATCH_MIN_PREFIX {
        return Err(Error::Domain(format!(
            "prefix has {} symbols, at least {MATCH_MIN_PREFIX} are needed",
            prefix.len()
        )));
    }
    let mut preambles: Vec<&Word> = preambles.iter().collect();
    preambles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut periods: Vec<&Word> = periods.iter().collect();
    periods.sort();
    for p in preambles {
        for y in &periods {
            let Ok(spec) = StreamSpec::periodic(p.clone(), (*y).clone()) else {
                continue;
            };
            if spec.prefix(prefix.len()) == *prefix {
                return Ok(Some((p.clone(), (*y).clone())));
            }
        }
    }
    Ok(None)
}

/// Query echo in serialized search reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryEcho {
    pub alphabet: usize,
    pub k: usize,
    pub squarefree: bool,
    pub cap: usize,
}

/// JSON form of a search result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub version: String,
    pub query: QueryEcho,
    /// `finite` or `exceeds_cap`.
    pub outcome: String,
    pub max_length: Option<usize>,
    pub witnesses: Vec<String>,
    pub sample_survivor: Option<String>,
    pub nodes_explored: u64,
    pub wall_time_ms: u64,
}

impl SearchReport {
    pub fn run(alphabet: usize, query: &AvoidanceQuery, cap: usize, options: SearchOptions) -> Result<Self> {
        let start = Instant::now();
        let outcome = max_valid_length(alphabet, query, cap, options)?;
        let wall_time_ms = start.elapsed().as_millis() as u64;
        Ok(Self::from_outcome(alphabet, query, cap, &outcome, wall_time_ms))
    }

    pub fn from_outcome(
        alphabet: usize,
        query: &AvoidanceQuery,
        cap: usize,
        outcome: &SearchOutcome,
        wall_time_ms: u64,
    ) -> Self {
        let (kind, survivor) = match &outcome.bound {
            Bound::Finite { .. } => ("finite", None),
            Bound::ExceedsCap { sample_survivor, .. } => ("exceeds_cap", Some(sample_survivor.to_string())),
        };
        Self {
            version: crate::VERSION.to_string(),
            query: QueryEcho {
                alphabet,
                k: query.k,
                squarefree: query.require_squarefree,
                cap,
            },
            outcome: kind.to_string(),
            max_length: outcome.max_length(),
            witnesses: outcome.witnesses().iter().map(Word::to_string).collect(),
            sample_survivor: survivor,
            nodes_explored: outcome.nodes_explored,
            wall_time_ms,
        }
    }
}

/// Re-checks a word from scratch, without the incremental bookkeeping.
pub fn recheck(w: &Word, query: &AvoidanceQuery) -> bool {
    avoidance::is_valid(w, query) && (!query.require_squarefree || w.is_squarefree())
}
