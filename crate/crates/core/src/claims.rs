//! Reproduction of the eight constructive and computational claims about
//! reversal-free words, each checked from scratch.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::avoidance::{self, has_reversal_conflict, AvoidanceQuery};
use crate::error::Result;
use crate::morphism::Morphism;
use crate::search::{self, SearchOptions};
use crate::stream::{periodic_factors, Builtin, StreamSpec};
use crate::word::{all_words, FactorSet, Word};

pub const H2_IMAGES: [&str; 2] = ["0012", "0112"];
pub const H6_IMAGES: [&str; 2] = ["0001011", "0010111"];
pub const H8_IMAGES: [&str; 3] = ["012", "013", "014"];

pub const T1_FACTORS: [&str; 3] = ["01", "12", "20"];
pub const T2_FACTORS: [&str; 7] = ["001", "011", "012", "112", "120", "200", "201"];
pub const T3_SETS: [(usize, usize, &[&str]); 3] = [
    (2, 3, &["00", "11", "010", "101"]),
    (3, 5, &["000", "010", "101", "111", "0110", "1001"]),
    (
        4,
        9,
        &["0000", "0110", "1001", "1111", "00100", "01010", "01110", "10001", "10101", "11011"],
    ),
];
/// Longest binary word avoiding reversals of length >= k, for k = 2, 3, 4.
pub const T3_MAXIMA: [(usize, usize); 3] = [(2, 2), (3, 4), (4, 8)];
pub const T4_FACTORS: [&str; 6] = ["00101", "01011", "01100", "10010", "10110", "11001"];
pub const T6_FACTORS: [&str; 15] = [
    "000101", "001011", "010110", "010111", "011000", "011001", "011100", "100010", "100101",
    "101100", "101110", "110001", "110010", "111000", "111001",
];
pub const T7_MAX_LENGTH: usize = 20;
pub const T8_FACTORS: [&str; 7] = ["01", "12", "13", "14", "20", "30", "40"];

/// The morphisms under test; replace one to see its claim fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimInputs {
    pub h2: Morphism,
    pub h6: Morphism,
    pub h8: Morphism,
}

impl Default for ClaimInputs {
    fn default() -> Self {
        Self {
            h2: Morphism::from_images(&H2_IMAGES, 3).expect("literal morphism"),
            h6: Morphism::from_images(&H6_IMAGES, 2).expect("literal morphism"),
            h8: Morphism::from_images(&H8_IMAGES, 5).expect("literal morphism"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimEntry {
    pub id: String,
    pub claim: String,
    pub status: Status,
    pub evidence: Value,
    pub wall_time_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub version: String,
    pub entries: Vec<ClaimEntry>,
    pub passed: usize,
    pub total: usize,
}

impl ClaimReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

fn words(list: &[&str], alphabet: usize) -> Vec<Word> {
    list.iter()
        .map(|s| Word::parse(s, alphabet).expect("literal word"))
        .collect()
}

fn set(length: usize, alphabet: usize, list: &[&str]) -> FactorSet {
    FactorSet::new(length, words(list, alphabet)).expect("literal factor set")
}

fn strings(set: &FactorSet) -> Vec<String> {
    set.iter().map(Word::to_string).collect()
}

struct Check {
    ok: bool,
    evidence: serde_json::Map<String, Value>,
}

impl Check {
    fn new() -> Self {
        Self {
            ok: true,
            evidence: serde_json::Map::new(),
        }
    }

    fn record(&mut self, key: &str, passed: bool, value: Value) {
        self.ok &= passed;
        self.evidence.insert(key.to_string(), json!({ "ok": passed, "value": value }));
    }
}

/// `(012)^ω` and the forced extension of every valid ternary seed.
fn check_t1() -> Result<Check> {
    let mut c = Check::new();
    let expected = set(2, 3, &T1_FACTORS);
    let factors = periodic_factors(&Word::empty(3)?, &Word::parse("012", 3)?, 2)?;
    c.record("factors", factors == expected, json!(strings(&factors)));
    c.record("conflict_free", !has_reversal_conflict(&factors), json!(null));

    let q = AvoidanceQuery::reversal(2)?;
    let seeds = search::enumerate_valid(3, &q, 2)?;
    let mut extensions = Vec::new();
    let mut all_forced = seeds.len() == 6;
    for seed in &seeds {
        let third = (0..3u8).find(|c| !seed.symbols().contains(c)).expect("two distinct letters");
        let period = Word::new(vec![seed.symbols()[0], seed.symbols()[1], third], 3)?;
        let expect = StreamSpec::periodic(Word::empty(3)?, period)?.prefix(32);
        let got = search::forced_extension_check(3, 2, seed, 30)?;
        all_forced &= got.as_ref() == Some(&expect);
        extensions.push(json!({
            "seed": seed.to_string(),
            "extension": got.map(|w| w.to_string()),
        }));
    }
    c.record("forced_extensions", all_forced, json!(extensions));
    Ok(c)
}

/// `h2` images: factor set, conflict freedom and the `00` marker.
fn check_t2(inputs: &ClaimInputs) -> Result<Check> {
    let mut c = Check::new();
    let h = &inputs.h2;
    let expected = set(3, 3, &T2_FACTORS);
    let over = h.image_factor_set(3, &FactorSet::universe(h.domain_size(), 2)?)?;
    c.record("image_factor_set", over == expected, json!(strings(&over)));
    c.record("conflict_free", !has_reversal_conflict(&over), json!(null));

    if h.domain_size() == 2 {
        let stream = StreamSpec::morphic_image(h.clone(), StreamSpec::Builtin(Builtin::NonperiodicBinary))?;
        let realized = stream.prefix_factors(3, 4000)?;
        c.record("realized_matches", realized == over, json!(strings(&realized)));
    }
    let marker = h.marker_sync_check(&Word::parse("00", h.codomain_size())?);
    match marker {
        Ok(report) => c.record("marker_00", report.synchronized, json!(report)),
        Err(e) => c.record("marker_00", false, json!(e.to_string())),
    }
    Ok(c)
}

/// Binary maxima for k <= 4 and the unavoidable sets that bound them.
fn check_t3() -> Result<Check> {
    let mut c = Check::new();
    let mut sets = Vec::new();
    let mut all_unavoidable = true;
    for (k, length, list) in T3_SETS {
        let verdict = avoidance::verify_unavoidable(2, length, &words(list, 2))?;
        all_unavoidable &= verdict.holds();
        sets.push(json!({ "k": k, "length": length, "verdict": verdict }));
    }
    c.record("unavoidable_sets", all_unavoidable, json!(sets));

    let mut maxima = Vec::new();
    let mut all_match = true;
    for (k, expected) in T3_MAXIMA {
        let outcome = search::max_valid_length(2, &AvoidanceQuery::reversal(k)?, 32, SearchOptions::default())?;
        all_match &= outcome.max_length() == Some(expected);
        maxima.push(json!({
            "k": k,
            "max_length": outcome.max_length(),
            "witness_count": outcome.witnesses().len(),
            "nodes_explored": outcome.nodes_explored,
        }));
    }
    c.record("maxima", all_match, json!(maxima));
    Ok(c)
}

/// `(001011)^ω` at k = 5.
fn check_t4() -> Result<Check> {
    let mut c = Check::new();
    let period = Word::parse("001011", 2)?;
    let factors = periodic_factors(&Word::empty(2)?, &period, 5)?;
    c.record("factors", factors == set(5, 2, &T4_FACTORS), json!(strings(&factors)));
    c.record("conflict_free", !has_reversal_conflict(&factors), json!(null));
    let q = AvoidanceQuery::reversal(5)?;
    let spec = StreamSpec::periodic(Word::empty(2)?, period)?;
    let word = spec.prefix(120);
    let bad = (0..=120).find(|&n| !avoidance::is_valid(&word.prefix(n), &q));
    c.record("prefixes_valid_to_120", bad.is_none(), json!(bad));
    Ok(c)
}

/// Every infinite binary 5-reversal-free word is `y' y^ω`.
fn check_t5() -> Result<Check> {
    let mut c = Check::new();
    let b: Vec<Word> = search::rotation_class(&Word::parse("001011", 2)?)?.into_iter().collect();
    c.record("class_size_12", b.len() == 12, json!(b.len()));

    let report = search::characterization_facts(&b)?;
    let facts_ok = report.fact1_holds && report.fact2_holds && report.exceptions().next().is_none();
    c.record("facts", facts_ok, json!(report));

    let preambles = search::standard_preambles();
    let mut all_recovered = true;
    let mut members = 0;
    for p in &preambles {
        for y in &b {
            members += 1;
            let spec = StreamSpec::periodic(p.clone(), y.clone())?;
            let found = search::match_ultimately_periodic(&spec.prefix(30), &b, &preambles)?;
            let recovered = found.is_some_and(|(fp, fy)| {
                fp.len() <= p.len()
                    && StreamSpec::periodic(fp, fy).map(|s| s.prefix(120)).ok() == Some(spec.prefix(120))
            });
            all_recovered &= recovered;
        }
    }
    c.record("family_recovered", all_recovered && members == 60, json!(members));
    Ok(c)
}

/// `h6` images: factor set, the `000` marker and block decoding.
fn check_t6(inputs: &ClaimInputs) -> Result<Check> {
    let mut c = Check::new();
    let h = &inputs.h6;
    let over = h.image_factor_set(6, &FactorSet::universe(h.domain_size(), 2)?)?;
    c.record("image_factor_set", over == set(6, 2, &T6_FACTORS), json!(strings(&over)));
    c.record("conflict_free", !has_reversal_conflict(&over), json!(null));
    match h.marker_sync_check(&Word::parse("000", h.codomain_size())?) {
        Ok(report) => c.record("marker_000", report.synchronized, json!(report)),
        Err(e) => c.record("marker_000", false, json!(e.to_string())),
    }
    let mut decoded = 0;
    let mut all_decoded = true;
    for len in 0..=8 {
        for u in all_words(h.domain_size(), len)? {
            all_decoded &= h.decode_blocks(&h.apply(&u)?) == Some(u);
            decoded += 1;
        }
    }
    c.record("decodes_all_up_to_8", all_decoded, json!(decoded));
    Ok(c)
}

/// Squarefree 2-reversal-free words over four letters have length <= 20.
fn check_t7() -> Result<Check> {
    let mut c = Check::new();
    let q = AvoidanceQuery::squarefree(2)?;
    let outcome = search::max_valid_length(4, &q, 64, SearchOptions::default())?;
    c.record(
        "max_length",
        outcome.max_length() == Some(T7_MAX_LENGTH),
        json!({ "max_length": outcome.max_length(), "nodes_explored": outcome.nodes_explored }),
    );
    let witnesses = outcome.witnesses();
    let recheck = !witnesses.is_empty()
        && witnesses
            .iter()
            .all(|w| w.len() == T7_MAX_LENGTH && avoidance::brute_force_reversal_free(w, 2) && w.is_squarefree());
    c.record(
        "witnesses_recheck",
        recheck,
        json!({ "count": witnesses.len(), "first": witnesses.first() }),
    );
    Ok(c)
}

/// `h8` maps squarefree ternary words to squarefree 2-reversal-free words.
fn check_t8(inputs: &ClaimInputs) -> Result<Check> {
    let mut c = Check::new();
    let h = &inputs.h8;
    match h.squarefree_morphism_test() {
        Ok(test) => c.record(
            "squarefree_test",
            test.passed() && test.preimages.len() == 12,
            json!(test),
        ),
        Err(e) => c.record("squarefree_test", false, json!(e.to_string())),
    }
    if h.domain_size() == 3 {
        let universe = FactorSet::new(2, all_words(3, 2)?.filter(Word::is_squarefree))?;
        let over = h.image_factor_set(2, &universe)?;
        c.record(
            "image_factor_set",
            over == set(2, 5, &T8_FACTORS),
            json!(strings(&over)),
        );
        c.record("conflict_free", !has_reversal_conflict(&over), json!(null));

        let stream = StreamSpec::morphic_image(h.clone(), StreamSpec::Builtin(Builtin::ThueSquarefreeTernary))?;
        let prefix = stream.prefix(3000);
        let ok = prefix.is_squarefree() && avoidance::is_valid(&prefix, &AvoidanceQuery::reversal(2)?);
        c.record("prefix_3000", ok, json!(prefix.len()));
    }
    Ok(c)
}

pub const CLAIM_TEXT: [(&str, &str); 8] = [
    ("T1", "(012)^ω avoids reversed subwords of length >= 2 and is forced by any valid seed"),
    ("T2", "0->0012, 1->0112 yields a nonperiodic ternary word avoiding reversed subwords of length >= 3"),
    ("T3", "binary words avoiding reversed subwords of length >= k, k <= 4, have length <= 8"),
    ("T4", "(001011)^ω avoids reversed subwords of length >= 5"),
    ("T5", "infinite binary words avoiding reversed subwords of length >= 5 are y'y^ω with y' in {ε,0,1,00,11}, y a rotation of 001011 or 110100"),
    ("T6", "0->0001011, 1->0010111 yields a nonperiodic binary word avoiding reversed subwords of length >= 6"),
    ("T7", "squarefree words over 4 letters avoiding reversed subwords of length >= 2 have length <= 20"),
    ("T8", "0->012, 1->013, 2->014 maps squarefree ternary words to squarefree 5-letter words avoiding reversed subwords of length >= 2"),
];

/// Runs one claim by id (`T1`..`T8`).
pub fn run_claim(id: &str, inputs: &ClaimInputs) -> Result<Option<ClaimEntry>> {
    let Some(&(id, claim)) = CLAIM_TEXT.iter().find(|(i, _)| i.eq_ignore_ascii_case(id)) else {
        return Ok(None);
    };
    let start = std::time::Instant::now();
    let check = match id {
        "T1" => check_t1(),
        "T2" => check_t2(inputs),
        "T3" => check_t3(),
        "T4" => check_t4(),
        "T5" => check_t5(),
        "T6" => check_t6(inputs),
        "T7" => check_t7(),
        _ => check_t8(inputs),
    };
    // errors inside a check count as a failed claim, not a crash
    let (status, evidence) = match check {
        Ok(c) => (if c.ok { Status::Pass } else { Status::Fail }, Value::Object(c.evidence)),
        Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
    };
    Ok(Some(ClaimEntry {
        id: id.to_string(),
        claim: claim.to_string(),
        status,
        evidence,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }))
}

pub fn verify_all(inputs: &ClaimInputs) -> Result<ClaimReport> {
    let mut entries = Vec::new();
    for (id, _) in CLAIM_TEXT {
        entries.extend(run_claim(id, inputs)?);
    }
    let passed = entries.iter().filter(|e| e.status == Status::Pass).count();
    Ok(ClaimReport {
        version: crate::VERSION.to_string(),
        total: entries.len(),
        passed,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_h6_fails_only_t6() {
        let mut inputs = ClaimInputs::default();
        inputs.h6 = inputs.h6.with_image(1, Word::parse("0011011", 2).unwrap()).unwrap();
        let t6 = run_claim("T6", &inputs).unwrap().unwrap();
        assert_eq!(t6.status, Status::Fail);
        let t2 = run_claim("t2", &inputs).unwrap().unwrap();
        assert_eq!(t2.status, Status::Pass);
    }

    #[test]
    fn wrong_domain_h8_fails_cleanly() {
        let inputs = ClaimInputs {
            h8: Morphism::from_images(&["01", "10"], 2).unwrap(),
            ..ClaimInputs::default()
        };
        assert_eq!(run_claim("T8", &inputs).unwrap().unwrap().status, Status::Fail);
    }

    #[test]
    fn unknown_claim() {
        assert!(run_claim("T9", &ClaimInputs::default()).unwrap().is_none());
    }
}
