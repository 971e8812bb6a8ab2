//! Boundary-pair evaluation.
//!
//! A segmentation is reduced to the list of word pairs straddling its
//! boundaries: the last word of each segment with the first word of the next,
//! punctuation ignored. Reference and candidate lists are compared as
//! multisets, and precision, recall and F-score follow from the size of the
//! intersection.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lexicon::MarkerLexicon;
use crate::segmenter::{parse_segmented, segment, PipelineError, SegmentedDocument, Strategy};
use crate::textproc::{normalize, tokenize, PosProvider, TextError, Token};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("candidate documents without a reference: {}", .0.join(", "))]
    UnknownDocuments(Vec<String>),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Text(#[from] TextError),
    #[error("document `{document}`: {source}")]
    Pipeline {
        document: String,
        source: PipelineError,
    },
}

/// Last word of a left segment and first word of the right one, normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPair {
    pub left: String,
    pub right: String,
}

impl BoundaryPair {
    pub fn new(left: &str, right: &str) -> Self {
        BoundaryPair {
            left: normalize(left.trim()),
            right: normalize(right.trim()),
        }
    }

    /// Key used when comparing pairs.
    fn key(&self) -> (String, String) {
        (comparison_form(&self.left), comparison_form(&self.right))
    }
}

impl fmt::Display for BoundaryPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} -- {}]", self.left, self.right)
    }
}

/// Case-folded form with an elided head reduced to its clitic, so that the
/// single unit `qu'une` compares equal to the token `qu'`.
fn comparison_form(word: &str) -> String {
    let norm = normalize(word);
    match norm.find('\'') {
        Some(i) if i + 1 < norm.len() => norm[..=i].to_string(),
        _ => norm,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairRole {
    Reference,
    Candidate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPairList {
    pub document: String,
    pub role: PairRole,
    pub pairs: Vec<BoundaryPair>,
}

impl BoundaryPairList {
    pub fn new(document: impl Into<String>, role: PairRole, pairs: Vec<BoundaryPair>) -> Self {
        BoundaryPairList {
            document: document.into(),
            role,
            pairs,
        }
    }
}

/// Pairs from a sequence of segments given as token slices.
///
/// A segment made only of punctuation is fused with the segment before it
/// (or, at the start, with the one after it).
pub fn pairs_from_segments<'a, I>(segments: I) -> Vec<BoundaryPair>
where
    I: IntoIterator<Item = &'a [Token]>,
{
    // (first word, last word) of each group of segments after fusing
    let mut groups: Vec<(&str, &str)> = Vec::new();
    for tokens in segments {
        let mut words = tokens.iter().filter(|t| !t.is_punct());
        let Some(first) = words.next() else {
            continue;
        };
        let last = words.next_back().unwrap_or(first);
        groups.push((&first.surface, &last.surface));
    }
    groups
        .windows(2)
        .map(|w| BoundaryPair::new(w[0].1, w[1].0))
        .collect()
}

/// The boundary pairs of a segmented document.
pub fn extract_pairs(doc: &SegmentedDocument) -> Vec<BoundaryPair> {
    pairs_from_segments(doc.segment_tokens())
}

/// Pairs of a `[text]_id` segmented file; each line is tokenized on its own.
pub fn pairs_from_segmented(src: &str) -> Result<Vec<BoundaryPair>, EvalError> {
    let lines = parse_segmented(src)?;
    let tokens: Vec<Vec<Token>> = lines.iter().map(|l| tokenize(&l.text)).collect();
    Ok(pairs_from_segments(tokens.iter().map(Vec::as_slice)))
}

/// Parses a `left<TAB>right` pair file. `#` lines and blank lines are skipped.
pub fn parse_pairs(src: &str) -> Result<Vec<BoundaryPair>, EvalError> {
    let mut pairs = Vec::new();
    for (n, line) in src.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.as_slice() {
            [l, r] if !l.trim().is_empty() && !r.trim().is_empty() => {
                pairs.push(BoundaryPair::new(l, r))
            }
            _ => {
                return Err(EvalError::Malformed {
                    line: n + 1,
                    message: "expected `left<TAB>right`".into(),
                })
            }
        }
    }
    Ok(pairs)
}

pub fn render_pairs(pairs: &[BoundaryPair]) -> String {
    pairs
        .iter()
        .map(|p| format!("{}\t{}\n", p.left, p.right))
        .collect()
}

/// Precision, recall and F-score with the counts behind them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalReport {
    pub n_common: usize,
    pub n_candidate: usize,
    pub n_reference: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_score: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

impl EvalReport {
    pub fn from_counts(n_common: usize, n_candidate: usize, n_reference: usize) -> Self {
        let precision = ratio(n_common, n_candidate);
        let recall = ratio(n_common, n_reference);
        let f_score = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        EvalReport {
            n_common,
            n_candidate,
            n_reference,
            precision,
            recall,
            f_score,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Serialize)]
struct Rounded {
    precision: f64,
    recall: f64,
    f_score: f64,
}

impl Serialize for EvalReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EvalReport", 7)?;
        s.serialize_field("n_common", &self.n_common)?;
        s.serialize_field("n_candidate", &self.n_candidate)?;
        s.serialize_field("n_reference", &self.n_reference)?;
        s.serialize_field("precision", &self.precision)?;
        s.serialize_field("recall", &self.recall)?;
        s.serialize_field("f_score", &self.f_score)?;
        s.serialize_field(
            "rounded",
            &Rounded {
                precision: round3(self.precision),
                recall: round3(self.recall),
                f_score: round3(self.f_score),
            },
        )?;
        s.end()
    }
}

fn counts(pairs: &[BoundaryPair]) -> HashMap<(String, String), usize> {
    let mut map = HashMap::new();
    for p in pairs {
        *map.entry(p.key()).or_insert(0) += 1;
    }
    map
}

/// Size of the multiset intersection of two pair lists.
pub fn common_pairs(a: &[BoundaryPair], b: &[BoundaryPair]) -> usize {
    let ca = counts(a);
    counts(b)
        .iter()
        .map(|(k, &n)| n.min(ca.get(k).copied().unwrap_or(0)))
        .sum()
}

/// Scores `candidate` against `reference`.
pub fn score(reference: &[BoundaryPair], candidate: &[BoundaryPair]) -> EvalReport {
    EvalReport::from_counts(
        common_pairs(reference, candidate),
        candidate.len(),
        reference.len(),
    )
}

/// Both directions: `a` as reference, then `b` as reference.
pub fn agreement(a: &[BoundaryPair], b: &[BoundaryPair]) -> (EvalReport, EvalReport) {
    (score(a, b), score(b, a))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DocumentReport {
    pub document: String,
    #[serde(flatten)]
    pub report: EvalReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusReport {
    /// Micro-average over all documents.
    pub overall: EvalReport,
    pub documents: Vec<DocumentReport>,
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Micro-averaged report over a document collection.
///
/// A reference document with no candidate counts as a candidate with no
/// pairs. A candidate document with no reference is an error.
pub fn corpus_report(
    refs: &BTreeMap<String, Vec<BoundaryPair>>,
    cands: &BTreeMap<String, Vec<BoundaryPair>>,
) -> Result<CorpusReport, EvalError> {
    let unknown: Vec<String> = cands
        .keys()
        .filter(|k| !refs.contains_key(*k))
        .cloned()
        .collect();
    if !unknown.is_empty() {
        return Err(EvalError::UnknownDocuments(unknown));
    }
    let documents: Vec<DocumentReport> = refs
        .iter()
        .map(|(doc, reference)| DocumentReport {
            document: doc.clone(),
            report: score(reference, cands.get(doc).map_or(&[][..], Vec::as_slice)),
        })
        .collect();
    let (c, n_cand, n_ref) = documents.iter().fold((0, 0, 0), |(c, a, b), d| {
        (
            c + d.report.n_common,
            a + d.report.n_candidate,
            b + d.report.n_reference,
        )
    });
    Ok(CorpusReport {
        overall: EvalReport::from_counts(c, n_cand, n_ref),
        documents,
    })
}

/// [`agreement`] over a document collection; both sides must cover the same documents.
pub fn corpus_agreement(
    a: &BTreeMap<String, Vec<BoundaryPair>>,
    b: &BTreeMap<String, Vec<BoundaryPair>>,
) -> Result<(CorpusReport, CorpusReport), EvalError> {
    let only_a: BTreeSet<&String> = a.keys().filter(|k| !b.contains_key(*k)).collect();
    if !only_a.is_empty() {
        return Err(EvalError::UnknownDocuments(
            only_a.into_iter().cloned().collect(),
        ));
    }
    Ok((corpus_report(a, b)?, corpus_report(b, a)?))
}

/// One row per system, printed like `System | F-score | P | R`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SystemComparison {
    pub rows: Vec<SystemRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SystemRow {
    pub system: String,
    pub report: CorpusReport,
}

impl SystemComparison {
    pub fn render_table(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.system.chars().count())
            .max()
            .unwrap_or(0)
            .max(6);
        let mut out = format!(
            "{:<width$}  {:>7}  {:>5}  {:>5}\n",
            "System", "F-score", "P", "R"
        );
        for row in &self.rows {
            let r = &row.report.overall;
            out.push_str(&format!(
                "{:<width$}  {:>7.3}  {:>5.3}  {:>5.3}\n",
                row.system, r.f_score, r.precision, r.recall
            ));
        }
        out
    }
}

pub fn system_name(strategy: Strategy) -> &'static str {
    match strategy {
        Strategy::Mu => "Segmenter-mu",
        Strategy::MuV => "Grammatical (V)",
        Strategy::MuVn => "Grammatical (V-N)",
    }
}

/// Runs the three strategies over `documents` and scores each against `references`.
pub fn compare_systems(
    documents: &BTreeMap<String, String>,
    references: &BTreeMap<String, Vec<BoundaryPair>>,
    lexicon: &MarkerLexicon,
    pos: &PosProvider,
) -> Result<SystemComparison, EvalError> {
    let mut rows = Vec::new();
    for strategy in Strategy::ALL {
        let mut cands = BTreeMap::new();
        for (id, text) in documents {
            let doc = segment(text, lexicon, strategy, Some(pos)).map_err(|source| {
                EvalError::Pipeline {
                    document: id.clone(),
                    source,
                }
            })?;
            cands.insert(id.clone(), extract_pairs(&doc));
        }
        rows.push(SystemRow {
            system: system_name(strategy).to_string(),
            report: corpus_report(references, &cands)?,
        });
    }
    Ok(SystemComparison { rows })
}
