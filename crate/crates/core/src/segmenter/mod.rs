//! Marker-based segmentation into elementary discourse units.
//!
//! [`segment_mu`] opens a new segment at every marker occurrence; the marker
//! words start the right-hand segment. The two merge passes then walk the
//! marker boundaries of each sentence once, left to right, and delete the
//! boundaries whose neighbouring segments fail the POS conditions. After a
//! merge the merged span is the left side of the next decision.

mod output;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::{MarkerLexicon, MarkerOccurrence};
use crate::textproc::{self, attach_pos, Pos, PosProvider, Sentence, TextError, Token};

pub use output::{parse_segmented, render_lines, SegmentLine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// Markers only.
    #[serde(rename = "mu")]
    Mu,
    /// Markers, then the verb merge rule.
    #[serde(rename = "mu-v")]
    MuV,
    /// Markers, then the noun merge rules.
    #[serde(rename = "mu-vn")]
    MuVn,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Mu, Strategy::MuV, Strategy::MuVn];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Mu => "mu",
            Strategy::MuV => "mu-v",
            Strategy::MuVn => "mu-vn",
        }
    }

    pub fn needs_pos(self) -> bool {
        self != Strategy::Mu
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mu" => Ok(Strategy::Mu),
            "mu-v" => Ok(Strategy::MuV),
            "mu-vn" => Ok(Strategy::MuVn),
            other => Err(format!(
                "unknown strategy `{other}` (expected mu, mu-v or mu-vn)"
            )),
        }
    }
}

/// A token span `[start, end)` inside one sentence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub id: usize,
    pub sentence: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryOrigin {
    Marker(MarkerOccurrence),
    Sentence,
}

/// The boundary between segment `left` and segment `left + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub left: usize,
    pub origin: BoundaryOrigin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentedDocument {
    /// Source text, used to render segments with their original spacing.
    /// Empty for documents built straight from token lists.
    pub text: String,
    pub sentences: Vec<Sentence>,
    pub segments: Vec<Segment>,
    pub boundaries: Vec<Boundary>,
    pub strategy: Strategy,
}

impl SegmentedDocument {
    pub fn tokens(&self, segment: &Segment) -> &[Token] {
        &self.sentences[segment.sentence].tokens[segment.start..segment.end]
    }

    pub fn segment_tokens(&self) -> impl Iterator<Item = &[Token]> + '_ {
        self.segments.iter().map(|s| self.tokens(s))
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Text of a segment: the source slice when available, otherwise the
    /// token surfaces with the offset gaps filled by spaces.
    pub fn segment_text(&self, segment: &Segment) -> String {
        let tokens = self.tokens(segment);
        let (Some(first), Some(last)) = (tokens.first(), tokens.last()) else {
            return String::new();
        };
        if !self.text.is_empty() {
            if let Some(s) = char_slice(&self.text, first.char_start, last.char_end) {
                return s.to_string();
            }
        }
        let mut out = String::new();
        let mut at = first.char_start;
        for t in tokens {
            out.extend(std::iter::repeat_n(' ', t.char_start.saturating_sub(at)));
            out.push_str(&t.surface);
            at = t.char_end;
        }
        out
    }

    /// Bracketed one-segment-per-line rendering, `[text]_id`.
    pub fn render(&self) -> String {
        render_lines(self.segments.iter().map(|s| SegmentLine {
            id: s.id,
            text: self.segment_text(s),
        }))
    }
}

fn char_slice(text: &str, start: usize, end: usize) -> Option<&str> {
    let mut idx = text
        .char_indices()
        .map(|(b, _)| b)
        .chain(std::iter::once(text.len()));
    let b0 = idx.nth(start)?;
    let b1 = if end == start {
        b0
    } else {
        idx.nth(end - start - 1)?
    };
    text.get(b0..b1)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SegmentError {
    #[error("token `{surface}` (sentence {sentence}, token {token}) has no POS tag")]
    MissingPos {
        sentence: usize,
        token: usize,
        surface: String,
    },
}

/// Places a boundary before each marker occurrence of every sentence.
pub fn segment_mu(sentences: Vec<Sentence>, lexicon: &MarkerLexicon) -> SegmentedDocument {
    let mut segments = Vec::new();
    let mut boundaries = Vec::new();
    for sentence in &sentences {
        if sentence.tokens.is_empty() {
            continue;
        }
        if !segments.is_empty() {
            boundaries.push(Boundary {
                left: segments.len() - 1,
                origin: BoundaryOrigin::Sentence,
            });
        }
        let mut start = 0;
        for occ in lexicon.match_markers(&sentence.tokens) {
            if occ.start == 0 {
                continue;
            }
            segments.push(Segment {
                id: segments.len(),
                sentence: sentence.index,
                start,
                end: occ.start,
            });
            boundaries.push(Boundary {
                left: segments.len() - 1,
                origin: BoundaryOrigin::Marker(occ),
            });
            start = occ.start;
        }
        segments.push(Segment {
            id: segments.len(),
            sentence: sentence.index,
            start,
            end: sentence.tokens.len(),
        });
    }
    SegmentedDocument {
        text: String::new(),
        sentences,
        segments,
        boundaries,
        strategy: Strategy::Mu,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Merge,
    Keep,
}

fn has(tokens: &[Token], pos: Pos) -> bool {
    tokens.iter().any(|t| t.pos == Some(pos))
}

/// Verb rule: merge when neither side has a verb, keep otherwise.
pub fn verb_rule(left: &[Token], right: &[Token]) -> Decision {
    if !has(left, Pos::Verb) && !has(right, Pos::Verb) {
        Decision::Merge
    } else {
        Decision::Keep
    }
}

/// Verb-noun rules, tried in order; returns the 1-based number of the rule
/// that fired with its decision.
///
/// 1. no noun on either side: merge
/// 2. at least one side without a noun: merge
/// 3. a noun on both sides: keep
/// 4. no verb and no noun anywhere: keep
pub fn verb_noun_rule(left: &[Token], right: &[Token]) -> (u8, Decision) {
    let (ln, rn) = (has(left, Pos::Noun), has(right, Pos::Noun));
    if !ln && !rn {
        (1, Decision::Merge)
    } else if !ln || !rn {
        (2, Decision::Merge)
    } else if ln && rn {
        (3, Decision::Keep)
    } else {
        // Rule 4 can only fire when rule 1 already did.
        (4, Decision::Keep)
    }
}

fn check_pos(doc: &SegmentedDocument) -> Result<(), SegmentError> {
    for s in &doc.sentences {
        if let Some((i, t)) = s.tokens.iter().enumerate().find(|(_, t)| t.pos.is_none()) {
            return Err(SegmentError::MissingPos {
                sentence: s.index,
                token: i,
                surface: t.surface.clone(),
            });
        }
    }
    Ok(())
}

fn merge_pass(
    doc: SegmentedDocument,
    strategy: Strategy,
    decide: impl Fn(&[Token], &[Token]) -> Decision,
) -> Result<SegmentedDocument, SegmentError> {
    check_pos(&doc)?;
    let mut segments: Vec<Segment> = Vec::with_capacity(doc.segments.len());
    let mut boundaries = Vec::with_capacity(doc.boundaries.len());
    let mut iter = doc.segments.iter().copied();
    let Some(mut current) = iter.next() else {
        return Ok(SegmentedDocument { strategy, ..doc });
    };
    for (next, boundary) in iter.zip(&doc.boundaries) {
        let merge = match boundary.origin {
            BoundaryOrigin::Sentence => false,
            BoundaryOrigin::Marker(_) => {
                let tokens = &doc.sentences[current.sentence].tokens;
                decide(
                    &tokens[current.start..current.end],
                    &tokens[next.start..next.end],
                ) == Decision::Merge
            }
        };
        if merge {
            current.end = next.end;
        } else {
            current.id = segments.len();
            segments.push(current);
            boundaries.push(Boundary {
                left: current.id,
                origin: boundary.origin,
            });
            current = next;
        }
    }
    current.id = segments.len();
    segments.push(current);
    Ok(SegmentedDocument {
        segments,
        boundaries,
        strategy,
        ..doc
    })
}

/// One left-to-right pass of the verb rule over the marker boundaries.
pub fn merge_pass_v(doc: SegmentedDocument) -> Result<SegmentedDocument, SegmentError> {
    merge_pass(doc, Strategy::MuV, verb_rule)
}

/// One left-to-right pass of the verb-noun rules over the marker boundaries.
pub fn merge_pass_vn(doc: SegmentedDocument) -> Result<SegmentedDocument, SegmentError> {
    merge_pass(doc, Strategy::MuVn, |l, r| verb_noun_rule(l, r).1)
}

/// Applies `strategy` to already tokenized (and, for the merge strategies, tagged) sentences.
pub fn segment_sentences(
    sentences: Vec<Sentence>,
    lexicon: &MarkerLexicon,
    strategy: Strategy,
) -> Result<SegmentedDocument, SegmentError> {
    let doc = segment_mu(sentences, lexicon);
    match strategy {
        Strategy::Mu => Ok(doc),
        Strategy::MuV => merge_pass_v(doc),
        Strategy::MuVn => merge_pass_vn(doc),
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Segment(#[from] SegmentError),
}

/// Full pipeline: sentence splitting, tokenization, optional tagging, segmentation.
pub fn segment(
    text: &str,
    lexicon: &MarkerLexicon,
    strategy: Strategy,
    pos: Option<&PosProvider>,
) -> Result<SegmentedDocument, PipelineError> {
    let mut sentences = textproc::analyze(text);
    if let Some(provider) = pos {
        sentences = attach_pos(sentences, provider)?;
    }
    let mut doc = segment_sentences(sentences, lexicon, strategy)?;
    doc.text = text.to_string();
    Ok(doc)
}
