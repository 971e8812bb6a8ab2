//! Text preprocessing: sentence splitting, tokenization and coarse POS tagging.
//!
//! The segmenter only ever looks at four coarse categories, so every tagger
//! (a pre-tagged file or the built-in suffix heuristics) is reduced to [`Pos`].

mod fallback;
mod pos;
mod sentences;
mod tokenize;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fallback::FallbackTagger;
pub use pos::{attach_pos, PosProvider, PretaggedDoc, TagMap};
pub use sentences::{sentence_spans, split_sentences};
pub use tokenize::{is_punct_char, is_punct_word, normalize, tokenize, tokenize_at};

/// Coarse part-of-speech tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Verb,
    Noun,
    Punct,
    Other,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pos::Verb => "VERB",
            Pos::Noun => "NOUN",
            Pos::Punct => "PUNCT",
            Pos::Other => "OTHER",
        })
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "VERB" => Ok(Pos::Verb),
            "NOUN" => Ok(Pos::Noun),
            "PUNCT" => Ok(Pos::Punct),
            "OTHER" => Ok(Pos::Other),
            other => Err(format!("unknown coarse tag `{other}`")),
        }
    }
}

/// A token with its position in the source document.
///
/// Offsets are 0-based character (not byte) offsets, `char_end` exclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub norm: String,
    pub pos: Option<Pos>,
    pub char_start: usize,
    pub char_end: usize,
}

impl Token {
    /// Builds a token, tagging it `PUNCT` when the surface is all punctuation.
    pub fn new(surface: impl Into<String>, char_start: usize) -> Self {
        let surface = surface.into();
        let char_end = char_start + surface.chars().count();
        let pos = is_punct_word(&surface).then_some(Pos::Punct);
        Token {
            norm: normalize(&surface),
            surface,
            pos,
            char_start,
            char_end,
        }
    }

    pub fn with_pos(mut self, pos: Pos) -> Self {
        if self.pos != Some(Pos::Punct) {
            self.pos = Some(pos);
        }
        self
    }

    pub fn is_punct(&self) -> bool {
        self.pos == Some(Pos::Punct) || is_punct_word(&self.surface)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sentence {
    pub index: usize,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("input is not valid UTF-8 (first bad byte at offset {0})")]
    Encoding(usize),
    #[error("pre-tagged input diverges from the tokenized text at sentence {sentence}, token {token}: {detail}")]
    Alignment {
        sentence: usize,
        token: usize,
        detail: String,
    },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Decodes raw bytes as UTF-8.
pub fn decode(bytes: &[u8]) -> Result<&str, TextError> {
    std::str::from_utf8(bytes).map_err(|e| TextError::Encoding(e.valid_up_to()))
}

/// Splits `text` into sentences and tokenizes each one with document offsets.
///
/// Only punctuation carries a tag afterwards; run [`attach_pos`] for the rest.
pub fn analyze(text: &str) -> Vec<Sentence> {
    sentence_spans(text)
        .into_iter()
        .filter_map(|span| {
            let offset = text[..span.start].chars().count();
            let tokens = tokenize_at(&text[span], offset);
            (!tokens.is_empty()).then_some(tokens)
        })
        .enumerate()
        .map(|(index, tokens)| Sentence { index, tokens })
        .collect()
}
