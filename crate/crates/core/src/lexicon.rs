//! Discourse-marker lexicons.
//!
//! A marker is a sequence of normalized word forms, split exactly the way the
//! text tokenizer splits running text, so `jusqu'à ce qu'` is stored as
//! `[jusqu', à, ce, qu']`. Entries whose last word is elided (`afin qu'`) are
//! always stored together with their full companion (`afin que`).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Read;

use thiserror::Error;

use crate::textproc::{self, is_punct_word, Token};

/// The French marker list shipped with the crate.
pub const FRENCH_MARKERS: &str = include_str!("../data/fr_markers.txt");
/// Extra French markers, currently just `qui`.
pub const FRENCH_SUPPLEMENT: &str = include_str!("../data/fr_supplement.txt");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("lexicon is not valid UTF-8 (first bad byte at offset {0})")]
    Encoding(usize),
    #[error("lexicon `{0}` has no entries")]
    Empty(String),
    #[error("invalid marker entry: {0}")]
    InvalidEntry(String),
    #[error("failed to read lexicon: {0}")]
    Io(#[from] std::io::Error),
}

/// One marker, as a sequence of normalized words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkerEntry {
    words: Vec<String>,
    elided: bool,
}

impl MarkerEntry {
    /// Builds an entry from already-split words.
    ///
    /// Every word must be non-empty, free of whitespace and equal to its own
    /// normalized form.
    pub fn new<I, S>(words: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let words: Vec<String> = words.into_iter().map(Into::into).collect();
        if words.is_empty() {
            return Err(LexiconError::InvalidEntry("empty marker".into()));
        }
        for w in &words {
            if w.is_empty() || w.chars().any(char::is_whitespace) || textproc::normalize(w) != *w {
                return Err(LexiconError::InvalidEntry(format!(
                    "bad word form `{w}` in {words:?}"
                )));
            }
        }
        let elided = words.last().is_some_and(|w| w.ends_with('\''));
        Ok(MarkerEntry { words, elided })
    }

    /// Normalizes and splits a raw marker string such as `"À condition d'"`.
    pub fn parse(record: &str) -> Result<Self, LexiconError> {
        Self::new(textproc::tokenize(record).into_iter().map(|t| t.norm))
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_elided(&self) -> bool {
        self.elided
    }

    fn is_punctuation(&self) -> bool {
        self.words.iter().all(|w| is_punct_word(w))
    }
}

impl fmt::Display for MarkerEntry {
    /// Writes the marker as running text: `d'abord`, `à condition d'`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 && !self.words[i - 1].ends_with('\'') {
                f.write_str(" ")?;
            }
            f.write_str(w)?;
        }
        Ok(())
    }
}

/// Full form of an elided word: `qu'` → `que`, `lorsqu'` → `lorsque`,
/// `d'` → `de`, `s'` → `si`, `l'` → `le`.
fn full_form(word: &str) -> Option<String> {
    let stem = word.strip_suffix('\'')?;
    if stem.ends_with("qu") {
        return Some(format!("{stem}e"));
    }
    match stem {
        "d" => Some("de".into()),
        "s" => Some("si".into()),
        "l" => Some("le".into()),
        _ => None,
    }
}

/// Returns the entry together with the full form of an elided last word.
pub fn expand_elision(entry: &MarkerEntry) -> BTreeSet<MarkerEntry> {
    let mut out = BTreeSet::from([entry.clone()]);
    if entry.elided {
        let last = entry.words.last().expect("entries are non-empty");
        if let Some(full) = full_form(last) {
            let mut words = entry.words.clone();
            *words.last_mut().unwrap() = full;
            out.insert(MarkerEntry {
                words,
                elided: false,
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// Keep punctuation-only records such as the bare `,` record.
    pub include_comma_marker: bool,
}

/// A position in a token list where a marker was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkerOccurrence {
    pub start: usize,
    pub length: usize,
}

#[derive(Clone, Debug, Default)]
struct TrieNode {
    children: HashMap<String, TrieNode>,
    terminal: bool,
}

impl TrieNode {
    fn insert(&mut self, words: &[String]) {
        let mut node = self;
        for w in words {
            node = node.children.entry(w.clone()).or_default();
        }
        node.terminal = true;
    }
}

/// An immutable set of markers with longest-match lookup.
#[derive(Clone, Debug)]
pub struct MarkerLexicon {
    entries: BTreeSet<MarkerEntry>,
    language: String,
    max_len: usize,
    trie: TrieNode,
}

impl PartialEq for MarkerLexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.language == other.language
    }
}

impl MarkerLexicon {
    /// Builds a lexicon from entries, expanding elisions and removing duplicates.
    pub fn from_entries<I>(entries: I, language: &str) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = MarkerEntry>,
    {
        let entries: BTreeSet<MarkerEntry> = entries
            .into_iter()
            .flat_map(|e| expand_elision(&e))
            .collect();
        if entries.is_empty() {
            return Err(LexiconError::Empty(language.to_string()));
        }
        let mut trie = TrieNode::default();
        for e in &entries {
            trie.insert(&e.words);
        }
        let max_len = entries.iter().map(MarkerEntry::len).max().unwrap_or(0);
        Ok(MarkerLexicon {
            entries,
            language: language.to_string(),
            max_len,
            trie,
        })
    }

    /// Loads a line-oriented lexicon; see [`records`] for the syntax.
    pub fn load(bytes: &[u8], language: &str, options: LoadOptions) -> Result<Self, LexiconError> {
        let text =
            std::str::from_utf8(bytes).map_err(|e| LexiconError::Encoding(e.valid_up_to()))?;
        let mut entries = Vec::new();
        for record in records(text) {
            let Ok(entry) = MarkerEntry::parse(record.text) else {
                continue;
            };
            if entry.is_punctuation() && !options.include_comma_marker {
                continue;
            }
            entries.push(entry);
        }
        Self::from_entries(entries, language)
    }

    pub fn from_reader<R: Read>(
        mut reader: R,
        language: &str,
        options: LoadOptions,
    ) -> Result<Self, LexiconError> {
        let mut buf = Vec::new();
        reader.read_to_end(&mut buf)?;
        Self::load(&buf, language, options)
    }

    /// The bundled French list.
    pub fn french(options: LoadOptions) -> Self {
        Self::load(FRENCH_MARKERS.as_bytes(), "fr", options).expect("bundled lexicon is valid")
    }

    /// Merges two lexicons; the language of `self` is kept.
    pub fn union(&self, other: &MarkerLexicon) -> MarkerLexicon {
        Self::from_entries(
            self.entries.iter().chain(&other.entries).cloned(),
            &self.language,
        )
        .expect("union of non-empty lexicons is non-empty")
    }

    pub fn entries(&self) -> impl Iterator<Item = &MarkerEntry> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn elided_count(&self) -> usize {
        self.entries.iter().filter(|e| e.elided).count()
    }

    pub fn contains<S: AsRef<str>>(&self, words: &[S]) -> bool {
        self.longest_prefix(words.iter().map(AsRef::as_ref)) == Some(words.len())
            && !words.is_empty()
    }

    /// Length of the longest entry that is a prefix of `words`.
    fn longest_prefix<'a>(&self, words: impl Iterator<Item = &'a str>) -> Option<usize> {
        let mut node = &self.trie;
        let mut best = None;
        for (i, w) in words.take(self.max_len).enumerate() {
            match node.children.get(w) {
                Some(next) => node = next,
                None => break,
            }
            if node.terminal {
                best = Some(i + 1);
            }
        }
        best
    }

    /// Finds markers left to right, longest match first, never overlapping.
    pub fn match_markers(&self, tokens: &[Token]) -> Vec<MarkerOccurrence> {
        let mut found = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            match self.longest_prefix(tokens[i..].iter().map(|t| t.norm.as_str())) {
                Some(length) => {
                    found.push(MarkerOccurrence { start: i, length });
                    i += length;
                }
                None => i += 1,
            }
        }
        found
    }
}

/// Free-function form of [`MarkerLexicon::match_markers`].
pub fn match_markers(tokens: &[Token], lexicon: &MarkerLexicon) -> Vec<MarkerOccurrence> {
    lexicon.match_markers(tokens)
}

/// Free-function form of [`MarkerLexicon::load`] with default options.
pub fn load_lexicon(source: &[u8], language: &str) -> Result<MarkerLexicon, LexiconError> {
    MarkerLexicon::load(source, language, LoadOptions::default())
}

/// One marker record of a lexicon file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Record<'a> {
    pub line: usize,
    pub text: &'a str,
}

/// Splits lexicon text into records.
///
/// One marker per line; `#` lines and blank lines are skipped. A line may
/// carry several markers separated by `/`, and a trailing `/` is ignored.
pub fn records(text: &str) -> impl Iterator<Item = Record<'_>> {
    text.lines().enumerate().flat_map(|(n, line)| {
        let line = line.trim();
        let skip = line.is_empty() || line.starts_with('#');
        line.split('/')
            .map(str::trim)
            .filter(move |r| !skip && !r.is_empty())
            .map(move |text| Record { line: n + 1, text })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalformedLine {
    pub line: usize,
    pub content: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub records: usize,
    pub entries: usize,
    pub malformed: Vec<MalformedLine>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.entries > 0 && self.malformed.is_empty()
    }
}

/// Checks every line of a lexicon file without stopping at the first problem.
///
/// A line is malformed when it has an empty record between separators, or a
/// record containing digits, control characters or punctuation other than
/// apostrophes and inner hyphens (a punctuation-only record is accepted).
pub fn validate_lexicon(
    bytes: &[u8],
    options: LoadOptions,
) -> Result<ValidationReport, LexiconError> {
    let text = std::str::from_utf8(bytes).map_err(|e| LexiconError::Encoding(e.valid_up_to()))?;
    let mut report = ValidationReport::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let pieces: Vec<&str> = line.split('/').map(str::trim).collect();
        let last = pieces.len() - 1;
        let mut bad = |reason: String| {
            report.malformed.push(MalformedLine {
                line: n + 1,
                content: raw.to_string(),
                reason,
            })
        };
        for (i, piece) in pieces.iter().enumerate() {
            if piece.is_empty() {
                if i != last || last == 0 {
                    bad("empty record".into());
                }
                continue;
            }
            report.records += 1;
            if is_punct_word(&piece.replace(' ', "")) {
                continue;
            }
            if let Some(c) = piece.chars().find(|&c| {
                c.is_control()
                    || c.is_ascii_digit()
                    || (textproc::is_punct_char(c) && !matches!(c, '\'' | '\u{2019}' | '-'))
            }) {
                bad(format!("unexpected character `{c}` in `{piece}`"));
            }
        }
    }
    if report.malformed.is_empty() {
        report.entries = match MarkerLexicon::load(bytes, "validate", options) {
            Ok(lex) => lex.len(),
            Err(LexiconError::Empty(_)) => 0,
            Err(e) => return Err(e),
        };
    }
    Ok(report)
}
