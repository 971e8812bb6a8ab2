use std::collections::HashMap;

use super::{FallbackTagger, Pos, Sentence, TextError};

const TREETAGGER_FR: &str = include_str!("../../data/treetagger_fr.tagmap");

/// Maps fine-grained tagger labels onto the coarse tagset.
///
/// Labels ending in `*` match by prefix, the longest prefix winning. Labels
/// with no mapping become [`Pos::Other`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TagMap {
    exact: HashMap<String, Pos>,
    prefixes: Vec<(String, Pos)>,
}

impl TagMap {
    /// Parses `fine_tag<TAB>coarse_tag` lines; `#` comments and blank lines are skipped.
    pub fn parse(src: &str) -> Result<Self, TextError> {
        let mut map = TagMap::default();
        for (n, line) in src.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |message: String| TextError::Malformed {
                line: n + 1,
                message,
            };
            let (fine, coarse) = line
                .split_once('\t')
                .ok_or_else(|| malformed("expected `fine_tag<TAB>coarse_tag`".into()))?;
            let coarse: Pos = coarse.parse().map_err(malformed)?;
            map.insert(fine.trim(), coarse);
        }
        Ok(map)
    }

    /// The built-in mapping for the French TreeTagger parameter file.
    pub fn treetagger_french() -> Self {
        Self::parse(TREETAGGER_FR).expect("bundled tag map is well formed")
    }

    pub fn insert(&mut self, fine: &str, coarse: Pos) {
        match fine.strip_suffix('*') {
            Some(prefix) => {
                self.prefixes.retain(|(p, _)| p != prefix);
                self.prefixes.push((prefix.to_string(), coarse));
                self.prefixes
                    .sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
            }
            None => {
                self.exact.insert(fine.to_string(), coarse);
            }
        }
    }

    pub fn lookup(&self, fine: &str) -> Pos {
        if let Some(&pos) = self.exact.get(fine) {
            return pos;
        }
        self.prefixes
            .iter()
            .find(|(p, _)| fine.starts_with(p.as_str()))
            .map_or(Pos::Other, |&(_, pos)| pos)
    }
}

/// Output of an external tagger: sentences of `(surface, fine_tag)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PretaggedDoc {
    pub sentences: Vec<Vec<(String, String)>>,
}

impl PretaggedDoc {
    /// Parses `surface<TAB>fine_tag` lines; a blank line closes a sentence.
    ///
    /// Extra tab-separated columns (e.g. a lemma) are ignored.
    pub fn parse(src: &str) -> Result<Self, TextError> {
        let mut doc = PretaggedDoc::default();
        let mut current = Vec::new();
        for (n, line) in src.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                if !current.is_empty() {
                    doc.sentences.push(std::mem::take(&mut current));
                }
                continue;
            }
            let mut cols = line.split('\t');
            match (cols.next(), cols.next()) {
                (Some(surface), Some(tag)) if !surface.is_empty() && !tag.is_empty() => {
                    current.push((surface.to_string(), tag.to_string()));
                }
                _ => {
                    return Err(TextError::Malformed {
                        line: n + 1,
                        message: "expected `surface<TAB>fine_tag`".into(),
                    })
                }
            }
        }
        if !current.is_empty() {
            doc.sentences.push(current);
        }
        Ok(doc)
    }
}

/// Where coarse POS tags come from.
#[derive(Clone, Debug)]
pub enum PosProvider {
    /// Tagger output aligned token-for-token with the tokenized document.
    Pretagged { doc: PretaggedDoc, tagmap: TagMap },
    /// Built-in suffix heuristics.
    Fallback(FallbackTagger),
}

/// Sets a coarse tag on every token.
///
/// Tokens already tagged `PUNCT` by the tokenizer keep that tag. A provider
/// claiming `PUNCT` for a word token is downgraded to `OTHER`.
pub fn attach_pos(
    mut sentences: Vec<Sentence>,
    provider: &PosProvider,
) -> Result<Vec<Sentence>, TextError> {
    match provider {
        PosProvider::Fallback(tagger) => {
            for sentence in &mut sentences {
                let tags = tagger.tag(&sentence.tokens);
                for (token, pos) in sentence.tokens.iter_mut().zip(tags) {
                    set_pos(token, pos);
                }
            }
        }
        PosProvider::Pretagged { doc, tagmap } => {
            for (si, sentence) in sentences.iter_mut().enumerate() {
                let Some(tagged) = doc.sentences.get(si) else {
                    return Err(TextError::Alignment {
                        sentence: si,
                        token: 0,
                        detail: format!("tagged input has only {} sentences", doc.sentences.len()),
                    });
                };
                for ti in 0..sentence.tokens.len().max(tagged.len()) {
                    let divergence = match (sentence.tokens.get(ti), tagged.get(ti)) {
                        (Some(t), Some((surface, _))) if *surface == t.surface => None,
                        (Some(t), Some((surface, _))) => {
                            Some(format!("expected `{}`, found `{surface}`", t.surface))
                        }
                        (Some(t), None) => Some(format!("missing tag for `{}`", t.surface)),
                        (None, Some((surface, _))) => Some(format!("unexpected token `{surface}`")),
                        (None, None) => unreachable!(),
                    };
                    if let Some(detail) = divergence {
                        return Err(TextError::Alignment {
                            sentence: si,
                            token: ti,
                            detail,
                        });
                    }
                }
                for (token, (_, fine)) in sentence.tokens.iter_mut().zip(tagged) {
                    set_pos(token, tagmap.lookup(fine));
                }
            }
            if doc.sentences.len() > sentences.len() {
                return Err(TextError::Alignment {
                    sentence: sentences.len(),
                    token: 0,
                    detail: format!(
                        "tagged input has {} sentences, text has {}",
                        doc.sentences.len(),
                        sentences.len()
                    ),
                });
            }
        }
    }
    Ok(sentences)
}

fn set_pos(token: &mut super::Token, pos: Pos) {
    if token.is_punct() {
        token.pos = Some(Pos::Punct);
    } else {
        token.pos = Some(if pos == Pos::Punct { Pos::Other } else { pos });
    }
}
