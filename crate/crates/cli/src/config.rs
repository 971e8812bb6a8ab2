use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use eduseg::lexicon::{LoadOptions, MarkerLexicon, FRENCH_MARKERS, FRENCH_SUPPLEMENT};
use eduseg::textproc::{FallbackTagger, PosProvider, PretaggedDoc, TagMap};
use eduseg::Strategy;

pub const LEXICON_DIR_VAR: &str = "EDUSEG_LEXICON_DIR";

/// Where POS tags come from, as given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosSource {
    /// A tagged file for a single input, or a directory of `<input name>.tag` files.
    Pretagged(PathBuf),
    Fallback,
}

impl FromStr for PosSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "fallback" {
            return Ok(PosSource::Fallback);
        }
        match s.strip_prefix("pretagged:") {
            Some(path) if !path.is_empty() => Ok(PosSource::Pretagged(PathBuf::from(path))),
            _ => Err(format!(
                "expected `fallback` or `pretagged:PATH`, got `{s}`"
            )),
        }
    }
}

impl fmt::Display for PosSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosSource::Pretagged(p) => write!(f, "pretagged:{}", p.display()),
            PosSource::Fallback => f.write_str("fallback"),
        }
    }
}

/// Settings shared by every command that runs the segmenter.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub language: String,
    pub lexicons: Vec<String>,
    pub strategy: Strategy,
    pub pos_source: Option<PosSource>,
    pub tagmap_path: Option<PathBuf>,
    pub include_comma_marker: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(PosSource::Pretagged(path)) = &self.pos_source {
            if !path.exists() {
                bail!("pre-tagged source `{}` does not exist", path.display());
            }
        }
        Ok(())
    }

    fn load_options(&self) -> LoadOptions {
        LoadOptions {
            include_comma_marker: self.include_comma_marker,
        }
    }

    /// Loads and merges every `--lexicon`, or the default one for the language.
    pub fn lexicon(&self) -> Result<MarkerLexicon> {
        let lexicon_dir = std::env::var_os(LEXICON_DIR_VAR).map(PathBuf::from);
        let names: Vec<String> = if self.lexicons.is_empty() {
            let default = lexicon_dir
                .as_ref()
                .map(|d| d.join(format!("{}.txt", self.language)))
                .filter(|p| p.is_file());
            match default {
                Some(path) => vec![path.display().to_string()],
                None if self.language == "fr" => vec!["builtin:fr".into()],
                None => bail!(
                    "no lexicon for language `{}`: pass --lexicon or put `{}.txt` in ${LEXICON_DIR_VAR}",
                    self.language,
                    self.language
                ),
            }
        } else {
            self.lexicons.clone()
        };
        let mut merged: Option<MarkerLexicon> = None;
        for name in &names {
            let bytes = match name.as_str() {
                "builtin:fr" => FRENCH_MARKERS.as_bytes().to_vec(),
                "builtin:fr-supplement" => FRENCH_SUPPLEMENT.as_bytes().to_vec(),
                _ => {
                    let path = resolve_lexicon(name, lexicon_dir.as_deref())?;
                    fs::read(&path)
                        .with_context(|| format!("cannot read lexicon `{}`", path.display()))?
                }
            };
            let lex = MarkerLexicon::load(&bytes, &self.language, self.load_options())
                .with_context(|| format!("lexicon `{name}`"))?;
            merged = Some(match merged {
                Some(m) => m.union(&lex),
                None => lex,
            });
        }
        Ok(merged.expect("at least one lexicon name"))
    }

    pub fn tagmap(&self) -> Result<TagMap> {
        match &self.tagmap_path {
            Some(path) => {
                let src = read_text(path)?;
                TagMap::parse(&src).with_context(|| format!("tag map `{}`", path.display()))
            }
            None => Ok(TagMap::treetagger_french()),
        }
    }

    /// The POS provider for one input file, if any.
    pub fn pos_provider(&self, input: &Path, n_inputs: usize) -> Result<Option<PosProvider>> {
        match &self.pos_source {
            None => Ok(None),
            Some(PosSource::Fallback) => Ok(Some(PosProvider::Fallback(FallbackTagger))),
            Some(PosSource::Pretagged(path)) => {
                let tagged = if path.is_dir() {
                    let name = input.file_name().context("input has no file name")?;
                    path.join(format!("{}.tag", name.to_string_lossy()))
                } else if n_inputs == 1 {
                    path.clone()
                } else {
                    bail!(
                        "pretagged:{} is a single file but {n_inputs} inputs were given; pass a directory",
                        path.display()
                    );
                };
                let src = read_text(&tagged)?;
                let doc = PretaggedDoc::parse(&src)
                    .with_context(|| format!("pre-tagged file `{}`", tagged.display()))?;
                Ok(Some(PosProvider::Pretagged {
                    doc,
                    tagmap: self.tagmap()?,
                }))
            }
        }
    }
}

fn resolve_lexicon(name: &str, dir: Option<&Path>) -> Result<PathBuf> {
    let direct = PathBuf::from(name);
    if direct.is_file() {
        return Ok(direct);
    }
    if let Some(dir) = dir {
        for candidate in [dir.join(name), dir.join(format!("{name}.txt"))] {
            if candidate.is_file() {
                return Ok(candidate);
            }
        }
    }
    bail!("lexicon `{name}` not found")
}

pub fn read_text(path: &Path) -> Result<String> {
    let bytes = fs::read(path).with_context(|| format!("cannot read `{}`", path.display()))?;
    String::from_utf8(bytes).with_context(|| format!("`{}` is not valid UTF-8", path.display()))
}

/// Document id of a file: its name up to the first dot.
pub fn document_id(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    name.split('.').next().unwrap_or_default().to_string()
}
