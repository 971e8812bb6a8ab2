//! Best-effort French tagger built from closed word lists and suffix tables.
//!
//! It exists so the pipeline runs without an external tagger. Decisions are
//! taken in this order, first hit wins: punctuation, closed verb list, closed
//! function-word list, adverb suffixes, noun suffixes, verb suffixes, then
//! context (a capitalized word inside a sentence, or a word right after a
//! determiner, is a noun). Everything else is `OTHER`.

use super::{Pos, Token};

const VERB_WORDS: &[&str] = &[
    "est", "sont", "suis", "es", "sommes", "êtes", "était", "étaient", "étais", "fut", "furent",
    "sera", "seront", "serait", "seraient", "soit", "soient", "être", "été", "a", "ai", "as",
    "avons", "avez", "ont", "avait", "avaient", "aura", "auront", "aurait", "auraient", "eut",
    "eurent", "avoir", "eu", "fait", "font", "faire", "faut", "peut", "peuvent", "pouvait", "doit",
    "doivent", "devait", "va", "vont", "allait", "dit", "disent", "vient", "viennent", "semble",
    "reste", "permet", "existe",
];

const FUNCTION_WORDS: &[&str] = &[
    // determiners
    "le",
    "la",
    "les",
    "l'",
    "un",
    "une",
    "des",
    "du",
    "au",
    "aux",
    "ce",
    "cet",
    "cette",
    "ces",
    "mon",
    "ma",
    "mes",
    "ton",
    "ta",
    "tes",
    "son",
    "sa",
    "ses",
    "notre",
    "nos",
    "votre",
    "vos",
    "leur",
    "leurs",
    "quelque",
    "quelques",
    "chaque",
    "plusieurs",
    "certains",
    "certaines",
    "aucun",
    "aucune",
    "tout",
    "tous",
    "toute",
    "toutes",
    // prepositions
    "à",
    "de",
    "d'",
    "en",
    "dans",
    "par",
    "pour",
    "sur",
    "sous",
    "avec",
    "sans",
    "vers",
    "chez",
    "entre",
    "contre",
    "depuis",
    "pendant",
    "selon",
    "avant",
    "après",
    "malgré",
    "parmi",
    "jusqu'",
    "excepté",
    "hormis",
    "durant",
    "dès",
    // pronouns
    "je",
    "j'",
    "tu",
    "il",
    "elle",
    "on",
    "nous",
    "vous",
    "ils",
    "elles",
    "me",
    "m'",
    "te",
    "t'",
    "se",
    "s'",
    "lui",
    "y",
    "qui",
    "que",
    "qu'",
    "quoi",
    "dont",
    "où",
    "ça",
    "cela",
    "ceci",
    "celui",
    "celle",
    "ceux",
    "celles",
    "c'",
    // conjunctions
    "et",
    "ou",
    "mais",
    "donc",
    "or",
    "ni",
    "car",
    "si",
    "comme",
    "quand",
    "lorsque",
    "lorsqu'",
    "puisque",
    "puisqu'",
    // adverbs
    "ne",
    "n'",
    "pas",
    "plus",
    "moins",
    "très",
    "trop",
    "bien",
    "aussi",
    "encore",
    "déjà",
    "toujours",
    "jamais",
    "ainsi",
    "alors",
    "puis",
    "ensuite",
    "enfin",
    "même",
    "assez",
    "ici",
    "là",
    "peu",
    "beaucoup",
    "souvent",
    "non",
    "oui",
];

/// Determiner-like words after which an unknown word is taken as a noun.
const NOUN_CUES: &[&str] = &[
    "le",
    "la",
    "les",
    "l'",
    "un",
    "une",
    "des",
    "du",
    "au",
    "aux",
    "ce",
    "cet",
    "cette",
    "ces",
    "mon",
    "ma",
    "mes",
    "son",
    "sa",
    "ses",
    "notre",
    "nos",
    "votre",
    "vos",
    "leur",
    "leurs",
    "chaque",
    "plusieurs",
    "quelques",
    "de",
    "d'",
];

const ADVERB_SUFFIXES: &[&str] = &[
    "amment",
    "emment",
    "iquement",
    "ivement",
    "alement",
    "ellement",
    "eusement",
    "ièrement",
    "actement",
    "ablement",
];

const NOUN_SUFFIXES: &[&str] = &[
    "tion", "tions", "sion", "sions", "ment", "ments", "ité", "ités", "iété", "auté", "erté",
    "eur", "eurs", "ence", "ences", "ance", "ances", "isme", "ismes", "age", "ages", "ure", "ures",
    "esse", "itude",
];

const VERB_SUFFIXES: &[&str] = &[
    "èrent", "irent", "inrent", "urent", "aient", "ait", "erait", "eront", "iront", "issent",
    "ant", "er", "é", "ée", "és", "ées",
];

/// Minimum length for a suffix rule to apply.
const MIN_SUFFIX_WORD: usize = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FallbackTagger;

impl FallbackTagger {
    /// Tags the tokens of one sentence.
    pub fn tag(&self, tokens: &[Token]) -> Vec<Pos> {
        let mut out = Vec::with_capacity(tokens.len());
        for (i, token) in tokens.iter().enumerate() {
            let prev = i.checked_sub(1).map(|j| tokens[j].norm.as_str());
            out.push(self.tag_word(&token.surface, i == 0, prev, token.is_punct()));
        }
        out
    }

    /// Tags one word given whether it opens the sentence and the previous normalized word.
    pub fn tag_word(&self, surface: &str, initial: bool, prev: Option<&str>, punct: bool) -> Pos {
        if punct {
            return Pos::Punct;
        }
        let norm = super::normalize(surface);
        let word = norm.as_str();
        if VERB_WORDS.contains(&word) {
            return Pos::Verb;
        }
        if FUNCTION_WORDS.contains(&word) {
            return Pos::Other;
        }
        if word.chars().count() >= MIN_SUFFIX_WORD {
            if ADVERB_SUFFIXES.iter().any(|s| word.ends_with(s)) {
                return Pos::Other;
            }
            if NOUN_SUFFIXES.iter().any(|s| word.ends_with(s)) {
                return Pos::Noun;
            }
            if VERB_SUFFIXES.iter().any(|s| word.ends_with(s)) {
                return Pos::Verb;
            }
        }
        if !initial && surface.chars().next().is_some_and(char::is_uppercase) {
            return Pos::Noun;
        }
        if prev.is_some_and(|p| NOUN_CUES.contains(&p)) && word.chars().any(char::is_alphabetic) {
            return Pos::Noun;
        }
        Pos::Other
    }
}
