use super::Token;

const EXTRA_PUNCT: &str = "«»…“”‘’„‚–—―•·¿¡‹›§°";

/// Words that contain an apostrophe but are not elided clitics.
const APOSTROPHE_WORDS: &[&str] = &[
    "aujourd'hui",
    "prud'homme",
    "prud'hommes",
    "presqu'île",
    "presqu'îles",
    "quelqu'un",
    "quelqu'une",
];

pub fn is_punct_char(c: char) -> bool {
    c.is_ascii_punctuation() || EXTRA_PUNCT.contains(c)
}

pub fn is_punct_word(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_punct_char)
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Lowercase-folds a form and maps the typographic apostrophe to `'`.
pub fn normalize(s: &str) -> String {
    s.chars()
        .map(|c| if c == '\u{2019}' { '\'' } else { c })
        .flat_map(char::to_lowercase)
        .collect()
}

/// Tokenizes a sentence; offsets are relative to the start of `sentence`.
pub fn tokenize(sentence: &str) -> Vec<Token> {
    tokenize_at(sentence, 0)
}

/// Tokenizes `text` whose first character sits at character offset `offset`.
///
/// Whitespace separates chunks. Leading and trailing punctuation is detached
/// one character per token, except that an apostrophe closing a word stays
/// attached (`qu'`). Inside a chunk, the text is cut right after each
/// apostrophe so that `d'Avignon` gives `d'` + `Avignon`.
pub fn tokenize_at(text: &str, offset: usize) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chunk: Vec<char> = Vec::new();
    let mut chunk_start = offset;
    for (i, c) in text.chars().enumerate() {
        if c.is_whitespace() {
            if !chunk.is_empty() {
                split_chunk(&chunk, chunk_start, &mut tokens);
                chunk.clear();
            }
        } else {
            if chunk.is_empty() {
                chunk_start = offset + i;
            }
            chunk.push(c);
        }
    }
    if !chunk.is_empty() {
        split_chunk(&chunk, chunk_start, &mut tokens);
    }
    tokens
}

fn split_chunk(chars: &[char], start: usize, out: &mut Vec<Token>) {
    let mut lo = 0;
    while lo < chars.len() && is_punct_char(chars[lo]) {
        out.push(Token::new(chars[lo].to_string(), start + lo));
        lo += 1;
    }
    let mut hi = chars.len();
    while hi > lo && is_punct_char(chars[hi - 1]) {
        let elision = is_apostrophe(chars[hi - 1]) && hi - 1 > lo && chars[hi - 2].is_alphabetic();
        if elision {
            break;
        }
        hi -= 1;
    }
    if lo < hi {
        let core: String = chars[lo..hi].iter().collect();
        if APOSTROPHE_WORDS.contains(&normalize(&core).as_str()) {
            out.push(Token::new(core, start + lo));
        } else {
            let mut piece = lo;
            for i in lo..hi {
                if is_apostrophe(chars[i])
                    && i > piece
                    && i + 1 < hi
                    && chars[i - 1].is_alphabetic()
                    && chars[i + 1].is_alphabetic()
                {
                    out.push(Token::new(
                        chars[piece..=i].iter().collect::<String>(),
                        start + piece,
                    ));
                    piece = i + 1;
                }
            }
            out.push(Token::new(
                chars[piece..hi].iter().collect::<String>(),
                start + piece,
            ));
        }
    }
    for (i, c) in chars.iter().enumerate().skip(hi) {
        out.push(Token::new(c.to_string(), start + i));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textproc::Pos;
    use proptest::prelude::*;

    fn surfaces(s: &str) -> Vec<String> {
        tokenize(s).into_iter().map(|t| t.surface).collect()
    }

    /// Rebuilds the input from token surfaces and the original gaps.
    fn rejoin(text: &str, tokens: &[Token]) -> String {
        let chars: Vec<char> = text.chars().collect();
        let mut out = String::new();
        let mut at = 0;
        for t in tokens {
            out.extend(&chars[at..t.char_start]);
            out.push_str(&t.surface);
            at = t.char_end;
        }
        out.extend(&chars[at..]);
        out
    }

    #[test]
    fn detaches_trailing_comma() {
        let text = "la capitale du Vaucluse,";
        let toks = tokenize(text);
        assert_eq!(surfaces(text), ["la", "capitale", "du", "Vaucluse", ","]);
        assert_eq!(rejoin(text, &toks), text);
        assert_eq!(toks[4].pos, Some(Pos::Punct));
        assert_eq!(toks[3].pos, None);
    }

    #[test]
    fn splits_elided_clitics() {
        assert_eq!(surfaces("qu'une procédure"), ["qu'", "une", "procédure"]);
        assert_eq!(surfaces("d'Avignon"), ["d'", "Avignon"]);
        assert_eq!(surfaces("jusqu'à ce qu'"), ["jusqu'", "à", "ce", "qu'"]);
        assert_eq!(surfaces("l’Antarctique."), ["l’", "Antarctique", "."]);
    }

    #[test]
    fn keeps_lexicalized_apostrophes() {
        assert_eq!(surfaces("aujourd'hui"), ["aujourd'hui"]);
    }

    #[test]
    fn single_token() {
        assert_eq!(surfaces("X"), ["X"]);
    }

    #[test]
    fn brackets_and_hyphens() {
        assert_eq!(
            surfaces("(PIC, Prior)."),
            ["(", "PIC", ",", "Prior", ")", "."]
        );
        assert_eq!(surfaces("à ce moment-là"), ["à", "ce", "moment-là"]);
        assert_eq!(surfaces("'"), ["'"]);
    }

    #[test]
    fn normalizes_case_and_apostrophe() {
        assert_eq!(normalize("Qu’Une"), "qu'une");
    }

    proptest! {
        #[test]
        fn lossless_spans(text in "[a-zA-Zéà' ,.()«»’-]{0,40}") {
            let toks = tokenize(&text);
            prop_assert_eq!(rejoin(&text, &toks), text.clone());
            for w in toks.windows(2) {
                prop_assert!(w[0].char_end <= w[1].char_start);
            }
            for t in &toks {
                prop_assert!(t.char_start < t.char_end);
                prop_assert_eq!(t.pos == Some(Pos::Punct), is_punct_word(&t.surface));
            }
        }

        #[test]
        fn retokenizing_is_stable(text in "[a-zA-Zéà' ,.()’-]{0,40}") {
            let toks = tokenize(&text);
            let joined = toks.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ");
            let again: Vec<String> = tokenize(&joined).into_iter().map(|t| t.norm).collect();
            let norms: Vec<String> = toks.into_iter().map(|t| t.norm).collect();
            prop_assert_eq!(again, norms);
        }
    }
}
