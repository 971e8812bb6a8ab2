use std::ops::Range;

const FINAL_PUNCT: &[char] = &['.', '!', '?', '…'];
const CLOSERS: &[char] = &['"', '»', '”', ')', ']', '’', '\''];
const SPACED_CLOSERS: &[char] = &['»', '”', ')', ']'];
const OPENERS: &[char] = &['(', '[', '«', '"', '“', '\'', '‘', '—', '–', '-'];

/// Abbreviations (lowercased, without the final period) that never end a sentence.
const ABBREVIATIONS: &[&str] = &[
    "m", "mm", "mme", "mmes", "mlle", "mlles", "dr", "pr", "me", "mgr", "st", "ste", "etc", "cf",
    "ex", "p", "pp", "vol", "chap", "fig", "env", "av", "bd", "n", "no", "vs", "réf", "éd",
];

/// Splits a document into trimmed sentence strings.
pub fn split_sentences(text: &str) -> Vec<&str> {
    sentence_spans(text).into_iter().map(|r| &text[r]).collect()
}

/// Byte ranges of the sentences of `text`, trimmed of surrounding whitespace.
///
/// A sentence ends at a run of `. ! ? …` (plus optional closing quotes or
/// brackets) followed by whitespace and then an uppercase letter, a digit or
/// an opening bracket or quote, unless the period closes a known abbreviation
/// or a single-capital initial. A blank line always ends a sentence.
pub fn sentence_spans(text: &str) -> Vec<Range<usize>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut spans = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c == '\n' {
            let mut j = i + 1;
            while j < chars.len() && chars[j].1 != '\n' && chars[j].1.is_whitespace() {
                j += 1;
            }
            if j < chars.len() && chars[j].1 == '\n' {
                push_trimmed(text, start..pos, &mut spans);
                start = chars[j].0;
                i = j;
                continue;
            }
        } else if FINAL_PUNCT.contains(&c) {
            let mut j = i;
            while j < chars.len() && FINAL_PUNCT.contains(&chars[j].1) {
                j += 1;
            }
            let single_period = c == '.' && j == i + 1;
            loop {
                while j < chars.len() && CLOSERS.contains(&chars[j].1) {
                    j += 1;
                }
                // French typography puts a space before a closing guillemet.
                let mut k = j;
                while k < chars.len() && matches!(chars[k].1, ' ' | '\u{a0}') {
                    k += 1;
                }
                if k > j && chars.get(k).is_some_and(|c| SPACED_CLOSERS.contains(&c.1)) {
                    j = k;
                } else {
                    break;
                }
            }
            let end = chars.get(j).map_or(text.len(), |&(p, _)| p);
            let mut k = j;
            while k < chars.len() && chars[k].1.is_whitespace() {
                k += 1;
            }
            let opens = chars.get(k).is_some_and(|&(_, n)| {
                n.is_uppercase() || n.is_ascii_digit() || OPENERS.contains(&n)
            });
            if k > j && opens && !(single_period && ends_with_abbreviation(&chars[..i])) {
                push_trimmed(text, start..end, &mut spans);
                start = end;
                i = j;
                continue;
            }
            i = j.max(i + 1);
            continue;
        }
        i += 1;
    }
    push_trimmed(text, start..text.len(), &mut spans);
    spans
}

fn ends_with_abbreviation(before: &[(usize, char)]) -> bool {
    let word: String = before
        .iter()
        .rev()
        .take_while(|(_, c)| c.is_alphabetic())
        .map(|&(_, c)| c)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    if word.is_empty() {
        return false;
    }
    let mut letters = word.chars();
    let initial = matches!((letters.next(), letters.next()), (Some(c), None) if c.is_uppercase());
    initial || ABBREVIATIONS.contains(&word.to_lowercase().as_str())
}

fn push_trimmed(text: &str, range: Range<usize>, spans: &mut Vec<Range<usize>>) {
    let slice = &text[range.clone()];
    let lead = slice.len() - slice.trim_start().len();
    let trimmed = slice.trim();
    if !trimmed.is_empty() {
        let s = range.start + lead;
        spans.push(s..s + trimmed.len());
    }
}
