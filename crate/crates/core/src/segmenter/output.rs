use crate::textproc::TextError;

/// One line of a segmented file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentLine {
    pub id: usize,
    pub text: String,
}

/// Writes `[text]_id` lines, LF-terminated.
///
/// Line breaks inside a segment are written as spaces so that each segment
/// stays on one line.
pub fn render_lines(lines: impl IntoIterator<Item = SegmentLine>) -> String {
    let mut out = String::new();
    for line in lines {
        out.push('[');
        out.extend(
            line.text
                .chars()
                .map(|c| if c == '\n' || c == '\r' { ' ' } else { c }),
        );
        out.push_str("]_");
        out.push_str(&line.id.to_string());
        out.push('\n');
    }
    out
}

/// Parses the output of [`render_lines`]. Blank lines are skipped.
pub fn parse_segmented(src: &str) -> Result<Vec<SegmentLine>, TextError> {
    let mut lines = Vec::new();
    for (n, raw) in src.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let malformed = || TextError::Malformed {
            line: n + 1,
            message: format!("expected `[text]_id`, found `{raw}`"),
        };
        let body = raw.strip_prefix('[').ok_or_else(malformed)?;
        let (text, id) = body.rsplit_once("]_").ok_or_else(malformed)?;
        let id = id.parse().map_err(|_| malformed())?;
        lines.push(SegmentLine {
            id,
            text: text.to_string(),
        });
    }
    Ok(lines)
}
