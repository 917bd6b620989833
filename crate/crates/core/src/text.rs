//! Element files: one signed 64-bit decimal integer per line, LF-terminated.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: cannot parse `{token}` as a 64-bit integer")]
pub struct ParseError {
    pub line: usize,
    pub token: String,
}

pub fn parse_elements(text: &str) -> Result<Vec<i64>, ParseError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split('\n')
        .enumerate()
        .map(|(i, tok)| {
            tok.parse::<i64>().map_err(|_| ParseError {
                line: i + 1,
                token: tok.to_string(),
            })
        })
        .collect()
}

pub fn format_elements(values: &[i64]) -> String {
    let mut out = String::with_capacity(values.len() * 8);
    for v in values {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}
