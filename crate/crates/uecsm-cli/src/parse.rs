//! Matrix input parsing.
//!
//! Two formats are accepted:
//!
//! * **text** — rows separated by `;` or newlines, entries by whitespace or
//!   commas. Entries are complex literals: `a`, `bi`, `a+bi`, `a-bi`, and a
//!   bare `i` (meaning `1i`). Example: `0 7 0; 0 1 -5; 0 0 6`.
//! * **json** — the document `{"n": 3, "re": [[..]], "im": [[..]]}` with the
//!   `im` block optional for real matrices.
//!
//! When no format is forced, input whose first non-blank character is `{` is
//! treated as JSON.

use clap::ValueEnum;
use num_complex::Complex;
use std::fmt;
use uecsm::CMatrix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Parse failure with a 1-based position in the source text.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// Parse matrix input in the given format, or auto-detect one.
pub fn parse_matrix(text: &str, format: Option<Format>) -> Result<CMatrix64, ParseError> {
    let format = format.unwrap_or_else(|| match text.trim_start().starts_with('{') {
        true => Format::Json,
        false => Format::Text,
    });
    match format {
        Format::Json => parse_json(text),
        Format::Text => parse_text(text),
    }
}

fn parse_json(text: &str) -> Result<CMatrix64, ParseError> {
    serde_json::from_str::<CMatrix64>(text).map_err(|e| {
        let mut msg = e.to_string();
        // The position is reported structurally; drop its textual duplicate.
        if let Some(pos) = msg.rfind(" at line ") {
            msg.truncate(pos);
        }
        ParseError::new(e.line().max(1), e.column().max(1), msg)
    })
}

fn parse_text(text: &str) -> Result<CMatrix64, ParseError> {
    let mut rows: Vec<Vec<Complex<f64>>> = Vec::new();
    let mut row_lines: Vec<usize> = Vec::new();
    let mut current: Vec<Complex<f64>> = Vec::new();
    let mut current_line = 1;

    let mut flush_row = |current: &mut Vec<Complex<f64>>, line: usize| {
        if !current.is_empty() {
            rows.push(std::mem::take(current));
            row_lines.push(line);
        }
    };

    for (line0, raw) in text.lines().enumerate() {
        let line = line0 + 1;
        let mut token = String::new();
        let mut token_col = 1;
        let mut chars = raw.chars().enumerate();
        loop {
            let next = chars.next();
            let (col0, ch) = match next {
                Some((i, c)) => (i, c),
                None => {
                    if !token.is_empty() {
                        if current.is_empty() {
                            current_line = line;
                        }
                        current.push(parse_complex(&token).map_err(|m| {
                            ParseError::new(line, token_col, m)
                        })?);
                        token.clear();
                    }
                    break;
                }
            };
            if ch == ';' || ch.is_whitespace() || ch == ',' {
                if !token.is_empty() {
                    if current.is_empty() {
                        current_line = line;
                    }
                    current.push(parse_complex(&token).map_err(|m| {
                        ParseError::new(line, token_col, m)
                    })?);
                    token.clear();
                }
                if ch == ';' {
                    flush_row(&mut current, current_line);
                }
            } else {
                if token.is_empty() {
                    token_col = col0 + 1;
                }
                token.push(ch);
            }
        }
        // A line break ends the row just like a semicolon.
        flush_row(&mut current, current_line);
    }
    flush_row(&mut current, current_line);

    if rows.is_empty() {
        return Err(ParseError::new(1, 1, "empty input: no matrix entries found"));
    }
    let n = rows.len();
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(ParseError::new(
                row_lines[r],
                1,
                format!(
                    "matrix is not square: row {} has {} entries but there are {} rows",
                    r + 1,
                    row.len(),
                    n
                ),
            ));
        }
    }
    Ok(CMatrix64::from_rows(rows).expect("rows validated square and nonempty"))
}

/// Parse one complex literal: `a`, `bi`, `a+bi`, `a-bi`, or `i`/`-i`.
fn parse_complex(tok: &str) -> Result<Complex<f64>, String> {
    match tok {
        "i" | "+i" | "I" | "+I" => return Ok(Complex::new(0.0, 1.0)),
        "-i" | "-I" => return Ok(Complex::new(0.0, -1.0)),
        _ => {}
    }
    if let Some(body) = tok.strip_suffix(['i', 'I']) {
        // Split an `a±bi` form at the last sign that is not an exponent sign.
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-')
                && !matches!(bytes[k - 1], b'e' | b'E')
            {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re = parse_component(&body[..k])?;
                let im = match &body[k..] {
                    "+" => 1.0,
                    "-" => -1.0,
                    s => parse_component(s)?,
                };
                Ok(Complex::new(re, im))
            }
            None => Ok(Complex::new(0.0, parse_component(body)?)),
        }
    } else {
        Ok(Complex::new(parse_component(tok)?, 0.0))
    }
}

fn parse_component(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .parse()
        .map_err(|_| format!("cannot parse '{s}' as a number"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is not a finite number"));
    }
    Ok(v)
}
