//! Text formats.
//!
//! Set files hold one decimal integer per line in strictly increasing order.
//! Blank lines and lines starting with `#` are ignored, except the directive
//! `# horizon N`, which declares that membership is known up to `N` (default:
//! the largest element).
//!
//! Series files are TSV with the header `n<TAB>value`.

use std::fmt::{self, Display, Write as _};

use addrep::IntegerSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

const HORIZON_DIRECTIVE: &str = "horizon";

pub fn parse_set(text: &str) -> Result<IntegerSet, FormatError> {
    let mut elements: Vec<u64> = Vec::new();
    let mut horizon: Option<(usize, u64)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some(HORIZON_DIRECTIVE) {
                let value = words
                    .next()
                    .and_then(|w| w.parse::<u64>().ok())
                    .ok_or_else(|| err(line_no, "horizon directive needs a nonnegative integer"))?;
                horizon = Some((line_no, value));
            }
            continue;
        }
        let value: u64 = line
            .parse()
            .map_err(|_| err(line_no, format!("not a nonnegative integer: {line:?}")))?;
        if let Some(&prev) = elements.last() {
            if value <= prev {
                return Err(err(
                    line_no,
                    format!("elements must be strictly increasing ({value} after {prev})"),
                ));
            }
        }
        elements.push(value);
    }
    let max = elements.last().copied().unwrap_or(0);
    match horizon {
        Some((line_no, h)) if h < max => Err(err(
            line_no,
            format!("horizon {h} is below the largest element {max}"),
        )),
        Some((_, h)) => Ok(IntegerSet::with_bound(elements, h).expect("validated above")),
        None => Ok(IntegerSet::new(elements).expect("validated above")),
    }
}

pub fn write_set(set: &IntegerSet) -> String {
    let mut out = String::new();
    if set.bound() != set.max().unwrap_or(0) {
        writeln!(out, "# {HORIZON_DIRECTIVE} {}", set.bound()).unwrap();
    }
    for x in set.iter() {
        writeln!(out, "{x}").unwrap();
    }
    out
}

pub const SERIES_HEADER: &str = "n\tvalue";

/// Parses a series file; indices must run `0, 1, 2, …`.
pub fn parse_series(text: &str) -> Result<Vec<i64>, FormatError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim() == SERIES_HEADER => {}
        Some((i, _)) => return Err(err(i + 1, format!("expected header {SERIES_HEADER:?}"))),
        None => return Err(err(1, "empty series file")),
    }
    let mut values = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let mut cols = line.trim().split('\t');
        let (Some(n), Some(v), None) = (cols.next(), cols.next(), cols.next()) else {
            return Err(err(line_no, "expected two tab-separated columns"));
        };
        let n: usize = n
            .parse()
            .map_err(|_| err(line_no, format!("bad index {n:?}")))?;
        if n != values.len() {
            return Err(err(line_no, format!("expected index {}, found {n}", values.len())));
        }
        let v: i64 = v
            .parse()
            .map_err(|_| err(line_no, format!("bad value {v:?}")))?;
        values.push(v);
    }
    Ok(values)
}

pub fn write_series<T: Display>(values: impl IntoIterator<Item = T>) -> String {
    let mut out = String::from(SERIES_HEADER);
    out.push('\n');
    for (n, v) in values.into_iter().enumerate() {
        writeln!(out, "{n}\t{v}").unwrap();
    }
    out
}
