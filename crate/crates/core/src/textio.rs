//! Line-oriented cursor shared by the text format parsers.

use crate::ParseError;

/// Iterates over the lines of an input string while tracking 1-based line
/// numbers for error reporting.
pub(crate) struct LineCursor<'a> {
    lines: std::str::Lines<'a>,
    line_no: usize,
}

impl<'a> LineCursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        LineCursor {
            lines: text.lines(),
            line_no: 0,
        }
    }

    /// The line number of the most recently returned line (0 before the first
    /// call). Useful for errors about unexpected end of input.
    pub(crate) fn line_no(&self) -> usize {
        self.line_no
    }

    pub(crate) fn next_line(&mut self) -> Option<&'a str> {
        let line = self.lines.next()?;
        self.line_no += 1;
        Some(line)
    }

    /// Next line, or a parse error mentioning what was expected.
    pub(crate) fn expect_line(&mut self, expected: &str) -> Result<&'a str, ParseError> {
        self.next_line().ok_or_else(|| {
            ParseError::new(self.line_no + 1, format!("unexpected end of input, expected {expected}"))
        })
    }

    /// Consumes the remaining lines, erroring on the first non-blank one.
    /// Allows trailing blank lines so files edited by hand stay valid.
    pub(crate) fn expect_end(&mut self) -> Result<(), ParseError> {
        while let Some(line) = self.next_line() {
            if !line.trim().is_empty() {
                return Err(ParseError::new(
                    self.line_no,
                    format!("expected end of input, found {line:?}"),
                ));
            }
        }
        Ok(())
    }
}

/// Splits a line into whitespace-separated fields and parses each as `T`.
/// `what` describes the expected shape for error messages.
pub(crate) fn parse_fields<T: std::str::FromStr>(
    line: &str,
    line_no: usize,
    count: usize,
    what: &str,
) -> Result<Vec<T>, ParseError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != count {
        return Err(ParseError::new(
            line_no,
            format!("expected {what}, found {line:?}"),
        ));
    }
    fields
        .into_iter()
        .map(|f| {
            f.parse::<T>()
                .map_err(|_| ParseError::new(line_no, format!("invalid number {f:?} in {what}")))
        })
        .collect()
}
