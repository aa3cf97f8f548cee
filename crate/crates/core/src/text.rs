//! Line-oriented tokenizer shared by the game, win-lose, certificate and
//! seed-profile formats.

use std::fmt;

use thiserror::Error;

/// A parse failure, located at a 1-based line (0 when it concerns the whole input).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

/// A non-empty line with comments stripped.
#[derive(Clone, Debug)]
pub struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<&'a str>,
}

impl<'a> Line<'a> {
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.number, message)
    }

    pub fn head(&self) -> &'a str {
        self.tokens[0]
    }

    pub fn rest(&self) -> &[&'a str] {
        &self.tokens[1..]
    }

    /// Exactly one argument after the directive.
    pub fn single(&self) -> Result<&'a str, ParseError> {
        match self.rest() {
            [one] => Ok(one),
            _ => Err(self.error(format!("`{}` expects exactly one argument", self.head()))),
        }
    }
}

pub fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some(Line {
            number: i + 1,
            tokens,
        })
    })
}

/// Splits `key=value`, checking the key.
pub fn keyed<'a>(line: &Line<'_>, token: &'a str, key: &str) -> Result<&'a str, ParseError> {
    token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .filter(|v| !v.is_empty())
        .ok_or_else(|| line.error(format!("expected `{key}=<value>`, found `{token}`")))
}

/// Parses a flat list of `<state> <choice>` pairs.
pub fn pairs<'a>(line: &Line<'_>, tokens: &[&'a str]) -> Result<Vec<(&'a str, &'a str)>, ParseError> {
    if !tokens.len().is_multiple_of(2) {
        return Err(line.error("expected `<state> <choice>` pairs"));
    }
    Ok(tokens.chunks(2).map(|c| (c[0], c[1])).collect())
}

/// Rejects repeated names within one declaration list.
pub fn distinct(line: &Line<'_>, names: &[&str], what: &str) -> Result<Vec<String>, ParseError> {
    let mut out: Vec<String> = Vec::with_capacity(names.len());
    for name in names {
        if out.iter().any(|n| n == name) {
            return Err(line.error(format!("duplicate {what} `{name}`")));
        }
        out.push(name.to_string());
    }
    if out.is_empty() {
        return Err(line.error(format!("at least one {what} required")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# header\n\nchoices: a b # trailing\n   \n";
        let got: Vec<_> = lines(text).collect();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].number, 3);
        assert_eq!(got[0].tokens, ["choices:", "a", "b"]);
    }

    #[test]
    fn keyed_values() {
        let line = lines("state q owner=a").next().unwrap();
        assert_eq!(keyed(&line, "owner=a", "owner").unwrap(), "a");
        assert!(keyed(&line, "owner=", "owner").is_err());
        assert!(keyed(&line, "outcome=a", "owner").is_err());
    }
}
