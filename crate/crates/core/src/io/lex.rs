use crate::error::{Diagnostic, Error};

/// A whitespace-separated token with its 1-based column.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
}

pub(crate) const RESERVED: [&str; 4] = [":", "->", ".", "="];

/// Splits into non-empty lines of tokens; `#` starts a comment.
pub(crate) fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let code = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start = None;
        for (k, (byte, ch)) in code.char_indices().enumerate() {
            if ch.is_whitespace() {
                if let Some((b, col)) = start.take() {
                    tokens.push(Token {
                        text: &code[b..byte],
                        column: col,
                    });
                }
            } else if start.is_none() {
                start = Some((byte, k + 1));
            }
        }
        if let Some((b, col)) = start {
            tokens.push(Token {
                text: &code[b..],
                column: col,
            });
        }
        if !tokens.is_empty() {
            out.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    out
}

pub(crate) fn diag(line: usize, column: usize, message: impl Into<String>, expected: Option<&str>) -> Error {
    Error::Parse(Diagnostic {
        line,
        column,
        message: message.into(),
        expected: expected.map(str::to_string),
    })
}

pub(crate) fn at(t: &Token, line: usize, message: impl Into<String>) -> Error {
    diag(line, t.column, message, None)
}

/// Position just after the last line, for problems found at end of input.
pub(crate) fn end_of(text: &str) -> usize {
    text.lines().count() + 1
}

/// Checks a header line `<magic> 1`.
pub(crate) fn header(lines: &[Line], magic: &str, text: &str) -> Result<(), Error> {
    let Some(first) = lines.first() else {
        return Err(diag(end_of(text), 1, "empty input", Some(&format!("`{magic} 1` header"))));
    };
    let t = &first.tokens[0];
    if t.text != magic {
        return Err(diag(first.number, t.column, format!("unexpected `{}`", t.text), Some(&format!("`{magic} 1` header"))));
    }
    match first.tokens.get(1) {
        None => Err(diag(first.number, t.column + magic.chars().count(), "missing format version", Some("`1`"))),
        Some(v) if v.text != "1" => Err(at(v, first.number, format!("unsupported format version `{}`", v.text))),
        Some(_) => match first.tokens.get(2) {
            Some(extra) => Err(diag(first.number, extra.column, format!("unexpected `{}`", extra.text), Some("end of line"))),
            None => Ok(()),
        },
    }
}

/// Requires exactly the given shape; `None` entries are names, `Some` are
/// literal tokens.
pub(crate) fn shape<'a>(line: &Line<'a>, pattern: &[Option<&str>], what: &str) -> Result<Vec<Token<'a>>, Error> {
    let toks = &line.tokens;
    for (k, p) in pattern.iter().enumerate() {
        let Some(t) = toks.get(k) else {
            let last = toks.last().unwrap();
            let col = last.column + last.text.chars().count();
            let expected = match p {
                Some(lit) => format!("`{lit}`"),
                None => what.to_string(),
            };
            return Err(diag(line.number, col, "line ends early", Some(&expected)));
        };
        match p {
            Some(lit) if t.text != *lit => {
                return Err(diag(line.number, t.column, format!("unexpected `{}`", t.text), Some(&format!("`{lit}`"))))
            }
            None if RESERVED.contains(&t.text) => {
                return Err(diag(line.number, t.column, format!("`{}` is not a valid id", t.text), Some(what)))
            }
            _ => {}
        }
    }
    if let Some(extra) = toks.get(pattern.len()) {
        return Err(diag(line.number, extra.column, format!("unexpected `{}`", extra.text), Some("end of line")));
    }
    Ok(toks.clone())
}

/// Whether a name survives a write/parse round trip.
pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.contains('#') && !name.chars().any(char::is_whitespace) && !RESERVED.contains(&name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_and_comments() {
        let ls = lines("fcat 1\n\n  objects a  b # c\n# only comment\n");
        assert_eq!(ls.len(), 2);
        assert_eq!(ls[1].number, 3);
        let cols: Vec<_> = ls[1].tokens.iter().map(|t| (t.text, t.column)).collect();
        assert_eq!(cols, vec![("objects", 3), ("a", 11), ("b", 14)]);
    }

    #[test]
    fn unicode_columns_count_characters() {
        let ls = lines("ü x");
        assert_eq!(ls[0].tokens[1].column, 3);
    }
}
