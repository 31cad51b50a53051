//! Parser for text files of mutually orthogonal latin squares.
//!
//! ```text
//! mols 3 2
//! 0 1 2
//! 1 2 0
//! 2 0 1
//!
//! 0 1 2
//! 2 0 1
//! 1 2 0
//! ```
//!
//! The header names the order `n` and the square count `k`; `k` blocks of
//! `n` rows of `n` integers follow. Blank lines and `#` comments may appear
//! anywhere. Latin and orthogonality validation happens when the parsed rows
//! are turned into a `LatinSquareSet`, not here.

use crate::document::ParseError;

/// Raw square: `n` rows of `n` symbols.
pub type Square = Vec<Vec<usize>>;

/// Parses the raw header and rows: `(order, squares)`.
pub fn parse_mols(text: &str) -> Result<(usize, Vec<Square>), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let toks: Vec<(&str, usize)> = tokenize(raw);
        if toks.is_empty() || toks[0].0.starts_with('#') {
            continue;
        }
        match header {
            None => {
                if toks.len() != 3 || toks[0].0 != "mols" {
                    return Err(ParseError {
                        line: line_no,
                        column: toks[0].1,
                        message: "expected header `mols n k`".to_string(),
                    });
                }
                let n = parse_number(toks[1], line_no)?;
                let k = parse_number(toks[2], line_no)?;
                header = Some((n, k));
            }
            Some((n, _)) => {
                if toks.len() != n {
                    return Err(ParseError {
                        line: line_no,
                        column: toks[0].1,
                        message: format!("expected {n} entries in a row, got {}", toks.len()),
                    });
                }
                let row: Result<Vec<usize>, ParseError> =
                    toks.iter().map(|&tok| parse_number(tok, line_no)).collect();
                rows.push(row?);
            }
        }
    }
    let Some((n, k)) = header else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "missing header `mols n k`".to_string(),
        });
    };
    if rows.len() != n * k {
        return Err(ParseError {
            line: text.lines().count().max(1),
            column: 1,
            message: format!(
                "expected {} rows ({k} squares of {n}), got {}",
                n * k,
                rows.len()
            ),
        });
    }
    let squares: Vec<Square> = rows.chunks(n).map(|chunk| chunk.to_vec()).collect();
    Ok((n, squares))
}

fn tokenize(raw: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in raw.split_inclusive(char::is_whitespace) {
        let token = piece.trim_end_matches(char::is_whitespace);
        if !token.is_empty() {
            out.push((token, offset + 1));
        }
        offset += piece.len();
    }
    out
}

fn parse_number((token, column): (&str, usize), line: usize) -> Result<usize, ParseError> {
    token.parse::<usize>().map_err(|_| ParseError {
        line,
        column,
        message: format!("expected an integer, got `{token}`"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_squares() {
        let text = "mols 3 2\n0 1 2\n1 2 0\n2 0 1\n\n0 1 2\n2 0 1\n1 2 0\n";
        let (n, squares) = parse_mols(text).unwrap();
        assert_eq!(n, 3);
        assert_eq!(squares.len(), 2);
        assert_eq!(squares[0][1], vec![1, 2, 0]);
    }

    #[test]
    fn zero_squares_are_fine() {
        let (n, squares) = parse_mols("mols 4 0\n").unwrap();
        assert_eq!(n, 4);
        assert!(squares.is_empty());
    }

    #[test]
    fn row_arity_is_checked() {
        let err = parse_mols("mols 3 1\n0 1 2\n1 2\n2 0 1\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn missing_rows_are_reported() {
        let err = parse_mols("mols 3 1\n0 1 2\n").unwrap_err();
        assert!(err.message.contains("expected 3 rows"));
    }
}
