//! Text format for matrix tuples.
//!
//! ```text
//! # comment
//! matrix a1 2 2
//! 0 1
//! 0.5+0.5i -i
//!
//! matrix a2 2 2
//! ...
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::literal::{format_complex, parse_complex};

/// Largest accepted row or column count.
pub const MAX_DIM: usize = 1024;

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Byte offset of `word` within `line`, as a 1-based column.
fn column_of(line: &str, word: &str) -> usize {
    word.as_ptr() as usize - line.as_ptr() as usize + 1
}

pub fn parse_matrix_file(text: &str) -> Result<Vec<(String, ComplexMatrix)>> {
    let mut out: Vec<(String, ComplexMatrix)> = Vec::new();
    // (name, rows, cols, entries read so far, header line)
    let mut open: Option<(String, usize, usize, Vec<C64>, usize)> = None;
    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.is_empty() {
            let commented = raw.trim_start().starts_with('#');
            if let Some((name, rows, cols, entries, header)) = open.take() {
                if commented && entries.len() < rows * cols {
                    open = Some((name, rows, cols, entries, header));
                    continue;
                }
                out.push(finish(name, rows, cols, entries, header, lineno)?);
            }
            continue;
        }
        match open.as_mut() {
            None => {
                if words[0] != "matrix" {
                    return Err(syntax(
                        lineno,
                        column_of(line, words[0]),
                        "expected `matrix <name> <rows> <cols>`",
                    ));
                }
                if words.len() != 4 {
                    return Err(syntax(lineno, 1, "expected `matrix <name> <rows> <cols>`"));
                }
                let dim = |w: &str| -> Result<usize> {
                    match w.parse::<usize>() {
                        Ok(n) if (1..=MAX_DIM).contains(&n) => Ok(n),
                        _ => Err(syntax(
                            lineno,
                            column_of(line, w),
                            format!("dimension must be an integer in [1, {MAX_DIM}], got `{w}`"),
                        )),
                    }
                };
                let (rows, cols) = (dim(words[2])?, dim(words[3])?);
                if out.iter().any(|(n, _)| n == words[1]) {
                    return Err(syntax(
                        lineno,
                        column_of(line, words[1]),
                        format!("duplicate matrix `{}`", words[1]),
                    ));
                }
                open = Some((
                    words[1].to_string(),
                    rows,
                    cols,
                    Vec::with_capacity(rows * cols),
                    lineno,
                ));
            }
            Some((_, rows, cols, entries, _)) => {
                if words.len() != *cols {
                    return Err(syntax(
                        lineno,
                        1,
                        format!("expected {cols} entries, found {}", words.len()),
                    ));
                }
                if entries.len() == *rows * *cols {
                    return Err(syntax(lineno, 1, format!("more than {rows} rows")));
                }
                for w in words {
                    let z = parse_complex(w).map_err(|m| syntax(lineno, column_of(line, w), m))?;
                    entries.push(z);
                }
            }
        }
    }
    if let Some((name, rows, cols, entries, header)) = open {
        out.push(finish(
            name,
            rows,
            cols,
            entries,
            header,
            text.lines().count() + 1,
        )?);
    }
    Ok(out)
}

fn finish(
    name: String,
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
    header: usize,
    lineno: usize,
) -> Result<(String, ComplexMatrix)> {
    if entries.len() != rows * cols {
        return Err(syntax(
            lineno,
            1,
            format!(
                "matrix `{name}` (line {header}) has {} of {rows} rows",
                entries.len() / cols
            ),
        ));
    }
    Ok((name, ComplexMatrix::from_row_slice(rows, cols, &entries)))
}

/// Lossless rendering that [`parse_matrix_file`] reads back exactly.
pub fn format_matrix_file(matrices: &[(String, ComplexMatrix)]) -> String {
    let mut s = String::new();
    for (k, (name, m)) in matrices.iter().enumerate() {
        if k > 0 {
            s.push('\n');
        }
        let _ = writeln!(s, "matrix {name} {} {}", m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols()).map(|j| format_complex(m[(i, j)])).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, from_rows};

    #[test]
    fn parses_two_matrices() {
        let text = "# pair\nmatrix a1 2 2\n0 1\n0.5+0.5i -i\n\nmatrix a2 1 1 # scalar\n2\n";
        let ms = parse_matrix_file(text).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].0, "a1");
        assert_eq!(ms[0].1[(1, 0)], c64(0.5, 0.5));
        assert_eq!(ms[0].1[(1, 1)], c64(0.0, -1.0));
        assert_eq!(ms[1].1[(0, 0)], c64(2.0, 0.0));
    }

    #[test]
    fn comment_lines_inside_a_block() {
        let text = "matrix a 2 1\n1\n# note\n2\n";
        assert_eq!(parse_matrix_file(text).unwrap()[0].1[(1, 0)], c64(2.0, 0.0));
    }

    #[test]
    fn round_trip() {
        let m = from_rows(
            2,
            2,
            &[
                c64(0.1, -1.0 / 3.0),
                c64(-0.0, 0.0),
                c64(1e-300, 5e300),
                c64(2.0, -0.0),
            ],
        );
        let v = vec![
            ("a1".to_string(), m.clone()),
            ("b".to_string(), m.transpose()),
        ];
        let text = format_matrix_file(&v);
        let back = parse_matrix_file(&text).unwrap();
        assert_eq!(back, v);
        assert_eq!(format_matrix_file(&back), text);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_matrix_file("matrix a 1 2\n1 zz\n").unwrap_err();
        assert_eq!(
            e,
            Error::Syntax {
                line: 2,
                column: 3,
                message: "invalid complex literal `zz`".into()
            }
        );
        assert!(matches!(
            parse_matrix_file("matrix a 2 2\n1 2\n\n"),
            Err(Error::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_matrix_file("matrix a 0 2\n"),
            Err(Error::Syntax {
                line: 1,
                column: 10,
                ..
            })
        ));
        assert!(matches!(
            parse_matrix_file("1 2\n"),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_matrix_file("matrix a 1 1\n1\n1\n"),
            Err(Error::Syntax { line: 3, .. })
        ));
        assert!(parse_matrix_file("matrix a 1 1\n1\n\nmatrix a 1 1\n2\n").is_err());
    }
}
