//! The `bmat` text format.
//!
//! ```text
//! # optional comments
//! 3 4
//! 0110
//! 1 0 0 1
//! 0001
//! ```
//!
//! Rows may be packed or space-separated; the writer always emits packed rows.

use super::{BinaryMatrix, Gf2Error};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Gf2Error {
    Gf2Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_bmat(text: &str) -> Result<BinaryMatrix, Gf2Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing header line \"<rows> <cols>\""))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(parse_err(hline, 1, "header must be \"<rows> <cols>\""));
    }
    let parse_dim = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_err(hline, 1, format!("invalid dimension {s:?}")))
    };
    let (rows, cols) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
    let mut m = BinaryMatrix::zeros(rows, cols).map_err(|e| parse_err(hline, 1, e.to_string()))?;

    let mut r = 0;
    for (lno, line) in lines {
        if r == rows {
            return Err(parse_err(lno, 1, format!("more than {rows} data rows")));
        }
        let mut c = 0;
        for (col, ch) in line.chars().enumerate() {
            let bit = match ch {
                '0' => false,
                '1' => true,
                ' ' | '\t' => continue,
                other => return Err(parse_err(lno, col + 1, format!("unexpected character {other:?}"))),
            };
            if c == cols {
                return Err(parse_err(lno, col + 1, format!("row longer than {cols} entries")));
            }
            m.set(r, c, bit);
            c += 1;
        }
        if c != cols {
            return Err(parse_err(
                lno,
                line.len() + 1,
                format!("row has {c} entries, expected {cols}"),
            ));
        }
        r += 1;
    }
    if r != rows {
        return Err(parse_err(
            text.lines().count().max(1),
            1,
            format!("expected {rows} data rows, found {r}"),
        ));
    }
    Ok(m)
}

pub fn write_bmat(m: &BinaryMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        out.push_str(&m.row(r).to_string());
        out.push('\n');
    }
    out
}
