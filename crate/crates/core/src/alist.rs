//! Reading and writing parity-check matrices in alist format.

use thiserror::Error;

use crate::bits::Bits;
use crate::matrix::BinaryMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlistError {
    #[error("alist input ended early")]
    Truncated,
    #[error("bad alist token {0:?}")]
    BadToken(String),
    #[error("alist index {index} out of range 1..={bound}")]
    OutOfRange { index: usize, bound: usize },
    #[error("column and row lists disagree")]
    Inconsistent,
}

/// Serializes `m` as alist text, one record per line.
pub fn export_alist(m: &BinaryMatrix) -> String {
    let cols = m.column_supports();
    let rows: Vec<Vec<usize>> = m.rows().iter().map(Bits::ones_vec).collect();
    let max_c = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_r = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", m.num_cols(), m.num_rows()));
    out.push_str(&format!("{max_c} {max_r}\n"));
    out.push_str(&join(cols.iter().map(Vec::len)));
    out.push_str(&join(rows.iter().map(Vec::len)));
    for list in cols.iter().map(|c| (c, max_c)).chain(rows.iter().map(|r| (r, max_r))) {
        let (idx, width) = list;
        let padded = idx
            .iter()
            .map(|&i| i + 1)
            .chain(std::iter::repeat(0))
            .take(width);
        out.push_str(&join(padded));
    }
    out
}

fn join<I: Iterator<Item = usize>>(it: I) -> String {
    let v: Vec<String> = it.map(|x| x.to_string()).collect();
    format!("{}\n", v.join(" "))
}

/// Parses alist text. Zero entries in index lists are padding.
pub fn import_alist(text: &str) -> Result<BinaryMatrix, AlistError> {
    let mut tokens = text.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| AlistError::BadToken(t.to_string()))
    });
    let mut next = || tokens.next().unwrap_or(Err(AlistError::Truncated));
    let ncols = next()?;
    let nrows = next()?;
    let max_c = next()?;
    let max_r = next()?;
    let col_deg = (0..ncols).map(|_| next()).collect::<Result<Vec<_>, _>>()?;
    let row_deg = (0..nrows).map(|_| next()).collect::<Result<Vec<_>, _>>()?;
    let mut m = BinaryMatrix::zeros(nrows, ncols);
    for (c, &deg) in col_deg.iter().enumerate() {
        let mut seen = 0;
        for _ in 0..max_c {
            let r = next()?;
            if r == 0 {
                continue;
            }
            if r > nrows {
                return Err(AlistError::OutOfRange { index: r, bound: nrows });
            }
            m.set(r - 1, c, true);
            seen += 1;
        }
        if seen != deg {
            return Err(AlistError::Inconsistent);
        }
    }
    for (r, &deg) in row_deg.iter().enumerate() {
        let mut listed = Vec::new();
        for _ in 0..max_r {
            let c = next()?;
            if c == 0 {
                continue;
            }
            if c > ncols {
                return Err(AlistError::OutOfRange { index: c, bound: ncols });
            }
            listed.push(c - 1);
        }
        listed.sort_unstable();
        if listed.len() != deg || listed != m.row(r).ones_vec() {
            return Err(AlistError::Inconsistent);
        }
    }
    Ok(m)
}
