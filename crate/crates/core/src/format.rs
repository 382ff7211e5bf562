//! Plain-text matrix and codeword files.
//!
//! * weight matrix: header `m n`, then `m` rows of `n` entries in {0, 1};
//! * exponent matrix: header `m n s`, then `m` rows of `n` integers, `-1`
//!   for an absent (zero) block, otherwise an exponent in `0..s`;
//! * binary grid: header `rows cols`, then 0/1 rows;
//! * codeword: header `n s`, then exactly `n` lines each listing the
//!   exponents of one block; an empty line is the zero block.
//!
//! Lines starting with `#` are comments. In matrix files blank lines are
//! ignored.

use std::fmt::Write as _;

use crate::code::{BinaryMatrix, CodewordPoly, ExponentMatrix, WeightMatrix};
use crate::error::{Error, Result};
use crate::ring::CyclicPoly;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_ints(line_no: usize, line: &str) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| parse_err(line_no, format!("not an integer: {tok:?}")))
        })
        .collect()
}

fn parse_dim(line_no: usize, v: i64, what: &str) -> Result<usize> {
    if v < 1 {
        return Err(parse_err(
            line_no,
            format!("{what} must be positive, got {v}"),
        ));
    }
    Ok(v as usize)
}

struct Grid {
    header: Vec<i64>,
    header_line: usize,
    rows: Vec<(usize, Vec<i64>)>,
}

fn read_grid(text: &str) -> Result<Grid> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let header = parse_ints(header_line, header)?;
    let rows = lines
        .map(|(no, l)| parse_ints(no, l).map(|v| (no, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Grid {
        header,
        header_line,
        rows,
    })
}

fn check_shape(grid: &Grid, m: usize, n: usize) -> Result<()> {
    if grid.rows.len() != m {
        let line = grid.rows.last().map_or(grid.header_line, |r| r.0);
        return Err(parse_err(
            line,
            format!("expected {m} rows, found {}", grid.rows.len()),
        ));
    }
    for (no, row) in &grid.rows {
        if row.len() != n {
            return Err(parse_err(
                *no,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
    }
    Ok(())
}

fn binary_rows(grid: &Grid) -> Result<Vec<Vec<u8>>> {
    grid.rows
        .iter()
        .map(|(no, row)| {
            row.iter()
                .map(|&v| match v {
                    0 | 1 => Ok(v as u8),
                    _ => Err(parse_err(*no, format!("entry {v} is not 0 or 1"))),
                })
                .collect()
        })
        .collect()
}

pub fn parse_weight_matrix(text: &str) -> Result<WeightMatrix> {
    let grid = read_grid(text)?;
    let [m, n] = grid.header[..] else {
        return Err(parse_err(
            grid.header_line,
            "weight-matrix header must be \"m n\"",
        ));
    };
    let (m, n) = (
        parse_dim(grid.header_line, m, "m")?,
        parse_dim(grid.header_line, n, "n")?,
    );
    check_shape(&grid, m, n)?;
    WeightMatrix::from_rows(&binary_rows(&grid)?)
}

pub fn parse_binary_grid(text: &str) -> Result<BinaryMatrix> {
    let grid = read_grid(text)?;
    let [r, c] = grid.header[..] else {
        return Err(parse_err(
            grid.header_line,
            "grid header must be \"rows cols\"",
        ));
    };
    let (r, c) = (
        parse_dim(grid.header_line, r, "rows")?,
        parse_dim(grid.header_line, c, "cols")?,
    );
    check_shape(&grid, r, c)?;
    BinaryMatrix::from_rows(&binary_rows(&grid)?)
}

pub fn parse_exponent_matrix(text: &str) -> Result<ExponentMatrix> {
    let grid = read_grid(text)?;
    let [m, n, s] = grid.header[..] else {
        return Err(parse_err(
            grid.header_line,
            "exponent-matrix header must be \"m n s\"",
        ));
    };
    let hl = grid.header_line;
    let (m, n, s) = (
        parse_dim(hl, m, "m")?,
        parse_dim(hl, n, "n")?,
        parse_dim(hl, s, "s")?,
    );
    check_shape(&grid, m, n)?;
    let rows = grid
        .rows
        .iter()
        .map(|(no, row)| {
            row.iter()
                .map(|&v| match v {
                    -1 => Ok(None),
                    v if v >= 0 && (v as usize) < s => Ok(Some(v as usize)),
                    v => Err(parse_err(*no, format!("exponent {v} outside -1..{s}"))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ExponentMatrix::new(s, &rows).map_err(|e| parse_err(hl, e.to_string()))
}

/// A matrix file of either kind, told apart by the header length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixFile {
    Weight(WeightMatrix),
    Exponent(ExponentMatrix),
}

pub fn parse_matrix(text: &str) -> Result<MatrixFile> {
    let (no, header) = content_lines(text)
        .next()
        .ok_or_else(|| parse_err(1, "missing header"))?;
    match parse_ints(no, header)?.len() {
        2 => parse_weight_matrix(text).map(MatrixFile::Weight),
        3 => parse_exponent_matrix(text).map(MatrixFile::Exponent),
        k => Err(parse_err(
            no,
            format!("header has {k} fields; expected \"m n\" or \"m n s\""),
        )),
    }
}

pub fn parse_codeword(text: &str) -> Result<CodewordPoly> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'));
    let (hl, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| parse_err(1, "missing header"))?;
    let [n, s] = parse_ints(hl, header)?[..] else {
        return Err(parse_err(hl, "codeword header must be \"n s\""));
    };
    let (n, s) = (parse_dim(hl, n, "n")?, parse_dim(hl, s, "s")?);
    let body: Vec<(usize, &str)> = lines.collect();
    // trailing blank lines past the n-th block carry no information
    if let Some((no, _)) = body.iter().skip(n).find(|(_, l)| !l.is_empty()) {
        return Err(parse_err(*no, format!("more than {n} blocks")));
    }
    let mut blocks = Vec::with_capacity(n);
    for j in 0..n {
        let Some(&(no, line)) = body.get(j) else {
            blocks.push(CyclicPoly::zero(s).map_err(|e| parse_err(hl, e.to_string()))?);
            continue;
        };
        let exps = parse_ints(no, line)?;
        if let Some(bad) = exps.iter().find(|&&e| e < 0 || e as usize >= s) {
            return Err(parse_err(no, format!("exponent {bad} outside 0..{s}")));
        }
        blocks.push(
            CyclicPoly::from_exponents(s, exps.iter().map(|&e| e as usize))
                .map_err(|e| parse_err(no, e.to_string()))?,
        );
    }
    CodewordPoly::new(s, blocks).map_err(|e| parse_err(hl, e.to_string()))
}

fn write_rows<I, R>(out: &mut String, rows: I)
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    for row in rows {
        let row: Vec<String> = row.into_iter().collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

pub fn write_binary_grid(bm: &BinaryMatrix) -> String {
    let mut out = format!("{} {}\n", bm.rows(), bm.cols());
    write_rows(
        &mut out,
        bm.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|b| b.to_string())),
    );
    out
}

pub fn write_weight_matrix(wm: &WeightMatrix) -> String {
    write_binary_grid(wm.as_binary())
}

pub fn write_exponent_matrix(em: &ExponentMatrix) -> String {
    let mut out = format!("{} {} {}\n", em.m(), em.n(), em.s());
    write_rows(
        &mut out,
        em.rows().into_iter().map(|r| {
            r.into_iter()
                .map(|e| e.map_or("-1".into(), |a| a.to_string()))
        }),
    );
    out
}

pub fn write_codeword(c: &CodewordPoly) -> String {
    let mut out = format!("{} {}\n", c.n(), c.s());
    for b in c.blocks() {
        let exps: Vec<String> = b.support().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "{}", exps.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SMALL: &str = "# two block rows\n2 3 3\n-1 2 1\n0 -1 2\n";

    #[test]
    fn exponent_file() {
        let em = parse_exponent_matrix(SMALL).unwrap();
        assert_eq!(em.get(0, 0), None);
        assert_eq!(em.get(0, 1), Some(2));
        assert_eq!(em.get(1, 0), Some(0));
        assert_eq!(
            parse_matrix(SMALL).unwrap(),
            MatrixFile::Exponent(em.clone())
        );
        assert_eq!(
            parse_exponent_matrix(&write_exponent_matrix(&em)).unwrap(),
            em
        );
    }

    #[test]
    fn weight_file() {
        let wm = parse_weight_matrix("2 3\n0 1 1\n\n1 0 1\n").unwrap();
        assert_eq!(wm.as_binary().to_rows(), vec![vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(write_weight_matrix(&wm), "2 3\n0 1 1\n1 0 1\n");
        assert!(matches!(
            parse_matrix("2 3\n0 1 1\n1 0 1\n").unwrap(),
            MatrixFile::Weight(_)
        ));
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let err = parse_exponent_matrix("2 3 3\n-1 2 1\n0 -1 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse_weight_matrix("2 3\n0 1\n1 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_weight_matrix("2 3\n0 1 2\n1 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_weight_matrix("2 3\n0 1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_weight_matrix("2 3\n0 1 1\n").is_err());
        assert!(parse_matrix("1 2 3 4\n").is_err());
        assert!(parse_matrix("").is_err());
        assert!(parse_exponent_matrix("1 1 0\n-1\n").is_err());
    }

    #[test]
    fn codeword_file() {
        let c = parse_codeword("3 3\n1\n1\n2\n").unwrap();
        assert_eq!(c.to_string(), "(x, x, x^2)");
        let c = parse_codeword("3 5\n\n0 1 4\n").unwrap();
        assert_eq!(c.to_string(), "(0, 1+x+x^4, 0)");
        assert_eq!(parse_codeword(&write_codeword(&c)).unwrap(), c);
        assert!(matches!(
            parse_codeword("2 3\n1\n1\n1\n").unwrap_err(),
            Error::Parse { line: 4, .. }
        ));
        assert!(matches!(
            parse_codeword("2 3\n3\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn grid_round_trip() {
        let em = parse_exponent_matrix(SMALL).unwrap();
        let h = em.expand();
        assert_eq!(parse_binary_grid(&write_binary_grid(&h)).unwrap(), h);
    }

    proptest! {
        #[test]
        fn codeword_text_round_trip(s in 1usize..40, blocks in proptest::collection::vec(proptest::collection::vec(0usize..40, 0..6), 1..6)) {
            let blocks: Vec<CyclicPoly> = blocks
                .into_iter()
                .map(|e| CyclicPoly::from_exponents(s, e.into_iter().map(|x| x % s)).unwrap())
                .collect();
            let c = CodewordPoly::new(s, blocks).unwrap();
            prop_assert_eq!(parse_codeword(&write_codeword(&c)).unwrap(), c);
        }
    }
}
