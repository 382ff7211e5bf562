//! Determinants over `F2[x]/(x^s - 1)` and the determinant (cofactor)
//! construction of codewords.
//!
//! For a selection `J` of `m + 1` columns of `H(x)`, setting block `j` to
//! the determinant of `H_J(x)` with column `j` removed gives a word with
//! zero syndrome: every syndrome entry expands to the determinant of a
//! matrix with two equal rows. When all those determinants vanish, the same
//! construction is applied to a maximal nonzero minor extended by one
//! column, which still annihilates every row of `H(x)` because all larger
//! minors are zero.

use itertools::Itertools;

use crate::code::{CodewordPoly, ExponentMatrix, PolyMatrix};
use crate::error::{Error, Result};
use crate::ring::CyclicPoly;

/// Largest order accepted by [`det`].
pub const MAX_DET_ORDER: usize = 12;

/// Rows `I` and columns `S` of a square submatrix, 0-based and ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorSelection {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSelection {
    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

/// Determinant by expansion over permutations, skipping any partial
/// product that is already zero. Signs do not matter in characteristic 2.
pub fn det(pm: &PolyMatrix) -> Result<CyclicPoly> {
    let q = pm.rows();
    if q != pm.cols() {
        return Err(Error::NotSquare {
            rows: q,
            cols: pm.cols(),
        });
    }
    if q == 0 {
        return Err(Error::EmptyMatrix { rows: 0, cols: 0 });
    }
    if q > MAX_DET_ORDER {
        return Err(Error::OrderTooLarge {
            order: q,
            cap: MAX_DET_ORDER,
        });
    }
    let mut acc = CyclicPoly::zero(pm.s())?;
    let one = CyclicPoly::monomial(pm.s(), 0)?;
    expand_permutations(pm, 0, 0, one, &mut acc);
    Ok(acc)
}

fn expand_permutations(
    pm: &PolyMatrix,
    row: usize,
    used: u32,
    partial: CyclicPoly,
    acc: &mut CyclicPoly,
) {
    if row == pm.rows() {
        acc.add_assign_unchecked(&partial);
        return;
    }
    for col in 0..pm.cols() {
        if used & (1 << col) != 0 {
            continue;
        }
        let entry = pm.get(row, col);
        if entry.is_zero() {
            continue;
        }
        let next = partial.mul_unchecked(entry);
        if next.is_zero() {
            continue;
        }
        expand_permutations(pm, row + 1, used | (1 << col), next, acc);
    }
}

/// For a `q x (q + 1)` matrix, the determinants obtained by deleting each
/// column in turn.
pub fn cofactor_row(pm: &PolyMatrix) -> Result<Vec<CyclicPoly>> {
    let q = pm.rows();
    if pm.cols() != q + 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected a {q}x{} matrix, got {q}x{}",
            q + 1,
            pm.cols()
        )));
    }
    let rows: Vec<usize> = (0..q).collect();
    (0..=q)
        .map(|deleted| {
            let cols: Vec<usize> = (0..=q).filter(|&c| c != deleted).collect();
            det(&pm.submatrix(&rows, &cols)?)
        })
        .collect()
}

fn validate_selection(em: &ExponentMatrix, columns: &[usize]) -> Result<()> {
    if columns.len() != em.m() + 1 {
        return Err(Error::InvalidColumnSet(format!(
            "need m + 1 = {} columns, got {}",
            em.m() + 1,
            columns.len()
        )));
    }
    if em.n() < em.m() + 1 {
        return Err(Error::TooFewColumns {
            m: em.m(),
            n: em.n(),
        });
    }
    if let Some(&bad) = columns.iter().find(|&&c| c >= em.n()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            limit: em.n(),
        });
    }
    if !columns.iter().all_unique() {
        return Err(Error::InvalidColumnSet("repeated column index".into()));
    }
    Ok(())
}

/// The word with `c_j = det(H_{J \ j}(x))` for `j` in `columns` and zero
/// elsewhere. Always has zero syndrome; it may be the zero word.
pub fn lemma_codeword(em: &ExponentMatrix, columns: &[usize]) -> Result<CodewordPoly> {
    validate_selection(em, columns)?;
    let deltas = cofactor_row(&em.column_submatrix(columns)?)?;
    place(em, columns, deltas)
}

fn place(em: &ExponentMatrix, columns: &[usize], values: Vec<CyclicPoly>) -> Result<CodewordPoly> {
    let mut word = CodewordPoly::zero(em.n(), em.s())?;
    for (&j, v) in columns.iter().zip(values) {
        *word.block_mut(j) = v;
    }
    Ok(word)
}

/// Order and position of a largest nonzero minor. Orders are tried from
/// `min(rows, cols)` downwards; within an order the first witness in
/// lexicographic order of (row set, column set) is returned. `None` iff the
/// matrix is zero.
pub fn max_nonzero_minor(pm: &PolyMatrix) -> Result<Option<(usize, MinorSelection)>> {
    let top = pm.rows().min(pm.cols());
    for order in (1..=top).rev() {
        for rows in (0..pm.rows()).combinations(order) {
            for cols in (0..pm.cols()).combinations(order) {
                if !det(&pm.submatrix(&rows, &cols)?)?.is_zero() {
                    return Ok(Some((order, MinorSelection { rows, cols })));
                }
            }
        }
    }
    Ok(None)
}

/// Which route [`construct_nonzero_codeword`] took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionPath {
    /// The full `m x m` cofactors gave a nonzero word.
    Direct,
    /// All `m x m` minors vanish; the word was built on the `r x (r + 1)`
    /// submatrix `rows x columns` (original 0-based indices).
    Fallback {
        order: usize,
        rows: Vec<usize>,
        columns: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub word: CodewordPoly,
    pub path: ConstructionPath,
}

/// A nonzero codeword supported on `columns`.
///
/// Falls back to a maximal nonzero minor `H_{I,S}(x)` when the direct
/// construction yields zero; the extra column is the smallest index of
/// `columns` outside `S`.
pub fn construct_nonzero_codeword(em: &ExponentMatrix, columns: &[usize]) -> Result<Construction> {
    let direct = lemma_codeword(em, columns)?;
    if !direct.is_zero() {
        return Ok(Construction {
            word: direct,
            path: ConstructionPath::Direct,
        });
    }
    let h_j = em.column_submatrix(columns)?;
    let (order, minor) = max_nonzero_minor(&h_j)?.ok_or(Error::ZeroOnColumns)?;
    let chosen: Vec<usize> = minor.cols.iter().map(|&p| columns[p]).collect();
    let extra = columns
        .iter()
        .copied()
        .filter(|c| !chosen.contains(c))
        .min()
        .expect("a maximal minor leaves at least one column of J unused");
    let mut extended = chosen;
    extended.push(extra);
    extended.sort_unstable();

    let sub = em.poly_matrix().submatrix(&minor.rows, &extended)?;
    let deltas = cofactor_row(&sub)?;
    let word = place(em, &extended, deltas)?;
    debug_assert!(!word.is_zero());
    Ok(Construction {
        word,
        path: ConstructionPath::Fallback {
            order,
            rows: minor.rows,
            columns: extended,
        },
    })
}
