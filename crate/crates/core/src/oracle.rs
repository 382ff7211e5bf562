//! Brute-force reference machinery: linear algebra over F2, exhaustive
//! minimum distance and a cofactor-expansion determinant.

use rayon::prelude::*;

use crate::code::{BinaryMatrix, BinaryVector, PolyMatrix};
use crate::error::{Error, Result};
use crate::ring::CyclicPoly;

pub const DEFAULT_DIM_CAP: usize = 20;
pub const MAX_DIM_CAP: usize = 24;
pub const MAX_COFACTOR_ORDER: usize = 6;

/// Reduced row echelon form; returns the pivot column of each nonzero row.
fn rref(rows: &mut Vec<BinaryVector>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank_f2(bm: &BinaryMatrix) -> usize {
    let mut rows = bm.row_vectors().to_vec();
    rref(&mut rows, bm.cols()).len()
}

/// Basis of `{v : H v^T = 0}`, one vector per free column of the reduced
/// echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullspaceBasis {
    pub dim: usize,
    pub basis: Vec<BinaryVector>,
}

pub fn nullspace(bm: &BinaryMatrix) -> NullspaceBasis {
    let cols = bm.cols();
    let mut rows = bm.row_vectors().to_vec();
    let pivots = rref(&mut rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<BinaryVector> = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = BinaryVector::zeros(cols);
            v.set(free, true);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();
    NullspaceBasis {
        dim: basis.len(),
        basis,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinDistance {
    /// Minimum weight over all nonzero codewords, with one minimizer.
    Exact {
        distance: usize,
        witness: BinaryVector,
        dim: usize,
    },
    /// The code is `{0}`; minimum distance is undefined.
    Undefined,
    /// Nullspace dimension exceeds the enumeration cap.
    Infeasible { dim: usize, cap: usize },
}

impl MinDistance {
    pub fn distance(&self) -> Option<usize> {
        match self {
            MinDistance::Exact { distance, .. } => Some(*distance),
            _ => None,
        }
    }
}

/// Exact minimum distance by enumerating all `2^dim - 1` nonzero codewords
/// in Gray-code order. The sweep is split into independent ranges that are
/// reduced by `(weight, gray index)`, so the reported witness does not
/// depend on the number of worker threads.
pub fn min_distance_exhaustive(bm: &BinaryMatrix, dim_cap: usize) -> Result<MinDistance> {
    if dim_cap > MAX_DIM_CAP {
        return Err(Error::DimCapTooLarge {
            cap: dim_cap,
            max: MAX_DIM_CAP,
        });
    }
    let ns = nullspace(bm);
    let dim = ns.dim;
    if dim == 0 {
        return Ok(MinDistance::Undefined);
    }
    if dim > dim_cap {
        return Ok(MinDistance::Infeasible { dim, cap: dim_cap });
    }
    let words = bm.cols().div_ceil(64);
    let basis: Vec<&[u64]> = ns.basis.iter().map(BinaryVector::words).collect();

    let split_bits = if dim > 12 { 6 } else { 0 };
    let chunk_len = 1u64 << (dim - split_bits);
    let (weight, index) = (0..1u64 << split_bits)
        .into_par_iter()
        .map(|chunk| sweep(&basis, words, chunk * chunk_len, (chunk + 1) * chunk_len))
        .min()
        .expect("at least one chunk");

    let mut witness = BinaryVector::zeros(bm.cols());
    let gray = index ^ (index >> 1);
    for (b, v) in ns.basis.iter().enumerate() {
        if gray >> b & 1 == 1 {
            witness.xor_assign(v);
        }
    }
    debug_assert_eq!(witness.weight(), weight);
    Ok(MinDistance::Exact {
        distance: weight,
        witness,
        dim,
    })
}

/// Smallest `(weight, index)` over Gray indices in `start..end`, skipping
/// index 0 (the zero word).
fn sweep(basis: &[&[u64]], words: usize, start: u64, end: u64) -> (usize, u64) {
    let mut current = vec![0u64; words];
    let gray = start ^ (start >> 1);
    for (b, v) in basis.iter().enumerate() {
        if gray >> b & 1 == 1 {
            xor_into(&mut current, v);
        }
    }
    let mut best = (usize::MAX, u64::MAX);
    if start != 0 {
        best = (popcount(&current), start);
    }
    for i in start + 1..end {
        xor_into(&mut current, basis[i.trailing_zeros() as usize]);
        let w = popcount(&current);
        if w < best.0 {
            best = (w, i);
        }
    }
    best
}

#[inline]
fn xor_into(acc: &mut [u64], v: &[u64]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a ^= b;
    }
}

#[inline]
fn popcount(v: &[u64]) -> usize {
    v.iter().map(|w| w.count_ones() as usize).sum()
}

/// Determinant by recursive expansion along the first row.
pub fn det_cofactor_oracle(pm: &PolyMatrix) -> Result<CyclicPoly> {
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
    if q > MAX_COFACTOR_ORDER {
        return Err(Error::OrderTooLarge {
            order: q,
            cap: MAX_COFACTOR_ORDER,
        });
    }
    if q == 1 {
        return Ok(*pm.get(0, 0));
    }
    let mut acc = CyclicPoly::zero(pm.s())?;
    let rest: Vec<usize> = (1..q).collect();
    for c in 0..q {
        let cols: Vec<usize> = (0..q).filter(|&k| k != c).collect();
        let minor = det_cofactor_oracle(&pm.submatrix(&rest, &cols)?)?;
        acc = acc.add(&pm.get(0, c).mul(&minor)?)?;
    }
    Ok(acc)
}
