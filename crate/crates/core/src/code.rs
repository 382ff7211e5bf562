//! Type-1 quasi-cyclic codes: the weight matrix, the exponent (polynomial)
//! matrix, its circulant expansion and codeword vectors.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ring::{CyclicPoly, MAX_S};

/// A dense binary vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BinaryVector({s})")
    }
}

/// A dense binary matrix stored row by row.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: Vec<BinaryVector>,
    cols: usize,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BinaryVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {cols}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => {
                        return Err(Error::NotBinary {
                            row: i,
                            col: j,
                            value: v as i64,
                        })
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BinaryVector {
        &self.rows[r]
    }

    pub fn row_vectors(&self) -> &[BinaryVector] {
        &self.rows
    }

    /// `H v^T` over F2.
    pub fn mul_vec(&self, v: &BinaryVector) -> Result<BinaryVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(BinaryVector::from_bits(self.rows.iter().map(|r| r.dot(v))))
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|r| (0..self.cols).map(|c| r.get(c) as u8).collect())
            .collect()
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(BinaryVector::weight).sum()
    }

    pub fn permute_columns(&self, perm: &[usize]) -> BinaryMatrix {
        let mut out = Self::zeros(self.rows(), perm.len());
        for r in 0..self.rows() {
            for (new, &old) in perm.iter().enumerate() {
                out.set(r, new, self.get(r, old));
            }
        }
        out
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// The weight matrix of a type-1 code: an `m x n` matrix over {0, 1}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightMatrix {
    inner: BinaryMatrix,
}

impl WeightMatrix {
    pub fn new(inner: BinaryMatrix) -> Result<Self> {
        if inner.rows() == 0 || inner.cols() == 0 {
            return Err(Error::EmptyMatrix {
                rows: inner.rows(),
                cols: inner.cols(),
            });
        }
        Ok(Self { inner })
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        Self::new(BinaryMatrix::from_rows(rows)?)
    }

    pub fn all_ones(m: usize, n: usize) -> Result<Self> {
        Self::from_rows(&vec![vec![1; n]; m])
    }

    /// An `m`-row matrix with the given column weights. Ones are placed
    /// round-robin over the rows so that row weights differ by at most one.
    pub fn from_column_weights(m: usize, weights: &[usize]) -> Result<Self> {
        let mut rows = vec![vec![0u8; weights.len()]; m];
        let mut next = 0;
        for (j, &w) in weights.iter().enumerate() {
            if w > m {
                return Err(Error::DimensionMismatch(format!(
                    "column {} weight {w} exceeds {m} rows",
                    j + 1
                )));
            }
            // w <= m consecutive rows mod m are distinct
            for _ in 0..w {
                rows[next % m][j] = 1;
                next += 1;
            }
        }
        Self::from_rows(&rows)
    }

    pub fn m(&self) -> usize {
        self.inner.rows()
    }

    pub fn n(&self) -> usize {
        self.inner.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.inner.get(i, j)
    }

    pub fn as_binary(&self) -> &BinaryMatrix {
        &self.inner
    }

    pub fn column_weight(&self, j: usize) -> usize {
        (0..self.m()).filter(|&i| self.get(i, j)).count()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        (0..self.n()).map(|j| self.column_weight(j)).collect()
    }

    /// Lower bound `1 - m/n` on the code rate.
    pub fn design_rate(&self) -> Ratio<i64> {
        Ratio::new(self.n() as i64 - self.m() as i64, self.n() as i64)
    }

    /// Stable sort of the columns by ascending weight. Returns the sorted
    /// matrix and `perm` with `perm[new] = old`.
    pub fn sort_columns_ascending(&self) -> (WeightMatrix, Vec<usize>) {
        let weights = self.column_weights();
        let mut perm: Vec<usize> = (0..self.n()).collect();
        perm.sort_by_key(|&j| weights[j]);
        let sorted = WeightMatrix {
            inner: self.inner.permute_columns(&perm),
        };
        (sorted, perm)
    }

    pub fn is_sorted_ascending(&self) -> bool {
        self.column_weights().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn degree_distribution(&self) -> DegreeDistribution {
        let mut counts = BTreeMap::new();
        for w in self.column_weights() {
            *counts.entry(w).or_insert(0) += 1;
        }
        DegreeDistribution { counts }
    }

    /// Mean column weight over 1-based sorted positions `t1..=t2`.
    ///
    /// The matrix must already be sorted ascending. A single position
    /// (`t1 == t2`) is allowed and yields that column's weight.
    pub fn avg_weight(&self, t1: usize, t2: usize) -> Result<Ratio<u64>> {
        if !self.is_sorted_ascending() {
            return Err(Error::NotSorted);
        }
        avg_of_sorted(&self.column_weights(), t1, t2)
    }
}

pub(crate) fn avg_of_sorted(weights: &[usize], t1: usize, t2: usize) -> Result<Ratio<u64>> {
    if t1 == 0 {
        return Err(Error::IndexOutOfRange {
            index: t1,
            limit: weights.len(),
        });
    }
    if t2 > weights.len() {
        return Err(Error::IndexOutOfRange {
            index: t2,
            limit: weights.len(),
        });
    }
    if t2 < t1 {
        return Err(Error::EmptyRange { t1, t2 });
    }
    let sum: usize = weights[t1 - 1..t2].iter().sum();
    Ok(Ratio::new(sum as u64, (t2 - t1 + 1) as u64))
}

/// Column-weight distribution: `counts[i]` columns have weight `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDistribution {
    pub counts: BTreeMap<usize, usize>,
}

impl DegreeDistribution {
    pub fn columns(&self) -> usize {
        self.counts.values().sum()
    }

    /// Sum of `i * counts[i]`, the number of ones in the matrix.
    pub fn edges(&self) -> usize {
        self.counts.iter().map(|(w, c)| w * c).sum()
    }
}

impl fmt::Display for DegreeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(w, c)| match w {
                0 => format!("{c}"),
                1 => format!("{c}x"),
                _ => format!("{c}x^{w}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Polynomial parity-check matrix of a type-1 code: every entry is either
/// absent (zero circulant) or a monomial `x^a` (cyclic permutation matrix).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExponentMatrix {
    m: usize,
    n: usize,
    s: usize,
    entries: Vec<Option<usize>>,
}

impl ExponentMatrix {
    pub fn new(s: usize, rows: &[Vec<Option<usize>>]) -> Result<Self> {
        if s == 0 || s > MAX_S {
            return Err(Error::ModulusOutOfRange { s, max: MAX_S });
        }
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::EmptyMatrix { rows: m, cols: n });
        }
        let mut entries = Vec::with_capacity(m * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for &e in row {
                if let Some(a) = e {
                    if a >= s {
                        return Err(Error::ExponentOutOfRange { exponent: a, s });
                    }
                }
                entries.push(e);
            }
        }
        Ok(Self { m, n, s, entries })
    }

    /// Assigns an exponent drawn uniformly from `0..s` to every one of `wm`.
    pub fn random_lift<R: Rng + ?Sized>(wm: &WeightMatrix, s: usize, rng: &mut R) -> Result<Self> {
        let rows: Vec<Vec<Option<usize>>> = (0..wm.m())
            .map(|i| {
                (0..wm.n())
                    .map(|j| wm.get(i, j).then(|| rng.gen_range(0..s.max(1))))
                    .collect()
            })
            .collect();
        Self::new(s, &rows)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Option<usize>>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn entry_poly(&self, i: usize, j: usize) -> CyclicPoly {
        match self.get(i, j) {
            Some(a) => CyclicPoly::monomial(self.s, a).expect("validated exponent"),
            None => CyclicPoly::zero(self.s).expect("validated modulus"),
        }
    }

    pub fn weight_matrix(&self) -> WeightMatrix {
        let mut b = BinaryMatrix::zeros(self.m, self.n);
        for i in 0..self.m {
            for j in 0..self.n {
                b.set(i, j, self.get(i, j).is_some());
            }
        }
        WeightMatrix { inner: b }
    }

    pub fn poly_matrix(&self) -> PolyMatrix {
        let entries = (0..self.m)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.entry_poly(i, j));
        PolyMatrix {
            rows: self.m,
            cols: self.n,
            s: self.s,
            entries: entries.collect(),
        }
    }

    /// The `ms x ns` binary parity-check matrix. Block `(i, j)` with
    /// exponent `a` has a one at `(r, c)` iff `(r - c) mod s == a`, so the
    /// block's first column holds the coefficients of `x^a`.
    pub fn expand(&self) -> BinaryMatrix {
        let s = self.s;
        let mut h = BinaryMatrix::zeros(self.m * s, self.n * s);
        for i in 0..self.m {
            for j in 0..self.n {
                if let Some(a) = self.get(i, j) {
                    for c in 0..s {
                        h.set(i * s + (c + a) % s, j * s + c, true);
                    }
                }
            }
        }
        h
    }

    /// Inverse of [`expand`](Self::expand): reads the first column of each
    /// block. Fails if a block is not zero or a cyclic permutation matrix.
    pub fn from_expanded(h: &BinaryMatrix, s: usize) -> Result<Self> {
        if s == 0 || !h.rows().is_multiple_of(s) || !h.cols().is_multiple_of(s) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not a grid of {s}x{s} blocks",
                h.rows(),
                h.cols()
            )));
        }
        let (m, n) = (h.rows() / s, h.cols() / s);
        let mut rows = vec![vec![None; n]; m];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let ones: Vec<usize> = (0..s).filter(|&t| h.get(i * s + t, j * s)).collect();
                *entry = match ones.as_slice() {
                    [] => None,
                    [a] => Some(*a),
                    _ => {
                        return Err(Error::DimensionMismatch(format!(
                            "block ({}, {}) has weight {}",
                            i + 1,
                            j + 1,
                            ones.len()
                        )))
                    }
                };
            }
        }
        let em = Self::new(s, &rows)?;
        if em.expand() != *h {
            return Err(Error::DimensionMismatch("blocks are not circulant".into()));
        }
        Ok(em)
    }

    fn check_word(&self, c: &CodewordPoly) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "codeword has {} blocks, matrix has {} columns",
                c.n(),
                self.n
            )));
        }
        if c.s() != self.s {
            return Err(Error::ModulusMismatch {
                left: self.s,
                right: c.s(),
            });
        }
        Ok(())
    }

    /// `H(x) c(x)^T` in the ring.
    pub fn syndrome(&self, c: &CodewordPoly) -> Result<Vec<CyclicPoly>> {
        self.check_word(c)?;
        Ok((0..self.m)
            .map(|i| {
                let mut acc = CyclicPoly::zero(self.s).expect("validated modulus");
                for j in 0..self.n {
                    if let Some(a) = self.get(i, j) {
                        acc.add_assign_unchecked(&c.blocks[j].shift(a));
                    }
                }
                acc
            })
            .collect())
    }

    /// Evaluates the syndrome through both the polynomial matrix and the
    /// expanded binary matrix.
    pub fn check_codeword(&self, c: &CodewordPoly) -> Result<SyndromeCheck> {
        let poly = self.syndrome(c)?;
        let binary = self.expand().mul_vec(&c.flatten())?;
        let first_failing_row = poly.iter().position(|p| !p.is_zero());
        let binary_first_failing_row = binary.ones().next().map(|r| r / self.s);
        Ok(SyndromeCheck {
            polynomial_zero: first_failing_row.is_none(),
            binary_zero: binary.is_zero(),
            first_failing_row,
            binary_first_failing_row,
        })
    }

    /// True iff `c` has zero syndrome through both paths.
    pub fn syndrome_consistency_check(&self, c: &CodewordPoly) -> Result<bool> {
        let check = self.check_codeword(c)?;
        Ok(check.polynomial_zero && check.binary_zero)
    }

    pub fn column_submatrix(&self, cols: &[usize]) -> Result<PolyMatrix> {
        self.poly_matrix()
            .submatrix(&(0..self.m).collect::<Vec<_>>(), cols)
    }
}

/// Outcome of evaluating a syndrome through both representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SyndromeCheck {
    pub polynomial_zero: bool,
    pub binary_zero: bool,
    /// 0-based block row of the first nonzero polynomial syndrome entry.
    pub first_failing_row: Option<usize>,
    /// Same, located from the expanded binary syndrome.
    pub binary_first_failing_row: Option<usize>,
}

impl SyndromeCheck {
    pub fn agree(&self) -> bool {
        self.polynomial_zero == self.binary_zero
            && self.first_failing_row == self.binary_first_failing_row
    }
}

/// A matrix over `F2[x]/(x^s - 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    s: usize,
    entries: Vec<CyclicPoly>,
}

impl PolyMatrix {
    pub fn new(s: usize, rows: Vec<Vec<CyclicPoly>>) -> Result<Self> {
        if s == 0 || s > MAX_S {
            return Err(Error::ModulusOutOfRange { s, max: MAX_S });
        }
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged polynomial matrix".into()));
            }
            for p in row {
                if p.modulus() != s {
                    return Err(Error::ModulusMismatch {
                        left: s,
                        right: p.modulus(),
                    });
                }
                entries.push(p);
            }
        }
        Ok(Self {
            rows: r,
            cols: c,
            s,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclicPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CyclicPoly::is_zero)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix> {
        for &r in rows {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    limit: self.rows,
                });
            }
        }
        for &c in cols {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    limit: self.cols,
                });
            }
        }
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| *self.get(r, c));
        Ok(PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            s: self.s,
            entries: entries.collect(),
        })
    }

    pub fn row(&self, i: usize) -> &[CyclicPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// A vector of `n` ring elements sharing one modulus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodewordPoly {
    s: usize,
    blocks: Vec<CyclicPoly>,
}

impl CodewordPoly {
    pub fn new(s: usize, blocks: Vec<CyclicPoly>) -> Result<Self> {
        if s == 0 || s > MAX_S {
            return Err(Error::ModulusOutOfRange { s, max: MAX_S });
        }
        if let Some(b) = blocks.iter().find(|b| b.modulus() != s) {
            return Err(Error::ModulusMismatch {
                left: s,
                right: b.modulus(),
            });
        }
        Ok(Self { s, blocks })
    }

    pub fn zero(n: usize, s: usize) -> Result<Self> {
        Self::new(s, vec![CyclicPoly::zero(s)?; n])
    }

    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn blocks(&self) -> &[CyclicPoly] {
        &self.blocks
    }

    pub fn block_mut(&mut self, j: usize) -> &mut CyclicPoly {
        &mut self.blocks[j]
    }

    pub fn weight(&self) -> usize {
        self.blocks.iter().map(CyclicPoly::weight).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(CyclicPoly::is_zero)
    }

    /// Multiplies every block by `x^t`.
    pub fn shift_all(&self, t: usize) -> CodewordPoly {
        CodewordPoly {
            s: self.s,
            blocks: self.blocks.iter().map(|b| b.shift(t)).collect(),
        }
    }

    /// Block-major binary vector: bit `j*s + t` is the coefficient of
    /// `x^t` in block `j`.
    pub fn flatten(&self) -> BinaryVector {
        let mut v = BinaryVector::zeros(self.n() * self.s);
        for (j, b) in self.blocks.iter().enumerate() {
            for t in b.support() {
                v.set(j * self.s + t, true);
            }
        }
        v
    }

    pub fn from_flat(v: &BinaryVector, s: usize) -> Result<Self> {
        if s == 0 || !v.len().is_multiple_of(s) {
            return Err(Error::DimensionMismatch(format!(
                "length {} is not a multiple of s = {s}",
                v.len()
            )));
        }
        let blocks = (0..v.len() / s)
            .map(|j| CyclicPoly::from_exponents(s, (0..s).filter(|&t| v.get(j * s + t))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(s, blocks)
    }
}

/// `(p1, p2, ...)` in ring notation.
impl fmt::Display for CodewordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn small_code() -> ExponentMatrix {
        ExponentMatrix::new(
            3,
            &[vec![None, Some(2), Some(1)], vec![Some(0), None, Some(2)]],
        )
        .unwrap()
    }

    fn word(s: usize, blocks: &[&[usize]]) -> CodewordPoly {
        CodewordPoly::new(
            s,
            blocks
                .iter()
                .map(|e| CyclicPoly::from_exponents(s, e.iter().copied()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn weight_projection() {
        let wm = small_code().weight_matrix();
        assert_eq!(
            wm,
            WeightMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1]]).unwrap()
        );
        let absent = ExponentMatrix::new(2, &[vec![None, None], vec![None, None]]).unwrap();
        assert_eq!(absent.weight_matrix().as_binary().count_ones(), 0);
        let single = ExponentMatrix::new(5, &[vec![Some(0)]]).unwrap();
        assert_eq!(single.weight_matrix().as_binary().to_rows(), vec![vec![1]]);
    }

    #[test]
    fn expansion_golden() {
        let expected: Vec<Vec<u8>> = vec![
            vec![0, 0, 0, 0, 1, 0, 0, 0, 1],
            vec![0, 0, 0, 0, 0, 1, 1, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 0, 1, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 1, 0],
            vec![0, 1, 0, 0, 0, 0, 0, 0, 1],
            vec![0, 0, 1, 0, 0, 0, 1, 0, 0],
        ];
        assert_eq!(small_code().expand().to_rows(), expected);
        let id = ExponentMatrix::new(3, &[vec![Some(0)]]).unwrap();
        assert_eq!(id.expand(), BinaryMatrix::identity(3));
        let zero = ExponentMatrix::new(2, &[vec![None]]).unwrap();
        assert_eq!(zero.expand(), BinaryMatrix::zeros(2, 2));
    }

    #[test]
    fn syndromes() {
        let em = small_code();
        let c = word(3, &[&[1], &[1], &[2]]);
        assert!(em.syndrome(&c).unwrap().iter().all(CyclicPoly::is_zero));
        assert!(em.syndrome_consistency_check(&c).unwrap());
        assert_eq!(c.weight(), 3);

        let bad = word(3, &[&[0], &[], &[]]);
        let check = em.check_codeword(&bad).unwrap();
        assert!(!check.polynomial_zero && !check.binary_zero);
        assert_eq!(check.first_failing_row, Some(1));
        assert!(check.agree());

        assert!(em
            .syndrome_consistency_check(&CodewordPoly::zero(3, 3).unwrap())
            .unwrap());

        let one = ExponentMatrix::new(2, &[vec![Some(0)]]).unwrap();
        let syn = one.syndrome(&word(2, &[&[0]])).unwrap();
        assert_eq!(syn, vec![CyclicPoly::monomial(2, 0).unwrap()]);
    }

    #[test]
    fn syndrome_errors() {
        let em = small_code();
        assert!(matches!(
            em.syndrome(&CodewordPoly::zero(2, 3).unwrap()),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            em.syndrome(&CodewordPoly::zero(3, 4).unwrap()),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn codeword_weights() {
        assert_eq!(CodewordPoly::zero(4, 3).unwrap().weight(), 0);
        let f = CyclicPoly::all_ones(5).unwrap();
        let c = CodewordPoly::new(5, vec![f, f, CyclicPoly::zero(5).unwrap()]).unwrap();
        assert_eq!(c.weight(), 10);
    }

    #[test]
    fn design_rates() {
        let r = |m, n| WeightMatrix::all_ones(m, n).unwrap().design_rate();
        assert_eq!(r(2, 3), Ratio::new(1, 3));
        assert_eq!(r(3, 3), Ratio::from_integer(0));
        assert_eq!(r(2, 4), Ratio::new(1, 2));
    }

    #[test]
    fn column_sorting() {
        let wm = WeightMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
        let (sorted, perm) = wm.sort_columns_ascending();
        assert_eq!(sorted.as_binary().to_rows(), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(perm, vec![1, 0]);

        let already = WeightMatrix::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(already.sort_columns_ascending().1, vec![0, 1]);

        let ties = WeightMatrix::all_ones(2, 2).unwrap();
        let (same, perm) = ties.sort_columns_ascending();
        assert_eq!(same, ties);
        assert_eq!(perm, vec![0, 1]);
    }

    #[test]
    fn degree_distributions() {
        let wm = small_code().weight_matrix();
        let dd = wm.degree_distribution();
        assert_eq!(dd.counts, BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(dd.to_string(), "2x + 1x^2");
        assert_eq!(
            WeightMatrix::all_ones(3, 4)
                .unwrap()
                .degree_distribution()
                .counts,
            BTreeMap::from([(3, 4)])
        );
        let zero = WeightMatrix::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(zero.degree_distribution().counts, BTreeMap::from([(0, 2)]));
    }

    fn lambda_example() -> WeightMatrix {
        let weights: Vec<usize> = [2; 12]
            .iter()
            .chain([3; 24].iter())
            .chain([4; 12].iter())
            .copied()
            .collect();
        WeightMatrix::from_column_weights(24, &weights).unwrap()
    }

    #[test]
    fn average_weights() {
        let wm = lambda_example();
        assert_eq!(wm.column_weights().iter().sum::<usize>(), 144);
        assert_eq!(wm.avg_weight(2, 48).unwrap(), Ratio::new(142, 47));
        assert_eq!(wm.avg_weight(2, 12).unwrap(), Ratio::from_integer(2));
        assert_eq!(wm.avg_weight(14, 15).unwrap(), Ratio::from_integer(3));
        assert_eq!(wm.avg_weight(2, 2).unwrap(), Ratio::from_integer(2));
        assert_eq!(
            wm.avg_weight(3, 2).unwrap_err(),
            Error::EmptyRange { t1: 3, t2: 2 }
        );
        assert!(matches!(
            wm.avg_weight(0, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            wm.avg_weight(2, 49),
            Err(Error::IndexOutOfRange { .. })
        ));
        let unsorted = WeightMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(unsorted.avg_weight(1, 2).unwrap_err(), Error::NotSorted);
    }

    #[test]
    fn balanced_column_weight_fill() {
        let wm = lambda_example();
        for i in 0..wm.m() {
            let row_weight = (0..wm.n()).filter(|&j| wm.get(i, j)).count();
            assert_eq!(row_weight, 6);
        }
        assert!(WeightMatrix::from_column_weights(2, &[3]).is_err());
    }

    #[test]
    fn rejects_bad_exponents() {
        assert_eq!(
            ExponentMatrix::new(3, &[vec![Some(3)]]).unwrap_err(),
            Error::ExponentOutOfRange { exponent: 3, s: 3 }
        );
        assert!(ExponentMatrix::new(0, &[vec![None]]).is_err());
        assert!(ExponentMatrix::new(2, &[vec![None], vec![None, None]]).is_err());
    }

    fn exponent_matrix() -> impl Strategy<Value = ExponentMatrix> {
        (1usize..5, 1usize..7, 1usize..17).prop_flat_map(|(m, n, s)| {
            proptest::collection::vec(proptest::option::of(0..s), m * n).prop_map(move |e| {
                let rows: Vec<Vec<Option<usize>>> = e.chunks(n).map(<[_]>::to_vec).collect();
                ExponentMatrix::new(s, &rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn expand_round_trip(em in exponent_matrix()) {
            prop_assert_eq!(ExponentMatrix::from_expanded(&em.expand(), em.s()).unwrap(), em);
        }

        #[test]
        fn syndrome_paths_agree(em in exponent_matrix(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bits = BinaryVector::from_bits((0..em.n() * em.s()).map(|_| rng.gen_bool(0.3)));
            let c = CodewordPoly::from_flat(&bits, em.s()).unwrap();
            prop_assert_eq!(c.flatten(), bits);
            prop_assert!(em.check_codeword(&c).unwrap().agree());
        }

        #[test]
        fn quasi_cyclic_shift(em in exponent_matrix(), seed in any::<u64>(), t in 0usize..32) {
            // the syndrome commutes with a common shift, so codewords map to codewords
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bits = BinaryVector::from_bits((0..em.n() * em.s()).map(|_| rng.gen_bool(0.5)));
            let c = CodewordPoly::from_flat(&bits, em.s()).unwrap();
            let before = em.syndrome(&c).unwrap();
            let after = em.syndrome(&c.shift_all(t)).unwrap();
            let shifted: Vec<CyclicPoly> = before.iter().map(|p| p.shift(t)).collect();
            prop_assert_eq!(after, shifted);
        }

        #[test]
        fn degree_sums(em in exponent_matrix()) {
            let wm = em.weight_matrix();
            let dd = wm.degree_distribution();
            prop_assert_eq!(dd.columns(), wm.n());
            prop_assert_eq!(dd.edges(), wm.as_binary().count_ones());
            let row_sum: usize = (0..wm.m()).map(|i| (0..wm.n()).filter(|&j| wm.get(i, j)).count()).sum();
            prop_assert_eq!(dd.edges(), row_sum);
        }

        #[test]
        fn average_is_bracketed(em in exponent_matrix(), a in 1usize..7, b in 1usize..7) {
            let (sorted, _) = em.weight_matrix().sort_columns_ascending();
            let n = sorted.n();
            let (t1, t2) = (a.min(b).min(n), a.max(b).min(n));
            let l = sorted.column_weights();
            let avg = sorted.avg_weight(t1, t2).unwrap();
            prop_assert!(Ratio::from_integer(l[t1 - 1] as u64) <= avg);
            prop_assert!(avg <= Ratio::from_integer(l[t2 - 1] as u64));
        }
    }
}
