//! Seeded random instances for ensemble checks and benchmarks.

use std::ops::RangeInclusive;

use rand::Rng;

use crate::code::{ExponentMatrix, PolyMatrix};
use crate::ring::CyclicPoly;

/// A type-1 exponent matrix with each entry present with probability
/// `density`, and every column holding at least one entry.
pub fn random_exponent_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
    s: usize,
    density: f64,
) -> ExponentMatrix {
    let mut rows: Vec<Vec<Option<usize>>> = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| rng.gen_bool(density).then(|| rng.gen_range(0..s)))
                .collect()
        })
        .collect();
    for j in 0..n {
        if rows.iter().all(|r| r[j].is_none()) {
            let i = rng.gen_range(0..m);
            rows[i][j] = Some(rng.gen_range(0..s));
        }
    }
    ExponentMatrix::new(s, &rows).expect("sampled entries are in range")
}

/// Draws `m`, then `n = m + extra`, then `s` from the given ranges.
pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    m: RangeInclusive<usize>,
    extra_columns: RangeInclusive<usize>,
    s: RangeInclusive<usize>,
    density: f64,
) -> ExponentMatrix {
    let m = rng.gen_range(m);
    let n = m + rng.gen_range(extra_columns);
    let s = rng.gen_range(s);
    random_exponent_matrix(rng, m, n, s, density)
}

/// Copy of `em` with row `dst` replaced by row `src`.
pub fn duplicate_row(em: &ExponentMatrix, src: usize, dst: usize) -> ExponentMatrix {
    let mut rows = em.rows();
    rows[dst] = rows[src].clone();
    ExponentMatrix::new(em.s(), &rows).expect("rows come from a valid matrix")
}

/// A general polynomial matrix; each entry is zero with probability
/// `1 - density`, otherwise a random nonzero element of weight at most 4.
pub fn random_poly_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    s: usize,
    density: f64,
) -> PolyMatrix {
    let entries = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.gen_bool(density) {
                        let terms = rng.gen_range(1..=4);
                        let exps: Vec<usize> = (0..terms).map(|_| rng.gen_range(0..s)).collect();
                        CyclicPoly::from_exponents(s, exps).expect("in range")
                    } else {
                        CyclicPoly::zero(s).expect("valid modulus")
                    }
                })
                .collect()
        })
        .collect();
    PolyMatrix::new(s, entries).expect("uniform modulus")
}
