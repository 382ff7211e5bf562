//! Upper bounds on the minimum distance of type-1 QC codes.
//!
//! * `d * s`, from spreading the all-ones polynomial over a minimum-weight
//!   codeword of the base code.
//! * `(m + 1) * k! * l^(m - k)`, from counting the monomial terms in the
//!   cofactor expansion on the `m + 1` lightest columns. The product of
//!   the actual column weights, `(m + 1) * k! * l_2 * ... * l_(m+1-k)`, is
//!   what the term count gives directly; the mean form is never smaller.
//!   Neither depends on `s`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive};
use serde::ser::{Serialize, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::code::{avg_of_sorted, BinaryVector, CodewordPoly, ExponentMatrix, WeightMatrix};
use crate::construct::{construct_nonzero_codeword, Construction};
use crate::error::{Error, Result};
use crate::oracle::{min_distance_exhaustive, MinDistance, MAX_DIM_CAP};
use crate::ring::CyclicPoly;

/// Base codes wider than this are not enumerated.
pub const MAX_BASE_COLUMNS: usize = 24;

/// `d * s`.
pub fn simple_bound(wm: &WeightMatrix, s: usize, d: usize) -> Result<u64> {
    if d < 1 {
        return Err(Error::TrivialBaseCode(d));
    }
    if s < 1 {
        return Err(Error::ModulusOutOfRange {
            s,
            max: crate::ring::MAX_S,
        });
    }
    if d > wm.n() {
        return Err(Error::DimensionMismatch(format!(
            "d = {d} exceeds n = {}",
            wm.n()
        )));
    }
    Ok((d * s) as u64)
}

/// Codeword with `1 + x + ... + x^(s-1)` on the support of a base codeword.
pub fn lifted_base_codeword(
    wm: &WeightMatrix,
    base: &BinaryVector,
    s: usize,
) -> Result<CodewordPoly> {
    if base.len() != wm.n() {
        return Err(Error::DimensionMismatch(format!(
            "base word length {} vs n = {}",
            base.len(),
            wm.n()
        )));
    }
    if base.is_zero() || !wm.as_binary().mul_vec(base)?.is_zero() {
        return Err(Error::NotBaseCodeword);
    }
    let f = CyclicPoly::all_ones(s)?;
    let zero = CyclicPoly::zero(s)?;
    CodewordPoly::new(
        s,
        (0..wm.n())
            .map(|j| if base.get(j) { f } else { zero })
            .collect(),
    )
}

/// Minimum distance of the code with parity-check matrix `wm` itself.
pub fn base_distance(wm: &WeightMatrix) -> Result<MinDistance> {
    if wm.n() > MAX_BASE_COLUMNS {
        return Ok(MinDistance::Infeasible {
            dim: wm.n(),
            cap: MAX_BASE_COLUMNS,
        });
    }
    min_distance_exhaustive(wm.as_binary(), MAX_DIM_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetBoundReport {
    pub k: usize,
    /// Mean weight of sorted positions `2..=m+1-k`; `None` when `k = m`
    /// and the range is empty (the factor is then 1).
    pub ell: Option<Ratio<u64>>,
    /// `(m + 1) * k! * prod_{j=2}^{m+1-k} l_j`.
    pub product_bound: BigUint,
    /// `(m + 1) * k! * ell^(m - k)`, exact.
    pub mean_bound: BigRational,
    pub sorted_weights: Vec<usize>,
    /// `permutation[t]` is the original index of sorted position `t`.
    pub permutation: Vec<usize>,
}

impl DetBoundReport {
    pub fn mean_bound_ceil(&self) -> BigUint {
        let r = &self.mean_bound;
        r.numer()
            .div_ceil(r.denom())
            .to_biguint()
            .expect("bound is positive")
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).product()
}

/// Largest `k` in `1..=m` with `l_{m+2-k} >= k` (1-based, ascending).
pub fn largest_k(sorted_weights: &[usize], m: usize) -> Option<usize> {
    (1..=m)
        .rev()
        .find(|&k| sorted_weights.get(m + 1 - k).is_some_and(|&l| l >= k))
}

pub fn det_bound(wm: &WeightMatrix) -> Result<DetBoundReport> {
    let (m, n) = (wm.m(), wm.n());
    if n < m + 1 {
        return Err(Error::TooFewColumns { m, n });
    }
    let (sorted, permutation) = wm.sort_columns_ascending();
    let l = sorted.column_weights();
    if l[0] == 0 {
        return Err(Error::ZeroWeightColumn {
            column: permutation[0],
        });
    }
    let k = largest_k(&l, m).expect("k = 1 qualifies once every weight is positive");

    let head = BigUint::from(m as u64 + 1) * factorial(k);
    // sorted positions 2..=m+1-k are 0-based 1..m+1-k
    let product: BigUint = l[1..m + 1 - k]
        .iter()
        .map(|&w| BigUint::from(w as u64))
        .product();
    let ell = if k < m {
        Some(avg_of_sorted(&l, 2, m + 1 - k)?)
    } else {
        None
    };
    let ell_power = match ell {
        Some(e) => {
            let e = BigRational::new((*e.numer()).into(), (*e.denom()).into());
            num_traits::pow(e, m - k)
        }
        None => BigRational::one(),
    };
    let mean_bound = BigRational::from_integer(head.clone().into()) * ell_power;

    Ok(DetBoundReport {
        k,
        ell,
        product_bound: head * product,
        mean_bound,
        sorted_weights: l,
        permutation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructiveBound {
    /// Original indices of the `m + 1` lightest columns.
    pub columns: Vec<usize>,
    pub construction: Construction,
    pub weight: usize,
}

/// Weight of the codeword built on the `m + 1` lightest columns (original
/// column order restored). `None` when the construction does not apply.
pub fn constructive_bound(em: &ExponentMatrix) -> Result<Option<ConstructiveBound>> {
    if em.n() < em.m() + 1 {
        return Ok(None);
    }
    let (_, perm) = em.weight_matrix().sort_columns_ascending();
    let columns = perm[..em.m() + 1].to_vec();
    let construction = match construct_nonzero_codeword(em, &columns) {
        Ok(c) => c,
        Err(Error::ZeroOnColumns) => return Ok(None),
        Err(e) => return Err(e),
    };
    assert!(
        em.syndrome_consistency_check(&construction.word)?,
        "constructed word failed the syndrome check"
    );
    let weight = construction.word.weight();
    Ok(Some(ConstructiveBound {
        columns,
        construction,
        weight,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundSummary {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    pub design_rate: Ratio<i64>,
    pub base: MinDistance,
    /// `d * s`; `None` when `d` is unavailable.
    pub simple_bound: Option<u64>,
    pub det: Option<DetBoundReport>,
    pub constructive: Option<ConstructiveBound>,
    /// With `m` and `n` fixed the determinant bound is a constant in `s`,
    /// so linear growth of the distance in `N = ns` is ruled out.
    pub linear_growth_possible: bool,
    pub warnings: Vec<String>,
}

/// Bounds that need only the weight matrix and the circulant size.
pub fn summarize_weights(wm: &WeightMatrix, s: usize) -> Result<BoundSummary> {
    let mut warnings = Vec::new();

    let base = base_distance(wm)?;
    let simple_bound = match &base {
        MinDistance::Exact { distance, .. } => Some(simple_bound(wm, s, *distance)?),
        MinDistance::Undefined => {
            warnings.push("base code is {0}; d*s bound unavailable".into());
            None
        }
        MinDistance::Infeasible { .. } => {
            warnings.push(format!(
                "base code has more than {MAX_BASE_COLUMNS} columns; d*s bound unavailable"
            ));
            None
        }
    };

    let det = match det_bound(wm) {
        Ok(r) => Some(r),
        Err(e @ (Error::TooFewColumns { .. } | Error::ZeroWeightColumn { .. })) => {
            warnings.push(format!("determinant bound unavailable: {e}"));
            None
        }
        Err(e) => return Err(e),
    };

    Ok(BoundSummary {
        m: wm.m(),
        n: wm.n(),
        s,
        design_rate: wm.design_rate(),
        base,
        simple_bound,
        det,
        constructive: None,
        linear_growth_possible: false,
        warnings,
    })
}

/// All bounds for a concrete code, including the constructed codeword.
pub fn summarize(em: &ExponentMatrix) -> Result<BoundSummary> {
    let mut summary = summarize_weights(&em.weight_matrix(), em.s())?;
    summary.constructive = constructive_bound(em)?;
    Ok(summary)
}

/// Nonnegative integer that serializes as a JSON number when it fits in
/// `u64` and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Count(pub BigUint);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => serializer.serialize_u64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleField {
    Value(u64),
    Unavailable,
}

impl Serialize for SimpleField {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SimpleField::Value(v) => serializer.serialize_u64(*v),
            SimpleField::Unavailable => serializer.serialize_str("UNAVAILABLE"),
        }
    }
}

/// Flat report written by the `bounds` command.
#[derive(Clone, Debug, PartialEq, Eq, DeriveSerialize)]
pub struct BoundReport {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    #[serde(rename = "N")]
    pub length: usize,
    pub design_rate: String,
    pub d_base: Option<usize>,
    pub bound_simple: SimpleField,
    pub bound_det_product: Option<Count>,
    pub bound_det_mean: Option<Count>,
    pub bound_det_mean_exact: Option<String>,
    pub bound_constructive: Option<usize>,
    pub k: Option<usize>,
    pub ell_num: Option<u64>,
    pub ell_den: Option<u64>,
    pub linear_growth_possible: bool,
}

impl From<&BoundSummary> for BoundReport {
    fn from(s: &BoundSummary) -> Self {
        let det = s.det.as_ref();
        BoundReport {
            m: s.m,
            n: s.n,
            s: s.s,
            length: s.n * s.s,
            design_rate: s.design_rate.to_string(),
            d_base: s.base.distance(),
            bound_simple: s
                .simple_bound
                .map_or(SimpleField::Unavailable, SimpleField::Value),
            bound_det_product: det.map(|d| Count(d.product_bound.clone())),
            bound_det_mean: det.map(|d| Count(d.mean_bound_ceil())),
            bound_det_mean_exact: det.map(|d| d.mean_bound.to_string()),
            bound_constructive: s.constructive.as_ref().map(|c| c.weight),
            k: det.map(|d| d.k),
            ell_num: det.and_then(|d| d.ell).map(|e| *e.numer()),
            ell_den: det.and_then(|d| d.ell).map(|e| *e.denom()),
            linear_growth_possible: s.linear_growth_possible,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{det, lemma_codeword};
    use crate::sample;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn small_code() -> ExponentMatrix {
        ExponentMatrix::new(
            3,
            &[vec![None, Some(2), Some(1)], vec![Some(0), None, Some(2)]],
        )
        .unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn simple_bounds() {
        let wm = small_code().weight_matrix();
        assert_eq!(simple_bound(&wm, 3, 3).unwrap(), 9);
        assert_eq!(simple_bound(&wm, 128, 3).unwrap(), 384);
        assert_eq!(simple_bound(&wm, 7, 1).unwrap(), 7);
        assert_eq!(
            simple_bound(&wm, 7, 0).unwrap_err(),
            Error::TrivialBaseCode(0)
        );
    }

    #[test]
    fn base_distance_of_small_code() {
        let wm = small_code().weight_matrix();
        assert_eq!(base_distance(&wm).unwrap().distance(), Some(3));
    }

    #[test]
    fn det_bound_examples() {
        let all_ones = det_bound(&WeightMatrix::all_ones(3, 5).unwrap()).unwrap();
        assert_eq!(all_ones.k, 3);
        assert_eq!(all_ones.ell, None);
        assert_eq!(all_ones.product_bound, big(24));
        assert_eq!(all_ones.mean_bound_ceil(), big(24));

        let regular = WeightMatrix::from_column_weights(4, &[2; 6]).unwrap();
        let r = det_bound(&regular).unwrap();
        assert_eq!((r.k, r.ell), (2, Some(Ratio::from_integer(2))));
        assert_eq!(r.product_bound, big(40));
        assert_eq!(r.mean_bound_ceil(), big(40));

        let mixed = WeightMatrix::from_column_weights(4, &[3, 2, 3, 2, 3]).unwrap();
        let r = det_bound(&mixed).unwrap();
        assert_eq!(r.sorted_weights, vec![2, 2, 3, 3, 3]);
        assert_eq!((r.k, r.ell), (3, Some(Ratio::from_integer(2))));
        assert_eq!(r.product_bound, big(60));
        // cross-check k against a full scan
        let scan: Vec<usize> = (1..=4)
            .filter(|&k| r.sorted_weights[4 + 1 - k] >= k)
            .collect();
        assert_eq!(scan.iter().max(), Some(&3));

        let ex1 = det_bound(&small_code().weight_matrix()).unwrap();
        assert_eq!(ex1.sorted_weights, vec![1, 1, 2]);
        assert_eq!((ex1.k, ex1.ell), (1, Some(Ratio::from_integer(1))));
        assert_eq!(ex1.product_bound, big(3));
    }

    #[test]
    fn det_bound_mean_form_rounds_up() {
        // m = 6, sorted weights (1, 2, 3, 3, 3, 3, 3): k = 3, l = (2 + 3 + 3) / 3
        let wm = WeightMatrix::from_column_weights(6, &[3, 1, 3, 2, 3, 3, 3]).unwrap();
        let r = det_bound(&wm).unwrap();
        assert_eq!(r.k, 3);
        assert_eq!(r.ell, Some(Ratio::new(8, 3)));
        assert_eq!(r.product_bound, big(7 * 6 * 2 * 3 * 3));
        assert_eq!(r.mean_bound, BigRational::new(7168.into(), 9.into()));
        assert_eq!(r.mean_bound_ceil(), big(797));
    }

    #[test]
    fn det_bound_errors() {
        assert_eq!(
            det_bound(&WeightMatrix::all_ones(3, 3).unwrap()).unwrap_err(),
            Error::TooFewColumns { m: 3, n: 3 }
        );
        let zero_col = WeightMatrix::from_rows(&[vec![1, 0, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(
            det_bound(&zero_col).unwrap_err(),
            Error::ZeroWeightColumn { column: 1 }
        );
    }

    #[test]
    fn constructive_examples() {
        let c = constructive_bound(&small_code()).unwrap().unwrap();
        assert_eq!(c.weight, 3);
        assert_eq!(c.columns, vec![0, 1, 2]);

        let narrow = ExponentMatrix::new(3, &[vec![Some(1)]]).unwrap();
        assert_eq!(constructive_bound(&narrow).unwrap(), None);
    }

    #[test]
    fn lifted_base_codewords() {
        let wm = small_code().weight_matrix();
        let base = BinaryVector::from_bits([true, true, true]);
        let w = lifted_base_codeword(&wm, &base, 3).unwrap();
        assert_eq!(w.weight(), 9);
        assert!(small_code().syndrome_consistency_check(&w).unwrap());

        let with_zero_col = WeightMatrix::from_rows(&[vec![1, 0, 1]]).unwrap();
        let w = lifted_base_codeword(
            &with_zero_col,
            &BinaryVector::from_bits([false, true, false]),
            4,
        )
        .unwrap();
        assert_eq!(w.weight(), 4);

        let w = lifted_base_codeword(&wm, &base, 1).unwrap();
        assert_eq!(w.flatten(), base);

        assert_eq!(
            lifted_base_codeword(&wm, &BinaryVector::from_bits([true, false, false]), 3)
                .unwrap_err(),
            Error::NotBaseCodeword
        );
    }

    #[test]
    fn summary_of_small_code() {
        let s = summarize(&small_code()).unwrap();
        let report = BoundReport::from(&s);
        assert_eq!(report.bound_simple, SimpleField::Value(9));
        assert_eq!(report.bound_det_product, Some(Count(big(3))));
        assert_eq!(report.bound_det_mean, Some(Count(big(3))));
        assert_eq!(report.bound_constructive, Some(3));
        assert_eq!(report.d_base, Some(3));
        assert_eq!(report.design_rate, "1/3");
        assert!(!report.linear_growth_possible);

        let json = serde_json::to_value(&report).unwrap();
        for key in [
            "m",
            "n",
            "s",
            "N",
            "design_rate",
            "d_base",
            "bound_simple",
            "bound_det_product",
            "bound_det_mean",
            "bound_constructive",
            "k",
            "ell_num",
            "ell_den",
            "linear_growth_possible",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["N"], 9);
    }

    #[test]
    fn summary_without_det_columns() {
        let em = ExponentMatrix::new(5, &[vec![Some(0), Some(1)], vec![Some(2), None]]).unwrap();
        let s = summarize(&em).unwrap();
        assert!(s.det.is_none());
        assert!(s.constructive.is_none());
        assert!(!s.warnings.is_empty());
        let json = serde_json::to_value(BoundReport::from(&s)).unwrap();
        assert!(json["bound_det_product"].is_null());
        assert_eq!(json["bound_simple"], "UNAVAILABLE");
    }

    #[test]
    fn all_ones_summary_is_factorial() {
        let em = ExponentMatrix::random_lift(
            &WeightMatrix::all_ones(2, 3).unwrap(),
            5,
            &mut ChaCha8Rng::seed_from_u64(1),
        )
        .unwrap();
        let report = BoundReport::from(&summarize(&em).unwrap());
        assert_eq!(report.bound_det_mean, Some(Count(big(6))));
    }

    #[test]
    fn det_bound_depends_only_on_weight_multiset() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let em = sample::random_instance(&mut rng, 2..=5, 1..=4, 2..=2, 0.5);
            let wm = em.weight_matrix();
            let Ok(r) = det_bound(&wm) else { continue };
            let mut rows = wm.as_binary().to_rows();
            rows.shuffle(&mut rng);
            let mut perm: Vec<usize> = (0..wm.n()).collect();
            perm.shuffle(&mut rng);
            let shuffled = WeightMatrix::from_rows(&rows)
                .unwrap()
                .as_binary()
                .permute_columns(&perm);
            let r2 = det_bound(&WeightMatrix::new(shuffled).unwrap()).unwrap();
            assert_eq!(
                (r.k, r.ell, &r.product_bound),
                (r2.k, r2.ell, &r2.product_bound)
            );
        }
    }

    #[test]
    fn cofactor_term_count_bound() {
        // every cofactor on the lightest m + 1 columns has at most
        // k! * prod l_j terms
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let em = sample::random_instance(&mut rng, 1..=4, 1..=3, 2..=16, 0.6);
            let r = det_bound(&em.weight_matrix()).unwrap();
            let per_block = &r.product_bound / BigUint::from(em.m() as u64 + 1);
            let j = &r.permutation[..em.m() + 1];
            let c = lemma_codeword(&em, j).unwrap();
            for b in c.blocks() {
                assert!(BigUint::from(b.weight() as u64) <= per_block);
            }
            let h_j = em.column_submatrix(j).unwrap();
            let rows: Vec<usize> = (0..em.m()).collect();
            let cols: Vec<usize> = (1..=em.m()).collect();
            let first = det(&h_j.submatrix(&rows, &cols).unwrap()).unwrap();
            assert_eq!(first, c.blocks()[j[0]]);
        }
    }

    #[test]
    fn k_matches_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let m = rng.gen_range(1..=8);
            let n = m + rng.gen_range(1..=5);
            let mut l: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=m)).collect();
            l.sort_unstable();
            let scan = (1..=m).filter(|&k| l[m + 1 - k] >= k).max();
            assert_eq!(largest_k(&l, m), scan);
        }
    }

    #[test]
    fn bounds_versus_s() {
        let wm = WeightMatrix::from_rows(&[vec![1, 1, 0, 1], vec![0, 1, 1, 1]]).unwrap();
        let d = base_distance(&wm).unwrap().distance().unwrap();
        let det0 = det_bound(&wm).unwrap();
        for s in [4usize, 8, 16, 32] {
            assert_eq!(simple_bound(&wm, s, d).unwrap(), (d * s) as u64);
            let em = ExponentMatrix::random_lift(&wm, s, &mut ChaCha8Rng::seed_from_u64(s as u64))
                .unwrap();
            assert_eq!(det_bound(&em.weight_matrix()).unwrap(), det0);
        }
    }
}
