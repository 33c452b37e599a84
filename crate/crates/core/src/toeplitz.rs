//! Lower-triangular Toeplitz matrices, minor indexing and superregularity.
//!
//! A matrix of order gamma is determined by its first column
//! `(a_1, ..., a_gamma)`: entry `(i, j)` is `a_{i-j+1}` on and below the
//! diagonal and `0` above it. A minor is *trivial* when every term of its
//! Leibniz expansion is forced to zero by that support; the matrix is
//! superregular when every non-trivial minor is nonzero.
//!
//! For row set `i_1 < ... < i_k` and column set `j_1 < ... < j_k`, a minor
//! is non-trivial exactly when `j_l <= i_l` for all `l`. This combinatorial
//! shortcut is validated against a bipartite-matching oracle in the test
//! suite rather than assumed.

use crate::error::{Error, Result};
use crate::prime_field::{inv_mod, mul_mod, sub_mod, FieldElement, PrimeField};
use serde::{Deserialize, Serialize};
use std::ops::ControlFlow;

/// Row and column index sets (1-based, strictly increasing) selecting a
/// square submatrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinorIndex {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::InvalidMinor(format!(
                "index lists must be nonempty and of equal length (got {} and {})",
                rows.len(),
                cols.len()
            )));
        }
        for list in [&rows, &cols] {
            if list[0] == 0 || !list.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::InvalidMinor(
                    "indices must be 1-based and strictly increasing".into(),
                ));
            }
        }
        Ok(MinorIndex { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn max_index(&self) -> usize {
        *self.rows.last().unwrap().max(self.cols.last().unwrap())
    }

    /// True when some Leibniz term survives the lower-triangular support,
    /// i.e. `j_l <= i_l` for every position.
    pub fn is_nontrivial(&self) -> bool {
        self.rows.iter().zip(&self.cols).all(|(i, j)| j <= i)
    }

    /// True when the selected submatrix of the generic Toeplitz matrix is
    /// symmetric over its antidiagonal: reflecting position `(l, m)` to
    /// `(k+1-m, k+1-l)` leaves the pattern of indeterminates unchanged.
    pub fn is_antidiag_symmetric(&self) -> bool {
        let k = self.size();
        for l in 0..k {
            for m in 0..k {
                let a = self.rows[l] as i64 - self.cols[m] as i64;
                let b = self.rows[k - 1 - m] as i64 - self.cols[k - 1 - l] as i64;
                if a != b {
                    return false;
                }
            }
        }
        true
    }

    /// The complementary index pair with the last row and first column
    /// removed. `None` for 1x1 minors.
    pub fn complement_last_first(&self) -> Option<MinorIndex> {
        if self.size() == 1 {
            return None;
        }
        Some(MinorIndex {
            rows: self.rows[..self.size() - 1].to_vec(),
            cols: self.cols[1..].to_vec(),
        })
    }
}

/// Outcome of a superregularity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperregularityReport {
    pub verdict: bool,
    /// Non-trivial minors evaluated before the verdict was reached.
    pub checked_minors: u64,
    /// First minor (in enumeration order) whose determinant vanished.
    pub first_failure: Option<MinorIndex>,
}

/// A gamma x gamma lower-triangular Toeplitz matrix over a prime field,
/// stored as its first column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToeplitzLT {
    field: PrimeField,
    entries: Vec<FieldElement>,
}

impl ToeplitzLT {
    pub fn new(field: PrimeField, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidMinor("matrix order must be at least 1".into()));
        }
        if entries.iter().any(|e| e.modulus() != field.modulus()) {
            return Err(Error::InvalidMinor(
                "entries must belong to the matrix field".into(),
            ));
        }
        Ok(ToeplitzLT { field, entries })
    }

    /// Builds the matrix from canonical integer values.
    pub fn from_values(field: PrimeField, values: &[u64]) -> Result<Self> {
        Self::new(field, values.iter().map(|&v| field.element(v)).collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn gamma(&self) -> usize {
        self.entries.len()
    }

    /// First column `(a_1, ..., a_gamma)`.
    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn values(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.value()).collect()
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> Result<FieldElement> {
        let gamma = self.gamma();
        for idx in [i, j] {
            if idx == 0 || idx > gamma {
                return Err(Error::IndexOutOfRange { index: idx, gamma });
            }
        }
        Ok(if i >= j {
            self.entries[i - j]
        } else {
            self.field.zero()
        })
    }

    /// Exact determinant of the selected submatrix.
    pub fn det(&self, idx: &MinorIndex) -> Result<FieldElement> {
        let gamma = self.gamma();
        if idx.max_index() > gamma {
            return Err(Error::IndexOutOfRange {
                index: idx.max_index(),
                gamma,
            });
        }
        let vals = self.values();
        let d = det_from_first_column(&vals, self.field.modulus(), &idx.rows, &idx.cols);
        Ok(self.field.element(d))
    }

    /// Diagonal scaling: first column becomes `(a_1, alpha a_2, ...,
    /// alpha^(gamma-1) a_gamma)`. Preserves superregularity for alpha != 0.
    pub fn scale(&self, alpha: FieldElement) -> Result<ToeplitzLT> {
        if alpha.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let mut power = self.field.one();
        let entries = self
            .entries
            .iter()
            .map(|&a| {
                let e = a * power;
                power = power * alpha;
                e
            })
            .collect();
        ToeplitzLT::new(self.field, entries)
    }

    /// Checks every non-trivial minor, in size-then-lexicographic order.
    pub fn is_superregular(&self) -> SuperregularityReport {
        let vals = self.values();
        let p = self.field.modulus();
        let mut checked = 0u64;
        let mut failure = None;
        for_each_nontrivial_minor(self.gamma(), |rows, cols| {
            checked += 1;
            if det_from_first_column(&vals, p, rows, cols) == 0 {
                failure = Some(MinorIndex {
                    rows: rows.to_vec(),
                    cols: cols.to_vec(),
                });
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        SuperregularityReport {
            verdict: failure.is_none(),
            checked_minors: checked,
            first_failure: failure,
        }
    }

    /// Same verdict as [`is_superregular`](Self::is_superregular), but checks,
    /// for each leading principal submatrix of order k, only the non-trivial
    /// minors that use row k and column 1. Every other non-trivial minor is a
    /// translate of one of these, so the verdicts agree; the test suite pins
    /// that equivalence instead of assuming it.
    pub fn is_superregular_incremental(&self) -> SuperregularityReport {
        let vals = self.values();
        let p = self.field.modulus();
        let mut checked = 0u64;
        let mut failure = None;
        'levels: for k in 1..=self.gamma() {
            let mut result = ControlFlow::Continue(());
            for_each_corner_minor(k, |rows, cols| {
                checked += 1;
                if det_from_first_column(&vals, p, rows, cols) == 0 {
                    failure = Some(MinorIndex {
                        rows: rows.to_vec(),
                        cols: cols.to_vec(),
                    });
                    result = ControlFlow::Break(());
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if result.is_break() {
                break 'levels;
            }
        }
        SuperregularityReport {
            verdict: failure.is_none(),
            checked_minors: checked,
            first_failure: failure,
        }
    }

    /// Weight bound for one linear combination of columns.
    ///
    /// `coeffs` selects N distinct columns (0-based, as positions in
    /// `b_0 ... b_{gamma-1}`) with nonzero coefficients; returns whether the
    /// Hamming weight of the combination is at least `(gamma - i_1) - N + 1`.
    pub fn column_weight_check(&self, coeffs: &[(usize, FieldElement)]) -> Result<bool> {
        let gamma = self.gamma();
        if coeffs.is_empty() {
            return Err(Error::InvalidMinor("empty column selection".into()));
        }
        if !coeffs.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::InvalidMinor(
                "column indices must be strictly increasing".into(),
            ));
        }
        if coeffs.last().unwrap().0 >= gamma {
            return Err(Error::IndexOutOfRange {
                index: coeffs.last().unwrap().0,
                gamma,
            });
        }
        if coeffs.iter().any(|(_, c)| c.is_zero()) {
            return Err(Error::InvalidMinor("coefficients must be nonzero".into()));
        }
        let p = self.field.modulus();
        let vals = self.values();
        let mut weight = 0usize;
        for row in 1..=gamma {
            let mut acc = 0u64;
            for &(col0, c) in coeffs {
                let j = col0 + 1;
                if row >= j {
                    acc = (acc + mul_mod(c.value(), vals[row - j], p)) % p;
                }
            }
            if acc != 0 {
                weight += 1;
            }
        }
        let n = gamma;
        let i1 = coeffs[0].0;
        let bound = (n - i1) as i64 - coeffs.len() as i64 + 1;
        Ok(weight as i64 >= bound)
    }
}

/// Determinant of the `(rows, cols)` submatrix of the lower-triangular
/// Toeplitz matrix with the given first column, by Gaussian elimination.
pub(crate) fn det_from_first_column(first_col: &[u64], p: u64, rows: &[usize], cols: &[usize]) -> u64 {
    let k = rows.len();
    debug_assert_eq!(k, cols.len());
    let mut m = [0u64; 100];
    debug_assert!(k <= 10);
    for (l, &i) in rows.iter().enumerate() {
        for (c, &j) in cols.iter().enumerate() {
            m[l * k + c] = if i >= j { first_col[i - j] } else { 0 };
        }
    }
    det_in_place(&mut m[..k * k], k, p)
}

pub(crate) fn det_in_place(m: &mut [u64], k: usize, p: u64) -> u64 {
    let mut det = 1u64;
    let mut negate = false;
    for col in 0..k {
        let pivot_row = match (col..k).find(|&r| m[r * k + col] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot_row != col {
            for c in col..k {
                m.swap(pivot_row * k + c, col * k + c);
            }
            negate = !negate;
        }
        let pivot = m[col * k + col];
        det = mul_mod(det, pivot, p);
        let inv = inv_mod(pivot, p).expect("nonzero pivot in a prime field");
        for r in col + 1..k {
            let factor = m[r * k + col];
            if factor == 0 {
                continue;
            }
            let scale = mul_mod(factor, inv, p);
            for c in col..k {
                let sub = mul_mod(scale, m[col * k + c], p);
                m[r * k + c] = sub_mod(m[r * k + c], sub, p);
            }
        }
    }
    if negate {
        sub_mod(0, det, p)
    } else {
        det
    }
}

/// Calls `f` for every non-trivial minor index of an order-gamma matrix,
/// sizes ascending and row/column sets in lexicographic order within a size.
pub(crate) fn for_each_nontrivial_minor<F>(gamma: usize, mut f: F)
where
    F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
{
    let mut rows = Vec::with_capacity(gamma);
    let mut cols = Vec::with_capacity(gamma);
    for k in 1..=gamma {
        if rows_rec(gamma, k, 1, &mut rows, &mut cols, &mut f).is_break() {
            return;
        }
    }
}

fn rows_rec<F>(
    gamma: usize,
    k: usize,
    min: usize,
    rows: &mut Vec<usize>,
    cols: &mut Vec<usize>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
{
    if rows.len() == k {
        return cols_rec(gamma, k, 1, rows, cols, f);
    }
    let remaining = k - rows.len();
    for i in min..=gamma + 1 - remaining {
        rows.push(i);
        let r = rows_rec(gamma, k, i + 1, rows, cols, f);
        rows.pop();
        r?;
    }
    ControlFlow::Continue(())
}

fn cols_rec<F>(
    gamma: usize,
    k: usize,
    min: usize,
    rows: &[usize],
    cols: &mut Vec<usize>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
{
    if cols.len() == k {
        return f(rows, cols);
    }
    let l = cols.len();
    let remaining = k - l - 1;
    // Dominance j_l <= i_l keeps the minor non-trivial.
    let hi = rows[l].min(gamma - remaining);
    for j in min..=hi {
        cols.push(j);
        let r = cols_rec(gamma, k, j + 1, rows, cols, f);
        cols.pop();
        r?;
    }
    ControlFlow::Continue(())
}

/// Calls `f` for every non-trivial minor of the order-k leading principal
/// submatrix that uses row k and column 1 (the "new" minors at level k).
pub(crate) fn for_each_corner_minor<F>(k: usize, mut f: F)
where
    F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
{
    for size in 1..=k {
        let mut rows = Vec::with_capacity(size);
        let mut cols = Vec::with_capacity(size);
        if corner_rows_rec(k, size, 1, &mut rows, &mut cols, &mut f).is_break() {
            return;
        }
    }
}

fn corner_rows_rec<F>(
    k: usize,
    size: usize,
    min: usize,
    rows: &mut Vec<usize>,
    cols: &mut Vec<usize>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
{
    if rows.len() + 1 == size {
        rows.push(k);
        cols.push(1);
        let r = corner_cols_rec(k, size, 2, rows, cols, f);
        cols.pop();
        rows.pop();
        return r;
    }
    let remaining = size - 1 - rows.len();
    for i in min..=k - 1 - (remaining - 1) {
        rows.push(i);
        let r = corner_rows_rec(k, size, i + 1, rows, cols, f);
        rows.pop();
        r?;
    }
    ControlFlow::Continue(())
}

fn corner_cols_rec<F>(
    k: usize,
    size: usize,
    min: usize,
    rows: &[usize],
    cols: &mut Vec<usize>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
{
    if cols.len() == size {
        return f(rows, cols);
    }
    let l = cols.len();
    let remaining = size - l - 1;
    let hi = rows[l].min(k - remaining);
    for j in min..=hi {
        cols.push(j);
        let r = corner_cols_rec(k, size, j + 1, rows, cols, f);
        cols.pop();
        r?;
    }
    ControlFlow::Continue(())
}

/// Every non-trivial minor index of an order-gamma matrix, sizes ascending
/// and lexicographic within a size.
pub fn nontrivial_minors(gamma: usize) -> Vec<MinorIndex> {
    let mut out = Vec::new();
    for_each_nontrivial_minor(gamma, |rows, cols| {
        out.push(MinorIndex {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
        });
        ControlFlow::Continue(())
    });
    out
}

/// The minors whose determinant is linear in the last entry `a_gamma` with a
/// nonzero coefficient: non-trivial, containing row gamma and column 1, with
/// a non-trivial complement. There are Catalan(gamma - 1) of them.
pub fn minors_involving_last(gamma: usize) -> Vec<MinorIndex> {
    let mut out = Vec::new();
    for_each_corner_minor(gamma, |rows, cols| {
        let idx = MinorIndex {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
        };
        let complement_ok = match idx.complement_last_first() {
            None => true, // the 1x1 minor [a_gamma]
            Some(c) => c.is_nontrivial(),
        };
        if complement_ok {
            out.push(idx);
        }
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn matrix(p: u64, vals: &[u64]) -> ToeplitzLT {
        ToeplitzLT::from_values(field(p), vals).unwrap()
    }

    #[test]
    fn entry_layout() {
        let m = matrix(11, &[1, 2, 3, 4, 5]);
        assert_eq!(m.entry(4, 2).unwrap().value(), 3); // a_3
        assert_eq!(m.entry(2, 4).unwrap().value(), 0);
        assert_eq!(m.entry(5, 1).unwrap().value(), 5); // a_gamma at (gamma, 1)
        assert!(m.entry(0, 1).is_err());
        assert!(m.entry(1, 6).is_err());
    }

    #[test]
    fn nontriviality_fast_path() {
        let t = MinorIndex::new(vec![3, 4], vec![1, 3]).unwrap();
        assert!(t.is_nontrivial());
        let t = MinorIndex::new(vec![1, 2], vec![2, 3]).unwrap();
        assert!(!t.is_nontrivial());
        let t = MinorIndex::new(vec![1, 2, 3, 4], vec![1, 2, 3, 4]).unwrap();
        assert!(t.is_nontrivial());
    }

    #[test]
    fn small_determinants() {
        let m = matrix(7, &[1, 1, 3, 5]);
        let idx = MinorIndex::new(vec![2, 4], vec![1, 2]).unwrap();
        // det [[1,1],[5,3]] = 3 - 5 = -2 = 5 over F_7
        assert_eq!(m.det(&idx).unwrap().value(), 5);
        // trivial minor evaluates to zero
        let t = MinorIndex::new(vec![1, 2], vec![2, 3]).unwrap();
        assert_eq!(m.det(&t).unwrap().value(), 0);
        // full determinant of a unit-diagonal matrix
        let full = MinorIndex::new(vec![1, 2, 3, 4], vec![1, 2, 3, 4]).unwrap();
        assert_eq!(m.det(&full).unwrap().value(), 1);
    }

    #[test]
    fn minor_stream_counts() {
        assert_eq!(nontrivial_minors(2).len(), 4);
        assert_eq!(nontrivial_minors(3).len(), 13);
        assert!(nontrivial_minors(8).iter().all(|m| m.is_nontrivial()));
        let g2: Vec<_> = nontrivial_minors(2)
            .into_iter()
            .map(|m| (m.rows, m.cols))
            .collect();
        assert_eq!(
            g2,
            vec![
                (vec![1], vec![1]),
                (vec![2], vec![1]),
                (vec![2], vec![2]),
                (vec![1, 2], vec![1, 2]),
            ]
        );
    }

    #[test]
    fn last_entry_minors() {
        let l3 = minors_involving_last(3);
        assert_eq!(
            l3.iter().map(|m| (&m.rows, &m.cols)).collect::<Vec<_>>(),
            vec![(&vec![3], &vec![1]), (&vec![2, 3], &vec![1, 2])]
        );
        assert_eq!(minors_involving_last(1).len(), 1);
        assert_eq!(minors_involving_last(4).len(), 5);
        // Catalan numbers through gamma = 10.
        let catalan = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for gamma in 1..=10 {
            assert_eq!(
                minors_involving_last(gamma).len() as u64,
                catalan[gamma - 1],
                "gamma={gamma}"
            );
        }
    }

    #[test]
    fn superregularity_known_cases() {
        let r = matrix(11, &[1, 1, 1]).is_superregular();
        assert!(!r.verdict);
        let failure = r.first_failure.unwrap();
        assert_eq!(failure.rows, vec![2, 3]);
        assert_eq!(failure.cols, vec![1, 2]);

        assert!(matrix(11, &[1, 1, 6, 1, 5, 4]).is_superregular().verdict);
        assert!(matrix(17, &[1, 1, 9, 3, 5, 1, 3]).is_superregular().verdict);
    }

    #[test]
    fn incremental_agrees_on_known_cases() {
        for (p, vals) in [
            (11u64, vec![1u64, 1, 6, 1, 5, 4]),
            (11, vec![1, 1, 1]),
            (17, vec![1, 1, 9, 3, 5, 1, 3]),
        ] {
            let m = matrix(p, &vals);
            assert_eq!(
                m.is_superregular().verdict,
                m.is_superregular_incremental().verdict
            );
        }
    }

    #[test]
    fn scaling() {
        let m = matrix(7, &[1, 1, 2]);
        let s = m.scale(field(7).element(3)).unwrap();
        assert_eq!(s.values(), vec![1, 3, 4]);
        let id = m.scale(field(7).one()).unwrap();
        assert_eq!(id.values(), m.values());
        assert_eq!(m.scale(field(7).zero()).unwrap_err(), Error::ZeroScalar);
    }

    #[test]
    fn column_weight_single_columns() {
        let m = matrix(11, &[1, 1, 6, 1, 5, 4]);
        let f = field(11);
        for col in 0..6 {
            assert!(m.column_weight_check(&[(col, f.one())]).unwrap());
        }
        // a_1 = 0 kills the single-column bound for column 0
        let z = matrix(11, &[0, 1, 1]);
        assert!(!z.column_weight_check(&[(0, f.one())]).unwrap());
    }
}
