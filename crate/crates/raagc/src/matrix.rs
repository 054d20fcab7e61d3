//! Exact sparse integer matrices: rank by fraction-free elimination and
//! torsion by Smith normal form. No floating point anywhere.
//!
//! Sized for cellular boundary matrices: very sparse, entries `+-1`, up to
//! a few thousand rows and columns. Columns are the unit of work because
//! boundary assembly and column reduction both touch one cell column at a
//! time.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

type Column = BTreeMap<usize, BigInt>;

/// Sparse integer matrix in column-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Column>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            columns: vec![Column::new(); cols],
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicate positions
    /// accumulate.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: &[(usize, usize, i64)],
    ) -> Result<Self> {
        let mut m = SparseIntMatrix::new(rows, cols);
        for &(r, c, v) in triplets {
            m.add_to(r, c, BigInt::from(v))?;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    /// Adds `delta` at `(r, c)`, dropping the entry if it cancels to zero.
    pub fn add_to(&mut self, r: usize, c: usize, delta: BigInt) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::validation(format!(
                "entry ({r}, {c}) outside {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let col = &mut self.columns[c];
        let v = col.entry(r).or_insert_with(BigInt::zero);
        *v += delta;
        if v.is_zero() {
            col.remove(&r);
        }
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.columns
            .get(c)
            .and_then(|col| col.get(&r))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out: Vec<(usize, usize, BigInt)> = Vec::with_capacity(self.nnz());
        for (c, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                out.push((r, c, v.clone()));
            }
        }
        out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// Matrix product `self * other`.
    pub fn multiply(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::validation(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = SparseIntMatrix::new(self.rows, other.cols);
        for (c, col) in other.columns.iter().enumerate() {
            let mut acc = Column::new();
            for (&mid, w) in col {
                for (&r, v) in &self.columns[mid] {
                    let e = acc.entry(r).or_insert_with(BigInt::zero);
                    *e += v * w;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.columns[c] = acc;
        }
        Ok(out)
    }

    /// Rank over the rationals by fraction-free column elimination.
    ///
    /// Each column is reduced against the pivots found so far: while its
    /// lowest nonzero entry sits in an already-pivoted row, cross-multiply
    /// the pivot column away and strip the gcd content. The lowest entry
    /// row strictly decreases, so each column settles or empties.
    pub fn rank(&self) -> usize {
        let mut pivots: BTreeMap<usize, Column> = BTreeMap::new();
        for col in &self.columns {
            let mut col = col.clone();
            loop {
                let Some((&r, _)) = col.iter().next_back() else {
                    break;
                };
                match pivots.get(&r) {
                    None => {
                        strip_content(&mut col);
                        pivots.insert(r, col);
                        break;
                    }
                    Some(p) => {
                        let pv = p[&r].clone();
                        let cv = col[&r].clone();
                        col = combine(&col, &pv, p, &cv);
                        strip_content(&mut col);
                    }
                }
            }
        }
        pivots.len()
    }

    /// Smith normal form invariants: the nonzero diagonal entries
    /// `d_1 | d_2 | ...`, all positive. Their count is the rank; entries
    /// greater than 1 are the torsion invariants of the cokernel.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        // Unit-pivot sweep on the sparse structure. With a +-1 pivot,
        // clearing the pivot row from the other columns leaves the pivot
        // column as the only column meeting that row, so the row operations
        // clearing the pivot column touch nothing else and the pivot
        // row/column pair can simply be deleted, contributing invariant 1.
        let mut cols: Vec<Column> = self.columns.iter().filter(|c| !c.is_empty()).cloned().collect();
        let mut units = 0usize;
        loop {
            let mut found = None;
            'scan: for (ci, col) in cols.iter().enumerate() {
                for (&r, v) in col {
                    if v.abs().is_one() {
                        found = Some((ci, r));
                        break 'scan;
                    }
                }
            }
            let Some((pc, pr)) = found else { break };
            let pivcol = cols[pc].clone();
            let pv = pivcol[&pr].clone();
            for (ci, col) in cols.iter_mut().enumerate() {
                if ci == pc {
                    continue;
                }
                if let Some(cv) = col.get(&pr).cloned() {
                    // q = cv / pv exactly, since pv is a unit.
                    let q = &cv * &pv;
                    for (&r, v) in &pivcol {
                        let e = col.entry(r).or_insert_with(BigInt::zero);
                        *e -= &q * v;
                        if e.is_zero() {
                            col.remove(&r);
                        }
                    }
                }
            }
            cols.remove(pc);
            cols.retain(|c| !c.is_empty());
            units += 1;
        }
        let mut invariants = vec![BigInt::one(); units];
        if !cols.is_empty() {
            invariants.extend(dense_smith(densify(&cols)));
        }
        invariants
    }

    /// Plain-text triplet dump: header `rows cols nnz`, then one
    /// `row col value` line per entry in row-major order.
    pub fn to_triplet_dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for (r, c, v) in self.entries() {
            out.push_str(&format!("{r} {c} {v}\n"));
        }
        out
    }
}

/// `pv * col - cv * p`; the shared lowest row cancels exactly.
fn combine(col: &Column, pv: &BigInt, p: &Column, cv: &BigInt) -> Column {
    let mut out = Column::new();
    for (&r, v) in col {
        out.insert(r, pv * v);
    }
    for (&r, w) in p {
        let e = out.entry(r).or_insert_with(BigInt::zero);
        *e -= cv * w;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Divides a column by the gcd of its entries to keep growth down.
fn strip_content(col: &mut Column) {
    let mut g = BigInt::zero();
    for v in col.values() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in col.values_mut() {
        *v = &*v / &g;
    }
}

/// Packs the remaining sparse columns into a dense matrix, renumbering the
/// occupied rows.
fn densify(cols: &[Column]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<usize> = cols.iter().flat_map(|c| c.keys().cloned()).collect();
    rows.sort_unstable();
    rows.dedup();
    let index: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
    for (c, col) in cols.iter().enumerate() {
        for (&r, v) in col {
            dense[index[&r]][c] = v.clone();
        }
    }
    dense
}

/// Textbook Smith elimination on a dense matrix; returns the nonzero
/// invariants in divisibility order. Only reached for the non-unit residue
/// left after the sparse sweep, which is small in every intended use.
fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut invariants = Vec::new();
    let mut top = 0;
    while top < rows && top < cols {
        // Move a nonzero entry of minimal magnitude to the corner.
        let mut best: Option<(usize, usize)> = None;
        for r in top..rows {
            for c in top..cols {
                if a[r][c].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some((r, c)),
                    Some((br, bc)) => {
                        if a[r][c].abs() < a[br][bc].abs() {
                            Some((r, c))
                        } else {
                            Some((br, bc))
                        }
                    }
                };
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(top, pr);
        for row in a.iter_mut() {
            row.swap(top, pc);
        }
        'reduce: loop {
            // Clear the pivot column with Euclid steps; a nonzero remainder
            // is strictly smaller than the pivot and becomes the new pivot.
            for r in top + 1..rows {
                if a[r][top].is_zero() {
                    continue;
                }
                let q = &a[r][top] / &a[top][top];
                if !q.is_zero() {
                    for c in top..cols {
                        let t = &a[top][c] * &q;
                        a[r][c] -= t;
                    }
                }
                if !a[r][top].is_zero() {
                    a.swap(top, r);
                    continue 'reduce;
                }
            }
            // Same for the pivot row.
            for c in top + 1..cols {
                if a[top][c].is_zero() {
                    continue;
                }
                let q = &a[top][c] / &a[top][top];
                if !q.is_zero() {
                    for r in top..rows {
                        let t = &a[r][top] * &q;
                        a[r][c] -= t;
                    }
                }
                if !a[top][c].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(top, c);
                    }
                    continue 'reduce;
                }
            }
            // Row and column clear. The pivot must divide the rest of the
            // submatrix; if not, pull the offending row up and retry, which
            // strictly shrinks the eventual pivot.
            let p = a[top][top].clone();
            let mut offender = None;
            'find: for r in top + 1..rows {
                for c in top + 1..cols {
                    if !(&a[r][c] % &p).is_zero() {
                        offender = Some(r);
                        break 'find;
                    }
                }
            }
            match offender {
                Some(r) => {
                    for c in top..cols {
                        let t = a[r][c].clone();
                        a[top][c] += t;
                    }
                    continue 'reduce;
                }
                None => break,
            }
        }
        invariants.push(a[top][top].abs());
        top += 1;
    }
    invariants
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> SparseIntMatrix {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut t = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    t.push((i, j, v));
                }
            }
        }
        SparseIntMatrix::from_triplets(r, c, &t).unwrap()
    }

    /// Rank oracle: size of the largest minor with nonzero determinant.
    fn rank_by_minors(m: &SparseIntMatrix) -> usize {
        let dense: Vec<Vec<BigInt>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
            .collect();
        fn det(a: &[Vec<BigInt>]) -> BigInt {
            let n = a.len();
            if n == 0 {
                return BigInt::one();
            }
            let mut total = BigInt::zero();
            for c in 0..n {
                if a[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &a[0][c] * det(&minor);
                if c % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
        fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
            crate::combinatorics::combinations(&(0..n).collect::<Vec<_>>(), k)
        }
        for size in (1..=m.rows().min(m.cols())).rev() {
            for rs in choose(m.rows(), size) {
                for cs in choose(m.cols(), size) {
                    let sub: Vec<Vec<BigInt>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| dense[r][c].clone()).collect())
                        .collect();
                    if !det(&sub).is_zero() {
                        return size;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rank_basic() {
        assert_eq!(from_dense(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(from_dense(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(SparseIntMatrix::new(3, 3).rank(), 0);
        assert_eq!(from_dense(&[&[2, 3, 5], &[4, 6, 10], &[1, 0, 1]]).rank(), 2);
    }

    #[test]
    fn rank_matches_minor_oracle_on_random_matrices() {
        let mut rng = crate::rng::SplitMix64::new(7);
        for _ in 0..25 {
            let rows = 1 + rng.below(4) as usize;
            let cols = 1 + rng.below(4) as usize;
            let mut t = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let v = rng.range_i64(-3, 3);
                    if v != 0 {
                        t.push((r, c, v));
                    }
                }
            }
            let m = SparseIntMatrix::from_triplets(rows, cols, &t).unwrap();
            assert_eq!(m.rank(), rank_by_minors(&m), "dump:\n{}", m.to_triplet_dump());
        }
    }

    #[test]
    fn smith_known_forms() {
        // diag(2, 4): gcd 2, determinant magnitude 8.
        let inv = from_dense(&[&[2, 4], &[6, 8]]).smith_invariants();
        assert_eq!(inv, vec![BigInt::from(2), BigInt::from(4)]);
        // Already diagonal but out of order.
        let inv = from_dense(&[&[6, 0], &[0, 4]]).smith_invariants();
        assert_eq!(inv, vec![BigInt::from(2), BigInt::from(12)]);
        // Multiplication-by-2 presentation of Z/2 plus a free row.
        let inv = from_dense(&[&[2], &[0]]).smith_invariants();
        assert_eq!(inv, vec![BigInt::from(2)]);
        // Unimodular.
        let inv = from_dense(&[&[1, 1], &[0, 1]]).smith_invariants();
        assert_eq!(inv, vec![BigInt::one(), BigInt::one()]);
        assert!(SparseIntMatrix::new(2, 2).smith_invariants().is_empty());
    }

    #[test]
    fn smith_divisibility_and_rank_consistency() {
        let mut rng = crate::rng::SplitMix64::new(11);
        for _ in 0..25 {
            let rows = 1 + rng.below(4) as usize;
            let cols = 1 + rng.below(4) as usize;
            let mut t = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let v = rng.range_i64(-4, 4);
                    if v != 0 {
                        t.push((r, c, v));
                    }
                }
            }
            let m = SparseIntMatrix::from_triplets(rows, cols, &t).unwrap();
            let inv = m.smith_invariants();
            assert_eq!(inv.len(), m.rank(), "dump:\n{}", m.to_triplet_dump());
            for w in inv.windows(2) {
                assert!(
                    (&w[1] % &w[0]).is_zero(),
                    "invariants not nested: {inv:?}\n{}",
                    m.to_triplet_dump()
                );
            }
            assert!(inv.iter().all(|d| d > &BigInt::zero()));
        }
    }

    #[test]
    fn smith_agrees_with_determinant_products() {
        // For square nonsingular matrices, d_1 * ... * d_n = |det|.
        let mut rng = crate::rng::SplitMix64::new(13);
        let mut checked = 0;
        while checked < 10 {
            let n = 2 + rng.below(2) as usize;
            let mut t = Vec::new();
            for r in 0..n {
                for c in 0..n {
                    let v = rng.range_i64(-3, 3);
                    if v != 0 {
                        t.push((r, c, v));
                    }
                }
            }
            let m = SparseIntMatrix::from_triplets(n, n, &t).unwrap();
            if m.rank() < n {
                continue;
            }
            checked += 1;
            let inv = m.smith_invariants();
            let prod: BigInt = inv.iter().product();
            let dense: Vec<Vec<BigInt>> = (0..n)
                .map(|r| (0..n).map(|c| m.get(r, c)).collect())
                .collect();
            fn det(a: &[Vec<BigInt>]) -> BigInt {
                let n = a.len();
                if n == 0 {
                    return BigInt::one();
                }
                let mut total = BigInt::zero();
                for c in 0..n {
                    if a[0][c].is_zero() {
                        continue;
                    }
                    let minor: Vec<Vec<BigInt>> = a[1..]
                        .iter()
                        .map(|row| {
                            row.iter()
                                .enumerate()
                                .filter(|&(j, _)| j != c)
                                .map(|(_, v)| v.clone())
                                .collect()
                        })
                        .collect();
                    let term = &a[0][c] * det(&minor);
                    if c % 2 == 0 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
                total
            }
            assert_eq!(prod, det(&dense).abs(), "dump:\n{}", m.to_triplet_dump());
        }
    }

    #[test]
    fn multiply_and_zero_check() {
        let a = from_dense(&[&[1, 2], &[3, 4]]);
        let b = from_dense(&[&[0, 1], &[1, 0]]);
        let ab = a.multiply(&b).unwrap();
        assert_eq!(ab, from_dense(&[&[2, 1], &[4, 3]]));
        assert!(a.multiply(&from_dense(&[&[0, 0], &[0, 0]])).unwrap().is_zero());
        assert!(a.multiply(&from_dense(&[&[1], &[2], &[3]])).is_err());
    }

    #[test]
    fn triplet_dump_format() {
        let m = from_dense(&[&[0, 5], &[-1, 0]]);
        assert_eq!(m.to_triplet_dump(), "2 2 2\n0 1 5\n1 0 -1\n");
    }

    #[test]
    fn add_to_cancels_entries() {
        let mut m = SparseIntMatrix::new(2, 2);
        m.add_to(0, 0, BigInt::from(3)).unwrap();
        m.add_to(0, 0, BigInt::from(-3)).unwrap();
        assert!(m.is_zero());
        assert_eq!(m.nnz(), 0);
        assert!(m.add_to(5, 0, BigInt::one()).is_err());
    }
}
