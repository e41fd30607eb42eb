//! Dense exact rational linear algebra: products, Kronecker products, rank,
//! nullspace and solving, plus a sparse row reducer for the large structured
//! systems that arise from commutant and prolongation constraints.
//!
//! Everything here is exact; no floating point.

use std::fmt;
use std::ops::{Index, IndexMut};

use num::{BigInt, One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Rational = num::BigRational;

/// Shorthand rational constructor.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self[(r, c)].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        RationalMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c));
        Self::from_fn(r, c, |i, j| rat(rows[i][j], 1))
    }

    pub fn column_vector(entries: Vec<Rational>) -> Self {
        let rows = entries.len();
        RationalMatrix {
            rows,
            cols: 1,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self[(r, c)].is_one()
                    } else {
                        self[(r, c)].is_zero()
                    }
                })
            })
    }

    /// Exact product; errors when the inner dimensions disagree.
    pub fn mat_mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(r, l)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(l, c)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(r, c)] += t;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Standard Kronecker product; `self` is the outer factor indexing blocks.
    pub fn kron(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] + &other[(r, c)])
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] - &other[(r, c)])
    }

    pub fn neg(&self) -> RationalMatrix {
        Self::from_fn(self.rows, self.cols, |r, c| -self[(r, c)].clone())
    }

    pub fn scale(&self, factor: &Rational) -> RationalMatrix {
        Self::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] * factor)
    }

    /// Matrix commutator [self, other].
    pub fn commutator(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        Ok(self.mat_mul(other)?.sub(&other.mat_mul(self)?))
    }

    /// Reduced row echelon form together with the pivot columns. Pivoting
    /// rule: first nonzero entry in column order, pivot rows normalized.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row >= m.rows {
                break;
            }
            let Some(pivot_row) = (next_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if pivot_row != next_row {
                for c in 0..m.cols {
                    let tmp = m[(pivot_row, c)].clone();
                    m[(pivot_row, c)] = m[(next_row, c)].clone();
                    m[(next_row, c)] = tmp;
                }
            }
            let inv = m[(next_row, col)].clone();
            for c in 0..m.cols {
                let v = m[(next_row, c)].clone() / inv.clone();
                m[(next_row, c)] = v;
            }
            for r in 0..m.rows {
                if r != next_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in 0..m.cols {
                        let v = m[(r, c)].clone() - &factor * &m[(next_row, c)];
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of the right kernel as column vectors; empty iff trivial.
    pub fn nullspace(&self) -> Vec<RationalMatrix> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -r[(row, free)].clone();
            }
            basis.push(RationalMatrix::column_vector(v));
        }
        basis
    }

    /// Exact solution of `self * x = rhs` (free variables set to zero), or
    /// `None` when inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows);
        let aug = RationalMatrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                rhs[r].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = red[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Exact least squares via the normal equations. Returns a minimizer and
    /// the squared residual; the residual is zero iff `rhs` is in the column
    /// span.
    pub fn least_squares(&self, rhs: &[Rational]) -> (Vec<Rational>, Rational) {
        assert_eq!(rhs.len(), self.rows);
        let at = self.transpose();
        let ata = at.mat_mul(self).expect("shapes agree by construction");
        let atb: Vec<Rational> = (0..self.cols)
            .map(|i| {
                (0..self.rows)
                    .map(|r| &self[(r, i)] * &rhs[r])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect();
        let x = ata
            .solve(&atb)
            .expect("normal equations are always consistent");
        let mut residual = Rational::zero();
        for r in 0..self.rows {
            let mut v = rhs[r].clone();
            for c in 0..self.cols {
                v -= &self[(r, c)] * &x[c];
            }
            residual += &v * &v;
        }
        (x, residual)
    }

    /// Signed-permutation view: for each column the unique nonzero row and
    /// its sign, provided every entry is in {-1, 0, +1} and the matrix is
    /// monomial. Used as a fast path for products of representation matrices.
    pub fn signed_permutation(&self) -> Option<(Vec<usize>, Vec<i8>)> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut to = vec![usize::MAX; n];
        let mut sign = vec![0i8; n];
        let mut row_used = vec![false; n];
        for c in 0..n {
            for r in 0..n {
                let e = &self[(r, c)];
                if e.is_zero() {
                    continue;
                }
                let s = if e.is_one() {
                    1i8
                } else if (-e).is_one() {
                    -1i8
                } else {
                    return None;
                };
                if to[c] != usize::MAX || row_used[r] {
                    return None;
                }
                to[c] = r;
                sign[c] = s;
                row_used[r] = true;
            }
            if to[c] == usize::MAX {
                return None;
            }
        }
        Some((to, sign))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| rational_to_f64(&self[(r, c)])).collect())
            .collect()
    }

    /// JSON wire format: entries row-major as ["num","den"] decimal strings.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| json!([e.numer().to_string(), e.denom().to_string()]))
            .collect();
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": entries,
        })
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // Good enough for the desk-scale magnitudes used here.
    let num = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let den = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    num / den
}

/// Sparse row vector, sorted by column.
pub(crate) type SparseVec = Vec<(usize, Rational)>;

pub(crate) fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| (i, e.clone()))
        .collect()
}

pub(crate) fn sparse_to_dense(v: &SparseVec, cols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); cols];
    for (i, e) in v {
        out[*i] = e.clone();
    }
    out
}

fn sparse_axpy(target: &mut SparseVec, factor: &Rational, source: &SparseVec) {
    // target += factor * source, merging sorted runs.
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        if j >= source.len() || (i < target.len() && target[i].0 < source[j].0) {
            out.push(target[i].clone());
            i += 1;
        } else if i >= target.len() || source[j].0 < target[i].0 {
            let v = factor * &source[j].1;
            if !v.is_zero() {
                out.push((source[j].0, v));
            }
            j += 1;
        } else {
            let v = &target[i].1 + factor * &source[j].1;
            if !v.is_zero() {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *target = out;
}

/// Incremental reduced row echelon form over sparse rows. Rows are inserted
/// one at a time; the pivot map stays fully reduced, so the kernel basis can
/// be read off directly. Deterministic: pivots are the first nonzero column.
pub(crate) struct SparseReducer {
    cols: usize,
    // pivot column -> normalized, fully reduced row with leading 1 there
    pivots: std::collections::BTreeMap<usize, SparseVec>,
}

impl SparseReducer {
    pub fn new(cols: usize) -> Self {
        SparseReducer {
            cols,
            pivots: std::collections::BTreeMap::new(),
        }
    }

    #[allow(dead_code)]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the current pivots without inserting. Pivot rows
    /// are fully reduced (zero at every other pivot column), so eliminating
    /// one pivot-column entry never reintroduces another.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        loop {
            let Some((col, coeff)) = row
                .iter()
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()))
            else {
                return row;
            };
            let factor = -coeff;
            let pivot = &self.pivots[&col];
            sparse_axpy(&mut row, &factor, pivot);
        }
    }

    /// Insert a row; returns true when the rank increased.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let mut row = self.reduce(row);
        let Some((lead, lead_val)) = row.first().cloned() else {
            return false;
        };
        let inv = Rational::one() / lead_val;
        for (_, v) in row.iter_mut() {
            *v = &*v * &inv;
        }
        // Keep existing pivot rows reduced against the new pivot.
        let cols_to_fix: Vec<usize> = self
            .pivots
            .iter()
            .filter(|(_, r)| r.iter().any(|(c, _)| *c == lead))
            .map(|(c, _)| *c)
            .collect();
        for c in cols_to_fix {
            let mut existing = self.pivots.remove(&c).unwrap();
            let coeff = existing
                .iter()
                .find(|(col, _)| *col == lead)
                .map(|(_, v)| v.clone())
                .unwrap();
            let factor = -coeff;
            sparse_axpy(&mut existing, &factor, &row);
            self.pivots.insert(c, existing);
        }
        self.pivots.insert(lead, row);
        true
    }

    /// True iff `row` lies in the row space accumulated so far.
    pub fn contains(&self, row: SparseVec) -> bool {
        self.reduce(row).is_empty()
    }

    /// Kernel basis of the matrix whose rows were inserted: one vector per
    /// free column, in ascending column order.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if self.pivots.contains_key(&free) {
                continue;
            }
            let mut v: SparseVec = Vec::new();
            for (&pcol, row) in &self.pivots {
                if let Some((_, coeff)) = row.iter().find(|(c, _)| *c == free) {
                    v.push((pcol, -coeff.clone()));
                }
            }
            v.push((free, Rational::one()));
            v.sort_by_key(|(c, _)| *c);
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Second, independent product implementation for cross-checking.
    fn naive_mul(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(a.rows(), b.cols());
        for r in 0..a.rows() {
            for c in 0..b.cols() {
                let mut acc = Rational::zero();
                for l in 0..a.cols() {
                    acc += &a[(r, l)] * &b[(l, c)];
                }
                out[(r, c)] = acc;
            }
        }
        out
    }

    /// Independent rank: forward elimination without normalization,
    /// counting nonzero rows.
    fn rank_by_forward_elimination(m: &RationalMatrix) -> usize {
        let mut rows: Vec<Vec<Rational>> =
            (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            for r in rank + 1..rows.len() {
                if !rows[r][col].is_zero() {
                    let factor = &rows[r][col] / &rows[rank][col];
                    for c in col..m.cols() {
                        let v = &rows[r][c] - &factor * &rows[rank][c];
                        rows[r][c] = v;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    #[test]
    fn identity_is_neutral() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        let id = RationalMatrix::identity(2);
        assert_eq!(id.mat_mul(&a).unwrap(), a);
    }

    #[test]
    fn product_of_cl20_generators() {
        // I1 * I2 = I3 entry-for-entry, matrices from the 4x4 reference
        // representation of Cl(2,0).
        let i1 = RationalMatrix::from_i64_rows(&[
            &[0, -1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, 1, 0],
        ]);
        let i2 = RationalMatrix::from_i64_rows(&[
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
        ]);
        let i3 = RationalMatrix::from_i64_rows(&[
            &[0, 0, 0, -1],
            &[0, 0, -1, 0],
            &[0, 1, 0, 0],
            &[1, 0, 0, 0],
        ]);
        assert_eq!(i1.mat_mul(&i2).unwrap(), i3);
    }

    #[test]
    fn mat_mul_matches_naive_triple_loop() {
        let a = RationalMatrix::from_fn(3, 3, |r, c| rat((r * 7 + c * 3) as i64 % 5 - 2, 1 + c as i64));
        let b = RationalMatrix::from_fn(3, 3, |r, c| rat((r * 2 + c * 5) as i64 % 7 - 3, 1 + r as i64));
        assert_eq!(a.mat_mul(&b).unwrap(), naive_mul(&a, &b));
    }

    #[test]
    fn mat_mul_rejects_bad_shapes() {
        let a = RationalMatrix::zeros(2, 3);
        let b = RationalMatrix::zeros(2, 3);
        assert!(a.mat_mul(&b).is_err());
    }

    #[test]
    fn kron_identity_gives_block_diagonal() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let k = RationalMatrix::identity(2).kron(&m);
        assert_eq!(
            k,
            RationalMatrix::from_i64_rows(&[
                &[1, 2, 0, 0],
                &[3, 4, 0, 0],
                &[0, 0, 1, 2],
                &[0, 0, 3, 4],
            ])
        );
    }

    #[test]
    fn kron_rotation_with_i3_gives_off_diagonal_blocks() {
        let rot = RationalMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        let i3 = RationalMatrix::from_i64_rows(&[
            &[0, 0, 0, -1],
            &[0, 0, -1, 0],
            &[0, 1, 0, 0],
            &[1, 0, 0, 0],
        ]);
        let k = rot.kron(&i3);
        // Top-right block is I3, bottom-left is -I3.
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(k[(r, c + 4)], i3[(r, c)]);
                assert_eq!(k[(r + 4, c)], -i3[(r, c)].clone());
                assert!(k[(r, c)].is_zero());
                assert!(k[(r + 4, c + 4)].is_zero());
            }
        }
    }

    #[test]
    fn kron_is_associative() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 2], &[0, -1]]);
        let b = RationalMatrix::from_i64_rows(&[&[3], &[1]]);
        let c = RationalMatrix::from_i64_rows(&[&[1, -1, 2]]);
        assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
    }

    #[test]
    fn kron_mixed_product_identity() {
        let a = RationalMatrix::from_i64_rows(&[&[1, -2], &[0, 3]]);
        let b = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let c = RationalMatrix::from_i64_rows(&[&[0, 1], &[5, -1]]);
        let d = RationalMatrix::from_i64_rows(&[&[1, 1], &[2, -3]]);
        let lhs = a.kron(&b).mat_mul(&c.kron(&d)).unwrap();
        let rhs = a.mat_mul(&c).unwrap().kron(&b.mat_mul(&d).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(RationalMatrix::identity(4).nullspace().is_empty());
    }

    #[test]
    fn nullspace_of_row_sums() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        // forced by dimension, up to scaling: proportional to (1, -1)
        assert!(!v[(0, 0)].is_zero());
        assert_eq!(v[(0, 0)].clone() + v[(1, 0)].clone(), Rational::zero());
        let prod = m.mat_mul(v).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(5).rank(), 5);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn rank_plus_nullity_is_cols() {
        for seed in 0..12i64 {
            let m = RationalMatrix::from_fn(4, 5, |r, c| {
                rat((seed * 13 + r as i64 * 5 + c as i64 * 3) % 4 - 1, 1)
            });
            let rank = m.rank();
            assert_eq!(rank, rank_by_forward_elimination(&m));
            let basis = m.nullspace();
            assert_eq!(rank + basis.len(), m.cols());
            for v in &basis {
                assert!(m.mat_mul(v).unwrap().is_zero());
            }
            // appending kernel vectors as columns leaves the rank unchanged
            let mut wide = RationalMatrix::zeros(4, 5 + basis.len());
            for r in 0..4 {
                for c in 0..5 {
                    wide[(r, c)] = m[(r, c)].clone();
                }
                for (j, v) in basis.iter().enumerate() {
                    let mut acc = Rational::zero();
                    for c in 0..5 {
                        acc += &m[(r, c)] * &v[(c, 0)];
                    }
                    wide[(r, 5 + j)] = acc;
                }
            }
            assert_eq!(wide.rank(), rank);
        }
    }

    #[test]
    fn solve_and_least_squares() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 1]]);
        let x = a.solve(&[rat(1, 1), rat(2, 1), rat(3, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(2, 1)]);
        assert!(a.solve(&[rat(1, 1), rat(2, 1), rat(0, 1)]).is_none());
        let (_, res) = a.least_squares(&[rat(1, 1), rat(2, 1), rat(3, 1)]);
        assert!(res.is_zero());
        let (_, res) = a.least_squares(&[rat(1, 1), rat(2, 1), rat(0, 1)]);
        assert!(!res.is_zero());
    }

    #[test]
    fn signed_permutation_extraction() {
        let m = RationalMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        let (to, sign) = m.signed_permutation().unwrap();
        assert_eq!(to, vec![1, 0]);
        assert_eq!(sign, vec![1, -1]);
        let bad = RationalMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(bad.signed_permutation().is_none());
    }

    #[test]
    fn json_wire_format() {
        let m = RationalMatrix::from_fn(1, 2, |_, c| rat(c as i64 + 1, 3));
        let v = m.to_json();
        assert_eq!(v["rows"], 1);
        assert_eq!(v["cols"], 2);
        assert_eq!(v["entries"][0][0], "1");
        assert_eq!(v["entries"][0][1], "3");
        assert_eq!(v["entries"][1][0], "2");
        assert_eq!(v["entries"][1][1], "3");
    }

    #[test]
    fn sparse_reducer_matches_dense_nullspace() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let mut red = SparseReducer::new(3);
        for r in 0..3 {
            red.insert(dense_to_sparse(m.row(r)));
        }
        assert_eq!(red.rank(), m.rank());
        let kernel = red.kernel_basis();
        let dense = m.nullspace();
        assert_eq!(kernel.len(), dense.len());
        for v in kernel {
            let dv = sparse_to_dense(&v, 3);
            let col = RationalMatrix::column_vector(dv);
            assert!(m.mat_mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn sparse_reducer_membership() {
        let mut red = SparseReducer::new(4);
        red.insert(vec![(0, rat(1, 1)), (1, rat(1, 1))]);
        red.insert(vec![(2, rat(1, 1))]);
        assert!(red.contains(vec![(0, rat(2, 1)), (1, rat(2, 1)), (2, rat(-1, 1))]));
        assert!(!red.contains(vec![(3, rat(1, 1))]));
        assert!(!red.contains(vec![(0, rat(1, 1))]));
    }
}
