// SPDX-License-Identifier: MIT OR Apache-2.0
//! Exact linear algebra over `A = Z[q, q^-1]`.
//!
//! Elimination is fraction-free (Bareiss style): every update divides by the
//! previous pivot, and each such division is checked to be exact.

use std::fmt;

use crate::error::HoweError;
use crate::qarith::LaurentInt;

/// A dense matrix with Laurent polynomial entries.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentInt>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![LaurentInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<LaurentInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: LaurentInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[LaurentInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<LaurentInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentInt::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Result of fraction-free Gauss-Jordan elimination.
struct Reduced {
    m: LaurentMatrix,
    /// `(row, column)` of each pivot, in order.
    pivots: Vec<(usize, usize)>,
    /// Common value of all pivot entries after the final step.
    det: LaurentInt,
}

/// Fraction-free Gauss-Jordan elimination.
///
/// After the run every pivot entry equals `det` and pivot columns are zero
/// outside their pivot row.
fn reduce(m: &LaurentMatrix) -> Result<Reduced, HoweError> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut prev = LaurentInt::one();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows)
            .filter(|&i| !a.get(i, c).is_zero())
            .min_by_key(|&i| a.get(i, c).num_terms())
        else {
            continue;
        };
        a.swap_rows(r, p);
        let piv = a.get(r, c).clone();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in 0..a.cols {
                // Pivot rows processed earlier are scaled as well so that all
                // pivots stay equal to the current determinant.
                let x = &(&piv * a.get(i, j)) - &(&factor * a.get(r, j));
                let x = x.try_div(&prev)?;
                a.set(i, j, x);
            }
        }
        pivots.push((r, c));
        prev = piv;
        r += 1;
    }
    Ok(Reduced { m: a, pivots, det: prev })
}

/// Rank over the fraction field `Q(q)`.
pub fn rank(m: &LaurentMatrix) -> Result<usize, HoweError> {
    Ok(reduce(m)?.pivots.len())
}

/// Divides out the gcd of the entries and fixes the unit so that the first
/// nonzero entry has lowest exponent 0 and a positive coefficient there.
pub fn normalize_vector(v: &mut [LaurentInt]) {
    let g = v.iter().fold(LaurentInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    for x in v.iter_mut() {
        *x = x.div_exact(&g).expect("gcd divides every entry");
    }
    let lead = v.iter().find(|x| !x.is_zero()).unwrap();
    let (lo, c) = (lead.min_exp().unwrap(), lead.coeff(lead.min_exp().unwrap()));
    let neg = c < num_bigint::BigInt::from(0);
    for x in v.iter_mut() {
        let mut y = x.shift(-lo);
        if neg {
            y = -y;
        }
        *x = y;
    }
}

/// A basis of the nullspace over `Q(q)` with entries in `A`, each vector
/// content-normalized with [`normalize_vector`].
pub fn kernel_basis(m: &LaurentMatrix) -> Result<Vec<Vec<LaurentInt>>, HoweError> {
    let red = reduce(m)?;
    let pivot_cols: Vec<usize> = red.pivots.iter().map(|p| p.1).collect();
    let mut out = Vec::new();
    for f in (0..m.cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![LaurentInt::zero(); m.cols];
        v[f] = red.det.clone();
        for &(r, c) in &red.pivots {
            v[c] = -red.m.get(r, f);
        }
        normalize_vector(&mut v);
        out.push(v);
    }
    Ok(out)
}

/// Whether `x` lies in the `Q(q)`-span of `vs`.
pub fn in_span(vs: &[Vec<LaurentInt>], x: &[LaurentInt]) -> Result<bool, HoweError> {
    if vs.is_empty() {
        return Ok(x.iter().all(LaurentInt::is_zero));
    }
    let rows = x.len();
    let base = LaurentMatrix::from_columns(rows, vs);
    let mut all = vs.to_vec();
    all.push(x.to_vec());
    let ext = LaurentMatrix::from_columns(rows, &all);
    Ok(rank(&base)? == rank(&ext)?)
}

/// Inverse of a unitriangular matrix (upper or lower) over `A`.
pub fn invert_unitriangular(m: &LaurentMatrix) -> Result<LaurentMatrix, HoweError> {
    let n = m.rows;
    if m.cols != n {
        return Err(HoweError::NotUnitriangular(m.rows, m.cols));
    }
    for i in 0..n {
        if !m.get(i, i).is_one() {
            return Err(HoweError::NotUnitriangular(i, i));
        }
    }
    let upper = (0..n).all(|i| (0..i).all(|j| m.get(i, j).is_zero()));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| m.get(i, j).is_zero()));
    if !upper && !lower {
        let (i, j) = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .find(|&(i, j)| !m.get(i, j).is_zero())
            .unwrap();
        return Err(HoweError::NotUnitriangular(i, j));
    }
    if lower && !upper {
        return Ok(invert_unitriangular(&m.transpose())?.transpose());
    }
    // Solve M Y = I column by column, bottom-up.
    let mut y = LaurentMatrix::zeros(n, n);
    for col in 0..n {
        for i in (0..n).rev() {
            let mut acc = if i == col { LaurentInt::one() } else { LaurentInt::zero() };
            for k in i + 1..n {
                let a = m.get(i, k);
                if !a.is_zero() {
                    acc -= &(a * y.get(k, col));
                }
            }
            y.set(i, col, acc);
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> LaurentInt {
        LaurentInt::q(e)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = LaurentMatrix::identity(4);
        assert!(kernel_basis(&m).unwrap().is_empty());
        assert_eq!(rank(&m).unwrap(), 4);
    }

    #[test]
    fn one_by_two() {
        let m = LaurentMatrix::from_rows(vec![vec![q(1), q(2)]]);
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.len(), 1);
        // proportional to (q, -1)
        assert_eq!(&k[0][0] * &LaurentInt::from_int(-1), &k[0][1] * &q(1));
    }

    #[test]
    fn span_membership() {
        let v = vec![vec![q(0), LaurentInt::zero()]];
        assert!(in_span(&v, &[q(3), LaurentInt::zero()]).unwrap());
        assert!(!in_span(&v, &[LaurentInt::zero(), q(3)]).unwrap());
    }

    #[test]
    fn unitriangular_inverse() {
        let m = LaurentMatrix::from_rows(vec![
            vec![q(0), q(-1), LaurentInt::from_terms([(1, 1), (2, 3)])],
            vec![LaurentInt::zero(), q(0), q(-2)],
            vec![LaurentInt::zero(), LaurentInt::zero(), q(0)],
        ]);
        let y = invert_unitriangular(&m).unwrap();
        assert!(y.mul(&m).is_identity());
        assert!(m.mul(&y).is_identity());
        assert!(invert_unitriangular(&m.transpose()).unwrap().mul(&m.transpose()).is_identity());
        let mut bad = m.clone();
        bad.set(2, 0, q(1));
        assert!(invert_unitriangular(&bad).is_err());
    }
}
