//! Dense matrices over ℚ(i): Gauss-Jordan elimination, null spaces, determinants
//! and congruence diagonalization of Hermitian matrices.

// Elimination loops read most clearly with explicit row/column indices.
#![allow(clippy::needless_range_loop)]

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::GQ;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matrix {
    rows: Vec<Vec<GQ>>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<GQ>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            let c = first.len();
            if rows.iter().any(|r| r.len() != c) {
                return Err(Error::Shape("ragged matrix rows".into()));
            }
        }
        Ok(Self { rows })
    }

    /// Builds a `rows × cols` matrix from a generator; `cols` is kept even when `rows == 0`
    /// only implicitly, so callers with empty matrices should not rely on [`Matrix::cols`].
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GQ) -> Self {
        Self { rows: (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| GQ::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { GQ::one() } else { GQ::zero() })
    }

    pub fn diagonal(entries: &[GQ]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { GQ::zero() })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn rows(&self) -> &[Vec<GQ>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<GQ>> {
        self.rows
    }

    pub fn column(&self, j: usize) -> Vec<GQ> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn conj_transpose(&self) -> Matrix {
        Self::from_fn(self.ncols(), self.nrows(), |i, j| self.rows[j][i].conj())
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.ncols(), self.nrows(), |i, j| self.rows[j][i].clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.ncols() != rhs.nrows() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        let inner = self.ncols();
        Ok(Self::from_fn(self.nrows(), rhs.ncols(), |i, j| {
            let mut acc = GQ::zero();
            for k in 0..inner {
                if !self.rows[i][k].is_zero() && !rhs.rows[k][j].is_zero() {
                    acc += &(&self.rows[i][k] * &rhs.rows[k][j]);
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[GQ]) -> Result<Vec<GQ>> {
        if self.ncols() != v.len() {
            return Err(Error::Shape("matrix-vector length mismatch".into()));
        }
        Ok(self.rows.iter().map(|r| dot(r, v)).collect())
    }

    pub fn scale(&self, k: &GQ) -> Matrix {
        Self { rows: self.rows.iter().map(|r| r.iter().map(|x| x * k).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    /// Determinant by fraction-carrying Gaussian elimination.
    pub fn determinant(&self) -> Result<GQ> {
        let n = self.nrows();
        if n != self.ncols() && n != 0 {
            return Err(Error::Shape("determinant of non-square matrix".into()));
        }
        let mut a = self.rows.clone();
        let mut det = GQ::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(GQ::zero());
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let pivot = a[k][k].clone();
            det *= &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] * &inv;
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= &t;
                }
            }
        }
        Ok(det)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = GQ;
    fn index(&self, (i, j): (usize, usize)) -> &GQ {
        &self.rows[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GQ {
        &mut self.rows[i][j]
    }
}

pub fn dot(a: &[GQ], b: &[GQ]) -> GQ {
    let mut acc = GQ::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Reduced row-echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<GQ>], ncols: usize) -> (Vec<Vec<GQ>>, Vec<usize>) {
    let mut a: Vec<Vec<GQ>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..ncols {
                    if !a[r][j].is_zero() {
                        let t = &f * &a[r][j];
                        a[i][j] -= &t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<GQ>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : A x = 0}` for `A` given by its rows.
pub fn nullspace(rows: &[Vec<GQ>], ncols: usize) -> Vec<Vec<GQ>> {
    let (r, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![GQ::zero(); ncols];
        v[free] = GQ::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Coordinates of `v` in the (independent) family `basis`, if `v` lies in its span.
pub fn coordinates(basis: &[Vec<GQ>], v: &[GQ]) -> Option<Vec<GQ>> {
    let n = v.len();
    let k = basis.len();
    // Solve sum_l x_l basis[l] = v, i.e. the n x k system with columns basis[l].
    let aug: Vec<Vec<GQ>> = (0..n)
        .map(|j| {
            let mut row: Vec<GQ> = basis.iter().map(|b| b[j].clone()).collect();
            row.push(v[j].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&aug, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![GQ::zero(); k];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

/// Result of Hermitian congruence diagonalization `T G Tᴴ = D`.
#[derive(Clone, Debug)]
pub struct Congruence {
    /// Rows of `T`; row `i` holds the coefficients of the `i`-th new vector in the old basis.
    pub transform: Vec<Vec<GQ>>,
    /// Diagonal of `D`; entries `0..rank` are nonzero reals, the rest are zero.
    pub diagonal: Vec<GQ>,
    pub rank: usize,
}

impl Congruence {
    /// `(positive, negative, zero)` counts of the diagonal.
    pub fn inertia(&self) -> (usize, usize, usize) {
        let pos = self.diagonal.iter().filter(|d| d.re > Zero::zero()).count();
        let neg = self.diagonal.iter().filter(|d| d.re < Zero::zero()).count();
        (pos, neg, self.diagonal.len() - pos - neg)
    }
}

/// Symmetric elimination on a Hermitian matrix. Zero diagonal pivots are repaired
/// with a 2x2 step `v_i += g_ij v_j`, which makes the new diagonal entry `2|g_ij|² > 0`.
pub fn congruence_diagonalize(gram: &Matrix) -> Result<Congruence> {
    let m = gram.nrows();
    if m != gram.ncols() && m != 0 {
        return Err(Error::Shape("Gram matrix must be square".into()));
    }
    let mut g = gram.rows.clone();
    let mut t = Matrix::identity(m).rows;
    let mut rank = 0;
    for k in 0..m {
        if let Some(p) = (k..m).find(|&i| !g[i][i].is_zero()) {
            swap_sym(&mut g, &mut t, k, p);
        } else {
            let mut found = None;
            'outer: for i in k..m {
                for j in k..m {
                    if i != j && !g[i][j].is_zero() {
                        found = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((i, j)) = found else { break };
            let c = g[i][j].clone();
            add_sym(&mut g, &mut t, i, j, &c);
            swap_sym(&mut g, &mut t, k, i);
        }
        let inv = g[k][k].inv().expect("nonzero pivot");
        for i in k + 1..m {
            if g[i][k].is_zero() {
                continue;
            }
            let f = -(&g[i][k] * &inv);
            add_sym(&mut g, &mut t, i, k, &f);
        }
        rank += 1;
    }
    let diagonal = (0..m).map(|i| g[i][i].clone()).collect();
    Ok(Congruence { transform: t, diagonal, rank })
}

fn swap_sym(g: &mut [Vec<GQ>], t: &mut [Vec<GQ>], a: usize, b: usize) {
    if a == b {
        return;
    }
    g.swap(a, b);
    for row in g.iter_mut() {
        row.swap(a, b);
    }
    t.swap(a, b);
}

/// `v_i ← v_i + c v_j`: row op with `c`, column op with `conj(c)`.
fn add_sym(g: &mut [Vec<GQ>], t: &mut [Vec<GQ>], i: usize, j: usize, c: &GQ) {
    let m = g.len();
    let row_j = g[j].clone();
    for l in 0..m {
        if !row_j[l].is_zero() {
            let d = c * &row_j[l];
            g[i][l] += &d;
        }
    }
    let cc = c.conj();
    for row in g.iter_mut() {
        if !row[j].is_zero() {
            let d = &cc * &row[j];
            row[i] += &d;
        }
    }
    let t_j = t[j].clone();
    for l in 0..t_j.len() {
        if !t_j[l].is_zero() {
            let d = c * &t_j[l];
            t[i][l] += &d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GQ {
        GQ::from_int(n)
    }

    #[test]
    fn rref_is_canonical() {
        let rows = vec![vec![q(2), q(4)], vec![q(1), q(2)]];
        let (r, p) = rref(&rows, 2);
        assert_eq!(r, vec![vec![q(1), q(2)]]);
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn nullspace_basis() {
        let rows = vec![vec![q(1), q(1), q(0)]];
        let n = nullspace(&rows, 3);
        assert_eq!(n.len(), 2);
        for v in &n {
            assert!(dot(&rows[0], v).is_zero());
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m =
            Matrix::from_rows(vec![vec![q(2), GQ::i(), q(0)], vec![q(1), q(3), q(1)], vec![q(0), q(1), q(4)]]).unwrap();
        // 2(12-1) - i(4-0) + 0 = 22 - 4i
        assert_eq!(m.determinant().unwrap(), GQ::from_ratios(22, 1, -4, 1));
    }

    #[test]
    fn zero_diagonal_hyperbolic_pair() {
        let g = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        let c = congruence_diagonalize(&g).unwrap();
        assert_eq!(c.inertia(), (1, 1, 0));
        let t = Matrix::from_rows(c.transform.clone()).unwrap();
        let d = t.mul(&g).unwrap().mul(&t.conj_transpose()).unwrap();
        assert_eq!(d, Matrix::diagonal(&c.diagonal));
    }

    #[test]
    fn coordinates_in_span() {
        let basis = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        assert_eq!(coordinates(&basis, &[q(2), q(3), q(5)]), Some(vec![q(2), q(3)]));
        assert_eq!(coordinates(&basis, &[q(1), q(0), q(0)]), None);
    }
}
