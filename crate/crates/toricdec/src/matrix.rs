//! Dense exact rational matrices and row-space operations.
//!
//! Everything downstream works with row vectors: a subspace is the row
//! space of a matrix, and linear maps act on the right (`v * M`).
//! Elimination clears denominators and keeps rows primitive so entries
//! stay integral most of the time; pivots are normalized to 1 only in
//! the final reduced form, which makes reduced matrices canonical and
//! directly comparable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rat>>,
}

/// Multiply a row through by the lcm of denominators, divide by the gcd of
/// numerators, and make the leading nonzero entry positive.
fn primitivize(row: &mut [Rat]) {
    let mut lcm = BigInt::one();
    for x in row.iter() {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    if !lcm.is_one() {
        let f = Rat::from_integer(lcm);
        for x in row.iter_mut() {
            *x *= &f;
        }
    }
    let mut gcd = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            gcd = gcd.gcd(x.numer());
        }
    }
    if !gcd.is_zero() && !gcd.is_one() {
        let f = Rat::from_integer(gcd);
        for x in row.iter_mut() {
            *x /= &f;
        }
    }
    if let Some(first) = row.iter().find(|x| !x.is_zero()) {
        if first.numer().is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![vec![Rat::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rat::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        QMat { rows: rows.len(), cols, data: rows }
    }

    /// Matrix with no rows: the zero subspace of `Q^cols`.
    pub fn empty(cols: usize) -> Self {
        QMat { rows: 0, cols, data: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[Vec<Rat>] {
        &self.data
    }

    pub fn push_row(&mut self, row: Vec<Rat>) {
        debug_assert_eq!(row.len(), self.cols);
        self.data.push(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn stack(&self, other: &QMat) -> QMat {
        debug_assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// `self * other`, with rows of `self` as input coordinates.
    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other.data[k][j].is_zero() {
                        continue;
                    }
                    let p = &self.data[i][k] * &other.data[k][j];
                    out.data[i][j] += p;
                }
            }
        }
        out
    }

    /// `v * self` for a row vector `v`.
    pub fn apply_row(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.rows, "apply_row shape mismatch");
        let mut out = vec![Rat::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if self.data[i][j].is_zero() {
                    continue;
                }
                out[j] += vi * &self.data[i][j];
            }
        }
        out
    }

    /// Reduced row echelon form with zero rows dropped. Pivot entries are 1
    /// and pivot columns are cleared, so the result is a canonical basis of
    /// the row space.
    pub fn rref(&self) -> Rref {
        let mut m: Vec<Vec<Rat>> = self.data.clone();
        for r in m.iter_mut() {
            primitivize(r);
        }
        let mut pivots: Vec<usize> = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            let Some(sel) = (pivot_row..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, sel);
            // fraction-free clearing: rows stay integral, re-primitivized
            let p = m[pivot_row][col].clone();
            for i in 0..m.len() {
                if i == pivot_row || m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].clone();
                for j in 0..self.cols {
                    let t = &p * &m[i][j] - &q * &m[pivot_row][j];
                    m[i][j] = t;
                }
                primitivize(&mut m[i]);
            }
            pivots.push(col);
            pivot_row += 1;
            if pivot_row == m.len() {
                break;
            }
        }
        m.truncate(pivot_row);
        // normalize pivots to 1 for canonicity
        for (r, &col) in pivots.iter().enumerate() {
            let p = m[r][col].clone();
            if !p.is_one() {
                for j in 0..self.cols {
                    m[r][j] = &m[r][j] / &p;
                }
            }
        }
        Rref { mat: QMat { rows: m.len(), cols: self.cols, data: m }, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().mat.rows
    }

    /// Rows spanning `{ v : v * self = 0 }` (the left kernel).
    pub fn left_kernel(&self) -> QMat {
        self.transpose().right_kernel_as_rows()
    }

    /// Rows `k` with `self * k^T = 0`; a basis of the right kernel, one row
    /// per free column of the reduced form.
    pub fn right_kernel_as_rows(&self) -> QMat {
        let Rref { mat, pivots } = self.rref();
        let mut out = Vec::new();
        let piv_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        for free in 0..self.cols {
            if piv_of_col[free].is_some() {
                continue;
            }
            let mut k = vec![Rat::zero(); self.cols];
            k[free] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                k[c] = -mat.data[r][free].clone();
            }
            out.push(k);
        }
        QMat::from_rows(self.cols, out)
    }
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: QMat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.mat.rows
    }

    /// Reduce `v` against the echelon rows; returns the residue.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (r, &col) in self.pivots.iter().enumerate() {
            if v[col].is_zero() {
                continue;
            }
            let c = v[col].clone();
            for j in 0..self.mat.cols {
                let t = &self.mat.data[r][j] * &c;
                v[j] -= t;
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_row_space(&self, other: &QMat) -> bool {
        other.row_vecs().iter().all(|r| self.contains(r))
    }
}

/// Canonical test for equality of row spaces.
pub fn row_spaces_equal(a: &QMat, b: &QMat) -> bool {
    a.rref().mat == b.rref().mat
}

/// Basis of the intersection of two row spaces.
pub fn intersect_row_spaces(a: &QMat, b: &QMat) -> QMat {
    assert_eq!(a.cols(), b.cols());
    if a.rows() == 0 || b.rows() == 0 {
        return QMat::empty(a.cols());
    }
    // (x, y) with x*A = y*B  <=>  (x, -y) in the left kernel of [A; B]
    let stacked = a.stack(b);
    let lk = stacked.left_kernel();
    let mut rows = Vec::new();
    for k in lk.row_vecs() {
        let x = &k[..a.rows()];
        let v = a.apply_row(x);
        if v.iter().any(|t| !t.is_zero()) {
            rows.push(v);
        }
    }
    QMat::from_rows(a.cols(), rows).rref().mat
}

/// Solve `x * a = target` exactly; `None` when inconsistent.
pub fn solve_left(a: &QMat, target: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.cols(), target.len());
    // augment [a^T | target^T] and eliminate
    let at = a.transpose();
    let mut m: Vec<Vec<Rat>> = Vec::with_capacity(at.rows());
    for i in 0..at.rows() {
        let mut r = at.row(i).to_vec();
        r.push(target[i].clone());
        m.push(r);
    }
    let aug = QMat::from_rows(a.rows() + 1, m);
    let Rref { mat, pivots } = aug.rref();
    let mut x = vec![Rat::zero(); a.rows()];
    for (r, &c) in pivots.iter().enumerate() {
        if c == a.rows() {
            return None; // pivot in the target column: inconsistent
        }
        x[c] = mat.at(r, a.rows()).clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> QMat {
        QMat::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect(),
        )
    }

    #[test]
    fn rref_canonical() {
        let a = m(3, &[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1]]);
        let r = a.rref();
        assert_eq!(r.rank(), 2);
        assert_eq!(r.pivots, vec![0, 1]);
        let b = m(3, &[&[1, 2, 3], &[0, 1, 1]]);
        assert!(row_spaces_equal(&a, &b));
    }

    #[test]
    fn kernels() {
        let a = m(3, &[&[1, 0, -1], &[0, 1, -1]]);
        let k = a.right_kernel_as_rows();
        assert_eq!(k.rows(), 1);
        // kernel of the stacked rows: (1,1,1) direction
        let mut v = k.row(0).to_vec();
        super::primitivize(&mut v);
        assert_eq!(v, vec![rat_int(1), rat_int(1), rat_int(1)]);

        let lk = a.left_kernel();
        assert_eq!(lk.rows(), 0);
    }

    #[test]
    fn intersection_of_row_spaces() {
        let a = m(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = m(3, &[&[0, 1, 0], &[0, 0, 1]]);
        let i = intersect_row_spaces(&a, &b);
        assert_eq!(i.rows(), 1);
        assert_eq!(i.row(0), &[rat_int(0), rat_int(1), rat_int(0)]);
    }

    #[test]
    fn solve_left_works() {
        let a = m(3, &[&[1, 2, 0], &[0, 1, 1]]);
        let target = vec![rat_int(1), rat_int(3), rat_int(1)];
        let x = solve_left(&a, &target).unwrap();
        assert_eq!(a.apply_row(&x), target);
        assert!(solve_left(&a, &[rat_int(0), rat_int(0), rat_int(5)]).is_none());
    }
}
