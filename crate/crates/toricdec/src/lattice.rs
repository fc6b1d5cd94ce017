//! Exact integer matrix algebra: Smith and Hermite normal forms, kernel
//! lattice bases, and cokernel presentations of finitely generated abelian
//! groups.
//!
//! Entries are arbitrary-precision integers throughout; unimodular
//! transforms can blow entries past any machine word. The Smith form
//! pivots on the smallest nonzero absolute value, which keeps coefficient
//! growth tame at the sizes this crate handles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{QMat, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged integer matrix".into()));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data: rows })
    }

    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().map(|&x| BigInt::from(x)).collect()
            })
            .collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.data[i][j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self.data[i][k] * &other.data[k][j];
                    out.data[i][j] += p;
                }
            }
        }
        out
    }

    /// `v * self` for an integer row vector.
    pub fn apply_row(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] += vi * &self.data[i][j];
            }
        }
        out
    }

    pub fn to_rational(&self) -> QMat {
        QMat::from_rows(
            self.cols,
            self.data
                .iter()
                .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }

    /// Exact determinant by cofactor expansion; only used on the small
    /// square matrices that show up in tests and unimodularity checks.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        match self.rows {
            0 => BigInt::one(),
            1 => self.data[0][0].clone(),
            _ => {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    if self.data[0][j].is_zero() {
                        continue;
                    }
                    let mut sub = Vec::with_capacity(self.rows - 1);
                    for i in 1..self.rows {
                        let mut r = Vec::with_capacity(self.cols - 1);
                        for jj in 0..self.cols {
                            if jj != j {
                                r.push(self.data[i][jj].clone());
                            }
                        }
                        sub.push(r);
                    }
                    let minor =
                        IntMatrix { rows: self.rows - 1, cols: self.cols - 1, data: sub }.det();
                    let term = &self.data[0][j] * minor;
                    if j % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                acc
            }
        }
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal satisfying the
/// divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in chain order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.at(i, i).clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let n = a.rows().min(a.cols());

    let swap_rows = |d: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize| {
        d.data.swap(i, j);
        u.data.swap(i, j);
    };
    let swap_cols = |d: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize| {
        for r in d.data.iter_mut() {
            r.swap(i, j);
        }
        for r in v.data.iter_mut() {
            r.swap(i, j);
        }
    };
    // row_i -= q * row_j on d and u
    let row_op = |d: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize, q: &BigInt| {
        for c in 0..d.cols {
            let t = q * &d.data[j][c];
            d.data[i][c] -= t;
        }
        for c in 0..u.cols {
            let t = q * &u.data[j][c];
            u.data[i][c] -= t;
        }
    };
    // col_i -= q * col_j on d and v
    let col_op = |d: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize, q: &BigInt| {
        for r in 0..d.rows {
            let t = q * &d.data[r][j];
            d.data[r][i] -= t;
        }
        for r in 0..v.rows {
            let t = q * &v.data[r][j];
            v.data[r][i] -= t;
        }
    };

    for t in 0..n {
        loop {
            // smallest nonzero |entry| in the trailing block as pivot
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if d.data[i][j].is_zero() {
                        continue;
                    }
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if d.data[i][j].abs() < d.data[pi][pj].abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish_snf(d, u, v, t);
            };
            if pi != t {
                swap_rows(&mut d, &mut u, t, pi);
            }
            if pj != t {
                swap_cols(&mut d, &mut v, t, pj);
            }
            let mut clean = true;
            for i in t + 1..d.rows {
                if !d.data[i][t].is_zero() {
                    let q = d.data[i][t].div_floor(&d.data[t][t]);
                    row_op(&mut d, &mut u, i, t, &q);
                    if !d.data[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..d.cols {
                if !d.data[t][j].is_zero() {
                    let q = d.data[t][j].div_floor(&d.data[t][t]);
                    col_op(&mut d, &mut v, j, t, &q);
                    if !d.data[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                if d.data[t][t].is_negative() {
                    for c in 0..d.cols {
                        d.data[t][c] = -d.data[t][c].clone();
                    }
                    for c in 0..u.cols {
                        u.data[t][c] = -u.data[t][c].clone();
                    }
                }
                break;
            }
        }
    }
    finish_snf(d, u, v, n)
}

/// Enforce the divisibility chain on an already diagonal `d`.
///
/// For an adjacent offending pair `diag(a, b)` the classical cycle
///   col_i += col_{i+1};  rows *= [x y; -b/g a/g];  col_{i+1} -= (1 - x*a/g) col_i
/// replaces the block by `diag(g, ab/g)` with unimodular bookkeeping.
fn finish_snf(mut d: IntMatrix, mut u: IntMatrix, mut v: IntMatrix, rank_bound: usize) -> SmithForm {
    let n = rank_bound.min(d.rows.min(d.cols));
    loop {
        let mut fixed = true;
        for i in 0..n.saturating_sub(1) {
            let a = d.data[i][i].clone();
            let b = d.data[i + 1][i + 1].clone();
            if b.is_zero() || a.is_zero() || b.is_multiple_of(&a) {
                continue;
            }
            fixed = false;
            let g = a.gcd(&b);
            let (x, y) = bezout(&a, &b);
            let (aa, bb) = (&a / &g, &b / &g);
            // col_i += col_{i+1} on d and v
            for r in 0..d.rows {
                let t = d.data[r][i + 1].clone();
                d.data[r][i] += t;
            }
            for r in 0..v.rows {
                let t = v.data[r][i + 1].clone();
                v.data[r][i] += t;
            }
            // left-multiply rows i, i+1 by [x y; -bb aa] (det 1) on d and u
            let rot = |m: &mut IntMatrix| {
                let cols = m.cols;
                let ri: Vec<BigInt> =
                    (0..cols).map(|c| &x * &m.data[i][c] + &y * &m.data[i + 1][c]).collect();
                let rj: Vec<BigInt> =
                    (0..cols).map(|c| -&bb * &m.data[i][c] + &aa * &m.data[i + 1][c]).collect();
                m.data[i] = ri;
                m.data[i + 1] = rj;
            };
            rot(&mut d);
            rot(&mut u);
            // clear d[i][i+1] with a column op; the factor is integral
            let f = &d.data[i][i + 1] / &d.data[i][i];
            if !f.is_zero() {
                for r in 0..d.rows {
                    let t = &f * &d.data[r][i];
                    d.data[r][i + 1] -= t;
                }
                for r in 0..v.rows {
                    let t = &f * &v.data[r][i];
                    v.data[r][i + 1] -= t;
                }
            }
            for t in [i, i + 1] {
                if d.data[t][t].is_negative() {
                    for c in 0..d.cols {
                        d.data[t][c] = -d.data[t][c].clone();
                    }
                    for c in 0..u.cols {
                        u.data[t][c] = -u.data[t][c].clone();
                    }
                }
            }
        }
        if fixed {
            break;
        }
    }
    SmithForm { u, d, v }
}

/// `x*a + y*b = gcd(a, b)` with the gcd nonnegative.
pub fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.x, e.y)
}

/// Row Hermite normal form: `(h, u)` with `u * a = h`, `u` unimodular, `h`
/// in row echelon shape with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut pivot_row = 0usize;
    for col in 0..h.cols {
        // gcd down the column below pivot_row
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..h.rows {
                if h.data[i][col].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if h.data[i][col].abs() < h.data[b][col].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else {
                break;
            };
            if b != pivot_row {
                h.data.swap(pivot_row, b);
                u.data.swap(pivot_row, b);
            }
            let mut done = true;
            for i in pivot_row + 1..h.rows {
                if h.data[i][col].is_zero() {
                    continue;
                }
                let q = h.data[i][col].div_floor(&h.data[pivot_row][col]);
                for c in 0..h.cols {
                    let t = &q * &h.data[pivot_row][c];
                    h.data[i][c] -= t;
                }
                for c in 0..u.cols {
                    let t = &q * &u.data[pivot_row][c];
                    u.data[i][c] -= t;
                }
                if !h.data[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < h.rows && !h.data[pivot_row][col].is_zero() {
            if h.data[pivot_row][col].is_negative() {
                for c in 0..h.cols {
                    h.data[pivot_row][c] = -h.data[pivot_row][c].clone();
                }
                for c in 0..u.cols {
                    u.data[pivot_row][c] = -u.data[pivot_row][c].clone();
                }
            }
            // reduce entries above the pivot into [0, pivot)
            for i in 0..pivot_row {
                let q = h.data[i][col].div_floor(&h.data[pivot_row][col]);
                if q.is_zero() {
                    continue;
                }
                for c in 0..h.cols {
                    let t = &q * &h.data[pivot_row][c];
                    h.data[i][c] -= t;
                }
                for c in 0..u.cols {
                    let t = &q * &u.data[pivot_row][c];
                    u.data[i][c] -= t;
                }
            }
            pivot_row += 1;
            if pivot_row == h.rows {
                break;
            }
        }
    }
    (h, u)
}

/// Columns form a saturated lattice basis of `{ x : a * x = 0 }`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let mut cols = Vec::new();
    for j in rank..a.cols() {
        cols.push(snf.v.col(j));
    }
    let mut out = IntMatrix::zeros(a.cols(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..a.cols() {
            out.data[i][j] = c[i].clone();
        }
    }
    out
}

/// A finitely generated abelian group `Z^free_rank (+) Z/d_1 (+) ...`
/// presented as a quotient of an ambient `Z^r`, with an explicit
/// surjection recorded row by row: first the free coordinates, then one
/// row per torsion factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    /// Invariant factors `d_1 | d_2 | ...`, each at least 2.
    pub torsion: Vec<BigInt>,
    /// `(free_rank + torsion.len()) x r` matrix mapping the ambient
    /// lattice onto the presentation coordinates.
    pub projection: IntMatrix,
}

impl AbelianGroupPresentation {
    pub fn ambient_rank(&self) -> usize {
        self.projection.cols()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Image of an ambient vector, torsion coordinates reduced mod d_i.
    pub fn apply(&self, v: &[BigInt]) -> GroupElement {
        assert_eq!(v.len(), self.ambient_rank());
        let mut free = Vec::with_capacity(self.free_rank);
        let mut torsion = Vec::with_capacity(self.torsion.len());
        for i in 0..self.free_rank {
            let mut acc = BigInt::zero();
            for (j, x) in v.iter().enumerate() {
                acc += self.projection.at(i, j) * x;
            }
            free.push(acc);
        }
        for (t, d) in self.torsion.iter().enumerate() {
            let mut acc = BigInt::zero();
            for (j, x) in v.iter().enumerate() {
                acc += self.projection.at(self.free_rank + t, j) * x;
            }
            torsion.push(acc.mod_floor(d));
        }
        GroupElement { free, torsion }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    /// Human-readable name like `Z^2`, `Z/2`, `Z (+) Z/4`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// An element of a presented abelian group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|x| x.is_zero()) && self.torsion.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &GroupElement, moduli: &[BigInt]) -> GroupElement {
        let free = self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect();
        let torsion = self
            .torsion
            .iter()
            .zip(&other.torsion)
            .zip(moduli)
            .map(|((a, b), d)| (a + b).mod_floor(d))
            .collect();
        GroupElement { free, torsion }
    }

    pub fn scale(&self, k: &BigInt, moduli: &[BigInt]) -> GroupElement {
        let free = self.free.iter().map(|x| x * k).collect();
        let torsion =
            self.torsion.iter().zip(moduli).map(|(x, d)| (x * k).mod_floor(d)).collect();
        GroupElement { free, torsion }
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let all: Vec<String> = self
            .free
            .iter()
            .map(|x| x.to_string())
            .chain(self.torsion.iter().map(|x| x.to_string()))
            .collect();
        if all.len() == 1 {
            write!(f, "{}", all[0])
        } else {
            write!(f, "({})", all.join(","))
        }
    }
}

/// Presentation of `Z^rows / im(a)`, rows of `a` spanning the image as
/// combinations of `a`'s columns. Invariant factors equal to 1 are
/// dropped; the free block of the projection is put in Hermite form so
/// the output is canonical.
pub fn cokernel_presentation(a: &IntMatrix) -> AbelianGroupPresentation {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let rows = a.rows();
    let mut torsion = Vec::new();
    let mut torsion_rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..rank {
        let d = snf.d.at(i, i).clone();
        if d > BigInt::one() {
            let row: Vec<BigInt> =
                snf.u.row(i).iter().map(|x| x.mod_floor(&d)).collect();
            torsion.push(d);
            torsion_rows.push(row);
        }
    }
    let free_rows_raw: Vec<Vec<BigInt>> = (rank..rows).map(|i| snf.u.row(i).to_vec()).collect();
    let free_rank = free_rows_raw.len();
    let free_rows = if free_rank > 0 {
        let m = IntMatrix::from_rows(rows, free_rows_raw).expect("shape");
        let (h, _) = hermite_normal_form(&m);
        (0..free_rank).map(|i| h.row(i).to_vec()).collect()
    } else {
        Vec::new()
    };
    let mut proj_rows = free_rows;
    proj_rows.extend(torsion_rows);
    let projection = IntMatrix::from_rows(rows, proj_rows).expect("shape");
    AbelianGroupPresentation { free_rank, torsion, projection }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IntMatrix) -> SmithForm {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d, "u*a*v = d");
        assert_eq!(snf.u.det().abs(), BigInt::one(), "u unimodular");
        assert_eq!(snf.v.det().abs(), BigInt::one(), "v unimodular");
        let n = snf.d.rows().min(snf.d.cols());
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    assert!(snf.d.at(i, j).is_zero(), "d diagonal");
                }
            }
        }
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "divisibility chain");
        }
        snf
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(2);
        let snf = check_snf(&a);
        assert_eq!(snf.d, IntMatrix::identity(2));
    }

    #[test]
    fn snf_quadric_cone_div_map() {
        let a = IntMatrix::from_i64(2, &[&[1, 0], &[1, 2]]);
        let snf = check_snf(&a);
        assert_eq!(
            snf.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(2)]
        );
    }

    #[test]
    fn snf_rectangular() {
        let a = IntMatrix::from_i64(4, &[&[2, 4, 4, 6], &[-6, 6, 12, 0], &[10, -4, -16, 8]]);
        check_snf(&a);
    }

    #[test]
    fn kernel_of_sum_functional() {
        let a = IntMatrix::from_i64(2, &[&[1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        // saturation: invariant factors of the kernel matrix are all 1
        let f = smith_normal_form(&k).invariant_factors();
        assert!(f.iter().all(|x| x.is_one()));
    }

    #[test]
    fn kernel_of_p2_div_transpose() {
        let a = IntMatrix::from_i64(3, &[&[1, 0, -1], &[0, 1, -1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        let col = k.col(0);
        let want: Vec<BigInt> = vec![1, 1, 1].into_iter().map(BigInt::from).collect();
        let neg: Vec<BigInt> = want.iter().map(|x| -x).collect();
        assert!(col == want || col == neg);
    }

    #[test]
    fn hnf_reduces_rows() {
        let a = IntMatrix::from_i64(3, &[&[-1, -1, -1], &[2, 2, 2]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a), h);
        assert_eq!(h.row(0), &[BigInt::from(1), BigInt::from(1), BigInt::from(1)]);
        assert!(h.row(1).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn cokernel_p2() {
        // div matrix of the projective plane: rows are the rays
        let a = IntMatrix::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]]);
        let p = cokernel_presentation(&a);
        assert_eq!(p.free_rank, 1);
        assert!(p.torsion.is_empty());
        assert_eq!(
            p.projection.row(0),
            &[BigInt::from(1), BigInt::from(1), BigInt::from(1)]
        );
        // projection annihilates the image
        assert!(p.projection.mul(&a).is_zero());
    }

    #[test]
    fn cokernel_quadric_cone() {
        let a = IntMatrix::from_i64(2, &[&[1, 0], &[1, 2]]);
        let p = cokernel_presentation(&a);
        assert_eq!(p.free_rank, 0);
        assert_eq!(p.torsion, vec![BigInt::from(2)]);
        let e0 = p.apply(&[BigInt::from(1), BigInt::from(0)]);
        let e1 = p.apply(&[BigInt::from(0), BigInt::from(1)]);
        assert_eq!(e0.torsion, vec![BigInt::from(1)]);
        assert_eq!(e1.torsion, vec![BigInt::from(1)]);
    }

    #[test]
    fn cokernel_of_zero_map() {
        let a = IntMatrix::zeros(3, 0);
        let p = cokernel_presentation(&a);
        assert_eq!(p.free_rank, 3);
        assert!(p.torsion.is_empty());
        assert_eq!(p.projection, IntMatrix::identity(3));
    }
}
