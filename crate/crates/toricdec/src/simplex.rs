//! Tiny exact phase-1 simplex over the rationals.
//!
//! Only feasibility questions are needed: membership of a vector in a
//! cone, existence of a nontrivial nonnegative dependency, and existence
//! of a supporting hyperplane. Bland's rule avoids cycling; everything is
//! exact so there are no tolerance questions.

use num_traits::{One, Signed, Zero};

use crate::matrix::{QMat, Rat};

/// Find `x >= 0` with `a * x^T = b` (column reading), or `None`.
pub fn feasible_nonneg(a: &QMat, b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.rows();
    let n = a.cols();
    assert_eq!(b.len(), m);

    // tableau rows: [ A | I | b ] with b >= 0 after sign flips
    let width = n + m + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rat> = Vec::with_capacity(width);
        let flip = b[i].is_negative();
        for j in 0..n {
            let v = a.at(i, j).clone();
            row.push(if flip { -v } else { v });
        }
        for k in 0..m {
            row.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // price row for minimizing the sum of artificials
    let mut price: Vec<Rat> = vec![Rat::zero(); width];
    for row in &t {
        for (j, v) in row.iter().enumerate() {
            price[j] += v;
        }
    }
    for j in n..n + m {
        price[j] -= Rat::one();
    }

    loop {
        // Bland: entering variable = smallest index with positive price
        // (we maximize the negated objective implicitly: reduced cost > 0)
        let entering = (0..n + m).find(|&j| price[j].is_positive() && !basis.contains(&j));
        let Some(e) = entering else {
            break;
        };
        // ratio test
        let mut leave: Option<usize> = None;
        for (r, row) in t.iter().enumerate() {
            if row[e].is_positive() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let cand = &row[width - 1] / &row[e];
                        let best = &t[l][width - 1] / &t[l][e];
                        cand < best || (cand == best && basis[r] < basis[l])
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
        }
        let Some(l) = leave else {
            // unbounded phase-1 objective cannot happen; defensive exit
            return None;
        };
        // pivot on (l, e)
        let p = t[l][e].clone();
        for v in t[l].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..m {
            if r == l || t[r][e].is_zero() {
                continue;
            }
            let f = t[r][e].clone();
            for j in 0..width {
                let d = &f * &t[l][j];
                t[r][j] -= d;
            }
        }
        let f = price[e].clone();
        if !f.is_zero() {
            for j in 0..width {
                let d = &f * &t[l][j];
                price[j] -= d;
            }
        }
        basis[l] = e;
    }

    // objective value = sum of artificial basic values
    let mut obj = Rat::zero();
    for (r, &bv) in basis.iter().enumerate() {
        if bv >= n {
            obj += &t[r][width - 1];
        }
    }
    if !obj.is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[r][width - 1].clone();
        }
    }
    Some(x)
}

/// Is `v` a nonnegative combination of `gens` (each a rational vector)?
pub fn in_cone(gens: &[Vec<Rat>], v: &[Rat]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let dim = v.len();
    let mut cols = QMat::zeros(dim, gens.len());
    for (j, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), dim);
        for i in 0..dim {
            cols.set(i, j, g[i].clone());
        }
    }
    feasible_nonneg(&cols, v).is_some()
}

/// A functional `h` with `h . z = 0` for all `z` in `zero_on` and
/// `h . p >= 1` for all `p` in `positive_on`, if one exists.
pub fn supporting_functional(
    zero_on: &[Vec<Rat>],
    positive_on: &[Vec<Rat>],
    dim: usize,
) -> Option<Vec<Rat>> {
    // h = u - w with u, w >= 0; inequalities get surplus variables
    let nzero = zero_on.len();
    let npos = positive_on.len();
    let ncols = 2 * dim + npos;
    let mut a = QMat::zeros(nzero + npos, ncols);
    let mut b = vec![Rat::zero(); nzero + npos];
    for (r, z) in zero_on.iter().enumerate() {
        for i in 0..dim {
            a.set(r, i, z[i].clone());
            a.set(r, dim + i, -z[i].clone());
        }
    }
    for (k, p) in positive_on.iter().enumerate() {
        let r = nzero + k;
        for i in 0..dim {
            a.set(r, i, p[i].clone());
            a.set(r, dim + i, -p[i].clone());
        }
        a.set(r, 2 * dim + k, -Rat::one());
        b[r] = Rat::one();
    }
    let x = feasible_nonneg(&a, &b)?;
    let mut h = vec![Rat::zero(); dim];
    for i in 0..dim {
        h[i] = &x[i] - &x[dim + i];
    }
    Some(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat_int;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn cone_membership() {
        let gens = vec![v(&[1, 0]), v(&[1, 2])];
        assert!(in_cone(&gens, &v(&[2, 2])));
        assert!(in_cone(&gens, &v(&[1, 0])));
        assert!(!in_cone(&gens, &v(&[0, 1]))); // outside: needs negative first coord coefficient
        assert!(!in_cone(&gens, &v(&[-1, 0])));
        assert!(in_cone(&gens, &v(&[0, 0])));
    }

    #[test]
    fn pointedness_via_functional() {
        assert!(supporting_functional(&[], &[v(&[1, 0]), v(&[0, 1])], 2).is_some());
        assert!(supporting_functional(&[], &[v(&[1, 0]), v(&[-1, 0])], 2).is_none());
        assert!(
            supporting_functional(&[], &[v(&[1, 1]), v(&[-1, 0]), v(&[0, -1])], 2).is_none()
        );
    }

    #[test]
    fn supporting_hyperplanes() {
        // face {e1} of the cone spanned by e1, e2
        let h = supporting_functional(&[v(&[1, 0])], &[v(&[0, 1])], 2).unwrap();
        assert!(h[0].is_zero());
        assert!(h[1].is_positive());
        // {e1, -e1} cannot be separated
        assert!(supporting_functional(&[v(&[1, 0])], &[v(&[-1, 0])], 2).is_none());
    }
}
