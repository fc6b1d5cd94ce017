//! Fans of strongly convex rational polyhedral cones.
//!
//! Cones are stored by generator (ray) lists; dual cones are never
//! materialized since every computation only needs the pairing signs
//! `<m, n(rho)>`. Validation is best-effort at the generator level:
//! overlapping fans are rejected with a diagnostic rather than silently
//! accepted, and fans contained in a proper subspace are rejected.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, IntMatrix};
use crate::matrix::{QMat, Rat};
use crate::simplex;

/// A one-dimensional cone, stored as its primitive generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ray {
    pub vector: Vec<i64>,
}

impl Ray {
    pub fn new(vector: Vec<i64>) -> Result<Self> {
        if vector.iter().all(|&x| x == 0) {
            return Err(Error::InvalidFan("zero ray".into()));
        }
        let mut g: i64 = 0;
        for &x in &vector {
            g = g.gcd(&x);
        }
        if g != 1 {
            return Err(Error::InvalidFan(format!(
                "ray {:?} is not primitive (gcd {})",
                vector, g
            )));
        }
        Ok(Ray { vector })
    }

    fn to_rat(&self) -> Vec<Rat> {
        self.vector.iter().map(|&x| crate::matrix::rat_int(x)).collect()
    }
}

/// A cone given by the sorted set of indices of its extremal rays.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Cone {
    pub rays: Vec<usize>,
}

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Cone { rays }
    }

    pub fn dim_bound(&self) -> usize {
        self.rays.len()
    }
}

#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<Ray>,
    max_cones: Vec<Cone>,
    /// All cones: maximal ones plus every derived face (including the
    /// origin as the empty cone), deduplicated and sorted.
    all_cones: Vec<Cone>,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Ray>, max_cones: Vec<Cone>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidFan("ambient dimension must be positive".into()));
        }
        for r in &rays {
            if r.vector.len() != dim {
                return Err(Error::InvalidFan(format!(
                    "ray {:?} does not have ambient dimension {}",
                    r.vector, dim
                )));
            }
        }
        for (i, r) in rays.iter().enumerate() {
            for s in rays.iter().skip(i + 1) {
                if r == s {
                    return Err(Error::InvalidFan(format!("duplicate ray {:?}", r.vector)));
                }
            }
        }
        // the fan must span the ambient space
        let span = IntMatrix::from_rows(
            dim,
            rays.iter().map(|r| r.vector.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )?;
        if span.rank() != dim {
            return Err(Error::InvalidFan(
                "fan is contained in a proper subspace; not supported".into(),
            ));
        }
        let max_cones: Vec<Cone> = max_cones.into_iter().map(|c| Cone::new(c.rays)).collect();
        for c in &max_cones {
            for &i in &c.rays {
                if i >= rays.len() {
                    return Err(Error::InvalidFan(format!("cone uses unknown ray index {i}")));
                }
            }
            if c.rays.is_empty() {
                return Err(Error::InvalidFan("empty maximal cone".into()));
            }
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for c in &max_cones {
            seen.extend(c.rays.iter().copied());
        }
        if seen.len() != rays.len() {
            return Err(Error::InvalidFan("some ray appears in no cone".into()));
        }

        let fan = Fan { dim, rays, max_cones, all_cones: Vec::new() };

        for c in &fan.max_cones {
            let gens = fan.ray_vectors(&c.rays);
            if simplex::supporting_functional(&[], &gens, dim).is_none() {
                return Err(Error::InvalidFan(format!(
                    "cone {:?} is not strongly convex",
                    c.rays
                )));
            }
            for (k, &i) in c.rays.iter().enumerate() {
                let others: Vec<Vec<Rat>> = c
                    .rays
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &j)| fan.rays[j].to_rat())
                    .collect();
                if simplex::in_cone(&others, &fan.rays[i].to_rat()) {
                    return Err(Error::InvalidFan(format!(
                        "ray {i} is not an extremal generator of cone {:?}",
                        c.rays
                    )));
                }
            }
        }

        let mut all: BTreeSet<Cone> = BTreeSet::new();
        for c in &fan.max_cones {
            for f in fan.faces_of(c) {
                all.insert(f);
            }
        }
        let mut fan = fan;
        fan.all_cones = all.into_iter().collect();

        // generator-level compatibility of maximal cones
        for (i, c1) in fan.max_cones.iter().enumerate() {
            for c2 in fan.max_cones.iter().skip(i + 1) {
                let shared: Vec<usize> =
                    c1.rays.iter().copied().filter(|r| c2.rays.contains(r)).collect();
                let shared = Cone::new(shared);
                if !fan.is_face(c1, &shared.rays) || !fan.is_face(c2, &shared.rays) {
                    return Err(Error::InvalidFan(format!(
                        "cones {:?} and {:?} do not meet in a common face",
                        c1.rays, c2.rays
                    )));
                }
                for (a, b) in [(c1, c2), (c2, c1)] {
                    let gens = fan.ray_vectors(&b.rays);
                    for &r in a.rays.iter().filter(|r| !shared.rays.contains(r)) {
                        if simplex::in_cone(&gens, &fan.rays[r].to_rat()) {
                            return Err(Error::InvalidFan(format!(
                                "cones {:?} and {:?} overlap (ray {r} lies inside the second)",
                                a.rays, b.rays
                            )));
                        }
                    }
                }
            }
        }
        Ok(fan)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// All cones of the fan: maximal cones and their derived faces.
    pub fn cones(&self) -> &[Cone] {
        &self.all_cones
    }

    pub fn cone(&self, idx: usize) -> Result<&Cone> {
        self.all_cones.get(idx).ok_or(Error::UnknownCone(idx))
    }

    pub fn max_cone(&self, idx: usize) -> Result<&Cone> {
        self.max_cones.get(idx).ok_or(Error::UnknownCone(idx))
    }

    fn ray_vectors(&self, idxs: &[usize]) -> Vec<Vec<Rat>> {
        idxs.iter().map(|&i| self.rays[i].to_rat()).collect()
    }

    /// Integer matrix with one row per ray of the cone.
    pub fn ray_matrix(&self, idxs: &[usize]) -> IntMatrix {
        IntMatrix::from_rows(
            self.dim,
            idxs.iter()
                .map(|&i| self.rays[i].vector.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("ray shape")
    }

    /// The pairing matrix of the whole fan: row per ray, column per
    /// ambient coordinate; this is the matrix of `m -> (<m, n(rho)>)`.
    pub fn divisor_matrix(&self) -> IntMatrix {
        self.ray_matrix(&(0..self.rays.len()).collect::<Vec<_>>())
    }

    /// Is the subset `face` of the cone's rays an actual face?
    fn is_face(&self, cone: &Cone, face: &[usize]) -> bool {
        if face.iter().any(|r| !cone.rays.contains(r)) {
            return false;
        }
        let zeros = self.ray_vectors(face);
        let pos: Vec<Vec<Rat>> = cone
            .rays
            .iter()
            .filter(|r| !face.contains(r))
            .map(|&r| self.rays[r].to_rat())
            .collect();
        simplex::supporting_functional(&zeros, &pos, self.dim).is_some()
    }

    /// All faces of a cone (including the cone itself and the origin).
    pub fn faces_of(&self, cone: &Cone) -> Vec<Cone> {
        let k = cone.rays.len();
        let mut out = Vec::new();
        for mask in 0..(1u32 << k) {
            let subset: Vec<usize> = (0..k)
                .filter(|&b| mask & (1 << b) != 0)
                .map(|b| cone.rays[b])
                .collect();
            if self.is_face(cone, &subset) {
                out.push(Cone::new(subset));
            }
        }
        out
    }

    /// True iff the cone's ray vectors are linearly independent over Q.
    pub fn is_simplicial(&self, cone: &Cone) -> bool {
        let m = self.ray_matrix(&cone.rays);
        m.rank() == cone.rays.len()
    }

    /// True iff the rays extend to a lattice basis: simplicial with all
    /// Smith invariant factors equal to 1.
    pub fn is_smooth(&self, cone: &Cone) -> bool {
        if !self.is_simplicial(cone) {
            return false;
        }
        let m = self.ray_matrix(&cone.rays);
        smith_normal_form(&m).invariant_factors().iter().all(|f| f == &BigInt::from(1))
    }

    /// `<m, n(rho)> >= 0` for every ray of the cone, i.e. membership of
    /// `m` in the dual cone.
    pub fn dual_membership(&self, cone: &Cone, m: &[i64]) -> Result<bool> {
        if m.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "point has dimension {}, fan has ambient dimension {}",
                m.len(),
                self.dim
            )));
        }
        Ok(cone.rays.iter().all(|&r| self.pairing(m, r) >= 0))
    }

    /// `<m, n(rho)>` for ray index `rho`.
    pub fn pairing(&self, m: &[i64], ray: usize) -> i64 {
        m.iter().zip(&self.rays[ray].vector).map(|(a, b)| a * b).sum()
    }

    /// Does the monomial prime on the rays `p` survive on the complement
    /// of the unstable locus? True iff some cone contains all rays of `p`.
    pub fn relevant_prime(&self, p: &BTreeSet<usize>) -> bool {
        self.max_cones.iter().any(|c| p.iter().all(|r| c.rays.contains(r)))
    }

    /// All non-simplicial cones, derived faces included.
    pub fn nonsimplicial_locus(&self) -> Vec<Cone> {
        self.all_cones.iter().filter(|c| !self.is_simplicial(c)).cloned().collect()
    }

    /// Rational solution space basis as rows: `{ x : <x, n(rho)> = 0 }`.
    pub fn ray_perp(&self, ray: usize) -> QMat {
        let row: Vec<Rat> = self.rays[ray].vector.iter().map(|&x| crate::matrix::rat_int(x)).collect();
        QMat::from_rows(self.dim, vec![row]).right_kernel_as_rows()
    }
}

/// Built-in fans used by the examples and the test-suite.
pub mod samples {
    use super::*;

    /// The projective plane: rays (1,0), (0,1), (-1,-1).
    pub fn projective_plane() -> Fan {
        Fan::new(
            2,
            vec![
                Ray::new(vec![1, 0]).unwrap(),
                Ray::new(vec![0, 1]).unwrap(),
                Ray::new(vec![-1, -1]).unwrap(),
            ],
            vec![Cone::new(vec![0, 1]), Cone::new(vec![1, 2]), Cone::new(vec![0, 2])],
        )
        .expect("projective plane fan")
    }

    /// The projective line: rays 1 and -1.
    pub fn projective_line() -> Fan {
        Fan::new(
            1,
            vec![Ray::new(vec![1]).unwrap(), Ray::new(vec![-1]).unwrap()],
            vec![Cone::new(vec![0]), Cone::new(vec![1])],
        )
        .expect("projective line fan")
    }

    /// Product of two projective lines: rays +-e1, +-e2.
    pub fn p1xp1() -> Fan {
        Fan::new(
            2,
            vec![
                Ray::new(vec![1, 0]).unwrap(),
                Ray::new(vec![-1, 0]).unwrap(),
                Ray::new(vec![0, 1]).unwrap(),
                Ray::new(vec![0, -1]).unwrap(),
            ],
            vec![
                Cone::new(vec![0, 2]),
                Cone::new(vec![1, 2]),
                Cone::new(vec![1, 3]),
                Cone::new(vec![0, 3]),
            ],
        )
        .expect("p1 x p1 fan")
    }

    /// The affine quadric cone (A1 singularity): rays (1,0), (1,2),
    /// a single maximal cone.
    pub fn quadric_cone() -> Fan {
        Fan::new(
            2,
            vec![Ray::new(vec![1, 0]).unwrap(), Ray::new(vec![1, 2]).unwrap()],
            vec![Cone::new(vec![0, 1])],
        )
        .expect("quadric cone fan")
    }

    /// The cone over a square: four rays in Z^3 spanning a non-simplicial
    /// three-dimensional cone.
    pub fn cone_over_square() -> Fan {
        Fan::new(
            3,
            vec![
                Ray::new(vec![1, 0, 0]).unwrap(),
                Ray::new(vec![0, 1, 0]).unwrap(),
                Ray::new(vec![1, 0, 1]).unwrap(),
                Ray::new(vec![0, 1, 1]).unwrap(),
            ],
            vec![Cone::new(vec![0, 1, 2, 3])],
        )
        .expect("cone over square fan")
    }

    /// Affine n-space: the single smooth cone on the standard basis.
    pub fn affine_space(n: usize) -> Fan {
        let rays: Vec<Ray> = (0..n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                Ray::new(v).unwrap()
            })
            .collect();
        Fan::new(n, rays, vec![Cone::new((0..n).collect())]).expect("affine space fan")
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn p2_is_smooth_fan() {
        let fan = projective_plane();
        assert_eq!(fan.num_rays(), 3);
        for c in fan.cones() {
            assert!(fan.is_simplicial(c));
            assert!(fan.is_smooth(c));
        }
        assert!(fan.nonsimplicial_locus().is_empty());
    }

    #[test]
    fn quadric_cone_singular_but_simplicial() {
        let fan = quadric_cone();
        let c = fan.max_cones()[0].clone();
        assert!(fan.is_simplicial(&c));
        assert!(!fan.is_smooth(&c));
        assert!(fan.nonsimplicial_locus().is_empty());
    }

    #[test]
    fn cone_over_square_nonsimplicial() {
        let fan = cone_over_square();
        let big = fan.max_cones()[0].clone();
        assert!(!fan.is_simplicial(&big));
        assert!(!fan.is_smooth(&big));
        let locus = fan.nonsimplicial_locus();
        assert_eq!(locus, vec![big.clone()]);
        // codimension of the single non-simplicial orbit closure is >= 3
        assert!(fan.dim() >= 3);
        // all proper faces are simplicial
        for f in fan.faces_of(&big) {
            if f != big {
                assert!(fan.is_simplicial(&f));
            }
        }
        // the square has 4 facets, 4 edges, the apex and itself
        assert_eq!(fan.faces_of(&big).len(), 10);
    }

    #[test]
    fn single_ray_simplicial() {
        let fan = projective_plane();
        assert!(fan.is_simplicial(&Cone::new(vec![0])));
    }

    #[test]
    fn dual_membership_examples() {
        let fan = projective_plane();
        let c = Cone::new(vec![0, 1]);
        assert!(fan.dual_membership(&c, &[0, 0]).unwrap());
        assert!(fan.dual_membership(&c, &[1, 2]).unwrap());
        assert!(!fan.dual_membership(&c, &[-1, 0]).unwrap());
        assert!(fan.dual_membership(&c, &[5, 7]).is_ok());
        assert!(fan.dual_membership(&c, &[1, 2, 3]).is_err());

        let qc = quadric_cone();
        let c = qc.max_cones()[0].clone();
        assert!(!qc.dual_membership(&c, &[1, -1]).unwrap());
    }

    #[test]
    fn dual_membership_closed_under_addition() {
        let fan = p1xp1();
        for c in fan.max_cones() {
            let mut members = Vec::new();
            for x in -3i64..=3 {
                for y in -3i64..=3 {
                    if fan.dual_membership(c, &[x, y]).unwrap() {
                        members.push([x, y]);
                    }
                }
            }
            for a in &members {
                for b in &members {
                    let s = [a[0] + b[0], a[1] + b[1]];
                    if s[0].abs() <= 3 && s[1].abs() <= 3 {
                        assert!(fan.dual_membership(c, &s).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn relevant_primes_p2() {
        let fan = projective_plane();
        assert!(fan.relevant_prime(&BTreeSet::new()));
        assert!(fan.relevant_prime(&BTreeSet::from([0, 1])));
        assert!(!fan.relevant_prime(&BTreeSet::from([0, 1, 2])));
    }

    #[test]
    fn relevant_prime_monotone() {
        let fan = p1xp1();
        let subsets: Vec<BTreeSet<usize>> = (0u32..16)
            .map(|m| (0..4).filter(|&b| m & (1 << b) != 0).collect())
            .collect();
        for p in &subsets {
            for q in &subsets {
                if p.is_subset(q) && fan.relevant_prime(q) {
                    assert!(fan.relevant_prime(p));
                }
            }
        }
    }

    #[test]
    fn affine_fan_relevant_within_cone() {
        let fan = affine_space(3);
        assert!(fan.relevant_prime(&BTreeSet::from([0, 1, 2])));
    }

    #[test]
    fn smooth_implies_simplicial() {
        for fan in [projective_plane(), p1xp1(), quadric_cone(), cone_over_square()] {
            for c in fan.cones() {
                if fan.is_smooth(c) {
                    assert!(fan.is_simplicial(c));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_fans() {
        // non-primitive ray
        assert!(Ray::new(vec![2, 4]).is_err());
        // ray in no cone
        assert!(Fan::new(
            2,
            vec![Ray::new(vec![1, 0]).unwrap(), Ray::new(vec![0, 1]).unwrap()],
            vec![Cone::new(vec![0])],
        )
        .is_err());
        // not strongly convex
        assert!(Fan::new(
            2,
            vec![Ray::new(vec![1, 0]).unwrap(), Ray::new(vec![-1, 0]).unwrap()],
            vec![Cone::new(vec![0, 1])],
        )
        .is_err());
        // proper subspace
        assert!(Fan::new(
            2,
            vec![Ray::new(vec![1, 0]).unwrap()],
            vec![Cone::new(vec![0])],
        )
        .is_err());
        // overlapping cones
        assert!(Fan::new(
            2,
            vec![
                Ray::new(vec![1, 0]).unwrap(),
                Ray::new(vec![0, 1]).unwrap(),
                Ray::new(vec![1, 1]).unwrap(),
            ],
            vec![Cone::new(vec![0, 1]), Cone::new(vec![1, 2])],
        )
        .is_err());
    }
}
