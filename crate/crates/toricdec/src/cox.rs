//! The homogeneous coordinate ring: fine and class gradings, character
//! monomials on charts, and the irrelevant ideal.
//!
//! A `GradingSetup` is either derived from a fan (class group = cokernel
//! of the ray pairing matrix, irrelevant ideal generated by the
//! complement monomials of the maximal cones) or supplied explicitly as
//! a surjective grading matrix with optional torsion.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::ideal::MonomialIdeal;
use crate::lattice::{
    cokernel_presentation, smith_normal_form, AbelianGroupPresentation, GroupElement, IntMatrix,
};

/// A monomial with exponents in `Z^r`; characters restrict to these on
/// the torus charts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMonomial {
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct GradingSetup {
    num_vars: usize,
    class_group: AbelianGroupPresentation,
    class_of_var: Vec<GroupElement>,
    irrelevant: MonomialIdeal,
    fan: Option<Arc<Fan>>,
}

impl GradingSetup {
    /// Class group, variable degrees and irrelevant ideal of a fan.
    pub fn from_fan(fan: Fan) -> Result<Self> {
        let div = fan.divisor_matrix();
        let class_group = cokernel_presentation(&div);
        let r = fan.num_rays();
        let class_of_var: Vec<GroupElement> = (0..r)
            .map(|rho| {
                let e: Vec<BigInt> =
                    (0..r).map(|i| if i == rho { BigInt::one() } else { BigInt::zero() }).collect();
                class_group.apply(&e)
            })
            .collect();
        let gens: Vec<Vec<i64>> = fan
            .max_cones()
            .iter()
            .map(|c| {
                (0..r).map(|rho| if c.rays.contains(&rho) { 0 } else { 1 }).collect()
            })
            .collect();
        let irrelevant = MonomialIdeal::new(r, gens)?;
        Ok(GradingSetup {
            num_vars: r,
            class_group,
            class_of_var,
            irrelevant,
            fan: Some(Arc::new(fan)),
        })
    }

    /// Explicit grading: `class_matrix` has one row per free coordinate
    /// followed by one row per torsion factor, acting on `Z^num_vars`.
    /// The induced map onto `Z^free (+) Z/d_i` must be surjective.
    pub fn explicit(
        num_vars: usize,
        free_rows: Vec<Vec<BigInt>>,
        torsion: Vec<(BigInt, Vec<BigInt>)>,
        irrelevant: MonomialIdeal,
    ) -> Result<Self> {
        let free_rank = free_rows.len();
        let moduli: Vec<BigInt> = torsion.iter().map(|(d, _)| d.clone()).collect();
        for w in moduli.windows(2) {
            if !num_integer::Integer::is_multiple_of(&w[1], &w[0]) {
                return Err(Error::NonSurjectiveClassMap(
                    "torsion moduli must form a divisibility chain".into(),
                ));
            }
        }
        if moduli.iter().any(|d| d < &BigInt::from(2)) {
            return Err(Error::NonSurjectiveClassMap("torsion moduli must be >= 2".into()));
        }
        let mut rows = free_rows;
        rows.extend(torsion.into_iter().map(|(_, r)| r));
        let projection = IntMatrix::from_rows(num_vars, rows)?;
        if irrelevant.nvars() != num_vars {
            return Err(Error::DimensionMismatch(
                "irrelevant ideal lives in the wrong number of variables".into(),
            ));
        }
        // surjectivity: coker of [projection | torsion relations] vanishes
        let total = free_rank + moduli.len();
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..num_vars {
            cols.push(projection.col(j));
        }
        for (t, d) in moduli.iter().enumerate() {
            let mut c = vec![BigInt::zero(); total];
            c[free_rank + t] = d.clone();
            cols.push(c);
        }
        let mut test = IntMatrix::zeros(total, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..total {
                test.set(i, j, c[i].clone());
            }
        }
        let factors = smith_normal_form(&test).invariant_factors();
        if factors.len() != total || factors.iter().any(|f| !f.is_one()) {
            return Err(Error::NonSurjectiveClassMap(format!(
                "invariant factors of the class map are {:?}",
                factors
            )));
        }
        let class_group =
            AbelianGroupPresentation { free_rank, torsion: moduli, projection };
        let class_of_var = (0..num_vars)
            .map(|v| {
                let e: Vec<BigInt> = (0..num_vars)
                    .map(|i| if i == v { BigInt::one() } else { BigInt::zero() })
                    .collect();
                class_group.apply(&e)
            })
            .collect();
        Ok(GradingSetup { num_vars, class_group, class_of_var, irrelevant, fan: None })
    }

    /// The trivial grading by the zero group.
    pub fn trivial(num_vars: usize) -> Self {
        GradingSetup {
            num_vars,
            class_group: AbelianGroupPresentation {
                free_rank: 0,
                torsion: Vec::new(),
                projection: IntMatrix::zeros(0, num_vars),
            },
            class_of_var: vec![
                GroupElement { free: Vec::new(), torsion: Vec::new() };
                num_vars
            ],
            irrelevant: MonomialIdeal::unit(num_vars),
            fan: None,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn class_group(&self) -> &AbelianGroupPresentation {
        &self.class_group
    }

    pub fn class_of_var(&self) -> &[GroupElement] {
        &self.class_of_var
    }

    pub fn irrelevant(&self) -> &MonomialIdeal {
        &self.irrelevant
    }

    pub fn fan(&self) -> Option<&Fan> {
        self.fan.as_deref()
    }

    pub fn require_fan(&self) -> Result<&Fan> {
        self.fan().ok_or(Error::NeedsFan)
    }

    /// Class degree of a fine degree.
    pub fn class_of(&self, fine: &[i64]) -> GroupElement {
        assert_eq!(fine.len(), self.num_vars);
        let v: Vec<BigInt> = fine.iter().map(|&x| BigInt::from(x)).collect();
        self.class_group.apply(&v)
    }

    /// The chart monomial of a character: exponent `<m, n(rho)>` at each
    /// ray. Its class degree is zero by exactness of the class sequence.
    pub fn char_monomial(&self, m: &[i64]) -> Result<LaurentMonomial> {
        let fan = self.require_fan()?;
        if m.len() != fan.dim() {
            return Err(Error::DimensionMismatch(format!(
                "character has dimension {}, lattice has rank {}",
                m.len(),
                fan.dim()
            )));
        }
        let exponents = (0..self.num_vars).map(|rho| fan.pairing(m, rho)).collect();
        Ok(LaurentMonomial { exponents })
    }

    /// Exponent vector of the complement monomial `x(sigma)` of a
    /// maximal cone.
    pub fn chart_monomial_exponents(&self, cone: &Cone) -> Vec<i64> {
        (0..self.num_vars)
            .map(|rho| if cone.rays.contains(&rho) { 0 } else { 1 })
            .collect()
    }

    /// Does the chart of `cone` admit invertible homogeneous functions in
    /// every degree? True iff the classes of the inverted variables
    /// generate the whole class group; holds for smooth cones and is the
    /// chart-level shadow of the free-action hypothesis.
    pub fn chart_invertible_degrees(&self, cone: &Cone) -> Result<bool> {
        let _ = self.require_fan()?;
        let inverted: Vec<usize> =
            (0..self.num_vars).filter(|rho| !cone.rays.contains(rho)).collect();
        let total = self.class_group.free_rank + self.class_group.torsion.len();
        if total == 0 {
            return Ok(true);
        }
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for &j in &inverted {
            cols.push(self.class_group.projection.col(j));
        }
        for (t, d) in self.class_group.torsion.iter().enumerate() {
            let mut c = vec![BigInt::zero(); total];
            c[self.class_group.free_rank + t] = d.clone();
            cols.push(c);
        }
        let mut test = IntMatrix::zeros(total, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..total {
                test.set(i, j, c[i].clone());
            }
        }
        let factors = smith_normal_form(&test).invariant_factors();
        Ok(factors.len() == total && factors.iter().all(|f| f.is_one()))
    }

    /// Is a variable prime relevant, i.e. does it survive on the
    /// complement of the unstable locus? For fan setups this agrees with
    /// containment of the prime's rays in a cone; in general it is the
    /// test "irrelevant ideal not contained in the prime".
    pub fn prime_is_relevant(&self, vars: &BTreeSet<usize>) -> bool {
        match &self.fan {
            Some(fan) => fan.relevant_prime(vars),
            None => {
                let p = MonomialIdeal::variable_prime(self.num_vars, vars);
                !p.contains_ideal(&self.irrelevant)
            }
        }
    }

    /// Dimension on the quotient of the vanishing locus of a relevant
    /// variable prime: ambient torus dimension minus the number of
    /// variables in the prime.
    pub fn dim_on_quotient(&self, vars: &BTreeSet<usize>) -> Result<i64> {
        let fan = self.require_fan()?;
        Ok(fan.dim() as i64 - vars.len() as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::samples;

    #[test]
    fn p2_setup() {
        let s = GradingSetup::from_fan(samples::projective_plane()).unwrap();
        assert_eq!(s.class_group().free_rank, 1);
        assert!(s.class_group().torsion.is_empty());
        for v in s.class_of_var() {
            assert_eq!(v.free, vec![BigInt::one()]);
        }
        // B = <x0, x1, x2>
        let b = s.irrelevant();
        assert!(b.is_variable_prime());
        assert_eq!(b.gens().len(), 3);
    }

    #[test]
    fn quadric_cone_setup() {
        let s = GradingSetup::from_fan(samples::quadric_cone()).unwrap();
        assert_eq!(s.class_group().free_rank, 0);
        assert_eq!(s.class_group().torsion, vec![BigInt::from(2)]);
        for v in s.class_of_var() {
            assert_eq!(v.torsion, vec![BigInt::one()]);
        }
        // single maximal cone with all rays: the empty product is 1
        assert!(s.irrelevant().is_unit());
    }

    #[test]
    fn p1xp1_setup() {
        let s = GradingSetup::from_fan(samples::p1xp1()).unwrap();
        assert_eq!(s.class_group().free_rank, 2);
        assert!(s.class_group().torsion.is_empty());
        // opposite-ray pairs have equal class; the four chart monomials
        // are squarefree of class (1,1)
        let b = s.irrelevant();
        assert_eq!(b.gens().len(), 4);
        let one_one = {
            let mut c = s.class_of_var()[0].clone();
            c = c.add(&s.class_of_var()[2], &[]);
            c
        };
        for g in b.gens() {
            assert!(g.iter().all(|&e| e <= 1));
            assert_eq!(g.iter().sum::<i64>(), 2);
            let fine: Vec<i64> = g.clone();
            assert_eq!(s.class_of(&fine), one_one);
        }
    }

    #[test]
    fn explicit_setup_z_graded_4var() {
        // degrees (1, -1, -1, 1) over Z with B = S
        let s = GradingSetup::explicit(
            4,
            vec![vec![
                BigInt::from(1),
                BigInt::from(-1),
                BigInt::from(-1),
                BigInt::from(1),
            ]],
            vec![],
            MonomialIdeal::unit(4),
        )
        .unwrap();
        assert_eq!(s.class_of(&[1, 0, 0, 0]).free, vec![BigInt::one()]);
        assert_eq!(s.class_of(&[0, 1, 0, 0]).free, vec![BigInt::from(-1)]);
        assert!(s.char_monomial(&[1, 0]).is_err());
    }

    #[test]
    fn explicit_setup_rejects_non_surjective() {
        // image 2Z inside Z is not surjective
        assert!(GradingSetup::explicit(
            2,
            vec![vec![BigInt::from(2), BigInt::from(2)]],
            vec![],
            MonomialIdeal::unit(2),
        )
        .is_err());
    }

    #[test]
    fn trivial_grading_accepted() {
        let s = GradingSetup::trivial(3);
        assert!(s.class_of(&[1, 2, 3]).is_zero());
        assert!(s.irrelevant().is_unit());
    }

    #[test]
    fn char_monomials_have_class_zero() {
        let s = GradingSetup::from_fan(samples::projective_plane()).unwrap();
        assert_eq!(s.char_monomial(&[0, 0]).unwrap().exponents, vec![0, 0, 0]);
        assert_eq!(s.char_monomial(&[1, 0]).unwrap().exponents, vec![1, 0, -1]);
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                let m = s.char_monomial(&[a, b]).unwrap();
                assert!(s.class_of(&m.exponents).is_zero());
            }
        }
    }

    #[test]
    fn chart_units_detect_smoothness() {
        let p2 = GradingSetup::from_fan(samples::projective_plane()).unwrap();
        let fan = samples::projective_plane();
        for c in fan.max_cones() {
            assert!(p2.chart_invertible_degrees(c).unwrap());
        }
        let qc = GradingSetup::from_fan(samples::quadric_cone()).unwrap();
        let fan = samples::quadric_cone();
        // nothing gets inverted on the single chart; Z/2 has no units
        assert!(!qc.chart_invertible_degrees(&fan.max_cones()[0]).unwrap());
    }

    #[test]
    fn relevance_for_explicit_setups() {
        let s = GradingSetup::explicit(
            2,
            vec![vec![BigInt::one(), BigInt::one()]],
            vec![],
            MonomialIdeal::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap(),
        )
        .unwrap();
        assert!(s.prime_is_relevant(&BTreeSet::from([0])));
        assert!(!s.prime_is_relevant(&BTreeSet::from([0, 1])));
    }
}
