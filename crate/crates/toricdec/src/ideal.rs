//! Monomial ideals with minimal generator sets: colon, saturation,
//! intersection, irreducible decomposition and associated primes.
//!
//! Exponent vectors are plain `i64` slices; generator lists are kept
//! minimal (no generator divides another) and sorted in graded
//! lexicographic order so equal ideals compare equal.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub type Exponents = Vec<i64>;

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn grlex(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let ta: i64 = a.iter().sum();
    let tb: i64 = b.iter().sum();
    ta.cmp(&tb).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Exponents>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Exponents>) -> Result<Self> {
        for g in &gens {
            if g.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "generator {:?} does not have {} exponents",
                    g, nvars
                )));
            }
            if g.iter().any(|&e| e < 0) {
                return Err(Error::DimensionMismatch(format!(
                    "generator {:?} has a negative exponent",
                    g
                )));
            }
        }
        let mut ideal = MonomialIdeal { nvars, gens };
        ideal.minimalize();
        Ok(ideal)
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![vec![0; nvars]] }
    }

    /// The prime generated by the variables in `vars`.
    pub fn variable_prime(nvars: usize, vars: &BTreeSet<usize>) -> Self {
        let gens = vars
            .iter()
            .map(|&i| {
                let mut e = vec![0; nvars];
                e[i] = 1;
                e
            })
            .collect();
        let mut ideal = MonomialIdeal { nvars, gens };
        ideal.minimalize();
        ideal
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Exponents] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    fn minimalize(&mut self) {
        self.gens.sort_by(|a, b| grlex(a, b));
        self.gens.dedup();
        let mut keep = vec![true; self.gens.len()];
        for i in 0..self.gens.len() {
            if !keep[i] {
                continue;
            }
            for j in 0..self.gens.len() {
                if i != j && keep[j] && divides(&self.gens[i], &self.gens[j]) {
                    keep[j] = false;
                }
            }
        }
        let mut out = Vec::new();
        for (g, k) in self.gens.drain(..).zip(keep) {
            if k {
                out.push(g);
            }
        }
        self.gens = out;
    }

    pub fn contains_monomial(&self, m: &[i64]) -> bool {
        self.gens.iter().any(|g| divides(g, m))
    }

    /// Ideal containment: every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains_monomial(g))
    }

    /// `(I : x^f)`, computed generator-wise.
    pub fn colon_monomial(&self, f: &[i64]) -> MonomialIdeal {
        assert_eq!(f.len(), self.nvars);
        let gens = self
            .gens
            .iter()
            .map(|g| g.iter().zip(f).map(|(a, b)| (a - b).max(0)).collect())
            .collect();
        let mut out = MonomialIdeal { nvars: self.nvars, gens };
        out.minimalize();
        out
    }

    /// `(I : J) = intersection over generators of J of (I : g)`.
    pub fn colon_ideal(&self, j: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(j.nvars, self.nvars);
        let mut parts = j.gens.iter().map(|g| self.colon_monomial(g));
        let Some(first) = parts.next() else {
            // (I : 0) is the whole ring
            return MonomialIdeal::unit(self.nvars);
        };
        parts.fold(first, |acc, p| acc.intersect(&p))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.nvars, other.nvars);
        let mut gens = Vec::new();
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.iter().zip(h).map(|(a, b)| *a.max(b)).collect());
            }
        }
        let mut out = MonomialIdeal { nvars: self.nvars, gens };
        out.minimalize();
        out
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.nvars, other.nvars);
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        let mut out = MonomialIdeal { nvars: self.nvars, gens };
        out.minimalize();
        out
    }

    /// `(I : J^infinity)` by iterating generator-wise colons until stable.
    ///
    /// Saturating by the unit ideal yields the unit ideal: degenerate
    /// quotients count as torsion, matching the gap-module convention used
    /// by the descent examples.
    pub fn saturate(&self, j: &MonomialIdeal) -> MonomialIdeal {
        if j.is_unit() {
            return MonomialIdeal::unit(self.nvars);
        }
        let mut cur = self.clone();
        loop {
            let next = cur.colon_ideal(j);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Squarefree part of the generators; same radical, same support.
    pub fn radical(&self) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| g.iter().map(|&e| if e > 0 { 1 } else { 0 }).collect())
            .collect();
        let mut out = MonomialIdeal { nvars: self.nvars, gens };
        out.minimalize();
        out
    }

    /// Variable indices occurring in some generator.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for g in &self.gens {
            for (i, &e) in g.iter().enumerate() {
                if e > 0 {
                    s.insert(i);
                }
            }
        }
        s
    }

    /// True iff the generators are single variables. For monomial ideals
    /// this is exactly the fine-graded prime condition: a product of
    /// monomials lies in the ideal iff one factor does.
    pub fn is_variable_prime(&self) -> bool {
        self.gens.iter().all(|g| g.iter().sum::<i64>() == 1)
    }

    /// Splits a mixed generator `x^a = u * v` with coprime nontrivial
    /// parts into `(I + <u>) cap (I + <v>)` recursively; components are
    /// generated by pure powers of variables, and their intersection is
    /// the ideal itself. Redundant components are dropped.
    pub fn irreducible_decomposition(&self) -> Result<Vec<MonomialIdeal>> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let mut stack = vec![self.clone()];
        let mut components: Vec<MonomialIdeal> = Vec::new();
        while let Some(i) = stack.pop() {
            let mixed = i
                .gens
                .iter()
                .position(|g| g.iter().filter(|&&e| e > 0).count() > 1);
            match mixed {
                None => components.push(i),
                Some(k) => {
                    let g = i.gens[k].clone();
                    let var = g.iter().position(|&e| e > 0).expect("nonzero generator");
                    let mut u = vec![0; self.nvars];
                    u[var] = g[var];
                    let v: Vec<i64> =
                        g.iter().enumerate().map(|(t, &e)| if t == var { 0 } else { e }).collect();
                    let with_u = i.sum(&MonomialIdeal { nvars: self.nvars, gens: vec![u] });
                    let with_v = i.sum(&MonomialIdeal { nvars: self.nvars, gens: vec![v] });
                    stack.push(with_u);
                    stack.push(with_v);
                }
            }
        }
        components.sort_by(|a, b| a.gens.len().cmp(&b.gens.len()).then_with(|| a.gens.cmp(&b.gens)));
        components.dedup();
        // Greedy irredundancy: drop a component whenever the intersection
        // of the remaining ones already lies inside it. The invariant
        // "intersection of kept = I" holds after every removal.
        let mut kept = components;
        let mut i = 0;
        while i < kept.len() && kept.len() > 1 {
            let rest = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| c)
                .fold(None::<MonomialIdeal>, |acc, c| {
                    Some(match acc {
                        None => c.clone(),
                        Some(a) => a.intersect(c),
                    })
                })
                .expect("at least one other component");
            if kept[i].contains_ideal(&rest) {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(kept)
    }

    /// The supports of the irreducible components, each certified by a
    /// witness monomial `w` with `(I : w)` equal to that variable prime.
    pub fn associated_primes(&self) -> Result<Vec<AssociatedPrime>> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let comps = self.irreducible_decomposition()?;
        let mut supports: Vec<BTreeSet<usize>> = Vec::new();
        for c in &comps {
            let s = c.support();
            if !supports.contains(&s) {
                supports.push(s);
            }
        }
        supports.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut out = Vec::new();
        for p in supports {
            let witness = self.find_witness(&p).ok_or_else(|| {
                Error::Internal(format!("no annihilator witness found for prime {:?}", p))
            })?;
            out.push(AssociatedPrime { vars: p, witness });
        }
        Ok(out)
    }

    /// Search the staircase box for `w` with `(I : w) = <vars>`. A witness
    /// always exists inside the box spanned by the generator exponents.
    fn find_witness(&self, vars: &BTreeSet<usize>) -> Option<Exponents> {
        let prime = MonomialIdeal::variable_prime(self.nvars, vars);
        let mut bound = vec![0i64; self.nvars];
        for g in &self.gens {
            for (i, &e) in g.iter().enumerate() {
                bound[i] = bound[i].max(e);
            }
        }
        let mut w = vec![0i64; self.nvars];
        loop {
            if !self.contains_monomial(&w) && self.colon_monomial(&w) == prime {
                return Some(w);
            }
            // odometer over the box
            let mut i = 0;
            loop {
                if i == self.nvars {
                    return None;
                }
                if w[i] < bound[i] {
                    w[i] += 1;
                    break;
                }
                w[i] = 0;
                i += 1;
            }
        }
    }
}

/// An associated variable prime and a monomial whose annihilator mod the
/// ideal is exactly that prime.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AssociatedPrime {
    pub vars: BTreeSet<usize>,
    pub witness: Exponents,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(nvars: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(nvars, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn minimal_generators() {
        let i = ideal(2, &[&[2, 1], &[2, 2], &[3, 0]]);
        assert_eq!(i.gens(), &[vec![2, 1], vec![3, 0]]);
    }

    #[test]
    fn colon_examples() {
        // (x^2 y : x) = x y
        let i = ideal(2, &[&[2, 1]]);
        assert_eq!(i.colon_monomial(&[1, 0]).gens(), &[vec![1, 1]]);
        // (<x1^2, x2> : x1) = <x1, x2>
        let i = ideal(2, &[&[2, 0], &[0, 1]]);
        assert_eq!(i.colon_monomial(&[1, 0]).gens(), &[vec![0, 1], vec![1, 0]]);
        // (I : 1) = I
        let i = ideal(2, &[&[2, 1], &[0, 3]]);
        assert_eq!(i.colon_monomial(&[0, 0]), i);
    }

    #[test]
    fn saturation_examples() {
        // <x^2 y, x^3> : x^infty = <1>: x^3 already clears everything
        let i = ideal(2, &[&[2, 1], &[3, 0]]);
        let s = i.saturate(&ideal(2, &[&[1, 0]]));
        assert!(s.is_unit());
        // brute-force oracle on the same example, monomials up to degree 6
        for a in 0..=6i64 {
            for b in 0..=(6 - a) {
                let m = vec![a, b];
                let in_sat = (0..=6).any(|k| i.contains_monomial(&[a + k, b]));
                assert_eq!(s.contains_monomial(&m), in_sat, "monomial {:?}", m);
            }
        }
        // unit convention
        assert!(i.saturate(&MonomialIdeal::unit(2)).is_unit());
        // a prime is saturated with respect to anything outside it
        let p = ideal(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let j = ideal(3, &[&[0, 0, 2]]);
        assert_eq!(p.saturate(&j), p);
    }

    #[test]
    fn saturation_idempotent() {
        let i = ideal(3, &[&[2, 1, 0], &[0, 3, 1], &[1, 1, 1]]);
        let j = ideal(3, &[&[1, 0, 0], &[0, 0, 1]]);
        let s1 = i.saturate(&j);
        let s2 = s1.saturate(&j);
        assert_eq!(s1, s2);
    }

    #[test]
    fn irreducible_decomposition_examples() {
        // already pure powers
        let i = ideal(4, &[&[2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let d = i.irreducible_decomposition().unwrap();
        assert_eq!(d, vec![i.clone()]);

        // <xy> = <x> cap <y>
        let i = ideal(2, &[&[1, 1]]);
        let d = i.irreducible_decomposition().unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.contains(&ideal(2, &[&[1, 0]])));
        assert!(d.contains(&ideal(2, &[&[0, 1]])));

        // <xy, xz, yz> = three pair primes
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let d = i.irreducible_decomposition().unwrap();
        assert_eq!(d.len(), 3);
        for pair in [[0, 1], [0, 2], [1, 2]] {
            let p = MonomialIdeal::variable_prime(3, &BTreeSet::from(pair));
            assert!(d.contains(&p));
        }
        // recombination, brute force over a degree box
        let inter = d.iter().skip(1).fold(d[0].clone(), |a, c| a.intersect(c));
        assert_eq!(inter, i);
    }

    #[test]
    fn associated_primes_examples() {
        let p = ideal(2, &[&[1, 0], &[0, 1]]);
        let ass = p.associated_primes().unwrap();
        assert_eq!(ass.len(), 1);
        assert_eq!(ass[0].vars, BTreeSet::from([0, 1]));

        // <x^2, xy>: minimal prime {x} plus embedded {x, y}
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        let ass = i.associated_primes().unwrap();
        let vars: Vec<BTreeSet<usize>> = ass.iter().map(|a| a.vars.clone()).collect();
        assert_eq!(vars, vec![BTreeSet::from([0]), BTreeSet::from([0, 1])]);
        for a in &ass {
            let prime = MonomialIdeal::variable_prime(2, &a.vars);
            assert_eq!(i.colon_monomial(&a.witness), prime, "witness check");
            assert!(!i.contains_monomial(&a.witness));
        }

        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let ass = i.associated_primes().unwrap();
        assert_eq!(ass.len(), 3);
        assert!(ass.iter().all(|a| a.vars.len() == 2));
    }

    #[test]
    fn variable_prime_test() {
        assert!(ideal(3, &[&[1, 0, 0], &[0, 0, 1]]).is_variable_prime());
        assert!(!ideal(2, &[&[2, 0]]).is_variable_prime());
        assert!(ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).is_variable_prime());
        assert!(!MonomialIdeal::unit(2).is_variable_prime());
        assert!(MonomialIdeal::zero(2).is_variable_prime());
    }

    #[test]
    fn unit_ideal_rejected() {
        assert!(MonomialIdeal::unit(2).irreducible_decomposition().is_err());
        assert!(MonomialIdeal::unit(2).associated_primes().is_err());
    }
}
