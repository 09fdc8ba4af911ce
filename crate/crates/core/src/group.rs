use std::fmt;
use std::sync::OnceLock;

use crate::chain::StabilizerChain;
use crate::error::{GroupError, PermError};
use crate::perm::Permutation;
use crate::primes::{prime_factors_nonzero, PrimeSet};
use crate::table::ElementTable;

/// Default bound on the number of elements `enumerate_elements` will list.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// Longest derived series `is_solvable` will follow before giving up.
pub const DERIVED_SERIES_LIMIT: usize = 64;

/// A permutation group given by generators. The stabilizer chain is built on
/// first use and cached.
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if generators.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, bad.degree()).into());
        }
        Ok(PermutationGroup { degree, generators, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup::new(degree, vec![Permutation::identity(degree)])
            .expect("identity generator has the right degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain.get_or_init(|| StabilizerChain::new(self.degree, &self.generators))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    /// π(G), read off the basic orbit lengths so that no large number is
    /// ever factored.
    pub fn primes(&self) -> PrimeSet {
        self.chain()
            .orbit_sizes()
            .into_iter()
            .fold(PrimeSet::new(), |acc, len| acc.union(&prime_factors_nonzero(len as u128)))
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, PermError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(self.chain().contains(p))
    }

    /// Lists all elements with orders, prime sets and conjugacy classes.
    pub fn enumerate_elements(&self, cap: usize) -> Result<ElementTable, GroupError> {
        let order = self.chain().order_checked().unwrap_or(u128::MAX);
        if order > cap as u128 {
            return Err(GroupError::CapExceeded { order, cap });
        }
        Ok(ElementTable::build(self))
    }

    /// Smallest subgroup containing `seeds` and closed under conjugation by
    /// the generators of `self`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermutationGroup, GroupError> {
        for s in seeds {
            if !self.contains(s)? {
                return Err(GroupError::NotInGroup(s.format_cycles()));
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for s in seeds {
            if !s.is_identity() && !gens.contains(s) {
                gens.push(s.clone());
            }
        }
        if gens.is_empty() {
            return Ok(PermutationGroup::trivial(self.degree));
        }

        let mut chain = StabilizerChain::new(self.degree, &gens);
        let mut next = 0;
        while next < gens.len() {
            let h = gens[next].clone();
            next += 1;
            for g in &self.generators {
                let c = h.conjugate_by(g);
                if !chain.contains(&c) {
                    gens.push(c);
                    chain = StabilizerChain::new(self.degree, &gens);
                }
            }
        }
        let closure = PermutationGroup::new(self.degree, gens)?;
        let _ = closure.chain.set(chain);
        Ok(closure)
    }

    /// Normal closure of the commutators of all generator pairs.
    pub fn derived_subgroup(&self) -> PermutationGroup {
        let mut commutators = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() && !commutators.contains(&c) {
                    commutators.push(c);
                }
            }
        }
        self.normal_closure(&commutators).expect("commutators of generators lie in the group")
    }

    /// Follows the derived series until it reaches the trivial group
    /// (solvable) or stabilizes at a nontrivial perfect group (not solvable).
    pub fn is_solvable(&self) -> Result<bool, GroupError> {
        let mut current = self.derived_subgroup();
        let mut previous_order = self.order();
        for _ in 0..DERIVED_SERIES_LIMIT {
            let order = current.order();
            if order == 1 {
                return Ok(true);
            }
            if order == previous_order {
                return Ok(false);
            }
            previous_order = order;
            current = current.derived_subgroup();
        }
        Err(GroupError::DerivedSeriesTooLong(DERIVED_SERIES_LIMIT))
    }
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        PermutationGroup { degree: self.degree, generators: self.generators.clone(), chain: self.chain.clone() }
    }
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationGroup").field("degree", &self.degree).field("generators", &self.generators).finish()
    }
}

/// |⟨x, y⟩| from a fresh stabilizer chain.
pub fn two_generated_order(x: &Permutation, y: &Permutation) -> Result<u128, PermError> {
    if x.degree() != y.degree() {
        return Err(PermError::DegreeMismatch(x.degree(), y.degree()));
    }
    Ok(StabilizerChain::new(x.degree(), &[x.clone(), y.clone()]).order())
}
