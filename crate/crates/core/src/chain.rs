//! Deterministic Schreier–Sims.
//!
//! Each level stores its base point, the strong generators that fix all
//! earlier base points, the basic orbit, and explicit coset representatives
//! (with inverses) for every orbit point. The product of the orbit sizes is
//! the group order.

use crate::perm::Permutation;

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `slot[point]` indexes `reps`/`reps_inv`, or `ABSENT`.
    slot: Vec<u32>,
    /// `reps[k]` maps the base point to `orbit[k]`.
    reps: Vec<Permutation>,
    reps_inv: Vec<Permutation>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut level = Level {
            base_point,
            generators: Vec::new(),
            orbit: Vec::new(),
            slot: Vec::new(),
            reps: Vec::new(),
            reps_inv: Vec::new(),
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        let id = Permutation::identity(degree);
        self.slot.clear();
        self.slot.resize(degree, ABSENT);
        self.orbit.clear();
        self.reps.clear();
        self.reps_inv.clear();

        self.slot[self.base_point] = 0;
        self.orbit.push(self.base_point);
        self.reps.push(id.clone());
        self.reps_inv.push(id);

        let mut head = 0;
        while head < self.orbit.len() {
            let pt = self.orbit[head];
            for s in &self.generators {
                let img = s.apply(pt);
                if self.slot[img] == ABSENT {
                    let rep = self.reps[head].then(s);
                    self.slot[img] = self.orbit.len() as u32;
                    self.orbit.push(img);
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            head += 1;
        }
    }

    #[inline]
    fn rep_inv(&self, point: usize) -> Option<&Permutation> {
        match self.slot[point] {
            ABSENT => None,
            k => Some(&self.reps_inv[k as usize]),
        }
    }
}

/// Base, basic orbits and transversals of a permutation group.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Runs Schreier–Sims on `generators`, which must all have degree `degree`.
    ///
    /// The result depends only on the generator order. Every new base point
    /// is the smallest point moved by the element that forced the new level.
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut gens: Vec<Permutation> = Vec::with_capacity(generators.len());
        for g in generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }

        let mut chain = StabilizerChain { degree, levels: Vec::new() };
        let Some(first) = gens.iter().filter_map(Permutation::first_moved_point).min() else {
            return chain;
        };
        let mut top = Level::new(degree, first);
        top.generators = gens;
        top.rebuild_orbit(degree);
        chain.levels.push(top);
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            match self.find_missing(level) {
                None => i -= 1,
                Some((residue, fail_level)) => {
                    if fail_level == self.levels.len() {
                        let bp = residue.first_moved_point().expect("non-identity residue moves a point");
                        self.levels.push(Level::new(self.degree, bp));
                    }
                    for l in level + 1..=fail_level {
                        self.levels[l].generators.push(residue.clone());
                        self.levels[l].rebuild_orbit(self.degree);
                    }
                    i = fail_level + 1;
                }
            }
        }
    }

    /// Sifts every Schreier generator of `level` through the levels below.
    /// Returns the first residue that does not reduce to the identity.
    fn find_missing(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for (k, &pt) in lv.orbit.iter().enumerate() {
            for s in &lv.generators {
                let img = s.apply(pt);
                let back = lv.rep_inv(img).expect("orbit is closed");
                let schreier = lv.reps[k].then(s).then(back);
                if schreier.is_identity() {
                    continue;
                }
                let (residue, fail) = self.sift_from(schreier, level + 1);
                if fail < self.levels.len() || !residue.is_identity() {
                    return Some((residue, fail));
                }
            }
        }
        None
    }

    fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, lv) in self.levels.iter().enumerate().skip(start) {
            let img = g.apply(lv.base_point);
            match lv.rep_inv(img) {
                None => return (g, l),
                Some(inv) => g = g.then(inv),
            }
        }
        (g, self.levels.len())
    }

    /// Sifts `g` through the whole chain, returning the residue and the level
    /// at which sifting stopped (`base().len()` if it passed every level).
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.sift_from(g.clone(), 0)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, level) = self.sift(g);
        level == self.levels.len() && residue.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn basic_orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    /// Coset representative at `level` mapping the base point to `point`.
    pub fn transversal(&self, level: usize, point: usize) -> Option<&Permutation> {
        let lv = &self.levels[level];
        match lv.slot.get(point) {
            Some(&k) if k != ABSENT => Some(&lv.reps[k as usize]),
            _ => None,
        }
    }

    pub fn strong_generators(&self, level: usize) -> &[Permutation] {
        &self.levels[level].generators
    }

    /// Group order, or `None` if it does not fit in a `u128`.
    pub fn order_checked(&self) -> Option<u128> {
        self.levels.iter().try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    /// Group order. Panics if it exceeds `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.order_checked().expect("group order overflows u128")
    }

    /// Every element as `u_{k-1} ⋯ u_1 u_0`, one transversal element per
    /// level. The identity comes first.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let prefix = Permutation::identity(self.degree);
        self.collect_elements(self.levels.len(), &prefix, &mut out);
        out
    }

    fn collect_elements(&self, depth: usize, prefix: &Permutation, out: &mut Vec<Permutation>) {
        if depth == 0 {
            out.push(prefix.clone());
            return;
        }
        let lv = &self.levels[depth - 1];
        for rep in &lv.reps {
            self.collect_elements(depth - 1, &prefix.then(rep), out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn n_cycle(n: usize) -> Permutation {
        let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Permutation::from_images(&images).unwrap()
    }

    #[test]
    fn symmetric_five() {
        let chain = StabilizerChain::new(5, &[cyc("(1,2)", 5), cyc("(1,2,3,4,5)", 5)]);
        assert_eq!(chain.order(), 120);
        assert_eq!(chain.orbit_sizes().iter().product::<usize>(), 120);
    }

    #[test]
    fn cyclic_fifteen() {
        let chain = StabilizerChain::new(15, &[n_cycle(15)]);
        assert_eq!(chain.order(), 15);
        assert_eq!(chain.base(), vec![0]);
    }

    #[test]
    fn dihedral_thirty() {
        let reflection: Vec<usize> = (0..15).map(|i| (15 - i) % 15).collect();
        let b = Permutation::from_images(&reflection).unwrap();
        let chain = StabilizerChain::new(15, &[n_cycle(15), b]);
        assert_eq!(chain.order(), 30);
    }

    #[test]
    fn trivial_group() {
        let chain = StabilizerChain::new(4, &[Permutation::identity(4)]);
        assert_eq!(chain.order(), 1);
        assert!(chain.base().is_empty());
        assert_eq!(chain.elements(), vec![Permutation::identity(4)]);
        assert!(chain.contains(&Permutation::identity(4)));
        assert!(!chain.contains(&cyc("(1,2)", 4)));
    }

    #[test]
    fn generators_sift_to_identity() {
        let gens = [cyc("(1,2,3)", 6), cyc("(3,4,5,6)", 6), cyc("(1,6)(2,5)", 6)];
        let chain = StabilizerChain::new(6, &gens);
        for g in &gens {
            assert!(chain.contains(g));
        }
        assert_eq!(chain.order(), 720);
    }

    #[test]
    fn alternating_four_excludes_odd() {
        let chain = StabilizerChain::new(4, &[cyc("(1,2,3)", 4), cyc("(2,3,4)", 4)]);
        assert_eq!(chain.order(), 12);
        assert!(!chain.contains(&cyc("(1,2)", 4)));
        assert!(chain.contains(&cyc("(1,2)(3,4)", 4)));
    }

    #[test]
    fn elements_are_distinct_and_complete() {
        let chain = StabilizerChain::new(5, &[cyc("(1,2)", 5), cyc("(1,2,3,4,5)", 5)]);
        let elems = chain.elements();
        assert!(elems[0].is_identity());
        let set: std::collections::HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len(), 120);
        assert!(elems.iter().all(|e| chain.contains(e)));
    }

    #[test]
    fn transversals_map_base_point() {
        let chain = StabilizerChain::new(6, &[cyc("(1,2,3,4,5,6)", 6), cyc("(1,2)", 6)]);
        for (level, &bp) in chain.base().iter().enumerate() {
            for &pt in chain.basic_orbit(level) {
                assert_eq!(chain.transversal(level, pt).unwrap().apply(bp), pt);
            }
        }
    }

    #[test]
    fn large_symmetric_group_order() {
        // S_20 via a transposition and a 20-cycle
        let chain = StabilizerChain::new(20, &[cyc("(1,2)", 20), n_cycle(20)]);
        assert_eq!(chain.order(), (1..=20u128).product());
    }
}
