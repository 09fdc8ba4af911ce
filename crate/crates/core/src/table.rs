//! Exhaustive element tables.
//!
//! Index 0 is always the identity. Conjugacy classes are orbits of the
//! conjugation action of the group generators, found breadth-first in index
//! order; the representative of each class is its least index.

use std::collections::{BTreeMap, HashMap};

use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::primes::{prime_factors_nonzero, PrimeSet};

#[derive(Clone, Debug)]
pub struct ElementTable {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    order_of: Vec<u64>,
    primes_of: Vec<PrimeSet>,
    index_of: HashMap<Permutation, usize>,
    /// `conj_maps[s][i]` is the index of `elements[i]^{generators[s]}`.
    conj_maps: Vec<Vec<u32>>,
    class_of: Vec<usize>,
    class_reps: Vec<usize>,
    /// Members of each class in discovery order, representative first.
    class_members: Vec<Vec<usize>>,
    /// `(parent, s)` with `elements[i] = elements[parent]^{generators[s]}`;
    /// `None` for representatives.
    class_parent: Vec<Option<(usize, usize)>>,
    conjugator: Vec<Permutation>,
}

impl ElementTable {
    /// Enumerates `group` without a size check; see
    /// [`PermutationGroup::enumerate_elements`].
    pub(crate) fn build(group: &PermutationGroup) -> Self {
        let elements = group.chain().elements();
        let degree = group.degree();
        let index_of: HashMap<Permutation, usize> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        debug_assert_eq!(index_of.len(), elements.len());

        let mut order_of = Vec::with_capacity(elements.len());
        let mut primes_of = Vec::with_capacity(elements.len());
        let mut prime_cache: HashMap<u64, PrimeSet> = HashMap::new();
        for e in &elements {
            let order = e.order() as u64;
            order_of.push(order);
            primes_of.push(prime_cache.entry(order).or_insert_with(|| prime_factors_nonzero(order as u128)).clone());
        }

        let generators: Vec<Permutation> = group.generators().iter().filter(|g| !g.is_identity()).cloned().collect();
        let conj_maps: Vec<Vec<u32>> =
            generators.iter().map(|s| elements.iter().map(|e| index_of[&e.conjugate_by(s)] as u32).collect()).collect();

        let mut table = ElementTable {
            degree,
            generators,
            elements,
            order_of,
            primes_of,
            index_of,
            conj_maps,
            class_of: Vec::new(),
            class_reps: Vec::new(),
            class_members: Vec::new(),
            class_parent: Vec::new(),
            conjugator: Vec::new(),
        };
        table.compute_classes();
        table
    }

    fn compute_classes(&mut self) {
        let n = self.elements.len();
        const UNSET: usize = usize::MAX;
        let mut class_of = vec![UNSET; n];
        let mut class_parent = vec![None; n];
        let mut conjugator: Vec<Option<Permutation>> = vec![None; n];
        let mut class_reps = Vec::new();
        let mut class_members = Vec::new();

        for rep in 0..n {
            if class_of[rep] != UNSET {
                continue;
            }
            let class = class_reps.len();
            class_reps.push(rep);
            class_of[rep] = class;
            conjugator[rep] = Some(Permutation::identity(self.degree));
            let mut members = vec![rep];
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for (s, map) in self.conj_maps.iter().enumerate() {
                    let y = map[x] as usize;
                    if class_of[y] == UNSET {
                        class_of[y] = class;
                        class_parent[y] = Some((x, s));
                        let h = conjugator[x].as_ref().expect("parent visited").then(&self.generators[s]);
                        conjugator[y] = Some(h);
                        members.push(y);
                    }
                }
            }
            class_members.push(members);
        }

        self.class_of = class_of;
        self.class_parent = class_parent;
        self.class_reps = class_reps;
        self.class_members = class_members;
        self.conjugator = conjugator.into_iter().map(|c| c.expect("every element classified")).collect();
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The non-identity generators used for the conjugation action.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index_of.get(p).copied()
    }

    pub fn order_of(&self, i: usize) -> u64 {
        self.order_of[i]
    }

    /// π(g) for the element at index `i`.
    pub fn primes_of(&self, i: usize) -> &PrimeSet {
        &self.primes_of[i]
    }

    /// π(G): union of element prime sets (Cauchy).
    pub fn group_primes(&self) -> PrimeSet {
        let mut distinct: Vec<&PrimeSet> = self.primes_of.iter().collect();
        distinct.sort();
        distinct.dedup();
        distinct.into_iter().fold(PrimeSet::new(), |acc, p| acc.union(p))
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_rep(&self, class: usize) -> usize {
        self.class_reps[class]
    }

    pub fn class_reps(&self) -> &[usize] {
        &self.class_reps
    }

    pub fn class_members(&self, class: usize) -> &[usize] {
        &self.class_members[class]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.class_members.iter().map(Vec::len).collect()
    }

    /// `h` with `elements[class_rep(class_of(i))]^h = elements[i]`.
    pub fn conjugator(&self, i: usize) -> &Permutation {
        &self.conjugator[i]
    }

    pub(crate) fn class_parent(&self, i: usize) -> Option<(usize, usize)> {
        self.class_parent[i]
    }

    pub(crate) fn conj_map(&self, generator: usize) -> &[u32] {
        &self.conj_maps[generator]
    }

    /// Element-order histogram.
    pub fn order_histogram(&self) -> BTreeMap<u64, usize> {
        let mut hist = BTreeMap::new();
        for &o in &self.order_of {
            *hist.entry(o).or_insert(0) += 1;
        }
        hist
    }

    /// `{ n ∈ subset : n x = x n }`.
    pub fn centralizer_elements(&self, subset: &[usize], x: usize) -> Vec<usize> {
        let gx = &self.elements[x];
        subset
            .iter()
            .copied()
            .filter(|&n| {
                let gn = &self.elements[n];
                gn.then(gx) == gx.then(gn)
            })
            .collect()
    }

    /// Index of `elements[i] · elements[j]`.
    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.index_of[&self.elements[i].then(&self.elements[j])]
    }

    /// Indices of the elements of `subgroup`, which must lie in this group.
    pub fn subgroup_indices(&self, subgroup: &PermutationGroup) -> Option<Vec<usize>> {
        let mut out: Vec<usize> =
            subgroup.chain().elements().iter().map(|e| self.index_of(e)).collect::<Option<_>>()?;
        out.sort_unstable();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn table(g: &PermutationGroup) -> ElementTable {
        g.enumerate_elements(100_000).unwrap()
    }

    #[test]
    fn cyclic_six_orders() {
        let t = table(&catalog::cyclic(6).unwrap());
        assert_eq!(t.len(), 6);
        assert!(t.element(0).is_identity());
        let hist: Vec<(u64, usize)> = t.order_histogram().into_iter().collect();
        assert_eq!(hist, vec![(1, 1), (2, 1), (3, 2), (6, 2)]);
    }

    #[test]
    fn dihedral_thirty_orders() {
        let t = table(&catalog::dihedral(30).unwrap());
        let hist: Vec<(u64, usize)> = t.order_histogram().into_iter().collect();
        assert_eq!(hist, vec![(1, 1), (2, 15), (3, 2), (5, 4), (15, 8)]);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let t = table(&catalog::cyclic(12).unwrap());
        assert_eq!(t.class_count(), 12);
        for i in 0..t.len() {
            assert!(t.conjugator(i).is_identity());
            assert_eq!(t.class_rep(t.class_of(i)), i);
        }
    }

    #[test]
    fn symmetric_three_classes() {
        let t = table(&catalog::symmetric(3).unwrap());
        let mut sizes = t.class_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn dihedral_thirty_classes() {
        let g = catalog::dihedral(30).unwrap();
        let t = table(&g);
        let a = g.generators()[0].clone();
        let mut sizes = t.class_sizes();
        sizes.sort();
        // identity, seven pairs {a^i, a^-i}, fifteen reflections
        assert_eq!(sizes, [vec![1], vec![2; 7], vec![15]].concat());
        for i in 1..15u64 {
            let x = t.index_of(&a.pow(i)).unwrap();
            let y = t.index_of(&a.pow(15 - i)).unwrap();
            assert_eq!(t.class_of(x), t.class_of(y));
            assert_eq!(t.class_members(t.class_of(x)).len(), 2);
        }
    }

    #[test]
    fn conjugators_verify() {
        for g in [catalog::symmetric(4).unwrap(), catalog::dihedral(30).unwrap(), catalog::sl23()] {
            let t = table(&g);
            for i in 0..t.len() {
                let rep = t.element(t.class_rep(t.class_of(i)));
                assert_eq!(&rep.conjugate_by(t.conjugator(i)), t.element(i));
                assert!(t.class_rep(t.class_of(i)) <= i);
            }
        }
    }

    #[test]
    fn centralizer_examples() {
        let g = catalog::dihedral(30).unwrap();
        let t = table(&g);
        assert_eq!(t.centralizer_elements(&[0], 5), vec![0]);

        let rotations = t.subgroup_indices(&g.normal_closure(&[g.generators()[0].clone()]).unwrap()).unwrap();
        assert_eq!(rotations.len(), 15);
        let b = t.index_of(&g.generators()[1]).unwrap();
        assert_eq!(t.centralizer_elements(&rotations, b), vec![0]);

        let c = table(&catalog::cyclic(10).unwrap());
        let all: Vec<usize> = (0..10).collect();
        assert_eq!(c.centralizer_elements(&all, 3), all);
    }

    #[test]
    fn orbit_stabilizer() {
        for g in [catalog::symmetric(5).unwrap(), catalog::dihedral(30).unwrap(), catalog::sl23(), catalog::psl27()] {
            let t = table(&g);
            let all: Vec<usize> = (0..t.len()).collect();
            for &rep in t.class_reps() {
                let class_size = t.class_members(t.class_of(rep)).len();
                assert_eq!(class_size * t.centralizer_elements(&all, rep).len(), t.len());
            }
        }
    }

    #[test]
    fn class_of_is_conjugation_invariant() {
        let t = table(&catalog::symmetric(4).unwrap());
        for i in 0..t.len() {
            for h in t.elements() {
                let j = t.index_of(&t.element(i).conjugate_by(h)).unwrap();
                assert_eq!(t.class_of(i), t.class_of(j));
            }
        }
    }
}
