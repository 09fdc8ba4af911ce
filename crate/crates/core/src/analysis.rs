//! Prime-set analysis of a group and its non-two-primes graph, and the
//! verification harness that checks connectivity, the diameter bound and
//! the supporting distance properties on concrete groups.
//!
//! Notation used throughout: π(G) is the set of primes dividing |G| and
//! π̃(G) its size; π(g), π̃(g) are the same for the order of an element;
//! Σ(G) is the set of elements with π̃(g) ≥ 2; Ω_n(G) is the set of
//! non-isolated elements whose order is divisible by the squarefree `n` and
//! has no prime divisor outside those of `n`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{AnalysisError, GroupError};
use crate::graph::{BuildOptions, Diameter, DiameterMode, NonFGraph};
use crate::group::{two_generated_order, PermutationGroup};
use crate::perm::Permutation;
use crate::primes::{is_squarefree, prime_factors, prime_factors_nonzero, PrimeSet};
use crate::table::ElementTable;

/// Σ(G): indices of elements whose order has at least two prime divisors.
pub fn sigma_set(table: &ElementTable) -> Vec<usize> {
    (0..table.len()).filter(|&i| table.primes_of(i).len() >= 2).collect()
}

/// Ω_n(G) for a squarefree `n`. Only defined on threshold-3 graphs.
pub fn omega_set(graph: &NonFGraph, n: u128) -> Result<Vec<usize>, AnalysisError> {
    if graph.threshold() != 3 {
        return Err(AnalysisError::UnsupportedThreshold(graph.threshold()));
    }
    if !is_squarefree(n) {
        return Err(AnalysisError::NotSquarefree(n));
    }
    let support = prime_factors_nonzero(n);
    let table = graph.table();
    Ok(graph
        .vertices()
        .iter()
        .copied()
        .filter(|&i| u128::from(table.order_of(i)) % n == 0 && table.primes_of(i).is_subset(&support))
        .collect())
}

/// The Gruenberg–Kegel prime graph: primes dividing |G|, with `p - q`
/// whenever some element has order exactly `pq`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeGraph {
    pub vertices: PrimeSet,
    /// Sorted pairs `(p, q)` with `p < q`.
    pub edges: Vec<(u64, u64)>,
    /// Connected components, each sorted, ordered by smallest prime.
    pub components: Vec<Vec<u64>>,
}

impl PrimeGraph {
    pub fn has_edge(&self, p: u64, q: u64) -> bool {
        let key = (p.min(q), p.max(q));
        self.edges.binary_search(&key).is_ok()
    }

    fn degree(&self, p: u64) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == p || b == p).count()
    }
}

pub fn prime_graph(table: &ElementTable) -> PrimeGraph {
    let vertices = table.group_primes();
    let mut edges: Vec<(u64, u64)> = table
        .order_histogram()
        .into_keys()
        .filter_map(|order| {
            let primes = prime_factors_nonzero(u128::from(order));
            match primes.as_slice() {
                &[p, q] if p * q == order => Some((p, q)),
                _ => None,
            }
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();

    let ps = vertices.as_slice();
    let mut parent: Vec<usize> = (0..ps.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(p, q) in &edges {
        let a = ps.binary_search(&p).expect("edge primes divide |G|");
        let b = ps.binary_search(&q).expect("edge primes divide |G|");
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut components: Vec<Vec<u64>> = Vec::new();
    let mut root_slot: Vec<Option<usize>> = vec![None; ps.len()];
    for (i, &p) in ps.iter().enumerate() {
        let root = find(&mut parent, i);
        match root_slot[root] {
            Some(slot) => components[slot].push(p),
            None => {
                root_slot[root] = Some(components.len());
                components.push(vec![p]);
            }
        }
    }

    PrimeGraph { vertices, edges, components }
}

/// Labeling `p - r - q` of a prime graph that is a path on three vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathLabeling {
    pub p: u64,
    pub r: u64,
    pub q: u64,
}

/// The centre `r` and ends `p < q` when the prime graph has exactly three
/// vertices and exactly two edges.
pub fn is_path_on_three(pg: &PrimeGraph) -> Option<PathLabeling> {
    if pg.vertices.len() != 3 || pg.edges.len() != 2 {
        return None;
    }
    let r = pg.vertices.iter().find(|&v| pg.degree(v) == 2)?;
    let mut ends = pg.vertices.iter().filter(|&v| v != r);
    let (p, q) = (ends.next()?, ends.next()?);
    Some(PathLabeling { p, r, q })
}

/// Result of one property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Witness),
    NotApplicable,
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    fn label(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "fail",
            Outcome::NotApplicable => "not_applicable",
        }
    }
}

/// Concrete counterexample attached to a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Elements in 1-based cycle notation.
    pub elements: Vec<String>,
    pub detail: String,
}

impl Witness {
    fn new(table: &ElementTable, indices: &[usize], detail: impl Into<String>) -> Self {
        Witness { elements: indices.iter().map(|&i| table.element(i).format_cycles()).collect(), detail: detail.into() }
    }
}

/// Higman's theorem and its corollary, for solvable groups: if every element
/// has prime-power order then π̃(G) ≤ 2, and if some element is not isolated
/// then Σ(G) is nonempty.
pub fn check_higman(group: &PermutationGroup, graph: &NonFGraph) -> Result<Outcome, GroupError> {
    Ok(higman_outcome(group.is_solvable()?, graph))
}

fn higman_outcome(solvable: bool, graph: &NonFGraph) -> Outcome {
    if !solvable {
        return Outcome::NotApplicable;
    }
    let table = graph.table();
    let sigma_empty = sigma_set(table).is_empty();
    let primes = table.group_primes();
    if sigma_empty && primes.len() > 2 {
        return Outcome::Fail(Witness {
            elements: vec![],
            detail: format!("every element has prime-power order but π(G) = {primes}"),
        });
    }
    if sigma_empty && !graph.vertices().is_empty() {
        return Outcome::Fail(Witness::new(table, &graph.vertices()[..1], "vertex exists but Σ(G) is empty"));
    }
    Outcome::Pass
}

/// Checks that `subset` is a nontrivial prime-power subgroup closed under
/// conjugation by the group generators; returns its prime.
fn normal_prime_power(table: &ElementTable, subset: &[usize]) -> Result<u64, AnalysisError> {
    let primes = prime_factors(subset.len() as u128)?;
    if primes.len() != 1 {
        return Err(AnalysisError::NotPrimePower(subset.len()));
    }
    let mut member = vec![false; table.len()];
    for &i in subset {
        member[i] = true;
    }
    for s in 0..table.generators().len() {
        let map = table.conj_map(s);
        if subset.iter().any(|&i| !member[map[i] as usize]) {
            return Err(AnalysisError::NotNormal);
        }
    }
    Ok(primes.as_slice()[0])
}

fn prime_divides_generated(table: &ElementTable, a: usize, b: usize, p: u64) -> bool {
    if table.order_of(a).is_multiple_of(p) || table.order_of(b).is_multiple_of(p) {
        return true;
    }
    let order = two_generated_order(table.element(a), table.element(b)).expect("same degree");
    order.is_multiple_of(u128::from(p))
}

/// For a normal `p`-subgroup `N` and elements `x₁, x₂`, searches `N × N`
/// for `(n₁, n₂)` with `p | |⟨x₁n₁, x₂n₂⟩|`.
pub fn check_rdivides(table: &ElementTable, normal: &[usize], x1: usize, x2: usize) -> Result<Outcome, AnalysisError> {
    let p = normal_prime_power(table, normal)?;
    for &n1 in normal {
        let a = table.multiply(x1, n1);
        for &n2 in normal {
            if prime_divides_generated(table, a, table.multiply(x2, n2), p) {
                return Ok(Outcome::Pass);
            }
        }
    }
    Ok(Outcome::Fail(Witness::new(
        table,
        &[x1, x2],
        format!("no translate pair by N (|N| = {}) generates a subgroup of order divisible by {p}", normal.len()),
    )))
}

/// For a normal `p`-subgroup `N` with `C_N(x) = 1`, searches `N` for `n`
/// with `p | |⟨x, yn⟩|`. Not applicable when `x` centralizes a nontrivial
/// element of `N`.
pub fn check_fpf(table: &ElementTable, normal: &[usize], x: usize, y: usize) -> Result<Outcome, AnalysisError> {
    let p = normal_prime_power(table, normal)?;
    if table.centralizer_elements(normal, x).len() != 1 {
        return Ok(Outcome::NotApplicable);
    }
    for &n in normal {
        if prime_divides_generated(table, x, table.multiply(y, n), p) {
            return Ok(Outcome::Pass);
        }
    }
    Ok(Outcome::Fail(Witness::new(
        table,
        &[x, y],
        format!("no n in N (|N| = {}) makes |⟨x, yn⟩| divisible by {p}", normal.len()),
    )))
}

/// Tally of an exhaustive lemma sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteTally {
    pub instances: usize,
    pub passed: usize,
    pub not_applicable: usize,
    pub failures: Vec<Witness>,
}

impl SuiteTally {
    fn record(&mut self, outcome: Outcome) {
        self.instances += 1;
        match outcome {
            Outcome::Pass => self.passed += 1,
            Outcome::NotApplicable => self.not_applicable += 1,
            Outcome::Fail(w) => self.failures.push(w),
        }
    }
}

/// [`check_rdivides`] over every pair `(x₁, x₂)` of the group.
pub fn rdivides_sweep(table: &ElementTable, normal: &[usize]) -> Result<SuiteTally, AnalysisError> {
    normal_prime_power(table, normal)?;
    let mut tally = SuiteTally::default();
    for x1 in 0..table.len() {
        for x2 in 0..table.len() {
            tally.record(check_rdivides(table, normal, x1, x2)?);
        }
    }
    Ok(tally)
}

/// [`check_fpf`] over every pair `(x, y)` of the group.
pub fn fpf_sweep(table: &ElementTable, normal: &[usize]) -> Result<SuiteTally, AnalysisError> {
    normal_prime_power(table, normal)?;
    let mut tally = SuiteTally::default();
    for x in 0..table.len() {
        for y in 0..table.len() {
            tally.record(check_fpf(table, normal, x, y)?);
        }
    }
    Ok(tally)
}

/// Every nontrivial normal subgroup of prime-power order that is generated
/// by conjugacy classes, as sorted element indices. These are the `N` over
/// which [`rdivides_sweep`] and [`fpf_sweep`] are run.
pub fn normal_prime_power_subgroups(
    group: &PermutationGroup,
    table: &ElementTable,
) -> Result<Vec<Vec<usize>>, GroupError> {
    let mut found: Vec<(u64, Vec<Permutation>, Vec<usize>)> = Vec::new();
    let push = |found: &mut Vec<(u64, Vec<Permutation>, Vec<usize>)>, seeds: Vec<Permutation>| {
        let closure = group.normal_closure(&seeds)?;
        let primes = prime_factors_nonzero(closure.order());
        if primes.len() != 1 {
            return Ok::<_, GroupError>(());
        }
        let members = table.subgroup_indices(&closure).expect("closure lies in the group");
        if !found.iter().any(|(_, _, m)| *m == members) {
            found.push((primes.as_slice()[0], seeds, members));
        }
        Ok(())
    };
    for &r in table.class_reps() {
        if table.primes_of(r).len() == 1 {
            push(&mut found, vec![table.element(r).clone()])?;
        }
    }
    // Joins of two normal p-subgroups are normal p-subgroups; close under them.
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            if found[i].0 == found[j].0 {
                let seeds: Vec<Permutation> = found[i].1.iter().chain(&found[j].1).cloned().collect();
                push(&mut found, seeds)?;
            }
        }
        i += 1;
    }
    Ok(found.into_iter().map(|(_, _, m)| m).collect())
}

/// One named check in a [`VerificationReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaResult {
    pub name: &'static str,
    pub outcome: Outcome,
}

impl Serialize for LemmaResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let witness = match &self.outcome {
            Outcome::Fail(w) => Some(w),
            _ => None,
        };
        let mut st = serializer.serialize_struct("LemmaResult", if witness.is_some() { 3 } else { 2 })?;
        st.serialize_field("name", self.name)?;
        st.serialize_field("outcome", self.outcome.label())?;
        if let Some(w) = witness {
            st.serialize_field("witness", w)?;
        }
        st.end()
    }
}

/// Names of the checks in a report, in report order.
pub mod checks {
    pub const CONNECTED_DIAMETER_AT_MOST_5: &str = "connected_diameter_at_most_5";
    pub const SOLVABLE_PRIME_POWER_ORDERS: &str = "solvable_prime_power_orders";
    pub const THREE_PRIME_ELEMENT_NO_ISOLATED: &str = "three_prime_element_no_isolated";
    pub const SIGMA_PAIRS_WITHIN_2: &str = "sigma_pairs_within_2";
    pub const VERTEX_WITHIN_2_OF_SIGMA: &str = "vertex_within_2_of_sigma";
    pub const LONG_DIAMETER_PRIME_GRAPH_PATH: &str = "long_diameter_prime_graph_path";
    pub const SOLVABLE_FOUR_PRIMES_DIAMETER_AT_MOST_3: &str = "solvable_four_primes_diameter_at_most_3";
    pub const SOLVABLE_THREE_PRIMES_DIAMETER_AT_MOST_5: &str = "solvable_three_primes_diameter_at_most_5";
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub order: u64,
    pub primes: PrimeSet,
    pub solvable: bool,
    pub isolated_count: usize,
    /// `"empty"`, `"disconnected"` or `"connected"`.
    pub status: &'static str,
    pub diameter: Option<u32>,
    pub max_pi_tilde: usize,
    pub sigma_count: usize,
    pub prime_graph: PrimeGraph,
    pub lemmas: Vec<LemmaResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.lemmas.iter().any(|l| l.outcome.is_fail())
    }

    pub fn lemma(&self, name: &str) -> Option<&Outcome> {
        self.lemmas.iter().find(|l| l.name == name).map(|l| &l.outcome)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Enumerates `group`, builds its threshold-3 graph and runs every check.
pub fn verify_theorem(group: &PermutationGroup, id: &str, cap: usize) -> Result<VerificationReport, GroupError> {
    verify_theorem_with(group, id, cap, 1)
}

pub fn verify_theorem_with(
    group: &PermutationGroup,
    id: &str,
    cap: usize,
    jobs: usize,
) -> Result<VerificationReport, GroupError> {
    let table = Arc::new(group.enumerate_elements(cap)?);
    let graph = NonFGraph::build(table, BuildOptions { jobs, ..BuildOptions::default() });
    let solvable = group.is_solvable()?;
    Ok(verify_graph(&graph, id, solvable))
}

/// Runs every check on an already built threshold-3 graph.
pub fn verify_graph(graph: &NonFGraph, id: &str, solvable: bool) -> VerificationReport {
    use checks::*;
    assert_eq!(graph.threshold(), 3, "verification is defined for threshold 3");
    let table = graph.table();
    let primes = table.group_primes();
    let pi_tilde = primes.len();
    let sigma = sigma_set(table);
    let max_pi_tilde = (0..table.len()).map(|i| table.primes_of(i).len()).max().unwrap_or(0);
    let diameter = graph.diameter(DiameterMode::ClassRepresentatives);
    let pg = prime_graph(table);
    let nonempty = !graph.vertices().is_empty();

    let mut lemmas = Vec::new();
    let mut push = |name, outcome| lemmas.push(LemmaResult { name, outcome });

    push(
        CONNECTED_DIAMETER_AT_MOST_5,
        match diameter {
            Diameter::Empty => Outcome::Pass,
            Diameter::Connected(d) if d <= 5 => Outcome::Pass,
            Diameter::Connected(d) => diameter_failure(graph, d, 5),
            Diameter::Disconnected { witness: (a, b) } => {
                Outcome::Fail(Witness::new(table, &[a, b], "no path between these vertices"))
            }
        },
    );

    push(SOLVABLE_PRIME_POWER_ORDERS, higman_outcome(solvable, graph));

    push(
        THREE_PRIME_ELEMENT_NO_ISOLATED,
        if max_pi_tilde < 3 {
            Outcome::NotApplicable
        } else if let Some(&i) = graph.isolated_vertices().first() {
            Outcome::Fail(Witness::new(table, &[i], "isolated although an element has three primes"))
        } else {
            bound_outcome(graph, diameter, 2)
        },
    );

    push(SIGMA_PAIRS_WITHIN_2, if pi_tilde < 3 { Outcome::NotApplicable } else { sigma_pairs_outcome(graph, &sigma) });

    push(
        VERTEX_WITHIN_2_OF_SIGMA,
        if !solvable || !nonempty {
            Outcome::NotApplicable
        } else {
            let sources: Vec<usize> = sigma.iter().copied().filter(|&s| !graph.is_isolated(s)).collect();
            let mut covered = vec![false; table.len()];
            for v in graph.ball(&sources, 2) {
                covered[v] = true;
            }
            match graph.vertices().iter().find(|&&v| !covered[v]) {
                None => Outcome::Pass,
                Some(&v) => Outcome::Fail(Witness::new(table, &[v], "no Σ(G) element within distance 2")),
            }
        },
    );

    push(
        LONG_DIAMETER_PRIME_GRAPH_PATH,
        match diameter {
            Diameter::Connected(d) if solvable && pi_tilde == 3 && d > 4 => {
                if is_path_on_three(&pg).is_some() {
                    Outcome::Pass
                } else {
                    Outcome::Fail(Witness {
                        elements: vec![],
                        detail: format!("diameter {d} but prime graph edges are {:?}", pg.edges),
                    })
                }
            }
            _ => Outcome::NotApplicable,
        },
    );

    push(
        SOLVABLE_FOUR_PRIMES_DIAMETER_AT_MOST_3,
        if solvable && pi_tilde >= 4 && nonempty { bound_outcome(graph, diameter, 3) } else { Outcome::NotApplicable },
    );

    push(
        SOLVABLE_THREE_PRIMES_DIAMETER_AT_MOST_5,
        if solvable && pi_tilde == 3 && nonempty { bound_outcome(graph, diameter, 5) } else { Outcome::NotApplicable },
    );

    VerificationReport {
        group: id.to_string(),
        order: table.len() as u64,
        primes,
        solvable,
        isolated_count: table.len() - graph.vertices().len(),
        status: diameter.status(),
        diameter: diameter.value(),
        max_pi_tilde,
        sigma_count: sigma.len(),
        prime_graph: pg,
        lemmas,
    }
}

fn bound_outcome(graph: &NonFGraph, diameter: Diameter, bound: u32) -> Outcome {
    match diameter {
        Diameter::Empty => Outcome::Pass,
        Diameter::Connected(d) if d <= bound => Outcome::Pass,
        Diameter::Connected(d) => diameter_failure(graph, d, bound),
        Diameter::Disconnected { witness: (a, b) } => {
            Outcome::Fail(Witness::new(graph.table(), &[a, b], "no path between these vertices"))
        }
    }
}

/// Witness pair realising a diameter above `bound`.
fn diameter_failure(graph: &NonFGraph, d: u32, bound: u32) -> Outcome {
    for &v in graph.vertices() {
        let report = graph.bfs(v).expect("vertex");
        if report.eccentricity == d {
            let far = graph
                .vertices()
                .iter()
                .copied()
                .find(|&u| report.distance_to(u) == Some(d))
                .expect("eccentricity is attained");
            return Outcome::Fail(Witness::new(graph.table(), &[v, far], format!("distance {d} exceeds {bound}")));
        }
    }
    unreachable!("diameter is attained by some vertex")
}

fn sigma_pairs_outcome(graph: &NonFGraph, sigma: &[usize]) -> Outcome {
    let table = graph.table();
    // Σ(G) is a union of classes, so one source per class suffices.
    for &x in sigma.iter().filter(|&&x| table.class_rep(table.class_of(x)) == x) {
        if graph.is_isolated(x) {
            return Outcome::Fail(Witness::new(table, &[x], "Σ(G) element is isolated"));
        }
        let report = graph.bfs(x).expect("vertex");
        for &y in sigma {
            match report.distance_to(y) {
                Some(d) if d <= 2 => {}
                other => {
                    return Outcome::Fail(Witness::new(
                        table,
                        &[x, y],
                        format!("distance {other:?} between Σ(G) elements"),
                    ))
                }
            }
        }
    }
    Outcome::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::BuildMode;

    fn build(g: &PermutationGroup) -> NonFGraph {
        NonFGraph::build(Arc::new(g.enumerate_elements(100_000).unwrap()), BuildOptions::default())
    }

    #[test]
    fn sigma_examples() {
        let p_group = catalog::dihedral(16).unwrap();
        assert!(sigma_set(&p_group.enumerate_elements(100).unwrap()).is_empty());

        let d30 = catalog::dihedral(30).unwrap().enumerate_elements(100).unwrap();
        let sigma = sigma_set(&d30);
        assert_eq!(sigma.len(), 8);
        assert!(sigma.iter().all(|&i| d30.order_of(i) == 15));
    }

    #[test]
    fn sigma_of_cyclic_thirty_by_euler_phi() {
        // φ(6) + φ(10) + φ(15) + φ(30) = 2 + 4 + 8 + 8
        let t = catalog::cyclic(30).unwrap().enumerate_elements(100).unwrap();
        assert_eq!(sigma_set(&t).len(), 22);
    }

    #[test]
    fn omega_examples() {
        let gr = build(&catalog::dihedral(30).unwrap());
        let t = gr.table();
        let o15 = omega_set(&gr, 15).unwrap();
        assert_eq!(o15.len(), 8);
        assert!(o15.iter().all(|&i| t.order_of(i) == 15));
        let o2 = omega_set(&gr, 2).unwrap();
        assert_eq!(o2.len(), 15);
        assert!(omega_set(&gr, 3).unwrap().is_empty());
        assert!(omega_set(&gr, 5).unwrap().is_empty());
        assert!(omega_set(&gr, 1).unwrap().is_empty());
        assert_eq!(omega_set(&gr, 4), Err(AnalysisError::NotSquarefree(4)));

        let k4 = NonFGraph::build(gr.shared_table(), BuildOptions { threshold: 4, ..BuildOptions::default() });
        assert_eq!(omega_set(&k4, 2), Err(AnalysisError::UnsupportedThreshold(4)));
    }

    #[test]
    fn omega_identity_when_not_isolated() {
        let gr = build(&catalog::cyclic(30).unwrap());
        assert_eq!(omega_set(&gr, 1).unwrap(), vec![0]);
    }

    #[test]
    fn prime_graph_examples() {
        let c30 = prime_graph(&catalog::cyclic(30).unwrap().enumerate_elements(100).unwrap());
        assert_eq!(c30.edges, vec![(2, 3), (2, 5), (3, 5)]);
        assert_eq!(c30.components, vec![vec![2, 3, 5]]);

        let d30 = prime_graph(&catalog::dihedral(30).unwrap().enumerate_elements(100).unwrap());
        assert_eq!(d30.vertices.as_slice(), &[2, 3, 5]);
        assert_eq!(d30.edges, vec![(3, 5)]);
        assert_eq!(d30.components, vec![vec![2], vec![3, 5]]);
        assert!(d30.has_edge(5, 3));
        assert!(!d30.has_edge(2, 3));
    }

    #[test]
    fn path_on_three_examples() {
        let mk = |edges: Vec<(u64, u64)>, vs: &[u64]| PrimeGraph {
            vertices: PrimeSet::from_primes(vs.iter().copied()),
            edges,
            components: vec![],
        };
        assert_eq!(is_path_on_three(&mk(vec![(2, 3), (2, 5), (3, 5)], &[2, 3, 5])), None);
        assert_eq!(is_path_on_three(&mk(vec![(3, 5)], &[2, 3, 5])), None);
        assert_eq!(is_path_on_three(&mk(vec![(2, 7), (3, 7)], &[2, 3, 7])), Some(PathLabeling { p: 2, r: 7, q: 3 }));
        assert_eq!(is_path_on_three(&mk(vec![(2, 7), (3, 7)], &[2, 3, 5, 7])), None);
    }

    #[test]
    fn higman_examples() {
        let d30 = catalog::dihedral(30).unwrap();
        assert_eq!(check_higman(&d30, &build(&d30)).unwrap(), Outcome::Pass);
        let s4 = catalog::symmetric(4).unwrap();
        assert_eq!(check_higman(&s4, &build(&s4)).unwrap(), Outcome::Pass);
        let psl = catalog::psl27();
        let gr = build(&psl);
        assert_eq!(check_higman(&psl, &gr).unwrap(), Outcome::NotApplicable);
        let orders: Vec<u64> = gr.table().order_histogram().into_keys().collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 7]);
    }

    fn d30_with_c5() -> (ElementTable, Vec<usize>, PermutationGroup) {
        let g = catalog::dihedral(30).unwrap();
        let t = g.enumerate_elements(100).unwrap();
        let n = g.normal_closure(&[g.generators()[0].pow(3)]).unwrap();
        let idx = t.subgroup_indices(&n).unwrap();
        (t, idx, g)
    }

    #[test]
    fn rdivides_examples() {
        let (t, n, g) = d30_with_c5();
        assert_eq!(check_rdivides(&t, &n, 0, 0).unwrap(), Outcome::Pass);
        let b = t.index_of(&g.generators()[1]).unwrap();
        let ba = t.index_of(&g.generators()[1].then(&g.generators()[0])).unwrap();
        assert_eq!(check_rdivides(&t, &n, b, ba).unwrap(), Outcome::Pass);
    }

    #[test]
    fn fpf_examples() {
        let (t, n, g) = d30_with_c5();
        let b = t.index_of(&g.generators()[1]).unwrap();
        assert_eq!(t.centralizer_elements(&n, b), vec![0]);
        assert_eq!(check_fpf(&t, &n, b, 0).unwrap(), Outcome::Pass);
        let a = t.index_of(&g.generators()[0]).unwrap();
        assert_eq!(check_fpf(&t, &n, a, b).unwrap(), Outcome::NotApplicable);
    }

    #[test]
    fn lemma_inputs_are_validated() {
        let (t, n, g) = d30_with_c5();
        let b = t.index_of(&g.generators()[1]).unwrap();
        // {1, b} is not normal in D_30
        assert_eq!(check_rdivides(&t, &[0, b], 0, 0), Err(AnalysisError::NotNormal));
        let rotations = t.subgroup_indices(&g.normal_closure(&[g.generators()[0].clone()]).unwrap()).unwrap();
        assert_eq!(check_fpf(&t, &rotations, b, 0), Err(AnalysisError::NotPrimePower(15)));
        assert!(check_rdivides(&t, &n, 0, 0).is_ok());
    }

    #[test]
    fn verify_examples() {
        let d30 = verify_theorem(&catalog::dihedral(30).unwrap(), "dihedral(30)", 1000).unwrap();
        assert!(d30.passed(), "{d30:?}");
        assert_eq!(d30.status, "connected");
        assert_eq!(d30.diameter, Some(2));
        assert_eq!(d30.isolated_count, 7);
        assert_eq!(d30.sigma_count, 8);

        let s4 = verify_theorem(&catalog::symmetric(4).unwrap(), "symmetric(4)", 1000).unwrap();
        assert!(s4.passed());
        assert_eq!(s4.status, "empty");
        assert_eq!(s4.diameter, None);
        assert_eq!(s4.isolated_count, 24);

        assert!(matches!(
            verify_theorem(&catalog::symmetric(5).unwrap(), "symmetric(5)", 100),
            Err(GroupError::CapExceeded { order: 120, cap: 100 })
        ));
    }

    #[test]
    fn any_failing_check_fails_the_report() {
        let mut r = verify_theorem(&catalog::dihedral(30).unwrap(), "dihedral(30)", 1000).unwrap();
        assert!(r.passed());
        r.lemmas[3].outcome = Outcome::Fail(Witness { elements: vec!["(1,2)".into()], detail: "planted".into() });
        assert!(!r.passed());
        assert!(r.lemma(r.lemmas[3].name).unwrap().is_fail());
        assert!(r.to_json().contains("\"witness\":{\"elements\":[\"(1,2)\"],\"detail\":\"planted\"}"));
    }

    #[test]
    fn report_json_schema() {
        let r = verify_theorem(&catalog::dihedral(30).unwrap(), "dihedral(30)", 1000).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for k in [
            "group",
            "order",
            "primes",
            "solvable",
            "isolated_count",
            "status",
            "diameter",
            "max_pi_tilde",
            "sigma_count",
            "prime_graph",
            "lemmas",
        ] {
            assert!(keys.contains(&k), "missing {k}");
        }
        assert_eq!(v["primes"], serde_json::json!([2, 3, 5]));
        assert_eq!(v["prime_graph"]["edges"], serde_json::json!([[3, 5]]));
        assert_eq!(v["prime_graph"]["components"], serde_json::json!([[2], [3, 5]]));
        let lemma = &v["lemmas"][0];
        assert_eq!(lemma["name"], "connected_diameter_at_most_5");
        assert_eq!(lemma["outcome"], "pass");
        assert!(lemma.get("witness").is_none());
    }

    #[test]
    fn failures_carry_witnesses() {
        let w = LemmaResult {
            name: checks::SIGMA_PAIRS_WITHIN_2,
            outcome: Outcome::Fail(Witness { elements: vec!["(1,2)".into()], detail: "x".into() }),
        };
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["outcome"], "fail");
        assert_eq!(v["witness"]["elements"][0], "(1,2)");
    }

    #[test]
    fn naive_graph_verifies_identically() {
        let g = catalog::parse("direct_product(frobenius(21),cyclic(2))").unwrap();
        let table = Arc::new(g.enumerate_elements(1000).unwrap());
        let naive =
            NonFGraph::build(Arc::clone(&table), BuildOptions { mode: BuildMode::Naive, ..BuildOptions::default() });
        let reduced = NonFGraph::build(table, BuildOptions::default());
        assert_eq!(verify_graph(&naive, "x", true), verify_graph(&reduced, "x", true));
    }
}
