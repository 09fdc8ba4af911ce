//! The non-two-primes graph and its metric structure.
//!
//! Two distinct elements `x`, `y` are adjacent when `|⟨x, y⟩|` has at least
//! `threshold` distinct prime divisors (3 by default). Elements with no
//! neighbours are isolated; the graph proper is induced on the rest.
//!
//! Conjugation by any group element is a graph automorphism, since
//! `⟨x, y⟩^g = ⟨x^g, y^g⟩`. The symmetry-reduced build computes adjacency
//! only for conjugacy-class representatives and transports those rows along
//! the conjugation tree stored in the element table.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::GraphError;
use crate::group::two_generated_order;
use crate::primes::prime_factors_nonzero;
use crate::table::ElementTable;

pub const DEFAULT_THRESHOLD: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildMode {
    /// Every unordered pair is tested.
    Naive,
    /// Only class representatives' rows are tested; the rest are permuted copies.
    SymmetryReduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub threshold: usize,
    pub mode: BuildMode,
    /// Worker threads for row computation; 1 runs inline.
    pub jobs: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { threshold: DEFAULT_THRESHOLD, mode: BuildMode::SymmetryReduced, jobs: 1 }
    }
}

/// Counters from one graph construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// Pairs decided by building a stabilizer chain for `⟨x, y⟩`.
    pub chain_builds: usize,
    /// Pairs decided by the union of the two elements' prime sets.
    pub prefiltered: usize,
}

impl std::ops::Add for BuildStats {
    type Output = BuildStats;

    fn add(self, rhs: BuildStats) -> BuildStats {
        BuildStats {
            chain_builds: self.chain_builds + rhs.chain_builds,
            prefiltered: self.prefiltered + rhs.prefiltered,
        }
    }
}

/// Whether elements `i` and `j` of `table` are adjacent at `threshold`.
pub fn adjacent(table: &ElementTable, i: usize, j: usize, threshold: usize) -> bool {
    pair_adjacent(table, i, j, threshold, &mut BuildStats::default())
}

fn pair_adjacent(table: &ElementTable, i: usize, j: usize, threshold: usize, stats: &mut BuildStats) -> bool {
    if i == j {
        return false;
    }
    // |x| and |y| both divide |⟨x, y⟩|
    if table.primes_of(i).union_len(table.primes_of(j)) >= threshold {
        stats.prefiltered += 1;
        return true;
    }
    stats.chain_builds += 1;
    let order = two_generated_order(table.element(i), table.element(j)).expect("table elements share a degree");
    prime_factors_nonzero(order).len() >= threshold
}

/// Dense square bit matrix, one row of `u64` words per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix { n, words, data: vec![0; n * words] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &bits)| {
        let mut rest = bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiameterMode {
    /// One BFS per conjugacy class (eccentricity is a class invariant).
    ClassRepresentatives,
    /// One BFS per vertex.
    AllVertices,
}

/// Diameter of the graph on non-isolated vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diameter {
    /// Every element is isolated.
    Empty,
    /// `witness.1` is unreachable from `witness.0`.
    Disconnected {
        witness: (usize, usize),
    },
    Connected(u32),
}

impl Diameter {
    pub fn status(&self) -> &'static str {
        match self {
            Diameter::Empty => "empty",
            Diameter::Disconnected { .. } => "disconnected",
            Diameter::Connected(_) => "connected",
        }
    }

    pub fn value(&self) -> Option<u32> {
        match self {
            Diameter::Connected(d) => Some(*d),
            _ => None,
        }
    }
}

/// Breadth-first distances from one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub source: usize,
    /// Indexed by element; `None` for unreachable or isolated elements.
    pub distances: Vec<Option<u32>>,
    pub eccentricity: u32,
    pub reaches_all: bool,
}

impl DistanceReport {
    pub fn distance_to(&self, j: usize) -> Option<u32> {
        self.distances.get(j).copied().flatten()
    }
}

/// Adjacency over all elements of a group plus the isolated-vertex set.
#[derive(Clone, Debug)]
pub struct NonFGraph {
    table: Arc<ElementTable>,
    threshold: usize,
    adjacency: BitMatrix,
    isolated: Vec<bool>,
    vertices: Vec<usize>,
    stats: BuildStats,
}

impl NonFGraph {
    pub fn build(table: Arc<ElementTable>, options: BuildOptions) -> Self {
        let n = table.len();
        let mut adjacency = BitMatrix::new(n);
        let mut stats = BuildStats::default();

        // No subgroup can have more primes than the whole group.
        if table.group_primes().len() >= options.threshold {
            stats = match options.mode {
                BuildMode::Naive => fill_naive(&table, options, &mut adjacency),
                BuildMode::SymmetryReduced => fill_reduced(&table, options, &mut adjacency),
            };
        }

        let isolated: Vec<bool> = (0..n).map(|i| adjacency.row(i).iter().all(|&w| w == 0)).collect();
        let vertices = (0..n).filter(|&i| !isolated[i]).collect();
        NonFGraph { table, threshold: options.threshold, adjacency, isolated, vertices, stats }
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn shared_table(&self) -> Arc<ElementTable> {
        Arc::clone(&self.table)
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    pub fn stats(&self) -> BuildStats {
        self.stats
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency.get(i, j)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.adjacency.row(i))
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.isolated[i]
    }

    /// ℐ(G) as sorted element indices.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.isolated.len()).filter(|&i| self.isolated[i]).collect()
    }

    /// Non-isolated element indices, sorted.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        (0..self.adjacency.size()).map(|i| self.adjacency.row_count(i)).sum::<usize>() / 2
    }

    /// Unordered edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.iter().flat_map(move |&i| self.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.isolated.len() {
            return Err(GraphError::IndexOutOfRange(v));
        }
        if self.isolated[v] {
            return Err(GraphError::IsolatedVertex(v));
        }
        Ok(())
    }

    pub fn bfs(&self, source: usize) -> Result<DistanceReport, GraphError> {
        self.check_vertex(source)?;
        Ok(self.bfs_from_sources(&[source], u32::MAX).into_report(source, self.vertices.len()))
    }

    /// Level-synchronous BFS over bitset rows, stopping after `max_depth` levels.
    fn bfs_from_sources(&self, sources: &[usize], max_depth: u32) -> BfsState {
        let n = self.adjacency.size();
        let words = n.div_ceil(64);
        let mut visited = vec![0u64; words];
        let mut distances = vec![None; n];
        let mut frontier: Vec<usize> = Vec::new();
        for &s in sources {
            if distances[s].is_none() {
                distances[s] = Some(0);
                visited[s / 64] |= 1 << (s % 64);
                frontier.push(s);
            }
        }
        let mut reached = frontier.len();
        let mut depth = 0;
        let mut next = vec![0u64; words];
        while !frontier.is_empty() && depth < max_depth {
            next.iter_mut().for_each(|w| *w = 0);
            for &v in &frontier {
                for (acc, &row) in next.iter_mut().zip(self.adjacency.row(v)) {
                    *acc |= row;
                }
            }
            for (acc, seen) in next.iter_mut().zip(visited.iter_mut()) {
                *acc &= !*seen;
                *seen |= *acc;
            }
            depth += 1;
            frontier = ones(&next).collect();
            for &v in &frontier {
                distances[v] = Some(depth);
            }
            reached += frontier.len();
        }
        BfsState { distances, reached }
    }

    /// Hop distance between two vertices; `None` when unreachable.
    pub fn distance(&self, i: usize, j: usize) -> Result<Option<u32>, GraphError> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        Ok(self.bfs(i)?.distance_to(j))
    }

    /// Eccentricity of every element (`None` for isolated ones). In
    /// representative mode only one BFS per class is run and its result is
    /// copied to the other members.
    pub fn eccentricities(&self, mode: DiameterMode) -> Vec<Option<u32>> {
        let n = self.adjacency.size();
        let mut ecc = vec![None; n];
        match mode {
            DiameterMode::AllVertices => {
                for &v in &self.vertices {
                    ecc[v] = Some(self.bfs(v).expect("vertex").eccentricity);
                }
            }
            DiameterMode::ClassRepresentatives => {
                for (class, &rep) in self.table.class_reps().iter().enumerate() {
                    if self.isolated[rep] {
                        continue;
                    }
                    let e = self.bfs(rep).expect("vertex").eccentricity;
                    for &m in self.table.class_members(class) {
                        ecc[m] = Some(e);
                    }
                }
            }
        }
        ecc
    }

    pub fn diameter(&self, mode: DiameterMode) -> Diameter {
        if self.vertices.is_empty() {
            return Diameter::Empty;
        }
        let sources: Vec<usize> = match mode {
            DiameterMode::AllVertices => self.vertices.clone(),
            DiameterMode::ClassRepresentatives => {
                self.table.class_reps().iter().copied().filter(|&r| !self.isolated[r]).collect()
            }
        };
        let mut best = 0;
        for s in sources {
            let report = self.bfs(s).expect("sources are vertices");
            if !report.reaches_all {
                let unreached = self
                    .vertices
                    .iter()
                    .copied()
                    .find(|&v| report.distances[v].is_none())
                    .expect("some vertex is unreached");
                return Diameter::Disconnected { witness: (s, unreached) };
            }
            best = best.max(report.eccentricity);
        }
        Diameter::Connected(best)
    }

    /// Vertices within `radius` hops of any of `sources`.
    pub fn ball(&self, sources: &[usize], radius: u32) -> Vec<usize> {
        let state = self.bfs_from_sources(sources, radius);
        (0..state.distances.len()).filter(|&v| state.distances[v].is_some()).collect()
    }

    /// Histogram of element orders over the neighbours of `v`.
    pub fn neighbor_order_profile(&self, v: usize) -> BTreeMap<u64, usize> {
        let mut profile = BTreeMap::new();
        for u in self.neighbors(v) {
            *profile.entry(self.table.order_of(u)).or_insert(0) += 1;
        }
        profile
    }
}

struct BfsState {
    distances: Vec<Option<u32>>,
    reached: usize,
}

impl BfsState {
    fn into_report(self, source: usize, vertex_count: usize) -> DistanceReport {
        let eccentricity = self.distances.iter().flatten().copied().max().unwrap_or(0);
        DistanceReport { source, reaches_all: self.reached == vertex_count, distances: self.distances, eccentricity }
    }
}

fn compute_row(
    table: &ElementTable,
    i: usize,
    columns: std::ops::Range<usize>,
    threshold: usize,
) -> (Vec<u64>, BuildStats) {
    let mut row = vec![0u64; table.len().div_ceil(64)];
    let mut stats = BuildStats::default();
    for j in columns {
        if pair_adjacent(table, i, j, threshold, &mut stats) {
            row[j / 64] |= 1 << (j % 64);
        }
    }
    (row, stats)
}

fn run_rows<F>(rows: &[usize], jobs: usize, f: F) -> Vec<(Vec<u64>, BuildStats)>
where
    F: Fn(usize) -> (Vec<u64>, BuildStats) + Sync + Send,
{
    if jobs <= 1 {
        return rows.iter().map(|&i| f(i)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| rows.par_iter().map(|&i| f(i)).collect())
}

fn fill_naive(table: &ElementTable, options: BuildOptions, adjacency: &mut BitMatrix) -> BuildStats {
    let n = table.len();
    let rows: Vec<usize> = (0..n).collect();
    let results = run_rows(&rows, options.jobs, |i| compute_row(table, i, i + 1..n, options.threshold));
    let mut stats = BuildStats::default();
    for (i, (row, s)) in results.into_iter().enumerate() {
        stats = stats + s;
        for j in ones(&row) {
            adjacency.set(i, j);
            adjacency.set(j, i);
        }
    }
    stats
}

fn fill_reduced(table: &ElementTable, options: BuildOptions, adjacency: &mut BitMatrix) -> BuildStats {
    let n = table.len();
    let results = run_rows(table.class_reps(), options.jobs, |r| compute_row(table, r, 0..n, options.threshold));
    let mut stats = BuildStats::default();
    for (&rep, (row, s)) in table.class_reps().iter().zip(results) {
        stats = stats + s;
        adjacency.row_mut(rep).copy_from_slice(&row);
    }

    // x = p^s  ⇒  adj(x, y) = adj(p, y^{s⁻¹}); inverse_maps[s][y] = index of y^{s⁻¹}
    let inverse_maps: Vec<Vec<u32>> = (0..table.generators().len())
        .map(|s| {
            let forward = table.conj_map(s);
            let mut inv = vec![0u32; n];
            for (i, &img) in forward.iter().enumerate() {
                inv[img as usize] = i as u32;
            }
            inv
        })
        .collect();
    for class in 0..table.class_count() {
        for &x in &table.class_members(class)[1..] {
            let (parent, s) = table.class_parent(x).expect("non-representatives have a parent");
            let inv = &inverse_maps[s];
            let mut row = vec![0u64; n.div_ceil(64)];
            for (y, &pre) in inv.iter().enumerate() {
                if adjacency.get(parent, pre as usize) {
                    row[y / 64] |= 1 << (y % 64);
                }
            }
            adjacency.row_mut(x).copy_from_slice(&row);
        }
    }
    stats
}
