//! Confusability graphs over composite vectors and exact maximum-code
//! search: a set of vectors is a valid code for a channel exactly when it is
//! independent in the graph whose edges join vectors with overlapping error
//! balls.

use crate::channel::{balls_disjoint_upto, ErrorKind};
use crate::error::{Error, Result};
use crate::vector::CompositeVector;

/// Resource ceilings for exhaustive searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Work ceiling handed to error-ball enumeration.
    pub cap: u64,
    /// Search-tree nodes before the branch-and-bound keeps the best set
    /// found so far instead of finishing.
    pub node_budget: u64,
    /// Longest binary word the deletion-code search accepts.
    pub max_binary_n: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            cap: 50_000_000,
            node_budget: 2_000_000,
            max_binary_n: 12,
        }
    }
}

/// Outcome of a maximum-code search.
#[derive(Clone, Debug)]
pub struct MaxCodeResult {
    /// Codewords of the best set found, in lexicographic order.
    pub witness: Vec<CompositeVector>,
    /// Whether the search finished; otherwise the witness is only a lower
    /// bound reached before the node budget ran out.
    pub exact: bool,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

impl MaxCodeResult {
    pub fn size(&self) -> usize {
        self.witness.len()
    }

    pub fn method(&self) -> &'static str {
        if self.exact {
            "exact-search"
        } else {
            "greedy-lower-bound"
        }
    }
}

/// Fixed-capacity bitset over vertex indices.
#[derive(Clone, PartialEq, Eq)]
struct VSet {
    words: Vec<u64>,
}

impl VSet {
    fn empty(n: usize) -> Self {
        VSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn full(n: usize) -> Self {
        let mut s = VSet::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn and_not(&mut self, other: &VSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn intersection_count(&self, other: &VSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn is_subset_of(&self, other: &VSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }
}

/// Largest vertex count exact search will take on.
const MAX_VERTICES: usize = 8192;

/// Graph on all of `[0, m]^n` whose edges join vectors some channel output
/// can reach from both ends.
pub struct ConfusabilityGraph {
    vertices: Vec<CompositeVector>,
    adj: Vec<VSet>,
}

impl ConfusabilityGraph {
    fn with_vertices(vertices: Vec<CompositeVector>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Empty("vertex set"));
        }
        if vertices.len() > MAX_VERTICES {
            return Err(Error::Config(format!(
                "vector space of {} vertices exceeds the exact-search limit {MAX_VERTICES}",
                vertices.len()
            )));
        }
        let n = vertices.len();
        Ok(ConfusabilityGraph {
            vertices,
            adj: vec![VSet::empty(n); n],
        })
    }

    fn all_vertices(m: u32, n: usize) -> Result<Vec<CompositeVector>> {
        if m == 0 || n == 0 {
            return Err(Error::Config(
                "strand count and length must be positive".into(),
            ));
        }
        if pow_checked(m as u128 + 1, n).map_or(true, |s| s > MAX_VERTICES as u128) {
            return Err(Error::Config(format!(
                "vector space ({}+1)^{n} exceeds the exact-search limit {MAX_VERTICES}",
                m
            )));
        }
        Ok(CompositeVector::all(m, n).collect())
    }

    fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i].insert(j);
        self.adj[j].insert(i);
    }

    /// Edges from closed-form separation: two vectors are confusable under
    /// up to `t` substitutions iff their sum-metric distance is at most
    /// `2t`, and under up to `t` losses iff their max-metric distance is at
    /// most `t`.
    pub fn metric(kind: ErrorKind, m: u32, n: usize, t: usize) -> Result<Self> {
        if !matches!(kind, ErrorKind::Substitution | ErrorKind::StrandLoss) {
            return Err(Error::Config(format!(
                "no closed-form confusability rule for kind {kind}"
            )));
        }
        let vertices = Self::all_vertices(m, n)?;
        let mut graph = Self::with_vertices(vertices)?;
        for i in 0..graph.vertices.len() {
            for j in i + 1..graph.vertices.len() {
                let confusable = match kind {
                    ErrorKind::Substitution => {
                        graph.vertices[i].l1_distance(&graph.vertices[j])? <= 2 * t as u64
                    }
                    ErrorKind::StrandLoss => {
                        graph.vertices[i].linf_distance(&graph.vertices[j])? <= t as u32
                    }
                    _ => unreachable!(),
                };
                if confusable {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(graph)
    }

    /// Edges from error-ball enumeration: two vectors are joined when their
    /// balls overlap at some radius up to `t`.
    pub fn enumerated(kind: ErrorKind, m: u32, n: usize, t: usize, cap: u64) -> Result<Self> {
        let vertices = Self::all_vertices(m, n)?;
        let mut graph = Self::with_vertices(vertices)?;
        for i in 0..graph.vertices.len() {
            for j in i + 1..graph.vertices.len() {
                if !balls_disjoint_upto(&graph.vertices[i], &graph.vertices[j], t, kind, cap)? {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(graph)
    }

    /// Graph on binary words of length `n` joined when they share a common
    /// subsequence of length `n - t`, i.e. when `t` deletions can collide
    /// them.
    pub fn binary_deletion(n: usize, t: usize, limits: &SearchLimits) -> Result<Self> {
        if n == 0 || n > limits.max_binary_n {
            return Err(Error::Config(format!(
                "binary deletion search needs 1 <= n <= {}, got {n}",
                limits.max_binary_n
            )));
        }
        if t > n {
            return Err(Error::Config(format!(
                "cannot delete {t} symbols from words of length {n}"
            )));
        }
        let vertices: Vec<CompositeVector> = CompositeVector::all(1, n).collect();
        let mut graph = Self::with_vertices(vertices)?;
        for i in 0..graph.vertices.len() {
            for j in i + 1..graph.vertices.len() {
                let lcs = longest_common_subsequence(
                    graph.vertices[i].levels(),
                    graph.vertices[j].levels(),
                );
                if lcs + t >= n {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[CompositeVector] {
        &self.vertices
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VSet::len).sum::<usize>() / 2
    }

    /// Largest independent set, by branch and bound with a greedy warm
    /// start, branching on the highest-degree candidate, and a greedy
    /// clique-cover bound for pruning.
    pub fn max_independent_set(&self, limits: &SearchLimits) -> MaxCodeResult {
        self.max_independent_set_within(&VSet::full(self.vertices.len()), limits)
    }

    /// Largest independent set among the listed vertex indices.
    pub fn max_independent_set_among(
        &self,
        allowed: &[usize],
        limits: &SearchLimits,
    ) -> MaxCodeResult {
        let mut set = VSet::empty(self.vertices.len());
        for &v in allowed {
            set.insert(v);
        }
        self.max_independent_set_within(&set, limits)
    }

    fn max_independent_set_within(&self, allowed: &VSet, limits: &SearchLimits) -> MaxCodeResult {
        let mut best = self.greedy_independent_set(allowed);
        let mut chosen = Vec::new();
        let mut nodes = 0u64;
        let mut exact = true;
        self.branch(
            &mut chosen,
            allowed.clone(),
            &mut best,
            &mut nodes,
            limits.node_budget,
            &mut exact,
        );
        let mut indices = best;
        indices.sort_unstable();
        MaxCodeResult {
            witness: indices.iter().map(|&v| self.vertices[v].clone()).collect(),
            exact,
            nodes,
        }
    }

    fn branch(
        &self,
        chosen: &mut Vec<usize>,
        p: VSet,
        best: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
        exact: &mut bool,
    ) {
        if *nodes >= budget {
            *exact = false;
            return;
        }
        *nodes += 1;
        if p.is_empty() {
            if chosen.len() > best.len() {
                *best = chosen.clone();
            }
            return;
        }
        if chosen.len() + self.clique_cover_bound(&p) <= best.len() {
            return;
        }
        let v = p
            .iter()
            .max_by_key(|&v| self.adj[v].intersection_count(&p))
            .expect("nonempty candidate set");
        let mut included = p.clone();
        included.remove(v);
        included.and_not(&self.adj[v]);
        chosen.push(v);
        self.branch(chosen, included, best, nodes, budget, exact);
        chosen.pop();
        let mut excluded = p;
        excluded.remove(v);
        self.branch(chosen, excluded, best, nodes, budget, exact);
    }

    /// Partitions the candidates into cliques greedily; an independent set
    /// meets each clique at most once, so the clique count bounds it.
    fn clique_cover_bound(&self, p: &VSet) -> usize {
        let mut cliques: Vec<VSet> = Vec::new();
        for v in p.iter() {
            let mut placed = false;
            for clique in cliques.iter_mut() {
                if clique.is_subset_of(&self.adj[v]) {
                    clique.insert(v);
                    placed = true;
                    break;
                }
            }
            if !placed {
                let mut clique = VSet::empty(self.vertices.len());
                clique.insert(v);
                cliques.push(clique);
            }
        }
        cliques.len()
    }

    /// Repeatedly takes a lowest-degree candidate and discards its
    /// neighbors.
    fn greedy_independent_set(&self, allowed: &VSet) -> Vec<usize> {
        let mut rem = allowed.clone();
        let mut picked = Vec::new();
        loop {
            let Some(v) = rem
                .iter()
                .min_by_key(|&v| (self.adj[v].intersection_count(&rem), v))
            else {
                break;
            };
            picked.push(v);
            rem.remove(v);
            rem.and_not(&self.adj[v]);
        }
        picked.sort_unstable();
        picked
    }
}

/// Largest set of composite vectors whose error balls of all radii up to `t`
/// are pairwise disjoint.
pub fn exact_max_code(
    kind: ErrorKind,
    m: u32,
    n: usize,
    t: usize,
    limits: &SearchLimits,
) -> Result<MaxCodeResult> {
    let graph = match kind {
        ErrorKind::Substitution | ErrorKind::StrandLoss => {
            ConfusabilityGraph::metric(kind, m, n, t)?
        }
        _ => ConfusabilityGraph::enumerated(kind, m, n, t, limits.cap)?,
    };
    Ok(graph.max_independent_set(limits))
}

/// Largest binary code of length `n` correcting `t` deletions, by exact
/// search over the subsequence-overlap graph.
pub fn binary_deletion_max(n: usize, t: usize, limits: &SearchLimits) -> Result<MaxCodeResult> {
    let graph = ConfusabilityGraph::binary_deletion(n, t, limits)?;
    Ok(graph.max_independent_set(limits))
}

fn longest_common_subsequence(a: &[u32], b: &[u32]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for &x in a {
        for (j, &y) in b.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

fn pow_checked(base: u128, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
