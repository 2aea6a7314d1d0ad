//! Finite posets: construction from the builder DSL, comparability queries,
//! incomparability graphs and lattice checks.

mod dsl;
mod graph;

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub(crate) use dsl::coordinate_label;
pub use dsl::PosetSpec;
pub use graph::Graph;

/// A finite partially ordered set with labelled elements.
///
/// Elements are indexed `0..len()` in construction order. The order relation
/// is stored as a dense bit matrix: `up[i]` holds every `j` with `i ≤ j`,
/// `down[i]` every `j` with `j ≤ i`.
#[derive(Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    covers: Vec<Vec<usize>>,
    spec: Option<PosetSpec>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("len", &self.len())
            .field("spec", &self.spec)
            .field("labels", &self.labels)
            .finish()
    }
}

impl Poset {
    /// Builds a poset from labels and a `leq(i, j)` predicate, checking that it
    /// is reflexive, antisymmetric and transitive.
    pub fn from_leq<F>(labels: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row.insert(j);
                }
            }
        }
        Self::from_up_sets(labels, up)
    }

    /// Builds a poset from a list of relations `lower < upper` given by
    /// index, taking the reflexive-transitive closure.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("index {}", a.max(b))));
            }
            up[a].insert(b);
        }
        // Warshall closure on bit rows
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_up_sets(labels, up)
    }

    /// `n` pairwise incomparable elements labelled `1..n`.
    pub fn antichain(n: usize) -> Self {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Self::from_leq(labels, |i, j| i == j).expect("equality is a partial order")
    }

    fn from_up_sets(labels: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidSpec(format!("duplicate label `{l}`")));
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::NotPartialOrder(format!(
                    "`{}` is not related to itself",
                    labels[i]
                )));
            }
            for j in up[i].ones() {
                down[j].insert(i);
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotPartialOrder(format!(
                        "`{}` and `{}` violate antisymmetry",
                        labels[i], labels[j]
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::NotPartialOrder(format!(
                        "transitivity fails above `{}` ≤ `{}`",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let covers = transitive_reduction(&up);
        Ok(Poset {
            labels,
            index,
            up,
            down,
            covers,
            spec: None,
        })
    }

    pub(crate) fn with_spec(mut self, spec: PosetSpec) -> Self {
        self.spec = Some(spec);
        self
    }

    /// The builder expression this poset was constructed from, if any.
    pub fn spec(&self) -> Option<&PosetSpec> {
        self.spec.as_ref()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    /// Resolves a list of labels to element indices.
    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Elements `j` with `i ≤ j`, including `i`.
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    /// Elements `j` with `j ≤ i`, including `i`.
    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    /// Upper covers of `i` in the Hasse diagram.
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// All cover pairs `(lower, upper)`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.covers
            .iter()
            .enumerate()
            .flat_map(|(i, cs)| cs.iter().map(move |&j| (i, j)))
            .collect()
    }

    /// A linear extension: elements sorted by the size of their down-set,
    /// ties broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].count_ones(..), i));
        order
    }

    pub fn incomparability_graph(&self) -> Graph {
        let n = self.len();
        let mut g = Graph::with_labels(self.labels.clone());
        for i in 0..n {
            for j in i + 1..n {
                if !self.comparable(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Whether the given elements are pairwise comparable.
    pub fn is_chain_subset(&self, elements: &[usize]) -> Result<bool> {
        if let Some(&bad) = elements.iter().find(|&&e| e >= self.len()) {
            return Err(Error::UnknownElement(format!("index {bad}")));
        }
        Ok(elements
            .iter()
            .enumerate()
            .all(|(a, &i)| elements[a + 1..].iter().all(|&j| self.comparable(i, j))))
    }

    /// [`Poset::is_chain_subset`] addressed by label.
    pub fn is_chain_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<bool> {
        let idx = self.indices_of(labels)?;
        self.is_chain_subset(&idx)
    }

    /// Size of the longest chain, by a longest-path pass over the cover DAG.
    pub fn max_chain_size(&self) -> usize {
        let mut best = vec![1usize; self.len()];
        for i in self.linear_extension().into_iter().rev() {
            best[i] = 1 + self.covers[i].iter().map(|&j| best[j]).max().unwrap_or(0);
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Width (size of the largest antichain), by Dilworth's theorem via a
    /// maximum matching in the strict comparability bipartite graph.
    pub fn width(&self) -> usize {
        let n = self.len();
        let succ: Vec<Vec<usize>> = (0..n)
            .map(|i| self.up[i].ones().filter(|&j| j != i).collect())
            .collect();
        n - bipartite_matching(n, &succ)
    }

    /// Join of `a` and `b`, if the least upper bound exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut common = self.up[a].clone();
        common.intersect_with(&self.up[b]);
        common.ones().find(|&u| common.is_subset(&self.up[u]))
    }

    /// Meet of `a` and `b`, if the greatest lower bound exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let mut common = self.down[a].clone();
        common.intersect_with(&self.down[b]);
        common.ones().find(|&l| common.is_subset(&self.down[l]))
    }

    /// True iff every pair has a join and a meet and both distributive laws
    /// hold for every triple.
    pub fn verify_distributive_lattice(&self) -> bool {
        let n = self.len();
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                match (self.join(a, b), self.meet(a, b)) {
                    (Some(j), Some(m)) => {
                        join[a * n + b] = j;
                        meet[a * n + b] = m;
                    }
                    _ => return false,
                }
            }
        }
        let j = |a: usize, b: usize| join[a * n + b];
        let m = |a: usize, b: usize| meet[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(a, j(b, c)) != j(m(a, b), m(a, c)) {
                        return false;
                    }
                    if j(a, m(b, c)) != m(j(a, b), j(a, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn transitive_reduction(up: &[FixedBitSet]) -> Vec<Vec<usize>> {
    let n = up.len();
    (0..n)
        .map(|i| {
            let mut strict = up[i].clone();
            strict.set(i, false);
            let mut above_strict = FixedBitSet::with_capacity(n);
            for k in strict.ones() {
                let mut s = up[k].clone();
                s.set(k, false);
                above_strict.union_with(&s);
            }
            strict.difference(&above_strict).collect()
        })
        .collect()
}

/// Maximum bipartite matching (augmenting paths) between two copies of
/// `0..n`, with left vertex `i` adjacent to `adj[i]`.
pub(crate) fn bipartite_matching(n: usize, adj: &[Vec<usize>]) -> usize {
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if match_right[v].map_or(true, |w| augment(w, adj, seen, match_right)) {
                match_right[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut match_right = vec![None; n];
    let mut size = 0;
    for u in 0..n {
        let mut seen = vec![false; n];
        if augment(u, adj, &mut seen, &mut match_right) {
            size += 1;
        }
    }
    size
}
