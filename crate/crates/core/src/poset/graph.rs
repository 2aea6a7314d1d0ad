use fixedbitset::FixedBitSet;

/// A simple undirected graph on labelled vertices `0..n`.
#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn with_labels(labels: Vec<String>) -> Self {
        let n = labels.len();
        Graph {
            labels,
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn edgeless(n: usize) -> Self {
        Self::with_labels((1..=n).map(|i| i.to_string()).collect())
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::edgeless(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// Adds the edge `{u, v}`. Loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    /// Whether `vertices` is an independent set.
    pub fn is_stable(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &u)| vertices[a + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(Graph::complete(5).edge_count(), 10);
        assert_eq!(Graph::edgeless(5).edge_count(), 0);
        let mut g = Graph::edgeless(3);
        g.add_edge(0, 2);
        g.add_edge(2, 0);
        g.add_edge(1, 1);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(2, 0));
        assert!(g.is_stable(&[0, 1]));
        assert!(!g.is_stable(&[0, 1, 2]));
    }
}
