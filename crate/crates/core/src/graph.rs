//! Undirected simple graphs on vertices `1..=k` and their complete subgraphs.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} is outside 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {{{0}, {1}}} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("vertex subset must be nonempty")]
    EmptySubset,
    #[error("vertex {0} listed twice in subset")]
    DuplicateVertex(usize),
}

/// Simple undirected graph. Vertices are numbered from 1.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    adjacency: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        let mut g = Self::edgeless(vertex_count);
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.adjacency[u - 1][v - 1] = true;
            g.adjacency[v - 1][u - 1] = true;
        }
        Ok(g)
    }

    pub fn edgeless(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            adjacency: vec![vec![false; vertex_count]; vertex_count],
        }
    }

    pub fn complete(vertex_count: usize) -> Self {
        let mut g = Self::edgeless(vertex_count);
        for u in 0..vertex_count {
            for v in 0..vertex_count {
                g.adjacency[u][v] = u != v;
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v
            && (1..=self.vertex_count).contains(&u)
            && (1..=self.vertex_count).contains(&v)
            && self.adjacency[u - 1][v - 1]
    }

    /// Edges as `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.vertex_count {
            for v in u + 1..=self.vertex_count {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Complete subgraph given by its vertices in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clique(Vec<usize>);

impl Clique {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// All nonempty cliques of a graph, grouped by size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueList {
    by_size: Vec<Vec<Clique>>,
}

impl CliqueList {
    /// The `m`-cliques, lexicographically sorted. Empty when there are none.
    pub fn of_size(&self, m: usize) -> &[Clique] {
        if m == 0 {
            return &[];
        }
        self.by_size.get(m - 1).map_or(&[], Vec::as_slice)
    }

    pub fn max_size(&self) -> usize {
        self.by_size.len()
    }

    pub fn total(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    /// Every clique, by size then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Clique> {
        self.by_size.iter().flatten()
    }
}

/// Enumerates every complete subgraph, maximal or not.
///
/// Each clique is grown only by vertices larger than its last one, so every
/// ascending tuple is produced exactly once.
pub fn enumerate_cliques(g: &Graph) -> CliqueList {
    fn extend(g: &Graph, current: &mut Vec<usize>, candidates: &[usize], out: &mut Vec<Vec<Clique>>) {
        for (i, &v) in candidates.iter().enumerate() {
            current.push(v);
            let m = current.len();
            if out.len() < m {
                out.push(Vec::new());
            }
            out[m - 1].push(Clique(current.clone()));
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            extend(g, current, &next, out);
            current.pop();
        }
    }

    let mut by_size = Vec::new();
    let all: Vec<usize> = (1..=g.vertex_count()).collect();
    extend(g, &mut Vec::new(), &all, &mut by_size);
    for level in &mut by_size {
        level.sort();
    }
    CliqueList { by_size }
}

/// Restriction of `g` to `subset`, renumbered `1..=|subset|` in increasing
/// order of the original labels. The second component maps new labels
/// (index + 1) back to the original vertices.
pub fn induced_subgraph(g: &Graph, subset: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
    if subset.is_empty() {
        return Err(GraphError::EmptySubset);
    }
    let mut seen = BTreeSet::new();
    for &v in subset {
        if v == 0 || v > g.vertex_count() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                count: g.vertex_count(),
            });
        }
        if !seen.insert(v) {
            return Err(GraphError::DuplicateVertex(v));
        }
    }
    let map: Vec<usize> = seen.into_iter().collect();
    let mut h = Graph::edgeless(map.len());
    for (i, &u) in map.iter().enumerate() {
        for (j, &v) in map.iter().enumerate() {
            h.adjacency[i][j] = g.has_edge(u, v);
        }
    }
    Ok((h, map))
}
