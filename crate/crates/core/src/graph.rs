//! Simple undirected graphs and commuting graphs of the Hv-group.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;

use crate::dihedral::{GroupCtx, GroupElement};
use crate::error::{Error, Result};
use crate::hyperop::{commutes, CommutationTable, Hyperoperation};
use crate::linalg::IntMatrix;

/// Simple graph on vertices `0..n`, adjacency kept as bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u != v {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Builds a graph from a 0/1 matrix; must be symmetric with a zero
    /// diagonal.
    pub fn from_adjacency<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut g = Graph::empty(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                let ok = match x {
                    0 => rows[j].as_ref().get(i) == Some(&0),
                    1 => i != j && rows[j].as_ref().get(i) == Some(&1),
                    _ => false,
                };
                if !ok {
                    return Err(Error::parse(
                        &format!("row {i}"),
                        "adjacency must be symmetric 0/1 with zero diagonal",
                    ));
                }
                if x == 1 {
                    g.set_bit(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n > 2 {
            g.add_edge(0, n - 1);
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: v,
                len: self.n,
            })
        }
    }

    #[inline]
    fn set_bit(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    /// Adds `{u, v}`. Panics on out-of-range vertices or loops.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u}, {v})");
        self.set_bit(u, v);
        self.set_bit(v, u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.degree_unchecked(v))
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree_unchecked(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree_unchecked(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn is_edgeless(&self) -> bool {
        self.rows.iter().all(|&w| w == 0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.row(v).iter().all(|&w| w == 0))
    }

    /// The null graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// Connected with maximum degree at most 3.
    pub fn is_molecular(&self) -> bool {
        self.is_connected() && self.max_degree() <= 3
    }

    /// Subgraph induced on `keep`, vertex `k` of the result being `keep[k]`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::empty(keep.len());
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// `G - v`; remaining vertices keep their relative order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        if self.n < 2 {
            return Err(Error::GraphTooSmall(self.n));
        }
        let keep: Vec<usize> = (0..self.n).filter(|&k| k != v).collect();
        Ok(self.induced(&keep))
    }

    /// Relabels so that new vertex `k` is old vertex `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        self.induced(perm)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift);
        }
        g
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, |i, j| BigInt::from(self.has_edge(i, j) as u8))
    }

    /// Adjacency as 0/1 rows.
    pub fn adjacency_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.has_edge(i, j) as u8).collect())
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// The commuting graph `C(H, Γ)`: vertices are the elements of `Γ` in
/// global element order; distinct `s`, `t` are adjacent iff `s o t = t o s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CommutingGraph {
    labels: Vec<GroupElement>,
    graph: Graph,
}

fn sorted_subset(group: GroupCtx, subset: &[GroupElement]) -> Result<Vec<GroupElement>> {
    if subset.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut labels = subset.to_vec();
    if let Some(x) = labels.iter().find(|x| !group.contains(**x)) {
        return Err(Error::ForeignElement(x.to_string()));
    }
    labels.sort_unstable();
    if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateElement(w[0].to_string()));
    }
    Ok(labels)
}

impl CommutingGraph {
    /// Builds the commuting graph of `subset` under `op`.
    pub fn new<H: Hyperoperation + ?Sized>(op: &H, subset: &[GroupElement]) -> Result<Self> {
        let labels = sorted_subset(op.group(), subset)?;
        let mut graph = Graph::empty(labels.len());
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if commutes(op, labels[i], labels[j]) {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(CommutingGraph { labels, graph })
    }

    /// Same as [`CommutingGraph::new`] using a precomputed relation.
    pub fn from_table(table: &CommutationTable, subset: &[GroupElement]) -> Result<Self> {
        let g = table.group();
        let labels = sorted_subset(g, subset)?;
        let idx: Vec<usize> = labels.iter().map(|&x| g.index_of(x)).collect();
        let mut graph = Graph::empty(labels.len());
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                if table.commutes_idx(idx[i], idx[j]) {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(CommutingGraph { labels, graph })
    }

    pub fn labels(&self) -> &[GroupElement] {
        &self.labels
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn position(&self, x: GroupElement) -> Option<usize> {
        self.labels.binary_search(&x).ok()
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.graph.degree(v)
    }

    pub fn degree_of(&self, x: GroupElement) -> Option<usize> {
        self.position(x).map(|v| self.graph.degree_unchecked(v))
    }

    pub fn delete_vertex(&self, v: usize) -> Result<CommutingGraph> {
        let graph = self.graph.delete_vertex(v)?;
        let mut labels = self.labels.clone();
        labels.remove(v);
        Ok(CommutingGraph { labels, graph })
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        self.graph.adjacency_matrix()
    }
}
