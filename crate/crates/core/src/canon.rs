//! Canonical labeling for small graphs.
//!
//! Individualization-refinement search: the vertex partition is refined to
//! an equitable one (cells split by neighbour counts into every other
//! cell), then the first non-trivial cell is individualized vertex by
//! vertex. Each discrete leaf gives a vertex ordering; the canonical form
//! is the lexicographically smallest upper-triangle adjacency bit string
//! over all leaves. Automorphisms found by equal leaves prune sibling
//! branches that lie in the same orbit of the path stabilizer.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph accepted by [`canonical_form`].
pub const CANON_MAX_VERTICES: usize = 20;

/// Identifies the isomorphism class of a graph: vertex count followed by
/// the minimal upper-triangle bit string packed MSB-first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    /// The canonical representative graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[1 + bit / 8] >> (7 - bit % 8) & 1 == 1 {
                    g.add_edge(i, j);
                }
                bit += 1;
            }
        }
        g
    }
}

type Partition = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Partition) -> Partition {
    let n = g.order();
    let mut cell_of = vec![0usize; n];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let k = cells.len();
        let mut changed = false;
        let mut next: Partition = Vec::with_capacity(n);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; k];
                    for w in g.neighbors(v) {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let before = next.len();
            let mut current: Vec<usize> = Vec::new();
            for idx in 0..keyed.len() {
                if idx > 0 && keyed[idx].0 != keyed[idx - 1].0 {
                    next.push(std::mem::take(&mut current));
                }
                current.push(keyed[idx].1);
            }
            next.push(current);
            changed |= next.len() - before > 1;
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn leaf_code(g: &Graph, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u8; 1 + bits.div_ceil(8)];
    out[0] = n as u8;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                out[1 + bit / 8] |= 0x80 >> (bit % 8);
            }
            bit += 1;
        }
    }
    out
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u8>, Vec<usize>)>,
    /// Leaf code -> first ordering seen, for automorphism discovery.
    seen: HashMap<Vec<u8>, Vec<usize>>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf(&mut self, cells: &Partition) {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = leaf_code(self.g, &order);
        if let Some(prev) = self.seen.get(&code) {
            // order[k] -> prev[k] preserves adjacency.
            let mut perm = vec![0; order.len()];
            for (k, &v) in order.iter().enumerate() {
                perm[v] = prev[k];
            }
            if perm.iter().enumerate().any(|(i, &p)| i != p) {
                self.automorphisms.push(perm);
            }
            return;
        }
        match &self.best {
            Some((best, _)) if *best <= code => {}
            _ => self.best = Some((code.clone(), order.clone())),
        }
        self.seen.insert(code, order);
    }

    fn descend(&mut self, cells: Partition, path: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let candidates = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !tried.is_empty() && self.same_orbit(path, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(candidates.iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            let child = refine(self.g, child);
            path.push(v);
            self.descend(child, path);
            path.pop();
        }
    }

    /// Whether `v` is in the orbit of some vertex in `tried` under the group
    /// generated by known automorphisms fixing `path` pointwise.
    fn same_orbit(&self, path: &[usize], tried: &[usize], v: usize) -> bool {
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|p| path.iter().all(|&x| p[x] == x))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut orbit = vec![false; self.g.order()];
        let mut stack = vec![v];
        orbit[v] = true;
        while let Some(x) = stack.pop() {
            if tried.contains(&x) {
                return true;
            }
            for p in &gens {
                let y = p[x];
                if !orbit[y] {
                    orbit[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }
}

/// Canonical labeling: returns the form and an ordering `order` such that
/// `g.permuted(&order)` is the canonical representative.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.order();
    if n > CANON_MAX_VERTICES {
        return Err(Error::SizeGuard {
            what: "canonical form vertex count",
            len: n,
            max: CANON_MAX_VERTICES,
        });
    }
    if n == 0 {
        return Ok((CanonicalForm(vec![0]), Vec::new()));
    }
    let root = refine(g, vec![(0..n).collect()]);
    let mut search = Search {
        g,
        best: None,
        seen: HashMap::new(),
        automorphisms: Vec::new(),
    };
    search.descend(root, &mut Vec::new());
    let (code, order) = search.best.expect("search visits at least one leaf");
    Ok((CanonicalForm(code), order))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(form, _)| form)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}
