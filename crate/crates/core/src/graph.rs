//! Immutable simple graphs with dense vertex ids.
//!
//! Every enumeration in this module walks vertices in ascending id order, so
//! all streams are deterministic.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::GraphError;

/// A set of vertex ids with fixed capacity (the vertex count of its graph).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(capacity),
        }
    }

    pub fn from_ids(capacity: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::new(capacity);
        for v in ids {
            set.insert(v);
        }
        set
    }

    pub fn full(capacity: usize) -> Self {
        let mut set = Self::new(capacity);
        set.bits.insert_range(..);
        set
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.bits.len() && self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An induced three-vertex path `x1 - x2 - x3` in canonical orientation
/// (`x1 < x3`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InducedP3 {
    pub x1: usize,
    pub x2: usize,
    pub x3: usize,
}

impl InducedP3 {
    pub fn vertices(&self) -> [usize; 3] {
        [self.x1, self.x2, self.x3]
    }
}

/// Finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::Loop { v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Self {
            adj,
            edge_count: edge_count / 2,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Self {
            adj,
            edge_count: n * n.saturating_sub(1) / 2,
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Self::new(n, &edges).expect("cycle edges are valid")
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges: Vec<_> = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)))
            .collect();
        Graph::new(shift + other.n(), &edges).expect("union of valid graphs")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor ids of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_ids(self.n(), self.adj[v].iter().copied())
    }

    /// `N^d(v)` (vertices at distance exactly `d`) or, when `closed`,
    /// `N^d[v]` (distance at most `d`).
    pub fn dist_neighborhood(&self, v: usize, d: usize, closed: bool) -> VertexSet {
        let dist = self.bfs_distances(v, d);
        let mut out = VertexSet::new(self.n());
        for (u, du) in dist.iter().enumerate() {
            match du {
                Some(du) if (closed && *du <= d) || (!closed && *du == d) => out.insert(u),
                _ => {}
            }
        }
        out
    }

    /// BFS distances from `source`, truncated at `limit`.
    pub fn bfs_distances(&self, source: usize, limit: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if du == limit {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Subgraph induced on `keep`, relabelled order-preservingly. The second
    /// component maps new ids to old ids.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let old_ids = keep.to_vec();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let adj: Vec<Vec<usize>> = old_ids
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| new_id[w] != usize::MAX)
                    .map(|&w| new_id[w])
                    .collect()
            })
            .collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        (Graph { adj, edge_count }, old_ids)
    }

    /// Graph on the same vertices keeping only edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let adj: Vec<Vec<usize>> = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, list)| list.iter().copied().filter(|&v| keep(u, v)).collect())
            .collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, edge_count }
    }

    pub fn is_stable_set(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|u| self.adj[u].iter().all(|&w| !set.contains(w)))
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let members = set.to_vec();
        members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&w| self.has_edge(u, w)))
    }

    /// True when the two vertex sets are disjoint and no edge joins them.
    pub fn anticomplete(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter()
            .all(|&u| b.iter().all(|&w| u != w && !self.has_edge(u, w)))
    }

    /// Every canonical induced P3, ordered by `(x2, x1, x3)`.
    pub fn induced_p3s(&self) -> impl Iterator<Item = InducedP3> + '_ {
        (0..self.n()).flat_map(move |x2| {
            let nbrs = &self.adj[x2];
            nbrs.iter().enumerate().flat_map(move |(i, &x1)| {
                nbrs[i + 1..]
                    .iter()
                    .filter(move |&&x3| !self.has_edge(x1, x3))
                    .map(move |&x3| InducedP3 { x1, x2, x3 })
            })
        })
    }

    /// Every induced path on `t` vertices as a tuple `(v1, .., vt)` with
    /// `v1 < vt` (a single vertex when `t == 1`), in lexicographic order.
    pub fn induced_paths(&self, t: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if t == 0 {
            return out;
        }
        let mut path = Vec::with_capacity(t);
        for start in 0..self.n() {
            path.push(start);
            self.extend_induced_path(t, &mut path, &mut out);
            path.pop();
        }
        out.sort();
        out
    }

    fn extend_induced_path(&self, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() == t {
            if t == 1 || path[0] < path[t - 1] {
                out.push(path.clone());
            }
            return;
        }
        let last = *path.last().unwrap();
        for &next in &self.adj[last] {
            if path.contains(&next) {
                continue;
            }
            // chordless: `next` may only touch the current endpoint
            let chord = path[..path.len() - 1]
                .iter()
                .any(|&p| self.has_edge(p, next));
            if chord {
                continue;
            }
            path.push(next);
            self.extend_induced_path(t, path, out);
            path.pop();
        }
    }

    /// Searches for `r` pairwise anticomplete induced copies of `P_t`.
    ///
    /// Returns the first witness in depth-first order over
    /// [`Graph::induced_paths`], or `None` when the graph is `rP_t`-free.
    pub fn anticomplete_packing(&self, r: usize, t: usize) -> Option<Vec<Vec<usize>>> {
        let paths = self.induced_paths(t);
        pack_anticomplete(self, &paths, r)
    }

    pub fn is_rpt_free(&self, r: usize, t: usize) -> bool {
        self.anticomplete_packing(r, t).is_none()
    }
}

/// Depth-first search for `r` pairwise anticomplete members of `items`.
pub(crate) fn pack_anticomplete(
    graph: &Graph,
    items: &[Vec<usize>],
    r: usize,
) -> Option<Vec<Vec<usize>>> {
    if r == 0 {
        return Some(Vec::new());
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(r);
    if pack_from(graph, items, r, 0, &mut chosen) {
        Some(chosen.into_iter().map(|i| items[i].clone()).collect())
    } else {
        None
    }
}

fn pack_from(
    graph: &Graph,
    items: &[Vec<usize>],
    r: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == r {
        return true;
    }
    let needed = r - chosen.len();
    for i in start..items.len() {
        if items.len() - i < needed {
            return false;
        }
        if chosen
            .iter()
            .all(|&c| graph.anticomplete(&items[c], &items[i]))
        {
            chosen.push(i);
            if pack_from(graph, items, r, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Size of the largest pairwise anticomplete subfamily of `items`.
pub(crate) fn max_anticomplete_family(graph: &Graph, items: &[Vec<usize>]) -> usize {
    fn grow(graph: &Graph, items: &[Vec<usize>], start: usize, chosen: &mut Vec<usize>) -> usize {
        let mut best = chosen.len();
        for i in start..items.len() {
            if best >= chosen.len() + (items.len() - i) {
                break;
            }
            if chosen
                .iter()
                .all(|&c| graph.anticomplete(&items[c], &items[i]))
            {
                chosen.push(i);
                best = best.max(grow(graph, items, i + 1, chosen));
                chosen.pop();
            }
        }
        best
    }
    grow(graph, items, 0, &mut Vec::new())
}
