//! Abstract simple graphs, the complete and complete bipartite families, and
//! cycle enumeration.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// Unordered vertex pair, stored with the smaller vertex first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(Vertex, Vertex)", into = "(Vertex, Vertex)")]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Panics on a loop (`u == v`).
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "loops are not edges");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn ends(self) -> [Vertex; 2] {
        [self.0, self.1]
    }

    pub fn has(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn shares_vertex(self, o: Edge) -> bool {
        self.has(o.0) || self.has(o.1)
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: Vertex) -> Vertex {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl TryFrom<(Vertex, Vertex)> for Edge {
    type Error = String;
    fn try_from((u, v): (Vertex, Vertex)) -> Result<Self, String> {
        if u == v {
            Err(format!("loop at vertex {u}"))
        } else {
            Ok(Edge::new(u, v))
        }
    }
}

impl From<Edge> for (Vertex, Vertex) {
    fn from(e: Edge) -> Self {
        (e.0, e.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("edge {0}-{1} refers to a vertex outside 0..{2}")]
    UnknownVertex(Vertex, Vertex, usize),
    #[error("edge {0}-{1} listed twice")]
    MultiEdge(Vertex, Vertex),
}

/// Simple graph on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::UnknownVertex(u, v, vertex_count));
            }
            if !set.insert(Edge::new(u, v)) {
                return Err(GraphError::MultiEdge(u, v));
            }
        }
        Ok(Graph { vertex_count, edges: set })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph { vertex_count, edges: BTreeSet::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.edges.contains(&Edge::new(u, v))
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.edges.iter().filter(|e| e.has(v)).map(|e| e.other(v)).collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.has(v)).count()
    }

    /// Ordered pairs of vertex-disjoint edges.
    pub fn disjoint_edge_pairs(&self) -> Vec<(Edge, Edge)> {
        let mut out = Vec::new();
        for e in self.edges() {
            for f in self.edges() {
                if !e.shares_vertex(f) {
                    out.push((e, f));
                }
            }
        }
        out
    }

    pub(crate) fn insert_edge(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub(crate) fn remove_edge(&mut self, e: Edge) -> bool {
        self.edges.remove(&e)
    }

    pub(crate) fn add_vertex(&mut self) -> Vertex {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    /// Removes `v` and shifts every higher vertex id down by one.
    pub(crate) fn remove_vertex(&mut self, v: Vertex) {
        let shift = |x: Vertex| if x > v { x - 1 } else { x };
        self.edges = self
            .edges
            .iter()
            .filter(|e| !e.has(v))
            .map(|e| Edge::new(shift(e.0), shift(e.1)))
            .collect();
        self.vertex_count -= 1;
    }

    /// Two-colouring of a bipartite graph, `None` if an odd cycle exists.
    /// Vertex 0 of each component gets colour 0.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color: Vec<Option<u8>> = vec![None; self.vertex_count];
        for start in self.vertices() {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].expect("queued vertices are coloured");
                for w in self.neighbors(v) {
                    match color[w] {
                        None => {
                            color[w] = Some(1 - c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.expect("all coloured")).collect())
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count;
        self.edges.len() == n * n.saturating_sub(1) / 2
    }

    /// The two sides if this graph is `K_{n,n}`.
    pub fn complete_bipartite_parts(&self, n: usize) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        if self.vertex_count != 2 * n || self.edges.len() != n * n {
            return None;
        }
        let color = self.two_coloring()?;
        let part = |c: u8| -> Vec<Vertex> { self.vertices().filter(|&v| color[v] == c).collect() };
        let (p, q) = (part(0), part(1));
        if p.len() != n || q.len() != n {
            return None;
        }
        Some((p, q))
    }
}

/// `K_n` on vertices `0..n`.
pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete graph is simple")
}

/// `K_{n,m}` with parts `0..n` and `n..n+m`.
pub fn complete_bipartite(n: usize, m: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (n..n + m).map(move |v| (u, v)));
    Graph::new(n + m, edges).expect("complete bipartite graph is simple")
}

/// A cycle as a vertex sequence, canonicalized: least vertex first, then
/// toward its smaller neighbour.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Cycle(Vec<Vertex>);

impl Cycle {
    /// Canonicalizes any rotation / reflection. Panics on fewer than three
    /// vertices or repeated vertices.
    pub fn new(seq: Vec<Vertex>) -> Self {
        Cycle::try_new(seq).expect("valid cycle")
    }

    pub fn try_new(seq: Vec<Vertex>) -> Result<Self, String> {
        let n = seq.len();
        if n < 3 {
            return Err(format!("a cycle needs at least 3 vertices, got {n}"));
        }
        let distinct: BTreeSet<_> = seq.iter().collect();
        if distinct.len() != n {
            return Err(format!("repeated vertex in cycle {seq:?}"));
        }
        let start = (0..n).min_by_key(|&i| seq[i]).expect("nonempty");
        let fwd = seq[(start + 1) % n];
        let back = seq[(start + n - 1) % n];
        let out = if fwd < back {
            (0..n).map(|k| seq[(start + k) % n]).collect()
        } else {
            (0..n).map(|k| seq[(start + n - k) % n]).collect()
        };
        Ok(Cycle(out))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.0.len();
        (0..n).map(|i| Edge::new(self.0[i], self.0[(i + 1) % n])).collect()
    }

    pub fn is_in(&self, g: &Graph) -> bool {
        self.edges().iter().all(|e| g.has_edge(e.0, e.1))
    }

    pub fn disjoint_from(&self, o: &Cycle) -> bool {
        !self.0.iter().any(|v| o.0.contains(v))
    }

    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> Cycle {
        Cycle::new(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl TryFrom<Vec<Vertex>> for Cycle {
    type Error = String;
    fn try_from(v: Vec<Vertex>) -> Result<Self, String> {
        Cycle::try_new(v)
    }
}

impl From<Cycle> for Vec<Vertex> {
    fn from(c: Cycle) -> Self {
        c.0
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// All cycles of length `len`, each listed once, sorted.
pub fn enumerate_cycles(g: &Graph, len: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    if len < 3 {
        return out;
    }
    let adj: Vec<Vec<Vertex>> = g.vertices().map(|v| g.neighbors(v)).collect();
    for start in g.vertices() {
        let mut path = vec![start];
        extend_paths(&adj, start, len, &mut path, &mut out);
    }
    out.sort();
    out
}

fn extend_paths(adj: &[Vec<Vertex>], start: Vertex, len: usize, path: &mut Vec<Vertex>, out: &mut Vec<Cycle>) {
    let last = *path.last().expect("path starts at start");
    if path.len() == len {
        // Close the cycle; keep one of the two traversal directions.
        if adj[last].contains(&start) && path[1] < last {
            out.push(Cycle(path.clone()));
        }
        return;
    }
    for &w in &adj[last] {
        if w > start && !path.contains(&w) {
            path.push(w);
            extend_paths(adj, start, len, path, out);
            path.pop();
        }
    }
}

/// Unordered pairs of vertex-disjoint cycles with lengths `len1` and `len2`.
/// When the lengths are equal each pair appears once with the smaller cycle
/// first.
pub fn enumerate_disjoint_cycle_pairs(g: &Graph, len1: usize, len2: usize) -> Vec<(Cycle, Cycle)> {
    let first = enumerate_cycles(g, len1);
    let second = if len1 == len2 { first.clone() } else { enumerate_cycles(g, len2) };
    let mut out = Vec::new();
    for a in &first {
        for b in &second {
            if (len1 != len2 || a < b) && a.disjoint_from(b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_family_sizes() {
        let k6 = complete_graph(6);
        assert_eq!((k6.vertex_count(), k6.edge_count()), (6, 15));
        let k44 = complete_bipartite(4, 4);
        assert_eq!((k44.vertex_count(), k44.edge_count()), (8, 16));
        let k1 = complete_graph(1);
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
        assert!(k6.is_complete());
        assert!(!k44.is_complete());
        assert!(k44.complete_bipartite_parts(4).is_some());
        assert!(k6.complete_bipartite_parts(3).is_none());
    }

    #[test]
    fn cycle_canonical_form() {
        assert_eq!(Cycle::new(vec![3, 1, 2]).vertices(), &[1, 2, 3]);
        assert_eq!(Cycle::new(vec![1, 3, 2]).vertices(), &[1, 2, 3]);
        assert_eq!(Cycle::new(vec![5, 2, 7, 0]).vertices(), &[0, 5, 2, 7]);
        assert!(Cycle::try_new(vec![1, 2]).is_err());
        assert!(Cycle::try_new(vec![1, 2, 1]).is_err());
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(enumerate_cycles(&complete_graph(6), 3).len(), 20);
        assert_eq!(enumerate_cycles(&complete_graph(5), 3).len(), 10);
        assert_eq!(enumerate_cycles(&complete_graph(4), 4).len(), 3);
        // K_{4,4}: choose 2+2 vertices, each K_{2,2} is one 4-cycle.
        assert_eq!(enumerate_cycles(&complete_bipartite(4, 4), 4).len(), 36);
        assert_eq!(enumerate_cycles(&complete_bipartite(3, 3), 4).len(), 9);
    }

    #[test]
    fn disjoint_pair_counts() {
        assert_eq!(enumerate_disjoint_cycle_pairs(&complete_graph(6), 3, 3).len(), 10);
        assert_eq!(enumerate_disjoint_cycle_pairs(&complete_bipartite(4, 4), 4, 4).len(), 18);
        assert_eq!(enumerate_disjoint_cycle_pairs(&complete_graph(4), 3, 3).len(), 0);
        assert_eq!(enumerate_disjoint_cycle_pairs(&complete_graph(7), 3, 4).len(), 35 * 3);
    }

    /// Brute force over vertex subsets and orderings, independent of the
    /// DFS enumerator.
    fn brute_force_cycle_count(g: &Graph, len: usize) -> usize {
        fn permute(items: &mut Vec<Vertex>, k: usize, g: &Graph, seen: &mut BTreeSet<Cycle>) {
            if k == items.len() {
                let n = items.len();
                if (0..n).all(|i| g.has_edge(items[i], items[(i + 1) % n])) {
                    seen.insert(Cycle::new(items.clone()));
                }
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                permute(items, k + 1, g, seen);
                items.swap(k, i);
            }
        }
        let n = g.vertex_count();
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == len {
                let mut items: Vec<Vertex> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                permute(&mut items, 0, g, &mut seen);
            }
        }
        seen.len()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (g, len) in [
            (complete_graph(6), 3),
            (complete_graph(6), 4),
            (complete_bipartite(4, 4), 4),
            (complete_bipartite(3, 4), 6),
            (Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4), (4, 1)]).unwrap(), 4),
        ] {
            assert_eq!(enumerate_cycles(&g, len).len(), brute_force_cycle_count(&g, len));
        }
    }

    #[test]
    fn pairs_are_unique_under_recanonicalization() {
        let pairs = enumerate_disjoint_cycle_pairs(&complete_bipartite(4, 4), 4, 4);
        let mut seen = BTreeSet::new();
        for (a, b) in pairs {
            let a2 = Cycle::new(a.vertices().iter().rev().copied().collect());
            let b2 = Cycle::new(b.vertices().to_vec());
            let key = if a2 < b2 { (a2, b2) } else { (b2, a2) };
            assert!(seen.insert(key));
        }
    }

    #[test]
    fn graph_construction_errors() {
        assert_eq!(Graph::new(3, [(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(Graph::new(3, [(0, 3)]), Err(GraphError::UnknownVertex(0, 3, 3)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(GraphError::MultiEdge(1, 0)));
    }

    #[test]
    fn remove_vertex_relabels() {
        let mut g = Graph::new(4, [(0, 1), (1, 3), (2, 3)]).unwrap();
        g.remove_vertex(1);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![Edge::new(1, 2)]);
        assert_eq!(g.vertex_count(), 3);
    }

    #[test]
    fn disjoint_edge_pairs_in_k5() {
        // Each of the 10 edges is disjoint from the 3 edges of the opposite triangle.
        assert_eq!(complete_graph(5).disjoint_edge_pairs().len(), 30);
        assert_eq!(complete_bipartite(3, 3).disjoint_edge_pairs().len(), 36);
    }
}
