//! Finite graphs built from half-edges. Loops and multiple edges are allowed.

use std::collections::{HashMap, VecDeque};

use crate::error::{invalid, Result};

/// One end of an edge: `side` is 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: usize,
    pub side: usize,
}

impl HalfEdge {
    pub fn new(edge: usize, side: usize) -> Self {
        HalfEdge { edge, side }
    }

    pub fn opposite(self) -> Self {
        HalfEdge {
            edge: self.edge,
            side: 1 - self.side,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgeData {
    id: String,
    ends: [usize; 2],
}

/// Vertices and edges are indexed in insertion order; ids are unique strings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeData>,
    vertex_lookup: HashMap<String, usize>,
    edge_lookup: HashMap<String, usize>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        if self.vertex_lookup.contains_key(&id) {
            return Err(invalid!("duplicate vertex id {id:?}"));
        }
        let k = self.vertices.len();
        self.vertex_lookup.insert(id.clone(), k);
        self.vertices.push(id);
        Ok(k)
    }

    pub fn add_edge(&mut self, id: impl Into<String>, a: usize, b: usize) -> Result<usize> {
        let id = id.into();
        if self.edge_lookup.contains_key(&id) {
            return Err(invalid!("duplicate edge id {id:?}"));
        }
        if a >= self.vertices.len() || b >= self.vertices.len() {
            return Err(invalid!("edge {id:?} is attached to a missing vertex"));
        }
        let k = self.edges.len();
        self.edge_lookup.insert(id.clone(), k);
        self.edges.push(EdgeData { id, ends: [a, b] });
        Ok(k)
    }

    /// A graph with vertices named `0..n` and edges named `0..` joining the given pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new();
        for v in 0..n {
            g.add_vertex(v.to_string())?;
        }
        for (k, &(a, b)) in edges.iter().enumerate() {
            g.add_edge(format!("e{k}"), a, b)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_lookup.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_lookup.get(id).copied()
    }

    pub fn ends(&self, e: usize) -> [usize; 2] {
        self.edges[e].ends
    }

    /// The vertex a half-edge is attached to.
    pub fn attachment(&self, h: HalfEdge) -> usize {
        self.edges[h.edge].ends[h.side]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let [a, b] = self.edges[e].ends;
        a == b
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        (0..self.edges.len()).flat_map(|e| [HalfEdge::new(e, 0), HalfEdge::new(e, 1)])
    }

    pub fn half_edges_at(&self, v: usize) -> Vec<HalfEdge> {
        self.half_edges().filter(|&h| self.attachment(h) == v).collect()
    }

    /// Number of half-edges at `v` (a loop counts twice).
    pub fn degree(&self, v: usize) -> usize {
        self.half_edges_at(v).len()
    }

    /// `(neighbor, edge)` pairs, one per half-edge at `v`.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, usize)> {
        self.half_edges_at(v)
            .into_iter()
            .map(|h| (self.attachment(h.opposite()), h.edge))
            .collect()
    }

    /// Connected component label of every vertex, numbered by first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.vertices.len()];
        let mut next = 0;
        for start in 0..self.vertices.len() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for (w, _) in self.neighbors(v) {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `|E| - |V| + c`, the rank of `H_1` of the underlying topological space.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices.len()
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.is_connected() && self.cycle_rank() == 0
    }

    /// Breadth-first parent edge and depth of every vertex reachable from `root`.
    pub fn bfs_tree(&self, root: usize) -> (Vec<Option<(usize, usize)>>, Vec<Option<usize>>) {
        let n = self.vertices.len();
        let mut parent = vec![None; n];
        let mut depth = vec![None; n];
        depth[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let d = depth[v].expect("visited");
            for (w, e) in self.neighbors(v) {
                if depth[w].is_none() {
                    depth[w] = Some(d + 1);
                    parent[w] = Some((v, e));
                    queue.push_back(w);
                }
            }
        }
        (parent, depth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_ranks() {
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap().cycle_rank(), 0);
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap().cycle_rank(), 1);
        assert_eq!(Graph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap().cycle_rank(), 2);
        assert_eq!(Graph::from_edges(1, &[(0, 0)]).unwrap().cycle_rank(), 1);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.component_count(), 2);
        assert_eq!(two.cycle_rank(), 0);
        assert!(!two.is_tree());
    }

    #[test]
    fn loops_have_two_half_edges() {
        let g = Graph::from_edges(1, &[(0, 0)]).unwrap();
        assert_eq!(g.degree(0), 2);
        assert!(g.is_loop(0));
    }

    #[test]
    fn rejects_bad_input() {
        let mut g = Graph::new();
        g.add_vertex("a").unwrap();
        assert!(g.add_vertex("a").is_err());
        assert!(g.add_edge("e", 0, 3).is_err());
    }
}
