use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::token::VertexToken;
use crate::error::{invalid, Result};

/// A simple undirected graph on named vertices.
///
/// Edges are stored with their endpoints in token order, so `(u, v)` with `u < v`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Graph {
    vertices: BTreeSet<VertexToken>,
    edges: BTreeSet<(VertexToken, VertexToken)>,
}

fn ordered(a: VertexToken, b: VertexToken) -> (VertexToken, VertexToken) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(vertices: impl IntoIterator<Item = VertexToken>) -> Self {
        Graph { vertices: vertices.into_iter().collect(), edges: BTreeSet::new() }
    }

    /// Builds a graph from an edge list; endpoints become vertices.
    pub fn from_edges(edges: impl IntoIterator<Item = (VertexToken, VertexToken)>) -> Result<Self> {
        let mut g = Graph::new();
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexToken) -> bool {
        self.vertices.insert(v)
    }

    pub fn add_edge(&mut self, a: VertexToken, b: VertexToken) -> Result<bool> {
        if a == b {
            return Err(invalid(format!("self-loop at {a}")));
        }
        self.vertices.insert(a.clone());
        self.vertices.insert(b.clone());
        Ok(self.edges.insert(ordered(a, b)))
    }

    pub fn remove_edge(&mut self, a: &VertexToken, b: &VertexToken) -> bool {
        self.edges.remove(&ordered(a.clone(), b.clone()))
    }

    pub fn vertices(&self) -> &BTreeSet<VertexToken> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(VertexToken, VertexToken)> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: &VertexToken) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, a: &VertexToken, b: &VertexToken) -> bool {
        a != b && self.edges.contains(&ordered(a.clone(), b.clone()))
    }

    pub fn adjacency(&self) -> BTreeMap<&VertexToken, BTreeSet<&VertexToken>> {
        let mut adj: BTreeMap<&VertexToken, BTreeSet<&VertexToken>> =
            self.vertices.iter().map(|v| (v, BTreeSet::new())).collect();
        for (a, b) in &self.edges {
            adj.get_mut(a).unwrap().insert(b);
            adj.get_mut(b).unwrap().insert(a);
        }
        adj
    }

    pub fn neighbors(&self, v: &VertexToken) -> BTreeSet<VertexToken> {
        self.edges
            .iter()
            .filter_map(|(a, b)| {
                if a == v {
                    Some(b.clone())
                } else if b == v {
                    Some(a.clone())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: &VertexToken) -> usize {
        self.edges.iter().filter(|(a, b)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> BTreeMap<&VertexToken, usize> {
        let mut deg: BTreeMap<&VertexToken, usize> = self.vertices.iter().map(|v| (v, 0)).collect();
        for (a, b) in &self.edges {
            *deg.get_mut(a).unwrap() += 1;
            *deg.get_mut(b).unwrap() += 1;
        }
        deg
    }

    /// The subgraph induced on `keep` (vertices outside the graph are ignored).
    pub fn induced(&self, keep: &BTreeSet<VertexToken>) -> Graph {
        Graph {
            vertices: self.vertices.intersection(keep).cloned().collect(),
            edges: self.edges.iter().filter(|(a, b)| keep.contains(a) && keep.contains(b)).cloned().collect(),
        }
    }

    /// Renames vertices through `f`, which must be injective on the vertex set.
    pub fn relabel(&self, mut f: impl FnMut(&VertexToken) -> VertexToken) -> Result<Graph> {
        let map: BTreeMap<&VertexToken, VertexToken> = self.vertices.iter().map(|v| (v, f(v))).collect();
        let image: BTreeSet<&VertexToken> = map.values().collect();
        if image.len() != map.len() {
            return Err(invalid("relabeling is not injective"));
        }
        let mut g = Graph::with_vertices(map.values().cloned());
        for (a, b) in &self.edges {
            g.add_edge(map[a].clone(), map[b].clone())?;
        }
        Ok(g)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertices.len();
        self.edges.len() == n * n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.iter().next() else {
            return true;
        };
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty() && self.edges.len() + 1 == self.vertices.len() && self.is_connected()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexToken>,
    edges: Vec<(VertexToken, VertexToken)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.vertices.iter().cloned().collect(),
            edges: self.edges.iter().cloned().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let mut g = Graph::with_vertices(raw.vertices);
        for (a, b) in raw.edges {
            g.add_edge(a, b).map_err(serde::de::Error::custom)?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::token::tok;

    #[test]
    fn edges_are_unordered_and_loops_rejected() {
        let mut g = Graph::new();
        assert!(g.add_edge(tok("b"), tok("a")).unwrap());
        assert!(!g.add_edge(tok("a"), tok("b")).unwrap());
        assert!(g.has_edge(&tok("a"), &tok("b")));
        assert!(g.add_edge(tok("a"), tok("a")).is_err());
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn tree_detection() {
        let path = Graph::from_edges([(tok("1"), tok("2")), (tok("2"), tok("3"))]).unwrap();
        assert!(path.is_tree());
        let mut cyc = path.clone();
        cyc.add_edge(tok("1"), tok("3")).unwrap();
        assert!(!cyc.is_tree());
        let mut forest = path.clone();
        forest.add_vertex(tok("9"));
        assert!(!forest.is_tree());
        assert!(Graph::with_vertices([tok("x")]).is_tree());
    }

    #[test]
    fn json_round_trip() {
        let mut g = Graph::from_edges([(tok("0'"), tok("1")), (tok("1"), tok("2"))]).unwrap();
        g.add_vertex(tok("iso"));
        let text = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }
}
