use crate::error::{invalid, Result};
use crate::graphcore::{Graph, VertexToken};

/// Complements the edges among the neighbors of `v`; every other edge is kept.
pub fn local_complement(g: &Graph, v: &VertexToken) -> Result<Graph> {
    if !g.contains(v) {
        return Err(invalid(format!("{v} is not a vertex of the graph")));
    }
    let nbrs: Vec<VertexToken> = g.neighbors(v).into_iter().collect();
    let mut out = g.clone();
    for (i, a) in nbrs.iter().enumerate() {
        for b in &nbrs[i + 1..] {
            if g.has_edge(a, b) {
                out.remove_edge(a, b);
            } else {
                out.add_edge(a.clone(), b.clone())?;
            }
        }
    }
    Ok(out)
}
