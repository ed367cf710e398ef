use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::dense::DenseGraph;
use super::{check_bound, SearchBounds, SearchOutcome, Witness};
use crate::error::Result;
use crate::graphcore::{Graph, VertexToken};

/// Arcs `(from, to)` orienting every edge of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub arcs: Vec<(VertexToken, VertexToken)>,
}

/// Tries all `2^|E|` orientations in binary order and returns the first
/// transitive one: whenever `a -> b` and `b -> c`, also `a -> c`.
pub fn is_comparability_small(g: &Graph, bounds: &SearchBounds) -> Result<SearchOutcome> {
    let started = Instant::now();
    let m = g.edge_count();
    check_bound("edges for orientation search", m, bounds.orientation_edges.min(40))?;
    let dense = DenseGraph::from_graph(g)?;
    let n = dense.n();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| dense.has_edge(i, j)).collect();

    let mut out = vec![0u64; n];
    for mask in 0..(1u64 << m) {
        out.iter_mut().for_each(|o| *o = 0);
        for (e, &(i, j)) in edges.iter().enumerate() {
            if mask >> e & 1 == 0 {
                out[i] |= 1 << j;
            } else {
                out[j] |= 1 << i;
            }
        }
        // transitive iff each arc's head reaches nothing its tail does not
        let transitive = (0..n).all(|a| {
            let mut heads = out[a];
            while heads != 0 {
                let b = heads.trailing_zeros() as usize;
                heads &= heads - 1;
                if out[b] & !out[a] != 0 {
                    return false;
                }
            }
            true
        });
        if transitive {
            let arcs = edges
                .iter()
                .enumerate()
                .map(|(e, &(i, j))| {
                    let (from, to) = if mask >> e & 1 == 0 { (i, j) } else { (j, i) };
                    (dense.tokens[from].clone(), dense.tokens[to].clone())
                })
                .collect();
            return Ok(SearchOutcome::new(started, Some(Witness::Orientation(Orientation { arcs })), mask + 1));
        }
    }
    Ok(SearchOutcome::new(started, None, 1u64 << m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::generators::{complete, cycle, free_trees};

    fn orientation(out: &SearchOutcome) -> &Orientation {
        match &out.witness {
            Some(Witness::Orientation(o)) => o,
            other => panic!("expected an orientation, got {other:?}"),
        }
    }

    fn assert_transitive(g: &Graph, o: &Orientation) {
        assert_eq!(o.arcs.len(), g.edge_count());
        for (a, b) in &o.arcs {
            assert!(g.has_edge(a, b));
            for (c, d) in &o.arcs {
                if b == c {
                    assert!(o.arcs.contains(&(a.clone(), d.clone())), "{a}->{b}->{d} lacks {a}->{d}");
                }
            }
        }
    }

    #[test]
    fn trees_are_comparability_graphs() {
        let b = SearchBounds::default();
        for n in 1..=7 {
            for t in free_trees(n) {
                let out = is_comparability_small(&t, &b).unwrap();
                assert!(out.found);
                assert_transitive(&t, orientation(&out));
            }
        }
    }

    #[test]
    fn odd_cycle_is_not() {
        let out = is_comparability_small(&cycle(5), &SearchBounds::default()).unwrap();
        assert!(!out.found);
        assert_eq!(out.states_examined, 32);
    }

    #[test]
    fn even_cycle_and_complete_graph_are() {
        let b = SearchBounds::default();
        let out = is_comparability_small(&cycle(6), &b).unwrap();
        assert_transitive(&cycle(6), orientation(&out));
        let out = is_comparability_small(&complete(5), &b).unwrap();
        assert_transitive(&complete(5), orientation(&out));
    }

    #[test]
    fn edge_bound() {
        let tight = SearchBounds { orientation_edges: 5, ..SearchBounds::default() };
        assert!(is_comparability_small(&cycle(6), &tight).is_err());
    }
}
