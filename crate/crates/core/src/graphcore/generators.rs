//! Named graphs and small graph families used by the constructions and tests.

use std::collections::BTreeSet;

use rand::Rng;

use super::graph::Graph;
use super::token::{tok, VertexToken};

fn numbered(n: usize, prefix: &str) -> Vec<VertexToken> {
    (1..=n).map(|i| tok(&format!("{prefix}{i}"))).collect()
}

/// `a1 - a2 - ... - an`.
pub fn path_tokens(n: usize) -> Vec<VertexToken> {
    numbered(n, "a")
}

pub fn path_on(tokens: &[VertexToken]) -> Graph {
    let mut g = Graph::with_vertices(tokens.iter().cloned());
    for w in tokens.windows(2) {
        g.add_edge(w[0].clone(), w[1].clone()).expect("distinct tokens");
    }
    g
}

pub fn path(n: usize) -> Graph {
    path_on(&path_tokens(n))
}

pub fn cycle_on(tokens: &[VertexToken]) -> Graph {
    let mut g = path_on(tokens);
    if tokens.len() >= 3 {
        g.add_edge(tokens[tokens.len() - 1].clone(), tokens[0].clone()).expect("distinct tokens");
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    cycle_on(&path_tokens(n))
}

/// `K_{1,m}` with center `0` and leaves `1..=m`.
pub fn star(m: usize) -> Graph {
    let mut g = Graph::with_vertices([VertexToken::from(0)]);
    for i in 1..=m {
        g.add_edge(VertexToken::from(0), VertexToken::from(i)).unwrap();
    }
    g
}

/// `K_n` on `1..=n`.
pub fn complete(n: usize) -> Graph {
    let mut g = Graph::with_vertices((1..=n).map(VertexToken::from));
    for i in 1..=n {
        for j in i + 1..=n {
            g.add_edge(VertexToken::from(i), VertexToken::from(j)).unwrap();
        }
    }
    g
}

fn from_pairs(pairs: &[(&str, &str)]) -> Graph {
    Graph::from_edges(pairs.iter().map(|(a, b)| (tok(a), tok(b)))).unwrap()
}

/// The spider with three legs of length two: center 1, legs 2-3, 4-5, 6-7.
pub fn spider_s() -> Graph {
    from_pairs(&[("1", "2"), ("1", "4"), ("1", "6"), ("2", "3"), ("4", "5"), ("6", "7")])
}

/// The twelve-vertex tree used to demonstrate the tree construction, drawn
/// with its final labels.
pub fn demo_tree() -> Graph {
    from_pairs(&[
        ("1", "2"),
        ("1", "4"),
        ("1", "6"),
        ("2", "3"),
        ("2", "5"),
        ("3", "8"),
        ("4", "7"),
        ("7", "10"),
        ("6", "9"),
        ("6", "11"),
        ("11", "12"),
    ])
}

/// Adjacency lists of a tree on `0..n`.
type TreeAdj = Vec<Vec<usize>>;

fn tree_centers(adj: &TreeAdj) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &u in &adj[leaf] {
                degree[u] -= 1;
                if degree[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer
}

fn ahu(adj: &TreeAdj, v: usize, parent: usize) -> String {
    let mut parts: Vec<String> = adj[v].iter().filter(|&&u| u != parent).map(|&u| ahu(adj, u, v)).collect();
    parts.sort();
    format!("({})", parts.concat())
}

/// Isomorphism-invariant string for a free tree.
fn tree_code(adj: &TreeAdj) -> String {
    tree_centers(adj).into_iter().map(|c| ahu(adj, c, usize::MAX)).min().unwrap_or_default()
}

/// All non-isomorphic free trees on `n` vertices, labeled `1..=n`.
///
/// Grows every tree on `n - 1` vertices by one leaf in every position and
/// keeps one representative per isomorphism class.
pub fn free_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<TreeAdj> = vec![vec![Vec::new()]];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for attach in 0..size - 1 {
                let mut grown = t.clone();
                grown.push(vec![attach]);
                grown[attach].push(size - 1);
                if seen.insert(tree_code(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|adj| {
            let mut g = Graph::with_vertices((1..=n).map(VertexToken::from));
            for (v, nbrs) in adj.iter().enumerate() {
                for &u in nbrs {
                    if v < u {
                        g.add_edge(VertexToken::from(v + 1), VertexToken::from(u + 1)).unwrap();
                    }
                }
            }
            g
        })
        .collect()
}

/// A uniformly random labeled tree on `1..=n` from a random Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::with_vertices((1..=n).map(VertexToken::from));
    if n < 2 {
        return g;
    }
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &p in &prufer {
        degree[p] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &p in &prufer {
        let leaf = leaves.pop_first().unwrap();
        g.add_edge(VertexToken::from(leaf + 1), VertexToken::from(p + 1)).unwrap();
        degree[p] -= 1;
        if degree[p] == 1 {
            leaves.insert(p);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    g.add_edge(VertexToken::from(last[0] + 1), VertexToken::from(last[1] + 1)).unwrap();
    g
}

/// Erdős–Rényi graph on `1..=n`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::with_vertices((1..=n).map(VertexToken::from));
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(VertexToken::from(i), VertexToken::from(j)).unwrap();
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn free_tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| free_trees(n).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert!(free_trees(8).iter().all(Graph::is_tree));
    }

    #[test]
    fn random_trees_are_trees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..30 {
            assert!(random_tree(n, &mut rng).is_tree());
        }
    }

    #[test]
    fn named_graphs() {
        assert!(spider_s().is_tree());
        assert_eq!(demo_tree().vertex_count(), 12);
        assert!(demo_tree().is_tree());
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(star(4).degree(&VertexToken::from(0)), 4);
        assert!(complete(5).is_complete());
    }
}
