//! Brute-force reference checks shared by the integration tests. They work
//! on plain strings so they share no code with the library.

use std::collections::BTreeSet;

use permrep_core::graphcore::{Graph, Word};

pub type Edges = BTreeSet<(String, String)>;

fn ordered(a: &str, b: &str) -> (String, String) {
    if a < b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Pairs of distinct letters whose restriction of the word alternates.
pub fn alternating_pairs(letters: &[String]) -> Edges {
    let alphabet: BTreeSet<&String> = letters.iter().collect();
    let alphabet: Vec<&String> = alphabet.into_iter().collect();
    let mut out = Edges::new();
    for (i, a) in alphabet.iter().enumerate() {
        for b in &alphabet[i + 1..] {
            let sub: Vec<&String> = letters.iter().filter(|x| x == a || x == b).collect();
            if sub.windows(2).all(|w| w[0] != w[1]) {
                out.insert(ordered(a, b));
            }
        }
    }
    out
}

pub fn word_letters(w: &Word) -> Vec<String> {
    w.iter().map(|t| t.to_string()).collect()
}

pub fn graph_edges(g: &Graph) -> Edges {
    g.edges().iter().map(|(a, b)| ordered(a.as_str(), b.as_str())).collect()
}

/// Checks adjacency equals alternation and the alphabet equals the vertex set.
pub fn naive_represents(w: &Word, g: &Graph) -> bool {
    let letters = word_letters(w);
    let alphabet: BTreeSet<String> = letters.iter().cloned().collect();
    let vertices: BTreeSet<String> = g.vertices().iter().map(|v| v.to_string()).collect();
    alphabet == vertices && alternating_pairs(&letters) == graph_edges(g)
}
