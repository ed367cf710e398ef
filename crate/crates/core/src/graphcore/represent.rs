use std::collections::{BTreeMap, HashMap};

use super::graph::Graph;
use super::token::VertexToken;
use super::word::{PermSequence, Word};
use crate::error::{invalid, Result};

/// Occurrence positions of `a` and `b` interleave with no letter repeating.
fn occurrences_alternate(pa: &[usize], pb: &[usize]) -> bool {
    if pa.len().abs_diff(pb.len()) > 1 {
        return false;
    }
    let (mut i, mut j) = (0, 0);
    let mut last_a: Option<bool> = None;
    while i < pa.len() || j < pb.len() {
        let take_a = j == pb.len() || (i < pa.len() && pa[i] < pb[j]);
        if last_a == Some(take_a) {
            return false;
        }
        last_a = Some(take_a);
        if take_a {
            i += 1;
        } else {
            j += 1;
        }
    }
    true
}

/// The graph represented by `w`: its letters, joined whenever they alternate.
pub fn derive_graph(w: &Word) -> Result<Graph> {
    if w.is_empty() {
        return Err(invalid("cannot derive a graph from the empty word"));
    }
    let mut occ: BTreeMap<&VertexToken, Vec<usize>> = BTreeMap::new();
    for (i, letter) in w.iter().enumerate() {
        occ.entry(letter).or_default().push(i);
    }
    let letters: Vec<(&VertexToken, Vec<usize>)> = occ.into_iter().collect();
    let mut g = Graph::with_vertices(letters.iter().map(|(t, _)| (*t).clone()));
    for (i, (a, pa)) in letters.iter().enumerate() {
        for (b, pb) in &letters[i + 1..] {
            if occurrences_alternate(pa, pb) {
                g.add_edge((*a).clone(), (*b).clone())?;
            }
        }
    }
    Ok(g)
}

/// Whether `w` represents `g`. The letters of `w` must be exactly the vertices of `g`.
pub fn represents(w: &Word, g: &Graph) -> Result<bool> {
    let alphabet = w.alphabet();
    if &alphabet != g.vertices() {
        return Err(invalid(format!(
            "word letters {{{}}} differ from graph vertices {{{}}}",
            join(alphabet.iter()),
            join(g.vertices().iter())
        )));
    }
    Ok(derive_graph(w)?.edges() == g.edges())
}

fn join<'a>(it: impl Iterator<Item = &'a VertexToken>) -> String {
    it.map(|t| t.as_str()).collect::<Vec<_>>().join(" ")
}

/// Positions of every vertex in each permutation, with vertices indexed in the
/// order of the first permutation.
fn position_table(ps: &PermSequence) -> (Vec<VertexToken>, Vec<Vec<usize>>) {
    let order: Vec<VertexToken> = ps.perms()[0].letters().to_vec();
    let index: HashMap<&VertexToken, usize> = order.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let table = ps
        .perms()
        .iter()
        .map(|p| {
            let mut pos = vec![0; order.len()];
            for (i, t) in p.iter().enumerate() {
                pos[index[t]] = i;
            }
            pos
        })
        .collect();
    (order, table)
}

/// The graph represented by a concatenation of permutations: two vertices are
/// adjacent iff they appear in the same relative order in every permutation.
pub fn perm_sequence_graph(ps: &PermSequence) -> Graph {
    let (order, table) = position_table(ps);
    let n = order.len();
    let mut g = Graph::with_vertices(order.iter().cloned());
    for a in 0..n {
        for b in a + 1..n {
            // in the first permutation a precedes b
            if table.iter().all(|pos| pos[a] < pos[b]) {
                g.add_edge(order[a].clone(), order[b].clone()).expect("distinct vertices");
            }
        }
    }
    g
}

struct Fenwick(Vec<u64>);

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick(vec![0; n + 1])
    }

    fn add(&mut self, i: usize, delta: i64) {
        let mut i = i + 1;
        while i < self.0.len() {
            self.0[i] = self.0[i].wrapping_add_signed(delta);
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over indices `< i`.
    fn prefix(&self, i: usize) -> u64 {
        let mut i = i;
        let mut s = 0;
        while i > 0 {
            s += self.0[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}

/// Counts pairs `i < j` with `xs[i] < xs[j]` and `ys[i] < ys[j]` by divide and
/// conquer on index, merging by `x` and counting `y` in a Fenwick tree.
fn count_dominating_pairs(xs: &[usize], ys: &[usize]) -> u64 {
    fn go(items: &mut [(usize, usize)], bit: &mut Fenwick) -> u64 {
        let n = items.len();
        if n < 2 {
            return 0;
        }
        let mid = n / 2;
        let mut count = go(&mut items[..mid], bit) + go(&mut items[mid..], bit);
        // both halves are now sorted by x
        let (left, right) = items.split_at(mid);
        let mut li = 0;
        for &(x, y) in right {
            while li < left.len() && left[li].0 < x {
                bit.add(left[li].1, 1);
                li += 1;
            }
            count += bit.prefix(y);
        }
        for &(_, y) in &left[..li] {
            bit.add(y, -1);
        }
        items.sort_unstable_by_key(|&(x, _)| x);
        count
    }
    let mut items: Vec<(usize, usize)> = xs.iter().copied().zip(ys.iter().copied()).collect();
    let mut bit = Fenwick::new(xs.len());
    go(&mut items, &mut bit)
}

/// Number of vertex pairs whose relative order agrees across all permutations,
/// i.e. the number of edges of [`perm_sequence_graph`], in `O(n log² n)` for up
/// to three permutations.
pub fn concordant_pair_count(ps: &PermSequence) -> u64 {
    let (order, table) = position_table(ps);
    let n = order.len() as u64;
    match table.len() {
        1 => n * n.saturating_sub(1) / 2,
        2 => count_dominating_pairs(&table[1], &table[1]),
        3 => count_dominating_pairs(&table[1], &table[2]),
        _ => perm_sequence_graph(ps).edge_count() as u64,
    }
}

/// Checks that `ps` represents `g` without enumerating all vertex pairs:
/// every edge must be concordant, and the concordant pairs must number
/// exactly `|E|`.
pub fn certify_perm_sequence(ps: &PermSequence, g: &Graph) -> Result<bool> {
    if &ps.vertices() != g.vertices() {
        return Err(invalid("permutation letters differ from graph vertices"));
    }
    let (order, table) = position_table(ps);
    let index: HashMap<&VertexToken, usize> = order.iter().enumerate().map(|(i, t)| (t, i)).collect();
    for (a, b) in g.edges() {
        let (ia, ib) = (index[a], index[b]);
        let first = table[0][ia] < table[0][ib];
        if table.iter().any(|pos| (pos[ia] < pos[ib]) != first) {
            return Ok(false);
        }
    }
    Ok(concordant_pair_count(ps) == g.edge_count() as u64)
}
