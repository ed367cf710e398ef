use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;

use super::dense::{pair_count, pair_index, DenseGraph};
use super::{check_bound, SearchBounds, SearchOutcome, Witness};
use crate::error::{invalid, Error, Result};
use crate::graphcore::{certify_perm_sequence, Graph, PermSequence, Word};

/// All permutations of `0..n` in lexicographic order, with their pair-order
/// signatures: bit `pair_index(i, j)` is set when `i` precedes `j`.
struct PermTable {
    perms: Vec<Vec<u8>>,
    sigs: Vec<u64>,
}

impl PermTable {
    fn new(n: usize) -> Self {
        let perms: Vec<Vec<u8>> = (0..n as u8).permutations(n).collect();
        let sigs = perms.iter().map(|p| signature(n, p)).collect();
        PermTable { perms, sigs }
    }

    fn len(&self) -> usize {
        self.perms.len()
    }
}

fn signature(n: usize, perm: &[u8]) -> u64 {
    let mut pos = [0u8; 64];
    for (i, &v) in perm.iter().enumerate() {
        pos[v as usize] = i as u8;
    }
    let mut sig = 0;
    for i in 0..n {
        for j in i + 1..n {
            if pos[i] < pos[j] {
                sig |= 1 << pair_index(n, i, j);
            }
        }
    }
    sig
}

fn to_witness(dense: &DenseGraph, table: &PermTable, picks: &[usize], relabel: Option<&[u8]>) -> Result<PermSequence> {
    let words = picks
        .iter()
        .map(|&i| {
            table.perms[i]
                .iter()
                .map(|&v| {
                    let v = relabel.map_or(v, |r| r[v as usize]);
                    dense.tokens[v as usize].clone()
                })
                .collect::<Word>()
        })
        .collect();
    PermSequence::new(words)
}

fn ensure_certified(seq: &PermSequence, g: &Graph) -> Result<()> {
    if certify_perm_sequence(seq, g)? {
        Ok(())
    } else {
        Err(Error::CertificateFailed(format!("search witness {} does not represent the graph", seq.word())))
    }
}

fn tuple_count(n_perms: usize, k: usize) -> Result<u64> {
    (n_perms as u64)
        .checked_pow(k as u32)
        .ok_or(Error::BoundExceeded { what: "permutation tuples", size: k, limit: 0 })
}

fn check_size(g: &Graph, k: usize, bounds: &SearchBounds) -> Result<()> {
    let n = g.vertex_count();
    if k == 0 {
        return Err(invalid("the number of permutations must be at least 1"));
    }
    if n == 0 {
        return Err(invalid("the graph has no vertices"));
    }
    match k {
        1 => check_bound("vertices for a one-permutation search", n, 20),
        2 => check_bound("vertices for a two-permutation search", n, bounds.perm2_vertices.min(11)),
        _ => check_bound("vertices for a search over three or more permutations", n, bounds.perm3_vertices.min(11)),
    }
}

/// Searches every `k`-tuple of permutations of the vertices, in lexicographic
/// order of permutation indices, for one whose concatenation represents `g`.
///
/// Two vertices alternate in a concatenation of permutations exactly when
/// their relative order is the same in every block, so once the first block is
/// fixed only blocks that agree with it on every edge can succeed. Candidate
/// tuples outside that set are counted as examined without being visited.
pub fn prn_search(g: &Graph, k: usize, bounds: &SearchBounds) -> Result<SearchOutcome> {
    let started = Instant::now();
    check_size(g, k, bounds)?;
    let dense = DenseGraph::from_graph(g)?;
    let n = dense.n();

    if k == 1 {
        // a single permutation represents exactly the complete graph
        let states = (1..=n as u64).product::<u64>();
        if !g.is_complete() {
            return Ok(SearchOutcome::new(started, None, states));
        }
        let seq = PermSequence::new(vec![dense.tokens.iter().cloned().collect()])?;
        return Ok(SearchOutcome::new(started, Some(Witness::Perms(seq)), 1));
    }

    let table = PermTable::new(n);
    let total = tuple_count(table.len(), k)?;
    let edges = dense.edge_pair_mask();
    let all_pairs = if pair_count(n) == 64 { u64::MAX } else { (1u64 << pair_count(n)) - 1 };
    let non_edges = all_pairs & !edges;

    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, &s) in table.sigs.iter().enumerate() {
        buckets.entry(s & edges).or_default().push(i);
    }

    let best = AtomicUsize::new(usize::MAX);
    let hit = (0..table.len())
        .into_par_iter()
        .filter_map(|first| {
            if first > best.load(Ordering::Relaxed) {
                return None;
            }
            let s1 = table.sigs[first];
            let bucket = &buckets[&(s1 & edges)];
            let mut picks = vec![first];
            let found = extend(&table.sigs, bucket, s1, non_edges, 0, k - 1, &mut picks);
            if found {
                best.fetch_min(first, Ordering::Relaxed);
                Some(picks)
            } else {
                None
            }
        })
        .min_by_key(|picks| picks[0]);

    match hit {
        None => Ok(SearchOutcome::new(started, None, total)),
        Some(picks) => {
            let rank = picks.iter().fold(0u64, |acc, &i| acc * table.len() as u64 + i as u64);
            let seq = to_witness(&dense, &table, &picks, None)?;
            ensure_certified(&seq, g)?;
            Ok(SearchOutcome::new(started, Some(Witness::Perms(seq)), rank + 1))
        }
    }
}

/// Depth-first completion of `picks` in lexicographic order. `differ`
/// accumulates the pairs ordered differently from the first block.
fn extend(
    sigs: &[u64],
    bucket: &[usize],
    s1: u64,
    non_edges: u64,
    differ: u64,
    remaining: usize,
    picks: &mut Vec<usize>,
) -> bool {
    if remaining == 0 {
        return differ & non_edges == non_edges;
    }
    for &i in bucket {
        picks.push(i);
        if extend(sigs, bucket, s1, non_edges, differ | (sigs[i] ^ s1), remaining - 1, picks) {
            return true;
        }
        picks.pop();
    }
    false
}

/// Search with the first permutation fixed to the sorted vertex order: any
/// representation can be relabeled so that its first block is sorted, so it
/// suffices to find tuples whose represented graph is isomorphic to `g` and
/// then relabel the witness. Explores `(n!)^(k-1)` tuples instead of `(n!)^k`.
pub fn prn_search_canonical(g: &Graph, k: usize, bounds: &SearchBounds) -> Result<SearchOutcome> {
    let started = Instant::now();
    check_size(g, k, bounds)?;
    if k == 1 {
        return prn_search(g, 1, bounds);
    }
    let dense = DenseGraph::from_graph(g)?;
    let n = dense.n();
    let table = PermTable::new(n);
    let total = tuple_count(table.len(), k - 1)?;

    // edge mask of every relabeling of g, with the relabeling that produced it
    let mut isomorphs: HashMap<u64, Vec<u8>> = HashMap::new();
    for sigma in &table.perms {
        let mut mask = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                if dense.has_edge(i, j) {
                    let (a, b) = (sigma[i] as usize, sigma[j] as usize);
                    mask |= 1 << pair_index(n, a.min(b), a.max(b));
                }
            }
        }
        isomorphs.entry(mask).or_insert_with(|| sigma.clone());
    }

    let rest = k - 1;
    let hit = (0..table.len())
        .into_par_iter()
        .find_map_first(|lead| {
            let mut picks = vec![lead];
            canonical_extend(&table, &isomorphs, table.sigs[lead], rest - 1, &mut picks)
        });

    match hit {
        None => Ok(SearchOutcome::new(started, None, total)),
        Some((picks, sigma)) => {
            let rank = picks.iter().fold(0u64, |acc, &i| acc * table.len() as u64 + i as u64);
            // the found tuple represents sigma(g); pull it back through sigma^-1
            let mut inverse = vec![0u8; n];
            for (i, &s) in sigma.iter().enumerate() {
                inverse[s as usize] = i as u8;
            }
            let mut all = vec![0usize];
            all.extend(picks);
            let seq = to_witness(&dense, &table, &all, Some(&inverse))?;
            ensure_certified(&seq, g)?;
            Ok(SearchOutcome::new(started, Some(Witness::Perms(seq)), rank + 1))
        }
    }
}

fn canonical_extend(
    table: &PermTable,
    isomorphs: &HashMap<u64, Vec<u8>>,
    agree: u64,
    remaining: usize,
    picks: &mut Vec<usize>,
) -> Option<(Vec<usize>, Vec<u8>)> {
    if remaining == 0 {
        // the identity block has every bit set, so agreement is a plain AND
        return isomorphs.get(&agree).map(|sigma| (picks.clone(), sigma.clone()));
    }
    for i in 0..table.len() {
        picks.push(i);
        if let Some(hit) = canonical_extend(table, isomorphs, agree & table.sigs[i], remaining - 1, picks) {
            return Some(hit);
        }
        picks.pop();
    }
    None
}

/// Whether `g` has a representation by at most two permutations, by search.
pub fn is_permutation_graph_small(g: &Graph, bounds: &SearchBounds) -> Result<bool> {
    if g.is_complete() {
        return Ok(true);
    }
    Ok(prn_search(g, 2, bounds)?.found)
}

/// Every `k`-tuple of permutations whose concatenation represents `g`, in
/// enumeration order.
pub fn all_perm_representations(g: &Graph, k: usize, bounds: &SearchBounds) -> Result<Vec<PermSequence>> {
    check_size(g, k, bounds)?;
    let dense = DenseGraph::from_graph(g)?;
    let n = dense.n();
    let table = PermTable::new(n);
    let edges = dense.edge_pair_mask();
    let all_pairs = (1u64 << pair_count(n)) - 1;
    let non_edges = all_pairs & !edges;
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, &s) in table.sigs.iter().enumerate() {
        buckets.entry(s & edges).or_default().push(i);
    }
    let mut out = Vec::new();
    if k == 1 {
        if non_edges == 0 {
            for first in 0..table.len() {
                out.push(to_witness(&dense, &table, &[first], None)?);
            }
        }
        return Ok(out);
    }
    for first in 0..table.len() {
        let s1 = table.sigs[first];
        let bucket = &buckets[&(s1 & edges)];
        for rest in (1..k).map(|_| bucket.iter().copied()).multi_cartesian_product() {
            let differ = rest.iter().fold(0, |acc, &i| acc | (table.sigs[i] ^ s1));
            if differ & non_edges == non_edges {
                let mut picks = vec![first];
                picks.extend(rest);
                out.push(to_witness(&dense, &table, &picks, None)?);
            }
        }
    }
    Ok(out)
}
