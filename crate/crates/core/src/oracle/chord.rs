use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dense::{sorted_degrees, DenseGraph};
use super::iso::dense_isomorphism;
use super::{check_bound, SearchBounds, SearchOutcome, Witness};
use crate::error::{invalid, Error, Result};
use crate::graphcore::{uniformity, Graph, VertexToken, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chord {
    pub label: VertexToken,
    /// Endpoint positions on the circle, smaller first.
    pub ends: (usize, usize),
}

/// A perfect matching of the positions `0..2n` around a circle into `n`
/// labeled chords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordDiagram {
    chords: Vec<Chord>,
}

impl ChordDiagram {
    pub fn new(chords: Vec<Chord>) -> Result<Self> {
        let positions = 2 * chords.len();
        let mut hit = vec![false; positions];
        let mut labels = BTreeSet::new();
        let mut normalized = Vec::with_capacity(chords.len());
        for Chord { label, ends: (x, y) } in chords {
            if !labels.insert(label.clone()) {
                return Err(invalid(format!("chord label {label} repeats")));
            }
            for p in [x, y] {
                if p >= positions || std::mem::replace(&mut hit[p], true) {
                    return Err(invalid(format!("position {p} is out of range or matched twice")));
                }
            }
            normalized.push(Chord { label, ends: (x.min(y), x.max(y)) });
        }
        normalized.sort_by_key(|c| c.ends.0);
        Ok(ChordDiagram { chords: normalized })
    }

    /// Chords between the two occurrences of each letter of a 2-uniform word.
    pub fn from_two_uniform_word(w: &Word) -> Result<Self> {
        if uniformity(w) != Some(2) {
            return Err(invalid("chord diagrams come from 2-uniform words"));
        }
        let mut first: BTreeMap<&VertexToken, usize> = BTreeMap::new();
        let mut chords = Vec::new();
        for (i, letter) in w.iter().enumerate() {
            match first.remove(letter) {
                Some(j) => chords.push(Chord { label: letter.clone(), ends: (j, i) }),
                None => {
                    first.insert(letter, i);
                }
            }
        }
        ChordDiagram::new(chords)
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }
}

impl<'de> Deserialize<'de> for ChordDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            chords: Vec<Chord>,
        }
        ChordDiagram::new(Raw::deserialize(d)?.chords).map_err(serde::de::Error::custom)
    }
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// The circle graph of the diagram: chords joined when their endpoints interleave.
pub fn chord_intersection_graph(d: &ChordDiagram) -> Graph {
    let mut g = Graph::with_vertices(d.chords.iter().map(|c| c.label.clone()));
    for (i, x) in d.chords.iter().enumerate() {
        for y in &d.chords[i + 1..] {
            if crosses(x.ends, y.ends) {
                g.add_edge(x.label.clone(), y.label.clone()).expect("labels are distinct");
            }
        }
    }
    g
}

/// `(2m - 1)!!`, the number of perfect matchings on `2m` points.
fn matchings(m: usize) -> u64 {
    (1..=m as u64).map(|i| 2 * i - 1).product()
}

/// Fixed prefix of a matching: the first chords placed, in enumeration order.
#[derive(Clone)]
struct Prefix {
    partner: [u8; 16],
    chords: Vec<(u8, u8)>,
}

const FREE: u8 = u8::MAX;

impl Prefix {
    fn empty() -> Self {
        Prefix { partner: [FREE; 16], chords: Vec::new() }
    }

    /// Prefixes one chord longer, in enumeration order: the lowest free point
    /// is matched with each higher free point in turn.
    fn children(&self, points: usize) -> Vec<Prefix> {
        let Some(low) = (0..points).find(|&p| self.partner[p] == FREE) else {
            return Vec::new();
        };
        ((low + 1)..points)
            .filter(|&q| self.partner[q] == FREE)
            .map(|q| {
                let mut next = self.clone();
                next.partner[low] = q as u8;
                next.partner[q] = low as u8;
                next.chords.push((low as u8, q as u8));
                next
            })
            .collect()
    }
}

fn intersection_masks(chords: &[(u8, u8)]) -> [u64; 8] {
    let mut adj = [0u64; 8];
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            let (a, b) = chords[i];
            let (c, d) = chords[j];
            if crosses((a as usize, b as usize), (c as usize, d as usize)) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

/// Enumerates the completions of `prefix` in order, stopping at the first whose
/// intersection graph is isomorphic to `target`. Returns the number of
/// diagrams visited and the hit.
fn scan(prefix: &Prefix, points: usize, target: &[u64], target_degrees: &[u32]) -> (u64, Option<(Vec<(u8, u8)>, Vec<usize>)>) {
    let n = points / 2;
    if prefix.chords.len() == n {
        let adj = intersection_masks(&prefix.chords);
        if sorted_degrees(&adj[..n]) == target_degrees {
            if let Some(map) = dense_isomorphism(&adj[..n], target) {
                return (1, Some((prefix.chords.clone(), map)));
            }
        }
        return (1, None);
    }
    let mut visited = 0;
    for child in prefix.children(points) {
        let (count, hit) = scan(&child, points, target, target_degrees);
        visited += count;
        if hit.is_some() {
            return (visited, hit);
        }
    }
    (visited, None)
}

/// Searches every chord diagram on `|V|` chords, anchored by matching
/// position 0 first, for one whose intersection graph is isomorphic to `g`.
/// Diagrams whose degree multiset differs from `g`'s are rejected before the
/// isomorphism test.
pub fn circle_search(g: &Graph, bounds: &SearchBounds) -> Result<SearchOutcome> {
    let started = Instant::now();
    let n = g.vertex_count();
    check_bound("chords for circle-graph search", n, bounds.circle_vertices.min(8))?;
    if n == 0 {
        return Err(invalid("the graph has no vertices"));
    }
    let dense = DenseGraph::from_graph(g)?;
    let target_degrees = dense.sorted_degrees();
    let points = 2 * n;

    // split the enumeration into subtrees at a fixed depth; each subtree holds
    // the same number of diagrams
    let depth = n.min(2);
    let mut prefixes = vec![Prefix::empty()];
    for _ in 0..depth {
        prefixes = prefixes.iter().flat_map(|p| p.children(points)).collect();
    }
    let per_prefix = matchings(n - depth);
    let total = matchings(n);

    let best = AtomicUsize::new(usize::MAX);
    let hit = prefixes
        .par_iter()
        .enumerate()
        .filter_map(|(i, prefix)| {
            if i > best.load(Ordering::Relaxed) {
                return None;
            }
            let (visited, hit) = scan(prefix, points, &dense.adj, &target_degrees);
            hit.map(|h| {
                best.fetch_min(i, Ordering::Relaxed);
                (i, visited, h)
            })
        })
        .min_by_key(|(i, _, _)| *i);

    let Some((i, visited, (chords, map))) = hit else {
        return Ok(SearchOutcome::new(started, None, total));
    };
    let diagram = ChordDiagram::new(
        chords
            .iter()
            .zip(&map)
            .map(|(&(x, y), &v)| Chord { label: dense.tokens[v].clone(), ends: (x as usize, y as usize) })
            .collect(),
    )?;
    if chord_intersection_graph(&diagram) != *g {
        return Err(Error::CertificateFailed("chord diagram witness does not realize the graph".into()));
    }
    let rank = i as u64 * per_prefix + visited;
    Ok(SearchOutcome::new(started, Some(Witness::Chords(diagram)), rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::generators::{complete, cycle, path};
    use crate::graphcore::{derive_graph, tok};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn chord(label: &str, a: usize, b: usize) -> Chord {
        Chord { label: tok(label), ends: (a, b) }
    }

    #[test]
    fn two_chords() {
        let crossing = ChordDiagram::new(vec![chord("x", 0, 2), chord("y", 1, 3)]).unwrap();
        let g = chord_intersection_graph(&crossing);
        assert!(g.has_edge(&tok("x"), &tok("y")));
        let nested = ChordDiagram::new(vec![chord("x", 0, 3), chord("y", 1, 2)]).unwrap();
        let g = chord_intersection_graph(&nested);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn invalid_diagrams() {
        assert!(ChordDiagram::new(vec![chord("x", 0, 2), chord("y", 1, 2)]).is_err());
        assert!(ChordDiagram::new(vec![chord("x", 0, 1), chord("x", 2, 3)]).is_err());
        assert!(ChordDiagram::new(vec![chord("x", 0, 5)]).is_err());
    }

    #[test]
    fn words_and_diagrams_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let n = 1 + rand::Rng::gen_range(&mut rng, 0..7);
            let mut letters: Vec<usize> = (0..n).chain(0..n).collect();
            letters.shuffle(&mut rng);
            let w: Word = letters.into_iter().map(VertexToken::from).collect();
            let d = ChordDiagram::from_two_uniform_word(&w).unwrap();
            assert_eq!(chord_intersection_graph(&d), derive_graph(&w).unwrap());
        }
    }

    #[test]
    fn matching_counts() {
        assert_eq!(matchings(8), 2_027_025);
        for n in 1..=5 {
            let mut level = vec![Prefix::empty()];
            for _ in 0..n {
                level = level.iter().flat_map(|p| p.children(2 * n)).collect();
            }
            assert_eq!(level.len() as u64, matchings(n));
        }
    }

    #[test]
    fn circle_search_examples() {
        let b = SearchBounds::default();
        let out = circle_search(&cycle(6), &b).unwrap();
        assert!(out.found);
        assert_eq!(chord_intersection_graph(out.chords().unwrap()), cycle(6));
        let out = circle_search(&complete(3), &b).unwrap();
        assert!(out.found);
        assert!(circle_search(&path(9), &b).is_err());
    }

    #[test]
    fn circle_search_is_deterministic() {
        let g = path(5);
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| circle_search(&g, &SearchBounds::default()).unwrap())
        };
        let one = run(1);
        let four = run(4);
        assert_eq!(one.witness, four.witness);
        assert_eq!(one.states_examined, four.states_examined);
    }
}
