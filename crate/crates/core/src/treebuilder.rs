//! Three permutations whose concatenation represents a tree, built by a
//! breadth-first rewriting of the vertices' parity labels, and the tree
//! permutation-representation-number classifier.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graphcore::generators::spider_s;
use crate::graphcore::{certify_perm_sequence, Graph, PermSequence, VertexToken, Word};
use crate::oracle::{self, SearchBounds};

const NIL: usize = usize::MAX;

/// A tree rooted at a chosen vertex and labeled so that even-depth vertices
/// get the odd labels `1, 3, 5, ..` and odd-depth vertices the even labels
/// `2, 4, 6, ..`, each parity class numbered in breadth-first order with
/// siblings visited in token order.
///
/// Vertices are indexed internally by breadth-first position; within one
/// parity class that order agrees with label order.
#[derive(Clone, Debug)]
pub struct RootedLabeledTree {
    tree: Graph,
    tokens: Vec<VertexToken>,
    labels: Vec<usize>,
    label_of: HashMap<VertexToken, usize>,
    parent: Vec<usize>,
    /// Children per vertex, ascending by label.
    children: Vec<Vec<usize>>,
}

impl RootedLabeledTree {
    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn root(&self) -> &VertexToken {
        &self.tokens[0]
    }

    pub fn label(&self, v: &VertexToken) -> Option<usize> {
        self.label_of.get(v).map(|&i| self.labels[i])
    }

    pub fn token(&self, label: usize) -> Option<&VertexToken> {
        self.labels.iter().position(|&l| l == label).map(|i| &self.tokens[i])
    }

    pub fn parent(&self, v: &VertexToken) -> Option<&VertexToken> {
        let i = *self.label_of.get(v)?;
        (self.parent[i] != NIL).then(|| &self.tokens[self.parent[i]])
    }

    pub fn children(&self, v: &VertexToken) -> Vec<&VertexToken> {
        self.label_of.get(v).map(|&i| self.children[i].iter().map(|&c| &self.tokens[c]).collect()).unwrap_or_default()
    }

    /// Map from vertex token to label.
    pub fn labels(&self) -> BTreeMap<VertexToken, usize> {
        self.tokens.iter().zip(&self.labels).map(|(t, &l)| (t.clone(), l)).collect()
    }

    /// Whether `a` is a proper ancestor of `b` (parent included).
    pub fn is_ancestor(&self, a: &VertexToken, b: &VertexToken) -> bool {
        let (Some(&ia), Some(&ib)) = (self.label_of.get(a), self.label_of.get(b)) else {
            return false;
        };
        let mut cur = self.parent[ib];
        while cur != NIL {
            if cur == ia {
                return true;
            }
            cur = self.parent[cur];
        }
        false
    }

    /// Vertices from the root down to `v`, inclusive.
    pub fn root_path(&self, v: &VertexToken) -> Vec<VertexToken> {
        let Some(&i) = self.label_of.get(v) else {
            return Vec::new();
        };
        let mut path = vec![i];
        while self.parent[*path.last().unwrap()] != NIL {
            path.push(self.parent[*path.last().unwrap()]);
        }
        path.into_iter().rev().map(|j| self.tokens[j].clone()).collect()
    }

    fn is_odd(&self, idx: usize) -> bool {
        self.labels[idx] % 2 == 1
    }
}

/// Roots `t` at `root` and assigns the parity labels.
pub fn root_and_label(t: &Graph, root: &VertexToken) -> Result<RootedLabeledTree> {
    if t.vertex_count() == 0 {
        return Err(Error::NotATree("the graph has no vertices".into()));
    }
    if !t.contains(root) {
        return Err(invalid(format!("root {root} is not a vertex")));
    }
    if !t.is_connected() {
        return Err(Error::NotATree("the graph is disconnected".into()));
    }
    if t.edge_count() + 1 != t.vertex_count() {
        return Err(Error::NotATree(format!(
            "{} vertices and {} edges means a cycle is present",
            t.vertex_count(),
            t.edge_count()
        )));
    }

    let adj = t.adjacency();
    // breadth-first order with depth and parent, siblings in token order
    let mut order: Vec<(&VertexToken, usize, Option<usize>)> = vec![(root, 0, None)];
    let mut seen: HashMap<&VertexToken, usize> = HashMap::from([(root, 0)]);
    let mut head = 0;
    while head < order.len() {
        let (v, depth, _) = order[head];
        for &u in &adj[v] {
            if !seen.contains_key(u) {
                seen.insert(u, order.len());
                order.push((u, depth + 1, Some(head)));
            }
        }
        head += 1;
    }

    let n = order.len();
    let (mut next_odd, mut next_even) = (1, 2);
    let mut labels = vec![0; n];
    let mut tokens = Vec::with_capacity(n);
    let mut parent = vec![NIL; n];
    let mut children = vec![Vec::new(); n];
    for (i, &(v, depth, p)) in order.iter().enumerate() {
        let counter = if depth % 2 == 0 { &mut next_odd } else { &mut next_even };
        labels[i] = *counter;
        *counter += 2;
        tokens.push(v.clone());
        if let Some(p) = p {
            parent[i] = p;
            children[p].push(i);
        }
    }
    let label_of = tokens.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    Ok(RootedLabeledTree { tree: t.clone(), tokens, labels, label_of, parent, children })
}

/// Root used when the caller names none: the smallest token.
pub fn default_root(t: &Graph) -> Option<&VertexToken> {
    t.vertices().iter().next()
}

/// A permutation under construction, kept as a doubly linked list so each
/// rewrite is a splice at a known vertex.
#[derive(Clone)]
struct LinkedPerm {
    next: Vec<usize>,
    prev: Vec<usize>,
    head: usize,
}

impl LinkedPerm {
    fn singleton(n: usize, v: usize) -> Self {
        LinkedPerm { next: vec![NIL; n], prev: vec![NIL; n], head: v }
    }

    fn insert_after(&mut self, anchor: usize, items: impl IntoIterator<Item = usize>) {
        let mut at = anchor;
        for v in items {
            let after = self.next[at];
            self.next[at] = v;
            self.prev[v] = at;
            self.next[v] = after;
            if after != NIL {
                self.prev[after] = v;
            }
            at = v;
        }
    }

    fn insert_before(&mut self, anchor: usize, items: impl IntoIterator<Item = usize>) {
        for v in items {
            let before = self.prev[anchor];
            self.prev[anchor] = v;
            self.next[v] = anchor;
            self.prev[v] = before;
            if before == NIL {
                self.head = v;
            } else {
                self.next[before] = v;
            }
        }
    }

    fn push_front(&mut self, items: &[usize]) {
        let head = self.head;
        self.insert_before(head, items.iter().copied());
    }

    fn to_vec(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.head;
        while cur != NIL {
            out.push(cur);
            cur = self.next[cur];
        }
        out
    }
}

/// Snapshot of the three permutations after one vertex has been processed.
/// The first snapshot is the initial state with no vertex visited.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub visited: Option<VertexToken>,
    pub perms: [Word; 3],
}

fn pattern_broken(t: &RootedLabeledTree, a: usize, found: usize, expected: usize) -> Error {
    Error::CertificateFailed(format!(
        "while processing {}: expected {} in the first permutation but found {}",
        t.tokens[a],
        t.tokens.get(expected).map_or("the end".to_string(), |v| v.to_string()),
        t.tokens.get(found).map_or("the end".to_string(), |v| v.to_string()),
    ))
}

fn build(t: &RootedLabeledTree, mut trace: Option<&mut Vec<TraceStep>>) -> Result<PermSequence> {
    let n = t.len();
    let root = 0;
    let mut perms = [LinkedPerm::singleton(n, root), LinkedPerm::singleton(n, root), LinkedPerm::singleton(n, root)];
    let snapshot = |perms: &[LinkedPerm; 3], visited: Option<usize>| TraceStep {
        visited: visited.map(|v| t.tokens[v].clone()),
        perms: std::array::from_fn(|i| perms[i].to_vec().into_iter().map(|v| t.tokens[v].clone()).collect()),
    };
    if let Some(tr) = trace.as_deref_mut() {
        tr.push(snapshot(&perms, None));
    }

    let mut queue = VecDeque::from([root]);
    while let Some(a) = queue.pop_front() {
        let kids = &t.children[a];
        if kids.is_empty() {
            continue;
        }
        let [p1, p2, p3] = &mut perms;
        if t.is_odd(a) {
            p1.insert_before(a, kids.iter().copied());
            p2.insert_before(a, kids.iter().rev().copied());
            p3.push_front(kids);
        } else {
            let up = t.parent[a];
            let siblings = &t.children[up];
            if siblings[0] == a {
                p1.insert_after(a, kids.iter().copied());
                // the parent sits right after its leftmost child in p2
                if p2.next[a] != up {
                    return Err(pattern_broken(t, a, p2.next[a], up));
                }
                p2.insert_after(up, kids.iter().rev().copied());
                p3.insert_after(a, kids.iter().copied());
            } else {
                // walk the block  a b_{l+1} .. b_k a' D_{b_2} .. D_{b_{l-1}}  in p1
                let l = siblings.iter().position(|&b| b == a).expect("a is a child of its parent");
                let block = std::iter::once(a)
                    .chain(siblings[l + 1..].iter().copied())
                    .chain(std::iter::once(up))
                    .chain(siblings[1..l].iter().flat_map(|&b| t.children[b].iter().copied()));
                let mut last = NIL;
                for expected in block {
                    let found = if last == NIL { a } else { p1.next[last] };
                    if found != expected {
                        return Err(pattern_broken(t, a, found, expected));
                    }
                    last = found;
                }
                p1.insert_after(last, kids.iter().copied());
                p2.insert_after(a, kids.iter().rev().copied());
                p3.insert_after(a, kids.iter().copied());
            }
        }
        queue.extend(kids.iter().copied().filter(|&c| !t.children[c].is_empty()));
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(snapshot(&perms, Some(a)));
        }
    }

    let words = perms.iter().map(|p| p.to_vec().into_iter().map(|v| t.tokens[v].clone()).collect()).collect();
    let seq = PermSequence::new(words)?;
    if !certify_perm_sequence(&seq, &t.tree)? {
        return Err(Error::CertificateFailed(format!("tree permutations do not represent the tree: {}", seq.word())));
    }
    Ok(seq)
}

/// Three permutations `p1, p2, p3` whose concatenation represents the tree.
/// The result is certified against the tree before it is returned.
pub fn tree_permutations(t: &RootedLabeledTree) -> Result<PermSequence> {
    build(t, None)
}

/// Like [`tree_permutations`], also returning the state after every processed vertex.
pub fn tree_permutations_traced(t: &RootedLabeledTree) -> Result<(PermSequence, Vec<TraceStep>)> {
    let mut trace = Vec::new();
    let seq = build(t, Some(&mut trace))?;
    Ok((seq, trace))
}

/// An induced copy of the three-legged spider in `g`, keyed by the spider's vertices.
pub fn contains_s(g: &Graph, bounds: &SearchBounds) -> Result<Option<BTreeMap<VertexToken, VertexToken>>> {
    oracle::induced_subgraph(g, &spider_s(), bounds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreePrnResult {
    pub prn: usize,
    pub witness: PermSequence,
}

impl TreePrnResult {
    pub fn word(&self) -> Word {
        self.witness.word()
    }
}

/// The permutation-representation number of a tree without producing a witness:
/// 1 for at most two vertices, 3 when the spider is an induced subgraph, 2 otherwise.
pub fn tree_prn_value(t: &Graph, bounds: &SearchBounds) -> Result<usize> {
    if !t.is_tree() {
        return Err(Error::NotATree("the graph is not a connected acyclic graph".into()));
    }
    Ok(match t.vertex_count() {
        1 | 2 => 1,
        _ if contains_s(t, bounds)?.is_some() => 3,
        _ => 2,
    })
}

/// The permutation-representation number of a tree with a certified witness.
/// Spider-free trees get their two-permutation witness from exhaustive search,
/// so they are subject to the search bounds.
pub fn tree_prn(t: &Graph, root: Option<&VertexToken>, bounds: &SearchBounds) -> Result<TreePrnResult> {
    let root = match root {
        Some(r) => r.clone(),
        None => default_root(t).cloned().ok_or_else(|| Error::NotATree("the graph has no vertices".into()))?,
    };
    let labeled = root_and_label(t, &root)?;
    let prn = tree_prn_value(t, bounds)?;
    let witness = match prn {
        1 => PermSequence::new(vec![tree_permutations(&labeled)?.perms()[0].clone()])?,
        2 => {
            let outcome = oracle::prn_search(t, 2, bounds)?;
            match outcome.witness {
                Some(oracle::Witness::Perms(p)) => p,
                _ => {
                    return Err(Error::CertificateFailed(
                        "spider-free tree has no two-permutation representation".into(),
                    ))
                }
            }
        }
        _ => tree_permutations(&labeled)?,
    };
    Ok(TreePrnResult { prn, witness })
}
