use std::collections::{BTreeMap, HashMap};

use super::dense::{sorted_degrees, DenseGraph};
use super::{check_bound, SearchBounds};
use crate::error::Result;
use crate::graphcore::{Graph, VertexToken};

/// Iterated degree refinement run on both graphs with a shared color table, so
/// color `c` means the same thing on each side.
fn refine_jointly(a: &[u64], b: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let n = a.len();
    let mut ca: Vec<usize> = a.iter().map(|m| m.count_ones() as usize).collect();
    let mut cb: Vec<usize> = b.iter().map(|m| m.count_ones() as usize).collect();
    for _ in 0..n {
        let sig = |adj: &[u64], colors: &[usize], v: usize| {
            let mut nb: Vec<usize> = (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| colors[u]).collect();
            nb.sort_unstable();
            (colors[v], nb)
        };
        let sa: Vec<_> = (0..n).map(|v| sig(a, &ca, v)).collect();
        let sb: Vec<_> = (0..n).map(|v| sig(b, &cb, v)).collect();
        let mut table: Vec<&(usize, Vec<usize>)> = sa.iter().chain(&sb).collect();
        table.sort();
        table.dedup();
        let index: HashMap<&(usize, Vec<usize>), usize> = table.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let na: Vec<usize> = sa.iter().map(|s| index[s]).collect();
        let nb: Vec<usize> = sb.iter().map(|s| index[s]).collect();
        let classes = |c: &[usize]| {
            let mut v = c.to_vec();
            v.sort_unstable();
            v.dedup();
            v.len()
        };
        let stable = classes(&na) == classes(&ca) && classes(&nb) == classes(&cb);
        ca = na;
        cb = nb;
        if stable {
            break;
        }
    }
    (ca, cb)
}

/// A bijection `map[v]` from the vertices of `a` onto those of `b` preserving
/// adjacency, found by backtracking over refined color classes.
pub(crate) fn dense_isomorphism(a: &[u64], b: &[u64]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    if sorted_degrees(a) != sorted_degrees(b) {
        return None;
    }
    let (ca, cb) = refine_jointly(a, b);
    let mut hist_a = ca.clone();
    let mut hist_b = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return None;
    }

    // visit vertices of `a` rarest color first, then by connection to the placed ones
    let class_size = |c: usize| ca.iter().filter(|&&x| x == c).count();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .min_by_key(|&v| (std::cmp::Reverse((a[v] & placed).count_ones()), class_size(ca[v]), v))
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }

    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    fn go(depth: usize, order: &[usize], a: &[u64], b: &[u64], ca: &[usize], cb: &[usize], map: &mut [usize], used: &mut u64) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..b.len() {
            if *used >> w & 1 == 1 || cb[w] != ca[v] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| (a[v] >> u & 1) == (b[w] >> map[u] & 1));
            if !consistent {
                continue;
            }
            map[v] = w;
            *used |= 1 << w;
            if go(depth + 1, order, a, b, ca, cb, map, used) {
                return true;
            }
            *used &= !(1 << w);
            map[v] = usize::MAX;
        }
        false
    }
    go(0, &order, a, b, &ca, &cb, &mut map, &mut used).then_some(map)
}

/// An isomorphism from `g1` onto `g2`, if one exists.
pub fn isomorphic(g1: &Graph, g2: &Graph, bounds: &SearchBounds) -> Result<Option<BTreeMap<VertexToken, VertexToken>>> {
    check_bound("vertices for isomorphism testing", g1.vertex_count().max(g2.vertex_count()), bounds.iso_vertices)?;
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let (d1, d2) = (DenseGraph::from_graph(g1)?, DenseGraph::from_graph(g2)?);
    Ok(dense_isomorphism(&d1.adj, &d2.adj)
        .map(|map| map.iter().enumerate().map(|(i, &j)| (d1.tokens[i].clone(), d2.tokens[j].clone())).collect()))
}

/// An injective map from `pattern` into `host` that preserves edges and
/// non-edges, found by backtracking. Pattern vertices are placed in
/// breadth-first order so each one after the first in its component is drawn
/// from the host neighbors of an already placed vertex.
pub fn induced_subgraph(
    host: &Graph,
    pattern: &Graph,
    bounds: &SearchBounds,
) -> Result<Option<BTreeMap<VertexToken, VertexToken>>> {
    check_bound("host vertices for induced-subgraph search", host.vertex_count(), bounds.induced_host_vertices)?;
    if pattern.vertex_count() > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return Ok(None);
    }
    let index_lists = |g: &Graph| {
        let tokens: Vec<VertexToken> = g.vertices().iter().cloned().collect();
        let idx: HashMap<&VertexToken, usize> = tokens.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut adj = vec![Vec::new(); tokens.len()];
        for (x, y) in g.edges() {
            adj[idx[x]].push(idx[y]);
            adj[idx[y]].push(idx[x]);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        (tokens, adj)
    };
    let (htok, hadj) = index_lists(host);
    let (ptok, padj) = index_lists(pattern);
    let pn = ptok.len();

    // placement order and, per placed vertex, an earlier placed neighbor
    let mut order = Vec::with_capacity(pn);
    let mut anchor = vec![usize::MAX; pn];
    let mut seen = vec![false; pn];
    while order.len() < pn {
        let start = (0..pn).filter(|&v| !seen[v]).max_by_key(|&v| (padj[v].len(), std::cmp::Reverse(v))).unwrap();
        seen[start] = true;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let v = order[head];
            for &u in &padj[v] {
                if !seen[u] {
                    seen[u] = true;
                    anchor[u] = v;
                    order.push(u);
                }
            }
            head += 1;
        }
    }

    let host_adjacent = |x: usize, y: usize| hadj[x].binary_search(&y).is_ok();
    let mut map = vec![usize::MAX; pn];
    let mut used = vec![false; htok.len()];
    let all_host: Vec<usize> = (0..htok.len()).collect();

    let mut stack: Vec<(usize, usize)> = vec![(0, 0)]; // (depth, next candidate slot)
    let mut found = pn == 0;
    while let Some((depth, slot)) = stack.pop() {
        if depth == pn {
            found = true;
            break;
        }
        let v = order[depth];
        if slot > 0 {
            // undo the previous candidate at this depth
            used[map[v]] = false;
            map[v] = usize::MAX;
        }
        let candidates: &[usize] = if anchor[v] == usize::MAX { &all_host } else { &hadj[map[anchor[v]]] };
        let mut next_slot = slot;
        let mut chosen = None;
        while next_slot < candidates.len() {
            let w = candidates[next_slot];
            next_slot += 1;
            if used[w] || hadj[w].len() < padj[v].len() {
                continue;
            }
            let ok = order[..depth].iter().all(|&u| {
                let pattern_edge = padj[v].binary_search(&u).is_ok();
                pattern_edge == host_adjacent(w, map[u])
            });
            if ok {
                chosen = Some(w);
                break;
            }
        }
        if let Some(w) = chosen {
            map[v] = w;
            used[w] = true;
            stack.push((depth, next_slot));
            stack.push((depth + 1, 0));
        }
    }
    if !found {
        return Ok(None);
    }
    Ok(Some((0..pn).map(|v| (ptok[v].clone(), htok[map[v]].clone())).collect()))
}
