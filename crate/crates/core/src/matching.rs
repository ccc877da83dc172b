//! Planar matchings of the edges of a cycle and the multigraphs they fold into.
//!
//! Vertices of the `n`-cycle are `0..n` and edge `e_i` runs from `i` to
//! `i+1 (mod n)`. Matched edges `e_a`, `e_b` (`a < b`) are identified head to
//! tail, the way the boundary of a disk folds: `a ~ b+1` and `a+1 ~ b`.
//!
//! An identification is an LC gluing in the current multigraph when it keeps
//! a shared endpoint in place, i.e. `a ~ b+1` or `a+1 ~ b` already holds.

use crate::union_find::UnionFind;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("a cycle needs at least 3 edges, got {0}")]
    TooSmall(usize),
    #[error("edge {0} is out of range")]
    EdgeOutOfRange(usize),
    #[error("edge {0} is matched twice or with itself")]
    NotDisjoint(usize),
    #[error("pairs {0:?} and {1:?} cross")]
    CrossingMatching((usize, usize), (usize, usize)),
    #[error("not LC-orderable: the quotient has {0} independent cycles")]
    NotOrderable(usize),
    #[error("the matching is not complete")]
    NotComplete,
    #[error("vertex {0} is out of range")]
    NoSuchVertex(usize),
}

impl MatchingError {
    pub fn token(&self) -> &'static str {
        match self {
            MatchingError::TooSmall(_) => "TooSmall",
            MatchingError::EdgeOutOfRange(_) => "EdgeOutOfRange",
            MatchingError::NotDisjoint(_) => "NotDisjoint",
            MatchingError::CrossingMatching(..) => "CrossingMatching",
            MatchingError::NotOrderable(_) => "NotOrderable",
            MatchingError::NotComplete => "NotComplete",
            MatchingError::NoSuchVertex(_) => "NoSuchVertex",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleGraph {
    n: usize,
}

impl CycleGraph {
    pub fn new(n: usize) -> Result<Self, MatchingError> {
        if n < 3 {
            return Err(MatchingError::TooSmall(n));
        }
        Ok(CycleGraph { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        (i, (i + 1) % self.n)
    }
}

/// Disjoint, non-crossing pairs of edge indices, each stored as `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarMatching {
    pairs: Vec<(usize, usize)>,
}

impl PlanarMatching {
    pub fn new(c: &CycleGraph, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, MatchingError> {
        let mut used = vec![false; c.n];
        let mut list = Vec::new();
        for (x, y) in pairs {
            for e in [x, y] {
                if e >= c.n {
                    return Err(MatchingError::EdgeOutOfRange(e));
                }
            }
            if x == y {
                return Err(MatchingError::NotDisjoint(x));
            }
            for e in [x, y] {
                if used[e] {
                    return Err(MatchingError::NotDisjoint(e));
                }
                used[e] = true;
            }
            list.push((x.min(y), x.max(y)));
        }
        list.sort();
        for (i, &(a, b)) in list.iter().enumerate() {
            for &(c2, d) in &list[i + 1..] {
                if (a < c2 && c2 < b && b < d) || (c2 < a && a < d && d < b) {
                    return Err(MatchingError::CrossingMatching((a, b), (c2, d)));
                }
            }
        }
        Ok(PlanarMatching { pairs: list })
    }

    pub fn empty() -> Self {
        PlanarMatching { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_complete(&self, c: &CycleGraph) -> bool {
        2 * self.pairs.len() == c.n
    }
}

/// The multigraph obtained by performing some identifications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMultigraph {
    pub num_vertices: usize,
    /// Class of each original vertex.
    pub vertex_of: Vec<usize>,
    /// Endpoints (classes) of each quotient edge; loops and parallel edges allowed.
    pub edges: Vec<(usize, usize)>,
    /// Quotient edge of each original edge.
    pub edge_of: Vec<usize>,
    pub num_components: usize,
}

impl QuotientMultigraph {
    /// First Betti number `E - V + components`.
    pub fn cycle_count(&self) -> usize {
        self.edges.len() + self.num_components - self.num_vertices
    }

    /// Vertices lying on a cycle: those surviving iterated leaf deletion.
    pub fn active(&self) -> Vec<bool> {
        let mut deg = vec![0usize; self.num_vertices];
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.num_vertices];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            deg[u] += 1;
            deg[v] += 1;
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut alive = vec![true; self.num_vertices];
        let mut edge_alive = vec![true; self.edges.len()];
        let mut stack: Vec<usize> = (0..self.num_vertices).filter(|&v| deg[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &i in &incident[v] {
                if !edge_alive[i] {
                    continue;
                }
                edge_alive[i] = false;
                let (a, b) = self.edges[i];
                let w = if a == v { b } else { a };
                deg[w] -= 1;
                if alive[w] && deg[w] <= 1 {
                    stack.push(w);
                }
            }
        }
        alive
    }

    pub fn is_active(&self, original_vertex: usize) -> bool {
        self.active()[self.vertex_of[original_vertex]]
    }
}

fn fold_pair(uf: &mut UnionFind, n: usize, (a, b): (usize, usize)) {
    uf.union(a, (b + 1) % n);
    uf.union((a + 1) % n, b);
}

/// Is identifying `e_a` with `e_b` an LC gluing in the state `uf`?
pub(crate) fn executable(uf: &mut UnionFind, n: usize, (a, b): (usize, usize)) -> bool {
    uf.same(a, (b + 1) % n) || uf.same((a + 1) % n, b)
}

/// The multigraph after performing the given identifications (in any order).
pub fn partial_quotient(c: &CycleGraph, done: &[(usize, usize)]) -> QuotientMultigraph {
    let n = c.n;
    let mut uf = UnionFind::new(n);
    for &p in done {
        fold_pair(&mut uf, n, p);
    }
    let (vertex_of, num_vertices) = uf.canonical_labels();
    let mut partner: HashMap<usize, usize> = HashMap::new();
    for &(a, b) in done {
        partner.insert(b, a);
    }
    let mut edges = Vec::new();
    let mut edge_of = vec![0; n];
    for i in 0..n {
        if let Some(&a) = partner.get(&i) {
            edge_of[i] = edge_of[a];
            continue;
        }
        edge_of[i] = edges.len();
        let (u, v) = c.edge(i);
        edges.push((vertex_of[u], vertex_of[v]));
    }
    let mut comp = UnionFind::new(num_vertices);
    for &(u, v) in &edges {
        comp.union(u, v);
    }
    let (_, num_components) = comp.canonical_labels();
    QuotientMultigraph {
        num_vertices,
        vertex_of,
        edges,
        edge_of,
        num_components,
    }
}

pub fn quotient(c: &CycleGraph, m: &PlanarMatching) -> QuotientMultigraph {
    partial_quotient(c, &m.pairs)
}

pub fn cycle_count(g: &QuotientMultigraph) -> usize {
    g.cycle_count()
}

/// LC-orderable iff the quotient has at most one independent cycle.
pub fn lc_orderable(c: &CycleGraph, m: &PlanarMatching) -> bool {
    quotient(c, m).cycle_count() <= 1
}

/// Check that `order` uses every pair of `m` once and each step is an LC gluing.
/// On failure returns the index of the first bad step (`order.len()` if pairs are missing).
pub fn validate_order(c: &CycleGraph, m: &PlanarMatching, order: &[(usize, usize)]) -> Result<(), usize> {
    let mut uf = UnionFind::new(c.n);
    let mut remaining: Vec<(usize, usize)> = m.pairs.clone();
    for (i, &(x, y)) in order.iter().enumerate() {
        let p = (x.min(y), x.max(y));
        let Some(pos) = remaining.iter().position(|&q| q == p) else {
            return Err(i);
        };
        if !executable(&mut uf, c.n, p) {
            return Err(i);
        }
        remaining.swap_remove(pos);
        fold_pair(&mut uf, c.n, p);
    }
    if remaining.is_empty() {
        Ok(())
    } else {
        Err(order.len())
    }
}

/// Exhaustive search over orders of currently executable pairs.
pub fn brute_force_orderable(c: &CycleGraph, m: &PlanarMatching) -> bool {
    fn dfs(c: &CycleGraph, pairs: &[(usize, usize)], done: u64, memo: &mut HashMap<u64, bool>) -> bool {
        if done.count_ones() as usize == pairs.len() {
            return true;
        }
        if let Some(&r) = memo.get(&done) {
            return r;
        }
        let mut uf = UnionFind::new(c.n);
        for (i, &p) in pairs.iter().enumerate() {
            if done & (1 << i) != 0 {
                fold_pair(&mut uf, c.n, p);
            }
        }
        let mut ok = false;
        for (i, &p) in pairs.iter().enumerate() {
            if done & (1 << i) == 0 && executable(&mut uf, c.n, p) && dfs(c, pairs, done | (1 << i), memo) {
                ok = true;
                break;
            }
        }
        memo.insert(done, ok);
        ok
    }
    assert!(m.pairs.len() <= 64, "brute force is for small inputs");
    dfs(c, &m.pairs, 0, &mut HashMap::new())
}

/// An LC order following the inductive proof: fold adjacent pairs; otherwise
/// fold the complete side of a non-adjacent pair first (innermost pairs
/// outward), then the bridging pair, then continue on the other side.
pub fn lc_order(c: &CycleGraph, m: &PlanarMatching) -> Result<Vec<(usize, usize)>, MatchingError> {
    let beta = quotient(c, m).cycle_count();
    if beta > 1 {
        return Err(MatchingError::NotOrderable(beta));
    }
    let mut partner = vec![usize::MAX; c.n];
    for &(a, b) in &m.pairs {
        partner[a] = b;
        partner[b] = a;
    }
    let mut out = Vec::new();
    order_cycle((0..c.n).collect(), &partner, &mut out)?;
    debug_assert_eq!(validate_order(c, m, &out), Ok(()));
    Ok(out)
}

fn pair_of(x: usize, y: usize) -> (usize, usize) {
    (x.min(y), x.max(y))
}

fn is_complete_on(side: &[usize], partner: &[usize]) -> bool {
    side.iter()
        .all(|&e| partner[e] != usize::MAX && side.contains(&partner[e]))
}

// A path with a complete planar matching folds by repeatedly taking an
// innermost pair, which is adjacent in the current path.
fn order_path(mut path: Vec<usize>, partner: &[usize], out: &mut Vec<(usize, usize)>) {
    while !path.is_empty() {
        let i = (0..path.len() - 1)
            .find(|&i| partner[path[i]] == path[i + 1])
            .expect("complete planar matching on a path has an innermost pair");
        out.push(pair_of(path[i], path[i + 1]));
        path.drain(i..i + 2);
    }
}

fn order_cycle(mut cyc: Vec<usize>, partner: &[usize], out: &mut Vec<(usize, usize)>) -> Result<(), MatchingError> {
    loop {
        let len = cyc.len();
        let matched: Vec<usize> = (0..len)
            .filter(|&i| {
                let p = partner[cyc[i]];
                p != usize::MAX && cyc.contains(&p)
            })
            .collect();
        if matched.is_empty() {
            return Ok(());
        }
        // adjacent pair in the current cycle
        if let Some(i) = (0..len).find(|&i| len >= 2 && partner[cyc[i]] == cyc[(i + 1) % len]) {
            let j = (i + 1) % len;
            out.push(pair_of(cyc[i], cyc[j]));
            let (hi, lo) = (i.max(j), i.min(j));
            cyc.remove(hi);
            cyc.remove(lo);
            continue;
        }
        let i = matched[0];
        let j = cyc
            .iter()
            .position(|&e| e == partner[cyc[i]])
            .expect("partner in cycle");
        let (i, j) = (i.min(j), i.max(j));
        let left: Vec<usize> = cyc[i + 1..j].to_vec();
        let right: Vec<usize> = cyc[j + 1..].iter().chain(&cyc[..i]).copied().collect();
        let bridge = pair_of(cyc[i], cyc[j]);
        let (complete, other) = if is_complete_on(&left, partner) {
            (left, right)
        } else if is_complete_on(&right, partner) {
            (right, left)
        } else {
            return Err(MatchingError::NotOrderable(2));
        };
        order_path(complete, partner, out);
        out.push(bridge);
        cyc = other;
    }
}

/// For a complete matching: collapse the quotient tree onto the class of
/// `c0`, leaf by leaf. Each leaf deletion is an LC gluing, and `c0` stays
/// active until the final step.
pub fn lc_order_last_active(
    c: &CycleGraph,
    m: &PlanarMatching,
    c0: usize,
) -> Result<Vec<(usize, usize)>, MatchingError> {
    if c0 >= c.n {
        return Err(MatchingError::NoSuchVertex(c0));
    }
    if !m.is_complete(c) {
        return Err(MatchingError::NotComplete);
    }
    let g = quotient(c, m);
    let root = g.vertex_of[c0];
    // quotient edge -> matched pair
    let mut pair_for_edge = vec![(0, 0); g.edges.len()];
    for &(a, b) in &m.pairs {
        pair_for_edge[g.edge_of[a]] = (a, b);
    }
    let mut deg = vec![0usize; g.num_vertices];
    for &(u, v) in &g.edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut removed = vec![false; g.edges.len()];
    let mut out = Vec::with_capacity(g.edges.len());
    for _ in 0..g.edges.len() {
        let e = (0..g.edges.len())
            .find(|&e| {
                let (u, v) = g.edges[e];
                !removed[e] && ((deg[u] == 1 && u != root) || (deg[v] == 1 && v != root))
            })
            .expect("a tree with an edge has a leaf other than the root");
        removed[e] = true;
        let (u, v) = g.edges[e];
        deg[u] -= 1;
        deg[v] -= 1;
        out.push(pair_for_edge[e]);
    }
    Ok(out)
}

/// Activity of `c0` after each prefix of `order` (entry `k` is after `k` steps).
pub fn activity_trace(c: &CycleGraph, order: &[(usize, usize)], c0: usize) -> Vec<bool> {
    (0..=order.len())
        .map(|k| partial_quotient(c, &order[..k]).is_active(c0))
        .collect()
}

/// Every planar matching (partial or complete) of the edges of an `n`-cycle.
pub fn all_planar_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    type Matchings = Vec<Vec<(usize, usize)>>;
    fn rec(lo: usize, hi: usize, memo: &mut HashMap<(usize, usize), Matchings>) -> Matchings {
        if lo >= hi {
            return vec![Vec::new()];
        }
        if let Some(v) = memo.get(&(lo, hi)) {
            return v.clone();
        }
        // edge `lo` unmatched, or matched with some k, splitting the range
        let mut out = rec(lo + 1, hi, memo);
        for k in lo + 1..hi {
            let inner = rec(lo + 1, k, memo);
            let outer = rec(k + 1, hi, memo);
            for a in &inner {
                for b in &outer {
                    let mut v = vec![(lo, k)];
                    v.extend(a);
                    v.extend(b);
                    out.push(v);
                }
            }
        }
        memo.insert((lo, hi), out.clone());
        out
    }
    rec(0, n, &mut HashMap::new())
}

/// Complete planar matchings only.
pub fn complete_planar_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    all_planar_matchings(n)
        .into_iter()
        .filter(|m| 2 * m.len() == n)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(n: usize, pairs: &[(usize, usize)]) -> (CycleGraph, PlanarMatching) {
        let c = CycleGraph::new(n).unwrap();
        let m = PlanarMatching::new(&c, pairs.iter().copied()).unwrap();
        (c, m)
    }

    #[test]
    fn empty_matching_is_a_cycle() {
        let (c, m) = setup(5, &[]);
        assert_eq!(quotient(&c, &m).cycle_count(), 1);
        assert!(lc_orderable(&c, &m));
        assert!(brute_force_orderable(&c, &m));
        assert!(lc_order(&c, &m).unwrap().is_empty());
    }

    #[test]
    fn hexagon_fold_matching_is_a_tree() {
        // oracle: union-find by hand over the three identifications
        let (c, m) = setup(6, &[(0, 1), (2, 3), (4, 5)]);
        let mut uf = UnionFind::new(6);
        for (a, b) in [(0, 2), (1, 1), (2, 4), (3, 3), (4, 0), (5, 5)] {
            uf.union(a, b);
        }
        let (_, v) = uf.canonical_labels();
        let g = quotient(&c, &m);
        assert_eq!(g.num_vertices, v);
        assert_eq!(g.edges.len(), 3);
        assert_eq!(g.cycle_count(), 0);
        assert!(brute_force_orderable(&c, &m));
    }

    #[test]
    fn crossing_rejected() {
        let c = CycleGraph::new(6).unwrap();
        assert!(matches!(
            PlanarMatching::new(&c, [(0, 2), (1, 3)]),
            Err(MatchingError::CrossingMatching(..))
        ));
        assert!(matches!(
            PlanarMatching::new(&c, [(0, 2), (2, 3)]),
            Err(MatchingError::NotDisjoint(2))
        ));
        assert!(CycleGraph::new(2).is_err());
    }

    #[test]
    fn twelve_gon_far_pair() {
        let (c, m) = setup(12, &[(0, 6)]);
        assert_eq!(quotient(&c, &m).cycle_count(), 2);
        assert!(!lc_orderable(&c, &m));
        assert!(!brute_force_orderable(&c, &m));
        assert_eq!(lc_order(&c, &m).unwrap_err(), MatchingError::NotOrderable(2));
    }

    #[test]
    fn square_last_active() {
        let (c, m) = setup(4, &[(0, 1), (2, 3)]);
        let order = lc_order_last_active(&c, &m, 0).unwrap();
        assert_eq!(order.len(), 2);
        assert_eq!(validate_order(&c, &m, &order), Ok(()));
        assert_eq!(activity_trace(&c, &order, 0), vec![true, true, false]);
    }

    #[test]
    fn hexagon_with_forced_order() {
        // [b,c]~[c,d] must come first; it takes c off every cycle
        let (c, m) = setup(6, &[(1, 2), (0, 3)]);
        let mut uf = UnionFind::new(6);
        assert!(!executable(&mut uf, 6, (0, 3)));
        assert!(executable(&mut uf, 6, (1, 2)));
        let o = lc_order(&c, &m).unwrap();
        assert_eq!(o, vec![(1, 2), (0, 3)]);
        assert_eq!(activity_trace(&c, &o, 2), vec![true, false, false]);
    }

    #[test]
    fn partial_matching_rejected_for_last_active() {
        let (c, m) = setup(6, &[(1, 2)]);
        assert_eq!(lc_order_last_active(&c, &m, 0).unwrap_err(), MatchingError::NotComplete);
    }

    #[test]
    fn matching_counts_are_motzkin_numbers() {
        let motzkin = [1, 1, 2, 4, 9, 21, 51, 127, 323];
        for (n, &m) in motzkin.iter().enumerate() {
            assert_eq!(all_planar_matchings(n).len(), m);
        }
    }
}

#[cfg(test)]
mod exhaustive {
    use super::*;

    #[test]
    fn criterion_agrees_with_search_up_to_ten() {
        for n in 3..=10 {
            let c = CycleGraph::new(n).unwrap();
            for pairs in all_planar_matchings(n) {
                let m = PlanarMatching::new(&c, pairs).unwrap();
                let crit = lc_orderable(&c, &m);
                assert_eq!(crit, brute_force_orderable(&c, &m), "n={n} {:?}", m.pairs());
                match lc_order(&c, &m) {
                    Ok(o) => assert_eq!(validate_order(&c, &m, &o), Ok(()), "n={n} {:?} {o:?}", m.pairs()),
                    Err(_) => assert!(!crit),
                }
                if m.is_complete(&c) {
                    for c0 in 0..n {
                        let o = lc_order_last_active(&c, &m, c0).unwrap();
                        assert_eq!(
                            validate_order(&c, &m, &o),
                            Ok(()),
                            "n={n} {:?} c0={c0} {o:?}",
                            m.pairs()
                        );
                        let tr = activity_trace(&c, &o, c0);
                        assert!(
                            tr[..o.len()].iter().all(|&a| a),
                            "n={n} {:?} c0={c0} {o:?} {tr:?}",
                            m.pairs()
                        );
                    }
                }
            }
        }
    }
}
