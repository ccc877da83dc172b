//! Collapses of 2-dimensional simplicial complexes, the complex `K^T` left
//! over when a dual spanning tree is removed from a 3-ball, and the
//! extensively-LC check built on it.
//!
//! Faces carry global ids: vertices first, then edges, then triangles.
//! A face is free when it lies in exactly one other face (for a complex of
//! dimension at most 2 that is its single coface) and is not in the
//! protected subcomplex `D`.

use crate::complex::Pseudomanifold;
use crate::format::content_lines;
use crate::union_find::UnionFind;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollapseError {
    #[error("exhaustive search exceeded its budget of {0} states")]
    BudgetExceeded(usize),
    #[error("not a spanning tree of the dual graph: {0}")]
    NotSpanningTree(String),
    #[error("the complex is not simplicial")]
    NotSimplicial,
    #[error("not a ball: {0}")]
    NotABall(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl CollapseError {
    pub fn token(&self) -> &'static str {
        match self {
            CollapseError::BudgetExceeded(_) => "BudgetExceeded",
            CollapseError::NotSpanningTree(_) => "NotSpanningTree",
            CollapseError::NotSimplicial => "NotSimplicial",
            CollapseError::NotABall(_) => "NotABall",
            CollapseError::Parse { .. } => "ParseError",
        }
    }
}

/// Default state budget for exhaustive searches.
pub const DEFAULT_BUDGET: usize = 200_000;

/// A simplicial complex of dimension at most 2 with a marked subcomplex `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex2 {
    labels: Vec<String>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    in_d: Vec<bool>,
    cofaces: Vec<Vec<usize>>,
    facets: Vec<Vec<usize>>,
}

/// Bitset over global face ids.
pub type FaceSet = Vec<u64>;

fn bit(s: &FaceSet, i: usize) -> bool {
    s[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(s: &mut FaceSet, i: usize, v: bool) {
    if v {
        s[i / 64] |= 1 << (i % 64);
    } else {
        s[i / 64] &= !(1 << (i % 64));
    }
}

impl Complex2 {
    /// Build from vertex labels, edges and triangles; faces of given faces are
    /// added when missing, duplicates are merged.
    pub fn new(labels: Vec<String>, edges: &[[usize; 2]], triangles: &[[usize; 3]]) -> Self {
        let mut es: BTreeMap<[usize; 2], ()> = BTreeMap::new();
        let mut ts: BTreeMap<[usize; 3], ()> = BTreeMap::new();
        for e in edges {
            let mut e = *e;
            e.sort();
            assert!(e[0] != e[1] && e[1] < labels.len(), "bad edge {e:?}");
            es.insert(e, ());
        }
        for t in triangles {
            let mut t = *t;
            t.sort();
            assert!(
                t[0] != t[1] && t[1] != t[2] && t[2] < labels.len(),
                "bad triangle {t:?}"
            );
            ts.insert(t, ());
            for e in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
                es.insert(e, ());
            }
        }
        let edges: Vec<[usize; 2]> = es.into_keys().collect();
        let triangles: Vec<[usize; 3]> = ts.into_keys().collect();
        let nv = labels.len();
        let ne = edges.len();
        let n = nv + ne + triangles.len();
        let mut cofaces = vec![Vec::new(); n];
        let mut facets = vec![Vec::new(); n];
        let edge_id = |a: usize, b: usize| nv + edges.binary_search(&[a, b]).expect("edge present");
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                cofaces[v].push(nv + i);
                facets[nv + i].push(v);
            }
        }
        for (i, t) in triangles.iter().enumerate() {
            let id = nv + ne + i;
            for e in [edge_id(t[0], t[1]), edge_id(t[0], t[2]), edge_id(t[1], t[2])] {
                cofaces[e].push(id);
                facets[id].push(e);
            }
        }
        Complex2 {
            labels,
            edges,
            triangles,
            in_d: vec![false; n],
            cofaces,
            facets,
        }
    }

    /// Mark faces as belonging to `D`, together with all their faces.
    pub fn with_subcomplex(mut self, faces: impl IntoIterator<Item = usize>) -> Self {
        let mut stack: Vec<usize> = faces.into_iter().collect();
        while let Some(f) = stack.pop() {
            if !self.in_d[f] {
                self.in_d[f] = true;
                stack.extend(self.facets[f].iter().copied());
            }
        }
        self
    }

    pub fn clear_subcomplex(mut self) -> Self {
        self.in_d.iter_mut().for_each(|b| *b = false);
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn num_faces(&self) -> usize {
        self.in_d.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn in_subcomplex(&self, face: usize) -> bool {
        self.in_d[face]
    }

    pub fn face_dim(&self, face: usize) -> usize {
        let nv = self.num_vertices();
        if face < nv {
            0
        } else if face < nv + self.num_edges() {
            1
        } else {
            2
        }
    }

    pub fn face_vertices(&self, face: usize) -> Vec<usize> {
        let nv = self.num_vertices();
        let ne = self.num_edges();
        match self.face_dim(face) {
            0 => vec![face],
            1 => self.edges[face - nv].to_vec(),
            _ => self.triangles[face - nv - ne].to_vec(),
        }
    }

    /// Labels of a face, for display.
    pub fn face_name(&self, face: usize) -> String {
        self.face_vertices(face)
            .iter()
            .map(|&v| self.labels[v].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_triangles() as i64
    }

    pub fn full_set(&self) -> FaceSet {
        let mut s = vec![0u64; self.num_faces().div_ceil(64)];
        for i in 0..self.num_faces() {
            set_bit(&mut s, i, true);
        }
        s
    }

    pub fn subcomplex_set(&self) -> FaceSet {
        let mut s = vec![0u64; self.num_faces().div_ceil(64)];
        for i in 0..self.num_faces() {
            set_bit(&mut s, i, self.in_d[i]);
        }
        s
    }

    /// The complex spanned by the faces in `alive`, with `D` restricted to it.
    pub fn restrict(&self, alive: &FaceSet) -> Complex2 {
        let nv = self.num_vertices();
        let ne = self.num_edges();
        let keep: Vec<usize> = (0..nv).filter(|&v| bit(alive, v)).collect();
        let new_of: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<[usize; 2]> = (0..ne)
            .filter(|&i| bit(alive, nv + i))
            .map(|i| self.edges[i].map(|v| new_of[&v]))
            .collect();
        let tris: Vec<[usize; 3]> = (0..self.num_triangles())
            .filter(|&i| bit(alive, nv + ne + i))
            .map(|i| self.triangles[i].map(|v| new_of[&v]))
            .collect();
        let out = Complex2::new(keep.iter().map(|&v| self.labels[v].clone()).collect(), &edges, &tris);
        let d: Vec<usize> = (0..out.num_faces())
            .filter(|&f| {
                let vs: Vec<usize> = out.face_vertices(f).iter().map(|&v| keep[v]).collect();
                self.find_face(&vs).is_some_and(|g| self.in_d[g])
            })
            .collect();
        out.with_subcomplex(d)
    }

    /// Global id of the face with these (original) vertices.
    pub fn find_face(&self, vs: &[usize]) -> Option<usize> {
        let mut vs = vs.to_vec();
        vs.sort();
        let nv = self.num_vertices();
        match vs.len() {
            1 => (vs[0] < nv).then_some(vs[0]),
            2 => self.edges.binary_search(&[vs[0], vs[1]]).ok().map(|i| nv + i),
            3 => self
                .triangles
                .binary_search(&[vs[0], vs[1], vs[2]])
                .ok()
                .map(|i| nv + self.num_edges() + i),
            _ => None,
        }
    }

    /// The single alive coface of `face` if it is free in `alive`.
    fn free_partner(&self, alive: &FaceSet, face: usize) -> Option<usize> {
        if !bit(alive, face) || self.in_d[face] {
            return None;
        }
        let mut it = self.cofaces[face].iter().copied().filter(|&c| bit(alive, c));
        let c = it.next()?;
        it.next().is_none().then_some(c)
    }

    /// Free faces in `alive`, lowest id first.
    pub fn free_faces_in(&self, alive: &FaceSet) -> Vec<(usize, usize)> {
        (0..self.num_faces())
            .filter_map(|f| self.free_partner(alive, f).map(|c| (f, c)))
            .collect()
    }

    pub fn free_faces(&self) -> Vec<(usize, usize)> {
        self.free_faces_in(&self.full_set())
    }

    /// Dimension-0 check for the absolute target: a single vertex and nothing else.
    fn is_point(&self, alive: &FaceSet) -> bool {
        alive.iter().map(|w| w.count_ones()).sum::<u32>() == 1
    }

    fn reached(&self, alive: &FaceSet, target: &FaceSet) -> bool {
        if self.in_d.iter().any(|&b| b) {
            alive == target
        } else {
            self.is_point(alive)
        }
    }

    /// Serialize in the `v`/`e`/`t` text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in 0..self.num_faces() {
            let d = if self.in_d[f] { "d " } else { "" };
            let k = ["v", "e", "t"][self.face_dim(f)];
            writeln!(s, "{d}{k} {}", self.face_name(f)).unwrap();
        }
        s
    }

    /// Parse the text format: `v <label>`, `e a b`, `t a b c`, each optionally
    /// prefixed with `d` to put the face (and its faces) into `D`. Vertices
    /// named by `e`/`t` lines are created on first use.
    pub fn parse(text: &str) -> Result<Complex2, CollapseError> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut edges = Vec::new();
        let mut tris = Vec::new();
        let mut marked: Vec<Vec<usize>> = Vec::new();
        let err = |line, msg: &str| CollapseError::Parse { line, msg: msg.into() };
        for (ln, l) in content_lines(text) {
            let mut toks: Vec<&str> = l.split_whitespace().collect();
            let in_d = toks[0] == "d";
            if in_d {
                toks.remove(0);
            }
            let Some((&kind, rest)) = toks.split_first() else {
                return Err(err(ln, "missing face"));
            };
            let want = match kind {
                "v" => 1,
                "e" => 2,
                "t" => 3,
                _ => return Err(err(ln, "expected v, e or t")),
            };
            if rest.len() != want {
                return Err(err(ln, "wrong number of vertices"));
            }
            let mut vs = Vec::new();
            for &name in rest {
                let id = *index.entry(name.to_string()).or_insert_with(|| {
                    labels.push(name.to_string());
                    labels.len() - 1
                });
                if vs.contains(&id) {
                    return Err(err(ln, "repeated vertex"));
                }
                vs.push(id);
            }
            match want {
                2 => edges.push([vs[0], vs[1]]),
                3 => tris.push([vs[0], vs[1], vs[2]]),
                _ => {}
            }
            if in_d {
                marked.push(vs);
            }
        }
        let k = Complex2::new(labels, &edges, &tris);
        let d: Vec<usize> = marked
            .iter()
            .map(|vs| k.find_face(vs).expect("face was added"))
            .collect();
        Ok(k.with_subcomplex(d))
    }
}

/// Ordered `(free face, coface)` deletions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CollapseTrace {
    pub steps: Vec<(usize, usize)>,
}

impl CollapseTrace {
    /// Replay on the full complex, checking each face is free when deleted.
    pub fn replay(&self, k: &Complex2) -> Result<FaceSet, usize> {
        let mut alive = k.full_set();
        for (i, &(f, c)) in self.steps.iter().enumerate() {
            if k.free_partner(&alive, f) != Some(c) {
                return Err(i);
            }
            set_bit(&mut alive, f, false);
            set_bit(&mut alive, c, false);
        }
        Ok(alive)
    }
}

/// Collapse free faces outside `D`, always the lowest id first, until stuck.
pub fn greedy_collapse(k: &Complex2) -> (Complex2, CollapseTrace) {
    let (alive, trace) = greedy_from(k, k.full_set());
    (k.restrict(&alive), trace)
}

fn greedy_from(k: &Complex2, mut alive: FaceSet) -> (FaceSet, CollapseTrace) {
    let mut trace = CollapseTrace::default();
    // coface counts, updated incrementally
    let mut count: Vec<usize> = (0..k.num_faces())
        .map(|f| k.cofaces[f].iter().filter(|&&c| bit(&alive, c)).count())
        .collect();
    let mut f = 0;
    while f < k.num_faces() {
        if bit(&alive, f) && !k.in_d[f] && count[f] == 1 {
            let c = k.free_partner(&alive, f).expect("count says free");
            set_bit(&mut alive, f, false);
            set_bit(&mut alive, c, false);
            for &g in k.facets[f].iter().chain(&k.facets[c]) {
                count[g] -= 1;
            }
            trace.steps.push((f, c));
            f = 0;
            continue;
        }
        f += 1;
    }
    (alive, trace)
}

/// Does `K` collapse onto `D` (onto a point when `D` is empty)?
///
/// Greedy first; when it sticks, an exhaustive search over collapse
/// sequences within `budget` states.
pub fn collapses_to(k: &Complex2, budget: usize) -> Result<bool, CollapseError> {
    Ok(find_collapse(k, budget)?.is_some())
}

/// A collapse sequence from `K` onto `D` (onto a point when `D` is empty), if one exists.
pub fn find_collapse(k: &Complex2, budget: usize) -> Result<Option<CollapseTrace>, CollapseError> {
    let target = k.subcomplex_set();
    let (alive, trace) = greedy_from(k, k.full_set());
    if k.reached(&alive, &target) {
        return Ok(Some(trace));
    }
    // collapses keep the Euler characteristic
    let chi_target = if target.iter().all(|&w| w == 0) {
        1
    } else {
        k.restrict(&target).euler_characteristic()
    };
    if k.euler_characteristic() != chi_target {
        return Ok(None);
    }
    fn dfs(
        k: &Complex2,
        s: &FaceSet,
        target: &FaceSet,
        seen: &mut HashSet<FaceSet>,
        path: &mut Vec<(usize, usize)>,
        budget: usize,
    ) -> Result<bool, CollapseError> {
        if k.reached(s, target) {
            return Ok(true);
        }
        if !seen.insert(s.clone()) {
            return Ok(false);
        }
        if seen.len() > budget {
            return Err(CollapseError::BudgetExceeded(budget));
        }
        for (f, c) in k.free_faces_in(s) {
            let mut t = s.clone();
            set_bit(&mut t, f, false);
            set_bit(&mut t, c, false);
            path.push((f, c));
            if dfs(k, &t, target, seen, path, budget)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
    let mut path = Vec::new();
    let found = dfs(k, &k.full_set(), &target, &mut HashSet::new(), &mut path, budget)?;
    Ok(found.then_some(CollapseTrace { steps: path }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extensive {
    Yes,
    /// A reachable state with no free faces that is not the target.
    No(Complex2),
    Unknown,
}

/// Does every sequence of collapses reach `D` (a point when `D` is empty)?
pub fn extensively_collapsible(k: &Complex2, budget: usize) -> Extensive {
    let target = k.subcomplex_set();
    let mut seen = HashSet::new();
    let mut stack = vec![k.full_set()];
    while let Some(s) = stack.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        if seen.len() > budget {
            return Extensive::Unknown;
        }
        let free = k.free_faces_in(&s);
        if free.is_empty() {
            if !k.reached(&s, &target) {
                return Extensive::No(k.restrict(&s));
            }
            continue;
        }
        for (f, c) in free {
            let mut t = s.clone();
            set_bit(&mut t, f, false);
            set_bit(&mut t, c, false);
            if !seen.contains(&t) {
                stack.push(t);
            }
        }
    }
    Extensive::Yes
}

/// The 2-skeleton of `p` with its boundary marked as `D`.
pub fn skeleton(p: &Pseudomanifold) -> Result<Complex2, CollapseError> {
    k_t_unchecked(p, &[])
}

fn k_t_unchecked(p: &Pseudomanifold, tree: &[usize]) -> Result<Complex2, CollapseError> {
    if !p.is_simplicial() {
        return Err(CollapseError::NotSimplicial);
    }
    let labels = (0..p.num_vertices()).map(|v| format!("v{v}")).collect();
    let edges: Vec<[usize; 2]> = (0..p.num_edges()).map(|e| p.edge_vertices(e)).collect();
    let tris: Vec<[usize; 3]> = (0..p.num_triangles())
        .filter(|t| !tree.contains(t))
        .map(|t| p.triangle_vertices(t))
        .collect();
    let k = Complex2::new(labels, &edges, &tris);
    let boundary: Vec<usize> = (0..p.num_triangles())
        .filter(|&t| p.is_boundary_triangle(t))
        .map(|t| k.find_face(&p.triangle_vertices(t)).expect("boundary triangle kept"))
        .collect();
    Ok(k.with_subcomplex(boundary))
}

/// Dual arcs as `(interior triangle, tet, tet)`.
fn dual_arcs(p: &Pseudomanifold) -> Vec<(usize, usize, usize)> {
    p.interior_triangles()
        .map(|t| {
            let f = p.triangle_facets(t);
            (t, f[0].tet, f[1].tet)
        })
        .collect()
}

/// `K^T`: every triangle whose dual arc is not in `tree` (given as interior
/// triangle ids), with all edges and vertices. `D` is the boundary.
pub fn k_t(p: &Pseudomanifold, tree: &[usize]) -> Result<Complex2, CollapseError> {
    let arcs = dual_arcs(p);
    if !p.strongly_connected() {
        return Err(CollapseError::NotSpanningTree("the dual graph is disconnected".into()));
    }
    if tree.len() + 1 != p.num_tets() {
        return Err(CollapseError::NotSpanningTree(format!(
            "{} arcs for {} tetrahedra",
            tree.len(),
            p.num_tets()
        )));
    }
    let mut uf = UnionFind::new(p.num_tets());
    for &t in tree {
        let Some(&(_, a, b)) = arcs.iter().find(|x| x.0 == t) else {
            return Err(CollapseError::NotSpanningTree(format!("triangle {t} is not interior")));
        };
        if !uf.union(a, b) {
            return Err(CollapseError::NotSpanningTree(format!("triangle {t} closes a cycle")));
        }
    }
    k_t_unchecked(p, tree)
}

/// Every spanning tree of the dual graph (as sorted interior triangle ids),
/// by deletion/contraction; stops after `cap` trees.
pub fn spanning_trees(p: &Pseudomanifold, cap: usize) -> Vec<Vec<usize>> {
    let arcs = dual_arcs(p);
    let n = p.num_tets();
    let mut out = Vec::new();
    if n == 0 || !p.strongly_connected() {
        return out;
    }
    fn connected_with(
        n: usize,
        chosen: &[usize],
        rest: &[(usize, usize, usize)],
        arcs: &[(usize, usize, usize)],
    ) -> bool {
        let mut uf = UnionFind::new(n);
        for &i in chosen {
            uf.union(arcs[i].1, arcs[i].2);
        }
        for a in rest {
            uf.union(a.1, a.2);
        }
        (1..n).all(|v| uf.same(0, v))
    }
    fn rec(
        n: usize,
        arcs: &[(usize, usize, usize)],
        i: usize,
        chosen: &mut Vec<usize>,
        uf: &UnionFind,
        cap: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= cap {
            return;
        }
        if chosen.len() + 1 == n {
            out.push(chosen.iter().map(|&k| arcs[k].0).collect());
            return;
        }
        if i == arcs.len() {
            return;
        }
        let (_, a, b) = arcs[i];
        let mut uf2 = uf.clone();
        // contract
        if uf2.union(a, b) {
            chosen.push(i);
            rec(n, arcs, i + 1, chosen, &uf2, cap, out);
            chosen.pop();
        }
        // delete, if the rest still connects
        if connected_with(n, chosen, &arcs[i + 1..], arcs) {
            rec(n, arcs, i + 1, chosen, uf, cap, out);
        }
    }
    rec(n, &arcs, 0, &mut Vec::new(), &UnionFind::new(n), cap, &mut out);
    for t in &mut out {
        t.sort();
    }
    out
}

/// A uniformly shuffled Kruskal tree: random, not uniform over trees.
pub fn random_spanning_tree(p: &Pseudomanifold, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut arcs = dual_arcs(p);
    arcs.shuffle(rng);
    let mut uf = UnionFind::new(p.num_tets());
    let mut t: Vec<usize> = arcs.into_iter().filter(|a| uf.union(a.1, a.2)).map(|a| a.0).collect();
    t.sort();
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElcMode {
    All,
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElcOutcome {
    /// Every spanning tree checked (All mode only).
    Verified {
        trees: usize,
    },
    /// `K^T` does not collapse onto the boundary for this tree.
    Refuted {
        tree: Vec<usize>,
    },
    Unknown {
        trees: usize,
        undecided: usize,
    },
}

impl ElcOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            ElcOutcome::Verified { .. } => "Verified",
            ElcOutcome::Refuted { .. } => "Refuted",
            ElcOutcome::Unknown { .. } => "Unknown",
        }
    }
}

/// Cap on trees in All mode, to keep runaway inputs bounded.
pub const MAX_TREES: usize = 1_000_000;

/// Check that `K^T` collapses onto the boundary for every (or sampled) dual spanning tree.
pub fn extensively_lc_check(b: &Pseudomanifold, mode: ElcMode, budget: usize) -> Result<ElcOutcome, CollapseError> {
    let refs = b.ball_refutations();
    if !refs.is_empty() {
        let names: Vec<String> = refs.iter().map(|r| r.to_string()).collect();
        return Err(CollapseError::NotABall(names.join("; ")));
    }
    let trees = match mode {
        ElcMode::All => spanning_trees(b, MAX_TREES),
        ElcMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| random_spanning_tree(b, &mut rng)).collect()
        }
    };
    let results: Vec<Result<bool, CollapseError>> = trees
        .par_iter()
        .map(|t| k_t(b, t).and_then(|k| collapses_to(&k, budget)))
        .collect();
    // any refutation wins; take the first in enumeration order
    if let Some(i) = results.iter().position(|r| matches!(r, Ok(false))) {
        return Ok(ElcOutcome::Refuted { tree: trees[i].clone() });
    }
    let undecided = results.iter().filter(|r| r.is_err()).count();
    let complete = mode == ElcMode::All && trees.len() < MAX_TREES;
    Ok(if undecided == 0 && complete {
        ElcOutcome::Verified { trees: trees.len() }
    } else {
        ElcOutcome::Unknown {
            trees: trees.len(),
            undecided,
        }
    })
}
