//! Constructions that come with a replayable script: trees of tetrahedra,
//! cones over surfaces, and unions of Mogami complexes along a connected
//! interface.

use crate::complex::{FacetRef, Pairing, Pseudomanifold};
use crate::format::{complex_from_labels, FormatError};
use crate::moves;
use crate::perm::{face_corners, Perm4};
use crate::script::{GlueSpec, Mode, MoveScript, ScriptError, Step};
use crate::union_find::UnionFind;
use rand::Rng;
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("facet {face} of tetrahedron {tet} is used twice")]
    FacetReuse { tet: usize, face: u8 },
    #[error("node {child} names parent {parent}, which does not precede it")]
    BadParent { child: usize, parent: usize },
    #[error("the surface is not strongly connected")]
    NotStronglyConnected,
    #[error("the interface is not connected")]
    InterfaceNotConnected,
    #[error("interface triangle {0} meets no earlier one")]
    NoIncidenceOrder(usize),
    #[error("facet {0} is not on the boundary")]
    NotBoundary(FacetRef),
    #[error("bad surface: {0}")]
    BadSurface(String),
    #[error("no facet with labels {0}")]
    NoSuchFacet(String),
    #[error("script cannot be composed: {0}")]
    BadScript(String),
    #[error("script rejected: {0}")]
    Script(#[from] ScriptError),
}

impl BuildError {
    pub fn token(&self) -> &'static str {
        match self {
            BuildError::FacetReuse { .. } => "FacetReuse",
            BuildError::BadParent { .. } => "BadParent",
            BuildError::NotStronglyConnected => "NotStronglyConnected",
            BuildError::InterfaceNotConnected => "InterfaceNotConnected",
            BuildError::NoIncidenceOrder(_) => "NoIncidenceOrder",
            BuildError::NotBoundary(_) => "NotBoundary",
            BuildError::BadSurface(_) => "BadSurface",
            BuildError::NoSuchFacet(_) => "NoSuchFacet",
            BuildError::BadScript(_) => "BadScript",
            BuildError::Script(_) => "StepRejected",
        }
    }
}

/// A complex, a script producing it, and a name for every corner of every tetrahedron.
#[derive(Debug, Clone)]
pub struct Built {
    pub complex: Pseudomanifold,
    pub script: MoveScript,
    pub labels: Vec<[String; 4]>,
}

/// Facets of `p` whose corner labels are exactly `names` (any order).
fn facets_labeled(labels: &[[String; 4]], names: [&str; 3]) -> Vec<FacetRef> {
    let mut want: Vec<&str> = names.to_vec();
    want.sort();
    let mut out = Vec::new();
    for (t, row) in labels.iter().enumerate() {
        for f in 0..4u8 {
            let mut got: Vec<&str> = face_corners(f as usize).iter().map(|&i| row[i].as_str()).collect();
            got.sort();
            if got == want {
                out.push(FacetRef::new(t, f));
            }
        }
    }
    out
}

/// The facet labeled `names`; when several exist, the unique boundary one in `p`.
pub fn facet_by_labels(p: &Pseudomanifold, labels: &[[String; 4]], names: [&str; 3]) -> Result<FacetRef, BuildError> {
    let all = facets_labeled(labels, names);
    let pick = match all.as_slice() {
        [f] => Some(*f),
        _ => {
            let bd: Vec<FacetRef> = all.into_iter().filter(|&f| p.is_boundary_facet(f)).collect();
            (bd.len() == 1).then(|| bd[0])
        }
    };
    pick.ok_or_else(|| BuildError::NoSuchFacet(names.join(" ")))
}

/// Gluing of the facet labeled `from` to the one labeled `to`, sending `from[k]` to `to[k]`.
pub fn spec_by_labels(
    p: &Pseudomanifold,
    labels: &[[String; 4]],
    from: [&str; 3],
    to: [&str; 3],
) -> Result<GlueSpec, BuildError> {
    let a = facet_by_labels(p, labels, from)?;
    let b = facet_by_labels(p, labels, to)?;
    let corr = face_corners(a.face as usize).map(|i| {
        let k = from
            .iter()
            .position(|&n| n == labels[a.tet][i])
            .expect("label in facet");
        (0..4).find(|&j| labels[b.tet][j] == to[k]).expect("label in facet") as u8
    });
    Ok(GlueSpec { a, b, corr })
}

/// Vertex class in `p` of the first corner labeled `name`.
pub fn vertex_by_label(p: &Pseudomanifold, labels: &[[String; 4]], name: &str) -> Option<usize> {
    labels.iter().enumerate().find_map(|(t, row)| {
        row.iter().position(|l| l == name).map(|c| {
            p.vertex_of(crate::complex::CornerRef {
                tet: t,
                corner: c as u8,
            })
        })
    })
}

impl Built {
    pub fn facet(&self, names: [&str; 3]) -> Result<FacetRef, BuildError> {
        facet_by_labels(&self.complex, &self.labels, names)
    }

    pub fn spec(&self, from: [&str; 3], to: [&str; 3]) -> Result<GlueSpec, BuildError> {
        spec_by_labels(&self.complex, &self.labels, from, to)
    }

    /// Vertex class of the first corner carrying `name`.
    pub fn vertex(&self, name: &str) -> Option<usize> {
        vertex_by_label(&self.complex, &self.labels, name)
    }

    /// Append a step, replaying it on the current complex.
    pub fn push(&mut self, step: Step) -> Result<(), BuildError> {
        self.script.steps.push(step);
        match self.script.replay() {
            Ok((q, _)) => {
                self.complex = q;
                Ok(())
            }
            Err(e) => {
                self.script.steps.pop();
                Err(e.into())
            }
        }
    }
}

fn class_labels(p: &Pseudomanifold) -> Vec<[String; 4]> {
    (0..p.num_tets())
        .map(|t| p.tet_vertices(t).map(|v| format!("v{v}")))
        .collect()
}

/// One attachment: the new tetrahedron is glued to `parent` along facet
/// `facet`, with `perm` mapping the parent's corners to the child's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeNode {
    pub parent: usize,
    pub facet: u8,
    pub perm: Perm4,
}

/// A rooted tree: node `i` describes tetrahedron `i + 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TreeSpec {
    pub nodes: Vec<TreeNode>,
}

impl TreeSpec {
    pub fn num_tets(&self) -> usize {
        self.nodes.len() + 1
    }

    /// A chain of `n` tetrahedra.
    pub fn path(n: usize) -> Self {
        // facet 3 of each tet meets facet 0 of the next
        let perm = Perm4::new([1, 2, 3, 0]).expect("bijection");
        TreeSpec {
            nodes: (1..n.max(1))
                .map(|i| TreeNode {
                    parent: i - 1,
                    facet: 3,
                    perm,
                })
                .collect(),
        }
    }

    /// Up to four tetrahedra hanging off tetrahedron 0 (`n <= 5`).
    pub fn star(n: usize) -> Self {
        assert!((1..=5).contains(&n), "a star has at most 5 tetrahedra");
        TreeSpec {
            nodes: (1..n)
                .map(|i| TreeNode {
                    parent: 0,
                    facet: (i - 1) as u8,
                    perm: Perm4::IDENTITY,
                })
                .collect(),
        }
    }

    /// Random attachments: a random free facet of a random earlier tetrahedron, a random permutation.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let mut free: Vec<FacetRef> = (0..4).map(|f| FacetRef::new(0, f)).collect();
        let mut nodes = Vec::new();
        for child in 1..n.max(1) {
            let at = free.swap_remove(rng.gen_range(0..free.len()));
            let perm = Perm4::from_index(rng.gen_range(0..24));
            let cf = perm.apply(at.face as usize) as u8;
            free.extend((0..4).filter(|&f| f != cf).map(|f| FacetRef::new(child, f)));
            nodes.push(TreeNode {
                parent: at.tet,
                facet: at.face,
                perm,
            });
        }
        TreeSpec { nodes }
    }

    /// Text form: one `parent facet p0p1p2p3` line per node.
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut nodes = Vec::new();
        for (ln, l) in crate::format::content_lines(text) {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let [parent, facet, perm] = toks.as_slice() else {
                return Err(FormatError::Parse {
                    line: ln,
                    msg: "expected `parent facet perm`".into(),
                });
            };
            let bad = |what: &str| FormatError::Parse {
                line: ln,
                msg: format!("bad {what}"),
            };
            let parent: usize = parent.parse().map_err(|_| bad("parent"))?;
            let facet: u8 = facet.parse().ok().filter(|&f| f < 4).ok_or_else(|| bad("facet"))?;
            let digits: Vec<u8> = perm.bytes().map(|b| b.wrapping_sub(b'0')).collect();
            let perm = <[u8; 4]>::try_from(digits.as_slice())
                .ok()
                .and_then(Perm4::new)
                .ok_or_else(|| bad("permutation"))?;
            nodes.push(TreeNode { parent, facet, perm });
        }
        Ok(TreeSpec { nodes })
    }
}

/// The tree of tetrahedra described by `spec`, with its unite-only script.
pub fn tree_of_tetrahedra(spec: &TreeSpec) -> Result<Built, BuildError> {
    let n = spec.num_tets();
    let mut used = vec![[false; 4]; n];
    let mut script = MoveScript::new(Mode::Lc, Pseudomanifold::disjoint(n));
    let mut pairings = Vec::new();
    for (i, node) in spec.nodes.iter().enumerate() {
        let child = i + 1;
        if node.parent >= child {
            return Err(BuildError::BadParent {
                child,
                parent: node.parent,
            });
        }
        if node.facet > 3 || used[node.parent][node.facet as usize] {
            return Err(BuildError::FacetReuse {
                tet: node.parent,
                face: node.facet,
            });
        }
        used[node.parent][node.facet as usize] = true;
        let cf = node.perm.apply(node.facet as usize) as u8;
        used[child][cf as usize] = true;
        let p = Pairing::from_perm(
            FacetRef::new(node.parent, node.facet),
            FacetRef::new(child, cf),
            node.perm,
        )
        .expect("face maps to face");
        script.steps.push(Step::Unite(GlueSpec {
            a: p.a,
            b: p.b,
            corr: p.corr(),
        }));
        pairings.push(p);
    }
    let (complex, _) = script.replay()?;
    debug_assert_eq!(complex, Pseudomanifold::build(n, pairings).expect("tree is valid"));
    let labels = class_labels(&complex);
    Ok(Built {
        complex,
        script,
        labels,
    })
}

/// A pure 2-dimensional complex given by labeled triangles, each edge in at most two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex2Pseudo {
    pub labels: Vec<String>,
    pub triangles: Vec<[usize; 3]>,
}

impl Complex2Pseudo {
    pub fn new(labels: Vec<String>, triangles: Vec<[usize; 3]>) -> Result<Self, BuildError> {
        let mut edge_use: BTreeMap<[usize; 2], usize> = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for t in &triangles {
            if t.iter().any(|&v| v >= labels.len()) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(BuildError::BadSurface(format!("bad triangle {t:?}")));
            }
            let mut s = *t;
            s.sort();
            if !seen.insert(s) {
                return Err(BuildError::BadSurface(format!("repeated triangle {t:?}")));
            }
            for e in [[s[0], s[1]], [s[0], s[2]], [s[1], s[2]]] {
                let c = edge_use.entry(e).or_default();
                *c += 1;
                if *c > 2 {
                    return Err(BuildError::BadSurface(format!(
                        "edge {} {} lies in more than two triangles",
                        labels[e[0]], labels[e[1]]
                    )));
                }
            }
        }
        Ok(Complex2Pseudo { labels, triangles })
    }

    /// Build from label triples, numbering labels by first appearance.
    pub fn from_named(tris: &[[&str; 3]]) -> Result<Self, BuildError> {
        let mut labels: Vec<String> = Vec::new();
        let mut idx = |s: &str| match labels.iter().position(|l| l == s) {
            Some(i) => i,
            None => {
                labels.push(s.to_string());
                labels.len() - 1
            }
        };
        let triangles = tris.iter().map(|t| t.map(&mut idx)).collect();
        Complex2Pseudo::new(labels, triangles)
    }

    /// Text form: one triangle (three labels) per line.
    pub fn parse(text: &str) -> Result<Self, BuildError> {
        let mut tris: Vec<[String; 3]> = Vec::new();
        for (ln, l) in crate::format::content_lines(text) {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(BuildError::BadSurface(format!("line {ln}: expected 3 labels")));
            }
            tris.push([0, 1, 2].map(|i| toks[i].to_string()));
        }
        let named: Vec<[&str; 3]> = tris
            .iter()
            .map(|t| [t[0].as_str(), t[1].as_str(), t[2].as_str()])
            .collect();
        Complex2Pseudo::from_named(&named)
    }

    /// Triangle pairs sharing an edge, as `(t1, t2, edge)`, sorted by edge.
    pub fn adjacencies(&self) -> Vec<(usize, usize, [usize; 2])> {
        let mut by_edge: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            let mut s = *t;
            s.sort();
            for e in [[s[0], s[1]], [s[0], s[2]], [s[1], s[2]]] {
                by_edge.entry(e).or_default().push(i);
            }
        }
        by_edge
            .into_iter()
            .filter_map(|(e, ts)| (ts.len() == 2).then(|| (ts[0], ts[1], e)))
            .collect()
    }

    pub fn strongly_connected(&self) -> bool {
        if self.triangles.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.triangles.len());
        for (a, b, _) in self.adjacencies() {
            uf.union(a, b);
        }
        (1..self.triangles.len()).all(|i| uf.same(0, i))
    }
}

/// Cone over a strongly connected surface: a BFS tree of its triangles gives
/// the unites, every other adjacency a gluing of two facets through the apex.
pub fn cone(a: &Complex2Pseudo, apex: &str) -> Result<Built, BuildError> {
    if !a.strongly_connected() {
        return Err(BuildError::NotStronglyConnected);
    }
    if a.labels.iter().any(|l| l == apex) {
        return Err(BuildError::BadSurface(format!("apex label {apex} is already used")));
    }
    let n = a.triangles.len();
    let labels: Vec<[String; 4]> = a
        .triangles
        .iter()
        .map(|t| {
            [
                apex.to_string(),
                a.labels[t[0]].clone(),
                a.labels[t[1]].clone(),
                a.labels[t[2]].clone(),
            ]
        })
        .collect();
    // facet of tet `t` through the apex and edge `e`: omit the corner of the third vertex
    let side = |t: usize, e: [usize; 2]| -> FacetRef {
        let k = (0..3).find(|&k| !e.contains(&a.triangles[t][k])).expect("third vertex");
        FacetRef::new(t, (k + 1) as u8)
    };
    let spec = |t1: usize, t2: usize, e: [usize; 2]| -> GlueSpec {
        let f1 = side(t1, e);
        let f2 = side(t2, e);
        let corr = face_corners(f1.face as usize)
            .map(|i| (0..4).find(|&j| labels[t2][j] == labels[t1][i]).expect("shared label") as u8);
        GlueSpec { a: f1, b: f2, corr }
    };
    let adj = a.adjacencies();
    let mut nbrs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(t1, t2, _)) in adj.iter().enumerate() {
        nbrs[t1].push((t2, i));
        nbrs[t2].push((t1, i));
    }
    let mut in_tree = vec![false; adj.len()];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut script = MoveScript::new(Mode::Mogami, Pseudomanifold::disjoint(n));
    while let Some(t) = queue.pop_front() {
        for &(u, i) in &nbrs[t] {
            if !seen[u] {
                seen[u] = true;
                in_tree[i] = true;
                let (t1, t2, e) = adj[i];
                script.steps.push(Step::Unite(spec(t1, t2, e)));
                queue.push_back(u);
            }
        }
    }
    for (i, &(t1, t2, e)) in adj.iter().enumerate() {
        if !in_tree[i] {
            script.steps.push(Step::Glue(spec(t1, t2, e)));
        }
    }
    let (complex, _) = script.replay()?;
    debug_assert_eq!(
        complex.signature(),
        complex_from_labels(&labels)
            .expect("cone is a pseudomanifold")
            .signature()
    );
    Ok(Built {
        complex,
        script,
        labels,
    })
}

/// Split a script into unites (its initial pairings first) and the rest.
fn unites_and_rest(s: &MoveScript) -> Result<(Vec<GlueSpec>, Vec<Step>), BuildError> {
    if s.mode == Mode::Free {
        return Err(BuildError::BadScript("FREE-mode scripts have no tree prefix".into()));
    }
    let mut unites: Vec<GlueSpec> = s
        .initial
        .pairings()
        .iter()
        .map(|p| GlueSpec {
            a: p.a,
            b: p.b,
            corr: p.corr(),
        })
        .collect();
    let mut rest = Vec::new();
    for st in &s.steps {
        match *st {
            Step::Unite(g) if rest.is_empty() => unites.push(g),
            Step::Glue(_) => rest.push(*st),
            _ => return Err(BuildError::BadScript(format!("unexpected step `{st}`"))),
        }
    }
    Ok((unites, rest))
}

fn shift(g: GlueSpec, by: usize) -> GlueSpec {
    GlueSpec {
        a: FacetRef::new(g.a.tet + by, g.a.face),
        b: FacetRef::new(g.b.tet + by, g.b.face),
        corr: g.corr,
    }
}

/// One interface triangle: a boundary facet of `A`, one of `B`, and the correspondence.
pub type InterfacePair = (FacetRef, FacetRef, [u8; 3]);

fn incident(a: &Pseudomanifold, f: FacetRef, g: FacetRef) -> bool {
    let vf = a.facet_vertices(f);
    a.facet_vertices(g).iter().any(|v| vf.contains(v))
}

/// Union of `A` and `B` along a connected interface: unite the trees at the
/// first interface triangle, replay both constructions, then glue the other
/// interface triangles breadth-first from the first.
pub fn union_mogami(a: &Built, b: &Built, iface: &[InterfacePair]) -> Result<Built, BuildError> {
    check_interface(a, b, iface)?;
    // BFS over incidence (shared vertex in A)
    let mut order = vec![0];
    let mut seen = vec![false; iface.len()];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for j in 0..iface.len() {
            if !seen[j] && incident(&a.complex, iface[i].0, iface[j].0) {
                seen[j] = true;
                order.push(j);
            }
        }
    }
    if order.len() < iface.len() {
        return Err(BuildError::InterfaceNotConnected);
    }
    let ordered: Vec<InterfacePair> = order.iter().map(|&i| iface[i]).collect();
    compose(a, b, &ordered)
}

/// Like [`union_mogami`] but keeping the given order, which must have every
/// triangle after the first incident to an earlier one.
pub fn union_mogami_ordered(a: &Built, b: &Built, iface: &[InterfacePair]) -> Result<Built, BuildError> {
    check_interface(a, b, iface)?;
    for i in 1..iface.len() {
        if !(0..i).any(|j| incident(&a.complex, iface[i].0, iface[j].0)) {
            return Err(BuildError::NoIncidenceOrder(i));
        }
    }
    compose(a, b, iface)
}

fn check_interface(a: &Built, b: &Built, iface: &[InterfacePair]) -> Result<(), BuildError> {
    if iface.is_empty() {
        return Err(BuildError::InterfaceNotConnected);
    }
    let mut used = std::collections::BTreeSet::new();
    for &(fa, fb, _) in iface {
        if fa.tet >= a.complex.num_tets() || !a.complex.is_boundary_facet(fa) {
            return Err(BuildError::NotBoundary(fa));
        }
        if fb.tet >= b.complex.num_tets() || !b.complex.is_boundary_facet(fb) {
            return Err(BuildError::NotBoundary(fb));
        }
        if !used.insert((0, fa)) {
            return Err(BuildError::FacetReuse {
                tet: fa.tet,
                face: fa.face,
            });
        }
        if !used.insert((1, fb)) {
            return Err(BuildError::FacetReuse {
                tet: fb.tet,
                face: fb.face,
            });
        }
    }
    Ok(())
}

fn compose(a: &Built, b: &Built, iface: &[InterfacePair]) -> Result<Built, BuildError> {
    let na = a.complex.num_tets();
    let (ua, ra) = unites_and_rest(&a.script)?;
    let (ub, rb) = unites_and_rest(&b.script)?;
    let mut script = MoveScript::new(Mode::Mogami, Pseudomanifold::disjoint(na + b.complex.num_tets()));
    let cross = |&(fa, fb, corr): &InterfacePair| GlueSpec {
        a: fa,
        b: FacetRef::new(fb.tet + na, fb.face),
        corr,
    };
    script.steps.extend(ua.into_iter().map(Step::Unite));
    script.steps.extend(ub.into_iter().map(|g| Step::Unite(shift(g, na))));
    script.steps.push(Step::Unite(cross(&iface[0])));
    script.steps.extend(ra);
    script.steps.extend(rb.into_iter().map(|s| match s {
        Step::Glue(g) => Step::Glue(shift(g, na)),
        other => other,
    }));
    script.steps.extend(iface[1..].iter().map(|x| Step::Glue(cross(x))));
    let (complex, _) = script.replay()?;
    let labels = a.labels.iter().chain(&b.labels).cloned().collect();
    Ok(Built {
        complex,
        script,
        labels,
    })
}

/// A random fold-built ball: a random tree of `n` tetrahedra followed by up
/// to `folds` random folds, skipping any fold that would break simpliciality.
pub fn random_fold_ball(n: usize, folds: usize, rng: &mut impl Rng) -> Built {
    let tree = tree_of_tetrahedra(&TreeSpec::random(n, rng)).expect("random tree spec is valid");
    let mut script = tree.script;
    let mut p = tree.complex;
    for _ in 0..folds {
        let bd: Vec<FacetRef> = p.boundary_facets().collect();
        let mut cands = Vec::new();
        for (i, &f1) in bd.iter().enumerate() {
            for &f2 in &bd[i + 1..] {
                if moves::shared_edges(&p, f1, f2).len() == 1
                    && moves::classify_gluing(&p, f1, f2) == Ok(moves::GluingKind::Fold)
                {
                    cands.push((f1, f2));
                }
            }
        }
        let mut pushed = false;
        while !cands.is_empty() {
            let (f1, f2) = cands.swap_remove(rng.gen_range(0..cands.len()));
            let corr = match moves::edge_compatible_corrs(&p, f1, f2).as_slice() {
                [c] => *c,
                _ => continue,
            };
            let q = moves::glue(&p, f1, f2, corr).expect("boundary facets");
            if q.is_simplicial() {
                script.steps.push(Step::Glue(GlueSpec { a: f1, b: f2, corr }));
                p = q;
                pushed = true;
                break;
            }
        }
        if !pushed {
            break;
        }
    }
    let labels = class_labels(&p);
    Built {
        complex: p,
        script,
        labels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees() {
        let one = tree_of_tetrahedra(&TreeSpec::path(1)).unwrap();
        assert_eq!(one.complex, Pseudomanifold::tetrahedron());
        let path = tree_of_tetrahedra(&TreeSpec::path(3)).unwrap();
        assert_eq!(path.complex.num_pairings(), 2);
        let mut deg = [0; 3];
        for (a, b) in path.complex.dual_graph() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.sort();
        assert_eq!(deg, [1, 1, 2]);
        let p4 = tree_of_tetrahedra(&TreeSpec::path(4)).unwrap();
        let s4 = tree_of_tetrahedra(&TreeSpec::star(4)).unwrap();
        assert_ne!(p4.complex.signature(), s4.complex.signature());
        let mut bad = TreeSpec::star(3);
        bad.nodes[1].facet = 0;
        assert_eq!(
            tree_of_tetrahedra(&bad).unwrap_err(),
            BuildError::FacetReuse { tet: 0, face: 0 }
        );
    }

    #[test]
    fn tree_spec_text() {
        let s = TreeSpec::parse("0 3 1230\n1 3 1230\n").unwrap();
        assert_eq!(s, TreeSpec::path(3));
        assert!(TreeSpec::parse("0 4 0123\n").is_err());
        assert!(TreeSpec::parse("0 1 0113\n").is_err());
    }

    #[test]
    fn cone_over_two_triangles_is_a_tree() {
        let a = Complex2Pseudo::from_named(&[["a", "b", "c"], ["b", "c", "d"]]).unwrap();
        let c = cone(&a, "v").unwrap();
        assert_eq!(c.complex.num_tets(), 2);
        assert_eq!(c.complex.num_pairings(), 1);
        assert!(c.script.steps.iter().all(|s| matches!(s, Step::Unite(_))));
        let two = Complex2Pseudo::from_named(&[["a", "b", "c"], ["d", "e", "f"]]).unwrap();
        assert_eq!(cone(&two, "v").unwrap_err(), BuildError::NotStronglyConnected);
        let fin = Complex2Pseudo::from_named(&[["a", "b", "c"], ["a", "b", "d"], ["a", "b", "e"]]);
        assert!(matches!(fin, Err(BuildError::BadSurface(_))));
    }

    #[test]
    fn single_triangle_interface_is_a_unite() {
        let a = tree_of_tetrahedra(&TreeSpec::path(2)).unwrap();
        let b = tree_of_tetrahedra(&TreeSpec::path(1)).unwrap();
        let u = union_mogami(&a, &b, &[(FacetRef::new(0, 0), FacetRef::new(0, 1), [0, 2, 3])]).unwrap();
        assert_eq!(u.complex.num_tets(), 3);
        assert!(u.script.steps.iter().all(|s| matches!(s, Step::Unite(_))));
        assert!(u.complex.strongly_connected());
    }

    #[test]
    fn random_balls_are_simplicial() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let b = random_fold_ball(5, 4, &mut rng);
            assert!(b.complex.is_simplicial());
            let (q, _) = b.script.replay().unwrap();
            assert_eq!(q, b.complex);
        }
    }
}
