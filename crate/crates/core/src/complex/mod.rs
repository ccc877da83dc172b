//! Facet-pairing representation of 3-dimensional pseudomanifolds.
//!
//! A [`Pseudomanifold`] is a number of abstract tetrahedra together with an
//! involutive pairing of some of their facets. Every pairing carries an
//! explicit bijection between the corners of the two facets, and all
//! vertex, edge and triangle identifications are derived from the pairings
//! by union-find closure. Nothing here assumes the result is a simplicial
//! complex: two faces may share all their vertices, an edge may have both
//! endpoints in one vertex class, and a facet may be paired with another
//! facet of the same tetrahedron.

mod boundary;
mod certificate;
mod classes;
mod homology;
mod signature;
mod simplicial;

pub use boundary::{BoundaryComplex, BoundaryTriangle, LinkComponent, LinkKind, VertexLink};
pub use certificate::{BallCertificate, CertificateBasis, Refutation};
pub use classes::Classes;
pub use homology::Homology;
pub use signature::Signature;
pub use simplicial::{SimplicialReport, SimplicialViolation};

use crate::perm::{face_corners, Perm4};
use crate::union_find::UnionFind;
use std::fmt;
use thiserror::Error;

/// Errors raised while building or querying a complex.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facet {0} occurs in more than one pairing")]
    DuplicateFacet(FacetRef),
    #[error("facet {0} is paired with itself")]
    SelfPairedFacet(FacetRef),
    #[error("corner correspondence {corr:?} is not a bijection onto face {target}")]
    BadCorr { corr: [u8; 3], target: FacetRef },
    #[error("facet {0} refers to a tetrahedron or face out of range")]
    OutOfRange(FacetRef),
    #[error("vertex class {0} is not on the boundary")]
    InteriorVertex(usize),
    #[error("no such {dim}-dimensional face class: {id}")]
    NoSuchClass { dim: usize, id: usize },
    #[error("an edge class is identified with itself reversed; cellular homology is undefined")]
    ReversedEdge,
    #[error("malformed signature: {0}")]
    BadSignature(String),
}

/// A corner (vertex occurrence) of a tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CornerRef {
    pub tet: usize,
    pub corner: u8,
}

/// Face `face` of tetrahedron `tet`: the triangle omitting corner `face`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetRef {
    pub tet: usize,
    pub face: u8,
}

impl FacetRef {
    pub fn new(tet: usize, face: u8) -> Self {
        FacetRef { tet, face }
    }

    /// The corners of this facet in increasing order.
    pub fn corners(self) -> [usize; 3] {
        face_corners(self.face as usize)
    }
}

impl fmt::Display for FacetRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tet, self.face)
    }
}

/// A sub-face of one tetrahedron, as it appears inside a [`FaceClass`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubFace {
    Corner(CornerRef),
    Edge { tet: usize, corners: [u8; 2] },
    Facet(FacetRef),
}

/// One identification of two facets.
///
/// `perm` maps corners of `a.tet` to corners of `b.tet`, sending the corners
/// of `a` onto those of `b` and `a.face` to `b.face`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pairing {
    pub a: FacetRef,
    pub b: FacetRef,
    perm: Perm4,
}

impl Pairing {
    /// `corr` lists the images of the corners of `a` (in increasing order)
    /// among the corners of `b`.
    pub fn new(a: FacetRef, b: FacetRef, corr: [u8; 3]) -> Result<Self, ComplexError> {
        if a.face > 3 {
            return Err(ComplexError::OutOfRange(a));
        }
        if b.face > 3 {
            return Err(ComplexError::OutOfRange(b));
        }
        if a == b {
            return Err(ComplexError::SelfPairedFacet(a));
        }
        let mut images = [0u8; 4];
        let mut used = [false; 4];
        for (&c, &img) in a.corners().iter().zip(corr.iter()) {
            if img > 3 || img == b.face || used[img as usize] {
                return Err(ComplexError::BadCorr { corr, target: b });
            }
            used[img as usize] = true;
            images[c] = img;
        }
        images[a.face as usize] = b.face;
        let perm = Perm4::new(images).ok_or(ComplexError::BadCorr { corr, target: b })?;
        Ok(Pairing { a, b, perm })
    }

    /// Build from a full corner permutation; `perm[a.face]` must equal `b.face`.
    pub fn from_perm(a: FacetRef, b: FacetRef, perm: Perm4) -> Result<Self, ComplexError> {
        if a == b {
            return Err(ComplexError::SelfPairedFacet(a));
        }
        if perm.apply(a.face as usize) != b.face as usize || a.face > 3 || b.face > 3 {
            return Err(ComplexError::BadCorr {
                corr: Self::triple(a, perm),
                target: b,
            });
        }
        Ok(Pairing { a, b, perm })
    }

    fn triple(a: FacetRef, perm: Perm4) -> [u8; 3] {
        let c = a.corners();
        [perm.apply(c[0]) as u8, perm.apply(c[1]) as u8, perm.apply(c[2]) as u8]
    }

    pub fn perm(&self) -> Perm4 {
        self.perm
    }

    /// Images of the corners of `a`, in increasing order.
    pub fn corr(&self) -> [u8; 3] {
        Self::triple(self.a, self.perm)
    }

    /// The same identification seen from `b`.
    pub fn reversed(&self) -> Pairing {
        Pairing {
            a: self.b,
            b: self.a,
            perm: self.perm.inverse(),
        }
    }

    /// Orient so that `a < b`.
    pub fn normalized(&self) -> Pairing {
        if self.a <= self.b {
            *self
        } else {
            self.reversed()
        }
    }

    pub fn contains(&self, f: FacetRef) -> bool {
        self.a == f || self.b == f
    }
}

/// What a facet is glued to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub face: u8,
    /// Corners of the owning tetrahedron to corners of `tet`.
    pub perm: Perm4,
}

/// Kinds of faces that carry classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaceDim {
    Vertex = 0,
    Edge = 1,
    Triangle = 2,
}

/// An equivalence class of tetrahedron sub-faces under the pairing closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceClass {
    pub dim: usize,
    pub id: usize,
    pub members: Vec<SubFace>,
    pub boundary: bool,
}

/// An immutable triangulated 3-pseudomanifold.
#[derive(Clone)]
pub struct Pseudomanifold {
    num_tets: usize,
    adj: Vec<[Option<Gluing>; 4]>,
    pairings: Vec<Pairing>,
    classes: Classes,
}

impl fmt::Debug for Pseudomanifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Pseudomanifold")
            .field("num_tets", &self.num_tets)
            .field("pairings", &self.pairings)
            .finish()
    }
}

impl PartialEq for Pseudomanifold {
    fn eq(&self, other: &Self) -> bool {
        self.num_tets == other.num_tets && self.pairings == other.pairings
    }
}

impl Eq for Pseudomanifold {}

impl Pseudomanifold {
    /// Build a complex and compute all of its face classes.
    pub fn build(num_tets: usize, pairings: impl IntoIterator<Item = Pairing>) -> Result<Self, ComplexError> {
        let mut adj: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; num_tets];
        let mut list = Vec::new();
        for p in pairings {
            for f in [p.a, p.b] {
                if f.tet >= num_tets || f.face > 3 {
                    return Err(ComplexError::OutOfRange(f));
                }
            }
            if p.a == p.b {
                return Err(ComplexError::SelfPairedFacet(p.a));
            }
            for (from, to, perm) in [(p.a, p.b, p.perm), (p.b, p.a, p.perm.inverse())] {
                let slot = &mut adj[from.tet][from.face as usize];
                if slot.is_some() {
                    return Err(ComplexError::DuplicateFacet(from));
                }
                *slot = Some(Gluing {
                    tet: to.tet,
                    face: to.face,
                    perm,
                });
            }
            list.push(p.normalized());
        }
        list.sort_by_key(|p| p.a);
        let classes = Classes::compute(num_tets, &adj);
        Ok(Pseudomanifold {
            num_tets,
            adj,
            pairings: list,
            classes,
        })
    }

    /// `n` disjoint tetrahedra.
    pub fn disjoint(n: usize) -> Self {
        Self::build(n, std::iter::empty()).expect("no pairings")
    }

    pub fn tetrahedron() -> Self {
        Self::disjoint(1)
    }

    pub fn num_tets(&self) -> usize {
        self.num_tets
    }

    /// Pairings, each oriented with `a < b`, sorted by `a`.
    pub fn pairings(&self) -> &[Pairing] {
        &self.pairings
    }

    pub fn num_pairings(&self) -> usize {
        self.pairings.len()
    }

    pub fn gluing(&self, f: FacetRef) -> Option<Gluing> {
        self.adj.get(f.tet).and_then(|a| a[f.face as usize])
    }

    pub fn is_boundary_facet(&self, f: FacetRef) -> bool {
        f.tet < self.num_tets && f.face < 4 && self.adj[f.tet][f.face as usize].is_none()
    }

    /// The pairing containing `f`, oriented from `f`.
    pub fn pairing_at(&self, f: FacetRef) -> Option<Pairing> {
        self.gluing(f).map(|g| Pairing {
            a: f,
            b: FacetRef::new(g.tet, g.face),
            perm: g.perm,
        })
    }

    pub fn classes(&self) -> &Classes {
        &self.classes
    }

    /// A new complex with one more pairing.
    pub fn with_pairing(&self, p: Pairing) -> Result<Self, ComplexError> {
        Self::build(self.num_tets, self.pairings.iter().copied().chain(std::iter::once(p)))
    }

    /// A new complex without the pairing that contains `f` (if any).
    pub fn without_pairing_at(&self, f: FacetRef) -> Self {
        Self::build(self.num_tets, self.pairings.iter().copied().filter(|p| !p.contains(f)))
            .expect("subset of a valid pairing set")
    }

    /// Disjoint union; the tetrahedra of `other` are shifted by `self.num_tets()`.
    pub fn disjoint_union(&self, other: &Pseudomanifold) -> Self {
        let shift = self.num_tets;
        let moved = other.pairings.iter().map(|p| Pairing {
            a: FacetRef::new(p.a.tet + shift, p.a.face),
            b: FacetRef::new(p.b.tet + shift, p.b.face),
            perm: p.perm,
        });
        Self::build(
            self.num_tets + other.num_tets,
            self.pairings.iter().copied().chain(moved),
        )
        .expect("disjoint pairings stay valid")
    }

    /// Renumber tetrahedra by `tet_map` and corners of tetrahedron `t` by `corner_maps[t]`.
    pub fn relabeled(&self, tet_map: &[usize], corner_maps: &[Perm4]) -> Self {
        let moved = self.pairings.iter().map(|p| {
            let (sa, sb) = (corner_maps[p.a.tet], corner_maps[p.b.tet]);
            Pairing {
                a: FacetRef::new(tet_map[p.a.tet], sa.apply(p.a.face as usize) as u8),
                b: FacetRef::new(tet_map[p.b.tet], sb.apply(p.b.face as usize) as u8),
                perm: sb.compose(p.perm).compose(sa.inverse()),
            }
        });
        Self::build(self.num_tets, moved).expect("relabeling preserves validity")
    }

    /// Extract the tetrahedra in `tets` (renumbered in the given order) with
    /// the pairings among them.
    pub fn subcomplex(&self, tets: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.num_tets];
        for (i, &t) in tets.iter().enumerate() {
            index[t] = i;
        }
        let moved = self
            .pairings
            .iter()
            .filter(|p| index[p.a.tet] != usize::MAX && index[p.b.tet] != usize::MAX)
            .map(|p| Pairing {
                a: FacetRef::new(index[p.a.tet], p.a.face),
                b: FacetRef::new(index[p.b.tet], p.b.face),
                perm: p.perm,
            });
        Self::build(tets.len(), moved).expect("restriction of a valid pairing set")
    }

    // ----- face classes -------------------------------------------------

    pub fn num_vertices(&self) -> usize {
        self.classes.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.classes.num_edges
    }

    pub fn num_triangles(&self) -> usize {
        self.classes.num_triangles
    }

    pub fn vertex_of(&self, c: CornerRef) -> usize {
        self.classes.vertex_of[c.tet * 4 + c.corner as usize]
    }

    pub fn edge_of(&self, tet: usize, i: usize, j: usize) -> usize {
        self.classes.edge_of[tet * 6 + crate::perm::edge_index(i, j)]
    }

    pub fn triangle_of(&self, f: FacetRef) -> usize {
        self.classes.tri_of[f.tet * 4 + f.face as usize]
    }

    /// Vertex classes of the corners of a facet, in corner order.
    pub fn facet_vertices(&self, f: FacetRef) -> [usize; 3] {
        let c = f.corners();
        [0, 1, 2].map(|k| self.classes.vertex_of[f.tet * 4 + c[k]])
    }

    /// Edge classes of a facet; entry `k` is the edge opposite its `k`-th corner.
    pub fn facet_edges(&self, f: FacetRef) -> [usize; 3] {
        let c = f.corners();
        [
            self.edge_of(f.tet, c[1], c[2]),
            self.edge_of(f.tet, c[0], c[2]),
            self.edge_of(f.tet, c[0], c[1]),
        ]
    }

    pub fn tet_vertices(&self, tet: usize) -> [usize; 4] {
        [0, 1, 2, 3].map(|c| self.classes.vertex_of[tet * 4 + c])
    }

    /// Vertex classes at the two ends of edge class `e` (from its representative).
    pub fn edge_vertices(&self, e: usize) -> [usize; 2] {
        self.classes.edge_vertices[e]
    }

    /// Vertex classes of triangle class `t` (from its representative facet).
    pub fn triangle_vertices(&self, t: usize) -> [usize; 3] {
        self.facet_vertices(self.classes.tri_members[t][0])
    }

    pub fn triangle_edges(&self, t: usize) -> [usize; 3] {
        self.facet_edges(self.classes.tri_members[t][0])
    }

    /// The one or two facets forming triangle class `t`.
    pub fn triangle_facets(&self, t: usize) -> &[FacetRef] {
        &self.classes.tri_members[t]
    }

    pub fn is_boundary_triangle(&self, t: usize) -> bool {
        self.classes.tri_boundary[t]
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.classes.edge_boundary[e]
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.classes.vertex_boundary[v]
    }

    /// Interior triangle classes in canonical order.
    pub fn interior_triangles(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_triangles()).filter(move |&t| !self.classes.tri_boundary[t])
    }

    /// Partition of all sub-faces of dimension `dim` into classes, in canonical order.
    pub fn face_classes(&self, dim: FaceDim) -> Vec<FaceClass> {
        let c = &self.classes;
        match dim {
            FaceDim::Vertex => {
                let mut out: Vec<FaceClass> = (0..c.num_vertices)
                    .map(|id| FaceClass {
                        dim: 0,
                        id,
                        members: Vec::new(),
                        boundary: c.vertex_boundary[id],
                    })
                    .collect();
                for t in 0..self.num_tets {
                    for k in 0..4u8 {
                        let v = c.vertex_of[t * 4 + k as usize];
                        out[v].members.push(SubFace::Corner(CornerRef { tet: t, corner: k }));
                    }
                }
                out
            }
            FaceDim::Edge => {
                let mut out: Vec<FaceClass> = (0..c.num_edges)
                    .map(|id| FaceClass {
                        dim: 1,
                        id,
                        members: Vec::new(),
                        boundary: c.edge_boundary[id],
                    })
                    .collect();
                for t in 0..self.num_tets {
                    for (e, [i, j]) in crate::perm::EDGE_CORNERS.iter().enumerate() {
                        out[c.edge_of[t * 6 + e]].members.push(SubFace::Edge {
                            tet: t,
                            corners: [*i as u8, *j as u8],
                        });
                    }
                }
                out
            }
            FaceDim::Triangle => (0..c.num_triangles)
                .map(|id| FaceClass {
                    dim: 2,
                    id,
                    members: c.tri_members[id].iter().map(|&f| SubFace::Facet(f)).collect(),
                    boundary: c.tri_boundary[id],
                })
                .collect(),
        }
    }

    // ----- dual graph ---------------------------------------------------

    /// Dual multigraph: one node per tetrahedron, one arc per pairing
    /// (as `(tet_a, tet_b)`, in pairing order).
    pub fn dual_graph(&self) -> Vec<(usize, usize)> {
        self.pairings.iter().map(|p| (p.a.tet, p.b.tet)).collect()
    }

    /// Component index of each tetrahedron in the dual graph.
    pub fn component_of(&self, tet: usize) -> usize {
        self.classes.component_of[tet]
    }

    pub fn num_components(&self) -> usize {
        self.classes.num_components
    }

    /// Tetrahedra grouped by dual-graph component, in canonical order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes.num_components];
        for t in 0..self.num_tets {
            out[self.classes.component_of[t]].push(t);
        }
        out
    }

    /// Connectivity of the dual graph.
    pub fn strongly_connected(&self) -> bool {
        self.num_tets > 0 && self.classes.num_components == 1
    }

    /// Connectivity of the dual graph of the link of vertex class `v`.
    ///
    /// The link's triangles are the corners of tetrahedra lying in `v`; two
    /// are adjacent when the facets containing them are paired.
    pub fn link_strongly_connected(&self, v: usize) -> bool {
        let corners: Vec<(usize, usize)> = (0..self.num_tets)
            .flat_map(|t| (0..4).map(move |k| (t, k)))
            .filter(|&(t, k)| self.classes.vertex_of[t * 4 + k] == v)
            .collect();
        if corners.is_empty() {
            return false;
        }
        let index = |t: usize, k: usize| corners.iter().position(|&c| c == (t, k));
        let mut uf = UnionFind::new(corners.len());
        for (i, &(t, k)) in corners.iter().enumerate() {
            for f in 0..4 {
                if f == k {
                    continue;
                }
                if let Some(g) = self.adj[t][f] {
                    let j = index(g.tet, g.perm.apply(k)).expect("glued corner lies in the same class");
                    uf.union(i, j);
                }
            }
        }
        let r = uf.find(0);
        (1..corners.len()).all(|i| uf.find(i) == r)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_triangles() as i64 - self.num_tets as i64
    }

    /// Vertex classes lying in no boundary triangle.
    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices())
            .filter(|&v| !self.classes.vertex_boundary[v])
            .collect()
    }

    /// Interior edge classes whose endpoints are both boundary vertices.
    pub fn spanning_edges(&self) -> Vec<usize> {
        (0..self.num_edges())
            .filter(|&e| {
                !self.classes.edge_boundary[e]
                    && self.classes.edge_vertices[e]
                        .iter()
                        .all(|&v| self.classes.vertex_boundary[v])
            })
            .collect()
    }

    /// Boundary facets in (tet, face) order.
    pub fn boundary_facets(&self) -> impl Iterator<Item = FacetRef> + '_ {
        (0..self.num_tets).flat_map(move |t| {
            (0..4u8)
                .map(move |f| FacetRef::new(t, f))
                .filter(move |f| self.adj[f.tet][f.face as usize].is_none())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(t: usize, k: u8) -> FacetRef {
        FacetRef::new(t, k)
    }

    pub(crate) fn tree2() -> Pseudomanifold {
        Pseudomanifold::build(2, [Pairing::new(f(0, 0), f(1, 3), [0, 1, 2]).unwrap()]).unwrap()
    }

    #[test]
    fn single_tetrahedron_counts() {
        let t = Pseudomanifold::tetrahedron();
        assert_eq!(t.num_vertices(), 4);
        assert_eq!(t.num_edges(), 6);
        assert_eq!(t.num_triangles(), 4);
        assert!(t.face_classes(FaceDim::Vertex).iter().all(|c| c.boundary));
        assert_eq!(t.euler_characteristic(), 1);
    }

    #[test]
    fn two_tetrahedra_tree_counts() {
        let p = tree2();
        assert_eq!(p.num_vertices(), 5);
        assert_eq!(p.num_edges(), 9);
        assert_eq!(p.num_triangles(), 7);
        assert_eq!(p.interior_triangles().count(), 1);
        assert!(p.strongly_connected());
    }

    #[test]
    fn duplicate_facet_rejected() {
        let a = Pairing::new(f(0, 0), f(1, 0), [1, 2, 3]).unwrap();
        let b = Pairing::new(f(0, 0), f(1, 1), [0, 2, 3]).unwrap();
        assert_eq!(
            Pseudomanifold::build(2, [a, b]).unwrap_err(),
            ComplexError::DuplicateFacet(f(0, 0))
        );
    }

    #[test]
    fn self_paired_and_bad_corr_rejected() {
        assert_eq!(
            Pairing::new(f(0, 1), f(0, 1), [0, 2, 3]).unwrap_err(),
            ComplexError::SelfPairedFacet(f(0, 1))
        );
        // corner 0 is not a corner of face 0 of the target
        assert!(matches!(
            Pairing::new(f(0, 1), f(1, 0), [0, 2, 3]),
            Err(ComplexError::BadCorr { .. })
        ));
        assert!(matches!(
            Pairing::new(f(0, 1), f(1, 0), [1, 1, 3]),
            Err(ComplexError::BadCorr { .. })
        ));
    }

    #[test]
    fn same_tet_pairing_allowed() {
        let p = Pseudomanifold::build(1, [Pairing::new(f(0, 0), f(0, 1), [0, 2, 3]).unwrap()]).unwrap();
        assert_eq!(p.num_pairings(), 1);
        assert_eq!(p.num_triangles(), 3);
    }

    #[test]
    fn disjoint_tets_not_strongly_connected() {
        assert!(!Pseudomanifold::disjoint(2).strongly_connected());
    }

    #[test]
    fn pairing_counts_match_triangle_counts() {
        let p = tree2();
        let interior = p.interior_triangles().count();
        assert_eq!(interior, p.num_pairings());
        assert_eq!(p.num_triangles() - interior, 4 * p.num_tets() - 2 * p.num_pairings());
    }
}
