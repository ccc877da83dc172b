//! Gluing and ungluing moves.
//!
//! Two boundary facets are compared through their derived face classes, not
//! through vertex labels: once folds have been applied the complex is
//! usually not simplicial, and only the classes say what is shared.

use crate::complex::{ComplexError, FacetRef, Pairing, Pseudomanifold};
use crate::perm::face_corners;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// What kind of gluing an identification of two boundary facets is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GluingKind {
    /// The facets lie in different components.
    Unite,
    /// Exactly one shared edge.
    Fold,
    /// All three edges shared.
    Lc,
    /// A shared vertex but no shared edge.
    Mogami,
    /// Exactly two shared edges (a wound).
    Healing,
    /// Same component, nothing shared.
    Other,
}

impl GluingKind {
    /// Fold, healing and the three-edge case all share at least one edge.
    pub fn is_lc(self) -> bool {
        matches!(self, GluingKind::Fold | GluingKind::Lc | GluingKind::Healing)
    }

    pub fn is_mogami(self) -> bool {
        self.is_lc() || self == GluingKind::Mogami
    }

    pub fn name(self) -> &'static str {
        match self {
            GluingKind::Unite => "UNITE",
            GluingKind::Fold => "FOLD",
            GluingKind::Lc => "LC",
            GluingKind::Mogami => "MOGAMI",
            GluingKind::Healing => "HEALING",
            GluingKind::Other => "OTHER",
        }
    }
}

impl fmt::Display for GluingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shape of an interior triangle as seen by the ungluing moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UngluingKind {
    /// All three edges on the boundary.
    Split,
    /// Exactly two edges on the boundary.
    Spread,
    Other,
}

impl UngluingKind {
    pub fn name(self) -> &'static str {
        match self {
            UngluingKind::Split => "SPLIT",
            UngluingKind::Spread => "SPREAD",
            UngluingKind::Other => "OTHER",
        }
    }
}

impl fmt::Display for UngluingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("facet {0} is not a boundary facet")]
    NotBoundary(FacetRef),
    #[error("cannot glue facet {0} to itself")]
    SameFacet(FacetRef),
    #[error("expected a {expected} move, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("the corner correspondence is not determined; pass it explicitly")]
    AmbiguousCorr,
    #[error("the two shared edges force incompatible corner correspondences")]
    NotHealable,
    #[error("the corner correspondence {0:?} does not fix a shared face")]
    IncompatibleCorr([u8; 3]),
    #[error("triangle {0} is not interior")]
    NotInterior(usize),
    #[error("no triangle class {0}")]
    NoSuchTriangle(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A gluing together with its classification at application time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GluingStep {
    pub f1: FacetRef,
    pub f2: FacetRef,
    pub corr: [u8; 3],
    pub kind: GluingKind,
}

/// An ungluing at an interior triangle class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UngluingStep {
    pub target: usize,
    pub kind: UngluingKind,
    /// The pairing that realized the triangle.
    pub removed: Pairing,
}

/// Two boundary facets sharing exactly two edge classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Wound {
    pub f1: FacetRef,
    pub f2: FacetRef,
    /// The correspondence fixing both shared edges, if the two agree.
    pub corr: Option<[u8; 3]>,
}

fn check_boundary(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef) -> Result<(), MoveError> {
    for f in [f1, f2] {
        if f.tet >= p.num_tets() || f.face > 3 {
            return Err(ComplexError::OutOfRange(f).into());
        }
        if !p.is_boundary_facet(f) {
            return Err(MoveError::NotBoundary(f));
        }
    }
    if f1 == f2 {
        return Err(MoveError::SameFacet(f1));
    }
    Ok(())
}

/// Edge classes shared by two facets.
pub fn shared_edges(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef) -> BTreeSet<usize> {
    let a: BTreeSet<usize> = p.facet_edges(f1).into_iter().collect();
    p.facet_edges(f2).into_iter().filter(|e| a.contains(e)).collect()
}

/// Vertex classes shared by two facets.
pub fn shared_vertices(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef) -> BTreeSet<usize> {
    let a: BTreeSet<usize> = p.facet_vertices(f1).into_iter().collect();
    p.facet_vertices(f2).into_iter().filter(|v| a.contains(v)).collect()
}

/// Classify the identification of two boundary facets.
pub fn classify_gluing(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef) -> Result<GluingKind, MoveError> {
    check_boundary(p, f1, f2)?;
    Ok(classify_unchecked(p, f1, f2))
}

pub(crate) fn classify_unchecked(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef) -> GluingKind {
    if p.component_of(f1.tet) != p.component_of(f2.tet) {
        return GluingKind::Unite;
    }
    match shared_edges(p, f1, f2).len() {
        3 => GluingKind::Lc,
        2 => GluingKind::Healing,
        1 => GluingKind::Fold,
        _ if !shared_vertices(p, f1, f2).is_empty() => GluingKind::Mogami,
        _ => GluingKind::Other,
    }
}

/// All six corner correspondences from `f1` to `f2`.
pub(crate) fn all_corrs(f2: FacetRef) -> impl Iterator<Item = [u8; 3]> {
    let c = face_corners(f2.face as usize).map(|x| x as u8);
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
        .into_iter()
        .map(move |[i, j, k]| [c[i], c[j], c[k]])
}

fn image(f1: FacetRef, corr: [u8; 3], corner: usize) -> usize {
    let pos = face_corners(f1.face as usize)
        .iter()
        .position(|&c| c == corner)
        .expect("corner of f1");
    corr[pos] as usize
}

/// Does `corr` carry some edge of `f1` in class `e` onto itself, end to end?
pub fn corr_fixes_edge(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef, corr: [u8; 3], e: usize) -> bool {
    let cls = p.classes();
    let c = face_corners(f1.face as usize);
    [(c[0], c[1]), (c[0], c[2]), (c[1], c[2])].into_iter().any(|(i, j)| {
        if p.edge_of(f1.tet, i, j) != e {
            return false;
        }
        let (k, l) = (image(f1, corr, i), image(f1, corr, j));
        cls.end_of(f1.tet, i, j) == cls.end_of(f2.tet, k, l) && cls.end_of(f1.tet, j, i) == cls.end_of(f2.tet, l, k)
    })
}

/// Does `corr` send some corner of `f1` to a corner of `f2` in the same vertex class?
pub fn corr_fixes_vertex(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef, corr: [u8; 3]) -> bool {
    face_corners(f1.face as usize).iter().zip(corr).any(|(&i, k)| {
        p.vertex_of(crate::complex::CornerRef {
            tet: f1.tet,
            corner: i as u8,
        }) == p.vertex_of(crate::complex::CornerRef { tet: f2.tet, corner: k })
    })
}

/// Correspondences fixing every shared edge class.
pub fn edge_compatible_corrs(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef) -> Vec<[u8; 3]> {
    let shared = shared_edges(p, f1, f2);
    all_corrs(f2)
        .filter(|&c| shared.iter().all(|&e| corr_fixes_edge(p, f1, f2, c, e)))
        .collect()
}

/// Correspondences fixing at least one shared vertex class.
pub fn vertex_compatible_corrs(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef) -> Vec<[u8; 3]> {
    all_corrs(f2).filter(|&c| corr_fixes_vertex(p, f1, f2, c)).collect()
}

/// Whether `corr` is a legitimate realization of a gluing of the given kind:
/// LC kinds must fix a shared edge (a healing both), a Mogami gluing a shared vertex.
pub fn corr_admissible(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef, corr: [u8; 3], kind: GluingKind) -> bool {
    let shared = shared_edges(p, f1, f2);
    match kind {
        GluingKind::Healing => shared.iter().all(|&e| corr_fixes_edge(p, f1, f2, corr, e)),
        GluingKind::Fold | GluingKind::Lc => shared.iter().any(|&e| corr_fixes_edge(p, f1, f2, corr, e)),
        GluingKind::Mogami => corr_fixes_vertex(p, f1, f2, corr),
        GluingKind::Unite | GluingKind::Other => true,
    }
}

/// Add a pairing between two boundary facets.
pub fn glue(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef, corr: [u8; 3]) -> Result<Pseudomanifold, MoveError> {
    check_boundary(p, f1, f2)?;
    Ok(p.with_pairing(Pairing::new(f1, f2, corr)?)?)
}

fn mismatch(expected: &'static str, found: GluingKind) -> MoveError {
    MoveError::KindMismatch {
        expected,
        found: found.name(),
    }
}

pub fn unite(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef, corr: [u8; 3]) -> Result<Pseudomanifold, MoveError> {
    let kind = classify_gluing(p, f1, f2)?;
    if kind != GluingKind::Unite {
        return Err(mismatch("UNITE", kind));
    }
    glue(p, f1, f2, corr)
}

fn derived_corr(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef) -> Result<[u8; 3], MoveError> {
    match edge_compatible_corrs(p, f1, f2).as_slice() {
        [c] => Ok(*c),
        [] => Err(MoveError::NotHealable),
        _ => Err(MoveError::AmbiguousCorr),
    }
}

/// Fold: glue two facets sharing exactly one edge, fixing that edge.
pub fn fold(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef) -> Result<Pseudomanifold, MoveError> {
    let kind = classify_gluing(p, f1, f2)?;
    if kind != GluingKind::Fold {
        return Err(mismatch("FOLD", kind));
    }
    let corr = derived_corr(p, f1, f2)?;
    glue(p, f1, f2, corr)
}

/// Any gluing of two facets sharing at least one edge, fixing the shared edges.
pub fn lc_glue(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef) -> Result<Pseudomanifold, MoveError> {
    let kind = classify_gluing(p, f1, f2)?;
    if !kind.is_lc() {
        return Err(mismatch("LC", kind));
    }
    let corr = derived_corr(p, f1, f2)?;
    glue(p, f1, f2, corr)
}

/// Heal a wound: the correspondence is forced by the two shared edges.
pub fn healing(p: &Pseudomanifold, f1: FacetRef, f2: FacetRef) -> Result<Pseudomanifold, MoveError> {
    let kind = classify_gluing(p, f1, f2)?;
    if kind != GluingKind::Healing {
        return Err(mismatch("HEALING", kind));
    }
    let corr = derived_corr(p, f1, f2)?;
    glue(p, f1, f2, corr)
}

/// Mogami gluing. With `corr = None` the correspondence is derived when it
/// is unique; a vertex-only intersection leaves two choices.
pub fn mogami_glue(
    p: &Pseudomanifold,
    f1: FacetRef,
    f2: FacetRef,
    corr: Option<[u8; 3]>,
) -> Result<Pseudomanifold, MoveError> {
    let kind = classify_gluing(p, f1, f2)?;
    if !kind.is_mogami() {
        return Err(mismatch("MOGAMI", kind));
    }
    let corr = match corr {
        Some(c) => {
            Pairing::new(f1, f2, c)?;
            if !corr_admissible(p, f1, f2, c, kind) {
                return Err(MoveError::IncompatibleCorr(c));
            }
            c
        }
        None if kind.is_lc() => derived_corr(p, f1, f2)?,
        None => match vertex_compatible_corrs(p, f1, f2).as_slice() {
            [c] => *c,
            _ => return Err(MoveError::AmbiguousCorr),
        },
    };
    glue(p, f1, f2, corr)
}

/// All wounds, each listed once with `f1 < f2`.
pub fn wounds(p: &Pseudomanifold) -> Vec<Wound> {
    let bd: Vec<FacetRef> = p.boundary_facets().collect();
    let mut out = Vec::new();
    for (i, &f1) in bd.iter().enumerate() {
        for &f2 in &bd[i + 1..] {
            if p.component_of(f1.tet) == p.component_of(f2.tet) && shared_edges(p, f1, f2).len() == 2 {
                let corr = match edge_compatible_corrs(p, f1, f2).as_slice() {
                    [c] => Some(*c),
                    _ => None,
                };
                out.push(Wound { f1, f2, corr });
            }
        }
    }
    out
}

/// How an interior triangle would be unglued.
pub fn ungluing_kind(p: &Pseudomanifold, t: usize) -> Result<UngluingKind, MoveError> {
    if t >= p.num_triangles() {
        return Err(MoveError::NoSuchTriangle(t));
    }
    if p.is_boundary_triangle(t) {
        return Err(MoveError::NotInterior(t));
    }
    let boundary_edges = p.triangle_edges(t).iter().filter(|&&e| p.is_boundary_edge(e)).count();
    Ok(match boundary_edges {
        3 => UngluingKind::Split,
        2 => UngluingKind::Spread,
        _ => UngluingKind::Other,
    })
}

/// Remove the pairing realizing interior triangle `t`.
pub fn unglue(p: &Pseudomanifold, t: usize) -> Result<(Pseudomanifold, UngluingStep), MoveError> {
    let kind = ungluing_kind(p, t)?;
    let f = p.triangle_facets(t)[0];
    let removed = p.pairing_at(f).expect("interior triangle has a pairing").normalized();
    Ok((
        p.without_pairing_at(f),
        UngluingStep {
            target: t,
            kind,
            removed,
        },
    ))
}

pub fn split(p: &Pseudomanifold, t: usize) -> Result<(Pseudomanifold, UngluingStep), MoveError> {
    let kind = ungluing_kind(p, t)?;
    if kind != UngluingKind::Split {
        return Err(MoveError::KindMismatch {
            expected: "SPLIT",
            found: kind.name(),
        });
    }
    unglue(p, t)
}

pub fn spread(p: &Pseudomanifold, t: usize) -> Result<(Pseudomanifold, UngluingStep), MoveError> {
    let kind = ungluing_kind(p, t)?;
    if kind != UngluingKind::Spread {
        return Err(MoveError::KindMismatch {
            expected: "SPREAD",
            found: kind.name(),
        });
    }
    unglue(p, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(t: usize, k: u8) -> FacetRef {
        FacetRef::new(t, k)
    }

    fn tree2() -> Pseudomanifold {
        // tet 0 = [a,b,c,d], tet 1 = [a,b,c,e] glued along abc
        Pseudomanifold::build(2, [Pairing::new(f(0, 3), f(1, 3), [0, 1, 2]).unwrap()]).unwrap()
    }

    #[test]
    fn unite_two_tets() {
        let p = Pseudomanifold::disjoint(2);
        assert_eq!(classify_gluing(&p, f(0, 0), f(1, 1)).unwrap(), GluingKind::Unite);
        let q = unite(&p, f(0, 0), f(1, 1), [0, 2, 3]).unwrap();
        assert!(q.strongly_connected());
        assert_eq!(q.num_triangles(), 7);
    }

    #[test]
    fn fold_on_two_tree() {
        let p = tree2();
        // abd (face 2 of tet 0) and abe (face 2 of tet 1) share edge ab
        assert_eq!(classify_gluing(&p, f(0, 2), f(1, 2)).unwrap(), GluingKind::Fold);
        let q = fold(&p, f(0, 2), f(1, 2)).unwrap();
        let t = q.triangle_of(f(0, 2));
        let interior = q.triangle_edges(t).iter().filter(|&&e| !q.is_boundary_edge(e)).count();
        assert_eq!(interior, 1);
        assert_eq!(ungluing_kind(&q, t).unwrap(), UngluingKind::Spread);
        let (back, step) = spread(&q, t).unwrap();
        assert_eq!(step.kind, UngluingKind::Spread);
        assert_eq!(back.signature(), p.signature());
        assert_eq!(q.spanning_edges().len(), 1);
    }

    #[test]
    fn errors() {
        let p = tree2();
        assert_eq!(
            glue(&p, f(0, 3), f(1, 0), [1, 2, 3]).unwrap_err(),
            MoveError::NotBoundary(f(0, 3))
        );
        assert_eq!(
            glue(&p, f(0, 1), f(0, 1), [0, 2, 3]).unwrap_err(),
            MoveError::SameFacet(f(0, 1))
        );
        let split_tri = p.triangle_of(f(0, 3));
        assert!(matches!(spread(&p, split_tri), Err(MoveError::KindMismatch { .. })));
        let (two, _) = split(&p, split_tri).unwrap();
        assert_eq!(two.num_components(), 2);
        assert_eq!(
            split(&p, p.triangle_of(f(0, 0))).unwrap_err(),
            MoveError::NotInterior(p.triangle_of(f(0, 0)))
        );
    }

    #[test]
    fn tree_has_no_wounds() {
        assert!(wounds(&tree2()).is_empty());
    }
}
