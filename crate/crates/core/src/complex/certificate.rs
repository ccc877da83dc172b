use super::boundary::LinkShape;
use super::{ComplexError, Pseudomanifold};
use crate::reduction;
use crate::script::MoveScript;
use std::fmt;

/// Why a complex is certainly not a (simplicial) 3-ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// The dual graph is disconnected (or there are no tetrahedra).
    Disconnected,
    EmptyBoundary,
    /// The boundary has this many connected components.
    BoundaryDisconnected(usize),
    /// The boundary has this many edges lying in a single boundary triangle.
    BoundaryNotClosed(usize),
    BoundaryEuler(i64),
    /// The boundary-link of this vertex is not a single cycle.
    SingularBoundaryVertex(usize),
    /// The link of this vertex is neither a disk nor a sphere.
    BadVertexLink(usize),
    EulerCharacteristic(i64),
    Homology {
        betti: [usize; 4],
        torsion: bool,
    },
    ReversedEdge,
    NotSimplicial,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::Disconnected => write!(f, "dual graph disconnected"),
            Refutation::EmptyBoundary => write!(f, "empty boundary"),
            Refutation::BoundaryDisconnected(k) => write!(f, "boundary has {k} components"),
            Refutation::BoundaryNotClosed(k) => write!(f, "boundary has {k} free edges"),
            Refutation::BoundaryEuler(x) => write!(f, "boundary euler characteristic {x}"),
            Refutation::SingularBoundaryVertex(v) => write!(f, "singular boundary vertex {v}"),
            Refutation::BadVertexLink(v) => write!(f, "link of vertex {v} is not a disk or sphere"),
            Refutation::EulerCharacteristic(x) => write!(f, "euler characteristic {x}"),
            Refutation::Homology { betti, torsion } => {
                write!(f, "betti numbers {betti:?}")?;
                if *torsion {
                    write!(f, " with torsion")?;
                }
                Ok(())
            }
            Refutation::ReversedEdge => write!(f, "edge identified with itself reversed"),
            Refutation::NotSimplicial => write!(f, "not a simplicial complex"),
        }
    }
}

/// How a certificate was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateBasis {
    /// A supplied script builds the complex from a tree using folds only.
    Provenance,
    /// Reduction ends in single tetrahedra and the reversed trace uses folds only.
    Reduction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BallCertificate {
    Certified(CertificateBasis),
    Refuted(Vec<Refutation>),
    Unknown,
}

impl BallCertificate {
    pub fn name(&self) -> &'static str {
        match self {
            BallCertificate::Certified(_) => "Certified",
            BallCertificate::Refuted(_) => "Refuted",
            BallCertificate::Unknown => "Unknown",
        }
    }
}

impl Pseudomanifold {
    /// Every computable invariant that rules out a simplicial 3-ball.
    pub fn ball_refutations(&self) -> Vec<Refutation> {
        let mut out = Vec::new();
        if !self.strongly_connected() {
            out.push(Refutation::Disconnected);
        }
        let bd = self.boundary();
        if bd.triangles.is_empty() {
            out.push(Refutation::EmptyBoundary);
        } else {
            let k = bd.num_components();
            if k != 1 {
                out.push(Refutation::BoundaryDisconnected(k));
            }
            let free = bd.free_edges().len();
            if free > 0 {
                out.push(Refutation::BoundaryNotClosed(free));
            }
            if bd.euler_characteristic() != 2 {
                out.push(Refutation::BoundaryEuler(bd.euler_characteristic()));
            }
            for v in self.singular_boundary_vertices() {
                out.push(Refutation::SingularBoundaryVertex(v));
            }
        }
        for v in 0..self.num_vertices() {
            let want = if self.is_boundary_vertex(v) {
                LinkShape::Disk
            } else {
                LinkShape::Sphere
            };
            if self.link_shape(v) != want {
                out.push(Refutation::BadVertexLink(v));
            }
        }
        if self.euler_characteristic() != 1 {
            out.push(Refutation::EulerCharacteristic(self.euler_characteristic()));
        }
        match self.homology() {
            Ok(h) => {
                if h.betti != [1, 0, 0, 0] || h.has_torsion() {
                    out.push(Refutation::Homology {
                        betti: h.betti,
                        torsion: h.has_torsion(),
                    });
                }
            }
            Err(ComplexError::ReversedEdge) => out.push(Refutation::ReversedEdge),
            Err(_) => {}
        }
        if !self.is_simplicial() {
            out.push(Refutation::NotSimplicial);
        }
        out
    }

    /// Certify, refute, or give up on the claim that this is a simplicial 3-ball.
    ///
    /// Refutations are checked first. Otherwise the complex is certified when
    /// reduction ends in single tetrahedra and the reversed trace rebuilds it
    /// from a tree with folds only (folding a ball yields a ball).
    pub fn ball_certificate(&self) -> BallCertificate {
        let refs = self.ball_refutations();
        if !refs.is_empty() {
            return BallCertificate::Refuted(refs);
        }
        let d = reduction::reduce_to_nuclei(self);
        match reduction::lc_script_from(self, &d) {
            Ok(script) if reduction::is_fold_only(&script).is_some() => {
                BallCertificate::Certified(CertificateBasis::Reduction)
            }
            _ => BallCertificate::Unknown,
        }
    }

    /// Like [`Pseudomanifold::ball_certificate`], but first accept a
    /// construction script that builds this complex with unites and folds only.
    pub fn ball_certificate_with(&self, provenance: &MoveScript) -> BallCertificate {
        let refs = self.ball_refutations();
        if !refs.is_empty() {
            return BallCertificate::Refuted(refs);
        }
        let init = &provenance.initial;
        let starts_from_tets =
            init.num_pairings() == 0 || (init.strongly_connected() && init.num_pairings() + 1 == init.num_tets());
        if starts_from_tets {
            if let Some(q) = reduction::is_fold_only(provenance) {
                if q.isomorphic(self) {
                    return BallCertificate::Certified(CertificateBasis::Provenance);
                }
            }
        }
        self.ball_certificate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{FacetRef, Pairing};

    #[test]
    fn tetrahedron_and_tree_certified() {
        assert_eq!(
            Pseudomanifold::tetrahedron().ball_certificate(),
            BallCertificate::Certified(CertificateBasis::Reduction)
        );
        let t = Pseudomanifold::build(
            2,
            [Pairing::new(FacetRef::new(0, 0), FacetRef::new(1, 3), [0, 1, 2]).unwrap()],
        )
        .unwrap();
        assert!(t.ball_refutations().is_empty());
        assert!(matches!(t.ball_certificate(), BallCertificate::Certified(_)));
    }

    #[test]
    fn disjoint_refuted() {
        match Pseudomanifold::disjoint(2).ball_certificate() {
            BallCertificate::Refuted(r) => assert!(r.contains(&Refutation::Disconnected)),
            other => panic!("{other:?}"),
        }
    }
}
