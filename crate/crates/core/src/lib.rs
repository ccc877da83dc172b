//! Triangulated 3-pseudomanifolds built by gluing tetrahedra, and the
//! machinery around locally constructible (LC) and Mogami complexes:
//! move scripts, nucleus reduction, cycle matchings, 2-complex collapses,
//! constructive builders and a resumable census.

// index loops read better in the matrix and gluing-table code
#![allow(clippy::needless_range_loop)]

pub mod builders;
pub mod census;
pub mod collapse;
pub mod complex;
pub mod fixtures;
pub mod format;
pub mod matching;
pub mod moves;
pub mod perm;
pub mod reduction;
pub mod script;
pub mod union_find;

pub use builders::{BuildError, Built, Complex2Pseudo, TreeSpec};
pub use census::{CensusClass, CensusError, CensusMode, CensusRecord, CensusStats, CensusStore};
pub use collapse::{CollapseError, Complex2, ElcMode, ElcOutcome};
pub use complex::{
    BallCertificate, BoundaryComplex, ComplexError, CornerRef, FaceClass, FaceDim, FacetRef, Homology, LinkKind,
    Pairing, Pseudomanifold, Refutation, Signature, SimplicialReport, SimplicialViolation, VertexLink,
};
pub use matching::{CycleGraph, MatchingError, PlanarMatching};
pub use moves::{GluingKind, MoveError, UngluingKind};
pub use perm::Perm4;
pub use reduction::{BallClass, NucleusDecomposition};
pub use script::{Mode, MoveScript, Step};
