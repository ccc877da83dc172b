//! Nucleus reduction: cut a complex along interior triangles with at least
//! two boundary edges until none is left, then read off the pieces.
//!
//! Spreads (two boundary edges) always take priority over splits (three).
//! A split never turns another triangle into a spread, so the trace is a
//! run of spreads followed by a run of splits, and reversing it gives unites
//! that rebuild a tree followed by folds.

use crate::complex::{Pseudomanifold, Refutation, Signature};
use crate::moves::{self, UngluingKind, UngluingStep};
use crate::script::{GlueSpec, Mode, MoveScript, Step, StepKind};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone)]
pub struct NucleusDecomposition {
    /// Dual-graph components of the fully reduced complex, in canonical order.
    pub components: Vec<Pseudomanifold>,
    pub signatures: Vec<Signature>,
    /// Ungluings in the order applied; triangle ids refer to the complex at that step.
    pub trace: Vec<UngluingStep>,
    pub spreads: usize,
    pub splits: usize,
    /// The reduced complex, with the tetrahedron numbering of the input.
    pub residual: Pseudomanifold,
}

impl NucleusDecomposition {
    pub fn all_trivial(&self) -> bool {
        self.components.iter().all(is_trivial_nucleus)
    }

    pub fn nontrivial(&self) -> Vec<&Pseudomanifold> {
        self.components.iter().filter(|c| !is_trivial_nucleus(c)).collect()
    }

    /// Component signatures, sorted: the multiset compared by the confluence probe.
    pub fn signature_multiset(&self) -> Vec<Signature> {
        let mut s = self.signatures.clone();
        s.sort();
        s
    }
}

/// A lone tetrahedron with no self-gluings.
pub fn is_trivial_nucleus(p: &Pseudomanifold) -> bool {
    p.num_tets() == 1 && p.num_pairings() == 0
}

/// No interior vertices, and every interior triangle has at least two interior edges.
pub fn is_nucleus(p: &Pseudomanifold) -> bool {
    p.interior_vertices().is_empty()
        && p.interior_triangles().all(|t| {
            moves::ungluing_kind(p, t)
                .map(|k| k == UngluingKind::Other)
                .unwrap_or(false)
        })
}

fn candidates(p: &Pseudomanifold) -> (Vec<usize>, Vec<usize>) {
    let mut spreads = Vec::new();
    let mut splits = Vec::new();
    for t in p.interior_triangles() {
        match moves::ungluing_kind(p, t) {
            Ok(UngluingKind::Spread) => spreads.push(t),
            Ok(UngluingKind::Split) => splits.push(t),
            _ => {}
        }
    }
    (spreads, splits)
}

fn reduce_by(p: &Pseudomanifold, mut pick: impl FnMut(&[usize]) -> usize) -> NucleusDecomposition {
    let mut cur = p.clone();
    let mut trace = Vec::new();
    let (mut spreads, mut splits) = (0, 0);
    loop {
        let (sp, sl) = candidates(&cur);
        let t = if !sp.is_empty() {
            spreads += 1;
            pick(&sp)
        } else if !sl.is_empty() {
            splits += 1;
            pick(&sl)
        } else {
            break;
        };
        let (next, step) = moves::unglue(&cur, t).expect("candidate is interior");
        trace.push(step);
        cur = next;
    }
    let components: Vec<Pseudomanifold> = cur.components().iter().map(|c| cur.subcomplex(c)).collect();
    let signatures = components.iter().map(|c| c.signature()).collect();
    NucleusDecomposition {
        components,
        signatures,
        trace,
        spreads,
        splits,
        residual: cur,
    }
}

/// Greedy reduction with lowest-id tie-breaking; fully deterministic.
pub fn reduce_to_nuclei(p: &Pseudomanifold) -> NucleusDecomposition {
    reduce_by(p, |c| c[0])
}

/// Greedy reduction with random tie-breaking (spreads still before splits).
pub fn reduce_randomized(p: &Pseudomanifold, seed: u64) -> NucleusDecomposition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    reduce_by(p, |c| *c.choose(&mut rng).expect("nonempty"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BallClass {
    LcAndMogami,
    /// Nontrivial nuclei found; their signatures are the witnesses.
    NotMogami(Vec<Signature>),
    NotApplicable(String),
}

impl BallClass {
    pub fn name(&self) -> &'static str {
        match self {
            BallClass::LcAndMogami => "LC_and_Mogami",
            BallClass::NotMogami(_) => "Not_Mogami",
            BallClass::NotApplicable(_) => "NotApplicable",
        }
    }
}

/// Decide LC = Mogami for a ball without interior vertices by reduction.
pub fn classify_ball(p: &Pseudomanifold) -> BallClass {
    let iv = p.interior_vertices();
    if !iv.is_empty() {
        return BallClass::NotApplicable(format!("{} interior vertices", iv.len()));
    }
    let refs = p.ball_refutations();
    if !refs.is_empty() {
        let names: Vec<String> = refs.iter().map(Refutation::to_string).collect();
        return BallClass::NotApplicable(format!("not a ball: {}", names.join("; ")));
    }
    classify_reduced(&reduce_to_nuclei(p))
}

pub(crate) fn classify_reduced(d: &NucleusDecomposition) -> BallClass {
    if d.components.iter().any(|c| !c.interior_vertices().is_empty()) {
        return BallClass::NotApplicable("a reduced component has interior vertices".into());
    }
    if d.all_trivial() {
        BallClass::LcAndMogami
    } else {
        BallClass::NotMogami(d.nontrivial().iter().map(|c| c.signature()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("the complex does not reduce to a tree of tetrahedra: {0}")]
    NotLC(String),
}

impl ReductionError {
    pub fn token(&self) -> &'static str {
        "NotLC"
    }
}

/// Reverse a reduction trace into an LC script: splits become unites
/// building a tree, spreads become folds. Validated by replay.
pub fn lc_script_from_reduction(p: &Pseudomanifold) -> Result<MoveScript, ReductionError> {
    lc_script_from(p, &reduce_to_nuclei(p))
}

pub(crate) fn lc_script_from(p: &Pseudomanifold, d: &NucleusDecomposition) -> Result<MoveScript, ReductionError> {
    if !d.all_trivial() {
        return Err(ReductionError::NotLC(format!(
            "{} nontrivial nuclei",
            d.nontrivial().len()
        )));
    }
    let mut script = MoveScript::new(Mode::Lc, Pseudomanifold::disjoint(p.num_tets()));
    let spec = |s: &UngluingStep| GlueSpec {
        a: s.removed.a,
        b: s.removed.b,
        corr: s.removed.corr(),
    };
    for s in d.trace.iter().rev() {
        script.steps.push(match s.kind {
            UngluingKind::Split => Step::Unite(spec(s)),
            _ => Step::Glue(spec(s)),
        });
    }
    let (q, _) = script.replay().map_err(|e| ReductionError::NotLC(e.to_string()))?;
    if q != *p || q.signature() != p.signature() {
        return Err(ReductionError::NotLC("replay does not reproduce the input".into()));
    }
    Ok(script)
}

/// True when `script` replays in LC mode using only unites and folds.
pub(crate) fn is_fold_only(script: &MoveScript) -> Option<Pseudomanifold> {
    let (q, trace) = script.replay().ok()?;
    trace
        .iter()
        .all(|r| {
            matches!(
                r.kind,
                StepKind::Glue(crate::moves::GluingKind::Unite) | StepKind::Glue(crate::moves::GluingKind::Fold)
            )
        })
        .then_some(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Confluence {
    Consistent(Vec<Signature>),
    /// Two trials that disagree, with their seeds and nucleus multisets.
    Divergent {
        seeds: (u64, u64),
        nuclei: (Vec<Signature>, Vec<Signature>),
    },
}

/// Run `trials` randomized reductions and compare the nucleus multisets.
pub fn confluence_check(p: &Pseudomanifold, trials: usize, seed: u64) -> Confluence {
    let runs: Vec<(u64, Vec<Signature>)> = (0..trials.max(2) as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            (s, reduce_randomized(p, s).signature_multiset())
        })
        .collect();
    let (s0, first) = &runs[0];
    for (s, m) in &runs[1..] {
        if m != first {
            return Confluence::Divergent {
                seeds: (*s0, *s),
                nuclei: (first.clone(), m.clone()),
            };
        }
    }
    Confluence::Consistent(first.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{FacetRef, Pairing};

    fn f(t: usize, k: u8) -> FacetRef {
        FacetRef::new(t, k)
    }

    fn tree3() -> Pseudomanifold {
        Pseudomanifold::build(
            3,
            [
                Pairing::new(f(0, 0), f(1, 3), [0, 1, 2]).unwrap(),
                Pairing::new(f(1, 1), f(2, 2), [3, 1, 0]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn tree_reduces_to_tets() {
        let d = reduce_to_nuclei(&tree3());
        assert_eq!(d.components.len(), 3);
        assert!(d.all_trivial());
        assert_eq!((d.splits, d.spreads), (2, 0));
        assert_eq!(classify_ball(&tree3()), BallClass::LcAndMogami);
        let s = lc_script_from_reduction(&tree3()).unwrap();
        assert_eq!(s.steps.len(), 2);
        assert!(s.steps.iter().all(|s| matches!(s, Step::Unite(_))));
    }

    #[test]
    fn nucleus_predicate() {
        assert!(is_nucleus(&Pseudomanifold::tetrahedron()));
        assert!(!is_nucleus(&tree3()));
        let two = Pseudomanifold::build(2, [Pairing::new(f(0, 3), f(1, 3), [0, 1, 2]).unwrap()]).unwrap();
        let folded = moves::fold(&two, f(0, 2), f(1, 2)).unwrap();
        assert!(!is_nucleus(&folded));
        let d = reduce_to_nuclei(&folded);
        assert_eq!((d.spreads, d.splits), (1, 1));
        let s = lc_script_from_reduction(&folded).unwrap();
        assert!(matches!(s.steps[1], Step::Glue(_)));
    }

    #[test]
    fn confluence_on_tree() {
        assert!(matches!(confluence_check(&tree3(), 5, 1), Confluence::Consistent(_)));
        assert!(matches!(
            confluence_check(&Pseudomanifold::tetrahedron(), 2, 0),
            Confluence::Consistent(_)
        ));
    }
}
