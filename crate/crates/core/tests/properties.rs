mod common;

use common::{ball, isomorphic_oracle, scramble};
use mogami_core::census::enumerate_trees;
use mogami_core::format::{parse_pair, write_pair};
use mogami_core::moves;
use mogami_core::perm::face_corners;
use mogami_core::{FacetRef, Perm4, Pseudomanifold, Signature};
use proptest::prelude::*;
use std::collections::BTreeSet;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_survives_relabeling(seed in any::<u64>(), shuffle in any::<u64>()) {
        let p = ball(seed, 7);
        let q = scramble(&p, shuffle);
        prop_assert_eq!(p.signature(), q.signature());
        prop_assert!(isomorphic_oracle(&p, &q));
    }

    #[test]
    fn signature_decodes_to_an_isomorphic_complex(seed in any::<u64>()) {
        let p = ball(seed, 7);
        let sig = p.signature();
        let (again, q) = Signature::parse(sig.as_str()).unwrap();
        prop_assert_eq!(&again, &sig);
        prop_assert!(isomorphic_oracle(&p, &q));
    }

    #[test]
    fn glue_then_unglue_is_identity(seed in any::<u64>(), pick in any::<prop::sample::Index>(), corr in 0usize..6) {
        let p = ball(seed, 6);
        let bd: Vec<_> = p.boundary_facets().collect();
        let pairs: Vec<_> = bd.iter().enumerate().flat_map(|(i, &a)| bd[i + 1..].iter().map(move |&b| (a, b))).collect();
        prop_assume!(!pairs.is_empty());
        let (a, b) = pairs[pick.index(pairs.len())];
        let c = mogami_core::perm::face_corners(b.face as usize);
        let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let corr = orders[corr].map(|i| c[i] as u8);
        let q = moves::glue(&p, a, b, corr).unwrap();
        prop_assert_eq!(q.num_pairings(), p.num_pairings() + 1);
        prop_assert_eq!(q.without_pairing_at(a), p);
    }

    #[test]
    fn pair_text_round_trips(seed in any::<u64>(), shuffle in any::<u64>()) {
        let p = scramble(&ball(seed, 8), shuffle);
        let text = write_pair(&p);
        let q = parse_pair(&text).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(write_pair(&q), text);
    }

    #[test]
    fn signature_separates_what_the_oracle_separates(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (p, q) = (ball(s1, 4), ball(s2, 4));
        prop_assume!(p.num_tets() == q.num_tets());
        prop_assert_eq!(p.signature() == q.signature(), isomorphic_oracle(&p, &q));
    }
}

/// Every way of attaching a leaf, no deduplication.
fn all_leaf_attachments(p: &Pseudomanifold) -> Vec<Pseudomanifold> {
    let n = p.num_tets();
    let big = p.disjoint_union(&Pseudomanifold::tetrahedron());
    let leaf = FacetRef::new(n, 3);
    let mut out = Vec::new();
    for f in p.boundary_facets() {
        for perm in Perm4::all().filter(|s| s.apply(f.face as usize) == 3) {
            let corr = face_corners(f.face as usize).map(|i| perm.apply(i) as u8);
            out.push(moves::glue(&big, f, leaf, corr).unwrap());
        }
    }
    out
}

#[test]
fn tree_counts_match_brute_force_with_oracle() {
    let mut level = vec![Pseudomanifold::tetrahedron()];
    for n in 2..=4 {
        level = level.iter().flat_map(all_leaf_attachments).collect();
        let mut reps: Vec<Pseudomanifold> = Vec::new();
        for p in &level {
            if !reps.iter().any(|r| isomorphic_oracle(r, p)) {
                reps.push(p.clone());
            }
        }
        let sigs = enumerate_trees(n);
        assert_eq!(reps.len(), sigs.len(), "n = {n}");
        let mine: BTreeSet<Signature> = reps.iter().map(Pseudomanifold::signature).collect();
        assert_eq!(mine, sigs);
    }
    assert_eq!(level.len(), 4 * 6 * 6 * 6 * 8 * 6);
}
