//! Test-only oracles, independent of the canonical signature code.

#![allow(dead_code)]

use mogami_core::builders::random_fold_ball;
use mogami_core::{FacetRef, Perm4, Pseudomanifold};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Isomorphism by brute force: try every image of tetrahedron 0 with every
/// corner labeling and propagate along gluings. Connected complexes only.
pub fn isomorphic_oracle(a: &Pseudomanifold, b: &Pseudomanifold) -> bool {
    let n = a.num_tets();
    if n != b.num_tets() || a.num_pairings() != b.num_pairings() {
        return false;
    }
    if n == 0 {
        return true;
    }
    assert!(
        a.strongly_connected() && b.strongly_connected(),
        "oracle needs connected inputs"
    );
    (0..n).any(|t0| Perm4::all().any(|s0| try_map(a, b, t0, s0)))
}

fn try_map(a: &Pseudomanifold, b: &Pseudomanifold, t0: usize, s0: Perm4) -> bool {
    let n = a.num_tets();
    let mut tet: Vec<Option<usize>> = vec![None; n];
    let mut perm = vec![Perm4::IDENTITY; n];
    let mut used = vec![false; n];
    tet[0] = Some(t0);
    perm[0] = s0;
    used[t0] = true;
    let mut stack = vec![0];
    while let Some(t) = stack.pop() {
        let (bt, pt) = (tet[t].unwrap(), perm[t]);
        for f in 0..4u8 {
            let ga = a.gluing(FacetRef::new(t, f));
            let gb = b.gluing(FacetRef::new(bt, pt.apply(f as usize) as u8));
            match (ga, gb) {
                (None, None) => {}
                (Some(ga), Some(gb)) => {
                    // pi_u = h o pi_t o g^-1
                    let want = gb.perm.compose(pt).compose(ga.perm.inverse());
                    match tet[ga.tet] {
                        None => {
                            if used[gb.tet] {
                                return false;
                            }
                            used[gb.tet] = true;
                            tet[ga.tet] = Some(gb.tet);
                            perm[ga.tet] = want;
                            stack.push(ga.tet);
                        }
                        Some(u) => {
                            if u != gb.tet || perm[ga.tet] != want {
                                return false;
                            }
                        }
                    }
                }
                _ => return false,
            }
        }
    }
    tet.iter().all(Option::is_some)
}

/// A random fold-built ball, reproducible from `seed`.
pub fn ball(seed: u64, max_tets: usize) -> Pseudomanifold {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_tets);
    let folds = rng.gen_range(0..=n);
    random_fold_ball(n, folds, &mut rng).complex
}

/// Relabel `p` by a random tetrahedron permutation and random corner labelings.
pub fn scramble(p: &Pseudomanifold, seed: u64) -> Pseudomanifold {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tets: Vec<usize> = (0..p.num_tets()).collect();
    tets.shuffle(&mut rng);
    let corners: Vec<Perm4> = (0..p.num_tets())
        .map(|_| Perm4::from_index(rng.gen_range(0..24)))
        .collect();
    p.relabeled(&tets, &corners)
}
