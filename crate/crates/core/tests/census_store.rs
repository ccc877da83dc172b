use mogami_core::census::{census_stats, enumerate_balls_no_interior, CensusClass, CensusMode, CensusStore};
use mogami_core::moves;
use mogami_core::{FacetRef, Pseudomanifold, Signature};
use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

fn read(dir: &Path, f: &str) -> String {
    fs::read_to_string(dir.join(f)).unwrap()
}

fn straight(dir: &Path, n: usize, mode: CensusMode, batch: usize) {
    let mut s = CensusStore::create(dir, n, mode).unwrap();
    s.run(batch, 2, None).unwrap();
    assert!(s.is_complete());
}

#[test]
fn interrupted_run_resumes_to_the_same_store() {
    for (n, mode) in [(3, CensusMode::Lc), (5, CensusMode::Free)] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        straight(a.path(), n, mode, 2);

        let mut s = CensusStore::create(b.path(), n, mode).unwrap();
        s.run(2, 3, Some(1)).unwrap();
        assert!(!s.is_complete());
        drop(s);
        // a crash after appending but before the frontier checkpoint
        let mut log = read(b.path(), "log.tsv");
        let first = log.lines().next().unwrap().to_string();
        log.push_str(&first);
        log.push('\n');
        fs::write(b.path().join("log.tsv"), log).unwrap();

        let mut s = CensusStore::open(b.path()).unwrap();
        s.run(2, 1, None).unwrap();
        assert_eq!(read(a.path(), "log.tsv"), read(b.path(), "log.tsv"));
        assert_eq!(read(a.path(), "frontier.tsv"), read(b.path(), "frontier.tsv"));
        assert_eq!(census_stats(a.path()).unwrap(), census_stats(b.path()).unwrap());
    }
}

#[test]
fn thread_count_does_not_change_the_store() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let mut s = CensusStore::create(a.path(), 5, CensusMode::Lc).unwrap();
    s.run(3, 1, None).unwrap();
    let mut s = CensusStore::create(b.path(), 5, CensusMode::Lc).unwrap();
    s.run(3, 4, None).unwrap();
    assert_eq!(read(a.path(), "log.tsv"), read(b.path(), "log.tsv"));
}

#[test]
fn edited_log_is_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    straight(dir.path(), 4, CensusMode::Lc, 64);
    let log = read(dir.path(), "log.tsv");
    let lines: Vec<&str> = log.lines().collect();

    let swap_class = log.replacen("LC_and_Mogami", "Not_Mogami", 1);
    let dropped_line: String = lines[1..].iter().map(|l| format!("{l}\n")).collect();
    let dup = format!("{}\n{log}", lines[0]);
    let bad_vertices = {
        let mut f: Vec<String> = lines[0].split('\t').map(String::from).collect();
        f[2] = "99".into();
        log.replacen(lines[0], &f.join("\t"), 1)
    };
    for edited in [swap_class, dropped_line, dup, bad_vertices] {
        fs::write(dir.path().join("log.tsv"), &edited).unwrap();
        let e = CensusStore::open(dir.path()).unwrap_err();
        assert_eq!(e.token(), "CorruptStore", "{e}");
        assert_eq!(census_stats(dir.path()).unwrap_err().token(), "CorruptStore");
    }
}

#[test]
fn bad_frontier_header_is_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    straight(dir.path(), 2, CensusMode::Lc, 64);
    fs::write(
        dir.path().join("frontier.tsv"),
        "# n=2 mode=sideways log_len=1 batches=1\n",
    )
    .unwrap();
    assert_eq!(CensusStore::open(dir.path()).unwrap_err().token(), "CorruptStore");
}

fn sigs(n: usize, mode: CensusMode) -> BTreeSet<Signature> {
    enumerate_balls_no_interior(n, mode)
        .into_iter()
        .map(|r| r.signature)
        .collect()
}

#[test]
fn lc_slice_lies_in_free_slice() {
    for n in 1..=5 {
        let lc = enumerate_balls_no_interior(n, CensusMode::Lc);
        assert!(lc.iter().all(|r| r.class == CensusClass::LcAndMogami));
        let lc: BTreeSet<Signature> = lc.into_iter().map(|r| r.signature).collect();
        assert!(lc.is_subset(&sigs(n, CensusMode::Free)), "n = {n}");
    }
}

#[test]
fn slices_have_no_duplicates_and_respect_filters() {
    for mode in [CensusMode::Lc, CensusMode::Free] {
        let recs = enumerate_balls_no_interior(5, mode);
        let set: BTreeSet<_> = recs.iter().map(|r| r.signature.clone()).collect();
        assert_eq!(set.len(), recs.len());
        for r in &recs {
            let p = Pseudomanifold::from_signature(r.signature.as_str()).unwrap();
            assert!(p.is_simplicial() && p.interior_vertices().is_empty());
            assert_eq!((p.num_tets(), p.num_vertices()), (r.num_tets, r.num_vertices));
        }
    }
}

#[test]
fn unite_with_a_fresh_tet_embeds_each_slice_into_the_next() {
    for n in 1..=4 {
        let next = sigs(n + 1, CensusMode::Lc);
        for s in sigs(n, CensusMode::Lc) {
            let p = Pseudomanifold::from_signature(s.as_str()).unwrap();
            let f = p.boundary_facets().next().unwrap();
            let big = p.disjoint_union(&Pseudomanifold::tetrahedron());
            let q = moves::unite(&big, f, FacetRef::new(n, 3), [0, 1, 2]).unwrap();
            assert!(next.contains(&q.signature()), "n = {n}: {s}");
        }
    }
}
