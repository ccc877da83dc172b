use mogami_core::fixtures::{self, FIXTURE_NAMES};
use mogami_core::format::parse_pair;
use mogami_core::reduction::classify_ball;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(f: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(f)
}

fn mogami(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mogami")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = mogami(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn value<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in\n{out}"))
}

fn fails(args: &[&str], code: i32) -> String {
    let o = mogami(args);
    assert_eq!(o.status.code(), Some(code), "{args:?}");
    String::from_utf8(o.stderr).unwrap()
}

#[test]
fn classify_tree() {
    let out = ok(&["classify", corpus("tree4.pair").to_str().unwrap()]);
    assert_eq!(value(&out, "class"), "LC_and_Mogami");
}

#[test]
fn info_reports_the_pinched_vertex() {
    let out = ok(&["info", corpus("figure2.pair").to_str().unwrap()]);
    assert_eq!(value(&out, "singular_boundary_vertices"), "1");
    assert_eq!(value(&out, "ball"), "Refuted");
    assert_eq!(value(&out, "betti"), "1,0,0,0");
}

#[test]
fn twelve_gon_is_not_orderable() {
    let out = ok(&["match", "--n", "12", "--pairs", "0-6"]);
    assert_eq!(value(&out, "verdict"), "not LC-orderable");
    assert_eq!(value(&out, "cycles"), "2");
}

#[test]
fn last_active_order_keeps_the_vertex() {
    let out = ok(&["match", "--n", "8", "--pairs", "0-3,1-2,4-7,5-6", "--last-active", "5"]);
    let trace = value(&out, "activity");
    let bits: Vec<&str> = trace.split(',').collect();
    assert!(bits[..bits.len() - 1].iter().all(|&b| b == "1"), "{trace}");
}

#[test]
fn json_output_is_one_object() {
    let out = ok(&["--json", "info", corpus("tree4.pair").to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tets"], 4);
    assert_eq!(v["ball"], "Certified");
}

#[test]
fn exit_codes() {
    assert!(fails(&["frobnicate"], 2).contains("unrecognized"));
    assert!(fails(&["match", "--n"], 2).contains("value"));
    let e = fails(&["match", "--n", "5", "--pairs", "0-9"], 1);
    assert!(e.starts_with("error=EdgeOutOfRange"), "{e}");
    let e = fails(&["match", "--n", "6", "--pairs", "0-2,1-3"], 1);
    assert!(e.starts_with("error=CrossingMatching"), "{e}");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.pair");
    std::fs::write(&f, "pair v1\ntets 2\ng 0 0 1 0 1 2 3\ng 0 0 1 1 0 2 x\n").unwrap();
    let e = fails(&["info", f.to_str().unwrap()], 1);
    assert!(e.starts_with("error=ParseError"), "{e}");
    assert!(e.contains("line 4"), "{e}");
    let e = fails(&["info", dir.path().join("missing").to_str().unwrap()], 1);
    assert!(e.starts_with("error=Io"), "{e}");
}

#[test]
fn verdicts_match_the_library() {
    for name in FIXTURE_NAMES {
        let path = corpus(&format!("{name}.script"));
        let out = ok(&["classify", path.to_str().unwrap()]);
        let lib = classify_ball(&fixtures::fixture(name).unwrap().complex);
        assert_eq!(value(&out, "class"), lib.name(), "{name}");
    }
}

#[test]
fn glue_replays_and_writes_pair() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("out.pair");
    let out = ok(&[
        "glue",
        corpus("figure1_ball.script").to_str().unwrap(),
        "--out",
        pair.to_str().unwrap(),
    ]);
    let p = parse_pair(&std::fs::read_to_string(&pair).unwrap()).unwrap();
    assert_eq!(value(&out, "signature"), p.signature().as_str());
    assert_eq!(p.signature(), fixtures::figure1_ball().complex.signature());
}

#[test]
fn build_then_reduce_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("cone.script");
    ok(&[
        "build",
        "cone",
        corpus("square_m1.surf").to_str().unwrap(),
        "--out",
        script.to_str().unwrap(),
    ]);
    let lc = dir.path().join("lc.script");
    let out = ok(&[
        "reduce",
        script.to_str().unwrap(),
        "--lc-script",
        "--out",
        lc.to_str().unwrap(),
    ]);
    assert_eq!(value(&out, "nontrivial_nuclei"), "0");
    let a = ok(&["glue", script.to_str().unwrap()]);
    let b = ok(&["glue", lc.to_str().unwrap()]);
    assert_eq!(value(&a, "signature"), value(&b, "signature"));
    assert_eq!(value(&b, "mode"), "LC");
}

#[test]
fn output_is_deterministic() {
    let args = ["build", "tree", "--random", "7", "--seed", "3"];
    assert_eq!(ok(&args), ok(&args));
    let s = corpus("figure4_annulus_cone.script");
    let args = ["reduce", s.to_str().unwrap(), "--seed", "11"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn collapse_files() {
    let out = ok(&["collapse", corpus("annulus.k2").to_str().unwrap()]);
    assert_eq!(value(&out, "collapsible"), "yes");
    let out = ok(&["collapse", corpus("disk_rim.k2").to_str().unwrap()]);
    assert_eq!(value(&out, "collapsible"), "no");
    let out = ok(&["elc", corpus("tree4.pair").to_str().unwrap()]);
    assert_eq!(value(&out, "outcome"), "Verified");
    let e = fails(&["elc", corpus("figure2.pair").to_str().unwrap()], 1);
    assert!(e.starts_with("error=NotABall"), "{e}");
}

#[test]
fn census_run_stats_resume_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("s");
    let s = store.to_str().unwrap();
    let run = ok(&["census", "run", "--n", "4", "--mode", "lc", "--store", s, "--jobs", "2"]);
    assert_eq!(value(&run, "complete"), "true");
    let stats = ok(&["census", "stats", "--store", s]);
    assert_eq!(value(&stats, "records"), value(&run, "records"));
    let resumed = ok(&["census", "resume", "--store", s]);
    assert_eq!(value(&resumed, "records"), value(&run, "records"));
    let empty = ok(&["census", "stats", "--store", dir.path().join("none").to_str().unwrap()]);
    assert_eq!(value(&empty, "records"), "0");

    let log = store.join("log.tsv");
    let text = std::fs::read_to_string(&log).unwrap();
    std::fs::write(&log, text.replacen("\t4\t", "\t5\t", 1)).unwrap();
    let e = fails(&["census", "stats", "--store", s], 1);
    assert!(e.starts_with("error=CorruptStore"), "{e}");
    let e = fails(&["census", "run", "--n", "3", "--mode", "sideways", "--store", s], 1);
    assert!(e.starts_with("error=BadParams"), "{e}");
}

#[test]
fn corpus_override() {
    let out = ok(&["fixture", "figure2_union"]);
    assert_eq!(value(&out, "matches_builtin"), "true");
    let dir = tempfile::tempdir().unwrap();
    // a figure-1 script posing as figure 2
    std::fs::copy(corpus("figure1_ball.script"), dir.path().join("figure2_union.script")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_mogami"))
        .args(["fixture", "figure2_union"])
        .env("MOGAMI_CORPUS", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error=FixtureMismatch"));
    let e = fails(&["fixture", "nope"], 1);
    assert!(e.starts_with("error=NoSuchFixture"), "{e}");
}

#[test]
fn annulus_cone_has_no_lc_script() {
    let s = corpus("figure4_annulus_cone.script");
    let out = ok(&["classify", s.to_str().unwrap()]);
    assert_eq!(value(&out, "class"), "NotApplicable");
    let e = fails(&["reduce", s.to_str().unwrap(), "--lc-script"], 1);
    assert!(e.starts_with("error=NotLC"), "{e}");
}
