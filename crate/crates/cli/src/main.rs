//! `mogami`: command-line front end for mogami-core.
//!
//! Output is `key=value` lines (multi-line values as `key<<END ... END`),
//! or one JSON object with `--json`. Exit codes: 0 ok, 1 domain error
//! (`error=<Token>` on stderr), 2 usage error.

mod out;

use clap::{Args, Parser, Subcommand};
use mogami_core::builders::{cone, tree_of_tetrahedra, union_mogami, Built, Complex2Pseudo, TreeSpec};
use mogami_core::census::{self, CensusMode};
use mogami_core::collapse::{self, Complex2, ElcMode, ElcOutcome, Extensive};
use mogami_core::fixtures;
use mogami_core::format::{self, write_pair};
use mogami_core::matching::{self, CycleGraph, PlanarMatching};
use mogami_core::reduction::{self, BallClass};
use mogami_core::script::MoveScript;
use mogami_core::{BallCertificate, Pseudomanifold};
use out::{CliError, Report};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mogami",
    version,
    about = "Build, classify and enumerate triangulated 3-balls"
)]
struct Cli {
    /// Print one JSON object instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Face counts, homology, boundary summary of a complex (PAIR, SIMP or script).
    Info { file: PathBuf },
    /// Decide LC = Mogami for a ball without interior vertices.
    Classify { file: PathBuf },
    /// Nucleus reduction trace.
    Reduce {
        file: PathBuf,
        /// Also emit the reversed LC script.
        #[arg(long)]
        lc_script: bool,
        /// Write the LC script here instead of printing it.
        #[arg(long, requires = "lc_script")]
        out: Option<PathBuf>,
        /// Randomized tie-breaking with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Replay a move script.
    Glue {
        script: PathBuf,
        /// Write the resulting complex as PAIR.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constructive builders.
    Build {
        #[command(subcommand)]
        what: BuildCmd,
        #[command(flatten)]
        out: BuildOut,
    },
    /// Planar matchings of a cycle.
    Match {
        #[arg(long)]
        n: usize,
        /// Matched edge pairs, e.g. `0-6,1-2`.
        #[arg(long, value_delimiter = ',', default_value = "")]
        pairs: Vec<String>,
        /// Emit an LC order.
        #[arg(long)]
        order: bool,
        /// Emit an order keeping this vertex active to the end (complete matchings).
        #[arg(long)]
        last_active: Option<usize>,
    },
    /// Collapsibility of a 2-complex (`v`/`e`/`t` lines, `d` prefix marks the target).
    Collapse {
        file: PathBuf,
        /// Explore every collapse sequence instead of searching for one.
        #[arg(long)]
        extensive: bool,
        #[arg(long, default_value_t = collapse::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Check K^T collapses onto the boundary for every (or sampled) dual spanning tree.
    Elc {
        file: PathBuf,
        /// Sample this many random spanning trees instead of enumerating all.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = collapse::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Resumable census of balls without interior vertices.
    Census {
        #[command(subcommand)]
        what: CensusCmd,
    },
    /// Check a shipped fixture file against its built-in reconstruction.
    Fixture {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Tree of tetrahedra from a spec file or a preset shape.
    Tree {
        #[arg(long, conflicts_with_all = ["path", "star", "random"])]
        spec: Option<PathBuf>,
        #[arg(long)]
        path: Option<usize>,
        #[arg(long)]
        star: Option<usize>,
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cone over a triangulated surface (one triangle of labels per line).
    Cone {
        surface: PathBuf,
        #[arg(long, default_value = "v")]
        apex: String,
    },
    /// Union of two cones along interface triangles named by shared labels.
    Union {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "v")]
        apex_a: String,
        #[arg(long, default_value = "v")]
        apex_b: String,
        /// Interface triangle as three labels, e.g. `v,p,q`; repeatable.
        #[arg(long, required = true)]
        iface: Vec<String>,
    },
    /// A built-in fixture.
    Fixture { name: String },
}

#[derive(Args)]
struct BuildOut {
    /// Write the script here instead of printing it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write the complex as PAIR.
    #[arg(long, global = true)]
    pair_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CensusCmd {
    Run {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "lc")]
        mode: String,
        #[arg(long)]
        store: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    Stats {
        #[arg(long)]
        store: PathBuf,
    },
    Resume {
        #[arg(long)]
        store: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut r = Report::default();
    match run(cli.cmd, &mut r) {
        Ok(()) => {
            print!("{}", r.render(cli.json));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error={}", e.token);
            eprintln!("message={}", e.message);
            ExitCode::from(1)
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))
}

/// A complex from PAIR, SIMP, or a move script (replayed).
fn load_complex(path: &Path) -> Result<Pseudomanifold, CliError> {
    let text = read_text(path)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    if first.is_some_and(|l| l.starts_with("mode")) {
        let s = MoveScript::parse(&text, path.parent())?;
        Ok(s.replay()?.0)
    } else {
        Ok(format::parse_complex(&text)?)
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn run(cmd: Cmd, r: &mut Report) -> Result<(), CliError> {
    match cmd {
        Cmd::Info { file } => info(&load_complex(&file)?, r),
        Cmd::Classify { file } => {
            let p = load_complex(&file)?;
            let class = reduction::classify_ball(&p);
            r.put("class", class.name());
            match &class {
                BallClass::NotMogami(sigs) => {
                    r.put("nontrivial_nuclei", sigs.len());
                    r.put("nuclei", join(sigs));
                }
                BallClass::NotApplicable(why) => r.put("reason", why.as_str()),
                BallClass::LcAndMogami => {
                    let d = reduction::reduce_to_nuclei(&p);
                    r.put("nontrivial_nuclei", 0usize);
                    r.put("nuclei", d.components.len());
                }
            }
            Ok(())
        }
        Cmd::Reduce {
            file,
            lc_script,
            out,
            seed,
        } => {
            let p = load_complex(&file)?;
            let d = match seed {
                Some(s) => reduction::reduce_randomized(&p, s),
                None => reduction::reduce_to_nuclei(&p),
            };
            r.put("spreads", d.spreads);
            r.put("splits", d.splits);
            let trace: Vec<String> = d.trace.iter().map(|s| format!("{} {}", s.kind, s.target)).collect();
            r.put_block("trace", trace.join("\n"));
            r.put("components", d.components.len());
            r.put("nontrivial_nuclei", d.nontrivial().len());
            r.put("nuclei", join(d.signature_multiset()));
            if lc_script {
                let s = reduction::lc_script_from_reduction(&p).map_err(|e| CliError::new(e.token(), e.to_string()))?;
                emit_script(&s, out.as_deref(), r)?;
            }
            Ok(())
        }
        Cmd::Glue { script, out } => {
            let s = MoveScript::read(&script)?;
            let (p, trace) = s.replay()?;
            r.put("mode", s.mode.name());
            r.put("steps", trace.len());
            r.put("kinds", join(trace.iter().map(|t| t.kind)));
            summary(&p, r);
            if let Some(path) = out {
                write_file(&path, &write_pair(&p))?;
                r.put("pair_out", path.display());
            }
            Ok(())
        }
        Cmd::Build { what, out } => {
            let b = build(what)?;
            r.put("mode", b.script.mode.name());
            r.put("steps", b.script.steps.len());
            summary(&b.complex, r);
            if let Some(path) = &out.pair_out {
                write_file(path, &write_pair(&b.complex))?;
                r.put("pair_out", path.display());
            }
            emit_script(&b.script, out.out.as_deref(), r)
        }
        Cmd::Match {
            n,
            pairs,
            order,
            last_active,
        } => match_cmd(n, &pairs, order, last_active, r),
        Cmd::Collapse {
            file,
            extensive,
            budget,
        } => {
            let k = Complex2::parse(&read_text(&file)?).map_err(|e| CliError::new(e.token(), e.to_string()))?;
            r.put("vertices", k.num_vertices());
            r.put("edges", k.num_edges());
            r.put("triangles", k.num_triangles());
            r.put("euler", k.euler_characteristic());
            r.put(
                "target_faces",
                k.subcomplex_set()
                    .iter()
                    .map(|w| w.count_ones() as usize)
                    .sum::<usize>(),
            );
            if extensive {
                let v = collapse::extensively_collapsible(&k, budget);
                r.put(
                    "extensive",
                    match &v {
                        Extensive::Yes => "yes",
                        Extensive::No(_) => "no",
                        Extensive::Unknown => "unknown",
                    },
                );
                if let Extensive::No(stuck) = v {
                    r.put_block("stuck", stuck.to_text().trim_end().to_string());
                }
            } else {
                match collapse::find_collapse(&k, budget) {
                    Ok(Some(t)) => {
                        r.put("collapsible", "yes");
                        r.put("collapses", t.steps.len());
                        let steps: Vec<String> = t
                            .steps
                            .iter()
                            .map(|&(f, c)| format!("{} {}", k.face_name(f), k.face_name(c)))
                            .collect();
                        r.put_block("trace", steps.join("\n"));
                    }
                    Ok(None) => r.put("collapsible", "no"),
                    Err(e) if e.token() == "BudgetExceeded" => r.put("collapsible", "unknown"),
                    Err(e) => return Err(CliError::new(e.token(), e.to_string())),
                }
            }
            Ok(())
        }
        Cmd::Elc {
            file,
            sample,
            seed,
            budget,
        } => {
            let p = load_complex(&file)?;
            let mode = match sample {
                Some(count) => ElcMode::Sample { count, seed },
                None => ElcMode::All,
            };
            let o = collapse::extensively_lc_check(&p, mode, budget)
                .map_err(|e| CliError::new(e.token(), e.to_string()))?;
            r.put("outcome", o.name());
            match o {
                ElcOutcome::Verified { trees } => r.put("trees", trees),
                ElcOutcome::Refuted { tree } => r.put("tree", join(tree)),
                ElcOutcome::Unknown { trees, undecided } => {
                    r.put("trees", trees);
                    r.put("undecided", undecided);
                }
            }
            Ok(())
        }
        Cmd::Census { what } => census_cmd(what, r),
        Cmd::Fixture { name, list } => fixture_cmd(name, list, r),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))
}

fn emit_script(s: &MoveScript, out: Option<&Path>, r: &mut Report) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_file(path, &s.to_text())?;
            r.put("script_out", path.display());
        }
        None => r.put_block("script", s.to_text().trim_end().to_string()),
    }
    Ok(())
}

fn summary(p: &Pseudomanifold, r: &mut Report) {
    r.put("tets", p.num_tets());
    r.put("vertices", p.num_vertices());
    r.put("signature", p.signature());
}

fn info(p: &Pseudomanifold, r: &mut Report) -> Result<(), CliError> {
    r.put("tets", p.num_tets());
    r.put("vertices", p.num_vertices());
    r.put("edges", p.num_edges());
    r.put("triangles", p.num_triangles());
    r.put("euler", p.euler_characteristic());
    let h = p.homology()?;
    r.put("betti", join(h.betti));
    r.put("h1_torsion", join(&h.h1_torsion));
    r.put("h2_torsion", join(&h.h2_torsion));
    let bd = p.boundary();
    r.put("boundary_triangles", bd.triangles.len());
    r.put("boundary_vertices", bd.vertices.len());
    r.put("boundary_components", bd.num_components());
    r.put("boundary_euler", bd.euler_characteristic());
    r.put("boundary_closed", bd.is_closed());
    r.put("interior_vertices", p.interior_vertices().len());
    let sing = p.singular_boundary_vertices();
    r.put("singular_boundary_vertices", sing.len());
    r.put("singular_vertex_ids", join(&sing));
    r.put("spanning_edges", p.spanning_edges().len());
    r.put("strongly_connected", p.strongly_connected());
    r.put("simplicial", p.is_simplicial());
    let cert = p.ball_certificate();
    r.put("ball", cert.name());
    if let BallCertificate::Refuted(why) = &cert {
        r.put(
            "refutations",
            why.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "),
        );
    }
    r.put("signature", p.signature());
    Ok(())
}

fn build(what: BuildCmd) -> Result<Built, CliError> {
    Ok(match what {
        BuildCmd::Tree {
            spec,
            path,
            star,
            random,
            seed,
        } => {
            let spec = match (spec, path, star, random) {
                (Some(f), ..) => TreeSpec::parse(&read_text(&f)?)?,
                (None, Some(n), None, None) => TreeSpec::path(n),
                (None, None, Some(n), None) => {
                    if !(1..=5).contains(&n) {
                        return Err(CliError::new("BadParams", "a star has 1 to 5 tetrahedra"));
                    }
                    TreeSpec::star(n)
                }
                (None, None, None, Some(n)) => TreeSpec::random(n, &mut ChaCha8Rng::seed_from_u64(seed)),
                _ => {
                    return Err(CliError::new(
                        "BadParams",
                        "give exactly one of --spec, --path, --star, --random",
                    ))
                }
            };
            tree_of_tetrahedra(&spec)?
        }
        BuildCmd::Cone { surface, apex } => cone(&Complex2Pseudo::parse(&read_text(&surface)?)?, &apex)?,
        BuildCmd::Union {
            a,
            b,
            apex_a,
            apex_b,
            iface,
        } => {
            let ca = cone(&Complex2Pseudo::parse(&read_text(&a)?)?, &apex_a)?;
            let cb = cone(&Complex2Pseudo::parse(&read_text(&b)?)?, &apex_b)?;
            let mut pairs = Vec::new();
            for spec in &iface {
                let names: Vec<&str> = spec.split(',').map(str::trim).collect();
                let [x, y, z] = names.as_slice() else {
                    return Err(CliError::new(
                        "BadParams",
                        format!("interface {spec:?}: expected three labels"),
                    ));
                };
                let tri = [*x, *y, *z];
                let fa = ca.facet(tri)?;
                let fb = cb.facet(tri)?;
                let corr = mogami_core::perm::face_corners(fa.face as usize).map(|i| {
                    let lab = &ca.labels[fa.tet][i];
                    (0..4).find(|&j| &cb.labels[fb.tet][j] == lab).unwrap_or(0) as u8
                });
                pairs.push((fa, fb, corr));
            }
            union_mogami(&ca, &cb, &pairs)?
        }
        BuildCmd::Fixture { name } => fixtures::fixture(&name).ok_or_else(|| CliError::new("NoSuchFixture", name))?,
    })
}

fn parse_pairs(pairs: &[String]) -> Result<Vec<(usize, usize)>, CliError> {
    pairs
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (a, b) = s
                .trim()
                .split_once('-')
                .ok_or_else(|| CliError::new("BadParams", format!("bad pair {s:?}")))?;
            let num = |x: &str| {
                x.parse::<usize>()
                    .map_err(|_| CliError::new("BadParams", format!("bad pair {s:?}")))
            };
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

fn fmt_order(o: &[(usize, usize)]) -> String {
    join(o.iter().map(|(a, b)| format!("{a}-{b}")))
}

fn match_cmd(
    n: usize,
    pairs: &[String],
    order: bool,
    last_active: Option<usize>,
    r: &mut Report,
) -> Result<(), CliError> {
    let c = CycleGraph::new(n)?;
    let m = PlanarMatching::new(&c, parse_pairs(pairs)?)?;
    let cycles = matching::quotient(&c, &m).cycle_count();
    let ok = matching::lc_orderable(&c, &m);
    r.put("n", n);
    r.put("pairs", fmt_order(m.pairs()));
    r.put("complete", m.is_complete(&c));
    r.put("cycles", cycles);
    r.put("orderable", ok);
    r.put("verdict", if ok { "LC-orderable" } else { "not LC-orderable" });
    if order && ok {
        r.put("order", fmt_order(&matching::lc_order(&c, &m)?));
    }
    if let Some(c0) = last_active {
        let o = matching::lc_order_last_active(&c, &m, c0)?;
        r.put("last_active_order", fmt_order(&o));
        r.put(
            "activity",
            join(matching::activity_trace(&c, &o, c0).iter().map(|&a| u8::from(a))),
        );
    }
    Ok(())
}

fn census_cmd(what: CensusCmd, r: &mut Report) -> Result<(), CliError> {
    let st = match what {
        CensusCmd::Run { n, mode, store, jobs } => {
            let mode: CensusMode = mode.parse()?;
            census::census_run(&store, n, mode, jobs)?
        }
        CensusCmd::Stats { store } => census::census_stats(&store)?,
        CensusCmd::Resume { store, jobs } => census::census_resume(&store, jobs)?,
    };
    r.put("n", st.n);
    r.put("mode", st.mode.map_or("none", |m| m.name()));
    r.put("records", st.records);
    for (c, k) in &st.counts {
        r.put(c.name(), *k);
    }
    r.put("complete", st.complete);
    r.put("batches", st.batches);
    Ok(())
}

fn corpus_dir() -> PathBuf {
    std::env::var_os("MOGAMI_CORPUS").map(PathBuf::from).unwrap_or_else(|| {
        let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
        p.canonicalize().unwrap_or(p)
    })
}

fn fixture_cmd(name: Option<String>, list: bool, r: &mut Report) -> Result<(), CliError> {
    let dir = corpus_dir();
    if list || name.is_none() {
        r.put("fixtures", fixtures::FIXTURE_NAMES.join(","));
        r.put("corpus", dir.display());
        return Ok(());
    }
    let name = name.unwrap_or_default();
    let built = fixtures::fixture(&name).ok_or_else(|| CliError::new("NoSuchFixture", name.clone()))?;
    let path = dir.join(format!("{name}.script"));
    let s = MoveScript::read(&path)?;
    let (p, _) = s.replay()?;
    r.put("fixture", &name);
    r.put("file", path.display());
    r.put("mode", s.mode.name());
    summary(&p, r);
    let same = p.signature() == built.complex.signature();
    r.put("matches_builtin", same);
    if !same {
        return Err(CliError::new(
            "FixtureMismatch",
            format!("{} differs from the built-in {name}", path.display()),
        ));
    }
    Ok(())
}
