//! Move scripts: an initial complex, a declared mode and a list of steps.
//!
//! ```text
//! mode MOGAMI
//! begin pair          # or `begin simp`, or `include tree.pair`
//! pair v1
//! tets 2
//! end
//! U 0 0 1 3 0 1 2     # unite
//! G 0 2 1 2 0 1 3     # glue inside a component
//! S 4                 # split at triangle 4 (FREE mode only)
//! P 4                 # spread at triangle 4 (FREE mode only)
//! ```

use crate::complex::{FacetRef, Pseudomanifold};
use crate::format::{content_lines, parse_gluing, parse_num, parse_pair, parse_simp, write_pair, FormatError};
use crate::moves::{self, GluingKind, MoveError, UngluingKind};
use std::fmt;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Unites (as a prefix) then LC gluings only.
    Lc,
    /// Unites (as a prefix) then LC or Mogami gluings.
    Mogami,
    /// Anything goes, including ungluings.
    Free,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Lc => "LC",
            Mode::Mogami => "MOGAMI",
            Mode::Free => "FREE",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        match s.to_ascii_uppercase().as_str() {
            "LC" => Some(Mode::Lc),
            "MOGAMI" => Some(Mode::Mogami),
            "FREE" => Some(Mode::Free),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlueSpec {
    pub a: FacetRef,
    pub b: FacetRef,
    pub corr: [u8; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Unite(GlueSpec),
    Glue(GlueSpec),
    Split(usize),
    Spread(usize),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = |f: &mut fmt::Formatter<'_>, c: char, s: &GlueSpec| {
            write!(
                f,
                "{c} {} {} {} {} {} {} {}",
                s.a.tet, s.a.face, s.b.tet, s.b.face, s.corr[0], s.corr[1], s.corr[2]
            )
        };
        match self {
            Step::Unite(s) => g(f, 'U', s),
            Step::Glue(s) => g(f, 'G', s),
            Step::Split(t) => write!(f, "S {t}"),
            Step::Spread(t) => write!(f, "P {t}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MoveScript {
    pub mode: Mode,
    pub initial: Pseudomanifold,
    pub steps: Vec<Step>,
}

/// Classification of one replayed step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Glue(GluingKind),
    Unglue(UngluingKind),
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Glue(k) => k.fmt(f),
            StepKind::Unglue(k) => k.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepRecord {
    pub kind: StepKind,
    /// The gluing identified two facets of one tetrahedron.
    pub same_tet: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("step {index}: {reason}")]
    StepRejected { index: usize, reason: String },
}

impl ScriptError {
    pub fn token(&self) -> &'static str {
        "StepRejected"
    }
}

fn reject(index: usize, reason: impl Into<String>) -> ScriptError {
    ScriptError::StepRejected {
        index,
        reason: reason.into(),
    }
}

impl MoveScript {
    pub fn new(mode: Mode, initial: Pseudomanifold) -> Self {
        MoveScript {
            mode,
            initial,
            steps: Vec::new(),
        }
    }

    /// Replay every step, enforcing the mode.
    pub fn replay(&self) -> Result<(Pseudomanifold, Vec<StepRecord>), ScriptError> {
        let mut p = self.initial.clone();
        let mut trace = Vec::with_capacity(self.steps.len());
        let mut prefix = true;
        for (index, step) in self.steps.iter().enumerate() {
            let err = |e: MoveError| reject(index, e.to_string());
            let rec = match *step {
                Step::Unite(s) | Step::Glue(s) => {
                    let is_unite = matches!(step, Step::Unite(_));
                    let kind = moves::classify_gluing(&p, s.a, s.b).map_err(err)?;
                    if is_unite != (kind == GluingKind::Unite) {
                        return Err(reject(
                            index,
                            format!("{} step classifies as {kind}", if is_unite { "U" } else { "G" }),
                        ));
                    }
                    if self.mode != Mode::Free {
                        if kind == GluingKind::Unite && !prefix {
                            return Err(reject(index, "unite after the initial tree prefix"));
                        }
                        let ok = kind == GluingKind::Unite
                            || match self.mode {
                                Mode::Lc => kind.is_lc(),
                                _ => kind.is_mogami(),
                            };
                        if !ok {
                            return Err(reject(
                                index,
                                format!("{kind} gluing not allowed in {} mode", self.mode),
                            ));
                        }
                        if !moves::corr_admissible(&p, s.a, s.b, s.corr, kind) {
                            return Err(reject(
                                index,
                                format!("correspondence {:?} does not realize a {kind} gluing", s.corr),
                            ));
                        }
                    }
                    if kind != GluingKind::Unite {
                        prefix = false;
                    }
                    p = moves::glue(&p, s.a, s.b, s.corr).map_err(err)?;
                    StepRecord {
                        kind: StepKind::Glue(kind),
                        same_tet: s.a.tet == s.b.tet,
                    }
                }
                Step::Split(t) | Step::Spread(t) => {
                    if self.mode != Mode::Free {
                        return Err(reject(index, format!("ungluing not allowed in {} mode", self.mode)));
                    }
                    let (q, st) = if matches!(step, Step::Split(_)) {
                        moves::split(&p, t)
                    } else {
                        moves::spread(&p, t)
                    }
                    .map_err(err)?;
                    p = q;
                    prefix = false;
                    StepRecord {
                        kind: StepKind::Unglue(st.kind),
                        same_tet: false,
                    }
                }
            };
            trace.push(rec);
        }
        Ok((p, trace))
    }

    /// Script text with the initial complex inlined as a PAIR block.
    pub fn to_text(&self) -> String {
        let mut s = format!("mode {}\nbegin pair\n{}end\n", self.mode, write_pair(&self.initial));
        for st in &self.steps {
            s.push_str(&st.to_string());
            s.push('\n');
        }
        s
    }

    /// Parse script text; `include` paths are resolved against `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<MoveScript, FormatError> {
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        let mut it = lines.iter().copied().peekable();
        let (ln, first) = it.next().ok_or_else(|| FormatError::parse(1, "empty script"))?;
        let mut toks = first.split_whitespace();
        if toks.next() != Some("mode") {
            return Err(FormatError::parse(ln, "expected `mode LC|MOGAMI|FREE`"));
        }
        let mode = toks
            .next()
            .and_then(Mode::parse)
            .ok_or_else(|| FormatError::parse(ln, "unknown mode"))?;
        let (ln, second) = it
            .next()
            .ok_or_else(|| FormatError::parse(ln + 1, "missing initial complex"))?;
        let mut toks = second.split_whitespace();
        let initial = match (toks.next(), toks.next()) {
            (Some("include"), Some(file)) => {
                let path = base.map_or_else(|| Path::new(file).to_path_buf(), |b| b.join(file));
                crate::format::read_complex(&path)?
            }
            (Some("begin"), Some(kind @ ("pair" | "simp"))) => {
                let mut block = String::new();
                let mut closed = false;
                let start = ln;
                let mut count = 0;
                for (lno, l) in it.by_ref() {
                    if l == "end" {
                        closed = true;
                        break;
                    }
                    // pad so that block line numbers plus `start` are file line numbers
                    while count + 1 < lno - start {
                        block.push('\n');
                        count += 1;
                    }
                    count += 1;
                    block.push_str(l);
                    block.push('\n');
                }
                if !closed {
                    return Err(FormatError::parse(start, "unterminated block"));
                }
                let shift = |e: FormatError| match e {
                    FormatError::Parse { line, msg } => FormatError::Parse {
                        line: line + start,
                        msg,
                    },
                    FormatError::Complex { line, source } => FormatError::Complex {
                        line: line + start,
                        source,
                    },
                    other => other,
                };
                if kind == "pair" {
                    parse_pair(&block).map_err(shift)?
                } else {
                    parse_simp(&block).map_err(shift)?.complex
                }
            }
            _ => return Err(FormatError::parse(ln, "expected `include <file>` or `begin pair|simp`")),
        };
        let mut steps = Vec::new();
        for (ln, l) in it {
            let mut toks = l.split_whitespace();
            let step = match toks.next() {
                Some("U") | Some("G") => {
                    let unite = l.starts_with('U');
                    let (a, b, corr) = parse_gluing(ln, &mut toks)?;
                    let s = GlueSpec { a, b, corr };
                    if unite {
                        Step::Unite(s)
                    } else {
                        Step::Glue(s)
                    }
                }
                Some(k @ ("S" | "P")) => {
                    let t: usize = parse_num(ln, toks.next(), "triangle id")?;
                    if toks.next().is_some() {
                        return Err(FormatError::parse(ln, "trailing tokens"));
                    }
                    if k == "S" {
                        Step::Split(t)
                    } else {
                        Step::Spread(t)
                    }
                }
                _ => return Err(FormatError::parse(ln, "expected a U, G, S or P step")),
            };
            steps.push(step);
        }
        Ok(MoveScript { mode, initial, steps })
    }

    pub fn read(path: &Path) -> Result<MoveScript, FormatError> {
        let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
            path: path.display().to_string(),
            source,
        })?;
        MoveScript::parse(&text, path.parent())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(t: usize, k: u8) -> FacetRef {
        FacetRef::new(t, k)
    }

    fn tree_script(mode: Mode) -> MoveScript {
        let mut s = MoveScript::new(mode, Pseudomanifold::disjoint(3));
        s.steps.push(Step::Unite(GlueSpec {
            a: f(0, 3),
            b: f(1, 3),
            corr: [0, 1, 2],
        }));
        s.steps.push(Step::Unite(GlueSpec {
            a: f(1, 0),
            b: f(2, 0),
            corr: [1, 2, 3],
        }));
        s
    }

    #[test]
    fn tree_script_replays_in_every_mode() {
        for mode in [Mode::Lc, Mode::Mogami, Mode::Free] {
            let (p, trace) = tree_script(mode).replay().unwrap();
            assert!(p.strongly_connected());
            assert_eq!(p.num_pairings(), 2);
            assert!(trace.iter().all(|r| r.kind == StepKind::Glue(GluingKind::Unite)));
        }
    }

    #[test]
    fn text_round_trip() {
        let mut s = tree_script(Mode::Free);
        s.steps.push(Step::Split(3));
        let text = s.to_text();
        let back = MoveScript::parse(&text, None).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(back.mode, Mode::Free);
    }

    #[test]
    fn rules_enforced() {
        // G step that is really a unite
        let mut s = MoveScript::new(Mode::Free, Pseudomanifold::disjoint(2));
        s.steps.push(Step::Glue(GlueSpec {
            a: f(0, 3),
            b: f(1, 3),
            corr: [0, 1, 2],
        }));
        assert!(s.replay().is_err());
        // ungluing outside FREE mode
        let mut s = tree_script(Mode::Lc);
        s.steps.push(Step::Split(3));
        assert!(matches!(s.replay(), Err(ScriptError::StepRejected { index: 2, .. })));
        // fold then a late unite
        let mut s = MoveScript::new(Mode::Lc, Pseudomanifold::disjoint(3));
        s.steps.push(Step::Unite(GlueSpec {
            a: f(0, 3),
            b: f(1, 3),
            corr: [0, 1, 2],
        }));
        s.steps.push(Step::Glue(GlueSpec {
            a: f(0, 2),
            b: f(1, 2),
            corr: [0, 1, 3],
        }));
        s.steps.push(Step::Unite(GlueSpec {
            a: f(1, 0),
            b: f(2, 0),
            corr: [1, 2, 3],
        }));
        assert!(matches!(s.replay(), Err(ScriptError::StepRejected { index: 2, .. })));
        s.mode = Mode::Free;
        assert!(s.replay().is_ok());
    }

    #[test]
    fn fold_with_wrong_corr_rejected_in_lc_mode() {
        let mut s = MoveScript::new(Mode::Lc, Pseudomanifold::disjoint(2));
        s.steps.push(Step::Unite(GlueSpec {
            a: f(0, 3),
            b: f(1, 3),
            corr: [0, 1, 2],
        }));
        // swaps a and b: the shared edge is not fixed end to end
        s.steps.push(Step::Glue(GlueSpec {
            a: f(0, 2),
            b: f(1, 2),
            corr: [1, 0, 3],
        }));
        assert!(s.replay().is_err());
    }
}
