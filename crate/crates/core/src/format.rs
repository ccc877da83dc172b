//! Text formats for complexes.
//!
//! PAIR (lossless):
//! ```text
//! pair v1
//! tets 2
//! g 0 3 1 3 0 1 2
//! ```
//! A `g A fA B fB pa pb pc` line glues face `fA` of tetrahedron `A` to face
//! `fB` of `B`, sending the corners of `fA` (increasing order) to `pa pb pc`.
//!
//! SIMP: one tetrahedron per line, four vertex labels. Pairings are found
//! by matching triangles with equal label sets.
//!
//! In both formats `#` starts a comment.

use crate::complex::{ComplexError, FacetRef, Pairing, Pseudomanifold};
use crate::perm::face_corners;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Complex { line: usize, source: ComplexError },
    #[error("triangle {0:?} lies in more than two tetrahedra")]
    OverfullTriangle([String; 3]),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl FormatError {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        FormatError::Parse { line, msg: msg.into() }
    }

    /// Short machine-readable name of the error.
    pub fn token(&self) -> &'static str {
        match self {
            FormatError::Parse { .. } => "ParseError",
            FormatError::Complex { source, .. } => match source {
                ComplexError::DuplicateFacet(_) => "DuplicateFacet",
                ComplexError::SelfPairedFacet(_) => "SelfPairedFacet",
                ComplexError::BadCorr { .. } => "BadCorr",
                _ => "InvalidComplex",
            },
            FormatError::OverfullTriangle(_) => "OverfullTriangle",
            FormatError::Io { .. } => "Io",
        }
    }
}

/// Lines with comments stripped, paired with 1-based line numbers; blank lines dropped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn parse_num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, FormatError> {
    let tok = tok.ok_or_else(|| FormatError::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| FormatError::parse(line, format!("bad {what} {tok:?}")))
}

/// Parse a `g A fA B fB pa pb pc`-style tail (everything after the keyword).
pub(crate) fn parse_gluing<'a>(
    line: usize,
    toks: &mut impl Iterator<Item = &'a str>,
) -> Result<(FacetRef, FacetRef, [u8; 3]), FormatError> {
    let a: usize = parse_num(line, toks.next(), "tetrahedron")?;
    let fa: u8 = parse_num(line, toks.next(), "face")?;
    let b: usize = parse_num(line, toks.next(), "tetrahedron")?;
    let fb: u8 = parse_num(line, toks.next(), "face")?;
    let mut corr = [0u8; 3];
    for c in &mut corr {
        *c = parse_num(line, toks.next(), "corner")?;
    }
    if fa > 3 || fb > 3 {
        return Err(FormatError::parse(line, "face out of range"));
    }
    if toks.next().is_some() {
        return Err(FormatError::parse(line, "trailing tokens"));
    }
    Ok((FacetRef::new(a, fa), FacetRef::new(b, fb), corr))
}

pub fn parse_pair(text: &str) -> Result<Pseudomanifold, FormatError> {
    let mut lines = content_lines(text);
    let (l1, header) = lines.next().ok_or_else(|| FormatError::parse(1, "empty input"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["pair", "v1"] {
        return Err(FormatError::parse(l1, "expected header `pair v1`"));
    }
    let (l2, tets) = lines
        .next()
        .ok_or_else(|| FormatError::parse(l1 + 1, "missing `tets N`"))?;
    let mut toks = tets.split_whitespace();
    if toks.next() != Some("tets") {
        return Err(FormatError::parse(l2, "expected `tets N`"));
    }
    let n: usize = parse_num(l2, toks.next(), "tetrahedron count")?;
    let mut pairings = Vec::new();
    let mut last_line = l2;
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        if toks.next() != Some("g") {
            return Err(FormatError::parse(ln, "expected a `g` line"));
        }
        let (a, b, corr) = parse_gluing(ln, &mut toks)?;
        for f in [a, b] {
            if f.tet >= n {
                return Err(FormatError::Complex {
                    line: ln,
                    source: ComplexError::OutOfRange(f),
                });
            }
        }
        let p = Pairing::new(a, b, corr).map_err(|source| FormatError::Complex { line: ln, source })?;
        // catch duplicates here so the error carries a line number
        if pairings
            .iter()
            .any(|q: &(usize, Pairing)| q.1.contains(a) || q.1.contains(b))
        {
            let f = if pairings.iter().any(|q| q.1.contains(a)) { a } else { b };
            return Err(FormatError::Complex {
                line: ln,
                source: ComplexError::DuplicateFacet(f),
            });
        }
        pairings.push((ln, p));
        last_line = ln;
    }
    Pseudomanifold::build(n, pairings.into_iter().map(|(_, p)| p)).map_err(|source| FormatError::Complex {
        line: last_line,
        source,
    })
}

/// Canonical PAIR text: pairings oriented `a < b` and sorted.
pub fn write_pair(p: &Pseudomanifold) -> String {
    let mut s = format!("pair v1\ntets {}\n", p.num_tets());
    for q in p.pairings() {
        let c = q.corr();
        writeln!(
            s,
            "g {} {} {} {} {} {} {}",
            q.a.tet, q.a.face, q.b.tet, q.b.face, c[0], c[1], c[2]
        )
        .unwrap();
    }
    s
}

/// Parsed SIMP input: the complex and the label of each vertex of each tetrahedron.
#[derive(Debug, Clone)]
pub struct SimpComplex {
    pub complex: Pseudomanifold,
    pub labels: Vec<[String; 4]>,
}

pub fn parse_simp(text: &str) -> Result<SimpComplex, FormatError> {
    let mut labels: Vec<[String; 4]> = Vec::new();
    for (ln, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(FormatError::parse(ln, "expected 4 vertex labels"));
        }
        if let Some(t) = toks
            .iter()
            .find(|t| !t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'))
        {
            return Err(FormatError::parse(ln, format!("bad label {t:?}")));
        }
        let row = [0, 1, 2, 3].map(|i| toks[i].to_string());
        if (0..4).any(|i| (i + 1..4).any(|j| row[i] == row[j])) {
            return Err(FormatError::parse(ln, "repeated label in a tetrahedron"));
        }
        labels.push(row);
    }
    let complex = complex_from_labels(&labels)?;
    Ok(SimpComplex { complex, labels })
}

/// Glue labeled tetrahedra along triangles with equal label sets.
pub fn complex_from_labels<L: Ord + Clone + ToString>(labels: &[[L; 4]]) -> Result<Pseudomanifold, FormatError> {
    let mut by_key: BTreeMap<[L; 3], Vec<FacetRef>> = BTreeMap::new();
    for (t, row) in labels.iter().enumerate() {
        for f in 0..4 {
            let c = face_corners(f);
            let mut key = c.map(|i| row[i].clone());
            key.sort();
            by_key.entry(key).or_default().push(FacetRef::new(t, f as u8));
        }
    }
    let mut keys: Vec<_> = by_key.into_iter().collect();
    keys.sort_by_key(|(_, v)| v[0]);
    let mut pairings = Vec::new();
    for (key, facets) in keys {
        match facets.as_slice() {
            [_] => {}
            [a, b] => {
                let corr = face_corners(a.face as usize).map(|i| {
                    let lab = &labels[a.tet][i];
                    (0..4).find(|&j| &labels[b.tet][j] == lab).expect("shared label") as u8
                });
                pairings.push(Pairing::new(*a, *b, corr).expect("matching labels give a bijection"));
            }
            _ => return Err(FormatError::OverfullTriangle(key.map(|k| k.to_string()))),
        }
    }
    Pseudomanifold::build(labels.len(), pairings).map_err(|source| FormatError::Complex { line: 0, source })
}

/// Read a complex from a file, choosing the format by content (PAIR files start with `pair`).
pub fn read_complex(path: &std::path::Path) -> Result<Pseudomanifold, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_complex(&text)
}

/// Parse PAIR or SIMP text, chosen by the first content line.
pub fn parse_complex(text: &str) -> Result<Pseudomanifold, FormatError> {
    match content_lines(text).next() {
        Some((_, l)) if l.starts_with("pair") => parse_pair(text),
        _ => Ok(parse_simp(text)?.complex),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_round_trip_is_bit_exact() {
        let text = "pair v1\ntets 3\ng 0 0 1 3 0 1 2\ng 1 1 2 2 3 1 0\n";
        let p = parse_pair(text).unwrap();
        assert_eq!(write_pair(&p), text);
        let q = parse_pair("# c\npair v1\n tets 3 \ng 2 2 1 1 3 2 0 # reversed\ng 1 3 0 0 1 2 3\n").unwrap();
        assert_eq!(write_pair(&q), text);
    }

    #[test]
    fn pair_errors_carry_lines() {
        let e = parse_pair("pair v1\ntets 2\ng 0 0 1 0 1 2 3\ng 0 0 1 1 0 2 3\n").unwrap_err();
        assert!(matches!(
            e,
            FormatError::Complex {
                line: 4,
                source: ComplexError::DuplicateFacet(_)
            }
        ));
        let e = parse_pair("pair v1\ntets 2\ng 0 0 1 0 1 2 x\n").unwrap_err();
        assert!(matches!(e, FormatError::Parse { line: 3, .. }));
        assert!(parse_pair("pair v2\n").is_err());
    }

    #[test]
    fn simp_two_tets() {
        let s = parse_simp("a b c d\nb c d e\n").unwrap();
        assert_eq!(s.complex.num_pairings(), 1);
        assert_eq!(s.complex.num_vertices(), 5);
        let e = parse_simp("a b c d\na b c e\na b c f\n").unwrap_err();
        assert!(matches!(e, FormatError::OverfullTriangle(_)));
    }
}
