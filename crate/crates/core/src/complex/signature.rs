use super::{ComplexError, FacetRef, Pairing, Pseudomanifold};
use crate::perm::Perm4;
use std::cmp::Ordering;
use std::fmt;

/// Canonical, relabeling-invariant encoding of a complex.
///
/// Each dual-graph component is encoded by the lexicographically least
/// breadth-first code over all `24 * n` choices of starting tetrahedron and
/// corner labeling; component codes are sorted and joined with `+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(String);

impl Signature {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Accept `s` only if it is the canonical signature of the complex it decodes to.
    pub fn parse(s: &str) -> Result<(Signature, Pseudomanifold), ComplexError> {
        let p = Pseudomanifold::from_signature(s)?;
        let sig = p.signature();
        if sig.0 != s {
            return Err(ComplexError::BadSignature(format!("not canonical: {s:?}")));
        }
        Ok((sig, p))
    }
}

impl std::borrow::Borrow<str> for Signature {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

fn width_for(n: usize) -> usize {
    let max = 96 * n + 2;
    let mut w = 1;
    let mut cap = 62usize;
    while cap <= max {
        w += 1;
        cap *= 62;
    }
    w
}

fn push_digits(out: &mut String, mut x: usize, width: usize) {
    let mut buf = vec![b'0'; width];
    for slot in buf.iter_mut().rev() {
        *slot = DIGITS[x % 62];
        x /= 62;
    }
    out.push_str(std::str::from_utf8(&buf).expect("ascii"));
}

fn parse_digits(s: &str) -> Option<usize> {
    s.bytes().try_fold(0usize, |acc, b| {
        let d = DIGITS.iter().position(|&c| c == b)?;
        acc.checked_mul(62)?.checked_add(d)
    })
}

// Code entries: 0 = boundary facet, 1 = first visit of a new tetrahedron
// (its labeling is chosen so the gluing reads as the identity), otherwise
// 2 + (tet * 4 + face) * 24 + perm index.
fn encode_from(p: &Pseudomanifold, start: usize, sigma0: Perm4, best: &[usize], out: &mut Vec<usize>) -> bool {
    let n = p.num_tets();
    let mut index = vec![usize::MAX; n];
    let mut sigma = vec![Perm4::IDENTITY; n];
    let mut order = Vec::with_capacity(n);
    index[start] = 0;
    sigma[start] = sigma0;
    order.push(start);
    out.clear();
    let mut state = if best.is_empty() {
        Ordering::Less
    } else {
        Ordering::Equal
    };
    let mut k = 0;
    while k < order.len() {
        let t = order[k];
        let inv = sigma[t].inverse();
        for nf in 0..4 {
            let of = inv.apply(nf);
            let entry = match p.gluing(FacetRef::new(t, of as u8)) {
                None => 0,
                Some(g) => {
                    let u = g.tet;
                    if index[u] == usize::MAX {
                        index[u] = order.len();
                        sigma[u] = sigma[t].compose(g.perm.inverse());
                        order.push(u);
                        1
                    } else {
                        let q = sigma[u].compose(g.perm).compose(inv);
                        2 + (index[u] * 4 + q.apply(nf)) * 24 + q.index()
                    }
                }
            };
            if state == Ordering::Equal {
                match entry.cmp(&best[out.len()]) {
                    Ordering::Greater => return false,
                    Ordering::Less => state = Ordering::Less,
                    Ordering::Equal => {}
                }
            }
            out.push(entry);
        }
        k += 1;
    }
    state == Ordering::Less
}

fn component_code(p: &Pseudomanifold) -> Vec<usize> {
    let mut best = Vec::new();
    let mut cur = Vec::new();
    for t in 0..p.num_tets() {
        for s in Perm4::all() {
            if encode_from(p, t, s, &best, &mut cur) {
                std::mem::swap(&mut best, &mut cur);
            }
        }
    }
    best
}

fn code_string(n: usize, code: &[usize]) -> String {
    let mut s = String::new();
    push_digits(&mut s, n, width_for(n).max(1));
    s.push('.');
    let w = width_for(n);
    for &x in code {
        push_digits(&mut s, x, w);
    }
    s
}

impl Pseudomanifold {
    pub fn signature(&self) -> Signature {
        let mut parts: Vec<String> = self
            .components()
            .iter()
            .map(|tets| {
                let sub = self.subcomplex(tets);
                code_string(tets.len(), &component_code(&sub))
            })
            .collect();
        parts.sort();
        Signature(parts.join("+"))
    }

    /// Isomorphism test by signature comparison.
    pub fn isomorphic(&self, other: &Pseudomanifold) -> bool {
        self.num_tets() == other.num_tets()
            && self.num_pairings() == other.num_pairings()
            && self.signature() == other.signature()
    }

    /// Rebuild the canonical representative of a signature.
    pub fn from_signature(sig: &str) -> Result<Pseudomanifold, ComplexError> {
        let bad = |why: &str| ComplexError::BadSignature(format!("{why}: {sig:?}"));
        if sig.is_empty() {
            return Ok(Pseudomanifold::disjoint(0));
        }
        let mut pairings = Vec::new();
        let mut offset = 0;
        for part in sig.split('+') {
            let (head, body) = part.split_once('.').ok_or_else(|| bad("missing '.'"))?;
            let n = parse_digits(head).filter(|&n| n > 0).ok_or_else(|| bad("bad size"))?;
            let w = width_for(n);
            if body.len() != 4 * n * w || !body.is_ascii() {
                return Err(bad("wrong code length"));
            }
            let entries: Vec<usize> = (0..4 * n)
                .map(|i| parse_digits(&body[i * w..(i + 1) * w]))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("bad digit"))?;
            let mut seen = 1;
            let mut local: Vec<Pairing> = Vec::new();
            let mut glued = vec![false; 4 * n];
            for (i, &e) in entries.iter().enumerate() {
                let (t, f) = (i / 4, i % 4);
                let (u, q) = match e {
                    0 => continue,
                    1 => {
                        if seen >= n {
                            return Err(bad("too many tetrahedra"));
                        }
                        seen += 1;
                        (seen - 1, Perm4::IDENTITY)
                    }
                    _ => {
                        let x = e - 2;
                        let (slot, perm) = (x / 24, x % 24);
                        if slot / 4 >= seen {
                            return Err(bad("reference to unvisited tetrahedron"));
                        }
                        (slot / 4, Perm4::from_index(perm))
                    }
                };
                let a = FacetRef::new(t, f as u8);
                let b = FacetRef::new(u, q.apply(f) as u8);
                if glued[t * 4 + f] {
                    // already recorded from the other side; must agree
                    let known = local
                        .iter()
                        .find(|p| p.contains(a))
                        .map(|p| if p.a == a { *p } else { p.reversed() })
                        .ok_or_else(|| bad("inconsistent gluing"))?;
                    if known.b != b || known.perm() != q {
                        return Err(bad("inconsistent gluing"));
                    }
                    continue;
                }
                if glued[b.tet * 4 + b.face as usize] || a == b {
                    return Err(bad("inconsistent gluing"));
                }
                glued[t * 4 + f] = true;
                glued[b.tet * 4 + b.face as usize] = true;
                local.push(Pairing::from_perm(a, b, q).map_err(|_| bad("bad gluing"))?);
            }
            if seen != n || glued.iter().zip(&entries).any(|(&g, &e)| g != (e != 0)) {
                return Err(bad("inconsistent gluing"));
            }
            pairings.extend(local.into_iter().map(|p| {
                Pairing::from_perm(
                    FacetRef::new(p.a.tet + offset, p.a.face),
                    FacetRef::new(p.b.tet + offset, p.b.face),
                    p.perm(),
                )
                .expect("shifted pairing")
            }));
            offset += n;
        }
        Pseudomanifold::build(offset, pairings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree3() -> Pseudomanifold {
        Pseudomanifold::build(
            3,
            [
                Pairing::new(FacetRef::new(0, 0), FacetRef::new(1, 3), [0, 1, 2]).unwrap(),
                Pairing::new(FacetRef::new(1, 1), FacetRef::new(2, 2), [3, 1, 0]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn relabeling_keeps_signature() {
        let p = tree3();
        let q = p.relabeled(
            &[2, 0, 1],
            &[Perm4::from_index(5), Perm4::from_index(17), Perm4::from_index(9)],
        );
        assert_ne!(p, q);
        assert_eq!(p.signature(), q.signature());
        assert!(p.isomorphic(&q));
    }

    #[test]
    fn different_sizes_differ() {
        let t = Pseudomanifold::tetrahedron();
        let t2 = Pseudomanifold::build(
            2,
            [Pairing::new(FacetRef::new(0, 0), FacetRef::new(1, 3), [0, 1, 2]).unwrap()],
        )
        .unwrap();
        assert_ne!(t.signature(), t2.signature());
    }

    #[test]
    fn decode_round_trip() {
        let p = tree3().disjoint_union(&Pseudomanifold::tetrahedron());
        let s = p.signature();
        let q = Pseudomanifold::from_signature(s.as_str()).unwrap();
        assert_eq!(q.signature(), s);
        assert!(Pseudomanifold::from_signature("zz").is_err());
        assert!(Pseudomanifold::from_signature("1.0001").is_err());
    }
}
