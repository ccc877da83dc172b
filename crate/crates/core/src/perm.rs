//! Permutations of the four corners of a tetrahedron.

use std::fmt;

/// A bijection of `{0,1,2,3}`; `self[i]` is the image of corner `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

const fn build_all() -> [[u8; 4]; 24] {
    let mut out = [[0u8; 4]; 24];
    let mut n = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && b != c && a != c {
                    let d = 6 - a - b - c;
                    out[n] = [a as u8, b as u8, c as u8, d as u8];
                    n += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
}

/// All 24 permutations in lexicographic order of their image arrays.
pub const ALL_PERMS: [[u8; 4]; 24] = build_all();

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Returns `None` unless `images` is a bijection of `{0,1,2,3}`.
    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4(images))
    }

    pub fn all() -> impl Iterator<Item = Perm4> {
        ALL_PERMS.iter().map(|&p| Perm4(p))
    }

    pub fn from_index(idx: usize) -> Perm4 {
        Perm4(ALL_PERMS[idx])
    }

    /// Position in [`ALL_PERMS`].
    pub fn index(self) -> usize {
        let [a, b, c, _] = self.0;
        let a = a as usize;
        let b = b as usize - usize::from(b > self.0[0]);
        let c = c as usize - usize::from(c > self.0[0]) - usize::from(c > self.0[1]);
        a * 6 + b * 2 + c
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Perm4 {
        let mut out = [0u8; 4];
        for i in 0..4 {
            out[self.0[i] as usize] = i as u8;
        }
        Perm4(out)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(self, other: Perm4) -> Perm4 {
        let mut out = [0u8; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[other.0[i] as usize];
        }
        Perm4(out)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(self) -> i32 {
        let mut inv = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4{:?}", self.0)
    }
}

/// The three corners of face `face` (the face omitting corner `face`), increasing.
#[inline]
pub fn face_corners(face: usize) -> [usize; 3] {
    match face {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        _ => [0, 1, 2],
    }
}

/// Index of the edge `{i, j}` among the six edges of a tetrahedron.
#[inline]
pub fn edge_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {i} {j}"),
    }
}

/// Endpoints of tetrahedron edge `e`, increasing.
pub const EDGE_CORNERS: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Sign of a permutation of three items given as an image array.
pub fn sign3(p: [usize; 3]) -> i32 {
    let mut inv = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trips() {
        for (i, p) in Perm4::all().enumerate() {
            assert_eq!(p.index(), i);
            assert_eq!(Perm4::from_index(i), p);
        }
    }

    #[test]
    fn inverse_and_compose() {
        for p in Perm4::all() {
            assert_eq!(p.compose(p.inverse()), Perm4::IDENTITY);
            for q in Perm4::all() {
                assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
            }
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm4::new([0, 0, 1, 2]).is_none());
        assert!(Perm4::new([0, 1, 2, 4]).is_none());
    }

    #[test]
    fn edge_table_consistent() {
        for (e, [a, b]) in EDGE_CORNERS.iter().enumerate() {
            assert_eq!(edge_index(*a, *b), e);
            assert_eq!(edge_index(*b, *a), e);
        }
    }
}
