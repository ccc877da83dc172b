use super::{ComplexError, Pseudomanifold};
use crate::perm::{edge_index, face_corners};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer homology of the cellular chain complex on face classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    /// Ranks of `H_0 .. H_3` over the rationals.
    pub betti: [usize; 4],
    /// Invariant factors greater than one of the torsion part of `H_1`.
    pub h1_torsion: Vec<BigInt>,
    /// Same for `H_2`.
    pub h2_torsion: Vec<BigInt>,
}

impl Homology {
    pub fn has_torsion(&self) -> bool {
        !self.h1_torsion.is_empty() || !self.h2_torsion.is_empty()
    }
}

type Matrix = Vec<Vec<BigInt>>;

/// Nonzero diagonal of the Smith normal form of `m`, in divisibility order.
pub(crate) fn smith_diagonal(mut m: Matrix) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut moved = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = &m[i][t] / &m[t][t];
                for j in t..cols {
                    let d = &q * &m[t][j];
                    m[i][j] -= d;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    moved = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = &m[t][j] / &m[t][t];
                for row in m.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    moved = true;
                }
            }
            if moved {
                continue;
            }
            // enforce divisibility of the rest of the block by the pivot
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let x = m[i][j].clone();
                        m[t][j] += x;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

impl Pseudomanifold {
    /// Boundary matrices `d1`, `d2`, `d3` (rows = faces one dimension down).
    fn boundary_matrices(&self) -> Result<[Matrix; 3], ComplexError> {
        let c = self.classes();
        if c.has_reversed_edge() {
            return Err(ComplexError::ReversedEdge);
        }
        let (nv, ne, nt, n3) = (c.num_vertices, c.num_edges, c.num_triangles, self.num_tets());
        let mut d1 = vec![vec![BigInt::zero(); ne]; nv];
        for e in 0..ne {
            let [a, b] = c.edge_vertices[e];
            d1[b][e] += 1;
            d1[a][e] -= 1;
        }
        let mut d2 = vec![vec![BigInt::zero(); nt]; ne];
        for (tri, members) in c.tri_members.iter().enumerate() {
            let f = members[0];
            let [c0, c1, c2] = face_corners(f.face as usize);
            for (sign, (i, j)) in [(1, (c1, c2)), (-1, (c0, c2)), (1, (c0, c1))] {
                let x = f.tet * 6 + edge_index(i, j);
                let s = if c.edge_flip[x] { -sign } else { sign };
                d2[c.edge_of[x]][tri] += s;
            }
        }
        let mut d3 = vec![vec![BigInt::zero(); n3]; nt];
        for t in 0..n3 {
            for f in 0..4 {
                let sign = if f % 2 == 0 { 1 } else { -1 };
                let x = t * 4 + f;
                let s = if c.tri_flip[x] { -sign } else { sign };
                d3[c.tri_of[x]][t] += s;
            }
        }
        Ok([d1, d2, d3])
    }

    /// Betti numbers and torsion, by Smith normal form over the integers.
    ///
    /// Fails with [`ComplexError::ReversedEdge`] when an edge is glued to
    /// itself with opposite orientation, since the cells are then not
    /// orientable and the chain complex above is not defined.
    pub fn homology(&self) -> Result<Homology, ComplexError> {
        let [d1, d2, d3] = self.boundary_matrices()?;
        let s1 = smith_diagonal(d1);
        let s2 = smith_diagonal(d2);
        let s3 = smith_diagonal(d3);
        let dims = [
            self.num_vertices(),
            self.num_edges(),
            self.num_triangles(),
            self.num_tets(),
        ];
        let ranks = [0, s1.len(), s2.len(), s3.len(), 0];
        let betti = [0, 1, 2, 3].map(|k| dims[k] - ranks[k] - ranks[k + 1]);
        let torsion = |s: Vec<BigInt>| s.into_iter().filter(|x| !x.is_one()).collect::<Vec<_>>();
        Ok(Homology {
            betti,
            h1_torsion: torsion(s2),
            h2_torsion: torsion(s3),
        })
    }

    #[cfg(test)]
    pub(crate) fn boundary_matrices_for_test(&self) -> [Matrix; 3] {
        self.boundary_matrices().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{FacetRef, Pairing};

    fn mul(a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.len();
        let m = b.first().map_or(0, |r| r.len());
        let k = b.len();
        (0..n)
            .map(|i| (0..m).map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum()).collect())
            .collect()
    }

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn smith_of_small_matrices() {
        // diag(2, 3) has invariant factors 1, 6
        let m = vec![vec![int(2), int(0)], vec![int(0), int(3)]];
        assert_eq!(smith_diagonal(m), vec![int(1), int(6)]);
        let m = vec![
            vec![int(2), int(4), int(4)],
            vec![int(-6), int(6), int(12)],
            vec![int(10), int(-4), int(-16)],
        ];
        assert_eq!(smith_diagonal(m), vec![int(2), int(6), int(12)]);
        assert!(smith_diagonal(vec![vec![int(0); 3]; 2]).is_empty());
    }

    #[test]
    fn tetrahedron_homology() {
        let h = Pseudomanifold::tetrahedron().homology().unwrap();
        assert_eq!(h.betti, [1, 0, 0, 0]);
        assert!(!h.has_torsion());
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let p = Pseudomanifold::build(
            3,
            [
                Pairing::new(FacetRef::new(0, 0), FacetRef::new(1, 3), [0, 1, 2]).unwrap(),
                Pairing::new(FacetRef::new(1, 0), FacetRef::new(2, 1), [3, 0, 2]).unwrap(),
            ],
        )
        .unwrap();
        let [d1, d2, d3] = p.boundary_matrices_for_test();
        assert!(mul(&d1, &d2).iter().flatten().all(|x| x.is_zero()));
        assert!(mul(&d2, &d3).iter().flatten().all(|x| x.is_zero()));
        assert_eq!(p.homology().unwrap().betti, [1, 0, 0, 0]);
    }

    #[test]
    fn two_disjoint_tets() {
        let h = Pseudomanifold::disjoint(2).homology().unwrap();
        assert_eq!(h.betti, [2, 0, 0, 0]);
    }
}
