use super::Pseudomanifold;
use std::collections::HashMap;

/// A reason why a complex is not a simplicial complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicialViolation {
    /// Two distinct faces of dimension `dim` span the same vertex classes.
    /// For `dim` 1 and 2 the ids are face classes; for `dim` 3 they are tetrahedra.
    DuplicateFaces {
        dim: usize,
        first: usize,
        second: usize,
        vertices: Vec<usize>,
    },
    /// A face whose corners do not lie in distinct vertex classes.
    DegenerateFace { dim: usize, id: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialReport {
    pub violations: Vec<SimplicialViolation>,
}

impl SimplicialReport {
    pub fn is_simplicial(&self) -> bool {
        self.violations.is_empty()
    }

    /// The most telling violation: a pair of boundary triangles if there is one.
    pub fn witness(&self) -> Option<&SimplicialViolation> {
        self.violations.first()
    }
}

fn distinct<const N: usize>(mut vs: [usize; N]) -> Option<[usize; N]> {
    vs.sort_unstable();
    vs.windows(2).all(|w| w[0] != w[1]).then_some(vs)
}

impl Pseudomanifold {
    /// Quick yes/no version of [`Pseudomanifold::simplicial_report`].
    pub fn is_simplicial(&self) -> bool {
        let mut tets = HashMap::new();
        for t in 0..self.num_tets() {
            match distinct(self.tet_vertices(t)) {
                Some(key) => {
                    if tets.insert(key, t).is_some() {
                        return false;
                    }
                }
                None => return false,
            }
        }
        let mut tris = HashMap::new();
        for t in 0..self.num_triangles() {
            match distinct(self.triangle_vertices(t)) {
                Some(key) => {
                    if tris.insert(key, t).is_some() {
                        return false;
                    }
                }
                None => return false,
            }
        }
        let mut edges = HashMap::new();
        for e in 0..self.num_edges() {
            match distinct(self.edge_vertices(e)) {
                Some(key) => {
                    if edges.insert(key, e).is_some() {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    }

    /// Every violation of the simplicial-complex conditions.
    ///
    /// Ordering: duplicate triangle pairs (pairs of boundary triangles
    /// first), duplicate edges, duplicate tetrahedra, then degenerate faces.
    pub fn simplicial_report(&self) -> SimplicialReport {
        let mut dup_bd_tris = Vec::new();
        let mut dup_tris = Vec::new();
        let mut dup_edges = Vec::new();
        let mut dup_tets = Vec::new();
        let mut degenerate = Vec::new();

        let mut seen: HashMap<[usize; 3], Vec<usize>> = HashMap::new();
        for t in 0..self.num_triangles() {
            match distinct(self.triangle_vertices(t)) {
                Some(key) => seen.entry(key).or_default().push(t),
                None => degenerate.push(SimplicialViolation::DegenerateFace { dim: 2, id: t }),
            }
        }
        let mut groups: Vec<_> = seen.into_iter().filter(|(_, v)| v.len() > 1).collect();
        groups.sort_by_key(|(_, v)| v[0]);
        for (key, ids) in groups {
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    let v = SimplicialViolation::DuplicateFaces {
                        dim: 2,
                        first: ids[i],
                        second: ids[j],
                        vertices: key.to_vec(),
                    };
                    if self.is_boundary_triangle(ids[i]) && self.is_boundary_triangle(ids[j]) {
                        dup_bd_tris.push(v);
                    } else {
                        dup_tris.push(v);
                    }
                }
            }
        }

        let mut seen: HashMap<[usize; 2], usize> = HashMap::new();
        for e in 0..self.num_edges() {
            match distinct(self.edge_vertices(e)) {
                Some(key) => {
                    if let Some(&first) = seen.get(&key) {
                        dup_edges.push(SimplicialViolation::DuplicateFaces {
                            dim: 1,
                            first,
                            second: e,
                            vertices: key.to_vec(),
                        });
                    } else {
                        seen.insert(key, e);
                    }
                }
                None => degenerate.push(SimplicialViolation::DegenerateFace { dim: 1, id: e }),
            }
        }

        let mut seen: HashMap<[usize; 4], usize> = HashMap::new();
        for t in 0..self.num_tets() {
            match distinct(self.tet_vertices(t)) {
                Some(key) => {
                    if let Some(&first) = seen.get(&key) {
                        dup_tets.push(SimplicialViolation::DuplicateFaces {
                            dim: 3,
                            first,
                            second: t,
                            vertices: key.to_vec(),
                        });
                    } else {
                        seen.insert(key, t);
                    }
                }
                None => degenerate.push(SimplicialViolation::DegenerateFace { dim: 3, id: t }),
            }
        }

        let mut violations = dup_bd_tris;
        violations.extend(dup_tris);
        violations.extend(dup_edges);
        violations.extend(dup_tets);
        violations.extend(degenerate);
        SimplicialReport { violations }
    }
}

#[cfg(test)]
mod tests {
    use crate::complex::{FacetRef, Pairing, Pseudomanifold};

    #[test]
    fn double_pairing_between_two_tets_is_not_simplicial() {
        // oracle: compare vertex-class sets of all triangles by brute force
        let p = Pseudomanifold::build(
            2,
            [
                Pairing::new(FacetRef::new(0, 3), FacetRef::new(1, 3), [0, 1, 2]).unwrap(),
                Pairing::new(FacetRef::new(0, 2), FacetRef::new(1, 2), [0, 1, 3]).unwrap(),
            ],
        )
        .unwrap();
        let mut dup = false;
        for a in 0..p.num_triangles() {
            for b in a + 1..p.num_triangles() {
                let mut x = p.triangle_vertices(a);
                let mut y = p.triangle_vertices(b);
                x.sort();
                y.sort();
                dup |= x == y;
            }
        }
        assert!(dup);
        assert!(!p.is_simplicial());
        let report = p.simplicial_report();
        assert!(!report.is_simplicial());
        assert!(matches!(
            report.witness(),
            Some(super::SimplicialViolation::DuplicateFaces { dim: 2, .. })
        ));
    }

    #[test]
    fn tetrahedron_is_simplicial() {
        assert!(Pseudomanifold::tetrahedron().is_simplicial());
        assert!(Pseudomanifold::tetrahedron().simplicial_report().is_simplicial());
    }
}
