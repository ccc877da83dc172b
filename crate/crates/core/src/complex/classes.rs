use super::{FacetRef, Gluing};
use crate::perm::{edge_index, face_corners, sign3, EDGE_CORNERS};
use crate::union_find::{ParityUnionFind, UnionFind};

/// Derived identifications of a complex.
///
/// Class ids are dense and numbered by first occurrence when scanning
/// tetrahedra in order (corners, edges `01,02,03,12,13,23`, faces `0..4`).
#[derive(Debug, Clone)]
pub struct Classes {
    pub(crate) num_vertices: usize,
    pub(crate) num_edges: usize,
    pub(crate) num_triangles: usize,
    pub(crate) num_ends: usize,
    pub(crate) num_corners: usize,
    pub(crate) num_components: usize,
    /// `tet*4 + corner`
    pub(crate) vertex_of: Vec<usize>,
    /// `tet*6 + edge`
    pub(crate) edge_of: Vec<usize>,
    /// Orientation of `tet*6 + edge` (low to high corner) against its class representative.
    pub(crate) edge_flip: Vec<bool>,
    pub(crate) edge_conflict: Vec<bool>,
    pub(crate) edge_vertices: Vec<[usize; 2]>,
    /// `tet*16 + i*4 + j`: the end at corner `i` of edge `{i,j}`.
    pub(crate) end_of: Vec<usize>,
    /// `tet*4 + face`
    pub(crate) tri_of: Vec<usize>,
    pub(crate) tri_flip: Vec<bool>,
    pub(crate) tri_members: Vec<Vec<FacetRef>>,
    pub(crate) tri_boundary: Vec<bool>,
    pub(crate) edge_boundary: Vec<bool>,
    pub(crate) vertex_boundary: Vec<bool>,
    /// `tet*16 + face*4 + corner`: a corner of a facet.
    pub(crate) corner_of: Vec<usize>,
    pub(crate) component_of: Vec<usize>,
}

fn dense_from_roots(roots: impl Iterator<Item = usize>, universe: usize) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; universe];
    let mut next = 0;
    let out = roots
        .map(|r| {
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[r]
        })
        .collect();
    (out, next)
}

impl Classes {
    pub(crate) fn compute(n: usize, adj: &[[Option<Gluing>; 4]]) -> Classes {
        let mut verts = UnionFind::new(4 * n);
        let mut ends = UnionFind::new(16 * n);
        let mut corners = UnionFind::new(16 * n);
        let mut edges = ParityUnionFind::new(6 * n);
        let mut comps = UnionFind::new(n);

        for t in 0..n {
            for f in 0..4 {
                let Some(g) = adj[t][f] else { continue };
                if (g.tet, g.face as usize) < (t, f) {
                    continue;
                }
                comps.union(t, g.tet);
                let p = g.perm;
                let fc = face_corners(f);
                for &i in &fc {
                    verts.union(t * 4 + i, g.tet * 4 + p.apply(i));
                    corners.union(t * 16 + f * 4 + i, g.tet * 16 + g.face as usize * 4 + p.apply(i));
                    for &j in &fc {
                        if i == j {
                            continue;
                        }
                        ends.union(t * 16 + i * 4 + j, g.tet * 16 + p.apply(i) * 4 + p.apply(j));
                        if i < j {
                            let (pi, pj) = (p.apply(i), p.apply(j));
                            edges.union(t * 6 + edge_index(i, j), g.tet * 6 + edge_index(pi, pj), pi > pj);
                        }
                    }
                }
            }
        }

        let (vertex_of, num_vertices) = verts.canonical_labels();
        let (component_of, num_components) = comps.canonical_labels();

        let end_roots: Vec<usize> = (0..16 * n).map(|x| ends.find(x)).collect();
        let valid_end = |x: usize| (x / 4) % 4 != x % 4;
        let (end_labels, num_ends) =
            dense_from_roots((0..16 * n).filter(|&x| valid_end(x)).map(|x| end_roots[x]), 16 * n);
        let mut end_of = vec![usize::MAX; 16 * n];
        for (x, l) in (0..16 * n).filter(|&x| valid_end(x)).zip(end_labels) {
            end_of[x] = l;
        }

        let valid_corner = |x: usize| (x / 4) % 4 != x % 4;
        let corner_roots: Vec<usize> = (0..16 * n).map(|x| corners.find(x)).collect();
        let (corner_labels, num_corners) = dense_from_roots(
            (0..16 * n).filter(|&x| valid_corner(x)).map(|x| corner_roots[x]),
            16 * n,
        );
        let mut corner_of = vec![usize::MAX; 16 * n];
        for (x, l) in (0..16 * n).filter(|&x| valid_corner(x)).zip(corner_labels) {
            corner_of[x] = l;
        }

        let edge_info: Vec<(usize, bool)> = (0..6 * n).map(|x| edges.find(x)).collect();
        let (edge_of, num_edges) = dense_from_roots(edge_info.iter().map(|e| e.0), 6 * n);
        let mut rep_parity = vec![None; num_edges];
        let mut edge_vertices = vec![[0, 0]; num_edges];
        let mut edge_conflict = vec![false; num_edges];
        let mut edge_flip = vec![false; 6 * n];
        for x in 0..6 * n {
            let e = edge_of[x];
            let par = edge_info[x].1;
            match rep_parity[e] {
                None => {
                    rep_parity[e] = Some(par);
                    let (t, k) = (x / 6, x % 6);
                    let [lo, hi] = EDGE_CORNERS[k];
                    edge_vertices[e] = [vertex_of[t * 4 + lo], vertex_of[t * 4 + hi]];
                    edge_conflict[e] = edges.is_conflicted(x);
                }
                Some(rp) => edge_flip[x] = rp ^ par,
            }
        }

        let mut tri_of = vec![usize::MAX; 4 * n];
        let mut tri_flip = vec![false; 4 * n];
        let mut tri_members: Vec<Vec<FacetRef>> = Vec::new();
        for t in 0..n {
            for f in 0..4 {
                if tri_of[t * 4 + f] != usize::MAX {
                    continue;
                }
                let id = tri_members.len();
                tri_of[t * 4 + f] = id;
                let mut members = vec![FacetRef::new(t, f as u8)];
                if let Some(g) = adj[t][f] {
                    let other = g.tet * 4 + g.face as usize;
                    tri_of[other] = id;
                    members.push(FacetRef::new(g.tet, g.face));
                    let src = face_corners(f);
                    let dst = face_corners(g.face as usize);
                    let pos = src.map(|c| {
                        let img = g.perm.apply(c);
                        dst.iter().position(|&d| d == img).expect("corner of target face")
                    });
                    tri_flip[other] = sign3(pos) < 0;
                }
                tri_members.push(members);
            }
        }
        let num_triangles = tri_members.len();
        let tri_boundary: Vec<bool> = tri_members.iter().map(|m| m.len() == 1).collect();

        let mut edge_boundary = vec![false; num_edges];
        let mut vertex_boundary = vec![false; num_vertices];
        for t in 0..n {
            for f in 0..4 {
                if adj[t][f].is_some() {
                    continue;
                }
                let c = face_corners(f);
                for &i in &c {
                    vertex_boundary[vertex_of[t * 4 + i]] = true;
                }
                for (a, b) in [(c[0], c[1]), (c[0], c[2]), (c[1], c[2])] {
                    edge_boundary[edge_of[t * 6 + edge_index(a, b)]] = true;
                }
            }
        }

        Classes {
            num_vertices,
            num_edges,
            num_triangles,
            num_ends,
            num_corners,
            num_components,
            vertex_of,
            edge_of,
            edge_flip,
            edge_conflict,
            edge_vertices,
            end_of,
            tri_of,
            tri_flip,
            tri_members,
            tri_boundary,
            edge_boundary,
            vertex_boundary,
            corner_of,
            component_of,
        }
    }

    /// Class of the end at corner `i` of edge `{i, j}` in tetrahedron `t`.
    pub fn end_of(&self, t: usize, i: usize, j: usize) -> usize {
        self.end_of[t * 16 + i * 4 + j]
    }

    /// Class of corner `i` of facet `(t, f)`.
    pub fn corner_of(&self, t: usize, f: usize, i: usize) -> usize {
        self.corner_of[t * 16 + f * 4 + i]
    }

    pub fn num_ends(&self) -> usize {
        self.num_ends
    }

    pub fn num_corners(&self) -> usize {
        self.num_corners
    }

    pub fn has_reversed_edge(&self) -> bool {
        self.edge_conflict.iter().any(|&c| c)
    }
}
