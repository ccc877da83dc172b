use super::{ComplexError, FacetRef, Pseudomanifold};
use crate::union_find::UnionFind;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// One unpaired facet, with the classes of its corners and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryTriangle {
    pub triangle: usize,
    pub facet: FacetRef,
    pub vertices: [usize; 3],
    /// `edges[k]` is opposite `vertices[k]`.
    pub edges: [usize; 3],
}

/// The subcomplex spanned by the unpaired facets.
#[derive(Debug, Clone)]
pub struct BoundaryComplex {
    pub triangles: Vec<BoundaryTriangle>,
    /// Boundary edge class -> number of boundary triangle sides on it.
    pub edge_degree: BTreeMap<usize, usize>,
    pub vertices: BTreeSet<usize>,
}

impl BoundaryComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_degree.len() as i64 + self.triangles.len() as i64
    }

    /// Edges lying in exactly one boundary triangle.
    pub fn free_edges(&self) -> Vec<usize> {
        self.edge_degree
            .iter()
            .filter(|(_, &d)| d == 1)
            .map(|(&e, _)| e)
            .collect()
    }

    /// True when every boundary edge lies in exactly two boundary triangles.
    pub fn is_closed(&self) -> bool {
        self.edge_degree.values().all(|&d| d == 2)
    }

    /// Number of connected components (triangles linked through shared vertices).
    pub fn num_components(&self) -> usize {
        if self.triangles.is_empty() {
            return 0;
        }
        let verts: Vec<usize> = self.vertices.iter().copied().collect();
        let idx: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(verts.len());
        for t in &self.triangles {
            uf.union(idx[&t.vertices[0]], idx[&t.vertices[1]]);
            uf.union(idx[&t.vertices[0]], idx[&t.vertices[2]]);
        }
        let (_, k) = uf.canonical_labels();
        k
    }
}

/// Shape of one component of a boundary-link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkKind {
    /// Every link vertex has degree 2.
    Cycle,
    /// Degrees at most 2 with at least one endpoint of degree 1.
    Path,
    /// Some link vertex has degree above 2 (a singular boundary edge).
    Branched,
}

/// A connected component of the boundary-link of a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkComponent {
    pub kind: LinkKind,
    /// Link vertices: classes of edge-ends at the vertex.
    pub nodes: Vec<usize>,
    /// Link edges: `(boundary facet, corner of the facet at the vertex)`.
    pub edges: Vec<(FacetRef, u8)>,
    /// For each link edge, the edge class opposite the vertex in its triangle.
    pub opposite_edges: Vec<usize>,
}

impl LinkComponent {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// The boundary-link of a vertex class, split into connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLink {
    pub vertex: usize,
    pub components: Vec<LinkComponent>,
}

impl VertexLink {
    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_cycles(&self) -> usize {
        self.components.iter().filter(|c| c.kind == LinkKind::Cycle).count()
    }

    pub fn is_single_cycle(&self) -> bool {
        self.components.len() == 1 && self.components[0].kind == LinkKind::Cycle
    }
}

/// Coarse shape of the full link of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LinkShape {
    Disk,
    Sphere,
    Other,
}

impl Pseudomanifold {
    pub fn boundary(&self) -> BoundaryComplex {
        let mut triangles = Vec::new();
        let mut edge_degree = BTreeMap::new();
        let mut vertices = BTreeSet::new();
        for f in self.boundary_facets() {
            let vs = self.facet_vertices(f);
            let es = self.facet_edges(f);
            for &e in &es {
                *edge_degree.entry(e).or_insert(0) += 1;
            }
            vertices.extend(vs);
            triangles.push(BoundaryTriangle {
                triangle: self.triangle_of(f),
                facet: f,
                vertices: vs,
                edges: es,
            });
        }
        BoundaryComplex {
            triangles,
            edge_degree,
            vertices,
        }
    }

    /// Link of vertex class `v` inside the boundary.
    ///
    /// Link vertices are the classes of edge-ends at `v` and link edges are
    /// the corners at `v` of boundary triangles, so a triangle meeting `v`
    /// at two corners contributes two link edges.
    pub fn boundary_link(&self, v: usize) -> Result<VertexLink, ComplexError> {
        if v >= self.num_vertices() {
            return Err(ComplexError::NoSuchClass { dim: 0, id: v });
        }
        if !self.is_boundary_vertex(v) {
            return Err(ComplexError::InteriorVertex(v));
        }
        let cls = self.classes();
        let mut link_edges = Vec::new();
        for f in self.boundary_facets() {
            let c = f.corners();
            for k in 0..3 {
                let i = c[k];
                if cls.vertex_of[f.tet * 4 + i] != v {
                    continue;
                }
                let (j, l) = (c[(k + 1) % 3], c[(k + 2) % 3]);
                let a = cls.end_of(f.tet, i, j);
                let b = cls.end_of(f.tet, i, l);
                link_edges.push((f, i as u8, a, b, self.edge_of(f.tet, j, l)));
            }
        }
        let mut nodes: Vec<usize> = link_edges.iter().flat_map(|e| [e.2, e.3]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        let idx: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut uf = UnionFind::new(nodes.len());
        let mut degree = vec![0usize; nodes.len()];
        for e in &link_edges {
            uf.union(idx[&e.2], idx[&e.3]);
            degree[idx[&e.2]] += 1;
            degree[idx[&e.3]] += 1;
        }
        let (labels, k) = uf.canonical_labels();
        let mut components: Vec<LinkComponent> = (0..k)
            .map(|_| LinkComponent {
                kind: LinkKind::Cycle,
                nodes: Vec::new(),
                edges: Vec::new(),
                opposite_edges: Vec::new(),
            })
            .collect();
        for (i, &n) in nodes.iter().enumerate() {
            components[labels[i]].nodes.push(n);
        }
        for e in &link_edges {
            let comp = &mut components[labels[idx[&e.2]]];
            comp.edges.push((e.0, e.1));
            comp.opposite_edges.push(e.4);
        }
        for comp in &mut components {
            let degs = comp.nodes.iter().map(|n| degree[idx[n]]);
            comp.kind = if degs.clone().any(|d| d > 2) {
                LinkKind::Branched
            } else if degs.into_iter().any(|d| d < 2) {
                LinkKind::Path
            } else {
                LinkKind::Cycle
            };
        }
        Ok(VertexLink { vertex: v, components })
    }

    /// Boundary vertices whose boundary-link is not a single cycle.
    pub fn singular_boundary_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices())
            .filter(|&v| self.is_boundary_vertex(v))
            .filter(|&v| !self.boundary_link(v).map(|l| l.is_single_cycle()).unwrap_or(false))
            .collect()
    }

    /// Classify the full (2-dimensional) link of a vertex class.
    pub(crate) fn link_shape(&self, v: usize) -> LinkShape {
        let cls = self.classes();
        let mut tris = 0i64;
        let mut ends = BTreeSet::new();
        let mut corner_count: BTreeMap<usize, usize> = BTreeMap::new();
        let mut end_links: Vec<[usize; 3]> = Vec::new();
        for t in 0..self.num_tets() {
            for i in 0..4 {
                if cls.vertex_of[t * 4 + i] != v {
                    continue;
                }
                tris += 1;
                let others: Vec<usize> = (0..4).filter(|&j| j != i).collect();
                let tri_ends = [0, 1, 2].map(|k| cls.end_of(t, i, others[k]));
                ends.extend(tri_ends);
                end_links.push(tri_ends);
                for f in (0..4).filter(|&f| f != i) {
                    *corner_count.entry(cls.corner_of(t, f, i)).or_insert(0) += 1;
                }
            }
        }
        if tris == 0 {
            return LinkShape::Other;
        }
        // a corner class seen twice is an interior link edge, once a boundary one
        let n_edges = corner_count.len() as i64;
        let chi = ends.len() as i64 - n_edges + tris;
        let e: Vec<usize> = ends.iter().copied().collect();
        let idx: HashMap<usize, usize> = e.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut uf = UnionFind::new(e.len());
        for tri in &end_links {
            uf.union(idx[&tri[0]], idx[&tri[1]]);
            uf.union(idx[&tri[0]], idx[&tri[2]]);
        }
        let (_, comps) = uf.canonical_labels();
        if comps != 1 {
            return LinkShape::Other;
        }
        let has_boundary = corner_count.values().any(|&c| c == 1);
        if !has_boundary {
            return if chi == 2 { LinkShape::Sphere } else { LinkShape::Other };
        }
        let single_cycle = self.boundary_link(v).map(|l| l.is_single_cycle()).unwrap_or(false);
        if chi == 1 && single_cycle {
            LinkShape::Disk
        } else {
            LinkShape::Other
        }
    }
}
