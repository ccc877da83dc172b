//! Small named complexes used as worked examples.
//!
//! * `figure1_ball`: cone with apex `v` over an octagon fanned from `c`
//!   (rim `x0..x7`). Gluing `[v,x0,x1]` to `[v,x3,x4]` (`x0->x4`, `x1->x3`)
//!   touches only at `v` and pinches the boundary there; afterwards
//!   `[v,x1,x2]` and `[v,x2,x3]` form a wound.
//! * `figure2_union`: two cones with apex `v` over squares `p q r s` fanned
//!   from `m1` and `m2`, joined along `[v,p,q]` and `[v,r,s]`, which meet only
//!   at `v`. The result is a cone over an annulus.
//! * `figure4_annulus_cone`: cone with apex `v` over an annulus of four
//!   squares, each cut by its diagonals. Outer corners `p0..p3`, inner
//!   `q0..q3`, centers `w0..w3`.
//! * `ex_nonhom_scenario`: two octagon cones (apexes `v`, `w`) united along a
//!   rim triangle so that `[v,x0,x1]` and `[w,y1,y0]` share an edge, then one
//!   pinching gluing at each apex.

use crate::builders::{cone, union_mogami, BuildError, Built, Complex2Pseudo};
use crate::script::{GlueSpec, Step};

pub const FIXTURE_NAMES: [&str; 4] = [
    "figure1_ball",
    "figure2_union",
    "figure4_annulus_cone",
    "ex_nonhom_scenario",
];

pub fn fixture(name: &str) -> Option<Built> {
    Some(match name {
        "figure1_ball" => figure1_ball(),
        "figure2_union" => figure2_union(),
        "figure4_annulus_cone" => figure4_annulus_cone(),
        "ex_nonhom_scenario" => ex_nonhom_scenario(),
        _ => return None,
    })
}

fn fan(center: &str, rim: &[String]) -> Complex2Pseudo {
    let n = rim.len();
    let tris: Vec<[&str; 3]> = (0..n)
        .map(|i| [center, rim[i].as_str(), rim[(i + 1) % n].as_str()])
        .collect();
    Complex2Pseudo::from_named(&tris).expect("a fan is a disk")
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn octagon_cone(apex: &str, center: &str, rim: &str) -> Built {
    cone(&fan(center, &names(rim, 8)), apex).expect("fan is strongly connected")
}

pub fn figure1_ball() -> Built {
    octagon_cone("v", "c", "x")
}

/// The gluing meeting only at `v`.
pub fn figure1_green(b: &Built) -> GlueSpec {
    b.spec(["v", "x0", "x1"], ["v", "x4", "x3"]).expect("fixture facets")
}

/// The pair that becomes a wound after the green gluing.
pub fn figure1_pink(b: &Built) -> GlueSpec {
    b.spec(["v", "x1", "x2"], ["v", "x3", "x2"]).expect("fixture facets")
}

fn cross(
    a: &Built,
    b: &Built,
    tri: [&str; 3],
) -> Result<(crate::complex::FacetRef, crate::complex::FacetRef, [u8; 3]), BuildError> {
    let fa = a.facet(tri)?;
    let fb = b.facet(tri)?;
    let corr = crate::perm::face_corners(fa.face as usize).map(|i| {
        (0..4)
            .find(|&j| b.labels[fb.tet][j] == a.labels[fa.tet][i])
            .expect("same labels") as u8
    });
    Ok((fa, fb, corr))
}

pub fn figure2_union() -> Built {
    let square: Vec<String> = ["p", "q", "r", "s"].map(String::from).to_vec();
    let c1 = cone(&fan("m1", &square), "v").expect("square fan");
    let c2 = cone(&fan("m2", &square), "v").expect("square fan");
    let iface = [
        cross(&c1, &c2, ["v", "p", "q"]).expect("fixture facets"),
        cross(&c1, &c2, ["v", "r", "s"]).expect("fixture facets"),
    ];
    union_mogami(&c1, &c2, &iface).expect("interface meets at v")
}

pub fn figure4_annulus() -> Complex2Pseudo {
    let p = names("p", 4);
    let q = names("q", 4);
    let w = names("w", 4);
    let mut tris: Vec<[&str; 3]> = Vec::new();
    for i in 0..4 {
        let j = (i + 1) % 4;
        tris.push([&p[i], &p[j], &w[i]]);
        tris.push([&p[j], &q[j], &w[i]]);
        tris.push([&q[j], &q[i], &w[i]]);
        tris.push([&q[i], &p[i], &w[i]]);
    }
    Complex2Pseudo::from_named(&tris).expect("annulus")
}

pub fn figure4_annulus_cone() -> Built {
    cone(&figure4_annulus(), "v").expect("annulus is strongly connected")
}

/// The fold `[v,q1,q0] = [w0,q1,q0]` (with `c,d = q1,q0` and `a,b = p0,p1`).
pub fn figure4_fold(b: &Built) -> GlueSpec {
    b.spec(["v", "q1", "q0"], ["w0", "q1", "q0"]).expect("fixture facets")
}

pub fn ex_nonhom_scenario() -> Built {
    let a = octagon_cone("v", "c1", "x");
    let b = octagon_cone("w", "c2", "y");
    let fa = a.facet(["c1", "x0", "x1"]).expect("rim triangle");
    let fb = b.facet(["c2", "y0", "y1"]).expect("rim triangle");
    // c1 -> c2, x0 -> y1, x1 -> y0
    let corr = crate::perm::face_corners(fa.face as usize).map(|i| {
        let to = match a.labels[fa.tet][i].as_str() {
            "c1" => "c2",
            "x0" => "y1",
            _ => "y0",
        };
        (0..4).find(|&j| b.labels[fb.tet][j] == to).expect("label") as u8
    });
    let mut u = union_mogami(&a, &b, &[(fa, fb, corr)]).expect("single-triangle union");
    let gv = u.spec(["v", "x2", "x3"], ["v", "x6", "x5"]).expect("fixture facets");
    u.push(Step::Glue(gv)).expect("pinch at v");
    let gw = u.spec(["w", "y2", "y3"], ["w", "y6", "y5"]).expect("fixture facets");
    u.push(Step::Glue(gw)).expect("pinch at w");
    u
}

/// The fold of `v*e` onto `w*e` along the shared edge `e = [x0,x1] = [y1,y0]`.
pub fn ex_nonhom_final_fold(b: &Built) -> GlueSpec {
    b.spec(["v", "x0", "x1"], ["w", "y1", "y0"]).expect("fixture facets")
}
