//! Reference inputs: the classical low-dimensional parallelohedra, a few
//! products, two non-parallelohedra, and the lattices generating them.

use crate::polytope::{dual_description, direct_product, Polytope};
use crate::ratlin::{hnf, Lattice, QMat, QVec};
use crate::voronoi::voronoi_cell;

fn hull(name: &str, points: Vec<QVec>) -> Polytope {
    dual_description(&points)
        .expect("catalog points are full-dimensional")
        .with_name(name)
}

fn half_cube_corners(d: usize) -> Vec<QVec> {
    (0..1u32 << d)
        .map(|mask| {
            QVec::from_fracs(
                &(0..d)
                    .map(|i| (if mask >> i & 1 == 1 { 1 } else { -1 }, 2))
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}

pub fn segment() -> Polytope {
    hull("segment", half_cube_corners(1))
}

pub fn square() -> Polytope {
    hull("square", half_cube_corners(2))
}

pub fn cube() -> Polytope {
    hull("cube", half_cube_corners(3))
}

/// Affine image of the regular hexagon with rational vertices; area 3.
pub fn hexagon() -> Polytope {
    hull(
        "hexagon",
        [
            [(1, 1), (0, 1)],
            [(1, 2), (1, 1)],
            [(-1, 2), (1, 1)],
            [(-1, 1), (0, 1)],
            [(-1, 2), (-1, 1)],
            [(1, 2), (-1, 1)],
        ]
        .iter()
        .map(|p| QVec::from_fracs(p))
        .collect(),
    )
}

pub fn hexagonal_prism() -> Polytope {
    direct_product(&hexagon(), &segment()).with_name("hexagonal_prism")
}

pub fn rhombic_dodecahedron() -> Polytope {
    let mut pts = Vec::new();
    for i in 0..3 {
        for s in [-1, 1] {
            let mut c = [0; 3];
            c[i] = s;
            pts.push(QVec::from_ints(&c));
        }
    }
    pts.extend(half_cube_corners(3));
    hull("rhombic_dodecahedron", pts)
}

/// Voronoi cell of the body-centred cubic lattice.
pub fn truncated_octahedron() -> Polytope {
    voronoi_cell(&bcc())
        .expect("BCC is full rank")
        .with_name("truncated_octahedron")
}

/// Rhombic dodecahedron stretched along a fourfold axis: the Minkowski sum
/// with a vertical segment of length 1.
pub fn elongated_dodecahedron() -> Polytope {
    let rd = rhombic_dodecahedron();
    let mut pts = Vec::new();
    for v in rd.vertices() {
        for s in [-1, 1] {
            pts.push(v + &QVec::from_fracs(&[(0, 1), (0, 1), (s, 2)]));
        }
    }
    hull("elongated_dodecahedron", pts)
}

pub fn hexagon_x_hexagon() -> Polytope {
    direct_product(&hexagon(), &hexagon()).with_name("hexagon_x_hexagon")
}

pub fn square_x_hexagon() -> Polytope {
    direct_product(&square(), &hexagon()).with_name("square_x_hexagon")
}

/// Centrally symmetric octagon whose single belt has eight edges.
pub fn octagon() -> Polytope {
    hull(
        "octagon",
        [[2, 1], [1, 2], [-1, 2], [-2, 1], [-2, -1], [-1, -2], [1, -2], [2, -1]]
            .iter()
            .map(|p| QVec::from_ints(p))
            .collect(),
    )
}

/// Triangle × segment; the triangles are not centrally symmetric.
pub fn triangular_prism() -> Polytope {
    let tri = hull(
        "triangle",
        [[0, 0], [1, 0], [0, 1]].iter().map(|p| QVec::from_ints(p)).collect(),
    );
    direct_product(&tri, &segment()).with_name("triangular_prism")
}

/// Every parallelohedron in the catalog.
pub fn parallelohedra() -> Vec<Polytope> {
    vec![
        segment(),
        square(),
        hexagon(),
        cube(),
        hexagonal_prism(),
        rhombic_dodecahedron(),
        truncated_octahedron(),
        elongated_dodecahedron(),
        hexagon_x_hexagon(),
        square_x_hexagon(),
    ]
}

/// Catalog entries that are not parallelohedra.
pub fn non_parallelohedra() -> Vec<Polytope> {
    vec![octagon(), triangular_prism()]
}

pub fn by_name(name: &str) -> Option<Polytope> {
    parallelohedra()
        .into_iter()
        .chain(non_parallelohedra())
        .find(|p| p.name.as_deref() == Some(name))
}

fn lattice(rows: &[&[(i64, i64)]]) -> Lattice {
    let rows: Vec<QVec> = rows.iter().map(|r| QVec::from_fracs(r)).collect();
    hnf(&QMat::new(rows[0].dim(), rows).unwrap())
}

pub fn integer_lattice(d: usize) -> Lattice {
    hnf(&QMat::identity(d))
}

pub fn fcc() -> Lattice {
    lattice(&[
        &[(1, 1), (1, 1), (0, 1)],
        &[(1, 1), (0, 1), (1, 1)],
        &[(0, 1), (1, 1), (1, 1)],
    ])
}

pub fn bcc() -> Lattice {
    lattice(&[
        &[(1, 1), (0, 1), (0, 1)],
        &[(0, 1), (1, 1), (0, 1)],
        &[(1, 2), (1, 2), (1, 2)],
    ])
}

/// Rational image of the hexagonal lattice, basis `{(1,0), (1/2,1)}`.
pub fn hexagonal_lattice() -> Lattice {
    lattice(&[&[(1, 1), (0, 1)], &[(1, 2), (1, 1)]])
}

/// Named lattices for fixtures.
pub fn lattices() -> Vec<(&'static str, Lattice)> {
    vec![
        ("z2", integer_lattice(2)),
        ("z3", integer_lattice(3)),
        ("fcc", fcc()),
        ("bcc", bcc()),
        ("hexagonal", hexagonal_lattice()),
    ]
}
