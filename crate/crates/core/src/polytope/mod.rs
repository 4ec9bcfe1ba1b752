//! Exact convex polytopes: vertex/facet description, ridges, central
//! symmetry, volume, direct products and canonical forms.

mod hull;

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratlin::{affine_rank, QMat, QVec, Rat};

/// A facet `sign · normal · x <= offset`.
///
/// `normal` is the canonical primitive integer direction of the facet's
/// hyperplane (first nonzero entry positive); `sign` restores the outward
/// orientation. Antipodal facets of a centrally symmetric polytope therefore
/// share `normal` and differ in `sign`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub id: usize,
    pub normal: QVec,
    pub sign: i32,
    pub offset: Rat,
    pub vertex_ids: BTreeSet<usize>,
    pub center: Option<QVec>,
}

impl Facet {
    pub fn outward(&self) -> QVec {
        if self.sign < 0 {
            -&self.normal
        } else {
            self.normal.clone()
        }
    }

    /// `outward · x - offset`: negative inside, zero on the hyperplane.
    pub fn slack(&self, x: &QVec) -> Rat {
        let v = self.normal.dot(x);
        if self.sign < 0 {
            -v - &self.offset
        } else {
            v - &self.offset
        }
    }
}

/// A (d-2)-face, given by the two facets meeting in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ridge {
    pub id: usize,
    pub facet_pair: (usize, usize),
    pub vertex_ids: BTreeSet<usize>,
    /// Reduced row echelon basis of the linear space parallel to the ridge.
    pub direction_space: Vec<QVec>,
}

/// Full-dimensional convex polytope with exact vertices and facets.
///
/// Vertices are sorted lexicographically and facets by `(normal, -sign)`, so
/// two polytopes with the same point set compare equal field by field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<QVec>,
    facets: Vec<Facet>,
    pub name: Option<String>,
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet(&self, id: usize) -> &Facet {
        &self.facets[id]
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Facet-by-vertex incidence table.
    pub fn incidence(&self) -> Vec<Vec<bool>> {
        self.facets
            .iter()
            .map(|f| (0..self.vertices.len()).map(|v| f.vertex_ids.contains(&v)).collect())
            .collect()
    }

    /// Builds the polytope from its exact vertex set and facet inequalities
    /// `outward · x <= offset`, canonicalizing orders and normals.
    fn from_parts(dim: usize, mut vertices: Vec<QVec>, halfspaces: Vec<(QVec, Rat)>) -> Self {
        vertices.sort();
        vertices.dedup();
        let mut facets: Vec<Facet> = halfspaces
            .into_iter()
            .map(|(outward, offset)| {
                let (normal, sign) = outward
                    .canonical_direction()
                    .expect("facet normal is nonzero");
                // outward = sign * k * normal with k > 0
                let pivot = normal.iter().position(|a| !a.is_zero()).unwrap();
                let k = (&outward[pivot] / &normal[pivot]).abs();
                Facet {
                    id: 0,
                    normal,
                    sign,
                    offset: offset / k,
                    vertex_ids: BTreeSet::new(),
                    center: None,
                }
            })
            .collect();
        facets.sort_by(|a, b| {
            a.normal
                .cmp(&b.normal)
                .then(b.sign.cmp(&a.sign))
                .then(a.offset.cmp(&b.offset))
        });
        facets.dedup_by(|a, b| a.normal == b.normal && a.sign == b.sign && a.offset == b.offset);
        for (id, f) in facets.iter_mut().enumerate() {
            f.id = id;
            f.vertex_ids = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| f.slack(v).is_zero())
                .map(|(i, _)| i)
                .collect();
            let pts: Vec<&QVec> = f.vertex_ids.iter().map(|&i| &vertices[i]).collect();
            f.center = center_of_symmetry(&pts);
        }
        Polytope {
            dim,
            vertices,
            facets,
            name: None,
        }
    }

    pub fn translate(&self, t: &QVec) -> Polytope {
        let vertices = self.vertices.iter().map(|v| v + t).collect();
        let hs = self
            .facets
            .iter()
            .map(|f| {
                let o = f.outward();
                let off = &f.offset + o.dot(t);
                (o, off)
            })
            .collect();
        let mut p = Polytope::from_parts(self.dim, vertices, hs);
        p.name = self.name.clone();
        p
    }

    /// Whether `x` lies in the closed polytope.
    pub fn contains(&self, x: &QVec) -> bool {
        self.facets.iter().all(|f| !f.slack(x).is_positive())
    }

    /// Whether `x` lies in the open interior.
    pub fn contains_interior(&self, x: &QVec) -> bool {
        self.facets.iter().all(|f| f.slack(x).is_negative())
    }

    pub fn vertex_centroid(&self) -> QVec {
        centroid(&self.vertices.iter().collect::<Vec<_>>())
    }

    pub fn center(&self) -> Option<QVec> {
        center_of_symmetry(&self.vertices.iter().collect::<Vec<_>>())
    }

    /// Index of the facet antipodal to `id` (same hyperplane direction,
    /// opposite orientation, exchanged by the central symmetry).
    pub fn antipode(&self, id: usize) -> Option<usize> {
        let c = self.center()?;
        let f = &self.facets[id];
        let want: BTreeSet<QVec> = f
            .vertex_ids
            .iter()
            .map(|&i| &c.scale(&Rat::from_integer(2.into())) - &self.vertices[i])
            .collect();
        self.facets.iter().position(|g| {
            g.normal == f.normal
                && g.sign == -f.sign
                && g.vertex_ids.iter().map(|&i| self.vertices[i].clone()).collect::<BTreeSet<_>>() == want
        })
    }
}

fn centroid(points: &[&QVec]) -> QVec {
    let n = Rat::from_integer(points.len().into());
    let mut s = QVec::zeros(points[0].dim());
    for p in points {
        s = &s + p;
    }
    s.scale(&(Rat::from_integer(1.into()) / n))
}

/// Center `c` with `{2c - p} = {p}`, if the point set has one.
pub fn center_of_symmetry(points: &[&QVec]) -> Option<QVec> {
    if points.is_empty() {
        return None;
    }
    let c = centroid(points);
    let two_c = c.scale(&Rat::from_integer(2.into()));
    let set: BTreeSet<&QVec> = points.iter().copied().collect();
    points
        .iter()
        .all(|p| set.contains(&(&two_c - p)))
        .then_some(c)
}

/// Convex hull of a full-dimensional point set with complete facet data.
pub fn dual_description(points: &[QVec]) -> Result<Polytope> {
    let h = hull::convex_hull(points)?;
    let vertices = h.vertices.iter().map(|&i| points[i].clone()).collect();
    Ok(Polytope::from_parts(points[0].dim(), vertices, h.facets))
}

/// Polytope `{x : outward_i · x <= offset_i}`; the system must be bounded
/// with nonempty interior.
pub fn from_halfspaces(dim: usize, halfspaces: &[(QVec, Rat)]) -> Result<Polytope> {
    if let Some((bad, _)) = halfspaces.iter().find(|(n, _)| n.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let pts = hull::enumerate_vertices(halfspaces, dim);
    if pts.is_empty() {
        return Err(Error::NotFullDimensional {
            affine_dim: -1,
            ambient_dim: dim,
        });
    }
    dual_description(&pts)
}

/// All ridges, found by pairwise facet intersection. Empty for `d < 2`.
pub fn ridges(p: &Polytope) -> Vec<Ridge> {
    let d = p.dim;
    if d < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, f) in p.facets.iter().enumerate() {
        for g in &p.facets[i + 1..] {
            let shared: BTreeSet<usize> = f.vertex_ids.intersection(&g.vertex_ids).copied().collect();
            if shared.len() < d - 1 {
                continue;
            }
            let pts: Vec<&QVec> = shared.iter().map(|&v| &p.vertices[v]).collect();
            if affine_rank(&pts) != d as isize - 2 {
                continue;
            }
            let containing = p
                .facets
                .iter()
                .filter(|h| shared.is_subset(&h.vertex_ids))
                .count();
            if containing != 2 {
                continue;
            }
            out.push(Ridge {
                id: out.len(),
                facet_pair: (f.id, g.id),
                vertex_ids: shared,
                direction_space: direction_space(&pts),
            });
        }
    }
    out
}

/// Reduced row echelon basis of the linear space parallel to `aff(points)`.
pub fn direction_space(points: &[&QVec]) -> Vec<QVec> {
    let Some((first, rest)) = points.split_first() else {
        return Vec::new();
    };
    if rest.is_empty() {
        return Vec::new();
    }
    let diffs = rest.iter().map(|p| *p - *first).collect();
    QMat::new(first.dim(), diffs).unwrap().rref().0.into_rows()
}

/// Vertex sets of the `(k-1)`-faces of a `k`-face, each found as the
/// intersection with some facet hyperplane.
fn subfaces(p: &Polytope, face: &BTreeSet<usize>, k: usize) -> Vec<BTreeSet<usize>> {
    let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for f in &p.facets {
        let s: BTreeSet<usize> = face.intersection(&f.vertex_ids).copied().collect();
        if s.len() < k || s.len() == face.len() {
            continue;
        }
        let pts: Vec<&QVec> = s.iter().map(|&i| &p.vertices[i]).collect();
        if affine_rank(&pts) == k as isize - 1 {
            out.insert(s);
        }
    }
    out.into_iter().collect()
}

/// Triangulates a `k`-face by coning from its vertex centroid over the
/// triangulated boundary. Simplices are returned as point lists.
fn triangulate(p: &Polytope, face: &BTreeSet<usize>, k: usize) -> Vec<Vec<QVec>> {
    if k == 0 {
        let v = *face.iter().next().unwrap();
        return vec![vec![p.vertices[v].clone()]];
    }
    let pts: Vec<&QVec> = face.iter().map(|&i| &p.vertices[i]).collect();
    let c = centroid(&pts);
    let mut out = Vec::new();
    for sub in subfaces(p, face, k) {
        for mut s in triangulate(p, &sub, k - 1) {
            s.push(c.clone());
            out.push(s);
        }
    }
    out
}

fn factorial(n: usize) -> Rat {
    Rat::from_integer((1..=n).product::<usize>().into())
}

/// Exact Euclidean volume.
pub fn volume(p: &Polytope) -> Rat {
    let all: BTreeSet<usize> = (0..p.vertices.len()).collect();
    let d = p.dim;
    let mut total = Rat::zero();
    for s in triangulate(p, &all, d) {
        let rows: Vec<QVec> = s[1..].iter().map(|v| v - &s[0]).collect();
        total += QMat::new(d, rows).unwrap().det().abs();
    }
    total / factorial(d)
}

/// `P1 × P2` with facets `F × P2` and `P1 × F`.
pub fn direct_product(p1: &Polytope, p2: &Polytope) -> Polytope {
    let (d1, d2) = (p1.dim, p2.dim);
    let mut vertices = Vec::with_capacity(p1.vertices.len() * p2.vertices.len());
    for a in &p1.vertices {
        for b in &p2.vertices {
            vertices.push(a.concat(b));
        }
    }
    let mut hs = Vec::with_capacity(p1.facets.len() + p2.facets.len());
    for f in &p1.facets {
        hs.push((f.outward().concat(&QVec::zeros(d2)), f.offset.clone()));
    }
    for f in &p2.facets {
        hs.push((QVec::zeros(d1).concat(&f.outward()), f.offset.clone()));
    }
    let mut p = Polytope::from_parts(d1 + d2, vertices, hs);
    if let (Some(a), Some(b)) = (&p1.name, &p2.name) {
        p.name = Some(format!("{a}_x_{b}"));
    }
    p
}

/// Translates the center of symmetry (or vertex centroid) to the origin.
/// Two polytopes agree up to translation iff their canonical forms are equal.
pub fn canonical_form(p: &Polytope) -> Polytope {
    let c = p.center().unwrap_or_else(|| p.vertex_centroid());
    p.translate(&-c)
}

/// A polytope living in a linear subspace of a larger space.
///
/// `local` is full-dimensional in the coordinates of `basis`; the ambient
/// point with local coordinates `c` is `Σ c_i · basis_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedPolytope {
    pub basis: QMat,
    pub local: Polytope,
}

impl EmbeddedPolytope {
    /// Embeds the convex hull of `points`, which must lie in the row span of
    /// `basis` and span it affinely.
    pub fn from_ambient_points(basis: QMat, points: &[QVec]) -> Result<Self> {
        let mut local_pts = Vec::with_capacity(points.len());
        for p in points {
            let c = basis
                .solve_left(p)
                .ok_or_else(|| Error::InvalidArgument(format!("point {p} is outside the hull")))?;
            local_pts.push(c);
        }
        let local = dual_description(&local_pts)?;
        Ok(EmbeddedPolytope { basis, local })
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn dim(&self) -> usize {
        self.local.dim()
    }

    pub fn ambient_vertices(&self) -> Vec<QVec> {
        let mut v: Vec<QVec> = self
            .local
            .vertices()
            .iter()
            .map(|c| self.basis.combine(c))
            .collect();
        v.sort();
        v
    }

    pub fn to_ambient(&self, local: &QVec) -> QVec {
        self.basis.combine(local)
    }

    /// Volume measured in the coordinates of the stored basis.
    pub fn volume_in_basis(&self) -> Rat {
        volume(&self.local)
    }

    /// The same polytope in the coordinates of another basis of its hull.
    pub fn in_basis(&self, basis: &QMat) -> Result<EmbeddedPolytope> {
        EmbeddedPolytope::from_ambient_points(basis.clone(), &self.ambient_vertices())
    }
}
