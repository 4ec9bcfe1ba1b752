use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{facet_vectors, lattice_from_table, FacetVectorTable};
use crate::error::{Error, Result};
use crate::polytope::{ridges, Polytope, Ridge};
use crate::ratlin::{Lattice, QMat, QVec, Rat};

/// Two cells sharing a full facet: `cells[to] = cells[from] + t(facet)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SharedFacet {
    pub from: usize,
    pub to: usize,
    pub facet: usize,
}

/// All cells around one interior (d-2)-face of the tiling, in rotational
/// order; consecutive cells (cyclically) share a facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RidgeCycle {
    /// Ridge of the generator this face is a translate of.
    pub ridge: usize,
    pub cells: Vec<usize>,
}

/// A finite piece of the face-to-face tiling by translates `P + λ`.
#[derive(Clone, Debug)]
pub struct Patch {
    pub generator: Polytope,
    pub lattice: Lattice,
    pub table: FacetVectorTable,
    /// Lattice vectors of the cells, sorted.
    pub cells: Vec<QVec>,
    index: BTreeMap<QVec, usize>,
    /// One orientation per shared facet (the one crossing a `+`-signed facet).
    pub shared_facets: Vec<SharedFacet>,
    pub ridge_cycles: Vec<RidgeCycle>,
}

impl Patch {
    pub fn cell_index(&self, lambda: &QVec) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    /// Generator facet crossed going from cell `a` to cell `b`, if adjacent.
    pub fn crossing(&self, a: usize, b: usize) -> Option<usize> {
        self.table
            .facet_with_vector(&(&self.cells[b] - &self.cells[a]))
    }

    /// Cells facet-adjacent to `a`, with the facet crossed.
    pub fn neighbors(&self, a: usize) -> Vec<(usize, usize)> {
        self.table
            .vectors
            .iter()
            .enumerate()
            .filter_map(|(f, t)| self.cell_index(&(&self.cells[a] + t)).map(|b| (b, f)))
            .collect()
    }

    /// Ridge-cycle counts keyed by cycle length.
    pub fn cycle_lengths(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for c in &self.ridge_cycles {
            *m.entry(c.cells.len()).or_insert(0) += 1;
        }
        m
    }

    /// Every oriented shared facet `(from, to)`, both orientations.
    pub fn oriented_facets(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self
            .shared_facets
            .iter()
            .flat_map(|s| [(s.from, s.to), (s.to, s.from)])
            .collect();
        v.sort();
        v
    }
}

/// Offsets `μ` of the cells `P + μ` containing ridge `r` of `P`, in
/// rotational order starting from `0`.
fn cells_around(p: &Polytope, table: &FacetVectorTable, r: &Ridge) -> Result<Vec<QVec>> {
    let verts: Vec<&QVec> = r.vertex_ids.iter().map(|&i| &p.vertices()[i]).collect();
    let contains_ridge = |mu: &QVec, f: usize| {
        let facet = p.facet(f);
        verts.iter().all(|v| facet.slack(&(*v - mu)).is_zero())
    };
    let mut seen: BTreeSet<QVec> = BTreeSet::new();
    let mut queue = VecDeque::from([QVec::zeros(p.dim())]);
    seen.insert(QVec::zeros(p.dim()));
    while let Some(mu) = queue.pop_front() {
        for f in 0..p.facets().len() {
            if contains_ridge(&mu, f) {
                let next = &mu + table.vector(f);
                if seen.len() > 8 {
                    return Err(Error::Inconsistency(format!(
                        "ridge {} is surrounded by too many cells",
                        r.id
                    )));
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    // Project onto the 2-plane orthogonal to the ridge and sort by angle.
    let d = p.dim();
    let plane = QMat::new(d, r.direction_space.clone())?.nullspace();
    debug_assert_eq!(plane.len(), 2);
    let anchor = {
        let mut s = QVec::zeros(d);
        for v in &verts {
            s = &s + v;
        }
        s.scale(&Rat::new(1.into(), verts.len().into()))
    };
    let center = p.center().expect("parallelohedron");
    let coords = |mu: &QVec| {
        let rel = &(&center + mu) - &anchor;
        (rel.dot(&plane[0]), rel.dot(&plane[1]))
    };
    let half = |(x, y): &(Rat, Rat)| {
        if y.is_positive() || (y.is_zero() && x.is_positive()) {
            0
        } else {
            1
        }
    };
    let mut ordered: Vec<(QVec, (Rat, Rat))> = seen.into_iter().map(|m| {
        let c = coords(&m);
        (m, c)
    }).collect();
    ordered.sort_by(|(_, a), (_, b)| {
        half(a).cmp(&half(b)).then_with(|| {
            let cross = &a.0 * &b.1 - &a.1 * &b.0;
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    let start = ordered.iter().position(|(m, _)| m.is_zero()).unwrap();
    ordered.rotate_left(start);
    Ok(ordered.into_iter().map(|(m, _)| m).collect())
}

fn box_points(dim: usize, radius: i64) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-radius..=radius).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.into());
                    p
                })
            })
            .collect();
    }
    out
}

/// Cells `P + Σ c_i b_i` with `|c_i| <= radius` over the canonical basis of
/// the tiling lattice, their shared facets, and every ridge cycle whose
/// cells all lie in the patch.
pub fn build_patch(p: &Polytope, radius: i64) -> Result<Patch> {
    if radius < 1 {
        return Err(Error::InvalidArgument(format!("patch radius must be >= 1, got {radius}")));
    }
    let table = facet_vectors(p)?;
    let lattice = lattice_from_table(p, &table)?;
    let mut cells: Vec<QVec> = box_points(p.dim(), radius)
        .iter()
        .map(|c| lattice.point(c))
        .collect();
    cells.sort();
    let index: BTreeMap<QVec, usize> = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();

    let mut shared_facets = Vec::new();
    for (a, lambda) in cells.iter().enumerate() {
        for f in p.facets().iter().filter(|f| f.sign > 0) {
            if let Some(&b) = index.get(&(lambda + table.vector(f.id))) {
                shared_facets.push(SharedFacet {
                    from: a,
                    to: b,
                    facet: f.id,
                });
            }
        }
    }

    let mut ridge_cycles = Vec::new();
    let mut seen_faces: BTreeSet<Vec<QVec>> = BTreeSet::new();
    for r in ridges(p) {
        let around = cells_around(p, &table, &r)?;
        if around.len() != 3 && around.len() != 4 {
            return Err(Error::Inconsistency(format!(
                "ridge {} lies in {} cells",
                r.id,
                around.len()
            )));
        }
        for lambda in &cells {
            let members: Option<Vec<usize>> = around
                .iter()
                .map(|mu| index.get(&(lambda + mu)).copied())
                .collect();
            let Some(members) = members else { continue };
            let mut face: Vec<QVec> = r
                .vertex_ids
                .iter()
                .map(|&v| &p.vertices()[v] + lambda)
                .collect();
            face.sort();
            if !seen_faces.insert(face) {
                continue;
            }
            for k in 0..members.len() {
                let (a, b) = (members[k], members[(k + 1) % members.len()]);
                if table.facet_with_vector(&(&cells[b] - &cells[a])).is_none() {
                    return Err(Error::Inconsistency(format!(
                        "consecutive cells {a} and {b} of a ridge cycle are not adjacent"
                    )));
                }
            }
            let start = (0..members.len()).min_by_key(|&k| members[k]).unwrap();
            let mut cyc = members;
            cyc.rotate_left(start);
            ridge_cycles.push(RidgeCycle { ridge: r.id, cells: cyc });
        }
    }
    ridge_cycles.sort_by(|a, b| a.cells.cmp(&b.cells).then(a.ridge.cmp(&b.ridge)));

    Ok(Patch {
        generator: p.clone(),
        lattice,
        table,
        cells,
        index,
        shared_facets,
        ridge_cycles,
    })
}
