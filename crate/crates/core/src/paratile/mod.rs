//! Parallelohedron analysis: belts, the Minkowski–Venkov conditions, facet
//! vectors, the tiling lattice, and finite tiling patches.

mod patch;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polytope::{ridges, volume, Polytope};
use crate::ratlin::{hnf, Lattice, QMat, QVec, Rat};

pub use patch::{build_patch, Patch, RidgeCycle, SharedFacet};

/// All facets parallel to a common (d-2)-dimensional direction space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Belt {
    pub facet_ids: BTreeSet<usize>,
    pub direction_space: Vec<QVec>,
}

impl Belt {
    pub fn len(&self) -> usize {
        self.facet_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facet_ids.is_empty()
    }
}

/// Belts of `p`, one per distinct ridge direction space, sorted by facet set.
///
/// In the plane every ridge is a vertex with zero direction space, so the
/// single belt consists of all edges. Segments have no belts.
pub fn belts(p: &Polytope) -> Vec<Belt> {
    if p.dim() < 2 {
        return Vec::new();
    }
    let spaces: BTreeSet<Vec<QVec>> = ridges(p).into_iter().map(|r| r.direction_space).collect();
    let mut by_facets: BTreeMap<BTreeSet<usize>, Vec<QVec>> = BTreeMap::new();
    for space in spaces {
        let facet_ids: BTreeSet<usize> = p
            .facets()
            .iter()
            .filter(|f| space.iter().all(|u| f.normal.dot(u).is_zero()))
            .map(|f| f.id)
            .collect();
        by_facets.entry(facet_ids).or_insert(space);
    }
    by_facets
        .into_iter()
        .map(|(facet_ids, direction_space)| Belt {
            facet_ids,
            direction_space,
        })
        .collect()
}

/// Outcome of checking the three Minkowski–Venkov conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvReport {
    pub centrally_symmetric: bool,
    pub facet_symmetry_failures: BTreeSet<usize>,
    /// `(belt index, length)` for every belt whose length is not 4 or 6.
    pub belt_length_violations: Vec<(usize, usize)>,
    pub belts: Vec<Belt>,
    pub verdict: bool,
}

fn id_list(ids: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<String> = ids.into_iter().map(|i| i.to_string()).collect();
    format!("[{}]", v.join(", "))
}

impl fmt::Display for MvReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "centrally symmetric: {}", yes_no(self.centrally_symmetric))?;
        if self.facet_symmetry_failures.is_empty() {
            writeln!(f, "facets centrally symmetric: yes")?;
        } else {
            writeln!(
                f,
                "facets centrally symmetric: no {}",
                id_list(self.facet_symmetry_failures.iter().copied())
            )?;
        }
        if self.belt_length_violations.is_empty() {
            writeln!(f, "belt lengths in {{4, 6}}: yes")?;
        } else {
            let v: Vec<String> = self
                .belt_length_violations
                .iter()
                .map(|(b, l)| format!("belt {b} has length {l}"))
                .collect();
            writeln!(f, "belt lengths in {{4, 6}}: no ({})", v.join("; "))?;
        }
        for (k, b) in self.belts.iter().enumerate() {
            writeln!(
                f,
                "belt {k}: facets {} length {}",
                id_list(b.facet_ids.iter().copied()),
                b.len()
            )?;
        }
        write!(
            f,
            "verdict: {}",
            if self.verdict {
                "parallelohedron"
            } else {
                "not a parallelohedron"
            }
        )
    }
}

/// Checks central symmetry of `p`, of every facet, and that every belt has
/// 4 or 6 facets. Violations are collected, never raised.
pub fn check_parallelohedron(p: &Polytope) -> MvReport {
    let centrally_symmetric = p.center().is_some();
    let facet_symmetry_failures: BTreeSet<usize> = p
        .facets()
        .iter()
        .filter(|f| f.center.is_none())
        .map(|f| f.id)
        .collect();
    let belts = belts(p);
    let belt_length_violations: Vec<(usize, usize)> = belts
        .iter()
        .enumerate()
        .filter(|(_, b)| b.len() != 4 && b.len() != 6)
        .map(|(k, b)| (k, b.len()))
        .collect();
    let verdict =
        centrally_symmetric && facet_symmetry_failures.is_empty() && belt_length_violations.is_empty();
    MvReport {
        centrally_symmetric,
        facet_symmetry_failures,
        belt_length_violations,
        belts,
        verdict,
    }
}

/// Fails with the attached report unless `p` is a parallelohedron.
pub fn require_parallelohedron(p: &Polytope) -> Result<MvReport> {
    let report = check_parallelohedron(p);
    if report.verdict {
        Ok(report)
    } else {
        Err(Error::NotParallelohedron(Box::new(report)))
    }
}

/// Facet vectors `t(F)` with the antipodal pairing of facets.
///
/// Antipodal pairs are numbered by their smaller facet id; that numbering
/// is the vertex numbering of the Venkov graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetVectorTable {
    pub vectors: Vec<QVec>,
    pub antipode: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    pub pair_of: Vec<usize>,
}

impl FacetVectorTable {
    pub fn vector(&self, facet: usize) -> &QVec {
        &self.vectors[facet]
    }

    /// Facet whose vector is `t`, if any.
    pub fn facet_with_vector(&self, t: &QVec) -> Option<usize> {
        self.vectors.iter().position(|v| v == t)
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }
}

/// Antipodal facet pairs `(F, F')` with `F < F'`, sorted.
pub fn antipodal_pairs(p: &Polytope) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::with_capacity(p.facets().len() / 2);
    for f in p.facets() {
        let a = p
            .antipode(f.id)
            .ok_or_else(|| Error::Inconsistency(format!("facet {} has no antipode", f.id)))?;
        if f.id < a {
            pairs.push((f.id, a));
        }
    }
    Ok(pairs)
}

/// Facet vectors `t(F) = 2 (center(F) - center(P))`, each verified against
/// `P ∩ (P + t(F)) = F` before returning.
pub fn facet_vectors(p: &Polytope) -> Result<FacetVectorTable> {
    require_parallelohedron(p)?;
    let c = p.center().expect("checked above");
    let two = Rat::from_integer(2.into());
    let n = p.facets().len();
    let pairs = antipodal_pairs(p)?;
    let mut antipode = vec![0; n];
    let mut pair_of = vec![0; n];
    for (k, &(a, b)) in pairs.iter().enumerate() {
        antipode[a] = b;
        antipode[b] = a;
        pair_of[a] = k;
        pair_of[b] = k;
    }
    let mut vectors = Vec::with_capacity(n);
    for f in p.facets() {
        let fc = f.center.as_ref().expect("checked above");
        let t = (fc - &c).scale(&two);
        verify_facet_vector(p, f.id, antipode[f.id], &t)?;
        vectors.push(t);
    }
    Ok(FacetVectorTable {
        vectors,
        antipode,
        pairs,
        pair_of,
    })
}

/// `P ∩ (P + t) = F`: `P + t` lies beyond the hyperplane of `F` (its copy of
/// the antipodal facet sits on it) and contains every vertex of `F`.
fn verify_facet_vector(p: &Polytope, facet: usize, antipode: usize, t: &QVec) -> Result<()> {
    let f = p.facet(facet);
    let g = p.facet(antipode);
    let n = f.outward();
    let fail = || Error::Inconsistency(format!("facet vector {t} of facet {facet} fails P ∩ (P + t) = F"));
    if g.outward() != -&n || n.dot(t) - &g.offset != f.offset {
        return Err(fail());
    }
    for &v in &f.vertex_ids {
        if !p.contains(&(&p.vertices()[v] - t)) {
            return Err(fail());
        }
    }
    Ok(())
}

/// The lattice generated by all facet vectors; checked to have full rank
/// and covolume equal to the volume of `p`.
pub fn tiling_lattice(p: &Polytope) -> Result<Lattice> {
    let table = facet_vectors(p)?;
    lattice_from_table(p, &table)
}

pub(crate) fn lattice_from_table(p: &Polytope, table: &FacetVectorTable) -> Result<Lattice> {
    let l = hnf(&QMat::new(p.dim(), table.vectors.clone())?);
    if !l.is_full_rank() {
        return Err(Error::Inconsistency(format!(
            "facet vectors span rank {} < {}",
            l.rank(),
            p.dim()
        )));
    }
    let det = l.abs_det().expect("full rank");
    let vol = volume(p);
    if det != vol {
        return Err(Error::Inconsistency(format!(
            "lattice determinant {det} differs from volume {vol}"
        )));
    }
    Ok(l)
}
