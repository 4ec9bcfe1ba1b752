//! Constructive factorization of reducible parallelohedra.
//!
//! For a partition `A1 ⊔ A2` of the Venkov vertices with no red edge across,
//! the facet vectors of the two blocks generate complementary sublattices
//! `Λ = Λ(A1) ⊕ Λ(A2)`. Projecting `P` onto each span along the other gives
//! parallelohedra `P1`, `P2` with `P = P1 ⊕ P2`. [`factor`] applies this
//! split recursively until every factor has a connected red graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::paratile::{
    belts, check_parallelohedron, facet_vectors, lattice_from_table, FacetVectorTable,
};
use crate::polytope::{
    canonical_form, direct_product, dual_description, EmbeddedPolytope, Polytope,
};
use crate::ratlin::{direct_sum_check, hnf, Lattice, QMat, QVec};
use crate::venkov::{venkov_graph, VenkovGraph};

/// Lattice generated by the facet vectors of the pairs in `component`.
pub fn sublattice_of_component(table: &FacetVectorTable, component: &[usize]) -> Result<Lattice> {
    if component.is_empty() {
        return Err(Error::InvalidArgument("empty vertex set".into()));
    }
    let mut gens = Vec::with_capacity(2 * component.len());
    for &v in component {
        let &(a, b) = table
            .pairs
            .get(v)
            .ok_or_else(|| Error::InvalidArgument(format!("no Venkov vertex {v}")))?;
        gens.push(table.vector(a).clone());
        gens.push(table.vector(b).clone());
    }
    Ok(hnf(&QMat::new(gens[0].dim(), gens)?))
}

/// Reduced row echelon basis of the row span; local coordinates in this
/// basis are the ambient coordinates at the pivot columns.
fn span_basis(l: &Lattice) -> QMat {
    l.basis().rref().0
}

fn check_partition(n: usize, a1: &[usize], a2: &[usize]) -> Result<()> {
    let s1: BTreeSet<usize> = a1.iter().copied().collect();
    let s2: BTreeSet<usize> = a2.iter().copied().collect();
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::InvalidPartition("both blocks must be nonempty".into()));
    }
    if s1.len() != a1.len() || s2.len() != a2.len() || !s1.is_disjoint(&s2) {
        return Err(Error::InvalidPartition("blocks overlap".into()));
    }
    if s1.len() + s2.len() != n || s1.iter().chain(&s2).any(|&v| v >= n) {
        return Err(Error::InvalidPartition(format!(
            "blocks must cover the {n} Venkov vertices exactly"
        )));
    }
    Ok(())
}

/// The first red edge joining the two blocks, if any.
pub fn crossing_red_edge(g: &VenkovGraph, a1: &[usize]) -> Option<(usize, usize)> {
    let s1: BTreeSet<usize> = a1.iter().copied().collect();
    g.red_edges
        .iter()
        .copied()
        .find(|(a, b)| s1.contains(a) != s1.contains(b))
}

/// Minkowski sum of finitely many point sets.
fn minkowski_points(sets: &[Vec<QVec>]) -> Vec<QVec> {
    let mut acc = vec![QVec::zeros(sets[0][0].dim())];
    for s in sets {
        acc = acc.iter().flat_map(|a| s.iter().map(move |b| a + b)).collect();
        acc.sort();
        acc.dedup();
    }
    acc
}

/// Whether the Minkowski sum of the factors equals `p` up to translation.
fn reconstructs(p: &Polytope, factors: &[&EmbeddedPolytope]) -> Result<bool> {
    let sets: Vec<Vec<QVec>> = factors.iter().map(|f| f.ambient_vertices()).collect();
    let sum = dual_description(&minkowski_points(&sets))?;
    Ok(canonical_form(&sum).vertices() == canonical_form(p).vertices())
}

/// Splits `p` along the partition `a1 ⊔ a2` of its Venkov vertices.
///
/// `p` is first centered at the origin. The factors are the projections of
/// `p` onto `lin Λ(a1)` along `lin Λ(a2)` and vice versa, returned in the
/// ambient coordinates of `p` with the echelon basis of their span. Before
/// returning, `p = P1 ⊕ P2` and the parallelohedron property of both
/// factors are verified exactly.
pub fn split(p: &Polytope, a1: &[usize], a2: &[usize]) -> Result<(EmbeddedPolytope, EmbeddedPolytope)> {
    let p = canonical_form(p);
    let g = venkov_graph(&p)?;
    check_partition(g.vertex_count(), a1, a2)?;
    if let Some((a, b)) = crossing_red_edge(&g, a1) {
        return Err(Error::RedEdgeCrossing(a, b));
    }
    let table = facet_vectors(&p)?;
    let whole = lattice_from_table(&p, &table)?;
    let l1 = sublattice_of_component(&table, a1)?;
    let l2 = sublattice_of_component(&table, a2)?;
    if !direct_sum_check(&whole, &l1, &l2)? {
        return Err(Error::DirectSumFailure);
    }

    let b1 = span_basis(&l1);
    let b2 = span_basis(&l2);
    let inv = b1
        .stack(&b2)?
        .inverse()
        .ok_or_else(|| Error::Inconsistency("sublattice spans are not complementary".into()))?;
    let r1 = b1.nrows();
    let (mut pts1, mut pts2) = (Vec::new(), Vec::new());
    for v in p.vertices() {
        let c = inv.combine(v).into_coords();
        let (c1, c2) = c.split_at(r1);
        pts1.push(QVec::new(c1.to_vec()));
        pts2.push(QVec::new(c2.to_vec()));
    }
    let f1 = EmbeddedPolytope {
        local: dual_description(&pts1)?,
        basis: b1,
    };
    let f2 = EmbeddedPolytope {
        local: dual_description(&pts2)?,
        basis: b2,
    };
    if !reconstructs(&p, &[&f1, &f2])? {
        return Err(Error::Inconsistency(
            "P differs from the direct sum of its projections: red-free split did not factor".into(),
        ));
    }
    for f in [&f1, &f2] {
        if !check_parallelohedron(&f.local).verdict {
            return Err(Error::Inconsistency("projection factor is not a parallelohedron".into()));
        }
    }
    Ok((f1, f2))
}

/// One irreducible direct factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Venkov vertices of the original polytope belonging to this factor.
    pub component: Vec<usize>,
    pub sublattice: Lattice,
    pub polytope: EmbeddedPolytope,
}

impl Factor {
    /// The factor in coordinates of the canonical basis of its sublattice.
    pub fn in_lattice_coordinates(&self) -> Result<Polytope> {
        Ok(self.polytope.in_basis(self.sublattice.basis())?.local)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: Vec<Factor>,
    pub reconstruction_ok: bool,
}

impl Decomposition {
    pub fn partition(&self) -> Vec<Vec<usize>> {
        self.factors.iter().map(|f| f.component.clone()).collect()
    }

    pub fn sublattices(&self) -> Vec<&Lattice> {
        self.factors.iter().map(|f| &f.sublattice).collect()
    }

    pub fn is_reducible(&self) -> bool {
        self.factors.len() > 1
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "components={}", self.factors.len())?;
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|fac| {
                fac.component
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        writeln!(f, "partition={}", parts.join("|"))?;
        for (i, fac) in self.factors.iter().enumerate() {
            let rows: Vec<String> = fac.sublattice.basis().rows().iter().map(|r| r.to_string()).collect();
            writeln!(
                f,
                "factor {i}: dim={} vertices={} sublattice=[{}]",
                fac.polytope.dim(),
                fac.polytope.local.vertices().len(),
                rows.join(" ")
            )?;
        }
        write!(
            f,
            "reconstruction={}",
            if self.reconstruction_ok { "ok" } else { "failed" }
        )
    }
}

fn factor_rec(piece: EmbeddedPolytope, out: &mut Vec<EmbeddedPolytope>) -> Result<()> {
    let g = venkov_graph(&piece.local)?;
    let comps = g.red_components();
    if comps.len() == 1 {
        out.push(piece);
        return Ok(());
    }
    let a1 = comps[0].clone();
    let a2: Vec<usize> = comps[1..].iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let (f1, f2) = split(&piece.local, &a1, &a2)?;
    for f in [f1, f2] {
        factor_rec(
            EmbeddedPolytope {
                basis: f.basis.mul(&piece.basis),
                local: f.local,
            },
            out,
        )?;
    }
    Ok(())
}

/// Factors a parallelohedron into irreducible direct factors.
///
/// Splits off the red component containing the smallest vertex, then
/// recurses into both parts. Factors are ordered by the smallest original
/// facet id they account for. The decomposition is checked for rank
/// additivity, the direct-sum property of the sublattices, connected red
/// graphs of the factors, and exact reconstruction of `p` (reported in
/// `reconstruction_ok`).
pub fn factor(p: &Polytope) -> Result<Decomposition> {
    let p = canonical_form(p);
    let table = facet_vectors(&p)?;
    let whole = lattice_from_table(&p, &table)?;
    let d = p.dim();

    let mut pieces = Vec::new();
    factor_rec(
        EmbeddedPolytope {
            basis: QMat::identity(d),
            local: p.clone(),
        },
        &mut pieces,
    )?;

    let mut factors = Vec::with_capacity(pieces.len());
    for piece in pieces {
        let local_table = facet_vectors(&piece.local)?;
        let mut facets = BTreeSet::new();
        for t in &local_table.vectors {
            let ambient = piece.to_ambient(t);
            let f = table.facet_with_vector(&ambient).ok_or_else(|| {
                Error::Inconsistency(format!("factor facet vector {ambient} is not a facet vector of P"))
            })?;
            facets.insert(f);
        }
        let component: Vec<usize> = facets
            .iter()
            .map(|&f| table.pair_of[f])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let sublattice = sublattice_of_component(&table, &component)?;
        let polytope = piece.in_basis(&span_basis(&sublattice))?;
        if venkov_graph(&polytope.local)?.red_components().len() != 1 {
            return Err(Error::Inconsistency("factor has a disconnected red graph".into()));
        }
        factors.push((*facets.iter().next().unwrap(), Factor {
            component,
            sublattice,
            polytope,
        }));
    }
    factors.sort_by_key(|(first, _)| *first);
    let factors: Vec<Factor> = factors.into_iter().map(|(_, f)| f).collect();

    let covered: Vec<usize> = factors.iter().flat_map(|f| f.component.iter().copied()).collect();
    if covered.len() != table.pair_count() || covered.iter().collect::<BTreeSet<_>>().len() != covered.len() {
        return Err(Error::Inconsistency("factor components do not partition the Venkov vertices".into()));
    }
    if factors.iter().map(|f| f.sublattice.rank()).sum::<usize>() != d {
        return Err(Error::Inconsistency("sublattice ranks do not add up to the dimension".into()));
    }
    let all_rows: Vec<QVec> = factors
        .iter()
        .flat_map(|f| f.sublattice.basis().rows().iter().cloned())
        .collect();
    if hnf(&QMat::new(d, all_rows)?) != whole {
        return Err(Error::Inconsistency("sublattices do not generate the tiling lattice".into()));
    }

    let refs: Vec<&EmbeddedPolytope> = factors.iter().map(|f| &f.polytope).collect();
    let reconstruction_ok = reconstructs(&p, &refs)?;
    Ok(Decomposition {
        factors,
        reconstruction_ok,
    })
}

/// Which factor a belt of `P1 × P2` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BeltCase {
    /// Ridge `F1 × F2`: a 4-belt with one facet pair from each factor.
    Mixed,
    /// Ridge `R1 × P2`: a belt of `P1` times `P2`.
    First,
    /// Ridge `P1 × R2`.
    Second,
}

/// Result of comparing the Venkov graph of a product with the graph
/// predicted from its factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGraphCheck {
    pub ok: bool,
    pub cross_blue_edges: usize,
    pub belt_cases: BTreeMap<BeltCase, usize>,
    pub diff: Vec<String>,
}

/// Checks that the Venkov graph of `P1 × P2` is the disjoint union of the
/// factor graphs plus every blue edge between them, and that every belt of
/// the product is either mixed (a 4-belt) or a factor belt times the other
/// factor.
pub fn verify_product_graph(p1: &Polytope, p2: &Polytope) -> Result<ProductGraphCheck> {
    let g1 = venkov_graph(p1)?;
    let g2 = venkov_graph(p2)?;
    let prod = direct_product(p1, p2);
    let g = venkov_graph(&prod)?;
    let d1 = p1.dim();

    // Facet correspondence: (n, 0) ↔ facet of P1, (0, n) ↔ facet of P2.
    let side = |f: usize| -> (usize, QVec) {
        let n = &prod.facet(f).normal;
        let (a, b) = n.coords().split_at(d1);
        if b.iter().all(num_traits::Zero::is_zero) {
            (1, QVec::new(a.to_vec()))
        } else {
            (2, QVec::new(b.to_vec()))
        }
    };
    let mut diff = Vec::new();
    let mut map: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (v, &(a, _)) in g.pairs.iter().enumerate() {
        let (s, n) = side(a);
        let labels = if s == 1 { &g1.labels } else { &g2.labels };
        match labels.iter().position(|l| *l == n) {
            Some(k) => {
                map.insert((s, k), v);
            }
            None => diff.push(format!("product vertex {v} has no factor counterpart")),
        }
    }
    if g.vertex_count() != g1.vertex_count() + g2.vertex_count() {
        diff.push(format!(
            "vertex count {} != {} + {}",
            g.vertex_count(),
            g1.vertex_count(),
            g2.vertex_count()
        ));
    }

    let mut red = BTreeSet::new();
    let mut blue = BTreeSet::new();
    let lift = |s: usize, e: &(usize, usize)| -> Option<(usize, usize)> {
        let (a, b) = (*map.get(&(s, e.0))?, *map.get(&(s, e.1))?);
        Some((a.min(b), a.max(b)))
    };
    for (s, gi) in [(1, &g1), (2, &g2)] {
        for e in &gi.red_edges {
            red.extend(lift(s, e));
        }
        for e in &gi.blue_edges {
            blue.extend(lift(s, e));
        }
    }
    let mut cross = 0;
    for v1 in 0..g1.vertex_count() {
        for v2 in 0..g2.vertex_count() {
            if let (Some(&a), Some(&b)) = (map.get(&(1, v1)), map.get(&(2, v2))) {
                blue.insert((a.min(b), a.max(b)));
                cross += 1;
            }
        }
    }
    for (name, want, got) in [("red", &red, &g.red_edges), ("blue", &blue, &g.blue_edges)] {
        for e in want.difference(got) {
            diff.push(format!("missing {name} edge {} -- {}", e.0, e.1));
        }
        for e in got.difference(want) {
            diff.push(format!("unexpected {name} edge {} -- {}", e.0, e.1));
        }
    }

    let mut belt_cases = BTreeMap::new();
    for (k, b) in belts(&prod).iter().enumerate() {
        let sides: BTreeSet<usize> = b.facet_ids.iter().map(|&f| side(f).0).collect();
        let case = match (sides.contains(&1), sides.contains(&2)) {
            (true, true) => {
                let ones = b.facet_ids.iter().filter(|&&f| side(f).0 == 1).count();
                if b.len() != 4 || ones != 2 {
                    diff.push(format!("mixed belt {k} is not a 4-belt with one pair per factor"));
                }
                BeltCase::Mixed
            }
            (true, false) => BeltCase::First,
            _ => BeltCase::Second,
        };
        *belt_cases.entry(case).or_insert(0) += 1;
    }
    let expect_first = belts(p1).len();
    let expect_second = belts(p2).len();
    for (case, want) in [(BeltCase::First, expect_first), (BeltCase::Second, expect_second)] {
        let got = belt_cases.get(&case).copied().unwrap_or(0);
        if got != want {
            diff.push(format!("{case:?} belts: {got}, expected {want}"));
        }
    }
    Ok(ProductGraphCheck {
        ok: diff.is_empty(),
        cross_blue_edges: cross,
        belt_cases,
        diff,
    })
}
