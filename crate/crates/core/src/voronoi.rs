//! Voronoi cells of full-rank rational lattices.
//!
//! A nonzero lattice vector `v` is Voronoi-relevant iff `±v` are the only
//! vectors of minimal norm in the coset `v + 2Λ`. Coset minima are found by
//! exhaustive search over a coefficient box whose size is certified large
//! enough using the dual-basis bound `|x_i|² <= N · (G⁻¹)_ii` for every
//! coefficient vector `x` of norm at most `N`.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::paratile::{check_parallelohedron, facet_vectors, lattice_from_table};
use crate::polytope::{from_halfspaces, volume, Polytope};
use crate::ratlin::{Lattice, QVec, Rat};

/// Initial half-width of the coefficient box.
pub const DEFAULT_BOX: i64 = 4;

/// Evidence for one nontrivial coset of `2Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCertificate {
    /// Coset representative as 0/1 coefficients over the basis.
    pub coset: Vec<u8>,
    pub min_norm: Rat,
    /// All coset vectors attaining the minimum.
    pub minimizers: Vec<QVec>,
    /// Half-width of the box that was searched (in coefficients of `2Λ`).
    pub box_half_width: i64,
    pub relevant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevantVectorSet {
    /// Sorted, closed under negation.
    pub vectors: Vec<QVec>,
    pub certificates: Vec<CosetCertificate>,
}

fn too_large() -> Error {
    Error::InvalidArgument("lattice entries too large for coset enumeration".into())
}

/// Integer Gram matrix `D · B Bᵀ` of the canonical basis.
fn scaled_gram(l: &Lattice) -> Result<(Vec<Vec<i128>>, Rat)> {
    let b = l.basis();
    let g = b.mul(&b.transpose());
    let scale = g
        .rows()
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, r| {
            num_integer::Integer::lcm(&acc, &r.denominator_lcm())
        });
    let mut out = Vec::new();
    for r in g.rows() {
        let ints = r.to_integers(&scale);
        out.push(ints.iter().map(|a| a.to_i128().ok_or_else(too_large)).collect::<Result<Vec<_>>>()?);
    }
    Ok((out, Rat::from_integer(scale)))
}

fn quad(g: &[Vec<i128>], x: &[i128]) -> Option<i128> {
    let mut s: i128 = 0;
    for i in 0..x.len() {
        let mut row: i128 = 0;
        for j in 0..x.len() {
            row = row.checked_add(g[i][j].checked_mul(x[j])?)?;
        }
        s = s.checked_add(row.checked_mul(x[i])?)?;
    }
    Some(s)
}

fn search_coset(
    l: &Lattice,
    gram: &[Vec<i128>],
    gram_scale: &Rat,
    dual_diag: &[Rat],
    coset: &[u8],
) -> Result<CosetCertificate> {
    let d = coset.len();
    let mut half = DEFAULT_BOX;
    loop {
        let mut best: Option<i128> = None;
        let mut minimizers: Vec<Vec<i128>> = Vec::new();
        let width = (2 * half + 1) as usize;
        let total = width.checked_pow(d as u32).ok_or_else(too_large)?;
        for idx in 0..total {
            let mut rem = idx;
            let x: Vec<i128> = (0..d)
                .map(|i| {
                    let k = (rem % width) as i128 - half as i128;
                    rem /= width;
                    coset[i] as i128 + 2 * k
                })
                .collect();
            let n = quad(gram, &x).ok_or_else(too_large)?;
            match best {
                Some(b) if n > b => {}
                Some(b) if n == b => minimizers.push(x),
                _ => {
                    best = Some(n);
                    minimizers = vec![x];
                }
            }
        }
        let min_norm = Rat::from_integer(best.expect("nonempty box").into()) / gram_scale;
        // Any coefficient outside the box has |x_i| >= 2·half + 1.
        let edge = Rat::from_integer(((2 * half + 1) * (2 * half + 1)).into());
        if dual_diag.iter().all(|g| &min_norm * g < edge) {
            let relevant = minimizers.len() == 2;
            let mut vecs: Vec<QVec> = minimizers
                .iter()
                .map(|x| {
                    let c: Vec<num_bigint::BigInt> = x.iter().map(|&a| a.into()).collect();
                    l.point(&c)
                })
                .collect();
            vecs.sort();
            return Ok(CosetCertificate {
                coset: coset.to_vec(),
                min_norm,
                minimizers: vecs,
                box_half_width: half,
                relevant,
            });
        }
        half *= 2;
    }
}

/// Facet-defining vectors of the Voronoi cell of a full-rank lattice.
pub fn relevant_vectors(l: &Lattice) -> Result<RelevantVectorSet> {
    if !l.is_full_rank() {
        return Err(Error::RankDeficient {
            rank: l.rank(),
            ambient_dim: l.ambient_dim(),
        });
    }
    let d = l.rank();
    let (gram, gram_scale) = scaled_gram(l)?;
    let b = l.basis();
    let ginv = b.mul(&b.transpose()).inverse().expect("basis is independent");
    let dual_diag: Vec<Rat> = (0..d).map(|i| ginv.row(i)[i].clone()).collect();
    let mut certificates = Vec::new();
    let mut vectors = BTreeSet::new();
    for mask in 1u32..(1 << d) {
        let coset: Vec<u8> = (0..d).map(|i| (mask >> i & 1) as u8).collect();
        let cert = search_coset(l, &gram, &gram_scale, &dual_diag, &coset)?;
        if cert.relevant {
            vectors.extend(cert.minimizers.iter().cloned());
        }
        certificates.push(cert);
    }
    Ok(RelevantVectorSet {
        vectors: vectors.into_iter().collect(),
        certificates,
    })
}

/// `{x : 2 x·v <= v·v for every relevant v}`, verified to be a
/// parallelohedron whose tiling lattice is `l` and whose volume is `|det l|`.
pub fn voronoi_cell(l: &Lattice) -> Result<Polytope> {
    let rel = relevant_vectors(l)?;
    let two = Rat::from_integer(2.into());
    let hs: Vec<(QVec, Rat)> = rel.vectors.iter().map(|v| (v.clone(), v.norm2() / &two)).collect();
    let cell = from_halfspaces(l.ambient_dim(), &hs)?;
    if cell.facets().len() != rel.vectors.len() {
        return Err(Error::Inconsistency(format!(
            "{} relevant vectors but {} facets",
            rel.vectors.len(),
            cell.facets().len()
        )));
    }
    if !check_parallelohedron(&cell).verdict {
        return Err(Error::Inconsistency("Voronoi cell fails the Minkowski–Venkov conditions".into()));
    }
    let table = facet_vectors(&cell)?;
    let recovered: BTreeSet<&QVec> = table.vectors.iter().collect();
    if recovered != rel.vectors.iter().collect() {
        return Err(Error::Inconsistency("facet vectors differ from relevant vectors".into()));
    }
    let tl = lattice_from_table(&cell, &table)?;
    if &tl != l {
        return Err(Error::Inconsistency("tiling lattice of the Voronoi cell differs from the input".into()));
    }
    debug_assert!(!volume(&cell).is_zero());
    Ok(cell)
}
