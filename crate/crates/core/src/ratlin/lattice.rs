use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{QMat, QVec, Rat};
use crate::error::{Error, Result};

/// A rational lattice (possibly of deficient rank) in canonical basis.
///
/// The basis is the row Hermite normal form of the generators after clearing
/// denominators, rescaled back: upper triangular, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. Equal lattices have equal
/// bases, so `==` is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    basis: QMat,
}

impl Lattice {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_dim
    }

    /// `|det|` of a full-rank lattice (the covolume).
    pub fn abs_det(&self) -> Option<Rat> {
        self.is_full_rank().then(|| self.basis.det().abs())
    }

    /// Determinant of the Gram matrix of the basis (squared covolume inside
    /// the linear span); meaningful for every rank.
    pub fn gram_det(&self) -> Rat {
        let b = &self.basis;
        b.mul(&b.transpose()).det()
    }

    /// Integer coordinates of `v` in the canonical basis, when `v` is a
    /// lattice vector.
    pub fn coordinates(&self, v: &QVec) -> Result<Option<Vec<BigInt>>> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.dim(),
            });
        }
        let Some(c) = echelon_coordinates(&self.basis, v) else {
            return Ok(None);
        };
        if c.iter().all(|x| x.is_integer()) {
            Ok(Some(c.iter().map(|x| x.to_integer()).collect()))
        } else {
            Ok(None)
        }
    }

    /// Lattice vector with the given integer coordinates.
    pub fn point(&self, coeffs: &[BigInt]) -> QVec {
        let c = QVec::new(coeffs.iter().cloned().map(Rat::from_integer).collect());
        self.basis.combine(&c)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        for b in other.basis.rows() {
            if !member(self, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Rational coefficients of `v` in an echelon basis (pivot-by-pivot back
/// substitution); `None` if `v` is outside the span.
fn echelon_coordinates(basis: &QMat, v: &QVec) -> Option<Vec<Rat>> {
    let mut rest = v.clone();
    let mut coeffs = Vec::with_capacity(basis.nrows());
    for row in basis.rows() {
        let p = row.iter().position(|a| !a.is_zero())?;
        let c = &rest[p] / &row[p];
        if !c.is_zero() {
            rest = &rest - &row.scale(&c);
        }
        coeffs.push(c);
    }
    rest.is_zero().then_some(coeffs)
}

/// Canonical lattice generated by the rows of `generators`.
///
/// Zero rows are ignored; an all-zero input gives the rank-0 lattice.
pub fn hnf(generators: &QMat) -> Lattice {
    let n = generators.ncols();
    let scale = generators
        .rows()
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(&r.denominator_lcm()));
    let rows: Vec<Vec<BigInt>> = generators
        .rows()
        .iter()
        .map(|r| r.to_integers(&scale))
        .filter(|r| r.iter().any(|a| !a.is_zero()))
        .collect();
    let reduced = integer_hnf(rows, n);
    let inv = Rat::new(BigInt::one(), scale);
    let basis_rows = reduced
        .into_iter()
        .map(|r| QVec::new(r.into_iter().map(|a| Rat::from_integer(a) * &inv).collect()))
        .collect();
    Lattice {
        ambient_dim: n,
        basis: QMat::new(n, basis_rows).expect("rows share the ambient dimension"),
    }
}

fn sub_multiple(row: &mut [BigInt], other: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (a, b) in row.iter_mut().zip(other) {
        *a -= q * b;
    }
}

/// Row-style Hermite normal form of an integer matrix; zero rows dropped.
pub(crate) fn integer_hnf(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        // Euclid on column `col` over rows r.. until a single nonzero remains.
        while let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()))
        {
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let (head, tail) = rows.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[r], &q);
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for a in rows[r].iter_mut() {
                *a = -a.clone();
            }
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            let (head, tail) = rows.split_at_mut(r);
            sub_multiple(&mut head[i], &tail[0], &q);
        }
        r += 1;
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|a| !a.is_zero()));
    rows
}

/// Whether `v` is an integer combination of the basis of `lattice`.
pub fn member(lattice: &Lattice, v: &QVec) -> Result<bool> {
    Ok(lattice.coordinates(v)?.is_some())
}

/// Verifies `whole = part1 ⊕ part2`: ranks add up, the union of the two
/// bases is linearly independent, and it generates all of `whole`.
///
/// Both parts must be sublattices of `whole`; otherwise an error is returned
/// rather than `false`.
pub fn direct_sum_check(whole: &Lattice, part1: &Lattice, part2: &Lattice) -> Result<bool> {
    for part in [part1, part2] {
        if part.ambient_dim != whole.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: whole.ambient_dim,
                found: part.ambient_dim,
            });
        }
    }
    if !whole.contains_lattice(part1)? {
        return Err(Error::NotSublattice("first summand"));
    }
    if !whole.contains_lattice(part2)? {
        return Err(Error::NotSublattice("second summand"));
    }
    if part1.rank() + part2.rank() != whole.rank() {
        return Ok(false);
    }
    let union = part1.basis.stack(&part2.basis)?;
    if union.rank() != whole.rank() {
        return Ok(false);
    }
    Ok(hnf(&union) == *whole)
}
