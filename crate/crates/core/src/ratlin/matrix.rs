use num_traits::{One, Zero};

use super::{QVec, Rat};
use crate::error::{Error, Result};

/// Dense rational matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: Vec<QVec>,
    ncols: usize,
}

impl QMat {
    pub fn new(ncols: usize, rows: Vec<QVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.dim(),
            });
        }
        Ok(QMat { rows, ncols })
    }

    pub fn identity(n: usize) -> Self {
        QMat {
            rows: (0..n).map(|i| QVec::unit(n, i)).collect(),
            ncols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &QVec {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<QVec> {
        self.rows
    }

    pub fn transpose(&self) -> QMat {
        let rows = (0..self.ncols)
            .map(|j| QVec::new(self.rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        QMat {
            rows,
            ncols: self.nrows(),
        }
    }

    /// Row vector times matrix: `Σ c_i · row_i`.
    pub fn combine(&self, coeffs: &QVec) -> QVec {
        debug_assert_eq!(coeffs.dim(), self.nrows());
        let mut out = QVec::zeros(self.ncols);
        for (c, r) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                out[j] += c * &r[j];
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, x: &QVec) -> QVec {
        QVec::new(self.rows.iter().map(|r| r.dot(x)).collect())
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        debug_assert_eq!(self.ncols, other.nrows());
        QMat {
            rows: self.rows.iter().map(|r| other.combine(r)).collect(),
            ncols: other.ncols,
        }
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &QMat) -> Result<QMat> {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        QMat::new(self.ncols, rows)
    }

    /// Reduced row echelon form with zero rows dropped, plus pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m: Vec<QVec> = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = Rat::one() / &m[r][col];
            m[r] = m[r].scale(&inv);
            for i in 0..m.len() {
                if i != r && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    let sub = m[r].scale(&f);
                    m[i] = &m[i] - &sub;
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        (
            QMat {
                rows: m,
                ncols: self.ncols,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<QVec> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = QVec::zeros(self.ncols);
                x[f] = Rat::one();
                for (row, &p) in r.rows.iter().zip(&pivots) {
                    x[p] = -row[f].clone();
                }
                x
            })
            .collect()
    }

    /// Some `c` with `Σ c_i · row_i = v`, if `v` lies in the row space.
    pub fn solve_left(&self, v: &QVec) -> Option<QVec> {
        // Solve M^T c = v by eliminating on the augmented transpose.
        let n = self.nrows();
        let mut aug: Vec<QVec> = (0..self.ncols)
            .map(|j| {
                let mut row: Vec<Rat> = self.rows.iter().map(|r| r[j].clone()).collect();
                row.push(v[j].clone());
                QVec::new(row)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..aug.len()).find(|&i| !aug[i][col].is_zero()) else {
                continue;
            };
            aug.swap(r, p);
            let inv = Rat::one() / &aug[r][col];
            aug[r] = aug[r].scale(&inv);
            for i in 0..aug.len() {
                if i != r && !aug[i][col].is_zero() {
                    let f = aug[i][col].clone();
                    let sub = aug[r].scale(&f);
                    aug[i] = &aug[i] - &sub;
                }
            }
            pivots.push(col);
            r += 1;
        }
        if aug[r..].iter().any(|row| !row[n].is_zero()) {
            return None;
        }
        let mut c = QVec::zeros(n);
        for (i, &p) in pivots.iter().enumerate() {
            c[p] = aug[i][n].clone();
        }
        Some(c)
    }

    /// Determinant of a square matrix (fraction-free is unnecessary over Q).
    pub fn det(&self) -> Rat {
        assert_eq!(self.nrows(), self.ncols, "determinant of a non-square matrix");
        let mut m = self.rows.clone();
        let n = self.ncols;
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let piv = m[col][col].clone();
            det *= &piv;
            for i in col + 1..n {
                if !m[i][col].is_zero() {
                    let f = &m[i][col] / &piv;
                    let sub = m[col].scale(&f);
                    m[i] = &m[i] - &sub;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMat> {
        let n = self.ncols;
        if self.nrows() != n {
            return None;
        }
        let aug: Vec<QVec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&QVec::unit(n, i)))
            .collect();
        let (r, pivots) = QMat {
            rows: aug,
            ncols: 2 * n,
        }
        .rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(QMat {
            rows: r
                .rows
                .into_iter()
                .map(|row| QVec::new(row.into_coords().split_off(n)))
                .collect(),
            ncols: n,
        })
    }
}

/// Affine dimension of a point set (`-1` for the empty set).
pub fn affine_rank(points: &[&QVec]) -> isize {
    let Some((first, rest)) = points.split_first() else {
        return -1;
    };
    let diffs: Vec<QVec> = rest.iter().map(|p| *p - *first).collect();
    if diffs.is_empty() {
        return 0;
    }
    QMat {
        ncols: first.dim(),
        rows: diffs,
    }
    .rank() as isize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> QMat {
        let n = rows[0].len();
        QMat::new(n, rows.iter().map(|r| QVec::from_ints(r)).collect()).unwrap()
    }

    #[test]
    fn det_and_inverse_agree() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), Rat::from_integer(18.into()));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMat::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 1, 1, 0], &[0, 1, -1, 2]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!(a.apply(x).is_zero());
        }
    }

    #[test]
    fn solve_left_dependent_rows() {
        let a = m(&[&[1, 0, 1], &[2, 0, 2], &[0, 1, 0]]);
        let v = QVec::from_ints(&[3, 5, 3]);
        let c = a.solve_left(&v).unwrap();
        assert_eq!(a.combine(&c), v);
        assert!(a.solve_left(&QVec::from_ints(&[1, 0, 0])).is_none());
    }

    #[test]
    fn affine_rank_of_square_vertices() {
        let pts = [
            QVec::from_ints(&[0, 0]),
            QVec::from_ints(&[1, 0]),
            QVec::from_ints(&[0, 1]),
            QVec::from_ints(&[1, 1]),
        ];
        let refs: Vec<&QVec> = pts.iter().collect();
        assert_eq!(affine_rank(&refs), 2);
        assert_eq!(affine_rank(&refs[..1]), 0);
        assert_eq!(affine_rank(&[]), -1);
    }
}
