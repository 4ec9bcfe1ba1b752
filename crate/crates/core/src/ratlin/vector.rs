use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// A vector of exact rationals.
///
/// Ordering is lexicographic on the coordinates, which is what the canonical
/// forms elsewhere in the crate sort by.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVec(Vec<Rat>);

impl QVec {
    pub fn new(coords: Vec<Rat>) -> Self {
        QVec(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        QVec(vec![Rat::zero(); dim])
    }

    /// The `i`-th standard basis vector of `R^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        QVec(coords.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_fracs(coords: &[(i64, i64)]) -> Self {
        QVec(coords.iter().map(|&(n, d)| Rat::new(n.into(), d.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &QVec) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm2(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, s: &Rat) -> QVec {
        QVec(self.0.iter().map(|a| a * s).collect())
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &QVec) -> QVec {
        let mut c = self.0.clone();
        c.extend(other.0.iter().cloned());
        QVec(c)
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
    }

    /// Integer vector `self * scale`; `scale` must clear every denominator.
    pub fn to_integers(&self, scale: &BigInt) -> Vec<BigInt> {
        self.0
            .iter()
            .map(|a| {
                let s = a * Rat::from_integer(scale.clone());
                debug_assert!(s.is_integer());
                s.to_integer()
            })
            .collect()
    }

    /// The primitive integer vector on the same ray, or `None` for zero.
    pub fn primitive(&self) -> Option<QVec> {
        if self.is_zero() {
            return None;
        }
        let ints = self.to_integers(&self.denominator_lcm());
        let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        Some(QVec(
            ints.into_iter()
                .map(|a| Rat::from_integer(a / &g))
                .collect(),
        ))
    }

    /// Sign of the first nonzero coordinate (0 for the zero vector).
    pub fn leading_sign(&self) -> i32 {
        self.0
            .iter()
            .find(|a| !a.is_zero())
            .map_or(0, |a| if a.is_positive() { 1 } else { -1 })
    }

    /// Canonical direction of the line through `self`: primitive integer
    /// vector whose first nonzero entry is positive, paired with the sign
    /// that recovers the original orientation.
    pub fn canonical_direction(&self) -> Option<(QVec, i32)> {
        let p = self.primitive()?;
        let s = p.leading_sign();
        Some(if s < 0 { (-p, -1) } else { (p, 1) })
    }
}

impl From<Vec<Rat>> for QVec {
    fn from(v: Vec<Rat>) -> Self {
        QVec(v)
    }
}

impl Index<usize> for QVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVec {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl<'a> Add<&'a QVec> for &'a QVec {
    type Output = QVec;
    fn add(self, rhs: &QVec) -> QVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        QVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a QVec> for &'a QVec {
    type Output = QVec;
    fn sub(self, rhs: &QVec) -> QVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        QVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for QVec {
    type Output = QVec;
    fn add(self, rhs: QVec) -> QVec {
        &self + &rhs
    }
}

impl Sub for QVec {
    type Output = QVec;
    fn sub(self, rhs: QVec) -> QVec {
        &self - &rhs
    }
}

impl Neg for QVec {
    type Output = QVec;
    fn neg(self) -> QVec {
        QVec(self.0.into_iter().map(|a| -a).collect())
    }
}

impl Neg for &QVec {
    type Output = QVec;
    fn neg(self) -> QVec {
        QVec(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Rat> for &QVec {
    type Output = QVec;
    fn mul(self, s: &Rat) -> QVec {
        self.scale(s)
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}
