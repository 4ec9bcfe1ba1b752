//! Exact rational scalars, vectors and matrices, and rational lattices in
//! canonical Hermite normal form.

mod lattice;
mod matrix;
mod vector;

pub use lattice::{direct_sum_check, hnf, member, Lattice};
pub use matrix::{affine_rank, QMat};
pub use vector::QVec;

use num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Parses a rational literal: optional `-`, decimal digits, optionally `/`
/// followed by a positive denominator (`3/2`, `-1`, `0`).
///
/// On failure returns the byte offset of the offending character.
pub fn parse_rat(s: &str) -> std::result::Result<Rat, usize> {
    let bytes = s.as_bytes();
    let mut i = 0;
    if bytes.first() == Some(&b'-') {
        i = 1;
    }
    let num_start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == num_start {
        return Err(i);
    }
    let num: BigInt = s[..i].parse().map_err(|_| 0usize)?;
    if i == bytes.len() {
        return Ok(Rat::from_integer(num));
    }
    if bytes[i] != b'/' {
        return Err(i);
    }
    i += 1;
    let den_start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == den_start {
        return Err(i);
    }
    if i != bytes.len() {
        return Err(i);
    }
    let den: BigInt = s[den_start..].parse().map_err(|_| den_start)?;
    if den == BigInt::from(0) {
        return Err(den_start);
    }
    Ok(Rat::new(num, den))
}
