//! Contents, coordinate changes and dehomogenization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MPoly;
use crate::error::{Error, Result};
use crate::ring::{Integers, Ring};

/// Number of coordinate changes tried before giving up on a direction.
pub const MAX_DIRECTIONS: usize = 100;

/// Positive content and primitive part of an integer polynomial.
pub fn content_and_primitive(f: &MPoly<BigInt>) -> Result<(BigInt, MPoly<BigInt>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = f.coeffs().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let prim = f.map(&Integers, |c| c / &g);
    Ok((g, prim))
}

/// Unimodular substitution `T_i = sum_j m[i][j] T'_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordChange {
    pub index: usize,
    pub matrix: Vec<Vec<i64>>,
}

impl CoordChange {
    pub fn identity(n: usize) -> Self {
        CoordChange { index: 0, matrix: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == CoordChange::identity(self.matrix.len())
    }

    pub fn apply<R: Ring>(&self, r: &R, f: &MPoly<R::Elem>) -> MPoly<R::Elem> {
        if self.is_identity() {
            return f.clone();
        }
        let n = self.matrix.len();
        let images: Vec<MPoly<R::Elem>> = self
            .matrix
            .iter()
            .map(|row| {
                let mut acc = MPoly::zero(n);
                for (j, &c) in row.iter().enumerate() {
                    if c != 0 {
                        acc = acc.add(r, &MPoly::var(r, j, n).scale(r, &r.from_i64(c)));
                    }
                }
                acc
            })
            .collect();
        f.substitute(r, &images)
    }
}

/// The `index`-th change in a deterministic sequence: identity, then the
/// cyclic variable rotations, then products of random unit-triangular
/// matrices with entries in [-2, 2].
pub fn coordinate_change(index: usize, n: usize, seed: u64) -> CoordChange {
    if index == 0 || n <= 1 {
        return CoordChange::identity(n);
    }
    if index < n {
        let matrix = (0..n).map(|i| (0..n).map(|j| i64::from(j == (i + index) % n)).collect()).collect();
        return CoordChange { index, matrix };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut lower = vec![vec![0i64; n]; n];
    let mut upper = vec![vec![0i64; n]; n];
    for i in 0..n {
        lower[i][i] = 1;
        upper[i][i] = 1;
        for j in 0..i {
            lower[i][j] = rng.gen_range(-2..=2);
        }
        for j in i + 1..n {
            upper[i][j] = rng.gen_range(-2..=2);
        }
    }
    let matrix = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| lower[i][k] * upper[k][j]).sum()).collect())
        .collect();
    CoordChange { index, matrix }
}

#[derive(Clone, Debug)]
pub struct Dehomogenized<C> {
    /// Polynomial in the remaining variables (the chosen one is removed).
    pub affine: MPoly<C>,
    /// Homogeneous polynomial after the coordinate change.
    pub changed: MPoly<C>,
    pub change: CoordChange,
    pub var: usize,
}

/// Sets variable `var` to 1 after the first coordinate change in the
/// deterministic sequence for which total degree is preserved and `accept`
/// holds for the resulting affine polynomial.
pub fn dehomogenize<R: Ring>(
    r: &R,
    f: &MPoly<R::Elem>,
    var: usize,
    seed: u64,
    accept: impl Fn(&MPoly<R::Elem>) -> bool,
) -> Result<Dehomogenized<R::Elem>> {
    dehomogenize_from(r, f, var, seed, 0, accept)
}

/// As [`dehomogenize`], skipping the first `start` coordinate changes.
pub fn dehomogenize_from<R: Ring>(
    r: &R,
    f: &MPoly<R::Elem>,
    var: usize,
    seed: u64,
    start: usize,
    accept: impl Fn(&MPoly<R::Elem>) -> bool,
) -> Result<Dehomogenized<R::Elem>> {
    let (homog, delta) = f.is_homogeneous()?;
    if !homog {
        return Err(Error::NonHomogeneous);
    }
    for index in start..start + MAX_DIRECTIONS {
        let change = coordinate_change(index, f.nvars(), seed);
        let changed = change.apply(r, f);
        let affine = changed.drop_var(r, var);
        if affine.total_degree() == Some(delta) && accept(&affine) {
            return Ok(Dehomogenized { affine, changed, change, var });
        }
    }
    Err(Error::DegenerateDirectionExhausted)
}

#[cfg(test)]
fn int_det(m: &[Vec<i64>]) -> BigInt {
    let mm = super::Matrix::new(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
        .expect("rectangular");
    super::det_fraction_free(&Integers, &mm).expect("square")
}
