//! Dense matrices over a ring: fraction-free determinants and minors, and
//! rank/kernel computations over fields.

use num_bigint::BigInt;
use num_traits::Signed;

use super::MPoly;
use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<E>>,
}

pub type PolyMatrix<C> = Matrix<MPoly<C>>;

impl<E: Clone> Matrix<E> {
    pub fn new(data: Vec<Vec<E>>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix".into()));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Matrix { rows, cols, data: vec![vec![e; cols]; rows] }
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i][j] = e;
    }

    pub fn map<D: Clone>(&self, f: impl Fn(&E) -> D) -> Matrix<D> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data: rows.iter().map(|&i| cols.iter().map(|&j| self.data[i][j].clone()).collect()).collect(),
        }
    }
}

/// Pivot rule choosing among `(row, value)` candidates, all nonzero.
pub type PivotRule<'a, E> = &'a dyn Fn(&[(usize, &E)]) -> usize;

/// Largest absolute value, ties to the lowest row index.
pub fn max_abs_pivot(cands: &[(usize, &BigInt)]) -> usize {
    let mut best = 0;
    for (k, (_, v)) in cands.iter().enumerate() {
        if v.abs() > cands[best].1.abs() {
            best = k;
        }
    }
    best
}

fn first_pivot<E>(_: &[(usize, &E)]) -> usize {
    0
}

fn permutation_sign(order: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if order[i] > order[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Bareiss elimination over the rows of a matrix with at least as many rows
/// as columns. Returns the selected rows (ascending) and the determinant of
/// the square submatrix they form, or `None` when the column rank is deficient.
pub fn select_nonsingular_rows<R: Ring>(
    r: &R,
    m: &Matrix<R::Elem>,
    pivot: PivotRule<'_, R::Elem>,
) -> Option<(Vec<usize>, R::Elem)> {
    let n = m.cols;
    if n == 0 {
        return Some((Vec::new(), r.one()));
    }
    if m.rows < n {
        return None;
    }
    let mut a = m.data.clone();
    let mut active: Vec<usize> = (0..m.rows).collect();
    let mut chosen = Vec::with_capacity(n);
    let mut prev = r.one();
    for k in 0..n {
        let cands: Vec<(usize, &R::Elem)> =
            active.iter().filter(|&&i| !r.is_zero(&a[i][k])).map(|&i| (i, &a[i][k])).collect();
        if cands.is_empty() {
            return None;
        }
        let p = cands[pivot(&cands)].0;
        active.retain(|&i| i != p);
        chosen.push(p);
        let prow = a[p].clone();
        for &i in &active {
            let lead = a[i][k].clone();
            for j in k + 1..n {
                let t = r.sub(&r.mul(&a[i][j], &prow[k]), &r.mul(&lead, &prow[j]));
                a[i][j] = r.div_exact(&t, &prev).expect("Bareiss division is exact over a domain");
            }
            a[i][k] = r.zero();
        }
        prev = prow[k].clone();
    }
    let neg = permutation_sign(&chosen);
    chosen.sort_unstable();
    Some((chosen, if neg { r.neg(&prev) } else { prev }))
}

pub fn det_fraction_free_with<R: Ring>(
    r: &R,
    m: &Matrix<R::Elem>,
    pivot: PivotRule<'_, R::Elem>,
) -> Result<R::Elem> {
    if m.rows != m.cols {
        return Err(Error::NonSquare);
    }
    Ok(select_nonsingular_rows(r, m, pivot).map_or_else(|| r.zero(), |(_, d)| d))
}

/// Exact determinant by fraction-free elimination (first nonzero pivot).
pub fn det_fraction_free<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Result<R::Elem> {
    det_fraction_free_with(r, m, &first_pivot::<R::Elem>)
}

/// Laplace expansion along the first row. Exponential; for cross-checks only.
pub fn det_cofactor<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Result<R::Elem> {
    if m.rows != m.cols {
        return Err(Error::NonSquare);
    }
    fn go<R: Ring>(r: &R, m: &[Vec<R::Elem>], cols: &[usize]) -> R::Elem {
        if cols.is_empty() {
            return r.one();
        }
        let row = m.len() - cols.len();
        let mut acc = r.zero();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let t = r.mul(&m[row][c], &go(r, m, &rest));
            acc = if k % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
        }
        acc
    }
    let cols: Vec<usize> = (0..m.cols).collect();
    Ok(go(r, &m.data, &cols))
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref<F: Field>(f: &F, a: &mut [Vec<F::Elem>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..a.len()).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(row, p);
        let inv = f.inv(&a[row][c]).expect("nonzero pivot");
        for x in a[row].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let prow = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i == row || f.is_zero(&r[c]) {
                continue;
            }
            let lead = r[c].clone();
            for (x, y) in r.iter_mut().zip(&prow) {
                *x = f.sub(x, &f.mul(&lead, y));
            }
        }
        pivots.push(c);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.data.clone();
    rref(f, &mut a, m.cols).len()
}

/// A nonzero vector `v` with `m v = 0`, or `None` for full column rank.
/// The free variable chosen is the first non-pivot column.
pub fn kernel_vector<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Vec<F::Elem>> {
    let mut a = m.data.clone();
    let pivots = rref(f, &mut a, m.cols);
    let free = (0..m.cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![f.zero(); m.cols];
    v[free] = f.one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = f.neg(&a[row][free]);
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;
    use crate::ring::{Integers, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn int_matrix(v: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::new(v.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()).unwrap()
    }

    #[test]
    fn small_determinants() {
        let id = int_matrix(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(det_fraction_free(&Integers, &id).unwrap(), BigInt::from(1));
        let m = int_matrix(vec![vec![2, 3], vec![5, 7]]);
        assert_eq!(det_fraction_free(&Integers, &m).unwrap(), BigInt::from(-1));
        assert_eq!(det_fraction_free_with(&Integers, &m, &max_abs_pivot).unwrap(), BigInt::from(-1));
        let rect = int_matrix(vec![vec![1, 2]]);
        assert_eq!(det_fraction_free(&Integers, &rect), Err(Error::NonSquare));
    }

    #[test]
    fn polynomial_determinant() {
        let names = vec!["x".to_string()];
        let pr = crate::mpoly::PolyRing::new(Integers, names.clone());
        let p = |s: &str| parse_poly(s, &names, &Integers, &[]).unwrap();
        let m = Matrix::new(vec![vec![p("x"), p("1")], vec![p("1"), p("x")]]).unwrap();
        assert_eq!(det_fraction_free(&pr, &m).unwrap(), p("x^2 - 1"));
    }

    #[test]
    fn row_selection_on_tall_matrix() {
        let m = int_matrix(vec![vec![0, 0], vec![1, 2], vec![2, 4], vec![3, 1]]);
        let (rows, d) = select_nonsingular_rows(&Integers, &m, &max_abs_pivot).unwrap();
        let sub = m.submatrix(&rows, &[0, 1]);
        assert_eq!(det_cofactor(&Integers, &sub).unwrap(), d);
        assert_ne!(d, BigInt::from(0));
        let deficient = int_matrix(vec![vec![1, 2], vec![2, 4], vec![3, 6]]);
        assert!(select_nonsingular_rows(&Integers, &deficient, &max_abs_pivot).is_none());
    }

    #[test]
    fn kernel_over_rationals() {
        let m = int_matrix(vec![vec![1, 2, 3], vec![2, 4, 6]]).map(|x| BigRational::from_integer(x.clone()));
        assert_eq!(rank(&Rationals, &m), 1);
        let v = kernel_vector(&Rationals, &m).unwrap();
        for row in &m.data {
            let s: BigRational = row.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert_eq!(s, BigRational::from_integer(0.into()));
        }
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(n in 1usize..=4, seed in prop::collection::vec(-9i64..10, 16)) {
            let m = int_matrix((0..n).map(|i| (0..n).map(|j| seed[i * 4 + j]).collect()).collect());
            let a = det_fraction_free(&Integers, &m).unwrap();
            let b = det_fraction_free_with(&Integers, &m, &max_abs_pivot).unwrap();
            let c = det_cofactor(&Integers, &m).unwrap();
            prop_assert_eq!(&a, &c);
            prop_assert_eq!(&b, &c);
        }
    }
}
