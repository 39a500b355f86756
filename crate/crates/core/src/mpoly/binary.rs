//! Resultants of binary forms in `(s, t)`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::matrix::{det_fraction_free, Matrix};
use super::{MPoly, Monomial};
use crate::error::{Error, Result};
use crate::ring::{Integers, Ring};

/// Degree `e` and coefficients `A_i` of `s^i t^(e-i)`, `i = 0..=e`.
pub fn binary_coeffs<R: Ring>(r: &R, a: &MPoly<R::Elem>) -> Result<(u32, Vec<R::Elem>)> {
    if a.nvars() != 2 {
        return Err(Error::NonBinary);
    }
    let (homog, e) = a.is_homogeneous()?;
    if !homog {
        return Err(Error::NonHomogeneous);
    }
    let coeffs = (0..=e).map(|i| a.coeff(r, &Monomial(vec![i, e - i]))).collect();
    Ok((e, coeffs))
}

/// Determinant of the Sylvester matrix; coefficient rows list the highest
/// power of `s` first.
pub fn sylvester_resultant<R: Ring>(r: &R, a: &MPoly<R::Elem>, b: &MPoly<R::Elem>) -> Result<R::Elem> {
    let (da, ca) = binary_coeffs(r, a)?;
    let (db, cb) = binary_coeffs(r, b)?;
    let (da, db) = (da as usize, db as usize);
    let n = da + db;
    if n == 0 {
        return Ok(r.one());
    }
    let mut m = Matrix::filled(n, n, r.zero());
    for row in 0..db {
        for k in 0..=da {
            m.set(row, row + k, ca[da - k].clone());
        }
    }
    for row in 0..da {
        for k in 0..=db {
            m.set(db + row, row + k, cb[db - k].clone());
        }
    }
    det_fraction_free(r, &m)
}

/// Bezout matrix of two degree-`e` forms, expressed through their brackets
/// `[i, j] = A_i B_j - A_j B_i` (`i < j`). Entry `(k, l)` is the coefficient of
/// `s^k t^(e-1-k) s'^l t'^(e-1-l)` in `(A(s,t)B(s',t') - A(s',t')B(s,t)) / (s t' - s' t)`.
pub fn bezout_from_brackets<R: Ring>(r: &R, e: usize, bracket: impl Fn(usize, usize) -> R::Elem) -> Matrix<R::Elem> {
    let mut m = Matrix::filled(e, e, r.zero());
    for j in 1..=e {
        for i in 0..j {
            let b = bracket(i, j);
            if r.is_zero(&b) {
                continue;
            }
            for k in i..j {
                let l = i + j - 1 - k;
                let v = r.sub(m.get(k, l), &b);
                m.set(k, l, v);
            }
        }
    }
    m
}

pub fn bezout_matrix<R: Ring>(r: &R, a: &MPoly<R::Elem>, b: &MPoly<R::Elem>) -> Result<Matrix<R::Elem>> {
    let (ea, ca) = binary_coeffs(r, a)?;
    let (eb, cb) = binary_coeffs(r, b)?;
    if ea != eb || ea == 0 {
        return Err(Error::DegreeMismatch(format!("Bezout matrix needs equal positive degrees, got {ea} and {eb}")));
    }
    Ok(bezout_from_brackets(r, ea as usize, |i, j| r.sub(&r.mul(&ca[i], &cb[j]), &r.mul(&ca[j], &cb[i]))))
}

/// Sign `eps` with `eps * det(Bezout) = Sylvester` for degree-`e` pairs,
/// read off the witness pair `(s^e, t^e)`.
pub fn bezout_sign(e: u32) -> i64 {
    let z = Integers;
    let a = MPoly::monomial(&z, BigInt::one(), Monomial(vec![e, 0]));
    let b = MPoly::monomial(&z, BigInt::one(), Monomial(vec![0, e]));
    let syl = sylvester_resultant(&z, &a, &b).expect("witness forms are binary");
    let bez = det_fraction_free(&z, &bezout_matrix(&z, &a, &b).expect("equal degrees")).expect("square");
    assert!(syl.abs().is_one() && bez.abs().is_one(), "witness resultant must be a unit");
    if syl == bez {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::FiniteField;
    use crate::mpoly::parse_poly;
    use proptest::prelude::*;

    fn st(s: &str) -> MPoly<BigInt> {
        parse_poly(s, &["s".to_string(), "t".to_string()], &Integers, &[]).unwrap()
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(sylvester_resultant(&Integers, &st("s"), &st("t")).unwrap(), BigInt::from(1));
        assert_eq!(sylvester_resultant(&Integers, &st("s - t"), &st("s - t")).unwrap(), BigInt::from(0));
        assert_eq!(sylvester_resultant(&Integers, &st("s^2"), &st("t^2")).unwrap(), BigInt::from(1));
        assert_eq!(sylvester_resultant(&Integers, &st("s^2 + t"), &st("t")), Err(Error::NonHomogeneous));
    }

    #[test]
    fn bezout_examples() {
        let m = bezout_matrix(&Integers, &st("2*s + 3*t"), &st("5*s + 7*t")).unwrap();
        // A = a0*s + a1*t, B = b0*s + b1*t gives [a0*b1 - a1*b0]
        assert_eq!(m.data, vec![vec![BigInt::from(2 * 7 - 3 * 5)]]);
        let same = bezout_matrix(&Integers, &st("s^2 + 3*s*t"), &st("s^2 + 3*s*t")).unwrap();
        assert!(same.data.iter().flatten().all(|x| *x == BigInt::from(0)));
        assert!(matches!(bezout_matrix(&Integers, &st("s"), &st("t^2")), Err(Error::DegreeMismatch(_))));
    }

    fn cubic(c: &[i64]) -> MPoly<BigInt> {
        MPoly::from_terms(&Integers, 2, (0..4).map(|i| (Monomial(vec![i, 3 - i]), BigInt::from(c[i as usize]))))
    }

    proptest! {
        #[test]
        fn bezout_agrees_with_sylvester(a in prop::collection::vec(-20i64..20, 4), b in prop::collection::vec(-20i64..20, 4)) {
            let (fa, fb) = (cubic(&a), cubic(&b));
            prop_assume!(!fa.is_zero() && !fb.is_zero());
            prop_assume!(fa.is_homogeneous().unwrap().1 == 3 && fb.is_homogeneous().unwrap().1 == 3);
            let syl = sylvester_resultant(&Integers, &fa, &fb).unwrap();
            let bez = det_fraction_free(&Integers, &bezout_matrix(&Integers, &fa, &fb).unwrap()).unwrap();
            prop_assert_eq!(syl, bez * BigInt::from(bezout_sign(3)));
        }

        #[test]
        fn resultant_multiplicative(a in prop::collection::vec(-9i64..10, 2), a2 in prop::collection::vec(-9i64..10, 2), b in prop::collection::vec(-9i64..10, 3)) {
            let lin = |c: &[i64]| MPoly::from_terms(&Integers, 2, [(Monomial(vec![1, 0]), BigInt::from(c[0])), (Monomial(vec![0, 1]), BigInt::from(c[1]))]);
            let (fa, fa2) = (lin(&a), lin(&a2));
            let fb = MPoly::from_terms(&Integers, 2, (0..3).map(|i| (Monomial(vec![i, 2 - i]), BigInt::from(b[i as usize]))));
            prop_assume!(!fa.is_zero() && !fa2.is_zero() && !fb.is_zero());
            let lhs = sylvester_resultant(&Integers, &fa.mul(&Integers, &fa2), &fb).unwrap();
            let rhs = sylvester_resultant(&Integers, &fa, &fb).unwrap() * sylvester_resultant(&Integers, &fa2, &fb).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn resultant_specializes_mod_p(a in prop::collection::vec(-20i64..20, 4), b in prop::collection::vec(-20i64..20, 4)) {
            let (fa, fb) = (cubic(&a), cubic(&b));
            for p in [5u64, 7, 11] {
                // leading coefficients (of s^3) must survive reduction
                prop_assume!(a[3] % p as i64 != 0 && b[3] % p as i64 != 0);
                let fp = FiniteField::prime(p).unwrap();
                let red = |f: &MPoly<BigInt>| f.map(&fp, |c| fp.from_int(c));
                let over_z = sylvester_resultant(&Integers, &fa, &fb).unwrap();
                let over_p = sylvester_resultant(&fp, &red(&fa), &red(&fb)).unwrap();
                prop_assert_eq!(fp.from_int(&over_z), over_p);
            }
        }
    }
}
