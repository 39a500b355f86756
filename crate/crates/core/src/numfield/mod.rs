//! Number fields `K = Q(theta)` given by a monic integral minimal polynomial.
//!
//! Elements are coordinate vectors in the power basis. All ideal arithmetic
//! happens in the equation order `Z[theta]`; primes dividing its index are
//! rejected explicitly.

mod ideal;
mod irreducible;
mod roots;

pub use ideal::{hnf, local_content, reduce_local_part, Ideal, PrimeIdeal};
pub use roots::{eval_enclosure, isolate_roots, RootDisc};

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::upoly;
use crate::interval::{Interval, DEFAULT_PREC, MAX_PREC};
use crate::mpoly::{identifiers, parse_poly, Matrix, MPoly};
use crate::ring::{Field, Integers, Rationals, Ring};

/// Element of a number field in power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NFElem(pub Vec<BigRational>);

#[derive(Debug)]
struct FieldData {
    minpoly: Vec<BigInt>,
    var: String,
    roots: Vec<RootDisc>,
    r1: usize,
    r2: usize,
}

#[derive(Clone, Debug)]
pub struct NumberField(Arc<FieldData>);

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.0.minpoly == o.0.minpoly && self.0.var == o.0.var
    }
}

/// An archimedean place, represented by one root of the minimal polynomial
/// (the one with positive imaginary part for complex places).
#[derive(Clone, Debug)]
pub struct ArchPlace {
    pub index: usize,
    pub local_degree: u32,
    pub root: RootDisc,
}

/// Relative enclosure width targeted by archimedean evaluations (about 1e-12).
pub const ARCH_REL_TOL_BITS: i64 = 40;

impl NumberField {
    /// Field from a monic integral minimal polynomial (low-first coefficients).
    pub fn new(minpoly: Vec<BigInt>, var: &str) -> Result<Self> {
        let m = upoly::trim(&Integers, minpoly);
        if m.len() < 2 {
            return Err(Error::InvalidInput("minimal polynomial must have degree at least 1".into()));
        }
        if !m.last().unwrap().is_one() {
            return Err(Error::NonMonic);
        }
        if !irreducible::is_irreducible_over_q(&m)? {
            return Err(Error::ReducibleMinPoly);
        }
        let all = isolate_roots(&m, DEFAULT_PREC)?;
        let r1 = all.iter().filter(|d| d.real).count();
        let r2 = (m.len() - 1 - r1) / 2;
        let roots = all.into_iter().filter(|d| d.real || d.im.is_positive()).collect();
        Ok(NumberField(Arc::new(FieldData { minpoly: m, var: var.to_string(), roots, r1, r2 })))
    }

    /// Parses a field given as a univariate polynomial such as `x^2+1`.
    /// A polynomial with rational coefficients is rejected as non-integral.
    pub fn parse(text: &str) -> Result<Self> {
        let ids = identifiers(text)?;
        let var = match ids.as_slice() {
            [v] => v.clone(),
            [] => return Err(Error::InvalidInput("field polynomial needs a variable".into())),
            _ => return Err(Error::InvalidInput(format!("field polynomial must be univariate, found {ids:?}"))),
        };
        let p = parse_poly(text, std::slice::from_ref(&var), &Rationals, &[])?;
        let deg = p.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (m, c) in p.terms() {
            coeffs[m.0[0] as usize] = c.clone();
        }
        if coeffs.iter().any(|c| !c.is_integer()) {
            return Err(Error::NonIntegral);
        }
        Self::new(coeffs.into_iter().map(|c| c.to_integer()).collect(), &var)
    }

    pub fn rationals() -> Self {
        Self::new(vec![BigInt::zero(), BigInt::one()], "x").expect("x is irreducible")
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.0.minpoly
    }

    pub fn var(&self) -> &str {
        &self.0.var
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.0.r1, self.0.r2)
    }

    pub fn arch_places(&self) -> Vec<ArchPlace> {
        self.0
            .roots
            .iter()
            .enumerate()
            .map(|(index, root)| ArchPlace { index, local_degree: if root.real { 1 } else { 2 }, root: root.clone() })
            .collect()
    }

    pub fn generator(&self) -> NFElem {
        if self.is_rational() {
            // theta is the rational root of x + m_0
            return self.from_rational(-BigRational::from_integer(self.0.minpoly[0].clone()));
        }
        let mut v = vec![BigRational::zero(); self.degree()];
        v[1] = BigRational::one();
        NFElem(v)
    }

    pub fn from_rational(&self, q: BigRational) -> NFElem {
        let mut v = vec![BigRational::zero(); self.degree()];
        v[0] = q;
        NFElem(v)
    }

    pub fn from_coords(&self, c: Vec<BigRational>) -> NFElem {
        assert_eq!(c.len(), self.degree());
        NFElem(c)
    }

    pub fn from_int_coords(&self, c: &[BigInt]) -> NFElem {
        let mut v: Vec<BigRational> = c.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        v.resize(self.degree(), BigRational::zero());
        NFElem(v)
    }

    /// Reduces a polynomial in theta (low-first) modulo the minimal polynomial.
    pub fn from_poly(&self, mut c: Vec<BigRational>) -> NFElem {
        let n = self.degree();
        let m = &self.0.minpoly;
        while c.len() > n {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - n;
            for i in 0..n {
                c[shift + i] -= &top * BigRational::from_integer(m[i].clone());
            }
        }
        c.resize(n, BigRational::zero());
        NFElem(c)
    }

    /// Whether the element lies in `Z[theta]`.
    pub fn is_integral(&self, a: &NFElem) -> bool {
        a.0.iter().all(BigRational::is_integer)
    }

    /// Least positive `d` with `d a` in `Z[theta]`.
    pub fn denominator(&self, a: &NFElem) -> BigInt {
        a.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn int_coords(&self, a: &NFElem) -> Option<Vec<BigInt>> {
        a.0.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn as_rational(&self, a: &NFElem) -> Option<BigRational> {
        a.0[1..].iter().all(Zero::is_zero).then(|| a.0[0].clone())
    }

    /// Matrix of multiplication by `a` acting on coordinate rows.
    pub fn mul_matrix(&self, a: &NFElem) -> Matrix<BigRational> {
        let n = self.degree();
        let mut rows = Vec::with_capacity(n);
        let mut basis = self.one();
        let theta = self.theta();
        for _ in 0..n {
            rows.push(self.mul(a, &basis).0);
            basis = self.mul(&basis, &theta);
        }
        Matrix::new(rows).expect("square")
    }

    /// The power-basis element theta (distinct from `generator` only for K = Q).
    fn theta(&self) -> NFElem {
        if self.is_rational() {
            return self.generator();
        }
        self.generator()
    }

    pub fn norm(&self, a: &NFElem) -> BigRational {
        if self.is_rational() {
            return a.0[0].clone();
        }
        crate::mpoly::det_fraction_free(&Rationals, &self.mul_matrix(a)).expect("square")
    }

    /// Coordinates of `a` as a polynomial in theta with rational coefficients.
    pub fn coords(&self, a: &NFElem) -> Vec<BigRational> {
        a.0.clone()
    }

    /// Certified enclosure of `|a|_v` with relative width about `1e-12`.
    pub fn arch_abs(&self, a: &NFElem, place: &ArchPlace) -> Result<Interval> {
        self.arch_abs_tol(a, place, ARCH_REL_TOL_BITS)
    }

    pub fn arch_abs_tol(&self, a: &NFElem, place: &ArchPlace, tol_bits: i64) -> Result<Interval> {
        if self.is_rational() {
            return Ok(Interval::point(a.0[0].abs()));
        }
        let tol = BigRational::new(BigInt::one(), BigInt::one() << tol_bits as usize);
        let mut prec = DEFAULT_PREC;
        let mut root = place.root.clone();
        while prec <= MAX_PREC {
            if prec > DEFAULT_PREC {
                let discs = isolate_roots(&self.0.minpoly, prec)?;
                root = closest(&discs, &place.root);
            }
            let v = eval_enclosure(&a.0, &root.enclosure(), prec + 16);
            let abs = v.abs(prec + 16)?;
            let abs = Interval::new(abs.lo.max(BigRational::zero()), abs.hi);
            if abs.relative_width() < tol {
                return Ok(abs);
            }
            prec *= 2;
        }
        Err(Error::PrecisionExhausted)
    }

    /// Renders an element in the polynomial grammar using the field variable.
    pub fn render_elem(&self, a: &NFElem) -> String {
        if self.is_rational() {
            return Rationals.render(&a.0[0]);
        }
        let p = MPoly::from_terms(
            &Rationals,
            1,
            a.0.iter().enumerate().map(|(i, c)| (crate::mpoly::Monomial(vec![i as u32]), c.clone())),
        );
        p.render(&Rationals, &[self.0.var.clone()])
    }

    /// Integer content of the rational primes dividing numerators or
    /// denominators of `a`'s norm, as an unsigned pair (numerator, denominator).
    pub fn norm_parts(&self, a: &NFElem) -> (BigUint, BigUint) {
        let n = self.norm(a);
        (n.numer().magnitude().clone(), n.denom().magnitude().clone())
    }

    pub fn to_f64(&self, a: &NFElem) -> Vec<f64> {
        a.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

fn closest(discs: &[RootDisc], target: &RootDisc) -> RootDisc {
    let dist = |d: &RootDisc| {
        let a = &d.re - &target.re;
        let b = &d.im - &target.im;
        &a * &a + &b * &b
    };
    discs.iter().min_by(|a, b| dist(a).cmp(&dist(b))).expect("at least one root").clone()
}

impl Ring for NumberField {
    type Elem = NFElem;

    fn zero(&self) -> NFElem {
        NFElem(vec![BigRational::zero(); self.degree()])
    }
    fn one(&self) -> NFElem {
        self.from_rational(BigRational::one())
    }
    fn is_zero(&self, a: &NFElem) -> bool {
        a.0.iter().all(Zero::is_zero)
    }
    fn add(&self, a: &NFElem, b: &NFElem) -> NFElem {
        NFElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
    fn neg(&self, a: &NFElem) -> NFElem {
        NFElem(a.0.iter().map(|x| -x).collect())
    }
    fn sub(&self, a: &NFElem, b: &NFElem) -> NFElem {
        NFElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }
    fn mul(&self, a: &NFElem, b: &NFElem) -> NFElem {
        let n = self.degree();
        if n == 1 {
            return NFElem(vec![&a.0[0] * &b.0[0]]);
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.from_poly(prod)
    }
    fn from_int(&self, n: &BigInt) -> NFElem {
        self.from_rational(BigRational::from_integer(n.clone()))
    }
    fn characteristic(&self) -> BigUint {
        BigUint::zero()
    }
    fn div_exact(&self, a: &NFElem, b: &NFElem) -> Option<NFElem> {
        self.div(a, b)
    }
    fn render(&self, a: &NFElem) -> String {
        self.render_elem(a)
    }
}

impl Field for NumberField {
    fn inv(&self, a: &NFElem) -> Option<NFElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.is_rational() {
            return Some(NFElem(vec![a.0[0].recip()]));
        }
        let q = Rationals;
        let m: Vec<BigRational> = self.0.minpoly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let x = upoly::trim(&q, a.0.clone());
        let (g, s, _) = upoly::ext_gcd(&q, &x, &m);
        debug_assert_eq!(g.len(), 1, "minimal polynomial is irreducible");
        let ginv = g[0].recip();
        Some(self.from_poly(upoly::scale(&q, &s, &ginv)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::ln_rational;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn make_field_examples() {
        let q = NumberField::parse("x").unwrap();
        assert_eq!((q.degree(), q.signature()), (1, (1, 0)));
        let qi = NumberField::parse("x^2+1").unwrap();
        assert_eq!((qi.degree(), qi.signature()), (2, (0, 1)));
        let q2 = NumberField::parse("x^2-2").unwrap();
        assert_eq!(q2.signature(), (2, 0));
        assert_eq!(NumberField::parse("x^2-1").unwrap_err(), Error::ReducibleMinPoly);
        assert_eq!(NumberField::parse("2*x^2-1").unwrap_err(), Error::NonMonic);
        assert_eq!(NumberField::parse("x^2-1/2").unwrap_err(), Error::NonIntegral);
        assert_eq!(NumberField::parse("x^4+4").unwrap_err(), Error::ReducibleMinPoly);
        let places: u32 = q2.arch_places().iter().map(|p| p.local_degree).sum();
        assert_eq!(places, 2);
    }

    #[test]
    fn arithmetic_in_gaussian_field() {
        let k = NumberField::parse("i^2+1").unwrap();
        let i = k.generator();
        assert_eq!(k.mul(&i, &i), k.from_int(&BigInt::from(-1)));
        let a = k.add(&k.one(), &i);
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
        assert_eq!(k.norm(&a), rat(2));
        assert_eq!(k.render(&a), "i + 1");
    }

    #[test]
    fn arch_abs_examples() {
        let q = NumberField::rationals();
        let p = &q.arch_places()[0];
        assert_eq!(q.arch_abs(&q.from_int(&BigInt::from(-3)), p).unwrap(), Interval::point(rat(3)));
        let k = NumberField::parse("x^2+1").unwrap();
        let a = k.add(&k.one(), &k.generator());
        let v = k.arch_abs(&a, &k.arch_places()[0]).unwrap();
        assert!(v.sqr().contains(&rat(2)));
        assert!(v.width() < BigRational::new(1.into(), BigInt::from(10u64).pow(15)));
        let _ = ln_rational(&rat(2), 64);
    }
}
