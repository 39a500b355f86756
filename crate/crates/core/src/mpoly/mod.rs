//! Sparse multivariate polynomials over a pluggable coefficient ring.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order, so iteration order (and therefore every printed or
//! serialized output) is deterministic. Coefficients are plain ring elements;
//! every operation takes the ring as an explicit argument.

mod binary;
mod homog;
mod matrix;
mod parse;
mod ring;

pub use binary::{bezout_from_brackets, bezout_matrix, bezout_sign, binary_coeffs, sylvester_resultant};
pub use homog::{content_and_primitive, coordinate_change, dehomogenize, dehomogenize_from, CoordChange, Dehomogenized};
pub use matrix::{
    det_cofactor, det_fraction_free, det_fraction_free_with, kernel_vector, max_abs_pivot, rank,
    select_nonsingular_rows, Matrix, PolyMatrix,
};
pub use parse::{identifiers, parse_poly, parse_poly_list, MAX_EXPONENT};
pub use ring::PolyRing;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    /// All monomials of total degree `d` in `nvars` variables, ascending.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(nvars, i + 1, left - e, cur, out);
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(nvars, 0, d, &mut vec![0; nvars], &mut out);
        out.sort();
        out
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Clone + PartialEq> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant<R: Ring<Elem = C>>(r: &R, c: C, nvars: usize) -> Self {
        Self::monomial(r, c, Monomial::one(nvars))
    }

    pub fn one<R: Ring<Elem = C>>(r: &R, nvars: usize) -> Self {
        Self::constant(r, r.one(), nvars)
    }

    pub fn var<R: Ring<Elem = C>>(r: &R, i: usize, nvars: usize) -> Self {
        Self::monomial(r, r.one(), Monomial::var(nvars, i))
    }

    pub fn monomial<R: Ring<Elem = C>>(r: &R, c: C, m: Monomial) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !r.is_zero(&c) {
            terms.insert(m, c);
        }
        MPoly { nvars, terms }
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    pub fn from_terms<R: Ring<Elem = C>>(
        r: &R,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "exponent vector arity");
            p.add_term(r, m, c);
        }
        p
    }

    fn add_term<R: Ring<Elem = C>>(&mut self, r: &R, m: Monomial, c: C) {
        if r.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = r.add(old, &c);
                if r.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &C> {
        self.terms.values()
    }

    pub fn coeff<R: Ring<Elem = C>>(&self, r: &R, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(|| r.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term<R: Ring<Elem = C>>(&self, r: &R) -> C {
        self.coeff(r, &Monomial::one(self.nvars))
    }

    /// Whether every term has the same total degree; returns that degree.
    pub fn is_homogeneous(&self) -> Result<(bool, u32)> {
        let top = self.total_degree().ok_or(Error::ZeroPolynomial)?;
        Ok((self.terms.keys().all(|m| m.degree() == top), top))
    }

    pub fn add<R: Ring<Elem = C>>(&self, r: &R, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(r, m.clone(), c.clone());
        }
        out
    }

    pub fn neg<R: Ring<Elem = C>>(&self, r: &R) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), r.neg(c))).collect() }
    }

    pub fn sub<R: Ring<Elem = C>>(&self, r: &R, o: &Self) -> Self {
        self.add(r, &o.neg(r))
    }

    pub fn scale<R: Ring<Elem = C>>(&self, r: &R, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            out.add_term(r, m.clone(), r.mul(a, c));
        }
        out
    }

    pub fn mul_term<R: Ring<Elem = C>>(&self, r: &R, m: &Monomial, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, a) in &self.terms {
            out.add_term(r, k.mul(m), r.mul(a, c));
        }
        out
    }

    pub fn mul<R: Ring<Elem = C>>(&self, r: &R, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(r, m1.mul(m2), r.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow<R: Ring<Elem = C>>(&self, r: &R, mut e: u32) -> Self {
        let mut acc = Self::one(r, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(r, &base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact<R: Ring<Elem = C>>(&self, r: &R, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&dm)?;
            let qc = r.div_exact(c, &dc)?;
            rem = rem.sub(r, &d.mul_term(r, &qm, &qc));
            quot.add_term(r, qm, qc);
        }
        Some(quot)
    }

    /// Formal partial derivative; exponents that vanish in the ring drop out.
    pub fn derivative<R: Ring<Elem = C>>(&self, r: &R, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut k = m.clone();
            k.0[i] -= 1;
            out.add_term(r, k, r.mul(c, &r.from_i64(e as i64)));
        }
        out
    }

    pub fn eval<R: Ring<Elem = C>>(&self, r: &R, point: &[C]) -> C {
        let mut acc = r.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = r.mul(&t, &r.pow(x, e as u64));
                }
            }
            acc = r.add(&acc, &t);
        }
        acc
    }

    /// Substitutes polynomial `images[i]` for variable `i`.
    pub fn substitute<R: Ring<Elem = C>>(&self, r: &R, images: &[MPoly<C>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let n = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<MPoly<C>>> = images.iter().map(|p| vec![MPoly::one(r, p.nvars), p.clone()]).collect();
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(r, c.clone(), n);
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(r, &images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(r, &powers[i][e]);
                }
            }
            out = out.add(r, &t);
        }
        out
    }

    /// Applies `f` to every coefficient, dropping those that become zero in `target`.
    pub fn map<S: Ring>(&self, target: &S, f: impl Fn(&C) -> S::Elem) -> MPoly<S::Elem> {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(target, m.clone(), f(c));
        }
        out
    }

    pub fn try_map<S: Ring>(&self, target: &S, f: impl Fn(&C) -> Result<S::Elem>) -> Result<MPoly<S::Elem>> {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(target, m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in `new_nvars` variables, sending variable `i` to `slots[i]`.
    pub fn relabel(&self, new_nvars: usize, slots: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; new_nvars];
                for (i, &k) in m.0.iter().enumerate() {
                    e[slots[i]] += k;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        MPoly { nvars: new_nvars, terms }
    }

    /// Coefficients with respect to variable `i`: entry `k` multiplies `x_i^k`.
    pub fn coeffs_in<R: Ring<Elem = C>>(&self, r: &R, i: usize) -> Vec<MPoly<C>> {
        let top = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars); top + 1];
        for (m, c) in &self.terms {
            let mut k = m.clone();
            let e = std::mem::take(&mut k.0[i]) as usize;
            out[e].add_term(r, k, c.clone());
        }
        out
    }

    /// Sets variable `i` to one and removes it from the variable list.
    pub fn drop_var<R: Ring<Elem = C>>(&self, r: &R, i: usize) -> Self {
        let mut out = Self::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(i);
            out.add_term(r, Monomial(e), c.clone());
        }
        out
    }

    /// Inserts a homogenizing variable at position `i` to reach degree `deg`.
    pub fn homogenize<R: Ring<Elem = C>>(&self, r: &R, i: usize, deg: u32) -> Self {
        let mut out = Self::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.insert(i, deg - m.degree());
            out.add_term(r, Monomial(e), c.clone());
        }
        out
    }

    /// Renders the polynomial in the input grammar, terms in descending order.
    pub fn render<R: Ring<Elem = C>>(&self, r: &R, names: &[String]) -> String {
        parse::render(r, self, names)
    }
}

impl MPoly<BigInt> {
    /// Largest absolute coefficient value.
    pub fn max_abs_coeff(&self) -> BigInt {
        use num_traits::Signed;
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// Default variable names `T0, T1, ...`.
pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::FiniteField;
    use crate::ring::Integers;

    fn p(s: &str, vars: &[&str]) -> MPoly<BigInt> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        parse_poly(s, &names, &Integers, &[]).unwrap()
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![0, 3]);
        let c = Monomial(vec![1, 1]);
        assert!(a < b);
        assert!(c < a);
    }

    #[test]
    fn homogeneity() {
        let f = p("T0^2 + 6*T1*T2", &["T0", "T1", "T2"]);
        assert_eq!(f.is_homogeneous().unwrap(), (true, 2));
        let g = p("T0 + T1^2", &["T0", "T1"]);
        assert!(!g.is_homogeneous().unwrap().0);
        let c = p("5", &["T0"]);
        assert_eq!(c.is_homogeneous().unwrap(), (true, 0));
        assert_eq!(MPoly::<BigInt>::zero(2).is_homogeneous(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn derivatives() {
        let f = p("x^2*y", &["x", "y"]);
        assert_eq!(f.derivative(&Integers, 0), p("2*x*y", &["x", "y"]));
        let f2 = FiniteField::prime(2).unwrap();
        let sq = p("x^2", &["x"]).map(&f2, |c| f2.from_int(c));
        assert!(sq.derivative(&f2, 0).is_zero());
        let g = p("T0^2 + 6*T1*T2", &["T0", "T1", "T2"]);
        assert_eq!(g.derivative(&Integers, 1), p("6*T2", &["T0", "T1", "T2"]));
    }

    #[test]
    fn exact_division() {
        let v = ["x", "y"];
        let a = p("x^2 - y^2", &v);
        let b = p("x + y", &v);
        assert_eq!(a.div_exact(&Integers, &b), Some(p("x - y", &v)));
        assert_eq!(a.div_exact(&Integers, &p("x + 2*y", &v)), None);
        assert_eq!(p("2*x", &v).div_exact(&Integers, &p("4", &v)), None);
    }

    #[test]
    fn substitution_and_coeffs() {
        let v = ["x", "y"];
        let f = p("x^2 + x*y", &v);
        let g = f.substitute(&Integers, &[p("x + y", &v), p("y", &v)]);
        assert_eq!(g, p("x^2 + 3*x*y + 2*y^2", &v));
        let cs = f.coeffs_in(&Integers, 0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1], p("y", &v));
    }
}
