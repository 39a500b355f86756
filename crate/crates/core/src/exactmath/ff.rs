//! Finite fields F_p and F_{p^k} with a dense polynomial-basis representation.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::integer::is_prime_u64;
use super::upoly;
use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

/// Default cap on p^k for code paths that enumerate field elements.
pub const DEFAULT_FIELD_BUDGET: u64 = 1_000_000;

/// Element of F_{p^k}: coefficients of a polynomial of degree < k, low degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FFElem(pub Vec<u32>);

#[derive(Debug, PartialEq, Eq)]
struct FieldData {
    p: u64,
    k: usize,
    /// Monic modulus, low degree first, length k + 1.
    modulus: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField(Arc<FieldData>);

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self> {
        Self::with_modulus(p, vec![0, 1])
    }

    /// F_p[x]/(modulus); the modulus must be monic and irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime_u64(p) || p >= 1 << 31 {
            return Err(Error::InvalidInput(format!("{p} is not a supported prime")));
        }
        let mut modulus: Vec<u32> = modulus.into_iter().map(|c| (c as u64 % p) as u32).collect();
        while modulus.last() == Some(&0) {
            modulus.pop();
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidInput("modulus must be monic of degree >= 1".into()));
        }
        let k = modulus.len() - 1;
        let field = FiniteField(Arc::new(FieldData { p, k, modulus }));
        if k > 1 {
            let fp = FiniteField::prime(p)?;
            let m: Vec<FFElem> = field.0.modulus.iter().map(|&c| fp.from_u64(c as u64)).collect();
            if !upoly::is_irreducible(&fp, &m) {
                return Err(Error::InvalidInput("modulus is reducible".into()));
            }
        }
        Ok(field)
    }

    /// F_{p^k} built on the lexicographically smallest irreducible modulus.
    pub fn extension(p: u64, k: usize) -> Result<Self> {
        let m = find_irreducible(p, k)?;
        Self::with_modulus(p, m)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn degree(&self) -> usize {
        self.0.k
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    pub fn order(&self) -> BigUint {
        BigUint::from(self.0.p).pow(self.0.k as u32)
    }
    /// p^k when it fits in 64 bits.
    pub fn order_u64(&self) -> Option<u64> {
        self.0.p.checked_pow(self.0.k as u32)
    }

    pub fn from_u64(&self, c: u64) -> FFElem {
        let mut v = vec![0u32; self.0.k];
        v[0] = (c % self.0.p) as u32;
        FFElem(v)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FFElem {
        let mut v = vec![0u32; self.0.k];
        let mut poly: Vec<u64> = coeffs.iter().map(|c| c % self.0.p).collect();
        self.reduce_poly(&mut poly);
        for (i, c) in poly.into_iter().enumerate().take(self.0.k) {
            v[i] = c as u32;
        }
        FFElem(v)
    }

    /// The class of x in F_p[x]/(modulus).
    pub fn generator(&self) -> FFElem {
        self.from_coeffs(&[0, 1])
    }

    /// Element with base-p digits of `index` as coefficients; enumerates the field.
    pub fn element_at(&self, mut index: u64) -> FFElem {
        let mut v = vec![0u32; self.0.k];
        for c in v.iter_mut() {
            *c = (index % self.0.p) as u32;
            index /= self.0.p;
        }
        FFElem(v)
    }

    pub fn in_prime_field(&self, a: &FFElem) -> bool {
        a.0[1..].iter().all(|&c| c == 0)
    }

    fn reduce_poly(&self, poly: &mut Vec<u64>) {
        let p = self.0.p;
        let k = self.0.k;
        let m = &self.0.modulus;
        while poly.len() > k {
            let lead = poly.pop().unwrap();
            if lead == 0 {
                continue;
            }
            let off = poly.len() - k;
            for i in 0..k {
                let sub = lead * m[i] as u64 % p;
                poly[off + i] = (poly[off + i] + p - sub) % p;
            }
        }
    }

    pub fn frobenius(&self, a: &FFElem) -> FFElem {
        self.pow_big(a, &BigUint::from(self.0.p))
    }

    pub fn pow_big(&self, a: &FFElem, e: &BigUint) -> FFElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Coefficient of the residue as an integer, for prime fields.
    pub fn to_u64(&self, a: &FFElem) -> Option<u64> {
        self.in_prime_field(a).then(|| a.0[0] as u64)
    }
}

impl Ring for FiniteField {
    type Elem = FFElem;

    fn zero(&self) -> FFElem {
        FFElem(vec![0; self.0.k])
    }
    fn one(&self) -> FFElem {
        self.from_u64(1)
    }
    fn is_zero(&self, a: &FFElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let p = self.0.p;
        FFElem(a.0.iter().zip(&b.0).map(|(&x, &y)| ((x as u64 + y as u64) % p) as u32).collect())
    }
    fn neg(&self, a: &FFElem) -> FFElem {
        let p = self.0.p;
        FFElem(a.0.iter().map(|&x| ((p - x as u64) % p) as u32).collect())
    }
    fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let p = self.0.p;
        FFElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| ((x as u64 + p - y as u64) % p) as u32)
                .collect(),
        )
    }
    fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let p = self.0.p;
        let k = self.0.k;
        if k == 1 {
            return FFElem(vec![(a.0[0] as u64 * b.0[0] as u64 % p) as u32]);
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        self.reduce_poly(&mut prod);
        prod.resize(k, 0);
        FFElem(prod.into_iter().map(|c| c as u32).collect())
    }
    fn from_int(&self, n: &BigInt) -> FFElem {
        let r = n.mod_floor(&BigInt::from(self.0.p));
        self.from_u64(r.to_u64().unwrap())
    }
    fn characteristic(&self) -> BigUint {
        BigUint::from(self.0.p)
    }
    fn div_exact(&self, a: &FFElem, b: &FFElem) -> Option<FFElem> {
        self.div(a, b)
    }
    fn render(&self, a: &FFElem) -> String {
        if self.0.k == 1 {
            return a.0[0].to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, _) => format!("{c}*z"),
                (_, 1) => format!("z^{i}"),
                _ => format!("{c}*z^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl Field for FiniteField {
    fn inv(&self, a: &FFElem) -> Option<FFElem> {
        if self.is_zero(a) {
            return None;
        }
        let p = self.0.p;
        if self.0.k == 1 {
            let e = p - 2;
            let v = super::integer::pow_mod_u64(a.0[0] as u64, e, p);
            return Some(self.from_u64(v));
        }
        // Extended Euclid over F_p on (a, modulus).
        let fp = FiniteField::prime(p).expect("prime");
        let lift = |v: &[u32]| -> Vec<FFElem> { v.iter().map(|&c| fp.from_u64(c as u64)).collect() };
        let m = lift(&self.0.modulus);
        let x = upoly::trim(&fp, lift(&a.0));
        let (g, s, _) = upoly::ext_gcd(&fp, &x, &m);
        debug_assert_eq!(g.len(), 1);
        let ginv = fp.inv(&g[0])?;
        let s = upoly::scale(&fp, &s, &ginv);
        let coeffs: Vec<u64> = s.iter().map(|c| c.0[0] as u64).collect();
        Some(self.from_coeffs(&coeffs))
    }
}

/// Lexicographically smallest monic irreducible polynomial of degree `k` over F_p,
/// ordering coefficient vectors from x^(k-1) down to x^0. Low degree first.
pub fn find_irreducible(p: u64, k: usize) -> Result<Vec<u32>> {
    if k == 0 {
        return Err(Error::InvalidInput("degree must be >= 1".into()));
    }
    let fp = FiniteField::prime(p)?;
    if k == 1 {
        return Ok(vec![0, 1]);
    }
    // Enumerate the k lower coefficients as a base-p counter, most significant = x^(k-1).
    let mut digits = vec![0u64; k];
    loop {
        let mut poly: Vec<FFElem> = (0..k).map(|i| fp.from_u64(digits[k - 1 - i])).collect();
        poly.push(fp.one());
        if upoly::is_irreducible(&fp, &poly) {
            return Ok(poly.iter().map(|c| c.0[0]).collect());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Err(Error::InvalidInput("no irreducible polynomial found".into()));
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// An embedding of a subfield `small` into `big`, fixed by the image of the
/// generator of `small`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub small: FiniteField,
    pub big: FiniteField,
    pub image: FFElem,
    /// Images of 1, g, g^2, ... in `big`.
    powers: Vec<FFElem>,
}

impl Embedding {
    pub fn new(small: &FiniteField, big: &FiniteField) -> Result<Self> {
        if small.p() != big.p() || big.degree() % small.degree() != 0 {
            return Err(Error::InvalidInput("not a subfield".into()));
        }
        let m: Vec<FFElem> = small.modulus().iter().map(|&c| big.from_u64(c as u64)).collect();
        let roots = upoly::roots(big, &m, 0x0e3b);
        let image = roots.into_iter().min().ok_or_else(|| {
            Error::InvalidInput("subfield modulus has no root in the extension".into())
        })?;
        let mut powers = vec![big.one()];
        for _ in 1..small.degree() {
            let next = big.mul(powers.last().unwrap(), &image);
            powers.push(next);
        }
        Ok(Embedding { small: small.clone(), big: big.clone(), image, powers })
    }

    pub fn embed(&self, a: &FFElem) -> FFElem {
        let mut acc = self.big.zero();
        for (c, pw) in a.0.iter().zip(&self.powers) {
            if *c != 0 {
                acc = self.big.add(&acc, &self.big.mul(&self.big.from_u64(*c as u64), pw));
            }
        }
        acc
    }

    /// Preimage of `b` when it lies in the image of the subfield.
    pub fn restrict(&self, b: &FFElem) -> Option<FFElem> {
        // Solve sum_i x_i * powers[i] = b over F_p: rows = big coordinates.
        let p = self.big.p();
        let n = self.powers.len();
        let rows = self.big.degree();
        let mut mat: Vec<Vec<u64>> = (0..rows)
            .map(|r| {
                let mut row: Vec<u64> = self.powers.iter().map(|pw| pw.0[r] as u64).collect();
                row.push(b.0[r] as u64);
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(pr) = (r..rows).find(|&i| mat[i][c] != 0) else { continue };
            mat.swap(r, pr);
            let inv = super::integer::pow_mod_u64(mat[r][c], p - 2, p);
            for v in mat[r].iter_mut() {
                *v = *v * inv % p;
            }
            for i in 0..rows {
                if i != r && mat[i][c] != 0 {
                    let f = mat[i][c];
                    for j in 0..=n {
                        mat[i][j] = (mat[i][j] + p * p - f * mat[r][j]) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if mat[r..].iter().any(|row| row[n] != 0) {
            return None;
        }
        let mut x = vec![0u64; n];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = mat[i][n];
        }
        Some(self.small.from_coeffs(&x))
    }
}

pub fn is_power_of(q: &BigUint, p: u64) -> bool {
    let mut m = q.clone();
    while m > BigUint::one() && (&m % p).is_zero() {
        m /= p;
    }
    m.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn irreducible_choices() {
        assert_eq!(find_irreducible(2, 1).unwrap(), vec![0, 1]);
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        // Exhaustive oracle over monic quadratics mod 5: irreducible iff no root.
        let mut first = None;
        'outer: for c1 in 0..5u64 {
            for c0 in 0..5u64 {
                if (0..5u64).all(|x| (x * x + c1 * x + c0) % 5 != 0) {
                    first = Some(vec![c0 as u32, c1 as u32, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(find_irreducible(5, 2).unwrap(), first.unwrap());
        assert_eq!(find_irreducible(5, 2).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn f4_arithmetic() {
        let f4 = FiniteField::extension(2, 2).unwrap();
        let x = f4.generator();
        let x1 = f4.add(&x, &f4.one());
        assert_eq!(f4.mul(&x, &x1), f4.one());
        assert_eq!(f4.inv(&f4.one()), Some(f4.one()));
        assert_eq!(f4.inv(&f4.zero()), None);
        let f7 = FiniteField::prime(7).unwrap();
        for a in 0..7 {
            let e = f7.from_u64(a);
            assert_eq!(f7.frobenius(&e), e);
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(FiniteField::with_modulus(5, vec![4, 0, 1]).is_err());
        assert!(FiniteField::with_modulus(6, vec![0, 1]).is_err());
    }

    #[test]
    fn embedding_roundtrip() {
        let f9 = FiniteField::extension(3, 2).unwrap();
        let big = FiniteField::extension(3, 6).unwrap();
        let emb = Embedding::new(&f9, &big).unwrap();
        for i in 0..9 {
            let a = f9.element_at(i);
            let b = emb.embed(&a);
            assert_eq!(emb.restrict(&b), Some(a.clone()));
            for j in 0..9 {
                let c = f9.element_at(j);
                assert_eq!(emb.embed(&f9.mul(&a, &c)), big.mul(&b, &emb.embed(&c)));
            }
        }
        assert_eq!(emb.restrict(&big.generator()), None);
    }

    fn field_and_elems() -> impl Strategy<Value = (u64, usize, u64, u64)> {
        (prop::sample::select(vec![2u64, 3, 5, 7, 11]), 1usize..4).prop_flat_map(|(p, k)| {
            let q = p.pow(k as u32);
            (Just(p), Just(k), 1..q, 0..q)
        })
    }

    proptest! {
        #[test]
        fn multiplicative_group_order((p, k, a, b) in field_and_elems()) {
            let f = FiniteField::extension(p, k).unwrap();
            let x = f.element_at(a);
            let q1 = f.order() - BigUint::one();
            prop_assert_eq!(f.pow_big(&x, &q1), f.one());
            let y = f.element_at(b);
            prop_assert_eq!(f.frobenius(&f.mul(&x, &y)), f.mul(&f.frobenius(&x), &f.frobenius(&y)));
            prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
    }
}
