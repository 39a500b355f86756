//! Ideals of the equation order in Hermite normal form, prime decomposition
//! by Dedekind's theorem, valuations and residue maps.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{NFElem, NumberField};
use crate::error::{Error, Result};
use crate::exactmath::{is_prime_u64, upoly, FFElem, FiniteField};
use crate::mpoly::MPoly;
use crate::ring::{Field, Integers, Ring};

/// Hermite normal form (upper triangular, positive diagonal, reduced above
/// the diagonal) of the lattice spanned by `rows` in `Z^n`. Zero rows dropped.
pub fn hnf(rows: Vec<Vec<BigInt>>, n: usize) -> Vec<Vec<BigInt>> {
    let mut a = rows;
    let mut r = 0;
    for c in 0..n {
        loop {
            let pivot = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].abs());
            let Some(p) = pivot else { break };
            a.swap(r, p);
            let mut done = true;
            for k in r + 1..a.len() {
                if a[k][c].is_zero() {
                    continue;
                }
                let q = a[k][c].div_floor(&a[r][c]);
                let pr = a[r].clone();
                for (x, y) in a[k].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                if !a[k][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r >= a.len() || a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pr = a[r].clone();
        for k in 0..r {
            let q = a[k][c].div_floor(&pr[c]);
            if !q.is_zero() {
                for (x, y) in a[k].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// A nonzero ideal of `Z[theta]`, stored by the HNF of a Z-basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub basis: Vec<Vec<BigInt>>,
}

impl Ideal {
    /// Ideal generated by integral elements.
    pub fn generated_by(k: &NumberField, gens: &[NFElem]) -> Self {
        let n = k.degree();
        let theta = k.generator();
        let mut rows = Vec::new();
        for g in gens {
            let mut x = g.clone();
            for _ in 0..n {
                rows.push(k.int_coords(&x).expect("integral generator"));
                x = k.mul(&x, &theta);
            }
        }
        Ideal { basis: hnf(rows, n) }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for (i, row) in self.basis.iter().enumerate() {
            let (q, r) = v[i].div_rem(&row[i]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, k: &NumberField, o: &Ideal) -> Ideal {
        let n = k.degree();
        let mut rows = Vec::with_capacity(n * n);
        for a in &self.basis {
            let ea = k.from_int_coords(a);
            for b in &o.basis {
                let prod = k.mul(&ea, &k.from_int_coords(b));
                rows.push(k.int_coords(&prod).expect("integral product"));
            }
        }
        Ideal { basis: hnf(rows, n) }
    }

    /// Index in `Z[theta]`.
    pub fn norm(&self) -> BigInt {
        self.basis.iter().enumerate().map(|(i, r)| r[i].clone()).product()
    }
}

/// A prime of `Z[theta]` above a rational prime not dividing the index.
pub struct PrimeIdeal {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    /// Position in the decomposition of `p`.
    pub index: usize,
    /// Monic lift of the irreducible factor of the minimal polynomial mod `p`.
    pub g: Vec<BigInt>,
    /// Second generator `g(theta)`; the ideal is `(p, g(theta))`.
    pub gen2: NFElem,
    pub ideal: Ideal,
    pub residue: FiniteField,
    /// Image of theta in the residue field.
    pub theta_image: FFElem,
    pub uniformizer: NFElem,
    /// Element of valuation 0 at this prime and at least `e'` at every
    /// other prime above `p`.
    cofactor: NFElem,
    powers: Mutex<HashMap<u32, Ideal>>,
    pub label: String,
}

impl Clone for PrimeIdeal {
    fn clone(&self) -> Self {
        PrimeIdeal {
            p: self.p,
            e: self.e,
            f: self.f,
            index: self.index,
            g: self.g.clone(),
            gen2: self.gen2.clone(),
            ideal: self.ideal.clone(),
            residue: self.residue.clone(),
            theta_image: self.theta_image.clone(),
            uniformizer: self.uniformizer.clone(),
            cofactor: self.cofactor.clone(),
            powers: Mutex::new(self.powers.lock().expect("poisoned").clone()),
            label: self.label.clone(),
        }
    }
}

impl fmt::Debug for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeIdeal{} e={} f={}", self.label, self.e, self.f)
    }
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.g == o.g
    }
}

impl PrimeIdeal {
    pub fn norm(&self) -> BigUint {
        BigUint::from(self.p).pow(self.f)
    }

    fn power(&self, k: &NumberField, e: u32) -> Ideal {
        if let Some(i) = self.powers.lock().expect("poisoned").get(&e) {
            return i.clone();
        }
        let res = if e == 1 {
            self.ideal.clone()
        } else {
            let half = self.power(k, e / 2);
            let sq = half.mul(k, &half);
            if e % 2 == 1 {
                sq.mul(k, &self.ideal)
            } else {
                sq
            }
        };
        self.powers.lock().expect("poisoned").insert(e, res.clone());
        res
    }

    /// Image of an integral element.
    fn reduce_integral(&self, coords: &[BigInt]) -> FFElem {
        let r = &self.residue;
        let mut acc = r.zero();
        for c in coords.iter().rev() {
            acc = r.add(&r.mul(&acc, &self.theta_image), &r.from_int(c));
        }
        acc
    }
}

impl NumberField {
    /// Decomposition of `p` by factoring the minimal polynomial modulo `p`.
    pub fn prime_decomposition(&self, p: u64) -> Result<Vec<PrimeIdeal>> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let fp = FiniteField::prime(p)?;
        let m = self.minpoly();
        let mbar: Vec<FFElem> = m.iter().map(|c| fp.from_int(c)).collect();
        let factors = upoly::factor(&fp, &mbar, p);
        let lift = |g: &[FFElem]| -> Vec<BigInt> { g.iter().map(|c| BigInt::from(c.0[0])).collect() };

        // Dedekind criterion: p divides the index iff gcd(F, g, h) != 1 where
        // g = rad(m mod p), h = (m mod p)/g and F = (G H - m)/p.
        let mut gbar = vec![fp.one()];
        let mut hbar = vec![fp.one()];
        for (g, e) in &factors {
            gbar = upoly::mul(&fp, &gbar, g);
            for _ in 1..*e {
                hbar = upoly::mul(&fp, &hbar, g);
            }
        }
        let z = Integers;
        let gh = upoly::mul(&z, &lift(&gbar), &lift(&hbar));
        let diff = upoly::sub(&z, &gh, m);
        let bp = BigInt::from(p);
        let fpoly: Vec<FFElem> = diff.iter().map(|c| fp.from_int(&(c / &bp))).collect();
        let fpoly = upoly::trim(&fp, fpoly);
        let d = upoly::gcd(&fp, &upoly::gcd(&fp, &fpoly, &gbar), &hbar);
        if d.len() > 1 {
            return Err(Error::IndexDivisorUnsupported(p));
        }

        let n = self.degree();
        let theta = self.generator();
        let eval_int = |g: &[BigInt]| -> NFElem {
            let mut acc = self.zero();
            for c in g.iter().rev() {
                acc = self.add(&self.mul(&acc, &theta), &self.from_int(c));
            }
            acc
        };
        let mut out = Vec::with_capacity(factors.len());
        let mut sum_ef = 0;
        for (idx, (g, e)) in factors.iter().enumerate() {
            let f = (g.len() - 1) as u32;
            let glift = lift(g);
            let gen2 = eval_int(&glift);
            let ideal = Ideal::generated_by(self, &[self.from_int(&bp), gen2.clone()]);
            debug_assert_eq!(ideal.norm(), BigInt::from(p).pow(f));
            let (residue, theta_image) = if f == 1 {
                (fp.clone(), fp.neg(&g[0]))
            } else {
                let modulus: Vec<u32> = g.iter().map(|c| c.0[0]).collect();
                let r = FiniteField::with_modulus(p, modulus)?;
                let x = r.generator();
                (r, x)
            };
            let mut cofactor = self.one();
            for (j, (h, ej)) in factors.iter().enumerate() {
                if j != idx {
                    let hv = eval_int(&lift(h));
                    for _ in 0..*ej {
                        cofactor = self.mul(&cofactor, &hv);
                    }
                }
            }
            let label = if self.is_rational() {
                format!("({p})")
            } else {
                format!("({p}, {})", self.render_elem(&gen2))
            };
            let mut prime = PrimeIdeal {
                p,
                e: *e,
                f,
                index: idx,
                g: glift,
                gen2: gen2.clone(),
                ideal,
                residue,
                theta_image,
                uniformizer: self.from_int(&bp),
                cofactor,
                powers: Mutex::new(HashMap::new()),
                label,
            };
            if *e > 1 {
                let sq = prime.power(self, 2);
                let candidates = [gen2.clone(), self.add(&gen2, &self.from_int(&bp))];
                prime.uniformizer = candidates
                    .into_iter()
                    .find(|c| !sq.contains(&self.int_coords(c).expect("integral")))
                    .expect("one of g(theta), g(theta)+p is a uniformizer");
            }
            sum_ef += *e as usize * f as usize;
            out.push(prime);
        }
        assert_eq!(sum_ef, n, "sum of e*f must equal the degree");
        Ok(out)
    }

    /// Valuation of a nonzero element at a prime.
    pub fn valuation(&self, x: &NFElem, pr: &PrimeIdeal) -> Result<i64> {
        if self.is_zero(x) {
            return Err(Error::ZeroElement);
        }
        let bp = BigUint::from(pr.p);
        if self.is_rational() {
            let q = &x.0[0];
            return Ok(vint(q.numer(), &bp) as i64 - vint(q.denom(), &bp) as i64);
        }
        let d = self.denominator(x);
        let a = self.mul(x, &self.from_int(&d));
        let coords = self.int_coords(&a).expect("cleared denominators");
        let va = self.valuation_integral(&coords, pr);
        Ok(va as i64 - pr.e as i64 * vint(&d, &bp) as i64)
    }

    /// Valuation of a nonzero element of `Z[theta]`: doubling search for an
    /// upper bracket, then binary search on ideal-power membership.
    fn valuation_integral(&self, coords: &[BigInt], pr: &PrimeIdeal) -> u32 {
        let norm = self.norm(&self.from_int_coords(coords));
        let bound = vint(norm.numer(), &BigUint::from(pr.p)) / pr.f;
        if bound == 0 || !pr.ideal.contains(coords) {
            return 0;
        }
        let member = |k: u32| pr.power(self, k).contains(coords);
        let mut lo = 1;
        let mut hi = 2;
        while hi <= bound && member(hi) {
            lo = hi;
            hi *= 2;
        }
        let mut hi = hi.min(bound + 1);
        // invariant: member(lo), !member(hi) or hi > bound
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if member(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Reduction of a P-integral element into the residue field.
    pub fn residue_reduce(&self, x: &NFElem, pr: &PrimeIdeal) -> Result<FFElem> {
        let r = &pr.residue;
        if self.is_zero(x) {
            return Ok(r.zero());
        }
        if self.valuation(x, pr)? < 0 {
            return Err(Error::NotPIntegral);
        }
        let bp = BigInt::from(pr.p);
        let d = self.denominator(x);
        let k = vint(&d, bp.magnitude());
        let dprime = &d / bp.pow(k);
        let mut t = self.one();
        for _ in 0..k {
            t = self.mul(&t, &pr.cofactor);
        }
        let y = self.mul(x, &self.from_int(&d));
        let z = self.mul(&self.mul(&t, &y), &self.from_rational(BigRational::new(BigInt::one(), bp.pow(k))));
        let zc = self.int_coords(&z).ok_or(Error::NotPIntegral)?;
        let tc = self.int_coords(&t).expect("integral");
        let num = pr.reduce_integral(&zc);
        let den = r.mul(&pr.reduce_integral(&tc), &r.from_int(&dprime));
        r.div(&num, &den).ok_or(Error::NotPIntegral)
    }

    /// Rational primes whose decomposition is needed to see every finite place
    /// where `x` has nonzero valuation.
    pub fn support_primes(&self, x: &NFElem) -> Vec<BigUint> {
        let n = self.norm(x);
        let d = self.denominator(x);
        let mut out: Vec<BigUint> = Vec::new();
        for v in [n.numer().clone(), n.denom().clone(), d] {
            if v.is_zero() {
                continue;
            }
            if let Ok(f) = crate::exactmath::factor_integer(&v) {
                out.extend(f.into_iter().map(|(p, _)| p));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

fn vint(n: &BigInt, p: &BigUint) -> u32 {
    if n.is_zero() {
        return 0;
    }
    crate::exactmath::integer::valuation_int(n, p)
}

/// Minimum valuation of the coefficients of `f` at `pr`.
pub fn local_content(k: &NumberField, f: &MPoly<NFElem>, pr: &PrimeIdeal) -> Result<i64> {
    let mut best: Option<i64> = None;
    for c in f.coeffs() {
        let v = k.valuation(c, pr)?;
        best = Some(best.map_or(v, |b| b.min(v)));
    }
    best.ok_or(Error::ZeroPolynomial)
}

/// `f` scaled to local content zero at `pr` and reduced into the residue
/// field: the reduction of the `pr`-part of `f`.
pub fn reduce_local_part(k: &NumberField, f: &MPoly<NFElem>, pr: &PrimeIdeal) -> Result<MPoly<FFElem>> {
    let c = local_content(k, f, pr)?;
    let mut scale = k.one();
    let step = if c > 0 { k.inv(&pr.uniformizer).ok_or(Error::DivisionByZero)? } else { pr.uniformizer.clone() };
    for _ in 0..c.unsigned_abs() {
        scale = k.mul(&scale, &step);
    }
    f.scale(k, &scale).try_map(&pr.residue, |a| k.residue_reduce(a, pr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;
    use proptest::prelude::*;

    fn gauss() -> NumberField {
        NumberField::parse("i^2+1").unwrap()
    }

    fn el(k: &NumberField, a: i64, b: i64) -> NFElem {
        k.from_int_coords(&[BigInt::from(a), BigInt::from(b)])
    }

    #[test]
    fn decomposition_examples() {
        let k = gauss();
        let p5 = k.prime_decomposition(5).unwrap();
        assert_eq!(p5.len(), 2);
        assert!(p5.iter().all(|p| p.e == 1 && p.f == 1 && p.norm() == BigUint::from(5u32)));
        let p2 = k.prime_decomposition(2).unwrap();
        assert_eq!((p2.len(), p2[0].e, p2[0].f), (1, 2, 1));
        let p3 = k.prime_decomposition(3).unwrap();
        assert_eq!((p3.len(), p3[0].e, p3[0].f), (1, 1, 2));
        let q = NumberField::rationals();
        let d = q.prime_decomposition(7).unwrap();
        assert_eq!((d.len(), d[0].e, d[0].f), (1, 1, 1));
        // Z[sqrt(5)] has index 2 in the maximal order.
        let k5 = NumberField::parse("x^2-5").unwrap();
        assert_eq!(k5.prime_decomposition(2).unwrap_err(), Error::IndexDivisorUnsupported(2));
    }

    #[test]
    fn valuation_examples() {
        let q = NumberField::rationals();
        let p2 = &q.prime_decomposition(2).unwrap()[0];
        assert_eq!(q.valuation(&q.from_int(&BigInt::from(12)), p2).unwrap(), 2);
        let k = gauss();
        let p = &k.prime_decomposition(2).unwrap()[0];
        assert_eq!(k.valuation(&el(&k, 1, 1), p).unwrap(), 1);
        assert_eq!(k.valuation(&el(&k, 2, 0), p).unwrap(), 2);
        assert_eq!(k.valuation(&el(&k, 0, 1), p).unwrap(), 0);
        let half = k.inv(&el(&k, 2, 0)).unwrap();
        assert_eq!(k.valuation(&half, p).unwrap(), -2);
        assert_eq!(k.valuation(&k.zero(), p), Err(Error::ZeroElement));
        assert_eq!(k.valuation(&el(&k, 16, 0), p).unwrap(), 8);
    }

    #[test]
    fn residue_examples() {
        let q = NumberField::rationals();
        let p5 = &q.prime_decomposition(5).unwrap()[0];
        assert_eq!(q.residue_reduce(&q.from_int(&BigInt::from(7)), p5).unwrap(), p5.residue.from_u64(2));
        let k = gauss();
        let primes = k.prime_decomposition(5).unwrap();
        // Each prime above 5 sends i to a square root of -1 mod 5.
        let images: Vec<u64> = primes.iter().map(|p| p.residue.to_u64(&k.residue_reduce(&k.generator(), p).unwrap()).unwrap()).collect();
        assert_eq!(images.iter().copied().collect::<std::collections::BTreeSet<_>>(), [2u64, 3].into());
        for p in &primes {
            assert!(p.residue.is_zero(&k.residue_reduce(&p.gen2, p).unwrap()));
            let half = k.inv(&k.from_int(&BigInt::from(5))).unwrap();
            assert_eq!(k.residue_reduce(&half, p), Err(Error::NotPIntegral));
        }
        // (1+i)/(1-i) = i is a unit at every prime, including above 2 where
        // the denominator is divisible by p.
        let p2 = &k.prime_decomposition(2).unwrap()[0];
        let x = k.div(&el(&k, 1, 1), &el(&k, 1, -1)).unwrap();
        assert_eq!(k.residue_reduce(&x, p2).unwrap(), k.residue_reduce(&k.generator(), p2).unwrap());
    }

    #[test]
    fn local_content_examples() {
        let k = gauss();
        let vars: Vec<String> = vec!["T0".into(), "T1".into()];
        let consts = vec![("i".to_string(), k.generator())];
        let f = parse_poly("(1+i)*T0 + 2*T1", &vars, &k, &consts).unwrap();
        let p2 = &k.prime_decomposition(2).unwrap()[0];
        assert_eq!(local_content(&k, &f, p2).unwrap(), 1);
        let uf = f.scale(&k, &k.generator());
        assert_eq!(local_content(&k, &uf, p2).unwrap(), 1);
        let q = NumberField::rationals();
        let g = parse_poly("6*T0 + 10*T1", &vars, &q, &[]).unwrap();
        assert_eq!(local_content(&q, &g, &q.prime_decomposition(2).unwrap()[0]).unwrap(), 1);
    }

    proptest! {
        #[test]
        fn valuation_and_residue_are_homomorphic(a in -40i64..40, b in -40i64..40, c in -40i64..40, d in -40i64..40) {
            let k = NumberField::parse("x^2-2").unwrap();
            let x = el(&k, a, b);
            let y = el(&k, c, d);
            prop_assume!(!k.is_zero(&x) && !k.is_zero(&y));
            for p in [2u64, 7, 3] {
                for pr in k.prime_decomposition(p).unwrap() {
                    let vx = k.valuation(&x, &pr).unwrap();
                    let vy = k.valuation(&y, &pr).unwrap();
                    prop_assert_eq!(k.valuation(&k.mul(&x, &y), &pr).unwrap(), vx + vy);
                    let s = k.add(&x, &y);
                    if !k.is_zero(&s) {
                        prop_assert!(k.valuation(&s, &pr).unwrap() >= vx.min(vy));
                    }
                    let r = &pr.residue;
                    let (rx, ry) = (k.residue_reduce(&x, &pr).unwrap(), k.residue_reduce(&y, &pr).unwrap());
                    prop_assert_eq!(k.residue_reduce(&k.mul(&x, &y), &pr).unwrap(), r.mul(&rx, &ry));
                    prop_assert_eq!(k.residue_reduce(&s, &pr).unwrap(), r.add(&rx, &ry));
                }
            }
        }
    }
}
