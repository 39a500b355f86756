//! Dense univariate polynomials over a field, coefficients low degree first.
//! The zero polynomial is the empty vector.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ff::{FFElem, FiniteField};
use super::integer::factor_integer;
use crate::ring::{Field, Ring};

pub fn trim<R: Ring>(r: &R, mut a: Vec<R::Elem>) -> Vec<R::Elem> {
    while a.last().is_some_and(|c| r.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let z = r.zero();
    let out = (0..n)
        .map(|i| r.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(r, out)
}

pub fn sub<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let z = r.zero();
    let out = (0..n)
        .map(|i| r.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(r, out)
}

pub fn mul<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    trim(r, out)
}

pub fn scale<R: Ring>(r: &R, a: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
    trim(r, a.iter().map(|x| r.mul(x, c)).collect())
}

pub fn derivative<R: Ring>(r: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| r.mul(&r.from_i64(i as i64), c))
        .collect();
    trim(r, out)
}

pub fn eval<R: Ring>(r: &R, a: &[R::Elem], x: &R::Elem) -> R::Elem {
    a.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), trim(f, rem));
    }
    let mut quo = vec![f.zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = f.mul(&rem[i], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let idx = i - db + j;
            rem[idx] = f.sub(&rem[idx], &f.mul(&c, bj));
        }
        quo[i - db] = c;
    }
    rem.truncate(db);
    (trim(f, quo), trim(f, rem))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, b).1
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(f, a, &f.inv(l).expect("nonzero")),
    }
}

pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trim(f, a.to_vec());
    let mut y = trim(f, b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Returns (g, s, t) with s*a + t*b = g, g not normalized.
pub fn ext_gcd<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>, Vec<F::Elem>) {
    let (mut r0, mut r1) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: Field>(f: &F, a: &[F::Elem], e: &BigUint, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(f, &[f.one()], m);
    let base = rem(f, a, m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(f, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(f, &acc, &base, m);
        }
    }
    acc
}

fn x_poly<R: Ring>(r: &R) -> Vec<R::Elem> {
    vec![r.zero(), r.one()]
}

/// x^(q^n) mod m by repeated q-th powering.
fn frob_power(f: &FiniteField, m: &[FFElem], n: usize) -> Vec<FFElem> {
    let q = f.order();
    let mut acc = rem(f, &x_poly(f), m);
    for _ in 0..n {
        acc = powmod(f, &acc, &q, m);
    }
    acc
}

/// Rabin's irreducibility test over F_q.
pub fn is_irreducible(f: &FiniteField, poly: &[FFElem]) -> bool {
    let poly = trim(f, poly.to_vec());
    let Some(n) = degree(&poly) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let poly = monic(f, &poly);
    let x = x_poly(f);
    if sub(f, &frob_power(f, &poly, n), &rem(f, &x, &poly)).len() > 0 {
        return false;
    }
    let primes = factor_integer(&(n as i64).into()).expect("n > 0");
    for (r, _) in primes {
        let r: usize = r.try_into().expect("small");
        let h = sub(f, &frob_power(f, &poly, n / r), &x);
        if degree(&gcd(f, &h, &poly)) != Some(0) {
            return false;
        }
    }
    true
}

fn random_poly(f: &FiniteField, deg: usize, rng: &mut ChaCha8Rng) -> Vec<FFElem> {
    let q = f.order_u64();
    let out = (0..=deg)
        .map(|_| match q {
            Some(q) => f.element_at(rng.gen_range(0..q)),
            None => FFElem((0..f.degree()).map(|_| rng.gen_range(0..f.p()) as u32).collect()),
        })
        .collect();
    trim(f, out)
}

/// Split a monic squarefree `poly` whose irreducible factors all have degree `d`.
fn equal_degree_split(f: &FiniteField, poly: &[FFElem], d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<FFElem>> {
    let n = degree(poly).unwrap();
    if n == d {
        return vec![poly.to_vec()];
    }
    let q = f.order();
    loop {
        let r = random_poly(f, n - 1, rng);
        if r.is_empty() {
            continue;
        }
        let cand = if f.p() == 2 {
            // Absolute trace to F_2 of r over F_{q^d}.
            let steps = f.degree() * d;
            let mut acc = Vec::new();
            let mut term = rem(f, &r, poly);
            for _ in 0..steps {
                acc = add(f, &acc, &term);
                term = mulmod(f, &term, &term, poly);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) >> 1;
            sub(f, &powmod(f, &r, &e, poly), &[f.one()])
        };
        let g = gcd(f, &cand, poly);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let (h, _) = divrem(f, poly, &g);
            let mut out = equal_degree_split(f, &g, d, rng);
            out.extend(equal_degree_split(f, &monic(f, &h), d, rng));
            return out;
        }
    }
}

/// Distinct roots of `poly` lying in F_q, sorted. Deterministic for a fixed seed.
pub fn roots(f: &FiniteField, poly: &[FFElem], seed: u64) -> Vec<FFElem> {
    let poly = monic(f, &trim(f, poly.to_vec()));
    match degree(&poly) {
        None => return Vec::new(),
        Some(0) => return Vec::new(),
        _ => {}
    }
    let x = x_poly(f);
    let xq = powmod(f, &x, &f.order(), &poly);
    let g = gcd(f, &sub(f, &xq, &x), &poly);
    if degree(&g).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<FFElem> = equal_degree_split(f, &g, 1, &mut rng)
        .into_iter()
        .map(|lin| f.neg(&lin[0]))
        .collect();
    out.sort();
    out
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &FiniteField, a: &[FFElem]) -> Vec<FFElem> {
    let p = f.p() as usize;
    let e = f.order() / BigUint::from(f.p());
    a.iter().step_by(p).map(|c| f.pow_big(c, &e)).collect()
}

/// Squarefree decomposition: monic pairs (g_i, i) with poly = lc * prod g_i^i.
pub fn squarefree(f: &FiniteField, poly: &[FFElem]) -> Vec<(Vec<FFElem>, u32)> {
    let poly = monic(f, &trim(f, poly.to_vec()));
    if degree(&poly).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let d = derivative(f, &poly);
    if d.is_empty() {
        for (g, m) in squarefree(f, &pth_root(f, &poly)) {
            out.push((g, m * f.p() as u32));
        }
        return out;
    }
    let mut c = gcd(f, &poly, &d);
    let mut w = divrem(f, &poly, &c).0;
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(f, &w, &c);
        let z = divrem(f, &w, &y).0;
        if degree(&z).unwrap_or(0) > 0 {
            out.push((monic(f, &z), i));
        }
        i += 1;
        w = y;
        c = divrem(f, &c, &w).0;
    }
    if degree(&c).unwrap_or(0) > 0 {
        for (g, m) in squarefree(f, &pth_root(f, &c)) {
            out.push((g, m * f.p() as u32));
        }
    }
    out
}

/// Complete factorization into monic irreducibles with multiplicities, sorted.
pub fn factor(f: &FiniteField, poly: &[FFElem], seed: u64) -> Vec<(Vec<FFElem>, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = f.order();
    let mut out = Vec::new();
    for (g, m) in squarefree(f, poly) {
        let x = x_poly(f);
        let mut rest = g;
        let mut h = rem(f, &x, &rest);
        let mut d = 0;
        while degree(&rest).unwrap_or(0) > 0 {
            d += 1;
            if 2 * d > degree(&rest).unwrap() {
                out.push((rest.clone(), m));
                break;
            }
            h = powmod(f, &h, &q, &rest);
            let part = gcd(f, &sub(f, &h, &x), &rest);
            if degree(&part).unwrap_or(0) > 0 {
                for fac in equal_degree_split(f, &part, d, &mut rng) {
                    out.push((fac, m));
                }
                rest = divrem(f, &rest, &part).0;
                h = rem(f, &h, &rest);
            }
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    // Merge identical factors produced from different squarefree layers.
    let mut merged: Vec<(Vec<FFElem>, u32)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, e)) if *h == g => *e += m,
            _ => merged.push((g, m)),
        }
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &FiniteField, c: &[u64]) -> Vec<FFElem> {
        trim(f, c.iter().map(|&x| f.from_u64(x)).collect())
    }

    #[test]
    fn roots_of_x2_plus_1() {
        let f5 = FiniteField::prime(5).unwrap();
        let r = roots(&f5, &poly(&f5, &[1, 0, 1]), 1);
        assert_eq!(r, vec![f5.from_u64(2), f5.from_u64(3)]);
        let f3 = FiniteField::prime(3).unwrap();
        assert!(roots(&f3, &poly(&f3, &[1, 0, 1]), 1).is_empty());
        let f2 = FiniteField::prime(2).unwrap();
        assert_eq!(roots(&f2, &poly(&f2, &[1, 0, 1]), 1), vec![f2.one()]);
    }

    #[test]
    fn roots_in_extension_char2() {
        let f64_ = FiniteField::extension(2, 6).unwrap();
        // x^3 + x + 1 is irreducible over F_2 and splits in F_8 c F_64.
        let r = roots(&f64_, &poly(&f64_, &[1, 1, 0, 1]), 7);
        assert_eq!(r.len(), 3);
        for z in &r {
            assert!(f64_.is_zero(&eval(&f64_, &poly(&f64_, &[1, 1, 0, 1]), z)));
        }
    }

    #[test]
    fn factorization_mod_p() {
        let f2 = FiniteField::prime(2).unwrap();
        // x^2 + 1 = (x + 1)^2 over F_2
        let fac = factor(&f2, &poly(&f2, &[1, 0, 1]), 3);
        assert_eq!(fac, vec![(poly(&f2, &[1, 1]), 2)]);
        let f7 = FiniteField::prime(7).unwrap();
        // (x^2+1)(x-1)^3 over F_7; x^2+1 irreducible mod 7
        let a = mul(&f7, &poly(&f7, &[1, 0, 1]), &poly(&f7, &[6, 1]));
        let a = mul(&f7, &a, &mul(&f7, &poly(&f7, &[6, 1]), &poly(&f7, &[6, 1])));
        let fac = factor(&f7, &a, 3);
        assert_eq!(fac, vec![(poly(&f7, &[6, 1]), 3), (poly(&f7, &[1, 0, 1]), 1)]);
        // x^4 - x^2 = x^2 (x-1)(x+1) over F_2 is x^2 (x+1)^2
        let fac = factor(&f2, &poly(&f2, &[0, 0, 1, 0, 1]), 3);
        assert_eq!(fac, vec![(poly(&f2, &[0, 1]), 2), (poly(&f2, &[1, 1]), 2)]);
    }

    #[test]
    fn rabin_test() {
        let f3 = FiniteField::prime(3).unwrap();
        assert!(is_irreducible(&f3, &poly(&f3, &[1, 0, 1])));
        assert!(!is_irreducible(&f3, &poly(&f3, &[2, 0, 1])));
        assert!(is_irreducible(&f3, &poly(&f3, &[1, 2, 0, 1])));
    }
}
