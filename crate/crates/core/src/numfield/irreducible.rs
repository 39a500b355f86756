//! Irreducibility of monic integer polynomials over Q.
//!
//! Degree patterns modulo small primes usually settle the question. When they
//! do not, every subset of certified complex roots whose size is still a
//! possible factor degree is multiplied out; a rational factor must have
//! integer coefficients, which interval enclosures either exclude or pin down
//! for an exact trial division.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::roots::isolate_roots;
use crate::error::{Error, Result};
use crate::exactmath::{primes_up_to, upoly, FiniteField};
use crate::interval::{CInterval, Interval, DEFAULT_PREC, MAX_PREC};
use crate::ring::{Rationals, Ring};

const PATTERN_PRIMES: usize = 25;
const MAX_SUBSET_DEGREE: usize = 20;

fn to_rat(p: &[BigInt]) -> Vec<BigRational> {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0]);
    for &d in degs {
        let add: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(add);
    }
    s
}

/// Whether the monic polynomial `m` (low-first) is irreducible over Q.
pub fn is_irreducible_over_q(m: &[BigInt]) -> Result<bool> {
    let n = m.len() - 1;
    if n == 1 {
        return Ok(true);
    }
    let q = Rationals;
    let mq = to_rat(m);
    if upoly::gcd(&q, &mq, &upoly::derivative(&q, &mq)).len() > 1 {
        return Ok(false);
    }
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    let mut used = 0;
    for p in primes_up_to(2000) {
        if used == PATTERN_PRIMES {
            break;
        }
        let f = FiniteField::prime(p)?;
        let mp: Vec<_> = m.iter().map(|c| f.from_int(c)).collect();
        let fac = upoly::factor(&f, &mp, p);
        if fac.iter().any(|(_, e)| *e > 1) {
            continue;
        }
        used += 1;
        let degs: Vec<usize> = fac.iter().map(|(g, _)| g.len() - 1).collect();
        possible = possible.intersection(&subset_sums(&degs)).copied().collect();
        if possible.len() == 2 {
            return Ok(true);
        }
    }
    if n > MAX_SUBSET_DEGREE {
        return Err(Error::InvalidInput(format!("irreducibility test limited to degree {MAX_SUBSET_DEGREE}")));
    }
    let degrees: Vec<usize> = possible.into_iter().filter(|&d| d >= 1 && 2 * d <= n).collect();
    let mut prec = DEFAULT_PREC;
    while prec <= MAX_PREC {
        match search_root_subsets(m, &degrees, prec)? {
            Some(found) => return Ok(!found),
            None => prec *= 2,
        }
    }
    Err(Error::PrecisionExhausted)
}

/// Advances `idx` to the next increasing index tuple below `n`.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let d = idx.len();
    for k in (0..d).rev() {
        if idx[k] < n - d + k {
            idx[k] += 1;
            for j in k + 1..d {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `Some(true)` if a factor was found, `Some(false)` if certified none
/// exists, `None` if the enclosures were too wide to decide.
fn search_root_subsets(m: &[BigInt], degrees: &[usize], prec: u32) -> Result<Option<bool>> {
    let roots: Vec<CInterval> = isolate_roots(m, prec)?.iter().map(|d| d.enclosure()).collect();
    let n = roots.len();
    let half = BigRational::new(BigInt::one(), BigInt::from(4));
    let q = Rationals;
    let mq = to_rat(m);
    for &d in degrees {
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            // product of (x - alpha_i) over the subset, low-first
            let mut poly = vec![CInterval::real(Interval::from_int(1))];
            for &i in &idx {
                let mut next = vec![CInterval::real(Interval::zero()); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k + 1] = next[k + 1].add(c);
                    next[k] = next[k].sub(&c.mul(&roots[i])).rounded(prec);
                }
                poly = next;
            }
            let mut cand = Vec::with_capacity(poly.len());
            let mut excluded = false;
            for c in &poly {
                if !c.im.contains_zero() {
                    excluded = true;
                    break;
                }
                let lo = c.re.lo.ceil();
                let hi = c.re.hi.floor();
                if lo > hi {
                    excluded = true;
                    break;
                }
                if c.re.width() > half {
                    return Ok(None);
                }
                cand.push(lo);
            }
            if !excluded {
                let (_, r) = upoly::divrem(&q, &mq, &upoly::trim(&q, cand));
                if r.iter().all(Zero::is_zero) {
                    return Ok(Some(true));
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(Some(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn classic_cases() {
        assert!(is_irreducible_over_q(&ints(&[1, 0, 1])).unwrap());
        assert!(!is_irreducible_over_q(&ints(&[-1, 0, 1])).unwrap());
        // x^4 + 1 is reducible modulo every prime but irreducible over Q.
        assert!(is_irreducible_over_q(&ints(&[1, 0, 0, 0, 1])).unwrap());
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        assert!(!is_irreducible_over_q(&ints(&[4, 0, 0, 0, 1])).unwrap());
        // (x^2 + 1)(x^2 + 2)
        assert!(!is_irreducible_over_q(&ints(&[2, 0, 3, 0, 1])).unwrap());
        assert!(!is_irreducible_over_q(&ints(&[1, 2, 1])).unwrap());
        assert!(is_irreducible_over_q(&ints(&[-2, 0, 0, 1])).unwrap());
    }
}
