//! Primality testing and integer factorization.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default number of Pollard-rho iterations before giving up on a cofactor.
pub const DEFAULT_RHO_BUDGET: u64 = 10_000_000;

const TRIAL_LIMIT: u64 = 10_000;
const MR_WITNESSES_64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_ROUNDS_BIG: usize = 64;
const MR_SEED: u64 = 0x5eed_0f_9a1e;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn miller_rabin_u64(n: u64, a: u64) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mut x = pow_mod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES_64 {
        if n % p == 0 {
            return n == p;
        }
    }
    MR_WITNESSES_64.iter().all(|&a| miller_rabin_u64(n, a))
}

fn miller_rabin_big(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Primality test: exact below 2^64, 64 seeded Miller-Rabin rounds above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_WITNESSES_64 {
        if (n % p).is_zero() {
            return false;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(MR_SEED);
    let bits = n.bits();
    (0..MR_ROUNDS_BIG).all(|_| {
        let a = loop {
            let mut digits = vec![0u32; bits.div_ceil(32) as usize];
            for d in digits.iter_mut() {
                *d = rng.gen();
            }
            let a = BigUint::new(digits) % n;
            if a > BigUint::one() {
                break a;
            }
        };
        miller_rabin_big(n, &a)
    })
}

pub fn is_prime_bigint(n: &BigInt) -> bool {
    n.sign() == Sign::Plus && is_prime(n.magnitude())
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of composite `n`.
fn pollard_rho(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                if *budget < steps {
                    return None;
                }
                *budget -= steps;
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    unreachable!()
}

/// Prime factorization `n = sign * prod p^e`, primes ascending.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigUint, u32)>> {
    factor_integer_with_budget(n, DEFAULT_RHO_BUDGET)
}

pub fn factor_integer_with_budget(n: &BigInt, budget: u64) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut rest = n.magnitude().clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if rest > BigUint::one() {
        stack.push(rest);
    }
    let mut budget = budget;
    let mut large: Vec<BigUint> = Vec::new();
    while let Some(m) = stack.pop() {
        if is_prime(&m) {
            large.push(m);
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        match pollard_rho(&m, &mut budget) {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => {
                return Err(Error::BudgetExceeded(format!("unfactored cofactor {m}")));
            }
        }
    }
    large.sort();
    for q in large {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out.sort();
    Ok(out)
}

/// All primes up to `hi`.
pub fn primes_up_to(hi: u64) -> Vec<u64> {
    if hi < 2 {
        return Vec::new();
    }
    let n = hi as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Largest power of `p` dividing `n` (n nonzero).
pub fn valuation_int(n: &BigInt, p: &BigUint) -> u32 {
    let mut m = n.magnitude().clone();
    let mut e = 0;
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        e += 1;
    }
    e
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fac(n: i64) -> Vec<(u64, u32)> {
        factor_integer(&BigInt::from(n))
            .unwrap()
            .into_iter()
            .map(|(p, e)| (p.to_u64().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(fac(6), vec![(2, 1), (3, 1)]);
        assert_eq!(fac(-1), vec![]);
        assert_eq!(fac(1008), vec![(2, 4), (3, 2), (7, 1)]);
        assert_eq!(factor_integer(&BigInt::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn large_semiprime_splits() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let f = factor_integer(&(&p * &q * &p)).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0], (q.magnitude().clone(), 1));
        assert_eq!(f[1], (p.magnitude().clone(), 2));
    }

    #[test]
    fn primality_edges() {
        assert!(!is_prime_u64(0) && !is_prime_u64(1));
        assert!(is_prime_u64(2) && is_prime_u64(97));
        assert!(!is_prime_u64(3215031751));
        assert!(is_prime_u64(18446744073709551557));
        let m61 = (BigUint::one() << 127u32) - BigUint::one();
        assert!(is_prime(&m61));
        assert!(!is_prime(&(&m61 * BigUint::from(3u32))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in 1u64..u64::MAX) {
            let f = factor_integer(&BigInt::from(n)).unwrap();
            let mut acc = BigUint::one();
            for (p, e) in &f {
                prop_assert!(is_prime(p));
                acc *= p.pow(*e);
            }
            prop_assert_eq!(acc, BigUint::from(n));
        }
    }
}
