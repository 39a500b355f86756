//! Certified real and complex enclosures with rational endpoints.
//!
//! Endpoints are dyadic rationals rounded outward to a requested number of
//! significant bits. Every operation returns an interval guaranteed to contain
//! the exact result for every choice of inputs inside the operands.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Working precision used when none is specified.
pub const DEFAULT_PREC: u32 = 128;
/// Hard ceiling for precision escalation.
pub const MAX_PREC: u32 = 1 << 14;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn pow2(s: i64) -> BigRational {
    if s >= 0 {
        BigRational::from_integer(BigInt::one() << s as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-s) as usize)
    }
}

fn log2_estimate(q: &BigRational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

fn floor_rat(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

fn ceil_rat(q: &BigRational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

pub fn round_down(q: &BigRational, prec: u32) -> BigRational {
    if q.is_zero() {
        return q.clone();
    }
    let s = prec as i64 - log2_estimate(q);
    let scaled = q * pow2(s);
    if scaled.is_integer() {
        return q.clone();
    }
    BigRational::from_integer(floor_rat(&scaled)) * pow2(-s)
}

/// Rounds down to a multiple of `2^-bits`.
pub fn round_to_grid(q: &BigRational, bits: i64) -> BigRational {
    let scaled = q * pow2(bits);
    if scaled.is_integer() {
        return q.clone();
    }
    BigRational::from_integer(floor_rat(&scaled)) * pow2(-bits)
}

/// Rough `log2 |q|`, zero for `q = 0`.
pub fn log2_magnitude(q: &BigRational) -> i64 {
    if q.is_zero() {
        0
    } else {
        log2_estimate(q)
    }
}

pub fn round_up(q: &BigRational, prec: u32) -> BigRational {
    -round_down(&-q, prec)
}

impl Interval {
    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(BigRational::from_integer(n.into()))
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn rounded(&self, prec: u32) -> Self {
        Interval { lo: round_down(&self.lo, prec), hi: round_up(&self.hi, prec) }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.lo <= *q && *q <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Magnitude bound max(|lo|, |hi|).
    pub fn mag(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Width relative to the magnitude (absolute width when the magnitude is below 1).
    pub fn relative_width(&self) -> BigRational {
        let m = self.mag();
        if m < BigRational::one() {
            self.width()
        } else {
            self.width() / m
        }
    }

    /// Certainly-less comparison; `None` when the enclosures overlap.
    pub fn compare(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &BigRational) -> Interval {
        let a = &self.lo * q;
        let b = &self.hi * q;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn sqr(&self) -> Interval {
        if self.contains_zero() {
            Interval { lo: BigRational::zero(), hi: self.mag() * self.mag() }
        } else {
            self.mul(self)
        }
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Interval) -> Result<Interval> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn max(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.clone().max(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    /// Enclosure of the square root; the interval must be nonnegative.
    pub fn sqrt(&self, prec: u32) -> Result<Interval> {
        if self.lo.is_negative() {
            return Err(Error::InvalidInput("sqrt of negative interval".into()));
        }
        Ok(Interval { lo: sqrt_down(&self.lo, prec), hi: sqrt_up(&self.hi, prec) })
    }

    /// Enclosure of the natural logarithm; the interval must be positive.
    pub fn ln(&self, prec: u32) -> Result<Interval> {
        if !self.is_positive() {
            return Err(Error::InvalidInput("log of nonpositive interval".into()));
        }
        let lo = ln_rational(&self.lo, prec).lo;
        let hi = ln_rational(&self.hi, prec).hi;
        Ok(Interval { lo, hi })
    }

    /// Fixed-point decimal rendering of the midpoint.
    pub fn decimal(&self, places: u32) -> String {
        decimal_string(&self.mid(), places, Rounding::Nearest)
    }

    /// Outward-rounded decimal endpoints.
    pub fn decimal_bounds(&self, places: u32) -> [String; 2] {
        [
            decimal_string(&self.lo, places, Rounding::Down),
            decimal_string(&self.hi, places, Rounding::Up),
        ]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [lo, hi] = self.decimal_bounds(15);
        write!(f, "[{lo}, {hi}]")
    }
}

#[derive(Clone, Copy)]
enum Rounding {
    Down,
    Up,
    Nearest,
}

fn decimal_string(q: &BigRational, places: u32, mode: Rounding) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = q * BigRational::from_integer(scale.clone());
    let n = match mode {
        Rounding::Down => floor_rat(&scaled),
        Rounding::Up => ceil_rat(&scaled),
        Rounding::Nearest => floor_rat(&(scaled + BigRational::new(1.into(), 2.into()))),
    };
    let neg = n.is_negative();
    let digits = n.abs().to_string();
    let places = places as usize;
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn scaled_shift(q: &BigRational, prec: u32) -> i64 {
    // Choose s so that q * 4^s carries about 2*prec bits.
    prec as i64 - log2_estimate(q) / 2 + 2
}

fn sqrt_down(q: &BigRational, prec: u32) -> BigRational {
    if q.is_zero() {
        return BigRational::zero();
    }
    let s = scaled_shift(q, prec);
    let n = floor_rat(&(q * pow2(2 * s)));
    let r = n.magnitude().sqrt();
    BigRational::from_integer(BigInt::from(r)) * pow2(-s)
}

fn sqrt_up(q: &BigRational, prec: u32) -> BigRational {
    if q.is_zero() {
        return BigRational::zero();
    }
    let s = scaled_shift(q, prec);
    let n: BigUint = ceil_rat(&(q * pow2(2 * s))).magnitude().clone();
    let mut r = n.sqrt();
    if &r * &r < n {
        r += 1u32;
    }
    BigRational::from_integer(BigInt::from(r)) * pow2(-s)
}

/// 2 * atanh(z) for |z| <= 1/3, summed in fixed point with a rigorous
/// bound on truncation and rounding.
fn two_atanh(z: &BigRational, prec: u32) -> Interval {
    let w = prec as usize + 40;
    let neg = z.is_negative();
    let zf = floor_rat(&(z.abs() * pow2(w as i64)));
    let z2 = (&zf * &zf) >> w;
    let mut term = zf.clone();
    let mut sum = zf;
    let mut k: u64 = 1;
    while !term.is_zero() {
        term = (&term * &z2) >> w;
        sum += &term / BigInt::from(2 * k + 1);
        k += 1;
    }
    // Each floor loses under one ulp and errors grow at most linearly along
    // the term recursion; the tail after the last term is below a few ulps
    // (ratio <= 1/9). Rounding z itself moves 2 atanh by <= 9/4 ulp.
    let err = BigInt::from(4 * (k + 2) * (k + 2) + 8);
    let lo = BigRational::new((&sum - &err) * 2, BigInt::one() << w);
    let hi = BigRational::new((&sum + &err) * 2, BigInt::one() << w);
    let r = Interval::new(lo.max(BigRational::zero()), hi);
    if neg {
        r.neg()
    } else {
        r
    }
}

pub fn ln2(prec: u32) -> Interval {
    two_atanh(&BigRational::new(1.into(), 3.into()), prec)
}

/// Enclosure of ln(q) for rational q > 0.
pub fn ln_rational(q: &BigRational, prec: u32) -> Interval {
    assert!(q.is_positive(), "log of nonpositive rational");
    if q.is_one() {
        return Interval::zero();
    }
    let mut k = log2_estimate(q);
    let mut m = q * pow2(-k);
    let four_thirds = BigRational::new(4.into(), 3.into());
    let two_thirds = BigRational::new(2.into(), 3.into());
    while m > four_thirds {
        m /= BigRational::from_integer(2.into());
        k += 1;
    }
    while m < two_thirds {
        m *= BigRational::from_integer(2.into());
        k -= 1;
    }
    let z = (&m - BigRational::one()) / (&m + BigRational::one());
    let work = prec + 16 + (64 - k.unsigned_abs().leading_zeros());
    let atanh_part = two_atanh(&z, work);
    let l2 = ln2(work);
    l2.scale(&BigRational::from_integer(k.into())).add(&atanh_part).rounded(prec + 8)
}

pub fn ln_int(n: &BigUint, prec: u32) -> Interval {
    ln_rational(&BigRational::from_integer(BigInt::from(n.clone())), prec)
}

/// Rectangular complex enclosure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl CInterval {
    pub fn real(re: Interval) -> Self {
        CInterval { re, im: Interval::zero() }
    }

    pub fn add(&self, o: &CInterval) -> CInterval {
        CInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CInterval) -> CInterval {
        CInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &CInterval) -> CInterval {
        CInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, q: &BigRational) -> CInterval {
        CInterval { re: self.re.scale(q), im: self.im.scale(q) }
    }

    pub fn rounded(&self, prec: u32) -> CInterval {
        CInterval { re: self.re.rounded(prec), im: self.im.rounded(prec) }
    }

    /// Upper bound on |z|^2 over the rectangle.
    pub fn abs_sqr(&self) -> Interval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn abs(&self, prec: u32) -> Result<Interval> {
        self.abs_sqr().sqrt(prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ln_matches_f64() {
        for &(n, d) in &[(2, 1), (3, 1), (6, 1), (1, 7), (1000, 3), (7, 5)] {
            let e = ln_rational(&rat(n, d), 128);
            let approx = (n as f64 / d as f64).ln();
            let mid: f64 = e.decimal(17).parse().unwrap();
            assert!((mid - approx).abs() < 1e-14, "{n}/{d}: {mid} vs {approx}");
            assert!(e.width() < rat(1, 1 << 60).clone() * rat(1, 1 << 30));
        }
    }

    #[test]
    fn ln_additivity_enclosed() {
        let prec = 200;
        let a = ln_rational(&rat(6, 1), prec);
        let b = ln_rational(&rat(2, 1), prec).add(&ln_rational(&rat(3, 1), prec));
        assert!(a.sub(&b).contains_zero());
        let big = BigRational::from_integer(BigInt::from(10u32).pow(40));
        let l = ln_rational(&big, prec);
        let ten = ln_rational(&rat(10, 1), prec).scale(&rat(40, 1));
        assert!(l.sub(&ten).contains_zero());
    }

    #[test]
    fn sqrt_encloses() {
        let s = Interval::point(rat(2, 1)).sqrt(100).unwrap();
        assert!(s.sqr().contains(&rat(2, 1)));
        assert!(s.width() < rat(1, 1 << 40));
        assert_eq!(Interval::zero().sqrt(10).unwrap(), Interval::zero());
    }

    #[test]
    fn rounding_is_outward() {
        let q = rat(1, 3);
        assert!(round_down(&q, 20) < q && round_up(&q, 20) > q);
        assert_eq!(round_down(&rat(5, 4), 20), rat(5, 4));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Interval::point(rat(-1, 8)).decimal(3), "-0.125");
        assert_eq!(Interval::point(rat(7, 1)).decimal(2), "7.00");
        let [lo, hi] = Interval::point(rat(1, 3)).decimal_bounds(4);
        assert_eq!((lo.as_str(), hi.as_str()), ("0.3333", "0.3334"));
    }
}
