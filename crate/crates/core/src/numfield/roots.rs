//! Certified isolation of the complex roots of an integer polynomial.
//!
//! Approximations come from Durand-Kerner in `f64`, are polished by Newton
//! steps in dyadic rational arithmetic, and are then certified: the disc of
//! radius `n |p(z) / p'(z)|` around `z` contains a root, and pairwise disjoint
//! discs therefore contain exactly one root each. A disc centred on the real
//! axis isolates a real root (complex roots come in conjugate pairs).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::{log2_magnitude, round_to_grid, CInterval, Interval, DEFAULT_PREC, MAX_PREC};

#[derive(Clone, Debug, PartialEq)]
pub struct RootDisc {
    pub re: BigRational,
    pub im: BigRational,
    /// Rational upper bound on the distance to the isolated root.
    pub radius: BigRational,
    pub real: bool,
}

impl RootDisc {
    /// Axis-parallel box containing the disc.
    pub fn enclosure(&self) -> CInterval {
        let re = Interval::new(&self.re - &self.radius, &self.re + &self.radius);
        let im = if self.real {
            Interval::zero()
        } else {
            Interval::new(&self.im - &self.radius, &self.im + &self.radius)
        };
        CInterval { re, im }
    }
}

type C = (BigRational, BigRational);

fn cmul(a: &C, b: &C) -> C {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn norm2(a: &C) -> BigRational {
    &a.0 * &a.0 + &a.1 * &a.1
}

/// Value and derivative of `p` (low-first) at `z`, exactly.
fn eval_with_derivative(p: &[BigInt], z: &C) -> (C, C) {
    let zero = BigRational::zero();
    let mut v: C = (zero.clone(), zero.clone());
    let mut d: C = (zero.clone(), zero);
    for c in p.iter().rev() {
        d = cmul(&d, z);
        d = (&d.0 + &v.0, &d.1 + &v.1);
        v = cmul(&v, z);
        v.0 += BigRational::from_integer(c.clone());
    }
    (v, d)
}

fn durand_kerner(p: &[BigInt]) -> Vec<(f64, f64)> {
    let n = p.len() - 1;
    let lead = p[n].to_f64().unwrap_or(1.0);
    let a: Vec<f64> = p.iter().map(|c| c.to_f64().unwrap_or(0.0) / lead).collect();
    let bound = 1.0 + a[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            (bound * 0.5 * ang.cos(), bound * 0.5 * ang.sin())
        })
        .collect();
    let mul = |x: (f64, f64), y: (f64, f64)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    let div = |x: (f64, f64), y: (f64, f64)| {
        let d = y.0 * y.0 + y.1 * y.1;
        ((x.0 * y.0 + x.1 * y.1) / d, (x.1 * y.0 - x.0 * y.1) / d)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut v = (1.0, 0.0);
            for c in a.iter().rev().skip(1) {
                v = mul(v, z[i]);
                v.0 += c;
            }
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if j != i {
                    den = mul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            if den.0 == 0.0 && den.1 == 0.0 {
                den = (1e-12, 0.0);
            }
            let step = div(v, den);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            moved = moved.max(step.0.abs() + step.1.abs());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn to_rat(x: f64) -> BigRational {
    BigRational::from_f64(x).unwrap_or_else(BigRational::zero)
}

fn newton(p: &[BigInt], mut z: C, real: bool, prec: u32) -> C {
    let steps = 8 + (prec as f64).log2().ceil() as usize;
    for _ in 0..steps {
        let (v, d) = eval_with_derivative(p, &z);
        let dn = norm2(&d);
        if dn.is_zero() {
            break;
        }
        // v / d = v * conj(d) / |d|^2
        // Both components share one absolute grid so a vanishing component
        // cannot drag in ever finer denominators.
        let q = cmul(&v, &(d.0.clone(), -d.1.clone()));
        let re = &z.0 - &q.0 / &dn;
        let im = if real { BigRational::zero() } else { &z.1 - &q.1 / &dn };
        let bits = prec as i64 - log2_magnitude(&re).max(log2_magnitude(&im)).max(0);
        z.0 = round_to_grid(&re, bits);
        z.1 = round_to_grid(&im, bits);
    }
    z
}

/// Upper bound on `n |p(z)/p'(z)|`, or `None` if `p'(z) = 0`.
fn inclusion_radius(p: &[BigInt], z: &C, prec: u32) -> Option<BigRational> {
    let n = BigRational::from_integer(BigInt::from(p.len() - 1));
    let (v, d) = eval_with_derivative(p, z);
    let dn = norm2(&d);
    if dn.is_zero() {
        return None;
    }
    let r2 = &n * &n * norm2(&v) / dn;
    let r = Interval::point(r2).sqrt(prec).ok()?.hi;
    // A zero radius only happens for exact rational roots; keep it positive.
    Some(if r.is_zero() { BigRational::new(BigInt::one(), BigInt::one() << (prec as usize)) } else { r })
}

fn try_isolate(p: &[BigInt], prec: u32) -> Option<Vec<RootDisc>> {
    let approx = durand_kerner(p);
    let mut discs: Vec<RootDisc> = Vec::new();
    for (re, im) in approx {
        let mut z = newton(p, (to_rat(re), to_rat(im)), false, prec);
        let mut radius = inclusion_radius(p, &z, prec)?;
        let mut real = false;
        if z.1.abs() <= radius {
            let zr = newton(p, (z.0.clone(), BigRational::zero()), true, prec);
            if let Some(rr) = inclusion_radius(p, &zr, prec) {
                z = zr;
                radius = rr;
                real = true;
            }
        }
        if !real && z.1.abs() <= radius {
            return None;
        }
        discs.push(RootDisc { re: z.0, im: z.1, radius, real });
    }
    for i in 0..discs.len() {
        for j in i + 1..discs.len() {
            let dz = (&discs[i].re - &discs[j].re, &discs[i].im - &discs[j].im);
            let rr = &discs[i].radius + &discs[j].radius;
            if norm2(&dz) <= &rr * &rr {
                return None;
            }
        }
    }
    discs.sort_by(|a, b| {
        (!a.real).cmp(&!b.real).then_with(|| a.re.cmp(&b.re)).then_with(|| a.im.cmp(&b.im))
    });
    Some(discs)
}

/// Isolating discs for all roots of a squarefree integer polynomial
/// (low-first coefficients), real roots first in increasing order.
pub fn isolate_roots(p: &[BigInt], prec: u32) -> Result<Vec<RootDisc>> {
    let mut prec = prec.max(DEFAULT_PREC);
    while prec <= MAX_PREC {
        if let Some(d) = try_isolate(p, prec) {
            return Ok(d);
        }
        prec *= 2;
    }
    Err(Error::PrecisionExhausted)
}

/// Enclosure of `q(alpha)` for rational coefficients `q` (low-first).
pub fn eval_enclosure(q: &[BigRational], root: &CInterval, prec: u32) -> CInterval {
    let mut acc = CInterval::real(Interval::zero());
    for c in q.iter().rev() {
        acc = acc.mul(root).add(&CInterval::real(Interval::point(c.clone()))).rounded(prec);
    }
    acc
}
