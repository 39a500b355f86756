//! Heights of polynomials over number fields and the explicit bound constants.
//!
//! Every quantity is carried as a [`SymExpr`]: a rational constant plus
//! rational multiples of `log p` for rational primes `p` and of logarithms of
//! archimedean absolute values of algebraic numbers. Logs of integers are
//! always split into prime logs, so equal quantities print identically.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::integer::binomial;
use crate::exactmath::factor_integer;
use crate::interval::{ln_int, Interval, DEFAULT_PREC, MAX_PREC};
use crate::mpoly::MPoly;
use crate::numfield::{NFElem, NumberField, PrimeIdeal};
use crate::ring::{Rationals, Ring};

/// Relative tolerance (bits) for archimedean absolute values inside heights.
const ATOM_TOL_BITS: i64 = 64;

/// Logarithm of an archimedean absolute value that is not a rational number.
#[derive(Clone, Debug, PartialEq)]
pub struct LogAtom {
    pub label: String,
    /// Enclosure of the logarithm.
    pub value: Interval,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SymExpr {
    pub rational: BigRational,
    pub logs: BTreeMap<BigUint, BigRational>,
    pub atoms: BTreeMap<String, (BigRational, Interval)>,
}

impl SymExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: BigRational) -> Self {
        SymExpr { rational: q, ..Self::default() }
    }

    /// `log |q|` for a nonzero rational.
    pub fn log_rational(q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut out = Self::zero();
        for (p, e) in factor_integer(q.numer())? {
            out.add_log(p, BigRational::from_integer(e.into()));
        }
        for (p, e) in factor_integer(q.denom())? {
            out.add_log(p, -BigRational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn log_int(n: u64) -> Self {
        Self::log_rational(&BigRational::from_integer(n.into())).expect("positive")
    }

    pub fn log_big(n: &BigUint) -> Result<Self> {
        Self::log_rational(&BigRational::from_integer(BigInt::from(n.clone())))
    }

    pub fn atom(a: LogAtom) -> Self {
        let mut out = Self::zero();
        out.atoms.insert(a.label, (BigRational::one(), a.value));
        out
    }

    fn add_log(&mut self, p: BigUint, c: BigRational) {
        let e = self.logs.entry(p.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.logs.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.logs.is_empty() && self.atoms.is_empty()
    }

    pub fn add(&self, o: &SymExpr) -> SymExpr {
        let mut out = self.clone();
        out.rational += &o.rational;
        for (p, c) in &o.logs {
            out.add_log(p.clone(), c.clone());
        }
        for (k, (c, v)) in &o.atoms {
            let e = out.atoms.entry(k.clone()).or_insert_with(|| (BigRational::zero(), v.clone()));
            e.0 += c;
            if e.0.is_zero() {
                out.atoms.remove(k);
            }
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> SymExpr {
        if q.is_zero() {
            return Self::zero();
        }
        SymExpr {
            rational: &self.rational * q,
            logs: self.logs.iter().map(|(p, c)| (p.clone(), c * q)).collect(),
            atoms: self.atoms.iter().map(|(k, (c, v))| (k.clone(), (c * q, v.clone()))).collect(),
        }
    }

    pub fn neg(&self) -> SymExpr {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, o: &SymExpr) -> SymExpr {
        self.add(&o.neg())
    }

    /// Certified enclosure at working precision `prec`.
    pub fn enclose(&self, prec: u32) -> Interval {
        let mut acc = Interval::point(self.rational.clone());
        for (p, c) in &self.logs {
            acc = acc.add(&ln_int(p, prec).scale(c));
        }
        for (c, v) in self.atoms.values() {
            acc = acc.add(&v.scale(c));
        }
        acc.rounded(prec)
    }

    /// Enclosure whose width is below `2^-bits` (or as narrow as the atoms allow).
    pub fn enclose_tight(&self, bits: u32) -> Interval {
        let tol = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
        let mut prec = DEFAULT_PREC;
        loop {
            let e = self.enclose(prec);
            if e.width() < tol || prec >= MAX_PREC {
                return e;
            }
            prec *= 2;
        }
    }

    /// Sign of `self - other` decided by certified enclosures, or `None` if
    /// the enclosures still overlap at maximal precision.
    pub fn compare(&self, other: &SymExpr) -> Option<std::cmp::Ordering> {
        let diff = self.sub(other);
        if diff.is_zero() {
            return Some(std::cmp::Ordering::Equal);
        }
        let mut prec = DEFAULT_PREC;
        while prec <= MAX_PREC {
            if let Some(o) = diff.enclose(prec).compare(&Interval::zero()) {
                return Some(o);
            }
            prec *= 2;
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(64).mid().to_f64().unwrap_or(f64::NAN)
    }
}

fn coeff_term(c: &BigRational, atom: &str, first: bool) -> String {
    let neg = c.is_negative();
    let a = c.abs();
    let body = if a.is_one() { atom.to_string() } else { format!("{}*{}", Rationals.render(&a), atom) };
    match (first, neg) {
        (true, false) => body,
        (true, true) => format!("-{body}"),
        (false, false) => format!(" + {body}"),
        (false, true) => format!(" - {body}"),
    }
}

impl fmt::Display for SymExpr {
    /// Prime logs in increasing order, then atoms, then the rational constant.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (p, c) in &self.logs {
            s += &coeff_term(c, &format!("log({p})"), s.is_empty());
        }
        for (k, (c, _)) in &self.atoms {
            s += &coeff_term(c, k, s.is_empty());
        }
        if !self.rational.is_zero() {
            let r = Rationals.render(&self.rational.abs());
            s += &match (s.is_empty(), self.rational.is_negative()) {
                (true, false) => r,
                (true, true) => format!("-{r}"),
                (false, false) => format!(" + {r}"),
                (false, true) => format!(" - {r}"),
            };
        }
        write!(f, "{s}")
    }
}

/// A height together with its enclosure.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightValue {
    pub symbolic: SymExpr,
    pub enclosure: Interval,
}

impl HeightValue {
    pub fn new(symbolic: SymExpr) -> Self {
        let enclosure = symbolic.enclose_tight(60);
        HeightValue { symbolic, enclosure }
    }

    pub fn decimal(&self) -> String {
        self.enclosure.decimal(15)
    }
}

/// Finite-place data of a polynomial: its local content at one prime.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalContent {
    pub label: String,
    pub p: u64,
    pub f: u32,
    pub content: i64,
}

/// Archimedean data: local degree and `log max |a|_v` over the coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ArchMax {
    pub place: usize,
    pub local_degree: u32,
    pub log_max: SymExpr,
}

/// Per-place data of an adelic polynomial; only finitely many local
/// contents may be nonzero, so the finite list is the whole support.
#[derive(Clone, Debug, PartialEq)]
pub struct AdelicData {
    pub degree: usize,
    pub finite: Vec<LocalContent>,
    pub arch: Vec<ArchMax>,
}

impl AdelicData {
    /// Diagonal embedding of a polynomial over `k`.
    pub fn from_poly(k: &NumberField, f: &MPoly<NFElem>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut finite = Vec::new();
        for pr in finite_support(k, f)? {
            let content = crate::numfield::local_content(k, f, &pr)?;
            if content != 0 {
                finite.push(LocalContent { label: pr.label.clone(), p: pr.p, f: pr.f, content });
            }
        }
        let mut arch = Vec::new();
        for place in k.arch_places() {
            arch.push(ArchMax {
                place: place.index,
                local_degree: place.local_degree,
                log_max: log_max_abs(k, f, &place)?,
            });
        }
        Ok(AdelicData { degree: k.degree(), finite, arch })
    }

    fn finite_part(&self) -> SymExpr {
        let mut s = SymExpr::zero();
        for lc in &self.finite {
            let w = BigRational::from_integer(BigInt::from(-lc.content * lc.f as i64));
            s = s.add(&SymExpr::log_int(lc.p).scale(&w));
        }
        s
    }

    /// Scales by an idele of norm one making every local content zero; the
    /// finite contribution moves evenly onto the archimedean places.
    pub fn primitivize(&self) -> Self {
        let shift = self.finite_part().scale(&BigRational::new(BigInt::one(), BigInt::from(self.degree)));
        AdelicData {
            degree: self.degree,
            finite: Vec::new(),
            arch: self
                .arch
                .iter()
                .map(|a| ArchMax { log_max: a.log_max.add(&shift), ..a.clone() })
                .collect(),
        }
    }
}

/// Height of adelic data: `(1/[K:Q]) (sum_P -c_P log N(P) + sum_v [K_v:Q_v] log max_v)`.
pub fn adelic_height(data: &AdelicData) -> Result<HeightValue> {
    if data.finite.iter().any(|lc| lc.p == 0) {
        return Err(Error::InfiniteSupport);
    }
    let mut s = data.finite_part();
    for a in &data.arch {
        s = s.add(&a.log_max.scale(&BigRational::from_integer(a.local_degree.into())));
    }
    let s = s.scale(&BigRational::new(BigInt::one(), BigInt::from(data.degree)));
    Ok(HeightValue::new(s))
}

/// Naive height `h(f) = (1/[K:Q]) log H_K(f)`.
pub fn naive_height(k: &NumberField, f: &MPoly<NFElem>) -> Result<HeightValue> {
    adelic_height(&AdelicData::from_poly(k, f)?)
}

/// Finite places where some coefficient has nonzero valuation.
pub fn finite_support(k: &NumberField, f: &MPoly<NFElem>) -> Result<Vec<PrimeIdeal>> {
    let mut primes: Vec<BigUint> = f.coeffs().flat_map(|c| k.support_primes(c)).collect();
    primes.sort();
    primes.dedup();
    let mut out = Vec::new();
    for p in primes {
        let p = p.to_u64().ok_or_else(|| Error::InvalidInput(format!("prime {p} too large")))?;
        for pr in k.prime_decomposition(p)? {
            if f.coeffs().any(|c| k.valuation(c, &pr).map(|v| v != 0).unwrap_or(false)) {
                out.push(pr);
            }
        }
    }
    Ok(out)
}

/// `log max_a |a|_v` over the coefficients of `f`.
fn log_max_abs(k: &NumberField, f: &MPoly<NFElem>, place: &crate::numfield::ArchPlace) -> Result<SymExpr> {
    if k.is_rational() {
        let m = f.coeffs().map(|c| c.0[0].abs()).max().ok_or(Error::ZeroPolynomial)?;
        return SymExpr::log_rational(&m);
    }
    // Rational coefficients have exact logs; others become atoms.
    let mut best: Option<(Interval, SymExpr)> = None;
    for c in f.coeffs() {
        let (abs, sym) = match k.as_rational(c) {
            Some(q) => (Interval::point(q.abs()), SymExpr::log_rational(&q)?),
            None => {
                let abs = k.arch_abs_tol(c, place, ATOM_TOL_BITS)?;
                let value = abs.ln(DEFAULT_PREC)?;
                let label = format!("log|{}|_v{}", k.render_elem(c), place.index);
                (abs, SymExpr::atom(LogAtom { label, value }))
            }
        };
        best = match best {
            // On overlap the values agree to the atom tolerance; keep the first.
            Some((b, s)) if abs.compare(&b) != Some(std::cmp::Ordering::Greater) => Some((b, s)),
            _ => Some((abs, sym)),
        };
    }
    Ok(best.ok_or(Error::ZeroPolynomial)?.1)
}

/// Which explicit constant a bound uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantKind {
    /// `(3 delta^2 - 3) log delta`, plane curves.
    Curve,
    /// `(delta^2 - 1)(3 log delta + delta log 3 + log binom(n + delta, delta))`.
    Hypersurface,
    /// The general constant with the height-comparison shift.
    General,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundConstants {
    pub kind: ConstantKind,
    pub n: u64,
    pub d: u64,
    pub delta: u64,
    /// `N(n, d) = binom(n + 1, d + 1) - 1` for the general constant.
    pub big_n: Option<u64>,
    pub value: HeightValue,
}

fn q(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn constant_c_curve(delta: u64) -> Result<BoundConstants> {
    if delta == 0 {
        return Err(Error::DimensionOutOfRange("delta must be at least 1".into()));
    }
    let v = SymExpr::log_int(delta).scale(&q(3 * delta * delta - 3));
    Ok(BoundConstants { kind: ConstantKind::Curve, n: 2, d: 1, delta, big_n: None, value: HeightValue::new(v) })
}

pub fn constant_c_hypersurface(n: u64, delta: u64) -> Result<BoundConstants> {
    if n == 0 || delta == 0 {
        return Err(Error::DimensionOutOfRange("need n >= 1 and delta >= 1".into()));
    }
    let inner = SymExpr::log_int(delta)
        .scale(&q(3))
        .add(&SymExpr::log_int(3).scale(&q(delta)))
        .add(&SymExpr::log_big(&binomial(n + delta, delta))?);
    let v = inner.scale(&q(delta * delta - 1));
    Ok(BoundConstants {
        kind: ConstantKind::Hypersurface,
        n,
        d: n - 1,
        delta,
        big_n: None,
        value: HeightValue::new(v),
    })
}

/// `N(n, d) = binom(n + 1, d + 1) - 1`.
pub fn plucker_dimension(n: u64, d: u64) -> u64 {
    (binomial(n + 1, d + 1) - 1u32).to_u64().expect("small dimension")
}

pub fn harmonic(m: u64) -> BigRational {
    (1..=m).map(|k| BigRational::new(BigInt::one(), BigInt::from(k))).sum()
}

pub fn constant_c_general(n: u64, d: u64, delta: u64) -> Result<BoundConstants> {
    if d == 0 || d >= n {
        return Err(Error::DimensionOutOfRange(format!("need 1 <= d <= n - 1, got n = {n}, d = {d}")));
    }
    if delta == 0 {
        return Err(Error::DimensionOutOfRange("delta must be at least 1".into()));
    }
    let big_n = plucker_dimension(n, d);
    let shift = SymExpr::log_int(2)
        .scale(&q(big_n + 1))
        .add(&SymExpr::log_int(big_n + 1).scale(&q(4)))
        .add(&SymExpr::log_int(3))
        .sub(&SymExpr::rational(harmonic(big_n) / q(2)));
    let inner = SymExpr::log_int(delta)
        .scale(&q(3))
        .add(&SymExpr::log_big(&binomial(big_n + delta, delta))?)
        .add(&shift.scale(&q(delta)));
    let v = inner.scale(&q(delta * delta - 1));
    Ok(BoundConstants {
        kind: ConstantKind::General,
        n,
        d,
        delta,
        big_n: Some(big_n),
        value: HeightValue::new(v),
    })
}

/// `(delta^2 - 1) h + C`.
pub fn bound_value(h: &HeightValue, c: &BoundConstants, delta: u64) -> Result<HeightValue> {
    if delta != c.delta {
        return Err(Error::DegreeMismatch(format!("polynomial degree {delta}, constant for {}", c.delta)));
    }
    let s = h.symbolic.scale(&q(delta * delta - 1)).add(&c.value.symbolic);
    Ok(HeightValue::new(s))
}
