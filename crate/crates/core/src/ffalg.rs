//! Ground truth over finite fields: factorization of homogeneous
//! polynomials, absolute irreducibility, and reduction types.
//!
//! Every absolutely irreducible factor of a form of degree `d` over `F_q` is
//! defined over `F_{q^e}` for some `e <= d`, so over `F_{q^E}` with
//! `E = lcm(1..d)` the factorization is already the absolute one. Linear
//! factors there are found by a root-constrained search: after a shear making
//! the `T0^d` coefficient nonzero, a factor `T0 - sum a_j T_j` forces `a_j` to
//! be a root of `f(x, e_j)`. A cofactor of degree 2 or 3 without linear
//! factors is then absolutely irreducible. Factorizations over `F_q` follow by
//! grouping absolute factors into Frobenius orbits.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::{upoly, Embedding, FFElem, FiniteField};
use crate::mpoly::{MPoly, Monomial};
use crate::ring::{Field, Ring};

/// Default cap on candidate divisions per call.
pub const DEFAULT_BUDGET: u64 = 20_000_000;
/// Largest degree handled by the absolute factorization.
pub const MAX_ABS_DEGREE: u32 = 8;

const SHEAR_ATTEMPTS: usize = 64;

pub type FFPoly = MPoly<FFElem>;

/// `f = unit * prod factor^multiplicity`, factors monic under grlex.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: FFElem,
    pub factors: Vec<(FFPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, k: &FiniteField, nvars: usize) -> FFPoly {
        let mut acc = MPoly::constant(k, self.unit.clone(), nvars);
        for (g, m) in &self.factors {
            acc = acc.mul(k, &g.pow(k, *m));
        }
        acc
    }

    pub fn count_with_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

/// Scales `f` so its grlex-leading coefficient is one.
pub fn normalize(k: &FiniteField, f: &FFPoly) -> (FFElem, FFPoly) {
    let Some((_, c)) = f.leading_term() else { return (k.zero(), f.clone()) };
    let c = c.clone();
    let inv = k.inv(&c).expect("nonzero leading coefficient");
    (c, f.scale(k, &inv))
}

fn homogeneous_degree(f: &FFPoly) -> Result<u32> {
    match f.is_homogeneous()? {
        (true, d) => Ok(d),
        _ => Err(Error::NonHomogeneous),
    }
}

/// Factorization over `k` by blind enumeration of monic homogeneous
/// candidate divisors in increasing degree.
pub fn factor_exhaustive(k: &FiniteField, f: &FFPoly, budget: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    homogeneous_degree(f)?;
    let q = k.order_u64().ok_or_else(|| Error::BudgetExceeded("field too large to enumerate".into()))?;
    let n = f.nvars();
    let (unit, mut rest) = normalize(k, f);
    let mut factors: Vec<FFPoly> = Vec::new();
    let mut spent = 0u64;
    let mut d = 1;
    while 2 * d <= rest.total_degree().unwrap_or(0) {
        match find_divisor(k, &rest, n, d, q, budget, &mut spent)? {
            Some(g) => {
                rest = rest.div_exact(k, &g).expect("divisor found by exact division");
                factors.push(g);
            }
            None => d += 1,
        }
    }
    if rest.total_degree().unwrap_or(0) > 0 {
        factors.push(rest);
    }
    Ok(Factorization { unit, factors: collect_multiplicities(factors) })
}

fn find_divisor(
    k: &FiniteField,
    f: &FFPoly,
    n: usize,
    d: u32,
    q: u64,
    budget: u64,
    spent: &mut u64,
) -> Result<Option<FFPoly>> {
    let monos = Monomial::all_of_degree(n, d);
    for (lead, lm) in monos.iter().enumerate() {
        // coefficients of the `lead` smaller monomials are free
        let count = (q as u128).checked_pow(lead as u32).unwrap_or(u128::MAX);
        if count > (budget - (*spent).min(budget)) as u128 {
            return Err(Error::BudgetExceeded(format!(
                "{count} candidate divisors of degree {d} with leading monomial {:?}",
                lm.0
            )));
        }
        for idx in 0..count as u64 {
            *spent += 1;
            let mut terms = vec![(lm.clone(), k.one())];
            let mut rest = idx;
            for m in &monos[..lead] {
                terms.push((m.clone(), k.element_at(rest % q)));
                rest /= q;
            }
            let g = MPoly::from_terms(k, n, terms);
            if f.div_exact(k, &g).is_some() {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

fn collect_multiplicities(mut fs: Vec<FFPoly>) -> Vec<(FFPoly, u32)> {
    fs.sort_by(|a, b| cmp_poly(a, b));
    let mut out: Vec<(FFPoly, u32)> = Vec::new();
    for g in fs {
        match out.last_mut() {
            Some((h, m)) if *h == g => *m += 1,
            _ => out.push((g, 1)),
        }
    }
    out
}

/// Deterministic order: degree, then terms from the leading one down.
fn cmp_poly(a: &FFPoly, b: &FFPoly) -> std::cmp::Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        let ta: Vec<_> = a.terms().rev().collect();
        let tb: Vec<_> = b.terms().rev().collect();
        ta.cmp(&tb)
    })
}

/// The absolute factorization of a form over `F_q`, computed in `F_{q^E}`.
#[derive(Clone, Debug)]
pub struct AbsoluteFactorization {
    pub base: FiniteField,
    pub big: FiniteField,
    pub embedding: Embedding,
    /// Monic absolutely irreducible factors over `big` with multiplicities.
    pub factors: Vec<(FFPoly, u32)>,
}

impl AbsoluteFactorization {
    /// Frobenius orbits of the distinct factors (indices into `factors`).
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let q = self.base.order();
        let mut seen = vec![false; self.factors.len()];
        let mut out = Vec::new();
        for i in 0..self.factors.len() {
            if seen[i] {
                continue;
            }
            let mut orbit = vec![i];
            seen[i] = true;
            let mut g = frobenius_poly(&self.big, &self.factors[i].0, &q);
            while g != self.factors[i].0 {
                let j = self.factors.iter().position(|(h, _)| *h == g).expect("Frobenius-stable factor set");
                seen[j] = true;
                orbit.push(j);
                g = frobenius_poly(&self.big, &g, &q);
            }
            out.push(orbit);
        }
        out
    }

    /// Factorization over the base field.
    pub fn over_base(&self) -> Factorization {
        let n = self.factors.first().map_or(0, |(g, _)| g.nvars());
        let mut factors = Vec::new();
        for orbit in self.orbits() {
            let mut prod = MPoly::one(&self.big, n);
            for &i in &orbit {
                prod = prod.mul(&self.big, &self.factors[i].0);
            }
            let g = prod.map(&self.base, |c| self.embedding.restrict(c).expect("orbit product is defined over the base"));
            factors.push((g, self.factors[orbit[0]].1));
        }
        factors.sort_by(|a, b| cmp_poly(&a.0, &b.0));
        Factorization { unit: self.base.one(), factors }
    }

    pub fn is_absolutely_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

fn frobenius_poly(k: &FiniteField, f: &FFPoly, q: &BigUint) -> FFPoly {
    f.map(k, |c| k.pow_big(c, q))
}

pub fn lcm_up_to(d: u32) -> u32 {
    (1..=d.max(1)).fold(1, |acc, x| acc.lcm(&x))
}

/// Absolute factorization of a nonconstant form over `k`.
pub fn absolute_factorization(k: &FiniteField, f: &FFPoly, budget: u64, seed: u64) -> Result<AbsoluteFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = homogeneous_degree(f)?;
    if d == 0 {
        return Err(Error::InvalidInput("constant form".into()));
    }
    if d > MAX_ABS_DEGREE {
        return Err(Error::BudgetExceeded(format!("absolute factorization limited to degree {MAX_ABS_DEGREE}")));
    }
    let e = lcm_up_to(d) as usize;
    let big = FiniteField::extension(k.p(), k.degree() * e)?;
    let embedding = Embedding::new(k, &big)?;
    let fb = f.map(&big, |c| embedding.embed(c));
    let (_, fb) = normalize(&big, &fb);
    let mut spent = 0u64;
    let (linear, rest) = linear_factors(&big, &fb, budget, &mut spent, seed)?;
    let mut all = linear;
    match rest.total_degree().unwrap_or(0) {
        0 => {}
        1..=3 => all.push(rest),
        r => {
            return Err(Error::BudgetExceeded(format!(
                "cofactor of degree {r} without linear factors needs a higher-degree search"
            )))
        }
    }
    Ok(AbsoluteFactorization { base: k.clone(), big, embedding, factors: collect_multiplicities(all) })
}

/// Substitution `T_i -> T_i + c_i T0` for `i >= 1`.
fn shear(k: &FiniteField, f: &FFPoly, c: &[FFElem]) -> FFPoly {
    let n = f.nvars();
    let images: Vec<FFPoly> = (0..n)
        .map(|i| {
            let v = MPoly::var(k, i, n);
            if i == 0 {
                v
            } else {
                v.add(k, &MPoly::var(k, 0, n).scale(k, &c[i - 1]))
            }
        })
        .collect();
    f.substitute(k, &images)
}

/// All linear factors (with repetition) and the cofactor without any.
fn linear_factors(
    k: &FiniteField,
    f: &FFPoly,
    budget: u64,
    spent: &mut u64,
    seed: u64,
) -> Result<(Vec<FFPoly>, FFPoly)> {
    let n = f.nvars();
    let d = f.total_degree().unwrap_or(0);
    if n == 1 {
        let t = MPoly::var(k, 0, n);
        return Ok((vec![t; d as usize], MPoly::one(k, n)));
    }
    let mut e0 = vec![k.zero(); n];
    e0[0] = k.one();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = k.order_u64().unwrap_or(u64::MAX);
    let mut c = vec![k.zero(); n - 1];
    let mut found = false;
    for attempt in 0..SHEAR_ATTEMPTS {
        if attempt > 0 {
            c = (0..n - 1).map(|_| k.element_at(rng.gen_range(0..order))).collect();
        }
        let mut pt = vec![k.one()];
        pt.extend(c.iter().cloned());
        if !k.is_zero(&f.eval(k, &pt)) {
            found = true;
            break;
        }
    }
    if !found {
        return Err(Error::BudgetExceeded("no shear with a nonzero T0 coefficient".into()));
    }
    let mut g = shear(k, f, &c);
    let neg_c: Vec<FFElem> = c.iter().map(|x| k.neg(x)).collect();
    let mut out = Vec::new();
    'extract: while g.total_degree().unwrap_or(0) > 0 {
        // roots of g(x, e_j), each a polynomial of full degree in x
        let mut root_sets: Vec<Vec<FFElem>> = Vec::with_capacity(n - 1);
        for j in 1..n {
            let deg = g.total_degree().unwrap_or(0) as usize;
            let mut u = vec![k.zero(); deg + 1];
            for (m, coef) in g.terms() {
                if m.0[1..].iter().enumerate().all(|(i, &e)| if i + 1 == j { true } else { e == 0 }) {
                    u[m.0[0] as usize] = k.add(&u[m.0[0] as usize], coef);
                }
            }
            let roots = upoly::roots(k, &u, seed ^ j as u64);
            if roots.is_empty() {
                break 'extract;
            }
            root_sets.push(roots);
        }
        let total: u64 = root_sets.iter().map(|r| r.len() as u64).product();
        if *spent + total > budget {
            return Err(Error::BudgetExceeded(format!("{total} root-constrained candidates")));
        }
        let mut idx = vec![0usize; n - 1];
        loop {
            *spent += 1;
            let mut terms = vec![(Monomial::var(n, 0), k.one())];
            for j in 1..n {
                terms.push((Monomial::var(n, j), k.neg(&root_sets[j - 1][idx[j - 1]])));
            }
            let lin = MPoly::from_terms(k, n, terms);
            if let Some(q) = g.div_exact(k, &lin) {
                g = q;
                out.push(normalize(k, &shear(k, &lin, &neg_c)).1);
                continue 'extract;
            }
            // advance the mixed-radix counter
            let mut pos = 0;
            loop {
                if pos == n - 1 {
                    break 'extract;
                }
                idx[pos] += 1;
                if idx[pos] < root_sets[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
    let rest = normalize(k, &shear(k, &g, &neg_c)).1;
    Ok((out, rest))
}

/// Why a form fails to be geometrically integral.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// A factor over the base field occurring more than once.
    SquareFactor { factor: FFPoly, multiplicity: u32 },
    /// A proper factor defined over the extension of the given degree; its
    /// coefficients live in `field`.
    ProperFactor { factor: FFPoly, extension_degree: u32, field: FiniteField },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionType {
    pub is_reduced: bool,
    pub is_irreducible: bool,
    pub is_geometrically_integral: bool,
    pub witness: Option<Witness>,
}

/// Subfield of `big` of degree `e` over the prime field, with its embedding.
fn subfield(big: &FiniteField, e: usize) -> Result<(FiniteField, Embedding)> {
    let small = FiniteField::extension(big.p(), e)?;
    let emb = Embedding::new(&small, big)?;
    Ok((small, emb))
}

/// Whether the form is absolutely irreducible, with a witness when not.
pub fn abs_irreducible_ff(k: &FiniteField, f: &FFPoly, budget: u64) -> Result<(bool, Option<Witness>)> {
    let r = classify_reduction(k, f, budget)?;
    Ok((r.is_geometrically_integral, r.witness))
}

/// Reduced / irreducible / geometrically integral flags of a form over `k`.
pub fn classify_reduction(k: &FiniteField, f: &FFPoly, budget: u64) -> Result<ReductionType> {
    let d = homogeneous_degree(f)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if d == 1 {
        return Ok(ReductionType { is_reduced: true, is_irreducible: true, is_geometrically_integral: true, witness: None });
    }
    let abs = absolute_factorization(k, f, budget, 0x5eed)?;
    let base = abs.over_base();
    let is_reduced = base.factors.iter().all(|(_, m)| *m == 1);
    let is_irreducible = base.factors.len() == 1;
    let geom = abs.is_absolutely_irreducible();
    let witness = if geom {
        None
    } else if let Some((g, m)) = base.factors.iter().find(|(_, m)| *m > 1) {
        Some(Witness::SquareFactor { factor: g.clone(), multiplicity: *m })
    } else {
        // smallest field of definition among the absolute factors
        let orbits = abs.orbits();
        let best = orbits.iter().min_by_key(|o| o.len()).expect("at least one factor");
        let e = best.len();
        let factor = &abs.factors[best[0]].0;
        if e == 1 {
            Some(Witness::ProperFactor { factor: factor.clone(), extension_degree: 1, field: k.clone() })
        } else {
            let total = k.degree() * e;
            let (small, emb) = subfield(&abs.big, total)?;
            let g = factor.map(&small, |c| emb.restrict(c).expect("factor defined over the subfield"));
            Some(Witness::ProperFactor { factor: g, extension_degree: e as u32, field: small })
        }
    };
    Ok(ReductionType { is_reduced, is_irreducible, is_geometrically_integral: geom, witness })
}

/// Number of elements of `k` as `u64`, for budget accounting.
pub fn field_size(k: &FiniteField) -> Option<u64> {
    k.order().to_u64()
}
