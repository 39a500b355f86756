//! Cayley forms of parametrized rational curves.
//!
//! For `Phi = (phi_0, ..., phi_n)` binary forms of degree `e`, a pencil
//! `{L1 = L2 = 0}` meets the curve iff `A = L1(Phi)` and `B = L2(Phi)` share a
//! root. Every Bezout bracket `A_i B_j - A_j B_i` is linear in the Plucker
//! coordinates `u_kl = L1_k L2_l - L1_l L2_k`, so the Bezout determinant is a
//! degree-`e` form in the `u_kl`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::FFElem;
use crate::mpoly::{
    bezout_from_brackets, bezout_sign, det_fraction_free, parse_poly_list, sylvester_resultant, MPoly, Monomial,
    PolyRing,
};
use crate::numfield::{reduce_local_part, NFElem, NumberField, PrimeIdeal};
use crate::ring::{Field, Ring};

/// A curve `(s : t) -> (phi_0(s,t) : ... : phi_n(s,t))` with integral
/// coefficients.
#[derive(Clone, Debug)]
pub struct CurveParam {
    pub n: usize,
    pub e: u32,
    pub forms: Vec<MPoly<NFElem>>,
}

pub fn param_names() -> Vec<String> {
    vec!["s".to_string(), "t".to_string()]
}

impl CurveParam {
    /// Validates degrees and clears denominators. The base-locus check
    /// happens in [`cayley_form`], where a common factor makes the form vanish.
    pub fn new(k: &NumberField, forms: Vec<MPoly<NFElem>>) -> Result<Self> {
        if forms.len() < 2 {
            return Err(Error::InvalidInput("a curve needs at least two coordinate forms".into()));
        }
        let mut e = None;
        for f in &forms {
            if f.nvars() != 2 {
                return Err(Error::NonBinary);
            }
            if f.is_zero() {
                continue;
            }
            let (homog, d) = f.is_homogeneous()?;
            if !homog || e.is_some_and(|e| e != d) {
                return Err(Error::InconsistentDegrees);
            }
            e = Some(d);
        }
        let e = match e {
            Some(e) if e >= 1 => e,
            _ => return Err(Error::InconsistentDegrees),
        };
        let den = forms
            .iter()
            .flat_map(|f| f.coeffs().map(|c| k.denominator(c)).collect::<Vec<_>>())
            .fold(BigInt::one(), |a, d| a.lcm(&d));
        let scale = k.from_int(&den);
        let forms = forms.iter().map(|f| f.scale(k, &scale)).collect::<Vec<_>>();
        Ok(CurveParam { n: forms.len() - 1, e, forms })
    }

    /// Comma-separated forms in `s`, `t`.
    pub fn parse(k: &NumberField, text: &str) -> Result<Self> {
        let consts = if k.is_rational() { vec![] } else { vec![(k.var().to_string(), k.generator())] };
        CurveParam::new(k, parse_poly_list(text, &param_names(), k, &consts)?)
    }

    pub fn point(&self, k: &NumberField, s: &NFElem, t: &NFElem) -> Vec<NFElem> {
        self.forms.iter().map(|f| f.eval(k, &[s.clone(), t.clone()])).collect()
    }

    pub fn render(&self, k: &NumberField) -> String {
        self.forms.iter().map(|f| f.render(k, &param_names())).collect::<Vec<_>>().join(", ")
    }
}

/// Index pairs `(k, l)`, `k < l <= n`, in lexicographic order.
pub fn plucker_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|k| (k + 1..=n).map(move |l| (k, l))).collect()
}

pub fn plucker_names(n: usize) -> Vec<String> {
    plucker_pairs(n)
        .into_iter()
        .map(|(k, l)| if n < 10 { format!("u{k}{l}") } else { format!("u{k}_{l}") })
        .collect()
}

/// `u_kl = L1_k L2_l - L1_l L2_k`.
pub fn plucker_coords<R: Ring>(r: &R, l1: &[R::Elem], l2: &[R::Elem]) -> Vec<R::Elem> {
    plucker_pairs(l1.len() - 1)
        .into_iter()
        .map(|(k, l)| r.sub(&r.mul(&l1[k], &l2[l]), &r.mul(&l1[l], &l2[k])))
        .collect()
}

fn coeff_table<R: Ring>(r: &R, forms: &[MPoly<R::Elem>], e: u32) -> Vec<Vec<R::Elem>> {
    forms
        .iter()
        .map(|f| (0..=e).map(|i| f.coeff(r, &Monomial(vec![i, e - i]))).collect())
        .collect()
}

/// Bezout determinant of `(L1(Phi), L2(Phi))` in the Plucker coordinates,
/// signed to agree with the Sylvester resultant. Zero iff the forms share a
/// factor.
pub fn cayley_form_over<R: Ring>(r: &R, forms: &[MPoly<R::Elem>], e: u32) -> Result<MPoly<R::Elem>> {
    let n = forms.len() - 1;
    let pairs = plucker_pairs(n);
    let names = plucker_names(n);
    let nu = pairs.len();
    let table = coeff_table(r, forms, e);
    let pr = PolyRing::new(r.clone(), names);
    let bracket = |i: usize, j: usize| {
        let terms = pairs.iter().enumerate().map(|(idx, &(k, l))| {
            let c = r.sub(&r.mul(&table[k][i], &table[l][j]), &r.mul(&table[k][j], &table[l][i]));
            (Monomial::var(nu, idx), c)
        });
        MPoly::from_terms(r, nu, terms.collect::<Vec<_>>())
    };
    let m = bezout_from_brackets(&pr, e as usize, bracket);
    let det = det_fraction_free(&pr, &m)?;
    Ok(if bezout_sign(e) < 0 { det.neg(r) } else { det })
}

#[derive(Clone, Debug)]
pub struct CayleyForm {
    pub form: MPoly<NFElem>,
    pub names: Vec<String>,
    pub source: CurveParam,
}

impl CayleyForm {
    pub fn render(&self, k: &NumberField) -> String {
        self.form.render(k, &self.names)
    }
}

pub fn cayley_form(k: &NumberField, c: &CurveParam) -> Result<CayleyForm> {
    let form = cayley_form_over(k, &c.forms, c.e)?;
    if form.is_zero() {
        return Err(Error::CommonFactor);
    }
    Ok(CayleyForm { form, names: plucker_names(c.n), source: c.clone() })
}

/// Whether `a` is a nonzero scalar multiple of `b`.
fn proportional<F: Field>(r: &F, a: &MPoly<F::Elem>, b: &MPoly<F::Elem>) -> bool {
    let (Some((m, ca)), Some(_)) = (a.leading_term(), b.leading_term()) else {
        return a.is_zero() && b.is_zero();
    };
    let cb = b.coeff(r, m);
    match r.div(&cb, ca) {
        Some(s) if !r.is_zero(&s) => a.scale(r, &s) == *b,
        _ => false,
    }
}

/// Cayley form over `O_K` reduced at `pr` (after removing its local
/// content) against the Cayley form of the reduced parametrization.
pub fn cayley_specialization_check(k: &NumberField, c: &CurveParam, pr: &PrimeIdeal) -> Result<bool> {
    let fq = &pr.residue;
    let reduced: Vec<MPoly<FFElem>> =
        c.forms.iter().map(|f| f.try_map(fq, |a| k.residue_reduce(a, pr))).collect::<Result<_>>()?;
    if reduced.iter().all(|f| f.is_zero()) {
        return Err(Error::DegenerateReduction);
    }
    let rhs = cayley_form_over(fq, &reduced, c.e)?;
    if rhs.is_zero() {
        return Err(Error::DegenerateReduction);
    }
    let psi = cayley_form(k, c)?;
    let lhs = reduce_local_part(k, &psi.form, pr)?;
    Ok(proportional(fq, &lhs, &rhs))
}

fn small(k: &NumberField, rng: &mut ChaCha8Rng, bound: i64) -> NFElem {
    k.from_i64(rng.gen_range(-bound..=bound))
}

/// Randomized incidence checks: the form vanishes on pencils through sampled
/// curve points, and on random pencils equals the resultant of the two
/// restricted forms.
pub fn incidence_probe(k: &NumberField, form: &CayleyForm, c: &CurveParam, trials: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = c.n;
    for _ in 0..trials {
        let (s0, t0) = loop {
            let (s0, t0) = (small(k, &mut rng, 20), small(k, &mut rng, 20));
            if !(k.is_zero(&s0) && k.is_zero(&t0)) {
                break (s0, t0);
            }
        };
        let x = c.point(k, &s0, &t0);
        let Some(j) = x.iter().position(|v| !k.is_zero(v)) else {
            return Err(Error::CommonFactor);
        };
        let through = |rng: &mut ChaCha8Rng| {
            let mut v: Vec<NFElem> = (0..=n).map(|_| small(k, rng, 50)).collect();
            let dot = v.iter().zip(&x).fold(k.zero(), |a, (p, q)| k.add(&a, &k.mul(p, q)));
            let corr = k.div(&dot, &x[j]).expect("nonzero coordinate");
            v[j] = k.sub(&v[j], &corr);
            v
        };
        let (l1, l2) = (through(&mut rng), through(&mut rng));
        if !k.is_zero(&form.form.eval(k, &plucker_coords(k, &l1, &l2))) {
            return Ok(false);
        }
        // a random pencil: the form is the resultant of L1(Phi), L2(Phi)
        let l1: Vec<NFElem> = (0..=n).map(|_| small(k, &mut rng, 50)).collect();
        let l2: Vec<NFElem> = (0..=n).map(|_| small(k, &mut rng, 50)).collect();
        let combine = |l: &[NFElem]| {
            c.forms.iter().zip(l).fold(MPoly::zero(2), |acc, (f, a)| acc.add(k, &f.scale(k, a)))
        };
        let (a, b) = (combine(&l1), combine(&l2));
        let value = form.form.eval(k, &plucker_coords(k, &l1, &l2));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let expected = sylvester_resultant(k, &a, &b)?;
        if value != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
