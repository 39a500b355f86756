//! The Ruppert linear system and the characteristic-zero absolute
//! irreducibility test built on it.
//!
//! For an affine `f(x, y)` of bidegree `(m, n)` the unknowns are polynomials
//! `g` (bidegree at most `(m - 1, n)`) and `h` (at most `(m, n - 2)`) with
//!
//! ```text
//! f g_y - g f_y = f h_x - h f_x,
//! ```
//!
//! i.e. `(g dx + h dy) / f` is closed. In characteristic zero `f` is
//! absolutely irreducible exactly when only `g = h = 0` solves it, which is
//! full column rank of the coefficient matrix. Reducing modulo a prime where
//! `f` becomes absolutely reducible produces a solution, so such primes divide
//! every maximal minor; this is how candidate bad primes are found.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::integer::factor_integer_with_budget;
use crate::exactmath::{FFElem, FiniteField};
use crate::mpoly::{dehomogenize_from, kernel_vector, rank, select_nonsingular_rows, CoordChange, Matrix, MPoly, Monomial};
use crate::numfield::{NFElem, NumberField, PrimeIdeal};
use crate::ring::{Field, Ring};

/// Plane sections tried before a form in four or more variables is
/// declared absolutely reducible.
pub const SECTION_ATTEMPTS: usize = 5;
/// Cap on plane-section draws that fail to preserve the degree.
pub const MAX_SECTION_DRAWS: usize = 100;
/// Maximal minors per view combined into the candidate gcd.
pub const MINOR_COUNT: usize = 2;
/// Independent views (coordinate changes or plane sections) whose minors
/// are combined.
pub const VIEW_COUNT: usize = 3;

/// A column of the Ruppert matrix: the coefficient of `x^a y^b` in `g` or `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unknown {
    G(u32, u32),
    H(u32, u32),
}

#[derive(Clone, Debug)]
pub struct RuppertSystem<C> {
    /// Affine bivariate source polynomial in `(x, y)`.
    pub f: MPoly<C>,
    pub m: u32,
    pub n: u32,
    /// Row `k` is the coefficient of `x^i y^j` for `rows[k] = (i, j)`.
    pub rows: Vec<(u32, u32)>,
    pub cols: Vec<Unknown>,
    pub matrix: Matrix<C>,
}

impl<C: Clone> RuppertSystem<C> {
    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }
}

fn row_index(n: u32, i: u32, j: u32) -> usize {
    (i * 2 * n + j) as usize
}

/// Builds the Ruppert matrix of a bivariate `f` of bidegree `(m, n)`.
pub fn build_ruppert<R: Ring>(r: &R, f: &MPoly<R::Elem>) -> Result<RuppertSystem<R::Elem>> {
    if f.nvars() != 2 {
        return Err(Error::InvalidInput("Ruppert system needs a bivariate polynomial".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = f.degree_in(0).unwrap_or(0);
    let n = f.degree_in(1).unwrap_or(0);
    if m < 1 || n < 2 {
        return Err(Error::DegenerateShape);
    }
    let rows: Vec<(u32, u32)> = (0..2 * m).flat_map(|i| (0..2 * n).map(move |j| (i, j))).collect();
    let mut cols = Vec::new();
    for a in 0..m {
        for b in 0..=n {
            cols.push(Unknown::G(a, b));
        }
    }
    for a in 0..=m {
        for b in 0..n - 1 {
            cols.push(Unknown::H(a, b));
        }
    }
    let fx = f.derivative(r, 0);
    let fy = f.derivative(r, 1);
    let mut matrix = Matrix::filled(rows.len(), cols.len(), r.zero());
    let mono = |a: u32, b: u32| Monomial(vec![a, b]);
    for (c, u) in cols.iter().enumerate() {
        // column polynomial: the left side minus the right side for a unit unknown
        let poly = match *u {
            Unknown::G(a, b) => {
                let mut p = fy.mul_term(r, &mono(a, b), &r.one()).neg(r);
                if b > 0 {
                    p = p.add(r, &f.mul_term(r, &mono(a, b - 1), &r.from_i64(b as i64)));
                }
                p
            }
            Unknown::H(a, b) => {
                let mut p = fx.mul_term(r, &mono(a, b), &r.one());
                if a > 0 {
                    p = p.sub(r, &f.mul_term(r, &mono(a - 1, b), &r.from_i64(a as i64)));
                }
                p
            }
        };
        for (mm, coef) in poly.terms() {
            matrix.set(row_index(n, mm.0[0], mm.0[1]), c, coef.clone());
        }
    }
    Ok(RuppertSystem { f: f.clone(), m, n, rows, cols, matrix })
}

/// `(g, h)` from a vector of unknowns.
pub fn unknowns_to_polys<R: Ring>(r: &R, sys: &RuppertSystem<R::Elem>, v: &[R::Elem]) -> (MPoly<R::Elem>, MPoly<R::Elem>) {
    let mut g = Vec::new();
    let mut h = Vec::new();
    for (u, c) in sys.cols.iter().zip(v) {
        match *u {
            Unknown::G(a, b) => g.push((Monomial(vec![a, b]), c.clone())),
            Unknown::H(a, b) => h.push((Monomial(vec![a, b]), c.clone())),
        }
    }
    (MPoly::from_terms(r, 2, g), MPoly::from_terms(r, 2, h))
}

/// `f g_y - g f_y - f h_x + h f_x`, zero exactly for solutions.
pub fn ruppert_residual<R: Ring>(r: &R, f: &MPoly<R::Elem>, g: &MPoly<R::Elem>, h: &MPoly<R::Elem>) -> MPoly<R::Elem> {
    f.mul(r, &g.derivative(r, 1))
        .sub(r, &g.mul(r, &f.derivative(r, 1)))
        .sub(r, &f.mul(r, &h.derivative(r, 0)))
        .add(r, &h.mul(r, &f.derivative(r, 0)))
}

/// Restriction of a form to a plane: `T_i = sum_j matrix[i][j] U_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneSection {
    pub attempt: usize,
    pub matrix: Vec<Vec<i64>>,
}

impl PlaneSection {
    pub fn apply<R: Ring>(&self, r: &R, f: &MPoly<R::Elem>) -> MPoly<R::Elem> {
        let images: Vec<MPoly<R::Elem>> = self
            .matrix
            .iter()
            .map(|row| {
                let mut acc = MPoly::zero(3);
                for (j, &c) in row.iter().enumerate() {
                    acc = acc.add(r, &MPoly::var(r, j, 3).scale(r, &r.from_i64(c)));
                }
                acc
            })
            .collect();
        f.substitute(r, &images)
    }
}

/// The first plane section at or after draw `start` that keeps the degree.
pub fn plane_section<R: Ring>(r: &R, f: &MPoly<R::Elem>, seed: u64, start: usize) -> Result<(MPoly<R::Elem>, PlaneSection)> {
    let (homog, delta) = f.is_homogeneous()?;
    if !homog {
        return Err(Error::NonHomogeneous);
    }
    let n = f.nvars();
    for attempt in start..start + MAX_SECTION_DRAWS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (attempt as u64).wrapping_mul(0x2545_f491_4f6c_dd1d));
        let matrix: Vec<Vec<i64>> = (0..n).map(|_| (0..3).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let sec = PlaneSection { attempt, matrix };
        let g = sec.apply(r, f);
        if g.total_degree() == Some(delta) {
            return Ok((g, sec));
        }
    }
    Err(Error::DegenerateSection)
}

/// A ternary form made affine with full degree in both remaining variables,
/// and its Ruppert system.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub section: Option<PlaneSection>,
    pub ternary: MPoly<NFElem>,
    pub change: CoordChange,
    pub system: RuppertSystem<NFElem>,
}

/// Dehomogenizes a ternary form so that `deg_x = deg_y = delta` and builds
/// its Ruppert system, trying coordinate changes from index `start` on.
pub fn prepare_ternary(
    k: &NumberField,
    f: &MPoly<NFElem>,
    seed: u64,
    start: usize,
) -> Result<(CoordChange, RuppertSystem<NFElem>)> {
    let (_, delta) = f.is_homogeneous()?;
    let accept = |a: &MPoly<NFElem>| a.degree_in(0) == Some(delta) && a.degree_in(1) == Some(delta);
    let d = dehomogenize_from(k, f, 0, seed, start, accept)?;
    let sys = build_ruppert(k, &d.affine)?;
    Ok((d.change, sys))
}

fn full_rank(k: &NumberField, sys: &RuppertSystem<NFElem>) -> bool {
    select_nonsingular_rows(k, &sys.matrix, &nf_pivot(k)).is_some()
}

/// Up to `count` full-rank views of `f` starting with `first`: further
/// coordinate changes of a ternary form, or further plane sections.
/// A bad prime makes every view rank deficient, while spurious primes of
/// one view rarely recur in another.
pub fn candidate_views(k: &NumberField, f: &MPoly<NFElem>, first: &Prepared, seed: u64, count: usize) -> Result<Vec<Prepared>> {
    let mut views = vec![first.clone()];
    match &first.section {
        None => {
            let mut start = first.change.index + 1;
            for _ in 0..count * SECTION_ATTEMPTS {
                if views.len() >= count {
                    break;
                }
                let Ok((change, system)) = prepare_ternary(k, f, seed, start) else { break };
                start = change.index + 1;
                if full_rank(k, &system) {
                    views.push(Prepared { section: None, ternary: f.clone(), change, system });
                }
            }
        }
        Some(sec) => {
            let mut start = sec.attempt + 1;
            for _ in 0..count * SECTION_ATTEMPTS {
                if views.len() >= count {
                    break;
                }
                let Ok((g, sec)) = plane_section(k, f, seed, start) else { break };
                start = sec.attempt + 1;
                let Ok((change, system)) = prepare_ternary(k, &g, seed, 0) else { continue };
                if full_rank(k, &system) {
                    views.push(Prepared { section: Some(sec), ternary: g, change, system });
                }
            }
        }
    }
    Ok(views)
}

/// Nonzero maximal minors of integral Ruppert matrices and the candidate
/// primes read off the gcd of their norms.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorCertificate {
    /// `(view, rows)` of every minor used; all columns are kept.
    pub rows: Vec<(usize, Vec<usize>)>,
    pub values: Vec<NFElem>,
    /// `|Norm(D)|` for every minor.
    pub norms: Vec<BigUint>,
    pub gcd: BigUint,
    /// Prime factorization of the gcd.
    pub factorization: Vec<(BigUint, u32)>,
}

impl MinorCertificate {
    pub fn primes(&self) -> Vec<BigUint> {
        self.factorization.iter().map(|(p, _)| p.clone()).collect()
    }
}

fn nf_pivot(k: &NumberField) -> impl Fn(&[(usize, &NFElem)]) -> usize + '_ {
    move |cands: &[(usize, &NFElem)]| {
        if !k.is_rational() {
            return 0;
        }
        let mut best = 0;
        for (i, (_, v)) in cands.iter().enumerate() {
            if v.0[0].abs() > cands[best].1 .0[0].abs() {
                best = i;
            }
        }
        best
    }
}

/// Up to `count` nonzero maximal minors per system: the first from the
/// natural row order, the rest from seeded row shuffles. The gcd of all
/// their norms is factored.
pub fn minor_certificate(
    k: &NumberField,
    systems: &[&RuppertSystem<NFElem>],
    count: usize,
    seed: u64,
    budget: u64,
) -> Result<MinorCertificate> {
    let pivot = nf_pivot(k);
    let mut rows_out = Vec::new();
    let mut values = Vec::new();
    let mut norms = Vec::new();
    let mut gcd = BigUint::zero();
    for (view, sys) in systems.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ view as u64);
        let mut order: Vec<usize> = (0..sys.rows.len()).collect();
        for attempt in 0..count.max(1) {
            if attempt > 0 {
                order.shuffle(&mut rng);
            }
            let permuted = Matrix::new(order.iter().map(|&i| sys.matrix.data[i].clone()).collect())?;
            let Some((sel, value)) = select_nonsingular_rows(k, &permuted, &pivot) else {
                return Err(Error::AllMinorsZero);
            };
            let mut rows: Vec<usize> = sel.iter().map(|&i| order[i]).collect();
            rows.sort_unstable();
            if rows_out.contains(&(view, rows.clone())) {
                continue;
            }
            // `value` is the minor on the sorted rows up to sign
            let norm = k.norm(&value);
            if !norm.is_integer() {
                return Err(Error::InvalidInput("minor of a non-integral system".into()));
            }
            let norm = norm.numer().magnitude().clone();
            gcd = gcd.gcd(&norm);
            norms.push(norm);
            rows_out.push((view, rows));
            values.push(value);
        }
    }
    let factorization = if gcd.is_one() {
        Vec::new()
    } else {
        factor_integer_with_budget(&BigInt::from(gcd.clone()), budget)?
    };
    Ok(MinorCertificate { rows: rows_out, values, norms, gcd, factorization })
}

/// Why a form is (not) absolutely irreducible in characteristic zero.
#[derive(Clone, Debug)]
pub enum Char0Witness {
    /// Degree one.
    Hyperplane,
    /// Forms in at most two variables of degree at least two split.
    Binary,
    /// Full column rank, certified by a nonsingular maximal minor.
    FullRank { rows: Vec<usize>, minor: NFElem },
    /// A nonzero solution `(g, h)` of the Ruppert system.
    Kernel { g: MPoly<NFElem>, h: MPoly<NFElem> },
}

#[derive(Clone, Debug)]
pub struct Char0Analysis {
    pub irreducible: bool,
    pub witness: Char0Witness,
    /// Present for forms of degree at least two in three or more variables.
    pub prepared: Option<Prepared>,
}

fn analyze_ternary(k: &NumberField, f: &MPoly<NFElem>, seed: u64, section: Option<PlaneSection>) -> Result<Char0Analysis> {
    let (change, system) = prepare_ternary(k, f, seed, 0)?;
    let pivot = nf_pivot(k);
    let prepared = |system| Prepared { section: section.clone(), ternary: f.clone(), change: change.clone(), system };
    if let Some((rows, minor)) = select_nonsingular_rows(k, &system.matrix, &pivot) {
        return Ok(Char0Analysis {
            irreducible: true,
            witness: Char0Witness::FullRank { rows, minor },
            prepared: Some(prepared(system)),
        });
    }
    let v = kernel_vector(k, &system.matrix).expect("rank deficient matrix has a kernel");
    let (g, h) = unknowns_to_polys(k, &system, &v);
    Ok(Char0Analysis { irreducible: false, witness: Char0Witness::Kernel { g, h }, prepared: Some(prepared(system)) })
}

/// Absolute irreducibility over `K` of a homogeneous form.
pub fn abs_irreducible_char0(k: &NumberField, f: &MPoly<NFElem>, seed: u64) -> Result<Char0Analysis> {
    let (homog, delta) = f.is_homogeneous()?;
    if !homog {
        return Err(Error::NonHomogeneous);
    }
    let vars_used = (0..f.nvars()).filter(|&i| f.degree_in(i).unwrap_or(0) > 0).count();
    if delta == 0 {
        return Err(Error::InvalidInput("constant form".into()));
    }
    if delta == 1 {
        return Ok(Char0Analysis { irreducible: true, witness: Char0Witness::Hyperplane, prepared: None });
    }
    if f.nvars() <= 2 || vars_used <= 2 {
        return Ok(Char0Analysis { irreducible: false, witness: Char0Witness::Binary, prepared: None });
    }
    if f.nvars() == 3 {
        return analyze_ternary(k, f, seed, None);
    }
    // A factorization of f restricts to one of every section, so one
    // absolutely irreducible section proves irreducibility.
    let mut last = None;
    let mut start = 0;
    for _ in 0..SECTION_ATTEMPTS {
        let (g, sec) = plane_section(k, f, seed, start)?;
        start = sec.attempt + 1;
        let res = analyze_ternary(k, &g, seed, Some(sec))?;
        if res.irreducible {
            return Ok(res);
        }
        last = Some(res);
    }
    Ok(last.expect("at least one section"))
}

/// Reduces an integral element into the residue field of `pr`.
pub fn reduce_elem(k: &NumberField, pr: &PrimeIdeal, a: &NFElem) -> Result<FFElem> {
    if k.is_rational() {
        let q = &a.0[0];
        let r = &pr.residue;
        let num = r.from_int(q.numer());
        let den = r.from_int(q.denom());
        return r.div(&num, &den).ok_or(Error::NotPIntegral);
    }
    k.residue_reduce(a, pr)
}

/// The Ruppert matrix reduced modulo `pr`.
pub fn reduce_matrix(k: &NumberField, pr: &PrimeIdeal, m: &Matrix<NFElem>) -> Result<Matrix<FFElem>> {
    let data = m
        .data
        .iter()
        .map(|row| row.iter().map(|a| reduce_elem(k, pr, a)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(data)
}

/// Column rank of the system modulo `pr`.
pub fn rank_mod(k: &NumberField, pr: &PrimeIdeal, sys: &RuppertSystem<NFElem>) -> Result<usize> {
    let m = reduce_matrix(k, pr, &sys.matrix)?;
    Ok(rank(&pr.residue, &m))
}

/// Column rank of the system built directly over a finite field.
pub fn rank_over(fq: &FiniteField, f: &MPoly<FFElem>) -> Result<usize> {
    let sys = build_ruppert(fq, f)?;
    Ok(rank(fq, &sys.matrix))
}

/// Bit length of the largest absolute value among the integer coordinates
/// of the matrix entries (diagnostic).
pub fn max_entry_bits(sys: &RuppertSystem<NFElem>) -> u64 {
    sys.matrix
        .data
        .iter()
        .flatten()
        .flat_map(|e| e.0.iter())
        .map(|c| c.numer().bits())
        .max()
        .unwrap_or(0)
}
