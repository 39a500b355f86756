//! End-to-end analysis: heights, bounds, candidate bad primes from Ruppert
//! minors, per-prime classification, a completeness scan, and the verdict.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{cayley_form, cayley_specialization_check, incidence_probe, CayleyForm, CurveParam};
use crate::error::{Error, Result};
use crate::exactmath::FiniteField;
use crate::ffalg::{classify_reduction, ReductionType, Witness, DEFAULT_BUDGET};
use crate::heights::{
    bound_value, constant_c_curve, constant_c_general, constant_c_hypersurface, naive_height, AdelicData,
    BoundConstants, ConstantKind, HeightValue, SymExpr,
};
use crate::mpoly::MPoly;
use crate::numfield::{local_content, reduce_local_part, NFElem, NumberField, PrimeIdeal};
use crate::ring::Ring;
use crate::ruppert::{
    abs_irreducible_char0, candidate_views, minor_certificate, rank_mod, Char0Witness, Prepared, MINOR_COUNT, VIEW_COUNT,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SCAN_BOUND: u64 = 100;
pub const DEFAULT_SEED: u64 = 1;
/// Residue characteristics must fit the finite-field element type.
pub const MAX_PRIME: u64 = u32::MAX as u64;
/// Incidence trials run before a parametrization is accepted.
pub const PROBE_TRIALS: usize = 20;
const DECIMAL_PLACES: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub scan_bound: u64,
    pub seed: u64,
    pub budget: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { scan_bound: DEFAULT_SCAN_BOUND, seed: DEFAULT_SEED, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumberReport {
    pub symbolic: String,
    pub decimal: String,
    pub enclosure: [String; 2],
}

impl From<&HeightValue> for NumberReport {
    fn from(h: &HeightValue) -> Self {
        NumberReport {
            symbolic: h.symbolic.to_string(),
            decimal: h.decimal(),
            enclosure: h.enclosure.decimal_bounds(DECIMAL_PLACES),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// The bound the verdict is decided against.
    Verdict,
    /// A valid bound, reported alongside.
    Reported,
    /// Not machine-checked.
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantReport {
    pub kind: ConstantKind,
    pub n: u64,
    pub d: u64,
    pub delta: u64,
    pub big_n: Option<u64>,
    pub value: NumberReport,
    pub role: Role,
    /// `(delta^2 - 1) h + C` for this constant.
    pub bound: Option<NumberReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    pub field: String,
    pub polynomial: Option<String>,
    pub parametrization: Option<String>,
    pub variables: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalContentReport {
    pub prime: String,
    pub content: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorReport {
    pub view: usize,
    pub rows: Vec<usize>,
    pub norm: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub affine_variables: [String; 2],
    pub matrix_rows: usize,
    pub matrix_columns: usize,
    pub coordinate_change: Vec<Vec<i64>>,
    pub plane_section: Option<Vec<Vec<i64>>>,
    pub minors: Vec<MinorReport>,
    pub gcd: String,
    pub gcd_factorization: Vec<(String, u32)>,
    /// Set when the gcd could not be factored within budget.
    pub unfactored: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeStatus {
    Good,
    Bad,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub kind: String,
    pub factor: String,
    pub multiplicity: Option<u32>,
    pub extension_degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeReport {
    pub label: String,
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub norm: String,
    pub candidate: bool,
    pub scanned: bool,
    pub local_content: i64,
    pub status: PrimeStatus,
    pub reduced: Option<bool>,
    pub irreducible: Option<bool>,
    pub geometrically_integral: Option<bool>,
    pub witness: Option<WitnessReport>,
    /// Column rank of the Ruppert matrix reduced at this prime.
    pub ruppert_rank: Option<usize>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub bound: u64,
    pub primes_scanned: usize,
    pub bad_in_scan: Vec<String>,
    pub certificate_bad_in_scan: Vec<String>,
    pub consistent: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationReport {
    pub prime: String,
    pub result: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "CONDITIONAL")]
    Conditional,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::Conditional => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub kind: String,
    pub input: InputEcho,
    pub delta: u64,
    pub n: u64,
    pub d: u64,
    pub seed: u64,
    pub scan_bound: u64,
    pub budget: u64,
    pub local_contents: Vec<LocalContentReport>,
    pub height: NumberReport,
    pub constants: Vec<ConstantReport>,
    pub bound: NumberReport,
    pub certificate: Option<CertificateReport>,
    pub primes: Vec<PrimeReport>,
    pub bad_primes: Vec<String>,
    pub undecided: Vec<String>,
    pub excluded: Vec<String>,
    pub sum_log_norm: NumberReport,
    pub verdict: Verdict,
    pub scan: ScanReport,
    pub specialization: Vec<SpecializationReport>,
    pub caveats: Vec<String>,
}

impl AnalysisReport {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

/// Pretty JSON with a trailing newline; key order follows field order.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn emit_report(report: &AnalysisReport) -> Result<String> {
    to_json(report)
}

pub fn write_report(report: &AnalysisReport, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, emit_report(report)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Outcome of classifying one prime.
#[derive(Clone, Debug)]
pub struct Classified {
    pub prime: PrimeIdeal,
    pub local_content: i64,
    pub result: std::result::Result<ReductionType, Error>,
}

impl Classified {
    pub fn status(&self) -> PrimeStatus {
        match &self.result {
            Ok(r) if r.is_geometrically_integral => PrimeStatus::Good,
            Ok(_) => PrimeStatus::Bad,
            Err(_) => PrimeStatus::Undecided,
        }
    }
}

/// Classification of the reduction of the `pr`-part of `f`.
pub fn classify_at(k: &NumberField, f: &MPoly<NFElem>, pr: &PrimeIdeal, budget: u64) -> Classified {
    let content = local_content(k, f, pr).unwrap_or(0);
    let result = reduce_local_part(k, f, pr).and_then(|g| classify_reduction(&pr.residue, &g, budget));
    Classified { prime: pr.clone(), local_content: content, result }
}

/// Primes above `p`, or the index-divisor error.
fn primes_above(k: &NumberField, p: u64) -> Result<Vec<PrimeIdeal>> {
    k.prime_decomposition(p)
}

fn prime_norm(pr: &PrimeIdeal) -> BigUint {
    BigUint::from(pr.p).pow(pr.f)
}

#[derive(Clone, Debug, Default)]
pub struct ScanTable {
    pub entries: Vec<Classified>,
    /// Rational primes dividing the index of `Z[theta]`.
    pub excluded: Vec<u64>,
}

/// Classification at every prime of norm at most `bound`.
pub fn scan_primes(k: &NumberField, f: &MPoly<NFElem>, bound: u64, budget: u64) -> Result<ScanTable> {
    let (homog, _) = f.is_homogeneous()?;
    if !homog {
        return Err(Error::NonHomogeneous);
    }
    let mut excluded = Vec::new();
    let mut todo = Vec::new();
    for p in crate::exactmath::primes_up_to(bound) {
        match primes_above(k, p) {
            Ok(list) => todo.extend(list.into_iter().filter(|pr| prime_norm(pr) <= BigUint::from(bound))),
            Err(Error::IndexDivisorUnsupported(_)) => excluded.push(p),
            Err(e) => return Err(e),
        }
    }
    let entries = todo.par_iter().map(|pr| classify_at(k, f, pr, budget)).collect();
    Ok(ScanTable { entries, excluded })
}

fn witness_report(w: &Witness, base: &FiniteField, names: &[String]) -> WitnessReport {
    match w {
        Witness::SquareFactor { factor, multiplicity } => WitnessReport {
            kind: "square_factor".into(),
            factor: factor.render(base, names),
            multiplicity: Some(*multiplicity),
            extension_degree: None,
        },
        Witness::ProperFactor { factor, extension_degree, field } => WitnessReport {
            kind: "proper_factor".into(),
            factor: factor.render(field, names),
            multiplicity: None,
            extension_degree: Some(*extension_degree),
        },
    }
}

fn prime_report(c: &Classified, candidate: bool, scanned: bool, ruppert_rank: Option<usize>, names: &[String]) -> PrimeReport {
    let pr = &c.prime;
    let (reduced, irreducible, gi, witness, note) = match &c.result {
        Ok(r) => (
            Some(r.is_reduced),
            Some(r.is_irreducible),
            Some(r.is_geometrically_integral),
            r.witness.as_ref().map(|w| witness_report(w, &pr.residue, names)),
            None,
        ),
        Err(e) => (None, None, None, None, Some(e.to_string())),
    };
    PrimeReport {
        label: pr.label.clone(),
        p: pr.p,
        e: pr.e,
        f: pr.f,
        norm: prime_norm(pr).to_string(),
        candidate,
        scanned,
        local_content: c.local_content,
        status: c.status(),
        reduced,
        irreducible,
        geometrically_integral: gi,
        witness,
        ruppert_rank,
        note,
    }
}

/// How the verdict constant is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Hypersurface,
    /// Curve in `P^n` through its Cayley form.
    Curve { n: u64 },
}

struct Core {
    report: AnalysisReport,
    bad: Vec<PrimeIdeal>,
}

fn ensure_integral(k: &NumberField, f: &MPoly<NFElem>) -> MPoly<NFElem> {
    let den = f
        .coeffs()
        .map(|c| k.denominator(c))
        .fold(num_bigint::BigInt::one(), |a, d| num_integer::Integer::lcm(&a, &d));
    f.scale(k, &k.from_int(&den))
}

fn field_echo(k: &NumberField) -> String {
    if k.is_rational() {
        "Q".into()
    } else {
        let m = k.minpoly();
        let x = MPoly::from_terms(
            &crate::ring::Integers,
            1,
            m.iter().enumerate().map(|(i, c)| (crate::mpoly::Monomial(vec![i as u32]), c.clone())).collect::<Vec<_>>(),
        );
        x.render(&crate::ring::Integers, &[k.var().to_string()])
    }
}

fn constant_report(c: &BoundConstants, role: Role, bound: Option<&HeightValue>) -> ConstantReport {
    ConstantReport {
        kind: c.kind,
        n: c.n,
        d: c.d,
        delta: c.delta,
        big_n: c.big_n,
        value: (&c.value).into(),
        role,
        bound: bound.map(Into::into),
    }
}

fn run(k: &NumberField, f: &MPoly<NFElem>, names: &[String], opts: &Options, mode: Mode) -> Result<Core> {
    let (homog, delta) = f.is_homogeneous()?;
    if !homog {
        return Err(Error::NonHomogeneous);
    }
    if delta == 0 {
        return Err(Error::InvalidInput("constant polynomial".into()));
    }
    if f.nvars() < 2 {
        return Err(Error::InvalidInput("need at least two variables".into()));
    }
    let n = (f.nvars() - 1) as u64;
    let delta = delta as u64;
    let fi = ensure_integral(k, f);
    let char0 = abs_irreducible_char0(k, &fi, opts.seed)?;
    if !char0.irreducible {
        return Err(match mode {
            Mode::Hypersurface => Error::NotGeometricallyIntegralOverK,
            Mode::Curve { .. } => Error::NonBirationalSuspected("the Cayley form is not absolutely irreducible".into()),
        });
    }
    let mut caveats = Vec::new();

    // heights and bounds
    let adelic = AdelicData::from_poly(k, f)?;
    let local_contents =
        adelic.finite.iter().map(|c| LocalContentReport { prime: c.label.clone(), content: c.content }).collect();
    let h = naive_height(k, f)?;
    let mut constants = Vec::new();
    let verdict_bound;
    match mode {
        Mode::Hypersurface if n == 2 => {
            let cc = constant_c_curve(delta)?;
            let ch = constant_c_hypersurface(n, delta)?;
            let bc = bound_value(&h, &cc, delta)?;
            let bh = bound_value(&h, &ch, delta)?;
            constants.push(constant_report(&cc, Role::Verdict, Some(&bc)));
            constants.push(constant_report(&ch, Role::Reported, Some(&bh)));
            verdict_bound = bc;
        }
        Mode::Hypersurface => {
            let ch = constant_c_hypersurface(n, delta)?;
            let bh = bound_value(&h, &ch, delta)?;
            constants.push(constant_report(&ch, Role::Verdict, Some(&bh)));
            verdict_bound = bh;
        }
        Mode::Curve { n: ambient } => {
            let ch = constant_c_hypersurface(n, delta)?;
            let bh = bound_value(&h, &ch, delta)?;
            constants.push(constant_report(&ch, Role::Verdict, Some(&bh)));
            if ambient >= 2 {
                let cg = constant_c_general(ambient, 1, delta)?;
                constants.push(constant_report(&cg, Role::Informational, None));
                caveats.push("the general constant is informational: its height term is not computed".into());
            }
            verdict_bound = bh;
        }
    }

    // candidates from the Ruppert minors
    let mut certificate = None;
    let mut candidate_primes: BTreeSet<u64> = BTreeSet::new();
    let mut oversized: Vec<BigUint> = Vec::new();
    let mut unfactored = false;
    let prepared: Option<Prepared> = char0.prepared.clone();
    if let (Some(prep), Char0Witness::FullRank { .. }) = (&prepared, &char0.witness) {
        let views = candidate_views(k, &fi, prep, opts.seed, VIEW_COUNT)?;
        let systems: Vec<_> = views.iter().map(|v| &v.system).collect();
        let (cert, failed) = match minor_certificate(k, &systems, MINOR_COUNT, opts.seed, opts.budget) {
            Ok(c) => (Some(c), false),
            Err(Error::BudgetExceeded(_)) => (None, true),
            Err(e) => return Err(e),
        };
        unfactored = failed;
        if failed {
            caveats.push("the gcd of the minors was not factored within budget; only the scan is complete".into());
        }
        for (p, _) in cert.as_ref().map(|c| c.factorization.clone()).unwrap_or_default() {
            match p.to_u64().filter(|&p| p <= MAX_PRIME) {
                Some(p) => {
                    candidate_primes.insert(p);
                }
                None => oversized.push(p),
            }
        }
        certificate = Some(CertificateReport {
            affine_variables: ["x".into(), "y".into()],
            matrix_rows: prep.system.rows.len(),
            matrix_columns: prep.system.cols.len(),
            coordinate_change: prep.change.matrix.clone(),
            plane_section: prep.section.as_ref().map(|s| s.matrix.clone()),
            minors: cert
                .as_ref()
                .map(|c| {
                    c.rows
                        .iter()
                        .zip(&c.norms)
                        .map(|((view, r), nn)| MinorReport { view: *view, rows: r.clone(), norm: nn.to_string() })
                        .collect()
                })
                .unwrap_or_default(),
            gcd: cert.as_ref().map_or_else(|| "unknown".into(), |c| c.gcd.to_string()),
            gcd_factorization: cert
                .as_ref()
                .map(|c| c.factorization.iter().map(|(p, e)| (p.to_string(), *e)).collect())
                .unwrap_or_default(),
            unfactored,
        });
    }

    // primes to classify: candidates plus the completeness scan
    let mut excluded = BTreeSet::new();
    let mut todo: Vec<(PrimeIdeal, bool, bool)> = Vec::new();
    let scan_rational = crate::exactmath::primes_up_to(opts.scan_bound.min(MAX_PRIME));
    let all: BTreeSet<u64> = candidate_primes.iter().copied().chain(scan_rational.iter().copied()).collect();
    for &p in &all {
        match primes_above(k, p) {
            Ok(list) => {
                for pr in list {
                    let candidate = candidate_primes.contains(&p);
                    let scanned = prime_norm(&pr) <= BigUint::from(opts.scan_bound);
                    if candidate || scanned {
                        todo.push((pr, candidate, scanned));
                    }
                }
            }
            Err(Error::IndexDivisorUnsupported(_)) => {
                excluded.insert(p);
            }
            Err(e) => return Err(e),
        }
    }
    let classified: Vec<Classified> = todo.par_iter().map(|(pr, _, _)| classify_at(k, f, pr, opts.budget)).collect();

    let mut primes = Vec::new();
    let mut bad = Vec::new();
    let mut bad_labels = Vec::new();
    let mut undecided = Vec::new();
    let mut sum = SymExpr::zero();
    let mut bad_in_scan = Vec::new();
    let mut cert_bad_in_scan = Vec::new();
    let mut scanned_count = 0;
    for ((pr, candidate, scanned), c) in todo.iter().zip(&classified) {
        let status = c.status();
        let ruppert_rank = prepared.as_ref().and_then(|p| rank_mod(k, pr, &p.system).ok());
        if *scanned {
            scanned_count += 1;
        }
        match status {
            PrimeStatus::Bad => {
                bad_labels.push(pr.label.clone());
                sum = sum.add(&SymExpr::log_int(pr.p).scale(&BigRational::from_integer(pr.f.into())));
                bad.push(pr.clone());
                if *scanned {
                    bad_in_scan.push(pr.label.clone());
                    if *candidate {
                        cert_bad_in_scan.push(pr.label.clone());
                    }
                }
            }
            PrimeStatus::Undecided => undecided.push(pr.label.clone()),
            PrimeStatus::Good => {}
        }
        primes.push(prime_report(c, *candidate, *scanned, ruppert_rank, names));
    }
    for p in &oversized {
        undecided.push(format!("({p})"));
        caveats.push(format!("candidate prime {p} exceeds the supported residue characteristic"));
    }
    for p in &excluded {
        caveats.push(format!("primes above {p} divide the index of the equation order and are excluded"));
    }
    let consistent = bad_in_scan == cert_bad_in_scan;
    if !consistent {
        caveats.push("the scan found bad primes outside the certificate candidates".into());
    }
    let sum = HeightValue::new(sum.scale(&BigRational::new(1.into(), (k.degree() as u64).into())));
    let verdict = match sum.symbolic.compare(&verdict_bound.symbolic) {
        Some(std::cmp::Ordering::Greater) => Verdict::Fail,
        Some(_) if undecided.is_empty() && !unfactored && excluded.is_empty() => Verdict::Pass,
        _ => Verdict::Conditional,
    };
    let scan = ScanReport {
        bound: opts.scan_bound,
        primes_scanned: scanned_count,
        bad_in_scan,
        certificate_bad_in_scan: cert_bad_in_scan,
        consistent,
        note: format!("every prime of norm at most {} was classified directly", opts.scan_bound),
    };
    let report = AnalysisReport {
        schema_version: SCHEMA_VERSION,
        kind: "hypersurface".into(),
        input: InputEcho {
            field: field_echo(k),
            polynomial: Some(f.render(k, names)),
            parametrization: None,
            variables: names.to_vec(),
        },
        delta,
        n,
        d: n - 1,
        seed: opts.seed,
        scan_bound: opts.scan_bound,
        budget: opts.budget,
        local_contents,
        height: (&h).into(),
        constants,
        bound: (&verdict_bound).into(),
        certificate,
        primes,
        bad_primes: bad_labels,
        undecided,
        excluded: excluded.iter().map(|p| p.to_string()).collect(),
        sum_log_norm: (&sum).into(),
        verdict,
        scan,
        specialization: Vec::new(),
        caveats,
    };
    Ok(Core { report, bad })
}

/// Analysis of a geometrically integral hypersurface `f = 0` over `k`.
pub fn analyze_hypersurface(
    k: &NumberField,
    f: &MPoly<NFElem>,
    names: &[String],
    opts: &Options,
) -> Result<AnalysisReport> {
    Ok(run(k, f, names, opts, Mode::Hypersurface)?.report)
}

/// Analysis of a parametrized curve through its Cayley form.
pub fn analyze_curve(k: &NumberField, c: &CurveParam, opts: &Options) -> Result<(AnalysisReport, CayleyForm)> {
    let psi = cayley_form(k, c)?;
    if psi.form.total_degree() != Some(c.e) {
        return Err(Error::NonBirationalSuspected("Cayley form degree differs from the parametrization degree".into()));
    }
    if !incidence_probe(k, &psi, c, PROBE_TRIALS, opts.seed)? {
        return Err(Error::NonBirationalSuspected("incidence probe failed".into()));
    }
    let core = run(k, &psi.form, &psi.names, opts, Mode::Curve { n: c.n as u64 })?;
    let mut report = core.report;
    report.kind = "curve".into();
    report.input.parametrization = Some(c.render(k));
    report.n = c.n as u64;
    report.d = 1;
    report.specialization = core
        .bad
        .iter()
        .map(|pr| SpecializationReport {
            prime: pr.label.clone(),
            result: match cayley_specialization_check(k, c, pr) {
                Ok(true) => "identical".into(),
                Ok(false) => "mismatch".into(),
                Err(Error::DegenerateReduction) => "degenerate_reduction".into(),
                Err(e) => format!("error: {e}"),
            },
        })
        .collect();
    if report.specialization.iter().any(|s| s.result == "mismatch") {
        report.caveats.push("a specialization check failed".into());
    }
    Ok((report, psi))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanTableReport {
    pub schema_version: u32,
    pub field: String,
    pub polynomial: String,
    pub bound: u64,
    pub primes: Vec<PrimeReport>,
    pub bad_primes: Vec<String>,
    pub undecided: Vec<String>,
    pub excluded: Vec<String>,
}

pub fn scan_report(k: &NumberField, f: &MPoly<NFElem>, names: &[String], bound: u64, budget: u64) -> Result<ScanTableReport> {
    let t = scan_primes(k, f, bound, budget)?;
    let primes: Vec<PrimeReport> = t.entries.iter().map(|c| prime_report(c, false, true, None, names)).collect();
    let with = |st: PrimeStatus| primes.iter().filter(|p| p.status == st).map(|p| p.label.clone()).collect();
    Ok(ScanTableReport {
        schema_version: SCHEMA_VERSION,
        field: field_echo(k),
        polynomial: f.render(k, names),
        bound,
        bad_primes: with(PrimeStatus::Bad),
        undecided: with(PrimeStatus::Undecided),
        primes,
        excluded: t.excluded.iter().map(|p| p.to_string()).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightReport {
    pub schema_version: u32,
    pub field: String,
    pub polynomial: String,
    pub local_contents: Vec<LocalContentReport>,
    pub height: NumberReport,
}

pub fn height_report(k: &NumberField, f: &MPoly<NFElem>, names: &[String]) -> Result<HeightReport> {
    let adelic = AdelicData::from_poly(k, f)?;
    Ok(HeightReport {
        schema_version: SCHEMA_VERSION,
        field: field_echo(k),
        polynomial: f.render(k, names),
        local_contents: adelic
            .finite
            .iter()
            .map(|c| LocalContentReport { prime: c.label.clone(), content: c.content })
            .collect(),
        height: (&naive_height(k, f)?).into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantsReport {
    pub schema_version: u32,
    pub n: u64,
    pub d: u64,
    pub delta: u64,
    pub constants: Vec<ConstantReport>,
}

/// Every applicable constant for dimension `d` (default `n - 1`) in `P^n`.
pub fn constants_report(n: u64, d: Option<u64>, delta: u64) -> Result<ConstantsReport> {
    let hyper = d.map_or(true, |d| d + 1 == n);
    let mut constants = Vec::new();
    if hyper {
        if n == 2 {
            constants.push(constant_report(&constant_c_curve(delta)?, Role::Reported, None));
        }
        constants.push(constant_report(&constant_c_hypersurface(n, delta)?, Role::Reported, None));
    }
    if let Some(d) = d {
        constants.push(constant_report(&constant_c_general(n, d, delta)?, Role::Reported, None));
    }
    Ok(ConstantsReport { schema_version: SCHEMA_VERSION, n, d: d.unwrap_or(n.saturating_sub(1)), delta, constants })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyReport {
    pub schema_version: u32,
    pub field: String,
    pub parametrization: String,
    pub variables: Vec<String>,
    pub degree: u32,
    pub form: String,
    pub incidence_probe: bool,
}

pub fn cayley_report(k: &NumberField, c: &CurveParam, seed: u64) -> Result<CayleyReport> {
    let psi = cayley_form(k, c)?;
    Ok(CayleyReport {
        schema_version: SCHEMA_VERSION,
        field: field_echo(k),
        parametrization: c.render(k),
        variables: psi.names.clone(),
        degree: psi.form.total_degree().unwrap_or(0),
        form: psi.render(k),
        incidence_probe: incidence_probe(k, &psi, c, PROBE_TRIALS, seed)?,
    })
}
