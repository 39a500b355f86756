use badred::analyzer::{
    analyze_curve, analyze_hypersurface, emit_report, scan_primes, Options, PrimeStatus, Verdict, SCHEMA_VERSION,
};
use badred::cayley::CurveParam;
use badred::mpoly::{default_names, parse_poly, MPoly};
use badred::numfield::{NFElem, NumberField};
use badred::Error;

fn poly(k: &NumberField, n: usize, text: &str) -> MPoly<NFElem> {
    let consts = if k.is_rational() { vec![] } else { vec![(k.var().to_string(), k.generator())] };
    parse_poly(text, &default_names("T", n), k, &consts).unwrap()
}

fn opts(scan: u64) -> Options {
    Options { scan_bound: scan, ..Options::default() }
}

#[test]
fn smooth_conic_with_coefficient_six() {
    let q = NumberField::rationals();
    let f = poly(&q, 3, "T0^2 + 6*T1*T2");
    let r = analyze_hypersurface(&q, &f, &default_names("T", 3), &opts(30)).unwrap();
    assert_eq!(r.schema_version, SCHEMA_VERSION);
    assert_eq!(r.bad_primes.len(), 2);
    let ps: Vec<u64> = r.primes.iter().filter(|p| p.status == PrimeStatus::Bad).map(|p| p.p).collect();
    assert_eq!(ps, vec![2, 3]);
    assert_eq!(r.sum_log_norm.symbolic, "log(2) + log(3)");
    assert_eq!(r.bound.symbolic, "12*log(2) + 3*log(3)");
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.exit_code(), 0);
    assert!(r.scan.consistent);
    assert!(r.primes.iter().filter(|p| p.status == PrimeStatus::Bad).all(|p| p.witness.is_some()));
    // the reduced Ruppert matrix is rank deficient exactly where reductions are bad
    let cols = r.certificate.as_ref().unwrap().matrix_columns;
    for p in &r.primes {
        if p.status == PrimeStatus::Bad {
            assert!(p.ruppert_rank.unwrap() < cols);
        }
    }
}

#[test]
fn hyperplane_and_excluded_inputs() {
    let q = NumberField::rationals();
    let r = analyze_hypersurface(&q, &poly(&q, 2, "T0 + T1"), &default_names("T", 2), &opts(20)).unwrap();
    assert!(r.bad_primes.is_empty());
    assert_eq!(r.bound.symbolic, "0");
    assert_eq!(r.verdict, Verdict::Pass);
    let e = analyze_hypersurface(&q, &poly(&q, 3, "T0^2 + T1^2"), &default_names("T", 3), &opts(20)).unwrap_err();
    assert_eq!(e, Error::NotGeometricallyIntegralOverK);
    let e = analyze_hypersurface(&q, &poly(&q, 3, "T0^2 + T1"), &default_names("T", 3), &opts(20)).unwrap_err();
    assert_eq!(e, Error::NonHomogeneous);
}

#[test]
fn scans() {
    let q = NumberField::rationals();
    let t = scan_primes(&q, &poly(&q, 3, "T0^2 + 6*T1*T2"), 10, badred::ffalg::DEFAULT_BUDGET).unwrap();
    let table: Vec<(u64, PrimeStatus)> = t.entries.iter().map(|c| (c.prime.p, c.status())).collect();
    use PrimeStatus::*;
    assert_eq!(table, vec![(2, Bad), (3, Bad), (5, Good), (7, Good)]);
    let t = scan_primes(&q, &poly(&q, 2, "T0 + T1"), 30, badred::ffalg::DEFAULT_BUDGET).unwrap();
    assert!(t.entries.iter().all(|c| c.status() == Good));
    // x^2 + y^2 never reduces to an integral curve: a square at 2, split at
    // 5, irreducible but not absolutely irreducible at 3 and 7
    let t = scan_primes(&q, &poly(&q, 3, "T0^2 + T1^2"), 10, badred::ffalg::DEFAULT_BUDGET).unwrap();
    let rs: Vec<_> = t.entries.iter().map(|c| c.result.clone().unwrap()).collect();
    assert!(!rs[0].is_reduced);
    assert!(rs[1].is_irreducible && !rs[1].is_geometrically_integral);
    assert!(rs[2].is_reduced && !rs[2].is_irreducible);
    assert!(rs[3].is_irreducible && !rs[3].is_geometrically_integral);
}

#[test]
fn gaussian_example() {
    let k = NumberField::parse("i^2+1").unwrap();
    let f = poly(&k, 3, "T0^2 + (1+i)*5*T1*T2");
    let r = analyze_hypersurface(&k, &f, &default_names("T", 3), &opts(30)).unwrap();
    let bad: Vec<(u64, String)> =
        r.primes.iter().filter(|p| p.status == PrimeStatus::Bad).map(|p| (p.p, p.norm.clone())).collect();
    assert_eq!(bad, vec![(2, "2".into()), (5, "5".into()), (5, "5".into())]);
    assert_eq!(r.verdict, Verdict::Pass);
    // (log 2 + 2 log 5) / [K:Q]
    assert_eq!(r.sum_log_norm.symbolic, "1/2*log(2) + log(5)");
}

#[test]
fn curves() {
    let q = NumberField::rationals();
    let line = CurveParam::parse(&q, "s, t, 0, 0").unwrap();
    let (r, psi) = analyze_curve(&q, &line, &opts(20)).unwrap();
    assert_eq!(psi.render(&q), "u01");
    assert!(r.bad_primes.is_empty());
    assert_eq!(r.bound.symbolic, "0");
    assert_eq!(r.verdict, Verdict::Pass);
    let cubic = CurveParam::parse(&q, "s^3, s^2*t, s*t^2, t^3").unwrap();
    let (r, _) = analyze_curve(&q, &cubic, &opts(50)).unwrap();
    assert!(r.bad_primes.is_empty(), "{:?}", r.bad_primes);
    assert_eq!(r.verdict, Verdict::Pass);
    let scaled = CurveParam::parse(&q, "s^3, s^2*t, s*t^2, 2*t^3").unwrap();
    let (r, _) = analyze_curve(&q, &scaled, &opts(50)).unwrap();
    assert!(r.scan.consistent);
    assert_eq!(r.verdict, Verdict::Pass);
    // a degree-two cover of a line is not birational
    let cover = CurveParam::parse(&q, "s^2, t^2, 0").unwrap();
    assert!(matches!(analyze_curve(&q, &cover, &opts(10)), Err(Error::NonBirationalSuspected(_))));
}

#[test]
fn reports_are_deterministic() {
    let q = NumberField::rationals();
    let f = poly(&q, 3, "T0^2 + 30*T1*T2");
    let a = emit_report(&analyze_hypersurface(&q, &f, &default_names("T", 3), &opts(40)).unwrap()).unwrap();
    let b = emit_report(&analyze_hypersurface(&q, &f, &default_names("T", 3), &opts(40)).unwrap()).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["schema_version"], SCHEMA_VERSION);
    assert!(v["undecided"].as_array().unwrap().is_empty());
}
