use badred::exactmath::FiniteField;
use badred::ffalg::{classify_reduction, DEFAULT_BUDGET};
use badred::mpoly::{default_names, parse_poly, MPoly, Monomial};
use badred::numfield::{NFElem, NumberField};
use badred::ring::{Field, Ring};
use badred::ruppert::{
    abs_irreducible_char0, build_ruppert, minor_certificate, plane_section, rank_mod, reduce_elem, ruppert_residual,
    Char0Witness, MINOR_COUNT,
};
use badred::Error;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(k: &NumberField, n: usize, text: &str) -> MPoly<NFElem> {
    let consts = if k.is_rational() { vec![] } else { vec![(k.var().to_string(), k.generator())] };
    parse_poly(text, &default_names("T", n), k, &consts).unwrap()
}

#[test]
fn shape() {
    let q = NumberField::rationals();
    let f = parse_poly("x^2*y^2 + x + y + 1", &["x".into(), "y".into()], &q, &[]).unwrap();
    let sys = build_ruppert(&q, &f).unwrap();
    assert_eq!(sys.dims(), (16, 9));
    let f = parse_poly("x^3 + y^2 + 1", &["x".into(), "y".into()], &q, &[]).unwrap();
    // rows 2m * 2n, columns m(n+1) + (m+1)(n-1)
    assert_eq!(build_ruppert(&q, &f).unwrap().dims(), (24, 13));
    let f = parse_poly("x^2 + y", &["x".into(), "y".into()], &q, &[]).unwrap();
    assert_eq!(build_ruppert(&q, &f).unwrap_err(), Error::DegenerateShape);
}

/// Every column is the residual of its unit unknown.
#[test]
fn columns_are_residuals() {
    let q = NumberField::rationals();
    let f = parse_poly("3*x^2*y + x*y^2 - 5*y^2 + 7*x - 2", &["x".into(), "y".into()], &q, &[]).unwrap();
    let sys = build_ruppert(&q, &f).unwrap();
    for c in 0..sys.cols.len() {
        let mut v = vec![q.zero(); sys.cols.len()];
        v[c] = q.one();
        let (g, h) = badred::ruppert::unknowns_to_polys(&q, &sys, &v);
        let res = ruppert_residual(&q, &f, &g, &h);
        let terms: Vec<_> = sys
            .rows
            .iter()
            .map(|&(i, j)| res.coeff(&q, &Monomial(vec![i, j])))
            .collect();
        let col: Vec<_> = (0..sys.rows.len()).map(|r| sys.matrix.get(r, c).clone()).collect();
        assert_eq!(terms, col);
        // nothing falls outside the row range
        assert_eq!(res.len(), terms.iter().filter(|t| !q.is_zero(t)).count());
    }
}

#[test]
fn split_conic_has_kernel() {
    let k = NumberField::parse("i^2+1").unwrap();
    for text in ["T0^2 + T1^2 + 0*T2", "T0^2 + T1^2 - 2*T0*T2 + T2^2 - T1*T2*0"] {
        let f = poly(&k, 3, text);
        let res = abs_irreducible_char0(&k, &f, 1).unwrap();
        assert!(!res.irreducible, "{text}");
    }
    let f = poly(&k, 3, "T0^2 + T1^2 + T2*T0 - T2^2 + 3*T1*T2");
    let res = abs_irreducible_char0(&k, &f, 1).unwrap();
    assert!(res.irreducible);
    // reducible in three variables: a kernel vector that solves the equation
    let f = poly(&k, 3, "(T0 + i*T1 - T2)*(T0 - i*T1 + 2*T2)");
    let res = abs_irreducible_char0(&k, &f, 1).unwrap();
    assert!(!res.irreducible);
    let Char0Witness::Kernel { g, h } = res.witness else { panic!("expected a kernel") };
    let sys = res.prepared.unwrap().system;
    assert!(!(g.is_zero() && h.is_zero()));
    assert!(ruppert_residual(&k, &sys.f, &g, &h).is_zero());
}

#[test]
fn smooth_conic_minors() {
    let q = NumberField::rationals();
    let f = poly(&q, 3, "T0^2 + 6*T1*T2");
    let res = abs_irreducible_char0(&q, &f, 7).unwrap();
    assert!(res.irreducible);
    let sys = res.prepared.unwrap().system;
    let cert = minor_certificate(&q, &[&sys], MINOR_COUNT, 7, DEFAULT_BUDGET).unwrap();
    let primes = cert.primes();
    assert!(primes.contains(&BigUint::from(2u32)) && primes.contains(&BigUint::from(3u32)), "{primes:?}");
    for (norm, (_, rows)) in cert.norms.iter().zip(&cert.rows) {
        assert_eq!(rows.len(), sys.cols.len());
        assert!((norm % &cert.gcd) == BigUint::from(0u32));
    }
}

#[test]
fn degenerate_inputs() {
    let q = NumberField::rationals();
    assert!(abs_irreducible_char0(&q, &poly(&q, 3, "T0 + 5*T1"), 0).unwrap().irreducible);
    let bin = abs_irreducible_char0(&q, &poly(&q, 3, "T0^2 - 2*T1^2"), 0).unwrap();
    assert!(!bin.irreducible && matches!(bin.witness, Char0Witness::Binary));
    assert_eq!(abs_irreducible_char0(&q, &poly(&q, 3, "T0^2 + T1"), 0).unwrap_err(), Error::NonHomogeneous);
}

#[test]
fn plane_sections() {
    let q = NumberField::rationals();
    let f = poly(&q, 4, "T0^2 + T1*T3 - T2^2");
    let (g, sec) = plane_section(&q, &f, 3, 0).unwrap();
    assert_eq!(g.nvars(), 3);
    assert_eq!(g.total_degree(), Some(2));
    assert_eq!(sec.matrix.len(), 4);
    assert!(abs_irreducible_char0(&q, &f, 3).unwrap().irreducible);
    let r = poly(&q, 4, "(T0 + T1)*(T2 + T3)");
    assert!(!abs_irreducible_char0(&q, &r, 3).unwrap().irreducible);
    let c = poly(&q, 6, "T0^3 + T1*T2*T3 - T4^2*T5 + T5^3");
    assert!(abs_irreducible_char0(&q, &c, 3).unwrap().irreducible);
}

fn random_form(rng: &mut ChaCha8Rng, d: u32, bound: i64) -> MPoly<NFElem> {
    let q = NumberField::rationals();
    loop {
        let terms = Monomial::all_of_degree(3, d)
            .into_iter()
            .map(|m| (m, q.from_i64(rng.gen_range(-bound..=bound))))
            .collect::<Vec<_>>();
        let f = MPoly::from_terms(&q, 3, terms);
        if f.total_degree() == Some(d) {
            return f;
        }
    }
}

fn primitive(q: &NumberField, f: &MPoly<NFElem>) -> MPoly<NFElem> {
    let content = f.coeffs().fold(BigInt::from(0), |a, c| a.gcd(c.0[0].numer()));
    f.scale(q, &q.inv(&q.from_int(&content)).unwrap())
}

/// At every prime where the oracle finds a non-integral reduction the
/// reduced matrix loses rank and the prime divides the minor gcd.
#[test]
fn necessity_against_oracle() {
    let q = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let primes = badred::exactmath::primes_up_to(23);
    let mut bad_seen = 0;
    for round in 0..24 {
        let d = if round % 2 == 0 { 2 } else { 3 };
        let f = match round % 3 {
            0 => random_form(&mut rng, d, 6),
            // a d-th power plus a multiple of 6 is bad at 2 and 3
            1 => random_form(&mut rng, d, 2).scale(&q, &q.from_i64(6)).add(&q, &random_form(&mut rng, 1, 3).pow(&q, d)),
            _ => random_form(&mut rng, d, 2),
        };
        let f = primitive(&q, &f);
        let res = abs_irreducible_char0(&q, &f, 5).unwrap();
        if !res.irreducible {
            continue;
        }
        let sys = res.prepared.unwrap().system;
        let cert = minor_certificate(&q, &[&sys], MINOR_COUNT, 5, DEFAULT_BUDGET).unwrap();
        for &p in &primes {
            let pr = &q.prime_decomposition(p).unwrap()[0];
            let fq = FiniteField::prime(p).unwrap();
            let fbar = f.try_map(&fq, |c| reduce_elem(&q, pr, c)).unwrap();
            let oracle = classify_reduction(&fq, &fbar, DEFAULT_BUDGET).unwrap();
            if oracle.is_geometrically_integral {
                continue;
            }
            bad_seen += 1;
            assert!(rank_mod(&q, pr, &sys).unwrap() < sys.cols.len(), "p={p} f={f:?}");
            assert!(cert.primes().contains(&BigUint::from(p)), "p={p} missing from {:?}", cert.primes());
        }
    }
    assert!(bad_seen >= 5, "too few bad reductions exercised: {bad_seen}");
}
