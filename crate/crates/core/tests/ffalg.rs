use badred::exactmath::{Embedding, FiniteField};
use badred::ffalg::{
    absolute_factorization, classify_reduction, factor_exhaustive, FFPoly, Witness, DEFAULT_BUDGET,
};
use badred::mpoly::{MPoly, Monomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_form(k: &FiniteField, n: usize, d: u32, rng: &mut ChaCha8Rng) -> FFPoly {
    let q = k.order_u64().unwrap();
    loop {
        let terms = Monomial::all_of_degree(n, d)
            .into_iter()
            .map(|m| (m, k.element_at(rng.gen_range(0..q))))
            .collect::<Vec<_>>();
        let f = MPoly::from_terms(k, n, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

fn random_product(k: &FiniteField, n: usize, degs: &[u32], rng: &mut ChaCha8Rng) -> FFPoly {
    let mut acc = MPoly::one(k, n);
    for &d in degs {
        acc = acc.mul(k, &random_form(k, n, d, rng));
    }
    acc
}

/// Both factorization routes agree and reconstruct the input.
#[test]
fn routes_agree_over_small_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [2u64, 3, 5, 7] {
        let k = FiniteField::prime(p).unwrap();
        for shape in [&[2u32][..], &[1, 1], &[3], &[1, 2], &[1, 1, 1]] {
            for _ in 0..6 {
                let f = random_product(&k, 3, shape, &mut rng);
                let blind = factor_exhaustive(&k, &f, DEFAULT_BUDGET).unwrap();
                assert_eq!(blind.expand(&k, 3), f);
                let fast = absolute_factorization(&k, &f, DEFAULT_BUDGET, 1).unwrap().over_base();
                let (c, _) = badred::ffalg::normalize(&k, &f);
                let mut fast_full = fast.clone();
                fast_full.unit = c;
                assert_eq!(fast_full.expand(&k, 3), f);
                assert_eq!(fast.factors, blind.factors, "p={p}");
            }
        }
    }
}

/// Absolute irreducibility equals irreducibility over F_{q^e} for every
/// e dividing the degree, checked by blind enumeration in the extension.
#[test]
fn absolute_irreducibility_matches_extension_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, d) in [(2u64, 2u32), (3, 2), (2, 3), (3, 3)] {
        let k = FiniteField::prime(p).unwrap();
        for _ in 0..12 {
            let f = random_form(&k, 3, d, &mut rng);
            let r = classify_reduction(&k, &f, DEFAULT_BUDGET).unwrap();
            let mut reducible_somewhere = false;
            for e in (1..=d).filter(|e| d % e == 0) {
                let big = FiniteField::extension(p, e as usize).unwrap();
                let emb = Embedding::new(&k, &big).unwrap();
                let fb = f.map(&big, |c| emb.embed(c));
                let fac = factor_exhaustive(&big, &fb, DEFAULT_BUDGET).unwrap();
                if fac.count_with_multiplicity() > 1 {
                    reducible_somewhere = true;
                }
            }
            assert_eq!(r.is_geometrically_integral, !reducible_somewhere, "p={p} f={f:?}");
            // integral implies reduced and irreducible
            if r.is_geometrically_integral {
                assert!(r.is_reduced && r.is_irreducible);
            }
        }
    }
}

/// The witness factor really divides the form over its extension.
#[test]
fn witnesses_divide() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [2u64, 3, 5] {
        let k = FiniteField::prime(p).unwrap();
        for _ in 0..20 {
            let f = random_form(&k, 3, 2, &mut rng);
            let r = classify_reduction(&k, &f, DEFAULT_BUDGET).unwrap();
            match r.witness {
                None => assert!(r.is_geometrically_integral),
                Some(Witness::SquareFactor { factor, multiplicity }) => {
                    assert!(f.div_exact(&k, &factor.pow(&k, multiplicity)).is_some());
                }
                Some(Witness::ProperFactor { factor, extension_degree, field }) => {
                    assert_eq!(field.degree(), extension_degree as usize);
                    let emb = Embedding::new(&k, &field).unwrap();
                    let fb = f.map(&field, |c| emb.embed(c));
                    assert!(fb.div_exact(&field, &factor).is_some());
                    assert!(factor.total_degree().unwrap() < 2);
                }
            }
        }
    }
}

/// Frobenius maps the set of absolute factors to itself.
#[test]
fn frobenius_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let k = FiniteField::prime(5).unwrap();
    for _ in 0..10 {
        let f = random_product(&k, 3, &[1, 2], &mut rng);
        let abs = absolute_factorization(&k, &f, DEFAULT_BUDGET, 2).unwrap();
        let q = k.order();
        for (g, m) in &abs.factors {
            let h = g.map(&abs.big, |c| abs.big.pow_big(c, &q));
            assert!(abs.factors.iter().any(|(x, mm)| *x == h && mm == m));
        }
    }
}

#[test]
fn quaternary_and_senary_forms() {
    // twisted-cubic style determinantal quadrics in P^3 and a form in six variables
    let k = FiniteField::prime(7).unwrap();
    let names = badred::mpoly::default_names("T", 4);
    let f = badred::mpoly::parse_poly("T0*T2 - T1^2 + T3^2", &names, &k, &[]).unwrap();
    assert!(classify_reduction(&k, &f, DEFAULT_BUDGET).unwrap().is_geometrically_integral);
    let g = badred::mpoly::parse_poly("(T0 + 2*T3)*(T1 - T2)", &names, &k, &[]).unwrap();
    let r = classify_reduction(&k, &g, DEFAULT_BUDGET).unwrap();
    assert!(r.is_reduced && !r.is_irreducible);
    let names6 = badred::mpoly::default_names("u", 6);
    let h = badred::mpoly::parse_poly("u0^3 + u1*u2*u3 - u4^2*u5 + u5^3", &names6, &k, &[]).unwrap();
    let r = classify_reduction(&k, &h, DEFAULT_BUDGET).unwrap();
    assert!(r.is_geometrically_integral);
    let c = badred::mpoly::parse_poly("(u0 + u5)^2 * (u1 - 3*u2)", &names6, &k, &[]).unwrap();
    let r = classify_reduction(&k, &c, DEFAULT_BUDGET).unwrap();
    assert!(!r.is_reduced);
    assert!(matches!(r.witness, Some(Witness::SquareFactor { multiplicity: 2, .. })));
}
