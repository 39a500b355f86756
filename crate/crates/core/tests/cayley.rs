use badred::cayley::{cayley_form, cayley_specialization_check, incidence_probe, plucker_names, CurveParam};
use badred::exactmath::primes_up_to;
use badred::mpoly::parse_poly;
use badred::numfield::NumberField;
use badred::ruppert::abs_irreducible_char0;
use badred::Error;

#[test]
fn line_is_a_single_coordinate() {
    let q = NumberField::rationals();
    let c = CurveParam::parse(&q, "s, t, 0, 0").unwrap();
    let psi = cayley_form(&q, &c).unwrap();
    assert_eq!(psi.render(&q), "u01");
    assert_eq!(psi.names, plucker_names(3));
    assert!(incidence_probe(&q, &psi, &c, 20, 1).unwrap());
    for p in primes_up_to(50) {
        let pr = &q.prime_decomposition(p).unwrap()[0];
        assert!(cayley_specialization_check(&q, &c, pr).unwrap());
    }
}

#[test]
fn conic_matches_point_incidence() {
    let q = NumberField::rationals();
    let c = CurveParam::parse(&q, "s^2, s*t, t^2").unwrap();
    let psi = cayley_form(&q, &c).unwrap();
    // In P^2 a pencil is the point (u12 : -u02 : u01); the conic is x0 x2 = x1^2.
    let expect = parse_poly("u01*u12 - u02^2", &psi.names, &q, &[]).unwrap();
    assert!(psi.form == expect || psi.form == expect.neg(&q), "{}", psi.render(&q));
    assert!(incidence_probe(&q, &psi, &c, 50, 2).unwrap());
    assert!(incidence_probe(&q, &psi, &c, 0, 2).unwrap());
}

#[test]
fn twisted_cubic() {
    let q = NumberField::rationals();
    let c = CurveParam::parse(&q, "s^3, s^2*t, s*t^2, t^3").unwrap();
    let psi = cayley_form(&q, &c).unwrap();
    assert_eq!(psi.form.nvars(), 6);
    assert_eq!(psi.form.is_homogeneous().unwrap(), (true, 3));
    assert!(incidence_probe(&q, &psi, &c, 30, 3).unwrap());
    assert!(abs_irreducible_char0(&q, &psi.form, 3).unwrap().irreducible);
    for p in primes_up_to(50) {
        let pr = &q.prime_decomposition(p).unwrap()[0];
        assert!(cayley_specialization_check(&q, &c, pr).unwrap(), "p={p}");
    }
    // a wrong form fails the probe
    let mut bad = psi.clone();
    bad.form = bad.form.add(&q, &parse_poly("u01^3", &psi.names, &q, &[]).unwrap());
    assert!(!incidence_probe(&q, &bad, &c, 10, 3).unwrap());
}

#[test]
fn scaled_and_degenerate() {
    let q = NumberField::rationals();
    let c = CurveParam::parse(&q, "5*s^3, 5*s^2*t, 5*s*t^2, 5*t^3").unwrap();
    let p5 = &q.prime_decomposition(5).unwrap()[0];
    assert_eq!(cayley_specialization_check(&q, &c, p5), Err(Error::DegenerateReduction));
    let c = CurveParam::parse(&q, "s^3, s^2*t, s*t^2, 2*t^3").unwrap();
    for p in primes_up_to(50) {
        let pr = &q.prime_decomposition(p).unwrap()[0];
        let r = cayley_specialization_check(&q, &c, pr);
        // at 2 the reduction is s^2 (s, t, ..) with a base point
        if p == 2 {
            assert_eq!(r, Err(Error::DegenerateReduction));
        } else {
            assert!(r.unwrap(), "p={p}");
        }
    }
    assert_eq!(CurveParam::parse(&q, "s, t^2").unwrap_err(), Error::InconsistentDegrees);
    assert_eq!(CurveParam::parse(&q, "0, 0").unwrap_err(), Error::InconsistentDegrees);
    let c = CurveParam::parse(&q, "s^2, s*t, 0").unwrap();
    assert_eq!(cayley_form(&q, &c).unwrap_err(), Error::CommonFactor);
    // denominators are cleared
    let c = CurveParam::parse(&q, "s/2, t/3").unwrap();
    assert_eq!(cayley_form(&q, &c).unwrap().render(&q), "6*u01");
}

#[test]
fn over_gaussian_integers() {
    let k = NumberField::parse("i^2+1").unwrap();
    let c = CurveParam::parse(&k, "s^2, i*s*t + t^2, (1+i)*t^2").unwrap();
    let psi = cayley_form(&k, &c).unwrap();
    assert!(incidence_probe(&k, &psi, &c, 20, 4).unwrap());
    for p in [3u64, 5, 13] {
        for pr in k.prime_decomposition(p).unwrap() {
            assert!(cayley_specialization_check(&k, &c, &pr).unwrap(), "{}", pr.label);
        }
    }
}
