use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use recur_core::kernel::{LaurentPoly, Rational};
use recur_core::recurrence::{laurent_certificate, make_builtin, ParamValue, RecurrenceDef};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn jrec(j: Rational) -> RecurrenceDef {
    make_builtin("jrec", &[("J", ParamValue::Exact(j))]).unwrap()
}

fn nrec(n: Rational) -> RecurrenceDef {
    make_builtin("nrec", &[("N", ParamValue::Exact(n))]).unwrap()
}

fn nonzero() -> impl Strategy<Value = i64> {
    (-9i64..=9).prop_filter("nonzero", |v| *v != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dual_forms_agree(a in nonzero(), b in nonzero(), c in nonzero(), j in -20i64..=20) {
        let n = Rational::from_integer((a * a + b * b + c * c + j).into()) / q(a * b * c);
        let init = [q(a), q(b), q(c)];
        let steps = 15;
        let jo = jrec(q(j)).iterate_until(&init, steps, &[], |_, v| v.is_zero()).unwrap();
        let no = nrec(n).iterate(&init, steps).unwrap();
        // the product form stops three steps after a zero; compare what it has
        prop_assert_eq!(&jo.values[..], &no.values[..jo.values.len()]);
        if jo.is_clean() && !jo.values.iter().any(Zero::is_zero) {
            prop_assert_eq!(jo.values.len(), steps + 3);
        }
    }

    #[test]
    fn reversible_in_every_domain(a in nonzero(), b in nonzero(), c in nonzero(), j in -5i64..=5, s in 1usize..8) {
        let def = jrec(q(j));
        let init = [q(a), q(b), q(c)];
        let fwd = def.iterate_until(&init, s, &[], |_, v| v.is_zero()).unwrap();
        prop_assume!(fwd.is_clean() && !fwd.values.iter().any(Zero::is_zero));
        let window = &fwd.values[s..];
        let back = def.iterate_backward(window, s, &[]).unwrap();
        prop_assert!(back.is_clean());
        prop_assert_eq!(&back.values[..3], &init[..]);

        let nd = nrec(Rational::from_integer(j.into()));
        let fwd = nd.iterate(&init, s).unwrap();
        let back = nd.iterate_backward(&fwd.values[s..], s, &[]).unwrap();
        prop_assert_eq!(&back.values[..3], &init[..]);

        let bi: Vec<BigInt> = [a, b, c].iter().map(|&v| BigInt::from(v)).collect();
        let fwd = nd.iterate(&bi, s).unwrap();
        let back = nd.iterate_backward(&fwd.values[s..], s, &[]).unwrap();
        prop_assert_eq!(&back.values[..3], &bi[..]);
    }

    #[test]
    fn integer_orbit_matches_rational(a in nonzero(), b in nonzero(), c in nonzero(), j in -5i64..=5) {
        let def = jrec(q(j));
        let bi: Vec<BigInt> = [a, b, c].iter().map(|&v| BigInt::from(v)).collect();
        let io = def.iterate(&bi, 8).unwrap();
        let ro = def.iterate(&[q(a), q(b), q(c)], 8).unwrap();
        for (n, v) in io.indexed() {
            prop_assert_eq!(&Rational::from_integer(v.clone()), ro.get(n).unwrap());
        }
        if let Some(f) = &io.failure {
            // the integer orbit stops at the first non-integer
            let r = ro.get(f.index);
            prop_assert!(r.is_none_or(|r| !r.is_integer()) || ro.failure.is_some());
        }
    }
}

#[test]
fn certificate_specialises_to_numeric_orbits() {
    let def = make_builtin("jrec", &[("J", ParamValue::Symbolic)]).unwrap();
    let cert = laurent_certificate(&def, 4).unwrap();
    assert!(cert.laurent);
    for (a, b, c, j) in [(1, 1, 1, 0), (2, -3, 5, 7), (-1, 4, 2, -2)] {
        let point = [q(a), q(b), q(c), q(j)];
        let numeric = jrec(q(j)).iterate(&[q(a), q(b), q(c)], 4).unwrap();
        for (n, p) in cert.orbit.indexed() {
            let v: Rational = LaurentPoly::eval(p, &point).unwrap();
            assert_eq!(&v, numeric.get(n).unwrap(), "n = {n} at {point:?}");
        }
    }
}
