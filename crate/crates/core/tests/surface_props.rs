use proptest::prelude::*;
use recur_core::kernel::Rational;
use recur_core::recurrence::{make_builtin, ParamValue};
use recur_core::surface::{
    self, fixed_z_family, generate_triples, invariant_j, invariant_n, on_surface, residual, vieta, Direction,
    Position, SurfaceParams, Triple, TripleVerdict,
};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn coord() -> impl Strategy<Value = i64> {
    -12i64..=12
}

/// A random triple together with a surface through it: N is drawn and J
/// is solved for.
fn on_surface_case() -> impl Strategy<Value = (Triple, SurfaceParams)> {
    (coord(), coord(), coord(), -6i64..=6).prop_map(|(x, y, z, n)| {
        let t = Triple::from_ints(x, y, z);
        let j = invariant_j(&t, &q(n));
        (t, SurfaceParams::new(q(n), j))
    })
}

fn position() -> impl Strategy<Value = Position> {
    prop::sample::select(Position::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn vieta_is_an_involution((t, s) in on_surface_case(), pos in position(), dn in -3i64..=3) {
        prop_assert!(on_surface(&t, &s));
        let u = vieta(&t, &s, pos).unwrap();
        prop_assert!(residual(&u, &s) == q(0));
        prop_assert_eq!(vieta(&u, &s, pos).unwrap(), t.clone());

        // off the surface the subtraction form is still an involution
        let off = SurfaceParams::new(&s.n + q(dn), s.j.clone());
        let u = vieta(&t, &off, pos).unwrap();
        prop_assert_eq!(vieta(&u, &off, pos).unwrap(), t);
    }

    #[test]
    fn fixed_z_agrees_with_integ(x in -6i64..=6, y in -6i64..=6, z in 1i64..=4, n in 1i64..=5) {
        let seed = Triple::from_ints(x, y, z);
        let s = SurfaceParams::new(q(n), invariant_j(&seed, &q(n)));
        let fam = fixed_z_family(&seed, &s, 12).unwrap();
        // every step with a nonzero x_{n-1} was cross-checked
        let defined = std::iter::once(seed.x())
            .chain(fam.triples[..11].iter().map(Triple::x))
            .filter(|x| **x != q(0))
            .count();
        prop_assert_eq!(fam.integ_checks, defined);
        for t in &fam.triples {
            prop_assert!(on_surface(t, &s));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn invariants_are_conserved(x in 1i64..=9, y in 1i64..=9, z in 1i64..=9, j in -10i64..=10) {
        let t = Triple::from_ints(x, y, z);
        let n0 = invariant_n(&t, &q(j)).unwrap();
        let o = make_builtin("jrec", &[("J", ParamValue::int(j))]).unwrap().iterate(&[q(x), q(y), q(z)], 20).unwrap();
        prop_assume!(o.is_clean());
        for w in o.values.windows(3) {
            let t = Triple::new(w[0].clone(), w[1].clone(), w[2].clone());
            prop_assert_eq!(invariant_n(&t, &q(j)).unwrap(), n0.clone());
        }
        let o = make_builtin("nrec", &[("N", ParamValue::Exact(n0.clone()))]).unwrap().iterate(&[q(x), q(y), q(z)], 20).unwrap();
        for w in o.values.windows(3) {
            let t = Triple::new(w[0].clone(), w[1].clone(), w[2].clone());
            prop_assert_eq!(invariant_j(&t, &n0), q(j));
        }
    }
}

#[test]
fn generated_triples_are_distinct_and_increasing() {
    for n in 3..=8 {
        let s = SurfaceParams::from_ints(n, n - 3);
        let run = generate_triples(&Triple::ones(), &s, 12, Direction::Forward).unwrap();
        assert_eq!(run.verdict, TripleVerdict::Growing);
        for (i, t) in run.triples.iter().enumerate() {
            assert!(on_surface(t, &s));
            assert!(t.x() <= t.y() && t.y() < t.z(), "N={n}: {t}");
            assert!(!run.triples[..i].contains(t));
            if i > 0 {
                assert!(run.triples[i - 1].z() < t.z());
            }
        }
        // backward from the last window retraces the run
        let last = run.triples.last().unwrap();
        let back = generate_triples(last, &s, 12, Direction::Backward).unwrap();
        assert_eq!(back.triples.last().unwrap(), &Triple::ones());
    }
}

#[test]
fn sweep_matches_direct_runs() {
    let cells: Vec<SurfaceParams> = (-2..=5).map(|n| SurfaceParams::new(q(n), invariant_j(&Triple::ones(), &q(n)))).collect();
    let swept = surface::sweep(&cells, &Triple::ones(), 10, recur_core::par::Exec::Parallel);
    for (cell, s) in swept.iter().zip(&cells) {
        let direct = generate_triples(&Triple::ones(), s, 10, Direction::Forward).unwrap();
        assert_eq!(cell.verdict, Some(direct.verdict));
    }
}
