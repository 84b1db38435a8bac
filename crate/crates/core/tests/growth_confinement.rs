use num_bigint::BigInt;
use num_traits::{One, Pow};
use recur_core::confinement::{numeric_check, probe, ConfinementVerdict, ProbeConfig};
use recur_core::growth::{
    check_bounds, degree_report, fibonacci, golden_ratio, growth_report, HeightSeries,
};
use recur_core::kernel::{rational_to_f64, Rational, UniPoly};
use recur_core::recurrence::{make_builtin, Orbit, ParamValue};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn markoff(steps: usize) -> Orbit<BigInt> {
    let d = make_builtin("jrec", &[("J", ParamValue::int(0))]).unwrap();
    d.iterate(&[BigInt::one(), BigInt::one(), BigInt::one()], steps).unwrap()
}

/// ln x from the decimal digits alone.
fn decimal_ln(x: &BigInt) -> f64 {
    let s = x.to_string();
    let lead = &s[..s.len().min(17)];
    lead.parse::<f64>().unwrap().ln() + (s.len() - lead.len()) as f64 * std::f64::consts::LN_10
}

#[test]
fn log_heights_match_exact_values() {
    let o = markoff(22);
    let series = HeightSeries::from(&o);
    for (v, &l) in o.values.iter().zip(&series.lambda) {
        let exact = decimal_ln(v);
        assert!((l - exact).abs() <= 1e-12 * exact.max(1.0), "{v}: {l} vs {exact}");
        // where the value itself is a double, compare exp Λ directly
        let f = rational_to_f64(&Rational::from_integer(v.clone()));
        if f < 1e300 {
            assert!((l.exp() / f - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn markoff_second_differences_and_ratios() {
    let o = markoff(28);
    let rep = growth_report(HeightSeries::from(&o)).unwrap();
    let phi = golden_ratio();
    for d in &rep.second_diffs {
        assert_eq!(d.sign, 1);
        assert!(d.value > 0.0 || d.log_abs < -700.0);
        if d.n >= 20 {
            assert!(d.value < 1e-8, "n = {}", d.n);
        }
    }
    for w in rep.second_diffs.windows(2).filter(|w| w[0].n >= 5) {
        assert!(w[1].log_abs < w[0].log_abs, "not decreasing at n = {}", w[1].n);
    }
    for n in 10..=29 {
        let r = rep.ratio_at(n).unwrap();
        assert!((r - phi).abs() < 10.0 * phi.powi(-(n as i32)), "n = {n}: {r}");
    }
}

#[test]
fn bounds_hold_on_the_grid() {
    for n in 3..=10 {
        let checks = check_bounds(&q(n), 4..=20).unwrap();
        assert_eq!(checks.len(), 17);
        assert!(checks.iter().all(|c| c.holds()), "N = {n}");
    }
    assert!(check_bounds(&q(2), 4..=6).is_err());
}

#[test]
fn degree_laws_to_twenty() {
    let d = make_builtin("nrec", &[]).unwrap();
    let one = UniPoly::constant("N", BigInt::one());
    let o = d.iterate_with(&[one.clone(), one.clone(), one], 18, &[("N", UniPoly::x("N"))]).unwrap();
    let rep = degree_report(&o);
    assert!(rep.degree_law && rep.degree_recurrence);
    assert!(rep.monic.iter().all(|&m| m));
    let last = o.values.last().unwrap();
    assert_eq!(BigInt::from(last.degree().finite().unwrap()), fibonacci(20) - 1);
}

#[test]
fn confinement_is_stable_in_truncation_order() {
    let base = ProbeConfig::new(q(3), q(-25), q(1));
    let reference = probe(&base.clone().with_order(6)).unwrap();
    for k in 6..=12 {
        let rep = probe(&base.clone().with_order(k)).unwrap();
        assert_eq!(rep.verdict, ConfinementVerdict::Confined);
        for (a, b) in rep.terms.iter().zip(&reference.terms) {
            assert_eq!(a.valuation, b.valuation, "K = {k}, offset {}", a.offset);
            assert_eq!(a.leading, b.leading);
        }
        // τ_{n+3} = ε exactly, to the stored order
        let t3 = &rep.term(3).series;
        assert_eq!(t3.valuation(), Some(1));
        assert!(t3.coeffs()[1..].iter().all(|c| *c == q(0)));
    }
}

#[test]
fn series_predict_rational_orbits() {
    let cfg = ProbeConfig::new(q(3), q(-25), q(2));
    let rep = probe(&cfg).unwrap();
    for k in 4..=6u32 {
        let eps = Rational::new(BigInt::one(), BigInt::from(10).pow(k));
        let chk = numeric_check(&cfg, &rep, &eps).unwrap();
        let tol = 10.0 * rational_to_f64(&(&eps * &eps));
        for (num, pred) in chk.numeric.iter().zip(&chk.first_order) {
            let err = rational_to_f64(&(num - pred)).abs();
            assert!(err < tol, "eps = 1e-{k}: {err} ≥ {tol}");
        }
    }
}
