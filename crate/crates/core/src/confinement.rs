//! ε-perturbation of the J-recurrence through a zero.
//!
//! With τ_n = w, τ_{n+1} = x and τ_{n+2} = y where y² = −x² − J + εw,
//! the next iterate is exactly ε. The probe follows the orbit in exact
//! truncated ε-series and checks that the singularity is confined, i.e.
//! that τ_{n+6} stays finite as ε → 0.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::kernel::{rational_sqrt, EpsSeries, Rational, DEFAULT_ORDER};
use crate::recurrence::{make_builtin, FailureKind, ParamValue, RecurrenceDef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("-x^2 - J = {0} is not the square of a nonzero rational")]
    NonSquareSetup(Rational),
    #[error("w must be nonzero")]
    ZeroW,
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("all stored orders cancelled at offset {0}")]
    TruncationExhausted(usize),
    #[error("division by zero at offset {0}")]
    ZeroDivision(usize),
    #[error("tau_(n+3) = {0}, expected eps")]
    NotEps(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeConfig {
    pub x: Rational,
    pub j: Rational,
    pub w: Rational,
    /// Relative truncation order K of the ε-series.
    pub order: usize,
    /// Retry once with 2K when the cancellations use up all orders.
    pub auto_extend: bool,
}

impl ProbeConfig {
    pub fn new(x: Rational, j: Rational, w: Rational) -> Self {
        ProbeConfig {
            x,
            j,
            w,
            order: DEFAULT_ORDER,
            auto_extend: true,
        }
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    /// y₀ = √(−x² − J) > 0.
    pub fn y0(&self) -> Result<Rational, ProbeError> {
        let sq = -(&self.x * &self.x) - &self.j;
        match rational_sqrt(&sq) {
            Some(r) if !r.is_zero() => Ok(r),
            _ => Err(ProbeError::NonSquareSetup(sq)),
        }
    }

    fn validate(&self) -> Result<Rational, ProbeError> {
        if self.w.is_zero() {
            return Err(ProbeError::ZeroW);
        }
        if self.order == 0 {
            return Err(ProbeError::ZeroOrder);
        }
        self.y0()
    }

    /// y = √(y₀² + εw) to order K.
    fn y_series(&self, y0: &Rational) -> EpsSeries {
        let sq = EpsSeries::truncated(0, vec![y0 * y0, self.w.clone()], self.order);
        sq.sqrt().expect("y0^2 is a nonzero rational square")
    }

    fn recurrence(&self) -> RecurrenceDef {
        make_builtin("jrec", &[("J", ParamValue::Exact(self.j.clone()))]).expect("builtin")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConfinementVerdict {
    Confined,
    NotConfined,
}

/// One iterate τ_{n+offset} of the perturbed orbit.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesTerm {
    pub offset: usize,
    #[serde(serialize_with = "crate::io::ser_series")]
    pub series: EpsSeries,
    pub valuation: i64,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub leading: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub y0: Rational,
    /// Truncation order actually used (2K after an automatic retry).
    pub order: usize,
    /// τ_{n+3} … τ_{n+6}.
    pub terms: Vec<SeriesTerm>,
    pub verdict: ConfinementVerdict,
}

impl ProbeReport {
    /// τ_{n+offset}, for offset in 3..=6.
    pub fn term(&self, offset: usize) -> &SeriesTerm {
        &self.terms[offset - 3]
    }
}

/// Iterates from (w, x, y) and returns τ_{n+3} … τ_{n+3+extra+3}.
fn run(cfg: &ProbeConfig, y0: &Rational, extra: usize) -> Result<Vec<SeriesTerm>, ProbeError> {
    let init = [
        EpsSeries::constant(cfg.w.clone()),
        EpsSeries::constant(cfg.x.clone()),
        cfg.y_series(y0),
    ];
    let orbit = cfg
        .recurrence()
        .iterate(&init, 4 + extra)
        .expect("window arity is 3 and J is bound");
    let mut terms = Vec::with_capacity(4 + extra);
    for (i, s) in orbit.values.into_iter().enumerate().skip(3) {
        let (Some(valuation), Some(lead)) = (s.valuation(), s.leading_coefficient().cloned()) else {
            return Err(ProbeError::TruncationExhausted(i));
        };
        terms.push(SeriesTerm {
            offset: i,
            series: s,
            valuation,
            leading: lead,
        });
    }
    if let Some(f) = orbit.failure {
        let at = f.index as usize;
        return Err(match f.kind {
            FailureKind::ZeroDivision => ProbeError::ZeroDivision(at),
            _ => ProbeError::TruncationExhausted(at),
        });
    }
    let t3 = &terms[0].series;
    let is_eps = t3.valuation() == Some(1) && t3.coeffs()[0].is_one() && t3.coeffs()[1..].iter().all(Zero::is_zero);
    if !is_eps {
        return Err(ProbeError::NotEps(t3.to_string()));
    }
    Ok(terms)
}

fn with_retry<T>(
    cfg: &ProbeConfig,
    f: impl Fn(&ProbeConfig, &Rational) -> Result<T, ProbeError>,
) -> Result<T, ProbeError> {
    let y0 = cfg.validate()?;
    match f(cfg, &y0) {
        Err(ProbeError::TruncationExhausted(_)) if cfg.auto_extend => {
            let wider = cfg.clone().with_order(cfg.order * 2);
            f(&wider, &y0)
        }
        other => other,
    }
}

/// Runs the confinement calculation for one configuration.
pub fn probe(cfg: &ProbeConfig) -> Result<ProbeReport, ProbeError> {
    with_retry(cfg, |c, y0| {
        let terms = run(c, y0, 0)?;
        let verdict = if terms[3].valuation >= 0 {
            ConfinementVerdict::Confined
        } else {
            ConfinementVerdict::NotConfined
        };
        Ok(ProbeReport {
            y0: y0.clone(),
            order: c.order,
            terms,
            verdict,
        })
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Continuation {
    pub order: usize,
    /// τ_{n+3} onwards.
    pub terms: Vec<SeriesTerm>,
    /// Every iterate after τ_{n+3} has valuation ≥ 0.
    pub finite: bool,
}

/// Continues the perturbed orbit `extra_steps` beyond τ_{n+6}.
pub fn continue_past(cfg: &ProbeConfig, extra_steps: usize) -> Result<Continuation, ProbeError> {
    with_retry(cfg, |c, y0| {
        let terms = run(c, y0, extra_steps)?;
        Ok(Continuation {
            order: c.order,
            finite: terms[1..].iter().all(|t| t.valuation >= 0),
            terms,
        })
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericCheck {
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub eps: Rational,
    /// τ_{n+3} … τ_{n+6} from the rational orbit at this ε.
    #[serde(serialize_with = "crate::io::ser_rationals")]
    pub numeric: Vec<Rational>,
    /// The two lowest series terms of each iterate, evaluated at ε.
    #[serde(serialize_with = "crate::io::ser_rationals")]
    pub first_order: Vec<Rational>,
    /// max |numeric − first_order| / ε^(v+2) over the four iterates,
    /// v the valuation.
    pub scaled_error: f64,
}

/// Specialises ε to a rational and compares the rational orbit from
/// (w, x, y(ε)) with the series prediction. y(ε) is the series for y
/// evaluated at ε.
pub fn numeric_check(cfg: &ProbeConfig, report: &ProbeReport, eps: &Rational) -> Result<NumericCheck, ProbeError> {
    let y0 = cfg.validate()?;
    let y = cfg.clone().with_order(report.order).y_series(&y0).eval(eps);
    let orbit = cfg
        .recurrence()
        .iterate(&[cfg.w.clone(), cfg.x.clone(), y], 4)
        .expect("window arity is 3 and J is bound");
    if let Some(f) = orbit.failure {
        return Err(ProbeError::ZeroDivision(f.index as usize));
    }
    let numeric: Vec<Rational> = orbit.values[3..].to_vec();
    let first_order: Vec<Rational> = report.terms.iter().map(|t| t.series.eval_terms(eps, 2)).collect();
    let scaled_error = numeric
        .iter()
        .zip(&first_order)
        .zip(&report.terms)
        .map(|((a, b), t)| {
            let scale = pow_i(eps, t.valuation + 2);
            crate::kernel::rational_to_f64(&((a - b).abs() / scale))
        })
        .fold(0.0, f64::max);
    Ok(NumericCheck {
        eps: eps.clone(),
        numeric,
        first_order,
        scaled_error,
    })
}

fn pow_i(x: &Rational, k: i64) -> Rational {
    let p = num_traits::Pow::pow(x, k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn standard() -> ProbeConfig {
        ProbeConfig::new(q(3), q(-25), q(1))
    }

    #[test]
    fn standard_probe_is_confined() {
        let rep = probe(&standard()).unwrap();
        assert_eq!(rep.y0, q(4));
        assert_eq!(rep.term(3).series.to_string(), "eps + O(eps^8)");
        assert_eq!((rep.term(4).valuation, &rep.term(4).leading), (0, &q(-3)));
        assert_eq!((rep.term(5).valuation, &rep.term(5).leading), (0, &q(-4)));
        assert!(rep.term(6).valuation >= 0);
        assert_eq!(rep.verdict, ConfinementVerdict::Confined);
    }

    #[test]
    fn non_square_setup() {
        // -1 - (-3) = 2
        let cfg = ProbeConfig::new(q(1), q(-3), q(1));
        assert_eq!(probe(&cfg).unwrap_err(), ProbeError::NonSquareSetup(q(2)));
    }

    #[test]
    fn limits_do_not_depend_on_w() {
        let a = probe(&standard()).unwrap();
        let b = probe(&ProbeConfig::new(q(3), q(-25), q(2))).unwrap();
        for k in [4, 5] {
            assert_eq!(a.term(k).leading, b.term(k).leading);
        }
    }

    #[test]
    fn stable_in_truncation_order() {
        let v = |k| {
            let r = probe(&standard().with_order(k)).unwrap();
            r.terms.iter().map(|t| t.valuation).collect::<Vec<_>>()
        };
        let base = v(6);
        for k in 7..=12 {
            assert_eq!(v(k), base);
        }
    }

    #[test]
    fn exhaustion_and_retry() {
        let mut cfg = standard().with_order(1);
        cfg.auto_extend = false;
        assert!(matches!(probe(&cfg), Err(ProbeError::TruncationExhausted(_))));
        cfg.auto_extend = true;
        assert_eq!(probe(&cfg).unwrap().order, 2);
    }

    #[test]
    fn continuation_stays_finite() {
        let c = continue_past(&standard(), 4).unwrap();
        assert_eq!(c.terms.len(), 8);
        assert!(c.finite);
    }

    #[test]
    fn numeric_agreement() {
        let cfg = standard();
        let rep = probe(&cfg).unwrap();
        for k in 4..=6u32 {
            let eps = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(k));
            let chk = numeric_check(&cfg, &rep, &eps).unwrap();
            assert!(chk.scaled_error < 10.0, "k={k}: {}", chk.scaled_error);
        }
    }
}
