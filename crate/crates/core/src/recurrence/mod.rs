//! Iterating recurrences over the exact value domains.

mod certificate;
mod classify;
mod coprime;
mod def;
mod domain;

pub use certificate::{ambient_vars, laurent_certificate, CertificateEntry, LaurentCertificate};
pub use classify::{first_nonintegral, orbit_classify, Classification, Integrality};
pub use coprime::{coprimality_probe, probe_pair, PairLabel, PairVerdict, PROBE_RANGE};
pub use def::{make_builtin, Form, ParamValue, RecurrenceDef, BUILTIN_NAMES};
pub use domain::{DomainTag, FailureKind, Value};

use serde::Serialize;
use thiserror::Error;

use crate::kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unknown recurrence {0:?}")]
    UnknownName(String),
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("recurrence {recurrence} has no parameter {param:?}")]
    UnknownParameter { recurrence: String, param: String },
    #[error("symbolic parameter {0} has no binding in this domain")]
    UnboundParameter(String),
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error("invalid right-hand side: {0}")]
    InvalidTemplate(String),
    #[error("expected {expected} initial values, got {got}")]
    InitArity { expected: usize, got: usize },
    #[error("recurrence cannot be solved for its oldest term")]
    NotReversible,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Where and why an orbit stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Sequence index of the value that could not be computed.
    pub index: i64,
    pub kind: FailureKind,
}

/// A finite piece of a sequence `τ_offset, τ_offset+1, …`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit<V> {
    pub domain: DomainTag,
    /// Sequence index of `values[0]`.
    pub offset: i64,
    pub values: Vec<V>,
    pub failure: Option<Failure>,
    /// Smallest p > 0 with the state window returning to the initial
    /// window after p steps, if observed.
    pub detected_period: Option<usize>,
}

impl<V: Value> Orbit<V> {
    /// Value at sequence index `n`, if stored.
    pub fn get(&self, n: i64) -> Option<&V> {
        let i = n - self.offset;
        if i < 0 {
            None
        } else {
            self.values.get(i as usize)
        }
    }

    /// Index one past the last stored value.
    pub fn end(&self) -> i64 {
        self.offset + self.values.len() as i64
    }

    pub fn is_clean(&self) -> bool {
        self.failure.is_none()
    }

    pub fn indexed(&self) -> impl Iterator<Item = (i64, &V)> {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.offset + i as i64, v))
    }
}

impl RecurrenceDef {
    /// Iterates forward `steps` times from `init = (τ_0, …, τ_{k−1})`.
    pub fn iterate<V: Value>(&self, init: &[V], steps: usize) -> Result<Orbit<V>, EngineError> {
        self.iterate_with(init, steps, &[])
    }

    /// As [`iterate`](Self::iterate), with values for symbolic parameters.
    pub fn iterate_with<V: Value>(
        &self,
        init: &[V],
        steps: usize,
        bindings: &[(&str, V)],
    ) -> Result<Orbit<V>, EngineError> {
        self.iterate_until(init, steps, bindings, |_, _| false)
    }

    /// As [`iterate_with`](Self::iterate_with), stopping right after the
    /// first computed value for which `stop(index, value)` holds.
    pub fn iterate_until<V: Value>(
        &self,
        init: &[V],
        steps: usize,
        bindings: &[(&str, V)],
        mut stop: impl FnMut(i64, &V) -> bool,
    ) -> Result<Orbit<V>, EngineError> {
        let k = self.order();
        if init.len() != k {
            return Err(EngineError::InitArity {
                expected: k,
                got: init.len(),
            });
        }
        let mut orbit = Orbit {
            domain: V::DOMAIN,
            offset: 0,
            values: init.to_vec(),
            failure: None,
            detected_period: None,
        };
        let params = match self.param_values(&init[0], bindings)? {
            Ok(p) => p,
            Err(kind) => {
                if steps > 0 {
                    orbit.failure = Some(Failure {
                        index: k as i64,
                        kind,
                    });
                }
                return Ok(orbit);
            }
        };
        orbit.values.reserve(steps);
        for _ in 0..steps {
            let n = orbit.values.len();
            match self.step_forward(&orbit.values[n - k..], &params) {
                Ok(v) => orbit.values.push(v),
                Err(kind) => {
                    orbit.failure = Some(Failure {
                        index: n as i64,
                        kind,
                    });
                    break;
                }
            }
            let len = orbit.values.len();
            if orbit.detected_period.is_none() && orbit.values[len - k..] == orbit.values[..k] {
                orbit.detected_period = Some(len - k);
            }
            if stop(n as i64, &orbit.values[n]) {
                break;
            }
        }
        Ok(orbit)
    }

    /// Iterates backwards `steps` times from the window
    /// `(τ_0, …, τ_{k−1})`; the returned orbit starts at index `−steps`
    /// (or later, if a failure stopped it).
    pub fn iterate_backward<V: Value>(
        &self,
        window: &[V],
        steps: usize,
        bindings: &[(&str, V)],
    ) -> Result<Orbit<V>, EngineError> {
        let k = self.order();
        if window.len() != k {
            return Err(EngineError::InitArity {
                expected: k,
                got: window.len(),
            });
        }
        if !self.is_reversible() {
            return Err(EngineError::NotReversible);
        }
        let mut rev: Vec<V> = window.iter().rev().cloned().collect();
        let mut failure = None;
        match self.param_values(&window[0], bindings)? {
            Ok(params) => {
                for s in 0..steps {
                    let n = rev.len();
                    let later: Vec<V> = rev[n - k..].iter().rev().cloned().collect();
                    match self.step_backward(&later, &params) {
                        Ok(v) => rev.push(v),
                        Err(kind) => {
                            failure = Some(Failure {
                                index: -(s as i64) - 1,
                                kind,
                            });
                            break;
                        }
                    }
                }
            }
            Err(kind) if steps > 0 => failure = Some(Failure { index: -1, kind }),
            Err(_) => {}
        }
        let produced = rev.len() - k;
        rev.reverse();
        Ok(Orbit {
            domain: V::DOMAIN,
            offset: -(produced as i64),
            values: rev,
            failure,
            detected_period: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{BigInt, LaurentPoly, Rational, UniPoly, VarSet};

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn somos4_integer_sequence() {
        let d = make_builtin("somos4", &[("alpha", ParamValue::int(1)), ("beta", ParamValue::int(1))])
            .unwrap();
        let o = d.iterate(&ints(&[1, 1, 1, 1]), 9).unwrap();
        assert!(o.is_clean());
        assert_eq!(
            o.values,
            ints(&[1, 1, 1, 1, 2, 3, 7, 23, 59, 314, 1529, 8209, 83313])
        );
    }

    #[test]
    fn markoff_subsequence() {
        let d = make_builtin("jrec", &[("J", ParamValue::int(0))]).unwrap();
        let o = d.iterate(&ints(&[1, 1, 1]), 7).unwrap();
        assert_eq!(
            o.values,
            ints(&[1, 1, 1, 2, 5, 29, 433, 37666, 48928105, 5528778008357])
        );
    }

    #[test]
    fn symbolic_first_iterates() {
        let vars = VarSet::abcj();
        let d = make_builtin("jrec", &[]).unwrap();
        let init: Vec<LaurentPoly> = ["a", "b", "c"]
            .iter()
            .map(|v| LaurentPoly::var(&vars, v).unwrap())
            .collect();
        let j = LaurentPoly::var(&vars, "J").unwrap();
        let o = d.iterate_with(&init, 2, &[("J", j)]).unwrap();
        let t3 = LaurentPoly::parse("a^-1*b^2 + a^-1*c^2 + a^-1*J", &vars).unwrap();
        let num = LaurentPoly::parse(
            "b^4 + a^2*c^2 + 2*b^2*c^2 + c^4 + a^2*J + 2*b^2*J + 2*c^2*J + J^2",
            &vars,
        )
        .unwrap();
        let den = LaurentPoly::parse("a^2*b", &vars).unwrap();
        assert_eq!(o.values[3], t3);
        assert_eq!(o.values[4], num.exact_div(&den).unwrap());
    }

    #[test]
    fn init_arity_checked() {
        let d = make_builtin("jrec", &[("J", ParamValue::int(0))]).unwrap();
        assert_eq!(
            d.iterate(&ints(&[1, 1]), 3).unwrap_err(),
            EngineError::InitArity { expected: 3, got: 2 }
        );
        let d = make_builtin("jrec", &[]).unwrap();
        assert_eq!(
            d.iterate(&ints(&[1, 1, 1]), 3).unwrap_err(),
            EngineError::UnboundParameter("J".into())
        );
    }

    #[test]
    fn failures_are_recorded() {
        let d = make_builtin("jrec", &[("J", ParamValue::int(1))]).unwrap();
        // (1+4+1)/... starts with τ_0 = 2: τ_3 = (1 + 1 + 1)/2 not integral
        let o = d.iterate(&ints(&[2, 1, 1]), 5).unwrap();
        assert_eq!(
            o.failure,
            Some(Failure {
                index: 3,
                kind: FailureKind::NonExactDivision
            })
        );
        assert_eq!(o.values.len(), 3);
        let q = |n: i64| Rational::from_integer(n.into());
        let o = d.iterate(&[q(0), q(1), q(1)], 5).unwrap();
        assert_eq!(o.failure.unwrap().kind, FailureKind::ZeroDivision);
        let d = make_builtin("jrec", &[("J", ParamValue::Exact(Rational::new(1.into(), 2.into())))])
            .unwrap();
        let o = d.iterate(&ints(&[1, 1, 1]), 5).unwrap();
        assert_eq!(o.failure.unwrap().kind, FailureKind::NotRepresentable);
    }

    #[test]
    fn backward_iteration_restores_window() {
        let d = make_builtin("jrec", &[("J", ParamValue::int(0))]).unwrap();
        let fwd = d.iterate(&ints(&[1, 1, 1]), 6).unwrap();
        let tail = &fwd.values[fwd.values.len() - 3..];
        let back = d.iterate_backward(tail, 6, &[]).unwrap();
        assert!(back.is_clean());
        assert_eq!(back.offset, -6);
        assert_eq!(back.values, fwd.values);

        let nrec = make_builtin("nrec", &[("N", ParamValue::int(3))]).unwrap();
        let fwd = nrec.iterate(&ints(&[1, 2, 5]), 5).unwrap();
        let back = nrec
            .iterate_backward(&fwd.values[5..], 5, &[])
            .unwrap();
        assert_eq!(back.values, fwd.values);
    }

    #[test]
    fn unipoly_orbit_of_nrec() {
        let d = make_builtin("nrec", &[]).unwrap();
        let one = UniPoly::constant("N", BigInt::from(1));
        let o = d
            .iterate_with(&[one.clone(), one.clone(), one], 4, &[("N", UniPoly::x("N"))])
            .unwrap();
        assert_eq!(o.values[3], UniPoly::parse("N - 1", "N").unwrap());
        assert_eq!(o.values[4], UniPoly::parse("N^2 - N - 1", "N").unwrap());
    }

    #[test]
    fn period_detection() {
        let d = make_builtin("nrec", &[("N", ParamValue::int(1))]).unwrap();
        let o = d.iterate(&ints(&[1, 1, 1]), 30).unwrap();
        assert_eq!(o.detected_period, Some(12));
    }
}
