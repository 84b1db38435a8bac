use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{EngineError, FailureKind, Form, RecurrenceDef};
use crate::kernel::Rational;

/// Outcome of [`first_nonintegral`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Integrality {
    /// Every computed term is an integer.
    AllIntegral,
    FirstNonIntegral(i64),
    /// A division by zero occurred at this index before any non-integer.
    ZeroDivision(i64),
}

/// Runs the recurrence over the rationals and reports the first index
/// whose term is not an integer.
pub fn first_nonintegral(
    def: &RecurrenceDef,
    init: &[BigInt],
    max_steps: usize,
) -> Result<Integrality, EngineError> {
    let init: Vec<Rational> = init.iter().cloned().map(Rational::from_integer).collect();
    let orbit = def.iterate_until(&init, max_steps, &[], |_, v| !v.is_integer())?;
    if let Some((n, _)) = orbit.indexed().find(|(_, v)| !v.is_integer()) {
        return Ok(Integrality::FirstNonIntegral(n));
    }
    Ok(match orbit.failure {
        Some(f) if f.kind == FailureKind::ZeroDivision => Integrality::ZeroDivision(f.index),
        _ => Integrality::AllIntegral,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// The state window returns to the initial one after p steps, p ≥ 2.
    Periodic(usize),
    FixedPoint,
    /// First zero term of a product-form orbit.
    ZeroHit(i64),
    /// |τ_n| strictly increasing over the last ⌈max_steps/2⌉ steps.
    Growing,
    /// None of the above within the horizon.
    Undetermined,
}

/// Classifies the rational orbit from `init` over `max_steps` steps.
pub fn orbit_classify(
    def: &RecurrenceDef,
    init: &[Rational],
    max_steps: usize,
) -> Result<Classification, EngineError> {
    let orbit = def.iterate(init, max_steps)?;
    if def.form() == Form::Product {
        if let Some((n, _)) = orbit.indexed().find(|(_, v)| v.is_zero()) {
            return Ok(Classification::ZeroHit(n));
        }
    }
    match orbit.detected_period {
        Some(1) => return Ok(Classification::FixedPoint),
        Some(p) => return Ok(Classification::Periodic(p)),
        None => {}
    }
    let tail = max_steps.div_ceil(2);
    let vals = &orbit.values;
    if orbit.is_clean() && tail > 0 && vals.len() > tail {
        let start = vals.len() - tail - 1;
        if vals[start..].windows(2).all(|w| w[1].abs() > w[0].abs()) {
            return Ok(Classification::Growing);
        }
    }
    Ok(Classification::Undetermined)
}
