//! Finite-horizon Laurent certificates: iterate with symbolic initial data
//! and check that every division is exact in the Laurent ring.

use serde::Serialize;

use super::{EngineError, Failure, Orbit, RecurrenceDef};
use crate::kernel::{LaurentPoly, LaurentStats, VarSet};

const INITIAL_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

#[derive(Debug, Clone, Serialize)]
pub struct CertificateEntry {
    pub index: i64,
    #[serde(flatten)]
    pub stats: LaurentStats,
}

#[derive(Debug, Clone)]
pub struct LaurentCertificate {
    pub vars: VarSet,
    pub entries: Vec<CertificateEntry>,
    /// True iff no division failed within the horizon.
    pub laurent: bool,
    pub failure: Option<Failure>,
    pub orbit: Orbit<LaurentPoly>,
}

/// Ambient ring for a certificate: one variable per initial value
/// (`a, b, c, …`) followed by the symbolic parameters.
pub fn ambient_vars(def: &RecurrenceDef) -> Result<VarSet, EngineError> {
    let k = def.order();
    let symbolic = def.symbolic_params();
    let total = k + symbolic.len();
    if k > INITIAL_NAMES.len() || total > crate::kernel::MAX_VARS {
        return Err(EngineError::TooManyVariables(total));
    }
    let mut names: Vec<String> = INITIAL_NAMES[..k].iter().map(|s| (*s).to_owned()).collect();
    for p in symbolic {
        if names.iter().any(|n| n == p) {
            return Err(EngineError::InvalidTemplate(format!(
                "parameter name {p} clashes with an initial-value variable"
            )));
        }
        names.push(p.to_owned());
    }
    Ok(VarSet::new(names))
}

/// Iterates `def` for `steps` steps from symbolic initial data.
pub fn laurent_certificate(def: &RecurrenceDef, steps: usize) -> Result<LaurentCertificate, EngineError> {
    let vars = ambient_vars(def)?;
    let k = def.order();
    let init: Vec<LaurentPoly> = vars.names()[..k]
        .iter()
        .map(|n| LaurentPoly::var(&vars, n))
        .collect::<Result<_, _>>()?;
    let bindings: Vec<(&str, LaurentPoly)> = def
        .symbolic_params()
        .into_iter()
        .map(|p| Ok((p, LaurentPoly::var(&vars, p)?)))
        .collect::<Result<_, EngineError>>()?;
    let orbit = def.iterate_with(&init, steps, &bindings)?;
    let entries = orbit
        .indexed()
        .map(|(index, v)| CertificateEntry {
            index,
            stats: v.stats(),
        })
        .collect();
    Ok(LaurentCertificate {
        vars,
        entries,
        laurent: orbit.failure.is_none(),
        failure: orbit.failure,
        orbit,
    })
}
