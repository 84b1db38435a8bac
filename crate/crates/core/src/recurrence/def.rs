//! Recurrence definitions.
//!
//! A recurrence of order k acts on the window `(τ_n, …, τ_{n+k−1})`, whose
//! entries are named `w0 … w{k−1}` inside the right-hand side. Product
//! form reads `τ_{n+k}·τ_n = F(w1, …, w{k−1})`, explicit form reads
//! `τ_{n+k} = G(w0, …, w{k−1})`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::domain::{FailureKind, Value};
use super::EngineError;
use crate::kernel::{LaurentPoly, Monomial, Rational, VarSet, MAX_VARS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Form {
    Product,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Exact(Rational),
    Symbolic,
}

impl ParamValue {
    pub fn int(v: i64) -> Self {
        ParamValue::Exact(Rational::from_integer(v.into()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceDef {
    name: String,
    order: usize,
    form: Form,
    /// F or G over the slot variables `w0..w{k-1}` followed by the
    /// parameter names.
    rhs: LaurentPoly,
    params: Vec<(String, ParamValue)>,
    /// For explicit forms `G = c·w0 + H(w1..)`: (c, H), used to step
    /// backwards.
    inverse: Option<(Rational, LaurentPoly)>,
}

/// Names of the builtin families accepted by [`make_builtin`].
pub const BUILTIN_NAMES: [&str; 6] = ["jrec", "nrec", "somos", "somos4", "integ", "linear"];

fn slot_vars(order: usize, params: &[String]) -> Result<VarSet, EngineError> {
    let total = order + params.len();
    if total > MAX_VARS {
        return Err(EngineError::TooManyVariables(total));
    }
    let mut names: Vec<String> = (0..order).map(|i| format!("w{i}")).collect();
    names.extend(params.iter().cloned());
    Ok(VarSet::new(names))
}

impl RecurrenceDef {
    /// A user-defined recurrence; `rhs` is parsed with the window slots
    /// `w0..w{k-1}` and the listed parameter names as variables.
    pub fn custom(
        name: &str,
        order: usize,
        form: Form,
        rhs: &str,
        params: Vec<(String, ParamValue)>,
    ) -> Result<Self, EngineError> {
        if order < 2 {
            return Err(EngineError::BadArity(format!("order {order} < 2")));
        }
        let names: Vec<String> = params.iter().map(|p| p.0.clone()).collect();
        let vars = slot_vars(order, &names)?;
        let rhs = LaurentPoly::parse(rhs, &vars)?;
        Self::from_parts(name, order, form, rhs, params)
    }

    fn from_parts(
        name: &str,
        order: usize,
        form: Form,
        rhs: LaurentPoly,
        params: Vec<(String, ParamValue)>,
    ) -> Result<Self, EngineError> {
        let n = rhs.vars().len();
        for (m, _) in rhs.terms() {
            if !m.is_polynomial(n) {
                return Err(EngineError::InvalidTemplate(format!(
                    "negative exponent in right-hand side {rhs}"
                )));
            }
            if form == Form::Product && m.exponent(0) != 0 {
                return Err(EngineError::InvalidTemplate(
                    "product-form right-hand side may not involve w0".into(),
                ));
            }
        }
        let inverse = match form {
            Form::Product => None,
            Form::Explicit => explicit_inverse(&rhs),
        };
        Ok(RecurrenceDef {
            name: name.to_owned(),
            order,
            form,
            rhs,
            params,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn rhs(&self) -> &LaurentPoly {
        &self.rhs
    }

    pub fn params(&self) -> &[(String, ParamValue)] {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<&ParamValue> {
        self.params.iter().find(|p| p.0 == name).map(|p| &p.1)
    }

    pub fn symbolic_params(&self) -> Vec<&str> {
        self.params
            .iter()
            .filter(|p| p.1 == ParamValue::Symbolic)
            .map(|p| p.0.as_str())
            .collect()
    }

    pub fn is_reversible(&self) -> bool {
        self.form == Form::Product || self.inverse.is_some()
    }

    /// Parameter slot values in domain `V`. Symbolic parameters are taken
    /// from `bindings`.
    pub(crate) fn param_values<V: Value>(
        &self,
        proto: &V,
        bindings: &[(&str, V)],
    ) -> Result<Result<Vec<V>, FailureKind>, EngineError> {
        let mut out = Vec::with_capacity(self.params.len());
        for (name, value) in &self.params {
            if let Some((_, v)) = bindings.iter().find(|b| b.0 == name) {
                out.push(v.clone());
                continue;
            }
            match value {
                ParamValue::Symbolic => return Err(EngineError::UnboundParameter(name.clone())),
                ParamValue::Exact(r) => match proto.constant_like(r) {
                    Some(v) => out.push(v),
                    None => return Ok(Err(FailureKind::NotRepresentable)),
                },
            }
        }
        Ok(Ok(out))
    }

    /// Next value from the window `τ_n..τ_{n+k-1}`.
    pub(crate) fn step_forward<V: Value>(
        &self,
        window: &[V],
        params: &[V],
    ) -> Result<V, FailureKind> {
        let g = eval_template(&self.rhs, window, params, &window[0])?;
        match self.form {
            Form::Explicit => Ok(g),
            Form::Product => g.exact_div(&window[0]),
        }
    }

    /// `τ_n` from the window `τ_{n+1}..τ_{n+k}`.
    pub(crate) fn step_backward<V: Value>(
        &self,
        later: &[V],
        params: &[V],
    ) -> Result<V, FailureKind> {
        let k = self.order;
        // slot w0 is τ_n itself, which F does not read
        let mut slots: Vec<V> = Vec::with_capacity(k);
        let zero = later[0]
            .constant_like(&Rational::zero())
            .ok_or(FailureKind::NotRepresentable)?;
        slots.push(zero);
        slots.extend_from_slice(&later[..k - 1]);
        let newest = &later[k - 1];
        match self.form {
            Form::Product => {
                let f = eval_template(&self.rhs, &slots, params, newest)?;
                f.exact_div(newest)
            }
            Form::Explicit => {
                let (c, h) = self
                    .inverse
                    .as_ref()
                    .expect("explicit form without inverse stepped backwards");
                let hv = eval_template(h, &slots, params, newest)?;
                let num = newest.sub(&hv);
                let c = newest.constant_like(c).ok_or(FailureKind::NotRepresentable)?;
                num.exact_div(&c)
            }
        }
    }
}

/// Decomposes `G = c·w0 + H(w1..)` with a nonzero constant `c`.
fn explicit_inverse(rhs: &LaurentPoly) -> Option<(Rational, LaurentPoly)> {
    let n = rhs.vars().len();
    let mut c: Option<Rational> = None;
    let mut rest = Vec::new();
    for (m, coef) in rhs.terms() {
        let e0 = m.exponent(0);
        if e0 == 0 {
            rest.push((*m, coef.clone()));
            continue;
        }
        let mut w0 = vec![0i32; n];
        w0[0] = 1;
        if e0 != 1 || *m != Monomial::from_exponents(&w0) || c.is_some() {
            return None;
        }
        c = Some(Rational::from_integer(coef.clone()));
    }
    let c = c?;
    Some((c, LaurentPoly::from_terms(rhs.vars(), rest)))
}

/// Evaluates a template polynomial at slot values in domain `V`.
pub(crate) fn eval_template<V: Value>(
    tmpl: &LaurentPoly,
    window: &[V],
    params: &[V],
    proto: &V,
) -> Result<V, FailureKind> {
    let nslots = window.len() + params.len();
    debug_assert_eq!(nslots, tmpl.vars().len());
    let slot = |i: usize| -> &V {
        if i < window.len() {
            &window[i]
        } else {
            &params[i - window.len()]
        }
    };
    let max = tmpl.max_exponents();
    // powers[i][e-1] = slot_i^e
    let mut powers: Vec<Vec<V>> = Vec::with_capacity(nslots);
    for (i, &hi) in max.iter().enumerate() {
        let mut row: Vec<V> = Vec::with_capacity(hi.max(0) as usize);
        for e in 1..=hi {
            let next = if e == 1 {
                slot(i).clone()
            } else {
                row[e as usize - 2].mul(slot(i))
            };
            row.push(next);
        }
        powers.push(row);
    }
    let mut acc: Option<V> = None;
    for (m, c) in tmpl.terms() {
        let mut term: Option<V> = None;
        for (i, row) in powers.iter().enumerate() {
            let e = m.exponent(i);
            if e > 0 {
                let p = &row[e as usize - 1];
                term = Some(match term {
                    None => p.clone(),
                    Some(t) => t.mul(p),
                });
            }
        }
        let negate = *c == -BigInt::one();
        let term = match term {
            None => proto
                .constant_like(&Rational::from_integer(c.clone()))
                .ok_or(FailureKind::NotRepresentable)?,
            Some(t) if c.is_one() || negate => t,
            Some(t) => {
                let k = proto
                    .constant_like(&Rational::from_integer(c.clone()))
                    .ok_or(FailureKind::NotRepresentable)?;
                t.mul(&k)
            }
        };
        let negate = negate && !m.is_one();
        acc = Some(match (acc, negate) {
            (None, false) => term,
            (None, true) => term.neg(),
            (Some(a), false) => a.add(&term),
            (Some(a), true) => a.sub(&term),
        });
    }
    match acc {
        Some(v) => Ok(v),
        None => proto
            .constant_like(&Rational::zero())
            .ok_or(FailureKind::NotRepresentable),
    }
}

fn need_exact_int(name: &str, params: &[(&str, ParamValue)], key: &str) -> Result<usize, EngineError> {
    match params.iter().find(|p| p.0 == key).map(|p| &p.1) {
        Some(ParamValue::Exact(r)) if r.is_integer() && r >= &Rational::zero() => {
            usize::try_from(r.to_integer())
                .map_err(|_| EngineError::BadArity(format!("{name}: {key}={r}")))
        }
        Some(other) => Err(EngineError::BadArity(format!("{name}: {key} must be a nonnegative integer, got {other:?}"))),
        None => Err(EngineError::BadArity(format!("{name} requires parameter {key}"))),
    }
}

/// Builds one of the builtin families. Parameters not supplied are
/// symbolic.
///
/// | name     | form     | recurrence                                          |
/// |----------|----------|-----------------------------------------------------|
/// | `jrec`   | product  | τ_{n+3}τ_n = τ_{n+2}² + τ_{n+1}² + J                |
/// | `nrec`   | explicit | τ_{n+3} = N τ_{n+2}τ_{n+1} − τ_n                    |
/// | `somos`  | product  | τ_{n+k}τ_n = Σ_{j=1}^{⌊k/2⌋} τ_{n+k−j}τ_{n+j}, k≥4  |
/// | `somos4` | product  | τ_{n+4}τ_n = α τ_{n+3}τ_{n+1} + β τ_{n+2}²          |
/// | `integ`  | product  | x_{n+1}x_{n−1} = x_n² + z0² + J                     |
/// | `linear` | explicit | x_{n+1} = N z0 x_n − x_{n−1}                        |
pub fn make_builtin(name: &str, params: &[(&str, ParamValue)]) -> Result<RecurrenceDef, EngineError> {
    let (order, form, rhs, names): (usize, Form, String, Vec<&str>) = match name {
        "jrec" => (3, Form::Product, "w2^2 + w1^2 + J".into(), vec!["J"]),
        "nrec" => (3, Form::Explicit, "N*w2*w1 - w0".into(), vec!["N"]),
        "somos4" => (
            4,
            Form::Product,
            "alpha*w3*w1 + beta*w2^2".into(),
            vec!["alpha", "beta"],
        ),
        "integ" => (2, Form::Product, "w1^2 + z0^2 + J".into(), vec!["z0", "J"]),
        "linear" => (2, Form::Explicit, "N*z0*w1 - w0".into(), vec!["N", "z0"]),
        "somos" => {
            let k = need_exact_int(name, params, "k")?;
            if !(4..=MAX_VARS).contains(&k) {
                return Err(EngineError::BadArity(format!(
                    "somos(k) needs 4 <= k <= {MAX_VARS}, got {k}"
                )));
            }
            let rhs: Vec<String> = (1..=k / 2).map(|j| format!("w{}*w{}", k - j, j)).collect();
            (k, Form::Product, rhs.join(" + "), vec![])
        }
        _ => return Err(EngineError::UnknownName(name.to_owned())),
    };
    for (p, _) in params {
        if !names.contains(p) && !(name == "somos" && *p == "k") {
            return Err(EngineError::UnknownParameter {
                recurrence: name.to_owned(),
                param: (*p).to_owned(),
            });
        }
    }
    let resolved: Vec<(String, ParamValue)> = names
        .iter()
        .map(|n| {
            let v = params
                .iter()
                .find(|p| p.0 == *n)
                .map(|p| p.1.clone())
                .unwrap_or(ParamValue::Symbolic);
            ((*n).to_owned(), v)
        })
        .collect();
    let label = match name {
        "somos" => format!("somos{order}"),
        _ => name.to_owned(),
    };
    RecurrenceDef::custom(&label, order, form, &rhs, resolved)
}

impl fmt::Display for RecurrenceDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.order;
        match self.form {
            Form::Product => write!(f, "w{k}*w0 = {}", self.rhs)?,
            Form::Explicit => write!(f, "w{k} = {}", self.rhs)?,
        }
        for (name, v) in &self.params {
            match v {
                ParamValue::Exact(r) => write!(f, ", {name}={r}")?,
                ParamValue::Symbolic => write!(f, ", {name} symbolic")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jrec_shape() {
        let d = make_builtin("jrec", &[("J", ParamValue::int(0))]).unwrap();
        assert_eq!(d.order(), 3);
        assert_eq!(d.form(), Form::Product);
        assert_eq!(d.rhs().to_string(), "w1^2 + w2^2 + J");
        assert_eq!(d.param("J"), Some(&ParamValue::int(0)));
    }

    #[test]
    fn somos4_shape() {
        let d = make_builtin("somos4", &[("alpha", ParamValue::int(1)), ("beta", ParamValue::int(1))])
            .unwrap();
        assert_eq!(d.order(), 4);
        assert_eq!(d.form(), Form::Product);
        assert_eq!(d.rhs().to_string(), "w1*w3*alpha + w2^2*beta");
    }

    #[test]
    fn linear_is_explicit_and_evaluates() {
        let d = make_builtin("linear", &[("N", ParamValue::int(3)), ("z0", ParamValue::int(1))])
            .unwrap();
        assert_eq!(d.form(), Form::Explicit);
        assert!(d.is_reversible());
        let params = d.param_values(&BigInt::from(0), &[]).unwrap().unwrap();
        // x_{n+1} = 3 x_n − x_{n−1}
        let next = d.step_forward(&[BigInt::from(2), BigInt::from(5)], &params).unwrap();
        assert_eq!(next, BigInt::from(13));
    }

    #[test]
    fn somos_family() {
        let d = make_builtin("somos", &[("k", ParamValue::int(6))]).unwrap();
        assert_eq!(d.name(), "somos6");
        assert_eq!(d.rhs().term_count(), 3);
        assert!(matches!(
            make_builtin("somos", &[("k", ParamValue::int(3))]),
            Err(EngineError::BadArity(_))
        ));
        assert!(matches!(make_builtin("somos", &[]), Err(EngineError::BadArity(_))));
    }

    #[test]
    fn rejects_unknowns() {
        assert!(matches!(make_builtin("fib", &[]), Err(EngineError::UnknownName(_))));
        assert!(matches!(
            make_builtin("jrec", &[("N", ParamValue::int(1))]),
            Err(EngineError::UnknownParameter { .. })
        ));
        assert!(matches!(
            RecurrenceDef::custom("bad", 3, Form::Product, "w0*w1", vec![]),
            Err(EngineError::InvalidTemplate(_))
        ));
        assert!(matches!(
            RecurrenceDef::custom("bad", 3, Form::Explicit, "w3", vec![]),
            Err(EngineError::Kernel(_))
        ));
    }

    #[test]
    fn explicit_inverse_detection() {
        let d = RecurrenceDef::custom("sq", 2, Form::Explicit, "w0^2 + w1", vec![]).unwrap();
        assert!(!d.is_reversible());
        let d = make_builtin("nrec", &[]).unwrap();
        assert!(d.is_reversible());
    }
}
