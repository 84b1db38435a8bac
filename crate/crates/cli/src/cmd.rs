use std::io::Write;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use recur_core::confinement::{self, ConfinementVerdict, ProbeConfig};
use recur_core::growth::{self, GrowthVerdict, HeightSeries};
use recur_core::io;
use recur_core::kernel::{BigInt, LaurentPoly, Rational, UniPoly, VarSet};
use recur_core::par::{self, Exec};
use recur_core::recurrence::{
    coprimality_probe, laurent_certificate, make_builtin, EngineError, Form, Orbit, ParamValue, RecurrenceDef,
};
use recur_core::surface::{self, Direction, SurfaceParams, Triple, TripleVerdict};

use crate::{open_output, rational_arg, usage, CliError, Common, Format, Outcome};

/// Which recurrence to run.
#[derive(Args, Debug, Clone)]
pub struct RecArgs {
    /// jrec, nrec, somos, somos4, integ, linear, or custom
    #[arg(long)]
    pub rec: String,
    /// Parameters as name=value; repeat or separate with commas.
    /// `name=sym` keeps a parameter symbolic.
    #[arg(long = "param", value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Vec<String>,
    /// Right-hand side of a custom recurrence in the slots w0, w1, …
    #[arg(long)]
    pub rhs: Option<String>,
    /// Order of a custom recurrence
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum)]
    pub form: Option<FormArg>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FormArg {
    Product,
    Explicit,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainArg {
    Integer,
    Rational,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum DirectionArg {
    Forward,
    Backward,
}

fn parse_params(raw: &[String]) -> Result<Vec<(String, ParamValue)>, CliError> {
    let mut out: Vec<(String, ParamValue)> = Vec::new();
    for p in raw.iter().filter(|p| !p.trim().is_empty()) {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| usage(format!("parameter {p:?} is not name=value")))?;
        let v = match v.trim() {
            "sym" | "symbolic" => ParamValue::Symbolic,
            t => ParamValue::Exact(rational_arg(t).map_err(|e| usage(format!("parameter {k}: {e}")))?),
        };
        let k = k.trim().to_owned();
        // later occurrences win, so the command line overrides a config file
        out.retain(|(name, _)| *name != k);
        out.push((k, v));
    }
    Ok(out)
}

fn engine_usage(e: EngineError) -> CliError {
    usage(format!("error: {e}"))
}

fn build_def(rec: &RecArgs) -> Result<RecurrenceDef, CliError> {
    let params = parse_params(&rec.params)?;
    if rec.rec == "custom" {
        let (Some(order), Some(form), Some(rhs)) = (rec.order, rec.form, rec.rhs.as_deref()) else {
            return Err(usage("custom recurrences need --order, --form and --rhs"));
        };
        let form = match form {
            FormArg::Product => Form::Product,
            FormArg::Explicit => Form::Explicit,
        };
        return RecurrenceDef::custom("custom", order, form, rhs, params).map_err(engine_usage);
    }
    if rec.rhs.is_some() || rec.order.is_some() || rec.form.is_some() {
        return Err(usage("--rhs, --order and --form only apply to --rec custom"));
    }
    let refs: Vec<(&str, ParamValue)> = params.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    make_builtin(&rec.rec, &refs).map_err(engine_usage)
}

fn to_integers(xs: &[Rational]) -> Result<Vec<BigInt>, CliError> {
    xs.iter()
        .map(|x| {
            x.is_integer()
                .then(|| x.to_integer())
                .ok_or_else(|| usage(format!("initial value {x} is not an integer; use --domain rational")))
        })
        .collect()
}

fn diagnostic(common: &Common, kind: &str, msg: String) -> Result<Outcome, CliError> {
    let mut out = open_output(common)?;
    io::write_json(&mut out, &io::envelope("error", json!({ "error": kind, "message": msg })))?;
    out.flush()?;
    Ok(Outcome::Failed)
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Ok
    } else {
        Outcome::Failed
    }
}

#[derive(Args, Debug)]
pub struct IterateArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub rec: RecArgs,
    /// Initial values τ_0, …, τ_{k-1}
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg, required = true)]
    pub init: Vec<Rational>,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = DomainArg::Integer)]
    pub domain: DomainArg,
    /// Iterate backwards from the initial window
    #[arg(long)]
    pub backward: bool,
}

fn run_orbit<V: recur_core::recurrence::Value>(
    def: &RecurrenceDef,
    init: &[V],
    steps: usize,
    backward: bool,
) -> Result<Orbit<V>, CliError> {
    let orbit = if backward {
        def.iterate_backward(init, steps, &[])
    } else {
        def.iterate(init, steps)
    };
    orbit.map_err(engine_usage)
}

fn emit_orbit<V: recur_core::recurrence::Value>(
    common: &Common,
    def: &RecurrenceDef,
    orbit: &Orbit<V>,
) -> Result<Outcome, CliError> {
    let mut out = open_output(common)?;
    match common.format {
        Format::Json => io::write_json(&mut out, &io::orbit_json(def, orbit))?,
        Format::Csv => io::write_orbit_csv(&mut out, orbit)?,
    }
    out.flush()?;
    Ok(outcome(orbit.is_clean()))
}

pub fn iterate(a: IterateArgs) -> Result<Outcome, CliError> {
    let def = build_def(&a.rec)?;
    match a.domain {
        DomainArg::Integer => {
            let init = to_integers(&a.init)?;
            let o = run_orbit(&def, &init, a.steps, a.backward)?;
            emit_orbit(&a.common, &def, &o)
        }
        DomainArg::Rational => {
            let o = run_orbit(&def, &a.init, a.steps, a.backward)?;
            emit_orbit(&a.common, &def, &o)
        }
    }
}

#[derive(Args, Debug)]
pub struct LaurentArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub rec: RecArgs,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    /// Random points per coprimality pair
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Last index included in the coprimality probe (default 6)
    #[arg(long)]
    pub window: Option<usize>,
    /// Include every iterate in text form
    #[arg(long)]
    pub iterates: bool,
}

fn monomial_text(vars: &VarSet, exps: &[i32]) -> String {
    let parts: Vec<String> = vars
        .names()
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e != 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// J as an element of the certificate ring, when the recurrence has it.
fn shift_poly(def: &RecurrenceDef, vars: &VarSet) -> Option<LaurentPoly> {
    match def.param("J")? {
        ParamValue::Symbolic => LaurentPoly::var(vars, "J").ok(),
        ParamValue::Exact(r) if r.is_integer() => Some(LaurentPoly::constant(vars, r.to_integer())),
        ParamValue::Exact(_) => None,
    }
}

pub fn laurent(a: LaurentArgs) -> Result<Outcome, CliError> {
    let def = build_def(&a.rec)?;
    if def.form() != Form::Product {
        return Err(usage("laurent certificates need a product-form recurrence"));
    }
    let cert = laurent_certificate(&def, a.steps).map_err(engine_usage)?;
    let values = &cert.orbit.values;
    let window = a.window.unwrap_or(6).min(values.len().saturating_sub(1));
    let shift = shift_poly(&def, &cert.vars);
    let pairs = if values.len() > 1 {
        coprimality_probe(values, cert.orbit.offset, window, a.trials, a.seed, shift.as_ref(), Exec::Parallel)
    } else {
        Vec::new()
    };
    let mut out = open_output(&a.common)?;
    match a.common.format {
        Format::Json => {
            let entries: Vec<Value> = cert
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "index": e.index,
                        "term_count": e.stats.term_count,
                        "denominator_monomial": e.stats.denominator_monomial,
                        "denominator": monomial_text(&cert.vars, &e.stats.denominator_monomial),
                        "max_degree_per_variable": e.stats.max_degree_per_variable,
                    })
                })
                .collect();
            let mut doc = io::envelope(
                "laurent",
                json!({
                    "recurrence": io::recurrence_json(&def),
                    "vars": cert.vars.names(),
                    "laurent": cert.laurent,
                    "failure": cert.failure,
                    "entries": entries,
                    "coprimality": pairs,
                    "all_probably_coprime": pairs.iter().all(|p| p.probably_coprime),
                }),
            );
            if a.iterates {
                doc["iterates"] = json!(values.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            io::write_json(&mut out, &doc)?;
        }
        Format::Csv => {
            writeln!(out, "n,term_count,denominator,max_degrees")?;
            for e in &cert.entries {
                writeln!(
                    out,
                    "{},{},{},{}",
                    e.index,
                    e.stats.term_count,
                    monomial_text(&cert.vars, &e.stats.denominator_monomial),
                    monomial_text(&cert.vars, &e.stats.max_degree_per_variable),
                )?;
            }
        }
    }
    out.flush()?;
    Ok(outcome(cert.laurent))
}

#[derive(Args, Debug)]
pub struct TriplesArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long = "N", value_parser = rational_arg, allow_hyphen_values = true)]
    pub n: Rational,
    #[arg(long = "J", value_parser = rational_arg, allow_hyphen_values = true)]
    pub j: Rational,
    #[arg(long = "seed-triple", value_delimiter = ',', value_parser = rational_arg, allow_hyphen_values = true, required = true)]
    pub seed_triple: Vec<Rational>,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
    pub direction: DirectionArg,
    /// Keep z fixed and run the linear recurrence in x instead
    #[arg(long)]
    pub fixed_z: bool,
}

fn triple_arg(xs: &[Rational]) -> Result<Triple, CliError> {
    match xs {
        [x, y, z] => Ok(Triple::new(x.clone(), y.clone(), z.clone())),
        _ => Err(usage(format!("a triple needs 3 values, got {}", xs.len()))),
    }
}

pub fn triples(a: TriplesArgs) -> Result<Outcome, CliError> {
    let seed = triple_arg(&a.seed_triple)?;
    let s = SurfaceParams::new(a.n.clone(), a.j.clone());
    let head = json!({
        "N": s.n.to_string(),
        "J": s.j.to_string(),
        "singular": surface::surface_singular(&s),
        "degeneracy": surface::degenerate_check(&s),
    });
    if a.fixed_z {
        let fam = match surface::fixed_z_family(&seed, &s, a.count) {
            Ok(f) => f,
            Err(e) => return diagnostic(&a.common, "surface", e.to_string()),
        };
        let mut out = open_output(&a.common)?;
        match a.common.format {
            Format::Json => {
                let mut doc = io::envelope("fixed_z_family", &fam);
                doc["surface"] = head;
                io::write_json(&mut out, &doc)?;
            }
            Format::Csv => io::write_triples_csv(&mut out, None, &fam.triples, &s)?,
        }
        out.flush()?;
        return Ok(Outcome::Ok);
    }
    let dir = match a.direction {
        DirectionArg::Forward => Direction::Forward,
        DirectionArg::Backward => Direction::Backward,
    };
    let run = match surface::generate_triples(&seed, &s, a.count, dir) {
        Ok(r) => r,
        Err(e) => return diagnostic(&a.common, "surface", e.to_string()),
    };
    let mut out = open_output(&a.common)?;
    match a.common.format {
        Format::Json => {
            let mut doc = io::envelope("triples", &run);
            doc["surface"] = head;
            io::write_json(&mut out, &doc)?;
        }
        Format::Csv => io::write_triples_csv(&mut out, Some(&run.seed), &run.triples, &s)?,
    }
    out.flush()?;
    Ok(outcome(!matches!(run.verdict, TripleVerdict::FatalDegenerate(_))))
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub common: Common,
    /// Recurrence for height growth (omit with --degrees)
    #[arg(long)]
    pub rec: Option<String>,
    #[arg(long = "param", value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Vec<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg)]
    pub init: Vec<Rational>,
    #[arg(long, default_value_t = 30)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = DomainArg::Integer)]
    pub domain: DomainArg,
    /// Degree growth of p_n(N), the nrec orbit with N symbolic, up to n = steps
    #[arg(long)]
    pub degrees: bool,
}

/// Entropy slope over the last max(10, len/3) positive values.
fn tail_entropy(start: i64, values: &[f64]) -> Option<f64> {
    let take = (values.len() / 3).max(10).min(values.len());
    let from = values.len() - take;
    growth::entropy_estimate(start + from as i64, &values[from..]).ok()
}

pub fn growth(a: GrowthArgs) -> Result<Outcome, CliError> {
    if a.degrees {
        let def = make_builtin("nrec", &[]).map_err(engine_usage)?;
        let one = UniPoly::constant("N", BigInt::from(1));
        let steps = a.steps.saturating_sub(2);
        let o = def
            .iterate_with(&[one.clone(), one.clone(), one], steps, &[("N", UniPoly::x("N"))])
            .map_err(engine_usage)?;
        let rep = growth::degree_report(&o);
        let degs: Vec<f64> = rep.degrees.iter().map(|d| d.unwrap_or(0) as f64).collect();
        // degrees vanish for n ≤ 2
        let entropy = (degs.len() > 3).then(|| tail_entropy(3, &degs[3..])).flatten();
        let mut out = open_output(&a.common)?;
        match a.common.format {
            Format::Json => {
                let doc = io::envelope(
                    "degrees",
                    json!({
                        "report": rep,
                        "entropy": entropy,
                        "golden_mean": growth::golden_mean(),
                        "polynomials": o.values.iter().take(8).map(ToString::to_string).collect::<Vec<_>>(),
                    }),
                );
                io::write_json(&mut out, &doc)?;
            }
            Format::Csv => {
                writeln!(out, "n,degree,fibonacci_minus_one,monic")?;
                for (n, d) in rep.degrees.iter().enumerate() {
                    let monic = if n == 0 { String::new() } else { rep.monic[n - 1].to_string() };
                    let deg = d.map_or_else(String::new, |d| d.to_string());
                    let fib = if n == 0 { String::new() } else { rep.fibonacci_reference[n].to_string() };
                    writeln!(out, "{n},{deg},{fib},{monic}")?;
                }
            }
        }
        out.flush()?;
        let ok = rep.degree_law && rep.degree_recurrence && rep.monic.iter().all(|&m| m);
        return Ok(outcome(ok));
    }
    let rec = RecArgs {
        rec: a.rec.clone().ok_or_else(|| usage("growth needs --rec (or --degrees)"))?,
        params: a.params.clone(),
        rhs: None,
        order: None,
        form: None,
    };
    let def = build_def(&rec)?;
    let (series, clean, failure) = match a.domain {
        DomainArg::Integer => {
            let o = run_orbit(&def, &to_integers(&a.init)?, a.steps, false)?;
            (HeightSeries::from(&o), o.is_clean(), o.failure)
        }
        DomainArg::Rational => {
            let o = run_orbit(&def, &a.init, a.steps, false)?;
            (HeightSeries::from(&o), o.is_clean(), o.failure)
        }
    };
    let rep = match growth::growth_report(series) {
        Ok(r) => r,
        Err(e) => return diagnostic(&a.common, "growth", e.to_string()),
    };
    let positive: Vec<f64> = rep.series.lambda.iter().copied().skip_while(|&l| l <= 0.0).collect();
    let start = rep.series.indices[rep.series.len() - positive.len().min(rep.series.len())];
    let entropy = tail_entropy(start, &positive);
    let mut out = open_output(&a.common)?;
    match a.common.format {
        Format::Json => {
            let doc = io::envelope(
                "growth",
                json!({
                    "recurrence": io::recurrence_json(&def),
                    "failure": failure,
                    "verdict": rep.verdict,
                    "lambda_estimate": match rep.verdict {
                        GrowthVerdict::NonIntegrable(l) => Some(l),
                        GrowthVerdict::DiophantineIntegrable => None,
                    },
                    "entropy": entropy,
                    "golden_mean": growth::golden_mean(),
                    "report": rep,
                }),
            );
            io::write_json(&mut out, &doc)?;
        }
        Format::Csv => io::write_growth_csv(&mut out, &rep)?,
    }
    out.flush()?;
    Ok(outcome(clean))
}

#[derive(Args, Debug)]
pub struct ConfineArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub x: Rational,
    #[arg(long = "J", value_parser = rational_arg, allow_hyphen_values = true)]
    pub j: Rational,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, default_value = "1")]
    pub w: Rational,
    /// Truncation order K of the series
    #[arg(long, default_value_t = 8)]
    pub order: usize,
    /// Do not retry with order 2K when the series run out of precision
    #[arg(long)]
    pub no_extend: bool,
    /// Iterates to follow beyond τ_{n+6}
    #[arg(long, default_value_t = 0)]
    pub extra: usize,
    /// Also compare with the rational orbit at this value of eps
    #[arg(long, value_parser = rational_arg)]
    pub eps: Option<Rational>,
}

pub fn confine(a: ConfineArgs) -> Result<Outcome, CliError> {
    let mut cfg = ProbeConfig::new(a.x.clone(), a.j.clone(), a.w.clone()).with_order(a.order);
    cfg.auto_extend = !a.no_extend;
    let rep = match confinement::probe(&cfg) {
        Ok(r) => r,
        Err(e) => return diagnostic(&a.common, "confinement", e.to_string()),
    };
    let cont = if a.extra > 0 {
        match confinement::continue_past(&cfg, a.extra) {
            Ok(c) => Some(c),
            Err(e) => return diagnostic(&a.common, "confinement", e.to_string()),
        }
    } else {
        None
    };
    let check = match &a.eps {
        Some(eps) => match confinement::numeric_check(&cfg, &rep, eps) {
            Ok(c) => Some(c),
            Err(e) => return diagnostic(&a.common, "confinement", e.to_string()),
        },
        None => None,
    };
    let confined = rep.verdict == ConfinementVerdict::Confined && cont.as_ref().is_none_or(|c| c.finite);
    let mut out = open_output(&a.common)?;
    match a.common.format {
        Format::Json => {
            let doc = io::envelope(
                "confinement",
                json!({
                    "config": {
                        "x": a.x.to_string(),
                        "J": a.j.to_string(),
                        "w": a.w.to_string(),
                        "order": a.order,
                    },
                    "report": rep,
                    "continuation": cont,
                    "numeric_check": check,
                }),
            );
            io::write_json(&mut out, &doc)?;
        }
        Format::Csv => {
            writeln!(out, "offset,power,coefficient")?;
            let terms = cont.as_ref().map_or(&rep.terms, |c| &c.terms);
            for t in terms {
                let v = t.series.valuation().unwrap_or(0);
                for (i, c) in t.series.coeffs().iter().enumerate() {
                    writeln!(out, "{},{},{}", t.offset, v + i as i64, c)?;
                }
            }
        }
    }
    out.flush()?;
    Ok(outcome(confined))
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// Values of N: comma-separated rationals or integer ranges a..b
    #[arg(long = "N", value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub n: Vec<String>,
    /// Values of J; by default each N gets the J that puts the seed on the surface
    #[arg(long = "J", value_delimiter = ',', allow_hyphen_values = true)]
    pub j: Vec<String>,
    #[arg(long = "seed-triple", value_delimiter = ',', value_parser = rational_arg, allow_hyphen_values = true, default_value = "1,1,1")]
    pub seed_triple: Vec<Rational>,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    /// Worker threads for the sweep cells (0: all cores, 1: sequential)
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

fn grid_values(raw: &[String]) -> Result<Vec<Rational>, CliError> {
    let mut out = Vec::new();
    for item in raw.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| usage(format!("bad range {item:?}")));
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if hi < lo {
                return Err(usage(format!("empty range {item:?}")));
            }
            out.extend((lo..=hi).map(|v| Rational::from_integer(v.into())));
        } else {
            out.push(rational_arg(item).map_err(usage)?);
        }
    }
    Ok(out)
}

pub fn sweep(a: SweepArgs) -> Result<Outcome, CliError> {
    let seed = triple_arg(&a.seed_triple)?;
    let ns = grid_values(&a.n)?;
    let js = grid_values(&a.j)?;
    let cells: Vec<SurfaceParams> = if js.is_empty() {
        ns.iter()
            .map(|n| SurfaceParams::new(n.clone(), surface::invariant_j(&seed, n)))
            .collect()
    } else {
        ns.iter()
            .flat_map(|n| js.iter().map(move |j| SurfaceParams::new(n.clone(), j.clone())))
            .collect()
    };
    let exec = if a.jobs == 1 { Exec::Sequential } else { Exec::Parallel };
    let results = par::install(a.jobs, || surface::sweep(&cells, &seed, a.count, exec));
    let mut out = open_output(&a.common)?;
    match a.common.format {
        Format::Json => {
            let doc = io::envelope("sweep", json!({ "seed": seed, "count": a.count, "cells": results }));
            io::write_json(&mut out, &doc)?;
        }
        Format::Csv => {
            writeln!(out, "N,J,singular,degeneracy,verdict,max_bits")?;
            for c in &results {
                let degeneracy = match &c.degeneracy {
                    surface::Degeneracy::None => "none".to_string(),
                    surface::Degeneracy::FatalPossible(x) => format!("fatal_possible({x})"),
                };
                let verdict = match c.verdict {
                    None => "off_surface".to_string(),
                    Some(TripleVerdict::Growing) => "growing".into(),
                    Some(TripleVerdict::Periodic(p)) => format!("periodic({p})"),
                    Some(TripleVerdict::FatalDegenerate(i)) => format!("fatal_degenerate({i})"),
                };
                writeln!(out, "{},{},{},{},{},{}", c.n, c.j, c.singular, degeneracy, verdict, c.max_bits)?;
            }
        }
    }
    out.flush()?;
    Ok(Outcome::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_override_in_order() {
        let p = parse_params(&["J=0".into(), "J=1/2".into(), "N=sym".into()]).unwrap();
        assert_eq!(
            p,
            vec![
                ("J".to_string(), ParamValue::Exact(Rational::new(1.into(), 2.into()))),
                ("N".to_string(), ParamValue::Symbolic),
            ]
        );
        assert!(parse_params(&["J=1e3".into()]).is_err());
        assert!(parse_params(&["J".into()]).is_err());
    }

    #[test]
    fn grid_ranges() {
        let v = grid_values(&["3..5".into(), "1/2".into()]).unwrap();
        assert_eq!(v.len(), 4);
        assert!(grid_values(&["5..3".into()]).is_err());
    }
}
