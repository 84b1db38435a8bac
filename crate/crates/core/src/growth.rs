//! Heights, log-height growth, degree growth and entropy estimates.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::kernel::{bigint_log, Rational, UniPoly};
use crate::recurrence::{make_builtin, Orbit, ParamValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("need at least {need} values, got {got}")]
    TooShort { need: usize, got: usize },
    #[error("sequence is not monotone at index {0}")]
    NotMonotone(i64),
    #[error("sequence has a non-positive value at index {0}")]
    NonPositive(i64),
    #[error("{0}")]
    BadParameter(String),
}

/// Smallest orbit length accepted by [`growth_report`].
pub const MIN_ORBIT: usize = 8;

/// H(p/q) = max(|p|, |q|).
pub fn height(x: &Rational) -> BigInt {
    let p = x.numer().abs();
    if &p > x.denom() {
        p
    } else {
        x.denom().clone()
    }
}

pub fn log_height(x: &Rational) -> f64 {
    bigint_log(&height(x))
}

/// Log-heights Λ_n of a rational or integer sequence, with the exact
/// heights kept alongside.
#[derive(Debug, Clone, Serialize)]
pub struct HeightSeries {
    pub indices: Vec<i64>,
    pub lambda: Vec<f64>,
    #[serde(serialize_with = "crate::io::ser_bigints")]
    pub heights: Vec<BigInt>,
}

impl HeightSeries {
    pub fn from_heights(offset: i64, heights: Vec<BigInt>) -> Self {
        HeightSeries {
            indices: (0..heights.len() as i64).map(|i| offset + i).collect(),
            lambda: heights.iter().map(bigint_log).collect(),
            heights,
        }
    }

    pub fn from_integers(offset: i64, values: &[BigInt]) -> Self {
        let h = values
            .iter()
            .map(|v| if v.is_zero() { BigInt::one() } else { v.abs() })
            .collect();
        Self::from_heights(offset, h)
    }

    pub fn from_rationals(offset: i64, values: &[Rational]) -> Self {
        Self::from_heights(offset, values.iter().map(height).collect())
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }
}

impl From<&Orbit<BigInt>> for HeightSeries {
    fn from(o: &Orbit<BigInt>) -> Self {
        Self::from_integers(o.offset, &o.values)
    }
}

impl From<&Orbit<Rational>> for HeightSeries {
    fn from(o: &Orbit<Rational>) -> Self {
        Self::from_rationals(o.offset, &o.values)
    }
}

/// Λ_{n+3} − 2Λ_{n+2} + Λ_n, computed as log(1 + D/B) with
/// B = H_{n+2}² and D = H_{n+3}H_n − B exact, so that values far below
/// the f64 range keep their sign and logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondDiff {
    pub n: i64,
    /// The difference itself; may underflow to 0.
    pub value: f64,
    /// log |value|, −∞ iff the difference is exactly 0.
    pub log_abs: f64,
    /// Exact sign: −1, 0 or 1.
    pub sign: i8,
}

fn second_diff(n: i64, h0: &BigInt, h2: &BigInt, h3: &BigInt) -> SecondDiff {
    let b = h2 * h2;
    let d = h3 * h0 - &b;
    let sign = match d.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    };
    if sign == 0 {
        return SecondDiff {
            n,
            value: 0.0,
            log_abs: f64::NEG_INFINITY,
            sign,
        };
    }
    // log |D/B|
    let lr = bigint_log(&d.abs()) - bigint_log(&b);
    let s = f64::from(sign);
    let (value, log_abs) = if lr < -40.0 {
        // log(1+r) = r(1 − r/2 + …) and r/2 < 1e-17
        (s * lr.exp(), lr)
    } else {
        let v = (s * lr.exp()).ln_1p();
        (v, v.abs().ln())
    };
    SecondDiff {
        n,
        value,
        log_abs,
        sign,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GrowthVerdict {
    DiophantineIntegrable,
    /// Estimated growth rate λ ≥ 1 of Λ_n.
    NonIntegrable(f64),
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub series: HeightSeries,
    /// Λ_{n+1}/Λ_n, one entry per n with both values; `None` if Λ_n = 0.
    pub ratios: Vec<Option<f64>>,
    pub second_diffs: Vec<SecondDiff>,
    /// (log Λ_n)/n, `None` where undefined.
    pub slopes: Vec<Option<f64>>,
    /// Λ_n/φⁿ, the empirical constant in Λ_n ∼ Cφⁿ.
    pub c_estimates: Vec<f64>,
    /// Local exponents d log Λ / d log n over the two halves of the tail
    /// window.
    pub tail_exponents: Option<(f64, f64)>,
    pub verdict: GrowthVerdict,
}

impl GrowthReport {
    /// Ratio Λ_{n+1}/Λ_n at sequence index n.
    pub fn ratio_at(&self, n: i64) -> Option<f64> {
        let i = n - self.series.indices.first()?;
        self.ratios.get(usize::try_from(i).ok()?).copied().flatten()
    }

    pub fn lambda_at(&self, n: i64) -> Option<f64> {
        let i = n - self.series.indices.first()?;
        self.series.lambda.get(usize::try_from(i).ok()?).copied()
    }
}

fn local_exponent(series: &HeightSeries, a: usize, b: usize) -> Option<f64> {
    let (na, nb) = (series.indices[a], series.indices[b]);
    let (la, lb) = (series.lambda[a], series.lambda[b]);
    if na < 1 || nb <= na || la <= 0.0 || lb <= 0.0 {
        return None;
    }
    Some((lb.ln() - la.ln()) / ((nb as f64).ln() - (na as f64).ln()))
}

/// Analyses the height growth of a sequence.
///
/// The verdict is a finite-window proxy for boundedness of
/// (log Λ_n)/log n. Over the tail window (the last third of the
/// indices, at least four points) the local exponent
/// e = Δlog Λ/Δlog n is taken on each half. Polynomial growth keeps e
/// roughly constant; exponential growth makes e proportional to n. The
/// sequence is NonIntegrable when e grows by more than the square root
/// of the ratio of the two half-window midpoints.
pub fn growth_report(series: HeightSeries) -> Result<GrowthReport, GrowthError> {
    let len = series.len();
    if len < MIN_ORBIT {
        return Err(GrowthError::TooShort {
            need: MIN_ORBIT,
            got: len,
        });
    }
    let lam = &series.lambda;
    let ratios = lam
        .windows(2)
        .map(|w| (w[0] > 0.0).then(|| w[1] / w[0]))
        .collect();
    let second_diffs = (0..len - 3)
        .map(|i| {
            let h = &series.heights;
            second_diff(series.indices[i], &h[i], &h[i + 2], &h[i + 3])
        })
        .collect();
    let slopes = series
        .indices
        .iter()
        .zip(lam)
        .map(|(&n, &l)| (n > 0 && l > 0.0).then(|| l.ln() / n as f64))
        .collect();
    let log_phi = golden_ratio().ln();
    let c_estimates = series
        .indices
        .iter()
        .zip(lam)
        .map(|(&n, &l)| l / (n as f64 * log_phi).exp())
        .collect();

    let tail = (len / 3).max(4);
    let start = len - tail;
    let mid = start + tail / 2;
    let tail_exponents = local_exponent(&series, start, mid).zip(local_exponent(&series, mid, len - 1));
    let mut verdict = GrowthVerdict::DiophantineIntegrable;
    if let Some((e1, e2)) = tail_exponents {
        let m1 = (series.indices[start] + series.indices[mid]) as f64 / 2.0;
        let m2 = (series.indices[mid] + series.indices[len - 1]) as f64 / 2.0;
        if e2 > 0.0 && e2 > e1.max(0.0) * (m2 / m1).sqrt() {
            let last = lam[len - 2];
            let rate = if last > 0.0 { lam[len - 1] / last } else { 1.0 };
            verdict = GrowthVerdict::NonIntegrable(rate.max(1.0));
        }
    }
    Ok(GrowthReport {
        series,
        ratios,
        second_diffs,
        slopes,
        c_estimates,
        tail_exponents,
        verdict,
    })
}

/// φ = (1 + √5)/2.
pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// The characteristic polynomial λ³ − 2λ² + 1 of the log-height
/// asymptotics and its factorisation.
#[derive(Debug, Clone, Serialize)]
pub struct GoldenMean {
    pub phi: f64,
    pub log_phi: f64,
    /// 1, φ, −1/φ.
    pub roots: [f64; 3],
    pub characteristic: String,
    pub factors: [String; 2],
}

pub fn golden_mean() -> GoldenMean {
    let ch = UniPoly::from_i64("lambda", &[1, 0, -2, 1]);
    let lin = UniPoly::from_i64("lambda", &[-1, 1]);
    let quad = UniPoly::from_i64("lambda", &[-1, -1, 1]);
    debug_assert_eq!(&lin * &quad, ch);
    let phi = golden_ratio();
    GoldenMean {
        phi,
        log_phi: phi.ln(),
        roots: [1.0, phi, -1.0 / phi],
        characteristic: ch.to_string(),
        factors: [lin.to_string(), quad.to_string()],
    }
}

/// f₀ = 0, f₁ = 1, f_{n+2} = f_{n+1} + f_n.
pub fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

fn fib_usize(n: usize) -> usize {
    usize::try_from(fibonacci(n)).expect("Fibonacci index too large")
}

/// p_n(N) for n = 0..=upto: the nrec orbit from (1, 1, 1).
pub fn p_values(n: &Rational, upto: usize) -> Vec<Rational> {
    let def = make_builtin("nrec", &[("N", ParamValue::Exact(n.clone()))]).expect("builtin");
    let one = Rational::one();
    let o = def
        .iterate(&[one.clone(), one.clone(), one], upto.saturating_sub(2))
        .expect("nrec is total");
    o.values.into_iter().take(upto + 1).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub n: usize,
    /// (N−1)^{f_n−1} < p_n(N)
    pub lower: bool,
    /// p_n(N) < N^{f_n−1}
    pub upper: bool,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.lower && self.upper
    }
}

/// Checks (N−1)^{f_n−1} < p_n(N) < N^{f_n−1} exactly for n in `range`.
pub fn check_bounds(n: &Rational, range: RangeInclusive<usize>) -> Result<Vec<BoundCheck>, GrowthError> {
    if *n <= Rational::from_integer(2.into()) {
        return Err(GrowthError::BadParameter(format!("bounds need N > 2, got {n}")));
    }
    if *range.start() < 4 {
        return Err(GrowthError::BadParameter("bounds need n >= 4".into()));
    }
    let p = p_values(n, *range.end());
    let nm1 = n - Rational::one();
    Ok(range
        .map(|k| {
            let e = fib_usize(k) - 1;
            BoundCheck {
                n: k,
                lower: Pow::pow(&nm1, e) < p[k],
                upper: p[k] < Pow::pow(n, e),
            }
        })
        .collect())
}

/// Smallest p ≥ 1 with s[i + p] = s[i] for all valid i, if the sequence
/// shows at least two full periods.
pub fn minimal_period<T: PartialEq>(s: &[T]) -> Option<usize> {
    (1..=s.len() / 2).find(|&p| (p..s.len()).all(|i| s[i] == s[i - p]))
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialValues {
    pub at: i64,
    #[serde(serialize_with = "crate::io::ser_bigints")]
    pub values: Vec<BigInt>,
    pub period: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignPattern {
    pub at: i64,
    /// n with p_n(N) < 0.
    pub negative: Vec<usize>,
    /// p_n(N) < 0 exactly when 3 | n, for 0 < n.
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    /// deg p_n, `None` for the zero polynomial.
    pub degrees: Vec<Option<usize>>,
    /// f_n − 1 for n ≥ 1 (entry 0 unused and set to 0).
    pub fibonacci_reference: Vec<usize>,
    pub degree_law: bool,
    /// d_{n+3} = d_{n+2} + d_{n+1} + 1 throughout.
    pub degree_recurrence: bool,
    /// Monicity of p_n for n ≥ 1.
    pub monic: Vec<bool>,
    pub special_values: Vec<SpecialValues>,
    pub sign_patterns: Vec<SignPattern>,
}

pub const SPECIAL_POINTS: [i64; 4] = [-1, 0, 1, 2];
pub const SIGN_POINTS: [i64; 4] = [-2, -3, -4, -5];

/// Checks degree growth, monicity and the special-value structure of the
/// polynomials p_n(N), given as the nrec orbit from (1, 1, 1) with N
/// symbolic.
pub fn degree_report(orbit: &Orbit<UniPoly>) -> DegreeReport {
    let polys = &orbit.values;
    let degrees: Vec<Option<usize>> = polys.iter().map(|p| p.degree().finite()).collect();
    let fibonacci_reference: Vec<usize> = (0..polys.len())
        .map(|n| if n == 0 { 0 } else { fib_usize(n) - 1 })
        .collect();
    let degree_law = (1..polys.len()).all(|n| degrees[n] == Some(fibonacci_reference[n]));
    let degree_recurrence = degrees.windows(4).all(|w| match (w[0], w[1], w[2], w[3]) {
        (Some(_), Some(d1), Some(d2), Some(d3)) => d3 == d2 + d1 + 1,
        _ => false,
    });
    let monic = polys.iter().skip(1).map(UniPoly::is_monic).collect();
    let special_values = SPECIAL_POINTS
        .iter()
        .map(|&at| {
            let values: Vec<BigInt> = polys.iter().map(|p| p.eval_int(&at.into())).collect();
            SpecialValues {
                at,
                period: minimal_period(&values),
                values,
            }
        })
        .collect();
    let sign_patterns = SIGN_POINTS
        .iter()
        .map(|&at| {
            let negative: Vec<usize> = polys
                .iter()
                .enumerate()
                .filter(|(_, p)| p.eval_int(&at.into()).is_negative())
                .map(|(n, _)| n)
                .collect();
            let holds = (1..polys.len()).all(|n| negative.contains(&n) == (n % 3 == 0));
            SignPattern { at, negative, holds }
        })
        .collect();
    DegreeReport {
        degrees,
        fibonacci_reference,
        degree_law,
        degree_recurrence,
        monic,
        special_values,
        sign_patterns,
    }
}

/// Least-squares slope of log v_n against n, for a non-decreasing run of
/// positive values `v_start, v_start+1, …` of length at least 10.
pub fn entropy_estimate(start: i64, values: &[f64]) -> Result<f64, GrowthError> {
    const NEED: usize = 10;
    if values.len() < NEED {
        return Err(GrowthError::TooShort {
            need: NEED,
            got: values.len(),
        });
    }
    for (i, &v) in values.iter().enumerate() {
        let n = start + i as i64;
        if !(v > 0.0) {
            return Err(GrowthError::NonPositive(n));
        }
        if i > 0 && v < values[i - 1] {
            return Err(GrowthError::NotMonotone(n));
        }
    }
    let m = values.len() as f64;
    let xs: Vec<f64> = (0..values.len()).map(|i| (start + i as i64) as f64).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let xbar = xs.iter().sum::<f64>() / m;
    let ybar = ys.iter().sum::<f64>() / m;
    let (sxy, sxx) = xs
        .iter()
        .zip(&ys)
        .fold((0.0, 0.0), |(sxy, sxx), (x, y)| {
            (sxy + (x - xbar) * (y - ybar), sxx + (x - xbar) * (x - xbar))
        });
    Ok(sxy / sxx)
}
