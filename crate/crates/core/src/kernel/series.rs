//! Truncated Laurent series in ε over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::text::{parse_expr, write_term};
use super::{rational_sqrt, KernelError, Rational};

pub const DEFAULT_ORDER: usize = 8;

const VAR: &str = "eps";

/// `Σ coeffs[i]·ε^(valuation+i) + O(ε^(valuation+K))`.
///
/// `order` is the relative truncation order K; `None` marks an exact
/// series (finitely many terms, no error term). A series whose
/// significant coefficients have all cancelled is stored with no
/// coefficients and `valuation` equal to its absolute precision.
#[derive(Clone, PartialEq, Eq)]
pub struct EpsSeries {
    valuation: i64,
    coeffs: Vec<Rational>,
    order: Option<usize>,
}

impl EpsSeries {
    pub fn exact_zero() -> Self {
        EpsSeries {
            valuation: 0,
            coeffs: Vec::new(),
            order: None,
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::normalized(0, vec![c], None)
    }

    /// `c·ε^k`, exact.
    pub fn monomial(c: Rational, k: i64) -> Self {
        Self::normalized(k, vec![c], None)
    }

    /// The exact series ε.
    pub fn eps() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `Σ coeffs[i] ε^(valuation+i) + O(ε^(valuation+order))`.
    pub fn truncated(valuation: i64, coeffs: Vec<Rational>, order: usize) -> Self {
        Self::normalized(valuation, coeffs, Some(valuation + order as i64))
    }

    /// `O(ε^p)`.
    pub fn zero_to(p: i64) -> Self {
        EpsSeries {
            valuation: p,
            coeffs: Vec::new(),
            order: Some(0),
        }
    }

    /// Builds a canonical series from raw coefficients starting at `val`,
    /// with optional absolute precision.
    fn normalized(mut val: i64, mut coeffs: Vec<Rational>, abs_prec: Option<i64>) -> Self {
        if let Some(p) = abs_prec {
            let keep = (p - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match (lead, abs_prec) {
            (None, None) => Self::exact_zero(),
            (None, Some(p)) => Self::zero_to(p),
            (Some(i), None) => {
                coeffs.drain(..i);
                val += i as i64;
                while coeffs.last().is_some_and(Zero::is_zero) {
                    coeffs.pop();
                }
                EpsSeries {
                    valuation: val,
                    coeffs,
                    order: None,
                }
            }
            (Some(i), Some(p)) => {
                coeffs.drain(..i);
                val += i as i64;
                let k = (p - val) as usize;
                coeffs.resize(k, Rational::zero());
                EpsSeries {
                    valuation: val,
                    coeffs,
                    order: Some(k),
                }
            }
        }
    }

    /// Lowest power with a nonzero coefficient; `None` for zero series.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.valuation)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Stored coefficients, from the valuation upward.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Relative truncation order K, `None` for exact series.
    pub fn truncation_order(&self) -> Option<usize> {
        self.order
    }

    /// Exponent of the error term, `None` for exact series.
    pub fn absolute_precision(&self) -> Option<i64> {
        self.order.map(|k| self.valuation + k as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Coefficient of ε^k (zero outside the stored range).
    pub fn coeff(&self, k: i64) -> Rational {
        let i = k - self.valuation;
        if i < 0 {
            return Rational::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(Rational::zero)
    }

    /// Drops precision to relative order `k` (no-op if already coarser).
    pub fn with_order(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let k = self.order.map_or(k, |o| o.min(k));
        Self::normalized(self.valuation, self.coeffs.clone(), Some(self.valuation + k as i64))
    }

    /// Sum of the first `terms` stored terms evaluated at ε.
    pub fn eval_terms(&self, eps: &Rational, terms: usize) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().take(terms).enumerate() {
            acc += c * pow_z(eps, self.valuation + i as i64);
        }
        acc
    }

    pub fn eval(&self, eps: &Rational) -> Rational {
        self.eval_terms(eps, self.coeffs.len())
    }

    pub fn checked_div(&self, t: &EpsSeries) -> Result<EpsSeries, KernelError> {
        if t.is_zero() {
            return Err(KernelError::DivisorZeroToOrder);
        }
        if self.is_zero() {
            return Ok(match self.order {
                None => Self::exact_zero(),
                Some(_) => Self::zero_to(self.valuation - t.valuation),
            });
        }
        let val = self.valuation - t.valuation;
        let k = match (self.order, t.order) {
            (None, None) if t.coeffs.len() == 1 => {
                let inv = t.coeffs[0].recip();
                let c = self.coeffs.iter().map(|c| c * &inv).collect();
                return Ok(Self::normalized(val, c, None));
            }
            (None, None) => DEFAULT_ORDER,
            (a, b) => a.unwrap_or(usize::MAX).min(b.unwrap_or(usize::MAX)),
        };
        let t0_inv = t.coeffs[0].recip();
        let mut q: Vec<Rational> = Vec::with_capacity(k);
        for n in 0..k {
            let mut acc = self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero);
            for i in 1..=n.min(t.coeffs.len().saturating_sub(1)) {
                acc -= &t.coeffs[i] * &q[n - i];
            }
            q.push(acc * &t0_inv);
        }
        Ok(Self::normalized(val, q, Some(val + k as i64)))
    }

    /// Square root via the binomial series of the unit part.
    pub fn sqrt(&self) -> Result<EpsSeries, KernelError> {
        if self.is_zero() {
            return Ok(match self.order {
                None => Self::exact_zero(),
                Some(_) => Self::zero_to(self.valuation.div_euclid(2)),
            });
        }
        if self.valuation % 2 != 0 {
            return Err(KernelError::OddValuation(self.valuation));
        }
        let c0 = &self.coeffs[0];
        let r0 = rational_sqrt(c0)
            .ok_or_else(|| KernelError::NonSquareLeadingCoefficient(c0.to_string()))?;
        let half_val = self.valuation / 2;
        let k = match self.order {
            None if self.coeffs.len() == 1 => {
                return Ok(Self::monomial(r0, half_val));
            }
            None => DEFAULT_ORDER,
            Some(k) => k,
        };
        // u = s / (c0 ε^v) − 1, a series with valuation ≥ 1
        let inv = c0.recip();
        let mut u: Vec<Rational> = (0..k)
            .map(|i| self.coeffs.get(i).map_or_else(Rational::zero, |c| c * &inv))
            .collect();
        u[0] = Rational::zero();
        let mut sum = vec![Rational::zero(); k];
        sum[0] = Rational::one();
        let mut upow = {
            let mut v = vec![Rational::zero(); k];
            v[0] = Rational::one();
            v
        };
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let mut binom = Rational::one();
        for j in 1..k {
            // binom(1/2, j) = binom(1/2, j−1)·(1/2 − (j−1))/j
            binom = binom * (&half - Rational::from_integer(BigInt::from(j - 1)))
                / Rational::from_integer(BigInt::from(j));
            upow = truncated_conv(&upow, &u, k);
            for (s, p) in sum.iter_mut().zip(&upow) {
                *s += &binom * p;
            }
        }
        let coeffs = sum.into_iter().map(|c| c * &r0).collect();
        Ok(Self::normalized(half_val, coeffs, Some(half_val + k as i64)))
    }

    pub fn parse(text: &str) -> Result<EpsSeries, KernelError> {
        let expr = parse_expr(text)?;
        let mut terms: Vec<(i64, Rational)> = Vec::new();
        for t in expr.terms {
            let mut k = 0i64;
            for (name, e) in &t.factors {
                if name != VAR {
                    return Err(KernelError::UnknownVariable(name.clone()));
                }
                k += e;
            }
            terms.push((k, t.coeff));
        }
        let abs_prec = match expr.big_o {
            Some((name, _)) if name != VAR => return Err(KernelError::UnknownVariable(name)),
            Some((_, p)) => Some(p),
            None => None,
        };
        let lo = terms.iter().map(|t| t.0).min();
        let Some(lo) = lo else {
            return Ok(match abs_prec {
                Some(p) => Self::zero_to(p),
                None => Self::exact_zero(),
            });
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        if abs_prec.is_some_and(|p| p <= hi) {
            return Err(KernelError::NotRepresentable(
                "term at or beyond the O(...) order".into(),
            ));
        }
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (k, c) in terms {
            coeffs[(k - lo) as usize] += c;
        }
        Ok(Self::normalized(lo, coeffs, abs_prec))
    }
}

fn truncated_conv(a: &[Rational], b: &[Rational], k: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); k];
    for (i, x) in a.iter().enumerate().take(k) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(k - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn pow_z(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Exact square root of a nonnegative rational square.
impl Add for &EpsSeries {
    type Output = EpsSeries;
    fn add(self, rhs: &EpsSeries) -> EpsSeries {
        let abs = match (self.absolute_precision(), rhs.absolute_precision()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let lo = [self, rhs]
            .iter()
            .filter(|s| !s.is_zero())
            .map(|s| s.valuation)
            .min();
        let Some(lo) = lo else {
            return match abs {
                Some(p) => EpsSeries::zero_to(p),
                None => EpsSeries::exact_zero(),
            };
        };
        let end = [self, rhs]
            .iter()
            .map(|s| s.valuation + s.coeffs.len() as i64)
            .max()
            .unwrap();
        let end = abs.map_or(end, |p| end.min(p)).max(lo);
        let mut coeffs = vec![Rational::zero(); (end - lo) as usize];
        for s in [self, rhs] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let k = s.valuation + i as i64 - lo;
                if (k as usize) < coeffs.len() {
                    coeffs[k as usize] += c;
                }
            }
        }
        EpsSeries::normalized(lo, coeffs, abs)
    }
}

impl Neg for &EpsSeries {
    type Output = EpsSeries;
    fn neg(self) -> EpsSeries {
        EpsSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }
}

impl Sub for &EpsSeries {
    type Output = EpsSeries;
    fn sub(self, rhs: &EpsSeries) -> EpsSeries {
        self + &(-rhs)
    }
}

impl Mul for &EpsSeries {
    type Output = EpsSeries;
    fn mul(self, rhs: &EpsSeries) -> EpsSeries {
        let exact_zero = |s: &EpsSeries| s.is_zero() && s.is_exact();
        if exact_zero(self) || exact_zero(rhs) {
            return EpsSeries::exact_zero();
        }
        let val = self.valuation + rhs.valuation;
        if self.is_zero() || rhs.is_zero() {
            return EpsSeries::zero_to(val);
        }
        match (self.order, rhs.order) {
            (None, None) => {
                let c = truncated_conv(
                    &self.coeffs,
                    &rhs.coeffs,
                    self.coeffs.len() + rhs.coeffs.len() - 1,
                );
                EpsSeries::normalized(val, c, None)
            }
            (a, b) => {
                let k = a.unwrap_or(usize::MAX).min(b.unwrap_or(usize::MAX));
                let c = truncated_conv(&self.coeffs, &rhs.coeffs, k);
                EpsSeries::normalized(val, c, Some(val + k as i64))
            }
        }
    }
}

impl fmt::Display for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.valuation + i as i64;
            let factors: Vec<(&str, i64)> = if k == 0 { vec![] } else { vec![(VAR, k)] };
            write_term(&mut out, first, c, &factors);
            first = false;
        }
        match self.absolute_precision() {
            Some(p) => {
                if !first {
                    out.push_str(" + ");
                }
                if p == 1 {
                    out.push_str("O(eps)");
                } else {
                    out.push_str(&format!("O(eps^{p})"));
                }
            }
            None if first => out.push('0'),
            None => {}
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EpsSeries({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_binomial_series() {
        let s = EpsSeries::truncated(0, vec![q(16, 1), q(1, 1)], 3);
        let r = s.sqrt().unwrap();
        assert_eq!(r.coeffs(), &[q(4, 1), q(1, 8), q(-1, 512)]);
        assert_eq!(r.truncation_order(), Some(3));
        // squaring reproduces the input to the stored order
        assert_eq!(&r * &r, s);
    }

    #[test]
    fn non_square_leading_coefficient() {
        let s = EpsSeries::truncated(0, vec![q(2, 1), q(1, 1)], 3);
        assert!(matches!(s.sqrt(), Err(KernelError::NonSquareLeadingCoefficient(_))));
        let s = EpsSeries::truncated(1, vec![q(4, 1)], 3);
        assert_eq!(s.sqrt(), Err(KernelError::OddValuation(1)));
    }

    #[test]
    fn division_subtracts_valuations() {
        let e2 = EpsSeries::monomial(q(1, 1), 2);
        let r = e2.checked_div(&EpsSeries::eps()).unwrap();
        assert_eq!(r, EpsSeries::eps());
        assert_eq!(r.valuation(), Some(1));
        assert_eq!(
            e2.checked_div(&EpsSeries::zero_to(3)),
            Err(KernelError::DivisorZeroToOrder)
        );
    }

    #[test]
    fn truncated_division_inverts_unit() {
        // 1/(1 − ε) = 1 + ε + ε² + ...
        let one_minus = EpsSeries::truncated(0, vec![q(1, 1), q(-1, 1)], 5);
        let inv = EpsSeries::constant(q(1, 1)).checked_div(&one_minus).unwrap();
        assert_eq!(inv.coeffs(), &vec![q(1, 1); 5][..]);
        assert_eq!(inv.absolute_precision(), Some(5));
    }

    #[test]
    fn cancellation_lowers_relative_order() {
        let a = EpsSeries::truncated(0, vec![q(3, 1), q(1, 1), q(2, 1)], 3);
        let b = EpsSeries::constant(q(-3, 1));
        let s = &a + &b;
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.truncation_order(), Some(2));
        assert_eq!(s.absolute_precision(), Some(3));
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.absolute_precision(), Some(3));
    }

    #[test]
    fn precision_never_extends() {
        let a = EpsSeries::truncated(0, vec![q(1, 1), q(1, 1)], 2);
        let b = EpsSeries::truncated(0, vec![q(1, 1), q(2, 1), q(3, 1), q(4, 1)], 4);
        assert_eq!((&a * &b).truncation_order(), Some(2));
        assert_eq!((&a + &b).absolute_precision(), Some(2));
    }

    #[test]
    fn text_form() {
        let s = EpsSeries::truncated(0, vec![q(4, 1), q(1, 8), q(-1, 512)], 3);
        assert_eq!(s.to_string(), "4 + 1/8*eps - 1/512*eps^2 + O(eps^3)");
        assert_eq!(EpsSeries::parse(&s.to_string()).unwrap(), s);
        assert_eq!(EpsSeries::zero_to(2).to_string(), "O(eps^2)");
        assert_eq!(EpsSeries::exact_zero().to_string(), "0");
        let t = EpsSeries::parse("-3*eps^-1 + 2 + O(eps)").unwrap();
        assert_eq!(t.valuation(), Some(-1));
        assert_eq!(t.truncation_order(), Some(2));
        assert!(EpsSeries::parse("eps^3 + O(eps^2)").is_err());
    }
}
