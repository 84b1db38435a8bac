use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::text::{parse_expr, write_term};
use super::{KernelError, Rational};

/// Degree of a univariate polynomial; the zero polynomial has degree −∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

/// Dense univariate polynomial with integer coefficients, ascending order.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    var: Arc<str>,
    coeffs: Vec<BigInt>,
}

const KARATSUBA_CUTOFF: usize = 48;

impl UniPoly {
    pub fn new(var: &str, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly {
            var: var.into(),
            coeffs,
        }
    }

    pub fn from_i64(var: &str, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(var: &str) -> Self {
        Self::new(var, Vec::new())
    }

    pub fn constant(var: &str, c: BigInt) -> Self {
        Self::new(var, vec![c])
    }

    /// The polynomial `var` itself.
    pub fn x(var: &str) -> Self {
        Self::new(var, vec![BigInt::zero(), BigInt::one()])
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(One::is_one)
    }

    fn like(&self, coeffs: Vec<BigInt>) -> Self {
        let mut p = UniPoly {
            var: self.var.clone(),
            coeffs,
        };
        while p.coeffs.last().is_some_and(Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact quotient over Z; fails if the remainder is nonzero or a
    /// coefficient division is inexact.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly, KernelError> {
        self.check_var(divisor);
        let Some(lc) = divisor.leading_coefficient() else {
            return Err(KernelError::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(self.clone());
        }
        let dn = divisor.coeffs.len();
        if self.coeffs.len() < dn {
            return Err(KernelError::NotDivisible);
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dn + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dn - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Err(KernelError::NotDivisible);
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(KernelError::NotDivisible);
        }
        Ok(self.like(quot))
    }

    pub fn parse(text: &str, var: &str) -> Result<UniPoly, KernelError> {
        let expr = parse_expr(text)?;
        if expr.big_o.is_some() {
            return Err(KernelError::NotRepresentable("O(...) in a polynomial".into()));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        for t in expr.terms {
            if !t.coeff.is_integer() {
                return Err(KernelError::NotRepresentable(format!(
                    "non-integer coefficient {}",
                    t.coeff
                )));
            }
            let mut deg = 0i64;
            for (name, e) in &t.factors {
                if name != var {
                    return Err(KernelError::UnknownVariable(name.clone()));
                }
                deg += e;
            }
            if deg < 0 {
                return Err(KernelError::NotRepresentable(format!("negative power {var}^{deg}")));
            }
            let deg = deg as usize;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigInt::zero());
            }
            coeffs[deg] += t.coeff.to_integer();
        }
        Ok(UniPoly::new(var, coeffs))
    }

    fn check_var(&self, other: &UniPoly) {
        assert_eq!(self.var, other.var, "polynomials in different variables");
    }
}

fn add_into(acc: &mut [BigInt], src: &[BigInt]) {
    for (a, s) in acc.iter_mut().zip(src) {
        *a += s;
    }
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Karatsuba on coefficient slices; lengths may differ.
fn karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return schoolbook(a, b);
    }
    let half = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    if a1.is_empty() || b1.is_empty() {
        // unbalanced: split only the longer operand
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let (l0, l1) = long.split_at(half);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        let p0 = karatsuba(l0, short);
        let p1 = karatsuba(l1, short);
        add_into(&mut out, &p0);
        add_into(&mut out[half..], &p1);
        return out;
    }
    let z0 = karatsuba(a0, b0);
    let z2 = karatsuba(a1, b1);
    let sa = sum_halves(a0, a1);
    let sb = sum_halves(b0, b1);
    let mut z1 = karatsuba(&sa, &sb);
    for (i, c) in z0.iter().enumerate() {
        z1[i] -= c;
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] -= c;
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    add_into(&mut out, &z0);
    add_into(&mut out[half..], &z1);
    add_into(&mut out[2 * half..], &z2);
    out
}

fn sum_halves(lo: &[BigInt], hi: &[BigInt]) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = lo.to_vec();
    if s.len() < hi.len() {
        s.resize(hi.len(), BigInt::zero());
    }
    add_into(&mut s, hi);
    s
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let factors: Vec<(&str, i64)> = if d == 0 {
                vec![]
            } else {
                vec![(&*self.var, d as i64)]
            };
            write_term(&mut out, first, &Rational::from_integer(c.clone()), &factors);
            first = false;
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.check_var(rhs);
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut c = long.coeffs.clone();
        add_into(&mut c, &short.coeffs);
        self.like(c)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.like(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.check_var(rhs);
        self.like(karatsuba(&self.coeffs, &rhs.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> UniPoly {
        UniPoly::parse(s, "N").unwrap()
    }

    #[test]
    fn evaluation_and_degree() {
        let p5 = p("N^4 - 2*N^3 + N - 1");
        assert_eq!(p5.eval(&Rational::from_integer(3.into())), Rational::from_integer(29.into()));
        let p4 = p("N^2 - N - 1");
        assert_eq!(p4.degree(), Degree::Finite(2));
        assert!(p4.is_monic());
        let p6 = p("N^7 - 3*N^6 + N^5 + 3*N^4 - 2*N^3 + 1");
        assert_eq!(p6.eval_int(&2.into()), BigInt::from(1));
        assert_eq!(p("0").degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert!(!p("2*N + 1").is_monic());
    }

    #[test]
    fn division() {
        let a = p("N - 1");
        let b = p("N^2 + 3*N - 7");
        assert_eq!((&a * &b).exact_div(&a).unwrap(), b);
        assert_eq!(p("N^2 + 1").exact_div(&a), Err(KernelError::NotDivisible));
        assert_eq!(p("N").exact_div(&p("0")), Err(KernelError::DivisionByZero));
        assert_eq!(p("3*N + 3").exact_div(&p("2*N + 2")), Err(KernelError::NotDivisible));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<BigInt> = (0..301).map(|i| BigInt::from((i * 37 % 23) as i64 - 11)).collect();
        let b: Vec<BigInt> = (0..157).map(|i| BigInt::from((i * 53 % 29) as i64 - 14)).collect();
        assert_eq!(karatsuba(&a, &b), schoolbook(&a, &b));
        assert_eq!(karatsuba(&b, &a), schoolbook(&a, &b));
        assert_eq!(karatsuba(&a, &a), schoolbook(&a, &a));
    }

    #[test]
    fn display() {
        assert_eq!(p("1 - N + N^2").to_string(), "N^2 - N + 1");
        assert_eq!(p("-N^3").to_string(), "-N^3");
        assert_eq!(p("N - N").to_string(), "0");
    }
}
