//! The value domains an orbit can live in.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::kernel::{qarith, EpsSeries, KernelError, LaurentPoly, Rational, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DomainTag {
    Integer,
    Rational,
    LaurentPoly,
    UniPoly,
    EpsSeries,
}

/// Why an orbit stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FailureKind {
    /// Integer (or integer-polynomial) division left a remainder.
    NonExactDivision,
    ZeroDivision,
    /// Laurent-polynomial division left a remainder.
    NotLaurent,
    /// A parameter value has no representation in the domain
    /// (e.g. `1/2` among integers).
    NotRepresentable,
    /// A series divisor cancelled to zero at the stored order.
    TruncationExhausted,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Ring operations needed to run a recurrence. `constant_like` uses
/// `self` as a prototype for context such as the variable set.
pub trait Value: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    const DOMAIN: DomainTag;

    fn constant_like(&self, r: &Rational) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, rhs: &Self) -> Result<Self, FailureKind>;
}

impl Value for BigInt {
    const DOMAIN: DomainTag = DomainTag::Integer;

    fn constant_like(&self, r: &Rational) -> Option<Self> {
        r.is_integer().then(|| r.to_integer())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self, FailureKind> {
        if Zero::is_zero(rhs) {
            return Err(FailureKind::ZeroDivision);
        }
        let (q, r) = self.div_rem(rhs);
        if Zero::is_zero(&r) {
            Ok(q)
        } else {
            Err(FailureKind::NonExactDivision)
        }
    }
}

impl Value for Rational {
    const DOMAIN: DomainTag = DomainTag::Rational;

    fn constant_like(&self, r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        qarith::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        qarith::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        qarith::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self, FailureKind> {
        if Zero::is_zero(rhs) {
            Err(FailureKind::ZeroDivision)
        } else {
            Ok(qarith::div(self, rhs))
        }
    }
}

impl Value for LaurentPoly {
    const DOMAIN: DomainTag = DomainTag::LaurentPoly;

    fn constant_like(&self, r: &Rational) -> Option<Self> {
        r.is_integer()
            .then(|| LaurentPoly::constant(self.vars(), r.to_integer()))
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self, FailureKind> {
        LaurentPoly::exact_div(self, rhs).map_err(|e| match e {
            KernelError::DivisionByZero => FailureKind::ZeroDivision,
            _ => FailureKind::NotLaurent,
        })
    }
}

impl Value for UniPoly {
    const DOMAIN: DomainTag = DomainTag::UniPoly;

    fn constant_like(&self, r: &Rational) -> Option<Self> {
        r.is_integer()
            .then(|| UniPoly::constant(self.var(), r.to_integer()))
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self, FailureKind> {
        UniPoly::exact_div(self, rhs).map_err(|e| match e {
            KernelError::DivisionByZero => FailureKind::ZeroDivision,
            _ => FailureKind::NonExactDivision,
        })
    }
}

impl Value for EpsSeries {
    const DOMAIN: DomainTag = DomainTag::EpsSeries;

    fn constant_like(&self, r: &Rational) -> Option<Self> {
        Some(if Zero::is_zero(r) {
            EpsSeries::exact_zero()
        } else {
            EpsSeries::constant(r.clone())
        })
    }
    fn is_zero(&self) -> bool {
        EpsSeries::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self, FailureKind> {
        self.checked_div(rhs).map_err(|_| {
            if rhs.is_exact() {
                FailureKind::ZeroDivision
            } else {
                FailureKind::TruncationExhausted
            }
        })
    }
}
