//! Packed signed exponent vectors.
//!
//! Up to [`MAX_VARS`] exponents are stored as biased 16-bit fields of a
//! `u128`, variable 0 in the most significant field. With that layout
//! unsigned comparison of the packed word is lexicographic comparison of
//! the exponent vectors, and multiplication of monomials is a single
//! wrapping add/sub.

use std::cmp::Ordering;

use super::vars::MAX_VARS;

const FIELD_BITS: u32 = 16;
const BIAS: u128 = 1 << (FIELD_BITS - 1);
const FIELD_MASK: u128 = (1 << FIELD_BITS) - 1;

pub const MIN_EXP: i32 = -(BIAS as i32);
pub const MAX_EXP: i32 = BIAS as i32 - 1;

const fn all_bias() -> u128 {
    let mut acc = 0u128;
    let mut i = 0;
    while i < MAX_VARS {
        acc |= BIAS << (FIELD_BITS * i as u32);
        i += 1;
    }
    acc
}

const ALL_BIAS: u128 = all_bias();

#[inline]
fn shift(var: usize) -> u32 {
    FIELD_BITS * (MAX_VARS - 1 - var) as u32
}

/// A monomial `x_0^e_0 ... x_{n-1}^e_{n-1}` with signed exponents.
///
/// Ordering is graded lexicographic: total degree first, then lex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: i32,
    packed: u128,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        degree: 0,
        packed: ALL_BIAS,
    };

    pub fn from_exponents(exps: &[i32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut packed = ALL_BIAS;
        let mut degree = 0i32;
        for (i, &e) in exps.iter().enumerate() {
            assert!(
                (MIN_EXP..=MAX_EXP).contains(&e),
                "exponent {e} out of range"
            );
            packed = (packed & !(FIELD_MASK << shift(i)))
                | (((e as i64 + BIAS as i64) as u128) << shift(i));
            degree += e;
        }
        Monomial { degree, packed }
    }

    pub fn var(index: usize, exp: i32) -> Self {
        let mut e = [0i32; MAX_VARS];
        e[index] = exp;
        Self::from_exponents(&e[..=index])
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> i32 {
        (((self.packed >> shift(var)) & FIELD_MASK) as i64 - BIAS as i64) as i32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<i32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.packed == ALL_BIAS
    }

    /// Product of monomials. The caller guarantees the summed exponents
    /// stay within `MIN_EXP..=MAX_EXP`.
    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            packed: self.packed.wrapping_add(other.packed).wrapping_sub(ALL_BIAS),
        }
    }

    #[inline]
    pub fn div(self, other: Monomial) -> Monomial {
        Monomial {
            degree: self.degree - other.degree,
            packed: self.packed.wrapping_sub(other.packed).wrapping_add(ALL_BIAS),
        }
    }

    pub fn inverse(self) -> Monomial {
        Monomial::ONE.div(self)
    }

    /// True when every exponent of `self` is at least that of `other`.
    pub fn divisible_by(&self, other: &Monomial, nvars: usize) -> bool {
        (0..nvars).all(|i| self.exponent(i) >= other.exponent(i))
    }

    pub fn is_polynomial(&self, nvars: usize) -> bool {
        (0..nvars).all(|i| self.exponent(i) >= 0)
    }

    pub fn grlex_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Monomial{:?}", self.exponents(MAX_VARS))
    }
}
