//! Rational arithmetic on reduced operands with as few gcds as possible.
//!
//! `num-rational` normalises every result with two full-size gcds, and the
//! binary gcd in `num-bigint` is quadratic. Orbits of the product-form
//! recurrences reach tens of thousands of digits within twenty steps, so
//! the hot paths go through these functions instead: squares and integer
//! operands need no gcd at all, sums need one (Knuth 4.5.1), and large
//! gcds are handed to malachite's subquadratic implementation.

use malachite_base::num::arithmetic::traits::Gcd;
use malachite_nz::natural::Natural;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// Below this many 64-bit limbs the conversion costs more than it saves.
const LARGE_LIMBS: usize = 24;

fn to_natural(x: &BigUint) -> Natural {
    Natural::from_owned_limbs_asc(x.to_u64_digits())
}

fn from_natural(x: &Natural) -> BigUint {
    let mut digits = Vec::with_capacity(2 * x.limb_count() as usize);
    for l in x.limbs() {
        digits.push(l as u32);
        digits.push((l >> 32) as u32);
    }
    BigUint::new(digits)
}

/// Non-negative gcd.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (a, b) = (a.magnitude(), b.magnitude());
    if a.is_one() || b.is_one() {
        return BigInt::one();
    }
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    if small.is_zero() {
        return BigInt::from_biguint(Sign::Plus, big.clone());
    }
    // the binary gcd walks every bit of the larger operand, so lopsided
    // pairs take one Euclid step first
    let reduced;
    let big = if big.bits() > small.bits() + 64 {
        reduced = big % small;
        &reduced
    } else {
        big
    };
    let g = if big.bits().min(small.bits()) <= 64 * LARGE_LIMBS as u64 {
        big.gcd(small)
    } else {
        from_natural(&to_natural(big).gcd(to_natural(small)))
    };
    BigInt::from_biguint(Sign::Plus, g)
}

/// `n/d` in lowest terms; panics if `d` is zero.
pub fn ratio(n: BigInt, d: BigInt) -> Rational {
    assert!(!d.is_zero(), "zero denominator");
    let (n, d) = if d.sign() == Sign::Minus { (-n, -d) } else { (n, d) };
    if n.is_zero() {
        return Rational::zero();
    }
    let g = gcd(&n, &d);
    if g.is_one() {
        raw(n, d)
    } else {
        raw(n / &g, d / g)
    }
}

fn raw(n: BigInt, d: BigInt) -> Rational {
    debug_assert!(d.sign() == Sign::Plus);
    Rational::new_raw(n, d)
}

/// `x²`; already in lowest terms when `x` is.
pub fn square(x: &Rational) -> Rational {
    raw(x.numer() * x.numer(), x.denom() * x.denom())
}

pub fn mul(x: &Rational, y: &Rational) -> Rational {
    if x == y {
        return square(x);
    }
    if x.is_zero() || y.is_zero() {
        return Rational::zero();
    }
    let (a, b, c, d) = (x.numer(), x.denom(), y.numer(), y.denom());
    // (a/g1 · c/g2) / (b/g2 · d/g1) with g1 = gcd(a, d), g2 = gcd(c, b)
    let g1 = if d.is_one() { BigInt::one() } else { gcd(a, d) };
    let g2 = if b.is_one() { BigInt::one() } else { gcd(c, b) };
    let num = if g1.is_one() { a.clone() } else { a / &g1 } * if g2.is_one() { c.clone() } else { c / &g2 };
    let den = if g2.is_one() { b.clone() } else { b / &g2 } * if g1.is_one() { d.clone() } else { d / &g1 };
    raw(num, den)
}

pub fn recip(y: &Rational) -> Rational {
    assert!(!y.is_zero(), "reciprocal of zero");
    if y.numer().sign() == Sign::Minus {
        raw(-y.denom(), -y.numer())
    } else {
        raw(y.denom().clone(), y.numer().clone())
    }
}

/// Panics on a zero divisor.
pub fn div(x: &Rational, y: &Rational) -> Rational {
    mul(x, &recip(y))
}

pub fn add(x: &Rational, y: &Rational) -> Rational {
    let (a, b, c, d) = (x.numer(), x.denom(), y.numer(), y.denom());
    if b.is_one() && d.is_one() {
        return Rational::from_integer(a + c);
    }
    // a + c/d and a/b + c stay reduced: gcd(ad + c, d) = gcd(c, d) = 1
    if b.is_one() {
        return raw(a * d + c, d.clone());
    }
    if d.is_one() {
        return raw(a + c * b, b.clone());
    }
    let d1 = gcd(b, d);
    if d1.is_one() {
        return raw(a * d + c * b, b * d);
    }
    let (b1, dd1) = (b / &d1, d / &d1);
    let t = a * &dd1 + c * &b1;
    if t.is_zero() {
        return Rational::zero();
    }
    let d2 = gcd(&t, &d1);
    if d2.is_one() {
        raw(t, b1 * d)
    } else {
        raw(t / &d2, b1 * (d / d2))
    }
}

pub fn sub(x: &Rational, y: &Rational) -> Rational {
    add(x, &-y)
}
