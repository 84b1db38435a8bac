use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::monomial::{Monomial, MAX_EXP, MIN_EXP};
use super::text::{parse_expr, write_term};
use super::{KernelError, Rational, VarSet};
use crate::par::{self, Exec};

/// Sparse Laurent polynomial with integer coefficients.
///
/// Terms are kept sorted by descending graded-lex monomial order with no
/// zero coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: VarSet,
    terms: Vec<(Monomial, BigInt)>,
}

/// Shape summary of a Laurent polynomial.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LaurentStats {
    pub term_count: usize,
    /// Negated minimal exponent per variable, clamped at 0.
    pub denominator_monomial: Vec<i32>,
    pub max_degree_per_variable: Vec<i32>,
}

// Below this many coefficient products a multiply stays on one thread.
const PAR_MUL_THRESHOLD: usize = 1 << 14;

impl LaurentPoly {
    pub fn zero(vars: &VarSet) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: &VarSet, c: BigInt) -> Self {
        Self::monomial(vars, Monomial::ONE, c)
    }

    pub fn monomial(vars: &VarSet, m: Monomial, c: BigInt) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// The variable `name` to the first power.
    pub fn var(vars: &VarSet, name: &str) -> Result<Self, KernelError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| KernelError::UnknownVariable(name.to_owned()))?;
        Ok(Self::monomial(vars, Monomial::var(i, 1), BigInt::one()))
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: &VarSet, acc: FxHashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The constant value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Per-variable minimum exponent (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        self.fold_exponents(i32::min)
    }

    pub fn max_exponents(&self) -> Vec<i32> {
        self.fold_exponents(i32::max)
    }

    fn fold_exponents(&self, f: fn(i32, i32) -> i32) -> Vec<i32> {
        let n = self.vars.len();
        let mut it = self.terms.iter();
        let Some((m0, _)) = it.next() else {
            return vec![0; n];
        };
        let mut acc = m0.exponents(n);
        for (m, _) in it {
            for (i, a) in acc.iter_mut().enumerate() {
                *a = f(*a, m.exponent(i));
            }
        }
        acc
    }

    pub fn stats(&self) -> LaurentStats {
        LaurentStats {
            term_count: self.terms.len(),
            denominator_monomial: self.min_exponents().iter().map(|&e| (-e).max(0)).collect(),
            max_degree_per_variable: self.max_exponents(),
        }
    }

    /// Splits `self = numerator / denominator` with the denominator the
    /// monomial given by [`LaurentStats::denominator_monomial`].
    pub fn numerator(&self) -> LaurentPoly {
        let den: Vec<i32> = self.stats().denominator_monomial;
        self.mul_monomial(Monomial::from_exponents(&den), &BigInt::one())
    }

    pub fn mul_monomial(&self, m: Monomial, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect();
        // multiplying by a monomial preserves grlex order
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        self.mul_monomial(Monomial::ONE, c)
    }

    fn check_vars(&self, other: &LaurentPoly) {
        assert_eq!(
            self.vars, other.vars,
            "Laurent polynomials over different variable sets"
        );
    }

    fn check_exponent_range(&self, other: &LaurentPoly) {
        let (lo_a, hi_a) = (self.min_exponents(), self.max_exponents());
        let (lo_b, hi_b) = (other.min_exponents(), other.max_exponents());
        for i in 0..self.vars.len() {
            assert!(
                lo_a[i] + lo_b[i] >= MIN_EXP && hi_a[i] + hi_b[i] <= MAX_EXP,
                "exponent overflow in variable {}",
                self.vars.names()[i]
            );
        }
    }

    /// Exact product.
    pub fn mul_with(&self, other: &LaurentPoly, exec: Exec) -> LaurentPoly {
        self.check_vars(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars);
        }
        self.check_exponent_range(other);
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let work = big.terms.len() * small.terms.len();
        let chunks = if work < PAR_MUL_THRESHOLD {
            1
        } else {
            par::chunk_count(exec)
        };
        if chunks <= 1 {
            return Self::from_map(&self.vars, mul_block(&big.terms, &small.terms));
        }
        let size = big.terms.len().div_ceil(chunks);
        let blocks: Vec<&[(Monomial, BigInt)]> = big.terms.chunks(size).collect();
        let partials = par::map(exec, &blocks, |blk| mul_block(blk, &small.terms));
        let mut iter = partials.into_iter();
        let mut acc = iter.next().unwrap();
        for part in iter {
            for (m, c) in part {
                *acc.entry(m).or_default() += c;
            }
        }
        Self::from_map(&self.vars, acc)
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    ///
    /// Both operands are first shifted by monomials so that every variable
    /// has minimal exponent 0; the shifted divisor then has no monomial
    /// factor, so any Laurent quotient of the shifted operands is a genuine
    /// polynomial and graded-lex lead-term reduction finds it. A nonzero
    /// remainder means the quotient is not a Laurent polynomial.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, KernelError> {
        self.check_vars(divisor);
        if divisor.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let n = self.vars.len();
        if divisor.terms.len() == 1 {
            let (m, c) = &divisor.terms[0];
            let inv = m.inverse();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (tm, tc) in &self.terms {
                let (q, r) = tc.div_rem(c);
                if !r.is_zero() {
                    return Err(KernelError::NotDivisible);
                }
                terms.push((tm.mul(inv), q));
            }
            return Ok(LaurentPoly {
                vars: self.vars.clone(),
                terms,
            });
        }
        let shift_f = Monomial::from_exponents(&self.min_exponents()).inverse();
        let shift_g = Monomial::from_exponents(&divisor.min_exponents()).inverse();
        let g: Vec<(Monomial, BigInt)> = divisor
            .terms
            .iter()
            .map(|(m, c)| (m.mul(shift_g), c.clone()))
            .collect();
        let (g_lm, g_lc) = g[0].clone();

        let mut rem: BTreeMap<Monomial, BigInt> = self
            .terms
            .iter()
            .map(|(m, c)| (m.mul(shift_f), c.clone()))
            .collect();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((r_lm, r_lc)) = rem.pop_last() {
            if !r_lm.divisible_by(&g_lm, n) {
                return Err(KernelError::NotDivisible);
            }
            let (qc, r) = r_lc.div_rem(&g_lc);
            if !r.is_zero() {
                return Err(KernelError::NotDivisible);
            }
            let qm = r_lm.div(g_lm);
            for (gm, gc) in &g[1..] {
                let key = gm.mul(qm);
                let delta = gc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        // quot is already in descending order; undo the shifts
        let back = shift_g.div(shift_f);
        for (m, _) in quot.iter_mut() {
            *m = m.mul(back);
        }
        Ok(LaurentPoly {
            vars: self.vars.clone(),
            terms: quot,
        })
    }

    /// Exact evaluation at a rational point (one value per variable).
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, KernelError> {
        let n = self.vars.len();
        if point.len() != n {
            return Err(KernelError::PointArity {
                expected: n,
                got: point.len(),
            });
        }
        let lo = self.min_exponents();
        let hi = self.max_exponents();
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for i in 0..n {
            if lo[i] < 0 && point[i].is_zero() {
                return Err(KernelError::ZeroSubstitution(self.vars.names()[i].clone()));
            }
            // powers[i][k] = point[i]^(lo[i] + k)
            let mut row = Vec::with_capacity((hi[i] - lo[i] + 1) as usize);
            let mut p = if lo[i] < 0 {
                num_traits::pow(point[i].recip(), (-lo[i]) as usize)
            } else {
                num_traits::pow(point[i].clone(), lo[i] as usize)
            };
            for _ in lo[i]..=hi[i] {
                row.push(p.clone());
                p *= &point[i];
            }
            powers.push(row);
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for i in 0..n {
                let e = m.exponent(i);
                if e != 0 {
                    t *= &powers[i][(e - lo[i]) as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluation at an integer point where the result is known to be
    /// integral after clearing the denominator monomial; returns
    /// `(numerator value, denominator value)` as integers.
    pub fn eval_split(&self, point: &[BigInt]) -> Result<(BigInt, BigInt), KernelError> {
        let n = self.vars.len();
        if point.len() != n {
            return Err(KernelError::PointArity {
                expected: n,
                got: point.len(),
            });
        }
        let den_exp = self.stats().denominator_monomial;
        let num = self.numerator();
        let mut den = BigInt::one();
        for i in 0..n {
            if den_exp[i] > 0 {
                if point[i].is_zero() {
                    return Err(KernelError::ZeroSubstitution(self.vars.names()[i].clone()));
                }
                den *= num_traits::pow(point[i].clone(), den_exp[i] as usize);
            }
        }
        let hi = num.max_exponents();
        let powers: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row = Vec::with_capacity(hi[i] as usize + 1);
                let mut p = BigInt::one();
                for _ in 0..=hi[i] {
                    row.push(p.clone());
                    p *= &point[i];
                }
                row
            })
            .collect();
        let mut acc = BigInt::zero();
        for (m, c) in &num.terms {
            let mut t = c.clone();
            for (i, row) in powers.iter().enumerate() {
                let e = m.exponent(i);
                if e != 0 {
                    t *= &row[e as usize];
                }
            }
            acc += t;
        }
        Ok((acc, den))
    }

    /// Substitutes exact integer constants for some variables, returning a
    /// polynomial over the same variable set.
    pub fn substitute(&self, var: &str, value: &BigInt) -> Result<LaurentPoly, KernelError> {
        let i = self
            .vars
            .index_of(var)
            .ok_or_else(|| KernelError::UnknownVariable(var.to_owned()))?;
        let n = self.vars.len();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            let mut exps = m.exponents(n);
            exps[i] = 0;
            let factor = if e >= 0 {
                num_traits::pow(value.clone(), e as usize)
            } else {
                if value.abs() != BigInt::one() {
                    return Err(KernelError::NotRepresentable(format!(
                        "{var}={value} under a negative exponent"
                    )));
                }
                num_traits::pow(value.clone(), (-e) as usize)
            };
            out.push((Monomial::from_exponents(&exps), c * factor));
        }
        Ok(Self::from_terms(&self.vars, out))
    }

    pub fn parse(text: &str, vars: &VarSet) -> Result<LaurentPoly, KernelError> {
        let expr = parse_expr(text)?;
        if expr.big_o.is_some() {
            return Err(KernelError::NotRepresentable("O(...) in a polynomial".into()));
        }
        let mut terms = Vec::with_capacity(expr.terms.len());
        for t in expr.terms {
            if !t.coeff.is_integer() {
                return Err(KernelError::NotRepresentable(format!(
                    "non-integer coefficient {}",
                    t.coeff
                )));
            }
            let mut exps = vec![0i32; vars.len()];
            for (name, e) in &t.factors {
                let i = vars
                    .index_of(name)
                    .ok_or_else(|| KernelError::UnknownVariable(name.clone()))?;
                let e = i32::try_from(*e)
                    .ok()
                    .filter(|e| (MIN_EXP..=MAX_EXP).contains(e))
                    .ok_or_else(|| KernelError::NotRepresentable(format!("exponent {e}")))?;
                exps[i] += e;
            }
            terms.push((Monomial::from_exponents(&exps), t.coeff.to_integer()));
        }
        Ok(Self::from_terms(vars, terms))
    }
}

fn mul_block(
    left: &[(Monomial, BigInt)],
    right: &[(Monomial, BigInt)],
) -> FxHashMap<Monomial, BigInt> {
    let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    acc.reserve(left.len() + right.len());
    for (ma, ca) in left {
        for (mb, cb) in right {
            let prod = ca * cb;
            match acc.entry(ma.mul(*mb)) {
                std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(prod);
                }
            }
        }
    }
    acc
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.vars.names();
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let factors: Vec<(&str, i64)> = (0..names.len())
                .filter_map(|i| {
                    let e = m.exponent(i);
                    (e != 0).then(|| (names[i].as_str(), e as i64))
                })
                .collect();
            write_term(&mut out, k == 0, &Rational::from_integer(c.clone()), &factors);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        // merge of two descending runs
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &rhs.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    terms.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    terms.push((*mb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        terms.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&rhs.terms[j..]);
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_with(rhs, Exec::Parallel)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &VarSet::abcj()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn monomial_cancellation() {
        assert_eq!(&p("a*b") * &p("a^-1"), p("b"));
        assert_eq!(&p("b^2 + c^2 + J") * &p("1"), p("b^2 + c^2 + J"));
    }

    #[test]
    fn difference_of_squares_in_n() {
        let vars = VarSet::new(["N"]);
        let a = LaurentPoly::parse("N - 1", &vars).unwrap();
        let b = LaurentPoly::parse("N + 1", &vars).unwrap();
        assert_eq!(&a * &b, LaurentPoly::parse("N^2 - 1", &vars).unwrap());
    }

    #[test]
    fn exact_division_cases() {
        let f = p("a*b^2 + a*c^2 + a*J");
        assert_eq!(f.exact_div(&p("a")).unwrap(), p("b^2 + c^2 + J"));
        assert_eq!(
            p("b^2 + c^2 + J").exact_div(&p("b + c")),
            Err(KernelError::NotDivisible)
        );
        assert_eq!(p("a").exact_div(&p("0")), Err(KernelError::DivisionByZero));
        // quotient with negative exponents
        let g = p("a^-2*b + c");
        let h = p("b^-1 - 3*J*a + 2");
        assert_eq!((&g * &h).exact_div(&g).unwrap(), h);
        // coefficient not divisible
        assert_eq!(p("3*a + 3").exact_div(&p("2*a + 2")), Err(KernelError::NotDivisible));
    }

    #[test]
    fn evaluation() {
        let one = q(1, 1);
        let pt = [one.clone(), one.clone(), one.clone(), q(0, 1)];
        assert_eq!(p("b^2 + c^2 + J").eval(&pt).unwrap(), q(2, 1));
        let half = [q(1, 2), one.clone(), one.clone(), one.clone()];
        assert_eq!(p("a^-1").eval(&half).unwrap(), q(2, 1));
        let zero = [q(0, 1), one.clone(), one.clone(), one];
        assert!(matches!(
            p("a^-1").eval(&zero),
            Err(KernelError::ZeroSubstitution(v)) if v == "a"
        ));
        // positive exponents at zero are fine
        assert_eq!(p("a^2 + 5").eval(&zero).unwrap(), q(5, 1));
    }

    #[test]
    fn stats_of_constant() {
        let s = p("1").stats();
        assert_eq!(s.term_count, 1);
        assert_eq!(s.denominator_monomial, vec![0, 0, 0, 0]);
        let s = p("a^-4*b^-2*c^-1*J + b").stats();
        assert_eq!(s.denominator_monomial, vec![4, 2, 1, 0]);
        assert_eq!(s.max_degree_per_variable, vec![0, 1, 0, 1]);
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("J - 2*a^-1*b^3").to_string(), "-2*a^-1*b^3 + J");
        assert_eq!(p("c^2 + b^2 + J").to_string(), "b^2 + c^2 + J");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("a - a").to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
    }

    #[test]
    fn split_evaluation() {
        let f = p("a^-2*b + 3*c");
        let (num, den) = f
            .eval_split(&[2.into(), 5.into(), 7.into(), 1.into()])
            .unwrap();
        assert_eq!(den, BigInt::from(4));
        assert_eq!(num, BigInt::from(5 + 4 * 21));
    }

    #[test]
    fn parallel_and_sequential_products_agree() {
        let f = p("a + b + c + J + a^-1 + 2").pow(6);
        let g = p("a*b - c + 3*J - b^-1").pow(5);
        assert_eq!(f.mul_with(&g, Exec::Sequential), f.mul_with(&g, Exec::Parallel));
    }
}
