//! Randomised coprimality probes for Laurent polynomials.
//!
//! Two Laurent polynomials are compared modulo monomial units by
//! specialising every variable to a random integer, clearing denominators
//! and taking the gcd of the two integer numerators with every prime
//! shared with the point's coordinates stripped out. A genuine common
//! factor divides that gcd at every point; coprime polynomials give gcd 1
//! at most points. "Probably coprime" therefore needs a single trial with
//! gcd 1; the test can err only by reporting "not coprime".

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::kernel::{qarith, LaurentPoly};
use crate::par::{self, Exec};

/// Range the random specialisation points are drawn from.
pub const PROBE_RANGE: RangeInclusive<u64> = 2..=1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PairLabel {
    /// (τ_i, τ_j)
    Adjacent(i64, i64),
    /// (τ_i, τ_j² + J)
    ShiftedSquare(i64, i64),
    Custom(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct PairVerdict {
    pub label: PairLabel,
    pub trials: usize,
    /// Cleaned gcd per trial.
    #[serde(serialize_with = "crate::io::ser_bigints")]
    pub gcds: Vec<BigInt>,
    pub coprime_trials: usize,
    pub probably_coprime: bool,
}

fn strip_point_primes(mut g: BigInt, point: &[BigInt]) -> BigInt {
    for v in point {
        loop {
            if g.is_one() {
                return g;
            }
            let d = qarith::gcd(&g, v);
            if d.is_one() {
                break;
            }
            g /= d;
        }
    }
    g
}

fn random_points(nvars: usize, trials: usize, seed: u64) -> Vec<Vec<BigInt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            (0..nvars)
                .map(|_| BigInt::from(rng.random_range(PROBE_RANGE)))
                .collect()
        })
        .collect()
}

/// Probes one pair over `trials` random points derived from `seed`.
pub fn probe_pair(
    f: &LaurentPoly,
    g: &LaurentPoly,
    label: PairLabel,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> PairVerdict {
    let points = random_points(f.vars().len(), trials, seed);
    let gcds = par::map(exec, &points, |pt| {
        // points avoid zero, so evaluation cannot fail
        let (nf, _) = f.eval_split(pt).expect("nonzero probe point");
        let (ng, _) = g.eval_split(pt).expect("nonzero probe point");
        let raw = qarith::gcd(&nf, &ng);
        if raw.is_zero() {
            // both vanish at the point
            return BigInt::zero();
        }
        strip_point_primes(raw, pt)
    });
    let coprime_trials = gcds.iter().filter(|g| g.is_one()).count();
    PairVerdict {
        label,
        trials,
        probably_coprime: coprime_trials > 0,
        coprime_trials,
        gcds,
    }
}

/// Probes the coprimality claims of the Laurent-property induction on
/// `values = τ_offset, …`: every two terms at distance 1 or 2 with indices
/// up to `offset + window`, and, when `shift` (the parameter J) is given,
/// each `(τ_j, τ_{j±1}² + J)`.
pub fn coprimality_probe(
    values: &[LaurentPoly],
    offset: i64,
    window: usize,
    trials: usize,
    seed: u64,
    shift: Option<&LaurentPoly>,
    exec: Exec,
) -> Vec<PairVerdict> {
    assert!(values.len() > window, "orbit shorter than window + 1");
    let mut jobs: Vec<(usize, LaurentPoly, PairLabel)> = Vec::new();
    for i in 0..=window {
        for d in 1..=2 {
            if i + d <= window {
                jobs.push((
                    i,
                    values[i + d].clone(),
                    PairLabel::Adjacent(offset + i as i64, offset + (i + d) as i64),
                ));
            }
        }
        if let Some(j) = shift {
            for nb in [i.checked_sub(1), Some(i + 1)].into_iter().flatten() {
                if nb <= window {
                    let sq = &(&values[nb] * &values[nb]) + j;
                    jobs.push((
                        i,
                        sq,
                        PairLabel::ShiftedSquare(offset + i as i64, offset + nb as i64),
                    ));
                }
            }
        }
    }
    jobs.iter()
        .enumerate()
        .map(|(n, (i, other, label))| {
            probe_pair(
                &values[*i],
                other,
                label.clone(),
                trials,
                seed.wrapping_add(n as u64),
                exec,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::VarSet;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &VarSet::abcj()).unwrap()
    }

    #[test]
    fn identical_nonconstant_pair_is_not_coprime() {
        let f = p("b^2 + c^2 + J");
        let v = probe_pair(&f, &f, PairLabel::Custom("f,f".into()), 20, 7, Exec::Sequential);
        assert!(!v.probably_coprime);
        assert!(v.gcds.iter().all(|g| g > &BigInt::one()));
    }

    #[test]
    fn shared_factor_is_detected() {
        let h = p("a + b + 1");
        let f = &h * &p("c - J");
        let g = &h * &p("a^-3*c + 2");
        let v = probe_pair(&f, &g, PairLabel::Custom("shared".into()), 20, 11, Exec::Parallel);
        assert!(!v.probably_coprime);
    }

    #[test]
    fn monomial_factors_are_ignored() {
        let f = p("a^2*b");
        let g = p("a^-1*c + b");
        let f2 = &f * &p("c + J");
        let v = probe_pair(&f2, &g, PairLabel::Custom("m".into()), 20, 3, Exec::Sequential);
        assert!(v.probably_coprime);
        let v = probe_pair(&p("a^3*b"), &p("a*b^-2"), PairLabel::Custom("mono".into()), 5, 3, Exec::Sequential);
        assert!(v.probably_coprime);
        assert_eq!(v.coprime_trials, 5);
    }

    #[test]
    fn deterministic_in_seed() {
        let f = p("a^2 + b*c + J");
        let g = p("b + c^3 - a");
        let a = probe_pair(&f, &g, PairLabel::Custom("x".into()), 10, 42, Exec::Parallel);
        let b = probe_pair(&f, &g, PairLabel::Custom("x".into()), 10, 42, Exec::Sequential);
        assert_eq!(a.gcds, b.gcds);
    }
}
