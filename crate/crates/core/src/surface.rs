//! The cubic surface x² + y² + z² − Nxyz + J = 0.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::kernel::{qarith as q, rational_sqrt, Rational};
use crate::par::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("xyz = 0, the invariant N is undefined")]
    ZeroCoordinate,
    #[error("involution at {position}: {subtraction} (subtraction form) != {division} (division form)")]
    FormMismatch {
        position: Position,
        subtraction: Rational,
        division: Rational,
    },
    #[error("seed is not on the surface (residual {0})")]
    SeedOffSurface(Rational),
    #[error("fixed-z step {0} disagrees with the product-form recurrence")]
    FamilyMismatch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceParams {
    pub n: Rational,
    pub j: Rational,
}

impl SurfaceParams {
    pub fn new(n: Rational, j: Rational) -> Self {
        SurfaceParams { n, j }
    }

    pub fn from_ints(n: i64, j: i64) -> Self {
        Self::new(int(n), int(j))
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Position {
    X,
    Y,
    Z,
}

impl Position {
    pub const ALL: [Position; 3] = [Position::X, Position::Y, Position::Z];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::X => "x",
            Position::Y => "y",
            Position::Z => "z",
        })
    }
}

/// An ordered point (x, y, z). Serialises as an array of three decimal
/// strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple(pub [Rational; 3]);

impl Triple {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Triple([x, y, z])
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Triple([int(x), int(y), int(z)])
    }

    pub fn ones() -> Self {
        Triple([Rational::one(), Rational::one(), Rational::one()])
    }

    pub fn x(&self) -> &Rational {
        &self.0[0]
    }

    pub fn y(&self) -> &Rational {
        &self.0[1]
    }

    pub fn z(&self) -> &Rational {
        &self.0[2]
    }

    pub fn get(&self, p: Position) -> &Rational {
        &self.0[p.index()]
    }

    /// True if two coordinates vanish, the shape (x, 0, 0) up to order.
    pub fn is_degenerate(&self) -> bool {
        self.0.iter().filter(|c| c.is_zero()).count() >= 2
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        for c in &self.0 {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

/// A triple over the common denominator D of its coordinates:
/// x² + y² + z² = sq/D² and xyz = prod/D.
struct Cleared {
    sq: BigInt,
    prod: BigInt,
    d: BigInt,
}

fn cleared(t: &Triple) -> Cleared {
    let [x, y, z] = &t.0;
    let (xd, yd, zd) = (x.denom(), y.denom(), z.denom());
    let xs = x.numer() * yd * zd;
    let ys = y.numer() * xd * zd;
    let zs = z.numer() * xd * yd;
    Cleared {
        sq: &xs * &xs + &ys * &ys + &zs * &zs,
        prod: x.numer() * y.numer() * z.numer(),
        d: xd * yd * zd,
    }
}

/// Numerator and denominator (unreduced) of the residual.
fn residual_parts(t: &Triple, s: &SurfaceParams) -> (BigInt, BigInt) {
    let c = cleared(t);
    let (nn, nd) = (s.n.numer(), s.n.denom());
    let (jn, jd) = (s.j.numer(), s.j.denom());
    let d2 = &c.d * &c.d;
    let num = &c.sq * nd * jd - nn * &c.prod * &c.d * jd + jn * &d2 * nd;
    (num, d2 * nd * jd)
}

/// x² + y² + z² − Nxyz + J.
pub fn residual(t: &Triple, s: &SurfaceParams) -> Rational {
    let (n, d) = residual_parts(t, s);
    q::ratio(n, d)
}

pub fn on_surface(t: &Triple, s: &SurfaceParams) -> bool {
    residual_parts(t, s).0.is_zero()
}

/// Singular iff J = 0, or N ≠ 0 and J = −4/N².
pub fn surface_singular(s: &SurfaceParams) -> bool {
    if s.j.is_zero() {
        return true;
    }
    !s.n.is_zero() && s.j == -int(4) / (&s.n * &s.n)
}

/// N = (x² + y² + z² + J)/(xyz).
pub fn invariant_n(t: &Triple, j: &Rational) -> Result<Rational, SurfaceError> {
    let c = cleared(t);
    if c.prod.is_zero() {
        return Err(SurfaceError::ZeroCoordinate);
    }
    let (jn, jd) = (j.numer(), j.denom());
    let num = &c.sq * jd + jn * &c.d * &c.d;
    Ok(q::ratio(num, jd * &c.d * &c.prod))
}

/// J = Nxyz − x² − y² − z².
pub fn invariant_j(t: &Triple, n: &Rational) -> Rational {
    let c = cleared(t);
    let (nn, nd) = (n.numer(), n.denom());
    let num = nn * &c.prod * &c.d - nd * &c.sq;
    q::ratio(num, nd * &c.d * &c.d)
}

/// Replaces the coordinate at `pos` by the other root of the quadratic
/// the surface equation defines in it. The subtraction form is used;
/// on the surface, with a nonzero coordinate, the division form is
/// checked against it.
pub fn vieta(t: &Triple, s: &SurfaceParams, pos: Position) -> Result<Triple, SurfaceError> {
    let i = pos.index();
    let (u, v) = (&t.0[(i + 1) % 3], &t.0[(i + 2) % 3]);
    let old = &t.0[i];
    let new = q::sub(&q::mul(&q::mul(&s.n, u), v), old);
    if !old.is_zero() && on_surface(t, s) {
        let div = q::div(&q::add(&q::add(&q::square(u), &q::square(v)), &s.j), old);
        if div != new {
            return Err(SurfaceError::FormMismatch {
                position: pos,
                subtraction: new,
                division: div,
            });
        }
    }
    let mut out = t.clone();
    out.0[i] = new;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TripleVerdict {
    /// No repeat and no degenerate triple within the requested count.
    Growing,
    /// The seed recurred after p steps.
    Periodic(usize),
    /// A triple with two zero coordinates was reached at this step
    /// (0 for the seed itself).
    FatalDegenerate(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleRun {
    pub seed: Triple,
    pub triples: Vec<Triple>,
    pub verdict: TripleVerdict,
}

/// One step of shift∘involution: (x, y, z) ↦ (y, z, Nyz − x) forwards,
/// (x, y, z) ↦ (Nxy − z, x, y) backwards.
pub fn triple_step(t: &Triple, s: &SurfaceParams, dir: Direction) -> Triple {
    let [x, y, z] = &t.0;
    match dir {
        Direction::Forward => Triple([y.clone(), z.clone(), q::sub(&q::mul(&q::mul(&s.n, y), z), x)]),
        Direction::Backward => Triple([q::sub(&q::mul(&q::mul(&s.n, x), y), z), x.clone(), y.clone()]),
    }
}

/// Emits up to `count` successors of `seed`, stopping early on a
/// return to the seed or on a degenerate triple.
pub fn generate_triples(
    seed: &Triple,
    s: &SurfaceParams,
    count: usize,
    dir: Direction,
) -> Result<TripleRun, SurfaceError> {
    let r = residual(seed, s);
    if !r.is_zero() {
        return Err(SurfaceError::SeedOffSurface(r));
    }
    let mut run = TripleRun {
        seed: seed.clone(),
        triples: Vec::with_capacity(count),
        verdict: TripleVerdict::Growing,
    };
    if seed.is_degenerate() {
        run.verdict = TripleVerdict::FatalDegenerate(0);
        return Ok(run);
    }
    let mut cur = seed.clone();
    for step in 1..=count {
        cur = triple_step(&cur, s, dir);
        debug_assert!(on_surface(&cur, s));
        run.triples.push(cur.clone());
        if cur.is_degenerate() {
            run.verdict = TripleVerdict::FatalDegenerate(step);
            break;
        }
        if cur == *seed {
            run.verdict = TripleVerdict::Periodic(step);
            break;
        }
    }
    Ok(run)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Degeneracy {
    None,
    /// −J = x₀², so (±x₀, 0, 0) lie on the surface for every N.
    FatalPossible(#[serde(serialize_with = "ser_display")] Rational),
}

fn ser_display<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub fn degenerate_check(s: &SurfaceParams) -> Degeneracy {
    match rational_sqrt(&-s.j.clone()) {
        Some(x0) => Degeneracy::FatalPossible(x0),
        None => Degeneracy::None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedZFamily {
    #[serde(serialize_with = "ser_display")]
    pub z0: Rational,
    pub triples: Vec<Triple>,
    /// N²z₀² < 4: the linear recurrence has roots on the unit circle and
    /// the family does not grow.
    pub bounded: bool,
    /// Steps at which the product-form relation could be checked.
    pub integ_checks: usize,
}

/// With z = z₀ fixed, x₁ = y₀ and x_{n+1} = Nz₀x_n − x_{n−1}; emits
/// (x_n, x_{n+1}, z₀) for n = 1..=count.
pub fn fixed_z_family(seed: &Triple, s: &SurfaceParams, count: usize) -> Result<FixedZFamily, SurfaceError> {
    let r = residual(seed, s);
    if !r.is_zero() {
        return Err(SurfaceError::SeedOffSurface(r));
    }
    let z0 = seed.z().clone();
    let k = &s.n * &z0;
    let shift = &z0 * &z0 + &s.j;
    let mut xs = vec![seed.x().clone(), seed.y().clone()];
    let mut triples = Vec::with_capacity(count);
    let mut integ_checks = 0;
    for step in 1..=count {
        let n = xs.len();
        let next = &k * &xs[n - 1] - &xs[n - 2];
        let prev = &xs[n - 2];
        if !prev.is_zero() {
            if next.clone() * prev != &xs[n - 1] * &xs[n - 1] + &shift {
                return Err(SurfaceError::FamilyMismatch(step));
            }
            integ_checks += 1;
        }
        xs.push(next);
        let t = Triple([xs[n - 1].clone(), xs[n].clone(), z0.clone()]);
        debug_assert!(on_surface(&t, s));
        triples.push(t);
    }
    Ok(FixedZFamily {
        bounded: &k * &k < int(4),
        z0,
        triples,
        integ_checks,
    })
}

/// One cell of an (N, J) sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepCell {
    #[serde(serialize_with = "ser_display")]
    pub n: Rational,
    #[serde(serialize_with = "ser_display")]
    pub j: Rational,
    pub singular: bool,
    pub degeneracy: Degeneracy,
    /// Verdict of [`generate_triples`] from the seed, `None` when the
    /// seed is off this surface.
    pub verdict: Option<TripleVerdict>,
    /// Largest coordinate bit length reached, a cheap growth measure.
    pub max_bits: u64,
}

/// Runs [`generate_triples`] forwards from `seed` on every surface in
/// `cells`.
pub fn sweep(cells: &[SurfaceParams], seed: &Triple, count: usize, exec: Exec) -> Vec<SweepCell> {
    par::map(exec, cells, |s| {
        let run = generate_triples(seed, s, count, Direction::Forward).ok();
        let max_bits = run
            .iter()
            .flat_map(|r| r.triples.iter())
            .flat_map(|t| t.0.iter())
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0);
        SweepCell {
            n: s.n.clone(),
            j: s.j.clone(),
            singular: surface_singular(s),
            degeneracy: degenerate_check(s),
            verdict: run.map(|r| r.verdict),
            max_bits,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(x: i64, y: i64, z: i64) -> Triple {
        Triple::from_ints(x, y, z)
    }

    fn sp(n: i64, j: i64) -> SurfaceParams {
        SurfaceParams::from_ints(n, j)
    }

    #[test]
    fn membership() {
        assert!(on_surface(&t(1, 1, 1), &sp(3, 0)));
        assert!(on_surface(&t(2, 5, 1), &sp(3, 0)));
        assert_eq!(residual(&t(1, 1, 1), &sp(3, 1)), int(1));
    }

    #[test]
    fn singularity() {
        assert!(surface_singular(&sp(3, 0)));
        assert!(surface_singular(&sp(2, -1)));
        assert!(!surface_singular(&sp(3, 5)));
        assert!(!surface_singular(&sp(0, -4)));
    }

    #[test]
    fn invariants() {
        assert_eq!(invariant_n(&t(1, 1, 1), &int(0)).unwrap(), int(3));
        assert_eq!(invariant_n(&t(2, 5, 29), &int(0)).unwrap(), int(3));
        assert_eq!(invariant_n(&t(0, 5, 29), &int(0)), Err(SurfaceError::ZeroCoordinate));
        assert_eq!(invariant_j(&t(1, 1, 1), &int(3)), int(0));
        assert_eq!(invariant_j(&t(1, 1, 2), &int(4)), int(2));
        assert_eq!(invariant_j(&t(1, 2, 1), &int(3)), int(0));
    }

    #[test]
    fn involution_examples() {
        assert_eq!(vieta(&t(1, 1, 1), &sp(3, 0), Position::X).unwrap(), t(2, 1, 1));
        assert_eq!(vieta(&t(1, 2, 1), &sp(3, 0), Position::X).unwrap(), t(5, 2, 1));
        assert_eq!(vieta(&t(2, 0, 0), &sp(3, -4), Position::X).unwrap(), t(-2, 0, 0));
        assert_eq!(vieta(&t(2, 5, 1), &sp(3, 0), Position::Z).unwrap(), t(2, 5, 29));
    }

    #[test]
    fn markoff_windows() {
        let run = generate_triples(&Triple::ones(), &sp(3, 0), 5, Direction::Forward).unwrap();
        assert_eq!(
            run.triples,
            vec![t(1, 1, 2), t(1, 2, 5), t(2, 5, 29), t(5, 29, 433), t(29, 433, 37666)]
        );
        assert_eq!(run.verdict, TripleVerdict::Growing);
        let back = generate_triples(&t(29, 433, 37666), &sp(3, 0), 5, Direction::Backward).unwrap();
        assert_eq!(back.triples.last().unwrap(), &Triple::ones());
    }

    #[test]
    fn periodic_and_fatal() {
        let run = generate_triples(&Triple::ones(), &sp(1, -2), 20, Direction::Forward).unwrap();
        assert_eq!(run.verdict, TripleVerdict::Periodic(12));
        let run = generate_triples(&t(2, 0, 0), &sp(3, -4), 5, Direction::Forward).unwrap();
        assert_eq!(run.verdict, TripleVerdict::FatalDegenerate(0));
        assert!(run.triples.is_empty());
        assert!(matches!(
            generate_triples(&t(1, 1, 1), &sp(3, 1), 5, Direction::Forward),
            Err(SurfaceError::SeedOffSurface(_))
        ));
    }

    #[test]
    fn degeneracies() {
        assert_eq!(degenerate_check(&sp(3, -4)), Degeneracy::FatalPossible(int(2)));
        assert_eq!(degenerate_check(&sp(3, 0)), Degeneracy::FatalPossible(int(0)));
        assert_eq!(degenerate_check(&sp(3, 3)), Degeneracy::None);
    }

    #[test]
    fn fixed_z() {
        let fam = fixed_z_family(&Triple::ones(), &sp(3, 0), 4).unwrap();
        assert_eq!(fam.triples, vec![t(1, 2, 1), t(2, 5, 1), t(5, 13, 1), t(13, 34, 1)]);
        assert!(!fam.bounded);
        assert_eq!(fam.integ_checks, 4);
        // N = 1, z0 = 1: J = xy - x² - y² - 1 = -2 at (1, 1, 1)
        let fam = fixed_z_family(&Triple::ones(), &sp(1, -2), 12).unwrap();
        assert!(fam.bounded);
        assert_eq!(fam.triples[5], fam.triples[11]);
    }

    #[test]
    fn sweep_strategies_agree() {
        let cells: Vec<_> = (3..9).map(|n| sp(n, n - 3)).collect();
        let a = sweep(&cells, &Triple::ones(), 15, Exec::Sequential);
        let b = sweep(&cells, &Triple::ones(), 15, Exec::Parallel);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.iter().all(|c| c.verdict == Some(TripleVerdict::Growing)));
    }
}
