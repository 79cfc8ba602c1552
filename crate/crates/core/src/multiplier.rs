//! Multiplier ideals, log canonical thresholds and jumping numbers.
//!
//! For a monomial ideal `a`, `J(r·a)` is spanned by the monomials `m` with
//! `m + (1, ..., 1)` in the interior of `r·P(a)`. For a polynomial `f` that is
//! nondegenerate on every face of `P(τ(f))`, `J(r·f) = (f^⌊r⌋) · J({r}·τ(f))`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::GroebnerOptions;
use crate::ideal::{FactoredIdeal, MonomialIdeal};
use crate::nondeg::{classify_with, NondegReport, Verdict};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::polytope::{Limits, NewtonPolyhedron};

/// A positive rational weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coefficient(Rational);

impl Coefficient {
    pub fn new(r: Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonPositiveCoefficient(r.to_string()));
        }
        Ok(Coefficient(r))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::NonPositiveCoefficient(format!("{num}/{den}")));
        }
        Coefficient::new(Rational::new(num.into(), den.into()))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// `{r} = r − ⌊r⌋`, in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        self.0.fract()
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Log canonical threshold; infinite for the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lct {
    Finite(Rational),
    Infinite,
}

impl Lct {
    /// `r < lct`.
    pub fn exceeds(&self, r: &Rational) -> bool {
        match self {
            Lct::Finite(c) => r < c,
            Lct::Infinite => true,
        }
    }
}

impl fmt::Display for Lct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lct::Finite(c) => write!(f, "{c}"),
            Lct::Infinite => write!(f, "inf"),
        }
    }
}

fn small_ratio(r: &Rational) -> Result<(i128, i128)> {
    let p = r
        .numer()
        .to_i128()
        .ok_or(Error::Overflow("coefficient numerator"))?;
    let q = r
        .denom()
        .to_i128()
        .ok_or(Error::Overflow("coefficient denominator"))?;
    Ok((p, q))
}

/// Minimal generators of `{m ≥ 0 : m + 1 ∈ Interior(r·P)}` with every
/// coordinate of the first `n − 1` variables below `bound`; the last coordinate
/// is solved for exactly.
fn staircase(p: &NewtonPolyhedron, num: i128, den: i128, bound: u32) -> Result<MonomialIdeal> {
    let n = p.dim();
    let facets = p.facets();
    let mut candidates: Vec<Monomial> = Vec::new();
    let mut prefix = vec![0u32; n - 1];
    loop {
        // smallest last coordinate that satisfies every facet
        let mut last: i128 = 0;
        let mut feasible = true;
        for f in facets {
            let s: i128 = f.normal[..n - 1]
                .iter()
                .zip(&prefix)
                .map(|(&v, &m)| v as i128 * (m as i128 + 1))
                .sum();
            let vn = f.normal[n - 1] as i128;
            let rhs = num * f.rhs as i128 - den * s;
            if vn == 0 {
                if rhs >= 0 {
                    feasible = false;
                    break;
                }
            } else {
                // den·vn·x_n > rhs with x_n = m_n + 1  ⇔  m_n ≥ ⌊rhs / (den·vn)⌋
                last = last.max(Integer::div_floor(&rhs, &(den * vn)));
            }
        }
        if feasible {
            let last = u32::try_from(last).map_err(|_| Error::Overflow("search box"))?;
            let mut m = prefix.clone();
            m.push(last);
            candidates.push(m);
        }
        // odometer over [0, bound]^(n-1)
        let mut i = 0;
        loop {
            if i == prefix.len() {
                return MonomialIdeal::minimalize(n, candidates);
            }
            if prefix[i] < bound {
                prefix[i] += 1;
                break;
            }
            prefix[i] = 0;
            i += 1;
        }
    }
}

/// Initial search bound `⌈r·(1 + max vertex coordinate)⌉ + 1`.
pub(crate) fn initial_bound(max_coord: u32, r: &Rational) -> Result<u32> {
    let b = (r * Rational::from_integer(BigInt::from(max_coord as u64 + 1)))
        .ceil()
        .to_integer();
    (b + 1u32).to_u32().ok_or(Error::Overflow("search box"))
}

/// `J(r·a)` for a polyhedron already built.
pub fn multiplier_of_polyhedron(p: &NewtonPolyhedron, r: &Coefficient) -> Result<MonomialIdeal> {
    let (num, den) = small_ratio(r.value())?;
    let mut bound = initial_bound(p.max_vertex_coordinate(), r.value())?;
    loop {
        let j = staircase(p, num, den, bound)?;
        if j.generators().iter().flatten().all(|&c| c < bound) {
            debug_assert!(j.generators().iter().all(|m| {
                let x: Vec<i128> = m.iter().map(|&c| c as i128 + 1).collect();
                p.in_scaled_interior_int(num, den, &x)
            }));
            return Ok(j);
        }
        bound = bound.checked_mul(2).ok_or(Error::Overflow("search box"))?;
    }
}

/// `J(r·a)` for a monomial ideal `a`.
pub fn multiplier_monomial(a: &MonomialIdeal, r: &Coefficient) -> Result<MonomialIdeal> {
    let p = NewtonPolyhedron::new(a)?;
    multiplier_of_polyhedron(&p, r)
}

fn lct_of_polyhedron(p: &NewtonPolyhedron) -> Lct {
    p.proper_facets()
        .map(|f| {
            Rational::new(
                BigInt::from(f.normal.iter().sum::<i64>()),
                BigInt::from(f.rhs),
            )
        })
        .min()
        .map_or(Lct::Infinite, Lct::Finite)
}

/// Log canonical threshold of a monomial ideal: the smallest `Σv / b` over
/// facets `v·x ≥ b` with `b > 0`.
pub fn lct(a: &MonomialIdeal) -> Result<Lct> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(lct_of_polyhedron(&NewtonPolyhedron::new(a)?))
}

/// Every value `v·(m+1)/b ≤ bound` over facets with `b > 0`. Coordinates
/// outside the support of `v` do not change the value and are left at zero.
fn jump_candidates(p: &NewtonPolyhedron, bound: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    for f in p.proper_facets() {
        let cap = (bound * Rational::from_integer(f.rhs.into()))
            .floor()
            .to_integer();
        let cap = cap.to_i64().unwrap_or(i64::MAX);
        let support: Vec<i64> = f.normal.iter().copied().filter(|&v| v > 0).collect();
        let mut stack: Vec<(usize, i64)> = vec![(0, 0)];
        while let Some((i, s)) = stack.pop() {
            if i == support.len() {
                out.push(Rational::new(s.into(), f.rhs.into()));
                continue;
            }
            // x_i = m_i + 1 ≥ 1
            let mut x = 1i64;
            let rest: i64 = support[i + 1..].iter().sum();
            while s + support[i] * x + rest <= cap {
                stack.push((i + 1, s + support[i] * x));
                x += 1;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Keeps the candidates `c` for which `differs(c, mid)` holds, where `mid` is
/// the midpoint between `c` and the previous candidate (or 0).
fn verified_jumps<F>(candidates: Vec<Rational>, differs: F) -> Result<Vec<Rational>>
where
    F: Fn(&Rational, &Rational) -> Result<bool> + Sync,
{
    let two = Rational::from_integer(BigInt::from(2));
    let pairs: Vec<(Rational, Rational)> = candidates
        .into_iter()
        .scan(Rational::zero(), |prev, c| {
            let mid = (&*prev + &c) / &two;
            *prev = c.clone();
            Some((c, mid))
        })
        .collect();
    let flags: Vec<Result<bool>> = pairs.par_iter().map(|(c, mid)| differs(c, mid)).collect();
    let mut out = Vec::new();
    for ((c, _), flag) in pairs.into_iter().zip(flags) {
        if flag? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Whether `J(r·a)` differs from `J(s·a)`.
fn monomial_drop(p: &NewtonPolyhedron, r: &Rational, s: &Rational) -> Result<bool> {
    let jr = multiplier_of_polyhedron(p, &Coefficient::new(r.clone())?)?;
    let js = multiplier_of_polyhedron(p, &Coefficient::new(s.clone())?)?;
    Ok(jr != js)
}

/// All `r ∈ (0, bound]` at which `J(r·a)` strictly shrinks.
pub fn jumping_numbers(a: &MonomialIdeal, bound: &Rational) -> Result<Vec<Rational>> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if a.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if !bound.is_positive() {
        return Err(Error::NonPositiveCoefficient(bound.to_string()));
    }
    let p = NewtonPolyhedron::new(a)?;
    jumps_of_polyhedron(&p, bound)
}

fn jumps_of_polyhedron(p: &NewtonPolyhedron, bound: &Rational) -> Result<Vec<Rational>> {
    verified_jumps(jump_candidates(p, bound), |c, mid| monomial_drop(p, c, mid))
}

/// Which nondegeneracy hypothesis authorizes the polynomial formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every face nondegenerate; the result holds globally.
    Strict,
    /// Compact faces nondegenerate; the result holds near the origin.
    PrincipalPart,
}

/// Multiplier ideals of a polynomial certified nondegenerate once up front.
#[derive(Clone, Debug)]
pub struct PolyMultiplier {
    f: Polynomial,
    tau: MonomialIdeal,
    report: NondegReport,
    mode: Mode,
}

impl PolyMultiplier {
    pub fn new(f: &Polynomial, mode: Mode) -> Result<Self> {
        PolyMultiplier::with_options(f, mode, Limits::default(), &GroebnerOptions::default())
    }

    pub fn with_options(
        f: &Polynomial,
        mode: Mode,
        limits: Limits,
        opts: &GroebnerOptions,
    ) -> Result<Self> {
        let report = classify_with(f, limits, opts)?;
        let verdict = match mode {
            Mode::Strict => report.overall,
            Mode::PrincipalPart => report.principal_part,
        };
        match verdict {
            Verdict::Nondegenerate => {}
            Verdict::Degenerate => {
                let witnesses = report
                    .witnesses
                    .iter()
                    .filter(|w| mode == Mode::Strict || w.compact)
                    .cloned()
                    .collect();
                return Err(Error::Degenerate { witnesses });
            }
            Verdict::Inconclusive => {
                return Err(Error::Inconclusive(
                    "nondegeneracy could not be certified within the engine limits".into(),
                ))
            }
        }
        let tau = MonomialIdeal::term_ideal(f)?;
        Ok(PolyMultiplier {
            f: f.clone(),
            tau,
            report,
            mode,
        })
    }

    pub fn report(&self) -> &NondegReport {
        &self.report
    }

    pub fn term_ideal(&self) -> &MonomialIdeal {
        &self.tau
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `J(r·f) = (f^⌊r⌋) · J({r}·τ(f))`, with `J(0·τ) = (1)`.
    pub fn at(&self, r: &Coefficient) -> Result<FactoredIdeal> {
        let k = r
            .floor()
            .to_u32()
            .ok_or(Error::Overflow("multiplier exponent"))?;
        let frac = r.fract();
        let monomial = if frac.is_zero() {
            MonomialIdeal::unit(self.f.nvars())
        } else {
            multiplier_of_polyhedron(&self.report.polyhedron, &Coefficient::new(frac)?)?
        };
        Ok(FactoredIdeal {
            base: self.f.clone(),
            exponent: k,
            monomial,
        })
    }

    /// `min(1, lct(τ(f)))`.
    pub fn lct(&self) -> Rational {
        match lct_of_polyhedron(&self.report.polyhedron) {
            Lct::Finite(c) if c < Rational::one() => c,
            _ => Rational::one(),
        }
    }

    /// Jumps of `r ↦ J(r·f)` in `(0, bound]`, each verified by an ideal comparison.
    pub fn jumping_numbers(&self, bound: &Rational) -> Result<Vec<Rational>> {
        if !bound.is_positive() {
            return Err(Error::NonPositiveCoefficient(bound.to_string()));
        }
        let one = Rational::one();
        let fractional: Vec<Rational> = if self.tau.is_unit() {
            Vec::new()
        } else {
            jump_candidates(&self.report.polyhedron, &one)
                .into_iter()
                .filter(|c| c < &one)
                .collect()
        };
        let mut candidates = Vec::new();
        let top = bound
            .floor()
            .to_integer()
            .to_u32()
            .ok_or(Error::Overflow("jump bound"))?;
        for k in 0..=top {
            let shift = Rational::from_integer(k.into());
            if k >= 1 {
                candidates.push(shift.clone());
            }
            candidates.extend(fractional.iter().map(|c| c + &shift));
        }
        candidates.retain(|c| c <= bound);
        candidates.sort();
        candidates.dedup();
        verified_jumps(candidates, |c, mid| {
            let at = self.at(&Coefficient::new(c.clone())?)?;
            let below = self.at(&Coefficient::new(mid.clone())?)?;
            Ok(!at.same_ideal(&below))
        })
    }
}

/// `J(r·f)` for a polynomial satisfying the nondegeneracy required by `mode`.
pub fn multiplier_poly(f: &Polynomial, r: &Coefficient, mode: Mode) -> Result<FactoredIdeal> {
    PolyMultiplier::new(f, mode)?.at(r)
}

/// Jumping numbers of a nondegenerate polynomial.
pub fn jumping_numbers_poly(f: &Polynomial, bound: &Rational, mode: Mode) -> Result<Vec<Rational>> {
    PolyMultiplier::new(f, mode)?.jumping_numbers(bound)
}
