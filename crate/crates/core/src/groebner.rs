//! Buchberger's algorithm over the rationals, used to decide whether a system
//! of polynomials has a common zero on the torus `(C \ 0)^n`.
//!
//! Internally polynomials are kept with primitive integer coefficients and
//! reduced fraction-free; the returned basis is reduced and monic.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::divides;
use crate::poly::{Monomial, Polynomial, Rational};

/// Degree-reverse-lexicographic comparison; the last variable is the smallest.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[derive(Clone, Debug)]
pub struct GroebnerOptions {
    /// S-pairs reduced before giving up with [`Error::Inconclusive`].
    pub max_pair_reductions: usize,
    /// Largest coefficient, in bits, allowed in an intermediate row before
    /// giving up with [`Error::Inconclusive`]. Fraction-free reduction can swell
    /// coefficients so fast that the pair cap alone is never reached.
    pub max_coefficient_bits: u64,
    /// Record, for every basis element, cofactors expressing it in the inputs.
    pub track_cofactors: bool,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions {
            max_pair_reductions: 50_000,
            max_coefficient_bits: 4096,
            track_cofactors: false,
        }
    }
}

/// A list of polynomials sharing one variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    pub vars: Vec<String>,
    pub polys: Vec<Polynomial>,
}

impl PolySystem {
    pub fn new(vars: Vec<String>, polys: Vec<Polynomial>) -> Result<Self> {
        if let Some(p) = polys.iter().find(|p| p.vars() != vars.as_slice()) {
            return Err(Error::DimensionMismatch {
                expected: vars.len(),
                found: p.nvars(),
            });
        }
        Ok(PolySystem { vars, polys })
    }
}

/// The formal partial derivatives of `f`.
pub fn partials(f: &Polynomial) -> PolySystem {
    PolySystem {
        vars: f.vars().to_vec(),
        polys: (0..f.nvars()).map(|i| f.derivative(i)).collect(),
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub vars: Vec<String>,
    /// Reduced, monic, sorted by increasing leading monomial.
    pub polys: Vec<Polynomial>,
    /// `polys[k] = Σ_i cofactors[k][i] · input[i]` when tracking was requested.
    pub cofactors: Option<Vec<Vec<Polynomial>>>,
    pub pairs_reduced: usize,
}

impl GroebnerBasis {
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    /// Leading monomial of a member of this basis's ring.
    pub fn leading_monomial(p: &Polynomial) -> Option<&Monomial> {
        p.terms().keys().max_by(|a, b| grevlex_cmp(a, b))
    }
}

type Term = (Monomial, BigInt);

#[derive(Clone)]
struct Row {
    terms: Vec<Term>,
    cof: Option<Vec<Polynomial>>,
}

impl Row {
    fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    /// Divides out the content and makes the leading coefficient positive.
    fn normalize(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return;
        }
        for (_, c) in &mut self.terms {
            *c /= &g;
        }
        if let Some(cof) = &mut self.cof {
            let inv = Rational::new(BigInt::one(), g);
            for p in cof.iter_mut() {
                *p = p.scale(&inv);
            }
        }
    }
}

fn mono_add(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mono_sub(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// `a·h − c·x^shift·g`.
fn combine(h: &Row, a: &BigInt, g: &Row, c: &BigInt, shift: &[u32]) -> Row {
    let mut out: Vec<Term> = Vec::with_capacity(h.terms.len() + g.terms.len());
    let mut hi = h.terms.iter().peekable();
    let mut gi = g
        .terms
        .iter()
        .map(|(m, k)| (mono_add(m, shift), k))
        .peekable();
    loop {
        let ord = match (hi.peek(), gi.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some((mh, _)), Some((mg, _))) => grevlex_cmp(mh, mg),
        };
        match ord {
            Ordering::Greater => {
                let (m, k) = hi.next().unwrap();
                out.push((m.clone(), a * k));
            }
            Ordering::Less => {
                let (m, k) = gi.next().unwrap();
                out.push((m, -(c * k)));
            }
            Ordering::Equal => {
                let (m, kh) = hi.next().unwrap();
                let (_, kg) = gi.next().unwrap();
                let v = a * kh - c * kg;
                if !v.is_zero() {
                    out.push((m.clone(), v));
                }
            }
        }
    }
    let cof = match (&h.cof, &g.cof) {
        (Some(ch), Some(cg)) => {
            let ra = Rational::from_integer(a.clone());
            let rc = Rational::from_integer(c.clone());
            Some(
                ch.iter()
                    .zip(cg)
                    .map(|(p, q)| &p.scale(&ra) - &q.mul_term(shift, &rc))
                    .collect(),
            )
        }
        _ => None,
    };
    Row { terms: out, cof }
}

/// Fully reduces `h` modulo `basis`.
fn reduce(mut h: Row, basis: &[Row], max_bits: u64) -> Result<Row> {
    let mut i = 0;
    while i < h.terms.len() {
        let m = &h.terms[i].0;
        let Some(g) = basis.iter().find(|g| divides(g.lead(), m)) else {
            i += 1;
            continue;
        };
        let shift = mono_sub(m, g.lead());
        let l = h.terms[i].1.gcd(g.lc());
        let a = g.lc() / &l;
        let c = &h.terms[i].1 / &l;
        h = combine(&h, &a, g, &c, &shift);
        h.normalize();
        if h.terms.iter().any(|(_, k)| k.bits() > max_bits) {
            return Err(Error::Inconclusive(format!(
                "Gröbner basis coefficients exceeded {max_bits} bits"
            )));
        }
    }
    Ok(h)
}

fn s_polynomial(f: &Row, g: &Row) -> Row {
    let lcm = mono_lcm(f.lead(), g.lead());
    let l = f.lc().gcd(g.lc());
    let fa = g.lc() / &l;
    let gc = f.lc() / &l;
    // fa·(lcm/lt f)·f − gc·(lcm/lt g)·g
    let sf = mono_sub(&lcm, f.lead());
    let sg = mono_sub(&lcm, g.lead());
    let zero_row = Row {
        terms: vec![],
        cof: f.cof.as_ref().map(|c| zero_cofactors(c)),
    };
    let one = BigInt::one();
    let left = combine(&zero_row, &one, f, &-fa, &sf);
    let mut s = combine(&left, &one, g, &gc, &sg);
    s.normalize();
    s
}

fn zero_cofactors(like: &[Polynomial]) -> Vec<Polynomial> {
    like.iter()
        .map(|p| Polynomial::zero(p.vars().to_vec()))
        .collect()
}

fn to_row(p: &Polynomial, cof: Option<Vec<Polynomial>>) -> Row {
    let den = p
        .terms()
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut terms: Vec<Term> = p
        .terms()
        .iter()
        .map(|(m, c)| (m.clone(), (c * &den).to_integer()))
        .collect();
    terms.sort_by(|a, b| grevlex_cmp(&b.0, &a.0));
    let cof = cof.map(|c| {
        let rd = Rational::from_integer(den.clone());
        c.iter().map(|q| q.scale(&rd)).collect()
    });
    let mut r = Row { terms, cof };
    r.normalize();
    r
}

fn to_monic(vars: &[String], r: &Row) -> (Polynomial, Option<Vec<Polynomial>>) {
    let inv = Rational::new(BigInt::one(), r.lc().clone());
    let p = Polynomial::from_terms(
        vars.to_vec(),
        r.terms
            .iter()
            .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) * &inv)),
    )
    .expect("row dimension matches ring");
    let cof = r
        .cof
        .as_ref()
        .map(|c| c.iter().map(|q| q.scale(&inv)).collect());
    (p, cof)
}

fn pick_pair(pending: &BTreeSet<(usize, usize)>, rows: &[Row]) -> (usize, usize) {
    // normal strategy: smallest lcm first
    *pending
        .iter()
        .min_by(|&&(i, j), &&(k, l)| {
            let a = mono_lcm(rows[i].lead(), rows[j].lead());
            let b = mono_lcm(rows[k].lead(), rows[l].lead());
            grevlex_cmp(&a, &b).then_with(|| (i, j).cmp(&(k, l)))
        })
        .expect("pending is nonempty")
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// Reduced Gröbner basis of the ideal generated by `system`.
pub fn buchberger(system: &PolySystem, opts: &GroebnerOptions) -> Result<GroebnerBasis> {
    let vars = &system.vars;
    let ninputs = system.polys.len();
    let unit_cof = |k: usize| -> Vec<Polynomial> {
        (0..ninputs)
            .map(|i| {
                if i == k {
                    Polynomial::one(vars.clone())
                } else {
                    Polynomial::zero(vars.clone())
                }
            })
            .collect()
    };

    let mut rows: Vec<Row> = system
        .polys
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| to_row(p, opts.track_cofactors.then(|| unit_cof(k))))
        .collect();

    let finish_unit = |r: &Row, pairs: usize| {
        let (p, cof) = to_monic(vars, r);
        GroebnerBasis {
            vars: vars.clone(),
            polys: vec![p],
            cofactors: cof.map(|c| vec![c]),
            pairs_reduced: pairs,
        }
    };

    if let Some(r) = rows.iter().find(|r| r.lead().iter().all(|&e| e == 0)) {
        return Ok(finish_unit(r, 0));
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..rows.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    let mut reduced = 0usize;
    while !pending.is_empty() {
        let (i, j) = pick_pair(&pending, &rows);
        pending.remove(&(i, j));
        if coprime(rows[i].lead(), rows[j].lead()) {
            continue;
        }
        let lcm = mono_lcm(rows[i].lead(), rows[j].lead());
        let chain = (0..rows.len()).any(|k| {
            k != i
                && k != j
                && divides(rows[k].lead(), &lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        reduced += 1;
        if reduced > opts.max_pair_reductions {
            return Err(Error::Inconclusive(format!(
                "Gröbner basis computation exceeded {} pair reductions",
                opts.max_pair_reductions
            )));
        }
        let h = reduce(
            s_polynomial(&rows[i], &rows[j]),
            &rows,
            opts.max_coefficient_bits,
        )?;
        if h.terms.is_empty() {
            continue;
        }
        if h.lead().iter().all(|&e| e == 0) {
            return Ok(finish_unit(&h, reduced));
        }
        let new = rows.len();
        rows.push(h);
        for k in 0..new {
            pending.insert((k, new));
        }
    }

    // minimal basis: drop elements whose leading monomial is divisible by another's
    let keep: Vec<usize> = (0..rows.len())
        .filter(|&i| {
            !(0..rows.len()).any(|k| {
                k != i
                    && divides(rows[k].lead(), rows[i].lead())
                    && (rows[k].lead() != rows[i].lead() || k < i)
            })
        })
        .collect();
    let minimal: Vec<Row> = keep.iter().map(|&i| rows[i].clone()).collect();
    let mut out: Vec<Row> = Vec::with_capacity(minimal.len());
    for (idx, r) in minimal.iter().enumerate() {
        let others: Vec<Row> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != idx)
            .map(|(_, r)| r.clone())
            .collect();
        out.push(reduce(r.clone(), &others, opts.max_coefficient_bits)?);
    }
    out.sort_by(|a, b| grevlex_cmp(a.lead(), b.lead()));

    let mut polys = Vec::with_capacity(out.len());
    let mut cofs = Vec::with_capacity(out.len());
    for r in &out {
        let (p, c) = to_monic(vars, r);
        polys.push(p);
        cofs.push(c);
    }
    let cofactors = if opts.track_cofactors {
        cofs.into_iter().collect()
    } else {
        None
    };
    Ok(GroebnerBasis {
        vars: vars.clone(),
        polys,
        cofactors,
        pairs_reduced: reduced,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusVanishing {
    /// A common zero with every coordinate nonzero exists.
    YesSomewhere,
    Nowhere,
}

fn fresh_name(vars: &[String]) -> String {
    let mut name = "t".to_string();
    while vars.contains(&name) {
        name.push('_');
    }
    name
}

/// Decides whether `system` has a common zero on the torus by saturating with
/// an auxiliary variable `t` and the relation `t·x_1⋯x_n = 1`.
pub fn vanishes_on_torus(system: &PolySystem, opts: &GroebnerOptions) -> Result<TorusVanishing> {
    let n = system.vars.len();
    // Monomials are units on the torus.
    let polys: Vec<Polynomial> = system
        .polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.divide_monomial(&p.monomial_content().expect("nonzero")))
        .collect();
    if polys.is_empty() {
        return Ok(TorusVanishing::YesSomewhere);
    }
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(TorusVanishing::Nowhere);
    }

    let mut vars = system.vars.clone();
    vars.push(fresh_name(&vars));
    let mut ext: Vec<Polynomial> = polys.iter().map(|p| p.extend_vars(vars.clone())).collect();
    let sat = Polynomial::from_terms(
        vars.clone(),
        [
            (vec![1; n + 1], Rational::one()),
            (vec![0; n + 1], -Rational::one()),
        ],
    )?;
    ext.push(sat);
    let gb = buchberger(
        &PolySystem { vars, polys: ext },
        &GroebnerOptions {
            track_cofactors: false,
            ..opts.clone()
        },
    )?;
    Ok(if gb.is_unit() {
        TorusVanishing::Nowhere
    } else {
        TorusVanishing::YesSomewhere
    })
}
