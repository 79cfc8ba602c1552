//! Monomial ideals stored by their minimal generators.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// `a` divides `b` componentwise.
pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// A monomial ideal in `n` variables.
///
/// `gens` is an antichain under divisibility, sorted lexicographically. An
/// empty list is the zero ideal; the single zero vector is the unit ideal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: Vec::new(),
        }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![vec![0; n]],
        }
    }

    /// The ideal generated by `set`, reduced to its minimal generators.
    pub fn minimalize<I>(n: usize, set: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut all: Vec<Monomial> = Vec::new();
        for m in set {
            if m.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.len(),
                });
            }
            all.push(m);
        }
        // A divisor has total degree no larger than its multiple, so scanning in
        // degree order only ever compares against already-kept generators.
        all.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        all.dedup();
        let mut gens: Vec<Monomial> = Vec::new();
        for m in all {
            if !gens.iter().any(|g| divides(g, &m)) {
                gens.push(m);
            }
        }
        gens.sort();
        Ok(MonomialIdeal { n, gens })
    }

    /// The ideal generated by the terms of `f`.
    pub fn term_ideal(f: &Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        MonomialIdeal::minimalize(f.nvars(), f.terms().keys().cloned())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].iter().all(|&e| e == 0)
    }

    pub fn contains(&self, m: &[u32]) -> Result<bool> {
        if m.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.len(),
            });
        }
        Ok(self.gens.iter().any(|g| divides(g, m)))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(other
            .gens
            .iter()
            .all(|g| self.gens.iter().any(|h| divides(h, g))))
    }

    /// Product with the principal ideal `(x^m)`.
    pub fn shift(&self, m: &[u32]) -> MonomialIdeal {
        let mut gens: Vec<Monomial> = self
            .gens
            .iter()
            .map(|g| g.iter().zip(m).map(|(a, b)| a + b).collect())
            .collect();
        gens.sort();
        MonomialIdeal { n: self.n, gens }
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "generators": self.gens })
    }

    /// Renders generators as monomials in the given variable names.
    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "(0)".into();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| render_monomial(g, vars)).collect();
        format!("({})", parts.join(", "))
    }
}

pub fn render_monomial(e: &[u32], vars: &[String]) -> String {
    let factors: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                vars[i].clone()
            } else {
                format!("{}^{}", vars[i], k)
            }
        })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal{:?}", self.gens)
    }
}

/// An ideal of the form `(f^k) · J` with `J` monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredIdeal {
    pub base: Polynomial,
    pub exponent: u32,
    pub monomial: MonomialIdeal,
}

impl FactoredIdeal {
    /// Folds a monomial (or constant) base into the monomial part so that two
    /// representations of the same ideal become structurally comparable.
    pub fn normalized(&self) -> FactoredIdeal {
        if self.exponent == 0 || !self.base.is_monomial() {
            let exponent = if self.monomial.is_zero() {
                0
            } else {
                self.exponent
            };
            return FactoredIdeal {
                exponent,
                ..self.clone()
            };
        }
        let e = self.base.terms().keys().next().expect("monomial base");
        let shift: Monomial = e.iter().map(|&x| x * self.exponent).collect();
        FactoredIdeal {
            base: Polynomial::one(self.base.vars().to_vec()),
            exponent: 0,
            monomial: self.monomial.shift(&shift),
        }
    }

    /// Equality as ideals of the polynomial ring.
    ///
    /// `f^k J = f^l J'` with `k < l` forces `J = f^(l-k) J'`, which is only
    /// possible for monomial `f` (divisors of monomials are monomials) or when
    /// both sides vanish. Bases are assumed to be the same polynomial up to a
    /// nonzero scalar.
    pub fn same_ideal(&self, other: &FactoredIdeal) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        if a.monomial.is_zero() || b.monomial.is_zero() {
            return a.monomial.is_zero() && b.monomial.is_zero();
        }
        a.exponent == b.exponent && a.monomial == b.monomial
    }

    pub fn to_json(&self) -> Value {
        json!({
            "principal": { "base": self.base.to_string(), "exponent": self.exponent },
            "monomial_generators": self.monomial.generators(),
        })
    }
}

impl fmt::Display for FactoredIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = self.monomial.render(self.base.vars());
        match self.exponent {
            0 => write!(f, "{j}"),
            1 => write!(f, "({}) * {j}", self.base),
            k => write!(f, "({})^{k} * {j}", self.base),
        }
    }
}
