//! Multiplier ideals of monomial ideals and of nondegenerate polynomials.
//!
//! The multiplier ideal of a monomial ideal `a` at weight `r` is the monomial
//! ideal spanned by all `m` with `m + (1, ..., 1)` in the interior of `r·P(a)`,
//! where `P(a)` is the Newton polyhedron. A polynomial `f` whose restriction to
//! every face of `P(τ(f))` has a nowhere-vanishing differential on the torus
//! behaves like a general element of its term ideal `τ(f)`, so its multiplier
//! ideals are `f^⌊r⌋ · J({r}·τ(f))`.
//!
//! Module map:
//! - [`poly`]: exact sparse polynomials over the rationals.
//! - [`exprparse`]: expression grammar and expansion.
//! - [`ideal`]: monomial ideals.
//! - [`polytope`]: Newton polyhedra, faces, loci.
//! - [`groebner`]: Buchberger engine and the torus emptiness test.
//! - [`nondeg`]: per-face nondegeneracy classification.
//! - [`multiplier`]: multiplier ideals, lct, jumping numbers.
//! - [`toric_oracle`]: independent two-variable resolution path.

pub mod error;
pub mod exprparse;
pub mod groebner;
pub mod ideal;
pub mod multiplier;
pub mod nondeg;
pub mod poly;
pub mod polytope;
pub mod toric_oracle;

mod linalg;

pub use error::{Error, Result};
pub use exprparse::{parse_expr, parse_polynomial, ParseError, PolyExpr};
pub use ideal::{FactoredIdeal, MonomialIdeal};
pub use multiplier::{
    jumping_numbers, jumping_numbers_poly, lct, multiplier_monomial, multiplier_poly, Coefficient,
    Lct, Mode, PolyMultiplier,
};
pub use nondeg::{classify, NondegReport, Verdict};
pub use poly::{Monomial, Polynomial, Rational};
pub use polytope::{Face, Facet, Limits, NewtonPolyhedron};
