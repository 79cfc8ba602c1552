//! Face-by-face nondegeneracy of a polynomial with respect to the Newton
//! polyhedron of its term ideal.
//!
//! `f` is nondegenerate for a face `σ` when `d(f_σ)` has no zero on the torus.
//! A face whose `f_σ` is a single term is always nondegenerate, including the
//! origin vertex where `f_σ` is a nonzero constant.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groebner::{partials, vanishes_on_torus, GroebnerOptions, TorusVanishing};
use crate::ideal::MonomialIdeal;
use crate::poly::Polynomial;
use crate::polytope::{Face, Limits, NewtonPolyhedron};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Nondegenerate,
    Degenerate,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Nondegenerate => "nondegenerate",
            Verdict::Degenerate => "degenerate",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Degenerate anywhere wins; otherwise any inconclusive face poisons the result.
    fn combine<I: IntoIterator<Item = Verdict>>(it: I) -> Verdict {
        let mut out = Verdict::Nondegenerate;
        for v in it {
            match v {
                Verdict::Degenerate => return Verdict::Degenerate,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Nondegenerate => {}
            }
        }
        out
    }
}

/// A face on which `d(f_σ)` vanishes somewhere on the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateFace {
    pub active: Vec<usize>,
    pub dim: usize,
    pub compact: bool,
    pub face_polynomial: Polynomial,
}

impl DegenerateFace {
    pub fn to_json(&self) -> Value {
        json!({
            "active": self.active,
            "dim": self.dim,
            "compact": self.compact,
            "f_sigma": self.face_polynomial.to_string(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct FaceReport {
    pub face: Face,
    pub face_polynomial: Polynomial,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct NondegReport {
    pub polyhedron: NewtonPolyhedron,
    pub faces: Vec<FaceReport>,
    pub overall: Verdict,
    /// Verdict over compact faces only.
    pub principal_part: Verdict,
    pub witnesses: Vec<DegenerateFace>,
}

impl NondegReport {
    pub fn to_json(&self) -> Value {
        json!({
            "overall": self.overall.as_str(),
            "principal_part": self.principal_part.as_str(),
            "degenerate_faces": self.witnesses.iter().map(DegenerateFace::to_json).collect::<Vec<_>>(),
        })
    }

    /// Verdict over every face except the whole polyhedron.
    pub fn proper_faces(&self) -> Verdict {
        Verdict::combine(
            self.faces
                .iter()
                .filter(|r| !r.face.is_whole())
                .map(|r| r.verdict),
        )
    }
}

fn verdict_for(face_polynomial: &Polynomial, opts: &GroebnerOptions) -> Verdict {
    if face_polynomial.is_monomial() {
        return Verdict::Nondegenerate;
    }
    match vanishes_on_torus(&partials(face_polynomial), opts) {
        Ok(TorusVanishing::Nowhere) => Verdict::Nondegenerate,
        Ok(TorusVanishing::YesSomewhere) => Verdict::Degenerate,
        Err(_) => Verdict::Inconclusive,
    }
}

/// Nondegeneracy of `f` on a single face of `P(τ(f))`.
pub fn face_nondegenerate(
    f: &Polynomial,
    polyhedron: &NewtonPolyhedron,
    face: &Face,
    opts: &GroebnerOptions,
) -> Result<Verdict> {
    let fs = polyhedron.face_terms(f, face)?;
    if fs.is_zero() {
        return Err(Error::FaceMismatch);
    }
    Ok(verdict_for(&fs, opts))
}

/// Full per-face report with default limits.
pub fn classify(f: &Polynomial) -> Result<NondegReport> {
    classify_with(f, Limits::default(), &GroebnerOptions::default())
}

pub fn classify_with(
    f: &Polynomial,
    limits: Limits,
    opts: &GroebnerOptions,
) -> Result<NondegReport> {
    let tau = MonomialIdeal::term_ideal(f)?;
    let polyhedron = NewtonPolyhedron::with_limits(&tau, limits)?;
    let faces = polyhedron.faces()?;
    let terms: Vec<Polynomial> = faces
        .iter()
        .map(|face| polyhedron.face_terms(f, face))
        .collect::<Result<_>>()?;
    let verdicts: Vec<Verdict> = terms.par_iter().map(|fs| verdict_for(fs, opts)).collect();

    let faces: Vec<FaceReport> = faces
        .into_iter()
        .zip(terms)
        .zip(verdicts)
        .map(|((face, face_polynomial), verdict)| FaceReport {
            face,
            face_polynomial,
            verdict,
        })
        .collect();
    let overall = Verdict::combine(faces.iter().map(|r| r.verdict));
    let principal_part =
        Verdict::combine(faces.iter().filter(|r| r.face.compact).map(|r| r.verdict));
    let witnesses = faces
        .iter()
        .filter(|r| r.verdict == Verdict::Degenerate)
        .map(|r| DegenerateFace {
            active: r.face.active.clone(),
            dim: r.face.dim,
            compact: r.face.compact,
            face_polynomial: r.face_polynomial.clone(),
        })
        .collect();
    Ok(NondegReport {
        polyhedron,
        faces,
        overall,
        principal_part,
        witnesses,
    })
}
