//! Newton polyhedra `P(a) = conv(gens) + R^n_{≥0}` of monomial ideals.
//!
//! Facets are found exactly by homogenizing: `P` is the slice `t = 1` of the
//! cone spanned by `(g, 1)` for each generator `g` and `(e_i, 0)` for each
//! coordinate direction. Every facet of that cone is the kernel of `n`
//! independent spanning rays, so it suffices to try every `n`-subset and keep
//! the kernels that are valid on all rays.
//!
//! Supporting coordinate hyperplanes `x_i ≥ 0` are kept in the facet list
//! (with right-hand side 0) so that faces, interiors and loci can be handled
//! uniformly.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg;
use crate::poly::{Monomial, Polynomial, Rational};

/// Size caps for the exponential parts of the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_dimension: usize,
    pub max_facets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dimension: 6,
            max_facets: 20,
        }
    }
}

/// The half-space `normal · x ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub rhs: i64,
}

impl Facet {
    /// Coordinate facets are exactly those through the origin.
    pub fn is_coordinate(&self) -> bool {
        self.rhs == 0
    }

    pub fn eval(&self, m: &[u32]) -> i64 {
        self.normal.iter().zip(m).map(|(&v, &x)| v * x as i64).sum()
    }

    pub fn is_tight(&self, m: &[u32]) -> bool {
        self.eval(m) == self.rhs
    }

    fn eval_rational(&self, x: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (&v, xi)| {
                acc + xi * Rational::from_integer(v.into())
            })
    }
}

#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    n: usize,
    vertices: Vec<Monomial>,
    facets: Vec<Facet>,
    limits: Limits,
}

/// A face of a Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Indices into [`NewtonPolyhedron::facets`] of every inequality tight on the face.
    pub active: Vec<usize>,
    pub dim: usize,
    pub compact: bool,
    /// Indices into [`NewtonPolyhedron::vertices`] lying on the face.
    pub vertices: Vec<usize>,
    /// Coordinate directions `e_i` in the recession cone of the face.
    pub recession: Vec<usize>,
    /// Sum of the active facet normals; zero for the whole polyhedron.
    pub sample_functional: Vec<i64>,
}

impl Face {
    /// Variables with zero weight under the sample functional. The locus of the
    /// face is the coordinate subspace they span; empty means the origin.
    pub fn locus(&self) -> Vec<usize> {
        self.sample_functional
            .iter()
            .enumerate()
            .filter(|(_, &w)| w == 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_whole(&self) -> bool {
        self.active.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({ "active": self.active, "dim": self.dim, "compact": self.compact })
    }
}

impl NewtonPolyhedron {
    pub fn new(a: &MonomialIdeal) -> Result<Self> {
        NewtonPolyhedron::with_limits(a, Limits::default())
    }

    pub fn with_limits(a: &MonomialIdeal, limits: Limits) -> Result<Self> {
        let n = a.dim();
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if n > limits.max_dimension {
            return Err(Error::DimensionCap {
                n,
                cap: limits.max_dimension,
            });
        }
        if a.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let gens = a.generators();

        let mut rays: Vec<Vec<i128>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| x as i128).chain([1]).collect())
            .collect();
        for i in 0..n {
            let mut e = vec![0i128; n + 1];
            e[i] = 1;
            rays.push(e);
        }

        let mut found: BTreeSet<Facet> = BTreeSet::new();
        for combo in (0..rays.len()).combinations(n) {
            let rows: Vec<Vec<i128>> = combo.iter().map(|&i| rays[i].clone()).collect();
            let mut w = linalg::kernel_vector(&rows)?;
            if w.iter().all(|&x| x == 0) {
                continue;
            }
            let dots: Vec<i128> = rays
                .iter()
                .map(|r| r.iter().zip(&w).map(|(a, b)| a * b).sum())
                .collect();
            let pos = dots.iter().any(|&d| d > 0);
            let neg = dots.iter().any(|&d| d < 0);
            if pos && neg {
                continue;
            }
            if neg {
                w.iter_mut().for_each(|x| *x = -*x);
            }
            linalg::primitive(&mut w);
            if w[..n].iter().all(|&x| x == 0) {
                // the face at infinity, t ≥ 0
                continue;
            }
            let conv = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow("facet normal"));
            let normal = w[..n]
                .iter()
                .map(|&x| conv(x))
                .collect::<Result<Vec<_>>>()?;
            found.insert(Facet {
                normal,
                rhs: conv(-w[n])?,
            });
        }

        let mut facets: Vec<Facet> = found.into_iter().collect();
        facets.sort_by(|a, b| {
            a.is_coordinate()
                .cmp(&b.is_coordinate())
                .then_with(|| b.normal.cmp(&a.normal))
        });

        let vertices: Vec<Monomial> = gens
            .iter()
            .filter(|g| {
                let tight: Vec<Vec<i128>> = facets
                    .iter()
                    .filter(|f| f.is_tight(g))
                    .map(|f| f.normal.iter().map(|&x| x as i128).collect())
                    .collect();
                linalg::rank(&tight) == n
            })
            .cloned()
            .collect();

        Ok(NewtonPolyhedron {
            n,
            vertices,
            facets,
            limits,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Facets not through the origin, i.e. those that bound `P` away from the
    /// coordinate hyperplanes.
    pub fn proper_facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| !f.is_coordinate())
    }

    pub fn max_vertex_coordinate(&self) -> u32 {
        self.vertices.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn contains_lattice(&self, m: &[u32]) -> bool {
        self.facets.iter().all(|f| f.eval(m) >= f.rhs)
    }

    /// Whether `x` lies in the topological interior of `r·P`.
    pub fn in_scaled_interior(&self, r: &Rational, x: &[Rational]) -> Result<bool> {
        if !r.is_positive() {
            return Err(Error::NonPositiveCoefficient(r.to_string()));
        }
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let mut ok = true;
        for f in &self.facets {
            let bound = r * Rational::from_integer(BigInt::from(f.rhs));
            if f.eval_rational(x) <= bound {
                ok = false;
                break;
            }
        }
        Ok(ok)
    }

    /// Integer form of [`Self::in_scaled_interior`] for `r = p/q`, `q > 0`.
    pub(crate) fn in_scaled_interior_int(&self, p: i128, q: i128, x: &[i128]) -> bool {
        self.facets.iter().all(|f| {
            let s: i128 = f.normal.iter().zip(x).map(|(&v, &xi)| v as i128 * xi).sum();
            q * s > p * f.rhs as i128
        })
    }

    fn face_from_active(&self, active: &[usize]) -> Option<Face> {
        let vertices: Vec<usize> = (0..self.vertices.len())
            .filter(|&k| {
                active
                    .iter()
                    .all(|&j| self.facets[j].is_tight(&self.vertices[k]))
            })
            .collect();
        if vertices.is_empty() {
            return None;
        }
        let recession: Vec<usize> = (0..self.n)
            .filter(|&i| active.iter().all(|&j| self.facets[j].normal[i] == 0))
            .collect();
        let closure: Vec<usize> = (0..self.facets.len())
            .filter(|&j| {
                let f = &self.facets[j];
                vertices.iter().all(|&k| f.is_tight(&self.vertices[k]))
                    && recession.iter().all(|&i| f.normal[i] == 0)
            })
            .collect();

        let base = &self.vertices[vertices[0]];
        let mut rows: Vec<Vec<i128>> = vertices[1..]
            .iter()
            .map(|&k| {
                self.vertices[k]
                    .iter()
                    .zip(base)
                    .map(|(&a, &b)| a as i128 - b as i128)
                    .collect()
            })
            .collect();
        for &i in &recession {
            let mut e = vec![0i128; self.n];
            e[i] = 1;
            rows.push(e);
        }
        let dim = linalg::rank(&rows);

        let mut sample = vec![0i64; self.n];
        for &j in &closure {
            for (s, v) in sample.iter_mut().zip(&self.facets[j].normal) {
                *s += v;
            }
        }
        Some(Face {
            active: closure,
            dim,
            compact: recession.is_empty(),
            vertices,
            recession,
            sample_functional: sample,
        })
    }

    /// All faces, from the whole polyhedron down to the vertices.
    ///
    /// Faces are generated by intersecting known faces with one more facet and
    /// closing the active set, which reaches every face because each face is the
    /// intersection of the facets containing it.
    pub fn faces(&self) -> Result<Vec<Face>> {
        if self.facets.len() > self.limits.max_facets {
            return Err(Error::FacetCap {
                count: self.facets.len(),
                cap: self.limits.max_facets,
            });
        }
        let whole = self.face_from_active(&[]).expect("P is nonempty");
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(whole.active.clone());
        let mut out = vec![];
        let mut queue = VecDeque::from([whole]);
        while let Some(face) = queue.pop_front() {
            for j in 0..self.facets.len() {
                if face.active.contains(&j) {
                    continue;
                }
                let mut act = face.active.clone();
                act.push(j);
                if let Some(g) = self.face_from_active(&act) {
                    if seen.insert(g.active.clone()) {
                        queue.push_back(g);
                    }
                }
            }
            out.push(face);
        }
        out.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.active.cmp(&b.active)));
        Ok(out)
    }

    /// The terms of `f` lying on `face`, coefficients retained.
    pub fn face_terms(&self, f: &Polynomial, face: &Face) -> Result<Polynomial> {
        if f.nvars() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: f.nvars(),
            });
        }
        if face.active.iter().any(|&j| j >= self.facets.len())
            || f.terms().keys().any(|e| !self.contains_lattice(e))
        {
            return Err(Error::FaceMismatch);
        }
        Polynomial::from_terms(
            f.vars().to_vec(),
            f.terms()
                .iter()
                .filter(|(e, _)| face.active.iter().all(|&j| self.facets[j].is_tight(e)))
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn to_json(&self) -> Value {
        let facets: Vec<Value> = self
            .facets
            .iter()
            .map(|f| json!([f.normal, f.rhs]))
            .collect();
        json!({ "n": self.n, "vertices": self.vertices, "facets": facets })
    }
}
