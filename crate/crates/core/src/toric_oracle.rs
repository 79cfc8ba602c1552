//! Multiplier ideals of two-variable monomial ideals computed directly from a
//! toric log resolution, independently of the interior-of-polyhedron rule.
//!
//! The resolution is a smooth fan refining the normal fan of `P(a)`. Each ray
//! `v` is an exceptional (or coordinate) divisor `E_v`, along which `a` has
//! order `min_g v·g` and the relative canonical divisor has order
//! `v_1 + v_2 − 1`. Pushing `K − ⌊r·F⌋` forward gives the monomials `m` with
//! `v·m ≥ ⌊r·ord_v(a)⌋ − k_v` for every ray.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::multiplier::Coefficient;
use crate::poly::{Monomial, Rational};

pub type Ray = [i64; 2];

fn det(u: Ray, w: Ray) -> i64 {
    u[0] * w[1] - u[1] * w[0]
}

/// Rays of a complete fan of the first quadrant, counterclockwise from `(1,0)`
/// to `(0,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan2D {
    rays: Vec<Ray>,
}

impl Fan2D {
    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn determinants(&self) -> Vec<i64> {
        self.rays.windows(2).map(|w| det(w[0], w[1])).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.determinants().iter().all(|&d| d == 1)
    }

    /// Adds `target` by repeated stellar subdivision at `u + w` of the cone
    /// containing it. Every cone stays unimodular, so every sum is primitive and
    /// the walk follows the Stern–Brocot tree down to `target`.
    fn insert(&mut self, target: Ray) {
        loop {
            if self.rays.contains(&target) {
                return;
            }
            let i = self
                .rays
                .windows(2)
                .position(|w| det(w[0], target) > 0 && det(target, w[1]) > 0)
                .expect("target lies in the open first quadrant");
            let (u, w) = (self.rays[i], self.rays[i + 1]);
            self.rays.insert(i + 1, [u[0] + w[0], u[1] + w[1]]);
        }
    }
}

/// Per-ray data of the resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisorData {
    pub ray: Ray,
    /// Order of vanishing of the pulled-back ideal along the divisor.
    pub ord: i64,
    /// Order of the relative canonical divisor.
    pub k_rel: i64,
}

impl DivisorData {
    pub fn to_json(&self) -> Value {
        json!({ "ray": self.ray, "ord": self.ord, "k_rel": self.k_rel })
    }
}

fn check_plane(a: &MonomialIdeal) -> Result<()> {
    if a.dim() != 2 {
        return Err(Error::OracleDimension(a.dim()));
    }
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(())
}

/// Vertices of the lower-left convex hull of the generators, by increasing `x`.
fn hull(a: &MonomialIdeal) -> Vec<[i64; 2]> {
    let mut pts: Vec<[i64; 2]> = a
        .generators()
        .iter()
        .map(|g| [g[0] as i64, g[1] as i64])
        .collect();
    pts.sort();
    let mut out: Vec<[i64; 2]> = Vec::new();
    for p in pts {
        while out.len() >= 2 {
            let (o, q) = (out[out.len() - 2], out[out.len() - 1]);
            let cross = (q[0] - o[0]) * (p[1] - o[1]) - (q[1] - o[1]) * (p[0] - o[0]);
            if cross <= 0 {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

/// Primitive inner normals of the bounded edges of `P(a)`.
pub fn edge_normals(a: &MonomialIdeal) -> Result<Vec<Ray>> {
    check_plane(a)?;
    Ok(hull(a)
        .windows(2)
        .map(|e| {
            let (dx, dy) = (e[1][0] - e[0][0], e[1][1] - e[0][1]);
            let g = dx.gcd(&dy);
            [-dy / g, dx / g]
        })
        .collect())
}

/// Smallest smooth fan through every edge normal of `P(a)` reachable by
/// stellar subdivisions of the positive quadrant.
pub fn smooth_subdivision(a: &MonomialIdeal) -> Result<Fan2D> {
    let mut fan = Fan2D {
        rays: vec![[1, 0], [0, 1]],
    };
    for v in edge_normals(a)? {
        fan.insert(v);
    }
    Ok(fan)
}

pub fn divisor_data(a: &MonomialIdeal, fan: &Fan2D) -> Result<Vec<DivisorData>> {
    check_plane(a)?;
    Ok(fan
        .rays
        .iter()
        .map(|&v| {
            let ord = a
                .generators()
                .iter()
                .map(|g| v[0] * g[0] as i64 + v[1] * g[1] as i64)
                .min()
                .expect("nonzero ideal");
            DivisorData {
                ray: v,
                ord,
                k_rel: v[0] + v[1] - 1,
            }
        })
        .collect())
}

/// `J(r·a)` as the pushforward of `K_{X'/X} − ⌊r·F⌋` along the resolution.
pub fn multiplier_via_resolution(a: &MonomialIdeal, r: &Coefficient) -> Result<MonomialIdeal> {
    check_plane(a)?;
    let fan = smooth_subdivision(a)?;
    let data = divisor_data(a, &fan)?;
    let thresholds: Vec<(Ray, i64)> = data
        .iter()
        .map(|d| {
            let scaled = (r.value() * Rational::from_integer(BigInt::from(d.ord))).floor();
            let t = scaled
                .to_integer()
                .to_i64()
                .ok_or(Error::Overflow("divisor order"))?;
            Ok((d.ray, t - d.k_rel))
        })
        .collect::<Result<_>>()?;

    let max_coord = hull(a).iter().flatten().copied().max().unwrap_or(0);
    let mut bound = (r.value() * Rational::from_integer(BigInt::from(max_coord + 1)))
        .ceil()
        .to_integer()
        .to_i64()
        .ok_or(Error::Overflow("search box"))?
        + 1;
    loop {
        let mut members: Vec<Monomial> = Vec::new();
        for x in 0..=bound {
            for y in 0..=bound {
                if thresholds.iter().all(|(v, t)| v[0] * x + v[1] * y >= *t) {
                    members.push(vec![x as u32, y as u32]);
                }
            }
        }
        let j = MonomialIdeal::minimalize(2, members)?;
        if j.generators().iter().flatten().all(|&c| (c as i64) < bound) {
            return Ok(j);
        }
        bound *= 2;
    }
}

pub fn fan_to_json(fan: &Fan2D, data: &[DivisorData]) -> Value {
    json!({
        "rays": fan.rays(),
        "determinants": fan.determinants(),
        "divisors": data.iter().map(DivisorData::to_json).collect::<Vec<_>>(),
    })
}
