//! Flat contributions, vertex angles and the assembled Wilson-loop sum.

mod schur;
mod series;
mod sum;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{Map, Value};

pub use schur::{schur_eval, SchurEvaluator};
pub use series::{heat_kernel, normalized_expectation, partition_function, SeriesTruncation, SeriesValue};
pub use sum::NeumaierSum;

use crate::enumerate::{self, edge_label, is_balanced, TailReport, Truncation, TruncationMode, WeightConfiguration};
use crate::error::{Error, Result};
use crate::surface::{BoundaryKind, SurfaceGraph};
use crate::weights::{casimir, content, dim_unitary};

static FLAT_EVALUATIONS: AtomicU64 = AtomicU64::new(0);
static ODD_SINE_MULTIPLICITIES: AtomicU64 = AtomicU64::new(0);

/// Process-wide counters: flat contributions computed, and how many of
/// them hit an odd sine multiplicity.
pub fn rationality_guard_stats() -> (u64, u64) {
    (FLAT_EVALUATIONS.load(Ordering::Relaxed), ODD_SINE_MULTIPLICITIES.load(Ordering::Relaxed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexType {
    One,
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexAngleData {
    pub c1: i64,
    pub c2: i64,
    pub cos_value: BigRational,
    pub vertex_type: VertexType,
}

impl VertexAngleData {
    /// `sin²θ = 1 − cos²θ`.
    pub fn sin_squared(&self) -> BigRational {
        BigRational::one() - &self.cos_value * &self.cos_value
    }
}

/// `c1 = ᴄ(λ_E/λ_N)`, `c2 = ᴄ(λ_N/λ_W)` and `cos θ = 1/(c1 − c2)`.
pub fn vertex_angle(g: &SurfaceGraph, c: &WeightConfiguration, v: usize) -> Result<VertexAngleData> {
    let vx = &g.vertices()[v];
    let unbalanced = |e: Error| match e {
        Error::NotExtension(..) => Error::Unbalanced(format!("at vertex `{}`", vx.id)),
        other => other,
    };
    let c1 = content(c.get(vx.north), c.get(vx.east)).map_err(unbalanced)?;
    let c2 = content(c.get(vx.west), c.get(vx.north)).map_err(unbalanced)?;
    if c1 == c2 {
        return Err(Error::Internal(format!("equal contents at vertex `{}`", vx.id)));
    }
    let vertex_type = if c.get(vx.north) == c.get(vx.south) { VertexType::One } else { VertexType::Two };
    Ok(VertexAngleData {
        c1,
        c2,
        cos_value: BigRational::new(BigInt::one(), BigInt::from(c1 - c2)),
        vertex_type,
    })
}

fn dims(c: &WeightConfiguration) -> Vec<BigInt> {
    c.weights().iter().map(dim_unitary).collect()
}

/// Exact `𝓕(Λ)`: `∏_F d^{e_F} · ∏_{linear e} d_{R_e}^{-1} · ∏_v d_{E_v} · ∏_v a(v)`,
/// with sines taken pairwise per level-line pair. Unbalanced Λ gives 0.
pub fn flat_contribution(g: &SurfaceGraph, c: &WeightConfiguration) -> Result<BigRational> {
    if !is_balanced(g, c) {
        return Ok(BigRational::zero());
    }
    FLAT_EVALUATIONS.fetch_add(1, Ordering::Relaxed);
    let d = dims(c);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (f, face) in g.faces().iter().enumerate() {
        let p = Pow::pow(&d[f], face.euler_char.unsigned_abs() as u32);
        if face.euler_char >= 0 {
            num *= p;
        } else {
            den *= p;
        }
    }
    for e in g.edges().iter().filter(|e| e.is_linear()) {
        den *= &d[e.right];
    }
    for v in g.vertices() {
        num *= &d[v.east];
    }
    let mut value = BigRational::new(num, den);

    let mut pairs: HashMap<((usize, i64), (usize, i64)), (usize, BigRational)> = HashMap::new();
    for (k, v) in g.vertices().iter().enumerate() {
        let angle = vertex_angle(g, c, k)?;
        match angle.vertex_type {
            VertexType::One => value *= &angle.cos_value,
            VertexType::Two => {
                let a = edge_label(g, c, v.ne)?;
                let b = edge_label(g, c, v.nw)?;
                let key = if a <= b { (a, b) } else { (b, a) };
                let s2 = angle.sin_squared();
                let entry = pairs.entry(key).or_insert((0, s2.clone()));
                if entry.1 != s2 {
                    return Err(Error::Internal(format!("sine differs along level-line pair {key:?}")));
                }
                entry.0 += 1;
            }
        }
    }
    let mut keys: Vec<_> = pairs.keys().copied().collect();
    keys.sort();
    for key in keys {
        let (m, s2) = &pairs[&key];
        if m % 2 != 0 {
            ODD_SINE_MULTIPLICITIES.fetch_add(1, Ordering::Relaxed);
            return Err(Error::Internal(format!("odd crossing multiplicity {m} for level lines {key:?}")));
        }
        value *= Pow::pow(s2, (m / 2) as u32);
    }
    Ok(value)
}

/// Floating evaluation of `∏_F d^{e_F} ∏_v (d_N d_S)^{-1/2} ∏ cos θ ∏ sin θ`.
pub fn flat_contribution_float(g: &SurfaceGraph, c: &WeightConfiguration) -> Result<f64> {
    if !is_balanced(g, c) {
        return Ok(0.0);
    }
    let d: Vec<f64> = dims(c).iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY)).collect();
    let mut value = 1.0;
    for (f, face) in g.faces().iter().enumerate() {
        value *= d[f].powi(face.euler_char as i32);
    }
    for (k, v) in g.vertices().iter().enumerate() {
        value /= (d[v.north] * d[v.south]).sqrt();
        let angle = vertex_angle(g, c, k)?;
        let cos = 1.0 / (angle.c1 - angle.c2) as f64;
        value *= match angle.vertex_type {
            VertexType::One => cos,
            VertexType::Two => (1.0 - cos * cos).sqrt(),
        };
    }
    Ok(value)
}

/// Renders a rational as `"p/q"`, always with a denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let (p, q) = s.split_once('/').ok_or_else(|| Error::Parse(format!("`{s}` is not of the form p/q")))?;
    let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(p, q))
}

#[derive(Clone, Debug)]
pub struct ExactTerm {
    pub weights: WeightConfiguration,
    pub flat: BigRational,
    pub casimirs: Vec<i64>,
    pub schur_boundary: Complex64,
}

impl ExactTerm {
    pub fn exponent_rate(&self, areas: &[f64], rank: usize) -> f64 {
        self.casimirs.iter().zip(areas).map(|(&c, a)| a * c as f64).sum::<f64>() / (2.0 * rank as f64)
    }

    /// `flat · schur_boundary · exp(−Σ_F A_F c_F / 2N)`.
    pub fn value_at(&self, areas: &[f64], rank: usize) -> Complex64 {
        let flat = self.flat.to_f64().unwrap_or(f64::NAN);
        self.schur_boundary * flat * (-self.exponent_rate(areas, rank)).exp()
    }

    pub fn to_json_value(&self, g: &SurfaceGraph) -> Value {
        let mut casimirs = Map::new();
        for (f, c) in g.faces().iter().zip(&self.casimirs) {
            casimirs.insert(f.id.clone(), Value::from(*c));
        }
        let mut m = Map::new();
        m.insert("faces".into(), self.weights.to_json_value(g)["faces"].clone());
        m.insert("flat".into(), Value::from(format_rational(&self.flat)));
        m.insert("casimirs".into(), Value::Object(casimirs));
        m.insert("schur_boundary".into(), Value::from(vec![self.schur_boundary.re, self.schur_boundary.im]));
        Value::Object(m)
    }
}

#[derive(Clone, Debug)]
pub struct SymbolicExpectation {
    pub rank: usize,
    pub face_ids: Vec<String>,
    pub areas: Vec<f64>,
    pub terms: Vec<ExactTerm>,
    pub truncation: Truncation,
    pub tail: Option<TailReport>,
    pub diagnostic: Option<String>,
}

impl SymbolicExpectation {
    /// Compensated sum of the terms at the given areas.
    pub fn value_at(&self, areas: &[f64]) -> Complex64 {
        let mut re = NeumaierSum::default();
        let mut im = NeumaierSum::default();
        for t in &self.terms {
            let z = t.value_at(areas, self.rank);
            re.add(z.re);
            im.add(z.im);
        }
        Complex64::new(re.total(), im.total())
    }

    /// Value at the areas stored in the graph.
    pub fn value(&self) -> Complex64 {
        self.value_at(&self.areas)
    }

    pub fn truncation_json(&self) -> Value {
        let mut m = Map::new();
        match self.truncation.mode {
            TruncationMode::Anchored => {
                m.insert("mode".into(), Value::from("anchored"));
            }
            TruncationMode::BoxBound => {
                m.insert("mode".into(), Value::from("box_bound"));
                m.insert("max_box".into(), Value::from(self.truncation.max_box));
                if let Some(t) = &self.tail {
                    m.insert("discarded_min_rate".into(), t.discarded_min_rate.map_or(Value::Null, Value::from));
                }
            }
        }
        Value::Object(m)
    }

    pub fn to_json_value(&self, g: &SurfaceGraph) -> Value {
        let z = self.value();
        let mut m = Map::new();
        m.insert("value".into(), Value::from(z.re));
        if z.im.abs() > 1e-12 * z.re.abs().max(1.0) {
            m.insert("value_im".into(), Value::from(z.im));
        }
        m.insert("terms".into(), Value::from(self.terms.iter().map(|t| t.to_json_value(g)).collect::<Vec<_>>()));
        m.insert("truncation".into(), self.truncation_json());
        if let Some(d) = &self.diagnostic {
            m.insert("diagnostic".into(), Value::from(d.clone()));
        }
        Value::Object(m)
    }
}

/// `∏_i s_{λ_{F_i}}(w_i)` over constrained boundary components.
pub fn schur_boundary(g: &SurfaceGraph, c: &WeightConfiguration) -> Result<Complex64> {
    let mut z = Complex64::new(1.0, 0.0);
    for (f, face) in g.faces().iter().enumerate() {
        for b in &face.internal_boundaries {
            if let BoundaryKind::Constrained(ev) = &b.kind {
                z *= schur_eval(c.get(f), ev)?;
            }
        }
    }
    Ok(z)
}

pub fn exact_term(g: &SurfaceGraph, c: &WeightConfiguration) -> Result<ExactTerm> {
    Ok(ExactTerm {
        weights: c.clone(),
        flat: flat_contribution(g, c)?,
        casimirs: c.weights().iter().map(casimir).collect(),
        schur_boundary: schur_boundary(g, c)?,
    })
}

/// The non-normalised Wilson-loop expectation as a list of exact terms.
pub fn wilson_expectation(g: &SurfaceGraph, trunc: Truncation) -> Result<SymbolicExpectation> {
    let e = enumerate::enumerate_balanced(g, trunc)?;
    let terms: Vec<ExactTerm> = e
        .configs
        .par_iter()
        .map(|c| exact_term(g, c))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|t| !t.flat.is_zero())
        .collect();
    Ok(SymbolicExpectation {
        rank: g.rank(),
        face_ids: g.faces().iter().map(|f| f.id.clone()).collect(),
        areas: g.areas(),
        terms,
        truncation: trunc,
        tail: e.tail,
        diagnostic: e.diagnostic,
    })
}

#[cfg(test)]
mod tests;
