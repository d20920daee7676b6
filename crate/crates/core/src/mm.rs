//! Makeenko–Migdal checks at a single crossing.
//!
//! The alternating area derivative `∂_N − ∂_W + ∂_S − ∂_E` at a vertex is
//! compared against `1/N` times the expectation of the graph with that
//! crossing pulled apart.

use std::collections::HashMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::enumerate::{is_balanced, Truncation, TruncationMode, WeightConfiguration};
use crate::error::{Error, Result};
use crate::evaluate::{flat_contribution, vertex_angle, wilson_expectation, SymbolicExpectation, VertexType};
use crate::surface::{validate, Edge, EdgeKind, Face, SurfaceGraph, Vertex};

/// `(c_E − c_N) − (c_S − c_W)` for one term, one corner per slot.
pub fn corner_combination(casimirs: &[i64], v: &Vertex) -> i64 {
    (casimirs[v.east] - casimirs[v.north]) - (casimirs[v.south] - casimirs[v.west])
}

fn vertex_of(g: &SurfaceGraph, v: usize) -> Result<&Vertex> {
    g.vertices()
        .get(v)
        .ok_or_else(|| Error::Precondition(format!("vertex index {v} out of range ({} vertices)", g.vertices().len())))
}

/// The alternating area derivative at `v`, applied term by term.
pub fn mm_lhs_of(g: &SurfaceGraph, e: &SymbolicExpectation, v: usize) -> Result<Complex64> {
    let vert = vertex_of(g, v)?;
    let scale = 1.0 / (2.0 * g.rank() as f64);
    Ok(e.terms
        .iter()
        .map(|t| t.value_at(&e.areas, e.rank) * (corner_combination(&t.casimirs, vert) as f64 * scale))
        .sum())
}

pub fn mm_lhs(g: &SurfaceGraph, v: usize, trunc: Truncation) -> Result<Complex64> {
    vertex_of(g, v)?;
    mm_lhs_of(g, &wilson_expectation(g, trunc)?, v)
}

/// The graph with `v` removed. The incoming south-west edge now runs into the
/// outgoing north-west one, and south-east into north-east, so the two strands
/// no longer cross and faces `N` and `S` become one face.
pub fn desingularize(g: &SurfaceGraph, v: usize) -> Result<SurfaceGraph> {
    let vert = vertex_of(g, v)?.clone();
    let (north, south) = (vert.north, vert.south);

    // Old face index → new face index; the merged face takes N's place.
    let mut face_map = vec![0usize; g.faces().len()];
    let mut faces: Vec<Face> = Vec::new();
    for (f, face) in g.faces().iter().enumerate() {
        if f == south && south != north {
            continue;
        }
        face_map[f] = faces.len();
        if f == north {
            let s = &g.faces()[south];
            let merged = if south == north {
                Face { euler_char: face.euler_char - 1, ..face.clone() }
            } else {
                let mut internal = face.internal_boundaries.clone();
                internal.extend(s.internal_boundaries.iter().cloned());
                Face {
                    id: format!("{}+{}", face.id, s.id),
                    area: face.area + s.area,
                    euler_char: face.euler_char + s.euler_char - 1,
                    external_boundaries: 0,
                    internal_boundaries: internal,
                }
            };
            faces.push(merged);
        } else {
            faces.push(face.clone());
        }
    }
    if south != north {
        face_map[south] = face_map[north];
    }

    let old_vertex_index = |u: usize| if u > v { u - 1 } else { u };
    let touches = |e: &Edge| matches!(e.kind, EdgeKind::Linear { from, to } if from == v || to == v);
    // Through v, the edge arriving in slot sw continues as nw, and se as ne.
    let mut succ: HashMap<usize, usize> = HashMap::new();
    succ.insert(vert.sw, vert.nw);
    succ.insert(vert.se, vert.ne);
    let has_pred: Vec<usize> = succ.values().copied().collect();

    let mut edge_map: HashMap<usize, usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let remap_sides = |e: &Edge| (face_map[e.left], face_map[e.right]);
    for (k, e) in g.edges().iter().enumerate() {
        if touches(e) {
            continue;
        }
        let (left, right) = remap_sides(e);
        let kind = match e.kind {
            EdgeKind::Linear { from, to } => EdgeKind::Linear { from: old_vertex_index(from), to: old_vertex_index(to) },
            EdgeKind::Circular => EdgeKind::Circular,
        };
        edge_map.insert(k, edges.len());
        edges.push(Edge { id: e.id.clone(), kind, left, right });
    }
    let mut chain_edges = |chain: Vec<usize>, closed: bool, edges: &mut Vec<Edge>| {
        let first = &g.edges()[chain[0]];
        let last = &g.edges()[*chain.last().expect("non-empty chain")];
        let kind = if closed {
            EdgeKind::Circular
        } else {
            match (first.kind, last.kind) {
                (EdgeKind::Linear { from, .. }, EdgeKind::Linear { to, .. }) => {
                    EdgeKind::Linear { from: old_vertex_index(from), to: old_vertex_index(to) }
                }
                _ => unreachable!("chains consist of linear edges"),
            }
        };
        let (left, right) = remap_sides(first);
        let id = chain.iter().map(|&k| g.edges()[k].id.as_str()).collect::<Vec<_>>().join("~");
        for &k in &chain {
            edge_map.insert(k, edges.len());
        }
        edges.push(Edge { id, kind, left, right });
    };
    let mut used = vec![false; g.edges().len()];
    // Open chains start at an edge that does not leave v.
    for (k, e) in g.edges().iter().enumerate() {
        if !touches(e) || has_pred.contains(&k) {
            continue;
        }
        let mut chain = vec![k];
        used[k] = true;
        let mut cur = k;
        while let Some(&next) = succ.get(&cur) {
            chain.push(next);
            used[next] = true;
            cur = next;
        }
        chain_edges(chain, false, &mut edges);
    }
    // What remains runs through v and closes up.
    for (k, e) in g.edges().iter().enumerate() {
        if !touches(e) || used[k] {
            continue;
        }
        let mut chain = vec![k];
        used[k] = true;
        let mut cur = succ[&k];
        while cur != k {
            chain.push(cur);
            used[cur] = true;
            cur = succ[&cur];
        }
        chain_edges(chain, true, &mut edges);
    }

    let vertices: Vec<Vertex> = g
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(u, _)| u != v)
        .map(|(_, u)| Vertex {
            id: u.id.clone(),
            north: face_map[u.north],
            west: face_map[u.west],
            south: face_map[u.south],
            east: face_map[u.east],
            ne: edge_map[&u.ne],
            nw: edge_map[&u.nw],
            sw: edge_map[&u.sw],
            se: edge_map[&u.se],
        })
        .collect();

    let draft = SurfaceGraph::new(
        g.rank(),
        g.surface_euler_char(),
        g.is_closed(),
        faces.clone(),
        edges.clone(),
        vertices.clone(),
        None,
    );
    let mut counts = vec![0usize; faces.len()];
    for (f, _) in draft.boundary_cycles()? {
        counts[f] += 1;
    }
    for (face, c) in faces.iter_mut().zip(counts) {
        face.external_boundaries = c;
    }
    let out = SurfaceGraph::new(g.rank(), g.surface_euler_char(), g.is_closed(), faces, edges, vertices, None);
    let violations = validate(&out);
    if !violations.is_empty() {
        return Err(Error::Internal(format!(
            "desingularized graph fails validation: {}",
            violations.iter().map(|x| x.detail.clone()).collect::<Vec<_>>().join("; ")
        )));
    }
    Ok(out)
}

/// Restriction of a configuration of `g` to `desingularize(g, v)`.
/// Only meaningful when `λ_N = λ_S`.
pub fn restrict_configuration(g: &SurfaceGraph, d: &SurfaceGraph, c: &WeightConfiguration, v: usize) -> Result<WeightConfiguration> {
    let vert = vertex_of(g, v)?;
    let weights = c
        .weights()
        .iter()
        .enumerate()
        .filter(|&(f, _)| f != vert.south || vert.south == vert.north)
        .map(|(_, w)| w.clone())
        .collect();
    WeightConfiguration::new(d, weights)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MmReport {
    pub vertex: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub per_term_ok: bool,
    pub type_one_terms: usize,
    pub type_two_terms: usize,
    /// Terms of `g` and of the desingularized graph that have no partner.
    pub unmatched_terms: usize,
    pub note: Option<String>,
}

impl MmReport {
    pub fn difference(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "vertex": self.vertex,
            "lhs": [self.lhs.re, self.lhs.im],
            "rhs": [self.rhs.re, self.rhs.im],
            "difference": self.difference(),
            "per_term_ok": self.per_term_ok,
            "type_one_terms": self.type_one_terms,
            "type_two_terms": self.type_two_terms,
            "unmatched_terms": self.unmatched_terms,
            "note": self.note,
        })
    }
}

/// Compares both sides at `v` and checks, per term, that type-2 corners
/// cancel and that a type-1 term divided by `cos θ` is the flat
/// contribution of its restriction.
pub fn mm_check(g: &SurfaceGraph, v: usize, trunc: Truncation) -> Result<MmReport> {
    let vert = vertex_of(g, v)?.clone();
    let d = desingularize(g, v)?;
    let lhs_exp = wilson_expectation(g, trunc)?;
    let rhs_exp = wilson_expectation(&d, trunc)?;
    let lhs = mm_lhs_of(g, &lhs_exp, v)?;
    let rhs = rhs_exp.value() / g.rank() as f64;

    let verdicts: Vec<(VertexType, bool, Option<WeightConfiguration>)> = lhs_exp
        .terms
        .par_iter()
        .map(|t| -> Result<_> {
            let angle = vertex_angle(g, &t.weights, v)?;
            let comb = corner_combination(&t.casimirs, &vert);
            match angle.vertex_type {
                VertexType::Two => Ok((VertexType::Two, comb == 0, None)),
                VertexType::One => {
                    let r = restrict_configuration(g, &d, &t.weights, v)?;
                    let gap = angle.c1 - angle.c2;
                    let flat_ok = is_balanced(&d, &r)
                        && &t.flat / &angle.cos_value == flat_contribution(&d, &r)?
                        && comb == 2 * gap;
                    Ok((VertexType::One, flat_ok, Some(r)))
                }
            }
        })
        .collect::<Result<_>>()?;
    let type_one = verdicts.iter().filter(|x| x.0 == VertexType::One).count();
    let mut per_term_ok = verdicts.iter().all(|x| x.1);

    // Type-1 terms of g and terms of the desingularized graph should pair up.
    let restricted: Vec<&WeightConfiguration> = verdicts.iter().filter_map(|x| x.2.as_ref()).collect();
    let rhs_weights: Vec<&WeightConfiguration> = rhs_exp.terms.iter().map(|t| &t.weights).collect();
    let unmatched = restricted.iter().filter(|r| !rhs_weights.contains(r)).count()
        + rhs_weights.iter().filter(|r| !restricted.contains(r)).count();
    if unmatched > 0 {
        per_term_ok = false;
    }
    let note = match trunc.mode {
        TruncationMode::Anchored => None,
        TruncationMode::BoxBound => Some(format!(
            "both sides truncated at max box {}; unmatched terms may come from the window edge",
            trunc.max_box
        )),
    };
    Ok(MmReport {
        vertex: vert.id.clone(),
        lhs,
        rhs,
        per_term_ok,
        type_one_terms: type_one,
        type_two_terms: verdicts.len() - type_one,
        unmatched_terms: unmatched,
        note,
    })
}

/// Sum of `flat / cos θ` over the type-1 terms at `v`, for spot checks.
pub fn type_one_flat_sum(g: &SurfaceGraph, v: usize, trunc: Truncation) -> Result<BigRational> {
    let e = wilson_expectation(g, trunc)?;
    let mut total = BigRational::zero();
    for t in &e.terms {
        let a = vertex_angle(g, &t.weights, v)?;
        if a.vertex_type == VertexType::One {
            total += &t.flat / &a.cos_value;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> SurfaceGraph {
        SurfaceGraph::load(format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap()
    }

    #[test]
    fn figure_eight_pulls_apart_into_two_loops() {
        let g = data("figure_eight");
        let d = desingularize(&g, 0).unwrap();
        assert!(d.vertices().is_empty());
        assert_eq!(d.edges().len(), 2);
        assert!(d.edges().iter().all(|e| !e.is_linear()));
        let outer = d.face_index("F0").unwrap();
        assert_eq!(d.faces()[outer].euler_char, -1);
        assert_eq!(d.faces()[outer].external_boundaries, 2);
    }

    #[test]
    fn figure_eight_closed_forms() {
        for n in 1..=3 {
            let (s, t) = (0.6, 1.7);
            let mut g = data("figure_eight").with_rank(n).unwrap();
            g.set_area("F1", s).unwrap();
            g.set_area("F2", t).unwrap();
            let r = mm_check(&g, 0, Truncation::anchored()).unwrap();
            let nf = n as f64;
            let want = nf * (-(s + t) / 2.0).exp();
            assert!((r.lhs.re - want).abs() < 1e-12);
            let rhs = (nf * (-s / 2.0f64).exp()) * (nf * (-t / 2.0f64).exp()) / nf;
            assert!((r.rhs.re - rhs).abs() < 1e-12);
            assert!(r.per_term_ok);
            assert_eq!((r.type_one_terms, r.type_two_terms), (1, 0));
        }
    }

    #[test]
    fn two_gon_becomes_a_single_crossing_curve() {
        let g = data("two_gon");
        let d = desingularize(&g, 0).unwrap();
        assert_eq!(d.vertices().len(), 1);
        assert_eq!(d.strand_loops().unwrap().len(), 1);
    }

    #[test]
    fn every_corpus_vertex_passes() {
        for name in ["figure_eight", "two_gon", "trefoil", "nested_two_gon"] {
            for n in 1..=3 {
                let g = data(name).with_rank(n).unwrap();
                for v in 0..g.vertices().len() {
                    let r = mm_check(&g, v, Truncation::anchored()).unwrap();
                    assert!(r.per_term_ok, "{name} N={n} v={v}: {r:?}");
                    assert!(r.difference() <= 1e-10 * r.lhs.norm().max(1.0), "{name} N={n} v={v}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn rejects_loops_without_vertices() {
        let g = data("disk_loop");
        assert!(matches!(mm_lhs(&g, 0, Truncation::anchored()), Err(Error::Precondition(_))));
        assert!(desingularize(&g, 0).is_err());
    }

    #[test]
    fn merged_face_keeps_total_area() {
        let g = data("nested_two_gon");
        for v in 0..g.vertices().len() {
            let d = desingularize(&g, v).unwrap();
            let before: f64 = g.areas().iter().sum();
            let after: f64 = d.areas().iter().sum();
            assert!((before - after).abs() < 1e-12);
        }
    }
}
