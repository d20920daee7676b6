use std::collections::HashMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::validate::{Violation, ViolationKind};
use super::{BoundaryComponent, BoundaryKind, Dart, Edge, EdgeKind, Face, SurfaceGraph, Vertex};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    #[serde(rename = "N")]
    n: usize,
    surface: RawSurface,
    faces: Vec<RawFace>,
    #[serde(default)]
    edges: Vec<RawEdge>,
    #[serde(default)]
    vertices: Vec<RawVertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    loops: Option<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    euler_char: i64,
    closed: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFace {
    id: String,
    area: f64,
    euler_char: i64,
    external_boundaries: usize,
    #[serde(default)]
    internal_boundaries: Vec<RawBoundary>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBoundary {
    id: String,
    kind: RawBoundaryKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eigenvalues: Option<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
enum RawBoundaryKind {
    Free,
    Constrained,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: String,
    kind: RawEdgeKind,
    left: String,
    right: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    from: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    to: Option<String>,
}

#[derive(Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
enum RawEdgeKind {
    Linear,
    Circular,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: String,
    north: String,
    west: String,
    south: String,
    east: String,
    ne: String,
    nw: String,
    sw: String,
    se: String,
}

struct Resolver<'a> {
    faces: HashMap<&'a str, usize>,
    edges: HashMap<&'a str, usize>,
    vertices: HashMap<&'a str, usize>,
    violations: Vec<Violation>,
}

impl<'a> Resolver<'a> {
    fn table(
        kind: &'static str,
        ids: impl Iterator<Item = &'a String>,
        violations: &mut Vec<Violation>,
    ) -> HashMap<&'a str, usize> {
        let mut m = HashMap::new();
        for (k, id) in ids.enumerate() {
            if m.insert(id.as_str(), k).is_some() {
                violations.push(Violation::new(
                    ViolationKind::DuplicateId,
                    [id.clone()],
                    format!("{kind} id used twice"),
                ));
            }
        }
        m
    }

    fn get(&mut self, kind: &'static str, id: &str, owner: &str) -> usize {
        let table = match kind {
            "face" => &self.faces,
            "edge" => &self.edges,
            _ => &self.vertices,
        };
        match table.get(id) {
            Some(&k) => k,
            None => {
                self.violations.push(Violation::new(
                    ViolationKind::UnknownReference,
                    [owner.to_string(), id.to_string()],
                    format!("`{owner}` references unknown {kind} `{id}`"),
                ));
                usize::MAX
            }
        }
    }
}

impl SurfaceGraph {
    /// Parses the JSON interchange format and resolves ids. Unresolvable
    /// references are reported as [`Error::InvalidGraph`]; semantic
    /// invariants are checked separately by [`super::validate`].
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawGraph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut violations = Vec::new();
        let faces_t = Resolver::table("face", raw.faces.iter().map(|f| &f.id), &mut violations);
        let edges_t = Resolver::table("edge", raw.edges.iter().map(|e| &e.id), &mut violations);
        let vertices_t = Resolver::table("vertex", raw.vertices.iter().map(|v| &v.id), &mut violations);
        let mut r = Resolver { faces: faces_t, edges: edges_t, vertices: vertices_t, violations };

        let mut faces = Vec::with_capacity(raw.faces.len());
        for f in &raw.faces {
            let mut internal = Vec::new();
            for b in &f.internal_boundaries {
                let kind = match (&b.kind, &b.eigenvalues) {
                    (RawBoundaryKind::Free, None) => BoundaryKind::Free,
                    (RawBoundaryKind::Constrained, Some(ev)) => {
                        BoundaryKind::Constrained(ev.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
                    }
                    (RawBoundaryKind::Free, Some(_)) => {
                        r.violations.push(Violation::new(
                            ViolationKind::Eigenvalues,
                            [b.id.clone()],
                            "free boundary carries eigenvalues",
                        ));
                        BoundaryKind::Free
                    }
                    (RawBoundaryKind::Constrained, None) => {
                        r.violations.push(Violation::new(
                            ViolationKind::Eigenvalues,
                            [b.id.clone()],
                            "constrained boundary lacks eigenvalues",
                        ));
                        BoundaryKind::Constrained(Vec::new())
                    }
                };
                internal.push(BoundaryComponent { id: b.id.clone(), kind });
            }
            faces.push(Face {
                id: f.id.clone(),
                area: f.area,
                euler_char: f.euler_char,
                external_boundaries: f.external_boundaries,
                internal_boundaries: internal,
            });
        }

        let mut edges = Vec::with_capacity(raw.edges.len());
        for e in &raw.edges {
            let left = r.get("face", &e.left, &e.id);
            let right = r.get("face", &e.right, &e.id);
            let kind = match (&e.kind, &e.from, &e.to) {
                (RawEdgeKind::Linear, Some(a), Some(b)) => {
                    EdgeKind::Linear { from: r.get("vertex", a, &e.id), to: r.get("vertex", b, &e.id) }
                }
                (RawEdgeKind::Circular, None, None) => EdgeKind::Circular,
                _ => {
                    r.violations.push(Violation::new(
                        ViolationKind::EdgeEndpoints,
                        [e.id.clone()],
                        "linear edges need both endpoints and circular edges none",
                    ));
                    EdgeKind::Circular
                }
            };
            edges.push(Edge { id: e.id.clone(), kind, left, right });
        }

        let mut vertices = Vec::with_capacity(raw.vertices.len());
        for v in &raw.vertices {
            vertices.push(Vertex {
                id: v.id.clone(),
                north: r.get("face", &v.north, &v.id),
                west: r.get("face", &v.west, &v.id),
                south: r.get("face", &v.south, &v.id),
                east: r.get("face", &v.east, &v.id),
                ne: r.get("edge", &v.ne, &v.id),
                nw: r.get("edge", &v.nw, &v.id),
                sw: r.get("edge", &v.sw, &v.id),
                se: r.get("edge", &v.se, &v.id),
            });
        }

        let mut loops = None;
        if let Some(words) = &raw.loops {
            let mut out = Vec::new();
            for (k, w) in words.iter().enumerate() {
                let mut word = Vec::new();
                for step in w {
                    let (id, sign) = step.split_at(step.len().saturating_sub(1));
                    let forward = match sign {
                        "+" => true,
                        "-" => false,
                        _ => {
                            r.violations.push(Violation::new(
                                ViolationKind::Loop,
                                [format!("loop{k}"), step.clone()],
                                "loop steps end in + or -",
                            ));
                            continue;
                        }
                    };
                    let e = r.get("edge", id, &format!("loop{k}"));
                    word.push(Dart::new(e, forward));
                }
                out.push(word);
            }
            loops = Some(out);
        }

        if !r.violations.is_empty() {
            return Err(Error::InvalidGraph(r.violations));
        }
        Ok(SurfaceGraph::new(
            raw.n,
            raw.surface.euler_char,
            raw.surface.closed,
            faces,
            edges,
            vertices,
            loops,
        ))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let p = path.as_ref();
        let text = std::fs::read_to_string(p)
            .map_err(|source| Error::Io { path: p.display().to_string(), source })?;
        Self::from_json_str(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", p.display())),
            other => other,
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let fid = |k: usize| self.faces()[k].id.clone();
        let eid = |k: usize| self.edges()[k].id.clone();
        let vid = |k: usize| self.vertices()[k].id.clone();
        let raw = RawGraph {
            n: self.rank(),
            surface: RawSurface { euler_char: self.surface_euler_char(), closed: self.is_closed() },
            faces: self
                .faces()
                .iter()
                .map(|f| RawFace {
                    id: f.id.clone(),
                    area: f.area,
                    euler_char: f.euler_char,
                    external_boundaries: f.external_boundaries,
                    internal_boundaries: f
                        .internal_boundaries
                        .iter()
                        .map(|b| match &b.kind {
                            BoundaryKind::Free => {
                                RawBoundary { id: b.id.clone(), kind: RawBoundaryKind::Free, eigenvalues: None }
                            }
                            BoundaryKind::Constrained(ev) => RawBoundary {
                                id: b.id.clone(),
                                kind: RawBoundaryKind::Constrained,
                                eigenvalues: Some(ev.iter().map(|z| [z.re, z.im]).collect()),
                            },
                        })
                        .collect(),
                })
                .collect(),
            edges: self
                .edges()
                .iter()
                .map(|e| {
                    let (kind, from, to) = match e.kind {
                        EdgeKind::Linear { from, to } => (RawEdgeKind::Linear, Some(vid(from)), Some(vid(to))),
                        EdgeKind::Circular => (RawEdgeKind::Circular, None, None),
                    };
                    RawEdge { id: e.id.clone(), kind, left: fid(e.left), right: fid(e.right), from, to }
                })
                .collect(),
            vertices: self
                .vertices()
                .iter()
                .map(|v| RawVertex {
                    id: v.id.clone(),
                    north: fid(v.north),
                    west: fid(v.west),
                    south: fid(v.south),
                    east: fid(v.east),
                    ne: eid(v.ne),
                    nw: eid(v.nw),
                    sw: eid(v.sw),
                    se: eid(v.se),
                })
                .collect(),
            loops: self
                .loops()
                .map(|ls| ls.iter().map(|w| w.iter().map(|&d| self.format_dart(d)).collect()).collect()),
        };
        serde_json::to_value(raw).expect("graph serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("graph serializes")
    }
}
