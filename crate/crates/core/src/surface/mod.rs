//! Decorated combinatorial maps: faces carrying blow-up data, oriented
//! edges with side faces, and 4-valent vertices with cardinal slots.
//!
//! At a vertex the four rays in counterclockwise order are NE, NW, SW, SE.
//! NE and NW leave the vertex, SW and SE enter it, and the faces between
//! consecutive rays are north (NE–NW), west (NW–SW), south (SW–SE) and east
//! (SE–NE).

mod json;
mod planar;
mod validate;

use std::collections::HashMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use planar::{Circle, FaceSelector, PlanarDiagram, Side};
pub use validate::{validate, Violation, ViolationKind};

#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryKind {
    Free,
    /// Spectrum of the boundary holonomy class.
    Constrained(Vec<Complex64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryComponent {
    pub id: String,
    pub kind: BoundaryKind,
}

impl BoundaryComponent {
    pub fn free(id: impl Into<String>) -> Self {
        Self { id: id.into(), kind: BoundaryKind::Free }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub id: String,
    pub area: f64,
    pub euler_char: i64,
    pub external_boundaries: usize,
    pub internal_boundaries: Vec<BoundaryComponent>,
}

impl Face {
    pub fn has_free_boundary(&self) -> bool {
        self.internal_boundaries.iter().any(|b| b.kind == BoundaryKind::Free)
    }

    /// `b_F`, external plus internal boundary components.
    pub fn boundary_count(&self) -> usize {
        self.external_boundaries + self.internal_boundaries.len()
    }

    pub fn constrained_spectra(&self) -> impl Iterator<Item = &[Complex64]> {
        self.internal_boundaries.iter().filter_map(|b| match &b.kind {
            BoundaryKind::Constrained(ev) => Some(ev.as_slice()),
            BoundaryKind::Free => None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Linear { from: usize, to: usize },
    Circular,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub id: String,
    pub kind: EdgeKind,
    pub left: usize,
    pub right: usize,
}

impl Edge {
    pub fn is_linear(&self) -> bool {
        matches!(self.kind, EdgeKind::Linear { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub id: String,
    pub north: usize,
    pub west: usize,
    pub south: usize,
    pub east: usize,
    pub ne: usize,
    pub nw: usize,
    pub sw: usize,
    pub se: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Ne,
    Nw,
    Sw,
    Se,
}

impl Slot {
    pub fn is_outgoing(self) -> bool {
        matches!(self, Slot::Ne | Slot::Nw)
    }
}

/// An edge traversed forwards or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    pub fn new(edge: usize, forward: bool) -> Self {
        Self { edge, forward }
    }

    pub fn reversed(self) -> Self {
        Self { edge: self.edge, forward: !self.forward }
    }
}

/// Where each edge sits in the vertex slots (first occurrence wins).
#[derive(Clone, Debug, Default, PartialEq)]
struct Incidence {
    outgoing: Option<(usize, Slot)>,
    incoming: Option<(usize, Slot)>,
}

#[derive(Clone, Debug)]
pub struct SurfaceGraph {
    rank: usize,
    euler_char: i64,
    closed: bool,
    faces: Vec<Face>,
    edges: Vec<Edge>,
    vertices: Vec<Vertex>,
    loops: Option<Vec<Vec<Dart>>>,
    face_ids: HashMap<String, usize>,
    edge_ids: HashMap<String, usize>,
    vertex_ids: HashMap<String, usize>,
    incidence: Vec<Incidence>,
}

impl PartialEq for SurfaceGraph {
    fn eq(&self, o: &Self) -> bool {
        self.rank == o.rank
            && self.euler_char == o.euler_char
            && self.closed == o.closed
            && self.faces == o.faces
            && self.edges == o.edges
            && self.vertices == o.vertices
            && self.loops == o.loops
    }
}

impl SurfaceGraph {
    /// Assembles a graph from indexed parts. Structural invariants are left
    /// to [`validate`].
    pub fn new(
        rank: usize,
        euler_char: i64,
        closed: bool,
        faces: Vec<Face>,
        edges: Vec<Edge>,
        vertices: Vec<Vertex>,
        loops: Option<Vec<Vec<Dart>>>,
    ) -> Self {
        let index = |ids: Vec<&String>| {
            let mut m = HashMap::new();
            for (k, id) in ids.into_iter().enumerate() {
                m.entry(id.clone()).or_insert(k);
            }
            m
        };
        let face_ids = index(faces.iter().map(|f| &f.id).collect());
        let edge_ids = index(edges.iter().map(|e| &e.id).collect());
        let vertex_ids = index(vertices.iter().map(|v| &v.id).collect());
        let mut incidence = vec![Incidence::default(); edges.len()];
        for (vi, v) in vertices.iter().enumerate() {
            for (slot, e) in [(Slot::Ne, v.ne), (Slot::Nw, v.nw), (Slot::Sw, v.sw), (Slot::Se, v.se)] {
                let Some(inc) = incidence.get_mut(e) else { continue };
                let target = if slot.is_outgoing() { &mut inc.outgoing } else { &mut inc.incoming };
                target.get_or_insert((vi, slot));
            }
        }
        Self {
            rank,
            euler_char,
            closed,
            faces,
            edges,
            vertices,
            loops,
            face_ids,
            edge_ids,
            vertex_ids,
            incidence,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn surface_euler_char(&self) -> i64 {
        self.euler_char
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn loops(&self) -> Option<&[Vec<Dart>]> {
        self.loops.as_deref()
    }

    pub fn is_empty_graph(&self) -> bool {
        self.edges.is_empty() && self.vertices.is_empty()
    }

    pub fn face_index(&self, id: &str) -> Result<usize> {
        self.face_ids
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownId { kind: "face", id: id.into() })
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edge_ids
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownId { kind: "edge", id: id.into() })
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertex_ids
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownId { kind: "vertex", id: id.into() })
    }

    pub fn has_free_boundary(&self) -> bool {
        self.faces.iter().any(Face::has_free_boundary)
    }

    pub fn set_area(&mut self, face: &str, area: f64) -> Result<()> {
        let k = self.face_index(face)?;
        self.faces[k].area = area;
        Ok(())
    }

    pub fn areas(&self) -> Vec<f64> {
        self.faces.iter().map(|f| f.area).collect()
    }

    /// Same graph for another unitary rank. Fails when a constrained
    /// boundary fixes the rank through its spectrum.
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Precondition("rank must be positive".into()));
        }
        if self.faces.iter().any(|f| f.constrained_spectra().next().is_some()) && rank != self.rank {
            return Err(Error::Precondition(
                "cannot change the rank of a graph with constrained boundaries".into(),
            ));
        }
        let mut g = self.clone();
        g.rank = rank;
        Ok(g)
    }

    pub fn set_loops(&mut self, loops: Option<Vec<Vec<Dart>>>) {
        self.loops = loops;
    }

    /// Copy with every free internal boundary removed. Face Euler data is kept,
    /// so quantities that read only the combinatorics are unchanged; shifted
    /// weight configurations are balanced on the result.
    pub fn without_free_boundaries(&self) -> Self {
        let faces = self
            .faces
            .iter()
            .map(|f| Face {
                internal_boundaries: f
                    .internal_boundaries
                    .iter()
                    .filter(|b| !matches!(b.kind, BoundaryKind::Free))
                    .cloned()
                    .collect(),
                ..f.clone()
            })
            .collect();
        Self::new(self.rank, self.euler_char, self.closed, faces, self.edges.clone(), self.vertices.clone(), self.loops.clone())
    }

    pub fn left_of(&self, d: Dart) -> usize {
        let e = &self.edges[d.edge];
        if d.forward {
            e.left
        } else {
            e.right
        }
    }

    /// Initial and terminal vertex of a dart (None for circular edges).
    pub fn dart_endpoints(&self, d: Dart) -> Option<(usize, usize)> {
        match self.edges[d.edge].kind {
            EdgeKind::Linear { from, to } => Some(if d.forward { (from, to) } else { (to, from) }),
            EdgeKind::Circular => None,
        }
    }

    fn slot_edge(&self, v: usize, s: Slot) -> usize {
        let v = &self.vertices[v];
        match s {
            Slot::Ne => v.ne,
            Slot::Nw => v.nw,
            Slot::Sw => v.sw,
            Slot::Se => v.se,
        }
    }

    /// Next dart along the boundary walk of the face on the left.
    pub fn next_in_face(&self, d: Dart) -> Result<Dart> {
        let inc = &self.incidence[d.edge];
        if !self.edges[d.edge].is_linear() {
            return Ok(d);
        }
        let missing = || Error::Precondition(format!("edge `{}` has no vertex slots", self.edges[d.edge].id));
        if d.forward {
            let (v, s) = inc.incoming.ok_or_else(missing)?;
            Ok(match s {
                Slot::Sw => Dart::new(self.slot_edge(v, Slot::Nw), true),
                _ => Dart::new(self.slot_edge(v, Slot::Sw), false),
            })
        } else {
            let (v, s) = inc.outgoing.ok_or_else(missing)?;
            Ok(match s {
                Slot::Ne => Dart::new(self.slot_edge(v, Slot::Se), false),
                _ => Dart::new(self.slot_edge(v, Slot::Ne), true),
            })
        }
    }

    /// Straight-through continuation of a forward strand.
    pub fn next_in_strand(&self, edge: usize) -> Result<usize> {
        if !self.edges[edge].is_linear() {
            return Ok(edge);
        }
        let (v, s) = self.incidence[edge].incoming.ok_or_else(|| {
            Error::Precondition(format!("edge `{}` has no terminal slot", self.edges[edge].id))
        })?;
        Ok(match s {
            Slot::Sw => self.slot_edge(v, Slot::Ne),
            _ => self.slot_edge(v, Slot::Nw),
        })
    }

    /// Boundary walks: each orbit of `next_in_face`, with the face on its
    /// left. Their number per face is the external boundary count.
    pub fn boundary_cycles(&self) -> Result<Vec<(usize, Vec<Dart>)>> {
        let mut seen = vec![[false; 2]; self.edges.len()];
        let mut out = Vec::new();
        for e in 0..self.edges.len() {
            for forward in [true, false] {
                let start = Dart::new(e, forward);
                if seen[e][forward as usize] {
                    continue;
                }
                let face = self.left_of(start);
                let mut cycle = Vec::new();
                let mut d = start;
                loop {
                    if seen[d.edge][d.forward as usize] {
                        return Err(Error::Precondition("boundary walk is not a permutation".into()));
                    }
                    seen[d.edge][d.forward as usize] = true;
                    if self.left_of(d) != face {
                        return Err(Error::Precondition(format!(
                            "boundary walk of face `{}` leaves the face",
                            self.faces[face].id
                        )));
                    }
                    cycle.push(d);
                    d = self.next_in_face(d)?;
                    if d == start {
                        break;
                    }
                }
                out.push((face, cycle));
            }
        }
        Ok(out)
    }

    /// Loops obtained by following strands straight through every vertex.
    pub fn strand_loops(&self) -> Result<Vec<Vec<Dart>>> {
        let mut seen = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for e in 0..self.edges.len() {
            if seen[e] {
                continue;
            }
            let mut word = Vec::new();
            let mut cur = e;
            loop {
                if seen[cur] {
                    return Err(Error::Precondition("strands do not close up".into()));
                }
                seen[cur] = true;
                word.push(Dart::new(cur, true));
                cur = self.next_in_strand(cur)?;
                if cur == e {
                    break;
                }
            }
            out.push(word);
        }
        Ok(out)
    }

    /// Stored loops, or strand loops when none are stored.
    pub fn loops_or_strands(&self) -> Result<Vec<Vec<Dart>>> {
        match &self.loops {
            Some(l) => Ok(l.clone()),
            None => self.strand_loops(),
        }
    }

    pub fn format_dart(&self, d: Dart) -> String {
        format!("{}{}", self.edges[d.edge].id, if d.forward { '+' } else { '-' })
    }

    pub fn parse_dart(&self, s: &str) -> Result<Dart> {
        let (id, sign) = s.split_at(s.len().saturating_sub(1));
        let forward = match sign {
            "+" => true,
            "-" => false,
            _ => return Err(Error::Parse(format!("loop step `{s}` must end in + or -"))),
        };
        Ok(Dart::new(self.edge_index(id)?, forward))
    }
}

#[cfg(test)]
mod tests;
