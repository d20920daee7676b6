use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{BoundaryComponent, Dart, Edge, EdgeKind, Face, SurfaceGraph, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Picks a face as the side of an arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSelector {
    pub arc: String,
    pub side: Side,
}

/// A crossing-free circle; `interior` says on which side its disk lies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circle {
    pub arc: String,
    pub interior: Side,
}

/// A loop diagram drawn in a disk with a free outer boundary.
///
/// Each crossing lists its arcs in slot order `[ne, nw, sw, se]`; every arc
/// must leave one crossing (ne or nw) and enter one (sw or se). A diagram is
/// either connected with crossings or a set of side-by-side circles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarDiagram {
    #[serde(default)]
    pub crossings: Vec<[String; 4]>,
    #[serde(default)]
    pub circles: Vec<Circle>,
    /// The unbounded face; defaults to the left side of the first arc.
    #[serde(default)]
    pub outer: Option<FaceSelector>,
}

impl SurfaceGraph {
    /// Builds the disk graph of a planar diagram. Faces get area 1; bounded
    /// ones are disks and the unbounded one carries the free boundary `B0`.
    pub fn from_planar_diagram(d: &PlanarDiagram, rank: usize) -> Result<SurfaceGraph> {
        if rank == 0 {
            return Err(Error::Precondition("rank must be positive".into()));
        }
        if d.crossings.is_empty() {
            return circles_only(&d.circles, d.outer.as_ref(), rank);
        }
        if !d.circles.is_empty() {
            return Err(Error::Precondition("diagram mixes crossings and free circles".into()));
        }

        // Arc bookkeeping: index, start crossing, end crossing.
        let mut arcs: Vec<String> = Vec::new();
        let mut arc_index: HashMap<&str, usize> = HashMap::new();
        let mut from: Vec<Option<usize>> = Vec::new();
        let mut to: Vec<Option<usize>> = Vec::new();
        for (c, slots) in d.crossings.iter().enumerate() {
            for (k, a) in slots.iter().enumerate() {
                let idx = *arc_index.entry(a.as_str()).or_insert_with(|| {
                    arcs.push(a.clone());
                    from.push(None);
                    to.push(None);
                    arcs.len() - 1
                });
                let target = if k < 2 { &mut from[idx] } else { &mut to[idx] };
                if target.replace(c).is_some() {
                    return Err(Error::Precondition(format!(
                        "arc `{a}` is used twice as {}",
                        if k < 2 { "outgoing" } else { "incoming" }
                    )));
                }
            }
        }
        let mut edges = Vec::with_capacity(arcs.len());
        for (k, a) in arcs.iter().enumerate() {
            match (from[k], to[k]) {
                (Some(f), Some(t)) => {
                    edges.push(Edge { id: a.clone(), kind: EdgeKind::Linear { from: f, to: t }, left: 0, right: 0 })
                }
                _ => return Err(Error::Precondition(format!("dangling half-edge on arc `{a}`"))),
            }
        }
        let vertices: Vec<Vertex> = d
            .crossings
            .iter()
            .enumerate()
            .map(|(c, s)| Vertex {
                id: format!("v{c}"),
                north: 0,
                west: 0,
                south: 0,
                east: 0,
                ne: arc_index[s[0].as_str()],
                nw: arc_index[s[1].as_str()],
                sw: arc_index[s[2].as_str()],
                se: arc_index[s[3].as_str()],
            })
            .collect();

        // Connectivity over crossings.
        let nv = vertices.len();
        let mut comp: Vec<usize> = (0..nv).collect();
        fn root(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for e in &edges {
            if let EdgeKind::Linear { from, to } = e.kind {
                let (a, b) = (root(&mut comp, from), root(&mut comp, to));
                comp[a] = b;
            }
        }
        let r0 = root(&mut comp, 0);
        if (0..nv).any(|v| root(&mut comp, v) != r0) {
            return Err(Error::Precondition("diagram is not connected".into()));
        }

        let skeleton = SurfaceGraph::new(rank, 1, false, Vec::new(), edges.clone(), vertices.clone(), None);
        let mut dart_face: HashMap<Dart, usize> = HashMap::new();
        let mut orbits = Vec::new();
        for e in 0..edges.len() {
            for forward in [true, false] {
                let start = Dart::new(e, forward);
                if dart_face.contains_key(&start) {
                    continue;
                }
                let f = orbits.len();
                let mut cur = start;
                let mut orbit = Vec::new();
                loop {
                    if dart_face.insert(cur, f).is_some() {
                        return Err(Error::Precondition("face tracing failed".into()));
                    }
                    orbit.push(cur);
                    cur = skeleton.next_in_face(cur)?;
                    if cur == start {
                        break;
                    }
                }
                orbits.push(orbit);
            }
        }
        let nf = orbits.len();
        if nv as i64 - edges.len() as i64 + nf as i64 != 2 {
            return Err(Error::Precondition(format!(
                "non-planar pairing: V - E + F = {}",
                nv as i64 - edges.len() as i64 + nf as i64
            )));
        }

        let outer_face = {
            let sel = d.outer.clone().unwrap_or(FaceSelector { arc: d.crossings[0][0].clone(), side: Side::Left });
            let e = *arc_index
                .get(sel.arc.as_str())
                .ok_or_else(|| Error::Precondition(format!("outer selector names unknown arc `{}`", sel.arc)))?;
            dart_face[&Dart::new(e, sel.side == Side::Left)]
        };
        // Outer face becomes F0; the rest keep trace order.
        let mut rename = vec![0usize; nf];
        let mut next = 1;
        for (f, slot) in rename.iter_mut().enumerate() {
            if f == outer_face {
                *slot = 0;
            } else {
                *slot = next;
                next += 1;
            }
        }
        for (k, e) in edges.iter_mut().enumerate() {
            e.left = rename[dart_face[&Dart::new(k, true)]];
            e.right = rename[dart_face[&Dart::new(k, false)]];
        }
        let mut vertices = vertices;
        for v in vertices.iter_mut() {
            v.north = rename[dart_face[&Dart::new(v.ne, true)]];
            v.west = rename[dart_face[&Dart::new(v.nw, true)]];
            v.south = rename[dart_face[&Dart::new(v.sw, false)]];
            v.east = rename[dart_face[&Dart::new(v.se, false)]];
        }
        let mut faces = Vec::with_capacity(nf);
        faces.push(outer(1));
        for k in 1..nf {
            faces.push(disk(k));
        }
        let mut g = SurfaceGraph::new(rank, 1, false, faces, edges, vertices, None);
        let loops = g.strand_loops()?;
        g.set_loops(Some(loops));
        Ok(g)
    }
}

fn disk(k: usize) -> Face {
    Face { id: format!("F{k}"), area: 1.0, euler_char: 1, external_boundaries: 1, internal_boundaries: Vec::new() }
}

fn outer(external: usize) -> Face {
    Face {
        id: "F0".into(),
        area: 1.0,
        euler_char: 2 - (external as i64 + 1),
        external_boundaries: external,
        internal_boundaries: vec![BoundaryComponent::free("B0")],
    }
}

fn circles_only(circles: &[Circle], sel: Option<&FaceSelector>, rank: usize) -> Result<SurfaceGraph> {
    if sel.is_some() {
        return Err(Error::Precondition("circle diagrams fix their outer face".into()));
    }
    let mut faces = vec![outer(circles.len())];
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (k, c) in circles.iter().enumerate() {
        if !seen.insert(c.arc.as_str()) {
            return Err(Error::Precondition(format!("arc `{}` is used twice", c.arc)));
        }
        faces.push(disk(k + 1));
        let (left, right) = match c.interior {
            Side::Right => (0, k + 1),
            Side::Left => (k + 1, 0),
        };
        edges.push(Edge { id: c.arc.clone(), kind: EdgeKind::Circular, left, right });
    }
    let loops = (0..edges.len()).map(|k| vec![Dart::new(k, true)]).collect();
    Ok(SurfaceGraph::new(rank, 1, false, faces, edges, Vec::new(), Some(loops)))
}
