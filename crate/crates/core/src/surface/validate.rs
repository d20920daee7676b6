use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::{BoundaryKind, EdgeKind, Slot, SurfaceGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    DuplicateId,
    UnknownReference,
    EdgeEndpoints,
    SlotCount,
    SlotEndpoint,
    SideFace,
    EulerRelation,
    FaceTopology,
    SurfaceTopology,
    MissingBoundary,
    ClosedWithBoundary,
    OpenWithoutBoundary,
    DuplicateBoundary,
    Eigenvalues,
    ExternalBoundaryCount,
    Loop,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("kind serializes");
        write!(f, "{}", s.as_str().unwrap_or("violation"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub ids: Vec<String>,
    pub detail: String,
}

impl Violation {
    pub fn new<I: IntoIterator<Item = String>>(kind: ViolationKind, ids: I, detail: impl Into<String>) -> Self {
        Self { kind, ids: ids.into_iter().collect(), detail: detail.into() }
    }
}

const UNIT_TOL: f64 = 1e-12;

/// Checks every structural and topological invariant of `g`.
pub fn validate(g: &SurfaceGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let nf = g.faces().len();
    let ne = g.edges().len();
    let nv = g.vertices().len();

    // Index ranges first: nothing else is meaningful without them.
    for e in g.edges() {
        let mut bad = e.left >= nf || e.right >= nf;
        if let EdgeKind::Linear { from, to } = e.kind {
            bad |= from >= nv || to >= nv;
        }
        if bad {
            out.push(Violation::new(ViolationKind::UnknownReference, [e.id.clone()], "index out of range"));
        }
    }
    for v in g.vertices() {
        let faces_ok = [v.north, v.west, v.south, v.east].iter().all(|&f| f < nf);
        let edges_ok = [v.ne, v.nw, v.sw, v.se].iter().all(|&e| e < ne);
        if !faces_ok || !edges_ok {
            out.push(Violation::new(ViolationKind::UnknownReference, [v.id.clone()], "index out of range"));
        }
    }
    if !out.is_empty() {
        return out;
    }

    let mut seen = HashSet::new();
    for f in g.faces() {
        if !seen.insert(("face", f.id.as_str())) {
            out.push(Violation::new(ViolationKind::DuplicateId, [f.id.clone()], "face id used twice"));
        }
    }
    for e in g.edges() {
        if !seen.insert(("edge", e.id.as_str())) {
            out.push(Violation::new(ViolationKind::DuplicateId, [e.id.clone()], "edge id used twice"));
        }
    }
    for v in g.vertices() {
        if !seen.insert(("vertex", v.id.as_str())) {
            out.push(Violation::new(ViolationKind::DuplicateId, [v.id.clone()], "vertex id used twice"));
        }
    }

    // Slot bookkeeping.
    let mut outgoing = vec![Vec::new(); ne];
    let mut incoming = vec![Vec::new(); ne];
    for (vi, v) in g.vertices().iter().enumerate() {
        for (slot, e) in [(Slot::Ne, v.ne), (Slot::Nw, v.nw), (Slot::Sw, v.sw), (Slot::Se, v.se)] {
            if slot.is_outgoing() {
                outgoing[e].push(vi);
            } else {
                incoming[e].push(vi);
            }
        }
    }
    let mut slots_ok = true;
    for (k, e) in g.edges().iter().enumerate() {
        match e.kind {
            EdgeKind::Linear { from, to } => {
                if outgoing[k].len() != 1 || incoming[k].len() != 1 {
                    slots_ok = false;
                    out.push(Violation::new(
                        ViolationKind::SlotCount,
                        [e.id.clone()],
                        format!(
                            "linear edge fills {} outgoing and {} incoming slots",
                            outgoing[k].len(),
                            incoming[k].len()
                        ),
                    ));
                    continue;
                }
                if outgoing[k][0] != from || incoming[k][0] != to {
                    slots_ok = false;
                    out.push(Violation::new(
                        ViolationKind::SlotEndpoint,
                        [e.id.clone()],
                        "endpoints disagree with the vertex slots",
                    ));
                }
            }
            EdgeKind::Circular => {
                if !outgoing[k].is_empty() || !incoming[k].is_empty() {
                    slots_ok = false;
                    out.push(Violation::new(
                        ViolationKind::SlotCount,
                        [e.id.clone()],
                        "circular edge occupies a vertex slot",
                    ));
                }
            }
        }
    }

    for v in g.vertices() {
        let edges = g.edges();
        let checks = [
            (v.ne, "ne", edges[v.ne].left, v.north, "left", "north"),
            (v.ne, "ne", edges[v.ne].right, v.east, "right", "east"),
            (v.nw, "nw", edges[v.nw].left, v.west, "left", "west"),
            (v.nw, "nw", edges[v.nw].right, v.north, "right", "north"),
            (v.sw, "sw", edges[v.sw].left, v.west, "left", "west"),
            (v.sw, "sw", edges[v.sw].right, v.south, "right", "south"),
            (v.se, "se", edges[v.se].left, v.south, "left", "south"),
            (v.se, "se", edges[v.se].right, v.east, "right", "east"),
        ];
        // One record per (vertex, edge) pair, even when the edge fills two slots.
        let mut grouped: Vec<(usize, Vec<String>)> = Vec::new();
        for (e, slot, got, want, side, corner) in checks {
            if got == want {
                continue;
            }
            let msg = format!(
                "{side} face of the {slot} edge is `{}` but the {corner} face is `{}`",
                g.faces()[got].id,
                g.faces()[want].id
            );
            match grouped.iter_mut().find(|(k, _)| *k == e) {
                Some((_, msgs)) => msgs.push(msg),
                None => grouped.push((e, vec![msg])),
            }
        }
        for (e, msgs) in grouped {
            out.push(Violation::new(
                ViolationKind::SideFace,
                [v.id.clone(), edges[e].id.clone()],
                msgs.join("; "),
            ));
        }
    }

    // Topology of faces and of the surface.
    let euler: i64 = g.faces().iter().map(|f| f.euler_char).sum::<i64>() - nv as i64;
    if euler != g.surface_euler_char() {
        out.push(Violation::new(
            ViolationKind::EulerRelation,
            Vec::<String>::new(),
            format!("sum of face Euler characteristics minus |V| is {euler}, surface has {}", g.surface_euler_char()),
        ));
    }
    let mut boundary_ids = HashSet::new();
    let mut surface_boundaries = 0i64;
    for f in g.faces() {
        let b = f.boundary_count() as i64;
        let s = f.euler_char + b;
        if s > 2 || s.rem_euclid(2) != 0 {
            out.push(Violation::new(
                ViolationKind::FaceTopology,
                [f.id.clone()],
                format!("euler_char {} with {b} boundary components is not an orientable surface", f.euler_char),
            ));
        }
        if b == 0 && !(g.is_empty_graph() && g.is_closed()) {
            out.push(Violation::new(ViolationKind::MissingBoundary, [f.id.clone()], "face has no boundary"));
        }
        for bc in &f.internal_boundaries {
            surface_boundaries += 1;
            if g.is_closed() {
                out.push(Violation::new(
                    ViolationKind::ClosedWithBoundary,
                    [f.id.clone(), bc.id.clone()],
                    "closed surface with a boundary component",
                ));
            }
            if !boundary_ids.insert(bc.id.as_str()) {
                out.push(Violation::new(ViolationKind::DuplicateBoundary, [bc.id.clone()], "boundary listed twice"));
            }
            if let BoundaryKind::Constrained(ev) = &bc.kind {
                if ev.len() != g.rank() {
                    out.push(Violation::new(
                        ViolationKind::Eigenvalues,
                        [bc.id.clone()],
                        format!("{} eigenvalues for rank {}", ev.len(), g.rank()),
                    ));
                }
                if ev.iter().any(|z| (z.norm() - 1.0).abs() > UNIT_TOL) {
                    out.push(Violation::new(
                        ViolationKind::Eigenvalues,
                        [bc.id.clone()],
                        "eigenvalue off the unit circle",
                    ));
                }
            }
        }
        if !(f.area >= 0.0 && f.area.is_finite()) {
            out.push(Violation::new(ViolationKind::FaceTopology, [f.id.clone()], "area must be finite and >= 0"));
        }
    }
    if !g.is_closed() && surface_boundaries == 0 {
        out.push(Violation::new(
            ViolationKind::OpenWithoutBoundary,
            Vec::<String>::new(),
            "surface is not closed but no face holds a boundary component",
        ));
    }
    let s = g.surface_euler_char() + surface_boundaries;
    if s > 2 || s.rem_euclid(2) != 0 {
        out.push(Violation::new(
            ViolationKind::SurfaceTopology,
            Vec::<String>::new(),
            format!("euler_char {} with {surface_boundaries} boundary components", g.surface_euler_char()),
        ));
    }
    if g.rank() == 0 {
        out.push(Violation::new(ViolationKind::SurfaceTopology, Vec::<String>::new(), "rank must be positive"));
    }

    // Boundary walks must reproduce the declared external boundary counts.
    if slots_ok && out.iter().all(|v| v.kind != ViolationKind::SideFace) {
        match g.boundary_cycles() {
            Ok(cycles) => {
                let mut count = vec![0usize; nf];
                for (f, _) in &cycles {
                    count[*f] += 1;
                }
                for (f, face) in g.faces().iter().enumerate() {
                    if count[f] != face.external_boundaries {
                        out.push(Violation::new(
                            ViolationKind::ExternalBoundaryCount,
                            [face.id.clone()],
                            format!(
                                "declares {} external boundaries, boundary walks give {}",
                                face.external_boundaries, count[f]
                            ),
                        ));
                    }
                }
            }
            Err(e) => out.push(Violation::new(ViolationKind::SlotCount, Vec::<String>::new(), e.to_string())),
        }
    }

    if let Some(loops) = g.loops() {
        for (k, word) in loops.iter().enumerate() {
            let name = format!("loop{k}");
            if word.is_empty() {
                out.push(Violation::new(ViolationKind::Loop, [name], "empty loop word"));
                continue;
            }
            if word.iter().any(|d| d.edge >= ne) {
                out.push(Violation::new(ViolationKind::Loop, [name], "unknown edge"));
                continue;
            }
            let circular = word.iter().filter(|d| !g.edges()[d.edge].is_linear()).count();
            if circular > 0 {
                if word.len() != 1 {
                    out.push(Violation::new(ViolationKind::Loop, [name], "circular edges form loops on their own"));
                }
                continue;
            }
            for i in 0..word.len() {
                let (_, end) = g.dart_endpoints(word[i]).expect("linear");
                let (start, _) = g.dart_endpoints(word[(i + 1) % word.len()]).expect("linear");
                if end != start {
                    out.push(Violation::new(
                        ViolationKind::Loop,
                        [name.clone(), g.format_dart(word[i])],
                        "consecutive steps do not share a vertex",
                    ));
                    break;
                }
            }
        }
    }
    out
}
