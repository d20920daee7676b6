//! Balanced highest-weight configurations: feasibility, enumeration and
//! level lines.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::surface::{EdgeKind, SurfaceGraph};
use crate::weights::{self, casimir, extends, HighestWeight};

/// A highest weight per face, indexed like `g.faces()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightConfiguration {
    weights: Vec<HighestWeight>,
}

impl WeightConfiguration {
    pub fn new(g: &SurfaceGraph, weights: Vec<HighestWeight>) -> Result<Self> {
        if weights.len() != g.faces().len() {
            return Err(Error::Precondition(format!(
                "{} weights for {} faces",
                weights.len(),
                g.faces().len()
            )));
        }
        for w in &weights {
            if w.rank() != g.rank() {
                return Err(Error::RankMismatch { expected: g.rank(), found: w.rank() });
            }
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[HighestWeight] {
        &self.weights
    }

    pub fn get(&self, face: usize) -> &HighestWeight {
        &self.weights[face]
    }

    pub fn shift(&self, q: i64) -> Self {
        Self { weights: self.weights.iter().map(|w| weights::shift(w, q)).collect() }
    }

    /// Smallest `q` making every weight non-negative.
    pub fn nonnegative_shift(&self) -> i64 {
        self.weights.iter().map(|w| -w.min_component()).max().unwrap_or(0).max(i64::MIN + 1)
    }

    pub fn to_json_value(&self, g: &SurfaceGraph) -> Value {
        let mut faces = Map::new();
        for (f, w) in g.faces().iter().zip(&self.weights) {
            faces.insert(f.id.clone(), Value::from(w.components().to_vec()));
        }
        let mut root = Map::new();
        root.insert("faces".into(), Value::Object(faces));
        Value::Object(root)
    }

    /// Reads `{"faces": {"F0": [0,0], ...}}`; every face must be present.
    pub fn from_json_value(g: &SurfaceGraph, v: &Value) -> Result<Self> {
        let faces = v
            .get("faces")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("configuration needs a `faces` object".into()))?;
        let mut weights = vec![None; g.faces().len()];
        for (id, w) in faces {
            let k = g.face_index(id)?;
            let hw: HighestWeight =
                serde_json::from_value(w.clone()).map_err(|e| Error::Parse(format!("face `{id}`: {e}")))?;
            weights[k] = Some(hw);
        }
        let weights = weights
            .into_iter()
            .enumerate()
            .map(|(k, w)| w.ok_or_else(|| Error::Parse(format!("face `{}` has no weight", g.faces()[k].id))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, weights)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncationMode {
    Anchored,
    BoxBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub mode: TruncationMode,
    pub max_box: u32,
    pub tail_report: bool,
}

impl Truncation {
    pub fn anchored() -> Self {
        Self { mode: TruncationMode::Anchored, max_box: 0, tail_report: false }
    }

    pub fn box_bound(max_box: u32) -> Self {
        Self { mode: TruncationMode::BoxBound, max_box, tail_report: false }
    }

    /// Anchored when the graph has a free boundary, box-bounded otherwise.
    pub fn auto(g: &SurfaceGraph, max_box: u32) -> Self {
        if g.has_free_boundary() {
            Self::anchored()
        } else {
            Self::box_bound(max_box)
        }
    }

    pub fn with_tail_report(mut self) -> Self {
        self.tail_report = true;
        self
    }
}

/// Minimum exponent rate `Σ_F |F| c_F / 2N` among configurations that the
/// window `max_box` drops but `max_box + 1` keeps.
#[derive(Clone, Debug, PartialEq)]
pub struct TailReport {
    pub max_box: u32,
    pub discarded_min_rate: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub configs: Vec<WeightConfiguration>,
    pub diagnostic: Option<String>,
    pub tail: Option<TailReport>,
}

/// Dual-graph potential with `n_R = n_L + 1` on every edge, normalised so
/// the BFS root of each component is 0.
pub fn balance_potential(g: &SurfaceGraph) -> Option<Vec<i64>> {
    let nf = g.faces().len();
    let adj = dual_adjacency(g);
    let mut n: Vec<Option<i64>> = vec![None; nf];
    for root in 0..nf {
        if n[root].is_some() {
            continue;
        }
        n[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            for &e in &adj[f] {
                let edge = &g.edges()[e];
                let (l, r) = (edge.left, edge.right);
                let (other, value) = if l == f { (r, n[f]? + 1) } else { (l, n[f]? - 1) };
                match n[other] {
                    None => {
                        n[other] = Some(value);
                        queue.push_back(other);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let n: Vec<i64> = n.into_iter().collect::<Option<_>>()?;
    g.edges().iter().all(|e| n[e.right] == n[e.left] + 1).then_some(n)
}

pub fn check_weak_balance(g: &SurfaceGraph) -> bool {
    balance_potential(g).is_some()
}

fn dual_adjacency(g: &SurfaceGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.faces().len()];
    for (k, e) in g.edges().iter().enumerate() {
        adj[e.left].push(k);
        if e.right != e.left {
            adj[e.right].push(k);
        }
    }
    adj
}

pub fn is_balanced(g: &SurfaceGraph, c: &WeightConfiguration) -> bool {
    g.edges().iter().all(|e| matches!(extends(c.get(e.left), c.get(e.right)), Ok(Some(_))))
        && g.faces().iter().zip(c.weights()).all(|(f, w)| !f.has_free_boundary() || w.is_zero())
}

/// `(i, (λ_R)_i)` where `λ_R = λ_L + e_i`, with `i` 1-based.
pub fn edge_label(g: &SurfaceGraph, c: &WeightConfiguration, e: usize) -> Result<(usize, i64)> {
    let edge = &g.edges()[e];
    let r = c.get(edge.right);
    match extends(c.get(edge.left), r)? {
        Some(i) => Ok((i, r.components()[i - 1])),
        None => Err(Error::Unbalanced(format!("edge `{}`", edge.id))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelLine {
    pub label: (usize, i64),
    pub edges: Vec<usize>,
}

/// Constant-label cycles of edges. At a vertex where north and south carry
/// the same weight the labels turn (sw→nw, se→ne); elsewhere they cross
/// (sw→ne, se→nw).
pub fn level_lines(g: &SurfaceGraph, c: &WeightConfiguration) -> Result<Vec<LevelLine>> {
    let labels = (0..g.edges().len()).map(|e| edge_label(g, c, e)).collect::<Result<Vec<_>>>()?;
    let mut next = vec![usize::MAX; g.edges().len()];
    for (k, e) in g.edges().iter().enumerate() {
        if e.kind == EdgeKind::Circular {
            next[k] = k;
        }
    }
    for v in g.vertices() {
        if c.get(v.north) == c.get(v.south) {
            next[v.sw] = v.nw;
            next[v.se] = v.ne;
        } else {
            next[v.sw] = v.ne;
            next[v.se] = v.nw;
        }
    }
    let mut seen = vec![false; g.edges().len()];
    let mut out = Vec::new();
    for start in 0..g.edges().len() {
        if seen[start] {
            continue;
        }
        let mut edges = Vec::new();
        let mut cur = start;
        loop {
            if seen[cur] || labels[cur] != labels[start] {
                return Err(Error::Internal(format!(
                    "level line through `{}` is not a constant-label cycle",
                    g.edges()[start].id
                )));
            }
            seen[cur] = true;
            edges.push(cur);
            cur = next[cur];
            if cur == start {
                break;
            }
        }
        out.push(LevelLine { label: labels[start], edges });
    }
    Ok(out)
}

/// Enumerates ℬ within the truncation window, rooted at the first
/// free-boundary face (or face 0 on closed surfaces).
pub fn enumerate_balanced(g: &SurfaceGraph, trunc: Truncation) -> Result<Enumeration> {
    let root = g.faces().iter().position(|f| f.has_free_boundary()).unwrap_or(0);
    enumerate_balanced_from(g, trunc, root)
}

/// Same as [`enumerate_balanced`], with the dual spanning tree grown from
/// `root`.
pub fn enumerate_balanced_from(g: &SurfaceGraph, trunc: Truncation, root: usize) -> Result<Enumeration> {
    if root >= g.faces().len() {
        return Err(Error::Precondition(format!("root face index {root} out of range")));
    }
    let free = g.has_free_boundary();
    if trunc.mode == TruncationMode::Anchored && !free {
        return Err(Error::Precondition("anchored enumeration needs a free boundary".into()));
    }
    if free && !g.faces()[root].has_free_boundary() && trunc.mode == TruncationMode::Anchored {
        return Err(Error::Precondition("anchored enumeration must be rooted at a free-boundary face".into()));
    }
    if !check_weak_balance(g) {
        return Ok(Enumeration {
            configs: Vec::new(),
            diagnostic: Some("no integer potential with n_R = n_L + 1 exists: no balanced configuration".into()),
            tail: None,
        });
    }
    let plan = Plan::new(g, root)?;
    let window = match trunc.mode {
        TruncationMode::Anchored => None,
        TruncationMode::BoxBound => Some(trunc.max_box as i64),
    };
    let configs = plan.run(g, window);
    let tail = if trunc.tail_report && trunc.mode == TruncationMode::BoxBound {
        let wider = plan.run(g, Some(trunc.max_box as i64 + 1));
        let m = trunc.max_box as i64;
        let areas = g.areas();
        let rate = wider
            .iter()
            .filter(|c| c.weights().iter().any(|w| w.max_abs() > m))
            .map(|c| exponent_rate(g, c, &areas))
            .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.min(r))));
        Some(TailReport { max_box: trunc.max_box, discarded_min_rate: rate })
    } else {
        None
    };
    Ok(Enumeration { configs, diagnostic: None, tail })
}

/// `Σ_F |F| c_{λ_F} / (2N)`.
pub fn exponent_rate(g: &SurfaceGraph, c: &WeightConfiguration, areas: &[f64]) -> f64 {
    let n = g.rank() as f64;
    c.weights().iter().zip(areas).map(|(w, a)| a * casimir(w) as f64).sum::<f64>() / (2.0 * n)
}

#[derive(Clone, Copy)]
enum Step {
    Extend,
    Reduce,
}

/// Dual-BFS order with the tree edge and co-tree checks for each face.
struct Plan {
    order: Vec<usize>,
    parent: Vec<Option<(usize, Step)>>,
    checks: Vec<Vec<usize>>,
    forced_zero: Vec<bool>,
    root_free: bool,
    rank: usize,
}

impl Plan {
    fn new(g: &SurfaceGraph, root: usize) -> Result<Self> {
        let nf = g.faces().len();
        let adj = dual_adjacency(g);
        let mut pos = vec![usize::MAX; nf];
        let mut order = vec![root];
        let mut parent = vec![None];
        pos[root] = 0;
        let mut head = 0;
        while head < order.len() {
            let f = order[head];
            head += 1;
            for &e in &adj[f] {
                let edge = &g.edges()[e];
                let (other, step) = if edge.left == f { (edge.right, Step::Extend) } else { (edge.left, Step::Reduce) };
                if pos[other] == usize::MAX {
                    pos[other] = order.len();
                    order.push(other);
                    parent.push(Some((pos[f], step)));
                }
            }
        }
        if order.len() != nf {
            return Err(Error::Precondition("dual graph is disconnected".into()));
        }
        let mut checks = vec![Vec::new(); nf];
        for (k, e) in g.edges().iter().enumerate() {
            let at = pos[e.left].max(pos[e.right]);
            checks[at].push(k);
        }
        let forced_zero = order.iter().map(|&f| g.faces()[f].has_free_boundary()).collect();
        Ok(Self { order, parent, checks, forced_zero, root_free: g.faces()[root].has_free_boundary(), rank: g.rank() })
    }

    fn run(&self, g: &SurfaceGraph, window: Option<i64>) -> Vec<WeightConfiguration> {
        let roots = if self.root_free {
            vec![HighestWeight::zero(self.rank)]
        } else {
            weights::weights_in_window(self.rank, window.unwrap_or(0))
        };
        let chunks: Vec<Vec<Vec<HighestWeight>>> = roots
            .into_par_iter()
            .map(|w| {
                let mut out = Vec::new();
                let mut stack: Vec<HighestWeight> = Vec::with_capacity(self.order.len());
                if self.admissible(g, &w, &stack, 0, window) {
                    stack.push(w);
                    self.dfs(g, &mut stack, window, &mut out);
                }
                out
            })
            .collect();
        let mut seen = HashSet::new();
        let mut result = Vec::new();
        for assigned in chunks.into_iter().flatten() {
            let mut weights = vec![HighestWeight::zero(self.rank); self.order.len()];
            for (k, w) in assigned.into_iter().enumerate() {
                weights[self.order[k]] = w;
            }
            if seen.insert(weights.clone()) {
                result.push(WeightConfiguration { weights });
            }
        }
        result
    }

    fn admissible(
        &self,
        g: &SurfaceGraph,
        w: &HighestWeight,
        stack: &[HighestWeight],
        k: usize,
        window: Option<i64>,
    ) -> bool {
        if self.forced_zero[k] && !w.is_zero() {
            return false;
        }
        if let Some(m) = window {
            if w.max_abs() > m {
                return false;
            }
        }
        let weight_of = |face: usize| -> &HighestWeight {
            let p = self.order.iter().position(|&f| f == face).expect("face in order");
            if p == k {
                w
            } else {
                &stack[p]
            }
        };
        self.checks[k].iter().all(|&e| {
            let edge = &g.edges()[e];
            matches!(extends(weight_of(edge.left), weight_of(edge.right)), Ok(Some(_)))
        })
    }

    fn dfs(&self, g: &SurfaceGraph, stack: &mut Vec<HighestWeight>, window: Option<i64>, out: &mut Vec<Vec<HighestWeight>>) {
        let k = stack.len();
        if k == self.order.len() {
            out.push(stack.clone());
            return;
        }
        let (p, step) = self.parent[k].expect("non-root faces have a parent");
        let candidates = match step {
            Step::Extend => weights::list_extensions(&stack[p]),
            Step::Reduce => weights::list_reductions(&stack[p]),
        };
        for (w, _) in candidates {
            if self.admissible(g, &w, stack, k, window) {
                stack.push(w);
                self.dfs(g, stack, window, out);
                stack.pop();
            }
        }
    }
}
