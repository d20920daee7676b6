use super::*;
use crate::enumerate::enumerate_balanced;
use crate::surface::{Edge, EdgeKind, Face, Vertex};
use crate::weights::HighestWeight;

fn data(name: &str) -> SurfaceGraph {
    SurfaceGraph::load(format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn hw(c: &[i64]) -> HighestWeight {
    HighestWeight::new(c.to_vec()).unwrap()
}

fn q(p: i64, r: i64) -> BigRational {
    BigRational::new(p.into(), r.into())
}

const CORPUS: [&str; 6] = ["disk_loop", "figure_eight", "nested_loops", "two_gon", "trefoil", "nested_two_gon"];

/// A lone vertex with four distinct corner faces; only the corner data is read.
fn corner_graph(rank: usize) -> SurfaceGraph {
    let face = |id: &str| Face {
        id: id.into(),
        area: 1.0,
        euler_char: 1,
        external_boundaries: 1,
        internal_boundaries: vec![],
    };
    let edge = |id: &str, left, right| Edge { id: id.into(), kind: EdgeKind::Linear { from: 0, to: 0 }, left, right };
    let faces = vec![face("N"), face("W"), face("S"), face("E")];
    let edges = vec![edge("ne", 0, 3), edge("nw", 1, 0), edge("sw", 1, 2), edge("se", 2, 3)];
    let v = Vertex { id: "v".into(), north: 0, west: 1, south: 2, east: 3, ne: 0, nw: 1, sw: 2, se: 3 };
    SurfaceGraph::new(rank, 2, true, faces, edges, vec![v], None)
}

fn corner(n: &[i64], w: &[i64], s: &[i64], e: &[i64]) -> VertexAngleData {
    let g = corner_graph(n.len());
    let c = WeightConfiguration::new(&g, vec![hw(n), hw(w), hw(s), hw(e)]).unwrap();
    vertex_angle(&g, &c, 0).unwrap()
}

#[test]
fn vertex_angle_examples() {
    let a = corner(&[2, 1, 0], &[1, 1, 0], &[2, 1, 0], &[2, 1, 1]);
    assert_eq!((a.cos_value.clone(), a.vertex_type), (q(-1, 3), VertexType::One));
    let a = corner(&[1, 0], &[0, 0], &[1, 0], &[2, 0]);
    assert_eq!((a.cos_value.clone(), a.vertex_type), (q(1, 1), VertexType::One));
    assert!(a.sin_squared().is_zero());
    let a = corner(&[2, 0], &[1, 0], &[1, 1], &[2, 1]);
    assert_eq!((a.c1, a.c2), (-1, 1));
    assert_eq!((a.cos_value.clone(), a.vertex_type), (q(-1, 2), VertexType::Two));
}

#[test]
fn unbalanced_vertex_is_an_error() {
    let g = corner_graph(2);
    let c = WeightConfiguration::new(&g, vec![hw(&[3, 0]), hw(&[0, 0]), hw(&[1, 0]), hw(&[2, 0])]).unwrap();
    assert!(matches!(vertex_angle(&g, &c, 0), Err(Error::Unbalanced(_))));
}

#[test]
fn flat_contribution_examples() {
    for n in 1..=4usize {
        let g = data("disk_loop").with_rank(n).unwrap();
        let e = enumerate_balanced(&g, Truncation::anchored()).unwrap();
        assert_eq!(flat_contribution(&g, &e.configs[0]).unwrap(), q(n as i64, 1));

        let g = data("figure_eight").with_rank(n).unwrap();
        let e = enumerate_balanced(&g, Truncation::anchored()).unwrap();
        assert_eq!(e.configs.len(), 1);
        assert_eq!(flat_contribution(&g, &e.configs[0]).unwrap(), q(n as i64, 1));
        let a = vertex_angle(&g, &e.configs[0], 0).unwrap();
        assert_eq!((a.cos_value, a.vertex_type), (q(1, n as i64), VertexType::One));
    }
}

#[test]
fn empty_closed_surface_gives_dimension_power() {
    for e in [2i64, 0, -2, -4] {
        let f = Face { id: "S".into(), area: 1.0, euler_char: e, external_boundaries: 0, internal_boundaries: vec![] };
        let g = SurfaceGraph::new(3, e, true, vec![f], vec![], vec![], None);
        for w in [hw(&[0, 0, 0]), hw(&[2, 1, 0]), hw(&[1, 0, -1])] {
            let c = WeightConfiguration::new(&g, vec![w.clone()]).unwrap();
            let d = BigRational::from(dim_unitary(&w));
            assert_eq!(flat_contribution(&g, &c).unwrap(), Pow::pow(d, e as i32));
        }
    }
}

#[test]
fn unbalanced_configurations_contribute_zero() {
    let g = data("disk_loop");
    let c = WeightConfiguration::new(&g, vec![hw(&[0, 0]), hw(&[0, -1])]).unwrap();
    assert!(flat_contribution(&g, &c).unwrap().is_zero());
}

#[test]
fn exact_and_square_root_forms_agree() {
    for name in CORPUS {
        for n in 1..=3 {
            let g = data(name).with_rank(n).unwrap();
            for c in enumerate_balanced(&g, Truncation::anchored()).unwrap().configs {
                let exact = flat_contribution(&g, &c).unwrap().to_f64().unwrap();
                let float = flat_contribution_float(&g, &c).unwrap();
                assert!((exact - float).abs() <= 1e-10 * exact.abs().max(1.0), "{name} N={n}: {exact} vs {float}");
            }
        }
    }
}

#[test]
fn flat_contribution_is_shift_invariant() {
    for name in CORPUS.iter().chain(&["sphere_loop", "disjoint_loops"]) {
        for n in 1..=3 {
            let g = data(name).with_rank(n).unwrap();
            let configs = if g.has_free_boundary() {
                enumerate_balanced(&g, Truncation::anchored()).unwrap().configs
            } else {
                enumerate_balanced(&g, Truncation::box_bound(2)).unwrap().configs
            };
            // Shifted configurations break the free-boundary condition, so
            // compare on the closed version of each graph.
            let closed = close_up(&g);
            for c in configs {
                let base = flat_contribution(&closed, &c).unwrap();
                assert!(!base.is_zero());
                for s in -3..=3 {
                    assert_eq!(flat_contribution(&closed, &c.shift(s)).unwrap(), base, "{name} N={n} q={s}");
                }
            }
        }
    }
}

/// Drops free boundary components so that shifted weights stay balanced,
/// without touching any face data the flat contribution reads.
fn close_up(g: &SurfaceGraph) -> SurfaceGraph {
    let faces = g
        .faces()
        .iter()
        .map(|f| Face { internal_boundaries: vec![], ..f.clone() })
        .collect();
    SurfaceGraph::new(
        g.rank(),
        g.surface_euler_char(),
        g.is_closed(),
        faces,
        g.edges().to_vec(),
        g.vertices().to_vec(),
        g.loops().map(|l| l.to_vec()),
    )
}

#[test]
fn disk_and_figure_eight_values() {
    for n in 1..=3usize {
        for t in [0.5, 1.0, 2.0] {
            let mut g = data("disk_loop").with_rank(n).unwrap();
            g.set_area("F1", t).unwrap();
            let e = wilson_expectation(&g, Truncation::anchored()).unwrap();
            assert_eq!(e.terms.len(), 1);
            let want = n as f64 * (-t / 2.0).exp();
            assert!((e.value().re - want).abs() <= 1e-12 * want);
        }
        let (s, t) = (0.7, 1.9);
        let mut g = data("figure_eight").with_rank(n).unwrap();
        g.set_area("F1", s).unwrap();
        g.set_area("F2", t).unwrap();
        let e = wilson_expectation(&g, Truncation::anchored()).unwrap();
        let want = n as f64 * (-(s + t) / 2.0).exp();
        assert!((e.value().re - want).abs() <= 1e-12 * want);
    }
}

#[test]
fn empty_disk_has_value_one() {
    let f = Face {
        id: "D".into(),
        area: 2.0,
        euler_char: 1,
        external_boundaries: 0,
        internal_boundaries: vec![crate::surface::BoundaryComponent::free("B")],
    };
    let g = SurfaceGraph::new(3, 1, false, vec![f], vec![], vec![], None);
    let e = wilson_expectation(&g, Truncation::anchored()).unwrap();
    assert_eq!(e.terms.len(), 1);
    assert_eq!(e.value().re, 1.0);
}

#[test]
fn json_output_shape() {
    let g = data("disk_loop");
    let e = wilson_expectation(&g, Truncation::anchored()).unwrap();
    let v = e.to_json_value(&g);
    assert_eq!(v["terms"][0]["flat"], "2/1");
    assert_eq!(v["terms"][0]["casimirs"]["F1"], 2);
    assert_eq!(v["terms"][0]["schur_boundary"], serde_json::json!([1.0, 0.0]));
    assert_eq!(v["truncation"]["mode"], "anchored");
}

#[test]
fn rationals_round_trip() {
    for r in [q(1, 1), q(-1, 3), q(0, 1), q(123456789, 1000)] {
        let s = format_rational(&r);
        assert!(s.contains('/'));
        assert_eq!(parse_rational(&s).unwrap(), r);
    }
    assert!(parse_rational("3").is_err());
    assert!(parse_rational("1/0").is_err());
}

#[test]
fn constrained_boundary_uses_schur_values() {
    let text = r#"{"N":2,"surface":{"euler_char":1,"closed":false},
        "faces":[{"id":"D","area":1.0,"euler_char":1,"external_boundaries":0,
        "internal_boundaries":[{"id":"B","kind":"constrained","eigenvalues":[[1.0,0.0],[0.0,1.0]]}]}]}"#;
    let g = SurfaceGraph::from_json_str(text).unwrap();
    let e = wilson_expectation(&g, Truncation::box_bound(6)).unwrap();
    let x = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
    let hk = heat_kernel(1.0, &x, SeriesTruncation::Window(6)).unwrap();
    assert!((e.value().re - hk.value).abs() < 1e-12 * hk.value.abs().max(1.0));
}
