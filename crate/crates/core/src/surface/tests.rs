use super::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn data(name: &str) -> SurfaceGraph {
    let path = format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"));
    SurfaceGraph::load(path).unwrap()
}

fn s(a: &str) -> String {
    a.to_string()
}

#[test]
fn corpus_files_validate() {
    for name in [
        "disk_loop",
        "figure_eight",
        "nested_loops",
        "disjoint_loops",
        "two_gon",
        "trefoil",
        "nested_two_gon",
        "sphere_loop",
        "torus_meridian",
        "torus_parallel",
        "torus_antiparallel",
    ] {
        let g = data(name);
        assert_eq!(validate(&g), vec![], "{name}");
    }
}

#[test]
fn empty_sphere_is_valid() {
    let f = Face { id: s("S"), area: 1.0, euler_char: 2, external_boundaries: 0, internal_boundaries: vec![] };
    let g = SurfaceGraph::new(2, 2, true, vec![f], vec![], vec![], None);
    assert!(validate(&g).is_empty());
}

#[test]
fn torus_meridian_is_valid() {
    let g = data("torus_meridian");
    assert!(validate(&g).is_empty());
    assert_eq!(g.boundary_cycles().unwrap().len(), 2);
}

#[test]
fn corrupted_side_face_is_reported_once() {
    let text = std::fs::read_to_string(format!("{}/data/figure_eight.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // nw edge is e1; make its right face the east lobe instead of north.
    for e in v["edges"].as_array_mut().unwrap() {
        if e["id"] == "e1" {
            e["right"] = serde_json::json!("F1");
        }
    }
    let g = SurfaceGraph::from_json_str(&v.to_string()).unwrap();
    let viol = validate(&g);
    let side: Vec<_> = viol.iter().filter(|x| x.kind == ViolationKind::SideFace).collect();
    assert_eq!(side.len(), 1, "{viol:?}");
    assert_eq!(side[0].ids, vec![s("v0"), s("e1")]);
}

#[test]
fn json_round_trip_is_lossless() {
    for name in ["figure_eight", "trefoil", "nested_two_gon", "torus_parallel"] {
        let g = data(name);
        let back = SurfaceGraph::from_json_str(&g.to_json_string()).unwrap();
        assert_eq!(g, back, "{name}");
    }
}

#[test]
fn constrained_boundaries_parse_and_check() {
    let text = r#"{"N":2,"surface":{"euler_char":1,"closed":false},
        "faces":[{"id":"D","area":1.0,"euler_char":1,"external_boundaries":0,
        "internal_boundaries":[{"id":"B","kind":"constrained","eigenvalues":[[1.0,0.0],[0.0,1.0]]}]}]}"#;
    let g = SurfaceGraph::from_json_str(text).unwrap();
    assert!(validate(&g).is_empty());
    let bad = text.replace("[0.0,1.0]", "[0.0,1.1]");
    let g = SurfaceGraph::from_json_str(&bad).unwrap();
    assert_eq!(validate(&g)[0].kind, ViolationKind::Eigenvalues);
    let missing = text.replace(r#","eigenvalues":[[1.0,0.0],[0.0,1.0]]"#, "");
    assert!(matches!(SurfaceGraph::from_json_str(&missing), Err(Error::InvalidGraph(_))));
}

#[test]
fn parse_errors_carry_location() {
    let err = SurfaceGraph::from_json_str("{\"N\":2,\n\"surface\":{}}").unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("line 2"), "{msg}");
    let err = SurfaceGraph::from_json_str(r#"{"N":2,"surface":{"euler_char":1,"closed":false},"faces":[],"bogus":1}"#)
        .unwrap_err();
    assert!(err.to_string().contains("bogus"));
}

#[test]
fn unknown_references_are_reported() {
    let text = r#"{"N":1,"surface":{"euler_char":1,"closed":false},
        "faces":[{"id":"F0","area":1.0,"euler_char":0,"external_boundaries":1,"internal_boundaries":[{"id":"B","kind":"free"}]}],
        "edges":[{"id":"c","kind":"circular","left":"F0","right":"F9"}]}"#;
    match SurfaceGraph::from_json_str(text) {
        Err(Error::InvalidGraph(v)) => assert_eq!(v[0].kind, ViolationKind::UnknownReference),
        other => panic!("{other:?}"),
    }
}

#[test]
fn euler_and_boundary_counts_are_checked() {
    let mut g = data("disk_loop");
    g.faces[1].euler_char = 3;
    let kinds: Vec<_> = validate(&g).into_iter().map(|v| v.kind).collect();
    assert!(kinds.contains(&ViolationKind::EulerRelation));
    assert!(kinds.contains(&ViolationKind::FaceTopology));

    let mut g = data("figure_eight");
    g.faces[0].external_boundaries = 2;
    g.faces[0].euler_char = -1;
    let g = SurfaceGraph::new(g.rank, 0, false, g.faces, g.edges, g.vertices, g.loops);
    let kinds: Vec<_> = validate(&g).into_iter().map(|v| v.kind).collect();
    assert!(kinds.contains(&ViolationKind::ExternalBoundaryCount), "{kinds:?}");
}

#[test]
fn loop_words_are_checked() {
    let mut g = data("two_gon");
    g.set_loops(Some(vec![vec![Dart::new(0, true), Dart::new(1, true)]]));
    assert_eq!(validate(&g)[0].kind, ViolationKind::Loop);
}

#[test]
fn planar_single_circle() {
    let d = PlanarDiagram { circles: vec![Circle { arc: s("c"), interior: Side::Right }], ..Default::default() };
    let g = SurfaceGraph::from_planar_diagram(&d, 3).unwrap();
    assert!(validate(&g).is_empty());
    assert_eq!(g.faces().len(), 2);
    assert_eq!((g.faces()[1].euler_char, g.faces()[0].euler_char), (1, 0));
    assert!(g.faces()[0].has_free_boundary());
    assert_eq!(g.edges()[0].kind, EdgeKind::Circular);
    assert!(g.vertices().is_empty());
}

#[test]
fn planar_figure_eight() {
    let d = PlanarDiagram { crossings: vec![[s("a"), s("b"), s("b"), s("a")]], ..Default::default() };
    let g = SurfaceGraph::from_planar_diagram(&d, 2).unwrap();
    assert!(validate(&g).is_empty());
    assert_eq!(g.faces().len(), 3);
    assert!(g.edges().iter().all(|e| e.kind == EdgeKind::Linear { from: 0, to: 0 }));
    let v = &g.vertices()[0];
    assert_eq!(v.north, v.south);
    assert_eq!(v.north, 0);
    assert_ne!(v.east, v.west);
    assert_eq!(g.loops().unwrap().len(), 1);
}

#[test]
fn planar_two_gon_has_four_faces() {
    let g = data("two_gon");
    assert_eq!(g.faces().len(), 4);
    assert_eq!(g.loops().unwrap().len(), 2);
}

#[test]
fn planar_rejects_bad_pairings() {
    let dangling = PlanarDiagram { crossings: vec![[s("a"), s("b"), s("b"), s("c")]], ..Default::default() };
    assert!(SurfaceGraph::from_planar_diagram(&dangling, 2).is_err());
    let a = |k: i32| format!("a{}", k.rem_euclid(6));
    let nonplanar = PlanarDiagram {
        crossings: (0..3).map(|k| [a(k), a(k + 3), a(k - 1), a(k + 2)]).collect(),
        ..Default::default()
    };
    let err = SurfaceGraph::from_planar_diagram(&nonplanar, 2).unwrap_err();
    assert!(err.to_string().contains("non-planar"));
}

#[test]
fn every_vertex_has_two_outgoing_and_two_incoming_ends() {
    let g = data("trefoil");
    let linear = g.edges().iter().filter(|e| e.is_linear()).count();
    assert_eq!(2 * linear, 4 * g.vertices().len());
    for (k, _) in g.vertices().iter().enumerate() {
        let outs = g.edges().iter().filter(|e| matches!(e.kind, EdgeKind::Linear { from, .. } if from == k)).count();
        let ins = g.edges().iter().filter(|e| matches!(e.kind, EdgeKind::Linear { to, .. } if to == k)).count();
        assert_eq!((outs, ins), (2, 2));
    }
}

#[test]
fn strand_loops_follow_straight_continuation() {
    let g = data("figure_eight");
    let loops = g.strand_loops().unwrap();
    assert_eq!(loops, vec![vec![Dart::new(0, true), Dart::new(1, true)]]);
    let g = data("trefoil");
    assert_eq!(g.strand_loops().unwrap()[0].len(), 6);
}

fn kink(d: &mut PlanarDiagram, rng: &mut ChaCha8Rng, fresh: &mut usize) {
    let arcs: Vec<String> = d.crossings.iter().map(|c| c[0].clone()).chain(d.crossings.iter().map(|c| c[1].clone())).collect();
    let a = arcs.choose(rng).unwrap().clone();
    let tail = format!("k{fresh}");
    let lp = format!("l{fresh}");
    *fresh += 1;
    for c in d.crossings.iter_mut() {
        for slot in 2..4 {
            if c[slot] == a {
                c[slot] = tail.clone();
            }
        }
    }
    if rng.gen_bool(0.5) {
        d.crossings.push([lp.clone(), tail, a, lp]);
    } else {
        d.crossings.push([tail, lp.clone(), lp, a]);
    }
}

fn random_pairing(k: usize, rng: &mut ChaCha8Rng) -> Option<PlanarDiagram> {
    for _ in 0..400 {
        let mut ins: Vec<usize> = (0..2 * k).collect();
        ins.shuffle(rng);
        // arc j leaves crossing j/2 (ne if even) and enters slot ins[j]
        let mut crossings = vec![[String::new(), String::new(), String::new(), String::new()]; k];
        for j in 0..2 * k {
            crossings[j / 2][j % 2] = format!("r{j}");
            crossings[ins[j] / 2][2 + ins[j] % 2] = format!("r{j}");
        }
        let d = PlanarDiagram { crossings, ..Default::default() };
        if SurfaceGraph::from_planar_diagram(&d, 1).is_ok() {
            return Some(d);
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn planar_builder_output_validates(seed in any::<u64>(), base in 1usize..=3, extra in 0usize..=3, rank in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = random_pairing(base, &mut rng).expect("planar pairing found");
        let mut fresh = 0;
        for _ in 0..extra {
            kink(&mut d, &mut rng, &mut fresh);
        }
        prop_assert!(d.crossings.len() <= 6);
        let g = SurfaceGraph::from_planar_diagram(&d, rank).unwrap();
        prop_assert_eq!(validate(&g), vec![]);
        let linear = g.edges().iter().filter(|e| e.is_linear()).count();
        prop_assert_eq!(2 * linear, 4 * g.vertices().len());
    }
}
