//! Closed surfaces: sphere loops in a box window, torus loops that vanish,
//! and partition functions.

use ym2d::enumerate::{enumerate_balanced, Truncation};
use ym2d::evaluate::{normalized_expectation, partition_function, wilson_expectation, SeriesTruncation};
use ym2d::surface::SurfaceGraph;

fn load(name: &str) -> ym2d::Result<SurfaceGraph> {
    SurfaceGraph::load(format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR")))
}

fn main() -> ym2d::Result<()> {
    let g = load("sphere_loop")?;
    for m in [2, 4, 6, 8] {
        let e = wilson_expectation(&g, Truncation::box_bound(m).with_tail_report())?;
        let tail = e.tail.as_ref().and_then(|t| t.discarded_min_rate);
        println!("sphere loop, box {m}: {} terms, value {:.15}, next decay rate {tail:?}", e.terms.len(), e.value().re);
    }
    let e = wilson_expectation(&g, Truncation::box_bound(8))?;
    println!("normalized: {:.15}", normalized_expectation(&g, &e, SeriesTruncation::default())?.re);

    for name in ["torus_meridian", "torus_parallel", "torus_antiparallel"] {
        let g = load(name)?;
        let en = enumerate_balanced(&g, Truncation::box_bound(4))?;
        println!("{name}: {} balanced configurations {}", en.configs.len(), en.diagnostic.unwrap_or_default());
    }

    for euler in [2, 0, -2] {
        let z = partition_function(euler, &[], 2, 1.0, SeriesTruncation::default())?;
        println!("Z(euler {euler}, N=2, t=1) = {:.15} (last shell {})", z.value, z.final_shell);
    }
    Ok(())
}
