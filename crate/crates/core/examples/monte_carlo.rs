//! Monte Carlo integration over Haar-random edge variables, next to the exact values.

use ym2d::enumerate::Truncation;
use ym2d::evaluate::wilson_expectation;
use ym2d::oracle::{mc_driver_sengupta, mc_heat_kernel_normalization, McConfig};
use ym2d::surface::SurfaceGraph;

fn main() -> ym2d::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let cfg = McConfig { samples, seed: 42, ..McConfig::default() };
    for (name, trunc) in [
        ("disk_loop", Truncation::anchored()),
        ("figure_eight", Truncation::anchored()),
        ("sphere_loop", Truncation::box_bound(8)),
        ("torus_meridian", Truncation::box_bound(4)),
    ] {
        let g = SurfaceGraph::load(format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR")))?;
        let exact = wilson_expectation(&g, trunc)?.value();
        let est = mc_driver_sengupta(&g, &cfg)?;
        println!("{name}: MC {:.5} ± {:.5}, exact {:.5} ({:.2}σ)", est.mean.re, est.stderr_re, exact.re, est.sigmas_from(exact));
    }
    let z = mc_heat_kernel_normalization(2, 1.0, samples, 7)?;
    println!("∫ p_1 over U(2): {:.5} ± {:.5}", z.mean.re, z.stderr_re);
    Ok(())
}
