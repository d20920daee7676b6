//! The figure-eight: a single type-1 crossing with `cos θ = 1/N`.

use ym2d::enumerate::{enumerate_balanced, Truncation};
use ym2d::evaluate::{flat_contribution, format_rational, vertex_angle, wilson_expectation};
use ym2d::surface::SurfaceGraph;

fn main() -> ym2d::Result<()> {
    let (s, t) = (0.8, 1.3);
    for n in 1..=4 {
        let mut g = SurfaceGraph::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/figure_eight.json"))?.with_rank(n)?;
        g.set_area("F1", s)?;
        g.set_area("F2", t)?;
        let c = &enumerate_balanced(&g, Truncation::anchored())?.configs[0];
        let angle = vertex_angle(&g, c, 0)?;
        let e = wilson_expectation(&g, Truncation::anchored())?;
        println!(
            "N={n}: flat {} cos {} ({:?}), value {:.12} vs N e^(-(s+t)/2) = {:.12}",
            format_rational(&flat_contribution(&g, c)?),
            format_rational(&angle.cos_value),
            angle.vertex_type,
            e.value().re,
            n as f64 * (-(s + t) / 2.0f64).exp()
        );
    }
    Ok(())
}
