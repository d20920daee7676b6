//! A simple loop on a disk: one balanced configuration, value `N e^{-t/2}`.

use ym2d::enumerate::Truncation;
use ym2d::evaluate::wilson_expectation;
use ym2d::surface::SurfaceGraph;

fn main() -> ym2d::Result<()> {
    let base = SurfaceGraph::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/disk_loop.json"))?;
    for n in 1..=3 {
        let mut g = base.with_rank(n)?;
        for t in [0.5, 1.0, 2.0] {
            g.set_area("F1", t)?;
            let e = wilson_expectation(&g, Truncation::anchored())?;
            let closed = n as f64 * (-t / 2.0f64).exp();
            println!("N={n} t={t}: {} term(s), value {:.15} (closed form {closed:.15})", e.terms.len(), e.value().re);
        }
    }
    Ok(())
}
