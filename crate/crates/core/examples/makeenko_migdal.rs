//! Alternating area derivatives at each crossing against the pulled-apart graph.

use ym2d::enumerate::Truncation;
use ym2d::mm::{desingularize, mm_check};
use ym2d::surface::SurfaceGraph;

fn main() -> ym2d::Result<()> {
    for name in ["figure_eight", "two_gon", "trefoil", "nested_two_gon"] {
        let g = SurfaceGraph::load(format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR")))?.with_rank(3)?;
        for v in 0..g.vertices().len() {
            let d = desingularize(&g, v)?;
            let r = mm_check(&g, v, Truncation::anchored())?;
            println!(
                "{name} at {}: {} faces → {}, lhs {:.12} rhs {:.12}, type 1/2 terms {}/{}, per-term {}",
                r.vertex,
                g.faces().len(),
                d.faces().len(),
                r.lhs.re,
                r.rhs.re,
                r.type_one_terms,
                r.type_two_terms,
                r.per_term_ok
            );
        }
    }
    Ok(())
}
