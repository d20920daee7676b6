//! Exact permutation sums against the closed-form flat contributions.

use ym2d::enumerate::{enumerate_balanced, Truncation};
use ym2d::evaluate::{flat_contribution, format_rational};
use ym2d::oracle::{flat_contribution_perm_sum, DEFAULT_BOUND};
use ym2d::surface::SurfaceGraph;

fn main() -> ym2d::Result<()> {
    for name in ["figure_eight", "two_gon", "nested_two_gon"] {
        for n in 1..=3 {
            let g = SurfaceGraph::load(format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR")))?.with_rank(n)?;
            let closed = g.without_free_boundaries();
            for c in enumerate_balanced(&g, Truncation::anchored())?.configs {
                let q = c.nonnegative_shift();
                let target = if q == 0 { &g } else { &closed };
                let perm = flat_contribution_perm_sum(target, &c.shift(q), DEFAULT_BOUND)?;
                let flat = flat_contribution(&g, &c)?;
                println!("{name} N={n} {}: {} {}", c.to_json_value(&g)["faces"], format_rational(&perm), if perm == flat { "=" } else { "≠" });
            }
        }
    }
    Ok(())
}
