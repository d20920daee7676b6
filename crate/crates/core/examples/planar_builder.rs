//! Builds a surface graph from a planar diagram and prints it as JSON.
//!
//! Pass a diagram file as the first argument, or run without one for the
//! figure-eight `{"crossings":[["a","b","b","a"]]}`.

use ym2d::enumerate::Truncation;
use ym2d::evaluate::wilson_expectation;
use ym2d::surface::{validate, PlanarDiagram, SurfaceGraph};

const FIGURE_EIGHT: &str = r#"{"crossings":[["a","b","b","a"]]}"#;

fn main() -> ym2d::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).map_err(|source| ym2d::Error::Io { path, source })?,
        None => FIGURE_EIGHT.to_string(),
    };
    let diagram: PlanarDiagram = serde_json::from_str(&text).map_err(|e| ym2d::Error::Parse(e.to_string()))?;
    let g = SurfaceGraph::from_planar_diagram(&diagram, 2)?;
    println!("violations: {}", validate(&g).len());
    println!("{}", g.to_json_string());
    let e = wilson_expectation(&g, Truncation::anchored())?;
    println!("value at unit areas: {:.12} from {} term(s)", e.value().re, e.terms.len());
    Ok(())
}
