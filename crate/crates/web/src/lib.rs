//! Browser bindings for the demo page in `www/`. The page generates an
//! instance, checks its layering, and solves it with a drawing of the
//! layered graph.
//!
//! The plain functions do the work and can be tested natively; the
//! `#[wasm_bindgen]` wrappers only turn errors into JavaScript exceptions.

use std::fmt::Write;

use perm3col::{
    bfs_layers, build_multichain_ordering, gen_instance, multichain_violation, parse_instance, solve_with_trace,
    write_instance, write_verdict, Colour, Colouring, Error, GenConfig, Instance, Layering, VertexId,
};
use wasm_bindgen::prelude::*;

/// Largest instance the page will draw.
pub const DRAW_LIMIT: usize = 400;

/// Instance text for the generator settings. A `band` of 0 means a uniform
/// permutation.
pub fn generate_text(
    n: usize,
    seed: u64,
    list_density: f64,
    precolour_rate: f64,
    band: usize,
) -> Result<String, Error> {
    let cfg = GenConfig { list_density, precolour_rate, band: (band > 0).then_some(band), ..GenConfig::new(n, seed) };
    Ok(write_instance(&gen_instance(&cfg)?))
}

/// The root, the layers, and whether the layering is multi-chain with
/// bipartite layers.
pub fn ordering_report(text: &str) -> Result<String, Error> {
    let inst = parse_instance(text)?;
    let g = inst.graph();
    let root = inst.root();
    let layering = bfs_layers(&g, root.index())?;
    let mut out = format!("root {root}, {} layers\n", layering.layers().len());
    for (i, layer) in layering.layers().iter().enumerate() {
        write!(out, "layer {i}:").unwrap();
        for &v in layer {
            write!(out, " {}", VertexId(v)).unwrap();
        }
        out.push('\n');
    }
    match multichain_violation(&g, &layering)? {
        Some(v) => writeln!(out, "multi-chain: no, {v}").unwrap(),
        None => {
            out.push_str("multi-chain: yes\n");
            match build_multichain_ordering(&g, root.index())?.odd_cycle() {
                None => out.push_str("bipartite layers: yes\n"),
                Some((layer, v)) => {
                    writeln!(out, "bipartite layers: no, layer {layer} has an odd cycle through {v}").unwrap()
                }
            }
        }
    }
    Ok(out)
}

/// Result of [`solve_text`].
#[wasm_bindgen(getter_with_clone)]
pub struct Report {
    /// Solver output in the colouring file format.
    pub verdict: String,
    /// Steps of the pipeline, one per line.
    pub trace: String,
    /// Drawing of the layered graph, empty above [`DRAW_LIMIT`] vertices.
    pub svg: String,
    pub feasible: bool,
}

pub fn solve_text(text: &str) -> Result<Report, Error> {
    let inst = parse_instance(text)?;
    let (verdict, trace) = solve_with_trace(&inst)?;
    let layering = bfs_layers(&inst.graph(), inst.root().index())?;
    let svg = if inst.n() <= DRAW_LIMIT { draw(&inst, &layering, verdict.colouring()) } else { String::new() };
    Ok(Report { verdict: write_verdict(&verdict), trace: trace.to_string(), svg, feasible: verdict.is_feasible() })
}

fn fill(c: Colour) -> &'static str {
    match c {
        Colour::C1 => "#f4a582",
        Colour::C2 => "#92c5de",
        Colour::C3 => "#b8e186",
    }
}

/// SVG of the graph with one column per layer, the root on the left.
/// Edges inside a layer bend to the right so they stay visible.
pub fn draw(inst: &Instance, layering: &Layering, colouring: Option<&Colouring>) -> String {
    const GAP_X: f64 = 110.0;
    const GAP_Y: f64 = 44.0;
    const R: f64 = 15.0;
    let layers = layering.layers();
    let tallest = layers.iter().map(Vec::len).max().unwrap_or(1);
    let mut pos = vec![(0.0, 0.0); inst.n()];
    for (i, layer) in layers.iter().enumerate() {
        let top = (tallest - layer.len()) as f64 * GAP_Y / 2.0;
        for (j, &v) in layer.iter().enumerate() {
            pos[v] = (50.0 + i as f64 * GAP_X, 40.0 + top + j as f64 * GAP_Y);
        }
    }
    let width = 100.0 + (layers.len().max(1) - 1) as f64 * GAP_X + 40.0;
    let height = 80.0 + (tallest.max(1) - 1) as f64 * GAP_Y;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" font-family=\"sans-serif\" font-size=\"11\">\n"
    );
    for (i, _) in layers.iter().enumerate() {
        let x = 50.0 + i as f64 * GAP_X;
        writeln!(svg, "<text x=\"{x}\" y=\"14\" text-anchor=\"middle\" fill=\"#666\">L{i}</text>").unwrap();
    }
    let g = inst.graph();
    for (a, b) in g.edges() {
        let ((x1, y1), (x2, y2)) = (pos[a], pos[b]);
        let clash = colouring.is_some_and(|c| c.get(a).is_some() && c.get(a) == c.get(b));
        let stroke = if clash { "stroke=\"red\" stroke-width=\"2.5\"" } else { "stroke=\"#999\"" };
        if x1 == x2 {
            let bend = x1 + R + (y2 - y1).abs() / 3.0;
            writeln!(svg, "<path d=\"M{x1} {y1} Q{bend} {} {x2} {y2}\" fill=\"none\" {stroke}/>", (y1 + y2) / 2.0)
                .unwrap();
        } else {
            writeln!(svg, "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" {stroke}/>").unwrap();
        }
    }
    for (v, &(x, y)) in pos.iter().enumerate() {
        let colour = colouring.and_then(|c| c.get(v)).map_or("#fff", fill);
        let list = inst.lists.get(v);
        writeln!(
            svg,
            "<g><title>vertex {} list {{{list}}}</title><circle cx=\"{x}\" cy=\"{y}\" r=\"{R}\" fill=\"{colour}\" stroke=\"#333\"/>\
             <text x=\"{x}\" y=\"{}\" text-anchor=\"middle\">{}</text></g>",
            v + 1,
            y + 4.0,
            v + 1
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn generate(n: usize, seed: u64, list_density: f64, precolour_rate: f64, band: usize) -> Result<String, JsError> {
    generate_text(n, seed, list_density, precolour_rate, band).map_err(js)
}

#[wasm_bindgen(js_name = checkOrdering)]
pub fn check_ordering(text: &str) -> Result<String, JsError> {
    ordering_report(text).map_err(js)
}

#[wasm_bindgen]
pub fn solve(text: &str) -> Result<Report, JsError> {
    solve_text(text).map_err(js)
}
