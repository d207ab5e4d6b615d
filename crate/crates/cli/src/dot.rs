use std::fmt::Write;

use quasimedian::cubulation::Cubulation;
use quasimedian::{Graph, HyperplaneDecomposition};

fn vertex_line(out: &mut String, g: &Graph, prefix: &str, v: usize, extra: &str) {
    let label = g.label(v).map(str::to_string).unwrap_or_else(|| v.to_string());
    let _ = writeln!(out, "  {prefix}{v} [label=\"{}{extra}\"];", label.replace('"', "\\\""));
}

/// Host edges labelled with their hyperplane index.
pub fn hyperplanes(g: &Graph, h: &HyperplaneDecomposition) -> String {
    let mut out = String::from("graph hyperplanes {\n");
    for v in g.vertices() {
        vertex_line(&mut out, g, "v", v, "");
    }
    for (u, v) in g.edges() {
        let j = h.class_of(u, v).expect("edge has a class");
        let _ = writeln!(out, "  v{u} -- v{v} [label=\"{j}\"];");
    }
    out.push_str("}\n");
    out
}

/// Host and cube complex side by side, dashed edges for the vertex map.
pub fn cubulation(g: &Graph, c: &Cubulation) -> String {
    let mut out = String::from("graph cubulation {\n  subgraph cluster_host {\n  label=\"host\";\n");
    for v in g.vertices() {
        vertex_line(&mut out, g, "h", v, &format!(" -> {}", c.vertex_map[v]));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  h{u} -- h{v};");
    }
    out.push_str("  }\n  subgraph cluster_cx {\n  label=\"cube complex\";\n");
    for v in c.graph.vertices() {
        let _ = writeln!(out, "  c{v} [label=\"{v}\"];");
    }
    for (u, v) in c.graph.edges() {
        let _ = writeln!(out, "  c{u} -- c{v};");
    }
    out.push_str("  }\n");
    for (x, &img) in c.vertex_map.iter().enumerate() {
        let _ = writeln!(out, "  h{x} -- c{img} [style=dashed, constraint=false];");
    }
    out.push_str("}\n");
    out
}
