//! DOT rendering of a geometry as a bipartite incidence graph.
//!
//! Points become circle nodes `p<i>`, lines become box nodes `l<j>`, and an
//! edge joins each point to every line through it. Perpendicular line pairs
//! get their own dashed edges so the perpendicularity structure is visible
//! next to the incidences. Output order is fixed, so the rendering is
//! deterministic.

use crate::document::GeometryDocument;

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn export_dot(doc: &GeometryDocument) -> String {
    let mut out = String::new();
    out.push_str("graph geometry {\n");
    if doc.num_points > 0 {
        out.push_str("  node [shape=circle];\n");
        for p in 0..doc.num_points {
            match doc.point_labels.get(&p) {
                Some(label) => out.push_str(&format!("  p{p} [label=\"{}\"];\n", escape(label))),
                None => out.push_str(&format!("  p{p};\n")),
            }
        }
    }
    if !doc.lines.is_empty() {
        out.push_str("  node [shape=box];\n");
        for l in 0..doc.lines.len() {
            match doc.line_labels.get(&l) {
                Some(label) => out.push_str(&format!("  l{l} [label=\"{}\"];\n", escape(label))),
                None => out.push_str(&format!("  l{l};\n")),
            }
        }
    }
    for (l, line) in doc.lines.iter().enumerate() {
        for p in line {
            out.push_str(&format!("  p{p} -- l{l};\n"));
        }
    }
    if let Some(pairs) = &doc.perp {
        let mut canonical: Vec<(usize, usize)> =
            pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        canonical.sort_unstable();
        canonical.dedup();
        for (a, b) in canonical {
            out.push_str(&format!("  l{a} -- l{b} [style=dashed];\n"));
        }
    }
    out.push_str("}\n");
    out
}
