//! Graphviz export. Color 0 is drawn dashed, color 1 solid, and higher
//! colors solid with distinct pen colors.

use std::fmt::Write as _;

use crate::coloring::ColoredDigraph;
use crate::digraph::Digraph;

const PENS: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];

fn header(n: usize) -> String {
    let mut s = String::from("digraph {\n");
    for v in 0..n {
        let _ = writeln!(s, "  v{v};");
    }
    s
}

pub fn to_dot(d: &Digraph) -> String {
    let mut s = header(d.order());
    for a in d.arcs() {
        let _ = writeln!(s, "  v{} -> v{};", a.tail, a.head);
    }
    s.push_str("}\n");
    s
}

pub fn colored_to_dot(cd: &ColoredDigraph) -> String {
    let mut s = header(cd.order());
    for (a, &c) in cd.digraph().arcs().zip(cd.coloring().colors()) {
        let attrs = match c {
            0 => "style=dashed".to_string(),
            1 => "style=solid".to_string(),
            c => format!("style=solid, color={}", PENS[(c as usize - 2) % PENS.len()]),
        };
        let _ = writeln!(s, "  v{} -> v{} [{attrs}, label=\"{c}\"];", a.tail, a.head);
    }
    s.push_str("}\n");
    s
}
