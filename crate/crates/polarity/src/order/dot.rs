use std::fmt::Write;

use super::preorder::Poset;

/// Graphviz source for the Hasse diagram of `p`, drawn bottom to top.
pub fn to_dot(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for (i, label) in p.labels().iter().enumerate() {
        let escaped = label.replace('\\', "\\\\").replace('"', "\\\"");
        writeln!(out, "  n{i} [label=\"{escaped}\"];").unwrap();
    }
    for (i, j) in p.covers() {
        writeln!(out, "  n{i} -> n{j};").unwrap();
    }
    out.push_str("}\n");
    out
}
