//! Graphviz DOT export for groupoid presentations and local systems.
//! Output order follows the presentation, so equal inputs export to equal
//! bytes.

use std::fmt::Write as _;

use crate::arith::Matrix;
use crate::localsys::{GroupoidPresentation, LatticeLocalSystem};

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn matrix_label(m: &Matrix) -> String {
    format!("{m:?}")
}

fn render(
    p: &GroupoidPresentation,
    node_label: impl Fn(&str) -> String,
    edge_label: impl Fn(&str) -> String,
) -> String {
    let mut out = String::new();
    out.push_str("digraph groupoid {\n  rankdir=LR;\n");
    for b in &p.basepoints {
        let _ = writeln!(out, "  {} [label={}];", quoted(b), quoted(&node_label(b)));
    }
    for g in &p.generators {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quoted(&g.src),
            quoted(&g.dst),
            quoted(&edge_label(&g.label))
        );
    }
    for r in &p.relations {
        let word: Vec<String> = r
            .word
            .iter()
            .map(|l| {
                if l.s >= 0 {
                    l.g.clone()
                } else {
                    format!("{}^-1", l.g)
                }
            })
            .collect();
        let _ = writeln!(
            out,
            "  // relation {}: {}",
            r.label,
            word.join(" ")
        );
    }
    out.push_str("}\n");
    out
}

/// Bare graph: basepoints as nodes, generators as labeled arrows.
pub fn dot_of_presentation(p: &GroupoidPresentation) -> String {
    render(p, |b| b.to_string(), |g| g.to_string())
}

/// Graph with fiber dimensions on nodes and generator matrices on edges.
pub fn dot_of_system(l: &LatticeLocalSystem) -> String {
    render(
        &l.presentation,
        |b| match l.dims.get(b) {
            Some(d) => format!("{b} (dim {d})"),
            None => b.to_string(),
        },
        |g| match l.mats.get(g) {
            Some(m) => format!("{g}: {}", matrix_label(m)),
            None => g.to_string(),
        },
    )
}
