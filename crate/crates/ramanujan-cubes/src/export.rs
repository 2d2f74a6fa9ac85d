//! DOT and CSV output.
//!
//! # Examples
//!
//! ```
//! use ramanujan_cubes::complex::CubicalComplex;
//! use ramanujan_cubes::export::skeleton_dot;
//!
//! let x = CubicalComplex::from_graph(3, &[(0, 1), (1, 2), (2, 0)]);
//! let dot = skeleton_dot(&x, |v| format!("v{v}"));
//! assert_eq!(dot.matches(" -- ").count(), 3);
//! ```

use std::fmt::Write;

use crate::complex::{CubicalComplex, LinkGraph};
use crate::harmonic::EigenClass;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The 1-skeleton as an undirected DOT graph, one line per unoriented edge
/// with attribute `dir=j`.
pub fn skeleton_dot(x: &CubicalComplex, label: impl Fn(u32) -> String) -> String {
    let mut out = String::from("graph skeleton {\n");
    for v in 0..x.vertex_count() as u32 {
        writeln!(out, "  {v} [label={}];", quote(&label(v))).expect("write to string");
    }
    for j in 0..x.g() {
        let dirs = 1 << j;
        for &e in &x.orientation(dirs).canon {
            let a = x.origin(dirs, e);
            let b = x.origin(dirs, x.inv(dirs, j, e));
            writeln!(out, "  {a} -- {b} [dir={j}];").expect("write to string");
        }
    }
    out.push_str("}\n");
    out
}

/// A link graph `Gr_{j,I}` as an undirected DOT graph.
pub fn link_graph_dot(gr: &LinkGraph) -> String {
    let mut out = format!("graph link_{}_{} {{\n", gr.j, gr.dirs);
    for (v, &c) in gr.vertices.iter().enumerate() {
        let p = u8::from(gr.vertex_parity[v]);
        writeln!(out, "  {v} [label=\"{c}\", parity={p}];").expect("write to string");
    }
    for e in 0..gr.cubes.len() {
        if (gr.opposite[e] as usize) < e {
            continue;
        }
        writeln!(out, "  {} -- {} [dir={}];", gr.origin[e], gr.terminus[e], gr.j).expect("write to string");
    }
    out.push_str("}\n");
    out
}

/// Node and edge counts of a DOT graph written by this module.
pub fn dot_counts(dot: &str) -> (usize, usize) {
    let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    (nodes, edges)
}

/// One eigenvalue row of the spectrum CSV.
#[derive(Clone, Debug)]
pub struct SpectrumRow {
    pub j: usize,
    pub dirs: usize,
    pub index: usize,
    pub eigenvalue: f64,
    pub class: EigenClass,
}

/// CSV with header `j,I,index,eigenvalue,class`.
pub fn spectrum_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::from("j,I,index,eigenvalue,class\n");
    for r in rows {
        // print -0 as 0
        let v = if r.eigenvalue == 0.0 { 0.0 } else { r.eigenvalue };
        writeln!(out, "{},{},{},{:.15e},{}", r.j, r.dirs, r.index, v, r.class.as_str()).expect("write to string");
    }
    out
}
