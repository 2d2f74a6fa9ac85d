//! Girth of arithmetic complexes through their universal cover.
//!
//! The cover of `X(N)` is a product of trees. Its vertices are tuples of
//! reduced generator words, one per direction, which by unique factorization
//! correspond to primitive quaternions up to sign: multiplying by a generator
//! and then by its involution partner gives a multiple of `p`, which is
//! divided out. A breadth-first search from `1` records the image of each
//! cover vertex in `X(N)`. Two distinct cover vertices `a`, `b` with the same
//! image give a non-contractible closed path of length `d(a) + d(b)`, and a
//! shortest one splits at its midpoint into such a pair. The complex is
//! vertex-transitive, so one base vertex suffices.
//!
//! # Examples
//!
//! ```
//! use ramanujan_cubes::arith::{build_complex, ArithComplexConfig};
//! use ramanujan_cubes::girth::girth;
//!
//! let x = build_complex(&ArithComplexConfig::new(vec![5], 13)).unwrap();
//! let res = girth(&x, 12);
//! assert!(res.girth.unwrap() >= res.bound);
//! ```

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::ArithComplex;
use crate::quat::{embed, Quaternion};

/// Outcome of the cover search.
#[derive(Clone, Debug, Serialize)]
pub struct GirthResult {
    /// Exact girth, when a collision was found within the depth limit.
    pub girth: Option<usize>,
    /// Proven lower bound on the girth (equal to `girth` when exact).
    pub lower_bound: usize,
    /// `ceil(2 log_q(N1²/4))` with `q` the largest prime.
    pub bound: usize,
    /// Depth at which the search stopped.
    pub depth: usize,
    pub cover_vertices: usize,
    /// Whether the girth (or its lower bound) reaches `bound`.
    pub meets_bound: bool,
}

/// `ceil(2 log_q(n²/4))`.
pub fn girth_bound(q: u64, n: u64) -> usize {
    let v = 2.0 * ((n * n) as f64 / 4.0).ln() / (q as f64).ln();
    // guard against values a rounding error above an integer
    let r = v.round();
    if (v - r).abs() < 1e-9 {
        r.max(0.0) as usize
    } else {
        v.ceil().max(0.0) as usize
    }
}

fn normalize(q: Quaternion) -> Quaternion {
    let c = q.coeffs();
    match c.iter().find(|&&a| a != 0) {
        Some(&a) if a < 0 => -q,
        _ => q,
    }
}

/// Shortest non-contractible closed path in the 1-skeleton of `x`.
pub fn girth(x: &ArithComplex, max_depth: usize) -> GirthResult {
    let g = x.g();
    let residue = &x.group.residue;
    let image = |q: &Quaternion, par: u32| -> u32 {
        let h = x.group.h.index_of(&embed(*q, residue)).expect("det in the admissible group");
        x.vertices.binary_search(&(h, par)).expect("cover maps into the component") as u32
    };
    let mut seen: HashMap<Quaternion, ()> = HashMap::new();
    let mut first: HashMap<u32, usize> = HashMap::new();
    seen.insert(Quaternion::ONE, ());
    first.insert(image(&Quaternion::ONE, 0), 0);
    let mut frontier = vec![(Quaternion::ONE, 0u32)];
    let mut best: Option<usize> = None;
    let mut depth = 0;
    while depth < max_depth && !frontier.is_empty() {
        if best.is_some_and(|b| b <= 2 * depth + 1) {
            break;
        }
        depth += 1;
        let mut next = Vec::new();
        for &(q, par) in &frontier {
            for j in 0..g {
                let p = x.gens.primes[j] as i64;
                for w in &x.gens.gens[j] {
                    let mut m = q * *w;
                    if let Some(d) = m.div_exact(p) {
                        m = d;
                    }
                    let m = normalize(m);
                    if seen.insert(m, ()).is_some() {
                        continue;
                    }
                    let np = par ^ 1 << j;
                    let v = image(&m, np);
                    match first.get(&v) {
                        Some(&d0) => {
                            let len = d0 + depth;
                            best = Some(best.map_or(len, |b| b.min(len)));
                        }
                        None => {
                            first.insert(v, depth);
                        }
                    }
                    next.push((m, np));
                }
            }
        }
        frontier = next;
    }
    let bound = girth_bound(*x.gens.primes.iter().max().expect("at least one prime"), x.config.n1);
    let exact = best.filter(|&b| b <= 2 * depth + 1);
    let lower_bound = exact.unwrap_or(2 * depth + 1);
    GirthResult {
        girth: exact,
        lower_bound,
        bound,
        depth,
        cover_vertices: seen.len(),
        meets_bound: lower_bound >= bound,
    }
}
