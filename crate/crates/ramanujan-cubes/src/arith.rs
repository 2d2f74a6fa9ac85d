//! The arithmetic complexes `X(N)` built from primes `p_1, …, p_g` and an odd
//! prime `N1`.
//!
//! An `I`-cube is a pair `(v, (i_j)_{j∈I})`: a vertex and one generator index
//! per direction. Its far corner is `v · ∏_{j∈I} ϖ_{j,i_j}` (product in
//! increasing `j`). Faces and inversions are found by rewriting this product
//! with the factor of direction `j` moved to the front or to the back, which
//! is an exact search over integer quaternions.
//!
//! The vertex set is the component of the identity in `H × (ℤ/2)^g`, where a
//! direction-`j` step multiplies the `H` coordinate by `ϖ̄_{j,i}` on the right
//! and flips bit `j`. The bits are the parities. When the parities are already
//! functions on `H` (for instance the classical case `g = 1` with a
//! non-residue prime) this is `H` itself.
//!
//! # Examples
//!
//! ```
//! use ramanujan_cubes::arith::{build_complex, ArithComplexConfig};
//!
//! let x = build_complex(&ArithComplexConfig::new(vec![5], 13)).unwrap();
//! assert_eq!(x.complex.vertex_count(), 2184);
//! assert_eq!(x.complex.r(), &[6]);
//! ```

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::complex::{CubeTable, CubicalComplex};
use crate::error::{Error, Result};
use crate::quat::{build_group, embed, enumerate_generators, is_prime, mat_mul, FiniteGroupTable, Quaternion};

/// Norm-`p_j` generators of every direction with their involution pairing.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorSystem {
    pub primes: Vec<u64>,
    pub gens: Vec<Vec<Quaternion>>,
    /// `gens[j][iota[j][i]] = gens[j][i]*`.
    pub iota: Vec<Vec<usize>>,
}

impl GeneratorSystem {
    pub fn new(primes: &[u64]) -> Result<Self> {
        let mut gens = Vec::new();
        let mut iota = Vec::new();
        for &p in primes {
            let list = enumerate_generators(p)?;
            let pair = list
                .iter()
                .map(|q| list.iter().position(|c| *c == q.conjugate()).expect("closed under the involution"))
                .collect();
            gens.push(list);
            iota.push(pair);
        }
        Ok(Self { primes: primes.to_vec(), gens, iota })
    }

    pub fn g(&self) -> usize {
        self.primes.len()
    }

    pub fn r(&self, j: usize) -> usize {
        self.gens[j].len()
    }

    /// Product of one generator per listed direction, in the listed order.
    pub fn product(&self, dirs: &[usize], idx: &[usize]) -> Quaternion {
        dirs.iter().zip(idx).fold(Quaternion::ONE, |acc, (&j, &i)| acc * self.gens[j][i])
    }
}

/// Result of moving generators into a prescribed direction order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteResult {
    /// Indices in the prescribed order.
    pub indices: Vec<usize>,
    pub unit: i8,
}

/// Find the unique `(indices, u)` with `target = u · ∏ ϖ_{order[k], indices[k]}`.
pub fn factor(target: Quaternion, order: &[usize], gens: &GeneratorSystem) -> Result<RewriteResult> {
    let radix: Vec<usize> = order.iter().map(|&j| gens.r(j)).collect();
    let total: usize = radix.iter().product();
    let mut found: Option<RewriteResult> = None;
    let mut idx = vec![0usize; order.len()];
    for t in 0..total {
        let mut rem = t;
        for k in (0..order.len()).rev() {
            idx[k] = rem % radix[k];
            rem /= radix[k];
        }
        let q = gens.product(order, &idx);
        let unit = if q == target {
            1
        } else if -q == target {
            -1
        } else {
            continue;
        };
        if found.is_some() {
            return Err(Error::RewriteNotUnique(format!("{target} in order {order:?}")));
        }
        found = Some(RewriteResult { indices: idx.clone(), unit });
    }
    found.ok_or_else(|| Error::RewriteNoMatch(format!("{target} in order {order:?}")))
}

/// Rewrite `ϖ_{order[0],i_0} ⋯ ϖ_{order[m],i_m}` into increasing direction order.
pub fn rewrite(order: &[usize], indices: &[usize], gens: &GeneratorSystem) -> Result<RewriteResult> {
    let target = gens.product(order, indices);
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    factor(target, &sorted, gens)
}

#[derive(Clone, Debug, Serialize)]
pub struct ArithComplexConfig {
    pub primes: Vec<u64>,
    pub n1: u64,
}

impl ArithComplexConfig {
    pub fn new(primes: Vec<u64>, n1: u64) -> Self {
        Self { primes, n1 }
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = self.primes.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.primes.len() {
            return Err(Error::Config(format!("primes must be distinct: {:?}", self.primes)));
        }
        if self.primes.is_empty() {
            return Err(Error::Config("at least one prime is required".into()));
        }
        for &p in &self.primes {
            if p == 2 || !is_prime(p) {
                return Err(Error::NotOddPrime(p));
            }
        }
        if self.n1 == 2 || !is_prime(self.n1) {
            return Err(Error::NotOddPrime(self.n1));
        }
        if self.primes.contains(&self.n1) {
            return Err(Error::InvalidModulus { n1: self.n1, primes: self.primes.clone() });
        }
        Ok(())
    }
}

/// Mixed-radix layout of generator tuples for one direction set.
#[derive(Clone, Debug)]
pub struct TupleLayout {
    pub dirs: Vec<usize>,
    pub radix: Vec<usize>,
    pub size: usize,
}

impl TupleLayout {
    fn new(mask: usize, gens: &GeneratorSystem) -> Self {
        let dirs: Vec<usize> = (0..gens.g()).filter(|j| mask >> j & 1 == 1).collect();
        let radix: Vec<usize> = dirs.iter().map(|&j| gens.r(j)).collect();
        let size = radix.iter().product();
        Self { dirs, radix, size }
    }

    pub fn decode(&self, mut t: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dirs.len()];
        for k in (0..self.dirs.len()).rev() {
            idx[k] = t % self.radix[k];
            t /= self.radix[k];
        }
        idx
    }

    pub fn encode(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.radix).fold(0, |acc, (&i, &r)| acc * r + i)
    }
}

/// The complex `X(N)` together with its arithmetic data.
#[derive(Clone, Debug)]
pub struct ArithComplex {
    pub config: ArithComplexConfig,
    pub gens: GeneratorSystem,
    pub group: FiniteGroupTable,
    /// `H` image of `ϖ_{j,i}`.
    pub image: Vec<Vec<u32>>,
    /// `H′` image of `ϖ_{j,i}`.
    pub image_prime: Vec<Vec<u32>>,
    /// `(h, parity bits)` of each vertex, sorted.
    pub vertices: Vec<(u32, u32)>,
    /// Vertex reached from `v` along `ϖ_{j,i}`: `step[v][j][i]`.
    pub step: Vec<Vec<Vec<u32>>>,
    pub layouts: Vec<TupleLayout>,
    pub complex: CubicalComplex,
}

impl ArithComplex {
    pub fn g(&self) -> usize {
        self.gens.g()
    }

    /// Vertex and generator tuple of an oriented cube.
    pub fn decode(&self, dirs: usize, s: u32) -> (u32, Vec<usize>) {
        let lay = &self.layouts[dirs];
        let s = s as usize;
        ((s / lay.size) as u32, lay.decode(s % lay.size))
    }

    pub fn vertex_label(&self, v: u32) -> String {
        let (h, par) = self.vertices[v as usize];
        let m = self.group.h.elements[h as usize];
        format!("[{},{};{},{}]p{:0w$b}", m[0], m[1], m[2], m[3], par, w = self.g())
    }
}

fn cover_vertices(step_h: &[Vec<Vec<u32>>], identity: u32) -> Vec<(u32, u32)> {
    let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
    let mut queue = VecDeque::from([(identity, 0u32)]);
    seen.insert((identity, 0), ());
    while let Some((h, par)) = queue.pop_front() {
        for (j, nexts) in step_h[h as usize].iter().enumerate() {
            for &next in nexts {
                let key = (next, par ^ 1 << j);
                if seen.insert(key, ()).is_none() {
                    queue.push_back(key);
                }
            }
        }
    }
    let mut out: Vec<(u32, u32)> = seen.into_keys().collect();
    out.sort_unstable();
    out
}

/// Build `X(N)` and verify axioms (1)–(4) and the parities.
pub fn build_complex(cfg: &ArithComplexConfig) -> Result<ArithComplex> {
    cfg.validate()?;
    let gens = GeneratorSystem::new(&cfg.primes)?;
    let group = build_group(&cfg.primes, cfg.n1)?;
    let g = gens.g();
    let n = cfg.n1;
    let emb: Vec<Vec<_>> = gens.gens.iter().map(|l| l.iter().map(|q| embed(*q, &group.residue)).collect()).collect();
    let image: Vec<Vec<u32>> = emb.iter().map(|l| l.iter().map(|m| group.h.index_of(m).expect("det is a prime")).collect()).collect();
    let image_prime = emb.iter().map(|l| l.iter().map(|m| group.h_prime.index_of(m).expect("det is a prime")).collect()).collect();

    let step_h: Vec<Vec<Vec<u32>>> = group
        .h
        .elements
        .iter()
        .map(|m| {
            emb.iter()
                .map(|l| l.iter().map(|e| group.h.index_of(&mat_mul(m, e, n)).expect("closed")).collect())
                .collect()
        })
        .collect();
    let vertices = cover_vertices(&step_h, group.h.identity());
    let position: HashMap<(u32, u32), u32> = vertices.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
    let step: Vec<Vec<Vec<u32>>> = vertices
        .iter()
        .map(|&(h, par)| {
            (0..g)
                .map(|j| step_h[h as usize][j].iter().map(|&x| position[&(x, par ^ 1 << j)]).collect())
                .collect()
        })
        .collect();

    let layouts: Vec<TupleLayout> = (0..1usize << g).map(|m| TupleLayout::new(m, &gens)).collect();
    let nv = vertices.len();
    let mut tables = Vec::with_capacity(1 << g);
    for mask in 0..1usize << g {
        let lay = &layouts[mask];
        let mut t = CubeTable::empty(g, nv * lay.size);
        for &j in &lay.dirs {
            let lower = mask & !(1 << j);
            let low = &layouts[lower];
            let rest = &low.dirs;
            let front: Vec<usize> = std::iter::once(j).chain(rest.iter().copied()).collect();
            let back: Vec<usize> = rest.iter().copied().chain(std::iter::once(j)).collect();
            let mut top_tab = Vec::with_capacity(lay.size);
            let mut bot_tab = Vec::with_capacity(lay.size);
            let mut inv_tab = Vec::with_capacity(lay.size);
            for tup in 0..lay.size {
                let p = gens.product(&lay.dirs, &lay.decode(tup));
                let top = factor(p, &front, &gens)?;
                let bot = factor(p, &back, &gens)?;
                let a = top.indices[0];
                let mut inv_idx = vec![gens.iota[j][a]];
                inv_idx.extend_from_slice(&bot.indices[..rest.len()]);
                let k = rewrite(&front, &inv_idx, &gens)?;
                top_tab.push((a, low.encode(&top.indices[1..])));
                bot_tab.push(low.encode(&bot.indices[..rest.len()]));
                inv_tab.push((a, lay.encode(&k.indices)));
            }
            let (ls, ms) = (low.size as u32, lay.size as u32);
            let mut top = Vec::with_capacity(t.count);
            let mut bot = Vec::with_capacity(t.count);
            let mut inv = Vec::with_capacity(t.count);
            for (v, sv) in step.iter().enumerate() {
                for tup in 0..lay.size {
                    let (a, rest_t) = top_tab[tup];
                    top.push(sv[j][a] * ls + rest_t as u32);
                    bot.push(v as u32 * ls + bot_tab[tup] as u32);
                    let (a, k) = inv_tab[tup];
                    inv.push(sv[j][a] * ms + k as u32);
                }
            }
            t.top[j] = top;
            t.bot[j] = bot;
            t.inv[j] = inv;
        }
        tables.push(t);
    }
    let r = (0..g).map(|j| gens.r(j)).collect();
    let parities = vertices.iter().map(|&(_, p)| p).collect();
    let complex = CubicalComplex::from_tables(g, r, tables, Some(parities));

    let report = complex.verify_axioms();
    if let Some(fail) = report.first_failure() {
        return Err(Error::NotFree { n1: n, axiom: fail.name.to_string() });
    }
    if !complex.verify_parities()?.holds {
        return Err(Error::NotFree { n1: n, axiom: "parities".into() });
    }
    Ok(ArithComplex { config: cfg.clone(), gens, group, image, image_prime, vertices, step, layouts, complex })
}

/// Smallest odd prime `N1 ≥ 3`, coprime to the primes, for which the build verifies.
pub fn search_n1(primes: &[u64], limit: u64) -> Result<ArithComplex> {
    for n1 in (3..=limit).filter(|&n| is_prime(n) && !primes.contains(&n)) {
        match build_complex(&ArithComplexConfig::new(primes.to_vec(), n1)) {
            Ok(x) => return Ok(x),
            Err(Error::NotFree { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoValidModulus(limit))
}

/// Connectivity of one link graph `Gr_{j,I}`.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectivityEntry {
    pub j: usize,
    pub dirs: usize,
    pub vertices: usize,
    pub components: usize,
    /// Classes of the parities outside `I ∪ {j}`, each a union of components.
    pub parity_classes: usize,
    /// One component per parity class.
    pub connected: bool,
}

/// Component counts of every `Gr_{j,I}` with `j ∉ I`.
pub fn irreducibility_report(x: &CubicalComplex) -> Result<Vec<ConnectivityEntry>> {
    let g = x.g();
    let mut out = Vec::new();
    for j in 0..g {
        for dirs in (0..1usize << g).filter(|d| d >> j & 1 == 0) {
            let gr = x.link_graph(j, dirs)?;
            let comps = gr.components();
            let free = g - 1 - dirs.count_ones() as usize;
            let classes = 1usize << free;
            out.push(ConnectivityEntry {
                j,
                dirs,
                vertices: gr.vertex_count(),
                components: comps.count,
                parity_classes: classes,
                connected: comps.count == classes,
            });
        }
    }
    Ok(out)
}
