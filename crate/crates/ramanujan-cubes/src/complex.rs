//! Finite regular cubical complexes.
//!
//! A complex of dimension `g` stores, for every direction set `I ⊆ {0..g}`
//! (a bitmask), the oriented `I`-cubes as indices `0..count` together with
//! the face maps `bot_j, top_j : Σ_I → Σ_{I−{j}}` and the inversions
//! `inv_j : Σ_I → Σ_I` for `j ∈ I`. The vertices are `Σ_∅`.
//!
//! Parities, when present, are stored as one bitmask per vertex: bit `j` is
//! `p_j(v)`. With parities every cube gets a canonical orientation, the one
//! whose bottom-most vertex has parity `0` in every direction of `I`.
//!
//! # Examples
//!
//! ```
//! use ramanujan_cubes::complex::CubicalComplex;
//!
//! let square = CubicalComplex::unit_cube(2);
//! assert!(square.verify_axioms().passed());
//! assert!(square.verify_parities().unwrap().holds);
//! assert_eq!(square.unoriented_count(0b11), 1);
//! assert_eq!(square.unoriented_count(0b01), 2);
//! ```

use serde::Serialize;

use crate::error::{Error, Result};

/// Oriented cubes of one direction set `I` and their face maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeTable {
    pub count: usize,
    /// `bot[j]` maps `Σ_I → Σ_{I−{j}}`; empty for `j ∉ I`.
    pub bot: Vec<Vec<u32>>,
    pub top: Vec<Vec<u32>>,
    pub inv: Vec<Vec<u32>>,
}

impl CubeTable {
    pub fn empty(g: usize, count: usize) -> Self {
        Self { count, bot: vec![Vec::new(); g], top: vec![Vec::new(); g], inv: vec![Vec::new(); g] }
    }
}

/// A finite `(r_1, …, r_g)`-regular cubical complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalComplex {
    g: usize,
    r: Vec<usize>,
    tables: Vec<CubeTable>,
    parities: Option<Vec<u32>>,
}

/// An oriented cube: direction bitmask and index in its table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CubeRef {
    pub dirs: usize,
    pub index: u32,
}

/// Outcome of one axiom over the whole complex.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<CubeRef>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityReport {
    pub holds: bool,
    /// Oriented edge `(direction, index)` violating the parity relation.
    pub witness: Option<(usize, u32)>,
}

/// Canonical representatives of the unoriented `I`-cubes.
#[derive(Clone, Debug)]
pub struct Orientation {
    /// Oriented index of each canonical cube, ascending.
    pub canon: Vec<u32>,
    /// Position in `canon` of the orbit of each oriented cube.
    pub orbit: Vec<u32>,
}

fn bits(mask: usize) -> impl Iterator<Item = usize> {
    (0..usize::BITS as usize).filter(move |j| mask >> j & 1 == 1)
}

impl CubicalComplex {
    /// Assemble a complex from explicit tables, indexed by direction bitmask.
    pub fn from_tables(g: usize, r: Vec<usize>, tables: Vec<CubeTable>, parities: Option<Vec<u32>>) -> Self {
        assert_eq!(tables.len(), 1 << g);
        assert_eq!(r.len(), g);
        Self { g, r, tables, parities }
    }

    pub fn into_parts(self) -> (usize, Vec<usize>, Vec<CubeTable>, Option<Vec<u32>>) {
        (self.g, self.r, self.tables, self.parities)
    }

    /// The unit cube in `ℝ^g`, a `(1, …, 1)`-regular complex.
    ///
    /// Every table has `2^g` oriented cubes, indexed by the coordinates of
    /// their origin vertex.
    pub fn unit_cube(g: usize) -> Self {
        let n = 1usize << g;
        let mut tables = Vec::with_capacity(n);
        for mask in 0..n {
            let mut t = CubeTable::empty(g, n);
            for j in bits(mask) {
                t.bot[j] = (0..n as u32).collect();
                t.top[j] = (0..n as u32).map(|b| b ^ (1 << j)).collect();
                t.inv[j] = t.top[j].clone();
            }
            tables.push(t);
        }
        Self { g, r: vec![1; g], tables, parities: Some((0..n as u32).collect()) }
    }

    /// A single vertex, the unit of the product.
    pub fn point() -> Self {
        Self::unit_cube(0)
    }

    /// A one-dimensional complex from an undirected multigraph.
    ///
    /// Edge `e = (a, b)` yields the oriented edges `2e : a → b` and
    /// `2e + 1 : b → a`. The regularity is taken from vertex 0.
    pub fn from_graph(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut t = CubeTable::empty(1, 2 * edges.len());
        let mut bot = Vec::with_capacity(2 * edges.len());
        let mut top = Vec::with_capacity(2 * edges.len());
        let mut inv = Vec::with_capacity(2 * edges.len());
        for (e, &(a, b)) in edges.iter().enumerate() {
            bot.extend([a, b]);
            top.extend([b, a]);
            inv.extend([2 * e as u32 + 1, 2 * e as u32]);
        }
        t.bot[0] = bot;
        t.top[0] = top;
        t.inv[0] = inv;
        let deg0 = t.top[0].iter().filter(|&&v| v == 0).count();
        Self { g: 1, r: vec![deg0], tables: vec![CubeTable::empty(1, n), t], parities: None }
    }

    pub fn with_parities(mut self, parities: Vec<u32>) -> Self {
        assert_eq!(parities.len(), self.vertex_count());
        self.parities = Some(parities);
        self
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn r(&self) -> &[usize] {
        &self.r
    }

    pub fn table(&self, dirs: usize) -> &CubeTable {
        &self.tables[dirs]
    }

    pub fn parities(&self) -> Option<&[u32]> {
        self.parities.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.tables[0].count
    }

    pub fn oriented_count(&self, dirs: usize) -> usize {
        self.tables[dirs].count
    }

    pub fn unoriented_count(&self, dirs: usize) -> usize {
        self.tables[dirs].count >> dirs.count_ones()
    }

    pub fn bot(&self, dirs: usize, j: usize, s: u32) -> u32 {
        self.tables[dirs].bot[j][s as usize]
    }

    pub fn top(&self, dirs: usize, j: usize, s: u32) -> u32 {
        self.tables[dirs].top[j][s as usize]
    }

    pub fn inv(&self, dirs: usize, j: usize, s: u32) -> u32 {
        self.tables[dirs].inv[j][s as usize]
    }

    /// Bottom-most vertex of an oriented cube.
    pub fn origin(&self, dirs: usize, s: u32) -> u32 {
        let mut d = dirs;
        let mut s = s;
        for j in bits(dirs) {
            s = self.bot(d, j, s);
            d &= !(1 << j);
        }
        s
    }

    /// The direction-`j` edge leaving the bottom-most vertex of `s`.
    pub fn edge_at(&self, dirs: usize, j: usize, s: u32) -> u32 {
        let mut d = dirs;
        let mut s = s;
        for k in bits(dirs).filter(|&k| k != j) {
            s = self.bot(d, k, s);
            d &= !(1 << k);
        }
        s
    }

    /// Canonical representative of every inversion orbit in `Σ_I`.
    ///
    /// With parities the representative is the orientation whose origin has
    /// parity `0` along `I`; otherwise it is the least index in the orbit.
    pub fn orientation(&self, dirs: usize) -> Orientation {
        let n = self.tables[dirs].count;
        let mut orbit = vec![u32::MAX; n];
        let mut canon = Vec::new();
        for s in 0..n as u32 {
            if orbit[s as usize] != u32::MAX {
                continue;
            }
            let members = self.inversion_orbit(dirs, s);
            let rep = match &self.parities {
                Some(p) => *members
                    .iter()
                    .find(|&&m| p[self.origin(dirs, m) as usize] as usize & dirs == 0)
                    .unwrap_or(&s),
                None => s,
            };
            let pos = canon.len() as u32;
            canon.push(rep);
            for m in members {
                orbit[m as usize] = pos;
            }
        }
        let mut order: Vec<usize> = (0..canon.len()).collect();
        order.sort_by_key(|&i| canon[i]);
        let mut rank = vec![0u32; canon.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new as u32;
        }
        let canon = order.iter().map(|&i| canon[i]).collect();
        let orbit = orbit.into_iter().map(|o| rank[o as usize]).collect();
        Orientation { canon, orbit }
    }

    /// All images of `s` under the group generated by `inv_j`, `j ∈ I`.
    pub fn inversion_orbit(&self, dirs: usize, s: u32) -> Vec<u32> {
        let mut out = vec![s];
        for j in bits(dirs) {
            let more: Vec<u32> = out.iter().map(|&m| self.inv(dirs, j, m)).collect();
            out.extend(more);
        }
        out
    }

    /// Check axioms (1)–(4) and the face commutation relations at every cube.
    pub fn verify_axioms(&self) -> AxiomReport {
        let mut a1 = None;
        let mut a2 = None;
        let mut a3 = None;
        let mut a4 = None;
        let mut faces = None;
        for (dirs, t) in self.tables.iter().enumerate() {
            let at = |s: usize| Some(CubeRef { dirs, index: s as u32 });
            let js: Vec<usize> = bits(dirs).collect();
            for s in 0..t.count {
                let su = s as u32;
                if a1.is_none() {
                    let mut ok = js.iter().all(|&j| t.inv[j][t.inv[j][s] as usize] == su);
                    ok &= js.iter().all(|&j| {
                        js.iter().all(|&k| t.inv[j][t.inv[k][s] as usize] == t.inv[k][t.inv[j][s] as usize])
                    });
                    if ok {
                        let mut orbit = self.inversion_orbit(dirs, su);
                        orbit.sort_unstable();
                        orbit.dedup();
                        ok = orbit.len() == 1 << js.len();
                    }
                    if !ok {
                        a1 = at(s);
                    }
                }
                for &j in &js {
                    let lower = dirs & !(1 << j);
                    let tl = &self.tables[lower];
                    for &k in js.iter().filter(|&&k| k != j) {
                        let ik = t.inv[k][s] as usize;
                        let ok = t.top[j][ik] == tl.inv[k][t.top[j][s] as usize]
                            && t.bot[j][ik] == tl.inv[k][t.bot[j][s] as usize];
                        if !ok && a2.is_none() {
                            a2 = at(s);
                        }
                        let (dj, dk) = (lower, dirs & !(1 << k));
                        let ok = self.top(dj, k, self.top(dirs, j, su)) == self.top(dk, j, self.top(dirs, k, su))
                            && self.bot(dj, k, self.bot(dirs, j, su)) == self.bot(dk, j, self.bot(dirs, k, su))
                            && self.bot(dj, k, self.top(dirs, j, su)) == self.top(dk, j, self.bot(dirs, k, su));
                        if !ok && faces.is_none() {
                            faces = at(s);
                        }
                    }
                    if t.top[j][t.inv[j][s] as usize] != t.bot[j][s] && a3.is_none() {
                        a3 = at(s);
                    }
                }
            }
            for j in (0..self.g).filter(|j| dirs >> j & 1 == 0) {
                let upper = &self.tables[dirs | 1 << j];
                let mut hits = vec![0usize; t.count];
                for &x in &upper.top[j] {
                    hits[x as usize] += 1;
                }
                if let Some(s) = hits.iter().position(|&h| h != self.r[j]) {
                    if a4.is_none() {
                        a4 = at(s);
                    }
                }
            }
        }
        let check = |name, w: Option<CubeRef>| AxiomCheck { name, passed: w.is_none(), witness: w };
        AxiomReport {
            checks: vec![
                check("inversion_group", a1),
                check("inversion_commutes_with_faces", a2),
                check("top_of_inverse_is_bottom", a3),
                check("regularity", a4),
                check("face_commutation", faces),
            ],
        }
    }

    /// Check `p_j(top e) = p_j(bot e)` exactly when `e` has direction other than `j`.
    pub fn verify_parities(&self) -> Result<ParityReport> {
        let p = self.parities.as_ref().ok_or(Error::MissingParities("verify_parities"))?;
        for i in 0..self.g {
            let t = &self.tables[1 << i];
            for e in 0..t.count {
                let diff = p[t.top[i][e] as usize] ^ p[t.bot[i][e] as usize];
                let want = 1u32 << i;
                if diff & ((1u32 << self.g) - 1) != want {
                    return Ok(ParityReport { holds: false, witness: Some((i, e as u32)) });
                }
            }
        }
        Ok(ParityReport { holds: true, witness: None })
    }

    /// The product complex; directions of `other` follow those of `self`.
    ///
    /// The cube `(σ1, σ2)` has index `σ1 · count2 + σ2`, so the product is
    /// strictly associative on indices.
    pub fn product(&self, other: &CubicalComplex) -> CubicalComplex {
        let g = self.g + other.g;
        let mut tables = Vec::with_capacity(1 << g);
        for mask in 0..1usize << g {
            let m1 = mask & ((1 << self.g) - 1);
            let m2 = mask >> self.g;
            let (t1, t2) = (&self.tables[m1], &other.tables[m2]);
            let mut t = CubeTable::empty(g, t1.count * t2.count);
            for j in bits(m1) {
                let lo2 = other.tables[m2].count;
                let pair = |f: &Vec<u32>| -> Vec<u32> {
                    (0..t1.count)
                        .flat_map(|a| (0..t2.count).map(move |b| (a, b)))
                        .map(|(a, b)| f[a] * lo2 as u32 + b as u32)
                        .collect()
                };
                t.bot[j] = pair(&t1.bot[j]);
                t.top[j] = pair(&t1.top[j]);
                t.inv[j] = pair(&t1.inv[j]);
            }
            for j2 in bits(m2) {
                let lower2 = other.tables[m2 & !(1 << j2)].count as u32;
                let pair = |f: &Vec<u32>, width: u32| -> Vec<u32> {
                    (0..t1.count)
                        .flat_map(|a| (0..t2.count).map(move |b| (a, b)))
                        .map(|(a, b)| a as u32 * width + f[b])
                        .collect()
                };
                let j = j2 + self.g;
                t.bot[j] = pair(&t2.bot[j2], lower2);
                t.top[j] = pair(&t2.top[j2], lower2);
                t.inv[j] = pair(&t2.inv[j2], t2.count as u32);
            }
            tables.push(t);
        }
        let parities = match (&self.parities, &other.parities) {
            (Some(p1), Some(p2)) => {
                Some(p1.iter().flat_map(|&a| p2.iter().map(move |&b| a | b << self.g)).collect())
            }
            _ => None,
        };
        let mut r = self.r.clone();
        r.extend_from_slice(&other.r);
        CubicalComplex { g, r, tables, parities }
    }

    /// Disjoint union of two complexes of the same shape.
    pub fn disjoint_union(&self, other: &CubicalComplex) -> CubicalComplex {
        assert_eq!(self.g, other.g);
        assert_eq!(self.r, other.r);
        let mut tables = Vec::with_capacity(self.tables.len());
        for (dirs, (t1, t2)) in self.tables.iter().zip(&other.tables).enumerate() {
            let mut t = CubeTable::empty(self.g, t1.count + t2.count);
            for j in bits(dirs) {
                let lower = self.tables[dirs & !(1 << j)].count as u32;
                let own = t1.count as u32;
                let cat = |a: &Vec<u32>, b: &Vec<u32>, shift: u32| -> Vec<u32> {
                    a.iter().copied().chain(b.iter().map(|&x| x + shift)).collect()
                };
                t.bot[j] = cat(&t1.bot[j], &t2.bot[j], lower);
                t.top[j] = cat(&t1.top[j], &t2.top[j], lower);
                t.inv[j] = cat(&t1.inv[j], &t2.inv[j], own);
            }
            tables.push(t);
        }
        let parities = match (&self.parities, &other.parities) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        CubicalComplex { g: self.g, r: self.r.clone(), tables, parities }
    }

    /// The link graph `Gr_{j,I}`; requires parities.
    pub fn link_graph(&self, j: usize, dirs: usize) -> Result<LinkGraph> {
        if j >= self.g || dirs >> j & 1 == 1 {
            return Err(Error::BadDirection { j, i: dirs });
        }
        let p = self.parities.as_ref().ok_or(Error::MissingParities("link_graph"))?;
        let lower = self.orientation(dirs);
        let upper = dirs | 1 << j;
        let t = &self.tables[upper];
        let mut edges = Vec::new();
        let mut slot = vec![u32::MAX; t.count];
        for s in 0..t.count as u32 {
            if p[self.origin(upper, s) as usize] as usize & dirs == 0 {
                slot[s as usize] = edges.len() as u32;
                edges.push(s);
            }
        }
        let origin = edges.iter().map(|&s| lower.orbit[t.bot[j][s as usize] as usize]).collect();
        let terminus = edges.iter().map(|&s| lower.orbit[t.top[j][s as usize] as usize]).collect();
        let opposite = edges.iter().map(|&s| slot[t.inv[j][s as usize] as usize]).collect();
        let vertex_parity = lower.canon.iter().map(|&c| p[self.origin(dirs, c) as usize] >> j & 1 == 1).collect();
        Ok(LinkGraph {
            j,
            dirs,
            vertices: lower.canon,
            cubes: edges,
            origin,
            terminus,
            opposite,
            vertex_parity,
        })
    }
}

/// `Gr_{j,I}`: canonical `I`-cubes joined by the `(I ∪ {j})`-cubes.
#[derive(Clone, Debug)]
pub struct LinkGraph {
    pub j: usize,
    pub dirs: usize,
    /// Canonical oriented `I`-cube of each vertex.
    pub vertices: Vec<u32>,
    /// Oriented `(I ∪ {j})`-cube of each oriented edge.
    pub cubes: Vec<u32>,
    pub origin: Vec<u32>,
    pub terminus: Vec<u32>,
    pub opposite: Vec<u32>,
    /// `p_j` of each vertex's origin.
    pub vertex_parity: Vec<bool>,
}

impl LinkGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.cubes.len() / 2
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &t in &self.terminus {
            d[t as usize] += 1;
        }
        d
    }

    pub fn is_regular(&self, r: usize) -> bool {
        self.degrees().iter().all(|&d| d == r)
    }

    /// Check that `opposite` is a fixed-point-free involution swapping ends.
    pub fn opposite_is_consistent(&self) -> bool {
        (0..self.cubes.len()).all(|e| {
            let o = self.opposite[e] as usize;
            o != e
                && self.opposite[o] as usize == e
                && self.origin[o] == self.terminus[e]
                && self.terminus[o] == self.origin[e]
        })
    }

    pub fn components(&self) -> Components {
        connected_components(self.vertices.len(), self.origin.iter().copied().zip(self.terminus.iter().copied()))
    }
}

/// Partition of a vertex set into connected components.
#[derive(Clone, Debug, Serialize)]
pub struct Components {
    pub count: usize,
    /// Component label of each vertex, numbered by least member.
    pub label: Vec<u32>,
}

/// Union-find over `n` vertices joined by `edges`.
pub fn connected_components(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Components {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi as usize] = lo;
        }
    }
    let mut label = vec![0u32; n];
    let mut names = vec![u32::MAX; n];
    let mut count = 0;
    for v in 0..n as u32 {
        let root = find(&mut parent, v);
        if names[root as usize] == u32::MAX {
            names[root as usize] = count;
            count += 1;
        }
        label[v as usize] = names[root as usize];
    }
    Components { count: count as usize, label }
}

/// Components of the 1-skeleton.
pub fn skeleton_components(x: &CubicalComplex) -> Components {
    let edges = (0..x.g()).flat_map(|j| {
        let t = x.table(1 << j);
        t.bot[j].iter().copied().zip(t.top[j].iter().copied()).collect::<Vec<_>>()
    });
    connected_components(x.vertex_count(), edges)
}
