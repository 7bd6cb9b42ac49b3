//! Voltage graphs and their covers, twisted Laplacians with exactly
//! certified kernels, the cycle-space module of a cover, and the discrete
//! realization of wreath covers.
//!
//! An edge `a -> b` with voltage `t` lifts to the edges `(a, t m) -- (b, m)`
//! of the `G`-cover, on which `G` acts by right multiplication. With this
//! convention `Delta_rho` has block `(a, b)` equal to `-rho(t)`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;


use crate::character::{character_inner, mackey_inner, ClassFunction, LinearCharacter};
use crate::cyclo::{Cyclotomic, CyclotomicField};
use crate::error::{Error, Result};
use crate::gassmann::solo_test;
use crate::group::{FiniteGroup, Subgroup};
use crate::homwide::GModule;
use crate::linalg::{inverse, primes_one_mod, rref, Field, Matrix, PrimeField};
use crate::monomial::MonomialRep;
use crate::wreath::{isometry_test, DenseWreath, IsometryOptions, Side, WreathContext};

/// Largest operator dimension built by default.
pub const DEFAULT_OPERATOR_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VoltageEdge {
    pub tail: usize,
    pub head: usize,
    /// Element index in the voltage group.
    pub voltage: usize,
}

/// A connected multigraph with group-valued voltages on oriented edges.
#[derive(Clone, Debug)]
pub struct VoltageGraph {
    group_id: u64,
    vertices: usize,
    edges: Vec<VoltageEdge>,
    tree: Vec<bool>,
    /// `P(v)` with `P(root) = e` and `P(a) = t P(b)` along tree edges.
    potential: Vec<usize>,
    /// `P(a)^-1 t P(b)` for every edge off the tree.
    holonomy: Vec<usize>,
}

impl VoltageGraph {
    pub fn new(g: &FiniteGroup, vertices: usize, edges: Vec<VoltageEdge>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        let mut adjacent: Vec<Vec<usize>> = alloc::vec![Vec::new(); vertices];
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= vertices || e.head >= vertices {
                return Err(Error::InvalidGraph(alloc::format!("edge {i} leaves the vertex range")));
            }
            if e.voltage >= g.order() {
                return Err(Error::InvalidGraph(alloc::format!("edge {i} has an unknown voltage")));
            }
            adjacent[e.tail].push(i);
            if e.head != e.tail {
                adjacent[e.head].push(i);
            }
        }
        const UNSET: usize = usize::MAX;
        let mut potential = alloc::vec![UNSET; vertices];
        let mut tree = alloc::vec![false; edges.len()];
        potential[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &i in &adjacent[u] {
                let e = edges[i];
                if e.tail == u && potential[e.head] == UNSET {
                    potential[e.head] = g.mul(g.inv(e.voltage), potential[u]);
                    tree[i] = true;
                    queue.push_back(e.head);
                } else if e.head == u && potential[e.tail] == UNSET {
                    potential[e.tail] = g.mul(e.voltage, potential[u]);
                    tree[i] = true;
                    queue.push_back(e.tail);
                }
            }
        }
        if potential.contains(&UNSET) {
            return Err(Error::InvalidGraph("base graph is disconnected".into()));
        }
        let holonomy = edges
            .iter()
            .zip(&tree)
            .filter(|(_, &t)| !t)
            .map(|(e, _)| g.mul(g.inv(potential[e.tail]), g.mul(e.voltage, potential[e.head])))
            .collect();
        Ok(Self {
            group_id: g.id(),
            vertices,
            edges,
            tree,
            potential,
            holonomy,
        })
    }

    /// One vertex with a loop per voltage.
    pub fn bouquet(g: &FiniteGroup, voltages: &[usize]) -> Result<Self> {
        let edges = voltages
            .iter()
            .map(|&t| VoltageEdge { tail: 0, head: 0, voltage: t })
            .collect();
        Self::new(g, 1, edges)
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[VoltageEdge] {
        &self.edges
    }

    pub fn is_tree_edge(&self, i: usize) -> bool {
        self.tree[i]
    }

    pub fn potential(&self, v: usize) -> usize {
        self.potential[v]
    }

    /// Loops count twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    pub fn holonomy_generators(&self) -> &[usize] {
        &self.holonomy
    }

    fn check(&self, g: &FiniteGroup) -> Result<()> {
        if g.id() == self.group_id {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Image of the fundamental group: generated by the voltages of the
    /// fundamental cycles, transported to the root.
    pub fn holonomy_group(&self, g: &FiniteGroup) -> Result<Subgroup> {
        self.check(g)?;
        Ok(g.subgroup(&self.holonomy))
    }

    /// Whether the cover with fibre `G/H` is connected, i.e. the holonomy
    /// group is transitive on `G/H`.
    pub fn cover_is_connected(&self, g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
        let k = self.holonomy_group(g)?;
        let table = g.cosets(h)?;
        let mut seen = alloc::vec![false; table.index()];
        seen[0] = true;
        let mut stack = alloc::vec![0usize];
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for &s in k.generators() {
                let j = table.act(s, i);
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        Ok(count == table.index())
    }
}

/// An undirected multigraph; loops are allowed and count twice in degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Multigraph {
    /// Component label of every vertex (the smallest vertex in it).
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        (0..self.vertices).map(|v| uf.find(v)).collect()
    }

    pub fn component_count(&self) -> usize {
        let labels = self.components();
        (0..self.vertices).filter(|&v| labels[v] == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = alloc::vec![0; self.vertices];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn laplacian(&self, cap: usize) -> Result<TwistedOperator> {
        if self.vertices > cap {
            return Err(Error::DimensionOverflow { size: self.vertices, cap });
        }
        let mut op = TwistedOperator::empty(self.vertices, 1, self.vertices, 1);
        for (v, d) in self.degrees().into_iter().enumerate() {
            op.add(v, v, 0, d as i64);
        }
        for &(a, b) in &self.edges {
            op.add(a, b, 0, -1);
            op.add(b, a, 0, -1);
        }
        let labels = self.components();
        op.sections = (0..self.vertices)
            .filter(|&v| labels[v] == v)
            .map(|c| labels.iter().map(|&l| (l == c).then_some(0)).collect())
            .collect();
        Ok(op)
    }

    /// For each vertex the numbers of closed walks of lengths `1..=k`,
    /// sorted. Isomorphic graphs have equal profiles.
    pub fn walk_profile(&self, k: usize) -> Vec<Vec<u64>> {
        let mut adjacency: Vec<Vec<usize>> = alloc::vec![Vec::new(); self.vertices];
        for &(a, b) in &self.edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut out: Vec<Vec<u64>> = (0..self.vertices)
            .map(|v| {
                let mut x = alloc::vec![0u64; self.vertices];
                x[v] = 1;
                (0..k)
                    .map(|_| {
                        let mut y = alloc::vec![0u64; self.vertices];
                        for (a, nbrs) in adjacency.iter().enumerate() {
                            if x[a] != 0 {
                                for &b in nbrs {
                                    y[b] += x[a];
                                }
                            }
                        }
                        x = y;
                        x[v]
                    })
                    .collect()
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// A Hermitian operator with entries in `Z[zeta_m]`, stored sparsely as
/// root-of-unity counts, together with explicit flat sections spanning
/// (a subspace of) its kernel.
#[derive(Clone, Debug)]
pub struct TwistedOperator {
    size: usize,
    rep_dim: usize,
    vertices: usize,
    modulus: u64,
    entries: BTreeMap<(usize, usize), Vec<i64>>,
    sections: Vec<Vec<Option<u32>>>,
}

impl TwistedOperator {
    fn empty(size: usize, rep_dim: usize, vertices: usize, modulus: u64) -> Self {
        Self {
            size,
            rep_dim,
            vertices,
            modulus,
            entries: BTreeMap::new(),
            sections: Vec::new(),
        }
    }

    fn add(&mut self, r: usize, c: usize, exponent: u32, count: i64) {
        let m = self.modulus as usize;
        let e = self.entries.entry((r, c)).or_insert_with(|| alloc::vec![0; m]);
        e[exponent as usize % m] += count;
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rep_dim(&self) -> usize {
        self.rep_dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Nonzero-pattern entries `(row, col, counts)` with value
    /// `sum_k counts[k] zeta_m^k`, in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &[i64])> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v.as_slice()))
    }

    /// Explicit kernel vectors: entries are `None` or `zeta_m^a`.
    pub fn flat_sections(&self) -> &[Vec<Option<u32>>] {
        &self.sections
    }

    fn field(&self) -> Result<alloc::sync::Arc<CyclotomicField>> {
        CyclotomicField::new(self.modulus)
    }

    pub fn value(&self, r: usize, c: usize) -> Result<Cyclotomic> {
        let f = self.field()?;
        Ok(match self.entries.get(&(r, c)) {
            Some(v) => f.from_root_counts(v),
            None => f.zero(),
        })
    }

    pub fn is_hermitian(&self) -> Result<bool> {
        let f = self.field()?;
        for (&(r, c), v) in &self.entries {
            let back = match self.entries.get(&(c, r)) {
                Some(w) => f.from_root_counts(w),
                None => f.zero(),
            };
            if f.from_root_counts(v).conj() != back {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equal as matrices, comparing exact entry values.
    pub fn exactly_equal(&self, other: &Self) -> Result<bool> {
        if self.size != other.size {
            return Ok(false);
        }
        for &(r, c) in self.entries.keys().chain(other.entries.keys()) {
            if self.value(r, c)? != other.value(r, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact trace. Real, but irrational whenever a loop voltage has an
    /// irrational character value.
    pub fn trace(&self) -> Result<Cyclotomic> {
        let m = self.modulus as usize;
        let mut acc = alloc::vec![0i64; m];
        for (&(r, c), v) in &self.entries {
            if r == c {
                for (a, b) in acc.iter_mut().zip(v) {
                    *a += b;
                }
            }
        }
        Ok(self.field()?.from_root_counts(&acc))
    }

    /// `tr(A^2) = sum |a_ij|^2`.
    pub fn trace_of_square(&self) -> Result<Cyclotomic> {
        let m = self.modulus as usize;
        let mut acc = alloc::vec![0i64; m];
        for v in self.entries.values() {
            for (k, &ck) in v.iter().enumerate() {
                if ck == 0 {
                    continue;
                }
                for (l, &cl) in v.iter().enumerate() {
                    acc[(k + m - l) % m] += ck * cl;
                }
            }
        }
        Ok(self.field()?.from_root_counts(&acc))
    }

    /// `A f` for a vector of roots of unity, as root counts per row.
    fn apply_to_section(&self, f: &[Option<u32>]) -> BTreeMap<usize, Vec<i64>> {
        let m = self.modulus as usize;
        let mut out: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            if let Some(a) = f[c] {
                let acc = out.entry(r).or_insert_with(|| alloc::vec![0; m]);
                for (k, &ck) in v.iter().enumerate() {
                    acc[(k + a as usize) % m] += ck;
                }
            }
        }
        out
    }

    fn rank_mod(&self, p: u64, w: u64) -> usize {
        let f = PrimeField::new(p).expect("prime below 2^31");
        let m = self.modulus as usize;
        let powers: Vec<u64> = (0..m as u64).map(|k| f.pow(w, k)).collect();
        let n = self.size;
        let mut a = alloc::vec![0u64; n * n];
        for (&(r, c), v) in &self.entries {
            let mut x = 0u64;
            for (k, &ck) in v.iter().enumerate() {
                x = (x + f.from_i64(ck) * powers[k]) % p;
            }
            a[r * n + c] = x;
        }
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&i| a[i * n + col] != 0) else {
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    a.swap(piv * n + j, rank * n + j);
                }
            }
            let inv = f.inv(&a[rank * n + col]);
            let (top, rest) = a.split_at_mut((rank + 1) * n);
            let pivot_row = &top[rank * n..];
            for row in rest.chunks_exact_mut(n) {
                let x = row[col];
                if x == 0 {
                    continue;
                }
                let factor = p - x * inv % p;
                for (y, &z) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *y = (*y + factor * z) % p;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Exact kernel dimension with its two certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub dimension: usize,
    /// Independent vectors verified to lie in the kernel.
    pub lower: usize,
    /// `size - rank` modulo `prime`, an upper bound on the kernel dimension.
    pub upper: usize,
    pub prime: u64,
}

/// `dim ker` over `Q(zeta_m)`, certified from both sides: the flat sections
/// are checked to be killed exactly (lower bound, they have disjoint
/// supports), and the rank modulo a prime `p ≡ 1 (mod m)`, with `zeta_m`
/// sent to an element of order `m`, bounds the rank from below.
pub fn kernel_multiplicity(op: &TwistedOperator) -> Result<KernelReport> {
    let field = op.field()?;
    let mut covered = alloc::vec![false; op.size];
    for f in &op.sections {
        if f.len() != op.size || f.iter().all(Option::is_none) {
            return Err(Error::CrossCheck("malformed flat section".into()));
        }
        for (i, x) in f.iter().enumerate() {
            if x.is_some() {
                if covered[i] {
                    return Err(Error::CrossCheck("flat sections overlap".into()));
                }
                covered[i] = true;
            }
        }
        if op.apply_to_section(f).values().any(|counts| !field.from_root_counts(counts).is_zero()) {
            return Err(Error::CrossCheck("flat section is not in the kernel".into()));
        }
    }
    let lower = op.sections.len();
    for p in primes_one_mod(op.modulus).take(3) {
        let w = PrimeField::new(p)
            .and_then(|f| f.root_of_unity(op.modulus))
            .expect("p ≡ 1 mod m has an m-th root of unity");
        let upper = op.size - op.rank_mod(p, w);
        if upper < lower {
            return Err(Error::CrossCheck("modular rank exceeds the characteristic-zero rank".into()));
        }
        if upper == lower {
            return Ok(KernelReport {
                dimension: lower,
                lower,
                upper,
                prime: p,
            });
        }
    }
    Err(Error::KernelCertificate)
}

/// `<Res_K rho, 1>` for the holonomy group `K`, which equals `<rho, 1>`
/// when the `G`-cover is connected.
pub fn expected_kernel(x: &VoltageGraph, g: &FiniteGroup, rho: &MonomialRep) -> Result<u64> {
    let k = x.holonomy_group(g)?;
    let chi = rho.restrict(g, &k)?.character(k.as_group())?;
    character_inner(k.as_group(), &chi, &ClassFunction::trivial(k.as_group()))
}

/// `Delta_rho`: `deg(v) I` on diagonal blocks, `-rho(t)` in block `(a, b)`
/// and `-rho(t)^*` in block `(b, a)` for every edge `a -> b` with voltage
/// `t`. Flat sections are built from the vectors fixed by the holonomy
/// group, transported along the spanning tree.
pub fn twisted_laplacian(x: &VoltageGraph, g: &FiniteGroup, rho: &MonomialRep, cap: usize) -> Result<TwistedOperator> {
    x.check(g)?;
    if rho.group_id() != g.id() {
        return Err(Error::GroupMismatch);
    }
    let n = rho.dim();
    let size = n * x.vertices;
    if size > cap {
        return Err(Error::DimensionOverflow { size, cap });
    }
    let m = rho.modulus();
    let mut op = TwistedOperator::empty(size, n, x.vertices, m);
    for v in 0..x.vertices {
        let d = x.degree(v) as i64;
        for i in 0..n {
            op.add(v * n + i, v * n + i, 0, d);
        }
    }
    for e in &x.edges {
        for i in 0..n {
            let (j, a) = rho.act(e.voltage, i);
            op.add(e.tail * n + j, e.head * n + i, a, -1);
            op.add(e.head * n + i, e.tail * n + j, (m as u32 - a % m as u32) % m as u32, -1);
        }
    }
    let k = x.holonomy_group(g)?;
    for v0 in rho.fixed_vectors(g, &k)? {
        let mut f = alloc::vec![None; size];
        for u in 0..x.vertices {
            let p = x.potential[u];
            for (i, b) in v0.iter().enumerate() {
                if let Some(b) = b {
                    let (j, a) = rho.act(p, i);
                    f[u * n + j] = Some(((a as u64 + *b as u64) % m) as u32);
                }
            }
        }
        op.sections.push(f);
    }
    Ok(op)
}

/// The cover with fibre `G/H`: vertices `(v, i)` numbered `v n + i`, and
/// an edge `(a, t(i)) -- (b, i)` for every base edge and coset.
pub fn schreier_cover(x: &VoltageGraph, g: &FiniteGroup, h: &Subgroup) -> Result<Multigraph> {
    x.check(g)?;
    let table = g.cosets(h)?;
    let n = table.index();
    let mut edges = Vec::with_capacity(x.edges.len() * n);
    for e in &x.edges {
        for i in 0..n {
            edges.push((e.tail * n + table.act(e.voltage, i), e.head * n + i));
        }
    }
    Ok(Multigraph {
        vertices: x.vertices * n,
        edges,
    })
}

/// The full `G`-cover with vertices `(v, m)` numbered `v |G| + m` and edge
/// `e |G| + m` joining `(a, t m)` to `(b, m)`.
pub fn cayley_cover(x: &VoltageGraph, g: &FiniteGroup) -> Result<Multigraph> {
    x.check(g)?;
    let n = g.order();
    let mut edges = Vec::with_capacity(x.edges.len() * n);
    for e in &x.edges {
        for m in 0..n {
            edges.push((e.tail * n + g.mul(e.voltage, m), e.head * n + m));
        }
    }
    Ok(Multigraph {
        vertices: x.vertices * n,
        edges,
    })
}

/// The intermediate cover `H \ (G-cover)` as a voltage graph over `H`:
/// edge `(a, t(i)) -> (b, i)` with voltage `g_{t(i)}^-1 t g_i`. Twisting
/// it by `sigma` gives exactly the operator of `Ind sigma` on the base.
pub fn schreier_voltage_graph(x: &VoltageGraph, g: &FiniteGroup, h: &Subgroup) -> Result<VoltageGraph> {
    if !x.cover_is_connected(g, h)? {
        return Err(Error::DisconnectedCover);
    }
    let table = g.cosets(h)?;
    let n = table.index();
    let mut edges = Vec::with_capacity(x.edges.len() * n);
    for e in &x.edges {
        for i in 0..n {
            let s = table.cocycle(e.voltage, i);
            edges.push(VoltageEdge {
                tail: e.tail * n + table.act(e.voltage, i),
                head: e.head * n + i,
                voltage: h.local_index(s).expect("cocycle lies in H"),
            });
        }
    }
    VoltageGraph::new(h.as_group(), x.vertices * n, edges)
}

/// One of the four operators `chi_i-bar ⊗ Res_{H_i} Ind_{H_j} chi_j` on
/// the intermediate cover `M_i`.
#[derive(Clone, Debug)]
pub struct SoloSlot {
    pub i: usize,
    pub j: usize,
    pub operator: TwistedOperator,
    pub kernel: KernelReport,
    /// `<Ind chi_j, Ind chi_i>` by Mackey's formula.
    pub mackey: u64,
}

/// The operators for `(i, j) = (1,1), (2,1), (1,2), (2,2)`, each with its
/// exact kernel checked against the Mackey count.
pub fn solo_operators(
    x: &VoltageGraph,
    g: &FiniteGroup,
    h1: &Subgroup,
    chi1: &LinearCharacter,
    h2: &Subgroup,
    chi2: &LinearCharacter,
    cap: usize,
) -> Result<Vec<SoloSlot>> {
    let hs = [h1, h2];
    let chis = [chi1, chi2];
    let mut slots = Vec::with_capacity(4);
    for (i, j) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let (hi, hj) = (hs[i], hs[j]);
        let dim = hi.index() * hj.index() * x.vertices;
        if dim > cap {
            return Err(Error::DimensionOverflow { size: dim, cap });
        }
        let graph = schreier_voltage_graph(x, g, hi)?;
        let res = MonomialRep::induced_linear(g, hj, chis[j])?.restrict(g, hi)?;
        let sigma = MonomialRep::from_linear(hi.as_group(), chis[i])?
            .conjugate()
            .tensor(&res)?;
        let operator = twisted_laplacian(&graph, hi.as_group(), &sigma, cap)?;
        let kernel = kernel_multiplicity(&operator)?;
        let mackey = mackey_inner(g, hj, chis[j], hi, chis[i])?;
        if kernel.dimension as u64 != mackey {
            return Err(Error::CrossCheck(alloc::format!(
                "kernel of slot ({}, {}) is {}, Mackey count is {mackey}",
                i + 1,
                j + 1,
                kernel.dimension
            )));
        }
        slots.push(SoloSlot {
            i: i + 1,
            j: j + 1,
            operator,
            kernel,
            mackey,
        });
    }
    Ok(slots)
}

/// Kernel multiplicities of the four solo operators against induced
/// character equality.
#[derive(Clone, Debug)]
pub struct SoloBench {
    pub slots: Vec<SoloSlot>,
    /// `k11 = k21` and `k12 = k22`.
    pub kernels_agree: bool,
    pub induced_equal: bool,
}

pub fn verify_solo_bench(
    x: &VoltageGraph,
    g: &FiniteGroup,
    h1: &Subgroup,
    chi1: &LinearCharacter,
    h2: &Subgroup,
    chi2: &LinearCharacter,
    cap: usize,
) -> Result<SoloBench> {
    let slots = solo_operators(x, g, h1, chi1, h2, chi2, cap)?;
    let k: Vec<usize> = slots.iter().map(|s| s.kernel.dimension).collect();
    let kernels_agree = k[0] == k[1] && k[2] == k[3];
    let induced_equal = solo_test(g, h1, chi1, h2, chi2)?;
    if kernels_agree != induced_equal {
        return Err(Error::CrossCheck("kernel criterion disagrees with induced characters".into()));
    }
    Ok(SoloBench {
        slots,
        kernels_agree,
        induced_equal,
    })
}

/// The two Schreier covers of a pair of subgroups and the exact data that
/// isospectrality must respect.
#[derive(Clone, Debug)]
pub struct SchreierPair {
    pub covers: [Multigraph; 2],
    pub laplacians: [TwistedOperator; 2],
    pub connected: [bool; 2],
    pub traces: [Cyclotomic; 2],
    pub traces_of_squares: [Cyclotomic; 2],
    pub conjugate: bool,
    /// Closed-walk profiles differ, which rules out an isomorphism.
    pub walk_profiles_differ: bool,
}

pub fn schreier_pair(x: &VoltageGraph, g: &FiniteGroup, h1: &Subgroup, h2: &Subgroup, cap: usize) -> Result<SchreierPair> {
    let c1 = schreier_cover(x, g, h1)?;
    let c2 = schreier_cover(x, g, h2)?;
    let l1 = c1.laplacian(cap)?;
    let l2 = c2.laplacian(cap)?;
    let walk_profiles_differ = c1.walk_profile(8) != c2.walk_profile(8);
    Ok(SchreierPair {
        connected: [c1.component_count() == 1, c2.component_count() == 1],
        traces: [l1.trace()?, l2.trace()?],
        traces_of_squares: [l1.trace_of_square()?, l2.trace_of_square()?],
        conjugate: g.are_conjugate_subgroups(h1, h2)?.is_some(),
        covers: [c1, c2],
        laplacians: [l1, l2],
        walk_profiles_differ,
    })
}

/// `H_1` of the `G`-cover with coefficients in `F_ell`, as a `G`-module on
/// the basis of fundamental cycles of a spanning tree. `g` acts on the
/// cover by `(v, m) -> (v, m g^-1)`.
#[derive(Clone, Debug)]
pub struct HomologyModule {
    pub module: GModule<PrimeField>,
    pub cover: Multigraph,
    pub tree: Vec<bool>,
    /// Cover edge of each basis cycle.
    pub basis_edges: Vec<usize>,
    /// Basis position of each cover edge off the tree.
    pub basis_of: Vec<Option<usize>>,
    /// Each fundamental cycle as a chain `(edge, coefficient)`.
    pub cycles: Vec<Vec<(usize, i64)>>,
    /// Tree edge towards the root of every cover vertex but the root.
    parent: Vec<Option<usize>>,
}

impl HomologyModule {
    /// Tree path from `v` to the root as `(edge, +1 if traversed tail to
    /// head)` steps.
    fn path_to_root(&self, mut v: usize) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        while let Some(e) = self.parent[v] {
            let (a, b) = self.cover.edges[e];
            if a == v {
                out.push((e, 1));
                v = b;
            } else {
                out.push((e, -1));
                v = a;
            }
        }
        out
    }
}

pub fn graph_homology_module(x: &VoltageGraph, g: &FiniteGroup, ell: u64) -> Result<HomologyModule> {
    if !x.cover_is_connected(g, &g.trivial_subgroup())? {
        return Err(Error::DisconnectedCover);
    }
    if g.order() as u64 % ell == 0 {
        return Err(Error::EllDividesOrder { ell, order: g.order() });
    }
    let cover = cayley_cover(x, g)?;
    let nv = cover.vertices;
    let ne = cover.edges.len();
    let mut incident: Vec<Vec<usize>> = alloc::vec![Vec::new(); nv];
    for (i, &(a, b)) in cover.edges.iter().enumerate() {
        incident[a].push(i);
        if a != b {
            incident[b].push(i);
        }
    }
    let mut parent: Vec<Option<usize>> = alloc::vec![None; nv];
    let mut seen = alloc::vec![false; nv];
    let mut tree = alloc::vec![false; ne];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &i in &incident[u] {
            let (a, b) = cover.edges[i];
            let w = if a == u { b } else { a };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(i);
                tree[i] = true;
                queue.push_back(w);
            }
        }
    }
    let basis_edges: Vec<usize> = (0..ne).filter(|&i| !tree[i]).collect();
    let mut basis_of = alloc::vec![None; ne];
    for (k, &e) in basis_edges.iter().enumerate() {
        basis_of[e] = Some(k);
    }
    let d = basis_edges.len();
    if d + nv != ne + 1 {
        return Err(Error::CrossCheck("cycle space dimension is not E - V + 1".into()));
    }
    let mut hm = HomologyModule {
        module: GModule::modular(g, ell, 0, alloc::vec![Matrix::filled(0, 0, 0); g.generators().len()])?,
        cover,
        tree,
        basis_edges,
        basis_of,
        cycles: Vec::new(),
        parent,
    };
    for &f in &hm.basis_edges {
        let (u, w) = hm.cover.edges[f];
        let mut chain: BTreeMap<usize, i64> = BTreeMap::new();
        *chain.entry(f).or_default() += 1;
        for (e, s) in hm.path_to_root(w) {
            *chain.entry(e).or_default() += s;
        }
        for (e, s) in hm.path_to_root(u) {
            *chain.entry(e).or_default() -= s;
        }
        hm.cycles.push(chain.into_iter().filter(|&(_, c)| c != 0).collect());
    }
    let order = g.order();
    let field = PrimeField::new(ell).ok_or(Error::InvalidModule(alloc::format!("{ell} is not prime")))?;
    let mut mats = Vec::with_capacity(g.generators().len());
    for &s in g.generator_indices() {
        let sinv = g.inv(s);
        let mut m = Matrix::filled(d, d, 0u64);
        for (col, cycle) in hm.cycles.iter().enumerate() {
            for &(e, c) in cycle {
                let image = (e / order) * order + g.mul(e % order, sinv);
                if let Some(row) = hm.basis_of[image] {
                    let v = field.add(m.get(row, col), &field.from_i64(c));
                    m.set(row, col, v);
                }
            }
        }
        mats.push(m);
    }
    hm.module = GModule::modular(g, ell, d, mats)?;
    Ok(hm)
}

/// A realized wreath cover of the base graph and its verification.
#[derive(Clone, Debug)]
pub struct WreathCover {
    pub ell: u64,
    pub n: usize,
    /// `C^n x| G` as a permutation group.
    pub wreath: FiniteGroup,
    /// Voltage `(k_e, t_e)` of every base edge.
    pub edge_voltages: Vec<(Vec<u32>, usize)>,
    pub voltage_graph: VoltageGraph,
    pub cover: Multigraph,
    /// The equivariant surjection `H_1(G-cover) -> F_ell[G/H1]`, `n x d`.
    pub psi: Matrix<u64>,
    pub connected: bool,
    /// Each generator of `C^n` acts on the cover as a fixed-point-free
    /// automorphism and the fibres of the map to the `G`-cover are single
    /// `C^n`-orbits of size `ell^n`.
    pub deck_free: bool,
    /// The quotient by `C^n` is the `G`-cover, edge for edge.
    pub quotient_is_g_cover: bool,
    /// Lifts of `G` act on `C^n` by permuting coordinates as `G` permutes
    /// `G/H1`.
    pub phi_matches: bool,
    /// The monodromy of every fundamental cycle of the `G`-cover is
    /// `-psi` of that cycle, so the cover corresponds to `ker psi`.
    pub monodromy_matches: bool,
}

impl WreathCover {
    pub fn all_checks_pass(&self) -> bool {
        self.connected && self.deck_free && self.quotient_is_g_cover && self.phi_matches && self.monodromy_matches
    }
}

fn wreath_options(ell: u64) -> IsometryOptions {
    IsometryOptions {
        ell: Some(ell),
        ..Default::default()
    }
}

/// Builds the `C^n x| G`-voltage graph whose cover realizes the quotient
/// `F_ell[G/H1]` of `H_1(G-cover, F_ell)` picked out by the witness `v`.
///
/// `Psi` is the averaged left inverse of `e_i -> g_i v`; the `C^n` part of
/// the voltage on edge `e` is `Phi(t_e) Psi P(e~)`, with `P` the averaged
/// retraction of chains onto cycles and `e~` the lift of `e` at `m = 1`.
pub fn build_wreath_cover(
    x: &VoltageGraph,
    g: &FiniteGroup,
    h1: &Subgroup,
    hom: &HomologyModule,
    v: &[u64],
) -> Result<WreathCover> {
    let module = &hom.module;
    let ell = module.ell();
    if !module.is_star_witness(g, h1, v)? {
        return Err(Error::NotAWitness("not fixed by H1 or translates are dependent".into()));
    }
    let f = *module.field();
    let table = g.cosets(h1)?;
    let n = table.index();
    let d = module.dim();
    let order = g.order();

    // phi: F^n -> M, columns g_i v.
    let columns: Vec<Vec<u64>> = table.reps.iter().map(|&r| module.act(r, v)).collect();
    let mut phi_t = Matrix::from_rows(&columns, d);
    let pivots = rref(&f, &mut phi_t);
    if pivots.len() != n {
        return Err(Error::NotAWitness("translates are dependent".into()));
    }
    // Left inverse from the rows of phi at the pivot positions.
    let square = Matrix::from_rows(
        &pivots.iter().map(|&r| columns.iter().map(|c| c[r]).collect()).collect::<Vec<_>>(),
        n,
    );
    let square_inv = inverse(&f, &square).expect("pivot rows are independent");
    let mut left = Matrix::filled(n, d, 0u64);
    for i in 0..n {
        for (k, &r) in pivots.iter().enumerate() {
            left.set(i, r, *square_inv.get(i, k));
        }
    }
    let inv_order = f.inv(&(order as u64 % ell));
    let mut psi = Matrix::filled(n, d, 0u64);
    for gx in 0..order {
        let a = crate::linalg::mat_mul(&f, &left, module.matrix(g.inv(gx)));
        for i in 0..n {
            let row = table.act(gx, i);
            for c in 0..d {
                let val = f.add(psi.get(row, c), &f.mul(a.get(i, c), &inv_order));
                psi.set(row, c, val);
            }
        }
    }
    let psi_col = |e: usize| -> Vec<u64> {
        match hom.basis_of[e] {
            Some(k) => (0..n).map(|i| *psi.get(i, k)).collect(),
            None => alloc::vec![0; n],
        }
    };

    // Voltages.
    let mut edge_voltages = Vec::with_capacity(x.edges.len());
    for (ei, e) in x.edges.iter().enumerate() {
        let mut kp = alloc::vec![0u64; n];
        for gx in 0..order {
            let col = psi_col(ei * order + gx);
            for i in 0..n {
                let j = table.act(gx, i);
                kp[j] = f.add(&kp[j], &f.mul(&col[i], &inv_order));
            }
        }
        let mut k = alloc::vec![0u32; n];
        for i in 0..n {
            k[table.act(e.voltage, i)] = kp[i] as u32;
        }
        edge_voltages.push((k, e.voltage));
    }

    let ctx = WreathContext::new(g, h1, h1, wreath_options(ell))?;
    let dense = DenseWreath::new(&ctx)?;
    let wg = &dense.group;
    let edges = x
        .edges
        .iter()
        .zip(&edge_voltages)
        .map(|(e, (k, t))| VoltageEdge {
            tail: e.tail,
            head: e.head,
            voltage: dense.element_index(&ctx, k, *t),
        })
        .collect();
    let voltage_graph = VoltageGraph::new(wg, x.vertices, edges)?;
    let cover = cayley_cover(&voltage_graph, wg)?;
    let connected = cover.component_count() == 1;

    let wo = wg.order();
    let zero = alloc::vec![0u32; n];
    let decoded: Vec<(Vec<u32>, usize)> = (0..wo).map(|y| dense.decode(&ctx, y)).collect();
    let units: Vec<usize> = (0..n)
        .map(|i| {
            let mut k = zero.clone();
            k[i] = 1;
            dense.element_index(&ctx, &k, 0)
        })
        .collect();

    // (b) deck action of C^n and the quotient.
    let mut deck_free = true;
    for &u in &units {
        for (ei, _) in x.edges.iter().enumerate() {
            for y in 0..wo {
                let (a, b) = cover.edges[ei * wo + y];
                let (a2, b2) = cover.edges[ei * wo + wg.mul(y, u)];
                let moved = |z: usize| (z / wo) * wo + wg.mul(z % wo, u);
                if (moved(a), moved(b)) != (a2, b2) {
                    deck_free = false;
                }
            }
        }
        if (0..wo).any(|y| wg.mul(y, u) == y) {
            deck_free = false;
        }
    }
    let normal = wg.subgroup(&units);
    let fibre = (ell as usize).pow(n as u32);
    if normal.order() != fibre || normal.members().iter().any(|&z| decoded[z].1 != 0) {
        deck_free = false;
    }
    let g_cover = cayley_cover(x, g)?;
    let project = |z: usize| (z / wo) * order + decoded[z % wo].1;
    let mut images = alloc::vec![0usize; g_cover.edges.len()];
    let mut quotient_is_g_cover = true;
    for (ei, _) in x.edges.iter().enumerate() {
        for y in 0..wo {
            let (a, b) = cover.edges[ei * wo + y];
            let target = ei * order + decoded[y].1;
            if (project(a), project(b)) != g_cover.edges[target] {
                quotient_is_g_cover = false;
            }
            images[target] += 1;
        }
    }
    quotient_is_g_cover &= images.iter().all(|&c| c == fibre);

    // (c) Phi.
    let table_w = ctx.coset_table();
    let mut phi_matches = true;
    for &s in g.generator_indices() {
        let lift = dense.element_index(&ctx, &zero, s);
        for i in 0..n {
            let conj = wg.mul(wg.mul(lift, units[i]), wg.inv(lift));
            if conj != units[table_w.act(s, i)] {
                phi_matches = false;
            }
        }
    }

    // Monodromy of each fundamental cycle, by walking its lift.
    let mut monodromy_matches = true;
    for (k, &fe) in hom.basis_edges.iter().enumerate() {
        let (u, w) = hom.cover.edges[fe];
        let mut steps: Vec<(usize, i64)> = hom.path_to_root(u).into_iter().rev().map(|(e, s)| (e, -s)).collect();
        steps.push((fe, 1));
        steps.extend(hom.path_to_root(w));
        let mut z = 0usize;
        for (e, s) in steps {
            let base = e / order;
            let ve = voltage_graph.edges[base].voltage;
            z = if s > 0 { wg.mul(wg.inv(ve), z) } else { wg.mul(ve, z) };
        }
        let (kz, gz) = &decoded[z];
        if *gz != 0 {
            monodromy_matches = false;
            continue;
        }
        let expected: Vec<u32> = (0..n).map(|i| f.sub(&0, psi.get(i, k)) as u32).collect();
        if *kz != expected {
            monodromy_matches = false;
        }
    }

    Ok(WreathCover {
        ell,
        n,
        wreath: dense.group.clone(),
        edge_voltages,
        voltage_graph,
        cover,
        psi,
        connected,
        deck_free,
        quotient_is_g_cover,
        phi_matches,
        monodromy_matches,
    })
}

/// Kernel multiplicities of the four solo operators on a realized wreath
/// cover for one candidate character, next to the group-level counts.
#[derive(Clone, Debug)]
pub struct CandidateKernels {
    /// `k11, k21, k12, k22`.
    pub kernels: [usize; 4],
    /// `a11, a21, a12, a22` from the Mackey fast path.
    pub mackey: [u64; 4],
    pub spectral_witness: bool,
    pub group_witness: bool,
}

#[derive(Clone, Debug)]
pub struct WreathSoloComparison {
    pub candidates: Vec<CandidateKernels>,
    pub group_verdict: bool,
    pub spectral_verdict: bool,
    /// The four operators for the first spectral witness, if any.
    pub witness_slots: Option<Vec<SoloSlot>>,
}

/// Runs the solitary-character comparison on the realized cover: for every
/// candidate `chi` on `H~2`, the four twisted operators over the
/// `C^n x| G`-voltage graph, with kernels compared to the Mackey counts.
pub fn wreath_solo_comparison(
    x: &VoltageGraph,
    g: &FiniteGroup,
    h1: &Subgroup,
    h2: &Subgroup,
    cover: &WreathCover,
    cap: usize,
) -> Result<WreathSoloComparison> {
    let options = wreath_options(cover.ell);
    let ctx = WreathContext::new(g, h1, h2, options)?;
    let dense = DenseWreath::new(&ctx)?;
    let edges = x
        .edges
        .iter()
        .zip(&cover.edge_voltages)
        .map(|(e, (k, t))| VoltageEdge {
            tail: e.tail,
            head: e.head,
            voltage: dense.element_index(&ctx, k, *t),
        })
        .collect();
    let xt = VoltageGraph::new(&dense.group, x.vertices, edges)?;
    let xi = ctx.solitary_character()?;
    let a11 = ctx.induced_inner(&xi, &xi)?;
    let xi_lift = dense.lift(&ctx, &xi)?;
    let mut candidates = Vec::new();
    let mut witness_slots = None;
    for chi in ctx.character_family(Side::Two) {
        let outcome = ctx.evaluate(&xi, a11, &chi)?;
        let slots = solo_operators(
            &xt,
            &dense.group,
            dense.subgroup(Side::One),
            &xi_lift,
            dense.subgroup(Side::Two),
            &dense.lift(&ctx, &chi)?,
            cap,
        )?;
        let kernels = [0, 1, 2, 3].map(|s| slots[s].kernel.dimension);
        let mackey = [a11, outcome.a21, outcome.a12, outcome.a22];
        if kernels.iter().zip(&mackey).any(|(&k, &a)| k as u64 != a) {
            return Err(Error::CrossCheck("realized kernels differ from the Mackey fast path".into()));
        }
        let spectral_witness = kernels[0] == kernels[1] && kernels[2] == kernels[3];
        if spectral_witness && witness_slots.is_none() {
            witness_slots = Some(slots);
        }
        candidates.push(CandidateKernels {
            kernels,
            mackey,
            spectral_witness,
            group_witness: outcome.witness,
        });
    }
    let group_verdict = isometry_test(g, h1, h2, options)?.equivalent;
    Ok(WreathSoloComparison {
        spectral_verdict: candidates.iter().any(|c| c.spectral_witness),
        candidates,
        group_verdict,
        witness_slots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::character::linear_characters;
    use crate::homwide::{condition_star, contains_regular, Search, DEFAULT_SEARCH_BUDGET};
    use crate::perm::Permutation;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::generate(3, &[p(3, "(0 1)"), p(3, "(0 1 2)")]).unwrap()
    }

    fn bouquet_on_generators(g: &FiniteGroup) -> VoltageGraph {
        VoltageGraph::bouquet(g, g.generator_indices()).unwrap()
    }

    #[test]
    fn covers_of_a_bouquet() {
        let g = s3();
        let x = bouquet_on_generators(&g);
        let full = schreier_cover(&x, &g, &g.trivial_subgroup()).unwrap();
        assert_eq!(full.vertices, 6);
        assert!(full.degrees().iter().all(|&d| d == 4));
        assert_eq!(full.component_count(), 1);
        let base = schreier_cover(&x, &g, &g.whole()).unwrap();
        assert_eq!(base, Multigraph { vertices: 1, edges: alloc::vec![(0, 0), (0, 0)] });
        let cay = cayley_cover(&x, &g).unwrap();
        assert_eq!(cay.component_count(), 1);
    }

    #[test]
    fn trivial_rep_gives_graph_laplacian() {
        let g = s3();
        let x = VoltageGraph::new(
            &g,
            3,
            alloc::vec![
                VoltageEdge { tail: 0, head: 1, voltage: 0 },
                VoltageEdge { tail: 1, head: 2, voltage: 0 },
                VoltageEdge { tail: 2, head: 2, voltage: 0 },
            ],
        )
        .unwrap();
        let op = twisted_laplacian(&x, &g, &MonomialRep::trivial(&g), 100).unwrap();
        let plain = Multigraph { vertices: 3, edges: alloc::vec![(0, 1), (1, 2), (2, 2)] }.laplacian(100).unwrap();
        assert!(op.exactly_equal(&plain).unwrap());
        assert_eq!(kernel_multiplicity(&op).unwrap().dimension, 1);
        assert!(op.is_hermitian().unwrap());
    }

    #[test]
    fn regular_and_induced_match_covers_exactly() {
        let g = s3();
        let x = bouquet_on_generators(&g);
        let reg = twisted_laplacian(&x, &g, &MonomialRep::regular(&g).unwrap(), 100).unwrap();
        let cover = schreier_cover(&x, &g, &g.trivial_subgroup()).unwrap().laplacian(100).unwrap();
        assert!(reg.exactly_equal(&cover).unwrap());
        let t = catalog::s3_transpositions();
        let x = bouquet_on_generators(&t.group);
        for chi in linear_characters(t.h1.as_group()).unwrap() {
            let ind = MonomialRep::induced_linear(&t.group, &t.h1, &chi).unwrap();
            let down = twisted_laplacian(&x, &t.group, &ind, 100).unwrap();
            let graph = schreier_voltage_graph(&x, &t.group, &t.h1).unwrap();
            let up = twisted_laplacian(&graph, t.h1.as_group(), &MonomialRep::from_linear(t.h1.as_group(), &chi).unwrap(), 100)
                .unwrap();
            assert!(down.exactly_equal(&up).unwrap());
            assert_eq!(down.trace().unwrap(), up.trace().unwrap());
        }
    }

    #[test]
    fn kernels_match_trivial_multiplicity() {
        let g = s3();
        let t = catalog::s3_transpositions();
        let xt = bouquet_on_generators(&t.group);
        for chi in linear_characters(t.h1.as_group()).unwrap() {
            let rho = MonomialRep::induced_linear(&t.group, &t.h1, &chi).unwrap();
            let op = twisted_laplacian(&xt, &t.group, &rho, 100).unwrap();
            let k = kernel_multiplicity(&op).unwrap();
            assert_eq!(k.dimension as u64, expected_kernel(&xt, &t.group, &rho).unwrap());
            assert_eq!(k.dimension, usize::from(chi.is_trivial()));
        }
        // A disconnected cover: one loop with voltage (0 1).
        let y = VoltageGraph::bouquet(&g, &[g.index_of(&p(3, "(0 1)")).unwrap()]).unwrap();
        let rho = MonomialRep::regular(&g).unwrap();
        let op = twisted_laplacian(&y, &g, &rho, 100).unwrap();
        assert_eq!(kernel_multiplicity(&op).unwrap().dimension, 3);
        assert_eq!(expected_kernel(&y, &g, &rho).unwrap(), 3);
        assert_eq!(schreier_cover(&y, &g, &g.trivial_subgroup()).unwrap().component_count(), 3);
    }

    #[test]
    fn single_vertex_and_edge() {
        let g = FiniteGroup::generate(1, &[]).unwrap();
        let x = VoltageGraph::new(&g, 1, Vec::new()).unwrap();
        let op = twisted_laplacian(&x, &g, &MonomialRep::trivial(&g), 10).unwrap();
        assert_eq!(op.size(), 1);
        assert_eq!(kernel_multiplicity(&op).unwrap().dimension, 1);
        let k2 = VoltageGraph::new(&g, 2, alloc::vec![VoltageEdge { tail: 0, head: 1, voltage: 0 }]).unwrap();
        let op = twisted_laplacian(&k2, &g, &MonomialRep::trivial(&g), 10).unwrap();
        assert_eq!(op.trace().unwrap(), Cyclotomic::from_integer(2));
        assert_eq!(op.trace_of_square().unwrap(), Cyclotomic::from_integer(4));
        assert!(matches!(
            twisted_laplacian(&k2, &g, &MonomialRep::trivial(&g), 1),
            Err(Error::DimensionOverflow { size: 2, cap: 1 })
        ));
    }

    #[test]
    fn irrational_trace() {
        let c5 = Permutation::parse_cycles(5, "(0 1 2 3 4)").unwrap();
        let g = FiniteGroup::generate(5, &[c5]).unwrap();
        let x = VoltageGraph::bouquet(&g, &[g.generator_indices()[0]]).unwrap();
        let whole = g.whole();
        let chi = linear_characters(whole.as_group()).unwrap().into_iter().find(|c| !c.is_trivial()).unwrap();
        let op = twisted_laplacian(&x, &g, &MonomialRep::induced_linear(&g, &whole, &chi).unwrap(), 10).unwrap();
        let t = op.trace().unwrap();
        assert!(t.to_rational().is_none());
        assert_eq!(t, t.conj());
        assert_eq!(kernel_multiplicity(&op).unwrap().dimension, 0);
    }

    #[test]
    fn gassmann_schreier_covers() {
        let t = catalog::gassmann();
        let g = &t.group;
        let a = g.index_of(&p(6, "(0 1)")).unwrap();
        let b = g.index_of(&p(6, "(0 1 2 3 4 5)")).unwrap();
        let x = VoltageGraph::bouquet(g, &[a, b]).unwrap();
        let pair = schreier_pair(&x, g, &t.h1, &t.h2, DEFAULT_OPERATOR_CAP).unwrap();
        assert_eq!(pair.covers[0].vertices, 180);
        assert_eq!(pair.connected, [true, true]);
        assert_eq!(pair.traces[0], pair.traces[1]);
        assert_eq!(pair.traces_of_squares[0], pair.traces_of_squares[1]);
        assert!(!pair.conjugate);
        let rho = MonomialRep::permutation(g, &t.h1).unwrap();
        let op = twisted_laplacian(&x, g, &rho, DEFAULT_OPERATOR_CAP).unwrap();
        assert_eq!(kernel_multiplicity(&op).unwrap().dimension, 1);
        assert!(op.exactly_equal(&pair.laplacians[0]).unwrap());
    }

    #[test]
    fn solo_bench_examples() {
        let t = catalog::s4_cyclic_klein();
        let x = bouquet_on_generators(&t.group);
        let t1 = LinearCharacter::trivial(t.h1.as_group());
        let t2 = LinearCharacter::trivial(t.h2.as_group());
        let bench = verify_solo_bench(&x, &t.group, &t.h1, &t1, &t.h2, &t2, 1000).unwrap();
        assert!(!bench.kernels_agree && !bench.induced_equal);
        let k: Vec<usize> = bench.slots.iter().map(|s| s.kernel.dimension).collect();
        assert_eq!(k, alloc::vec![3, 3, 3, 6]);
        let c = catalog::s3_transpositions();
        let x = bouquet_on_generators(&c.group);
        let t1 = LinearCharacter::trivial(c.h1.as_group());
        let t2 = LinearCharacter::trivial(c.h2.as_group());
        let bench = verify_solo_bench(&x, &c.group, &c.h1, &t1, &c.h2, &t2, 1000).unwrap();
        assert!(bench.kernels_agree && bench.induced_equal);
    }

    #[test]
    fn homology_module_dimensions() {
        let g = s3();
        let x = bouquet_on_generators(&g);
        let hm = graph_homology_module(&x, &g, 5).unwrap();
        assert_eq!(hm.module.dim(), 2 * 6 - 6 + 1);
        assert!(contains_regular(&g, &hm.module, DEFAULT_SEARCH_BUDGET).unwrap().found().is_some());
        let h1 = g.subgroup(&[g.index_of(&p(3, "(0 1)")).unwrap()]);
        let w = condition_star(&g, &h1, &hm.module, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(hm.module.is_star_witness(&g, &h1, w.found().unwrap()).unwrap());

        let z3 = FiniteGroup::generate(3, &[p(3, "(0 1 2)")]).unwrap();
        let y = VoltageGraph::bouquet(&z3, &[z3.generator_indices()[0]]).unwrap();
        let hm = graph_homology_module(&y, &z3, 5).unwrap();
        assert_eq!(hm.module.dim(), 1);
        assert!(contains_regular(&z3, &hm.module, 100).unwrap().is_absent());
        assert!(matches!(graph_homology_module(&x, &g, 3), Err(Error::EllDividesOrder { .. })));
    }

    #[test]
    fn wreath_cover_end_to_end() {
        let g = s3();
        let x = bouquet_on_generators(&g);
        let h1 = g.subgroup(&[g.index_of(&p(3, "(0 1)")).unwrap()]);
        let hm = graph_homology_module(&x, &g, 5).unwrap();
        let Search::Found(v) = condition_star(&g, &h1, &hm.module, DEFAULT_SEARCH_BUDGET).unwrap() else {
            panic!("no witness");
        };
        let cover = build_wreath_cover(&x, &g, &h1, &hm, &v).unwrap();
        assert_eq!(cover.cover.vertices, 750);
        assert!(cover.all_checks_pass(), "{cover:?}");
        let h2 = g.subgroup(&[g.index_of(&p(3, "(0 2)")).unwrap()]);
        let cmp = wreath_solo_comparison(&x, &g, &h1, &h2, &cover, 1000).unwrap();
        assert!(cmp.group_verdict && cmp.spectral_verdict);
        assert!(cmp.candidates.iter().all(|c| c.spectral_witness == c.group_witness));
        assert!(cmp.witness_slots.is_some());
        let bad = alloc::vec![0u64; hm.module.dim()];
        assert!(matches!(build_wreath_cover(&x, &g, &h1, &hm, &bad), Err(Error::NotAWitness(_))));
    }

    #[test]
    fn wreath_cover_for_the_whole_group() {
        let g = s3();
        let x = bouquet_on_generators(&g);
        let whole = g.whole();
        let hm = graph_homology_module(&x, &g, 5).unwrap();
        let v = condition_star(&g, &whole, &hm.module, DEFAULT_SEARCH_BUDGET).unwrap().found().unwrap().clone();
        let cover = build_wreath_cover(&x, &g, &whole, &hm, &v).unwrap();
        assert_eq!((cover.n, cover.cover.vertices), (1, 30));
        assert!(cover.all_checks_pass());
    }
}
