//! Structural parameters and predicates: strong components, arc-connectivity,
//! independence number, semicomplete / co-bipartite recognition, generator
//! sets, and Hamiltonian path/cycle search for desk-scale digraphs.

use crate::digraph::{BitIter, DiGraph, Vertex};
use crate::error::{Error, Result};

/// Size cap for the exact searches (independence number and friends).
pub const EXACT_SEARCH_LIMIT: usize = 32;
/// Size cap for Hamiltonian path backtracking.
pub const HAMILTONIAN_LIMIT: usize = 16;

/// Strong components together with the condensation DAG.
///
/// Components are listed in topological order of the condensation, so
/// component 0 has no incoming DAG arcs.
#[derive(Debug, Clone)]
pub struct SccDecomposition {
    pub comp_of: Vec<usize>,
    pub components: Vec<Vec<Vertex>>,
    pub dag_out: Vec<Vec<usize>>,
    /// Components with no incoming arc in the condensation.
    pub initial: Vec<usize>,
    /// Components with no outgoing arc in the condensation.
    pub terminal: Vec<usize>,
}

impl SccDecomposition {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn component_mask(&self, c: usize) -> u64 {
        self.components[c].iter().fold(0u64, |m, &v| m | 1 << v)
    }
}

pub fn strong_components(d: &DiGraph) -> SccDecomposition {
    let n = d.vertex_count();
    let mut state = Tarjan {
        d,
        index: 0,
        idx: vec![usize::MAX; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        comps: Vec::new(),
    };
    for v in 0..n {
        if state.idx[v] == usize::MAX {
            state.connect(v);
        }
    }
    // Tarjan emits components in reverse topological order.
    state.comps.reverse();
    let mut comps = state.comps;
    for c in comps.iter_mut() {
        c.sort_unstable();
    }
    let mut comp_of = vec![0usize; n];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = ci;
        }
    }
    let k = comps.len();
    let mut dag_out = vec![Vec::new(); k];
    let mut has_in = vec![false; k];
    let mut has_out = vec![false; k];
    for u in 0..n {
        for v in d.out_neighbors(u) {
            let (cu, cv) = (comp_of[u], comp_of[v]);
            if cu != cv {
                if !dag_out[cu].contains(&cv) {
                    dag_out[cu].push(cv);
                }
                has_out[cu] = true;
                has_in[cv] = true;
            }
        }
    }
    for out in dag_out.iter_mut() {
        out.sort_unstable();
    }
    let initial = (0..k).filter(|&c| !has_in[c]).collect();
    let terminal = (0..k).filter(|&c| !has_out[c]).collect();
    SccDecomposition {
        comp_of,
        components: comps,
        dag_out,
        initial,
        terminal,
    }
}

struct Tarjan<'a> {
    d: &'a DiGraph,
    index: usize,
    idx: Vec<usize>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<Vertex>,
    comps: Vec<Vec<Vertex>>,
}

impl Tarjan<'_> {
    fn connect(&mut self, v: Vertex) {
        self.idx[v] = self.index;
        self.low[v] = self.index;
        self.index += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        for w in self.d.out_neighbors(v) {
            if self.idx[w] == usize::MAX {
                self.connect(w);
                self.low[v] = self.low[v].min(self.low[w]);
            } else if self.on_stack[w] {
                self.low[v] = self.low[v].min(self.idx[w]);
            }
        }
        if self.low[v] == self.idx[v] {
            let mut comp = Vec::new();
            loop {
                let w = self.stack.pop().expect("tarjan stack underflow");
                self.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            self.comps.push(comp);
        }
    }
}

pub fn is_strong(d: &DiGraph) -> bool {
    d.vertex_count() <= 1 || strong_components(d).count() == 1
}

/// Forward closure over bit rows: all vertices reachable from `start`.
pub(crate) fn mask_closure(rows: &[u64], start: u64) -> u64 {
    let mut reached = start;
    loop {
        let mut next = reached;
        for v in BitIter(reached) {
            next |= rows[v];
        }
        if next == reached {
            return reached;
        }
        reached = next;
    }
}

/// Vertices reachable from `v` (including `v`).
pub fn reachable_from(d: &DiGraph, v: Vertex) -> u64 {
    let rows: Vec<u64> = d.vertices().map(|u| d.out_mask(u)).collect();
    mask_closure(&rows, 1 << v)
}

/// Vertices that can reach `v` (including `v`).
pub fn reaching(d: &DiGraph, v: Vertex) -> u64 {
    let rows: Vec<u64> = d.vertices().map(|u| d.in_mask(u)).collect();
    mask_closure(&rows, 1 << v)
}

/// Arc-connectivity λ: the minimum out-degree of a proper non-empty vertex
/// subset, computed as 2(n-1) unit-capacity max-flows against a fixed pivot.
/// Capacities honour arc multiplicities.
pub fn arc_connectivity(d: &DiGraph) -> Result<u32> {
    let n = d.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices);
    }
    let mut cap = vec![vec![0u32; n]; n];
    for u in d.vertices() {
        for v in d.out_neighbors(u) {
            cap[u][v] = d.multiplicity(u, v);
        }
    }
    let mut best = u32::MAX;
    for u in 1..n {
        best = best.min(max_flow(&cap, 0, u));
        if best == 0 {
            return Ok(0);
        }
        best = best.min(max_flow(&cap, u, 0));
        if best == 0 {
            return Ok(0);
        }
    }
    Ok(best)
}

fn max_flow(cap: &[Vec<u32>], s: usize, t: usize) -> u32 {
    let n = cap.len();
    let mut residual: Vec<Vec<u32>> = cap.to_vec();
    let mut flow = 0u32;
    loop {
        // BFS for an augmenting path.
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && residual[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            return flow;
        }
        let mut bottleneck = u32::MAX;
        let mut v = t;
        while v != s {
            let u = parent[v];
            bottleneck = bottleneck.min(residual[u][v]);
            v = u;
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            residual[u][v] -= bottleneck;
            residual[v][u] += bottleneck;
            v = u;
        }
        flow += bottleneck;
    }
}

/// Minimum semidegree δ⁰: the minimum over all in- and out-degrees.
pub fn min_semidegree(d: &DiGraph) -> u32 {
    d.vertices()
        .map(|v| d.out_degree(v).min(d.in_degree(v)))
        .min()
        .unwrap_or(0)
}

/// Exact independence number with a witness set, by branch and bound with a
/// greedy clique-cover upper bound.
pub fn independence_number(d: &DiGraph) -> Result<(u32, Vec<Vertex>)> {
    let n = d.vertex_count();
    if n > EXACT_SEARCH_LIMIT {
        return Err(Error::TooLarge(n, EXACT_SEARCH_LIMIT));
    }
    let und: Vec<u64> = d.vertices().map(|v| d.out_mask(v) | d.in_mask(v)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = (0u32, 0u64);
    mis_search(&und, all, 0, 0, &mut best);
    Ok((best.0, BitIter(best.1).collect()))
}

fn clique_cover_bound(und: &[u64], mut pool: u64) -> u32 {
    let mut cliques = 0;
    while pool != 0 {
        let v = pool.trailing_zeros() as usize;
        pool &= !(1 << v);
        let mut cand = pool & und[v];
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            pool &= !(1 << u);
            cand &= !(1 << u);
            cand &= und[u];
        }
        cliques += 1;
    }
    cliques
}

fn mis_search(und: &[u64], pool: u64, chosen: u64, size: u32, best: &mut (u32, u64)) {
    if pool == 0 {
        if size > best.0 {
            *best = (size, chosen);
        }
        return;
    }
    if size + clique_cover_bound(und, pool) <= best.0 {
        return;
    }
    // Pivot on the pool vertex of largest pool-degree, lowest index on ties.
    let mut pivot = usize::MAX;
    let mut pivot_deg = 0i32;
    for v in BitIter(pool) {
        let deg = (und[v] & pool).count_ones() as i32;
        if pivot == usize::MAX || deg > pivot_deg {
            pivot = v;
            pivot_deg = deg;
        }
    }
    let bit = 1u64 << pivot;
    mis_search(und, pool & !bit & !und[pivot], chosen | bit, size + 1, best);
    mis_search(und, pool & !bit, chosen, size, best);
}

pub fn is_semicomplete(d: &DiGraph) -> bool {
    let n = d.vertex_count();
    (0..n).all(|u| (u + 1..n).all(|v| d.adjacent(u, v)))
}

pub fn is_tournament(d: &DiGraph) -> bool {
    let n = d.vertex_count();
    (0..n).all(|u| (u + 1..n).all(|v| d.has_arc(u, v) != d.has_arc(v, u)))
        && d.arc_count() == (n * n.saturating_sub(1) / 2) as u64
}

/// A split of the vertex set into two semicomplete-inducing sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoBipartition {
    pub v1: Vec<Vertex>,
    pub v2: Vec<Vertex>,
}

impl CoBipartition {
    /// Guarantees a non-empty second side by moving the highest vertex over
    /// when needed. A singleton side is trivially semicomplete.
    pub fn normalized(mut self) -> CoBipartition {
        if self.v2.is_empty() {
            let v = self.v1.pop().expect("non-empty digraph");
            self.v2.push(v);
        } else if self.v1.is_empty() {
            let v = self.v2.pop().expect("non-empty digraph");
            self.v1.push(v);
        }
        self
    }
}

/// Two-colours the complement of the underlying graph. Present exactly when
/// that complement is bipartite. Vertices isolated in the complement land on
/// side one, so a semicomplete digraph yields `(V, ∅)`.
pub fn co_bipartition(d: &DiGraph) -> Option<CoBipartition> {
    let n = d.vertex_count();
    if n == 0 {
        return Some(CoBipartition {
            v1: vec![],
            v2: vec![],
        });
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let comp: Vec<u64> = d
        .vertices()
        .map(|v| all & !(d.out_mask(v) | d.in_mask(v)) & !(1 << v))
        .collect();
    let mut color = vec![u8::MAX; n];
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in BitIter(comp[u]) {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return None;
                }
            }
        }
    }
    let v1 = (0..n).filter(|&v| color[v] == 0).collect();
    let v2 = (0..n).filter(|&v| color[v] == 1).collect();
    Some(CoBipartition { v1, v2 })
}

/// In-generators: vertices reachable from every other vertex, i.e. feasible
/// in-branching roots. Exactly the unique terminal strong component, when it
/// is unique.
pub fn in_generators(d: &DiGraph) -> Vec<Vertex> {
    let scc = strong_components(d);
    if scc.terminal.len() == 1 {
        scc.components[scc.terminal[0]].clone()
    } else {
        Vec::new()
    }
}

/// Out-generators: vertices that reach every other vertex, i.e. feasible
/// out-branching roots.
pub fn out_generators(d: &DiGraph) -> Vec<Vertex> {
    let scc = strong_components(d);
    if scc.initial.len() == 1 {
        scc.components[scc.initial[0]].clone()
    } else {
        Vec::new()
    }
}

/// Spanning directed path honouring optional fixed endpoints.
///
/// Plain backtracking with degree-sorted branching; `None` means no such
/// path exists (in particular for non-strong inputs this answers honestly
/// rather than assuming structure).
pub fn hamiltonian_path(
    d: &DiGraph,
    fixed_start: Option<Vertex>,
    fixed_end: Option<Vertex>,
) -> Result<Option<Vec<Vertex>>> {
    let n = d.vertex_count();
    if n > HAMILTONIAN_LIMIT {
        return Err(Error::TooLarge(n, HAMILTONIAN_LIMIT));
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let starts: Vec<Vertex> = match fixed_start {
        Some(s) => vec![s],
        None => d.vertices().collect(),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for s in starts {
        if s >= n {
            return Err(Error::VertexOutOfRange(s, n));
        }
        let mut path = vec![s];
        if ham_extend(d, all, 1 << s, &mut path, fixed_end) {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

fn ham_extend(
    d: &DiGraph,
    all: u64,
    visited: u64,
    path: &mut Vec<Vertex>,
    fixed_end: Option<Vertex>,
) -> bool {
    if visited == all {
        return fixed_end.is_none_or(|e| *path.last().unwrap() == e);
    }
    let cur = *path.last().unwrap();
    if let Some(e) = fixed_end {
        if visited >> e & 1 == 1 {
            return false;
        }
    }
    // Dead-end prune: an unvisited vertex that can no longer be entered, or
    // can no longer be left (unless it may serve as the final vertex).
    let open = all & !visited;
    let mut stuck_exits = 0;
    for v in BitIter(open) {
        if d.in_mask(v) & (open | 1 << cur) & !(1 << v) == 0 {
            return false;
        }
        if d.out_mask(v) & open & !(1 << v) == 0 {
            stuck_exits += 1;
            if stuck_exits > 1 || fixed_end.is_some_and(|e| e != v) {
                return false;
            }
        }
    }
    let mut nexts: Vec<Vertex> = BitIter(d.out_mask(cur) & open).collect();
    nexts.sort_by_key(|&v| ((d.out_mask(v) & open).count_ones(), v));
    for v in nexts {
        path.push(v);
        if ham_extend(d, all, visited | 1 << v, path, fixed_end) {
            return true;
        }
        path.pop();
    }
    false
}

/// Directed cycle of the requested length through `v` in a strong
/// semicomplete digraph (default: Hamiltonian). Lengths 3..=n always exist
/// there; length 2 needs an actual 2-cycle.
pub fn hamiltonian_cycle_through(
    d: &DiGraph,
    v: Vertex,
    length: Option<usize>,
) -> Result<Vec<Vertex>> {
    let n = d.vertex_count();
    if v >= n {
        return Err(Error::VertexOutOfRange(v, n));
    }
    if !is_semicomplete(d) {
        return Err(Error::NotSemicomplete);
    }
    if !is_strong(d) {
        return Err(Error::NotStrong);
    }
    let len = length.unwrap_or(n);
    if len < 2 || len > n {
        return Err(Error::NoSuchCycle);
    }
    let mut cycle = vec![v];
    if cycle_extend(d, v, len, 1 << v, &mut cycle) {
        Ok(cycle)
    } else {
        Err(Error::NoSuchCycle)
    }
}

fn cycle_extend(
    d: &DiGraph,
    root: Vertex,
    len: usize,
    visited: u64,
    cycle: &mut Vec<Vertex>,
) -> bool {
    let cur = *cycle.last().unwrap();
    if cycle.len() == len {
        return d.has_arc(cur, root);
    }
    for v in BitIter(d.out_mask(cur) & !visited) {
        cycle.push(v);
        if cycle_extend(d, root, len, visited | 1 << v, cycle) {
            return true;
        }
        cycle.pop();
    }
    false
}

/// Brute-force digraph isomorphism for tiny orders (n <= 8): returns a map
/// `phi` with `phi[v_of_a] = v_of_b` when the arc sets (with multiplicities)
/// correspond. Lexicographically first map wins.
pub fn isomorphism(a: &DiGraph, b: &DiGraph) -> Option<Vec<Vertex>> {
    let n = a.vertex_count();
    if b.vertex_count() != n || a.arc_count() != b.arc_count() {
        return None;
    }
    assert!(n <= 8, "isomorphism search limited to 8 vertices");
    let degree_profile = |d: &DiGraph, v: Vertex| (d.out_degree(v), d.in_degree(v));
    let mut phi: Vec<Vertex> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn place(
        a: &DiGraph,
        b: &DiGraph,
        phi: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
        profile: &impl Fn(&DiGraph, Vertex) -> (u32, u32),
    ) -> bool {
        let v = phi.len();
        if v == a.vertex_count() {
            return true;
        }
        for w in 0..b.vertex_count() {
            if used[w] || profile(a, v) != profile(b, w) {
                continue;
            }
            let consistent = (0..v).all(|u| {
                a.multiplicity(u, v) == b.multiplicity(phi[u], w)
                    && a.multiplicity(v, u) == b.multiplicity(w, phi[u])
            });
            if !consistent {
                continue;
            }
            phi.push(w);
            used[w] = true;
            if place(a, b, phi, used, profile) {
                return true;
            }
            phi.pop();
            used[w] = false;
        }
        false
    }
    if place(a, b, &mut phi, &mut used, &degree_profile) {
        Some(phi)
    } else {
        None
    }
}

/// One of the two structures guaranteed on nine or more vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RamseyWitness {
    IndependentTriple([Vertex; 3]),
    Clique4([Vertex; 4]),
}

/// Finds an independent set of size 3 or a clique of size 4 by exhaustive
/// search (lexicographically first witness; independent triple preferred).
pub fn ramsey_witness(d: &DiGraph) -> Result<RamseyWitness> {
    let n = d.vertex_count();
    if n < 9 {
        return Err(Error::TooSmall(n, 9));
    }
    for i in 0..n {
        for j in i + 1..n {
            if d.adjacent(i, j) {
                continue;
            }
            for k in j + 1..n {
                if !d.adjacent(i, k) && !d.adjacent(j, k) {
                    return Ok(RamseyWitness::IndependentTriple([i, j, k]));
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !d.adjacent(i, j) {
                continue;
            }
            for k in j + 1..n {
                if !(d.adjacent(i, k) && d.adjacent(j, k)) {
                    continue;
                }
                for l in k + 1..n {
                    if d.adjacent(i, l) && d.adjacent(j, l) && d.adjacent(k, l) {
                        return Ok(RamseyWitness::Clique4([i, j, k, l]));
                    }
                }
            }
        }
    }
    Err(Error::Internal(
        "nine vertices admit neither witness".into(),
    ))
}
