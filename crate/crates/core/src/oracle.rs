//! Exact `(d,h)` decision for small graphs.
//!
//! The search assigns edges one at a time to `D` or `H` in a fixed order
//! (largest endpoint degree first, ties lexicographic), trying `H` first.
//! Three prunings cut the tree, each of which can be switched off:
//!
//! * **H caps.** An edge may go to `H` only while both ends have spare
//!   `H`-degree; once a vertex is full its remaining edges are forced into
//!   `D`. For `h = 1` this makes the `H` branches enumerate matchings
//!   directly.
//! * **Count bound.** A `d`-degenerate graph on `n` vertices has at most
//!   `dn - d(d+1)/2` edges. Edges that cannot fit in the remaining `H`
//!   capacity are counted as `D` in advance.
//! * **Peeling.** If the `D` edges placed so far already contain a subgraph
//!   of minimum degree above `d`, no completion is `d`-degenerate.
//!
//! With all three off the search is a plain enumeration of the `2^m`
//! bipartitions, each leaf tested against the contract.
//!
//! A feasible answer always carries a witness that has passed
//! [`check_dh`]. Running out of budget is an error, never a verdict.
//!
//! ```
//! use dhdecomp::{gen, oracle};
//!
//! let ico = gen::named_solid("icosahedron").unwrap();
//! let opts = oracle::OracleOptions::default();
//! assert!(!oracle::exact_decide(ico.graph(), 4, 0, &opts).unwrap().feasible());
//! assert!(oracle::exact_decide(ico.graph(), 4, 1, &opts).unwrap().feasible());
//! ```

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::OracleError;
use crate::verify::{check_dh, degeneracy_ordering, ordering_to_orientation, DecompPair};
use crate::{edge, PlaneGraph, Vertex};

/// Edge budget of exhaustive mode.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 40;
/// Edge budget of pruned mode.
pub const PRUNED_EDGE_LIMIT: usize = 120;

/// Number of leading branch decisions split off as independent subproblems.
const SPLIT_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOptions {
    pub prune_h_caps: bool,
    pub prune_count: bool,
    pub prune_peeling: bool,
    /// Largest edge count accepted.
    pub max_edges: usize,
    /// Largest number of search nodes visited before giving up.
    pub max_nodes: u64,
    pub workers: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            prune_h_caps: true,
            prune_count: true,
            prune_peeling: true,
            max_edges: PRUNED_EDGE_LIMIT,
            max_nodes: 4_000_000_000,
            workers: 1,
        }
    }
}

impl OracleOptions {
    /// Every pruning off and the exhaustive edge budget.
    pub fn exhaustive() -> Self {
        OracleOptions {
            prune_h_caps: false,
            prune_count: false,
            prune_peeling: false,
            max_edges: EXHAUSTIVE_EDGE_LIMIT,
            ..Self::default()
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        !(self.prune_h_caps || self.prune_count || self.prune_peeling)
    }
}

/// Outcome of one exact decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub d: usize,
    pub h: usize,
    pub witness: Option<DecompPair>,
    /// Search nodes visited, in the sequential order, up to the verdict.
    pub nodes: u64,
}

impl Decision {
    pub fn feasible(&self) -> bool {
        self.witness.is_some()
    }
}

/// Smallest feasible `h` for a fixed `d`, with its witness and the
/// refutations of every smaller `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinH {
    pub d: usize,
    pub h: usize,
    pub witness: DecompPair,
    pub refuted: Vec<Decision>,
}

/// Decides whether `g` is `(d,h)`-decomposable.
pub fn exact_decide(
    g: &PlaneGraph,
    d: usize,
    h: usize,
    opts: &OracleOptions,
) -> Result<Decision, OracleError> {
    let m = g.num_edges();
    if m > opts.max_edges {
        return Err(OracleError::TooLarge {
            edges: m,
            limit: opts.max_edges,
        });
    }
    let problem = Problem::new(g, d, h, opts);
    let (frontier, split_nodes) = problem.frontier();
    let results = problem.solve_all(&frontier);

    let mut nodes = split_nodes;
    for r in results {
        let r = r.expect("every subproblem before the first witness is solved");
        nodes += r.nodes;
        if nodes > opts.max_nodes || r.exhausted {
            return Err(OracleError::Budget {
                limit: opts.max_nodes,
            });
        }
        if let Some(assign) = r.found {
            let witness = problem.witness(g, &assign);
            let report = check_dh(g, &witness, d, h);
            assert!(report.passed(), "oracle witness rejected:\n{report}");
            return Ok(Decision {
                d,
                h,
                witness: Some(witness),
                nodes,
            });
        }
    }
    Ok(Decision {
        d,
        h,
        witness: None,
        nodes,
    })
}

/// The least `h` at which `g` is `(d,h)`-decomposable.
pub fn min_h(g: &PlaneGraph, d: usize, opts: &OracleOptions) -> Result<MinH, OracleError> {
    let mut refuted = Vec::new();
    // h = max degree always works with D empty, so the loop ends.
    for h in 0.. {
        let dec = exact_decide(g, d, h, opts)?;
        match dec.witness {
            Some(witness) => {
                return Ok(MinH {
                    d,
                    h,
                    witness,
                    refuted,
                })
            }
            None => refuted.push(dec),
        }
    }
    unreachable!()
}

const FREE: u8 = 0;
const IN_D: u8 = 1;
const IN_H: u8 = 2;

struct Problem<'a> {
    n: usize,
    ids: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    d: usize,
    h: usize,
    bound: usize,
    opts: &'a OracleOptions,
}

struct SubResult {
    found: Option<Vec<u8>>,
    exhausted: bool,
    nodes: u64,
}

impl<'a> Problem<'a> {
    fn new(g: &PlaneGraph, d: usize, h: usize, opts: &'a OracleOptions) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let index = |v: Vertex| ids.binary_search(&v).expect("vertex listed");
        let mut list = g.edges();
        let key = |&(u, v): &(Vertex, Vertex)| g.degree(u).max(g.degree(v));
        list.sort_by(|a, b| key(b).cmp(&key(a)).then(a.cmp(b)));
        let edges: Vec<(usize, usize)> = list.iter().map(|&(u, v)| (index(u), index(v))).collect();
        let n = ids.len();
        let mut incident = vec![Vec::new(); n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            incident[a].push(i);
            incident[b].push(i);
        }
        let bound = if n > d {
            d * n - d * (d + 1) / 2
        } else {
            n * n.saturating_sub(1) / 2
        };
        Problem {
            n,
            ids,
            edges,
            incident,
            d,
            h,
            bound,
            opts,
        }
    }

    /// Runs the first `SPLIT_DEPTH` branch decisions and returns the open
    /// states in depth-first order.
    fn frontier(&self) -> (Vec<Vec<u8>>, u64) {
        let mut s = State::new(self, None, u64::MAX);
        let mut out = Vec::new();
        s.collect = Some((SPLIT_DEPTH, &mut out));
        if s.consistent(self) {
            let _ = s.search(self, 0, 0);
        }
        let nodes = s.nodes;
        drop(s);
        (out, nodes)
    }

    /// Solves subproblems in index order semantics: the answer is the one a
    /// single worker walking them in order would report.
    fn solve_all(&self, frontier: &[Vec<u8>]) -> Vec<Option<SubResult>> {
        let workers = self.opts.workers.max(1);
        if workers == 1 {
            let mut out = Vec::new();
            let mut left = self.opts.max_nodes;
            for start in frontier {
                let r = self.solve(start, left);
                left = left.saturating_sub(r.nodes);
                let stop = r.found.is_some() || r.exhausted;
                out.push(Some(r));
                if stop {
                    break;
                }
            }
            return out;
        }
        let next = AtomicUsize::new(0);
        let best = AtomicUsize::new(usize::MAX);
        let slots: Mutex<Vec<Option<SubResult>>> =
            Mutex::new((0..frontier.len()).map(|_| None).collect());
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    if i >= frontier.len() || i > best.load(Ordering::SeqCst) {
                        break;
                    }
                    let r = self.solve(&frontier[i], self.opts.max_nodes);
                    if r.found.is_some() || r.exhausted {
                        best.fetch_min(i, Ordering::SeqCst);
                    }
                    slots.lock().expect("no worker panics")[i] = Some(r);
                });
            }
        });
        let mut slots = slots.into_inner().expect("no worker panics");
        let cut = best.into_inner();
        if cut != usize::MAX {
            slots.truncate(cut + 1);
        }
        slots
    }

    fn solve(&self, start: &[u8], cap: u64) -> SubResult {
        let mut s = State::new(self, Some(start), cap);
        let out = if s.consistent(self) {
            s.search(self, 0, 0)
        } else {
            Ok(false)
        };
        match out {
            Ok(true) => SubResult {
                found: Some(s.assign.clone()),
                exhausted: false,
                nodes: s.nodes,
            },
            Ok(false) => SubResult {
                found: None,
                exhausted: false,
                nodes: s.nodes,
            },
            Err(Exhausted) => SubResult {
                found: None,
                exhausted: true,
                nodes: s.nodes,
            },
        }
    }

    fn witness(&self, g: &PlaneGraph, assign: &[u8]) -> DecompPair {
        let mut hedges = Vec::new();
        let mut dset = std::collections::BTreeSet::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let e = edge(self.ids[a], self.ids[b]);
            match assign[i] {
                IN_H => hedges.push(e),
                _ => {
                    dset.insert(e);
                }
            }
        }
        let dg = g.edge_subgraph(|u, v| dset.contains(&(u, v)));
        let sigma = degeneracy_ordering(&dg, self.d).expect("leaf D-part is d-degenerate");
        let arcs = ordering_to_orientation(&dg, &sigma).expect("ordering covers D");
        DecompPair::from_parts(arcs, hedges)
    }
}

struct Exhausted;

struct State<'p> {
    assign: Vec<u8>,
    hdeg: Vec<usize>,
    ddeg: Vec<usize>,
    d_count: usize,
    free: usize,
    trail: Vec<usize>,
    nodes: u64,
    cap: u64,
    scratch_deg: Vec<usize>,
    scratch_stack: Vec<usize>,
    collect: Option<(usize, &'p mut Vec<Vec<u8>>)>,
}

impl<'p> State<'p> {
    fn new(p: &Problem, start: Option<&[u8]>, cap: u64) -> Self {
        let m = p.edges.len();
        let mut s = State {
            assign: vec![FREE; m],
            hdeg: vec![0; p.n],
            ddeg: vec![0; p.n],
            d_count: 0,
            free: m,
            trail: Vec::new(),
            nodes: 0,
            cap,
            scratch_deg: vec![0; p.n],
            scratch_stack: Vec::new(),
            collect: None,
        };
        if let Some(start) = start {
            for (i, &a) in start.iter().enumerate() {
                if a != FREE {
                    s.set(p, i, a);
                }
            }
            s.trail.clear();
        }
        s
    }

    fn set(&mut self, p: &Problem, e: usize, a: u8) {
        let (u, v) = p.edges[e];
        self.assign[e] = a;
        self.free -= 1;
        if a == IN_H {
            self.hdeg[u] += 1;
            self.hdeg[v] += 1;
        } else {
            self.ddeg[u] += 1;
            self.ddeg[v] += 1;
            self.d_count += 1;
        }
        self.trail.push(e);
    }

    fn undo_to(&mut self, p: &Problem, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().expect("trail above mark");
            let (u, v) = p.edges[e];
            if self.assign[e] == IN_H {
                self.hdeg[u] -= 1;
                self.hdeg[v] -= 1;
            } else {
                self.ddeg[u] -= 1;
                self.ddeg[v] -= 1;
                self.d_count -= 1;
            }
            self.assign[e] = FREE;
            self.free += 1;
        }
    }

    /// Forces the free edges of every saturated vertex among `ends` into D.
    fn propagate(&mut self, p: &Problem, ends: [usize; 2]) {
        for x in ends {
            if self.hdeg[x] < p.h {
                continue;
            }
            for &f in &p.incident[x] {
                if self.assign[f] == FREE {
                    self.set(p, f, IN_D);
                }
            }
        }
    }

    fn consistent(&mut self, p: &Problem) -> bool {
        if p.opts.prune_h_caps && self.hdeg.iter().any(|&k| k > p.h) {
            return false;
        }
        if p.opts.prune_count {
            let spare: usize = self.hdeg.iter().map(|&k| p.h.saturating_sub(k)).sum::<usize>() / 2;
            if self.d_count + self.free.saturating_sub(spare) > p.bound {
                return false;
            }
        }
        if p.opts.prune_peeling && self.has_core(p) {
            return false;
        }
        true
    }

    fn leaf_ok(&mut self, p: &Problem) -> bool {
        self.hdeg.iter().all(|&k| k <= p.h) && !self.has_core(p)
    }

    /// Whether the D edges placed so far contain a subgraph of minimum
    /// degree above `d`.
    fn has_core(&mut self, p: &Problem) -> bool {
        let deg = &mut self.scratch_deg;
        deg.copy_from_slice(&self.ddeg);
        let stack = &mut self.scratch_stack;
        stack.clear();
        let mut alive = p.n;
        for (v, &k) in deg.iter().enumerate() {
            if k <= p.d {
                stack.push(v);
            }
        }
        // A vertex is pushed once: when its degree first drops to d.
        while let Some(v) = stack.pop() {
            alive -= 1;
            for &e in &p.incident[v] {
                if self.assign[e] != IN_D {
                    continue;
                }
                let (a, b) = p.edges[e];
                let w = if a == v { b } else { a };
                if deg[w] > p.d {
                    deg[w] -= 1;
                    if deg[w] == p.d {
                        stack.push(w);
                    }
                }
            }
        }
        alive > 0
    }

    fn search(&mut self, p: &Problem, mut pos: usize, depth: usize) -> Result<bool, Exhausted> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Exhausted);
        }
        while pos < p.edges.len() && self.assign[pos] != FREE {
            pos += 1;
        }
        if pos == p.edges.len() {
            if self.collect.is_some() {
                return Ok(self.leaf_ok(p) && self.record());
            }
            return Ok(self.leaf_ok(p));
        }
        if let Some((at, _)) = &self.collect {
            if depth == *at {
                return Ok(self.record());
            }
        }
        let (u, v) = p.edges[pos];
        let h_allowed = !p.opts.prune_h_caps || (self.hdeg[u] < p.h && self.hdeg[v] < p.h);
        for a in [IN_H, IN_D] {
            if a == IN_H && !h_allowed {
                continue;
            }
            let mark = self.trail.len();
            self.set(p, pos, a);
            if a == IN_H && p.opts.prune_h_caps {
                self.propagate(p, [u, v]);
            }
            if self.consistent(p) && self.search(p, pos + 1, depth + 1)? {
                return Ok(true);
            }
            self.undo_to(p, mark);
        }
        Ok(false)
    }

    /// Frontier mode: stores the current state and reports "not found" so
    /// the enumeration continues.
    fn record(&mut self) -> bool {
        let snapshot = self.assign.clone();
        if let Some((_, out)) = &mut self.collect {
            out.push(snapshot);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn cycle(n: u32) -> PlaneGraph {
        let rot = (1..=n)
            .map(|v| vec![if v == n { 1 } else { v + 1 }, if v == 1 { n } else { v - 1 }])
            .collect();
        PlaneGraph::from_rotations(rot).unwrap()
    }

    fn solid(name: &str) -> PlaneGraph {
        gen::named_solid(name).unwrap().graph().clone()
    }

    fn brute_force(g: &PlaneGraph, d: usize, h: usize) -> bool {
        let edges = g.edges();
        assert!(edges.len() <= 20);
        (0u32..1 << edges.len()).any(|mask| {
            let hset: Vec<_> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
            let hmax = g
                .vertices()
                .map(|v| hset.iter().filter(|&&(a, b)| a == v || b == v).count())
                .max()
                .unwrap_or(0);
            hmax <= h
                && degeneracy_ordering(&g.edge_subgraph(|a, b| !hset.contains(&(a, b))), d).is_some()
        })
    }

    #[test]
    fn five_cycle() {
        let c5 = cycle(5);
        for opts in [OracleOptions::default(), OracleOptions::exhaustive()] {
            assert!(!exact_decide(&c5, 1, 0, &opts).unwrap().feasible());
            let yes = exact_decide(&c5, 1, 1, &opts).unwrap();
            assert!(check_dh(&c5, &yes.witness.unwrap(), 1, 1).passed());
        }
    }

    #[test]
    fn k4_min_h() {
        let k4 = solid("tetrahedron");
        let r = min_h(&k4, 3, &OracleOptions::default()).unwrap();
        assert_eq!(r.h, 0);
        assert!(r.refuted.is_empty());
        assert_eq!(min_h(&k4, 2, &OracleOptions::default()).unwrap().h, 1);
    }

    #[test]
    fn octahedron_d2_matches_brute_force() {
        let oct = solid("octahedron");
        assert_eq!(oct.num_edges(), 12);
        let golden = (0..).find(|&h| brute_force(&oct, 2, h)).unwrap();
        assert_eq!(golden, 2);
        let r = min_h(&oct, 2, &OracleOptions::default()).unwrap();
        assert_eq!(r.h, golden);
        assert_eq!(r.refuted.len(), golden);
    }

    #[test]
    fn icosahedron_sharpness() {
        let ico = solid("icosahedron");
        let opts = OracleOptions::default();
        assert!(!exact_decide(&ico, 4, 0, &opts).unwrap().feasible());
        assert!(!exact_decide(&ico, 3, 1, &opts).unwrap().feasible());
        assert!(exact_decide(&ico, 3, 2, &opts).unwrap().feasible());
        assert!(exact_decide(&ico, 2, 6, &opts).unwrap().feasible());
    }

    #[test]
    fn prunings_agree_on_small_graphs() {
        let graphs = [cycle(5), solid("tetrahedron"), solid("octahedron"), cycle(7)];
        for g in &graphs {
            for d in 0..4 {
                for h in 0..3 {
                    let want = brute_force(g, d, h);
                    for mask in 0..8u8 {
                        let opts = OracleOptions {
                            prune_h_caps: mask & 1 != 0,
                            prune_count: mask & 2 != 0,
                            prune_peeling: mask & 4 != 0,
                            ..OracleOptions::default()
                        };
                        let got = exact_decide(g, d, h, &opts).unwrap();
                        assert_eq!(got.feasible(), want, "d={d} h={h} mask={mask}");
                    }
                }
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_the_answer() {
        let ico = solid("icosahedron");
        for (d, h) in [(3, 1), (3, 2), (2, 3), (4, 1)] {
            let one = exact_decide(&ico, d, h, &OracleOptions::default()).unwrap();
            let four = exact_decide(
                &ico,
                d,
                h,
                &OracleOptions {
                    workers: 4,
                    ..OracleOptions::default()
                },
            )
            .unwrap();
            assert_eq!(one, four);
        }
    }

    #[test]
    fn budgets_are_errors() {
        let ico = solid("icosahedron");
        let tight = OracleOptions {
            max_edges: 20,
            ..OracleOptions::default()
        };
        assert_eq!(
            exact_decide(&ico, 3, 1, &tight),
            Err(OracleError::TooLarge { edges: 30, limit: 20 })
        );
        let few = OracleOptions {
            max_nodes: 10,
            ..OracleOptions::default()
        };
        assert_eq!(
            exact_decide(&ico, 3, 1, &few),
            Err(OracleError::Budget { limit: 10 })
        );
    }
}
