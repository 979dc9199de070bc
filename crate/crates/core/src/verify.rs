//! Degeneracy, orientations and the decomposition checkers.
//!
//! A graph is `d`-degenerate when some ordering gives every vertex at most
//! `d` earlier neighbors; orienting each edge from its later to its earlier
//! end turns such an ordering into an acyclic orientation of out-degree at
//! most `d`, and a topological order of an acyclic orientation turns it
//! back. The checkers here test decompositions `(D, H)` against the plain
//! `(d,h)` contract and against the rooted conditions the recursive
//! constructions maintain.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::labeling::Labeling;
use crate::plane::{BoundaryContext, NearTriangulation, PlaneGraph};
use crate::region::Region;
use crate::{edge, Edge, Vertex};

/// An orientation `D` of some edges together with an edge set `H`.
///
/// Arcs are `(tail, head)`; hedges are stored with the smaller end first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecompPair {
    pub arcs: BTreeSet<(Vertex, Vertex)>,
    pub hedges: BTreeSet<Edge>,
}

impl DecompPair {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts(
        arcs: impl IntoIterator<Item = (Vertex, Vertex)>,
        hedges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Self {
        DecompPair {
            arcs: arcs.into_iter().collect(),
            hedges: hedges.into_iter().map(|(u, v)| edge(u, v)).collect(),
        }
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.arcs.range((v, 0)..=(v, Vertex::MAX)).count()
    }

    pub fn out_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.arcs.range((v, 0)..=(v, Vertex::MAX)).map(|&(_, w)| w).collect()
    }

    pub fn h_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.hedges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn h_degree(&self, v: Vertex) -> usize {
        self.h_neighbors(v).len()
    }

    pub fn is_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn is_hedge(&self, u: Vertex, v: Vertex) -> bool {
        self.hedges.contains(&edge(u, v))
    }

    pub fn max_out_degree(&self) -> usize {
        degree_map(self.arcs.iter().map(|&(u, _)| u)).values().copied().max().unwrap_or(0)
    }

    pub fn max_h_degree(&self) -> usize {
        degree_map(self.hedges.iter().flat_map(|&(u, v)| [u, v]))
            .values()
            .copied()
            .max()
            .unwrap_or(0)
    }
}

fn degree_map(ends: impl Iterator<Item = Vertex>) -> HashMap<Vertex, usize> {
    let mut m = HashMap::new();
    for v in ends {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

/// A vertex ordering `σ`; earlier means smaller position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    order: Vec<Vertex>,
    pos: HashMap<Vertex, usize>,
}

impl Serialize for DegeneracyOrdering {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.order.serialize(s)
    }
}

impl DegeneracyOrdering {
    /// Fails if a vertex repeats.
    pub fn new(order: Vec<Vertex>) -> Result<Self, GraphError> {
        let mut pos = HashMap::with_capacity(order.len());
        for (i, &v) in order.iter().enumerate() {
            if pos.insert(v, i).is_some() {
                return Err(GraphError::Contract(format!("vertex {v} appears twice in the ordering")));
            }
        }
        Ok(DegeneracyOrdering { order, pos })
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.pos.get(&v).copied()
    }

    /// True when the ordering is a permutation of the vertices of `g`.
    pub fn covers(&self, g: &PlaneGraph) -> bool {
        self.order.len() == g.n() && g.vertices().all(|v| self.pos.contains_key(&v))
    }

    /// Neighbors of `v` in `g` placed before `v`.
    pub fn earlier_neighbors(&self, g: &PlaneGraph, v: Vertex) -> usize {
        let p = self.pos[&v];
        g.rotation(v).iter().filter(|w| self.pos[w] < p).count()
    }

    /// Largest earlier-neighbor count over all vertices.
    pub fn max_earlier(&self, g: &PlaneGraph) -> usize {
        g.vertices().map(|v| self.earlier_neighbors(g, v)).max().unwrap_or(0)
    }
}

/// Min-degree peeling with ties broken by smallest id. Returns the deletion
/// order and, for each deleted vertex, its degree at deletion time.
pub fn peel(g: &PlaneGraph) -> (Vec<Vertex>, Vec<usize>) {
    let cap = g.max_id() as usize + 1;
    let mut deg = vec![0usize; cap];
    let mut gone = vec![false; cap];
    let mut heap = BinaryHeap::new();
    for v in g.vertices() {
        deg[v as usize] = g.degree(v);
        heap.push(Reverse((deg[v as usize], v)));
    }
    let mut order = Vec::with_capacity(g.n());
    let mut at = Vec::with_capacity(g.n());
    while let Some(Reverse((d, v))) = heap.pop() {
        if gone[v as usize] || d != deg[v as usize] {
            continue;
        }
        gone[v as usize] = true;
        order.push(v);
        at.push(d);
        for &w in g.rotation(v) {
            if !gone[w as usize] {
                deg[w as usize] -= 1;
                heap.push(Reverse((deg[w as usize], w)));
            }
        }
    }
    (order, at)
}

/// The degeneracy of `g`: the largest degree met while peeling.
pub fn degeneracy(g: &PlaneGraph) -> usize {
    peel(g).1.into_iter().max().unwrap_or(0)
}

/// A `d`-degenerate ordering of `g`, or `None` when `g` has a subgraph of
/// minimum degree above `d`.
///
/// The ordering is the peeling order reversed: a vertex removed with at most
/// `d` remaining neighbors sees exactly those neighbors before it.
pub fn degeneracy_ordering(g: &PlaneGraph, d: usize) -> Option<DegeneracyOrdering> {
    let (mut order, at) = peel(g);
    if at.iter().any(|&k| k > d) {
        return None;
    }
    order.reverse();
    Some(DegeneracyOrdering::new(order).expect("peeling visits each vertex once"))
}

/// The peeling residue: the vertices left when every vertex of degree at
/// most `d` has been removed repeatedly. Empty exactly when `g` is
/// `d`-degenerate.
pub fn residue(g: &PlaneGraph, d: usize) -> Vec<Vertex> {
    let (order, at) = peel(g);
    match at.iter().position(|&k| k > d) {
        Some(i) => {
            let mut r = order[i..].to_vec();
            r.sort_unstable();
            r
        }
        None => Vec::new(),
    }
}

/// Orients every edge of `g` from its later to its earlier end under `σ`.
pub fn ordering_to_orientation(
    g: &PlaneGraph,
    sigma: &DegeneracyOrdering,
) -> Result<Vec<(Vertex, Vertex)>, GraphError> {
    if !sigma.covers(g) {
        return Err(GraphError::Contract(
            "ordering is not a permutation of the graph's vertices".into(),
        ));
    }
    Ok(g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            if sigma.pos[&u] > sigma.pos[&v] {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect())
}

/// An ordering of the arc endpoints in which every arc points from a later
/// vertex to an earlier one. Among the valid orders, the one that always
/// places the smallest available id next.
pub fn orientation_to_ordering(arcs: &[(Vertex, Vertex)]) -> Result<DegeneracyOrdering, GraphError> {
    let mut out: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut ins: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for &(u, v) in arcs {
        *out.entry(u).or_insert(0) += 1;
        out.entry(v).or_insert(0);
        ins.entry(v).or_default().push(u);
    }
    let mut ready: BinaryHeap<Reverse<Vertex>> =
        out.iter().filter(|(_, &k)| k == 0).map(|(&v, _)| Reverse(v)).collect();
    let mut order = Vec::with_capacity(out.len());
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &u in ins.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            let k = out.get_mut(&u).expect("tail recorded");
            *k -= 1;
            if *k == 0 {
                ready.push(Reverse(u));
            }
        }
    }
    if order.len() < out.len() {
        let placed: BTreeSet<Vertex> = order.iter().copied().collect();
        return Err(GraphError::DirectedCycle(cycle_among(arcs, &placed)));
    }
    DegeneracyOrdering::new(order)
}

/// A directed cycle among arcs whose ends are both outside `placed`.
fn cycle_among(arcs: &[(Vertex, Vertex)], placed: &BTreeSet<Vertex>) -> Vec<Vertex> {
    let mut succ: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for &(u, v) in arcs {
        if !placed.contains(&u) && !placed.contains(&v) {
            succ.entry(u).or_insert(v);
        }
    }
    let Some((&start, _)) = succ.iter().next() else {
        return Vec::new();
    };
    let mut path = Vec::new();
    let mut idx = HashMap::new();
    let mut v = start;
    loop {
        if let Some(&i) = idx.get(&v) {
            return path[i..].to_vec();
        }
        idx.insert(v, path.len());
        path.push(v);
        v = succ[&v];
    }
}

/// A measured failure of one condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: Option<Vertex>,
    pub out_degree: Option<usize>,
    pub h_degree: Option<usize>,
    pub b: Option<u8>,
    pub detail: String,
}

impl Violation {
    fn at(v: Vertex, detail: impl Into<String>) -> Self {
        Violation {
            vertex: Some(v),
            out_degree: None,
            h_degree: None,
            b: None,
            detail: detail.into(),
        }
    }

    fn global(detail: impl Into<String>) -> Self {
        Violation {
            vertex: None,
            out_degree: None,
            h_degree: None,
            b: None,
            detail: detail.into(),
        }
    }

    fn degrees(mut self, out: usize, h: usize) -> Self {
        self.out_degree = Some(out);
        self.h_degree = Some(h);
        self
    }

    fn with_b(mut self, b: u8) -> Self {
        self.b = Some(b);
        self
    }
}

/// Outcome of one condition; only the first violation is kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub condition: String,
    pub passed: bool,
    pub violation: Option<Violation>,
}

impl Verdict {
    fn new(condition: &str, violation: Option<Violation>) -> Self {
        Verdict {
            condition: condition.to_string(),
            passed: violation.is_none(),
            violation,
        }
    }
}

/// Verdicts for every condition of one contract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub contract: String,
    pub verdicts: Vec<Verdict>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, condition: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.condition == condition)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.contract, if self.passed() { "pass" } else { "FAIL" })?;
        for v in &self.verdicts {
            write!(f, "  {:<12} {}", v.condition, if v.passed { "pass" } else { "FAIL" })?;
            if let Some(x) = &v.violation {
                if let Some(w) = x.vertex {
                    write!(f, " at {w}")?;
                }
                if let Some(d) = x.out_degree {
                    write!(f, " out={d}")?;
                }
                if let Some(h) = x.h_degree {
                    write!(f, " h={h}")?;
                }
                if let Some(b) = x.b {
                    write!(f, " b={b}")?;
                }
                write!(f, ": {}", x.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Exact-partition check: every edge of `g` is an arc or a hedge, never both,
/// never an arc both ways, and nothing else is listed.
fn partition_violation(g: &PlaneGraph, p: &DecompPair) -> Option<Violation> {
    for &(u, v) in &p.arcs {
        if !g.contains(u) || !g.contains(v) || !g.has_edge(u, v) {
            return Some(Violation::global(format!("arc ({u},{v}) is not an edge")));
        }
        if p.arcs.contains(&(v, u)) {
            return Some(Violation::global(format!("edge {u}{v} is oriented both ways")));
        }
        if p.hedges.contains(&edge(u, v)) {
            return Some(Violation::global(format!("edge {u}{v} is both an arc and a hedge")));
        }
    }
    for &(u, v) in &p.hedges {
        if !g.contains(u) || !g.contains(v) || !g.has_edge(u, v) {
            return Some(Violation::global(format!("hedge {u}{v} is not an edge")));
        }
    }
    for (u, v) in g.edges() {
        if !p.arcs.contains(&(u, v)) && !p.arcs.contains(&(v, u)) && !p.hedges.contains(&(u, v)) {
            return Some(Violation::global(format!("edge {u}{v} is in neither part")));
        }
    }
    None
}

fn acyclic_violation(p: &DecompPair) -> Option<Violation> {
    let arcs: Vec<_> = p.arcs.iter().copied().collect();
    match orientation_to_ordering(&arcs) {
        Ok(_) => None,
        Err(GraphError::DirectedCycle(c)) => {
            let mut v = Violation::global(format!("directed cycle {c:?}"));
            v.vertex = c.first().copied();
            Some(v)
        }
        Err(e) => Some(Violation::global(e.to_string())),
    }
}

/// The plain `(d,h)` contract: exact partition, `D` acyclic with out-degree
/// at most `d`, and `H` of maximum degree at most `h`.
pub fn check_dh(g: &PlaneGraph, p: &DecompPair, d: usize, h: usize) -> ConditionReport {
    let mut out_v = None;
    let mut h_v = None;
    for v in g.vertices() {
        let (o, k) = (p.out_degree(v), p.h_degree(v));
        if o > d && out_v.is_none() {
            out_v = Some(Violation::at(v, format!("out-degree exceeds {d}")).degrees(o, k));
        }
        if k > h && h_v.is_none() {
            h_v = Some(Violation::at(v, format!("H-degree exceeds {h}")).degrees(o, k));
        }
    }
    ConditionReport {
        contract: format!("({d},{h})-decomposition"),
        verdicts: vec![
            Verdict::new("partition", partition_violation(g, p)),
            Verdict::new("acyclic", acyclic_violation(p)),
            Verdict::new("out-degree", out_v),
            Verdict::new("h-degree", h_v),
        ],
    }
}

/// Degree data for the rooted checks, read either from a `DecompPair` or
/// from labels written in place.
pub(crate) trait Piece {
    fn region(&self) -> &Region<'_>;
    fn out_degree(&self, v: Vertex) -> usize;
    fn h_degree(&self, v: Vertex) -> usize;
    fn out_neighbors(&self, v: Vertex) -> Vec<Vertex>;
    fn h_neighbors(&self, v: Vertex) -> Vec<Vertex>;
}

struct PairPiece<'a> {
    r: Region<'a>,
    out: HashMap<Vertex, Vec<Vertex>>,
    hn: HashMap<Vertex, Vec<Vertex>>,
}

impl<'a> PairPiece<'a> {
    fn new(t: &'a NearTriangulation, p: &DecompPair) -> Self {
        let mut out: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
        let mut hn: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
        for &(u, v) in &p.arcs {
            out.entry(u).or_default().push(v);
        }
        for &(u, v) in &p.hedges {
            hn.entry(u).or_default().push(v);
            hn.entry(v).or_default().push(u);
        }
        PairPiece {
            r: Region::whole(t),
            out,
            hn,
        }
    }
}

impl Piece for PairPiece<'_> {
    fn region(&self) -> &Region<'_> {
        &self.r
    }
    fn out_degree(&self, v: Vertex) -> usize {
        self.out.get(&v).map_or(0, Vec::len)
    }
    fn h_degree(&self, v: Vertex) -> usize {
        self.hn.get(&v).map_or(0, Vec::len)
    }
    fn out_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.out.get(&v).cloned().unwrap_or_default()
    }
    fn h_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.hn.get(&v).cloned().unwrap_or_default()
    }
}

pub(crate) struct LabeledPiece<'a, 'g> {
    pub r: &'a Region<'g>,
    pub lab: &'a Labeling<'g>,
}

impl Piece for LabeledPiece<'_, '_> {
    fn region(&self) -> &Region<'_> {
        self.r
    }
    fn out_degree(&self, v: Vertex) -> usize {
        self.lab.out_degree(self.r, v)
    }
    fn h_degree(&self, v: Vertex) -> usize {
        self.lab.h_degree(self.r, v)
    }
    fn out_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.lab.out_neighbors(self.r, v)
    }
    fn h_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.lab.h_neighbors(self.r, v)
    }
}

pub(crate) fn b_of(r: &Region, x: Vertex, y: Vertex, w: Vertex) -> u8 {
    if !r.is_boundary(w) {
        return 0;
    }
    [r.prev(w), r.next(w)].iter().filter(|&&u| u == x || u == y).count() as u8
}

fn root_violation(r: &Region, x: Vertex, y: Vertex, z: Vertex) -> Option<Violation> {
    if !r.is_boundary_edge(x, y) {
        return Some(Violation::global(format!("{x}{y} is not a boundary edge")));
    }
    if !r.is_boundary(z) || z == x || z == y {
        return Some(Violation::at(z, "z must be a boundary vertex other than x and y"));
    }
    None
}

/// Conditions (i) to (v) of the `(2,6)` construction for root `(x, y, z)`.
pub(crate) fn conditions_26(p: &impl Piece, x: Vertex, y: Vertex, z: Vertex) -> Vec<Verdict> {
    let r = p.region();
    if let Some(v) = root_violation(r, x, y, z) {
        return vec![Verdict::new("root", Some(v))];
    }
    let b = |w| b_of(r, x, y, w);
    let deg = |w| (p.out_degree(w), p.h_degree(w));

    let mut c1 = None;
    let mut c2 = None;
    for &w in r.verts() {
        let (o, h) = deg(w);
        if r.is_boundary(w) {
            if c2.is_none() && (o > 1 || h + b(w) as usize > 5) {
                c2 = Some(Violation::at(w, "boundary vertex needs out <= 1 and h <= 5 - b").degrees(o, h).with_b(b(w)));
            }
        } else if c1.is_none() && (o > 2 || h > 6) {
            c1 = Some(Violation::at(w, "interior vertex needs out <= 2 and h <= 6").degrees(o, h));
        }
    }

    let c3 = (|| {
        let (oy, hy) = deg(y);
        if oy != 0 || hy != 0 {
            return Some(Violation::at(y, "y must have no out-arcs and no hedges").degrees(oy, hy));
        }
        let (ox, hx) = deg(x);
        if p.out_neighbors(x) != vec![y] {
            return Some(Violation::at(x, "the only out-neighbor of x must be y").degrees(ox, hx));
        }
        if hx > 1 {
            return Some(Violation::at(x, "x has more than one hedge").degrees(ox, hx));
        }
        if hx == 1 {
            let s = p.h_neighbors(x)[0];
            if !r.is_boundary(s) {
                return Some(Violation::at(s, "the hedge partner s of x is not a boundary vertex"));
            }
            if !r.has_edge(s, y) {
                return Some(Violation::at(s, "the hedge partner s of x is not adjacent to y"));
            }
        }
        None
    })();

    let (zp, zn) = (r.prev(z), r.next(z));
    let c4 = (|| {
        let (oz, hz) = deg(z);
        let bz = b(z) as usize;
        if hz + bz > 4 {
            return Some(Violation::at(z, "z needs h <= 4 - b").degrees(oz, hz).with_b(b(z)));
        }
        if hz + bz == 4 {
            for w in [zp, zn] {
                let (ow, hw) = deg(w);
                if hw + b(w) as usize > 4 {
                    return Some(
                        Violation::at(w, "z is tight, so its boundary neighbor needs h <= 4 - b")
                            .degrees(ow, hw)
                            .with_b(b(w)),
                    );
                }
            }
        }
        None
    })();

    let c5 = {
        let sum = p.h_degree(z) + p.h_degree(zp) + p.h_degree(zn);
        let bound = 12 - b(zp) as usize - b(zn) as usize;
        (sum > bound).then(|| {
            Violation::at(z, format!("h(z) + h(z') + h(z'') = {sum} exceeds {bound}"))
        })
    };

    vec![
        Verdict::new("(i)", c1),
        Verdict::new("(ii)", c2),
        Verdict::new("(iii)", c3),
        Verdict::new("(iv)", c4),
        Verdict::new("(v)", c5),
    ]
}

/// Conditions (i) to (iii) of the `(3,2)` construction for root
/// `(x, y, z)` or `(x, y, z, z')`.
pub(crate) fn conditions_32(
    p: &impl Piece,
    x: Vertex,
    y: Vertex,
    z: Vertex,
    z_prime: Option<Vertex>,
) -> Vec<Verdict> {
    let r = p.region();
    if let Some(v) = root_violation(r, x, y, z) {
        return vec![Verdict::new("root", Some(v))];
    }
    let touches = [r.prev(z), r.next(z)].iter().any(|&w| w == x || w == y);
    let root = if !r.chords_at(z).is_empty() {
        Some(Violation::at(z, "z is incident with a chord"))
    } else {
        match (touches, z_prime) {
            (true, Some(w)) => Some(Violation::at(w, "z' given although z is a boundary neighbor of x or y")),
            (false, None) => Some(Violation::at(z, "z' required when z is not a boundary neighbor of x or y")),
            (false, Some(w)) if r.prev(z) != w && r.next(z) != w => {
                Some(Violation::at(w, "z' is not a boundary neighbor of z"))
            }
            _ => None,
        }
    };
    let deg = |w| (p.out_degree(w), p.h_degree(w));

    let mut c1 = None;
    let mut c2 = None;
    for &w in r.verts() {
        let (o, h) = deg(w);
        if r.is_boundary(w) {
            let relaxed = Some(w) == z_prime;
            if c2.is_none() && (o > 2 || h > 2 || (!relaxed && o + h > 3)) {
                c2 = Some(
                    Violation::at(w, "boundary vertex needs out <= 2, h <= 2 and out + h <= 3 unless it is z'")
                        .degrees(o, h),
                );
            }
        } else if c1.is_none() && (o > 3 || h > 2) {
            c1 = Some(Violation::at(w, "interior vertex needs out <= 3 and h <= 2").degrees(o, h));
        }
    }

    let c3 = (|| {
        let (oy, hy) = deg(y);
        if oy != 0 || hy != 0 {
            return Some(Violation::at(y, "y must have no out-arcs and no hedges").degrees(oy, hy));
        }
        let (ox, hx) = deg(x);
        if hx != 0 {
            return Some(Violation::at(x, "x must have no hedges").degrees(ox, hx));
        }
        if p.out_neighbors(x) != vec![y] {
            return Some(Violation::at(x, "the only out-neighbor of x must be y").degrees(ox, hx));
        }
        let (oz, hz) = deg(z);
        if oz + hz > 2 {
            return Some(Violation::at(z, "z needs out + h <= 2").degrees(oz, hz));
        }
        None
    })();

    vec![
        Verdict::new("root", root),
        Verdict::new("(i)", c1),
        Verdict::new("(ii)", c2),
        Verdict::new("(iii)", c3),
    ]
}

/// Partition and acyclicity verdicts for labels written in place.
pub(crate) fn labeled_structure(p: &LabeledPiece) -> Vec<Verdict> {
    let part = p
        .lab
        .unlabeled_edge(p.r)
        .map(|(u, v)| Violation::global(format!("edge {u}{v} is in neither part")));
    let acyc = p.lab.find_cycle(p.r).map(|c| {
        let mut v = Violation::global(format!("directed cycle {c:?}"));
        v.vertex = c.first().copied();
        v
    });
    vec![Verdict::new("partition", part), Verdict::new("acyclic", acyc)]
}

fn rooted_report(
    contract: String,
    t: &NearTriangulation,
    p: &DecompPair,
    conditions: impl FnOnce(&PairPiece) -> Vec<Verdict>,
) -> ConditionReport {
    let mut verdicts = vec![
        Verdict::new("partition", partition_violation(t.graph(), p)),
        Verdict::new("acyclic", acyclic_violation(p)),
    ];
    let piece = PairPiece::new(t, p);
    verdicts.extend(conditions(&piece));
    ConditionReport { contract, verdicts }
}

/// Checks the `(2,6)` conditions (i) to (v) with respect to
/// `(ctx.x, ctx.y, ctx.z)`, plus exact partition and acyclicity.
pub fn check_26(t: &NearTriangulation, ctx: &BoundaryContext, p: &DecompPair) -> ConditionReport {
    rooted_report(
        format!("(2,6) wrt ({},{},{})", ctx.x, ctx.y, ctx.z),
        t,
        p,
        |piece| conditions_26(piece, ctx.x, ctx.y, ctx.z),
    )
}

/// Checks the `(3,2)` conditions (i) to (iii) with respect to
/// `(ctx.x, ctx.y, ctx.z)`, taking `ctx.z_prime` as `z'` exactly when `z`
/// is not a boundary neighbor of `x` or `y`.
pub fn check_32(t: &NearTriangulation, ctx: &BoundaryContext, p: &DecompPair) -> ConditionReport {
    let zp = (!ctx.z_touches_root()).then_some(ctx.z_prime);
    let contract = match zp {
        Some(w) => format!("(3,2) wrt ({},{},{},{})", ctx.x, ctx.y, ctx.z, w),
        None => format!("(3,2) wrt ({},{},{})", ctx.x, ctx.y, ctx.z),
    };
    rooted_report(contract, t, p, |piece| conditions_32(piece, ctx.x, ctx.y, ctx.z, zp))
}

/// Keeps the arcs and hedges that are edges of `target`.
pub fn restrict(p: &DecompPair, target: &PlaneGraph) -> DecompPair {
    let keep = |u: Vertex, v: Vertex| target.contains(u) && target.contains(v) && target.has_edge(u, v);
    DecompPair {
        arcs: p.arcs.iter().copied().filter(|&(u, v)| keep(u, v)).collect(),
        hedges: p.hedges.iter().copied().filter(|&(u, v)| keep(u, v)).collect(),
    }
}

/// The counting bound behind the stellation family: a `(2,3)`-decomposition
/// of the stellation of an `n`-vertex triangulation would force
/// `3n >= 4n - 10`. Returns true when that inequality fails.
pub fn infeasibility_bound_23(n: usize) -> bool {
    let n = n as i64;
    3 * n < 4 * n - 10
}
