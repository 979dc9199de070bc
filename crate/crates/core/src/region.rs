//! Sub-near-triangulations viewed in place.
//!
//! The recursive constructions split a near triangulation into many smaller
//! ones. Copying rotations at every level would make the recursion quadratic
//! in memory churn, so a [`Region`] borrows the host graph and records only
//! which host vertices belong to it and where its boundary runs. Every
//! region is an induced subgraph of the host with the inherited embedding.

use std::collections::{HashSet, VecDeque};

use crate::error::GraphError;
use crate::plane::{NearTriangulation, PlaneGraph};
use crate::{Edge, Vertex};

const ABSENT: u32 = 0;
const INTERIOR: u32 = 1;

#[derive(Clone)]
pub(crate) struct Region<'g> {
    g: &'g PlaneGraph,
    // 0 absent, 1 interior, k + 2 for boundary position k
    state: Vec<u32>,
    boundary: Vec<Vertex>,
    verts: Vec<Vertex>,
}

impl<'g> Region<'g> {
    pub fn whole(t: &'g NearTriangulation) -> Region<'g> {
        let g = t.graph();
        let mut state = vec![ABSENT; g.max_id() as usize + 1];
        for v in g.vertices() {
            state[v as usize] = INTERIOR;
        }
        for (i, &v) in t.boundary().iter().enumerate() {
            state[v as usize] = i as u32 + 2;
        }
        Region {
            g,
            state,
            boundary: t.boundary().to_vec(),
            verts: g.vertices().collect(),
        }
    }

    /// Region induced by `verts` whose outer face walk contains `dart`.
    pub fn new(
        g: &'g PlaneGraph,
        mut verts: Vec<Vertex>,
        dart: (Vertex, Vertex),
    ) -> Result<Region<'g>, GraphError> {
        let mut state = vec![ABSENT; g.max_id() as usize + 1];
        verts.sort_unstable();
        verts.dedup();
        for &v in &verts {
            if !g.contains(v) {
                return Err(GraphError::UnknownVertex(v));
            }
            state[v as usize] = INTERIOR;
        }
        let mut r = Region {
            g,
            state,
            boundary: Vec::new(),
            verts,
        };
        if !r.contains(dart.0) || !r.contains(dart.1) || !g.has_edge(dart.0, dart.1) {
            return Err(GraphError::Contract(format!(
                "dart {dart:?} is not an edge of the region"
            )));
        }
        let mut cur = dart;
        loop {
            let a = cur.0;
            if r.state[a as usize] != INTERIOR {
                return Err(GraphError::NotTwoConnected(format!(
                    "outer walk visits {a} twice"
                )));
            }
            r.state[a as usize] = r.boundary.len() as u32 + 2;
            r.boundary.push(a);
            cur = (cur.1, r.pred(cur.1, a));
            if cur == dart {
                break;
            }
        }
        if r.boundary.len() < 3 {
            return Err(GraphError::NotTwoConnected(format!(
                "outer walk {:?} is not a cycle",
                r.boundary
            )));
        }
        Ok(r)
    }

    pub fn host(&self) -> &'g PlaneGraph {
        self.g
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn verts(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn boundary(&self) -> &[Vertex] {
        &self.boundary
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.state.get(v as usize).is_some_and(|&s| s != ABSENT)
    }

    pub fn bpos(&self, v: Vertex) -> Option<usize> {
        match self.state.get(v as usize) {
            Some(&s) if s >= 2 => Some(s as usize - 2),
            _ => None,
        }
    }

    pub fn is_boundary(&self, v: Vertex) -> bool {
        self.bpos(v).is_some()
    }

    pub fn next(&self, v: Vertex) -> Vertex {
        let i = self.bpos(v).expect("boundary vertex");
        self.boundary[(i + 1) % self.boundary.len()]
    }

    pub fn prev(&self, v: Vertex) -> Vertex {
        let i = self.bpos(v).expect("boundary vertex");
        self.boundary[(i + self.boundary.len() - 1) % self.boundary.len()]
    }

    pub fn is_boundary_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.is_boundary(u) && self.is_boundary(v) && (self.next(u) == v || self.prev(u) == v)
    }

    /// Outer-walk dart of the boundary edge `uv`.
    pub fn walk_dart(&self, u: Vertex, v: Vertex) -> (Vertex, Vertex) {
        if self.next(u) == v {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.g
            .rotation(v)
            .iter()
            .copied()
            .filter(move |&w| self.contains(w))
    }

    #[cfg(test)]
    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).count()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u) && self.contains(v) && self.g.has_edge(u, v)
    }

    #[cfg(test)]
    pub fn num_edges(&self) -> usize {
        self.verts.iter().map(|&v| self.degree(v)).sum::<usize>() / 2
    }

    /// Region neighbor of `v` immediately before `u` in clockwise order.
    pub fn pred(&self, v: Vertex, u: Vertex) -> Vertex {
        let r = self.g.rotation(v);
        let i = r.iter().position(|&w| w == u).expect("u adjacent to v");
        let k = r.len();
        (1..=k)
            .map(|s| r[(i + k - s) % k])
            .find(|&w| self.contains(w))
            .expect("u itself is a member")
    }

    /// Region neighbors of `v` strictly between `from` and `to`, walking the
    /// rotation forward from `from`.
    pub fn between(&self, v: Vertex, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let r = self.g.rotation(v);
        let k = r.len();
        let i = r.iter().position(|&w| w == from).expect("from adjacent to v");
        let mut out = Vec::new();
        for s in 1..k {
            let w = r[(i + s) % k];
            if w == to {
                return out;
            }
            if self.contains(w) {
                out.push(w);
            }
        }
        panic!("{to} not found around {v}");
    }

    /// Interior neighbors of a boundary vertex, in order from its previous
    /// boundary neighbor to its next one.
    pub fn inner_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.between(v, self.prev(v), self.next(v))
    }

    /// Boundary vertices from `from` to `to` along the walk, inclusive.
    pub fn walk_forward(&self, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let (i, j) = (self.bpos(from).unwrap(), self.bpos(to).unwrap());
        let l = self.boundary.len();
        let steps = (j + l - i) % l;
        (0..=steps).map(|s| self.boundary[(i + s) % l]).collect()
    }

    /// True when `w` lies on the walk from `from` forward to `to`, ends
    /// included.
    pub fn on_walk(&self, from: Vertex, to: Vertex, w: Vertex) -> bool {
        let l = self.boundary.len();
        let (i, j) = (self.bpos(from).unwrap(), self.bpos(to).unwrap());
        match self.bpos(w) {
            Some(k) => (k + l - i) % l <= (j + l - i) % l,
            None => false,
        }
    }

    /// Boundary path from `from` to `to` that avoids `avoid`.
    pub fn path_avoiding(&self, from: Vertex, to: Vertex, avoid: Vertex) -> Vec<Vertex> {
        let fwd = self.walk_forward(from, to);
        if !fwd.contains(&avoid) {
            return fwd;
        }
        let mut back = self.walk_forward(to, from);
        back.reverse();
        back
    }

    pub fn chords_at(&self, v: Vertex) -> Vec<Vertex> {
        if !self.is_boundary(v) {
            return Vec::new();
        }
        let (p, n) = (self.prev(v), self.next(v));
        let mut out: Vec<Vertex> = self
            .neighbors(v)
            .filter(|&w| w != p && w != n && self.is_boundary(w))
            .collect();
        out.sort_unstable();
        out
    }

    /// All chords, lexicographically sorted.
    pub fn chords(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for &v in &self.boundary {
            for w in self.chords_at(v) {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The piece cut off by the chord `uv` on the side of the walk from `u`
    /// forward to `v`.
    pub fn side(&self, u: Vertex, v: Vertex) -> Result<Region<'g>, GraphError> {
        let arc = self.walk_forward(u, v);
        let verts = self.enclosed(&arc);
        Region::new(self.g, verts, (u, arc[1]))
    }

    /// Both pieces of a chord split, the side of `u -> v` first.
    pub fn split(&self, u: Vertex, v: Vertex) -> Result<(Region<'g>, Region<'g>), GraphError> {
        Ok((self.side(u, v)?, self.side(v, u)?))
    }

    /// Vertices on or inside a cycle of region vertices. The cycle must be
    /// listed so that, like the outer walk, its inside lies forward of the
    /// incoming edge at every vertex.
    pub fn enclosed(&self, cycle: &[Vertex]) -> Vec<Vertex> {
        let mut mark = vec![false; self.state.len()];
        for &c in cycle {
            mark[c as usize] = true;
        }
        let mut out: Vec<Vertex> = cycle.to_vec();
        let mut queue = VecDeque::new();
        let l = cycle.len();
        for t in 0..l {
            let (p, c, n) = (cycle[(t + l - 1) % l], cycle[t], cycle[(t + 1) % l]);
            for w in self.between(c, p, n) {
                if !mark[w as usize] {
                    mark[w as usize] = true;
                    out.push(w);
                    queue.push_back(w);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !mark[w as usize] {
                    mark[w as usize] = true;
                    out.push(w);
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Number of vertices [`Region::enclosed`] would return, with work
    /// proportional to that number rather than to the host.
    pub fn enclosed_count(&self, cycle: &[Vertex]) -> usize {
        let mut seen: HashSet<Vertex> = cycle.iter().copied().collect();
        let mut stack = Vec::new();
        let l = cycle.len();
        for t in 0..l {
            let (p, c, n) = (cycle[(t + l - 1) % l], cycle[t], cycle[(t + 1) % l]);
            for w in self.between(c, p, n) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len()
    }

    /// Cycle made of the boundary walk between `a` and `b` (whichever
    /// direction is a forward walk from one to the other that avoids the
    /// extra vertices' side) closed through `extra`, together with what it
    /// encloses. `a` and `b` are boundary vertices and the forward walk is
    /// taken from `a` to `b`.
    pub fn enclosed_by(&self, a: Vertex, b: Vertex, extra: &[Vertex]) -> Vec<Vertex> {
        let mut cycle = self.walk_forward(a, b);
        cycle.extend_from_slice(extra);
        self.enclosed(&cycle)
    }

    pub fn without_vertex(&self, z: Vertex) -> Result<Region<'g>, GraphError> {
        let a = self.next(z);
        let b = self.next(a);
        let verts = self.verts.iter().copied().filter(|&v| v != z).collect();
        Region::new(self.g, verts, (a, b))
    }

    /// Region on `verts` (a subset of this one) whose outer face runs
    /// through the boundary edge `uv` of this region.
    pub fn sub(&self, verts: Vec<Vertex>, u: Vertex, v: Vertex) -> Result<Region<'g>, GraphError> {
        Region::new(self.g, verts, self.walk_dart(u, v))
    }

    /// The block of this region minus `removed` that contains the boundary
    /// edge `xy`.
    pub fn block_with(
        &self,
        removed: &[Vertex],
        x: Vertex,
        y: Vertex,
    ) -> Result<Region<'g>, GraphError> {
        let mut gone = vec![false; self.state.len()];
        for &v in removed {
            gone[v as usize] = true;
        }
        let member = |v: Vertex| self.contains(v) && !gone[v as usize];
        let block = block_of(self.g, member, x, y).ok_or_else(|| {
            GraphError::Contract(format!("{x} and {y} share no block"))
        })?;
        self.sub(block, x, y)
    }

    pub fn to_near_triangulation(&self) -> NearTriangulation {
        let g = self.g.induced(|v| self.contains(v));
        NearTriangulation::from_parts(g, self.boundary.clone())
    }
}

/// Vertex set of the block containing both `a` and `b` in the subgraph of
/// `g` induced by `member`, found by an iterative Tarjan search from `a`.
pub(crate) fn block_of(
    g: &PlaneGraph,
    member: impl Fn(Vertex) -> bool,
    a: Vertex,
    b: Vertex,
) -> Option<Vec<Vertex>> {
    if !member(a) || !member(b) {
        return None;
    }
    let cap = g.max_id() as usize + 1;
    let mut disc = vec![0u32; cap];
    let mut low = vec![0u32; cap];
    let mut time = 1;
    disc[a as usize] = time;
    low[a as usize] = time;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    // (vertex, parent, next rotation index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(a, 0, 0)];
    while let Some(top) = stack.len().checked_sub(1) {
        let (v, parent, i) = stack[top];
        let r = g.rotation(v);
        if i < r.len() {
            stack[top].2 += 1;
            let w = r[i];
            if !member(w) || w == parent {
                continue;
            }
            if disc[w as usize] == 0 {
                time += 1;
                disc[w as usize] = time;
                low[w as usize] = time;
                edges.push((v, w));
                stack.push((w, v, 0));
            } else if disc[w as usize] < disc[v as usize] {
                edges.push((v, w));
                low[v as usize] = low[v as usize].min(disc[w as usize]);
            }
            continue;
        }
        stack.pop();
        if let Some(&(p, _, _)) = stack.last() {
            low[p as usize] = low[p as usize].min(low[v as usize]);
            if low[v as usize] >= disc[p as usize] {
                let mut block = Vec::new();
                while let Some(e) = edges.pop() {
                    block.push(e.0);
                    block.push(e.1);
                    if e == (p, v) {
                        break;
                    }
                }
                block.sort_unstable();
                block.dedup();
                if block.binary_search(&a).is_ok() && block.binary_search(&b).is_ok() {
                    return Some(block);
                }
            }
        }
    }
    None
}
