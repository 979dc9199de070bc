//! Rotation-system plane graphs.
//!
//! A [`PlaneGraph`] stores, for every vertex, the clockwise cyclic order of
//! its neighbors. Faces are recovered by the usual dart walk: the face
//! successor of the dart `(u, v)` is `(v, w)` where `w` immediately precedes
//! `u` in the rotation at `v`. Under the clockwise convention this walks
//! inner faces clockwise and the outer face counterclockwise, so a boundary
//! cycle is always listed in the direction its own face walk takes.
//!
//! Vertex ids are positive integers. Graphs produced by surgeries keep the
//! ids of the graph they came from, so the id range may have holes.

mod near;
mod triangulate;

pub use near::{BoundaryContext, NearTriangulation};
pub use triangulate::{default_outer, saturate, triangulate, Provenance};
pub(crate) use triangulate::{connect_components, faces_at, fill_faces, stack_into};

use std::collections::VecDeque;

use crate::error::GraphError;
use crate::{edge, Edge, Vertex};

/// One face of a plane graph, as the cyclic sequence of darts bounding it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<(Vertex, Vertex)>,
}

impl Face {
    /// Vertices in walk order; a vertex appears once per visit.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.walk.iter().map(|&(u, _)| u).collect()
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// True when the walk visits every vertex at most once.
    pub fn is_simple_cycle(&self) -> bool {
        let mut vs = self.vertices();
        vs.sort_unstable();
        vs.windows(2).all(|w| w[0] != w[1]) && self.walk.len() >= 3
    }

    /// Walk rotated so that its smallest vertex comes first.
    pub fn canonical_vertices(&self) -> Vec<Vertex> {
        let vs = self.vertices();
        let start = (0..vs.len()).min_by_key(|&i| vs[i]).unwrap_or(0);
        vs[start..].iter().chain(&vs[..start]).copied().collect()
    }
}

/// A simple graph together with a rotation system.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlaneGraph {
    rot: Vec<Vec<Vertex>>,
    present: Vec<bool>,
    n: usize,
    m: usize,
}

impl PlaneGraph {
    /// Graph on vertices `1..=n` with no edges.
    pub fn empty(n: usize) -> Self {
        let mut present = vec![true; n + 1];
        present[0] = false;
        PlaneGraph {
            rot: vec![Vec::new(); n + 1],
            present,
            n,
            m: 0,
        }
    }

    /// Builds a graph on `1..=rotations.len()` where `rotations[i]` is the
    /// clockwise neighbor list of vertex `i + 1`, and validates it.
    pub fn from_rotations(rotations: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let entries = rotations
            .into_iter()
            .enumerate()
            .map(|(i, r)| (i as Vertex + 1, r));
        Self::from_entries(entries)
    }

    /// Builds a graph from `(vertex, clockwise neighbors)` pairs; ids need not
    /// be contiguous.
    pub fn from_entries(
        entries: impl IntoIterator<Item = (Vertex, Vec<Vertex>)>,
    ) -> Result<Self, GraphError> {
        let mut g = PlaneGraph::default();
        for (v, r) in entries {
            if v == 0 {
                return Err(GraphError::UnknownVertex(0));
            }
            g.ensure_capacity(v);
            if g.present[v as usize] {
                return Err(GraphError::Contract(format!("vertex {v} given twice")));
            }
            g.present[v as usize] = true;
            g.n += 1;
            g.rot[v as usize] = r;
        }
        g.m = g.rot.iter().map(Vec::len).sum::<usize>() / 2;
        g.validate()?;
        Ok(g)
    }

    /// Builds a plane graph from a list of triangles covering a closed
    /// surface. Each triangle's vertex order is taken as its face walk; the
    /// orientation of the first triangle fixes the rest.
    pub fn from_triangles(n: usize, triangles: &[[Vertex; 3]]) -> Result<Self, GraphError> {
        let oriented = orient_triangles(triangles)?;
        // In the walk (.., p, v, q, ..), q immediately precedes p at v.
        let mut after: Vec<std::collections::HashMap<Vertex, Vertex>> =
            vec![Default::default(); n + 1];
        for t in &oriented {
            for i in 0..3 {
                let (p, v, q) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
                if v as usize > n || p as usize > n || q as usize > n || v == 0 {
                    return Err(GraphError::UnknownVertex(v.max(p).max(q)));
                }
                if after[v as usize].insert(q, p).is_some() {
                    return Err(GraphError::Contract(format!(
                        "triangle list is not a surface around vertex {v}"
                    )));
                }
            }
        }
        let mut rotations = Vec::with_capacity(n);
        for (v, succ) in after.iter().enumerate().skip(1) {
            let mut r = Vec::with_capacity(succ.len());
            if let Some(&start) = succ.keys().min() {
                let mut cur = start;
                loop {
                    r.push(cur);
                    cur = *succ.get(&cur).ok_or_else(|| {
                        GraphError::Contract(format!("open fan around vertex {v}"))
                    })?;
                    if cur == start {
                        break;
                    }
                    if r.len() > succ.len() {
                        return Err(GraphError::Contract(format!(
                            "neighbors of vertex {v} do not form one cycle"
                        )));
                    }
                }
                if r.len() != succ.len() {
                    return Err(GraphError::Contract(format!(
                        "neighbors of vertex {v} form more than one cycle"
                    )));
                }
            }
            rotations.push(r);
        }
        Self::from_rotations(rotations)
    }

    fn ensure_capacity(&mut self, v: Vertex) {
        let need = v as usize + 1;
        if self.rot.len() < need {
            self.rot.resize(need, Vec::new());
            self.present.resize(need, false);
        }
    }

    /// Checks simplicity, symmetry and that the rotation system embeds every
    /// component in the sphere.
    pub fn validate(&self) -> Result<(), GraphError> {
        for v in self.vertices() {
            let r = &self.rot[v as usize];
            let mut sorted = r.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::DuplicateNeighbor {
                        vertex: v,
                        neighbor: w[0],
                    });
                }
            }
            for &u in r {
                if u == v {
                    return Err(GraphError::SelfLoop(v));
                }
                if !self.contains(u) {
                    return Err(GraphError::UnknownVertex(u));
                }
                if !self.rot[u as usize].contains(&v) {
                    return Err(GraphError::Asymmetric {
                        listed_by: v,
                        missing_at: u,
                    });
                }
            }
        }
        let faces = self.trace_faces()?;
        let comp = self.component_labels();
        let ncomp = self.vertices().map(|v| comp[v as usize] as usize + 1).max().unwrap_or(0);
        let mut vc = vec![0i64; ncomp];
        let mut ec = vec![0i64; ncomp];
        let mut fc = vec![0i64; ncomp];
        let mut rep = vec![0; ncomp];
        for v in self.vertices() {
            let c = comp[v as usize] as usize;
            vc[c] += 1;
            ec[c] += self.degree(v) as i64;
            rep[c] = v;
        }
        for f in &faces {
            fc[comp[f.walk[0].0 as usize] as usize] += 1;
        }
        for c in 0..ncomp {
            if vc[c] < 2 {
                continue;
            }
            let euler = vc[c] - ec[c] / 2 + fc[c];
            if euler != 2 {
                return Err(GraphError::NotPlane {
                    vertex: rep[c],
                    euler,
                });
            }
        }
        Ok(())
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.m
    }

    /// Largest id slot in use (vertices may be absent below it).
    pub fn max_id(&self) -> Vertex {
        (self.rot.len().max(1) - 1) as Vertex
    }

    /// True when the vertices are exactly `1..=n`.
    pub fn is_dense(&self) -> bool {
        self.max_id() as usize == self.n
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.present.get(v as usize).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(|(v, _)| v as Vertex)
    }

    /// Clockwise neighbors of `v` (empty for unknown vertices).
    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        self.rot.get(v as usize).map_or(&[], |r| r.as_slice())
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.rotation(a).contains(&b)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in self.rotation(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn position(&self, v: Vertex, u: Vertex) -> Option<usize> {
        self.rotation(v).iter().position(|&w| w == u)
    }

    /// Face successor of the dart `(u, v)`.
    pub fn face_successor(&self, dart: (Vertex, Vertex)) -> Result<(Vertex, Vertex), GraphError> {
        let (u, v) = dart;
        let r = self.rotation(v);
        let i = self.position(v, u).ok_or(GraphError::Asymmetric {
            listed_by: u,
            missing_at: v,
        })?;
        let j = if i == 0 { r.len() - 1 } else { i - 1 };
        Ok((v, r[j]))
    }

    /// All faces. Darts are visited by increasing tail id and then rotation
    /// order, so the result is deterministic.
    pub fn trace_faces(&self) -> Result<Vec<Face>, GraphError> {
        let mut seen: Vec<Vec<bool>> = self.rot.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for v in self.vertices() {
            for i in 0..self.rot[v as usize].len() {
                if seen[v as usize][i] {
                    continue;
                }
                let start = (v, self.rot[v as usize][i]);
                let mut walk = Vec::new();
                let mut dart = start;
                let mut idx = i;
                loop {
                    if seen[dart.0 as usize][idx] {
                        return Err(GraphError::Contract(format!(
                            "dart {dart:?} reached twice while tracing faces"
                        )));
                    }
                    seen[dart.0 as usize][idx] = true;
                    walk.push(dart);
                    let next = self.face_successor(dart)?;
                    if next == start {
                        break;
                    }
                    idx = self.position(next.0, next.1).expect("successor is a neighbor");
                    dart = next;
                }
                faces.push(Face { walk });
            }
        }
        Ok(faces)
    }

    /// Component index per vertex slot (`u32::MAX` for absent slots).
    pub(crate) fn component_labels(&self) -> Vec<u32> {
        let mut label = vec![u32::MAX; self.rot.len()];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if label[s as usize] != u32::MAX {
                continue;
            }
            label[s as usize] = next;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in self.rotation(v) {
                    if label[w as usize] == u32::MAX {
                        label[w as usize] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let label = self.component_labels();
        let count = self.vertices().map(|v| label[v as usize] + 1).max().unwrap_or(0);
        let mut comps = vec![Vec::new(); count as usize];
        for v in self.vertices() {
            comps[label[v as usize] as usize].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True for a connected simple plane graph on at least three vertices
    /// whose every face is a triangle.
    pub fn is_triangulation(&self) -> bool {
        self.n >= 3
            && self.is_connected()
            && self.m == 3 * self.n - 6
            && self
                .trace_faces()
                .map(|fs| fs.iter().all(|f| f.len() == 3))
                .unwrap_or(false)
    }

    /// Subgraph induced by the vertices satisfying `keep`, with the
    /// inherited embedding.
    pub fn induced(&self, keep: impl Fn(Vertex) -> bool) -> PlaneGraph {
        let mut g = PlaneGraph {
            rot: vec![Vec::new(); self.rot.len()],
            present: vec![false; self.rot.len()],
            n: 0,
            m: 0,
        };
        for v in self.vertices().filter(|&v| keep(v)) {
            g.present[v as usize] = true;
            g.n += 1;
            g.rot[v as usize] = self
                .rotation(v)
                .iter()
                .copied()
                .filter(|&w| keep(w))
                .collect();
            g.m += g.rot[v as usize].len();
        }
        g.m /= 2;
        g
    }

    /// Subgraph with the same vertices keeping only edges accepted by `keep`.
    pub fn edge_subgraph(&self, keep: impl Fn(Vertex, Vertex) -> bool) -> PlaneGraph {
        let mut g = self.clone();
        g.m = 0;
        for v in self.vertices() {
            g.rot[v as usize].retain(|&w| keep(edge(v, w).0, edge(v, w).1));
            g.m += g.rot[v as usize].len();
        }
        g.m /= 2;
        g
    }

    pub(crate) fn add_vertex(&mut self) -> Vertex {
        let v = self.rot.len().max(1) as Vertex;
        self.ensure_capacity(v);
        self.present[v as usize] = true;
        self.n += 1;
        v
    }

    pub(crate) fn remove_vertex(&mut self, v: Vertex) {
        if !self.contains(v) {
            return;
        }
        let nbrs = std::mem::take(&mut self.rot[v as usize]);
        for &w in &nbrs {
            self.rot[w as usize].retain(|&x| x != v);
        }
        self.m -= nbrs.len();
        self.present[v as usize] = false;
        self.n -= 1;
    }

    #[cfg(test)]
    pub(crate) fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        let before = self.rot[u as usize].len();
        self.rot[u as usize].retain(|&w| w != v);
        self.rot[v as usize].retain(|&w| w != u);
        if self.rot[u as usize].len() < before {
            self.m -= 1;
        }
    }

    #[cfg(test)]
    /// Replaces the edge `ab` of a triangulation by the other diagonal of
    /// the two triangles on it. Returns false (and changes nothing) when
    /// that diagonal already exists.
    pub(crate) fn flip(&mut self, a: Vertex, b: Vertex) -> bool {
        let c = self.face_successor((a, b)).expect("edge").1;
        let d = self.face_successor((b, a)).expect("edge").1;
        if c == d || self.has_edge(c, d) {
            return false;
        }
        self.add_edge_at(c, Some(b), d, Some(a));
        self.remove_edge(a, b);
        true
    }

    /// Inserts `new` into the rotation at `at`, immediately before `before`
    /// (or as the only neighbor when `at` is isolated).
    pub(crate) fn insert_before(&mut self, at: Vertex, new: Vertex, before: Option<Vertex>) {
        let r = &mut self.rot[at as usize];
        match before.and_then(|b| r.iter().position(|&w| w == b)) {
            Some(i) => r.insert(i, new),
            None => r.push(new),
        }
    }

    /// Sets the rotation of a vertex that has no neighbors yet; the
    /// reverse entries must already be in place.
    pub(crate) fn set_rotation(&mut self, v: Vertex, rot: Vec<Vertex>) {
        debug_assert!(self.rot[v as usize].is_empty());
        self.m += rot.len();
        self.rot[v as usize] = rot;
    }

    /// Adds edge `a b` so that it enters the corner at `a` just before
    /// `before_a` and the corner at `b` just before `before_b`.
    pub(crate) fn add_edge_at(
        &mut self,
        a: Vertex,
        before_a: Option<Vertex>,
        b: Vertex,
        before_b: Option<Vertex>,
    ) {
        self.insert_before(a, b, before_a);
        self.insert_before(b, a, before_b);
        self.m += 1;
    }
}

/// Orients a closed triangle surface consistently (breadth-first from the
/// first triangle, flipping neighbors so shared edges run opposite ways).
fn orient_triangles(triangles: &[[Vertex; 3]]) -> Result<Vec<[Vertex; 3]>, GraphError> {
    use std::collections::HashMap;
    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (i, t) in triangles.iter().enumerate() {
        for k in 0..3 {
            by_edge.entry(edge(t[k], t[(k + 1) % 3])).or_default().push(i);
        }
    }
    let mut out: Vec<Option<[Vertex; 3]>> = vec![None; triangles.len()];
    for s in 0..triangles.len() {
        if out[s].is_some() {
            continue;
        }
        out[s] = Some(triangles[s]);
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            let t = out[i].expect("queued triangles are oriented");
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                for &j in &by_edge[&edge(a, b)] {
                    if j == i {
                        continue;
                    }
                    let u = triangles[j];
                    // Neighbor must traverse the shared edge as b -> a.
                    let runs_ab = (0..3).any(|k| u[k] == a && u[(k + 1) % 3] == b);
                    let want = if runs_ab { [u[0], u[2], u[1]] } else { u };
                    match out[j] {
                        None => {
                            out[j] = Some(want);
                            queue.push_back(j);
                        }
                        Some(prev) if prev != want => {
                            return Err(GraphError::Contract(
                                "triangle list is not orientable".into(),
                            ))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(out.into_iter().map(|t| t.expect("all oriented")).collect())
}
