use std::collections::BTreeMap;

use super::{Face, PlaneGraph};
use crate::error::GraphError;
use crate::region::{block_of, Region};
use crate::{Edge, Vertex};

/// A 2-connected plane graph with a designated outer face whose other faces
/// are all triangles.
///
/// The outer face is stored as its boundary cycle, listed in the direction
/// of its own face walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearTriangulation {
    graph: PlaneGraph,
    outer: Vec<Vertex>,
}

impl NearTriangulation {
    /// Validates `graph` as a near triangulation with outer face `outer`.
    ///
    /// `outer` must be the vertex sequence of a face walk, starting anywhere.
    pub fn new(graph: PlaneGraph, outer: Vec<Vertex>) -> Result<Self, GraphError> {
        let t = NearTriangulation { graph, outer };
        t.validate()?;
        Ok(t)
    }

    /// Near triangulation whose outer face is the face walk through `dart`.
    pub fn with_outer_dart(graph: PlaneGraph, dart: (Vertex, Vertex)) -> Result<Self, GraphError> {
        let walk = face_through(&graph, dart)?;
        Self::new(graph, walk)
    }

    pub(crate) fn from_parts(graph: PlaneGraph, outer: Vec<Vertex>) -> Self {
        NearTriangulation { graph, outer }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let g = &self.graph;
        if g.n() < 3 {
            return Err(GraphError::TooSmall(g.n()));
        }
        g.validate()?;
        if !g.is_connected() {
            return Err(GraphError::NotTwoConnected("graph is disconnected".into()));
        }
        let o = &self.outer;
        if o.len() < 2 || !g.has_edge(o[0], o[1]) {
            return Err(GraphError::NotAFace(o.clone()));
        }
        let walk = face_through(g, (o[0], o[1]))?;
        if &walk != o {
            return Err(GraphError::NotAFace(o.clone()));
        }
        let mut sorted = o.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::NotTwoConnected(format!(
                "outer walk {o:?} repeats a vertex"
            )));
        }
        let start = (o[0], o[1]);
        for f in g.trace_faces()? {
            if f.walk.contains(&start) {
                continue;
            }
            if f.len() != 3 {
                return Err(GraphError::NonTriangularFace(f.vertices()));
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn into_graph(self) -> PlaneGraph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The boundary cycle in outer-walk order.
    pub fn boundary(&self) -> &[Vertex] {
        &self.outer
    }

    /// Owned copy of the boundary cycle.
    pub fn boundary_cycle(&self) -> Vec<Vertex> {
        self.outer.clone()
    }

    pub fn is_boundary(&self, v: Vertex) -> bool {
        self.outer.contains(&v)
    }

    /// The two boundary neighbors of `v` as (previous, next) along the walk.
    pub fn boundary_neighbors(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        let i = self.outer.iter().position(|&w| w == v)?;
        let l = self.outer.len();
        Some((self.outer[(i + l - 1) % l], self.outer[(i + 1) % l]))
    }

    pub fn outer_face(&self) -> Face {
        let l = self.outer.len();
        Face {
            walk: (0..l).map(|i| (self.outer[i], self.outer[(i + 1) % l])).collect(),
        }
    }

    /// Edges joining two boundary vertices that are not consecutive on the
    /// boundary cycle, sorted.
    pub fn find_chords(&self) -> Vec<Edge> {
        Region::whole(self).chords()
    }

    /// Splits along the chord `uv` into the two near triangulations it
    /// separates. The piece whose boundary arc holds the smaller id (other
    /// than `u` and `v`) comes first.
    pub fn split_at_chord(
        &self,
        u: Vertex,
        v: Vertex,
    ) -> Result<(NearTriangulation, NearTriangulation), GraphError> {
        let r = Region::whole(self);
        if !r.chords_at(u).contains(&v) {
            return Err(GraphError::Contract(format!("{u}{v} is not a chord")));
        }
        let (a, b) = r.split(u, v)?;
        let min_inner = |s: &Region| {
            s.boundary()
                .iter()
                .copied()
                .filter(|&w| w != u && w != v)
                .min()
        };
        let (a, b) = if min_inner(&a) <= min_inner(&b) {
            (a, b)
        } else {
            (b, a)
        };
        Ok((a.to_near_triangulation(), b.to_near_triangulation()))
    }

    /// `G - z` for a boundary vertex `z`; its interior neighbors join the
    /// boundary.
    pub fn remove_boundary_vertex(&self, z: Vertex) -> Result<NearTriangulation, GraphError> {
        if !self.is_boundary(z) {
            return Err(GraphError::Contract(format!("{z} is not a boundary vertex")));
        }
        if self.n() <= 3 {
            return Err(GraphError::TooSmall(self.n() - 1));
        }
        let r = Region::whole(self).without_vertex(z)?;
        let t = r.to_near_triangulation();
        t.validate()?;
        Ok(t)
    }

    /// The block of `G - removed` holding all of `anchors`, with the outer
    /// face recomputed.
    pub fn block_containing(
        &self,
        removed: &[Vertex],
        anchors: &[Vertex],
    ) -> Result<NearTriangulation, GraphError> {
        block_containing(self, removed, anchors)
    }
}

/// Free-function form of [`NearTriangulation::block_containing`].
///
/// The new outer face is the face of the block containing the first dart of
/// the old outer walk that survives; if none does, the longest face.
pub fn block_containing(
    t: &NearTriangulation,
    removed: &[Vertex],
    anchors: &[Vertex],
) -> Result<NearTriangulation, GraphError> {
    let g = t.graph();
    if anchors.len() < 2 {
        return Err(GraphError::Contract("need at least two anchors".into()));
    }
    let gone = |v: Vertex| removed.contains(&v);
    for &a in anchors {
        if !g.contains(a) || gone(a) {
            return Err(GraphError::Contract(format!("anchor {a} is not present")));
        }
    }
    let block = block_of(g, |v| g.contains(v) && !gone(v), anchors[0], anchors[1])
        .ok_or_else(|| GraphError::Contract("anchors lie in different blocks".into()))?;
    for &a in anchors {
        if block.binary_search(&a).is_err() {
            return Err(GraphError::Contract("anchors lie in different blocks".into()));
        }
    }
    let sub = g.induced(|v| block.binary_search(&v).is_ok());
    let faces = sub.trace_faces()?;
    let outer = t
        .outer_face()
        .walk
        .iter()
        .find_map(|d| faces.iter().find(|f| f.walk.contains(d)))
        .or_else(|| faces.iter().max_by_key(|f| (f.len(), std::cmp::Reverse(f.canonical_vertices()))))
        .ok_or_else(|| GraphError::Contract("block has no faces".into()))?
        .vertices();
    NearTriangulation::new(sub, outer)
}

fn face_through(g: &PlaneGraph, dart: (Vertex, Vertex)) -> Result<Vec<Vertex>, GraphError> {
    if !g.has_edge(dart.0, dart.1) {
        return Err(GraphError::NotAFace(vec![dart.0, dart.1]));
    }
    let mut walk = Vec::new();
    let mut cur = dart;
    loop {
        walk.push(cur.0);
        cur = g.face_successor(cur)?;
        if cur == dart {
            return Ok(walk);
        }
        if walk.len() > 2 * g.num_edges() {
            return Err(GraphError::Contract("face walk does not close".into()));
        }
    }
}

/// The rooted boundary data of a near triangulation: the root edge `xy`,
/// the vertex `z`, its two boundary neighbors and the `b` values.
///
/// `z_prime` is the boundary neighbor of `z` met first when the boundary is
/// walked from `x` through `y` onward; `z_double` is the other one. When the
/// boundary is a triangle these are `x` and `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryContext {
    pub x: Vertex,
    pub y: Vertex,
    pub z: Vertex,
    pub z_prime: Vertex,
    pub z_double: Vertex,
    b: BTreeMap<Vertex, u8>,
}

impl BoundaryContext {
    pub fn new(
        t: &NearTriangulation,
        x: Vertex,
        y: Vertex,
        z: Vertex,
    ) -> Result<BoundaryContext, GraphError> {
        let (p, n) = t.boundary_neighbors(x).ok_or(GraphError::Contract(format!(
            "{x} is not a boundary vertex"
        )))?;
        if p != y && n != y {
            return Err(GraphError::Contract(format!("{x}{y} is not a boundary edge")));
        }
        let (zp, zn) = t.boundary_neighbors(z).ok_or(GraphError::Contract(format!(
            "{z} is not a boundary vertex"
        )))?;
        if z == x || z == y {
            return Err(GraphError::Contract(format!("z = {z} is a root vertex")));
        }
        let (z_prime, z_double) = if n == y { (zp, zn) } else { (zn, zp) };
        let mut b = BTreeMap::new();
        for &w in t.boundary() {
            let (a, c) = t.boundary_neighbors(w).expect("on boundary");
            let count = [a, c].iter().filter(|&&u| u == x || u == y).count();
            b.insert(w, count as u8);
        }
        Ok(BoundaryContext {
            x,
            y,
            z,
            z_prime,
            z_double,
            b,
        })
    }

    /// Context with an explicitly chosen `z'`, which must be a boundary
    /// neighbor of `z`.
    pub fn with_z_prime(
        t: &NearTriangulation,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        z_prime: Vertex,
    ) -> Result<BoundaryContext, GraphError> {
        let mut ctx = Self::new(t, x, y, z)?;
        if z_prime == ctx.z_double {
            std::mem::swap(&mut ctx.z_prime, &mut ctx.z_double);
        } else if z_prime != ctx.z_prime {
            return Err(GraphError::Contract(format!(
                "{z_prime} is not a boundary neighbor of {z}"
            )));
        }
        Ok(ctx)
    }

    /// Number of root vertices among the boundary neighbors of `w`.
    pub fn b_value(&self, w: Vertex) -> Result<u8, GraphError> {
        self.b
            .get(&w)
            .copied()
            .ok_or_else(|| GraphError::Contract(format!("{w} is not a boundary vertex")))
    }

    pub fn b_values(&self) -> &BTreeMap<Vertex, u8> {
        &self.b
    }

    /// True when `z` is a boundary neighbor of `x` or of `y`.
    pub fn z_touches_root(&self) -> bool {
        self.b.get(&self.z).copied().unwrap_or(0) > 0
    }
}
