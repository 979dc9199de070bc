use std::collections::HashSet;

use super::{NearTriangulation, PlaneGraph};
use crate::error::GraphError;
use crate::{edge, Edge, Vertex};

/// What a triangulation added to the graph it was built from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    /// Vertex ids that are not in the input graph.
    pub added_vertices: Vec<Vertex>,
    /// Edges (with at least one endpoint original or not) absent from the
    /// input graph, sorted.
    pub added_edges: Vec<Edge>,
}

impl Provenance {
    pub fn is_identity(&self) -> bool {
        self.added_vertices.is_empty() && self.added_edges.is_empty()
    }
}

/// Extends `g` to a simple plane triangulation.
///
/// Components are first joined by single edges. Then every face whose walk
/// is not a triangle receives a new apex vertex joined once to each distinct
/// vertex of the walk; faces created this way that are still not triangles
/// (walks that revisited a vertex) are treated again. The outer face of the
/// result is chosen by [`default_outer`].
pub fn triangulate(g: &PlaneGraph) -> Result<(NearTriangulation, Provenance), GraphError> {
    g.validate()?;
    let mut t = g.clone();
    let mut added = Vec::new();
    grow_to_edge(&mut t, &mut added);
    connect_components(&mut t, &mut added);
    loop {
        let faces = t.trace_faces()?;
        let open: Vec<Vec<Vertex>> = faces
            .iter()
            .filter(|f| f.len() != 3)
            .map(|f| f.vertices())
            .collect();
        if open.is_empty() {
            break;
        }
        for walk in open {
            let a = insert_apex(&mut t, &walk);
            for w in distinct(&walk) {
                added.push(edge(a, w));
            }
        }
    }
    finish(g, t, added)
}

/// Extends `g` to a simple plane triangulation adding edges wherever a face
/// allows it and apex vertices only where no edge can be added.
///
/// Faces are cut by ears: a new edge `w_i w_{i+2}` is placed inside the
/// face whenever the two ends differ and are not yet adjacent. A face of
/// length at least four bounded by a cycle always has such an ear, so apex
/// vertices appear only for faces whose walks revisit vertices.
pub fn saturate(g: &PlaneGraph) -> Result<(NearTriangulation, Provenance), GraphError> {
    g.validate()?;
    let mut t = g.clone();
    let mut added = Vec::new();
    grow_to_edge(&mut t, &mut added);
    connect_components(&mut t, &mut added);
    let walks: Vec<Vec<Vertex>> = t.trace_faces()?.iter().map(|f| f.vertices()).collect();
    fill_faces(&mut t, walks, &mut added)?;
    finish(g, t, added)
}

fn finish(
    g: &PlaneGraph,
    t: PlaneGraph,
    mut added: Vec<Edge>,
) -> Result<(NearTriangulation, Provenance), GraphError> {
    added.sort_unstable();
    added.dedup();
    let added_vertices = t.vertices().filter(|&v| !g.contains(v)).collect();
    let outer = default_outer(&t)?;
    let nt = NearTriangulation::new(t, outer)?;
    Ok((
        nt,
        Provenance {
            added_vertices,
            added_edges: added,
        },
    ))
}

/// Ear-cuts every walk in `walks`, falling back to apex insertion, until
/// the faces they describe are all triangles.
pub(crate) fn fill_faces(
    t: &mut PlaneGraph,
    walks: Vec<Vec<Vertex>>,
    added: &mut Vec<Edge>,
) -> Result<(), GraphError> {
    let mut todo = walks;
    let mut rounds = 0usize;
    while let Some(walk) = todo.pop() {
        if walk.len() == 3 {
            continue;
        }
        let stuck = if walk.len() == 2 {
            Some(walk)
        } else {
            ear_fill(t, walk, added)
        };
        if let Some(stuck) = stuck {
            rounds += 1;
            if rounds > 4 * t.n() + 16 {
                return Err(GraphError::Contract("face filling does not terminate".into()));
            }
            let a = insert_apex(t, &stuck);
            for w in distinct(&stuck) {
                added.push(edge(a, w));
            }
            let mut seen = HashSet::new();
            for &w in t.rotation(a).to_vec().iter() {
                let walk = walk_from(t, (a, w))?;
                let key = canonical(&walk);
                if seen.insert(key) {
                    todo.push(walk);
                }
            }
        }
    }
    Ok(())
}

/// Cuts ears off a face walk in place. Returns the remaining walk if it is
/// longer than a triangle and has no ear.
pub(crate) fn ear_fill(
    t: &mut PlaneGraph,
    mut walk: Vec<Vertex>,
    added: &mut Vec<Edge>,
) -> Option<Vec<Vertex>> {
    let mut i = 0;
    let mut misses = 0;
    while walk.len() > 3 {
        let l = walk.len();
        let (p, a, b, c) = (
            walk[(i + l - 1) % l],
            walk[i % l],
            walk[(i + 1) % l],
            walk[(i + 2) % l],
        );
        if a != c && !t.has_edge(a, c) {
            t.add_edge_at(a, Some(p), c, Some(b));
            added.push(edge(a, c));
            walk.remove((i + 1) % l);
            i %= walk.len();
            misses = 0;
        } else {
            i = (i + 1) % l;
            misses += 1;
            if misses >= l {
                return Some(walk);
            }
        }
    }
    None
}

/// Places a new vertex inside the face with vertex walk `walk`, joined to
/// the first occurrence of each distinct vertex.
pub(crate) fn insert_apex(t: &mut PlaneGraph, walk: &[Vertex]) -> Vertex {
    let a = t.add_vertex();
    let l = walk.len();
    let mut taken = HashSet::new();
    let mut order = Vec::new();
    for i in 0..l {
        let w = walk[i];
        if taken.insert(w) {
            let incoming = walk[(i + l - 1) % l];
            t.insert_before(w, a, Some(incoming));
            order.push(w);
        }
    }
    t.set_rotation(a, order);
    a
}

/// Inserts a new vertex into the triangular face walk `(a, b, c)` and
/// returns it.
pub(crate) fn stack_into(t: &mut PlaneGraph, a: Vertex, b: Vertex, c: Vertex) -> Vertex {
    insert_apex(t, &[a, b, c])
}

fn distinct(walk: &[Vertex]) -> Vec<Vertex> {
    let mut seen = HashSet::new();
    walk.iter().copied().filter(|&w| seen.insert(w)).collect()
}

fn canonical(walk: &[Vertex]) -> Vec<Vertex> {
    let start = (0..walk.len()).min_by_key(|&i| walk[i]).unwrap_or(0);
    walk[start..].iter().chain(&walk[..start]).copied().collect()
}

pub(crate) fn walk_from(t: &PlaneGraph, dart: (Vertex, Vertex)) -> Result<Vec<Vertex>, GraphError> {
    let mut walk = Vec::new();
    let mut cur = dart;
    loop {
        walk.push(cur.0);
        cur = t.face_successor(cur)?;
        if cur == dart {
            return Ok(walk);
        }
    }
}

/// Faces containing a dart out of one of `seeds`, each once.
pub(crate) fn faces_at(t: &PlaneGraph, seeds: &[Vertex]) -> Result<Vec<Vec<Vertex>>, GraphError> {
    let mut seen: HashSet<(Vertex, Vertex)> = HashSet::new();
    let mut out = Vec::new();
    for &s in seeds {
        if !t.contains(s) {
            continue;
        }
        for &w in t.rotation(s) {
            if seen.contains(&(s, w)) {
                continue;
            }
            let walk = walk_from(t, (s, w))?;
            let l = walk.len();
            for i in 0..l {
                seen.insert((walk[i], walk[(i + 1) % l]));
            }
            out.push(walk);
        }
    }
    Ok(out)
}

/// Makes sure a graph with fewer than two edges has something to grow
/// from: a lone vertex gets a partner, and an edgeless graph gets a path.
fn grow_to_edge(t: &mut PlaneGraph, added: &mut Vec<Edge>) {
    if t.n() == 1 {
        let v = t.vertices().next().expect("one vertex");
        let w = t.add_vertex();
        t.add_edge_at(v, None, w, None);
        added.push(edge(v, w));
    }
}

/// Joins every component to the one holding the smallest vertex.
pub(crate) fn connect_components(t: &mut PlaneGraph, added: &mut Vec<Edge>) {
    let comps = t.components();
    if comps.len() <= 1 {
        return;
    }
    let hub = comps[0][0];
    for c in &comps[1..] {
        let w = c[0];
        let before_hub = t.rotation(hub).first().copied();
        let before_w = t.rotation(w).first().copied();
        t.add_edge_at(hub, before_hub, w, before_w);
        added.push(edge(hub, w));
    }
}

/// The face used as outer face for generated and triangulated graphs: the
/// one whose sorted vertex set is lexicographically smallest, ties broken by
/// the walk read from its smallest vertex.
pub fn default_outer(g: &PlaneGraph) -> Result<Vec<Vertex>, GraphError> {
    let faces = g.trace_faces()?;
    faces
        .iter()
        .map(|f| {
            let walk = f.canonical_vertices();
            let mut key = walk.clone();
            key.sort_unstable();
            (key, walk)
        })
        .min()
        .map(|(_, walk)| walk)
        .ok_or(GraphError::TooSmall(g.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn c4() -> PlaneGraph {
        PlaneGraph::from_rotations(vec![vec![2, 4], vec![3, 1], vec![4, 2], vec![1, 3]]).unwrap()
    }

    #[test]
    fn four_cycle_gets_two_apexes() {
        let (t, prov) = triangulate(&c4()).unwrap();
        assert_eq!(t.n(), 6);
        assert_eq!(t.graph().num_edges(), 12);
        assert_eq!(t.graph().trace_faces().unwrap().len(), 8);
        assert_eq!(prov.added_vertices, vec![5, 6]);
        assert!(t.graph().is_triangulation());
    }

    #[test]
    fn tetrahedron_is_left_alone() {
        let k4 = gen::named_solid("tetrahedron").unwrap();
        let (t, prov) = triangulate(k4.graph()).unwrap();
        assert!(prov.is_identity());
        assert_eq!(t.graph(), k4.graph());
        let (t, prov) = saturate(k4.graph()).unwrap();
        assert!(prov.is_identity());
        assert_eq!(t.graph(), k4.graph());
    }

    #[test]
    fn two_disjoint_triangles() {
        let g = PlaneGraph::from_rotations(vec![
            vec![2, 3],
            vec![3, 1],
            vec![1, 2],
            vec![5, 6],
            vec![6, 4],
            vec![4, 5],
        ])
        .unwrap();
        for (t, prov) in [triangulate(&g).unwrap(), saturate(&g).unwrap()] {
            assert!(t.graph().is_triangulation());
            for (u, v) in g.edges() {
                assert!(t.graph().has_edge(u, v));
            }
            for &(u, v) in &prov.added_edges {
                assert!(!g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn saturate_cycle_adds_no_vertices() {
        let (t, prov) = saturate(&c4()).unwrap();
        assert!(prov.added_vertices.is_empty());
        assert_eq!(t.n(), 4);
        assert!(t.graph().is_triangulation());
    }

    #[test]
    fn star_and_path_and_small() {
        // Star K_{1,4}: face walk revisits the center.
        let star = PlaneGraph::from_rotations(vec![
            vec![2, 3, 4, 5],
            vec![1],
            vec![1],
            vec![1],
            vec![1],
        ])
        .unwrap();
        for g in [star, PlaneGraph::empty(1), PlaneGraph::empty(4)] {
            for (t, _) in [triangulate(&g).unwrap(), saturate(&g).unwrap()] {
                assert!(t.graph().is_triangulation(), "{:?}", t.graph());
            }
        }
    }
}
