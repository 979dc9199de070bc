//! Deterministic instance generators.
//!
//! Random choices come from a PCG-XSH-RR 64/32 generator (`rand_pcg::Pcg32`)
//! created as `Pcg32::new(seed, 0xa02bdbf7bb3c0a7)`. A face is chosen from a
//! list of `len` faces as `(next_u32() * len) >> 32`, computed in 64-bit
//! arithmetic. Both rules are part of the output contract: changing either
//! changes every seeded corpus.

use rand_core::RngCore;
use rand_pcg::Pcg32;

use crate::error::GraphError;
use crate::plane::{default_outer, stack_into, NearTriangulation, PlaneGraph};
use crate::Vertex;

const STREAM: u64 = 0xa02bdbf7bb3c0a7;

/// The seeded generator every family draws from.
pub fn rng(seed: u64) -> Pcg32 {
    Pcg32::new(seed, STREAM)
}

/// Uniform index below `len` from one 32-bit draw.
pub fn pick(rng: &mut Pcg32, len: usize) -> usize {
    ((rng.next_u32() as u64 * len as u64) >> 32) as usize
}

fn k3() -> PlaneGraph {
    PlaneGraph::from_rotations(vec![vec![2, 3], vec![3, 1], vec![1, 2]]).expect("K3 is plane")
}

fn with_default_outer(g: PlaneGraph) -> NearTriangulation {
    let outer = default_outer(&g).expect("generated graphs have faces");
    NearTriangulation::new(g, outer).expect("generated graphs are triangulations")
}

/// Stacked triangulation on `n` vertices: start from the triangle `1 2 3`
/// and insert vertices `4..=n` one at a time into a seeded face, joining
/// each to the three corners.
///
/// The face list starts as `[(1,2,3), (1,3,2)]`; inserting `v` into face
/// `(a,b,c)` at index `i` replaces it by `(a,b,v)` and appends `(b,c,v)` and
/// `(c,a,v)`.
///
/// # Panics
///
/// If `n < 3`.
pub fn stacked_triangulation(n: usize, seed: u64) -> NearTriangulation {
    assert!(n >= 3, "a stacked triangulation needs at least 3 vertices");
    let mut g = k3();
    let mut faces: Vec<[Vertex; 3]> = vec![[1, 2, 3], [1, 3, 2]];
    let mut r = rng(seed);
    for _ in 3..n {
        let i = pick(&mut r, faces.len());
        let [a, b, c] = faces[i];
        let v = stack_into(&mut g, a, b, c);
        faces[i] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    with_default_outer(g)
}

/// Tetrahedron, octahedron or icosahedron with the standard numbering.
pub fn named_solid(name: &str) -> Result<NearTriangulation, GraphError> {
    let (n, tris): (usize, Vec<[Vertex; 3]>) = match name {
        "tetrahedron" => (4, vec![[1, 2, 3], [1, 3, 4], [1, 4, 2], [2, 4, 3]]),
        "octahedron" => {
            let ring = [2, 3, 4, 5];
            let mut t = Vec::new();
            for k in 0..4 {
                let (a, b) = (ring[k], ring[(k + 1) % 4]);
                t.push([1, a, b]);
                t.push([6, b, a]);
            }
            (6, t)
        }
        "icosahedron" => {
            // 1 on top, 2..=6 upper ring, 7..=11 lower ring, 12 at the bottom.
            let mut t = Vec::new();
            for k in 0..5u32 {
                let (a0, a1) = (2 + k, 2 + (k + 1) % 5);
                let (b0, b1) = (7 + k, 7 + (k + 1) % 5);
                t.push([1, a0, a1]);
                t.push([a0, b0, a1]);
                t.push([a1, b0, b1]);
                t.push([12, b1, b0]);
            }
            (12, t)
        }
        other => {
            return Err(GraphError::Contract(format!(
                "unknown solid {other:?} (expected tetrahedron, octahedron or icosahedron)"
            )))
        }
    };
    Ok(with_default_outer(PlaneGraph::from_triangles(n, &tris)?))
}

/// The `k`-cycle `1..=k` with hubs `k+1` and `k+2` joined to every cycle
/// vertex.
///
/// # Panics
///
/// If `k < 3`.
pub fn double_wheel(k: usize) -> NearTriangulation {
    assert!(k >= 3, "a double wheel needs a cycle of length at least 3");
    let (top, bottom) = (k as Vertex + 1, k as Vertex + 2);
    let mut tris = Vec::with_capacity(2 * k);
    for i in 0..k as Vertex {
        let (a, b) = (i + 1, (i + 1) % k as Vertex + 1);
        tris.push([top, a, b]);
        tris.push([bottom, b, a]);
    }
    with_default_outer(PlaneGraph::from_triangles(k + 2, &tris).expect("double wheel is a sphere"))
}

/// Result of [`stellate`].
#[derive(Debug, Clone)]
pub struct Stellation {
    pub graph: PlaneGraph,
    /// Number of vertices of the triangulation that was stellated; they keep
    /// their ids.
    pub original: usize,
    /// The added face vertices, in the order the faces were traced.
    pub face_vertices: Vec<Vertex>,
}

impl Stellation {
    pub fn is_face_vertex(&self, v: Vertex) -> bool {
        self.face_vertices.binary_search(&v).is_ok()
    }

    /// The stellation as a near triangulation with the default outer face.
    pub fn to_near_triangulation(&self) -> NearTriangulation {
        with_default_outer(self.graph.clone())
    }
}

/// Adds a vertex inside every face of a triangulation, joined to the three
/// corners of that face.
pub fn stellate(t: &PlaneGraph) -> Result<Stellation, GraphError> {
    if !t.is_triangulation() {
        return Err(GraphError::Contract("stellation needs a triangulation".into()));
    }
    let faces = t.trace_faces()?;
    let mut g = t.clone();
    let mut face_vertices = Vec::with_capacity(faces.len());
    for f in &faces {
        let v = f.vertices();
        face_vertices.push(stack_into(&mut g, v[0], v[1], v[2]));
    }
    Ok(Stellation {
        graph: g,
        original: t.n(),
        face_vertices,
    })
}

/// Instance families known to the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Stacked,
    Solid,
    DoubleWheel,
    Stellate,
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "stacked" => Ok(Family::Stacked),
            "solid" => Ok(Family::Solid),
            "double-wheel" => Ok(Family::DoubleWheel),
            "stellate" => Ok(Family::Stellate),
            _ => Err(format!("unknown family {s:?}")),
        }
    }
}

/// A reproducible request for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    /// Vertex count for `stacked` and for the base of `stellate`; cycle
    /// length for `double-wheel`; ignored by `solid`.
    pub n: usize,
    pub seed: u64,
    /// Solid name for `solid`.
    pub name: Option<String>,
}

/// Builds the instance described by `spec`. Triangulations carry their
/// default outer face.
pub fn generate(spec: &GenSpec) -> Result<NearTriangulation, GraphError> {
    match spec.family {
        Family::Stacked => {
            if spec.n < 3 {
                return Err(GraphError::TooSmall(spec.n));
            }
            Ok(stacked_triangulation(spec.n, spec.seed))
        }
        Family::Solid => named_solid(spec.name.as_deref().unwrap_or("icosahedron")),
        Family::DoubleWheel => {
            if spec.n < 3 {
                return Err(GraphError::TooSmall(spec.n));
            }
            Ok(double_wheel(spec.n))
        }
        Family::Stellate => {
            let base = match spec.name.as_deref() {
                Some(name) => named_solid(name)?,
                None if spec.n >= 3 => stacked_triangulation(spec.n, spec.seed),
                None => return Err(GraphError::TooSmall(spec.n)),
            };
            Ok(stellate(base.graph())?.to_near_triangulation())
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_stacked() {
        let t = stacked_triangulation(3, 9);
        assert_eq!(t.graph().edges(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(t.boundary(), &[1, 2, 3]);
        let t = stacked_triangulation(4, 9);
        assert_eq!(t.graph().num_edges(), 6);
        assert!((1..=4).all(|v| t.graph().degree(v) == 3));
    }

    #[test]
    fn stacked_is_seed_deterministic() {
        for seed in 0..5 {
            assert_eq!(stacked_triangulation(50, seed), stacked_triangulation(50, seed));
        }
        assert_ne!(stacked_triangulation(50, 1), stacked_triangulation(50, 2));
    }

    #[test]
    fn stacked_outer_face_has_the_smallest_vertex_set() {
        for seed in 0..20 {
            let t = stacked_triangulation(12, seed);
            let mut b = t.boundary().to_vec();
            b.sort_unstable();
            let best = t
                .graph()
                .trace_faces()
                .unwrap()
                .iter()
                .map(|f| {
                    let mut k = f.vertices();
                    k.sort_unstable();
                    k
                })
                .min()
                .unwrap();
            assert_eq!(b, best);
            assert_eq!(&b[..2], &[1, 2]);
        }
    }

    #[test]
    fn solids() {
        let t = named_solid("tetrahedron").unwrap();
        assert_eq!((t.n(), t.graph().num_edges()), (4, 6));
        let o = named_solid("octahedron").unwrap();
        assert_eq!((o.n(), o.graph().num_edges()), (6, 12));
        assert!(o.graph().vertices().all(|v| o.graph().degree(v) == 4));
        let i = named_solid("icosahedron").unwrap();
        assert_eq!((i.n(), i.graph().num_edges()), (12, 30));
        assert!(i.graph().vertices().all(|v| i.graph().degree(v) == 5));
        assert!(named_solid("cube").is_err());
    }

    #[test]
    fn double_wheels() {
        let w = double_wheel(3);
        assert_eq!(w.n(), 5);
        assert_eq!(w.graph().degree(4), 3);
        assert_eq!(w.graph().degree(5), 3);
        for k in 3..30 {
            let w = double_wheel(k);
            assert_eq!(w.graph().num_edges(), 3 * (k + 2) - 6);
            assert!(w.graph().is_triangulation());
            assert!((1..=k as Vertex).all(|v| w.graph().degree(v) == 4));
        }
        // k = 4 is the octahedron: 4-regular on 6 vertices.
        let w = double_wheel(4);
        assert!(w.graph().vertices().all(|v| w.graph().degree(v) == 4));
    }

    #[test]
    fn stellation_counts() {
        let k4 = named_solid("tetrahedron").unwrap();
        let s = stellate(k4.graph()).unwrap();
        assert_eq!((s.graph.n(), s.graph.num_edges()), (8, 18));
        let ico = named_solid("icosahedron").unwrap();
        let s = stellate(ico.graph()).unwrap();
        assert_eq!((s.graph.n(), s.graph.num_edges()), (32, 90));
        assert!(s.face_vertices.iter().all(|&v| s.graph.degree(v) == 3));
        assert!(s.graph.is_triangulation());
    }
}
