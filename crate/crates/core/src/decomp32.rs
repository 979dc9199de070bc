//! `(3,2)`-decompositions of near triangulations.
//!
//! [`decompose32`] returns a pair `(D, H)` with `D` acyclic of out-degree at
//! most 3 and `H` of maximum degree at most 2, rooted at a boundary edge
//! `xy`, a boundary vertex `z` on no chord and, when `z` is not next to `x`
//! or `y`, one of its boundary neighbors `z'`. [`check_32`] lists the rooted
//! conditions.
//!
//! Like [`crate::decomp26`], the recursion labels the edges of the input in
//! place and checks every level as it returns.

use crate::error::{invariant, DecompError};
use crate::labeling::{Label, Labeling};
use crate::plane::{BoundaryContext, NearTriangulation};
use crate::region::Region;
use crate::verify::{conditions_32, labeled_structure, ConditionReport, LabeledPiece};
use crate::{Edge, Vertex};

pub use crate::verify::{check_32, DecompPair};

/// The step taken at one level of the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case32 {
    /// `G = K3`.
    Base,
    /// The boundary is the triangle `xyz`; recurse on `G - z`.
    Triangle,
    /// A chord has `x`, `y` and `z` on one side.
    ChordOneSide,
    /// Every chord separates `z` from `xy`.
    ChordSeparates,
    /// No chord, and `G - z` has no chord at `w`.
    Peel,
    /// No chord, and `G - z` has a chord at `w`.
    Split,
}

impl Case32 {
    pub fn label(self) -> &'static str {
        match self {
            Case32::Base => "base",
            Case32::Triangle => "1",
            Case32::ChordOneSide => "2-1",
            Case32::ChordSeparates => "2-2",
            Case32::Peel => "3-1",
            Case32::Split => "3-2",
        }
    }
}

/// First boundary vertex on no chord, scanning from `y` away from `x`.
///
/// ```
/// use dhdecomp::{decomp32, gen};
///
/// let t = gen::named_solid("octahedron").unwrap();
/// let b = t.boundary().to_vec();
/// assert_eq!(decomp32::choose_z(&t, b[0], b[1]).unwrap(), b[2]);
/// ```
pub fn choose_z(t: &NearTriangulation, x: Vertex, y: Vertex) -> Result<Vertex, DecompError> {
    let r = Region::whole(t);
    if !r.is_boundary(x) || !r.is_boundary_edge(x, y) {
        return Err(DecompError::Precondition(format!("{x}{y} is not a boundary edge")));
    }
    choose_z_in(&r, x, y)
}

fn choose_z_in(r: &Region, x: Vertex, y: Vertex) -> Result<Vertex, DecompError> {
    let fwd = r.next(x) == y;
    let step = |v: Vertex| if fwd { r.next(v) } else { r.prev(v) };
    let mut cur = step(y);
    while cur != x {
        if r.chords_at(cur).is_empty() {
            return Ok(cur);
        }
        cur = step(cur);
    }
    Err(invariant("choose_z", format!("every boundary vertex off {x}{y} is on a chord")))
}

/// The `z'` used when none is given: the boundary neighbor of `z` met first
/// on the walk from `x` through `y`.
fn default_z_prime(r: &Region, x: Vertex, y: Vertex, z: Vertex) -> Vertex {
    if r.next(x) == y {
        r.prev(z)
    } else {
        r.next(z)
    }
}

fn touches(r: &Region, x: Vertex, y: Vertex, z: Vertex) -> bool {
    [r.prev(z), r.next(z)].iter().any(|&w| w == x || w == y)
}

/// A `(3,2)`-decomposition of `t` with respect to `(x, y, z)` or
/// `(x, y, z, z')`.
///
/// `z` must be a boundary vertex other than `x` and `y` on no chord. When
/// `z` is not a boundary neighbor of `x` or `y` the decomposition is rooted
/// at a `z'` as well; `z_prime` picks it, and `None` takes the neighbor of
/// `z` that the walk from `x` through `y` reaches first. Passing a `z'` when
/// `z` is next to `x` or `y` is an error.
pub fn decompose32(
    t: &NearTriangulation,
    x: Vertex,
    y: Vertex,
    z: Vertex,
    z_prime: Option<Vertex>,
) -> Result<DecompPair, DecompError> {
    decompose32_traced(t, x, y, z, z_prime).map(|(p, _)| p)
}

/// As [`decompose32`], also returning the cases taken, in order.
pub fn decompose32_traced(
    t: &NearTriangulation,
    x: Vertex,
    y: Vertex,
    z: Vertex,
    z_prime: Option<Vertex>,
) -> Result<(DecompPair, Vec<Case32>), DecompError> {
    let zp = root_z_prime(t, x, y, z, z_prime)?;
    let r = Region::whole(t);
    let mut run = Run {
        lab: Labeling::new(t.graph()),
        trace: Vec::new(),
    };
    run.rec(&r, x, y, z, zp)?;
    Ok((run.lab.to_pair(&r), run.trace))
}

/// The context [`check_32`] should be given for a call to [`decompose32`]
/// with the same arguments.
pub fn context32(
    t: &NearTriangulation,
    x: Vertex,
    y: Vertex,
    z: Vertex,
    z_prime: Option<Vertex>,
) -> Result<BoundaryContext, DecompError> {
    let zp = root_z_prime(t, x, y, z, z_prime)?;
    let ctx = match zp {
        Some(w) => BoundaryContext::with_z_prime(t, x, y, z, w)?,
        None => BoundaryContext::new(t, x, y, z)?,
    };
    Ok(ctx)
}

fn root_z_prime(
    t: &NearTriangulation,
    x: Vertex,
    y: Vertex,
    z: Vertex,
    z_prime: Option<Vertex>,
) -> Result<Option<Vertex>, DecompError> {
    let pre = |m: String| DecompError::Precondition(m);
    BoundaryContext::new(t, x, y, z).map_err(|e| pre(e.to_string()))?;
    let r = Region::whole(t);
    if !r.chords_at(z).is_empty() {
        return Err(pre(format!("z = {z} is incident with a chord")));
    }
    match (touches(&r, x, y, z), z_prime) {
        (true, None) => Ok(None),
        (true, Some(w)) => Err(pre(format!(
            "z' = {w} given although z = {z} is a boundary neighbor of x or y"
        ))),
        (false, None) => Ok(Some(default_z_prime(&r, x, y, z))),
        (false, Some(w)) if r.prev(z) == w || r.next(z) == w => Ok(Some(w)),
        (false, Some(w)) => Err(pre(format!("z' = {w} is not a boundary neighbor of {z}"))),
    }
}

/// Boundary positions of chord endpoints, as prefix counts, so that "is
/// there a chord inside this stretch of boundary" is constant time. Chords
/// do not cross, so a side cut off by a chord has a chord of its own exactly
/// when some boundary vertex strictly inside its walk is on a chord.
struct ChordIndex {
    len: usize,
    prefix: Vec<usize>,
}

impl ChordIndex {
    fn new(r: &Region) -> ChordIndex {
        let mut prefix = vec![0];
        for &v in r.boundary() {
            let on = usize::from(!r.chords_at(v).is_empty());
            prefix.push(prefix.last().unwrap() + on);
        }
        ChordIndex {
            len: r.boundary().len(),
            prefix,
        }
    }

    /// Chord endpoints strictly between `a` and `b` on the forward walk.
    fn inside(&self, r: &Region, a: Vertex, b: Vertex) -> usize {
        let (i, j) = (r.bpos(a).unwrap(), r.bpos(b).unwrap());
        let count = |lo: usize, hi: usize| self.prefix[hi] - self.prefix[lo];
        if i < j {
            count(i + 1, j)
        } else {
            count(i + 1, self.len) + count(0, j)
        }
    }
}

/// Among chords `uv` with their candidate side given as the forward walk
/// `a -> b`, the one whose side has fewest vertices, ties broken by the
/// chord. Only chordless sides are sized: any other contains a smaller one.
fn minimal_side(r: &Region, candidates: &[(Edge, (Vertex, Vertex))]) -> Option<(Edge, (Vertex, Vertex))> {
    let index = ChordIndex::new(r);
    candidates
        .iter()
        .filter(|(_, (a, b))| index.inside(r, *a, *b) == 0)
        .map(|&(c, (a, b))| ((r.enclosed_count(&r.walk_forward(a, b)), c), (c, (a, b))))
        .min_by_key(|&(key, _)| key)
        .map(|(_, pick)| pick)
}

struct Run<'g> {
    lab: Labeling<'g>,
    trace: Vec<Case32>,
}

impl<'g> Run<'g> {
    fn rec(
        &mut self,
        r: &Region<'g>,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        zp: Option<Vertex>,
    ) -> Result<(), DecompError> {
        stacker::maybe_grow(256 * 1024, 4 * 1024 * 1024, || {
            self.step(r, x, y, z, zp)?;
            self.check(r, x, y, z, zp)
        })
    }

    fn step(
        &mut self,
        r: &Region<'g>,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        zp: Option<Vertex>,
    ) -> Result<(), DecompError> {
        if r.len() == 3 {
            self.trace.push(Case32::Base);
            self.lab.set_arc(x, y);
            self.lab.set_arc(z, x);
            self.lab.set_arc(z, y);
            return Ok(());
        }
        if r.boundary().len() == 3 {
            return self.triangle(r, x, y, z);
        }
        let chords = r.chords();
        if !chords.is_empty() {
            return self.chord(r, x, y, z, zp, &chords);
        }
        self.chordless(r, x, y, z, zp)
    }

    fn triangle(&mut self, r: &Region<'g>, x: Vertex, y: Vertex, z: Vertex) -> Result<(), DecompError> {
        self.trace.push(Case32::Triangle);
        let inner = r.inner_neighbors(z);
        let g = r.without_vertex(z)?;
        let w = choose_z_in(&g, x, y)?;
        let wp = (!touches(&g, x, y, w)).then(|| default_z_prime(&g, x, y, w));
        self.rec(&g, x, y, w, wp)?;
        self.lab.set_arc(z, y);
        self.lab.set_arc(z, x);
        for u in inner {
            self.lab.set_arc(u, z);
        }
        Ok(())
    }

    /// Recurses on `g2`, rooted at its boundary edge `uv`, keeping the labels
    /// the rest of the graph gave to `kept`. With `glue`, first asserts that
    /// the piece is attached only through `uv`.
    fn inner_piece(
        &mut self,
        g2: &Region<'g>,
        root: (Vertex, Vertex, Vertex, Option<Vertex>),
        kept: &[Edge],
        glue: Option<&'static str>,
    ) -> Result<(), DecompError> {
        let saved: Vec<Label> = kept.iter().map(|&(a, b)| self.lab.get(a, b)).collect();
        let (u, v, z, zp) = root;
        self.rec(g2, u, v, z, zp)?;
        if let Some(case) = glue {
            self.glued_at(g2, u, v, case)?;
        }
        for (&(a, b), l) in kept.iter().zip(saved) {
            self.lab.set(a, b, l);
        }
        Ok(())
    }

    /// Only `uv` itself may connect the roots `u`, `v` of a piece to the
    /// rest of it through arcs leaving them, and neither may have a hedge.
    fn glued_at(&self, g2: &Region<'g>, u: Vertex, v: Vertex, case: &'static str) -> Result<(), DecompError> {
        if self.lab.out_neighbors(g2, u) != [v]
            || self.lab.out_degree(g2, v) != 0
            || self.lab.h_degree(g2, u) + self.lab.h_degree(g2, v) != 0
        {
            return Err(invariant(case, format!("piece rooted at {u}{v} sends arcs or hedges out of them")));
        }
        Ok(())
    }

    fn chord(
        &mut self,
        r: &Region<'g>,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        zp: Option<Vertex>,
        chords: &[Edge],
    ) -> Result<(), DecompError> {
        let mut one_side = Vec::new();
        let mut separating = Vec::new();
        for &(u, v) in chords {
            let fwd = [x, y, z].map(|w| r.on_walk(u, v, w));
            if fwd.iter().all(|&f| f) {
                one_side.push(((u, v), (v, u)));
            } else if [x, y, z].iter().all(|&w| r.on_walk(v, u, w)) {
                one_side.push(((u, v), (u, v)));
            } else {
                let near = if fwd[0] && fwd[1] { (u, v) } else { (v, u) };
                separating.push(((u, v), near));
            }
        }
        if !one_side.is_empty() {
            const CASE: &str = "2-1";
            self.trace.push(Case32::ChordOneSide);
            let ((u, v), (a, b)) =
                minimal_side(r, &one_side).ok_or_else(|| invariant(CASE, "no chordless far side"))?;
            let g2 = r.side(a, b)?;
            let g1 = r.side(b, a)?;
            self.rec(&g1, x, y, z, zp)?;
            let z2 = if g2.next(v) == u { g2.prev(v) } else { g2.next(v) };
            self.inner_piece(&g2, (u, v, z2, None), &[(u, v)], Some(CASE))
        } else {
            const CASE: &str = "2-2";
            self.trace.push(Case32::ChordSeparates);
            let ((u, v), (a, b)) =
                minimal_side(r, &separating).ok_or_else(|| invariant(CASE, "no chordless near side"))?;
            let g1 = r.side(a, b)?;
            let g2 = r.side(b, a)?;
            if g1.contains(z) || !g2.contains(z) {
                return Err(invariant(CASE, format!("chord {u}{v} does not separate z = {z} from xy")));
            }
            let w = if g1.next(x) == y { g1.prev(x) } else { g1.next(x) };
            self.rec(&g1, x, y, w, None)?;
            let zp2 = if touches(&g2, u, v, z) {
                None
            } else {
                Some(zp.ok_or_else(|| invariant(CASE, format!("z = {z} is away from {u}{v} but has no z'")))?)
            };
            self.inner_piece(&g2, (u, v, z, zp2), &[(u, v)], Some(CASE))
        }
    }

    fn chordless(
        &mut self,
        r: &Region<'g>,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        zp: Option<Vertex>,
    ) -> Result<(), DecompError> {
        const CASE: &str = "3";
        let roots = |v: Vertex| v == x || v == y || Some(v) == zp;
        let (w, ws) = match (r.prev(z), r.next(z)) {
            (a, b) if !roots(a) => (a, b),
            (a, b) => (b, a),
        };
        if roots(w) || !roots(ws) {
            return Err(invariant(CASE, format!("boundary neighbors {w}, {ws} of z = {z} do not split as expected")));
        }
        let inner = r.inner_neighbors(z);
        let g = r.without_vertex(z)?;
        let wps: Vec<Vertex> = [g.prev(w), g.next(w)].into_iter().filter(|&v| !r.is_boundary(v)).collect();
        let wp = match wps[..] {
            [v] => v,
            _ => return Err(invariant(CASE, format!("w = {w} has {} interior neighbors on C'", wps.len()))),
        };
        match g.chords_at(w).first() {
            None => self.peel(r, &g, x, y, z, w, ws, wp, &inner),
            Some(&v) => self.split(r, x, y, z, zp, w, v, wp, &inner),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn peel(
        &mut self,
        r: &Region<'g>,
        g: &Region<'g>,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        w: Vertex,
        ws: Vertex,
        wp: Vertex,
        inner: &[Vertex],
    ) -> Result<(), DecompError> {
        const CASE: &str = "3-1";
        self.trace.push(Case32::Peel);
        let other = if r.prev(w) == z { r.next(w) } else { r.prev(w) };
        let wp = (other != x && other != y).then_some(wp);
        self.rec(g, x, y, w, wp)?;
        let hw = self.lab.h_degree(g, w);
        if hw == 2 && self.lab.out_degree(g, w) != 0 {
            return Err(invariant(CASE, format!("w = {w} has two hedges and an out-arc")));
        }
        for &u in inner {
            self.lab.set_arc(u, z);
        }
        if ws == x || ws == y {
            if hw <= 1 {
                self.lab.set_hedge(z, w);
            } else {
                self.lab.set_arc(w, z);
            }
            self.lab.set_arc(z, ws);
        } else {
            match (hw <= 1, self.lab.out_degree(g, ws) <= 1) {
                (true, true) => {
                    self.lab.set_arc(ws, z);
                    self.lab.set_hedge(z, w);
                }
                (false, true) => {
                    self.lab.set_arc(ws, z);
                    self.lab.set_arc(w, z);
                }
                (true, false) => {
                    self.lab.set_hedge(z, w);
                    self.lab.set_hedge(z, ws);
                }
                (false, false) => {
                    self.lab.set_arc(w, z);
                    self.lab.set_hedge(z, ws);
                }
            }
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn split(
        &mut self,
        r: &Region<'g>,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        zp: Option<Vertex>,
        w: Vertex,
        v: Vertex,
        wp: Vertex,
        inner: &[Vertex],
    ) -> Result<(), DecompError> {
        const CASE: &str = "3-2";
        self.trace.push(Case32::Split);
        if v == wp || !inner.contains(&v) {
            return Err(invariant(CASE, format!("chord {w}{v} of C' does not end in N(z) - {{w*, w'}}")));
        }
        let cycle = if r.next(z) == w { [z, w, v] } else { [w, z, v] };
        let tri = r.enclosed(&cycle);
        let g2 = r.sub(tri.clone(), z, w)?;
        let mut cut = vec![false; r.host().max_id() as usize + 1];
        for &u in &tri {
            cut[u as usize] = !cycle.contains(&u);
        }
        let rest = r.verts().iter().copied().filter(|&u| !cut[u as usize]).collect();
        let g1 = r.sub(rest, x, y)?;
        self.rec(&g1, x, y, z, zp)?;
        self.inner_piece(&g2, (w, v, z, None), &[(z, w), (z, v), (w, v)], None)?;
        for &s in g2.verts() {
            if g2.is_boundary(s) {
                continue;
            }
            for t in cycle {
                if g2.has_edge(s, t) && !self.lab.is_arc(s, t) {
                    return Err(invariant(CASE, format!("edge {s}{t} into the triangle is not the arc ({s},{t})")));
                }
            }
        }
        Ok(())
    }

    fn check(&self, r: &Region<'g>, x: Vertex, y: Vertex, z: Vertex, zp: Option<Vertex>) -> Result<(), DecompError> {
        let piece = LabeledPiece { r, lab: &self.lab };
        let mut verdicts = labeled_structure(&piece);
        verdicts.extend(conditions_32(&piece, x, y, z, zp));
        if verdicts.iter().all(|v| v.passed) {
            return Ok(());
        }
        let contract = match zp {
            Some(w) => format!("(3,2) wrt ({x},{y},{z},{w})"),
            None => format!("(3,2) wrt ({x},{y},{z})"),
        };
        let report = ConditionReport { contract, verdicts };
        Err(DecompError::ConditionFailed {
            size: r.len(),
            report: report.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn all_rootings(t: &NearTriangulation, seen: &mut std::collections::BTreeSet<Case32>) {
        let r = Region::whole(t);
        let b = t.boundary().to_vec();
        let l = b.len();
        for i in 0..l {
            for (x, y) in [(b[i], b[(i + 1) % l]), (b[(i + 1) % l], b[i])] {
                for &z in &b {
                    if z == x || z == y || !r.chords_at(z).is_empty() {
                        continue;
                    }
                    let zps: Vec<Option<Vertex>> = if touches(&r, x, y, z) {
                        vec![None]
                    } else {
                        vec![Some(r.prev(z)), Some(r.next(z))]
                    };
                    for zp in zps {
                        let (p, trace) = decompose32_traced(t, x, y, z, zp)
                            .unwrap_or_else(|e| panic!("root ({x},{y},{z},{zp:?}): {e}"));
                        let ctx = context32(t, x, y, z, zp).unwrap();
                        let report = check_32(t, &ctx, &p);
                        assert!(report.passed(), "{report}");
                        seen.extend(trace);
                    }
                }
            }
        }
    }

    #[test]
    fn base_case() {
        let t = gen::stacked_triangulation(3, 0);
        let p = decompose32(&t, 1, 2, 3, None).unwrap();
        assert_eq!(p, DecompPair::from_parts([(1, 2), (3, 1), (3, 2)], []));
    }

    #[test]
    fn k4_exact_pair() {
        let t = gen::named_solid("tetrahedron").unwrap();
        let b = t.boundary().to_vec();
        let (x, y, z) = (b[0], b[1], b[2]);
        let c = 10 - x - y - z;
        let p = decompose32(&t, x, y, z, None).unwrap();
        assert_eq!(
            p,
            DecompPair::from_parts([(x, y), (c, x), (c, y), (z, y), (z, x), (c, z)], [])
        );
    }

    #[test]
    fn diamond_golden() {
        let t = gen::tests_support::diamond();
        let (p, trace) = decompose32_traced(&t, 1, 2, 4, None).unwrap();
        let ctx = context32(&t, 1, 2, 4, None).unwrap();
        assert!(check_32(&t, &ctx, &p).passed());
        assert_eq!(trace[0], Case32::ChordSeparates);
        assert_eq!(p, DecompPair::from_parts([(1, 2), (3, 1), (3, 2), (4, 1), (4, 3)], []));
    }

    #[test]
    fn choose_z_skips_chords() {
        let t = gen::tests_support::diamond();
        assert_eq!(choose_z(&t, 1, 2).unwrap(), 4);
        assert_eq!(choose_z(&t, 1, 4).unwrap(), 2);
        assert!(choose_z(&t, 1, 3).is_err());
    }

    #[test]
    fn z_prime_rules() {
        let t = gen::tests_support::diamond();
        assert!(matches!(decompose32(&t, 1, 2, 4, Some(3)), Err(DecompError::Precondition(_))));
        assert!(matches!(decompose32(&t, 1, 2, 3, None), Err(DecompError::Precondition(_))));
    }

    #[test]
    fn every_case_on_peeled_pieces() {
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..8 {
            for t in gen::tests_support::peeled(24, seed) {
                all_rootings(&t, &mut seen);
            }
        }
        assert_eq!(seen.len(), 6, "cases reached: {seen:?}");
    }

    #[test]
    fn stacked_rootings_on_the_outer_triangle() {
        for seed in 0..20 {
            let t = gen::stacked_triangulation(60, seed);
            let mut seen = Default::default();
            all_rootings(&t, &mut seen);
        }
    }
}
