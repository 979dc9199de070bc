//! `(2,6)`-decompositions of near triangulations.
//!
//! [`decompose26`] returns a pair `(D, H)` with `D` acyclic of out-degree at
//! most 2 and `H` of maximum degree at most 6, rooted at a boundary edge
//! `xy` and a further boundary vertex `z`. The rooted conditions are the
//! ones [`check_26`] tests: they are what lets two decompositions of the
//! pieces on either side of a chord, or of `G - z` and the fan around it,
//! be glued back together.
//!
//! The recursion works in place: every piece is a [`Region`] of the input
//! and every step writes arc and hedge labels on the shared edges. After
//! each step the labels inside its piece are checked against all five
//! conditions, so a broken step is reported where it happens.

use std::collections::HashMap;

use crate::error::{invariant, DecompError};
use crate::labeling::Labeling;
use crate::plane::{BoundaryContext, NearTriangulation};
use crate::region::Region;
use crate::verify::{b_of, conditions_26, labeled_structure, ConditionReport, LabeledPiece};
use crate::{edge, Vertex};

pub use crate::verify::{check_26, DecompPair};

/// The step taken at one level of the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case26 {
    /// `G = K3`.
    Base,
    /// The boundary is the triangle `xyz`; recurse on `G - z`.
    Triangle,
    /// A chord cuts `z` off from `xy`.
    ChordFar,
    /// A chord ends at `z`.
    ChordAtZ,
    /// A chord at `x` or `y` leaves `z` on the side of `xy`.
    ChordNear,
    /// No usable chord and `z` is a boundary neighbor of `x` or `y`.
    NextToRoot,
    /// No usable chord and `z` is away from `xy`: the fan case.
    Fan,
    /// The roles of `x` and `y` were exchanged and swapped back.
    Swap,
}

impl Case26 {
    pub fn label(self) -> &'static str {
        match self {
            Case26::Base => "base",
            Case26::Triangle => "1",
            Case26::ChordFar => "2-1",
            Case26::ChordAtZ => "2-2",
            Case26::ChordNear => "2-3",
            Case26::NextToRoot => "3-1",
            Case26::Fan => "3-2",
            Case26::Swap => "swap",
        }
    }
}

/// A `(2,6)`-decomposition of `t` with respect to `(x, y, z)`.
///
/// `xy` must be a boundary edge and `z` a boundary vertex other than `x`
/// and `y`. Every recursion level is checked; a failure there is returned
/// as [`DecompError::ConditionFailed`] or [`DecompError::Invariant`].
pub fn decompose26(
    t: &NearTriangulation,
    x: Vertex,
    y: Vertex,
    z: Vertex,
) -> Result<DecompPair, DecompError> {
    decompose26_traced(t, x, y, z).map(|(p, _)| p)
}

/// As [`decompose26`], also returning the cases taken, in order.
pub fn decompose26_traced(
    t: &NearTriangulation,
    x: Vertex,
    y: Vertex,
    z: Vertex,
) -> Result<(DecompPair, Vec<Case26>), DecompError> {
    BoundaryContext::new(t, x, y, z).map_err(|e| DecompError::Precondition(e.to_string()))?;
    let r = Region::whole(t);
    let mut run = Run {
        lab: Labeling::new(t.graph()),
        trace: Vec::new(),
    };
    run.rec(&r, x, y, z, false)?;
    Ok((run.lab.to_pair(&r), run.trace))
}

/// Turns a decomposition with respect to `(x, y, z)` into one with respect
/// to `(y, x, z)`.
///
/// If `x` has no hedge, the arc `xy` is reversed. Otherwise `x` has a single
/// hedge partner `w`, adjacent to `y` and joined to it by the arc `(w, y)`;
/// then `(x, y)` and `(w, y)` become `(y, x)` and `(w, x)`, and the hedge
/// `wx` is traded for `wy`.
pub fn swap_root(
    t: &NearTriangulation,
    ctx: &BoundaryContext,
    p: &DecompPair,
) -> Result<DecompPair, DecompError> {
    let report = check_26(t, ctx, p);
    if !report.passed() {
        return Err(DecompError::Precondition(format!("input pair is not rooted as claimed:\n{report}")));
    }
    let (x, y) = (ctx.x, ctx.y);
    let mut q = p.clone();
    q.arcs.remove(&(x, y));
    q.arcs.insert((y, x));
    if let [w] = p.h_neighbors(x)[..] {
        if !p.is_arc(w, y) {
            return Err(invariant("swap", format!("expected arc ({w},{y})")));
        }
        q.arcs.remove(&(w, y));
        q.arcs.insert((w, x));
        q.hedges.remove(&edge(w, x));
        q.hedges.insert(edge(w, y));
    }
    Ok(q)
}

/// The fan built around the boundary path from `y` to `z` when neither `x`
/// nor `y` is a boundary neighbor of `z` and no chord interferes.
///
/// The boundary is read in the direction that runs from `x` to `y`. `p` is
/// the boundary path from `p1` (the neighbor of `y` after `x`) to `z`.
/// Deleting `p` leaves a block containing `x`, `y` and `z'` (the neighbor of
/// `z` after it); `q` is the boundary path of that block from `y` to `z'`
/// avoiding `x`. Each edge of `q` lies in a triangle with a vertex of `p`;
/// `markers` are the inner vertices of `q` where that vertex changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanStructure {
    pub p: Vec<Vertex>,
    pub q: Vec<Vertex>,
    /// `q_0 = y, q_1, ..., q_k, q_{k+1} = z'`.
    pub markers: Vec<Vertex>,
    /// `p_1, ..., p_{k+1} = z`, where `p_i` is adjacent to `q_{i-1}` and
    /// `q_i`.
    pub bridges: Vec<Vertex>,
    /// Vertex set of the piece bounded by `p_i .. p_{i+1}` and `q_i`, for
    /// `i = 1..=k`, each sorted.
    pub pieces: Vec<Vec<Vertex>>,
    /// Vertex set of the block, sorted.
    pub block: Vec<Vertex>,
}

impl FanStructure {
    /// `k`, the number of inner markers.
    pub fn k(&self) -> usize {
        self.markers.len() - 2
    }

    /// Checks that consecutive vertices of `q` share a neighbor in `p` and
    /// that `p_i` is adjacent to `q_{i-1}` and `q_i`.
    pub fn check(&self, t: &NearTriangulation) -> Result<(), String> {
        let g = t.graph();
        if self.q.len() < 3 || self.p.len() < 2 || self.k() < 1 {
            return Err(format!("degenerate fan: |Q| = {}, |P| = {}", self.q.len(), self.p.len()));
        }
        for w in self.q.windows(2) {
            if !self.p.iter().any(|&c| g.has_edge(c, w[0]) && g.has_edge(c, w[1])) {
                return Err(format!("{}{} has no common neighbor on P", w[0], w[1]));
            }
        }
        for i in 1..self.markers.len() {
            let b = self.bridges[i - 1];
            if !g.has_edge(b, self.markers[i - 1]) || !g.has_edge(b, self.markers[i]) {
                return Err(format!("p_{i} = {b} misses q_{} or q_{i}", i - 1));
            }
        }
        Ok(())
    }
}

/// The fan of the case where `z` is away from `xy`.
///
/// Fails with [`DecompError::Precondition`] unless that case applies: the
/// boundary has at least four vertices, no chord ends in `x`, `y` or `z` or
/// separates `xy` from `z`, and `z` is not a boundary neighbor of `x` or `y`.
pub fn build_fan(
    t: &NearTriangulation,
    x: Vertex,
    y: Vertex,
    z: Vertex,
) -> Result<FanStructure, DecompError> {
    BoundaryContext::new(t, x, y, z).map_err(|e| DecompError::Precondition(e.to_string()))?;
    let r = Region::whole(t);
    if r.boundary().len() < 4 || usable_chord(&r, x, y, z).is_some() || touches(&r, x, y, z) {
        return Err(DecompError::Precondition(format!(
            "the fan case does not apply to ({x},{y},{z})"
        )));
    }
    let fan = Fan::build(&r, x, y, z)?;
    let sorted = |v: &[Vertex]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    };
    Ok(FanStructure {
        p: fan.p.clone(),
        q: fan.q.clone(),
        markers: fan.markers.clone(),
        bridges: fan.bridges.clone(),
        pieces: fan.pieces.iter().map(|g| sorted(g.verts())).collect(),
        block: sorted(fan.block.verts()),
    })
}

fn touches(r: &Region, x: Vertex, y: Vertex, z: Vertex) -> bool {
    [r.prev(z), r.next(z)].iter().any(|&w| w == x || w == y)
}

/// First chord, in lexicographic order, that ends in `x`, `y` or `z` or has
/// `z` strictly on the side away from `xy`.
fn usable_chord(r: &Region, x: Vertex, y: Vertex, z: Vertex) -> Option<(Vertex, Vertex)> {
    r.chords().into_iter().find(|&(u, v)| {
        if [x, y, z].contains(&u) || [x, y, z].contains(&v) {
            return true;
        }
        let xy_forward = r.on_walk(u, v, x) && r.on_walk(u, v, y);
        xy_forward != r.on_walk(u, v, z)
    })
}

struct Fan<'g> {
    p: Vec<Vertex>,
    q: Vec<Vertex>,
    markers: Vec<Vertex>,
    bridges: Vec<Vertex>,
    /// `runs[j]` is the part of `q` from `q_j` to `q_{j+1}`.
    runs: Vec<Vec<Vertex>>,
    pieces: Vec<Region<'g>>,
    block: Region<'g>,
    z_prime: Vertex,
}

impl<'g> Fan<'g> {
    fn build(r: &Region<'g>, x: Vertex, y: Vertex, z: Vertex) -> Result<Fan<'g>, DecompError> {
        const CASE: &str = "3-2";
        let fwd = r.next(x) == y;
        let step = |v: Vertex| if fwd { r.next(v) } else { r.prev(v) };
        let p1 = step(y);
        let z_prime = step(z);
        let mut p = vec![p1];
        while *p.last().unwrap() != z {
            p.push(step(*p.last().unwrap()));
        }
        let pos: HashMap<Vertex, usize> = p.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let block = r.block_with(&p, x, y)?;
        if !block.is_boundary(z_prime) {
            return Err(invariant(CASE, format!("z' = {z_prime} is not on the block boundary")));
        }
        let q = block.path_avoiding(y, z_prime, x);
        if q.len() < 3 {
            return Err(invariant(CASE, format!("Q = {q:?} has fewer than three vertices")));
        }
        let mut apex = Vec::with_capacity(q.len() - 1);
        for w in q.windows(2) {
            let (a, b) = block.walk_dart(w[0], w[1]);
            let c = r.pred(b, a);
            if !pos.contains_key(&c) {
                return Err(invariant(CASE, format!("{}{} has no common neighbor on P", w[0], w[1])));
            }
            apex.push(c);
        }
        let mut markers = vec![y];
        let mut bridges = vec![apex[0]];
        let mut runs = vec![vec![q[0]]];
        for i in 1..q.len() {
            runs.last_mut().unwrap().push(q[i]);
            if i + 1 < q.len() && apex[i] != apex[i - 1] {
                if pos[&apex[i]] <= pos[&apex[i - 1]] {
                    return Err(invariant(CASE, "common neighbors do not advance along P"));
                }
                markers.push(q[i]);
                bridges.push(apex[i]);
                runs.push(vec![q[i]]);
            }
        }
        markers.push(z_prime);
        if bridges[0] != p1 || *bridges.last().unwrap() != z || markers.len() < 3 {
            return Err(invariant(
                CASE,
                format!("fan bridges {bridges:?} do not run from p1 = {p1} to z = {z}"),
            ));
        }
        let mut pieces = Vec::with_capacity(bridges.len() - 1);
        for i in 1..bridges.len() {
            let (a, b) = (bridges[i - 1], bridges[i]);
            let (from, to) = if fwd { (a, b) } else { (b, a) };
            let verts = r.enclosed_by(from, to, &[markers[i]]);
            let dart = r.walk_dart(a, p[pos[&a] + 1]);
            pieces.push(Region::new(r.host(), verts, dart)?);
        }
        Ok(Fan {
            p,
            q,
            markers,
            bridges,
            runs,
            pieces,
            block,
            z_prime,
        })
    }
}

struct Run<'g> {
    lab: Labeling<'g>,
    trace: Vec<Case26>,
}

impl<'g> Run<'g> {
    fn rec(
        &mut self,
        r: &Region<'g>,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        swapped: bool,
    ) -> Result<(), DecompError> {
        stacker::maybe_grow(256 * 1024, 4 * 1024 * 1024, || {
            self.step(r, x, y, z, swapped)?;
            self.check(r, x, y, z)
        })
    }

    fn step(
        &mut self,
        r: &Region<'g>,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        swapped: bool,
    ) -> Result<(), DecompError> {
        if r.len() == 3 {
            self.trace.push(Case26::Base);
            self.lab.set_arc(x, y);
            self.lab.set_arc(z, y);
            self.lab.set_hedge(x, z);
            return Ok(());
        }
        if r.boundary().len() == 3 {
            return self.triangle(r, x, y, z);
        }
        if let Some((u, v)) = usable_chord(r, x, y, z) {
            return self.chord(r, x, y, z, u, v, swapped);
        }
        if touches(r, x, y, z) {
            if r.prev(z) == x || r.next(z) == x {
                return self.swapped(r, x, y, z, swapped);
            }
            return self.next_to_root(r, x, y, z);
        }
        self.fan(r, x, y, z)
    }

    /// Decomposes with respect to `(y, x, z)` and swaps back.
    fn swapped(
        &mut self,
        r: &Region<'g>,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        swapped: bool,
    ) -> Result<(), DecompError> {
        if swapped {
            return Err(invariant("swap", format!("({x},{y},{z}) asked to swap twice")));
        }
        self.trace.push(Case26::Swap);
        self.rec(r, y, x, z, true)?;
        self.swap(r, y, x)
    }

    /// Labels valid with respect to `(a, b, z)` become valid with respect to
    /// `(b, a, z)`.
    fn swap(&mut self, r: &Region<'g>, a: Vertex, b: Vertex) -> Result<(), DecompError> {
        match self.lab.h_neighbors(r, a)[..] {
            [] => self.lab.reverse("swap", a, b),
            [w] => {
                self.lab.expect_arc("swap", w, b)?;
                self.lab.set_arc(b, a);
                self.lab.set_hedge(w, b);
                self.lab.set_arc(w, a);
                Ok(())
            }
            _ => Err(invariant("swap", format!("{a} has more than one hedge"))),
        }
    }

    /// The unique hedge partner of `x` inside `r`, if any.
    fn partner(&self, r: &Region<'g>, x: Vertex, case: &'static str) -> Result<Option<Vertex>, DecompError> {
        match self.lab.h_neighbors(r, x)[..] {
            [] => Ok(None),
            [s] => Ok(Some(s)),
            _ => Err(invariant(case, format!("{x} has more than one hedge"))),
        }
    }

    fn triangle(&mut self, r: &Region<'g>, x: Vertex, y: Vertex, z: Vertex) -> Result<(), DecompError> {
        const CASE: &str = "1";
        self.trace.push(Case26::Triangle);
        let inner = r.inner_neighbors(z);
        let g = r.without_vertex(z)?;
        let w = if g.next(y) == x { g.prev(y) } else { g.next(y) };
        self.rec(&g, x, y, w, false)?;
        let s = self.partner(&g, x, CASE)?;
        if let Some(s) = s {
            if !g.is_boundary(s) || !g.has_edge(s, y) {
                return Err(invariant(CASE, format!("hedge partner {s} of x is misplaced")));
            }
            self.lab.set_arc(s, x);
            self.lab.set_hedge(s, z);
        }
        self.lab.set_arc(z, y);
        self.lab.set_hedge(x, z);
        for u in inner {
            if Some(u) != s {
                self.lab.set_arc(u, z);
            }
        }
        Ok(())
    }

    /// The two sides of the chord `uv`, the one holding `x` and `y` first.
    fn sides(
        r: &Region<'g>,
        u: Vertex,
        v: Vertex,
        x: Vertex,
        y: Vertex,
    ) -> Result<(Region<'g>, Region<'g>), DecompError> {
        let (a, b) = r.split(u, v)?;
        Ok(if a.contains(x) && a.contains(y) { (a, b) } else { (b, a) })
    }

    /// Recurses on the far side `g2` while keeping the label the near side
    /// gave the chord.
    fn far_side(
        &mut self,
        g2: &Region<'g>,
        u: Vertex,
        v: Vertex,
        root: (Vertex, Vertex, Vertex),
    ) -> Result<(), DecompError> {
        let kept = self.lab.get(u, v);
        self.rec(g2, root.0, root.1, root.2, false)?;
        self.lab.set(u, v, kept);
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn chord(
        &mut self,
        r: &Region<'g>,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        u: Vertex,
        v: Vertex,
        swapped: bool,
    ) -> Result<(), DecompError> {
        let (g1, _) = Self::sides(r, u, v, x, y)?;
        if !g1.contains(z) {
            let (u, v) = if v == x || v == y { (v, u) } else { (u, v) };
            if u == x {
                return self.swapped(r, x, y, z, swapped);
            }
            self.trace.push(Case26::ChordFar);
            let (g1, g2) = Self::sides(r, u, v, x, y)?;
            self.rec(&g1, x, y, v, false)?;
            let low = self.lab.h_degree(&g1, u) + b_of(&g1, x, y, u) as usize <= 4;
            let root = if low && y != u { (u, v, z) } else { (v, u, z) };
            self.far_side(&g2, u, v, root)
        } else if u == z || v == z {
            const CASE: &str = "2-2";
            let (u, v) = if u == z { (v, u) } else { (u, v) };
            if u == x {
                return self.swapped(r, x, y, z, swapped);
            }
            self.trace.push(Case26::ChordAtZ);
            let (g1, g2) = Self::sides(r, u, v, x, y)?;
            self.rec(&g1, x, y, z, false)?;
            let z2 = if g2.next(z) == u { g2.prev(z) } else { g2.next(z) };
            let low = self.lab.h_degree(&g1, u) + b_of(&g1, x, y, u) as usize <= 4;
            let root = if low && u != y { (u, v, z2) } else { (v, u, z2) };
            self.far_side(&g2, u, v, root)?;
            let z1 = if r.next(z) == z2 { r.prev(z) } else { r.next(z) };
            let b = |w| b_of(r, x, y, w) as usize;
            if self.lab.h_degree(r, z) + b(z) == 4 && self.lab.h_degree(r, z1) + b(z1) == 5 {
                return Err(invariant(
                    CASE,
                    format!("h(z) = 4 - b(z) and h(z') = 5 - b(z') at z = {z}, z' = {z1}"),
                ));
            }
            Ok(())
        } else {
            let (u, v) = if v == x || v == y { (v, u) } else { (u, v) };
            if u != x && u != y {
                return Err(invariant("2-3", format!("chord {u}{v} misses x and y")));
            }
            if u == x {
                return self.swapped(r, x, y, z, swapped);
            }
            self.trace.push(Case26::ChordNear);
            let (g1, g2) = Self::sides(r, u, v, x, y)?;
            self.rec(&g1, x, y, z, false)?;
            let zs = if g2.next(v) == u { g2.prev(v) } else { g2.next(v) };
            self.far_side(&g2, u, v, (v, u, zs))
        }
    }

    /// `yz` is a boundary edge and no chord ends in `x`, `y` or `z`.
    fn next_to_root(&mut self, r: &Region<'g>, x: Vertex, y: Vertex, z: Vertex) -> Result<(), DecompError> {
        const CASE: &str = "3-1";
        self.trace.push(Case26::NextToRoot);
        let zp = if r.next(z) == y { r.prev(z) } else { r.next(z) };
        let inner = r.inner_neighbors(z);
        let g = r.without_vertex(z)?;
        self.rec(&g, x, y, zp, false)?;
        let s = self.partner(&g, x, CASE)?;
        if let Some(s) = s {
            if !inner.contains(&s) {
                return Err(invariant(CASE, format!("hedge partner {s} of x is not a neighbor of z")));
            }
            self.lab.set_arc(s, x);
            self.lab.set_hedge(s, z);
        }
        self.lab.set_arc(z, y);
        self.lab.set_hedge(z, zp);
        for u in inner {
            if Some(u) != s {
                self.lab.set_arc(u, z);
            }
        }
        Ok(())
    }

    fn fan(&mut self, r: &Region<'g>, x: Vertex, y: Vertex, z: Vertex) -> Result<(), DecompError> {
        const CASE: &str = "3-2";
        self.trace.push(Case26::Fan);
        let fan = Fan::build(r, x, y, z)?;
        let (m, b) = (&fan.markers, &fan.bridges);
        for i in 1..m.len() - 1 {
            let gi = &fan.pieces[i - 1];
            self.rec(gi, b[i], m[i], b[i - 1], false)?;
            self.lab.reverse(CASE, b[i - 1], m[i])?;
            self.lab.expect_arc(CASE, b[i], m[i])?;
            self.lab.set_hedge(b[i], m[i]);
        }
        self.rec(&fan.block, x, y, fan.z_prime, false)?;
        let s = self.partner(&fan.block, x, CASE)?;
        for (j, run) in fan.runs.iter().enumerate() {
            for &q in &run[1..run.len() - 1] {
                self.lab.set_arc(q, b[j]);
            }
        }
        self.lab.set_arc(b[0], y);
        self.lab.set_hedge(z, fan.z_prime);
        if let Some(s) = s {
            let j = fan
                .runs
                .iter()
                .position(|run| run.contains(&s))
                .filter(|_| s != y && s != fan.z_prime)
                .ok_or_else(|| invariant(CASE, format!("hedge partner {s} of x is not inside Q")))?;
            self.lab.set_arc(s, x);
            if j >= 1 {
                self.lab.reverse(CASE, s, b[j])?;
            } else {
                self.lab.expect_arc(CASE, s, b[0])?;
                self.lab.set_hedge(s, b[0]);
            }
        }
        debug_assert_eq!(fan.p.last(), Some(&z));
        debug_assert!(fan.q.len() >= 3);
        Ok(())
    }

    fn check(&self, r: &Region<'g>, x: Vertex, y: Vertex, z: Vertex) -> Result<(), DecompError> {
        let piece = LabeledPiece { r, lab: &self.lab };
        let mut verdicts = labeled_structure(&piece);
        verdicts.extend(conditions_26(&piece, x, y, z));
        if verdicts.iter().all(|v| v.passed) {
            return Ok(());
        }
        let report = ConditionReport {
            contract: format!("(2,6) wrt ({x},{y},{z})"),
            verdicts,
        };
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

    fn ctx(t: &NearTriangulation, x: Vertex, y: Vertex, z: Vertex) -> BoundaryContext {
        BoundaryContext::new(t, x, y, z).unwrap()
    }

    #[test]
    fn base_case() {
        let t = gen::stacked_triangulation(3, 0);
        let p = decompose26(&t, 1, 2, 3).unwrap();
        assert_eq!(p, DecompPair::from_parts([(1, 2), (3, 2)], [(1, 3)]));
    }

    #[test]
    fn tetrahedron() {
        let t = gen::named_solid("tetrahedron").unwrap();
        let b = t.boundary().to_vec();
        let (x, y, z) = (b[0], b[1], b[2]);
        let c = 10 - x - y - z;
        let p = decompose26(&t, x, y, z).unwrap();
        assert_eq!(
            p,
            DecompPair::from_parts([(x, y), (c, y), (c, x), (z, y)], [(c, z), (x, z)])
        );
    }

    #[test]
    fn diamond_uses_the_chord() {
        let t = gen::tests_support::diamond();
        let (p, trace) = decompose26_traced(&t, 1, 2, 4).unwrap();
        assert!(check_26(&t, &ctx(&t, 1, 2, 4), &p).passed());
        assert!(matches!(trace[0], Case26::ChordAtZ | Case26::ChordFar | Case26::Swap));
    }

    #[test]
    fn swap_on_base() {
        let t = gen::stacked_triangulation(3, 0);
        let p = decompose26(&t, 1, 2, 3).unwrap();
        let q = swap_root(&t, &ctx(&t, 1, 2, 3), &p).unwrap();
        assert_eq!(q, DecompPair::from_parts([(2, 1), (3, 1)], [(2, 3)]));
        assert!(check_26(&t, &ctx(&t, 2, 1, 3), &q).passed());
    }

    #[test]
    fn five_wheel_fan() {
        // Outer x=1, y=2, a=3, z=4, b=5 with hub c=6.
        let g = crate::PlaneGraph::from_rotations(vec![
            vec![2, 6, 5],
            vec![3, 6, 1],
            vec![4, 6, 2],
            vec![5, 6, 3],
            vec![1, 6, 4],
            vec![1, 2, 3, 4, 5],
        ])
        .unwrap();
        let t = NearTriangulation::with_outer_dart(g.clone(), (1, 2))
            .or_else(|_| NearTriangulation::with_outer_dart(g, (2, 1)))
            .unwrap();
        let fan = build_fan(&t, 1, 2, 4).unwrap();
        assert_eq!(fan.p, vec![3, 4]);
        assert_eq!(fan.q, vec![2, 6, 5]);
        assert_eq!(fan.markers, vec![2, 6, 5]);
        assert_eq!(fan.bridges, vec![3, 4]);
        assert_eq!(fan.pieces, vec![vec![3, 4, 6]]);
        assert_eq!(fan.block, vec![1, 2, 5, 6]);
        fan.check(&t).unwrap();
        let (p, trace) = decompose26_traced(&t, 1, 2, 4).unwrap();
        assert_eq!(trace[0], Case26::Fan);
        assert!(check_26(&t, &ctx(&t, 1, 2, 4), &p).passed());
    }

    #[test]
    fn peeled_pieces_every_rooting() {
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..12 {
            for t in gen::tests_support::peeled(30, seed) {
                let b = t.boundary().to_vec();
                let l = b.len();
                for i in 0..l {
                    for (x, y) in [(b[i], b[(i + 1) % l]), (b[(i + 1) % l], b[i])] {
                        for &z in &b {
                            if z == x || z == y {
                                continue;
                            }
                            let (p, trace) = decompose26_traced(&t, x, y, z)
                                .unwrap_or_else(|e| panic!("seed {seed} root ({x},{y},{z}): {e}"));
                            assert!(check_26(&t, &ctx(&t, x, y, z), &p).passed());
                            seen.extend(trace);
                        }
                    }
                }
            }
        }
        assert_eq!(seen.len(), 8, "cases reached: {seen:?}");
    }

    #[test]
    fn stacked_all_rootings() {
        for seed in 0..30 {
            let t = gen::stacked_triangulation(40, seed);
            let b = t.boundary().to_vec();
            for i in 0..3 {
                for (x, y) in [(b[i], b[(i + 1) % 3]), (b[(i + 1) % 3], b[i])] {
                    let z = b[(i + 2) % 3];
                    let p = decompose26(&t, x, y, z).unwrap();
                    let c = ctx(&t, x, y, z);
                    assert!(check_26(&t, &c, &p).passed());
                    let q = swap_root(&t, &c, &p).unwrap();
                    assert!(check_26(&t, &ctx(&t, y, x, z), &q).passed());
                }
            }
        }
    }
}
