//! Edge labels written in place by the recursive constructions.
//!
//! Every dart `(v, rotation(v)[i])` of the host graph carries one byte:
//! unset, outgoing arc, incoming arc or hedge (an edge of `H`). The two
//! darts of an edge are kept consistent. Degrees are always read relative
//! to a [`Region`], so labels left on edges outside the region are ignored.

use crate::error::DecompError;
use crate::plane::PlaneGraph;
use crate::region::Region;
use crate::verify::DecompPair;
use crate::{edge, Edge, Vertex};

const NONE: u8 = 0;
const OUT: u8 = 1;
const IN: u8 = 2;
const HEDGE: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Label {
    Unset,
    /// Arc leaving the vertex the label was read from.
    Out,
    /// Arc entering the vertex the label was read from.
    In,
    Hedge,
}

#[derive(Clone)]
pub(crate) struct Labeling<'g> {
    g: &'g PlaneGraph,
    lab: Vec<Vec<u8>>,
}

impl<'g> Labeling<'g> {
    pub fn new(g: &'g PlaneGraph) -> Self {
        let lab = (0..=g.max_id()).map(|v| vec![NONE; g.degree(v)]).collect();
        Labeling { g, lab }
    }

    fn pos(&self, v: Vertex, w: Vertex) -> usize {
        self.g
            .rotation(v)
            .iter()
            .position(|&u| u == w)
            .unwrap_or_else(|| panic!("{v}{w} is not an edge"))
    }

    fn put(&mut self, u: Vertex, v: Vertex, at_u: u8, at_v: u8) {
        let i = self.pos(u, v);
        let j = self.pos(v, u);
        self.lab[u as usize][i] = at_u;
        self.lab[v as usize][j] = at_v;
    }

    /// Label of the edge `uv` as seen from `u`.
    pub fn get(&self, u: Vertex, v: Vertex) -> Label {
        match self.lab[u as usize][self.pos(u, v)] {
            OUT => Label::Out,
            IN => Label::In,
            HEDGE => Label::Hedge,
            _ => Label::Unset,
        }
    }

    pub fn set_arc(&mut self, u: Vertex, v: Vertex) {
        self.put(u, v, OUT, IN);
    }

    pub fn set_hedge(&mut self, u: Vertex, v: Vertex) {
        self.put(u, v, HEDGE, HEDGE);
    }

    /// Writes a label read earlier with [`Labeling::get`] from `u`.
    pub fn set(&mut self, u: Vertex, v: Vertex, l: Label) {
        match l {
            Label::Out => self.set_arc(u, v),
            Label::In => self.set_arc(v, u),
            Label::Hedge => self.set_hedge(u, v),
            Label::Unset => self.put(u, v, NONE, NONE),
        }
    }

    pub fn is_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.get(u, v) == Label::Out
    }

    /// Turns the arc `(u, v)` into `(v, u)`; the arc must exist.
    pub fn reverse(&mut self, case: &'static str, u: Vertex, v: Vertex) -> Result<(), DecompError> {
        self.expect_arc(case, u, v)?;
        self.set_arc(v, u);
        Ok(())
    }

    pub fn expect_arc(&self, case: &'static str, u: Vertex, v: Vertex) -> Result<(), DecompError> {
        if self.is_arc(u, v) {
            Ok(())
        } else {
            Err(crate::error::invariant(
                case,
                format!("expected arc ({u},{v}), found {:?}", self.get(u, v)),
            ))
        }
    }

    fn count(&self, r: &Region, v: Vertex, what: u8) -> usize {
        let rot = self.g.rotation(v);
        let lab = &self.lab[v as usize];
        (0..rot.len())
            .filter(|&i| lab[i] == what && r.contains(rot[i]))
            .count()
    }

    fn collect(&self, r: &Region, v: Vertex, what: u8) -> Vec<Vertex> {
        let rot = self.g.rotation(v);
        let lab = &self.lab[v as usize];
        (0..rot.len())
            .filter(|&i| lab[i] == what && r.contains(rot[i]))
            .map(|i| rot[i])
            .collect()
    }

    pub fn out_degree(&self, r: &Region, v: Vertex) -> usize {
        self.count(r, v, OUT)
    }

    pub fn h_degree(&self, r: &Region, v: Vertex) -> usize {
        self.count(r, v, HEDGE)
    }

    pub fn out_neighbors(&self, r: &Region, v: Vertex) -> Vec<Vertex> {
        self.collect(r, v, OUT)
    }

    pub fn h_neighbors(&self, r: &Region, v: Vertex) -> Vec<Vertex> {
        self.collect(r, v, HEDGE)
    }

    /// Some edge of the region without a label.
    pub fn unlabeled_edge(&self, r: &Region) -> Option<Edge> {
        for &v in r.verts() {
            let rot = self.g.rotation(v);
            for (i, &w) in rot.iter().enumerate() {
                if v < w && r.contains(w) && self.lab[v as usize][i] == NONE {
                    return Some((v, w));
                }
            }
        }
        None
    }

    /// Vertices of a directed cycle among the region's arcs, if any.
    pub fn find_cycle(&self, r: &Region) -> Option<Vec<Vertex>> {
        // Kahn's algorithm on reversed arcs: sinks leave first.
        let cap = self.g.max_id() as usize + 1;
        let mut out = vec![0u32; cap];
        let mut stack = Vec::new();
        for &v in r.verts() {
            out[v as usize] = self.out_degree(r, v) as u32;
            if out[v as usize] == 0 {
                stack.push(v);
            }
        }
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            let rot = self.g.rotation(v);
            for (i, &w) in rot.iter().enumerate() {
                if self.lab[v as usize][i] == IN && r.contains(w) {
                    out[w as usize] -= 1;
                    if out[w as usize] == 0 {
                        stack.push(w);
                    }
                }
            }
        }
        if removed == r.len() {
            return None;
        }
        // Every survivor still has an arc to another survivor: walk them.
        let start = *r.verts().iter().find(|&&v| out[v as usize] > 0)?;
        let mut seen = vec![usize::MAX; cap];
        let mut path = Vec::new();
        let mut v = start;
        loop {
            if seen[v as usize] != usize::MAX {
                return Some(path[seen[v as usize]..].to_vec());
            }
            seen[v as usize] = path.len();
            path.push(v);
            v = self
                .out_neighbors(r, v)
                .into_iter()
                .find(|&w| out[w as usize] > 0)
                .expect("survivors keep an arc to a survivor");
        }
    }

    pub fn to_pair(&self, r: &Region) -> DecompPair {
        let mut p = DecompPair::default();
        for &v in r.verts() {
            let rot = self.g.rotation(v);
            for (i, &w) in rot.iter().enumerate() {
                if !r.contains(w) {
                    continue;
                }
                match self.lab[v as usize][i] {
                    OUT => {
                        p.arcs.insert((v, w));
                    }
                    HEDGE if v < w => {
                        p.hedges.insert(edge(v, w));
                    }
                    _ => {}
                }
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn labels_are_symmetric_and_cycles_are_found() {
        let t = gen::named_solid("tetrahedron").unwrap();
        let r = Region::whole(&t);
        let mut lab = Labeling::new(t.graph());
        assert_eq!(lab.unlabeled_edge(&r), Some((1, 2)));
        lab.set_arc(1, 2);
        lab.set_arc(2, 3);
        lab.set_arc(3, 1);
        lab.set_hedge(1, 4);
        lab.set_hedge(2, 4);
        lab.set_arc(4, 3);
        assert_eq!(lab.get(2, 1), Label::In);
        assert_eq!(lab.h_degree(&r, 4), 2);
        assert_eq!(lab.out_degree(&r, 4), 1);
        assert!(lab.unlabeled_edge(&r).is_none());
        let mut c = lab.find_cycle(&r).unwrap();
        c.sort_unstable();
        assert_eq!(c, vec![1, 2, 3]);
        lab.reverse("test", 3, 1).unwrap();
        assert!(lab.find_cycle(&r).is_none());
        assert!(lab.reverse("test", 3, 1).is_err());
        let p = lab.to_pair(&r);
        assert_eq!(p.arcs.len(), 4);
        assert_eq!(p.hedges.len(), 2);
    }
}
