//! `(4,1)`-decompositions of plane graphs.
//!
//! Every plane triangulation contains one of five small configurations
//! around a vertex of degree at most 7. [`decompose41`] finds one in a
//! triangulation extending the input, deletes it, fills the hole back to a
//! triangulation and repeats. Unwinding, each configuration contributes a
//! few matching edges and a short run of vertices appended to a
//! 4-degenerate ordering of the rest. [`discharge_audit`] runs the charge
//! argument that says some configuration always exists.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{invariant, DecompError};
use crate::plane::{connect_components, faces_at, fill_faces, saturate, PlaneGraph};
use crate::verify::{check_dh, ordering_to_orientation, DecompPair, DegeneracyOrdering};
use crate::{edge, Edge, Vertex};

/// Which configuration was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConfigKind {
    /// A vertex of degree at most 4.
    I,
    /// Two adjacent 5-vertices.
    II,
    /// A 5-vertex with three consecutive neighbors of degree at most 6.
    III,
    /// A 5-vertex with two 7-neighbors and three neighbors of degree at
    /// most 6.
    IV,
    /// A 7-vertex with three consecutive neighbors, the outer two of degree 5
    /// and the middle one of degree at most 6.
    V,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 5] = [ConfigKind::I, ConfigKind::II, ConfigKind::III, ConfigKind::IV, ConfigKind::V];
}

/// A configuration: its center `v` and the named neighbors `u`.
///
/// For kind II, `u` is the other 5-vertex. For III and V, `u` lists the
/// three consecutive neighbors in rotation order. For IV, `u` is the full
/// neighborhood `u1..u5` in rotation order with `u3` and `u5` the
/// 7-vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducibleConfig {
    pub kind: ConfigKind,
    pub v: Vertex,
    pub u: Vec<Vertex>,
}

impl ReducibleConfig {
    /// The vertices deleted for this configuration.
    pub fn vertices(&self) -> Vec<Vertex> {
        std::iter::once(self.v).chain(self.u.iter().copied()).collect()
    }

    /// The order in which the deleted vertices are appended to the ordering
    /// of what remains.
    pub fn append_order(&self) -> Vec<Vertex> {
        let (v, u) = (self.v, &self.u);
        match self.kind {
            ConfigKind::I => vec![v],
            ConfigKind::II => vec![v, u[0]],
            ConfigKind::III => vec![u[2], u[0], u[1], v],
            ConfigKind::IV => vec![u[4], u[0], u[2], u[1], u[3], v],
            ConfigKind::V => vec![v, u[1], u[2], u[0]],
        }
    }

    /// The matching edges the configuration adds.
    pub fn matching(&self) -> Vec<Edge> {
        let (v, u) = (self.v, &self.u);
        match self.kind {
            ConfigKind::I => vec![],
            ConfigKind::II => vec![edge(v, u[0])],
            ConfigKind::III | ConfigKind::V => vec![edge(v, u[0]), edge(u[1], u[2])],
            ConfigKind::IV => vec![edge(v, u[4]), edge(u[0], u[1]), edge(u[2], u[3])],
        }
    }

    /// Checks the degree and adjacency pattern of the kind in `g`.
    pub fn validate(&self, g: &PlaneGraph) -> Result<(), String> {
        let deg = |w: Vertex| g.degree(w);
        let (v, u) = (self.v, &self.u);
        let want = match self.kind {
            ConfigKind::I => 0,
            ConfigKind::II => 1,
            ConfigKind::III | ConfigKind::V => 3,
            ConfigKind::IV => 5,
        };
        if u.len() != want {
            return Err(format!("kind {:?} names {} neighbors, not {want}", self.kind, u.len()));
        }
        if let Some(&w) = u.iter().find(|&&w| !g.has_edge(v, w)) {
            return Err(format!("{w} is not a neighbor of {v}"));
        }
        let path = |u: &[Vertex]| u.windows(2).all(|p| g.has_edge(p[0], p[1]));
        let ok = match self.kind {
            ConfigKind::I => deg(v) <= 4,
            ConfigKind::II => deg(v) == 5 && deg(u[0]) == 5,
            ConfigKind::III => deg(v) == 5 && u.iter().all(|&w| deg(w) <= 6) && path(u),
            ConfigKind::IV => {
                deg(v) == 5
                    && path(u)
                    && g.has_edge(u[0], u[4])
                    && [0, 1, 3].iter().all(|&i| deg(u[i]) <= 6)
                    && deg(u[2]) == 7
                    && deg(u[4]) == 7
            }
            ConfigKind::V => deg(v) == 7 && deg(u[0]) == 5 && deg(u[2]) == 5 && deg(u[1]) <= 6 && path(u),
        };
        if ok {
            Ok(())
        } else {
            let degs: Vec<usize> = self.vertices().iter().map(|&w| deg(w)).collect();
            Err(format!("kind {:?} pattern fails: degrees {degs:?}", self.kind))
        }
    }
}

/// Rotation of `v` read from its smallest neighbor.
fn normalized_rotation(g: &PlaneGraph, v: Vertex) -> Vec<Vertex> {
    let r = g.rotation(v);
    let s = (0..r.len()).min_by_key(|&i| r[i]).unwrap_or(0);
    r[s..].iter().chain(&r[..s]).copied().collect()
}

/// Start of the first window of three consecutive neighbors of `v`
/// satisfying `ok`.
fn consecutive(c: &[Vertex], ok: impl Fn(usize, Vertex) -> bool) -> Option<[Vertex; 3]> {
    let k = c.len();
    (0..k)
        .map(|i| [c[i], c[(i + 1) % k], c[(i + 2) % k]])
        .find(|w| w.iter().enumerate().all(|(j, &x)| ok(j, x)))
}

/// A reducible configuration in a plane triangulation.
///
/// Kinds are tried in order I to V, and within a kind vertices are scanned
/// by increasing id; neighbors are read in rotation order from the smallest.
///
/// ```
/// use dhdecomp::{decomp41::{find_reducible, ConfigKind}, gen};
///
/// let ico = gen::named_solid("icosahedron").unwrap();
/// assert_eq!(find_reducible(ico.graph()).unwrap().kind, ConfigKind::II);
/// ```
pub fn find_reducible(g: &PlaneGraph) -> Result<ReducibleConfig, DecompError> {
    if g.n() < 4 || !g.is_triangulation() {
        return Err(DecompError::Precondition(
            "a simple plane triangulation on at least 4 vertices is required".into(),
        ));
    }
    find_in(g).ok_or(DecompError::DischargingContradiction(g.n()))
}

fn find_in(g: &PlaneGraph) -> Option<ReducibleConfig> {
    find_with(g, &ConfigKind::ALL)
}

fn find_with(g: &PlaneGraph, order: &[ConfigKind]) -> Option<ReducibleConfig> {
    order.iter().find_map(|&k| find_kind(g, k))
}

/// First configuration of one kind, scanning centers by increasing id.
///
/// Each kind is matched on its own pattern, so the result is reducible
/// whether or not configurations of other kinds are present.
pub fn find_kind(g: &PlaneGraph, kind: ConfigKind) -> Option<ReducibleConfig> {
    let deg = |w: Vertex| g.degree(w);
    let config = |v, u: &[Vertex]| ReducibleConfig { kind, v, u: u.to_vec() };
    let centers = |d: usize| g.vertices().filter(move |&v| deg(v) == d);
    match kind {
        ConfigKind::I => g.vertices().find(|&v| deg(v) <= 4).map(|v| config(v, &[])),
        ConfigKind::II => centers(5).find_map(|v| {
            let u = g.rotation(v).iter().copied().filter(|&u| deg(u) == 5).min()?;
            Some(config(v, &[u]))
        }),
        ConfigKind::III => centers(5).find_map(|v| {
            let w = consecutive(&normalized_rotation(g, v), |_, x| deg(x) <= 6)?;
            Some(config(v, &w))
        }),
        ConfigKind::IV => centers(5).find_map(|v| {
            let c = normalized_rotation(g, v);
            let sevens: Vec<usize> = (0..5).filter(|&i| deg(c[i]) == 7).collect();
            if sevens.len() != 2 || c.iter().any(|&w| deg(w) > 7) {
                return None;
            }
            let p = if (sevens[0] + 2) % 5 == sevens[1] {
                sevens[0]
            } else if (sevens[1] + 2) % 5 == sevens[0] {
                sevens[1]
            } else {
                return None;
            };
            let u: Vec<Vertex> = [3, 4, 0, 1, 2].iter().map(|&j| c[(p + j) % 5]).collect();
            Some(config(v, &u))
        }),
        ConfigKind::V => centers(7).find_map(|v| {
            let c = normalized_rotation(g, v);
            let w = consecutive(&c, |j, x| if j == 1 { deg(x) <= 6 } else { deg(x) == 5 })?;
            Some(config(v, &w))
        }),
    }
}

/// One deletion step of [`decompose41`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level {
    pub config: ReducibleConfig,
    /// Vertices in the order they are appended.
    pub appended: Vec<Vertex>,
    pub matching: Vec<Edge>,
    /// For each appended vertex, its neighbors placed before it outside
    /// the matching, counted in the working triangulation of that step.
    pub earlier: Vec<usize>,
}

/// Result of [`decompose41`].
#[derive(Debug, Clone)]
pub struct Decomp41 {
    /// `D` oriented by `ordering`, and `H` the matching.
    pub pair: DecompPair,
    /// A 4-degenerate ordering of `D`: every vertex has at most four
    /// `D`-neighbors before it.
    pub ordering: DegeneracyOrdering,
    /// Steps in deletion order. Vertices added while re-triangulating
    /// appear here but not in `pair` or `ordering`.
    pub levels: Vec<Level>,
}

impl Decomp41 {
    pub fn configs(&self) -> impl Iterator<Item = &ReducibleConfig> {
        self.levels.iter().map(|l| &l.config)
    }
}

/// Earlier-neighbor count of each vertex in `order` when it is appended
/// after all other vertices of `g`, matching edges excluded.
fn earlier_counts(g: &PlaneGraph, order: &[Vertex], matching: &[Edge]) -> Vec<usize> {
    order
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let later = order[i + 1..].iter().filter(|&&t| g.has_edge(s, t)).count();
            let partner = order[..i].iter().filter(|&&t| matching.contains(&edge(s, t))).count();
            g.degree(s) - later - partner
        })
        .collect()
}

/// A `(4,1)`-decomposition of a simple plane graph: `H` is a matching and
/// `D` is 4-degenerate, oriented along the returned ordering.
///
/// The graph is first extended to a triangulation. Each step deletes a
/// configuration from the working triangulation and fills the faces around
/// the hole, adding edges, and apex vertices only when a face walk repeats a
/// vertex. The result is restricted back to `g` and checked before it is
/// returned.
pub fn decompose41(g: &PlaneGraph) -> Result<Decomp41, DecompError> {
    decompose_with(g, &ConfigKind::ALL)
}

fn decompose_with(g: &PlaneGraph, order: &[ConfigKind]) -> Result<Decomp41, DecompError> {
    g.validate()?;
    let mut levels = Vec::new();
    let mut work = if g.n() <= 3 {
        g.clone()
    } else {
        saturate(g)?.0.into_graph()
    };
    let limit = 4 * work.n() + 16;
    while work.n() > 3 {
        if levels.len() > limit {
            return Err(invariant("4,1", "deletion does not terminate"));
        }
        let config = find_with(&work, order).ok_or(DecompError::DischargingContradiction(work.n()))?;
        if let Err(e) = config.validate(&work) {
            return Err(invariant("4,1", e));
        }
        let appended = config.append_order();
        let matching = config.matching();
        let earlier = earlier_counts(&work, &appended, &matching);
        if earlier.iter().any(|&c| c > 4) {
            return Err(invariant(
                "4,1",
                format!("kind {:?} at {} leaves earlier counts {earlier:?}", config.kind, config.v),
            ));
        }
        let gone: BTreeSet<Vertex> = appended.iter().copied().collect();
        let mut seeds: BTreeSet<Vertex> = BTreeSet::new();
        for &s in &gone {
            seeds.extend(work.rotation(s).iter().copied().filter(|w| !gone.contains(w)));
        }
        for &s in &gone {
            work.remove_vertex(s);
        }
        if work.n() > 3 {
            let mut added = Vec::new();
            connect_components(&mut work, &mut added);
            seeds.extend(added.iter().flat_map(|&(a, b)| [a, b]));
            let seeds: Vec<Vertex> = seeds.into_iter().collect();
            let walks = faces_at(&work, &seeds)?;
            fill_faces(&mut work, walks, &mut added)?;
            if work.num_edges() != 3 * work.n() - 6 {
                return Err(invariant("4,1", "filling the hole did not give a triangulation"));
            }
        }
        levels.push(Level {
            config,
            appended,
            matching,
            earlier,
        });
    }

    let mut sigma: Vec<Vertex> = work.vertices().collect();
    sigma.extend(levels.iter().rev().flat_map(|l| l.appended.iter().copied()));
    sigma.retain(|&v| g.contains(v));
    let ordering = DegeneracyOrdering::new(sigma)?;
    let hedges: BTreeSet<Edge> = levels
        .iter()
        .flat_map(|l| l.matching.iter().copied())
        .filter(|&(a, b)| g.contains(a) && g.contains(b) && g.has_edge(a, b))
        .collect();
    let d = g.edge_subgraph(|a, b| !hedges.contains(&(a, b)));
    let arcs = ordering_to_orientation(&d, &ordering)?.into_iter().collect();
    let pair = DecompPair { arcs, hedges };
    let report = check_dh(g, &pair, 4, 1);
    if !report.passed() || ordering.max_earlier(&d) > 4 {
        return Err(DecompError::ConditionFailed {
            size: g.n(),
            report: report.to_string(),
        });
    }
    Ok(Decomp41 { pair, ordering, levels })
}

/// One vertex of a [`ChargeTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeRow {
    pub vertex: Vertex,
    pub degree: usize,
    /// Number of 5-neighbors.
    pub d5: usize,
    pub initial: Rational64,
    pub after: Rational64,
}

/// The charges of a triangulation before and after the discharging rule:
/// each vertex starts at `deg - 6`, and every vertex of degree at least 6
/// splits its charge evenly among its 5-neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeTable {
    pub rows: Vec<ChargeRow>,
    pub initial_total: Rational64,
    pub final_total: Rational64,
    /// Whether two 5-vertices are adjacent.
    pub kind_ii_present: bool,
    /// When no two 5-vertices are adjacent: whether every vertex has at most
    /// `deg / 2` 5-neighbors.
    pub d5_bound_holds: Option<bool>,
    /// The configuration [`find_reducible`] locates, if any.
    pub located: Option<ReducibleConfig>,
}

impl ChargeTable {
    /// Charge is neither created nor lost.
    pub fn conserved(&self) -> bool {
        self.initial_total == self.final_total
    }

    /// Vertices whose final charge is negative.
    pub fn negative(&self) -> Vec<Vertex> {
        self.rows
            .iter()
            .filter(|r| r.after < Rational64::from_integer(0))
            .map(|r| r.vertex)
            .collect()
    }

    /// No configuration was found. The argument says every final charge is
    /// then non-negative, against a negative total; this never happens on a
    /// valid triangulation.
    pub fn impossible(&self) -> bool {
        self.located.is_none()
    }
}

impl fmt::Display for ChargeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertex degree d5 initial final")?;
        for r in &self.rows {
            writeln!(f, "{} {} {} {} {}", r.vertex, r.degree, r.d5, r.initial, r.after)?;
        }
        writeln!(f, "total {} -> {}", self.initial_total, self.final_total)?;
        match &self.located {
            Some(c) => write!(f, "config {:?} at {} with {:?}", c.kind, c.v, c.u),
            None => write!(f, "config none (contradiction)"),
        }
    }
}

/// Runs the discharging rule on a plane triangulation.
///
/// ```
/// use dhdecomp::{decomp41::discharge_audit, gen};
/// use num_rational::Rational64;
///
/// let t = discharge_audit(gen::named_solid("icosahedron").unwrap().graph()).unwrap();
/// assert_eq!(t.final_total, Rational64::from_integer(-12));
/// ```
pub fn discharge_audit(g: &PlaneGraph) -> Result<ChargeTable, DecompError> {
    if g.n() < 4 || !g.is_triangulation() {
        return Err(DecompError::Precondition(
            "a simple plane triangulation on at least 4 vertices is required".into(),
        ));
    }
    let deg = |w: Vertex| g.degree(w);
    let d5 = |w: Vertex| g.rotation(w).iter().filter(|&&u| deg(u) == 5).count();
    let mut after: BTreeMap<Vertex, Rational64> =
        g.vertices().map(|v| (v, Rational64::from_integer(deg(v) as i64 - 6))).collect();
    for v in g.vertices().filter(|&v| deg(v) >= 6 && d5(v) >= 1) {
        let share = Rational64::new(deg(v) as i64 - 6, d5(v) as i64);
        for &u in g.rotation(v).iter().filter(|&&u| deg(u) == 5) {
            *after.get_mut(&u).unwrap() += share;
            *after.get_mut(&v).unwrap() -= share;
        }
    }
    let rows: Vec<ChargeRow> = g
        .vertices()
        .map(|v| ChargeRow {
            vertex: v,
            degree: deg(v),
            d5: d5(v),
            initial: Rational64::from_integer(deg(v) as i64 - 6),
            after: after[&v],
        })
        .collect();
    let kind_ii_present = g.vertices().any(|v| deg(v) == 5 && d5(v) > 0);
    let d5_bound_holds = (!kind_ii_present).then(|| rows.iter().all(|r| r.d5 <= r.degree / 2));
    Ok(ChargeTable {
        initial_total: rows.iter().map(|r| r.initial).sum(),
        final_total: rows.iter().map(|r| r.after).sum(),
        rows,
        kind_ii_present,
        d5_bound_holds,
        located: find_in(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn small_solids_are_kind_i() {
        for name in ["tetrahedron", "octahedron"] {
            let t = gen::named_solid(name).unwrap();
            let c = find_reducible(t.graph()).unwrap();
            assert_eq!(c.kind, ConfigKind::I, "{name}");
            assert_eq!(c.v, 1);
        }
    }

    #[test]
    fn octahedron_needs_no_matching() {
        let t = gen::named_solid("octahedron").unwrap();
        let out = decompose41(t.graph()).unwrap();
        assert!(out.pair.hedges.is_empty());
        assert!(check_dh(t.graph(), &out.pair, 4, 1).passed());
    }

    #[test]
    fn icosahedron_kind_ii_counts() {
        let t = gen::named_solid("icosahedron").unwrap();
        let out = decompose41(t.graph()).unwrap();
        let first = &out.levels[0];
        assert_eq!(first.config.kind, ConfigKind::II);
        assert_eq!(first.earlier, vec![4, 4]);
        assert_eq!(first.matching.len(), 1);
    }

    #[test]
    fn appended_counts_per_kind() {
        let mut seen = BTreeSet::new();
        let mut graphs = vec![gen::tests_support::geodesic()];
        graphs.extend((0..20).map(|s| gen::tests_support::min_degree_five(s, 40)));
        graphs.extend((0..20).map(|s| gen::tests_support::flipped(60, s).into_graph()));
        for g in &graphs {
            let out = decompose41(g).unwrap();
            for l in &out.levels {
                seen.insert(l.config.kind);
                assert!(l.earlier.iter().all(|&c| c <= 4), "{l:?}");
            }
        }
        assert!(seen.len() >= 3, "{seen:?}");
    }

    #[test]
    fn audit_conserves_charge() {
        for seed in 0..10 {
            let t = gen::tests_support::flipped(80, seed);
            let table = discharge_audit(t.graph()).unwrap();
            assert!(table.conserved());
            assert_eq!(table.initial_total, Rational64::from_integer(-12));
            assert!(!table.impossible());
            if let Some(b) = table.d5_bound_holds {
                assert!(b);
            }
        }
    }

    #[test]
    fn every_kind_in_reverse_priority() {
        let order = [ConfigKind::V, ConfigKind::IV, ConfigKind::III, ConfigKind::II, ConfigKind::I];
        let mut seen = BTreeMap::new();
        for seed in 0..40 {
            let g = gen::tests_support::min_degree_five(seed, 60);
            let out = decompose_with(&g, &order).unwrap();
            assert!(check_dh(&g, &out.pair, 4, 1).passed());
            for l in &out.levels {
                *seen.entry(l.config.kind).or_insert(0) += 1;
                assert!(l.earlier.iter().all(|&c| c <= 4), "{l:?}");
                if l.config.kind == ConfigKind::V {
                    assert_eq!(l.earlier[0], 4);
                }
            }
        }
        assert_eq!(seen.len(), 5, "{seen:?}");
    }

    #[test]
    fn audit_on_k4() {
        let t = gen::named_solid("tetrahedron").unwrap();
        let table = discharge_audit(t.graph()).unwrap();
        assert!(table.rows.iter().all(|r| r.initial == Rational64::from_integer(-3)));
        assert_eq!(table.final_total, Rational64::from_integer(-12));
    }
}
