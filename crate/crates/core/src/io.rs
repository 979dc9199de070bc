//! The `.rot` and `.dh` text formats.
//!
//! A `.rot` file is a rotation system:
//!
//! ```text
//! 3
//! 1: 2 3
//! 2: 3 1
//! 3: 1 2
//! outer: 1 2 3
//! ```
//!
//! The first line is the vertex count, then one line per vertex listing its
//! neighbors clockwise, then an optional `outer:` line giving a face walk.
//! Tokens are separated by whitespace and `#` starts a comment.
//!
//! A `.dh` file is a decomposition: a `d h` header, an optional
//! `# root x y ...` comment, then `D u v` lines (arc `u -> v`) and
//! `H u v` lines (hedge, `u < v`), each group sorted.
//!
//! Emitters write single spaces and LF line endings, and parsing what they
//! write gives back the same value.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::GraphError;
use crate::plane::{default_outer, NearTriangulation, PlaneGraph};
use crate::verify::DecompPair;
use crate::Vertex;

/// A parse failure. `line` is 1-based; `None` for whole-file problems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    Asymmetric { listed_by: Vertex, missing_at: Vertex },
    Graph(GraphError),
    BadOuter(Vec<Vertex>),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.line {
            write!(f, "line {l}: ")?;
        }
        match &self.kind {
            ParseErrorKind::Syntax(s) => f.write_str(s),
            ParseErrorKind::Asymmetric { listed_by, missing_at } => write!(
                f,
                "asymmetric rotation: vertex {missing_at} does not list {listed_by} although {listed_by} lists {missing_at}"
            ),
            ParseErrorKind::Graph(e) => write!(f, "{e}"),
            ParseErrorKind::BadOuter(o) => write!(f, "outer {o:?} is not a face walk of the embedding"),
        }
    }
}

impl std::error::Error for ParseError {}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line: Some(line),
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

/// Lines with comments stripped, paired with 1-based line numbers; blank
/// lines dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected {what}, found {tok:?}")))
}

fn vertex(line: usize, tok: &str) -> Result<Vertex, ParseError> {
    let v: Vertex = number(line, tok, "a vertex id")?;
    if v == 0 {
        return Err(syntax(line, "vertex ids start at 1"));
    }
    Ok(v)
}

/// A parsed `.rot` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotFile {
    pub graph: PlaneGraph,
    pub outer: Option<Vec<Vertex>>,
}

impl RotFile {
    /// The graph as a near triangulation, with the given outer face or the
    /// default one when the file names none.
    pub fn near_triangulation(&self) -> Result<NearTriangulation, GraphError> {
        let outer = match &self.outer {
            Some(o) => o.clone(),
            None => default_outer(&self.graph)?,
        };
        NearTriangulation::new(self.graph.clone(), outer)
    }
}

pub fn parse_rot(text: &str) -> Result<RotFile, ParseError> {
    let mut lines = content_lines(text);
    let (first, head) = lines
        .next()
        .ok_or(ParseError {
            line: None,
            kind: ParseErrorKind::Syntax("empty file".into()),
        })?;
    let n: usize = number(first, head, "the vertex count")?;

    let mut entries: Vec<(Vertex, Vec<Vertex>)> = Vec::with_capacity(n);
    let mut line_of: HashMap<Vertex, usize> = HashMap::with_capacity(n);
    let mut outer = None;
    for (ln, l) in lines {
        if outer.is_some() {
            return Err(syntax(ln, "nothing may follow the outer line"));
        }
        let (key, rest) = l
            .split_once(':')
            .ok_or_else(|| syntax(ln, "expected `v: neighbors` or `outer: walk`"))?;
        let key = key.trim();
        if key == "outer" {
            let walk = rest
                .split_whitespace()
                .map(|t| vertex(ln, t))
                .collect::<Result<Vec<_>, _>>()?;
            if walk.len() < 2 {
                return Err(syntax(ln, "outer walk needs at least two vertices"));
            }
            outer = Some((ln, walk));
            continue;
        }
        let v = vertex(ln, key)?;
        if line_of.insert(v, ln).is_some() {
            return Err(syntax(ln, format!("vertex {v} listed twice")));
        }
        let mut nbrs = Vec::new();
        for t in rest.split_whitespace() {
            let w = vertex(ln, t)?;
            if w == v {
                return Err(err_at(ln, GraphError::SelfLoop(v)));
            }
            if nbrs.contains(&w) {
                return Err(err_at(ln, GraphError::DuplicateNeighbor { vertex: v, neighbor: w }));
            }
            nbrs.push(w);
        }
        entries.push((v, nbrs));
    }
    if entries.len() != n {
        return Err(ParseError {
            line: None,
            kind: ParseErrorKind::Syntax(format!(
                "header announces {n} vertices but {} are listed",
                entries.len()
            )),
        });
    }

    let adj: HashMap<Vertex, BTreeSet<Vertex>> = entries
        .iter()
        .map(|(v, r)| (*v, r.iter().copied().collect()))
        .collect();
    for (v, r) in &entries {
        for &w in r {
            match adj.get(&w) {
                None => return Err(err_at(line_of[v], GraphError::UnknownVertex(w))),
                Some(back) if !back.contains(v) => {
                    return Err(ParseError {
                        line: Some(line_of[v]),
                        kind: ParseErrorKind::Asymmetric {
                            listed_by: *v,
                            missing_at: w,
                        },
                    })
                }
                _ => {}
            }
        }
    }

    let graph = PlaneGraph::from_entries(entries).map_err(|e| ParseError {
        line: None,
        kind: ParseErrorKind::Graph(e),
    })?;
    let outer = match outer {
        Some((ln, walk)) => {
            if !is_face_walk(&graph, &walk) {
                return Err(ParseError {
                    line: Some(ln),
                    kind: ParseErrorKind::BadOuter(walk),
                });
            }
            Some(walk)
        }
        None => None,
    };
    Ok(RotFile { graph, outer })
}

fn err_at(line: usize, e: GraphError) -> ParseError {
    ParseError {
        line: Some(line),
        kind: ParseErrorKind::Graph(e),
    }
}

fn is_face_walk(g: &PlaneGraph, walk: &[Vertex]) -> bool {
    if !g.has_edge(walk[0], walk[1]) {
        return false;
    }
    let mut dart = (walk[0], walk[1]);
    for i in 0..walk.len() {
        let want = (walk[i], walk[(i + 1) % walk.len()]);
        if dart != want {
            return false;
        }
        dart = match g.face_successor(dart) {
            Ok(d) => d,
            Err(_) => return false,
        };
    }
    dart == (walk[0], walk[1])
}

/// Writes `g` in `.rot` form, vertices in increasing id order.
pub fn emit_rot(g: &PlaneGraph, outer: Option<&[Vertex]>) -> String {
    let mut s = format!("{}\n", g.n());
    for v in g.vertices() {
        s.push_str(&v.to_string());
        s.push(':');
        for w in g.rotation(v) {
            s.push(' ');
            s.push_str(&w.to_string());
        }
        s.push('\n');
    }
    if let Some(o) = outer {
        s.push_str("outer:");
        for w in o {
            s.push(' ');
            s.push_str(&w.to_string());
        }
        s.push('\n');
    }
    s
}

/// A near triangulation with its outer face line.
pub fn emit_near(t: &NearTriangulation) -> String {
    emit_rot(t.graph(), Some(t.boundary()))
}

/// A parsed `.dh` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhFile {
    pub d: usize,
    pub h: usize,
    pub root: Option<Vec<Vertex>>,
    pub pair: DecompPair,
}

pub fn emit_dh(p: &DecompPair, d: usize, h: usize, root: Option<&[Vertex]>) -> String {
    let mut s = format!("{d} {h}\n");
    if let Some(r) = root {
        s.push_str("# root");
        for v in r {
            s.push(' ');
            s.push_str(&v.to_string());
        }
        s.push('\n');
    }
    for (u, v) in &p.arcs {
        s.push_str(&format!("D {u} {v}\n"));
    }
    for (u, v) in &p.hedges {
        s.push_str(&format!("H {u} {v}\n"));
    }
    s
}

pub fn parse_dh(text: &str) -> Result<DhFile, ParseError> {
    let mut root = None;
    for (i, l) in text.lines().enumerate() {
        if let Some(rest) = l.trim().strip_prefix("# root") {
            let r = rest
                .split_whitespace()
                .map(|t| vertex(i + 1, t))
                .collect::<Result<Vec<_>, _>>()?;
            root = Some(r);
        }
    }
    let mut lines = content_lines(text);
    let (first, head) = lines.next().ok_or(ParseError {
        line: None,
        kind: ParseErrorKind::Syntax("empty file".into()),
    })?;
    let toks: Vec<&str> = head.split_whitespace().collect();
    let [d, h] = toks[..] else {
        return Err(syntax(first, "header must be `d h`"));
    };
    let d = number(first, d, "d")?;
    let h = number(first, h, "h")?;

    let mut pair = DecompPair::new();
    let mut seen: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let [kind, u, v] = toks[..] else {
            return Err(syntax(ln, "expected `D u v` or `H u v`"));
        };
        let (u, v) = (vertex(ln, u)?, vertex(ln, v)?);
        if u == v {
            return Err(err_at(ln, GraphError::SelfLoop(u)));
        }
        let key = crate::edge(u, v);
        if let Some(prev) = seen.insert(key, ln) {
            return Err(syntax(ln, format!("edge {u}-{v} already given on line {prev}")));
        }
        match kind {
            "D" => {
                pair.arcs.insert((u, v));
            }
            "H" => {
                if u > v {
                    return Err(syntax(ln, "hedges are written with the smaller id first"));
                }
                pair.hedges.insert((u, v));
            }
            _ => return Err(syntax(ln, format!("unknown line kind {kind:?}"))),
        }
    }
    Ok(DhFile { d, h, root, pair })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    const K3: &str = "3\n1: 2 3\n2: 3 1\n3: 1 2\nouter: 1 2 3\n";

    #[test]
    fn k3_round_trip() {
        let f = parse_rot(K3).unwrap();
        assert_eq!(f.outer.as_deref(), Some(&[1, 2, 3][..]));
        assert_eq!(f.graph.num_edges(), 3);
        assert_eq!(emit_rot(&f.graph, f.outer.as_deref()), K3);
        let t = f.near_triangulation().unwrap();
        assert_eq!(emit_near(&t), K3);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# triangle\n3\n\n1: 2 3 # first\n2: 3 1\n3: 1 2\n";
        let f = parse_rot(text).unwrap();
        assert_eq!(f.outer, None);
        assert_eq!(f.graph, parse_rot(K3).unwrap().graph);
    }

    #[test]
    fn asymmetry_names_the_vertex_and_line() {
        let e = parse_rot("2\n1: 2\n2:\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        assert_eq!(
            e.kind,
            ParseErrorKind::Asymmetric {
                listed_by: 1,
                missing_at: 2
            }
        );
        assert!(e.to_string().contains("vertex 2 does not list 1"));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let cases = [
            ("x\n", 1),
            ("3\n1: 2 3\n2: 3 one\n3: 1 2\n", 3),
            ("3\n1 2 3\n", 2),
            ("3\n1: 2 3\n1: 3 2\n", 3),
            ("3\n1: 2 3\n2: 3 1\n3: 1 2\nouter: 1 3 9\n", 5),
            ("3\n1: 2 3\n2: 3 1\n3: 1 2\nouter: 1 2 3\n4: 1\n", 6),
            ("3\n1: 1 3\n", 2),
        ];
        for (text, line) in cases {
            assert_eq!(parse_rot(text).unwrap_err().line, Some(line), "{text:?}");
        }
        assert_eq!(parse_rot("4\n1: 2 3\n2: 3 1\n3: 1 2\n").unwrap_err().line, None);
    }

    #[test]
    fn outer_must_be_a_face_walk() {
        // 1 2 3 and 1 3 2 are both faces of K3; 1 2 is not a closed walk.
        assert!(parse_rot("3\n1: 2 3\n2: 3 1\n3: 1 2\nouter: 1 3 2\n").is_ok());
        let e = parse_rot("3\n1: 2 3\n2: 3 1\n3: 1 2\nouter: 1 2\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::BadOuter(_)));
    }

    #[test]
    fn dh_round_trip() {
        let p = DecompPair::from_parts([(1, 2), (3, 2)], [(3, 1)]);
        let text = emit_dh(&p, 2, 6, Some(&[1, 2, 3]));
        assert_eq!(text, "2 6\n# root 1 2 3\nD 1 2\nD 3 2\nH 1 3\n");
        let back = parse_dh(&text).unwrap();
        assert_eq!((back.d, back.h, back.root.as_deref()), (2, 6, Some(&[1, 2, 3][..])));
        assert_eq!(back.pair, p);
        assert_eq!(emit_dh(&back.pair, 2, 6, back.root.as_deref()), text);
        assert_eq!(emit_dh(&DecompPair::new(), 4, 1, None), "4 1\n");
    }

    #[test]
    fn dh_rejects_repeats_and_junk() {
        assert_eq!(parse_dh("2 6\nD 1 2\nH 1 2\n").unwrap_err().line, Some(3));
        assert_eq!(parse_dh("2 6\nH 2 1\n").unwrap_err().line, Some(2));
        assert_eq!(parse_dh("2\n").unwrap_err().line, Some(1));
        assert_eq!(parse_dh("2 6\nX 1 2\n").unwrap_err().line, Some(2));
    }

    #[test]
    fn generated_graphs_round_trip() {
        for n in [4, 9, 50] {
            let t = gen::stacked_triangulation(n, n as u64);
            let text = emit_near(&t);
            let f = parse_rot(&text).unwrap();
            assert_eq!(f.near_triangulation().unwrap(), t);
            assert_eq!(emit_rot(&f.graph, f.outer.as_deref()), text);
        }
    }
}
