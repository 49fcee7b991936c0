//! Layered directed graphs with a unique minimal vertex.
//!
//! Every edge drops the level by exactly one, every vertex above level 0
//! has an outgoing edge, and each such vertex carries a *chosen* edge. The
//! chosen edges determine the canonical path from a vertex down to the
//! minimal vertex `*`.
//!
//! Vertices and edges are stored sorted by identifier, so the index order of
//! [`Vertex`] and [`Edge`] handles agrees with lexicographic identifier order.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(pub(crate) u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(pub(crate) u32);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Edge {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Identifies the free algebra a polynomial lives in. Two graphs with the
/// same vertices and edges share a tag even if their chosen edges differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphTag(pub(crate) u64);

/// Unvalidated graph description, as read from a graph file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub vertices: Vec<(String, u32)>,
    /// `(id, tail, head)`
    pub edges: Vec<(String, String, String)>,
    /// `(vertex, edge)`
    pub chosen: Vec<(String, String)>,
}

impl RawGraph {
    /// Parses the line-oriented graph format:
    ///
    /// ```text
    /// vertex <id> <level>
    /// edge <id> <tail-id> <head-id>
    /// chosen <vertex-id> <edge-id>
    /// ```
    ///
    /// Lines starting with `#` and blank lines are ignored.
    pub fn parse(text: &str) -> Result<RawGraph> {
        let mut raw = RawGraph::default();
        for (lineno, line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            match fields[0] {
                "vertex" => {
                    if fields.len() != 3 {
                        return Err(err("expected: vertex <id> <level>".into()));
                    }
                    let level = fields[2]
                        .parse::<u32>()
                        .map_err(|_| err(format!("bad level {:?}", fields[2])))?;
                    raw.vertices.push((fields[1].to_string(), level));
                }
                "edge" => {
                    if fields.len() != 4 {
                        return Err(err("expected: edge <id> <tail-id> <head-id>".into()));
                    }
                    raw.edges.push((
                        fields[1].to_string(),
                        fields[2].to_string(),
                        fields[3].to_string(),
                    ));
                }
                "chosen" => {
                    if fields.len() != 3 {
                        return Err(err("expected: chosen <vertex-id> <edge-id>".into()));
                    }
                    raw.chosen.push((fields[1].to_string(), fields[2].to_string()));
                }
                other => return Err(err(format!("unknown directive {other:?}"))),
            }
        }
        Ok(raw)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct VertexInfo {
    id: String,
    level: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgeInfo {
    id: String,
    tail: Vertex,
    head: Vertex,
}

/// A validated layered graph. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredGraph {
    vertices: Vec<VertexInfo>,
    edges: Vec<EdgeInfo>,
    vertex_index: HashMap<String, Vertex>,
    edge_index: HashMap<String, Edge>,
    out_edges: Vec<Vec<Edge>>,
    chosen: Vec<Option<Edge>>,
    bottom: Vertex,
    max_level: u32,
    // below[v][w] <=> there is a path of length >= 1 from v to w
    below: Vec<Vec<bool>>,
    tag: GraphTag,
}

/// Validates a raw description. Missing chosen edges default to the
/// outgoing edge with the smallest identifier.
pub fn validate(raw: &RawGraph) -> Result<LayeredGraph> {
    let mut vertex_ids: BTreeMap<&str, u32> = BTreeMap::new();
    for (id, level) in &raw.vertices {
        if vertex_ids.insert(id.as_str(), *level).is_some() {
            return Err(Error::DuplicateId {
                kind: "vertex",
                id: id.clone(),
            });
        }
    }
    let vertices: Vec<VertexInfo> = vertex_ids
        .iter()
        .map(|(id, level)| VertexInfo {
            id: id.to_string(),
            level: *level,
        })
        .collect();
    let vertex_index: HashMap<String, Vertex> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id.clone(), Vertex(i as u32)))
        .collect();

    let mut edge_ids: BTreeMap<&str, (&str, &str)> = BTreeMap::new();
    for (id, tail, head) in &raw.edges {
        if edge_ids.insert(id.as_str(), (tail, head)).is_some() {
            return Err(Error::DuplicateId {
                kind: "edge",
                id: id.clone(),
            });
        }
    }
    let mut edges = Vec::with_capacity(edge_ids.len());
    for (id, (tail, head)) in &edge_ids {
        let lookup = |name: &str| {
            vertex_index.get(name).copied().ok_or_else(|| Error::DanglingRef {
                context: format!("edge {id}"),
                kind: "vertex",
                id: name.to_string(),
            })
        };
        let tail = lookup(tail)?;
        let head = lookup(head)?;
        let (tl, hl) = (vertices[tail.index()].level, vertices[head.index()].level);
        if tl != hl + 1 {
            return Err(Error::LevelMismatch {
                edge: id.to_string(),
                tail_level: tl,
                head_level: hl,
            });
        }
        edges.push(EdgeInfo {
            id: id.to_string(),
            tail,
            head,
        });
    }
    let edge_index: HashMap<String, Edge> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.clone(), Edge(i as u32)))
        .collect();

    let minimal: Vec<usize> = (0..vertices.len())
        .filter(|&i| vertices[i].level == 0)
        .collect();
    if minimal.len() != 1 {
        return Err(Error::NoUniqueMin {
            count: minimal.len(),
        });
    }
    let bottom = Vertex(minimal[0] as u32);

    let mut out_edges = vec![Vec::new(); vertices.len()];
    for (i, e) in edges.iter().enumerate() {
        out_edges[e.tail.index()].push(Edge(i as u32));
    }
    for (i, v) in vertices.iter().enumerate() {
        if v.level > 0 && out_edges[i].is_empty() {
            return Err(Error::DeadVertex {
                vertex: v.id.clone(),
            });
        }
    }

    let mut chosen: Vec<Option<Edge>> = out_edges.iter().map(|out| out.first().copied()).collect();
    let mut seen_chosen = BTreeSet::new();
    for (vid, eid) in &raw.chosen {
        let v = *vertex_index.get(vid).ok_or_else(|| Error::DanglingRef {
            context: "chosen".into(),
            kind: "vertex",
            id: vid.clone(),
        })?;
        let e = *edge_index.get(eid).ok_or_else(|| Error::DanglingRef {
            context: format!("chosen {vid}"),
            kind: "edge",
            id: eid.clone(),
        })?;
        if !seen_chosen.insert(v) {
            return Err(Error::DuplicateId {
                kind: "chosen",
                id: vid.clone(),
            });
        }
        if edges[e.index()].tail != v {
            return Err(Error::BadChosen {
                vertex: vid.clone(),
                edge: eid.clone(),
            });
        }
        chosen[v.index()] = Some(e);
    }

    let max_level = vertices.iter().map(|v| v.level).max().unwrap_or(0);

    // Reachability, processed from level 1 upwards.
    let n = vertices.len();
    let mut below = vec![vec![false; n]; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| vertices[i].level);
    for &v in &order {
        for e in &out_edges[v] {
            let h = edges[e.index()].head.index();
            below[v][h] = true;
            for w in 0..n {
                if below[h][w] {
                    below[v][w] = true;
                }
            }
        }
    }

    let mut hasher = DefaultHasher::new();
    for v in &vertices {
        (&v.id, v.level).hash(&mut hasher);
    }
    for e in &edges {
        (&e.id, e.tail, e.head).hash(&mut hasher);
    }
    let tag = GraphTag(hasher.finish());

    Ok(LayeredGraph {
        vertices,
        edges,
        vertex_index,
        edge_index,
        out_edges,
        chosen,
        bottom,
        max_level,
        below,
        tag,
    })
}

impl LayeredGraph {
    pub fn parse(text: &str) -> Result<LayeredGraph> {
        validate(&RawGraph::parse(text)?)
    }

    pub fn tag(&self) -> GraphTag {
        self.tag
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        (0..self.vertices.len() as u32).map(Vertex)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        (0..self.edges.len() as u32).map(Edge)
    }

    pub fn vertex(&self, id: &str) -> Result<Vertex> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge(&self, id: &str) -> Result<Edge> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn vertex_id(&self, v: Vertex) -> &str {
        &self.vertices[v.index()].id
    }

    pub fn edge_id(&self, e: Edge) -> &str {
        &self.edges[e.index()].id
    }

    pub fn level(&self, v: Vertex) -> u32 {
        self.vertices[v.index()].level
    }

    /// The level of an edge is the level of its tail.
    pub fn edge_level(&self, e: Edge) -> u32 {
        self.level(self.tail(e))
    }

    pub fn tail(&self, e: Edge) -> Vertex {
        self.edges[e.index()].tail
    }

    pub fn head(&self, e: Edge) -> Vertex {
        self.edges[e.index()].head
    }

    /// The unique level-0 vertex `*`.
    pub fn bottom(&self) -> Vertex {
        self.bottom
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn out_edges(&self, v: Vertex) -> &[Edge] {
        &self.out_edges[v.index()]
    }

    /// The chosen edge `e_v`; `None` only for `*`.
    pub fn chosen(&self, v: Vertex) -> Option<Edge> {
        self.chosen[v.index()]
    }

    pub fn vertices_at_level(&self, level: u32) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(move |&v| self.level(v) == level)
    }

    /// True iff there is a path of length at least one from `v` to `w`.
    pub fn reachable(&self, v: Vertex, w: Vertex) -> bool {
        self.below[v.index()][w.index()]
    }

    /// `(v, k)` composes with `(u, l)` iff `v > u` and `|u| = |v| - k`.
    /// The answer does not depend on `l`, which is only range-checked.
    pub fn composable(&self, (v, k): (Vertex, u32), (u, l): (Vertex, u32)) -> Result<bool> {
        self.check_mult(v, k)?;
        self.check_mult(u, l)?;
        Ok(self.composable_unchecked(v, k, u))
    }

    pub(crate) fn composable_unchecked(&self, v: Vertex, k: u32, u: Vertex) -> bool {
        self.reachable(v, u) && self.level(u) + k == self.level(v)
    }

    pub(crate) fn check_mult(&self, v: Vertex, k: u32) -> Result<()> {
        let level = self.level(v);
        if k > level {
            return Err(Error::BadMultiplicity {
                vertex: self.vertex_id(v).to_string(),
                mult: k,
                level,
            });
        }
        Ok(())
    }

    /// The vertices `v^(0) = v, v^(1), ..., v^(|v|) = *` visited by following
    /// chosen edges.
    pub fn canonical_vertices(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(e) = self.chosen(cur) {
            cur = self.head(e);
            out.push(cur);
        }
        out
    }

    /// The canonical path `π_v`, or `None` for `v = *`.
    pub fn canonical_path(&self, v: Vertex) -> Option<Path> {
        let mut edges = Vec::with_capacity(self.level(v) as usize);
        let mut cur = v;
        while let Some(e) = self.chosen(cur) {
            edges.push(e);
            cur = self.head(e);
        }
        if edges.is_empty() {
            None
        } else {
            Some(Path {
                edges,
                tail: v,
                head: cur,
            })
        }
    }

    /// All paths from `v` to `w`, ordered lexicographically by edge id.
    pub fn all_paths(&self, v: Vertex, w: Vertex) -> Vec<Path> {
        let mut out: Vec<Vec<Edge>> = Vec::new();
        if !self.reachable(v, w) {
            return Vec::new();
        }
        let mut stack = Vec::new();
        self.paths_rec(v, w, &mut stack, &mut out);
        out.into_iter()
            .map(|edges| Path { edges, tail: v, head: w })
            .collect()
    }

    fn paths_rec(&self, cur: Vertex, target: Vertex, stack: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        for &e in self.out_edges(cur) {
            let h = self.head(e);
            if h == target {
                stack.push(e);
                out.push(stack.clone());
                stack.pop();
            } else if self.reachable(h, target) {
                stack.push(e);
                self.paths_rec(h, target, stack, out);
                stack.pop();
            }
        }
    }

    /// Same graph with a different chosen-edge map. Vertices absent from
    /// `chosen` keep their current edge.
    pub fn with_chosen(&self, chosen: &[(Vertex, Edge)]) -> Result<LayeredGraph> {
        let mut g = self.clone();
        for &(v, e) in chosen {
            if self.tail(e) != v {
                return Err(Error::BadChosen {
                    vertex: self.vertex_id(v).to_string(),
                    edge: self.edge_id(e).to_string(),
                });
            }
            g.chosen[v.index()] = Some(e);
        }
        Ok(g)
    }

    /// Same graph, choosing the outgoing edge with the largest identifier
    /// at every vertex.
    pub fn with_alternate_chosen(&self) -> LayeredGraph {
        let mut g = self.clone();
        for v in self.vertices() {
            g.chosen[v.index()] = self.out_edges(v).last().copied();
        }
        g
    }

    /// The description this graph was built from, with every chosen edge
    /// spelled out.
    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self
                .vertices
                .iter()
                .map(|v| (v.id.clone(), v.level))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    (
                        e.id.clone(),
                        self.vertex_id(e.tail).to_string(),
                        self.vertex_id(e.head).to_string(),
                    )
                })
                .collect(),
            chosen: self
                .vertices()
                .filter_map(|v| {
                    self.chosen(v)
                        .map(|e| (self.vertex_id(v).to_string(), self.edge_id(e).to_string()))
                })
                .collect(),
        }
    }

    /// Renders the graph in the graph file format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LayeredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut by_level: Vec<Vertex> = self.vertices().collect();
        by_level.sort_by_key(|&v| self.level(v));
        for v in by_level {
            writeln!(f, "vertex {} {}", self.vertex_id(v), self.level(v))?;
        }
        for e in self.edges() {
            writeln!(
                f,
                "edge {} {} {}",
                self.edge_id(e),
                self.vertex_id(self.tail(e)),
                self.vertex_id(self.head(e))
            )?;
        }
        for v in self.vertices() {
            if let Some(e) = self.chosen(v) {
                writeln!(f, "chosen {} {}", self.vertex_id(v), self.edge_id(e))?;
            }
        }
        Ok(())
    }
}

/// A nonempty chain of edges, each ending where the next one starts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    edges: Vec<Edge>,
    tail: Vertex,
    head: Vertex,
}

impl Path {
    pub fn new(g: &LayeredGraph, edges: Vec<Edge>) -> Result<Path> {
        let (first, last) = match (edges.first(), edges.last()) {
            (Some(&first), Some(&last)) => (first, last),
            _ => return Err(Error::InvalidPath("a path needs at least one edge".into())),
        };
        for pair in edges.windows(2) {
            if g.head(pair[0]) != g.tail(pair[1]) {
                return Err(Error::InvalidPath(format!(
                    "{} does not end where {} starts",
                    g.edge_id(pair[0]),
                    g.edge_id(pair[1])
                )));
            }
        }
        Ok(Path {
            tail: g.tail(first),
            head: g.head(last),
            edges,
        })
    }

    pub fn from_ids(g: &LayeredGraph, ids: &[&str]) -> Result<Path> {
        let edges = ids.iter().map(|id| g.edge(id)).collect::<Result<Vec<_>>>()?;
        Path::new(g, edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn tail(&self) -> Vertex {
        self.tail
    }

    pub fn head(&self) -> Vertex {
        self.head
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of edge levels.
    pub fn level(&self, g: &LayeredGraph) -> u32 {
        self.edges.iter().map(|&e| g.edge_level(e)).sum()
    }

    /// `self` followed by `other`; requires `head(self) = tail(other)`.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.head != other.tail {
            return Err(Error::InvalidPath("paths do not meet".into()));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            edges,
            tail: self.tail,
            head: other.head,
        })
    }

    pub fn ids<'g>(&self, g: &'g LayeredGraph) -> Vec<&'g str> {
        self.edges.iter().map(|&e| g.edge_id(e)).collect()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const GAMMA2: &str = "\
# the square
vertex * 0
vertex {1} 1
vertex {2} 1
vertex {12} 2
edge a1 {1} *
edge a2 {2} *
edge b1 {12} {1}
edge b2 {12} {2}
";

    fn gamma2() -> LayeredGraph {
        LayeredGraph::parse(GAMMA2).unwrap()
    }

    #[test]
    fn default_chosen_is_smallest_edge() {
        let g = gamma2();
        let top = g.vertex("{12}").unwrap();
        assert_eq!(g.edge_id(g.chosen(top).unwrap()), "b1");
        assert_eq!(g.edge_id(g.chosen(g.vertex("{2}").unwrap()).unwrap()), "a2");
        assert_eq!(g.chosen(g.bottom()), None);
        assert_eq!(g.max_level(), 2);
    }

    #[test]
    fn canonical_paths() {
        let g = gamma2();
        let p = g.canonical_path(g.vertex("{12}").unwrap()).unwrap();
        assert_eq!(p.ids(&g), ["b1", "a1"]);
        assert_eq!(p.head(), g.bottom());
        let p = g.canonical_path(g.vertex("{1}").unwrap()).unwrap();
        assert_eq!(p.ids(&g), ["a1"]);
        assert!(g.canonical_path(g.bottom()).is_none());
    }

    #[test]
    fn reachability_and_composability() {
        let g = gamma2();
        let v = |s| g.vertex(s).unwrap();
        assert!(g.reachable(v("{12}"), v("{1}")));
        assert!(!g.reachable(v("{1}"), v("{2}")));
        assert!(!g.reachable(v("{1}"), v("{1}")));
        assert!(g.composable((v("{12}"), 1), (v("{1}"), 1)).unwrap());
        assert!(!g.composable((v("{12}"), 2), (v("{1}"), 1)).unwrap());
        assert!(!g.composable((v("{1}"), 1), (v("{2}"), 1)).unwrap());
        assert!(matches!(
            g.composable((v("{1}"), 2), (v("*"), 0)),
            Err(Error::BadMultiplicity { .. })
        ));
    }

    #[test]
    fn path_enumeration() {
        let g = gamma2();
        let v = |s| g.vertex(s).unwrap();
        let paths: Vec<Vec<&str>> = g.all_paths(v("{12}"), v("*")).iter().map(|p| p.ids(&g)).collect();
        assert_eq!(paths, vec![vec!["b1", "a1"], vec!["b2", "a2"]]);
        assert_eq!(g.all_paths(v("{1}"), v("*")).len(), 1);
        assert!(g.all_paths(v("*"), v("{1}")).is_empty());
        assert!(g.all_paths(v("{1}"), v("{1}")).is_empty());
    }

    #[test]
    fn validation_errors() {
        let two_min = "vertex a 0\nvertex b 0\n";
        assert_eq!(LayeredGraph::parse(two_min), Err(Error::NoUniqueMin { count: 2 }));
        assert_eq!(LayeredGraph::parse(""), Err(Error::NoUniqueMin { count: 0 }));
        let skip = "vertex * 0\nvertex x 2\nedge e x *\n";
        assert!(matches!(LayeredGraph::parse(skip), Err(Error::LevelMismatch { .. })));
        let dead = "vertex * 0\nvertex x 1\n";
        assert!(matches!(LayeredGraph::parse(dead), Err(Error::DeadVertex { .. })));
        let dangling = "vertex * 0\nvertex x 1\nedge e x y\n";
        assert!(matches!(LayeredGraph::parse(dangling), Err(Error::DanglingRef { .. })));
        let bad_chosen = format!("{GAMMA2}chosen {{12}} a1\n");
        assert!(matches!(LayeredGraph::parse(&bad_chosen), Err(Error::BadChosen { .. })));
        let dup = "vertex * 0\nvertex * 0\n";
        assert!(matches!(LayeredGraph::parse(dup), Err(Error::DuplicateId { .. })));
        assert!(matches!(
            LayeredGraph::parse("vertx * 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn explicit_chosen_and_round_trip() {
        let g = LayeredGraph::parse(&format!("{GAMMA2}chosen {{12}} b2\n")).unwrap();
        let p = g.canonical_path(g.vertex("{12}").unwrap()).unwrap();
        assert_eq!(p.ids(&g), ["b2", "a2"]);
        let again = LayeredGraph::parse(&g.to_text()).unwrap();
        assert_eq!(again, g);
        assert_eq!(validate(&g.to_raw()).unwrap(), g);
        assert_eq!(g.tag(), gamma2().tag());
        assert_eq!(gamma2().with_alternate_chosen(), g);
    }

    #[test]
    fn path_construction() {
        let g = gamma2();
        assert!(Path::from_ids(&g, &["b1", "a2"]).is_err());
        assert!(Path::new(&g, vec![]).is_err());
        let p = Path::from_ids(&g, &["b2"]).unwrap();
        let q = Path::from_ids(&g, &["a2"]).unwrap();
        let pq = p.concat(&q).unwrap();
        assert_eq!(pq.len(), 2);
        assert_eq!(pq.level(&g), 3);
        assert!(q.concat(&p).is_err());
    }
}
