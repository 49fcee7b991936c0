//! Generators for standard layered graphs (Hasse diagrams of subset,
//! partition and subspace lattices, and chains) plus graph file I/O.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path as FsPath;

use crate::error::{Error, Result};
use crate::graph::{validate, LayeredGraph, RawGraph};

pub const MAX_BOOLEAN: u32 = 6;
pub const MAX_PARTITION: u32 = 5;
pub const MAX_SUBSPACE_DIM: u32 = 4;
pub const MAX_CHAIN: u32 = 1000;

/// Which built-in family to generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Boolean { n: u32 },
    Chain { n: u32 },
    Partition { n: u32 },
    Subspace { q: u32, n: u32 },
    File { path: String },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<LayeredGraph> {
        match self {
            GeneratorSpec::Boolean { n } => boolean_lattice(*n),
            GeneratorSpec::Chain { n } => chain(*n),
            GeneratorSpec::Partition { n } => partition_lattice(*n),
            GeneratorSpec::Subspace { q, n } => subspace_lattice(*q, *n),
            GeneratorSpec::File { path } => load_graph(path),
        }
    }
}

fn subset_id(set: &[u32]) -> String {
    let parts: Vec<String> = set.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Hasse diagram of the subsets of `{1..n}`: an edge `(A, i)` runs from
/// `A ∪ {i}` down to `A`.
pub fn boolean_lattice(n: u32) -> Result<LayeredGraph> {
    if !(1..=MAX_BOOLEAN).contains(&n) {
        return Err(Error::LimitExceeded {
            family: "boolean",
            detail: format!("need 1 <= n <= {MAX_BOOLEAN}, got {n}"),
        });
    }
    let mut raw = RawGraph::default();
    for mask in 0u32..(1 << n) {
        let set: Vec<u32> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        raw.vertices.push((subset_id(&set), set.len() as u32));
        for i in 1..=n {
            if mask & (1 << (i - 1)) != 0 {
                continue;
            }
            let upper: Vec<u32> = (1..=n)
                .filter(|j| *j == i || mask & (1 << (j - 1)) != 0)
                .collect();
            let digits: String = set.iter().map(u32::to_string).collect();
            raw.edges.push((format!("x{digits}_{i}"), subset_id(&upper), subset_id(&set)));
        }
    }
    validate(&raw)
}

/// `v0 ← v1 ← … ← vn`, one edge `c_i : v_i → v_{i−1}` per step.
pub fn chain(n: u32) -> Result<LayeredGraph> {
    if !(1..=MAX_CHAIN).contains(&n) {
        return Err(Error::LimitExceeded {
            family: "chain",
            detail: format!("need 1 <= n <= {MAX_CHAIN}, got {n}"),
        });
    }
    let mut raw = RawGraph::default();
    for i in 0..=n {
        raw.vertices.push((format!("v{i}"), i));
        if i > 0 {
            raw.edges.push((format!("c{i}"), format!("v{i}"), format!("v{}", i - 1)));
        }
    }
    validate(&raw)
}

type Partition = Vec<Vec<u32>>;

fn canonical_partition(mut blocks: Partition) -> Partition {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

fn partition_id(p: &Partition) -> String {
    let blocks: Vec<String> = p
        .iter()
        .map(|b| b.iter().map(u32::to_string).collect())
        .collect();
    blocks.join("|")
}

fn all_partitions(n: u32) -> Vec<Partition> {
    let mut out: Vec<Partition> = vec![Vec::new()];
    for x in 1..=n {
        let mut next = Vec::new();
        for p in &out {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    out.into_iter().map(canonical_partition).collect()
}

fn numbered_edges(prefix: &str, mut pairs: Vec<(String, String)>) -> Vec<(String, String, String)> {
    pairs.sort();
    pairs.dedup();
    let width = pairs.len().to_string().len();
    pairs
        .into_iter()
        .enumerate()
        .map(|(i, (tail, head))| (format!("{prefix}{i:0width$}"), tail, head))
        .collect()
}

/// Set partitions of `{1..n}` ordered by refinement. The level is
/// `n − #blocks`, so the partition into singletons is `*`; an edge merges
/// two blocks and points from the coarser partition to the finer one.
pub fn partition_lattice(n: u32) -> Result<LayeredGraph> {
    if !(2..=MAX_PARTITION).contains(&n) {
        return Err(Error::LimitExceeded {
            family: "partition",
            detail: format!("need 2 <= n <= {MAX_PARTITION}, got {n}"),
        });
    }
    let mut raw = RawGraph::default();
    let mut covers = Vec::new();
    for p in all_partitions(n) {
        let id = partition_id(&p);
        raw.vertices.push((id.clone(), n - p.len() as u32));
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                let mut merged: Partition = p
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, b)| b.clone())
                    .collect();
                merged.push(p[i].iter().chain(&p[j]).copied().collect());
                covers.push((partition_id(&canonical_partition(merged)), id.clone()));
            }
        }
    }
    raw.edges = numbered_edges("p", covers);
    validate(&raw)
}

/// Row-reduced echelon form over `F_q` (`q` prime), zero rows removed.
fn rref(mut rows: Vec<Vec<u32>>, q: u32) -> Vec<Vec<u32>> {
    let n = rows.first().map_or(0, Vec::len);
    let inv = |a: u32| (1..q).find(|b| a * b % q == 1).expect("q prime");
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let s = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = *x * s % q;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..n {
                    rows[i][j] = (rows[i][j] + q * q - f * rows[r][j]) % q;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn subspace_id(basis: &[Vec<u32>]) -> String {
    let rows: Vec<String> = basis
        .iter()
        .map(|r| r.iter().map(u32::to_string).collect())
        .collect();
    format!("[{}]", rows.join(";"))
}

/// Subspaces of `F_q^n` ordered by inclusion; level = dimension, `*` is
/// the zero subspace, and edges are codimension-one containments.
pub fn subspace_lattice(q: u32, n: u32) -> Result<LayeredGraph> {
    if !matches!(q, 2 | 3) || !(1..=MAX_SUBSPACE_DIM).contains(&n) {
        return Err(Error::LimitExceeded {
            family: "subspace",
            detail: format!("need q in {{2, 3}} and 1 <= n <= {MAX_SUBSPACE_DIM}, got q={q} n={n}"),
        });
    }
    let vectors: Vec<Vec<u32>> = (0..q.pow(n))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = x % q;
                    x /= q;
                    d
                })
                .collect()
        })
        .collect();

    // Breadth-first by dimension: every subspace of dimension d+1 arises as
    // span(U, x) for some U of dimension d.
    let mut levels: Vec<BTreeSet<Vec<Vec<u32>>>> = vec![BTreeSet::from([Vec::new()])];
    let mut covers = Vec::new();
    for d in 0..n as usize {
        let mut next = BTreeSet::new();
        for u in &levels[d] {
            for x in &vectors {
                let mut rows = u.clone();
                rows.push(x.clone());
                let w = rref(rows, q);
                if w.len() == d + 1 {
                    covers.push((subspace_id(&w), subspace_id(u)));
                    next.insert(w);
                }
            }
        }
        levels.push(next);
    }
    let mut raw = RawGraph::default();
    for (d, subspaces) in levels.iter().enumerate() {
        for s in subspaces {
            raw.vertices.push((subspace_id(s), d as u32));
        }
    }
    raw.edges = numbered_edges("s", covers);
    validate(&raw)
}

/// Reads and validates a graph file.
pub fn load_graph(path: impl AsRef<FsPath>) -> Result<LayeredGraph> {
    let text = std::fs::read_to_string(path)?;
    LayeredGraph::parse(&text)
}

pub fn save_graph(g: &LayeredGraph, path: impl AsRef<FsPath>) -> Result<()> {
    std::fs::write(path, g.to_text())?;
    Ok(())
}

/// Vertex counts per level, handy for quick summaries.
pub fn level_profile(g: &LayeredGraph) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for v in g.vertices() {
        *out.entry(g.level(v)).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    /// Cover pairs of a finite order given as a "strictly below" predicate,
    /// by transitive reduction.
    fn covers_of(g: &LayeredGraph, below: impl Fn(&str, &str) -> bool) -> BTreeSet<(String, String)> {
        let ids: Vec<String> = g.vertices().map(|v| g.vertex_id(v).to_string()).collect();
        let mut out = BTreeSet::new();
        for hi in &ids {
            for lo in &ids {
                if !below(lo, hi) {
                    continue;
                }
                let between = ids.iter().any(|m| below(lo, m) && below(m, hi));
                if !between {
                    out.insert((hi.clone(), lo.clone()));
                }
            }
        }
        out
    }

    fn edge_pairs(g: &LayeredGraph) -> BTreeSet<(String, String)> {
        g.edges()
            .map(|e| (g.vertex_id(g.tail(e)).to_string(), g.vertex_id(g.head(e)).to_string()))
            .collect()
    }

    fn out_degree(g: &LayeredGraph, v: Vertex) -> usize {
        g.out_edges(v).len()
    }

    #[test]
    fn boolean_shapes() {
        let g = boolean_lattice(2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        let g = boolean_lattice(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.max_level()), (8, 12, 3));
        let g = boolean_lattice(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        for n in 1..=5u32 {
            let g = boolean_lattice(n).unwrap();
            assert_eq!(g.vertex_count(), 1 << n);
            assert_eq!(g.edge_count(), (n as usize) << (n - 1));
            for v in g.vertices() {
                assert_eq!(out_degree(&g, v), g.level(v) as usize);
            }
        }
        assert!(matches!(boolean_lattice(7), Err(Error::LimitExceeded { .. })));
        assert!(boolean_lattice(0).is_err());
    }

    #[test]
    fn boolean_ids() {
        let g = boolean_lattice(2).unwrap();
        let e = g.edge("x1_2").unwrap();
        assert_eq!(g.vertex_id(g.tail(e)), "{1,2}");
        assert_eq!(g.vertex_id(g.head(e)), "{1}");
        assert_eq!(g.vertex_id(g.bottom()), "{}");
    }

    #[test]
    fn chains() {
        let g = chain(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 3));
        let c1 = chain(1).unwrap();
        assert_eq!((c1.vertex_count(), c1.edge_count()), (2, 1));
        assert!(crate::relations::path_pair_relations(&chain(4).unwrap(), false).is_empty());
    }

    #[test]
    fn partitions() {
        let g = partition_lattice(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 6));
        assert_eq!(level_profile(&g), BTreeMap::from([(0, 1), (1, 3), (2, 1)]));
        let top = g.vertex("123").unwrap();
        assert_eq!(out_degree(&g, top), 3);
        assert_eq!(g.vertex_id(g.bottom()), "1|2|3");
        let g2 = partition_lattice(2).unwrap();
        assert_eq!((g2.vertex_count(), g2.edge_count()), (2, 1));
        assert_eq!(partition_lattice(5).unwrap().vertex_count(), 52);
        assert!(partition_lattice(6).is_err());
    }

    fn refines(fine: &str, coarse: &str) -> bool {
        // every block of `fine` sits inside a block of `coarse`
        fine != coarse
            && fine.split('|').all(|b| {
                coarse
                    .split('|')
                    .any(|c| b.chars().all(|ch| c.contains(ch)))
            })
    }

    #[test]
    fn partition_edges_are_covers() {
        for n in 2..=4 {
            let g = partition_lattice(n).unwrap();
            assert_eq!(edge_pairs(&g), covers_of(&g, refines));
        }
    }

    #[test]
    fn subspaces() {
        let g = subspace_lattice(2, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 6));
        assert_eq!(level_profile(&g), BTreeMap::from([(0, 1), (1, 3), (2, 1)]));
        let g = subspace_lattice(2, 3).unwrap();
        assert_eq!(level_profile(&g), BTreeMap::from([(0, 1), (1, 7), (2, 7), (3, 1)]));
        let g = subspace_lattice(2, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(subspace_lattice(3, 2).unwrap().vertex_count(), 1 + 4 + 1);
        assert!(subspace_lattice(5, 2).is_err());
        assert!(subspace_lattice(2, 5).is_err());
    }

    #[test]
    fn subspace_edges_are_covers() {
        for (q, n) in [(2, 2), (2, 3), (3, 2)] {
            let g = subspace_lattice(q, n).unwrap();
            // Independent containment test: enumerate the span of each basis.
            let span = |id: &str| -> BTreeSet<Vec<u32>> {
                let rows: Vec<Vec<u32>> = id
                    .trim_matches(|c| c == '[' || c == ']')
                    .split(';')
                    .filter(|s| !s.is_empty())
                    .map(|r| r.chars().map(|c| c.to_digit(10).unwrap()).collect())
                    .collect();
                let mut out = BTreeSet::from([vec![0; n as usize]]);
                for r in &rows {
                    let mut next = BTreeSet::new();
                    for v in &out {
                        for c in 0..q {
                            next.insert(v.iter().zip(r).map(|(a, b)| (a + c * b) % q).collect());
                        }
                    }
                    out = next;
                }
                out
            };
            let below = |lo: &str, hi: &str| lo != hi && span(lo).is_subset(&span(hi));
            assert_eq!(edge_pairs(&g), covers_of(&g, below));
        }
    }

    #[test]
    fn generated_graphs_revalidate_unchanged() {
        let graphs = [
            boolean_lattice(3).unwrap(),
            chain(4).unwrap(),
            partition_lattice(4).unwrap(),
            subspace_lattice(2, 3).unwrap(),
        ];
        for g in graphs {
            assert_eq!(validate(&g.to_raw()).unwrap(), g);
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.graph");
        let g = partition_lattice(3).unwrap();
        save_graph(&g, &path).unwrap();
        assert_eq!(load_graph(&path).unwrap(), g);
        assert_eq!(
            GeneratorSpec::File {
                path: path.to_string_lossy().into_owned()
            }
            .build()
            .unwrap(),
            g
        );

        std::fs::write(&path, "vertex a 0\nvertex x 1\nedge x1 x b\n").unwrap();
        assert!(matches!(load_graph(&path), Err(Error::DanglingRef { .. })));
        std::fs::write(&path, "").unwrap();
        assert!(matches!(load_graph(&path), Err(Error::NoUniqueMin { .. })));
        assert!(matches!(load_graph(dir.path().join("missing")), Err(Error::Io(_))));
    }
}
