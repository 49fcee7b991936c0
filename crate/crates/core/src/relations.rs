//! Generators of the defining ideal `R`, and the auxiliary sums `E(v,u,k,l)`
//! and `H(v,u,j)` built from the coefficients `e(v,k)`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Edge, LayeredGraph, Path, Vertex};
use crate::ncpoly::{e_of_path, e_of_vertex, eword_to_poly, EWord, NcPoly, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `e(π₁,k) − e(π₂,k)` for two paths with common endpoints.
    PathPair { first: Path, second: Path, k: u32 },
    /// `f − e(t(f),1) + e(h(f),1)`
    S1 { edge: Edge },
    /// `e(v,1)e(u,k) − e(v,k+1) + e(u,k+1) − e(u,1)e(u,k)` for an edge `v → u`.
    S2 { upper: Vertex, lower: Vertex, k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationGen {
    pub poly: NcPoly,
    pub provenance: Provenance,
}

impl RelationGen {
    pub fn render(&self, g: &LayeredGraph) -> String {
        format!("{}\t{}", self.tag(g), self.poly.render(g))
    }

    /// Short audit label, e.g. `[S2 {12}>{2} k=1]`.
    pub fn tag(&self, g: &LayeredGraph) -> String {
        match &self.provenance {
            Provenance::PathPair { first, second, k } => format!(
                "[pair ({})/({}) k={k}]",
                first.ids(g).join(","),
                second.ids(g).join(",")
            ),
            Provenance::S1 { edge } => format!("[S1 {}]", g.edge_id(*edge)),
            Provenance::S2 { upper, lower, k } => {
                format!("[S2 {}>{} k={k}]", g.vertex_id(*upper), g.vertex_id(*lower))
            }
        }
    }
}

/// Sign-normalized form used to drop `±` duplicates: the coefficient of the
/// largest word is made positive.
fn sign_normal(p: &NcPoly) -> NcPoly {
    match p.terms().next_back() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p.clone(),
    }
}

/// `e(π₁,k) − e(π₂,k)` over all unordered pairs of distinct paths with
/// common tail and head, `1 ≤ k ≤ l(π₁)`. With `restrict_to_star`, only
/// paths ending at `*` are used.
pub fn path_pair_relations(g: &LayeredGraph, restrict_to_star: bool) -> Vec<RelationGen> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for v in g.vertices() {
        for w in g.vertices() {
            if !g.reachable(v, w) || (restrict_to_star && w != g.bottom()) {
                continue;
            }
            let paths = g.all_paths(v, w);
            for (i, first) in paths.iter().enumerate() {
                for second in &paths[i + 1..] {
                    for k in 1..=first.len() as u32 {
                        let poly = &e_of_path(g, Some(first), k) - &e_of_path(g, Some(second), k);
                        if poly.is_zero() || !seen.insert(sign_normal(&poly)) {
                            continue;
                        }
                        out.push(RelationGen {
                            poly,
                            provenance: Provenance::PathPair {
                                first: first.clone(),
                                second: second.clone(),
                                k,
                            },
                        });
                    }
                }
            }
        }
    }
    out
}

/// The element of `S₂` for the edge-adjacent pair `v > u` and `k`.
pub fn s2_element(g: &LayeredGraph, v: Vertex, u: Vertex, k: u32) -> NcPoly {
    let ev1 = e_of_vertex(g, v, 1);
    let eu1 = e_of_vertex(g, u, 1);
    let euk = e_of_vertex(g, u, k);
    let lhs = &(&ev1 * &euk) - &e_of_vertex(g, v, k + 1);
    &(&lhs + &e_of_vertex(g, u, k + 1)) - &(&eu1 * &euk)
}

/// The smaller generating set `S₁ ∪ S₂`; zero elements are dropped.
pub fn reduced_relations(g: &LayeredGraph) -> Vec<RelationGen> {
    let mut out = Vec::new();
    for f in g.edges() {
        let poly = &(&NcPoly::edge(g, f) - &e_of_vertex(g, g.tail(f), 1)) + &e_of_vertex(g, g.head(f), 1);
        if !poly.is_zero() {
            out.push(RelationGen {
                poly,
                provenance: Provenance::S1 { edge: f },
            });
        }
    }
    let adjacent: BTreeSet<(Vertex, Vertex)> = g.edges().map(|f| (g.tail(f), g.head(f))).collect();
    for (v, u) in adjacent {
        if g.level(u) == 0 {
            continue;
        }
        for k in 1..=g.level(u) {
            let poly = s2_element(g, v, u, k);
            if !poly.is_zero() {
                out.push(RelationGen {
                    poly,
                    provenance: Provenance::S2 { upper: v, lower: u, k },
                });
            }
        }
    }
    out
}

/// A linear combination of symbolic products `e(·,·)…e(·,·)`.
pub type ECombination = Vec<(Scalar, EWord)>;

fn collect_terms(terms: BTreeMap<EWord, Scalar>) -> ECombination {
    terms
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(w, c)| (c, w))
        .collect()
}

/// Calls `emit` with every composition `i_1, …, i_r` (all parts ≥ 1,
/// including the empty one) whose sum is at most `bound`.
fn compositions_up_to(bound: u32, acc: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    emit(acc);
    let used: u32 = acc.iter().sum();
    for part in 1..=bound.saturating_sub(used) {
        acc.push(part);
        compositions_up_to(bound, acc, emit);
        acc.pop();
    }
}

fn require_below(g: &LayeredGraph, v: Vertex, u: Vertex, k: u32) -> Result<()> {
    if g.reachable(v, u) {
        Ok(())
    } else {
        Err(Error::NotComposable {
            v: g.vertex_id(v).to_string(),
            u: g.vertex_id(u).to_string(),
            k,
        })
    }
}

/// `E(v,u,k,l)` as a combination of products
/// `(−1)^r e(v,i₀) e(u,i₁) … e(u,i_{r+1})` with `i₀ < k`,
/// `i₀ + … + i_r ≤ k`, `i₀ + … + i_{r+1} = k + l`, `i₁…i_r ≥ 1`.
///
/// Requires `v > u` and `|v| − |u| = k`. Products containing a vanishing
/// factor are dropped and like terms are combined.
pub fn e_sum_terms(g: &LayeredGraph, v: Vertex, u: Vertex, k: u32, l: u32) -> Result<ECombination> {
    require_below(g, v, u, k)?;
    if g.level(v) != g.level(u) + k {
        return Err(Error::NotComposable {
            v: g.vertex_id(v).to_string(),
            u: g.vertex_id(u).to_string(),
            k,
        });
    }
    let (lv, lu) = (g.level(v), g.level(u));
    let mut terms: BTreeMap<EWord, Scalar> = BTreeMap::new();
    for i0 in 0..k {
        let mut acc = Vec::new();
        compositions_up_to(k - i0, &mut acc, &mut |middle| {
            let head: u32 = i0 + middle.iter().sum::<u32>();
            let last = k + l - head;
            if i0 > lv || last > lu || middle.iter().any(|&i| i > lu) {
                return;
            }
            let factors = std::iter::once((v, i0))
                .chain(middle.iter().map(|&i| (u, i)))
                .chain(std::iter::once((u, last)));
            let sign = if middle.len() % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            *terms.entry(EWord::from_factors_unchecked(factors)).or_insert_with(Scalar::zero) += sign;
        });
    }
    Ok(collect_terms(terms))
}

/// `E(v,u,k,l)` expanded into `T(E)`.
pub fn e_sum(g: &LayeredGraph, v: Vertex, u: Vertex, k: u32, l: u32) -> Result<NcPoly> {
    expand(g, &e_sum_terms(g, v, u, k, l)?)
}

/// `H(v,u,j) = Σ (−1)^{j+r} e(v,i₀) e(u,i₁) … e(u,i_r)` over `i₀ ≥ 0`,
/// `i₁…i_r ≥ 1`, `i₀ + … + i_r = j`. Requires `v > u`.
pub fn h_sum_terms(g: &LayeredGraph, v: Vertex, u: Vertex, j: u32) -> Result<ECombination> {
    require_below(g, v, u, j)?;
    let (lv, lu) = (g.level(v), g.level(u));
    let mut terms: BTreeMap<EWord, Scalar> = BTreeMap::new();
    for i0 in 0..=j.min(lv) {
        let rest = j - i0;
        let mut acc = Vec::new();
        compositions_up_to(rest, &mut acc, &mut |parts| {
            if parts.iter().sum::<u32>() != rest || parts.iter().any(|&i| i > lu) {
                return;
            }
            let factors = std::iter::once((v, i0)).chain(parts.iter().map(|&i| (u, i)));
            let sign = if (j as usize + parts.len()).is_multiple_of(2) {
                Scalar::one()
            } else {
                -Scalar::one()
            };
            *terms.entry(EWord::from_factors_unchecked(factors)).or_insert_with(Scalar::zero) += sign;
        });
    }
    Ok(collect_terms(terms))
}

pub fn h_sum(g: &LayeredGraph, v: Vertex, u: Vertex, j: u32) -> Result<NcPoly> {
    expand(g, &h_sum_terms(g, v, u, j)?)
}

pub fn expand(g: &LayeredGraph, terms: &[(Scalar, EWord)]) -> Result<NcPoly> {
    let mut out = NcPoly::zero(g);
    for (c, w) in terms {
        out = out.try_add(&eword_to_poly(g, w)?.scale(c))?;
    }
    Ok(out)
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::PathPair { k, .. } => write!(f, "pair k={k}"),
            Provenance::S1 { .. } => f.write_str("S1"),
            Provenance::S2 { k, .. } => write!(f, "S2 k={k}"),
        }
    }
}
