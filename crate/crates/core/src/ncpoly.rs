//! Exact arithmetic in the free algebra `T(E)` on the edges of a graph, and
//! in the truncated ring `T(E)[t]/(t^(n+1))` where path polynomials live.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Edge, GraphTag, LayeredGraph, Path, Vertex};

pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Filtration level of an element of `T(E)`. The zero polynomial sits at
/// `NegInfinity`, below every finite level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiltrationLevel {
    NegInfinity,
    Finite(u32),
}

impl FiltrationLevel {
    pub fn finite(self) -> Option<u32> {
        match self {
            FiltrationLevel::NegInfinity => None,
            FiltrationLevel::Finite(n) => Some(n),
        }
    }
}

impl fmt::Display for FiltrationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationLevel::NegInfinity => f.write_str("-inf"),
            FiltrationLevel::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// A monomial `e_1 ... e_r` in the edges, carrying its total edge level.
///
/// Words order graded-lexicographically: by level, then length, then edge
/// ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    edges: Vec<Edge>,
    level: u32,
}

impl Word {
    pub fn empty() -> Word {
        Word {
            edges: Vec::new(),
            level: 0,
        }
    }

    pub fn new(g: &LayeredGraph, edges: Vec<Edge>) -> Word {
        let level = edges.iter().map(|&e| g.edge_level(e)).sum();
        Word { edges, level }
    }

    pub fn from_ids(g: &LayeredGraph, ids: &[&str]) -> Result<Word> {
        let edges = ids.iter().map(|id| g.edge(id)).collect::<Result<Vec<_>>>()?;
        Ok(Word::new(g, edges))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut edges = Vec::with_capacity(self.len() + other.len());
        edges.extend_from_slice(&self.edges);
        edges.extend_from_slice(&other.edges);
        Word {
            edges,
            level: self.level + other.level,
        }
    }

    pub fn render(&self, g: &LayeredGraph) -> String {
        let ids: Vec<&str> = self.edges.iter().map(|&e| g.edge_id(e)).collect();
        ids.join("·")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.level
            .cmp(&other.level)
            .then(self.edges.len().cmp(&other.edges.len()))
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of `T(E)`: a finite map from words to nonzero rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPoly {
    tag: GraphTag,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero(g: &LayeredGraph) -> NcPoly {
        NcPoly {
            tag: g.tag(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(g: &LayeredGraph) -> NcPoly {
        NcPoly::constant(g, Scalar::one())
    }

    pub fn constant(g: &LayeredGraph, c: Scalar) -> NcPoly {
        NcPoly::monomial(g, c, Word::empty())
    }

    pub fn edge(g: &LayeredGraph, e: Edge) -> NcPoly {
        NcPoly::monomial(g, Scalar::one(), Word::new(g, vec![e]))
    }

    pub fn word(g: &LayeredGraph, w: Word) -> NcPoly {
        NcPoly::monomial(g, Scalar::one(), w)
    }

    pub fn monomial(g: &LayeredGraph, c: Scalar, w: Word) -> NcPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { tag: g.tag(), terms }
    }

    pub fn from_terms(g: &LayeredGraph, terms: impl IntoIterator<Item = (Word, Scalar)>) -> NcPoly {
        let mut p = NcPoly::zero(g);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn tag(&self) -> GraphTag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + ExactSizeIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `|a|`: the largest level of a word occurring in `a`.
    pub fn level(&self) -> FiltrationLevel {
        // terms are sorted by level first
        match self.terms.keys().next_back() {
            Some(w) => FiltrationLevel::Finite(w.level()),
            None => FiltrationLevel::NegInfinity,
        }
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn same_graph(&self, other: &NcPoly) -> Result<()> {
        if self.tag == other.tag {
            Ok(())
        } else {
            Err(Error::MixedGraph)
        }
    }

    pub fn try_add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.same_graph(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &NcPoly) -> Result<NcPoly> {
        self.same_graph(other)?;
        let mut out = NcPoly {
            tag: self.tag,
            terms: BTreeMap::new(),
        };
        for (u, a) in &self.terms {
            for (w, b) in &other.terms {
                out.add_term(u.concat(w), a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> NcPoly {
        if s.is_zero() {
            return NcPoly {
                tag: self.tag,
                terms: BTreeMap::new(),
            };
        }
        NcPoly {
            tag: self.tag,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&-Scalar::one())
    }

    /// `u · self · w`
    pub fn sandwich(&self, left: &Word, right: &Word) -> NcPoly {
        NcPoly {
            tag: self.tag,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (left.concat(w).concat(right), c.clone()))
                .collect(),
        }
    }

    /// Canonical text: terms in ascending word order, scalars as `p` or
    /// `p/q`, words joined by `·`.
    pub fn render(&self, g: &LayeredGraph) -> String {
        render_terms(self.terms.iter().map(|(w, c)| (c, w.render(g))), false)
    }
}

/// Shared by polynomial and module-vector rendering.
pub(crate) fn render_terms<'a>(
    terms: impl Iterator<Item = (&'a Scalar, String)>,
    always_coefficient: bool,
) -> String {
    let mut out = String::new();
    for (c, body) in terms {
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        if body.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() && !always_coefficient {
            out.push_str(&body);
        } else {
            out.push_str(&abs.to_string());
            out.push('·');
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        self.try_add(rhs).expect("polynomials from different graphs")
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self.try_sub(rhs).expect("polynomials from different graphs")
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.try_mul(rhs).expect("polynomials from different graphs")
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly::neg(self)
    }
}

pub fn nc_add(a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
    a.try_add(b)
}

pub fn nc_scale(s: &Scalar, a: &NcPoly) -> NcPoly {
    a.scale(s)
}

pub fn nc_mul(a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
    a.try_mul(b)
}

pub fn filtration_level(a: &NcPoly) -> FiltrationLevel {
    a.level()
}

/// A polynomial in the central variable `t` with coefficients in `T(E)`,
/// truncated modulo `t^(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPoly {
    coeffs: Vec<NcPoly>,
}

impl PathPoly {
    pub fn one(g: &LayeredGraph) -> PathPoly {
        let n = g.max_level() as usize;
        let mut coeffs = vec![NcPoly::zero(g); n + 1];
        coeffs[0] = NcPoly::one(g);
        PathPoly { coeffs }
    }

    /// `1 - t e`
    pub fn linear(g: &LayeredGraph, e: Edge) -> PathPoly {
        let mut p = PathPoly::one(g);
        if p.coeffs.len() > 1 {
            p.coeffs[1] = NcPoly::edge(g, e).neg();
        }
        p
    }

    /// The coefficient of `t^k`; zero beyond the truncation.
    pub fn coeff(&self, k: usize) -> NcPoly {
        match self.coeffs.get(k) {
            Some(c) => c.clone(),
            None => NcPoly {
                tag: self.coeffs[0].tag,
                terms: BTreeMap::new(),
            },
        }
    }

    pub fn coeffs(&self) -> &[NcPoly] {
        &self.coeffs
    }

    /// Degree of truncation `n`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn try_mul(&self, other: &PathPoly) -> Result<PathPoly> {
        let n = self.truncation();
        let mut coeffs = vec![self.coeff(n + 1); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        Ok(PathPoly { coeffs })
    }
}

/// `P_π(t) = (1 - t e_1) ... (1 - t e_k)`; the empty path gives `1`.
pub fn path_poly(g: &LayeredGraph, path: Option<&Path>) -> PathPoly {
    let mut p = PathPoly::one(g);
    if let Some(path) = path {
        for &e in path.edges() {
            p = p.try_mul(&PathPoly::linear(g, e)).expect("same graph");
        }
    }
    p
}

/// `e(π, k)`: the sum of products of `k` edges of `π` taken in path order,
/// i.e. `(-1)^k` times the coefficient of `t^k` in `P_π(t)`.
pub fn e_of_path(g: &LayeredGraph, path: Option<&Path>, k: u32) -> NcPoly {
    let len = path.map_or(0, |p| p.len());
    if k as usize > len {
        return NcPoly::zero(g);
    }
    if k == 0 {
        return NcPoly::one(g);
    }
    let edges = path.map_or(&[][..], |p| p.edges());
    // Elementary symmetric expansion, kept ordered: choose positions i1 < ... < ik.
    let mut out = NcPoly::zero(g);
    let mut chosen = Vec::with_capacity(k as usize);
    subsequences(edges, k as usize, 0, &mut chosen, &mut |w| {
        out.add_term(Word::new(g, w.to_vec()), Scalar::one())
    });
    out
}

fn subsequences(edges: &[Edge], k: usize, start: usize, acc: &mut Vec<Edge>, emit: &mut impl FnMut(&[Edge])) {
    if acc.len() == k {
        emit(acc);
        return;
    }
    let need = k - acc.len();
    for i in start..=edges.len().saturating_sub(need) {
        if i >= edges.len() {
            break;
        }
        acc.push(edges[i]);
        subsequences(edges, k, i + 1, acc, emit);
        acc.pop();
    }
}

/// `e(v, k) = e(π_v, k)`; `e(v, 0) = 1` and `e(*, k) = 0` for `k > 0`.
pub fn e_of_vertex(g: &LayeredGraph, v: Vertex, k: u32) -> NcPoly {
    e_of_path(g, g.canonical_path(v).as_ref(), k)
}

/// A product `e(b_1, m_1) ... e(b_k, m_k)` of generating-function
/// coefficients, kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EWord {
    factors: Vec<(Vertex, u32)>,
}

impl EWord {
    pub fn new(g: &LayeredGraph, factors: Vec<(Vertex, u32)>) -> Result<EWord> {
        for &(v, m) in &factors {
            g.check_mult(v, m)?;
        }
        Ok(EWord { factors })
    }

    /// Factors with multiplicity zero are the unit and are dropped.
    pub(crate) fn from_factors_unchecked(factors: impl IntoIterator<Item = (Vertex, u32)>) -> EWord {
        EWord {
            factors: factors.into_iter().filter(|&(_, m)| m > 0).collect(),
        }
    }

    pub fn factors(&self) -> &[(Vertex, u32)] {
        &self.factors
    }

    pub fn render(&self, g: &LayeredGraph) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(v, m)| format!("e({},{})", g.vertex_id(v), m))
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }
}

/// Expands `e(b_1, m_1) ... e(b_k, m_k)` into `T(E)`.
pub fn eword_to_poly(g: &LayeredGraph, w: &EWord) -> Result<NcPoly> {
    let mut out = NcPoly::one(g);
    for &(v, m) in &w.factors {
        g.check_mult(v, m)?;
        out = out.try_mul(&e_of_vertex(g, v, m))?;
        if out.is_zero() {
            break;
        }
    }
    Ok(out)
}
