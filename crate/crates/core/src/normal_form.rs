//! The combinatorial basis of `A(Γ) = T(E)/R` and the module action of
//! `T(E)` on its span, which yields normal forms.
//!
//! A basis element is a sequence `((b₁,m₁), …, (b_k,m_k))` with
//! `1 ≤ m_i ≤ |b_i|` in which no adjacent pair composes. The action of
//! `e(v,k)` on such a sequence either absorbs a composable prefix into the
//! leading pair or peels off correction terms `E(v,b_j,·,·)` of strictly
//! smaller level; edges act as `e(t(f),1) − e(h(f),1)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Edge, GraphTag, LayeredGraph, Vertex};
use crate::ncpoly::{render_terms, EWord, NcPoly, Scalar, Word};
use crate::relations::{e_sum_terms, ECombination};

/// One factor `(b, m)` of a basis sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub vertex: Vertex,
    pub mult: u32,
}

/// Level of the pair `(v, m)`: `m|v| − m(m−1)/2`.
pub fn pair_level(vertex_level: u32, mult: u32) -> u32 {
    mult * vertex_level - mult * mult.saturating_sub(1) / 2
}

/// A sequence of pairs with `1 ≤ m_i ≤ |b_i|`, ordered graded-lexicographically
/// (level, then length, then pairs).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairSeq {
    pairs: Vec<Pair>,
    level: u32,
}

impl PairSeq {
    pub fn empty() -> PairSeq {
        PairSeq {
            pairs: Vec::new(),
            level: 0,
        }
    }

    pub fn new(g: &LayeredGraph, pairs: Vec<(Vertex, u32)>) -> Result<PairSeq> {
        let mut level = 0;
        let mut out = Vec::with_capacity(pairs.len());
        for (vertex, mult) in pairs {
            let vl = g.level(vertex);
            if mult == 0 || mult > vl {
                return Err(Error::BadMultiplicity {
                    vertex: g.vertex_id(vertex).to_string(),
                    mult,
                    level: vl,
                });
            }
            level += pair_level(vl, mult);
            out.push(Pair { vertex, mult });
        }
        Ok(PairSeq { pairs: out, level })
    }

    pub fn from_ids(g: &LayeredGraph, pairs: &[(&str, u32)]) -> Result<PairSeq> {
        let pairs = pairs
            .iter()
            .map(|&(id, m)| Ok((g.vertex(id)?, m)))
            .collect::<Result<Vec<_>>>()?;
        PairSeq::new(g, pairs)
    }

    /// Like [`PairSeq::new`], additionally requiring the basis condition.
    pub fn basis(g: &LayeredGraph, pairs: Vec<(Vertex, u32)>) -> Result<PairSeq> {
        let seq = PairSeq::new(g, pairs)?;
        seq.check_basis(g)?;
        Ok(seq)
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `|b| = Σ m_i|b_i| − m_i(m_i−1)/2`
    pub fn level(&self) -> u32 {
        self.level
    }

    /// No adjacent pair composes.
    pub fn is_basis(&self, g: &LayeredGraph) -> bool {
        self.check_basis(g).is_ok()
    }

    fn check_basis(&self, g: &LayeredGraph) -> Result<()> {
        for (i, w) in self.pairs.windows(2).enumerate() {
            if g.composable_unchecked(w[0].vertex, w[0].mult, w[1].vertex) {
                return Err(Error::NotBasis { position: i + 1 });
            }
        }
        Ok(())
    }

    /// The suffix starting at 0-based position `start`.
    pub fn suffix(&self, g: &LayeredGraph, start: usize) -> PairSeq {
        let pairs = self.pairs[start.min(self.pairs.len())..].to_vec();
        let level = pairs
            .iter()
            .map(|p| pair_level(g.level(p.vertex), p.mult))
            .sum();
        PairSeq { pairs, level }
    }

    /// `(v, m) ∘ self`
    fn prepend(&self, g: &LayeredGraph, vertex: Vertex, mult: u32) -> PairSeq {
        let mut pairs = Vec::with_capacity(self.pairs.len() + 1);
        pairs.push(Pair { vertex, mult });
        pairs.extend_from_slice(&self.pairs);
        PairSeq {
            pairs,
            level: self.level + pair_level(g.level(vertex), mult),
        }
    }

    /// `self ∘ other`
    pub fn concat(&self, other: &PairSeq) -> PairSeq {
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        PairSeq {
            pairs,
            level: self.level + other.level,
        }
    }

    pub fn to_eword(&self) -> EWord {
        EWord::from_factors_unchecked(self.pairs.iter().map(|p| (p.vertex, p.mult)))
    }

    /// `(v:m, v:m, …)`
    pub fn render(&self, g: &LayeredGraph) -> String {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|p| format!("{}:{}", g.vertex_id(p.vertex), p.mult))
            .collect();
        format!("({})", parts.join(", "))
    }
}

impl Ord for PairSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.level
            .cmp(&other.level)
            .then(self.pairs.len().cmp(&other.pairs.len()))
            .then_with(|| self.pairs.cmp(&other.pairs))
    }
}

impl PartialOrd for PairSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the module `B`: a rational combination of basis sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BVector {
    tag: GraphTag,
    terms: BTreeMap<PairSeq, Scalar>,
}

impl BVector {
    pub fn zero(g: &LayeredGraph) -> BVector {
        BVector {
            tag: g.tag(),
            terms: BTreeMap::new(),
        }
    }

    /// `1·b`
    pub fn basis(g: &LayeredGraph, b: PairSeq) -> BVector {
        let mut out = BVector::zero(g);
        out.terms.insert(b, Scalar::one());
        out
    }

    /// `1·∅`
    pub fn unit(g: &LayeredGraph) -> BVector {
        BVector::basis(g, PairSeq::empty())
    }

    pub fn from_terms(g: &LayeredGraph, terms: impl IntoIterator<Item = (PairSeq, Scalar)>) -> BVector {
        let mut out = BVector::zero(g);
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    pub fn tag(&self) -> GraphTag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PairSeq, &Scalar)> + ExactSizeIterator<Item = (&PairSeq, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: &PairSeq) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest level of a sequence in the support, `None` for zero.
    pub fn level(&self) -> Option<u32> {
        self.terms.keys().next_back().map(PairSeq::level)
    }

    fn add_term(&mut self, b: PairSeq, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
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

    /// `self += c · other`
    fn add_scaled(&mut self, other: &BVector, c: &Scalar) {
        for (b, d) in &other.terms {
            self.add_term(b.clone(), c * d);
        }
    }

    pub fn try_add(&self, other: &BVector) -> Result<BVector> {
        if self.tag != other.tag {
            return Err(Error::MixedGraph);
        }
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &BVector) -> Result<BVector> {
        if self.tag != other.tag {
            return Err(Error::MixedGraph);
        }
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> BVector {
        let mut out = BVector {
            tag: self.tag,
            terms: BTreeMap::new(),
        };
        out.add_scaled(self, s);
        out
    }

    /// `c₁·[b₁] + c₂·[b₂] + …` in ascending basis order.
    pub fn render(&self, g: &LayeredGraph) -> String {
        render_terms(
            self.terms.iter().map(|(b, c)| (c, format!("[{}]", b.render(g)))),
            true,
        )
    }
}

type ActKey = (Vertex, u32, PairSeq);
type ESumKey = (Vertex, Vertex, u32, u32);

/// The algebra `A(Γ)` realized through its action on `B`.
///
/// Holds memo tables for `e(v,k)·b` and for `E(v,u,k,l)`; both are
/// read-through caches and never change results.
pub struct Algebra {
    graph: Arc<LayeredGraph>,
    act_memo: Mutex<HashMap<ActKey, BVector>>,
    esum_memo: Mutex<HashMap<ESumKey, Arc<ECombination>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("vertices", &self.graph.vertex_count())
            .field("edges", &self.graph.edge_count())
            .finish()
    }
}

impl Algebra {
    pub fn new(graph: impl Into<Arc<LayeredGraph>>) -> Algebra {
        Algebra {
            graph: graph.into(),
            act_memo: Mutex::new(HashMap::new()),
            esum_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn graph(&self) -> &LayeredGraph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<LayeredGraph> {
        Arc::clone(&self.graph)
    }

    fn check_tag(&self, tag: GraphTag) -> Result<()> {
        if tag == self.graph.tag() {
            Ok(())
        } else {
            Err(Error::MixedGraph)
        }
    }

    fn checked_basis(&self, b: &PairSeq) -> Result<()> {
        let g = &*self.graph;
        for p in &b.pairs {
            if p.vertex.index() >= g.vertex_count() {
                return Err(Error::UnknownVertex(format!("#{}", p.vertex.index())));
            }
        }
        b.check_basis(g)
    }

    /// `z(v,k,b)`, 1-based: the first position `j` where
    /// `(v, k + m₁ + … + m_{j−1})` does not compose with `(b_j, m_j)`, or
    /// `len(b) + 1` if every position composes.
    pub fn z_index(&self, v: Vertex, k: u32, b: &PairSeq) -> Result<usize> {
        self.graph.check_mult(v, k)?;
        Ok(self.absorbed_prefix(v, k, b).len() + 1)
    }

    /// Accumulated multiplicities `k + m₁ + … + m_{j−1}` for each position
    /// `j < z(v,k,b)`.
    fn absorbed_prefix(&self, v: Vertex, k: u32, b: &PairSeq) -> Vec<u32> {
        let g = &*self.graph;
        let mut acc = k;
        let mut out = Vec::new();
        for p in &b.pairs {
            if !g.composable_unchecked(v, acc, p.vertex) {
                break;
            }
            out.push(acc);
            acc += p.mult;
        }
        out
    }

    /// `e(v,k) · b` for a basis sequence `b`.
    pub fn act_e(&self, v: Vertex, k: u32, b: &PairSeq) -> Result<BVector> {
        if v.index() >= self.graph.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{}", v.index())));
        }
        self.checked_basis(b)?;
        Ok(self.act_e_inner(v, k, b))
    }

    fn act_e_inner(&self, v: Vertex, k: u32, b: &PairSeq) -> BVector {
        let g = &*self.graph;
        if k == 0 {
            return BVector::basis(g, b.clone());
        }
        if k > g.level(v) {
            return BVector::zero(g);
        }
        let key = (v, k, b.clone());
        if let Some(hit) = self.act_memo.lock().unwrap().get(&key) {
            return hit.clone();
        }

        let prefix = self.absorbed_prefix(v, k, b);
        let z = prefix.len();
        let lead_mult = prefix
            .last()
            .map_or(k, |&acc| acc + b.pairs[z - 1].mult);
        let mut out = BVector::basis(g, b.suffix(g, z).prepend(g, v, lead_mult));
        let minus_one = -Scalar::one();
        for (j, &acc) in prefix.iter().enumerate() {
            let pair = b.pairs[j];
            let correction = self.e_sum_cached(v, pair.vertex, acc, pair.mult);
            let tail = b.suffix(g, j + 1);
            for (c, w) in correction.iter() {
                let term = self.act_eword_on(w, BVector::basis(g, tail.clone()));
                out.add_scaled(&term, &(c * &minus_one));
            }
        }

        self.act_memo.lock().unwrap().insert(key, out.clone());
        out
    }

    fn e_sum_cached(&self, v: Vertex, u: Vertex, k: u32, l: u32) -> Arc<ECombination> {
        let key = (v, u, k, l);
        if let Some(hit) = self.esum_memo.lock().unwrap().get(&key) {
            return Arc::clone(hit);
        }
        let terms = Arc::new(
            e_sum_terms(&self.graph, v, u, k, l).expect("absorbed pairs are composable"),
        );
        self.esum_memo
            .lock()
            .unwrap()
            .insert(key, Arc::clone(&terms));
        terms
    }

    /// `f · b = e(t(f),1)·b − e(h(f),1)·b`
    pub fn act_edge(&self, f: Edge, b: &PairSeq) -> Result<BVector> {
        if f.index() >= self.graph.edge_count() {
            return Err(Error::UnknownEdge(format!("#{}", f.index())));
        }
        self.checked_basis(b)?;
        Ok(self.act_edge_inner(f, b))
    }

    fn act_edge_inner(&self, f: Edge, b: &PairSeq) -> BVector {
        let g = &*self.graph;
        let mut out = self.act_e_inner(g.tail(f), 1, b);
        let lower = self.act_e_inner(g.head(f), 1, b);
        out.add_scaled(&lower, &-Scalar::one());
        out
    }

    fn act_edge_on(&self, f: Edge, x: &BVector) -> BVector {
        let mut out = BVector::zero(&self.graph);
        for (b, c) in &x.terms {
            out.add_scaled(&self.act_edge_inner(f, b), c);
        }
        out
    }

    fn act_eword_on(&self, w: &EWord, mut x: BVector) -> BVector {
        for &(v, m) in w.factors().iter().rev() {
            if x.is_zero() {
                break;
            }
            let mut next = BVector::zero(&self.graph);
            for (b, c) in &x.terms {
                next.add_scaled(&self.act_e_inner(v, m, b), c);
            }
            x = next;
        }
        x
    }

    fn act_word_on(&self, w: &Word, mut x: BVector) -> BVector {
        for &f in w.edges().iter().rev() {
            if x.is_zero() {
                break;
            }
            x = self.act_edge_on(f, &x);
        }
        x
    }

    /// `p · x` for `p ∈ T(E)`; words act edge by edge from the right.
    pub fn act_poly(&self, p: &NcPoly, x: &BVector) -> Result<BVector> {
        self.check_tag(p.tag())?;
        self.check_tag(x.tag())?;
        for b in x.terms.keys() {
            self.checked_basis(b)?;
        }
        let mut out = BVector::zero(&self.graph);
        for (w, c) in p.terms() {
            out.add_scaled(&self.act_word_on(w, x.clone()), c);
        }
        Ok(out)
    }

    /// `e(b₁,m₁)⋯e(b_k,m_k) · x`, acting factor by factor from the right.
    pub fn act_eword(&self, w: &EWord, x: &BVector) -> Result<BVector> {
        self.check_tag(x.tag())?;
        for &(v, m) in w.factors() {
            self.graph.check_mult(v, m)?;
        }
        for b in x.terms.keys() {
            self.checked_basis(b)?;
        }
        Ok(self.act_eword_on(w, x.clone()))
    }

    /// A combination of symbolic products acting on `x`.
    pub fn act_combination(&self, terms: &[(Scalar, EWord)], x: &BVector) -> Result<BVector> {
        let mut out = BVector::zero(&self.graph);
        for (c, w) in terms {
            out.add_scaled(&self.act_eword(w, x)?, c);
        }
        Ok(out)
    }

    /// Coordinates of the class of `p` in the basis: `p · (1·∅)`.
    pub fn normal_form(&self, p: &NcPoly) -> Result<BVector> {
        self.act_poly(p, &BVector::unit(&self.graph))
    }

    /// `ẽ(b)` expanded into `T(E)`.
    pub fn eword_to_poly(&self, w: &EWord) -> Result<NcPoly> {
        crate::ncpoly::eword_to_poly(&self.graph, w)
    }

    /// A representative in `T(E)` of a module vector: `Σ c_b ẽ(b)`.
    pub fn lift(&self, x: &BVector) -> Result<NcPoly> {
        self.check_tag(x.tag())?;
        let mut out = NcPoly::zero(&self.graph);
        for (b, c) in &x.terms {
            out = out.try_add(&self.eword_to_poly(&b.to_eword())?.scale(c))?;
        }
        Ok(out)
    }

    /// `ê(v,k) = e_{v⁽⁰⁾} e_{v⁽¹⁾} ⋯ e_{v⁽ᵏ⁻¹⁾}`, the chosen edges along the
    /// first `k` steps of `π_v`.
    pub fn hat_word(&self, v: Vertex, k: u32) -> Result<Word> {
        hat_word(&self.graph, v, k)
    }

    pub fn hat_word_of_seq(&self, b: &PairSeq) -> Result<Word> {
        hat_word_of_seq(&self.graph, b)
    }

    /// Drops every memoized result.
    pub fn clear_cache(&self) {
        self.act_memo.lock().unwrap().clear();
        self.esum_memo.lock().unwrap().clear();
    }
}

pub fn hat_word(g: &LayeredGraph, v: Vertex, k: u32) -> Result<Word> {
    if k == 0 || k > g.level(v) {
        return Err(Error::BadMultiplicity {
            vertex: g.vertex_id(v).to_string(),
            mult: k,
            level: g.level(v),
        });
    }
    let path = g.canonical_path(v).expect("positive level");
    Ok(Word::new(g, path.edges()[..k as usize].to_vec()))
}

pub fn hat_word_of_seq(g: &LayeredGraph, b: &PairSeq) -> Result<Word> {
    let mut out = Word::empty();
    for p in b.pairs() {
        out = out.concat(&hat_word(g, p.vertex, p.mult)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::GAMMA2;
    use crate::ncpoly::{e_of_vertex, scalar};

    fn setup() -> Algebra {
        Algebra::new(LayeredGraph::parse(GAMMA2).unwrap())
    }

    fn seq(a: &Algebra, pairs: &[(&str, u32)]) -> PairSeq {
        PairSeq::from_ids(a.graph(), pairs).unwrap()
    }

    fn vec_of(a: &Algebra, terms: &[(i64, &[(&str, u32)])]) -> BVector {
        BVector::from_terms(
            a.graph(),
            terms.iter().map(|(c, pairs)| (seq(a, pairs), scalar(*c))),
        )
    }

    fn word(a: &Algebra, ids: &[&str]) -> NcPoly {
        NcPoly::word(a.graph(), Word::from_ids(a.graph(), ids).unwrap())
    }

    #[test]
    fn pair_sequences() {
        let a = setup();
        let g = a.graph();
        let b = seq(&a, &[("{12}", 2), ("{1}", 1)]);
        assert_eq!(b.level(), 4);
        assert!(!seq(&a, &[("{12}", 1), ("{1}", 1)]).is_basis(g));
        assert!(seq(&a, &[("{1}", 1), ("{12}", 1)]).is_basis(g));
        assert!(matches!(
            PairSeq::from_ids(g, &[("{1}", 2)]),
            Err(Error::BadMultiplicity { .. })
        ));
        assert!(matches!(
            PairSeq::from_ids(g, &[("{1}", 0)]),
            Err(Error::BadMultiplicity { .. })
        ));
        assert_eq!(b.suffix(g, 1), seq(&a, &[("{1}", 1)]));
        assert_eq!(b.suffix(g, 2), PairSeq::empty());
        assert_eq!(b.render(g), "({12}:2, {1}:1)");
    }

    #[test]
    fn z_index_examples() {
        let a = setup();
        let g = a.graph();
        let top = g.vertex("{12}").unwrap();
        let b = seq(&a, &[("{1}", 1)]);
        assert_eq!(a.z_index(top, 1, &b).unwrap(), 2);
        assert_eq!(a.z_index(top, 2, &b).unwrap(), 1);
        assert_eq!(a.z_index(top, 1, &PairSeq::empty()).unwrap(), 1);
        assert!(a.z_index(top, 3, &b).is_err());
    }

    #[test]
    fn act_e_examples() {
        let a = setup();
        let g = a.graph();
        let top = g.vertex("{12}").unwrap();
        let one = g.vertex("{1}").unwrap();
        let b = seq(&a, &[("{1}", 1)]);
        assert_eq!(
            a.act_e(top, 1, &b).unwrap(),
            vec_of(&a, &[(1, &[("{12}", 2)]), (1, &[("{1}", 1), ("{1}", 1)])])
        );
        assert_eq!(a.act_e(top, 0, &b).unwrap(), BVector::basis(g, b.clone()));
        assert_eq!(
            a.act_e(one, 1, &PairSeq::empty()).unwrap(),
            vec_of(&a, &[(1, &[("{1}", 1)])])
        );
        assert!(a.act_e(one, 2, &b).unwrap().is_zero());
        let not_basis = seq(&a, &[("{12}", 1), ("{1}", 1)]);
        assert!(matches!(a.act_e(top, 1, &not_basis), Err(Error::NotBasis { position: 1 })));
    }

    #[test]
    fn act_edge_examples() {
        let a = setup();
        let g = a.graph();
        let e = |id| g.edge(id).unwrap();
        assert_eq!(
            a.act_edge(e("a1"), &PairSeq::empty()).unwrap(),
            vec_of(&a, &[(1, &[("{1}", 1)])])
        );
        assert_eq!(
            a.act_edge(e("b2"), &PairSeq::empty()).unwrap(),
            vec_of(&a, &[(1, &[("{12}", 1)]), (-1, &[("{2}", 1)])])
        );
        assert_eq!(
            a.act_edge(e("b1"), &seq(&a, &[("{1}", 1)])).unwrap(),
            vec_of(&a, &[(1, &[("{12}", 2)])])
        );
    }

    #[test]
    fn act_poly_examples() {
        let a = setup();
        let g = a.graph();
        let unit = BVector::unit(g);
        assert_eq!(
            a.act_poly(&word(&a, &["a1", "a1"]), &unit).unwrap(),
            vec_of(&a, &[(1, &[("{1}", 1), ("{1}", 1)])])
        );
        let x = vec_of(&a, &[(3, &[("{2}", 1)]), (-1, &[])]);
        assert!(a.act_poly(&NcPoly::zero(g), &x).unwrap().is_zero());
        assert_eq!(a.act_poly(&NcPoly::one(g), &x).unwrap(), x);
    }

    #[test]
    fn normal_form_examples() {
        let a = setup();
        let g = a.graph();
        let rel = &(&(&word(&a, &["b1"]) + &word(&a, &["a1"])) - &word(&a, &["b2"])) - &word(&a, &["a2"]);
        assert!(a.normal_form(&rel).unwrap().is_zero());
        assert_eq!(
            a.normal_form(&word(&a, &["b1", "a1"])).unwrap(),
            vec_of(&a, &[(1, &[("{12}", 2)])])
        );
        assert_eq!(a.normal_form(&NcPoly::one(g)).unwrap(), BVector::unit(g));
        let top = g.vertex("{12}").unwrap();
        assert_eq!(
            a.normal_form(&e_of_vertex(g, top, 2)).unwrap(),
            vec_of(&a, &[(1, &[("{12}", 2)])])
        );
    }

    #[test]
    fn mixed_graph_inputs() {
        let a = setup();
        let other = LayeredGraph::parse("vertex * 0\nvertex x 1\nedge e x *\n").unwrap();
        assert_eq!(a.normal_form(&NcPoly::one(&other)), Err(Error::MixedGraph));
        assert_eq!(
            a.act_poly(&NcPoly::one(a.graph()), &BVector::unit(&other)),
            Err(Error::MixedGraph)
        );
    }

    #[test]
    fn hat_words() {
        let a = setup();
        let g = a.graph();
        let top = g.vertex("{12}").unwrap();
        assert_eq!(a.hat_word(top, 2).unwrap().render(g), "b1·a1");
        assert_eq!(a.hat_word(top, 1).unwrap().render(g), "b1");
        assert!(a.hat_word(top, 3).is_err());
        let b = seq(&a, &[("{1}", 1), ("{1}", 1)]);
        assert_eq!(a.hat_word_of_seq(&b).unwrap().render(g), "a1·a1");
    }

    #[test]
    fn eword_and_lift() {
        let a = setup();
        let g = a.graph();
        let b = seq(&a, &[("{12}", 1), ("{1}", 1)]);
        let p = a.eword_to_poly(&b.to_eword()).unwrap();
        assert_eq!(p, (&word(&a, &["b1", "a1"]) + &word(&a, &["a1", "a1"])));
        let x = vec_of(&a, &[(2, &[("{2}", 1)]), (1, &[])]);
        assert_eq!(a.lift(&x).unwrap().render(g), "1 + 2·a2");
    }

    #[test]
    fn rendering() {
        let a = setup();
        let g = a.graph();
        let x = vec_of(&a, &[(1, &[("{12}", 2)]), (-1, &[("{1}", 1), ("{1}", 1)]), (2, &[])]);
        assert_eq!(x.render(g), "2·[()] - 1·[({1}:1, {1}:1)] + 1·[({12}:2)]");
        assert_eq!(BVector::zero(g).render(g), "0");
    }
}
