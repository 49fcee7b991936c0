//! Brute-force check of the basis theorem at bounded filtration degree.
//!
//! For each degree `d` the span of all products `u·g·w` (with `g` a
//! generator of `R` and `level(u) + |g| + level(w) ≤ d`) is computed inside
//! `T(E)_d` by exact elimination. Its codimension is compared with the number
//! of basis sequences of level at most `d`, and every word of level at most
//! `d` is checked to be congruent to the lift of its normal form.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{LayeredGraph, Vertex};
use crate::linalg::{Echelon, SparseRow};
use crate::ncpoly::{FiltrationLevel, NcPoly, Word};
use crate::normal_form::{pair_level, Algebra, PairSeq};
use crate::relations::{path_pair_relations, reduced_relations, RelationGen};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorChoice {
    /// `S₁ ∪ S₂`
    Reduced,
    /// all `e(π₁,k) − e(π₂,k)`
    PathPairs,
}

impl GeneratorChoice {
    pub fn generators(self, g: &LayeredGraph) -> Vec<RelationGen> {
        match self {
            GeneratorChoice::Reduced => reduced_relations(g),
            GeneratorChoice::PathPairs => path_pair_relations(g, false),
        }
    }
}

impl fmt::Display for GeneratorChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorChoice::Reduced => "reduced",
            GeneratorChoice::PathPairs => "path-pairs",
        })
    }
}

/// Work limits for the brute-force oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Words of level at most `d`, i.e. matrix columns.
    pub max_words: usize,
    /// Generator products, i.e. matrix rows.
    pub max_rows: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_words: 200_000,
            max_rows: 2_000_000,
        }
    }
}

/// Number of words of each exact level `0..=d`.
pub fn word_counts(g: &LayeredGraph, d: u32) -> Vec<u128> {
    let mut edges_at = vec![0u128; d as usize + 1];
    for e in g.edges() {
        let l = g.edge_level(e) as usize;
        if l <= d as usize {
            edges_at[l] += 1;
        }
    }
    let mut counts = vec![0u128; d as usize + 1];
    counts[0] = 1;
    for level in 1..=d as usize {
        counts[level] = (1..=level)
            .map(|l| edges_at[l].saturating_mul(counts[level - l]))
            .fold(0u128, |a, b| a.saturating_add(b));
    }
    counts
}

/// All words of level at most `d`, in graded-lex order.
pub fn words_up_to(g: &LayeredGraph, d: u32) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for e in g.edges() {
                if w.level() + g.edge_level(e) <= d {
                    next.push(w.concat(&Word::new(g, vec![e])));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out
}

/// All basis sequences of level at most `max_level`, in graded order.
pub fn enumerate_basis(g: &LayeredGraph, max_level: u32) -> Vec<PairSeq> {
    let mut pairs: Vec<(Vertex, u32, u32)> = Vec::new();
    for v in g.vertices() {
        for m in 1..=g.level(v) {
            let l = pair_level(g.level(v), m);
            if l <= max_level {
                pairs.push((v, m, l));
            }
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Vertex, u32)> = Vec::new();
    extend_basis(g, &pairs, max_level, 0, &mut stack, &mut out);
    out.sort();
    out
}

fn extend_basis(
    g: &LayeredGraph,
    pairs: &[(Vertex, u32, u32)],
    max_level: u32,
    level: u32,
    stack: &mut Vec<(Vertex, u32)>,
    out: &mut Vec<PairSeq>,
) {
    out.push(PairSeq::new(g, stack.clone()).expect("multiplicities in range"));
    for &(v, m, l) in pairs {
        if level + l > max_level {
            continue;
        }
        if let Some(&(pv, pm)) = stack.last() {
            if g.composable_unchecked(pv, pm, v) {
                continue;
            }
        }
        stack.push((v, m));
        extend_basis(g, pairs, max_level, level + l, stack, out);
        stack.pop();
    }
}

/// Number of basis sequences of each exact level `0..=max_level`; these are
/// the graded dimensions of `gr A(Γ)`.
pub fn hilbert_series(g: &LayeredGraph, max_level: u32) -> Vec<usize> {
    let mut counts = vec![0; max_level as usize + 1];
    for b in enumerate_basis(g, max_level) {
        counts[b.level() as usize] += 1;
    }
    counts
}

/// The span of generator products inside `T(E)_d`.
pub struct TruncatedIdeal {
    degree: u32,
    columns: HashMap<Word, usize>,
    echelon: Echelon,
}

impl TruncatedIdeal {
    pub fn build(
        g: &LayeredGraph,
        degree: u32,
        generators: &[RelationGen],
        limits: &Limits,
    ) -> Result<TruncatedIdeal> {
        let counts = word_counts(g, degree);
        let total: u128 = counts.iter().sum();
        if total > limits.max_words as u128 {
            return Err(Error::BoundTooLarge {
                degree,
                what: "word",
                count: total.min(usize::MAX as u128) as usize,
                limit: limits.max_words,
            });
        }
        // pairs_within[m] = #{(u, w) : level(u) + level(w) ≤ m}
        let pairs_within: Vec<u128> = (0..=degree as usize)
            .map(|m| {
                (0..=m)
                    .map(|a| counts[a] * (0..=m - a).map(|b| counts[b]).sum::<u128>())
                    .sum()
            })
            .collect();
        let mut rows_needed = 0u128;
        for gen in generators {
            if let FiltrationLevel::Finite(l) = gen.poly.level() {
                if l <= degree {
                    rows_needed += pairs_within[(degree - l) as usize];
                }
            }
        }
        if rows_needed > limits.max_rows as u128 {
            return Err(Error::BoundTooLarge {
                degree,
                what: "row",
                count: rows_needed.min(usize::MAX as u128) as usize,
                limit: limits.max_rows,
            });
        }

        let words = words_up_to(g, degree);
        let columns: HashMap<Word, usize> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut rows = Vec::new();
        for gen in generators {
            let FiltrationLevel::Finite(l) = gen.poly.level() else {
                continue;
            };
            if l > degree {
                continue;
            }
            let room = degree - l;
            let integral = integer_terms(&gen.poly);
            for u in words.iter().take_while(|u| u.level() <= room) {
                for w in words.iter().take_while(|w| u.level() + w.level() <= room) {
                    let mut row: SparseRow = integral
                        .iter()
                        .map(|(word, c)| (columns[&u.concat(word).concat(w)], c.clone()))
                        .collect();
                    row.sort_by_key(|&(c, _)| c);
                    rows.push(row);
                }
            }
        }
        Ok(TruncatedIdeal {
            degree,
            columns,
            echelon: Echelon::from_rows(rows),
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `dim T(E)_d`
    pub fn dim_t(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.dim_t() - self.rank()
    }

    /// Whether `p ∈ T(E)_d` lies in the span. Polynomials with words above
    /// degree `d` never do.
    pub fn contains(&self, p: &NcPoly) -> bool {
        let mut row = SparseRow::new();
        for (w, c) in integer_terms(p) {
            match self.columns.get(&w) {
                Some(&col) => row.push((col, c)),
                None => return false,
            }
        }
        row.sort_by_key(|&(c, _)| c);
        self.echelon.contains(&row)
    }
}

/// Clears denominators.
fn integer_terms(p: &NcPoly) -> Vec<(Word, BigInt)> {
    let lcm = p
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    p.terms()
        .map(|(w, c)| (w.clone(), (c * &lcm).to_integer()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: u32,
    /// `dim T(E)_d`
    pub dim_t: usize,
    /// rank of the truncated relation span
    pub dim_r: usize,
    /// `dim_t − dim_r`
    pub dim_a: usize,
    /// basis sequences with level ≤ d
    pub basis_count: usize,
    /// basis sequences with level = d
    pub graded_count: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Quotient dimension differs from the basis count.
    Dimension {
        check: String,
        degree: u32,
        dim_a: usize,
        basis_count: usize,
    },
    /// The two generating sets span different subspaces.
    RankDisagreement {
        degree: u32,
        reduced: usize,
        path_pairs: usize,
    },
    /// `word − lift(normal_form(word))` is not in the truncated span.
    Spanning { check: String, degree: u32, word: String },
    /// `|normal_form(word)| > level(word)`
    LevelContract { check: String, word: String },
}

impl Failure {
    pub fn degree(&self) -> Option<u32> {
        match self {
            Failure::Dimension { degree, .. }
            | Failure::RankDisagreement { degree, .. }
            | Failure::Spanning { degree, .. } => Some(*degree),
            Failure::LevelContract { .. } => None,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Dimension {
                check,
                degree,
                dim_a,
                basis_count,
            } => write!(
                f,
                "{check}: degree {degree}: quotient dimension {dim_a} but {basis_count} basis elements"
            ),
            Failure::RankDisagreement {
                degree,
                reduced,
                path_pairs,
            } => write!(
                f,
                "degree {degree}: reduced generators span rank {reduced}, path pairs span rank {path_pairs}"
            ),
            Failure::Spanning { check, degree, word } => write!(
                f,
                "{check}: degree {degree}: {word} is not congruent to the lift of its normal form"
            ),
            Failure::LevelContract { check, word } => {
                write!(f, "{check}: normal form of {word} has larger level than the word")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimReport {
    pub rows: Vec<DegreeRow>,
    pub failures: Vec<Failure>,
}

impl DimReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The failure at the lowest degree, if any.
    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.iter().min_by_key(|f| f.degree().unwrap_or(u32::MAX))
    }

    pub fn cumulative_dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.dim_a).collect()
    }

    pub fn graded_counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.graded_count).collect()
    }

    fn mark(&mut self) {
        let failing: Vec<Option<u32>> = self.failures.iter().map(Failure::degree).collect();
        let global = failing.iter().any(Option::is_none);
        for row in &mut self.rows {
            row.pass = !global && !failing.contains(&Some(row.degree));
        }
    }

    /// Aligned table followed by a `pass` / `fail` verdict line.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>6} {:>8} {:>8} {:>8} {:>10} {:>6}",
            "degree", "dimT", "dimR", "dimA", "basisCount", "status"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>6} {:>8} {:>8} {:>8} {:>10} {:>6}",
                r.degree,
                r.dim_t,
                r.dim_r,
                r.dim_a,
                r.basis_count,
                if r.pass { "pass" } else { "fail" }
            );
        }
        for f in &self.failures {
            let _ = writeln!(out, "# {f}");
        }
        out.push_str(if self.passed() { "pass\n" } else { "fail\n" });
        out
    }

    /// `degree<TAB>dimT<TAB>dimR<TAB>dimA<TAB>basisCount<TAB>status`
    pub fn render_tsv(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.degree,
                r.dim_t,
                r.dim_r,
                r.dim_a,
                r.basis_count,
                if r.pass { "pass" } else { "fail" }
            );
        }
        out
    }
}

fn basis_counts(g: &LayeredGraph, max_level: u32) -> (Vec<usize>, Vec<usize>) {
    let graded = hilbert_series(g, max_level);
    let cumulative = graded
        .iter()
        .scan(0, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    (graded, cumulative)
}

fn dimension_rows(
    g: &LayeredGraph,
    max_level: u32,
    generators: &[RelationGen],
    limits: &Limits,
) -> Result<Vec<(TruncatedIdeal, usize)>> {
    (0..=max_level)
        .map(|d| {
            let ideal = TruncatedIdeal::build(g, d, generators, limits)?;
            let rank = ideal.rank();
            Ok((ideal, rank))
        })
        .collect()
}

/// Quotient dimensions by brute force for one generating set.
pub fn brute_force_dims(g: &LayeredGraph, max_level: u32, choice: GeneratorChoice) -> Result<DimReport> {
    brute_force_dims_with(g, max_level, &choice.generators(g), &Limits::default(), &choice.to_string())
}

pub fn brute_force_dims_with(
    g: &LayeredGraph,
    max_level: u32,
    generators: &[RelationGen],
    limits: &Limits,
    label: &str,
) -> Result<DimReport> {
    let (graded, cumulative) = basis_counts(g, max_level);
    let mut report = DimReport {
        rows: Vec::new(),
        failures: Vec::new(),
    };
    for (d, (ideal, rank)) in dimension_rows(g, max_level, generators, limits)?
        .into_iter()
        .enumerate()
    {
        let row = DegreeRow {
            degree: d as u32,
            dim_t: ideal.dim_t(),
            dim_r: rank,
            dim_a: ideal.quotient_dim(),
            basis_count: cumulative[d],
            graded_count: graded[d],
            pass: true,
        };
        if row.dim_a != row.basis_count {
            report.failures.push(Failure::Dimension {
                check: label.to_string(),
                degree: row.degree,
                dim_a: row.dim_a,
                basis_count: row.basis_count,
            });
        }
        report.rows.push(row);
    }
    report.mark();
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub limits: Limits,
    /// Repeat the reduced-generator checks with the alternate chosen-edge map.
    pub alternate_chosen: bool,
    /// Replaces `S₁ ∪ S₂` for the primary chosen map (fault injection).
    pub reduced_override: Option<Vec<RelationGen>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            limits: Limits::default(),
            alternate_chosen: true,
            reduced_override: None,
        }
    }
}

/// Checks the basis theorem up to `max_level` with both generating sets and
/// two chosen-edge maps.
pub fn verify_basis(g: &LayeredGraph, max_level: u32) -> Result<DimReport> {
    verify_basis_with(g, max_level, &VerifyOptions::default())
}

pub fn verify_basis_with(g: &LayeredGraph, max_level: u32, opts: &VerifyOptions) -> Result<DimReport> {
    let reduced = opts
        .reduced_override
        .clone()
        .unwrap_or_else(|| reduced_relations(g));
    let mut checks: Vec<(String, LayeredGraph, Vec<RelationGen>)> = vec![
        ("reduced".into(), g.clone(), reduced),
        ("path-pairs".into(), g.clone(), path_pair_relations(g, false)),
    ];
    if opts.alternate_chosen {
        let alt = g.with_alternate_chosen();
        let gens = reduced_relations(&alt);
        checks.push(("reduced/alternate-chosen".into(), alt, gens));
    }

    let (graded, cumulative) = basis_counts(g, max_level);
    let mut report = DimReport {
        rows: Vec::new(),
        failures: Vec::new(),
    };
    let mut ranks: Vec<Vec<usize>> = Vec::new();
    for (i, (label, graph, gens)) in checks.iter().enumerate() {
        let levels = dimension_rows(graph, max_level, gens, &opts.limits)?;
        ranks.push(levels.iter().map(|(_, r)| *r).collect());
        for (d, (ideal, rank)) in levels.iter().enumerate() {
            if i == 0 {
                report.rows.push(DegreeRow {
                    degree: d as u32,
                    dim_t: ideal.dim_t(),
                    dim_r: *rank,
                    dim_a: ideal.quotient_dim(),
                    basis_count: cumulative[d],
                    graded_count: graded[d],
                    pass: true,
                });
            }
            if ideal.quotient_dim() != cumulative[d] {
                report.failures.push(Failure::Dimension {
                    check: label.clone(),
                    degree: d as u32,
                    dim_a: ideal.quotient_dim(),
                    basis_count: cumulative[d],
                });
            }
        }
        let top = &levels.last().expect("degree 0 is always present").0;
        if let Some(failure) = spanning_check(graph, top, label)? {
            report.failures.push(failure);
        }
    }
    for d in 0..=max_level as usize {
        if ranks[0][d] != ranks[1][d] {
            report.failures.push(Failure::RankDisagreement {
                degree: d as u32,
                reduced: ranks[0][d],
                path_pairs: ranks[1][d],
            });
        }
    }
    report.mark();
    Ok(report)
}

/// Every word of level ≤ d minus the lift of its normal form must lie in the
/// truncated span.
fn spanning_check(g: &LayeredGraph, ideal: &TruncatedIdeal, label: &str) -> Result<Option<Failure>> {
    let algebra = Algebra::new(g.clone());
    for w in words_up_to(g, ideal.degree()) {
        let p = NcPoly::word(g, w.clone());
        let nf = algebra.normal_form(&p)?;
        if nf.level().is_some_and(|l| l > w.level()) {
            return Ok(Some(Failure::LevelContract {
                check: label.to_string(),
                word: w.render(g),
            }));
        }
        let residual = p.try_sub(&algebra.lift(&nf)?)?;
        if !ideal.contains(&residual) {
            return Ok(Some(Failure::Spanning {
                check: label.to_string(),
                degree: w.level(),
                word: w.render(g),
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::GAMMA2;

    fn gamma2() -> LayeredGraph {
        LayeredGraph::parse(GAMMA2).unwrap()
    }

    #[test]
    fn word_counting() {
        let g = gamma2();
        assert_eq!(word_counts(&g, 3), vec![1, 2, 6, 16]);
        let words = words_up_to(&g, 3);
        assert_eq!(words.len(), 25);
        assert!(words.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn truncated_ideal_on_the_square() {
        let g = gamma2();
        let gens = reduced_relations(&g);
        let two = TruncatedIdeal::build(&g, 2, &gens, &Limits::default()).unwrap();
        assert_eq!((two.dim_t(), two.rank(), two.quotient_dim()), (9, 1, 8));
        let one = TruncatedIdeal::build(&g, 1, &gens, &Limits::default()).unwrap();
        assert_eq!((one.dim_t(), one.rank(), one.quotient_dim()), (3, 0, 3));
    }

    #[test]
    fn limits_are_enforced() {
        let g = gamma2();
        let tight = Limits {
            max_words: 10,
            max_rows: 10,
        };
        assert!(matches!(
            TruncatedIdeal::build(&g, 3, &[], &tight),
            Err(Error::BoundTooLarge { what: "word", .. })
        ));
        let gens = path_pair_relations(&g, false);
        let rows_only = Limits {
            max_words: 1000,
            max_rows: 3,
        };
        assert!(matches!(
            TruncatedIdeal::build(&g, 3, &gens, &rows_only),
            Err(Error::BoundTooLarge { what: "row", .. })
        ));
    }

    #[test]
    fn report_rendering() {
        let g = gamma2();
        let report = brute_force_dims(&g, 1, GeneratorChoice::Reduced).unwrap();
        assert_eq!(report.render_tsv(), "0\t1\t0\t1\t1\tpass\n1\t3\t0\t3\t3\tpass\n");
        assert!(report.render_table().ends_with("pass\n"));
    }
}
