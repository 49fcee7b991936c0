use std::collections::BTreeSet;

use proptest::prelude::*;

use pathalg::verify::{word_counts, TruncatedIdeal};
use pathalg::{
    boolean_lattice, brute_force_dims, chain, e_of_path, e_of_vertex, enumerate_basis, h_sum,
    hilbert_series, partition_lattice, path_poly, reduced_relations, scalar, subspace_lattice,
    verify_basis, Algebra, BVector, Edge, GeneratorChoice, LayeredGraph, Limits, NcPoly, PairSeq,
    Path, Vertex, Word,
};

const GAMMA2: &str = "\
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

fn graphs() -> Vec<LayeredGraph> {
    vec![
        gamma2(),
        boolean_lattice(3).unwrap(),
        chain(4).unwrap(),
        partition_lattice(3).unwrap(),
        subspace_lattice(2, 2).unwrap(),
    ]
}

fn every_path(g: &LayeredGraph) -> Vec<Path> {
    let mut out = Vec::new();
    for v in g.vertices() {
        for w in g.vertices() {
            out.extend(g.all_paths(v, w));
        }
    }
    out
}

/// Sum of the words picked out by every `k`-element bitmask of the path.
fn e_by_bitmask(g: &LayeredGraph, path: &Path, k: u32) -> NcPoly {
    let edges = path.edges();
    let mut terms = Vec::new();
    for mask in 0u32..(1 << edges.len()) {
        if mask.count_ones() == k {
            let picked: Vec<Edge> = (0..edges.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| edges[i])
                .collect();
            terms.push((Word::new(g, picked), scalar(1)));
        }
    }
    NcPoly::from_terms(g, terms)
}

#[test]
fn coefficients_agree_across_three_routes() {
    for g in graphs() {
        for p in every_path(&g) {
            let poly = path_poly(&g, Some(&p));
            for k in 0..=p.len() as u32 + 1 {
                let direct = e_of_path(&g, Some(&p), k);
                let sign = if k % 2 == 0 { scalar(1) } else { scalar(-1) };
                assert_eq!(direct, poly.coeff(k as usize).scale(&sign));
                assert_eq!(direct, e_by_bitmask(&g, &p, k));
            }
        }
    }
}

#[test]
fn path_polynomials_are_multiplicative() {
    for g in graphs() {
        let paths = every_path(&g);
        for p in &paths {
            for q in paths.iter().filter(|q| q.tail() == p.head()) {
                let joined = p.concat(q).unwrap();
                let product = path_poly(&g, Some(p)).try_mul(&path_poly(&g, Some(q))).unwrap();
                for k in 0..=joined.len() {
                    assert_eq!(path_poly(&g, Some(&joined)).coeff(k), product.coeff(k));
                }
            }
        }
    }
}

#[test]
fn vertex_coefficient_levels() {
    for g in graphs() {
        for v in g.vertices() {
            for k in 1..=g.level(v) {
                let expected = k * g.level(v) - k * (k - 1) / 2;
                assert_eq!(e_of_vertex(&g, v, k).level().finite(), Some(expected));
            }
            assert!(e_of_vertex(&g, v, g.level(v) + 1).is_zero());
        }
    }
}

/// Basis sequences by exhaustive enumeration of pair sequences, filtered by
/// a composability test written directly from the definition.
fn basis_oracle(g: &LayeredGraph, max: u32) -> BTreeSet<Vec<(Vertex, u32)>> {
    let pairs: Vec<(Vertex, u32)> = g
        .vertices()
        .flat_map(|v| (1..=g.level(v)).map(move |m| (v, m)))
        .collect();
    let level = |&(v, m): &(Vertex, u32)| m * g.level(v) - m * (m - 1) / 2;
    let mut out = BTreeSet::new();
    let mut frontier: Vec<(Vec<(Vertex, u32)>, u32)> = vec![(Vec::new(), 0)];
    while let Some((seq, lev)) = frontier.pop() {
        let ok = seq.windows(2).all(|w| {
            let ((v, k), (u, _)) = (w[0], w[1]);
            !(g.reachable(v, u) && g.level(u) + k == g.level(v))
        });
        if !ok {
            continue;
        }
        out.insert(seq.clone());
        for p in &pairs {
            let l = level(p);
            if lev + l <= max {
                let mut next = seq.clone();
                next.push(*p);
                frontier.push((next, lev + l));
            }
        }
    }
    out
}

#[test]
fn basis_enumeration_matches_exhaustive_oracle() {
    for g in graphs() {
        let fast: BTreeSet<Vec<(Vertex, u32)>> = enumerate_basis(&g, 4)
            .iter()
            .map(|b| b.pairs().iter().map(|p| (p.vertex, p.mult)).collect())
            .collect();
        assert_eq!(fast, basis_oracle(&g, 4));
    }
}

#[test]
fn square_counts() {
    let g = gamma2();
    assert_eq!(hilbert_series(&g, 3), vec![1, 2, 5, 11]);
    assert_eq!(word_counts(&g, 3), vec![1, 2, 6, 16]);
    let ideal = TruncatedIdeal::build(&g, 3, &reduced_relations(&g), &Limits::default()).unwrap();
    assert_eq!((ideal.dim_t(), ideal.rank(), ideal.quotient_dim()), (25, 6, 19));
}

#[test]
fn counts_do_not_depend_on_chosen_edges() {
    for g in graphs() {
        let alt = g.with_alternate_chosen();
        let a = brute_force_dims(&g, 3, GeneratorChoice::Reduced).unwrap();
        let b = brute_force_dims(&alt, 3, GeneratorChoice::Reduced).unwrap();
        assert_eq!(a.cumulative_dims(), b.cumulative_dims());
        assert!(a.passed() && b.passed());
    }
}

#[test]
fn h_sums_vanish_beyond_the_level_gap() {
    for g in graphs() {
        let algebra = Algebra::new(g.clone());
        for v in g.vertices() {
            for u in g.vertices().filter(|&u| g.reachable(v, u)) {
                let gap = g.level(v) - g.level(u);
                for j in gap + 1..=g.level(v) + 1 {
                    let h = h_sum(&g, v, u, j).unwrap();
                    assert!(algebra.normal_form(&h).unwrap().is_zero());
                }
                assert_eq!(h_sum(&g, v, u, 0).unwrap(), NcPoly::one(&g));
            }
        }
    }
}

#[test]
fn larger_boolean_lattice_verifies() {
    let report = verify_basis(&boolean_lattice(4).unwrap(), 3).unwrap();
    assert!(report.passed(), "{}", report.render_table());
}

fn word_strategy(edge_count: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..edge_count, 0..4)
}

fn build_poly(g: &LayeredGraph, words: &[(Vec<usize>, i64)]) -> NcPoly {
    let edges: Vec<Edge> = g.edges().collect();
    NcPoly::from_terms(
        g,
        words
            .iter()
            .map(|(w, c)| (Word::new(g, w.iter().map(|&i| edges[i]).collect()), scalar(*c))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_linear_and_level_bounded(
        which in 0usize..5,
        p in prop::collection::vec((word_strategy(6), -3i64..=3), 1..4),
        q in prop::collection::vec((word_strategy(6), -3i64..=3), 1..4),
    ) {
        let g = &graphs()[which];
        let n = g.edge_count();
        let clamp = |v: &Vec<(Vec<usize>, i64)>| -> Vec<(Vec<usize>, i64)> {
            v.iter().map(|(w, c)| (w.iter().map(|i| i % n).collect(), *c)).collect()
        };
        let (p, q) = (build_poly(g, &clamp(&p)), build_poly(g, &clamp(&q)));
        let algebra = Algebra::new(g.clone());
        let sum = algebra.normal_form(&p.try_add(&q).unwrap()).unwrap();
        let parts = algebra.normal_form(&p).unwrap().try_add(&algebra.normal_form(&q).unwrap()).unwrap();
        prop_assert_eq!(&sum, &parts);
        if let Some(level) = algebra.normal_form(&p).unwrap().level() {
            prop_assert!(Some(level) <= p.level().finite());
        }
    }

    #[test]
    fn lifted_normal_forms_are_fixed(which in 0usize..5, pick in any::<prop::sample::Index>()) {
        let g = &graphs()[which];
        let basis = enumerate_basis(g, 4);
        let b: &PairSeq = pick.get(&basis);
        let algebra = Algebra::new(g.clone());
        let x = BVector::basis(g, b.clone());
        let lifted = algebra.lift(&x).unwrap();
        prop_assert_eq!(algebra.normal_form(&lifted).unwrap(), x);
    }
}
