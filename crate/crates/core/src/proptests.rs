use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::canon::canonical_form;
use crate::dihedral::{format_element, parse_element, GroupCtx};
use crate::formats::{parse_graph6, to_graph6};
use crate::graph::Graph;
use crate::hyperop::{HvGroupCtx, Hyperoperation};
use crate::linalg::{char_poly, determinant, nullity, rank, IntMatrix};
use crate::nssd::{is_nssd, is_nssd_fast, is_nssd_spectral};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        g.add_edge(i, j);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0..=5usize).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-5i64..=5, n), n))
}

fn leibniz(m: &[Vec<i64>]) -> BigInt {
    use itertools::Itertools;
    let n = m.len();
    (0..n)
        .permutations(n)
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let prod: i64 = (0..n).map(|i| m[i][p[i]]).product();
            BigInt::from(if inversions % 2 == 0 { prod } else { -prod })
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labeling(g in graph(12), seed in any::<u64>()) {
        let want = canonical_form(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.order()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            prop_assert_eq!(&canonical_form(&g.permuted(&perm)).unwrap(), &want);
        }
    }

    #[test]
    fn canonical_form_round_trips(g in graph(12)) {
        let form = canonical_form(&g).unwrap();
        prop_assert_eq!(canonical_form(&form.to_graph()).unwrap(), form);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn determinant_matches_leibniz(m in small_matrix()) {
        let im = IntMatrix::from_rows(&m).unwrap();
        prop_assert_eq!(determinant(&im), leibniz(&m));
    }

    #[test]
    fn char_poly_constant_term_is_signed_det(m in small_matrix()) {
        let im = IntMatrix::from_rows(&m).unwrap();
        let sign = if im.dim() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(char_poly(&im).eval_at_zero(), determinant(&im) * sign);
    }

    #[test]
    fn nullity_is_multiplicity_of_zero(g in graph(10)) {
        let a = g.adjacency_matrix();
        prop_assert_eq!(nullity(&a), char_poly(&a).trailing_zero_count());
    }

    #[test]
    fn rank_ignores_labeling(g in graph(10), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(rank(&g.adjacency_matrix()), rank(&g.permuted(&perm).adjacency_matrix()));
    }

    #[test]
    fn deleting_a_vertex_moves_nullity_by_at_most_one(g in graph(10)) {
        prop_assume!(g.order() >= 2);
        let eta = nullity(&g.adjacency_matrix()) as i64;
        for v in 0..g.order() {
            let d = nullity(&g.delete_vertex(v).unwrap().adjacency_matrix()) as i64;
            prop_assert!((d - eta).abs() <= 1);
        }
    }

    #[test]
    fn nssd_routes_agree(g in graph(9)) {
        let cert = is_nssd(&g);
        prop_assert_eq!(cert.verdict, is_nssd_spectral(&g));
        prop_assert_eq!(cert.verdict, is_nssd_fast(&g));
    }

    #[test]
    fn graph6_round_trips(g in graph(70)) {
        let text = to_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn element_text_round_trips(n in 2u32..200, k in 0u32..200, reflected in any::<bool>()) {
        let group = GroupCtx::new(n).unwrap();
        let x = if reflected { group.reflection(k.into()) } else { group.rotation(k.into()) };
        prop_assert_eq!(parse_element(&format_element(x), group).unwrap(), x);
    }

    #[test]
    fn hyper_products_contain_the_fixed_set(n in 2u32..40, i in 0usize..80, j in 0usize..80) {
        let hv = HvGroupCtx::with_n(n).unwrap();
        let group = hv.group();
        let x = group.element_at(i % group.order());
        let y = group.element_at(j % group.order());
        let p = hv.hyper_product(x, y);
        prop_assert!(p.is_superset_of(hv.fixed_set()));
        prop_assert!(p.len() <= 7);
        prop_assert!(p.contains(group.multiply(x, y)));
        prop_assert!(p.contains(group.multiply(x, group.inverse(y))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn element_parser_total(n in 2u32..64, text in "[abe^* 0-9]{0,12}|\\PC{0,12}") {
        let group = GroupCtx::new(n).unwrap();
        if let Ok(x) = parse_element(&text, group) {
            prop_assert!(group.contains(x));
            prop_assert_eq!(parse_element(&format_element(x), group).unwrap(), x);
        }
    }

    #[test]
    fn subset_parser_total(n in 2u32..64, text in "[abe^*, 0-9]{0,24}|\\PC{0,24}") {
        use crate::dihedral::{format_subset, parse_subset};
        let group = GroupCtx::new(n).unwrap();
        if let Ok(set) = parse_subset(&text, group) {
            prop_assert!(!set.is_empty());
            prop_assert_eq!(parse_subset(&format_subset(&set), group).unwrap(), set);
        }
    }

    #[test]
    fn graph6_parser_total(text in "[?-~]{0,16}|\\PC{0,16}") {
        if let Ok(g) = parse_graph6(&text) {
            prop_assert_eq!(parse_graph6(&to_graph6(&g).unwrap()).unwrap(), g);
        }
    }

    #[test]
    fn catalog_parser_total(text in "([0-9]{1,2}; ?[0-9]{1,2}; ?[ab^0-9, ]{0,12}\n?|#[^\n]*\n){0,4}|\\PC{0,40}") {
        if let Ok(sets) = crate::catalog::parse_catalog(&text) {
            for set in sets {
                prop_assert!(!set.elements.is_empty());
                prop_assert!(set.n >= 2);
            }
        }
    }
}
