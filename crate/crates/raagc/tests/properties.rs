//! Randomized properties with shrinking, complementing the deterministic
//! oracle suite: reduction laws, complex restrictions, enumeration counts,
//! factorization round trips.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use raagc::combinatorics::{
    clique_complex, connected_components, is_flag, restriction, Graph, SimplicialComplex,
};
use raagc::freegroup::{
    self, commutator, in_commutator_subgroup, invert, multiply, reduce, word_from_i64, Word,
};
use raagc::generators::{count_p, enumerate_descriptors, CommutatorDescriptor};
use raagc::input;
use raagc::rewriting::{express_in_basis, rewrite_f2};
use raagc::topology::{canonical_spanning_tree, nontree_loop_word};

fn graph_strategy(max_m: usize) -> impl Strategy<Value = Graph> {
    ((1usize..=max_m), any::<u32>()).prop_map(|(m, mask)| {
        let mut edges = Vec::new();
        let mut bit = 0u32;
        for a in 1..=m {
            for b in (a + 1)..=m {
                if mask >> bit & 1 == 1 {
                    edges.push((a, b));
                }
                bit += 1;
            }
        }
        Graph::new(m, &edges).expect("valid random graph")
    })
}

/// A graph together with a (possibly empty) subset of its vertices.
fn graph_with_subset(max_m: usize) -> impl Strategy<Value = (Graph, BTreeSet<usize>)> {
    (graph_strategy(max_m), any::<u8>()).prop_map(|(g, mask)| {
        let subset: BTreeSet<usize> = g
            .vertices()
            .iter()
            .cloned()
            .filter(|v| mask >> (v - 1) & 1 == 1)
            .collect();
        (g, subset)
    })
}

fn word_strategy(m: usize, max_syllables: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(
        (
            1..=m,
            (-5i64..=5).prop_filter("nonzero exponent", |e| *e != 0),
        ),
        0..=max_syllables,
    )
    .prop_map(move |sylls| word_from_i64(m, &sylls).expect("valid random word"))
}

/// A random word of the two-generator commutator subgroup: random syllables
/// followed by the two balancing corrections.
fn balanced_word2_strategy() -> impl Strategy<Value = Word> {
    word_strategy(2, 8).prop_map(|w| {
        let sums = w.exponent_sums();
        let mut sylls: Vec<(usize, BigInt)> = w.syllables().to_vec();
        sylls.push((1, -sums[0].clone()));
        sylls.push((2, -sums[1].clone()));
        reduce(2, &sylls).expect("balanced word")
    })
}

/// A structurally valid descriptor over five generators: a random vertex
/// set, `j` its maximum, `i` any other member, nonzero exponents.
fn descriptor_strategy() -> impl Strategy<Value = CommutatorDescriptor> {
    (
        (0u8..32).prop_filter("at least two vertices", |mask| mask.count_ones() >= 2),
        any::<u8>(),
        proptest::collection::vec((-3i64..=3).prop_filter("nonzero", |e| *e != 0), 5),
    )
        .prop_map(|(mask, pick, exps)| {
            let vertices: Vec<usize> = (1..=5).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            let j = *vertices.last().unwrap();
            let others = &vertices[..vertices.len() - 1];
            let i = others[pick as usize % others.len()];
            let ks: Vec<usize> = others.iter().cloned().filter(|&v| v != i).collect();
            let depth = ks.len() + 2;
            CommutatorDescriptor::new(ks, j, i, exps[..depth].to_vec())
                .expect("structurally valid descriptor")
        })
}

fn m3_loop_words() -> &'static Vec<Word> {
    static WORDS: OnceLock<Vec<Word>> = OnceLock::new();
    WORDS.get_or_init(|| {
        let tree = canonical_spanning_tree(3, 2).unwrap();
        tree.nontree_edges()
            .unwrap()
            .iter()
            .map(|e| nontree_loop_word(3, 2, e).unwrap())
            .collect()
    })
}

fn sorted_faces(k: &SimplicialComplex) -> Vec<BTreeSet<usize>> {
    let mut faces = k.maximal_faces().to_vec();
    faces.sort();
    faces
}

proptest! {
    #[test]
    fn reduction_is_idempotent_and_inverses_cancel(w in word_strategy(4, 10)) {
        let again = reduce(w.m(), w.syllables()).unwrap();
        prop_assert_eq!(&again, &w);
        prop_assert!(multiply(&w, &invert(&w)).unwrap().is_identity());
    }

    #[test]
    fn exponent_sums_add_under_multiplication(
        a in word_strategy(4, 8),
        b in word_strategy(4, 8),
    ) {
        let sums: Vec<BigInt> = multiply(&a, &b).unwrap().exponent_sums();
        let expected: Vec<BigInt> = a
            .exponent_sums()
            .iter()
            .zip(b.exponent_sums())
            .map(|(x, y)| x + y)
            .collect();
        prop_assert_eq!(sums, expected);
    }

    #[test]
    fn commutators_are_balanced(a in word_strategy(3, 6), b in word_strategy(3, 6)) {
        let c = commutator(&a, &b).unwrap();
        prop_assert!(c.exponent_sums().iter().all(Zero::is_zero));
        prop_assert!(in_commutator_subgroup(&c));
    }

    #[test]
    fn word_syntax_round_trips(w in word_strategy(5, 10)) {
        let text = input::format_word(&w);
        prop_assert_eq!(input::parse_word(&text, w.m()).unwrap(), w);
    }

    #[test]
    fn descriptor_json_round_trips(d in descriptor_strategy()) {
        let text = input::format_descriptor(&d).unwrap();
        prop_assert_eq!(input::parse_descriptor(&text).unwrap(), d);
    }

    #[test]
    fn restriction_commutes_with_the_clique_complex((g, subset) in graph_with_subset(5)) {
        let restricted = restriction(&clique_complex(&g), &subset).unwrap();
        let induced = clique_complex(&g.induced(&subset));
        prop_assert_eq!(sorted_faces(&restricted), sorted_faces(&induced));
    }

    #[test]
    fn component_counts_are_bounded((g, subset) in graph_with_subset(5)) {
        let restricted = restriction(&clique_complex(&g), &subset).unwrap();
        let (cc, _) = connected_components(&restricted);
        prop_assert!(cc <= subset.len());
        let induced = g.induced(&subset);
        prop_assert_eq!(cc == subset.len(), induced.edge_count() == 0);
    }

    #[test]
    fn clique_complexes_are_flag(g in graph_strategy(5)) {
        prop_assert!(is_flag(&clique_complex(&g)).is_ok());
    }

    #[test]
    fn two_generator_factorizations_realize_to_the_input(w in balanced_word2_strategy()) {
        let fw = rewrite_f2(&w).unwrap();
        prop_assert_eq!(fw.realize().unwrap(), w);
        prop_assert!(fw
            .factors()
            .iter()
            .all(|f| f.descriptor.ks().is_empty()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_length_matches_the_count(g in graph_strategy(4), s in 1u32..=2) {
        let k = clique_complex(&g);
        let listed = enumerate_descriptors(&k, s).unwrap();
        prop_assert_eq!(BigInt::from(listed.len()), count_p(&k, s).unwrap().p);
    }

    #[test]
    fn enumeration_nests_as_the_bound_grows(g in graph_strategy(4), s in 1u32..=2) {
        let k = clique_complex(&g);
        let smaller: BTreeSet<CommutatorDescriptor> =
            enumerate_descriptors(&k, s).unwrap().into_iter().collect();
        let larger: BTreeSet<CommutatorDescriptor> =
            enumerate_descriptors(&k, s + 1).unwrap().into_iter().collect();
        prop_assert!(smaller.is_subset(&larger));
    }

    #[test]
    fn enumerated_descriptors_realize_to_balanced_nontrivial_words(
        g in graph_strategy(4),
        s in 1u32..=2,
    ) {
        let k = clique_complex(&g);
        let m = k.vertex_count();
        for d in enumerate_descriptors(&k, s).unwrap() {
            let w = freegroup::realize_nested(&d, m).unwrap();
            prop_assert!(w.exponent_sums().iter().all(Zero::is_zero));
            prop_assert!(!w.is_identity());
        }
    }

    #[test]
    fn depth_two_descriptors_pair_nonedges_with_exponents(
        g in graph_strategy(5),
        s in 1u32..=2,
    ) {
        let k = clique_complex(&g);
        let depth2 = enumerate_descriptors(&k, s)
            .unwrap()
            .into_iter()
            .filter(|d| d.ks().is_empty())
            .count();
        let m = g.vertex_count();
        let nonedges = (1..=m)
            .flat_map(|a| ((a + 1)..=m).map(move |b| (a, b)))
            .filter(|&(a, b)| !g.has_edge(a, b))
            .count();
        prop_assert_eq!(depth2, nonedges * (s as usize).pow(2));
    }

    #[test]
    fn loop_word_products_express_in_the_basis(
        picks in proptest::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 1..=3),
    ) {
        let words = m3_loop_words();
        let chosen: Vec<Word> = picks
            .iter()
            .map(|(idx, flip)| {
                let w = &words[idx.index(words.len())];
                if *flip { invert(w) } else { w.clone() }
            })
            .collect();
        let w = freegroup::product(3, &chosen).unwrap();
        let fw = express_in_basis(&w, 3, 2).unwrap();
        prop_assert_eq!(fw.realize().unwrap(), w);
    }
}
