use proptest::prelude::*;

use cotree::dual;
use cotree::generate::{generate, rng_for, GenKind};
use cotree::order::{
    check_face_orientation, compute_canonical_ordering, enumerate_vertices,
    validate_canonical_ordering,
};
use cotree::pipeline::Pipeline;
use cotree::trees::{
    barnette_tree, constrained_barnette, contour, cotree_degrees, tree_to_walk, SpanningTreePair,
};
use cotree::verify::mutate::{apply_and_check, Mutation};
use cotree::verify::*;
use cotree::PlanarGraph;

fn graph() -> impl Strategy<Value = (GenKind, usize, u64)> {
    let kinds = prop_oneof![
        3 => Just(GenKind::Triangulation),
        2 => Just(GenKind::Cubic),
        1 => Just(GenKind::Prism),
        1 => Just(GenKind::Wheel),
    ];
    (kinds, 4usize..160, any::<u64>()).prop_map(|(k, n, s)| {
        let n = match k {
            GenKind::Cubic => n & !1,
            GenKind::Prism => (n & !1).max(6),
            _ => n,
        };
        (k, n, s)
    })
}

fn make((k, n, s): (GenKind, usize, u64)) -> PlanarGraph {
    generate(k, n, s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn embedding_round_trips(spec in graph()) {
        let g = make(spec);
        let back = PlanarGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(g.vertex_count() + g.face_count(), g.edge_count() + 2);
        for d in 0..g.dart_count() {
            prop_assert_eq!(g.left_face(d), g.right_face(d ^ 1));
        }
    }

    #[test]
    fn double_dual_matches_vertices(spec in graph()) {
        let g = make(spec);
        let dd = dual(dual(&g).graph());
        prop_assert_eq!(dd.graph().edge_count(), g.edge_count());
        prop_assert_eq!(dd.graph().vertex_count(), g.vertex_count());
        prop_assert_eq!(dd.graph().face_count(), g.face_count());
    }

    #[test]
    fn ordering_is_valid_and_deterministic(spec in graph()) {
        let g = make(spec);
        let co = compute_canonical_ordering(&g).unwrap();
        let rep = validate_canonical_ordering(&g, &co);
        prop_assert!(rep.passed(), "{}", rep);
        prop_assert_eq!(compute_canonical_ordering(&g).unwrap(), co);
    }

    #[test]
    fn group_indices_are_consecutive(spec in graph()) {
        let g = make(spec);
        let co = compute_canonical_ordering(&g).unwrap();
        let en = enumerate_vertices(&g, &co);
        let mut s = 0;
        for grp in &co.groups {
            let mut ids: Vec<usize> = grp.iter().map(|&v| en.idx[v]).collect();
            ids.sort_unstable();
            prop_assert_eq!(ids, (s + 1..=s + grp.len()).collect::<Vec<_>>());
            s += grp.len();
        }
    }

    #[test]
    fn annotation_matches_definitions(spec in graph()) {
        let g = make(spec);
        let p = Pipeline::run(&g).unwrap();
        for (gg, co, ann) in [
            (&g, &p.ordering, &p.annotation),
            (p.dual.graph(), &p.dual_ordering.ordering, &p.dual_annotation),
        ] {
            let mut rep = check_annotation(gg, co, ann);
            rep.extend(check_face_orientation(gg, ann));
            rep.extend(check_label_grammar(gg, ann));
            rep.extend(check_parent_lemma(gg, ann));
            prop_assert!(rep.passed(), "{}", rep);
        }
    }

    #[test]
    fn dual_ordering_is_valid(spec in graph()) {
        let g = make(spec);
        let p = Pipeline::run(&g).unwrap();
        let rep = validate_canonical_ordering(p.dual.graph(), &p.dual_ordering.ordering);
        prop_assert!(rep.passed(), "{}", rep);
        let rep = cotree::dual_order::verify_label_correspondence(&g, &p.annotation, &p.dual, &p.dual_annotation);
        prop_assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn barnette_tree_is_an_increasing_three_tree(spec in graph()) {
        let g = make(spec);
        let p = Pipeline::run(&g).unwrap();
        let t = barnette_tree(&g, &p.annotation).unwrap();
        let rep = check_barnette(&g, &p.annotation, &t);
        prop_assert!(rep.passed(), "{}", rep);
        let roots = g.roots();
        for v in 0..g.vertex_count() {
            let par = p.annotation.parent[v];
            prop_assert_eq!(par.is_none(), v == roots.v1);
            if let Some(d) = par {
                prop_assert!(p.annotation.idx[g.tail(d)] < p.annotation.idx[v]);
            }
        }
    }

    #[test]
    fn h_lemmas_hold(spec in graph()) {
        let g = make(spec);
        let p = Pipeline::run(&g).unwrap();
        let rep = check_h_lemmas(&g, &p.h, &p.hstar);
        prop_assert!(rep.passed(), "{}", rep);
        let rep = check_h_lemmas(p.dual.graph(), &p.hstar, &p.h);
        prop_assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn five_tree_pair(spec in graph()) {
        let g = make(spec);
        let p = Pipeline::run(&g).unwrap();
        let rep = check_five_tree(&g, &p.five, &p.h, &p.hstar, &p.h0);
        prop_assert!(rep.passed(), "{}", rep);
        prop_assert_eq!(p.five.cotree_edges.len(), g.edge_count() - g.vertex_count() + 1);
        prop_assert_eq!(&Pipeline::run(&g).unwrap().five, &p.five);
    }

    #[test]
    fn exchange_never_uses_non_h_edges(spec in graph()) {
        let g = make(spec);
        let p = Pipeline::run(&g).unwrap();
        if let Some(&e) = p.five.tree_edges.first() {
            let rest: Vec<_> = p.five.tree_edges.iter().copied().filter(|&x| x != e).collect();
            for f in p.h.edges() {
                if f == e || p.five.tree_edges.contains(&f) {
                    continue;
                }
                let mut t = rest.clone();
                t.push(f);
                if verify_spanning_tree(&g, &t).passed() {
                    prop_assert!(t.iter().all(|&x| p.h.contains(x)));
                }
            }
        }
    }

    #[test]
    fn walk_bounds(spec in graph()) {
        let g = make(spec);
        let p = Pipeline::run(&g).unwrap();
        let w = tree_to_walk(&g, &p.five.tree_edges).unwrap();
        let rep = check_walk(&g, &p.five.tree_edges, &w);
        prop_assert!(rep.passed(), "{}", rep);
        prop_assert_eq!(&w.face_visits, &cotree_degrees(&g, &p.five.cotree_edges));
        prop_assert_eq!(w.vertices.len(), 2 * (g.vertex_count() - 1) + 1);
    }

    #[test]
    fn contour_face_visits_are_cotree_degrees(spec in graph()) {
        let g = make(spec);
        let p = Pipeline::run(&g).unwrap();
        let t = barnette_tree(&g, &p.annotation).unwrap();
        let w = contour(&g, &t.tree_edges);
        prop_assert_eq!(w.face_visits, cotree_degrees(&g, &t.cotree_edges));
    }

    #[test]
    fn constrained_tree_on_a_face(seed in any::<u64>(), n in 4usize..80, pick in any::<usize>()) {
        let g = generate(GenKind::Cubic, (n & !1).max(8), seed).unwrap();
        let big: Vec<usize> = (0..g.face_count()).filter(|&f| g.faces().darts(f).len() >= 4).collect();
        prop_assume!(!big.is_empty());
        let f = big[pick % big.len()];
        let vs: Vec<usize> = g.faces().darts(f).iter().map(|&d| g.tail(d)).collect();
        let i = pick % vs.len();
        let j = (i + 2 + (pick / 7) % (vs.len() - 3)) % vs.len();
        let (u, w) = (vs[i], vs[j]);
        let ct = constrained_barnette(&g, u, w).unwrap();
        let rep = check_constrained(&g, u, w, &ct);
        prop_assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn mutations_are_caught(spec in graph(), mseed in any::<u64>()) {
        let g = make(spec);
        let p = Pipeline::run(&g).unwrap();
        let mut rng = rng_for(mseed, 1);
        for m in Mutation::ALL {
            if let Some(rep) = apply_and_check(&g, &p, m, &mut rng) {
                prop_assert!(!rep.passed(), "{} not caught", m);
            }
        }
    }

    #[test]
    fn co_tree_round_trip(spec in graph()) {
        let g = make(spec);
        let p = Pipeline::run(&g).unwrap();
        let again = SpanningTreePair::from_tree(&g, p.five.tree_edges.clone()).unwrap();
        prop_assert_eq!(again, p.five);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn small_graphs_agree_with_kirchhoff(seed in any::<u64>(), n in 4usize..9) {
        let g = generate(GenKind::Triangulation, n, seed).unwrap();
        let count = enumerate_spanning_trees(&g).unwrap().count() as i128;
        prop_assert_eq!(count, matrix_tree_count(&g));
        let best = best_degree_pair(&g).unwrap();
        let five = cotree::five_tree(&g).unwrap();
        prop_assert!(best.tree.max(best.cotree) <= five.max_deg_tree.max(five.max_deg_cotree));
        prop_assert!(best.tree <= 5 && best.cotree <= 10);
    }
}
