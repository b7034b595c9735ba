mod common;

use num_traits::ToPrimitive;
use proptest::prelude::*;

use common::{arb_graph, arb_perm, connected_upto};
use fracbrooks::cliques::{clique_number, independence_number};
use fracbrooks::coloring::{chi_b, chromatic_number, find_ab_coloring, verify_fold_coloring};
use fracbrooks::fractional::chi_f_exact;
use fracbrooks::graph::{cycle_power, make_complete, make_cube, make_cycle, make_petersen, strong_product};
use fracbrooks::io::to_graph6;
use fracbrooks::iso::is_vertex_transitive;
use fracbrooks::patterns::pattern;
use fracbrooks::rational::{format, int};
use fracbrooks::{Graph, Rational};

fn vertex_transitive_graphs() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in 3..=12 {
        out.push((format!("C{n}"), make_cycle(n).unwrap()));
    }
    for n in 1..=7 {
        out.push((format!("K{n}"), make_complete(n).unwrap()));
    }
    for (n, k) in [(7, 2), (8, 2), (9, 2), (10, 2), (11, 3), (12, 3), (13, 4)] {
        out.push((format!("C{n}^{k}"), cycle_power(n, k).unwrap()));
    }
    out.push(("Petersen".into(), make_petersen()));
    out.push(("Q3".into(), make_cube()));
    let k2 = make_complete(2).unwrap();
    for l in 2..=4 {
        out.push((format!("C{}xK2", 2 * l + 1), strong_product(&make_cycle(2 * l + 1).unwrap(), &k2)));
    }
    out
}

#[test]
fn sandwich_on_small_graphs() {
    for g in connected_upto(8) {
        let x = chi_f_exact(&g).unwrap().0;
        let omega = int(clique_number(&g).unwrap() as i64);
        let chi = int(chromatic_number(&g).unwrap() as i64);
        assert!(omega <= x && x <= chi, "{}: {}", to_graph6(&g), format(&x));
    }
}

#[test]
fn fold_numbers_are_subadditive() {
    for g in connected_upto(7) {
        let c: Vec<usize> = (1..=3).map(|b| chi_b(&g, b).unwrap()).collect();
        assert!(c[1] <= 2 * c[0], "{}", to_graph6(&g));
        assert!(c[2] <= c[0] + c[1], "{}", to_graph6(&g));
    }
}

#[test]
fn vertex_transitive_graphs_meet_the_independence_bound() {
    for (name, g) in vertex_transitive_graphs() {
        assert!(is_vertex_transitive(&g).unwrap(), "{name}");
        let x = chi_f_exact(&g).unwrap().0;
        let alpha = independence_number(&g).unwrap() as i64;
        assert_eq!(x, Rational::new((g.n() as i64).into(), alpha.into()), "{name}");
    }
}

#[test]
fn fold_colourings_exist_at_the_fractional_value() {
    let mut graphs = vertex_transitive_graphs();
    graphs.retain(|(_, g)| g.n() <= 10);
    for key in ["H2", "H7", "G4", "G5"] {
        graphs.push((key.into(), pattern(key).unwrap().graph));
    }
    for (name, g) in graphs {
        let x = chi_f_exact(&g).unwrap().0;
        let q = x.denom().to_usize().unwrap();
        for b in [q, 2 * q] {
            let a = (x.clone() * int(b as i64)).to_integer().to_usize().unwrap();
            for a in [a, a + 1] {
                let c = find_ab_coloring(&g, a, b)
                    .unwrap()
                    .unwrap_or_else(|| panic!("{name}: no {a}:{b} colouring at χ_f = {}", format(&x)));
                assert_eq!(verify_fold_coloring(&g, &c), Ok(()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn duality_is_exact(g in arb_graph(1, 12)) {
        let (value, sol) = chi_f_exact(&g).unwrap();
        prop_assert_eq!(sol.verify(&g), Ok(()));
        let primal: Rational = sol.weights.iter().sum();
        let dual: Rational = sol.dual.as_ref().unwrap().iter().sum();
        prop_assert_eq!(&primal, &value);
        prop_assert_eq!(&dual, &value);
    }

    #[test]
    fn independence_lower_bound(g in arb_graph(1, 12)) {
        let x = chi_f_exact(&g).unwrap().0;
        let alpha = independence_number(&g).unwrap() as i64;
        prop_assert!(x >= Rational::new((g.n() as i64).into(), alpha.into()));
    }

    #[test]
    fn labels_do_not_matter((g, perm) in arb_graph(1, 11).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), arb_perm(n))
    })) {
        let a = chi_f_exact(&g).unwrap().0;
        let b = chi_f_exact(&g.permute(&perm)).unwrap().0;
        prop_assert_eq!(a, b);
    }
}
