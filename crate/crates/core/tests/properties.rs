mod common;

use common::*;
use proptest::prelude::*;
use rp3color::frugality::{frugal_profile, kill_singletons, neighborhood_hypergraph};
use rp3color::goodp3::{count_anticomplete_of_type, good_triples, upsilon, upsilon1, upsilon2};
use rp3color::oracle::{all_colorings, eta, solve_exact, solve_exact_frugal};
use rp3color::pipeline::{solve, xi_stream, SolveOptions, Verdict};
use rp3color::reducer::{algorithm_a, reduce_to_binary};
use rp3color::twosat::binary_list_color;
use rp3color::{ColorSet, Coloring, GoodTriple, Instance, VertexSet};

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cfg(128))]

    #[test]
    fn open_first_neighborhood_is_adjacency(g in arb_graph(10)) {
        for v in 0..g.n() {
            prop_assert_eq!(g.dist_neighborhood(v, 1, false).to_vec(), g.neighbors(v).to_vec());
        }
    }

    #[test]
    fn induced_p3s_match_double_loop(g in arb_graph(10)) {
        let adj = adjacency(&g);
        let found: Vec<_> = g.induced_p3s().collect();
        for p in &found {
            prop_assert!(p.x1 < p.x3);
            prop_assert!(adj[p.x1][p.x2] && adj[p.x2][p.x3] && !adj[p.x1][p.x3]);
        }
        prop_assert_eq!(found.len(), brute_p3_count(&g));
    }

    #[test]
    fn packing_matches_brute_force(g in arb_graph(9), r in 1usize..=2, t in 1usize..=4) {
        let found = g.anticomplete_packing(r, t);
        prop_assert_eq!(found.is_some(), brute_packing_exists(&g, r, t));
        if let Some(family) = found {
            prop_assert_eq!(family.len(), r);
            for path in &family {
                let mut sorted = path.clone();
                sorted.sort_unstable();
                prop_assert!(brute_paths(&g, t).contains(&sorted));
            }
        }
    }

    #[test]
    fn freeness_is_hereditary(g in arb_graph(10), keep in any::<u16>()) {
        prop_assume!(g.is_rpt_free(2, 3));
        let set = VertexSet::from_ids(g.n(), (0..g.n()).filter(|&v| keep >> v & 1 == 1));
        let (sub, _) = g.induced_subgraph(&set);
        prop_assert!(sub.is_rpt_free(2, 3));
    }

    #[test]
    fn spanning_spread(inst in arb_instance(6, 1, 4), drop in any::<u32>()) {
        let lists: Vec<ColorSet> = inst
            .lists()
            .iter()
            .enumerate()
            .map(|(v, l)| l.iter().filter(|&c| drop >> ((v * 5 + c as usize) % 32) & 1 == 0).fold(ColorSet::EMPTY, ColorSet::with))
            .collect();
        let child = inst.with_lists(lists);
        for phi in brute_colorings(&child, false) {
            prop_assert!(inst.is_coloring(&Coloring(phi)));
        }
    }

    #[test]
    fn frugal_spread(inst in arb_instance(6, 1, 4), keep in any::<u8>()) {
        let set = VertexSet::from_ids(inst.n(), (0..inst.n()).filter(|&v| keep >> v & 1 == 1));
        let (child, ids) = inst.induced(&set);
        for phi in brute_colorings(&inst, true) {
            let restricted = Coloring(ids.iter().map(|&v| phi[v]).collect());
            prop_assert!(child.is_frugal_coloring(&restricted));
        }
    }

    #[test]
    fn good_spread(inst in arb_instance(7, 0, 4), keep in any::<u8>(), drop in any::<u64>()) {
        prop_assume!(inst.good_p3_find().is_none());
        let set = VertexSet::from_ids(inst.n(), (0..inst.n()).filter(|&v| keep >> v & 1 == 1));
        let (child, ids) = inst.induced(&set);
        let lists = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| inst.list(v).iter().filter(|&c| drop >> ((i * 5 + c as usize) % 64) & 1 == 0).fold(ColorSet::EMPTY, ColorSet::with))
            .collect();
        prop_assert!(child.with_lists(lists).good_p3_find().is_none());
    }

    #[test]
    fn list_graph_is_equifeasible(inst in arb_instance(7, 1, 3)) {
        let gl = Instance::new(inst.list_graph(), 5, inst.lists().to_vec()).unwrap();
        prop_assert_eq!(solve_exact(&inst).is_some(), solve_exact(&gl).is_some());
    }

    #[test]
    fn exact_solvers_match_enumeration(inst in arb_instance(6, 0, 5)) {
        for frugal in [false, true] {
            let found = if frugal { solve_exact_frugal(&inst) } else { solve_exact(&inst) };
            let brute = brute_colorings(&inst, frugal);
            prop_assert_eq!(found.is_some(), !brute.is_empty());
            if let Some(phi) = found {
                prop_assert!(inst.verify_coloring(&phi, frugal).is_ok());
                prop_assert_eq!(phi.as_slice(), brute[0].as_slice(), "lexicographically first");
            }
            let all: Vec<Vec<u8>> = all_colorings(&inst, frugal).into_iter().map(|c| c.0).collect();
            prop_assert_eq!(all, brute);
        }
    }

    #[test]
    fn frugal_colorings_are_injective_on_list_neighborhoods(inst in arb_instance(7, 2, 4)) {
        prop_assume!(inst.good_p3_find().is_none());
        let gl = inst.list_graph();
        for phi in all_colorings(&inst, true) {
            for v in 0..inst.n() {
                let mut colors: Vec<u8> = gl.neighbors(v).iter().map(|&w| phi.color(w)).collect();
                colors.push(phi.color(v));
                let len = colors.len();
                colors.sort_unstable();
                colors.dedup();
                prop_assert_eq!(colors.len(), len);
                prop_assert!(gl.degree(v) < 5);
            }
        }
    }

    #[test]
    fn singleton_removal_contract(inst in arb_instance(7, 1, 3)) {
        let (reduced, steps) = kill_singletons(&inst);
        prop_assert!(reduced.lists().iter().all(|l| l.len() != 1));
        if brute_feasible(&inst, true) {
            prop_assert!(solve_exact_frugal(&reduced).is_some());
        }
        if let Some(phi) = solve_exact(&reduced) {
            let mut lifted = phi;
            for step in steps.iter().rev() {
                lifted = step.lift(&lifted).unwrap();
            }
            prop_assert!(check_coloring(&inst, &lifted));
        }
    }
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn profile_elements_are_spanning_and_block_neighbors(inst in arb_instance(5, 1, 3)) {
        let id = identity(inst.n());
        for (tuple, element) in frugal_profile(&inst, 2).take(400) {
            let check = element.is_refinement_of(&inst, &id);
            prop_assert!(check.refinement && check.spanning);
            for i in 1..=5 {
                let class = tuple.class(i);
                for v in (0..inst.n()).filter(|v| !class.contains(v)) {
                    if inst.graph().neighbors(v).iter().any(|w| class.contains(w)) {
                        prop_assert!(!element.list(v).contains(i));
                    }
                }
            }
        }
    }

    #[test]
    fn profile_is_complete(inst in arb_instance(6, 1, 4)) {
        prop_assume!(inst.graph().is_rpt_free(2, 3));
        if brute_feasible(&inst, false) {
            prop_assert!(frugal_profile(&inst, 2).any(|(_, e)| solve_exact_frugal(&e).is_some()));
        }
    }

    #[test]
    fn frugal_domination_bound(inst in arb_instance(6, 5, 5)) {
        prop_assume!(inst.graph().is_rpt_free(2, 3));
        let g = inst.graph();
        let bound = eta(2).unwrap();
        for phi in all_colorings(&inst, false).into_iter().take(20) {
            for i in 1..=5u8 {
                for j in (1..=5u8).filter(|&j| j != i) {
                    let a = VertexSet::from_ids(g.n(), (0..g.n()).filter(|&v| phi.color(v) == i));
                    let b = VertexSet::from_ids(
                        g.n(),
                        (0..g.n()).filter(|&v| {
                            phi.color(v) == j && g.neighbors(v).iter().filter(|&&w| a.contains(w)).count() >= 2
                        }),
                    );
                    let h = neighborhood_hypergraph(g, &a, &b).unwrap();
                    prop_assert!(h.stats().tau as u128 <= bound);
                }
            }
        }
    }

    #[test]
    fn upsilon_outputs_are_clean_spanning_refinements(inst in arb_instance(6, 2, 3)) {
        let id = identity(inst.n());
        let feasible = solve_exact_frugal(&inst).is_some();
        let mut witnessed = false;
        for out in upsilon(&inst).take(3000) {
            let check = out.is_refinement_of(&inst, &id);
            prop_assert!(check.refinement && check.spanning);
            prop_assert!(out.good_p3_find().is_none());
            witnessed |= feasible && solve_exact_frugal(&out).is_some();
        }
        if feasible {
            prop_assert!(witnessed);
        }
    }

    #[test]
    fn upsilon1_isolates_the_pivot(inst in arb_instance(6, 2, 3)) {
        let Some(pivot) = inst.good_p3_find() else { return Ok(()); };
        let gamma = GoodTriple::new(inst.l_type(&pivot)).unwrap();
        let g = inst.graph();
        let adj = adjacency(g);
        let pv = pivot.vertices();
        for out in upsilon1(&inst, &gamma, pivot).unwrap().take(2000) {
            for p in g.induced_p3s().filter(|p| out.l_type(p) == *gamma.sets()) {
                for x in p.vertices() {
                    prop_assert!(pv.iter().all(|&y| x != y && !adj[x][y]));
                }
            }
        }
    }

    #[test]
    fn upsilon2_paths_shrink_the_packing(inst in arb_instance(6, 2, 3)) {
        let top = good_triples(5)
            .into_iter()
            .find(|t| g_has_type(&inst, t));
        let Some(gamma) = top else { return Ok(()); };
        prop_assume!(inst.good_p3s().all(|p| inst.l_weight(&p) <= gamma.weight()));
        let before = count_anticomplete_of_type(&inst, &gamma);
        for out in upsilon2(&inst, &gamma).unwrap().take(2000) {
            prop_assert_eq!(count_anticomplete_of_type(&out, &gamma), 0);
        }
        let pivot = inst.graph().induced_p3s().find(|p| inst.l_type(p) == *gamma.sets()).unwrap();
        for child in upsilon1(&inst, &gamma, pivot).unwrap().take(500) {
            prop_assert!(count_anticomplete_of_type(&child, &gamma) < before);
        }
    }

    #[test]
    fn algorithm_a_represents(inst in arb_instance(7, 2, 3)) {
        prop_assume!(inst.good_p3_find().is_none());
        let Some(u0) = (0..inst.n()).find(|&v| inst.list(v).len() >= 3) else { return Ok(()); };
        let step = algorithm_a(&inst, u0).unwrap();
        prop_assert!(step.instance.p_value() < inst.p_value());
        if brute_feasible(&inst, true) {
            prop_assert!(solve_exact_frugal(&step.instance).is_some());
        }
        for phi in all_colorings(&step.instance, false).into_iter().take(50) {
            let lifted = step.lift.lift(&phi).unwrap();
            prop_assert!(check_coloring(&inst, &lifted));
        }
        let (next, _) = kill_singletons(&step.instance);
        prop_assert!(next.good_p3_find().is_none());
        prop_assert!(next.lists().iter().all(|l| l.len() != 1));
    }

    #[test]
    fn big_lists_stop_early(inst in arb_instance(6, 2, 5)) {
        prop_assume!(inst.good_p3_find().is_none() && inst.lists().iter().all(|l| l.len() != 1));
        prop_assume!(inst.lists().iter().any(|l| l.len() >= 4));
        let u0 = (0..inst.n()).find(|&v| inst.list(v).len() >= 3).unwrap();
        prop_assert!(algorithm_a(&inst, u0).unwrap().fired <= 5);
    }

    #[test]
    fn binary_fixpoint_is_equifeasible(inst in arb_instance(7, 2, 3)) {
        prop_assume!(inst.good_p3_find().is_none());
        let (out, trace) = reduce_to_binary(&inst).unwrap();
        prop_assert!(out.lists().iter().all(|l| matches!(l.len(), 0 | 2)));
        let before = brute_feasible(&inst, false);
        match solve_exact(&out) {
            Some(phi) => {
                let lifted = trace.lift(&phi).unwrap();
                prop_assert!(check_coloring(&inst, &lifted));
            }
            None => prop_assert!(!brute_feasible(&inst, true)),
        }
        if !before {
            prop_assert!(solve_exact(&out).is_none());
        }
    }

    #[test]
    fn two_sat_matches_enumeration(inst in arb_instance(6, 0, 2)) {
        let found = binary_list_color(&inst).unwrap();
        prop_assert_eq!(found.is_some(), brute_feasible(&inst, false));
        if let Some(phi) = found {
            prop_assert!(check_coloring(&inst, &phi));
        }
    }

    #[test]
    fn xi_leaves_are_reducible(inst in arb_instance(6, 1, 4)) {
        for (leaf, trace) in xi_stream(&inst, 2).take(300) {
            prop_assert!(leaf.good_p3_find().is_none());
            prop_assert!(leaf.lists().iter().all(|l| l.len() != 1));
            prop_assert_eq!(trace.source(), &inst);
        }
    }

    #[test]
    fn forced_answers_are_sound(inst in arb_instance(7, 1, 5)) {
        let opts = SolveOptions { force: true, budget: Some(2000), ..SolveOptions::default() };
        if let Verdict::Colorable(phi) = solve(&inst, &opts).unwrap() {
            prop_assert!(check_coloring(&inst, &phi));
        }
    }

    #[test]
    fn sequential_runs_repeat(inst in arb_instance(6, 2, 4)) {
        let opts = SolveOptions::default();
        prop_assert_eq!(solve(&inst, &opts).unwrap(), solve(&inst, &opts).unwrap());
    }
}

fn g_has_type(inst: &Instance, t: &GoodTriple) -> bool {
    inst.graph()
        .induced_p3s()
        .any(|p| inst.l_type(&p) == *t.sets())
}
