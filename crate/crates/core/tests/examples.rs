mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rp3color::frugality::frugal_profile;
use rp3color::goodp3::{good_triples, upsilon, upsilon1, upsilon2};
use rp3color::hardness::{build_hardness_graph, check_construction, NaeInstance};
use rp3color::oracle::{dsw_bound, eta, solve_exact, Hypergraph};
use rp3color::random::random_instance;
use rp3color::reducer::reduce_to_binary;
use rp3color::{ColorSet, GoodTriple, Graph, Instance};

#[test]
fn four_cycle_has_four_induced_p3s() {
    let c4 = Graph::cycle(4);
    assert_eq!(brute_p3_count(&c4), 4);
    assert_eq!(c4.induced_p3s().count(), brute_p3_count(&c4));
}

#[test]
fn potential_is_at_most_six_per_vertex() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(0..10);
        let inst = random_instance(&mut rng, n, 0.5, 5, 0..=5);
        assert!(inst.p_value() <= 6 * n);
    }
}

#[test]
fn hypergraph_statistics() {
    let path = Hypergraph::from_lists(3, &[&[0, 1], &[1, 2]]).stats();
    assert_eq!((path.nu, path.tau, path.lambda), (1, 1, 2));
    assert_eq!(brute_stats(3, &[0b011, 0b110]), (1, 1, 2));
    let triangle = Hypergraph::from_lists(3, &[&[0, 1], &[1, 2], &[2, 0]]).stats();
    assert_eq!(triangle.lambda, 3);
    assert_eq!(brute_stats(3, &[0b011, 0b110, 0b101]).2, 3);
}

#[test]
fn bound_constants_match_the_formulas() {
    let dsw = |l: u128, v: u128| 11 * l * l * (l + v + 3) * binom(l + v, v).pow(2);
    for (l, v, want) in [(2, 0, 220), (2, 1, 2376), (3, 0, 594)] {
        assert_eq!(dsw(l, v), want);
        assert_eq!(dsw_bound(l as u64, v as u64).unwrap(), want);
    }
    let eta_formula = |r: u128| 11 * (r + 1).pow(2) * (2 * r + 3) * binom(2 * r, r - 1);
    for (r, want) in [(1, 220), (2, 2772), (3, 23760)] {
        assert_eq!(eta_formula(r), want);
        assert_eq!(eta(r as u64).unwrap(), want);
    }
}

#[test]
fn profile_hand_enumerations() {
    let single = instance(1, &[], &[&[1, 2]]);
    let lists: Vec<ColorSet> = frugal_profile(&single, 1).map(|(_, e)| e.list(0)).collect();
    let expect: Vec<ColorSet> = [&[1, 2][..], &[1], &[2]]
        .iter()
        .map(|c| ColorSet::from_colors(c.iter().copied()))
        .collect();
    assert_eq!(lists, expect);

    let k2 = instance(2, &[(0, 1)], &[&[1], &[1]]);
    let got: Vec<Vec<ColorSet>> = frugal_profile(&k2, 1)
        .map(|(_, e)| e.lists().to_vec())
        .collect();
    let one = ColorSet::single(1);
    // assignments (0,0), (0,1), (1,0)
    assert_eq!(
        got,
        vec![
            vec![one, one],
            vec![ColorSet::EMPTY, one],
            vec![one, ColorSet::EMPTY]
        ]
    );
}

fn brute_good_triples(k: u8) -> Vec<[u8; 3]> {
    let mut out = Vec::new();
    for bits in 0u32..1 << (3 * k) {
        let mask = (1u32 << k) - 1;
        let t = [bits & mask, bits >> k & mask, bits >> (2 * k) & mask].map(|x| x as u8);
        if t.iter().all(|s| s.count_ones() >= 2)
            && t[0] & t[1] != 0
            && t[1] & t[2] != 0
            && t[0] & t[2] != 0
        {
            out.push(t);
        }
    }
    out
}

#[test]
fn good_triple_enumeration() {
    assert!(good_triples(1).is_empty());
    let two = good_triples(2);
    assert_eq!(two.len(), 1);
    assert_eq!(two[0].sets(), &[ColorSet::full(2); 3]);
    assert_eq!(brute_good_triples(2), vec![[0b11; 3]]);

    let five = good_triples(5);
    assert_eq!(five.len(), brute_good_triples(5).len());
    assert_eq!(five[0].sets(), &[ColorSet::full(5); 3]);
    assert_eq!(five[0].weight(), 15);
    assert!(five.windows(2).all(|w| w[0].weight() >= w[1].weight()));
}

/// Induced P3s `a - mid - b` with `a < b` whose lists read `gamma`.
fn type_count(inst: &Instance, gamma: &GoodTriple) -> usize {
    let adj = adjacency(inst.graph());
    let n = inst.n();
    let mut count = 0;
    for mid in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if adj[mid][a] && adj[mid][b] && !adj[a][b] {
                    count +=
                        usize::from([inst.list(a), inst.list(mid), inst.list(b)] == *gamma.sets());
                }
            }
        }
    }
    count
}

#[test]
fn pivot_isolation_keeps_a_frugal_coloring() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 5 {
        let inst = random_instance(&mut rng, 6, 0.4, 5, 2..=3);
        let Some(pivot) = inst.good_p3_find() else {
            continue;
        };
        if !brute_feasible(&inst, true) {
            continue;
        }
        let gamma = GoodTriple::new(inst.l_type(&pivot)).unwrap();
        assert!(upsilon1(&inst, &gamma, pivot)
            .unwrap()
            .any(|out| brute_feasible(&out, true)));
        checked += 1;
    }
}

#[test]
fn recursion_removes_every_p3_of_the_type() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 10 {
        let inst = random_instance(&mut rng, 6, 0.5, 5, 2..=3);
        let Some(gamma) = good_triples(5)
            .into_iter()
            .find(|g| type_count(&inst, g) > 0)
        else {
            continue;
        };
        for out in upsilon2(&inst, &gamma).unwrap().take(2000) {
            assert_eq!(type_count(&out, &gamma), 0);
        }
        checked += 1;
    }
}

#[test]
fn triangle_lists_on_a_path() {
    let g = Graph::path(3);
    let lists = vec![
        ColorSet::from_colors([1, 2]),
        ColorSet::from_colors([2, 3]),
        ColorSet::from_colors([1, 3]),
    ];
    let inst = Instance::new(g, 3, lists).unwrap();
    assert_eq!(brute_good_p3s(&inst).len(), 1);
    let outs: Vec<Instance> = upsilon(&inst).collect();
    assert!(outs.iter().all(|o| brute_good_p3s(o).is_empty()));
    assert!(outs.iter().any(|o| brute_feasible(o, true)));
}

/// Steps 3 to 10 fail at vertex 0, so the first round contracts.
fn contraction_fixture() -> Instance {
    instance(
        9,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 3),
            (1, 4),
            (1, 6),
            (1, 7),
            (2, 5),
            (2, 8),
            (4, 6),
            (4, 7),
            (5, 8),
            (6, 7),
            (7, 8),
        ],
        &[
            &[1, 2, 3],
            &[1, 4],
            &[2, 5],
            &[1, 3],
            &[4, 5],
            &[4, 5],
            &[2, 5],
            &[2, 3],
            &[3, 4],
        ],
    )
}

#[test]
fn contraction_trace_lifts_end_to_end() {
    let inst = contraction_fixture();
    let (binary, trace) = reduce_to_binary(&inst).unwrap();
    let phi = solve_exact(&binary).expect("fixture stays colorable");
    let lifted = trace.lift(&phi).unwrap();
    assert!(check_coloring(&inst, &lifted));
    assert!(backtrack_colorable(&inst));
}

fn family_counts(n: usize, m: usize) -> [usize; 8] {
    [10, 3 * n, 4 * m, 6 * m, 12 * m, 2 * n * m, 6 * m, 6 * m]
}

#[test]
fn gadget_sizes() {
    let nae = NaeInstance::new(3, vec![[1, 2, 3]]).unwrap();
    let inst = build_hardness_graph(&nae);
    assert_eq!(inst.n(), 5 + 3 + 2 + 6);
    let families = family_counts(3, 1);
    assert_eq!(families, [10, 9, 4, 6, 12, 6, 6, 6]);
    assert_eq!(inst.graph().edge_count(), families.iter().sum::<usize>());
    assert_eq!(inst.graph().edge_count(), 59);
}

fn nae_satisfiable(n: usize, clauses: &[[usize; 3]]) -> bool {
    (0u32..1 << n).any(|bits| {
        clauses.iter().all(|c| {
            let vals = c.map(|i| bits >> (i - 1) & 1);
            vals.contains(&0) && vals.contains(&1)
        })
    })
}

#[test]
fn gadget_reports() {
    for (n, clauses, sat) in [
        (3, vec![[1, 2, 3]], true),
        (1, vec![[1, 1, 1]], false),
        (0, vec![], true),
    ] {
        let nae = NaeInstance::new(n, clauses.clone()).unwrap();
        let inst = build_hardness_graph(&nae);
        assert!(!brute_packing_exists(inst.graph(), 2, 4));
        assert_eq!(nae_satisfiable(n, &clauses), sat);
        assert_eq!(backtrack_colorable(&inst), sat);
        let report = check_construction(&nae);
        assert!(report.holds());
        assert_eq!((report.satisfiable, report.colorable), (sat, sat));
    }
}
