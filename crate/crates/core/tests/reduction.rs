use std::collections::HashMap;

use hdroute::gen::gen_random_3cnf;
use hdroute::metrics::hd_path_capacity;
use hdroute::oracle::enumerate_simple_paths_capped;
use hdroute::sat::{
    brute_force_sat, build_gb, extract_assignment, gadget_subpaths, parse_dimacs, path_for_assignment, reduce, GadgetKind,
};
use hdroute::{best_hd_simple_path, Capacity};

fn z() -> Capacity {
    Capacity::from_integer(2)
}

#[test]
fn routed_paths_certify_satisfying_assignments() {
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 50 {
        let inst = gen_random_3cnf(3 + (seed % 4) as u32, 1 + (seed / 4 % 6) as usize, seed).unwrap();
        seed += 1;
        let Some(witness) = brute_force_sat(&inst).unwrap() else { continue };
        let red = reduce(&inst, &z()).unwrap();

        let routed = best_hd_simple_path(&red.graph).unwrap();
        assert!(routed.hd_capacity >= z(), "seed {seed}");
        let assignment = extract_assignment(&inst, &red, &routed.path).unwrap();
        assert!(inst.evaluate(&assignment), "seed {seed}");

        let built = path_for_assignment(&inst, &red, &witness).unwrap();
        assert!(built.is_simple());
        assert!(hd_path_capacity(&red.graph, &built).unwrap() >= z());
        assert!(inst.evaluate(&extract_assignment(&inst, &red, &built).unwrap()));
        checked += 1;
    }
}

#[test]
fn feasible_paths_never_take_a_narrow_crossing() {
    let mut scanned = 0;
    for seed in 0..40u64 {
        let inst = gen_random_3cnf(2 + (seed % 3) as u32, 2 + (seed / 3 % 2) as usize, seed).unwrap();
        let red = reduce(&inst, &z()).unwrap();
        let g = &red.graph;
        let narrow: Vec<[usize; 3]> = gadget_subpaths(&red)
            .iter()
            .filter(|s| s.kind == GadgetKind::NarrowCrossing)
            .map(|s| [&s.a, &s.f, &s.b].map(|n| g.index_of(n).unwrap()))
            .collect();
        let mut feasible = 0;
        for path in enumerate_simple_paths_capped(g, 200_000) {
            let path = path.unwrap();
            if hd_path_capacity(g, &path).unwrap() < z() {
                continue;
            }
            feasible += 1;
            for w in path.vertices().windows(3) {
                assert!(!narrow.contains(&[w[0], w[1], w[2]]), "seed {seed}: {:?}", path.names(g));
            }
        }
        assert_eq!(feasible > 0, brute_force_sat(&inst).unwrap().is_some(), "seed {seed}");
        scanned += 1;
    }
    assert_eq!(scanned, 40);
}

#[test]
fn construction_size_and_capacity_histogram() {
    for seed in 0..60u64 {
        let inst = gen_random_3cnf(1 + (seed % 6) as u32, 1 + (seed / 6 % 8) as usize, seed).unwrap();
        let red = reduce(&inst, &z()).unwrap();
        let m = inst.clause_count();
        let f = red.forbidden.len();
        // distinct literal vertices named in a pair, before splitting
        let vf = build_gb(&inst).unwrap().forbidden.vertices().len();
        assert_eq!(red.graph.vertex_count(), 2 + 5 * m + 5 * f - vf, "seed {seed}");

        let mut hist: HashMap<Capacity, usize> = HashMap::new();
        for (_, _, c) in red.graph.edges() {
            *hist.entry(c.clone()).or_default() += 1;
        }
        let half = Capacity::from_integer(3);
        let full = Capacity::from_integer(6);
        assert_eq!(hist.get(&half).copied().unwrap_or(0), 2 * f, "seed {seed}");
        assert_eq!(hist.len(), if f == 0 { 1 } else { 2 }, "seed {seed}");
        assert!(hist.contains_key(&full));
    }
}

#[test]
fn running_example_has_27_vertices() {
    let inst = parse_dimacs("p cnf 5 3\n-1 2 3 0\n4 1 -2 0\n-1 3 -5 0\n").unwrap();
    let red = reduce(&inst, &z()).unwrap();
    assert_eq!(red.graph.vertex_count(), 27);
    assert_eq!(red.forbidden.len(), 3);
}
