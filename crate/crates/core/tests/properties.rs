use hdroute::gen::gen_random_digraph;
use hdroute::oracle::{brute_force_best_hd, brute_force_decide};
use hdroute::router::hd_path_decide;
use hdroute::widest::{tree_path, widest_path_tree};
use hdroute::{best_hd_simple_path, fd_path_capacity, hd_path_capacity, Capacity, Error};
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = hdroute::Digraph> {
    (3usize..=8, 0usize..=4, 0.2f64..0.7, any::<u64>()).prop_filter_map("too many edges", |(n, back, p, seed)| {
        let g = gen_random_digraph(n, p, back, (1, 30), seed).ok()?;
        (g.edge_count() <= 20).then_some(g)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn router_matches_exhaustive_search(g in small_graph()) {
        match (best_hd_simple_path(&g), brute_force_best_hd(&g)) {
            (Ok(r), Ok((_, best))) => {
                prop_assert!(r.path.is_simple());
                prop_assert_eq!(&hd_path_capacity(&g, &r.path).unwrap(), &best);
                prop_assert_eq!(r.hd_capacity, best);
            }
            (Err(Error::NoPath), Err(Error::NoPath)) => {}
            (a, b) => prop_assert!(false, "router {:?} vs oracle {:?}", a.map(|r| r.hd_capacity), b.map(|x| x.1)),
        }
    }

    #[test]
    fn hd_never_exceeds_fd_and_widest_route_is_no_better(g in small_graph()) {
        let Ok(best) = best_hd_simple_path(&g) else { return Ok(()); };
        prop_assert!(best.hd_capacity <= fd_path_capacity(&g, &best.path).unwrap());
        let tree = widest_path_tree(&g, g.source());
        let fd_route = tree_path(&tree, g.destination()).unwrap();
        prop_assert!(hd_path_capacity(&g, &fd_route).unwrap() <= best.hd_capacity);
    }

    #[test]
    fn decisions_agree_around_the_optimum(g in small_graph(), num in 1i64..40, den in 1i64..4) {
        let t = Capacity::from_ratio(num, den);
        prop_assert_eq!(hd_path_decide(&g, &t).unwrap(), brute_force_decide(&g, &t).unwrap());
        if let Ok(best) = best_hd_simple_path(&g) {
            prop_assert!(hd_path_decide(&g, &best.hd_capacity).unwrap());
        }
    }
}
