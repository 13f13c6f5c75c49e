use std::collections::BTreeSet;
use std::time::Instant;

use jacinf_core::resolution::{resolve, PolyMap, ResolveOptions};

fn fn_map(n: u32) -> PolyMap {
    PolyMap::from_int_terms(&[(1, &[1, 0]), (1, &[0, n])], &[(1, &[0, 1])]).unwrap()
}

/// Path L–E2–…–En, En–E1, chain En–E(n+1)–…–E(2n−1).
fn expected_edges(n: usize) -> BTreeSet<(usize, usize)> {
    let mut e = BTreeSet::new();
    let mut prev = 0;
    for k in 2..=n {
        e.insert((prev.min(k), prev.max(k)));
        prev = k;
    }
    e.insert((1, n));
    for k in n + 1..=2 * n - 1 {
        e.insert((k - 1, k));
    }
    e
}

#[test]
fn fn_family_matches_graph() {
    for n in 2..=5u32 {
        let start = Instant::now();
        let t = resolve(&fn_map(n), &ResolveOptions::default()).unwrap();
        let n = n as usize;
        assert_eq!(t.exceptional_count(), 2 * n - 1, "n = {n}");
        assert_eq!(t.edges, expected_edges(n), "n = {n}");
        let last = t.nodes.last().unwrap();
        assert_eq!(last.pole_order, 6);
        assert_eq!(last.mult_t, Some(1));
        assert!(t.nodes.iter().all(|x| x.pole_order % 2 == 0));
        assert!(start.elapsed().as_secs_f64() < 5.0);
    }
}
