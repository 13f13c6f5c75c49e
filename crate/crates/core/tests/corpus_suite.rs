use std::time::Instant;

use jacinf_core::analysis::*;
use jacinf_core::corpus::*;
use jacinf_core::resolution::*;

const SAMPLES: u64 = 50;

fn sample(seed: u64) -> RandomAutomorphism {
    random_automorphism(seed, 1 + (seed % 4) as usize, 4).unwrap()
}

#[test]
fn fixtures_meet_expectations() {
    for fx in known_examples() {
        let fails = check_fixture(&fx, &ResolveOptions::default(), DEFAULT_SEED).unwrap();
        assert!(fails.is_empty(), "{fails:?}");
    }
}

#[test]
fn synthetic_pairs_are_flagged() {
    let expected = [((0, 2), (2, 4), PairClause::LowParentHighChild), ((0, 2), (-4, -4), PairClause::EqualNegative)];
    for ((_, tree), (edge, pair, clause)) in synthetic_pair_trees().into_iter().zip(expected) {
        assert_eq!(validate_pole_pairs(&tree), vec![PolePairViolation { edge, pair, clause }]);
    }
}

#[test]
fn random_automorphisms_certify() {
    let start = Instant::now();
    for seed in 0..SAMPLES {
        let s = sample(seed);
        let j = s.map.jacobian();
        assert!(j.is_constant() && !j.is_zero());
        assert_eq!(j.constant_term().as_rational().cloned(), Some(s.word.jacobian()));
        assert_eq!(s.word.unwind(&s.map), PolyMap::identity(), "seed {seed}");
        let tree = resolve(&s.map, &ResolveOptions::default()).unwrap();
        let cert = certify_tree(&tree).unwrap();
        assert_eq!(cert.verdict, Verdict::Automorphism, "seed {seed}: {:?}", cert.reasons);
        assert!(cert.strong, "seed {seed}");
        assert_eq!(topological_degree(&s.map, DEFAULT_SEED).unwrap(), 1);
        let t2 = t_self_intersection(&tree).unwrap();
        assert_eq!(t2.t_squared, 1, "seed {seed}");
        assert!(t2.t_dot_contracted.iter().all(|&(_, d)| d == 0));
        assert!(minimality_report(&tree).unwrap().is_empty());
        assert!(validate_pole_pairs(&tree).is_empty());
        let rel = check_order_relations(&tree, DEFAULT_SEED).unwrap();
        assert!(rel.applicable && rel.all_hold(), "seed {seed}");
        assert!(tree.nodes.iter().all(|n| n.pole_order % 2 == 0));
    }
    eprintln!("{SAMPLES} samples in {:?}", start.elapsed());
}

#[test]
fn generator_is_deterministic() {
    for seed in [0, 7, 99] {
        assert_eq!(sample(seed), sample(seed));
    }
    assert_ne!(sample(1).word, sample(2).word);
}

#[test]
fn non_properness_of_x_xy() {
    let f = PolyMap::from_int_terms(&[(1, &[1, 0])], &[(1, &[1, 1])]).unwrap();
    let tree = resolve(&f, &ResolveOptions::default()).unwrap();
    let report = non_properness_report(&tree, DEFAULT_SEED).unwrap();
    assert!(!report.nodes.is_empty());
    assert!(!report.flagged);
    assert!(matches!(&report.nodes[0].image, AffineImage::Curve { implicit, .. } if implicit == "x"));
    let cert = certify_automorphism(&f, &ResolveOptions::default()).unwrap();
    assert_eq!(cert.verdict, Verdict::PreconditionFailed);
}
