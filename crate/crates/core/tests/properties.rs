use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use udpo::analysis::{
    exact_opt, exact_opt_enumerate, total_orientation_bruteforce, Ratio, DEFAULT_EDGE_LIMIT,
};
use udpo::harness::format::{parse_instance, parse_orientation, write_instance, write_orientation};
use udpo::harness::generate::random_feasible_orientation;
use udpo::search::{
    apply_improving_set, find_improving_set_rule1, local_search, RuleOrder, SearchParams,
};
use udpo::setpacking::{
    blocking_sets, build_setpacking, family_to_orientation, orientation_to_family, Subfamily,
};
use udpo::simplify::simplify_instance;
use udpo::{is_feasible, make_proper, total_orientation, Caps, EdgeId, Instance};

fn instance(max_n: usize, max_m: usize, max_d: u32) -> impl Strategy<Value = Instance> {
    (2..=max_n).prop_flat_map(move |n| {
        let caps = prop::collection::vec((0..=max_d, 0..=max_d), n);
        let edges = prop::collection::vec((0..n, 1..n), 0..=max_m);
        (caps, edges).prop_map(move |(caps, edges)| {
            let caps = caps.into_iter().map(|(o, i)| Caps::new(o, i)).collect();
            // second endpoint is an offset, so no self-loops
            let edges = edges.into_iter().map(|(u, k)| (u, (u + k) % n)).collect();
            Instance::new(caps, edges).unwrap()
        })
    })
}

/// An instance with a seed for drawing orientations from it.
fn seeded(max_n: usize, max_m: usize, max_d: u32) -> impl Strategy<Value = (Instance, u64)> {
    (instance(max_n, max_m, max_d), any::<u64>())
}

fn proper_seeded(max_n: usize, max_m: usize, max_d: u32) -> impl Strategy<Value = (Instance, u64)> {
    seeded(max_n, max_m, max_d).prop_map(|(inst, seed)| (make_proper(&inst).instance, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn instance_text_round_trip((inst, seed) in seeded(8, 12, 3)) {
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_instance(&back), text);
        let po = random_feasible_orientation(&mut ChaCha8Rng::seed_from_u64(seed), &inst, 0.7);
        let otext = write_orientation(&po);
        prop_assert_eq!(parse_orientation(&otext, &inst).unwrap(), po);
    }

    #[test]
    fn flow_oracle_matches_enumeration(inst in instance(6, 8, 2), mask in any::<u16>()) {
        let subset: Vec<EdgeId> = inst.edge_ids().filter(|e| mask >> e.0 & 1 == 1).collect();
        let flow = total_orientation(&inst, subset.iter().copied()).unwrap();
        let brute = total_orientation_bruteforce(&inst, &subset);
        prop_assert_eq!(flow.is_some(), brute.is_some());
        if let Some(po) = flow {
            prop_assert_eq!(po.len(), subset.len());
            prop_assert!(is_feasible(&inst, &po).unwrap());
        }
    }

    #[test]
    fn exact_opt_matches_enumeration(inst in instance(5, 7, 2)) {
        let opt = exact_opt(&inst, DEFAULT_EDGE_LIMIT).unwrap();
        prop_assert!(is_feasible(&inst, &opt).unwrap());
        prop_assert_eq!(opt.len(), exact_opt_enumerate(&inst));
    }

    #[test]
    fn make_proper_keeps_the_optimum(inst in instance(5, 6, 2)) {
        let red = make_proper(&inst);
        prop_assert!(red.instance.is_proper() || red.instance.num_vertices() == 0);
        let small = exact_opt(&red.instance, DEFAULT_EDGE_LIMIT).unwrap();
        prop_assert_eq!(small.len(), exact_opt(&inst, DEFAULT_EDGE_LIMIT).unwrap().len());
        let lifted = red.lift(&small);
        prop_assert!(is_feasible(&inst, &lifted).unwrap());
        prop_assert_eq!(lifted.len(), small.len());
    }

    #[test]
    fn family_encoding_round_trip((inst, seed) in seeded(6, 10, 3)) {
        let sp = build_setpacking(&inst);
        let po = random_feasible_orientation(&mut ChaCha8Rng::seed_from_u64(seed), &inst, 0.8);
        let fam = orientation_to_family(&inst, &sp, &po).unwrap();
        prop_assert_eq!(fam.len(), po.len());
        prop_assert!(sp.is_disjoint(&fam));
        prop_assert_eq!(family_to_orientation(&sp, &fam).unwrap(), po);
    }

    #[test]
    fn a_set_meets_at_most_three_members((inst, seed) in seeded(6, 10, 2)) {
        let sp = build_setpacking(&inst);
        let po = random_feasible_orientation(&mut ChaCha8Rng::seed_from_u64(seed), &inst, 0.9);
        let f0 = orientation_to_family(&inst, &sp, &po).unwrap();
        for s in sp.set_ids() {
            let single: Subfamily = [s].into_iter().collect();
            prop_assert!(blocking_sets(&sp, &f0, &single).len() <= 3);
        }
    }

    #[test]
    fn improving_sets_grow_the_family((inst, seed) in seeded(6, 10, 2)) {
        let sp = build_setpacking(&inst);
        let po = random_feasible_orientation(&mut ChaCha8Rng::seed_from_u64(seed), &inst, 0.5);
        let f0 = orientation_to_family(&inst, &sp, &po).unwrap();
        if let Some(x) = find_improving_set_rule1(&sp, &f0, 3) {
            prop_assert!(x.len() <= 3);
            let grown = apply_improving_set(&sp, &f0, &x).unwrap();
            prop_assert!(grown.len() > f0.len());
            let decoded = family_to_orientation(&sp, &grown).unwrap();
            prop_assert!(is_feasible(&inst, &decoded).unwrap());
        }
    }

    #[test]
    fn local_search_invariants(inst in instance(7, 10, 2), r1 in 1usize..4, r2 in 1usize..5, order in 0..3u8) {
        let params = SearchParams {
            rule_order: [RuleOrder::Rule1First, RuleOrder::Rule2First, RuleOrder::Alternate][order as usize],
            ..SearchParams::with_radii(r1, r2)
        };
        let report = local_search(&inst, &params).unwrap();
        prop_assert!(is_feasible(&inst, &report.orientation).unwrap());
        for step in &report.steps {
            prop_assert!(step.size_after > step.size_before);
        }
        prop_assert!(report.steps.len() <= inst.num_edges());
        let opt = exact_opt(&inst, DEFAULT_EDGE_LIMIT).unwrap().len();
        prop_assert!(report.size() <= opt);
        prop_assert!(opt <= 3 * report.size() || opt == 0);
    }

    #[test]
    fn full_radius_is_exact(inst in instance(6, 7, 2)) {
        let params = SearchParams::with_radii(2, inst.num_edges().max(1));
        let report = local_search(&inst, &params).unwrap();
        prop_assert_eq!(report.size(), exact_opt(&inst, DEFAULT_EDGE_LIMIT).unwrap().len());
    }

    #[test]
    fn simplification_preserves_orientations((inst, seed) in proper_seeded(6, 10, 3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_feasible_orientation(&mut rng, &inst, 0.8);
        let b = random_feasible_orientation(&mut rng, &inst, 0.8);
        let s = simplify_instance(&inst, &a, &b).unwrap();
        prop_assert!(s.instance.is_simple());
        prop_assert!(s.instance.is_proper());
        prop_assert_eq!(s.instance.num_edges(), inst.num_edges());
        prop_assert_eq!(s.a.len(), a.len());
        prop_assert_eq!(s.b.len(), b.len());
        prop_assert!(is_feasible(&s.instance, &s.a).unwrap());
        prop_assert!(is_feasible(&s.instance, &s.b).unwrap());
        prop_assert_eq!(s.trace.remap(&a), s.a);
        let (dp, dm) = inst.cap_totals();
        prop_assert!(s.trace.events.len() <= (dp + dm) as usize + inst.num_vertices());
    }

    #[test]
    fn ratio_order_matches_floats(a in 0u64..50, b in 1u64..50, c in 0u64..50, d in 1u64..50) {
        let (x, y) = (Ratio::new(a, b), Ratio::new(c, d));
        let (fx, fy) = (a as f64 / b as f64, c as f64 / d as f64);
        prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
        let (num, den) = x.parts();
        prop_assert_eq!(num as f64 / den as f64, fx);
    }
}
