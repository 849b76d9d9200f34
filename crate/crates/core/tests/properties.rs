use perm3col::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(max_n: usize, banded: bool) -> impl Strategy<Value = GenConfig> {
    (2..=max_n, any::<u64>(), 0usize..3, 0usize..3, prop::option::of(2usize..6)).prop_map(
        move |(n, seed, d, r, band)| GenConfig {
            list_density: [0.4, 0.7, 1.0][d],
            precolour_rate: [0.0, 0.2, 0.5][r],
            band: band.filter(|_| banded),
            ..GenConfig::new(n, seed)
        },
    )
}

fn ordered(cfg: &GenConfig) -> Option<(Instance, Graph, MultiChainOrdering)> {
    let inst = gen_instance(cfg).unwrap();
    let (g, ord) = inst.ordering().unwrap();
    ord.odd_cycle().is_none().then_some((inst, g, ord))
}

/// Whether some proper list colouring uses only the pair of its layer.
fn oracle_admits(g: &Graph, ord: &MultiChainOrdering, lists: &ListMapping, q: &ColourAssignment) -> bool {
    let restricted = (0..g.n()).map(|v| lists.get(v).intersect(q.get(ord.layer_of(v)).unwrap().as_set())).collect();
    oracle_solve(g, &ListMapping::new(restricted)).unwrap().is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn feasible_verdicts_are_proper(cfg in config(120, true)) {
        let inst = gen_instance(&cfg).unwrap();
        if let Verdict::Feasible(c) = solve(&inst).unwrap() {
            prop_assert!(validate_proper_list_colouring(&inst.graph(), &inst.lists, &c).unwrap());
        }
    }

    #[test]
    fn permutation_layerings_are_multichain(cfg in config(200, true)) {
        let inst = gen_instance(&cfg).unwrap();
        let Source::Permutation(perm) = &inst.source else { unreachable!() };
        let g = graph_from_permutation(perm);
        let ord = build_multichain_ordering(&g, choose_root(perm).index()).unwrap();
        prop_assert!(is_multichain(&g, ord.layering()).unwrap());
        prop_assert!(check_orientation_lemmas(perm, ord.layering()));
    }

    #[test]
    fn colourings_use_two_colours_per_layer(cfg in config(10, false)) {
        let Some((inst, g, ord)) = ordered(&cfg) else { return Ok(()) };
        let mut worst = 0;
        oracle_enumerate(&g, &inst.lists, |c| {
            for layer in ord.layering().layers() {
                let used: ColourSet = layer.iter().map(|&v| c[v]).collect();
                worst = worst.max(used.len());
            }
        }).unwrap();
        prop_assert!(worst <= 2);
    }

    #[test]
    fn removed_pairs_lose_no_colouring(cfg in config(10, true)) {
        let Some((inst, g, ord)) = ordered(&cfg) else { return Ok(()) };
        if ord.k() == 0 {
            return Ok(());
        }
        let build = build_allowable_array(&g, &ord, &inst.lists, |_| None).unwrap();
        let realised = oracle_boundary_pairs(&g, &inst.lists, ord.layering().layers()).unwrap();
        for r in &build.removals {
            prop_assert!(!realised[r.boundary].contains(r.pair), "{:?} removed a realisable pair", r);
        }
    }

    #[test]
    fn sweep_order_does_not_change_the_array(cfg in config(40, true), order_seed in any::<u64>()) {
        let Some((inst, g, ord)) = ordered(&cfg) else { return Ok(()) };
        if ord.k() == 0 {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(order_seed);
        let k = ord.k();
        let shuffled = build_allowable_array(&g, &ord, &inst.lists, |_| {
            let mut order: Vec<usize> = (0..k).collect();
            order.shuffle(&mut rng);
            Some(order)
        }).unwrap();
        prop_assert_eq!(shuffled.array, generate_allowable_array(&g, &ord, &inst.lists).unwrap());
    }

    #[test]
    fn sweep_succeeds_exactly_when_no_chain_exists(cfg in config(12, true), q_seed in any::<u64>()) {
        let Some((inst, g, ord)) = ordered(&cfg) else { return Ok(()) };
        if ord.k() == 0 {
            return Ok(());
        }
        let a = generate_allowable_array(&g, &ord, &inst.lists).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(q_seed);
        let Some(q) = random_obeying_assignment(&mut rng, &a) else { return Ok(()) };
        prop_assert!(q.is_good(&ord, &inst.lists));
        let run = conservative_colouring(&g, &ord, &inst.lists, &q, 0, ord.k()).unwrap();
        let chain = find_quasi_bad_chain(&g, &ord, &inst.lists, &q).unwrap();
        prop_assert_eq!(run.success, chain.is_none());
        prop_assert_eq!(run.success, oracle_admits(&g, &ord, &inst.lists, &q));
        if run.success {
            prop_assert!(validate_proper_list_colouring(&g, &inst.lists, &run.colouring).unwrap());
        }
        for c in repair_candidates(&g, &ord, &inst.lists, &q).unwrap().unwrap_or_default() {
            prop_assert_eq!(check_quasi_bad_chain(&g, &ord, &inst.lists, &q, &c).unwrap(), None);
        }
        let (traced, _) = collect_quasi_bad_chains(&g, &ord, &inst.lists, &q).unwrap();
        for c in traced {
            prop_assert_eq!(check_quasi_bad_chain(&g, &ord, &inst.lists, &q, &c).unwrap(), None);
        }
    }

    #[test]
    fn repairs_lower_the_highest_chain_end(cfg in config(60, true)) {
        let Some((inst, g, ord)) = ordered(&cfg) else { return Ok(()) };
        if ord.k() == 0 {
            return Ok(());
        }
        let a = generate_allowable_array(&g, &ord, &inst.lists).unwrap();
        if has_empty_entry(&a).is_some() {
            return Ok(());
        }
        let q = extract_assignment(&a).unwrap();
        let (fixed, repairs) = eliminate_all_chains_traced(&g, &ord, &inst.lists, &a, &q).unwrap();
        prop_assert!(repairs.len() <= 6 * ord.k());
        for pair in repairs.windows(2) {
            prop_assert!(pair[1].chain.l() < pair[0].chain.l());
        }
        prop_assert!(a.is_obeyed_by(&fixed));
        prop_assert_eq!(find_quasi_bad_chain(&g, &ord, &inst.lists, &fixed).unwrap(), None);
    }

    #[test]
    fn instance_text_round_trips(cfg in config(30, true)) {
        let inst = gen_instance(&cfg).unwrap();
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back.lists, &inst.lists);
        prop_assert_eq!(write_instance(&back), text);
        if let Verdict::Feasible(c) = solve(&inst).unwrap() {
            let out = write_verdict(&Verdict::Feasible(c.clone()));
            prop_assert_eq!(parse_colouring(&out, inst.n()).unwrap(), c);
        }
    }
}
