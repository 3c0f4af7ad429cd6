use hcover::exact::{brute_force_max_cover, opt_capacitated_cover, OracleBudget};
use hcover::experiments::{flow_instance, ratio_instance};
use hcover::flowcheck::{build_network, is_feasible, marginal_gain, max_cover_value, NodeRole};
use hcover::generate::{random_cover, CoverParams};
use hcover::setsystem::{cover_cost, family_cost, is_complete, validate_cover};
use hcover::wolsey::{solve_capacitated, solve_uncapacitated};
use hcover::{AssignmentCover, Cost, SetCoverInstance, Violation};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = SetCoverInstance> {
    (1usize..9, 1usize..7, 1u32..4, 0.2f64..0.8, any::<u64>()).prop_map(|(n, m, k, density, seed)| {
        let params = CoverParams { n, m, capacity: (1, k), cost: (0, 9), density };
        random_cover(&params, seed).unwrap()
    })
}

fn family(m: usize, mask: u64) -> Vec<usize> {
    (0..m).filter(|i| mask >> i & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn witness_is_valid_and_sized(inst in instance(), mask in any::<u64>()) {
        let fam = family(inst.n_sets(), mask);
        let (value, witness) = max_cover_value(&inst, &fam).unwrap();
        prop_assert!(validate_cover(&inst, &witness).unwrap().is_valid());
        prop_assert_eq!(witness.n_assigned(), value);
        prop_assert!(witness.chosen().iter().all(|s| fam.contains(s)));
        let reach: usize = fam.iter().map(|&s| inst.sets()[s].usable()).sum();
        prop_assert!(value <= inst.n_elements().min(reach));
        prop_assert_eq!(value, brute_force_max_cover(&inst, &fam).unwrap());
    }

    #[test]
    fn flow_is_monotone_and_bounded(inst in instance(), mask in any::<u64>(), s in 0usize..6) {
        let s = s % inst.n_sets();
        let fam = family(inst.n_sets(), mask);
        let base = max_cover_value(&inst, &fam).unwrap().0;
        let mut with = fam.clone();
        with.push(s);
        let more = max_cover_value(&inst, &with).unwrap().0;
        prop_assert!(base <= more && more <= base + inst.sets()[s].usable());
        prop_assert_eq!(marginal_gain(&inst, &fam, s).unwrap(), more - base);
    }

    #[test]
    fn flow_conserved_at_internal_nodes(inst in instance(), mask in any::<u64>()) {
        let net = build_network(&inst, &family(inst.n_sets(), mask)).unwrap();
        let flow = net.max_flow();
        let mut balance = vec![0i64; net.node_count()];
        for (arc, &f) in net.arcs.iter().zip(&flow.arc_flow) {
            prop_assert!(f <= arc.capacity);
            balance[arc.from] -= f as i64;
            balance[arc.to] += f as i64;
        }
        for (v, role) in net.roles.iter().enumerate() {
            match role {
                NodeRole::Source => prop_assert_eq!(balance[v], -(flow.value as i64)),
                NodeRole::Sink => prop_assert_eq!(balance[v], flow.value as i64),
                _ => prop_assert_eq!(balance[v], 0),
            }
        }
    }

    #[test]
    fn injected_violations_are_detected(inst in instance(), mask in any::<u64>(), pick in any::<usize>()) {
        let fam = family(inst.n_sets(), mask);
        let (_, valid) = max_cover_value(&inst, &fam).unwrap();
        prop_assert!(validate_cover(&inst, &valid).unwrap().is_valid());
        let n = inst.n_elements();

        // Membership: a chosen set paired with an element it lacks.
        if let Some(s) = fam.iter().copied().find(|&s| inst.sets()[s].members.len() < n) {
            let e = (0..n).find(|&e| !inst.sets()[s].contains(e)).unwrap();
            let mut bad = valid.clone();
            bad.assign(e, s);
            let report = validate_cover(&inst, &bad).unwrap();
            let found = report.violations.contains(&Violation::NotMember { element: e, set: s });
            prop_assert!(found);
        }

        // Capacity: one more element than the set may serve.
        let s = pick % inst.n_sets();
        let k = inst.sets()[s].capacity as usize;
        let pairs = (0..=k).map(|i| (i % n, s));
        let mut dup_ok = AssignmentCover::from_parts([s], pairs);
        let report = validate_cover(&inst, &dup_ok).unwrap();
        let found = report.violations.iter().any(|v| matches!(v, Violation::OverCapacity { set, .. } if *set == s));
        prop_assert!(found);

        // Duplicate: an element assigned twice.
        dup_ok = valid.clone();
        if let Some(&(e, s)) = valid.pairs().first() {
            dup_ok.assign(e, s);
            let report = validate_cover(&inst, &dup_ok).unwrap();
            let found = report.violations.iter().any(|v| matches!(v, Violation::DuplicateAssignment { element, .. } if *element == e));
            prop_assert!(found);
        }

        // Family: a pair whose set was never chosen.
        if let Some(s) = (0..inst.n_sets()).find(|s| !valid.chosen().contains(s)) {
            let mut bad = valid.clone();
            bad.assign(pick % n, s);
            let report = validate_cover(&inst, &bad).unwrap();
            let found = report.violations.iter().any(|v| matches!(v, Violation::NotChosen { set, .. } if *set == s));
            prop_assert!(found);
        }
    }

    #[test]
    fn cost_is_monotone(inst in instance(), mask in any::<u64>(), s in 0usize..6) {
        let s = s % inst.n_sets();
        let fam = family(inst.n_sets(), mask);
        let mut cov = AssignmentCover::from_parts(fam.iter().copied(), []);
        let before = cover_cost(&inst, &cov).unwrap();
        cov.choose(s);
        prop_assert!(cover_cost(&inst, &cov).unwrap() >= before);
    }

    #[test]
    fn greedy_agrees_with_classic_when_capacities_are_sizes(inst in instance()) {
        let sized = inst.with_capacities_as_sizes();
        match (solve_capacitated(&sized), solve_uncapacitated(&inst)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.chosen_sequence(), b.chosen_sequence());
                prop_assert_eq!(a.cost, b.cost);
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "disagree: {:?} vs {:?}", a.is_ok(), b.is_ok()),
        }
    }

    #[test]
    fn greedy_trace_is_consistent(inst in instance()) {
        let Ok(trace) = solve_capacitated(&inst) else {
            prop_assert!(!is_feasible(&inst));
            return Ok(());
        };
        prop_assert!(is_complete(&inst, &trace.cover));
        prop_assert!(validate_cover(&inst, &trace.cover).unwrap().is_valid());
        prop_assert!(trace.steps.len() <= inst.n_sets().min(inst.n_elements()));
        let mut prefix = Vec::new();
        let mut covered = 0;
        for step in &trace.steps {
            prop_assert_eq!(step.gain, marginal_gain(&inst, &prefix, step.set).unwrap());
            prop_assert!(step.covered > covered);
            covered = step.covered;
            prefix.push(step.set);
        }
        prop_assert_eq!(covered, inst.n_elements());
        prop_assert_eq!(trace.cost, family_cost(&inst, prefix.iter().copied()).unwrap());
        let opt = opt_capacitated_cover(&inst, &OracleBudget::default()).unwrap();
        prop_assert!(opt.cost <= trace.cost);
    }
}

#[test]
fn infeasible_greedy_reports_best_flow() {
    for seed in 0..300 {
        let inst = flow_instance(seed).unwrap();
        match solve_capacitated(&inst) {
            Ok(_) => assert!(is_feasible(&inst)),
            Err(hcover::Error::Infeasible { best, .. }) => {
                assert!(!is_feasible(&inst));
                assert_eq!(best, hcover::flowcheck::max_value(&inst));
            }
            Err(e) => panic!("unexpected {e}"),
        }
    }
}

#[test]
fn optimum_never_beaten_by_feasible_families() {
    for seed in 0..60 {
        let inst = ratio_instance(seed).unwrap();
        let Ok(opt) = opt_capacitated_cover(&inst, &OracleBudget::default()) else { continue };
        for mask in 0u64..1 << inst.n_sets() {
            let fam = family(inst.n_sets(), mask);
            if max_cover_value(&inst, &fam).unwrap().0 == inst.n_elements() {
                assert!(opt.cost <= family_cost(&inst, fam.iter().copied()).unwrap());
            }
        }
    }
}

#[test]
fn zero_cost_sets_terminate() {
    let params = CoverParams { n: 8, m: 6, capacity: (1, 3), cost: (0, 0), density: 0.6 };
    for seed in 0..50 {
        let inst = random_cover(&params, seed).unwrap();
        if let Ok(trace) = solve_capacitated(&inst) {
            assert_eq!(trace.cost, Cost::ZERO);
        }
    }
}

#[test]
fn instance_and_cover_json_round_trip() {
    for seed in 0..50 {
        let inst = ratio_instance(seed).unwrap();
        let text = inst.to_json();
        let back = SetCoverInstance::from_json(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.to_json(), text);
        if let Ok(trace) = solve_capacitated(&inst) {
            let cov = trace.cover.to_json();
            assert_eq!(AssignmentCover::from_json(&cov).unwrap().to_json(), cov);
        }
    }
}
