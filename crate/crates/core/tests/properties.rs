use proptest::prelude::*;
use xseries::construct::catalog;
use xseries::iso::is_isomorphic;
use xseries::series::{frattini_series, x_series};
use xseries::subgroups::{intersect_layer, SubgroupCache};
use xseries::verify::{oracle_layer, run_entries, run_suite, sweep_entries, sweep_groups, CheckId, Outcome};
use xseries::{build, FiniteGroup, GroupExpr, Guards};

fn group(src: &str) -> FiniteGroup {
    build(&src.parse::<GroupExpr>().unwrap()).unwrap()
}

fn small_group() -> impl Strategy<Value = String> {
    prop_oneof![
        (1u32..=5).prop_map(|k| format!("C{}", 1u64 << k)),
        prop::sample::select(vec!["Q8", "D8", "D16", "Q16", "SD16", "M16", "Heis3", "C9", "C27"]).prop_map(String::from),
        prop::sample::select(vec!["sd(4,4,3)", "sd(8,2,3)", "sd(8,2,5)", "sd(9,3,4)", "wr(C2,2)", "wr(C3,3)"]).prop_map(String::from),
        (1u32..=3, 1u32..=3).prop_map(|(a, b)| format!("C{} x C{}", 1u64 << a, 1u64 << b)),
        (1u32..=2).prop_map(|a| format!("C{} x Q8", 1u64 << a)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn x_terms_are_intersections_of_oracle_layers(src in small_group()) {
        let g = group(&src);
        let guards = Guards::default();
        prop_assume!(g.order() <= guards.oracle_max_order);
        let cache = SubgroupCache::new(&g);
        for i in 0..=g.n() {
            let want = intersect_layer(&oracle_layer(&g, i, &guards).unwrap());
            prop_assert_eq!(cache.x(&g.full(), i), want, "{} at i = {}", src, i);
        }
    }

    #[test]
    fn x_series_descends_to_one_above_frattini_series(src in small_group()) {
        let g = group(&src);
        let cache = SubgroupCache::new(&g);
        let xs = x_series(&cache);
        let fs = frattini_series(&g, &g.full());
        prop_assert_eq!(xs.orders().last().copied(), Some(1));
        for w in xs.orders().windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
        for i in 0..xs.orders().len().min(fs.orders().len()) {
            prop_assert!(fs.term(i).is_subgroup_of(&xs.term(i)), "{} at i = {}", src, i);
        }
    }

    #[test]
    fn generated_subgroup_matches_closure(src in small_group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let g = group(&src);
        let elems: Vec<usize> = picks.iter().map(|ix| ix.index(g.order())).collect();
        let names: Vec<String> = (0..g.order()).map(|x| g.element_name(x)).collect();
        let index_token = |x: usize| if names.contains(&x.to_string()) { names[x].clone() } else { x.to_string() };
        let by_index = elems.iter().map(|&x| index_token(x)).collect::<Vec<_>>().join(",");
        let by_name = elems.iter().map(|&x| g.element_name(x)).collect::<Vec<_>>().join(", ");
        let want = g.closure(elems.iter().copied());
        prop_assert_eq!(g.parse_generated(&by_index).unwrap(), want);
        prop_assert_eq!(g.parse_generated(&by_name).unwrap(), want);
    }
}

#[test]
fn order_eight_sweep_has_every_group() {
    let groups = sweep_groups(&[(2, 8)], &Guards::default());
    let eights: Vec<&FiniteGroup> = groups.iter().map(|(_, g)| g).filter(|g| g.order() == 8).collect();
    assert_eq!(eights.len(), 5);
    for src in ["C8", "C4 x C2", "C2 x C2 x C2", "D8", "Q8"] {
        let want = group(src);
        let hits = eights.iter().filter(|g| is_isomorphic(g, &want).unwrap().is_some()).count();
        assert_eq!(hits, 1, "{src}");
    }
}

#[test]
fn trivial_sweep_is_one_report() {
    let entries = sweep_entries(&[(2, 1)], &Guards::default());
    let reports = run_entries(&entries, None, &Guards::default());
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].order, 1);
    assert!(reports[0].results.iter().all(|c| !c.outcome.is_fail()));
}

#[test]
fn sweep_is_deterministic() {
    let guards = Guards::default();
    let outcomes = || -> Vec<(String, Vec<(CheckId, Outcome)>)> {
        let entries = sweep_entries(&[(2, 16), (3, 27)], &guards);
        run_entries(&entries, None, &guards)
            .into_iter()
            .map(|r| (r.group, r.results.into_iter().map(|c| (c.id, c.outcome)).collect()))
            .collect()
    };
    assert_eq!(outcomes(), outcomes());
}

#[test]
fn odd_wreath_is_frattini_noncentral() {
    let expr: GroupExpr = "wr(C3,3)".parse().unwrap();
    let g = build(&expr).unwrap();
    let r = run_suite(&expr, &g, &[CheckId::FrattiniCommutatorOddCounterexample, CheckId::FrattiniCommutator2Group], None, &Guards::default());
    assert!(r.result(CheckId::FrattiniCommutatorOddCounterexample).unwrap().outcome.is_pass());
    assert!(r.result(CheckId::FrattiniCommutator2Group).unwrap().outcome.is_skipped());
}

#[test]
fn zero_budget_gives_partial_report() {
    let expr: GroupExpr = "C2 x C2 x C2 x C2".parse().unwrap();
    let g = build(&expr).unwrap();
    let r = run_suite(&expr, &g, CheckId::ALL, Some(std::time::Duration::ZERO), &Guards::default());
    assert!(r.partial);
    assert!(r.skipped() > 0);
    assert_eq!(r.failed(), 0);
}

#[test]
fn dihedral_x_series_is_frattini_series() {
    for src in ["D8", "D16", "D32", "D64"] {
        let g = catalog(src).unwrap();
        let cache = SubgroupCache::new(&g);
        assert_eq!(x_series(&cache).orders(), frattini_series(&g, &g.full()).orders(), "{src}");
    }
}
