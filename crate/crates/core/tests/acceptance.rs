//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails. Runs with `cargo test -p xseries --test acceptance`.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use xseries::complements::{agemo_condition_in, find_complements, has_complement_in};
use xseries::construct::catalog;
use xseries::iso::is_isomorphic;
use xseries::series::{nilpotency_class, omega1, x_of_quotient_check};
use xseries::subgroups::SubgroupCache;
use xseries::verify::{compare_with_oracle, default_sweep, sweep_groups, CheckId};
use xseries::{build, Error, FiniteGroup, GroupExpr, Guards};

type Verdict = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Verdict);

fn group(src: &str) -> FiniteGroup {
    build(&src.parse::<GroupExpr>().expect("expression parses")).expect("group builds")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn x_series_of_script_g() -> Verdict {
    let g = group("sd(4,4,3)");
    let cache = SubgroupCache::new(&g);
    let full = g.full();
    let (x1, x2) = (cache.x(&full, 1), cache.x(&full, 2));
    ensure(g.order() == 16, format!("order {}", g.order()))?;
    ensure(x1.order() == 4, format!("|X_1| = {}", x1.order()))?;
    ensure(x2.is_trivial(), format!("|X_2| = {}", x2.order()))?;
    Ok("|X_1| = 4, X_2 = 1".into())
}

fn q8_center() -> Verdict {
    let g = catalog("Q8").map_err(|e| e.to_string())?;
    let cache = SubgroupCache::new(&g);
    let full = g.full();
    let z = g.center();
    let (x1, x2) = (cache.x(&full, 1), cache.x(&full, 2));
    ensure(z.order() == 2, format!("|Z| = {}", z.order()))?;
    ensure(x1 == z && x2 == z, format!("|X_1| = {}, |X_2| = {}", x1.order(), x2.order()))?;
    Ok("X_1 = X_2 = Z(Q8), order 2".into())
}

fn quotient_counterexample() -> Verdict {
    let g = group("sd(4,4,3)");
    let n = g.parse_generated("b^2 a^2").map_err(|e| e.to_string())?;
    ensure(n.order() == 2, format!("|N| = {}", n.order()))?;
    let cache = SubgroupCache::new(&g);
    let cmp = x_of_quotient_check(&cache, &n).map_err(|e| e.to_string())?;
    let q8 = catalog("Q8").map_err(|e| e.to_string())?;
    ensure(
        is_isomorphic(&cmp.quotient, &q8).map_err(|e| e.to_string())?.is_some(),
        "G/N is not isomorphic to Q8",
    )?;
    let row = &cmp.rows[2];
    ensure(row.of_quotient.order() == 2, format!("|X_2(G/N)| = {}", row.of_quotient.order()))?;
    ensure(row.image.order() == 1, format!("|X_2(G)N/N| = {}", row.image.order()))?;
    Ok("G/N ≅ Q8, |X_2(G/N)| = 2, |X_2(G)N/N| = 1".into())
}

fn wreath_optimality() -> Verdict {
    let mut seen = Vec::new();
    for (src, i, class, order) in [("L(2,1)", 1, 1, 2), ("L(2,2)", 2, 2, 8), ("L(2,3)", 3, 4, 128), ("L(3,2)", 2, 3, 81)] {
        let g = group(src);
        ensure(g.order() == order, format!("|{src}| = {}", g.order()))?;
        let cache = SubgroupCache::new(&g);
        let full = g.full();
        let xi = cache.x(&full, i);
        ensure(xi.is_trivial(), format!("X_{i}({src}) has order {}", xi.order()))?;
        if i > 1 {
            let prev = cache.x(&full, i - 1);
            ensure(!prev.is_trivial(), format!("X_{}({src}) is already trivial", i - 1))?;
        }
        let c = nilpotency_class(&g, &full);
        ensure(c == class, format!("{src} has class {c}, expected {class}"))?;
        seen.push(format!("{src}: X_{i} = 1, class {c}"));
    }
    Ok(seen.join("; "))
}

fn catalog_sweep_has_no_failures() -> Verdict {
    let guards = Guards::default();
    let reports = default_sweep(None, &guards);
    let failures: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| format!("{} on {}: {}", c.id, r.group, c.outcome.text())))
        .collect();
    if !failures.is_empty() {
        return Err(format!("{} failures, first: {}", failures.len(), failures[0]));
    }
    let unexercised: Vec<&str> = CheckId::ALL
        .iter()
        .filter(|id| !reports.iter().any(|r| r.result(**id).is_some_and(|c| c.outcome.is_pass())))
        .map(|id| id.slug())
        .collect();
    ensure(unexercised.is_empty(), format!("never passed on any group: {unexercised:?}"))?;
    for (p, max) in [(2, 64), (3, 81)] {
        ensure(
            reports.iter().any(|r| r.p == p && r.order == max),
            format!("no group of order {max} in the sweep"),
        )?;
    }
    let checks: usize = reports.iter().map(|r| r.passed() + r.failed()).sum();
    Ok(format!("{} groups, {checks} checks run, 0 failures, all {} checks exercised", reports.len(), CheckId::ALL.len()))
}

fn counterexample_witnesses() -> Verdict {
    let w = group("wr(C3,3)");
    let cache = SubgroupCache::new(&w);
    let full = w.full();
    ensure(w.order() == 81, format!("|C3 wr C3| = {}", w.order()))?;
    ensure(cache.x(&full, 2).is_trivial(), "X_2(C3 wr C3) is not trivial")?;
    let phi = cache.frattini(&full);
    ensure(!w.commutator_subgroup(&full, &phi).is_trivial(), "[G, Φ(G)] is trivial in C3 wr C3")?;

    let h = group("C4 x sd(4,4,3)");
    let cache = SubgroupCache::new(&h);
    let full = h.full();
    let phi = cache.frattini(&full);
    ensure(omega1(&h, &full) == phi, "Ω_1(ℋ) differs from Φ(ℋ)")?;
    let m = cache
        .maximals(&full)
        .iter()
        .find(|m| cache.frattini(m) == phi && find_complements(&cache, m).complements.is_empty())
        .copied();
    ensure(m.is_some(), "every maximal M with Φ(M) = Φ(ℋ) has a complement")?;

    let e = catalog("Heis3").map_err(|e| e.to_string())?;
    let cache = SubgroupCache::new(&e);
    let full = e.full();
    let lat = cache.lattice(&Guards::default(), false).map_err(|e| e.to_string())?;
    let bad = lat.nodes.iter().find(|a| !agemo_condition_in(&cache, &full, a).holds);
    ensure(bad.is_none(), "some subgroup of Heis3 fails the agemo equalities")?;
    let phi = cache.frattini(&full);
    let uncomplemented = lat
        .nodes
        .iter()
        .filter(|c| c.order() == 3 && c.is_subgroup_of(&phi) && !has_complement_in(&cache, &full, c))
        .count();
    ensure(uncomplemented > 0, "every order-3 subgroup of Φ(Heis3) has a complement")?;
    Ok(format!(
        "C3 wr C3: X_2 = 1, [G,Φ] ≠ 1; C4 x sd(4,4,3): uncomplemented maximal found; Heis3: {} subgroups satisfy the agemo equalities, {uncomplemented} order-3 subgroup of Φ uncomplemented",
        lat.len()
    ))
}

fn oracle_equivalence() -> Verdict {
    let guards = Guards::default();
    let groups = sweep_groups(&[(2, 64), (3, 81)], &guards);
    let mut compared = 0;
    let mut maximals = 0;
    for (expr, g) in groups.iter().filter(|(_, g)| g.order() <= 64) {
        let cache = SubgroupCache::new(g);
        let cmp = compare_with_oracle(&cache, &guards).map_err(|e| format!("{expr}: {e}"))?;
        if let Some(m) = cmp.mismatch {
            return Err(format!("{expr}: {m}"));
        }
        compared += 1;
        maximals += cmp.maximals_checked;
    }
    ensure(compared > 50, format!("only {compared} groups compared"))?;
    Ok(format!("{compared} groups agree on every layer; {maximals} maximal-subgroup sets agree"))
}

fn order_cap_rejects_l24() -> Verdict {
    let expr: GroupExpr = "L(2,4)".parse().map_err(|e: xseries::construct::dsl::ParseError| e.diagnostic())?;
    match build(&expr) {
        Err(Error::OrderCapExceeded { .. }) => Ok("L(2,4) has order 2^15 and is rejected by the 512 order cap".into()),
        Err(e) => Err(format!("unexpected error: {e}")),
        Ok(g) => Err(format!("built a group of order {}", g.order())),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 X-series of sd(4,4,3)", Duration::from_secs(1), x_series_of_script_g),
        ("2 Q8 X_1 = X_2 = Z", Duration::from_secs(1), q8_center),
        ("3 quotient counterexample", Duration::from_secs(1), quotient_counterexample),
        ("4 wreath optimality", Duration::from_secs(120), wreath_optimality),
        ("5 catalog sweep", Duration::from_secs(600), catalog_sweep_has_no_failures),
        ("6 counterexample witnesses", Duration::from_secs(60), counterexample_witnesses),
        ("7 oracle equivalence", Duration::from_secs(180), oracle_equivalence),
        ("- order cap limit", Duration::from_secs(1), order_cap_rejects_l24),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let verdict = match verdict {
            Ok(_) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            v => v,
        };
        match verdict {
            Ok(detail) => println!("PASS  {name:<28} {took:>10.2?}  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<28} {took:>10.2?}  {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
