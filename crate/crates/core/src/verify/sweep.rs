//! Constructible groups up to an order bound, deduplicated up to
//! isomorphism, and the suite run over all of them.

use std::collections::HashMap;
use std::time::Duration;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::{run_suite, CheckId, VerificationReport};
use crate::config::{Guards, ISO_HARD_CAP};
use crate::construct::{build_with, catalog_names, BuildOptions, GroupExpr};
use crate::group::FiniteGroup;
use crate::iso::{fingerprint, is_isomorphic_with, Fingerprint};

/// A group to verify and the checks to run on it.
#[derive(Clone, Debug)]
pub struct SweepEntry {
    pub expr: GroupExpr,
    pub group: FiniteGroup,
    pub checks: Vec<CheckId>,
}

struct Dedup {
    guards: Guards,
    seen: HashMap<Fingerprint, Vec<usize>>,
    out: Vec<(GroupExpr, FiniteGroup)>,
}

impl Dedup {
    fn new(guards: &Guards) -> Self {
        Self {
            guards: Guards {
                iso_max_order: ISO_HARD_CAP,
                ..*guards
            },
            seen: HashMap::new(),
            out: Vec::new(),
        }
    }

    fn offer(&mut self, expr: GroupExpr, g: FiniteGroup) -> bool {
        let fp = fingerprint(&g);
        let bucket = self.seen.entry(fp).or_default();
        for &k in bucket.iter() {
            if matches!(is_isomorphic_with(&self.out[k].1, &g, &self.guards), Ok(Some(_))) {
                return false;
            }
        }
        bucket.push(self.out.len());
        self.out.push((expr, g));
        true
    }
}

fn powers(p: u64, max_order: usize) -> impl Iterator<Item = u64> {
    std::iter::successors(Some(p), move |&q| Some(q * p)).take_while(move |&q| q as usize <= max_order)
}

fn try_build(expr: &GroupExpr, max_order: usize, guards: &Guards) -> Option<FiniteGroup> {
    let opts = BuildOptions {
        max_order: max_order.min(guards.build_max_order),
    };
    build_with(expr, &opts).ok()
}

fn semidirect_exprs(p: u64, max_order: usize) -> Vec<GroupExpr> {
    let mut out = Vec::new();
    for n in powers(p, max_order) {
        for m in powers(p, max_order / n as usize) {
            for k in 2..n {
                if k % p == 0 {
                    continue;
                }
                let mut pow = 1u64;
                for _ in 0..m {
                    pow = pow * k % n;
                }
                if pow == 1 {
                    out.push(GroupExpr::CyclicSemidirect { n, m, k: k as i64 });
                }
            }
        }
    }
    out
}

/// Distinct constructible `p`-groups of order at most `max_order`, named by
/// the first construction that produced them: cyclic, catalog, products,
/// semidirect, wreath.
fn groups_for_prime(p: u32, max_order: usize, guards: &Guards) -> Vec<(GroupExpr, FiniteGroup)> {
    let pp = u64::from(p);
    let cyclic: Vec<GroupExpr> = powers(pp, max_order).map(GroupExpr::Cyclic).collect();
    let named: Vec<GroupExpr> = catalog_names()
        .iter()
        .map(|(n, _)| GroupExpr::Catalog((*n).to_string()))
        .collect();
    let sd = semidirect_exprs(pp, max_order);
    let mut wr = Vec::new();
    for base in powers(pp, max_order).map(GroupExpr::Cyclic).chain(named.iter().cloned()) {
        wr.push(GroupExpr::wreath(base, p));
    }
    for i in 2..=6 {
        wr.push(GroupExpr::IteratedWreath { p, i });
    }

    let build_all = |exprs: &[GroupExpr]| -> Vec<(GroupExpr, FiniteGroup)> {
        exprs
            .iter()
            .filter_map(|e| {
                let g = try_build(e, max_order, guards)?;
                (g.p() == p && g.order() > 1).then(|| (e.clone(), g))
            })
            .collect()
    };
    let cyclic = build_all(&cyclic);
    let named = build_all(&named);
    let sd = build_all(&sd);
    let wr = build_all(&wr);

    let mut atoms = Dedup::new(guards);
    for (e, g) in cyclic.iter().chain(&named).chain(&sd).chain(&wr) {
        if g.order() * p as usize <= max_order {
            atoms.offer(e.clone(), g.clone());
        }
    }
    let pool: Vec<(GroupExpr, usize)> = atoms.out.iter().map(|(e, g)| (e.clone(), g.order())).collect();
    let mut products = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    product_multisets(&pool, max_order, 0, 1, &mut stack, &mut products);
    let products = build_all(&products);

    let mut all = Dedup::new(guards);
    for (e, g) in cyclic.into_iter().chain(named).chain(products).chain(sd).chain(wr) {
        all.offer(e, g);
    }
    all.out
}

fn product_multisets(
    pool: &[(GroupExpr, usize)],
    max_order: usize,
    from: usize,
    order: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<GroupExpr>,
) {
    if stack.len() >= 2 {
        let mut it = stack.iter().map(|&k| pool[k].0.clone());
        let first = it.next().expect("nonempty");
        out.push(it.fold(first, GroupExpr::product));
    }
    for k in from..pool.len() {
        let o = order * pool[k].1;
        if o <= max_order {
            stack.push(k);
            product_multisets(pool, max_order, k, o, stack, out);
            stack.pop();
        }
    }
}

/// The trivial group followed by every constructible group of prime-power
/// order at most the cap given for its prime.
pub fn sweep_groups(caps: &[(u32, usize)], guards: &Guards) -> Vec<(GroupExpr, FiniteGroup)> {
    let mut out = Vec::new();
    if caps.iter().any(|&(_, c)| c >= 1) {
        out.push((GroupExpr::Cyclic(1), FiniteGroup::trivial(2)));
    }
    for &(p, cap) in caps {
        out.extend(groups_for_prime(p, cap, guards));
    }
    out
}

pub fn sweep_entries(caps: &[(u32, usize)], guards: &Guards) -> Vec<SweepEntry> {
    sweep_groups(caps, guards)
        .into_iter()
        .map(|(expr, group)| SweepEntry {
            expr,
            group,
            checks: CheckId::ALL.to_vec(),
        })
        .collect()
}

/// 2-groups up to 64, 3-groups up to 81, and `L(2,3)` for the wreath
/// optimality check.
pub fn default_entries(guards: &Guards) -> Vec<SweepEntry> {
    let mut entries = sweep_entries(&[(2, 64), (3, 81)], guards);
    let l = GroupExpr::IteratedWreath { p: 2, i: 3 };
    if let Some(group) = try_build(&l, 128, guards) {
        entries.push(SweepEntry {
            expr: l,
            group,
            checks: vec![CheckId::WreathOptimality, CheckId::LowerCentralInX],
        });
    }
    entries
}

/// Runs each entry's checks; `budget` applies to each group separately.
pub fn run_entries(entries: &[SweepEntry], budget: Option<Duration>, guards: &Guards) -> Vec<VerificationReport> {
    let run = |e: &SweepEntry| run_suite(&e.expr, &e.group, &e.checks, budget, guards);
    #[cfg(feature = "parallel")]
    return entries.par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    entries.iter().map(run).collect()
}

/// Every check on every constructible group of order at most `max_order`
/// for the primes 2, 3, 5 and 7.
pub fn catalog_sweep(max_order: usize, budget: Option<Duration>, guards: &Guards) -> Vec<VerificationReport> {
    let caps: Vec<(u32, usize)> = [2, 3, 5, 7].iter().map(|&p| (p, max_order)).collect();
    run_entries(&sweep_entries(&caps, guards), budget, guards)
}

pub fn default_sweep(budget: Option<Duration>, guards: &Guards) -> Vec<VerificationReport> {
    run_entries(&default_entries(guards), budget, guards)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_eight_has_five_groups() {
        let gs = sweep_groups(&[(2, 8)], &Guards::default());
        let eights: Vec<String> = gs.iter().filter(|(_, g)| g.order() == 8).map(|(e, _)| e.to_string()).collect();
        assert_eq!(eights.len(), 5, "{eights:?}");
    }

    #[test]
    fn order_sixteen_count() {
        let gs = sweep_groups(&[(2, 16)], &Guards::default());
        let n = gs.iter().filter(|(_, g)| g.order() == 16).count();
        assert!(n >= 12, "{n}");
    }

    #[test]
    fn trivial_only() {
        let gs = sweep_groups(&[(2, 1), (3, 1)], &Guards::default());
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].1.order(), 1);
    }
}
