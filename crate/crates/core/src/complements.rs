//! Complement search and the subgroup conditions that guarantee
//! complements: the X- and W-conditions, agemo purity and Frattini
//! avoidance.
//!
//! Every query takes an ambient subgroup `K` of the cached group; the
//! plain variants use the whole group.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{agemo, good_term, GoodVariant};
use crate::set::{log_p, Subgroup};
use crate::subgroups::SubgroupCache;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConditionKind {
    /// `A ∩ X_i(K) = X_i(A)` for `i ≥ 0`.
    XCondition,
    /// `A ∩ W_i(K) = W_i(A)` for `i ≥ 1`.
    WCondition(GoodVariant),
    /// `A ∩ ℧_i(K) = ℧_i(A)` for `i ≥ 0`.
    AgemoCondition,
    /// The agemo condition inside an abelian ambient group.
    Purity,
    /// `A` normal with `A ∩ Φ(K) = 1`.
    FrattiniAvoidance,
    None,
}

/// One index of a condition: orders of `A ∩ S_i(K)` and `S_i(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndexRow {
    pub index: u32,
    pub meet: usize,
    pub term: usize,
    pub holds: bool,
}

/// The least failing index with both sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    pub index: u32,
    pub meet: Subgroup,
    pub term: Subgroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub kind: ConditionKind,
    pub holds: bool,
    pub rows: Vec<IndexRow>,
    pub failure: Option<ConditionFailure>,
}

fn compare(
    kind: ConditionKind,
    indices: impl Iterator<Item = u32>,
    mut meet: impl FnMut(u32) -> Subgroup,
    mut term: impl FnMut(u32) -> Subgroup,
) -> ConditionCheck {
    let mut rows = Vec::new();
    let mut failure = None;
    for i in indices {
        let m = meet(i);
        let t = term(i);
        let holds = m == t;
        if !holds && failure.is_none() {
            failure = Some(ConditionFailure {
                index: i,
                meet: m,
                term: t,
            });
        }
        rows.push(IndexRow {
            index: i,
            meet: m.order(),
            term: t.order(),
            holds,
        });
    }
    ConditionCheck {
        kind,
        holds: failure.is_none(),
        rows,
        failure,
    }
}

fn depth(cache: &SubgroupCache<'_>, k: &Subgroup) -> u32 {
    k.log_order(cache.group().p())
}

pub fn x_condition(cache: &SubgroupCache<'_>, a: &Subgroup) -> ConditionCheck {
    x_condition_in(cache, &cache.full(), a)
}

/// `A ∩ X_i(K) = X_i(A)` for `0 ≤ i ≤ log_p |K|`.
pub fn x_condition_in(cache: &SubgroupCache<'_>, k: &Subgroup, a: &Subgroup) -> ConditionCheck {
    compare(
        ConditionKind::XCondition,
        0..=depth(cache, k),
        |i| a.meet(&cache.x(k, i)),
        |i| cache.x(a, i),
    )
}

pub fn w_condition(cache: &SubgroupCache<'_>, a: &Subgroup, variant: GoodVariant) -> ConditionCheck {
    w_condition_in(cache, &cache.full(), a, variant)
}

/// `A ∩ W_i(K) = W_i(A)` for `1 ≤ i ≤ log_p |K|`.
pub fn w_condition_in(
    cache: &SubgroupCache<'_>,
    k: &Subgroup,
    a: &Subgroup,
    variant: GoodVariant,
) -> ConditionCheck {
    compare(
        ConditionKind::WCondition(variant),
        1..=depth(cache, k).max(1),
        |i| a.meet(&good_term(cache, k, variant, i)),
        |i| good_term(cache, a, variant, i),
    )
}

fn exponent_log(cache: &SubgroupCache<'_>, k: &Subgroup) -> u32 {
    let g = cache.group();
    let e = k.elements().map(|x| g.elem_order(x)).max().unwrap_or(1);
    log_p(e as usize, g.p())
}

/// `A ∩ ℧_i(K) = ℧_i(A)` for `0 ≤ i ≤ log_p exp(K)`.
pub fn agemo_condition_in(cache: &SubgroupCache<'_>, k: &Subgroup, a: &Subgroup) -> ConditionCheck {
    let g = cache.group();
    compare(
        ConditionKind::AgemoCondition,
        0..=exponent_log(cache, k),
        |i| a.meet(&agemo(g, k, i)),
        |i| agemo(g, a, i),
    )
}

pub fn is_pure(cache: &SubgroupCache<'_>, b: &Subgroup) -> Result<ConditionCheck> {
    is_pure_in(cache, &cache.full(), b)
}

/// Purity of `B` in the abelian ambient `K`, tested on prime-power
/// exponents.
pub fn is_pure_in(cache: &SubgroupCache<'_>, k: &Subgroup, b: &Subgroup) -> Result<ConditionCheck> {
    let g = cache.group();
    let gens = g.generators_of(k);
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            if g.mul(x, y) != g.mul(y, x) {
                return Err(Error::NotAbelian { x, y });
            }
        }
    }
    let mut check = agemo_condition_in(cache, k, b);
    check.kind = ConditionKind::Purity;
    Ok(check)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementReport {
    pub subject: Subgroup,
    pub ambient_order: usize,
    pub condition: ConditionKind,
    pub condition_holds: Option<bool>,
    pub failing_index: Option<u32>,
    pub rows: Vec<IndexRow>,
    /// All complements, in bitset order.
    pub complements: Vec<Subgroup>,
    /// Complements that are normal in the ambient group.
    pub normal_complements: Vec<Subgroup>,
}

impl ComplementReport {
    /// Attaches the outcome of a condition check.
    pub fn with_condition(mut self, check: &ConditionCheck) -> Self {
        self.condition = check.kind;
        self.condition_holds = Some(check.holds);
        self.failing_index = check.failure.map(|f| f.index);
        self.rows = check.rows.clone();
        self
    }
}

/// Complements of `A` inside `K`: members `T` of `pc_r(K)`, `|A| = p^r`,
/// with `A ∩ T = 1`.
pub fn complements_in(cache: &SubgroupCache<'_>, k: &Subgroup, a: &Subgroup) -> Vec<Subgroup> {
    let r = a.log_order(cache.group().p());
    cache
        .layer_members(k, r)
        .iter()
        .filter(|t| t.meets_trivially(a))
        .copied()
        .collect()
}

pub fn has_complement_in(cache: &SubgroupCache<'_>, k: &Subgroup, a: &Subgroup) -> bool {
    let r = a.log_order(cache.group().p());
    cache.layer_members(k, r).iter().any(|t| t.meets_trivially(a))
}

pub fn find_complements(cache: &SubgroupCache<'_>, a: &Subgroup) -> ComplementReport {
    find_complements_in(cache, &cache.full(), a)
}

pub fn find_complements_in(cache: &SubgroupCache<'_>, k: &Subgroup, a: &Subgroup) -> ComplementReport {
    let g = cache.group();
    let complements = complements_in(cache, k, a);
    let normal_complements = complements
        .iter()
        .filter(|t| g.is_normal_in(t, k))
        .copied()
        .collect();
    ComplementReport {
        subject: *a,
        ambient_order: k.order(),
        condition: ConditionKind::None,
        condition_holds: None,
        failing_index: None,
        rows: Vec::new(),
        complements,
        normal_complements,
    }
}

pub fn find_normal_complement_frattini_avoiding(cache: &SubgroupCache<'_>, a: &Subgroup) -> Result<Subgroup> {
    find_normal_complement_frattini_avoiding_in(cache, &cache.full(), a)
}

/// Normal complement of a normal `A` with `A ∩ Φ(K) = 1`, built by
/// splitting off one maximal subgroup at a time. An exhaustive scan of
/// normal complements backs up the construction.
pub fn find_normal_complement_frattini_avoiding_in(
    cache: &SubgroupCache<'_>,
    k: &Subgroup,
    a: &Subgroup,
) -> Result<Subgroup> {
    let g = cache.group();
    if !a.is_subgroup_of(k) {
        return Err(Error::PreconditionFailed("subgroup is not contained in the ambient group".into()));
    }
    if !g.is_normal_in(a, k) {
        return Err(Error::PreconditionFailed("subgroup is not normal".into()));
    }
    if !a.meets_trivially(&cache.frattini(k)) {
        return Err(Error::PreconditionFailed("subgroup meets the Frattini subgroup".into()));
    }
    let h = normal_complement_by_splitting(cache, k, a);
    if is_normal_complement(cache, k, a, &h) {
        return Ok(h);
    }
    complements_in(cache, k, a)
        .into_iter()
        .find(|t| g.is_normal_in(t, k))
        .ok_or(Error::NoNormalComplement)
}

/// The inductive construction alone: pick a maximal `M` of `K` not
/// containing `A`; if `D = A ∩ M` is trivial return `M`, otherwise split
/// `D` off `K` and then `A` off the result. Preconditions unchecked.
pub fn normal_complement_by_splitting(cache: &SubgroupCache<'_>, k: &Subgroup, a: &Subgroup) -> Subgroup {
    if a.is_trivial() {
        return *k;
    }
    let maximals = cache.maximals(k);
    let Some(m) = maximals.iter().find(|m| !a.is_subgroup_of(m)) else {
        return *k;
    };
    let d = a.meet(m);
    if d.is_trivial() {
        return *m;
    }
    let kd = normal_complement_by_splitting(cache, k, &d);
    normal_complement_by_splitting(cache, &kd, &a.meet(&kd))
}

pub fn is_normal_complement(cache: &SubgroupCache<'_>, k: &Subgroup, a: &Subgroup, h: &Subgroup) -> bool {
    h.is_subgroup_of(k)
        && a.meets_trivially(h)
        && a.order() * h.order() == k.order()
        && cache.group().is_normal_in(h, k)
}

/// One index of the checks for a subgroup `H` with normal complement `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConverseRow {
    pub index: u32,
    /// `H ∩ X_i(G) = X_i(H)`.
    pub intersection: bool,
    /// `X_i(N) X_i(H) ≤ X_i(G)`.
    pub lower: bool,
    /// `X_i(G) ≤ N X_i(H)`.
    pub upper: bool,
    /// `X_i(H)` complements `N ∩ X_i(G)` in `X_i(G)`.
    pub complements_in_x: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConverseReport {
    pub subject: Subgroup,
    pub normal_complement: Subgroup,
    pub holds: bool,
    pub rows: Vec<ConverseRow>,
}

/// For `H` with a normal complement `N` (supplied or found by scanning),
/// checks `H ∩ X_i(G) = X_i(H)`, `X_i(N)X_i(H) ≤ X_i(G) ≤ N X_i(H)` and
/// that `X_i(H)` complements `N ∩ X_i(G)` in `X_i(G)`.
pub fn converse_check(
    cache: &SubgroupCache<'_>,
    h: &Subgroup,
    n: Option<&Subgroup>,
) -> Result<ConverseReport> {
    let g = cache.group();
    let full = g.full();
    let n = match n {
        Some(n) => {
            if !is_normal_complement(cache, &full, h, n) {
                return Err(Error::PreconditionFailed(
                    "supplied subgroup is not a normal complement".into(),
                ));
            }
            *n
        }
        None => complements_in(cache, &full, h)
            .into_iter()
            .find(|t| g.is_normal_in(t, &full))
            .ok_or(Error::NoNormalComplement)?,
    };
    let rows: Vec<ConverseRow> = (0..=g.n())
        .map(|i| {
            let xg = cache.x(&full, i);
            let xh = cache.x(h, i);
            let xn = cache.x(&n, i);
            let n_meet = n.meet(&xg);
            ConverseRow {
                index: i,
                intersection: h.meet(&xg) == xh,
                lower: xn.is_subgroup_of(&xg) && xh.is_subgroup_of(&xg),
                upper: xg.is_subgroup_of(&g.join(&n, &xh)),
                complements_in_x: n_meet.meets_trivially(&xh)
                    && n_meet.order() * xh.order() == xg.order(),
            }
        })
        .collect();
    let holds = rows
        .iter()
        .all(|r| r.intersection && r.lower && r.upper && r.complements_in_x);
    Ok(ConverseReport {
        subject: *h,
        normal_complement: n,
        holds,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, GroupExpr};
    use crate::group::FiniteGroup;

    fn grp(s: &str) -> FiniteGroup {
        build(&s.parse::<GroupExpr>().unwrap()).unwrap()
    }

    #[test]
    fn complement_search() {
        let g = grp("sd(4,4,3)");
        let cache = SubgroupCache::new(&g);
        let trivial = find_complements(&cache, &Subgroup::trivial());
        assert_eq!(trivial.complements, vec![g.full()]);
        let a = g.closure([1]);
        let b = g.closure([4]);
        let r = find_complements(&cache, &a);
        assert!(r.complements.contains(&b));
        assert!(r.complements.iter().all(|t| t.order() == 4 && t.meets_trivially(&a)));
        let q = grp("Q8");
        let cache = SubgroupCache::new(&q);
        assert!(find_complements(&cache, &q.center()).complements.is_empty());
    }

    #[test]
    fn x_condition_examples() {
        let d = grp("D8");
        let cache = SubgroupCache::new(&d);
        assert!(x_condition(&cache, &d.full()).holds);
        assert!(x_condition(&cache, &d.closure([1])).holds);
        let q = grp("Q8");
        let cache = SubgroupCache::new(&q);
        let c4 = q.closure([1]);
        let check = x_condition(&cache, &c4);
        assert!(!check.holds);
        let f = check.failure.unwrap();
        assert_eq!((f.index, f.meet, f.term), (2, q.center(), Subgroup::trivial()));
    }

    #[test]
    fn w_condition_examples() {
        let q = grp("Q8");
        let cache = SubgroupCache::new(&q);
        assert!(w_condition(&cache, &Subgroup::trivial(), GoodVariant::Omega).holds);
        let check = w_condition(&cache, &q.closure([1]), GoodVariant::Omega);
        assert!(!check.holds);
    }

    #[test]
    fn purity_examples() {
        let g = grp("C4 x C2");
        let cache = SubgroupCache::new(&g);
        assert!(is_pure(&cache, &g.full()).unwrap().holds);
        // (a^2, 0) is index 4; the C2 factor is generated by (0, 1) = 1
        let b = g.closure([4]);
        let check = is_pure(&cache, &b).unwrap();
        assert!(!check.holds);
        assert_eq!(check.failure.unwrap().index, 1);
        assert!(is_pure(&cache, &g.closure([1])).unwrap().holds);
        let q = grp("Q8");
        let cache = SubgroupCache::new(&q);
        assert!(matches!(is_pure(&cache, &q.center()), Err(Error::NotAbelian { .. })));
    }

    #[test]
    fn frattini_avoiding_normal_complements() {
        let g = grp("C2 x C4");
        let cache = SubgroupCache::new(&g);
        assert_eq!(
            find_normal_complement_frattini_avoiding(&cache, &Subgroup::trivial()).unwrap(),
            g.full()
        );
        let a = g.closure([4]);
        let h = find_normal_complement_frattini_avoiding(&cache, &a).unwrap();
        assert_eq!(h.order(), 4);
        assert!(h.elements().any(|x| g.elem_order(x) == 4));
        let d = grp("D8");
        let cache = SubgroupCache::new(&d);
        assert!(matches!(
            find_normal_complement_frattini_avoiding(&cache, &d.center()),
            Err(Error::PreconditionFailed(_))
        ));
        let e = grp("C2 x C2 x C2 x C4");
        let cache = SubgroupCache::new(&e);
        let a = e.closure([16, 8, 4]);
        let h = find_normal_complement_frattini_avoiding(&cache, &a).unwrap();
        assert!(is_normal_complement(&cache, &e.full(), &a, &h));
    }

    #[test]
    fn converse_examples() {
        let g = grp("sd(4,4,3)");
        let cache = SubgroupCache::new(&g);
        let full = converse_check(&cache, &g.full(), Some(&Subgroup::trivial())).unwrap();
        assert!(full.holds);
        let a = g.closure([1]);
        let b = g.closure([4]);
        let r = converse_check(&cache, &b, Some(&a)).unwrap();
        assert!(r.holds);
        assert_eq!(cache.x(&b, 1), g.closure([8]));
        assert_eq!(cache.x(&b, 1), b.meet(&cache.frattini(&g.full())));
        let q = grp("Q8");
        let cache = SubgroupCache::new(&q);
        assert_eq!(
            converse_check(&cache, &q.center(), None).unwrap_err(),
            Error::NoNormalComplement
        );
    }
}
