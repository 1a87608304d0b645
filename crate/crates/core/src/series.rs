//! The X-series and its companions: Frattini series, agemo and omega
//! subgroups, the lower central series and the good series `W_i`.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::group::{quotient, FiniteGroup, Homomorphism};
use crate::set::{log_p, Subgroup};
use crate::subgroups::SubgroupCache;

/// Choice of `B_i` in `W_i = X_i ∩ B_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GoodVariant {
    /// `B_i = Ω_1`.
    Omega,
    /// `B_i = ℧_{i-1}`.
    AgemoShift,
    /// `B_i = ℧_{i-1} ∩ Ω_1`.
    Both,
}

impl GoodVariant {
    pub const ALL: [GoodVariant; 3] = [GoodVariant::Omega, GoodVariant::AgemoShift, GoodVariant::Both];

    pub fn name(self) -> &'static str {
        match self {
            GoodVariant::Omega => "omega",
            GoodVariant::AgemoShift => "agemo",
            GoodVariant::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    X,
    Frattini,
    Agemo,
    LowerCentral,
    Good(GoodVariant),
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 7] = [
        SeriesKind::X,
        SeriesKind::Frattini,
        SeriesKind::Agemo,
        SeriesKind::LowerCentral,
        SeriesKind::Good(GoodVariant::Omega),
        SeriesKind::Good(GoodVariant::AgemoShift),
        SeriesKind::Good(GoodVariant::Both),
    ];

    /// Key used in reports.
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::X => "X",
            SeriesKind::Frattini => "Frattini",
            SeriesKind::Agemo => "Agemo",
            SeriesKind::LowerCentral => "LowerCentral",
            SeriesKind::Good(GoodVariant::Omega) => "Good:omega",
            SeriesKind::Good(GoodVariant::AgemoShift) => "Good:agemo",
            SeriesKind::Good(GoodVariant::Both) => "Good:both",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesKind {
    type Err = String;

    /// Accepts `X`, `frattini`, `agemo`, `gamma`, `good:omega`,
    /// `good:agemo`, `good:both` (case-insensitive) and the report keys.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let kind = match s.to_ascii_lowercase().as_str() {
            "x" => SeriesKind::X,
            "frattini" | "phi" => SeriesKind::Frattini,
            "agemo" => SeriesKind::Agemo,
            "gamma" | "lowercentral" | "lcs" => SeriesKind::LowerCentral,
            "good:omega" => SeriesKind::Good(GoodVariant::Omega),
            "good:agemo" => SeriesKind::Good(GoodVariant::AgemoShift),
            "good:both" => SeriesKind::Good(GoodVariant::Both),
            _ => {
                return Err(format!(
                    "unknown series `{s}`; expected X, frattini, agemo, gamma, good:omega, good:agemo or good:both"
                ))
            }
        };
        Ok(kind)
    }
}

/// A descending chain of subgroups, stored up to the point where it
/// stabilises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    pub kind: SeriesKind,
    /// Index of `terms[0]`: 1 for the lower central series, else 0.
    pub offset: usize,
    pub terms: Vec<Subgroup>,
    /// `log_p |terms[k] : terms[k+1]|`.
    pub quotient_ranks: Vec<u32>,
}

impl SeriesTable {
    fn new(kind: SeriesKind, offset: usize, terms: Vec<Subgroup>, p: u32) -> Self {
        let quotient_ranks = terms
            .windows(2)
            .map(|w| log_p(w[0].order() / w[1].order(), p))
            .collect();
        Self {
            kind,
            offset,
            terms,
            quotient_ranks,
        }
    }

    /// Term with the series' own numbering; past the stored range the
    /// final term repeats.
    pub fn term(&self, i: usize) -> Subgroup {
        let k = i.saturating_sub(self.offset);
        self.terms
            .get(k)
            .copied()
            .unwrap_or_else(|| *self.terms.last().expect("series is nonempty"))
    }

    /// Orders of the stored terms.
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }
}

/// Pushes terms produced by `next` until one is trivial or repeats.
fn chain(first: Subgroup, mut next: impl FnMut(usize, &Subgroup) -> Subgroup) -> Vec<Subgroup> {
    let mut terms = vec![first];
    loop {
        let last = *terms.last().expect("nonempty");
        if last.is_trivial() {
            return terms;
        }
        let t = next(terms.len(), &last);
        if t == last {
            return terms;
        }
        terms.push(t);
    }
}

pub fn x_series(cache: &SubgroupCache<'_>) -> SeriesTable {
    x_series_of(cache, &cache.full())
}

/// `X_0(h) = h, X_1(h), ...` down to the trivial subgroup.
pub fn x_series_of(cache: &SubgroupCache<'_>, h: &Subgroup) -> SeriesTable {
    let terms = cache.x_terms(h).to_vec();
    SeriesTable::new(SeriesKind::X, 0, terms, cache.group().p())
}

/// `Φ_0 = h`, `Φ_{i+1} = Φ(Φ_i)`.
pub fn frattini_series(g: &FiniteGroup, h: &Subgroup) -> SeriesTable {
    let terms = chain(*h, |_, t| g.frattini_of(t));
    SeriesTable::new(SeriesKind::Frattini, 0, terms, g.p())
}

/// `℧_i(h) = <x^(p^i) : x ∈ h>`.
pub fn agemo(g: &FiniteGroup, h: &Subgroup, i: u32) -> Subgroup {
    if i == 0 {
        return *h;
    }
    let e = log_p(g.exponent() as usize, g.p());
    if i >= e {
        return Subgroup::trivial();
    }
    let k = (g.p() as u64).pow(i);
    let powers: Vec<usize> = h.elements().map(|x| g.pow(x, k)).collect();
    g.closure(powers)
}

/// `Ω_1(h) = <x ∈ h : x^p = 1>`.
pub fn omega1(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let p = g.p();
    let small: Vec<usize> = h.elements().filter(|&x| g.elem_order(x) <= p).collect();
    g.closure(small)
}

pub fn agemo_series(g: &FiniteGroup, h: &Subgroup) -> SeriesTable {
    let terms = chain(*h, |i, _| agemo(g, h, i as u32));
    SeriesTable::new(SeriesKind::Agemo, 0, terms, g.p())
}

/// `γ_1 = h`, `γ_{k+1} = [h, γ_k]`; `terms[0]` is `γ_1`.
pub fn lower_central_series(g: &FiniteGroup, h: &Subgroup) -> SeriesTable {
    let terms = chain(*h, |_, t| g.commutator_subgroup(h, t));
    SeriesTable::new(SeriesKind::LowerCentral, 1, terms, g.p())
}

/// Largest `c` with `γ_c ≠ 1`; 0 for the trivial group.
pub fn nilpotency_class(g: &FiniteGroup, h: &Subgroup) -> u32 {
    (lower_central_series(g, h).terms.len() - 1) as u32
}

/// `B_i(h)` for `i ≥ 1`; `B_0 = h`.
pub fn b_term(g: &FiniteGroup, h: &Subgroup, variant: GoodVariant, i: u32) -> Subgroup {
    if i == 0 {
        return *h;
    }
    match variant {
        GoodVariant::Omega => omega1(g, h),
        GoodVariant::AgemoShift => agemo(g, h, i - 1),
        GoodVariant::Both => agemo(g, h, i - 1).meet(&omega1(g, h)),
    }
}

/// `W_i(h) = X_i(h) ∩ B_i(h)` with `W_0 = h`.
pub fn good_term(cache: &SubgroupCache<'_>, h: &Subgroup, variant: GoodVariant, i: u32) -> Subgroup {
    if i == 0 {
        return *h;
    }
    let x = cache.x(h, i);
    if x.is_trivial() {
        return x;
    }
    x.meet(&b_term(cache.group(), h, variant, i))
}

pub fn good_series(cache: &SubgroupCache<'_>, h: &Subgroup, variant: GoodVariant) -> SeriesTable {
    let g = cache.group();
    let mut terms = vec![*h];
    let mut i = 1;
    while !terms.last().expect("nonempty").is_trivial() {
        terms.push(good_term(cache, h, variant, i));
        i += 1;
    }
    SeriesTable::new(SeriesKind::Good(variant), 0, terms, g.p())
}

pub fn series(cache: &SubgroupCache<'_>, h: &Subgroup, kind: SeriesKind) -> SeriesTable {
    let g = cache.group();
    match kind {
        SeriesKind::X => x_series_of(cache, h),
        SeriesKind::Frattini => frattini_series(g, h),
        SeriesKind::Agemo => agemo_series(g, h),
        SeriesKind::LowerCentral => lower_central_series(g, h),
        SeriesKind::Good(v) => good_series(cache, h, v),
    }
}

/// One index of the comparison between `X_i(G/N)` and `X_i(G)N/N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRow {
    pub index: u32,
    /// `X_i(G/N)`, in the quotient's numbering.
    pub of_quotient: Subgroup,
    /// `X_i(G)N/N`, in the quotient's numbering.
    pub image: Subgroup,
    /// Whether `N ≤ X_i(G)`, the case in which the two must agree.
    pub normal_below: bool,
}

#[derive(Clone, Debug)]
pub struct QuotientComparison {
    pub quotient: FiniteGroup,
    pub projection: Homomorphism,
    pub rows: Vec<QuotientRow>,
}

/// Compares `X_i(G/N)` with the image of `X_i(G)` for `0 ≤ i ≤ log_p |G|`.
pub fn x_of_quotient_check(cache: &SubgroupCache<'_>, n: &Subgroup) -> Result<QuotientComparison> {
    let g = cache.group();
    let (q, proj) = quotient(g, n)?;
    let qcache = SubgroupCache::new(&q);
    let rows = (0..=g.n())
        .map(|i| {
            let x = cache.x(&g.full(), i);
            QuotientRow {
                index: i,
                of_quotient: qcache.x(&q.full(), i),
                image: proj.image(&x),
                normal_below: n.is_subgroup_of(&x),
            }
        })
        .collect();
    Ok(QuotientComparison {
        quotient: q,
        projection: proj,
        rows,
    })
}

/// Map serialised with keys in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedMap<T>(pub Vec<(String, T)>);

impl<T: Serialize> Serialize for OrderedMap<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// JSON shape of the `series` command.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub group: String,
    pub p: u32,
    pub order: usize,
    pub series: OrderedMap<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<OrderedMap<Vec<Subgroup>>>,
}

pub fn series_report(
    cache: &SubgroupCache<'_>,
    group: &str,
    kinds: &[SeriesKind],
    verbose: bool,
) -> SeriesReport {
    let g = cache.group();
    let tables: Vec<SeriesTable> = kinds.iter().map(|&k| series(cache, &g.full(), k)).collect();
    let orders = tables.iter().map(|t| (t.kind.name().to_string(), t.orders())).collect();
    let elements = verbose.then(|| {
        OrderedMap(
            tables
                .iter()
                .map(|t| (t.kind.name().to_string(), t.terms.clone()))
                .collect(),
        )
    });
    SeriesReport {
        group: group.to_string(),
        p: g.p(),
        order: g.order(),
        series: OrderedMap(orders),
        elements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, catalog, GroupExpr};
    use crate::iso::is_isomorphic;

    fn grp(s: &str) -> FiniteGroup {
        build(&s.parse::<GroupExpr>().unwrap()).unwrap()
    }

    #[test]
    fn x_series_examples() {
        let c = grp("C27");
        let cache = SubgroupCache::new(&c);
        assert_eq!(x_series(&cache).orders(), [27, 9, 3, 1]);
        let g = grp("sd(4,4,3)");
        let cache = SubgroupCache::new(&g);
        let x = x_series(&cache);
        assert_eq!(x.orders(), [16, 4, 1]);
        assert!(x.term(5).is_trivial());
        let q = grp("Q8");
        let cache = SubgroupCache::new(&q);
        assert_eq!(cache.x(&q.full(), 1), q.center());
        assert_eq!(cache.x(&q.full(), 2), q.center());
        let t = grp("C1");
        assert_eq!(x_series(&SubgroupCache::new(&t)).orders(), [1]);
    }

    #[test]
    fn frattini_series_examples() {
        let e = grp("C2 x C2");
        assert_eq!(frattini_series(&e, &e.full()).orders(), [4, 1]);
        let c = grp("C8");
        let f = frattini_series(&c, &c.full());
        assert_eq!(f.orders(), [8, 4, 2, 1]);
        assert_eq!(f.quotient_ranks, [1, 1, 1]);
        let g = grp("sd(4,4,3)");
        assert!(frattini_series(&g, &g.full()).term(2).is_trivial());
    }

    #[test]
    fn agemo_and_omega() {
        let q = grp("Q8");
        let full = q.full();
        assert_eq!(agemo(&q, &full, 0), full);
        assert_eq!(agemo(&q, &full, 1), q.center());
        assert_eq!(omega1(&q, &full), q.center());
        let h = grp("C4 x sd(4,4,3)");
        assert_eq!(omega1(&h, &h.full()), h.frattini_of(&h.full()));
    }

    #[test]
    fn lower_central_classes() {
        for (s, c) in [("C4 x C2", 1), ("L(2,2)", 2), ("L(3,2)", 3), ("Q16", 3)] {
            let g = grp(s);
            assert_eq!(nilpotency_class(&g, &g.full()), c, "{s}");
        }
        let d = grp("D8");
        let cache = SubgroupCache::new(&d);
        let gamma = lower_central_series(&d, &d.full());
        assert!(gamma.term(3).is_trivial());
        assert_eq!(gamma.term(1), d.full());
        assert!(gamma.term(3).is_subgroup_of(&cache.x(&d.full(), 2)));
    }

    #[test]
    fn good_series_examples() {
        let e = grp("C3 x C3");
        let cache = SubgroupCache::new(&e);
        assert!(good_term(&cache, &e.full(), GoodVariant::Omega, 1).is_trivial());
        let g = grp("M16");
        let cache = SubgroupCache::new(&g);
        let full = g.full();
        assert_eq!(
            good_term(&cache, &full, GoodVariant::AgemoShift, 1),
            cache.frattini(&full)
        );
        let q = grp("Q8");
        let cache = SubgroupCache::new(&q);
        assert_eq!(good_term(&cache, &q.full(), GoodVariant::Omega, 2), q.center());
        assert_eq!(good_series(&cache, &q.full(), GoodVariant::Omega).orders(), [8, 2, 2, 1]);
    }

    #[test]
    fn quotient_comparison() {
        let g = grp("sd(4,4,3)");
        let cache = SubgroupCache::new(&g);
        let trivial = x_of_quotient_check(&cache, &Subgroup::trivial()).unwrap();
        assert!(trivial.rows.iter().all(|r| r.of_quotient.order() == r.image.order()));
        let (a, b) = (1, 4);
        let a2b2 = g.mul(g.pow(a, 2), g.pow(b, 2));
        let n = g.closure([a2b2]);
        let cmp = x_of_quotient_check(&cache, &n).unwrap();
        assert!(is_isomorphic(&cmp.quotient, &catalog("Q8").unwrap()).unwrap().is_some());
        let row = &cmp.rows[2];
        assert_eq!((row.of_quotient.order(), row.image.order()), (2, 1));
        assert!(!row.normal_below);
        assert!(cmp.rows[1].normal_below);
        assert_eq!(cmp.rows[1].of_quotient, cmp.rows[1].image);
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("gamma".parse::<SeriesKind>().unwrap(), SeriesKind::LowerCentral);
        assert_eq!(
            "good:both".parse::<SeriesKind>().unwrap(),
            SeriesKind::Good(GoodVariant::Both)
        );
        assert!("sigma".parse::<SeriesKind>().is_err());
    }

    #[test]
    fn report_keeps_key_order() {
        let g = grp("sd(4,4,3)");
        let cache = SubgroupCache::new(&g);
        let r = series_report(
            &cache,
            "sd(4,4,3)",
            &[SeriesKind::X, SeriesKind::Frattini, SeriesKind::LowerCentral],
            false,
        );
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"group":"sd(4,4,3)","p":2,"order":16,"series":{"X":[16,4,1],"Frattini":[16,4,1],"LowerCentral":[16,2,1]}}"#
        );
    }
}
