//! Brute-force subgroup enumeration, independent of the maximal-subgroup
//! search: every subgroup is reached from the trivial one by adjoining one
//! element at a time and closing.

use std::collections::HashSet;

use serde::Serialize;

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::set::Subgroup;
use crate::subgroups::{SubgroupCache, SubgroupLayer};

pub fn oracle_subgroups(g: &FiniteGroup, guards: &Guards) -> Result<Vec<Subgroup>> {
    if g.order() > guards.oracle_max_order {
        return Err(Error::SizeGuardExceeded {
            what: "group order for the brute-force oracle",
            actual: g.order(),
            limit: guards.oracle_max_order,
        });
    }
    // One generator per cyclic subgroup is enough to reach every subgroup.
    let mut cyclic_seen = HashSet::new();
    let mut reps = Vec::new();
    for x in 1..g.order() {
        if cyclic_seen.insert(g.closure([x])) {
            reps.push(x);
        }
    }
    let mut seen: HashSet<Subgroup> = HashSet::from([Subgroup::trivial()]);
    let mut frontier = vec![Subgroup::trivial()];
    while let Some(h) = frontier.pop() {
        for &x in &reps {
            if h.contains(x) {
                continue;
            }
            let k = g.closure_from(&h, [x]);
            if seen.insert(k) {
                frontier.push(k);
            }
        }
    }
    let mut all: Vec<Subgroup> = seen.into_iter().collect();
    all.sort_unstable_by(|a, b| b.order().cmp(&a.order()).then(a.cmp(b)));
    Ok(all)
}

/// Subgroups of index `p^i`, sorted.
pub fn oracle_layer(g: &FiniteGroup, i: u32, guards: &Guards) -> Result<SubgroupLayer> {
    let want = g.order() / (g.p() as usize).pow(i.min(g.n()));
    let mut members: Vec<Subgroup> = if i > g.n() {
        Vec::new()
    } else {
        oracle_subgroups(g, guards)?.into_iter().filter(|s| s.order() == want).collect()
    };
    members.sort_unstable();
    Ok(SubgroupLayer {
        index_exponent: i,
        members,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub subgroups: usize,
    pub layers_checked: u32,
    /// Subgroups whose maximal subgroups were compared.
    pub maximals_checked: usize,
    /// First disagreement, if any.
    pub mismatch: Option<String>,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares every layer of `G` and the maximal subgroups of every subgroup
/// with the brute-force enumeration.
pub fn compare_with_oracle(cache: &SubgroupCache<'_>, guards: &Guards) -> Result<OracleComparison> {
    let g = cache.group();
    let all = oracle_subgroups(g, guards)?;
    let full = g.full();
    let p = g.p() as usize;
    let mut mismatch = None;
    for i in 0..=g.n() {
        let want = g.order() / p.pow(i);
        let mut oracle: Vec<Subgroup> = all.iter().filter(|s| s.order() == want).copied().collect();
        oracle.sort_unstable();
        if *cache.layer_members(&full, i) != oracle {
            mismatch = Some(format!("layer pc_{i}: {} by search, {} by brute force", cache.layer_members(&full, i).len(), oracle.len()));
            break;
        }
    }
    let mut maximals_checked = 0;
    if mismatch.is_none() {
        for h in all.iter().filter(|h| !h.is_trivial()) {
            let target = h.order() / p;
            let mut oracle: Vec<Subgroup> = all
                .iter()
                .filter(|s| s.order() == target && s.is_subgroup_of(h))
                .copied()
                .collect();
            oracle.sort_unstable();
            let mut found = cache.maximals(h).to_vec();
            found.sort_unstable();
            if found != oracle {
                mismatch = Some(format!(
                    "maximal subgroups of a subgroup of order {}: {} by hyperplanes, {} by brute force",
                    h.order(),
                    found.len(),
                    oracle.len()
                ));
                break;
            }
            maximals_checked += 1;
        }
    }
    Ok(OracleComparison {
        subgroups: all.len(),
        layers_checked: g.n() + 1,
        maximals_checked,
        mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, GroupExpr};

    #[test]
    fn counts_subgroups() {
        let g = build(&"C2 x C2 x C2".parse::<GroupExpr>().unwrap()).unwrap();
        assert_eq!(oracle_subgroups(&g, &Guards::default()).unwrap().len(), 16);
        let d8 = build(&"D8".parse().unwrap()).unwrap();
        assert_eq!(oracle_subgroups(&d8, &Guards::default()).unwrap().len(), 10);
        assert_eq!(oracle_layer(&d8, 1, &Guards::default()).unwrap().len(), 3);
    }

    #[test]
    fn agrees_with_search() {
        for e in ["sd(4,4,3)", "Q16", "C4 x C4", "Heis3"] {
            let g = build(&e.parse().unwrap()).unwrap();
            let cache = SubgroupCache::new(&g);
            let cmp = compare_with_oracle(&cache, &Guards::default()).unwrap();
            assert!(cmp.agrees(), "{e}: {:?}", cmp.mismatch);
        }
    }

    #[test]
    fn guard() {
        let g = build(&"C128".parse().unwrap()).unwrap();
        assert!(matches!(
            oracle_subgroups(&g, &Guards::default()),
            Err(Error::SizeGuardExceeded { .. })
        ));
    }
}
