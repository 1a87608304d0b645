//! Isomorphism and automorphism search by backtracking over images of a
//! minimal generating set, pruned by per-element invariants.

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Homomorphism};
use crate::set::{ElemSet, Subgroup};

/// Isomorphism-invariant fingerprint of a single element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct ElemSig {
    order: u32,
    centralizer: u32,
    in_frattini: bool,
    central: bool,
    pth_roots: u32,
}

struct Profile {
    sigs: Vec<ElemSig>,
    frattini: Subgroup,
}

fn profile(g: &FiniteGroup) -> Profile {
    let frattini = g.frattini_of(&g.full());
    let center = g.center();
    let mut roots = vec![0u32; g.order()];
    for x in 0..g.order() {
        roots[g.pow(x, g.p() as u64)] += 1;
    }
    let sigs = (0..g.order())
        .map(|x| {
            let centralizer = (0..g.order())
                .filter(|&y| g.mul(x, y) == g.mul(y, x))
                .count() as u32;
            ElemSig {
                order: g.elem_order(x),
                centralizer,
                in_frattini: frattini.contains(x),
                central: center.contains(x),
                pth_roots: roots[x],
            }
        })
        .collect();
    Profile { sigs, frattini }
}

/// Lift of a basis of `G/Φ(G)`, preferring elements whose signature is rare.
fn minimal_generators(g: &FiniteGroup, prof: &Profile) -> Vec<usize> {
    let mut freq = std::collections::HashMap::new();
    for s in &prof.sigs {
        *freq.entry(*s).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&x| (freq[&prof.sigs[x]], x));
    let mut span = prof.frattini;
    let mut gens = Vec::new();
    for x in order {
        if span.order() == g.order() {
            break;
        }
        if span.contains(x) {
            continue;
        }
        span = g.closure_from(&span, [x]);
        gens.push(x);
    }
    gens
}

/// Extends generator images to a partial map on `<gens>`; `None` if the
/// assignment is inconsistent or not injective.
fn extend_map(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = ElemSet::empty();
    map[0] = 0;
    used.insert(0);
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (j, &gj) in gens.iter().enumerate() {
            let y = g.mul(x, gj);
            let img = h.mul(map[x], images[j]);
            if map[y] == usize::MAX {
                if !used.insert(img) {
                    return None;
                }
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// Depth-first search; `visit` returns `false` to stop.
fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    visit: &mut dyn FnMut(Vec<usize>) -> bool,
) -> bool {
    let depth = images.len();
    for &c in &candidates[depth] {
        images.push(c);
        if let Some(map) = extend_map(g, h, &gens[..=depth], images) {
            let go_on = if depth + 1 == gens.len() {
                visit(map)
            } else {
                search(g, h, gens, candidates, images, visit)
            };
            if !go_on {
                images.pop();
                return false;
            }
        }
        images.pop();
    }
    true
}

fn check_guard(order: usize, limit: usize) -> Result<()> {
    if order > limit {
        return Err(Error::SizeGuardExceeded {
            what: "group order for isomorphism search",
            actual: order,
            limit,
        });
    }
    Ok(())
}

/// Isomorphism invariant: order, abelianness and the sorted multiset of
/// element signatures. Equal for isomorphic groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    order: usize,
    abelian: bool,
    sigs: Vec<ElemSig>,
}

pub fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut sigs = profile(g).sigs;
    sigs.sort_unstable();
    Fingerprint {
        order: g.order(),
        abelian: g.is_abelian(),
        sigs,
    }
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Homomorphism>> {
    is_isomorphic_with(g, h, &Guards::default())
}

/// Returns an isomorphism `g -> h` if one exists.
pub fn is_isomorphic_with(
    g: &FiniteGroup,
    h: &FiniteGroup,
    guards: &Guards,
) -> Result<Option<Homomorphism>> {
    check_guard(g.order().max(h.order()), guards.iso_limit())?;
    if g.order() != h.order() {
        return Ok(None);
    }
    if g.order() == 1 {
        return Ok(Some(Homomorphism::identity(g)));
    }
    if g.p() != h.p() || g.is_abelian() != h.is_abelian() {
        return Ok(None);
    }
    let mut og = g.elem_orders().to_vec();
    let mut oh = h.elem_orders().to_vec();
    og.sort_unstable();
    oh.sort_unstable();
    if og != oh {
        return Ok(None);
    }
    let pg = profile(g);
    let ph = profile(h);
    let mut sg = pg.sigs.clone();
    let mut sh = ph.sigs.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return Ok(None);
    }
    let gens = minimal_generators(g, &pg);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..h.order()).filter(|&y| ph.sigs[y] == pg.sigs[x]).collect())
        .collect();
    let mut found = None;
    let mut images = Vec::new();
    search(g, h, &gens, &candidates, &mut images, &mut |map| {
        found = Some(map);
        false
    });
    Ok(found.map(|m| Homomorphism::new(m, h.order())))
}

pub fn automorphism_group(g: &FiniteGroup) -> Result<Vec<Homomorphism>> {
    automorphism_group_with(g, &Guards::default())
}

/// All automorphisms of `g`, identity first.
pub fn automorphism_group_with(g: &FiniteGroup, guards: &Guards) -> Result<Vec<Homomorphism>> {
    check_guard(g.order(), guards.aut_limit())?;
    if g.order() == 1 {
        return Ok(vec![Homomorphism::identity(g)]);
    }
    let prof = profile(g);
    let gens = minimal_generators(g, &prof);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let mut c: Vec<usize> = (0..g.order())
                .filter(|&y| prof.sigs[y] == prof.sigs[x])
                .collect();
            // identity map is found first
            c.sort_by_key(|&y| (y != x, y));
            c
        })
        .collect();
    let mut auts = Vec::new();
    let mut overflow = false;
    let limit = guards.max_automorphisms;
    let mut images = Vec::new();
    search(g, g, &gens, &candidates, &mut images, &mut |map| {
        if auts.len() >= limit {
            overflow = true;
            return false;
        }
        auts.push(Homomorphism::new(map, g.order()));
        true
    });
    if overflow {
        return Err(Error::SizeGuardExceeded {
            what: "automorphism count",
            actual: limit + 1,
            limit,
        });
    }
    Ok(auts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, GroupExpr};

    fn grp(s: &str) -> FiniteGroup {
        build(&s.parse::<GroupExpr>().unwrap()).unwrap()
    }

    #[test]
    fn self_isomorphism_is_found() {
        let g = grp("D8");
        let f = is_isomorphic(&g, &g).unwrap().unwrap();
        assert!(f.is_homomorphism(&g, &g));
        assert!(f.is_bijective());
    }

    #[test]
    fn exponent_mismatch() {
        assert!(is_isomorphic(&grp("C4 x C2"), &grp("C8")).unwrap().is_none());
        assert!(is_isomorphic(&grp("D8"), &grp("Q8")).unwrap().is_none());
    }

    #[test]
    fn different_presentations_agree() {
        for (a, b) in [("D8", "wr(C2,2)"), ("D8", "L(2,2)"), ("D8", "sd(4,2,3)"), ("C2 x C4", "C4 x C2")] {
            let f = is_isomorphic(&grp(a), &grp(b)).unwrap();
            let f = f.unwrap_or_else(|| panic!("{a} vs {b}"));
            assert!(f.is_homomorphism(&grp(a), &grp(b)));
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_group(&grp("C1")).unwrap().len(), 1);
        assert_eq!(automorphism_group(&grp("C4")).unwrap().len(), 2);
        assert_eq!(automorphism_group(&grp("C2 x C2")).unwrap().len(), 6);
        assert_eq!(automorphism_group(&grp("D8")).unwrap().len(), 8);
        assert_eq!(automorphism_group(&grp("Q8")).unwrap().len(), 24);
        let auts = automorphism_group(&grp("C8")).unwrap();
        assert_eq!(auts.len(), 4);
        assert_eq!(auts[0], Homomorphism::identity(&grp("C8")));
    }

    #[test]
    fn guard_is_enforced() {
        let g = grp("C2 x C2 x C2 x C2 x C2 x C2 x C2");
        assert!(matches!(
            is_isomorphic(&g, &g),
            Err(Error::SizeGuardExceeded { .. })
        ));
    }
}
