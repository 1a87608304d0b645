//! Subgroup enumeration: maximal subgroups, the layers `pc_i` of subgroups
//! of index `p^i`, the full lattice, normality and product sizes.
//!
//! All expensive per-subgroup results are memoised in a [`SubgroupCache`]
//! bound to one parent group.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::config::Guards;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::iso::automorphism_group_with;
use crate::set::{log_p, ElemSet, Subgroup};

/// The subgroups of a fixed index `p^i` in some ambient subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupLayer {
    pub index_exponent: u32,
    /// Sorted by bitset order, without duplicates.
    pub members: Vec<Subgroup>,
}

impl SubgroupLayer {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Subgroup) -> bool {
        self.members.binary_search(s).is_ok()
    }
}

pub fn frattini(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    g.frattini_of(h)
}

/// Index-`p` subgroups of `h` as preimages of the hyperplanes of `h/Φ(h)`.
pub fn maximal_subgroups(g: &FiniteGroup, h: &Subgroup) -> SubgroupLayer {
    SubgroupLayer {
        index_exponent: 1,
        members: hyperplanes(g, h, &g.frattini_of(h)),
    }
}

/// `pc_i(G)`.
pub fn layer(g: &FiniteGroup, i: u32) -> SubgroupLayer {
    SubgroupCache::new(g).layer(&g.full(), i)
}

/// Intersection of the members; the empty layer gives the trivial subgroup.
pub fn intersect_layer(layer: &SubgroupLayer) -> Subgroup {
    meet_all(&layer.members)
}

fn meet_all(members: &[Subgroup]) -> Subgroup {
    let mut it = members.iter();
    let Some(first) = it.next() else {
        return Subgroup::trivial();
    };
    it.fold(*first, |acc, s| acc.meet(s))
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.is_normal_in(h, &g.full())
}

/// `|AB| = |A||B|/|A ∩ B|`.
pub fn product_size(a: &Subgroup, b: &Subgroup) -> usize {
    a.order() * b.order() / a.meet(b).order()
}

fn hyperplanes(g: &FiniteGroup, h: &Subgroup, phi: &Subgroup) -> Vec<Subgroup> {
    if h.order() == 1 {
        return Vec::new();
    }
    let p = g.p() as usize;
    let mut span = *phi;
    let mut basis = Vec::new();
    for x in h.elements() {
        if span.order() == h.order() {
            break;
        }
        if !span.contains(x) {
            span = g.closure_from(&span, [x]);
            basis.push(x);
        }
    }
    let d = basis.len();
    // coordinates of each element in h/Φ(h) ≅ F_p^d, spread by right
    // multiplication from the identity
    let mut coord = vec![0u8; g.order() * d];
    let mut seen = ElemSet::from_indices([0]);
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (j, &b) in basis.iter().enumerate() {
            let y = g.mul(x, b);
            if seen.insert(y) {
                for t in 0..d {
                    coord[y * d + t] = coord[x * d + t];
                }
                coord[y * d + j] = ((coord[y * d + j] as usize + 1) % p) as u8;
                queue.push(y);
            }
        }
    }
    let elems = h.to_vec();
    let mut out = Vec::new();
    let total = p.pow(d as u32);
    let mut c = vec![0usize; d];
    for code in 1..total {
        let mut v = code;
        for slot in c.iter_mut() {
            *slot = v % p;
            v /= p;
        }
        // one functional per hyperplane: first nonzero coefficient is 1
        if c.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let kernel = elems.iter().copied().filter(|&x| {
            let s: usize = (0..d).map(|t| c[t] * coord[x * d + t] as usize).sum();
            s.is_multiple_of(p)
        });
        out.push(Subgroup::from_set_unchecked(ElemSet::from_indices(kernel)));
    }
    out.sort_unstable();
    out
}

/// Memoised maximal subgroups, Frattini subgroups, layers and X-series for
/// the subgroups of one group. Safe to share between threads.
pub struct SubgroupCache<'g> {
    g: &'g FiniteGroup,
    frattini: Mutex<HashMap<Subgroup, Subgroup>>,
    maximals: Mutex<HashMap<Subgroup, Arc<Vec<Subgroup>>>>,
    layers: Mutex<HashMap<Subgroup, Vec<Arc<Vec<Subgroup>>>>>,
    x: Mutex<HashMap<Subgroup, Arc<Vec<Subgroup>>>>,
}

impl<'g> SubgroupCache<'g> {
    pub fn new(g: &'g FiniteGroup) -> Self {
        Self {
            g,
            frattini: Mutex::default(),
            maximals: Mutex::default(),
            layers: Mutex::default(),
            x: Mutex::default(),
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.g
    }

    pub fn full(&self) -> Subgroup {
        self.g.full()
    }

    pub fn frattini(&self, h: &Subgroup) -> Subgroup {
        if let Some(f) = self.frattini.lock().unwrap().get(h) {
            return *f;
        }
        let f = self.g.frattini_of(h);
        self.frattini.lock().unwrap().insert(*h, f);
        f
    }

    pub fn maximals(&self, h: &Subgroup) -> Arc<Vec<Subgroup>> {
        if let Some(m) = self.maximals.lock().unwrap().get(h) {
            return Arc::clone(m);
        }
        let phi = self.frattini(h);
        let m = Arc::new(hyperplanes(self.g, h, &phi));
        self.maximals.lock().unwrap().insert(*h, Arc::clone(&m));
        m
    }

    /// Members of `pc_i(h)`, sorted.
    pub fn layer_members(&self, h: &Subgroup, i: u32) -> Arc<Vec<Subgroup>> {
        let depth = h.log_order(self.g.p());
        if i > depth {
            return Arc::new(Vec::new());
        }
        let known = {
            let map = self.layers.lock().unwrap();
            match map.get(h) {
                Some(ls) if ls.len() > i as usize => return Arc::clone(&ls[i as usize]),
                Some(ls) => ls.clone(),
                None => Vec::new(),
            }
        };
        let mut ls = known;
        if ls.is_empty() {
            ls.push(Arc::new(vec![*h]));
        }
        while ls.len() <= i as usize {
            let next = self.expand(ls.last().expect("layer 0 present"));
            ls.push(Arc::new(next));
        }
        let out = Arc::clone(&ls[i as usize]);
        let mut map = self.layers.lock().unwrap();
        let slot = map.entry(*h).or_default();
        if slot.len() < ls.len() {
            *slot = ls;
        }
        out
    }

    fn expand(&self, prev: &[Subgroup]) -> Vec<Subgroup> {
        #[cfg(feature = "parallel")]
        let lists: Vec<Arc<Vec<Subgroup>>> = prev.par_iter().map(|t| self.maximals(t)).collect();
        #[cfg(not(feature = "parallel"))]
        let lists: Vec<Arc<Vec<Subgroup>>> = prev.iter().map(|t| self.maximals(t)).collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for list in &lists {
            for s in list.iter() {
                if seen.insert(*s) {
                    out.push(*s);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn layer(&self, h: &Subgroup, i: u32) -> SubgroupLayer {
        SubgroupLayer {
            index_exponent: i,
            members: self.layer_members(h, i).to_vec(),
        }
    }

    /// X-series of `h` up to and including its first trivial term.
    pub fn x_terms(&self, h: &Subgroup) -> Arc<Vec<Subgroup>> {
        if let Some(t) = self.x.lock().unwrap().get(h) {
            return Arc::clone(t);
        }
        let mut terms = vec![*h];
        let mut i = 1;
        while !terms.last().expect("nonempty").is_trivial() {
            terms.push(meet_all(&self.layer_members(h, i)));
            i += 1;
        }
        let terms = Arc::new(terms);
        self.x.lock().unwrap().insert(*h, Arc::clone(&terms));
        terms
    }

    /// `X_i(h)`; trivial for `i > log_p |h|`.
    pub fn x(&self, h: &Subgroup, i: u32) -> Subgroup {
        let terms = self.x_terms(h);
        terms.get(i as usize).copied().unwrap_or_else(Subgroup::trivial)
    }

    /// Full lattice of subgroups of the parent group. Characteristic flags
    /// are filled when requested and the automorphism group fits the guards.
    pub fn lattice(&self, guards: &Guards, characteristic: bool) -> Result<Lattice> {
        let g = self.g;
        if g.order() > guards.lattice_max_order {
            return Err(Error::SizeGuardExceeded {
                what: "group order for lattice enumeration",
                actual: g.order(),
                limit: guards.lattice_max_order,
            });
        }
        let full = g.full();
        let mut nodes = Vec::new();
        let mut layer_start = Vec::new();
        for i in 0..=g.n() {
            layer_start.push(nodes.len());
            nodes.extend(self.layer_members(&full, i).iter().copied());
        }
        let index: HashMap<Subgroup, usize> =
            nodes.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let mut covers = Vec::new();
        for (k, s) in nodes.iter().enumerate() {
            for m in self.maximals(s).iter() {
                covers.push((k, index[m]));
            }
        }
        let normal: Vec<bool> = nodes.iter().map(|s| is_normal(g, s)).collect();
        let characteristic = if characteristic {
            characteristic_flags(g, &nodes, &normal, guards)
        } else {
            None
        };
        let (class_of, classes) = conjugacy_classes(g, &nodes, &index);
        Ok(Lattice {
            nodes,
            layer_start,
            covers,
            normal,
            characteristic,
            class_of,
            classes,
            index,
        })
    }
}

fn characteristic_flags(
    g: &FiniteGroup,
    nodes: &[Subgroup],
    normal: &[bool],
    guards: &Guards,
) -> Option<Vec<bool>> {
    let auts = automorphism_group_with(g, guards).ok()?;
    Some(
        nodes
            .iter()
            .zip(normal)
            .map(|(s, &n)| {
                if !n {
                    return false;
                }
                let gens = g.generators_of(s);
                auts.iter()
                    .all(|f| gens.iter().all(|&x| s.contains(f.apply(x))))
            })
            .collect(),
    )
}

fn conjugacy_classes(
    g: &FiniteGroup,
    nodes: &[Subgroup],
    index: &HashMap<Subgroup, usize>,
) -> (Vec<usize>, Vec<Vec<usize>>) {
    let gens = g.generators().to_vec();
    let mut class_of = vec![usize::MAX; nodes.len()];
    let mut classes = Vec::new();
    for start in 0..nodes.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![start];
        class_of[start] = id;
        let mut k = 0;
        while k < members.len() {
            let s = nodes[members[k]];
            k += 1;
            for &x in &gens {
                let t = index[&g.conjugate_subgroup(&s, x)];
                if class_of[t] == usize::MAX {
                    class_of[t] = id;
                    members.push(t);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    (class_of, classes)
}

/// All subgroups of a group with their covering relation.
#[derive(Clone, Debug)]
pub struct Lattice {
    /// Layer by layer: `nodes[0]` is the whole group, the last node is
    /// trivial.
    pub nodes: Vec<Subgroup>,
    /// Offset of each layer `pc_i` in `nodes`.
    pub layer_start: Vec<usize>,
    /// `(upper, lower)` pairs where `lower` is maximal in `upper`.
    pub covers: Vec<(usize, usize)>,
    pub normal: Vec<bool>,
    pub characteristic: Option<Vec<bool>>,
    pub class_of: Vec<usize>,
    /// Conjugacy classes of subgroups as sorted node lists.
    pub classes: Vec<Vec<usize>>,
    index: HashMap<Subgroup, usize>,
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn position(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Subgroups of index `p^i`.
    pub fn layer(&self, i: usize) -> &[Subgroup] {
        let end = self.layer_start.get(i + 1).copied().unwrap_or(self.nodes.len());
        &self.nodes[self.layer_start[i]..end]
    }

    pub fn normal_subgroups(&self) -> impl Iterator<Item = &Subgroup> + '_ {
        self.nodes
            .iter()
            .zip(&self.normal)
            .filter(|(_, &n)| n)
            .map(|(s, _)| s)
    }

    /// Graphviz rendering with one node per conjugacy class, labelled
    /// `order=p^k [N] [C] xK`.
    pub fn to_dot(&self, g: &FiniteGroup) -> String {
        let p = g.p();
        let mut out = String::from("digraph lattice {\n  node [shape=box];\n");
        for (id, members) in self.classes.iter().enumerate() {
            let rep = members[0];
            let mut label = format!("order={}^{}", p, log_p(self.nodes[rep].order(), p));
            if self.normal[rep] {
                label.push_str(" N");
            }
            if self.characteristic.as_ref().is_some_and(|c| c[rep]) {
                label.push_str(" C");
            }
            let _ = write!(label, " x{}", members.len());
            let _ = writeln!(out, "  c{id} [label=\"{label}\"];");
        }
        let mut edges: Vec<(usize, usize)> = self
            .covers
            .iter()
            .map(|&(u, l)| (self.class_of[u], self.class_of[l]))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        for (u, l) in edges {
            let _ = writeln!(out, "  c{u} -> c{l};");
        }
        out.push_str("}\n");
        out
    }
}

/// Full lattice of `g` using a fresh cache.
pub fn all_subgroups(g: &FiniteGroup, guards: &Guards) -> Result<Lattice> {
    SubgroupCache::new(g).lattice(guards, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, GroupExpr};

    fn grp(s: &str) -> FiniteGroup {
        build(&s.parse::<GroupExpr>().unwrap()).unwrap()
    }

    #[test]
    fn frattini_examples() {
        let e = grp("C2 x C2 x C2");
        assert!(frattini(&e, &e.full()).is_trivial());
        let q = grp("Q8");
        assert_eq!(frattini(&q, &q.full()), q.center());
        let g = grp("sd(4,4,3)");
        let phi = frattini(&g, &g.full());
        assert_eq!(phi.order(), 4);
        assert!(phi.elements().all(|x| g.elem_order(x) <= 2));
    }

    #[test]
    fn maximal_counts() {
        let c = grp("C16");
        assert_eq!(maximal_subgroups(&c, &c.full()).len(), 1);
        let q = grp("Q8");
        let m = maximal_subgroups(&q, &q.full());
        assert_eq!(m.len(), 3);
        assert!(m.members.iter().all(|s| s.order() == 4 && g_is_cyclic(&q, s)));
        let g = grp("sd(4,4,3)");
        let m = maximal_subgroups(&g, &g.full());
        assert_eq!(m.members.iter().map(|s| s.order()).collect::<Vec<_>>(), [8, 8, 8]);
        let e = grp("C3 x C3 x C3");
        assert_eq!(maximal_subgroups(&e, &e.full()).len(), 13);
    }

    fn g_is_cyclic(g: &FiniteGroup, s: &Subgroup) -> bool {
        s.elements().any(|x| g.elem_order(x) as usize == s.order())
    }

    #[test]
    fn layers() {
        let q = grp("Q8");
        assert_eq!(layer(&q, 0).members, vec![q.full()]);
        assert_eq!(layer(&q, 2).members, vec![q.center()]);
        assert!(layer(&q, 4).is_empty());
        let g = grp("sd(4,4,3)");
        assert_eq!(layer(&g, 1).len(), 3);
        assert_eq!(layer(&g, 2).len(), 7);
    }

    #[test]
    fn intersections() {
        let q = grp("Q8");
        assert_eq!(intersect_layer(&layer(&q, 0)), q.full());
        assert_eq!(intersect_layer(&layer(&q, 1)).order(), 2);
        assert!(intersect_layer(&layer(&q, 9)).is_trivial());
    }

    #[test]
    fn lattice_of_small_groups() {
        let guards = Guards::default();
        let c = grp("C8");
        let l = all_subgroups(&c, &guards).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.covers.len(), 3);
        let q = grp("Q8");
        let l = all_subgroups(&q, &guards).unwrap();
        assert_eq!(l.len(), 6);
        assert!(l.normal.iter().all(|&n| n));
        let g = grp("sd(4,4,3)");
        let l = all_subgroups(&g, &guards).unwrap();
        assert_eq!(l.len(), 15);
        assert_eq!(l.classes.len(), 13);
        let mut sizes: Vec<usize> = l.classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes.iter().filter(|&&k| k == 2).count(), 2);
        let chars = l.characteristic.as_ref().unwrap();
        let x1 = l.position(&intersect_layer(&layer(&g, 1))).unwrap();
        assert!(chars[x1]);
    }

    #[test]
    fn lattice_guard() {
        let g = grp("C4 x C64");
        assert!(matches!(
            all_subgroups(&g, &Guards::default()),
            Err(Error::SizeGuardExceeded { .. })
        ));
    }

    #[test]
    fn dot_has_one_node_per_class() {
        let g = grp("sd(4,4,3)");
        let dot = all_subgroups(&g, &Guards::default()).unwrap().to_dot(&g);
        assert_eq!(dot.matches("[label=").count(), 13);
        assert!(dot.contains("order=2^4 N C x1"));
        assert!(dot.contains("x2\""));
    }

    #[test]
    fn products_and_normality() {
        let g = grp("sd(4,4,3)");
        let a = g.closure([1]);
        let b = g.closure([4]);
        assert_eq!(product_size(&a, &b), 16);
        assert_eq!(product_size(&a, &a), 4);
        let d = grp("D8");
        let s = d.closure([4]);
        assert!(!is_normal(&d, &s));
        assert!(is_normal(&d, &d.closure([1])));
    }
}
