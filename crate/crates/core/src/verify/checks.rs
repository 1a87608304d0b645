use std::cell::OnceCell;

use super::{CheckId, Outcome, Witness};
use crate::complements::{
    agemo_condition_in, complements_in, has_complement_in, is_normal_complement, is_pure,
    normal_complement_by_splitting, w_condition, x_condition,
};
use crate::config::{Guards, ISO_HARD_CAP};
use crate::construct::{
    build_with, cyclic, direct_product, iterated_wreath, lift_subgroup_product, semidirect,
    BuildOptions, GroupExpr,
};
use crate::group::{FiniteGroup, Homomorphism};
use crate::iso::{automorphism_group_with, is_isomorphic_with};
use crate::series::{
    agemo, b_term, frattini_series, good_term, lower_central_series, nilpotency_class, omega1,
    x_of_quotient_check, GoodVariant,
};
use crate::set::Subgroup;
use crate::subgroups::{Lattice, SubgroupCache};

type Res = Result<Outcome, Outcome>;

fn pass(detail: impl Into<String>) -> Res {
    Ok(Outcome::Pass {
        detail: detail.into(),
    })
}

fn skip(reason: impl Into<String>) -> Res {
    Err(Outcome::Skipped {
        reason: reason.into(),
    })
}

fn fail(message: impl Into<String>, index: Option<u32>, subgroups: Vec<Subgroup>) -> Res {
    Err(Outcome::Fail {
        witness: Witness {
            message: message.into(),
            index,
            subgroups,
        },
    })
}

fn guarded<T>(r: crate::Result<T>) -> Result<T, Outcome> {
    r.map_err(|e| Outcome::Skipped {
        reason: e.to_string(),
    })
}

fn in_product(g: &FiniteGroup, x: usize, n: &Subgroup, y: &Subgroup) -> bool {
    y.elements().any(|t| n.contains(g.mul(x, g.inv(t))))
}

pub(super) struct Ctx<'a> {
    expr: &'a GroupExpr,
    g: &'a FiniteGroup,
    cache: SubgroupCache<'a>,
    guards: &'a Guards,
    full: Subgroup,
    lattice: OnceCell<Result<Lattice, String>>,
    factors: OnceCell<Option<(FiniteGroup, FiniteGroup)>>,
}

impl<'a> Ctx<'a> {
    pub(super) fn new(expr: &'a GroupExpr, g: &'a FiniteGroup, guards: &'a Guards) -> Self {
        Self {
            expr,
            g,
            cache: SubgroupCache::new(g),
            guards,
            full: g.full(),
            lattice: OnceCell::new(),
            factors: OnceCell::new(),
        }
    }

    pub(super) fn run(&self, id: CheckId) -> Outcome {
        use CheckId::*;
        let r = match id {
            XCharacteristicAndFrattini => self.x_characteristic_and_frattini(),
            LayerRecursion => self.layer_recursion(),
            XDescending => self.x_descending(),
            FrattiniSeriesBelowLayer => self.frattini_series_below_layer(),
            FrattiniSeriesBelowX => self.frattini_series_below_x(),
            XQuotientBelow => self.x_quotient_below(),
            QuotientCounterexample => self.quotient_counterexample(),
            SubgroupMonotone => self.subgroup_monotone(),
            XComposition => self.x_composition(),
            NormalComplementSandwich => self.normal_complement_sandwich(),
            NormalComplementIntersection => self.normal_complement_intersection(),
            NormalComplementXComplement => self.normal_complement_x_complement(),
            DirectProduct => self.direct_product(),
            AbelianCollapse => self.abelian_collapse(),
            CyclicEquivalence => self.cyclic_equivalence(),
            LowerCentralInX => self.lower_central_in_x(),
            WreathOptimality => self.wreath_optimality(),
            FrattiniCommutator2Group => self.frattini_commutator_2group(),
            FrattiniCommutatorOddCounterexample => self.frattini_commutator_odd(),
            AbelianPureIffComplemented => self.abelian_pure_iff_complemented(),
            AbelianPureIffXCondition => self.abelian_pure_iff_x_condition(),
            XConditionImpliesComplement => self.x_condition_implies_complement(),
            NormalComplementImpliesXCondition => self.normal_complement_implies_x_condition(),
            DihedralProperty => self.dihedral_property(),
            MaximalSubgroupCounterexample => self.maximal_subgroup_counterexample(),
            CentralIff => self.central_iff(),
            GoodSeriesAxioms => self.good_series_axioms(),
            WConditionImpliesComplement => self.w_condition_implies_complement(),
            ExponentPAgemoCaveat => self.exponent_p_agemo_caveat(),
            XTermComplement => self.x_term_complement(),
            XDecomposition => self.x_decomposition(),
            FrattiniAvoidingDirectFactor => self.frattini_avoiding_direct_factor(),
        };
        r.unwrap_or_else(|o| o)
    }

    // ---- shared data ----

    fn n(&self) -> u32 {
        self.g.n()
    }

    fn p(&self) -> u32 {
        self.g.p()
    }

    fn x(&self, i: u32) -> Subgroup {
        self.cache.x(&self.full, i)
    }

    fn show(&self, s: &Subgroup) -> String {
        let gens: Vec<String> = self
            .g
            .generators_of(s)
            .into_iter()
            .map(|x| self.g.element_name(x))
            .collect();
        format!("<{}> of order {}", gens.join(", "), s.order())
    }

    fn lattice(&self) -> Result<&Lattice, Outcome> {
        let cap = self.guards.suite_max_order;
        let r = self.lattice.get_or_init(|| {
            if self.g.order() > cap {
                return Err(format!(
                    "order {} exceeds the subgroup-enumeration guard {cap}",
                    self.g.order()
                ));
            }
            self.cache.lattice(self.guards, false).map_err(|e| e.to_string())
        });
        r.as_ref().map_err(|e| Outcome::Skipped { reason: e.clone() })
    }

    fn abelian_nodes(&self) -> Result<Vec<Subgroup>, Outcome> {
        Ok(self
            .lattice()?
            .nodes
            .iter()
            .filter(|s| self.g.is_abelian_subgroup(s))
            .copied()
            .collect())
    }

    fn factors(&self) -> Option<&(FiniteGroup, FiniteGroup)> {
        self.factors
            .get_or_init(|| match self.expr {
                GroupExpr::DirectProduct(l, r) => {
                    let opts = BuildOptions {
                        max_order: self.guards.build_max_order,
                    };
                    let a = build_with(l, &opts).ok()?;
                    let b = build_with(r, &opts).ok()?;
                    (a.order() * b.order() == self.g.order()).then_some((a, b))
                }
                _ => None,
            })
            .as_ref()
    }

    fn raised_guards(&self) -> Guards {
        Guards {
            iso_max_order: ISO_HARD_CAP,
            ..*self.guards
        }
    }

    fn iso_from(&self, canon: &FiniteGroup) -> Option<Homomorphism> {
        if canon.order() != self.g.order() || self.g.order() > ISO_HARD_CAP {
            return None;
        }
        is_isomorphic_with(canon, self.g, &self.raised_guards()).ok().flatten()
    }

    /// Isomorphism from `sd(4,4,3)` in its own numbering.
    fn script_g(&self) -> Option<(FiniteGroup, Homomorphism)> {
        if self.g.order() != 16 {
            return None;
        }
        let canon = semidirect(4, 4, 3, 2).expect("valid action");
        let phi = self.iso_from(&canon)?;
        Some((canon, phi))
    }

    fn is_script_h(&self) -> bool {
        if self.g.order() != 64 {
            return false;
        }
        let canon = direct_product(&cyclic(4, 2), &semidirect(4, 4, 3, 2).expect("valid action"));
        self.iso_from(&canon).is_some()
    }

    /// `(p, i)` when the group is `L(p, i)`.
    fn wreath_params(&self) -> Option<(u32, u32)> {
        let p = self.p();
        let order = self.g.order() as u64;
        let i = (1..=9u32).find(|&i| {
            let e = (u64::from(p).pow(i) - 1) / (u64::from(p) - 1);
            e <= 9 && u64::from(p).pow(e as u32) == order
        })?;
        if let GroupExpr::IteratedWreath { p: ep, i: ei } = self.expr {
            if (*ep, *ei) == (p, i) {
                return Some((p, i));
            }
        }
        self.iso_from(&iterated_wreath(p, i)).map(|_| (p, i))
    }

    fn is_dihedral(&self, a: &Subgroup) -> bool {
        let order = a.order();
        if self.p() != 2 || order < 8 || self.g.is_abelian_subgroup(a) {
            return false;
        }
        let orders = self.g.elem_orders();
        let involutions = a.elements().filter(|&x| orders[x] == 2).count();
        a.elements().any(|x| orders[x] as usize == order / 2) && involutions == order / 2 + 1
    }

    /// Calls `f` on every pair `(N, H)` with `N` normal and `H` a complement.
    fn for_each_normal_pair(&self, mut f: impl FnMut(&Subgroup, &Subgroup) -> Result<(), Outcome>) -> Result<usize, Outcome> {
        let lat = self.lattice()?;
        let mut count = 0;
        for (k, n) in lat.nodes.iter().enumerate() {
            if !lat.normal[k] {
                continue;
            }
            for h in complements_in(&self.cache, &self.full, n) {
                f(n, &h)?;
                count += 1;
            }
        }
        Ok(count)
    }

    // ---- basic properties ----

    fn x_characteristic_and_frattini(&self) -> Res {
        let phi = self.g.frattini_of(&self.full);
        let x1 = self.x(1);
        if x1 != phi {
            return fail("X_1(G) differs from G'℧_1(G)", Some(1), vec![x1, phi]);
        }
        let terms = self.cache.x_terms(&self.full);
        for (i, t) in terms.iter().enumerate() {
            if let Some((x, c)) = self.g.normality_witness(t, &self.full) {
                return fail(
                    format!("X_{i}(G) is not normal: {}^{} leaves it", self.g.element_name(x), self.g.element_name(c)),
                    Some(i as u32),
                    vec![*t],
                );
            }
        }
        match automorphism_group_with(self.g, self.guards) {
            Ok(auts) => {
                for a in &auts {
                    for (i, t) in terms.iter().enumerate() {
                        if a.image(t) != *t {
                            return fail(format!("an automorphism moves X_{i}(G)"), Some(i as u32), vec![*t]);
                        }
                    }
                }
                pass(format!(
                    "X_1 = Φ of order {}; {} terms fixed by {} automorphisms",
                    phi.order(),
                    terms.len(),
                    auts.len()
                ))
            }
            Err(e) => pass(format!(
                "X_1 = Φ of order {}; {} terms normal; automorphisms not enumerated ({e})",
                phi.order(),
                terms.len()
            )),
        }
    }

    fn layer_recursion(&self) -> Res {
        self.lattice()?;
        let mut compared = 0;
        for k in 1..=self.n() {
            let xk = self.x(k);
            for j in 1..=k {
                let members = self.cache.layer_members(&self.full, k - j);
                let meet = members
                    .iter()
                    .map(|t| self.cache.x(t, j))
                    .reduce(|a, b| a.meet(&b))
                    .expect("layer is nonempty");
                if meet != xk {
                    return fail(
                        format!("intersection of X_{j}(T) over pc_{}(G) differs from X_{k}(G)", k - j),
                        Some(k),
                        vec![meet, xk],
                    );
                }
                compared += 1;
            }
        }
        pass(format!("{compared} pairs (k, j) agree"))
    }

    fn x_descending(&self) -> Res {
        // Recomputed from the layers so the cached early stop is not assumed.
        let raw: Vec<Subgroup> = (0..=self.n() + 1)
            .map(|i| {
                let m = self.cache.layer_members(&self.full, i);
                m.iter().copied().reduce(|a, b| a.meet(&b)).unwrap_or_else(Subgroup::trivial)
            })
            .collect();
        for i in 0..raw.len() - 1 {
            if !raw[i + 1].is_subgroup_of(&raw[i]) {
                return fail(
                    format!("X_{}(G) is not contained in X_{i}(G)", i + 1),
                    Some(i as u32),
                    vec![raw[i + 1], raw[i]],
                );
            }
            if raw[i] != self.x(i as u32) {
                return fail(format!("cached X_{i}(G) differs from the layer intersection"), Some(i as u32), vec![raw[i]]);
            }
        }
        let orders: Vec<String> = raw.iter().map(|s| s.order().to_string()).collect();
        pass(format!("orders {}", orders.join(" > ")))
    }

    fn frattini_series_below_layer(&self) -> Res {
        self.lattice()?;
        let fs = frattini_series(self.g, &self.full);
        let mut count = 0;
        for i in 0..=self.n() {
            let phi = fs.term(i as usize);
            for t in self.cache.layer_members(&self.full, i).iter() {
                if !phi.is_subgroup_of(t) {
                    return fail(format!("Φ_{i}(G) is not inside a member of pc_{i}(G)"), Some(i), vec![phi, *t]);
                }
                count += 1;
            }
        }
        pass(format!("{count} layer members contain the matching Φ_i"))
    }

    fn frattini_series_below_x(&self) -> Res {
        let fs = frattini_series(self.g, &self.full);
        for i in 0..=self.n() {
            let (phi, x) = (fs.term(i as usize), self.x(i));
            if !phi.is_subgroup_of(&x) {
                return fail(format!("Φ_{i}(G) is not inside X_{i}(G)"), Some(i), vec![phi, x]);
            }
        }
        pass(format!("Φ_i ≤ X_i for 0 ≤ i ≤ {}", self.n()))
    }

    fn x_quotient_below(&self) -> Res {
        let lat = self.lattice()?;
        let phi = self.x(1);
        let mut normals = 0;
        let mut rows = 0;
        for (k, n) in lat.nodes.iter().enumerate() {
            if !lat.normal[k] || n.is_trivial() || !n.is_subgroup_of(&phi) {
                continue;
            }
            let cmp = guarded(x_of_quotient_check(&self.cache, n))?;
            for row in cmp.rows.iter().filter(|r| r.normal_below) {
                if row.of_quotient != row.image {
                    return fail(
                        format!("N = {}: X_i(G/N) has order {}, X_i(G)N/N has order {}", self.show(n), row.of_quotient.order(), row.image.order()),
                        Some(row.index),
                        vec![*n],
                    );
                }
                rows += 1;
            }
            normals += 1;
        }
        if normals == 0 {
            return skip("no nontrivial normal subgroup inside Φ(G)");
        }
        pass(format!("{normals} normal subgroups, {rows} indices agree"))
    }

    fn quotient_counterexample(&self) -> Res {
        let Some((canon, phi)) = self.script_g() else {
            return skip("applies to sd(4,4,3) only");
        };
        let (a, b) = (1, 4);
        let w = canon.mul(canon.pow(a, 2), canon.pow(b, 2));
        let n = self.g.closure([phi.apply(w)]);
        if n.order() != 2 || !self.g.is_central(&n) {
            return fail("<a^2 b^2> is not central of order 2", None, vec![n]);
        }
        let cmp = guarded(x_of_quotient_check(&self.cache, &n))?;
        let q8 = guarded(crate::construct::catalog("Q8"))?;
        if guarded(is_isomorphic_with(&cmp.quotient, &q8, self.guards))?.is_none() {
            return fail("G/N is not quaternion", None, vec![n]);
        }
        let row = &cmp.rows[2];
        if row.normal_below {
            return fail("N lies inside X_2(G)", Some(2), vec![n]);
        }
        if row.of_quotient.order() != 2 || row.image.order() != 1 {
            return fail(
                format!("expected orders (2, 1), found ({}, {})", row.of_quotient.order(), row.image.order()),
                Some(2),
                vec![n],
            );
        }
        pass("G/N ≅ Q8; |X_2(G/N)| = 2 but |X_2(G)N/N| = 1")
    }

    fn subgroup_monotone(&self) -> Res {
        let lat = self.lattice()?;
        for m in &lat.nodes {
            for i in 1..=m.log_order(self.p()) {
                let (xm, xg) = (self.cache.x(m, i), self.x(i));
                if !xm.is_subgroup_of(&xg) {
                    return fail(format!("X_{i}(M) is not inside X_{i}(G) for M = {}", self.show(m)), Some(i), vec![*m, xm, xg]);
                }
            }
        }
        pass(format!("{} subgroups checked", lat.len()))
    }

    fn x_composition(&self) -> Res {
        let n = self.n();
        for j in 0..=n {
            let xj = self.x(j);
            for i in 0..=n - j {
                let (inner, outer) = (self.cache.x(&xj, i), self.x(i + j));
                if !inner.is_subgroup_of(&outer) {
                    return fail(format!("X_{i}(X_{j}(G)) is not inside X_{}(G)", i + j), Some(i), vec![inner, outer]);
                }
            }
            let phi = self.cache.frattini(&xj);
            let next = self.x(j + 1);
            if !phi.is_subgroup_of(&next) {
                return fail(format!("X_{j}(G)/X_{}(G) is not elementary abelian", j + 1), Some(j), vec![xj, next]);
            }
        }
        pass(format!("all i + j ≤ {n}"))
    }

    // ---- complements of normal subgroups ----

    fn normal_complement_sandwich(&self) -> Res {
        let n = self.n();
        let xs: Vec<(Subgroup, Vec<usize>)> = (0..=n)
            .map(|i| {
                let x = self.x(i);
                (x, self.g.generators_of(&x))
            })
            .collect();
        let pairs = self.for_each_normal_pair(|nn, h| {
            for (i, (xg, gens)) in xs.iter().enumerate() {
                let i = i as u32;
                let (xn, xh) = (self.cache.x(nn, i), self.cache.x(h, i));
                if !xn.is_subgroup_of(xg) || !xh.is_subgroup_of(xg) {
                    return fail("X_i(N)X_i(H) is not inside X_i(G)", Some(i), vec![*nn, *h]).map(|_| ());
                }
                if !gens.iter().all(|&x| in_product(self.g, x, nn, &xh)) {
                    return fail("X_i(G) is not inside N X_i(H)", Some(i), vec![*nn, *h]).map(|_| ());
                }
            }
            Ok(())
        })?;
        pass(format!("{pairs} complemented normal subgroups"))
    }

    fn normal_complement_intersection(&self) -> Res {
        let pairs = self.for_each_normal_pair(|nn, h| {
            for i in 0..=self.n() {
                let (xh, xg) = (self.cache.x(h, i), self.x(i));
                if xh != xg.meet(h) {
                    return fail("X_i(H) differs from X_i(G) ∩ H", Some(i), vec![*nn, *h, xh]).map(|_| ());
                }
            }
            Ok(())
        })?;
        pass(format!("{pairs} complemented normal subgroups"))
    }

    fn normal_complement_x_complement(&self) -> Res {
        let pairs = self.for_each_normal_pair(|nn, h| {
            for i in 0..=self.n() {
                let (xh, xg) = (self.cache.x(h, i), self.x(i));
                let d = nn.meet(&xg);
                if !xh.is_subgroup_of(&xg) || !xh.meets_trivially(&d) || xh.order() * d.order() != xg.order() {
                    return fail("X_i(H) does not complement N ∩ X_i(G) in X_i(G)", Some(i), vec![*nn, *h, xh]).map(|_| ());
                }
            }
            Ok(())
        })?;
        pass(format!("{pairs} complemented normal subgroups"))
    }

    fn direct_product(&self) -> Res {
        let Some((a, b)) = self.factors() else {
            return skip("not built as a direct product");
        };
        let (ca, cb) = (SubgroupCache::new(a), SubgroupCache::new(b));
        for i in 0..=self.n() {
            let (xa, xb) = (ca.x(&a.full(), i), cb.x(&b.full(), i));
            let lifted = guarded(lift_subgroup_product(self.g, &xa, &xb))?;
            let xg = self.x(i);
            if lifted != xg {
                return fail(
                    format!("X_i(A) x X_i(B) has order {}, X_i(A x B) has order {}", lifted.order(), xg.order()),
                    Some(i),
                    vec![lifted, xg],
                );
            }
        }
        pass(format!("factors of orders {} and {}", a.order(), b.order()))
    }

    fn abelian_collapse(&self) -> Res {
        if !self.g.is_abelian() {
            return skip("group is not abelian");
        }
        let (g, n) = (self.g, self.n());
        let fs = frattini_series(g, &self.full);
        for i in 1..=n {
            let (x, phi, mho) = (self.x(i), fs.term(i as usize), agemo(g, &self.full, i));
            if x != phi || x != mho {
                return fail("X_i, Φ_i and ℧_i differ", Some(i), vec![x, phi, mho]);
            }
            for j in 1..=n {
                let (inner, outer) = (self.cache.x(&x, j), self.x(i + j));
                if inner != outer {
                    return fail(format!("X_{j}(X_{i}(G)) differs from X_{}(G)", i + j), Some(i), vec![inner, outer]);
                }
                let (mm, m) = (agemo(g, &agemo(g, &self.full, j), i), agemo(g, &self.full, i + j));
                if mm != m {
                    return fail(format!("℧_{i}(℧_{j}(G)) differs from ℧_{}(G)", i + j), Some(i), vec![mm, m]);
                }
            }
        }
        pass(format!("1 ≤ i, j ≤ {n}"))
    }

    fn cyclic_equivalence(&self) -> Res {
        let lat = self.lattice()?;
        let orders = self.g.elem_orders();
        let mut count = 0;
        for c in &lat.nodes {
            if !c.elements().any(|x| orders[x] as usize == c.order()) {
                continue;
            }
            let m = c.log_order(self.p());
            let meet = c.meets_trivially(&self.x(m));
            let comp = has_complement_in(&self.cache, &self.full, c);
            let xc = x_condition(&self.cache, c).holds;
            if meet != comp || comp != xc {
                return fail(
                    format!("C = {}: C ∩ X_n trivial {meet}, complement {comp}, x-condition {xc}", self.show(c)),
                    Some(m),
                    vec![*c],
                );
            }
            count += 1;
        }
        pass(format!("{count} cyclic subgroups"))
    }

    fn lower_central_in_x(&self) -> Res {
        let gamma = lower_central_series(self.g, &self.full);
        for i in 1..=self.n() {
            let k = (self.p() as usize).pow(i - 1) + 1;
            let (gk, x) = (gamma.term(k), self.x(i));
            if !gk.is_subgroup_of(&x) {
                return fail(format!("γ_{k}(G) is not inside X_{i}(G)"), Some(i), vec![gk, x]);
            }
        }
        pass(format!("class {}", nilpotency_class(self.g, &self.full)))
    }

    fn wreath_optimality(&self) -> Res {
        let Some((p, i)) = self.wreath_params() else {
            return skip("applies to L(p, i) only");
        };
        let class = nilpotency_class(self.g, &self.full);
        let want = p.pow(i - 1);
        if class != want {
            return fail(format!("class {class}, expected {want}"), Some(i), vec![]);
        }
        let x = self.x(i);
        if !x.is_trivial() {
            return fail(format!("X_{i}(L) is not trivial"), Some(i), vec![x]);
        }
        let g = lower_central_series(self.g, &self.full).term(want as usize);
        if g.is_trivial() {
            return fail(format!("γ_{want}(L) is trivial"), Some(i), vec![]);
        }
        pass(format!("L({p},{i}): order {}, class {class}, X_{i} = 1, |γ_{want}| = {}", self.g.order(), g.order()))
    }

    fn frattini_commutator_2group(&self) -> Res {
        if self.p() != 2 {
            return skip("applies to 2-groups only");
        }
        let phi = self.x(1);
        let c = self.g.commutator_subgroup(&self.full, &phi);
        let x2 = self.x(2);
        if !c.is_subgroup_of(&x2) {
            return fail("[G, Φ(G)] is not inside X_2(G)", Some(2), vec![c, x2]);
        }
        pass(format!("|[G, Φ]| = {}, |X_2| = {}", c.order(), x2.order()))
    }

    fn frattini_commutator_odd(&self) -> Res {
        match self.wreath_params() {
            Some((p, 2)) if p % 2 == 1 => {}
            _ => return skip("applies to C_p wr C_p with p odd only"),
        }
        let x2 = self.x(2);
        let c = self.g.commutator_subgroup(&self.full, &self.x(1));
        if !x2.is_trivial() {
            return fail("X_2(G) is not trivial", Some(2), vec![x2]);
        }
        if c.is_trivial() {
            return fail("[G, Φ(G)] is trivial", None, vec![]);
        }
        pass(format!("X_2 = 1 and |[G, Φ]| = {}", c.order()))
    }

    // ---- complement criteria ----

    fn abelian_pure_iff(&self, against_x: bool) -> Res {
        if !self.g.is_abelian() {
            return skip("group is not abelian");
        }
        let lat = self.lattice()?;
        let mut pure_count = 0;
        for b in &lat.nodes {
            let pure = guarded(is_pure(&self.cache, b))?.holds;
            let other = if against_x {
                x_condition(&self.cache, b).holds
            } else {
                has_complement_in(&self.cache, &self.full, b)
            };
            if pure != other {
                let what = if against_x { "x-condition" } else { "complement" };
                return fail(format!("B = {}: pure {pure}, {what} {other}", self.show(b)), None, vec![*b]);
            }
            pure_count += usize::from(pure);
        }
        pass(format!("{pure_count} of {} subgroups pure", lat.len()))
    }

    fn abelian_pure_iff_complemented(&self) -> Res {
        self.abelian_pure_iff(false)
    }

    fn abelian_pure_iff_x_condition(&self) -> Res {
        self.abelian_pure_iff(true)
    }

    fn x_condition_implies_complement(&self) -> Res {
        let mut count = 0;
        for a in self.abelian_nodes()? {
            if x_condition(&self.cache, &a).holds {
                if !has_complement_in(&self.cache, &self.full, &a) {
                    return fail(format!("A = {} satisfies the x-condition without a complement", self.show(&a)), None, vec![a]);
                }
                count += 1;
            }
        }
        pass(format!("{count} abelian subgroups satisfy the x-condition"))
    }

    fn normal_complement_implies_x_condition(&self) -> Res {
        let lat = self.lattice()?;
        let mut count = 0;
        for h in &lat.nodes {
            let has_normal = complements_in(&self.cache, &self.full, h)
                .iter()
                .any(|k| self.g.is_normal_in(k, &self.full));
            if !has_normal {
                continue;
            }
            let check = x_condition(&self.cache, h);
            if let Some(f) = check.failure {
                return fail(format!("H = {} has a normal complement but H ∩ X_i(G) ≠ X_i(H)", self.show(h)), Some(f.index), vec![*h, f.meet, f.term]);
            }
            count += 1;
        }
        pass(format!("{count} subgroups with a normal complement"))
    }

    fn dihedral_property(&self) -> Res {
        let lat = self.lattice()?;
        let dihedral: Vec<Subgroup> = lat.nodes.iter().filter(|a| self.is_dihedral(a)).copied().collect();
        if dihedral.is_empty() {
            return skip("no dihedral subgroup");
        }
        let orders = self.g.elem_orders();
        for a in &dihedral {
            let below: Vec<Subgroup> = lat.nodes.iter().filter(|h| h.is_subgroup_of(a)).copied().collect();
            for h in below.iter().filter(|h| !h.is_trivial()) {
                let found = below.iter().any(|c| {
                    !c.is_trivial()
                        && c.is_subgroup_of(h)
                        && c.elements().any(|x| orders[x] as usize == c.order())
                        && self.g.is_normal_in(c, h)
                        && has_complement_in(&self.cache, h, c)
                });
                if !found {
                    return fail(format!("H = {} inside dihedral A = {} has no complemented normal cyclic subgroup", self.show(h), self.show(a)), None, vec![*a, *h]);
                }
            }
            if x_condition(&self.cache, a).holds && !has_complement_in(&self.cache, &self.full, a) {
                return fail(format!("dihedral A = {} satisfies the x-condition without a complement", self.show(a)), None, vec![*a]);
            }
        }
        pass(format!("{} dihedral subgroups", dihedral.len()))
    }

    fn maximal_subgroup_counterexample(&self) -> Res {
        if !self.is_script_h() {
            return skip("applies to C4 x sd(4,4,3) only");
        }
        let phi = self.x(1);
        let omega = omega1(self.g, &self.full);
        if omega != phi {
            return fail("Ω_1(G) differs from Φ(G)", None, vec![omega, phi]);
        }
        let x2 = self.x(2);
        if !x2.is_trivial() {
            return fail("X_2(G) is not trivial", Some(2), vec![x2]);
        }
        for m in self.cache.maximals(&self.full).iter() {
            if self.cache.frattini(m) == phi
                && x_condition(&self.cache, m).holds
                && complements_in(&self.cache, &self.full, m).is_empty()
            {
                return pass(format!("M = {} has Φ(M) = Φ(G), satisfies the x-condition, and has no complement", self.show(m)));
            }
        }
        fail("no maximal subgroup with Φ(M) = Φ(G) lacks a complement", None, vec![])
    }

    fn central_iff(&self) -> Res {
        let lat = self.lattice()?;
        let mut count = 0;
        for a in lat.nodes.iter().filter(|a| self.g.is_central(a)) {
            let comp = has_complement_in(&self.cache, &self.full, a);
            let xc = x_condition(&self.cache, a).holds;
            if comp != xc {
                return fail(format!("central A = {}: complement {comp}, x-condition {xc}", self.show(a)), None, vec![*a]);
            }
            count += 1;
        }
        pass(format!("{count} central subgroups"))
    }

    fn good_series_axioms(&self) -> Res {
        let lat = self.lattice()?;
        let (g, n) = (self.g, self.n());
        let orders = g.elem_orders();
        let factors = self.factors();
        for v in GoodVariant::ALL {
            let name = v.name();
            let b: Vec<Subgroup> = (0..=n + 1).map(|i| b_term(g, &self.full, v, i)).collect();
            let w: Vec<Subgroup> = (0..=n + 1).map(|i| good_term(&self.cache, &self.full, v, i)).collect();
            if b[0] != self.full {
                return fail(format!("{name}: B_0(G) is not G"), Some(0), vec![b[0]]);
            }
            for i in 0..=n as usize {
                for (s, label) in [(&b, "B"), (&w, "W")] {
                    if !s[i + 1].is_subgroup_of(&s[i]) {
                        return fail(format!("{name}: {label}_{}(G) is not inside {label}_{i}(G)", i + 1), Some(i as u32), vec![s[i + 1], s[i]]);
                    }
                    if !g.is_normal_in(&s[i], &self.full) {
                        return fail(format!("{name}: {label}_{i}(G) is not normal"), Some(i as u32), vec![s[i]]);
                    }
                }
            }
            for m in &lat.nodes {
                for i in 1..=m.log_order(self.p()) {
                    let bm = b_term(g, m, v, i);
                    if !bm.is_subgroup_of(&b[i as usize]) {
                        return fail(format!("{name}: B_{i}(M) is not inside B_{i}(G) for M = {}", self.show(m)), Some(i), vec![*m, bm]);
                    }
                    let wm = good_term(&self.cache, m, v, i);
                    if !wm.is_subgroup_of(&w[i as usize]) {
                        return fail(format!("{name}: W_{i}(M) is not inside W_{i}(G) for M = {}", self.show(m)), Some(i), vec![*m, wm]);
                    }
                }
                if m.elements().any(|x| orders[x] as usize == m.order()) {
                    let (o, b1) = (omega1(g, m), b_term(g, m, v, 1));
                    if !o.is_subgroup_of(&b1) {
                        return fail(format!("{name}: Ω_1(C) is not inside B_1(C) for C = {}", self.show(m)), Some(1), vec![*m, b1]);
                    }
                }
            }
            if let Some((fa, fb)) = factors {
                let (ca, cb) = (SubgroupCache::new(fa), SubgroupCache::new(fb));
                for i in 0..=n {
                    let lifted_b = guarded(lift_subgroup_product(g, &b_term(fa, &fa.full(), v, i), &b_term(fb, &fb.full(), v, i)))?;
                    if lifted_b != b[i as usize] {
                        return fail(format!("{name}: B_{i}(A x B) is not B_{i}(A) x B_{i}(B)"), Some(i), vec![lifted_b, b[i as usize]]);
                    }
                    let lifted_w = guarded(lift_subgroup_product(
                        g,
                        &good_term(&ca, &fa.full(), v, i),
                        &good_term(&cb, &fb.full(), v, i),
                    ))?;
                    if lifted_w != w[i as usize] {
                        return fail(format!("{name}: W_{i}(A x B) is not W_{i}(A) x W_{i}(B)"), Some(i), vec![lifted_w, w[i as usize]]);
                    }
                }
            }
        }
        let product = if factors.is_some() { "; direct-product axiom checked" } else { "" };
        pass(format!("3 variants over {} subgroups{product}", lat.len()))
    }

    fn w_condition_implies_complement(&self) -> Res {
        let mut count = 0;
        for a in self.abelian_nodes()? {
            for v in GoodVariant::ALL {
                if w_condition(&self.cache, &a, v).holds {
                    if !has_complement_in(&self.cache, &self.full, &a) {
                        return fail(format!("A = {} satisfies the {} w-condition without a complement", self.show(&a), v.name()), None, vec![a]);
                    }
                    count += 1;
                }
            }
        }
        pass(format!("{count} (subgroup, variant) pairs satisfy the w-condition"))
    }

    fn exponent_p_agemo_caveat(&self) -> Res {
        if self.p() == 2 || self.g.is_abelian() || self.g.exponent() != self.p() {
            return skip("needs a non-abelian group of odd exponent p");
        }
        let lat = self.lattice()?;
        for a in &lat.nodes {
            let c = agemo_condition_in(&self.cache, &self.full, a);
            if let Some(f) = c.failure {
                return fail(format!("A = {} fails A ∩ ℧_i(G) = ℧_i(A)", self.show(a)), Some(f.index), vec![*a]);
            }
        }
        let phi = self.x(1);
        let witness = lat.layer(self.n() as usize - 1).iter().find(|c| {
            c.is_subgroup_of(&phi) && !has_complement_in(&self.cache, &self.full, c)
        });
        match witness {
            Some(c) => pass(format!("agemo condition holds for all {} subgroups; C = {} ≤ Φ has no complement", lat.len(), self.show(c))),
            None => fail("every order-p subgroup of Φ(G) has a complement", None, vec![phi]),
        }
    }

    fn x_term_complement(&self) -> Res {
        let mut count = 0;
        for a in self.abelian_nodes()? {
            if !x_condition(&self.cache, &a).holds {
                continue;
            }
            for i in 0..=self.n() {
                let xi = self.x(i);
                let d = a.meet(&xi);
                if !has_complement_in(&self.cache, &xi, &d) {
                    return fail(format!("A = {}: A ∩ X_i(G) has no complement in X_i(G)", self.show(&a)), Some(i), vec![a, d, xi]);
                }
            }
            count += 1;
        }
        pass(format!("{count} abelian subgroups with the x-condition"))
    }

    fn x_decomposition(&self) -> Res {
        let n = self.n();
        let mut pairs = 0;
        for a in self.abelian_nodes()? {
            if !self.g.is_normal_in(&a, &self.full) || !x_condition(&self.cache, &a).holds {
                continue;
            }
            let hs = complements_in(&self.cache, &self.full, &a);
            if hs.is_empty() {
                return fail(format!("A = {} has no complement", self.show(&a)), None, vec![a]);
            }
            for h in hs {
                for i in 0..=n {
                    let (xg, xa, xh) = (self.x(i), self.cache.x(&a, i), self.cache.x(&h, i));
                    if h.meet(&xg) != xh {
                        return fail("H ∩ X_i(G) differs from X_i(H)", Some(i), vec![a, h]);
                    }
                    if !xa.is_subgroup_of(&xg) || !xh.is_subgroup_of(&xg) || !xa.meets_trivially(&xh) || xa.order() * xh.order() != xg.order() {
                        return fail("X_i(G) is not X_i(A) X_i(H) with trivial intersection", Some(i), vec![a, h]);
                    }
                }
                pairs += 1;
            }
        }
        pass(format!("{pairs} (A, H) pairs"))
    }

    fn frattini_avoiding_direct_factor(&self) -> Res {
        let lat = self.lattice()?;
        let phi = self.x(1);
        let exhaustive = self.g.order() <= self.guards.oracle_max_order;
        let mut count = 0;
        for (k, a) in lat.nodes.iter().enumerate() {
            if !lat.normal[k] || !a.meets_trivially(&phi) {
                continue;
            }
            if !self.cache.frattini(a).is_trivial() {
                return fail(format!("A = {} avoids Φ(G) but is not elementary abelian", self.show(a)), None, vec![*a]);
            }
            let h = normal_complement_by_splitting(&self.cache, &self.full, a);
            if !is_normal_complement(&self.cache, &self.full, a, &h) {
                return fail(format!("construction for A = {} did not give a normal complement", self.show(a)), None, vec![*a, h]);
            }
            if exhaustive
                && !complements_in(&self.cache, &self.full, a)
                    .iter()
                    .any(|c| self.g.is_normal_in(c, &self.full))
            {
                return fail(format!("exhaustive scan found no normal complement of A = {}", self.show(a)), None, vec![*a]);
            }
            count += 1;
        }
        let how = if exhaustive { ", confirmed by exhaustive scan" } else { "" };
        pass(format!("{count} normal subgroups avoid Φ(G){how}"))
    }
}
