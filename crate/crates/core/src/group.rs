//! Cayley-table group kernel.

use crate::error::{Error, Result};
use crate::set::{log_p, ElemSet, Subgroup, MAX_ORDER};

/// Human-facing names attached by constructors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    /// Named generators, e.g. `a` and `b` for `sd(4,4,3)`.
    pub generators: Vec<(String, usize)>,
    /// Optional per-element names in index order.
    pub elements: Option<Vec<String>>,
}

/// Factor orders of a group built as an external direct product
/// `A x B`; element `(a, b)` has index `a * |B| + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductShape {
    pub left_order: usize,
    pub right_order: usize,
}

/// A validated finite p-group given by its Cayley table.
///
/// Index 0 is the identity. The table is immutable after construction.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    p: u32,
    n: u32,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    elem_order: Vec<u32>,
    gens: Vec<usize>,
    labels: Labels,
    product: Option<ProductShape>,
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates a raw square table and returns the group it defines.
///
/// Associativity is decided with Light's test over a generating set, which
/// is exact: the elements `y` with `(xy)z = x(yz)` for all `x, z` are closed
/// under products.
pub fn validate_table(raw: &[Vec<usize>], p: u32) -> Result<FiniteGroup> {
    let side = raw.len();
    if !is_prime(p as u64) || side == 0 || !is_power_of(side, p) {
        return Err(Error::OrderNotPrimePower { side, p });
    }
    if side > MAX_ORDER {
        return Err(Error::SizeGuardExceeded {
            what: "group order",
            actual: side,
            limit: MAX_ORDER,
        });
    }
    for (r, row) in raw.iter().enumerate() {
        if row.len() != side || row.iter().any(|&v| v >= side) {
            return Err(Error::NotLatinSquare {
                what: "row",
                index: r,
            });
        }
    }
    for x in 0..side {
        if raw[0][x] != x || raw[x][0] != x {
            return Err(Error::NoIdentityAtZero { element: x });
        }
    }
    let mut seen = vec![usize::MAX; side];
    for (r, row) in raw.iter().enumerate() {
        for &v in row {
            if seen[v] == r {
                return Err(Error::NotLatinSquare {
                    what: "row",
                    index: r,
                });
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..side {
        for row in raw {
            let v = row[c];
            if seen[v] == c {
                return Err(Error::NotLatinSquare {
                    what: "column",
                    index: c,
                });
            }
            seen[v] = c;
        }
    }

    let mul = |x: usize, y: usize| raw[x][y];
    let gens = right_generating_set(side, mul);
    let light_ok = gens.iter().all(|&y| {
        (0..side).all(|x| {
            let xy = mul(x, y);
            (0..side).all(|z| mul(xy, z) == mul(x, mul(y, z)))
        })
    });
    if !light_ok {
        for x in 0..side {
            for y in 0..side {
                for z in 0..side {
                    if mul(mul(x, y), z) != mul(x, mul(y, z)) {
                        return Err(Error::NotAssociative { x, y, z });
                    }
                }
            }
        }
    }

    let table = raw
        .iter()
        .flat_map(|row| row.iter().map(|&v| v as u16))
        .collect();
    Ok(FiniteGroup::from_table_unchecked(p, table))
}

fn is_power_of(mut v: usize, p: u32) -> bool {
    let p = p as usize;
    while v > 1 {
        if !v.is_multiple_of(p) {
            return false;
        }
        v /= p;
    }
    v == 1
}

/// Greedy set of elements whose right-multiplication closure from the
/// identity is everything. Works on any Latin square with identity 0.
fn right_generating_set(side: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut set = ElemSet::from_indices([0]);
    let mut elems = vec![0];
    let mut gens = Vec::new();
    for cand in 0..side {
        if set.contains(cand) {
            continue;
        }
        gens.push(cand);
        grow(&mut set, &mut elems, &gens, &mul);
    }
    gens
}

/// Extends `set` (closed under right multiplication by all but the last
/// generator) to be closed under all of `gens`.
fn grow(
    set: &mut ElemSet,
    elems: &mut Vec<usize>,
    gens: &[usize],
    mul: &impl Fn(usize, usize) -> usize,
) {
    let g = *gens.last().expect("at least one generator");
    let old = elems.len();
    for i in 0..old {
        let y = mul(elems[i], g);
        if set.insert(y) {
            elems.push(y);
        }
    }
    let mut k = old;
    while k < elems.len() {
        let x = elems[k];
        for &h in gens {
            let y = mul(x, h);
            if set.insert(y) {
                elems.push(y);
            }
        }
        k += 1;
    }
}

impl FiniteGroup {
    /// Builds a group from a flat row-major table already known to be a
    /// group table with identity 0.
    pub(crate) fn from_table_unchecked(p: u32, table: Vec<u16>) -> Self {
        let order = (table.len() as f64).sqrt().round() as usize;
        debug_assert_eq!(order * order, table.len());
        let n = log_p(order, p);
        let at = |x: usize, y: usize| table[x * order + y] as usize;
        let mut inverse = vec![0u16; order];
        for x in 0..order {
            let y = (0..order).find(|&y| at(x, y) == 0).expect("Latin row");
            inverse[x] = y as u16;
        }
        let mut elem_order = vec![1u32; order];
        for (x, slot) in elem_order.iter_mut().enumerate() {
            let mut k = 1;
            let mut y = x;
            while y != 0 {
                y = at(y, x);
                k += 1;
            }
            *slot = k;
        }
        let gens = right_generating_set(order, at);
        FiniteGroup {
            p,
            n,
            order,
            table,
            inverse,
            elem_order,
            gens,
            labels: Labels::default(),
            product: None,
        }
    }

    pub fn trivial(p: u32) -> Self {
        Self::from_table_unchecked(p, vec![0])
    }

    pub(crate) fn with_labels(mut self, labels: Labels) -> Self {
        self.labels = labels;
        self
    }

    pub(crate) fn with_product(mut self, shape: ProductShape) -> Self {
        self.product = Some(shape);
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Exponent of the order: `|G| = p^n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn product_shape(&self) -> Option<ProductShape> {
        self.product
    }

    /// A generating set (not necessarily minimal), computed at validation.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    #[inline]
    pub fn elem_order(&self, x: usize) -> u32 {
        self.elem_order[x]
    }

    pub fn elem_orders(&self) -> &[u32] {
        &self.elem_order
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let k = k % self.elem_order[x] as u64;
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn row(&self, x: usize) -> &[u16] {
        &self.table[x * self.order..(x + 1) * self.order]
    }

    /// The table as nested vectors, in the file-format orientation.
    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| self.row(x).iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn element_name(&self, x: usize) -> String {
        match &self.labels.elements {
            Some(names) => names[x].clone(),
            None => format!("e{x}"),
        }
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.labels
            .generators
            .iter()
            .find(|(name, _)| name == label)
            .map(|&(_, x)| x)
    }

    pub fn full(&self) -> Subgroup {
        Subgroup::full(self.order)
    }

    pub fn is_abelian(&self) -> bool {
        self.find_noncommuting_pair().is_none()
    }

    pub fn find_noncommuting_pair(&self) -> Option<(usize, usize)> {
        for (i, &x) in self.gens.iter().enumerate() {
            for &y in &self.gens[i + 1..] {
                if self.mul(x, y) != self.mul(y, x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn exponent(&self) -> u32 {
        self.elem_order.iter().copied().max().unwrap_or(1)
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure<I: IntoIterator<Item = usize>>(&self, gens: I) -> Subgroup {
        self.closure_from(&Subgroup::trivial(), gens)
    }

    /// Smallest subgroup containing `base` and `extra`.
    pub fn closure_from<I: IntoIterator<Item = usize>>(
        &self,
        base: &Subgroup,
        extra: I,
    ) -> Subgroup {
        let mut set = *base.set();
        let mut elems: Vec<usize> = set.iter().collect();
        let mut gens: Vec<usize> = Vec::new();
        let mul = |x: usize, y: usize| self.mul(x, y);
        let mut seeded = false;
        for g in extra {
            if set.contains(g) {
                continue;
            }
            if !seeded {
                gens = self.generators_of(base);
                seeded = true;
            }
            gens.push(g);
            grow(&mut set, &mut elems, &gens, &mul);
        }
        Subgroup::from_set_unchecked(set)
    }

    /// Subgroup generated by two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if b.is_subgroup_of(a) {
            return *a;
        }
        if a.is_subgroup_of(b) {
            return *b;
        }
        let gb = self.generators_of(b);
        self.closure_from(a, gb)
    }

    /// Irredundant generating set of `h`, chosen greedily in index order.
    pub fn generators_of(&self, h: &Subgroup) -> Vec<usize> {
        let mut set = ElemSet::from_indices([0]);
        let mut elems = vec![0];
        let mut gens = Vec::new();
        let mul = |x: usize, y: usize| self.mul(x, y);
        for x in h.elements() {
            if set.contains(x) {
                continue;
            }
            gens.push(x);
            grow(&mut set, &mut elems, &gens, &mul);
            if set.len() == h.order() {
                break;
            }
        }
        gens
    }

    /// Elements of a set interpreted as a subset; the caller guarantees
    /// closure.
    pub fn subgroup_from_elements<I: IntoIterator<Item = usize>>(&self, it: I) -> Subgroup {
        self.closure(it)
    }

    /// `[A, B]`, the subgroup generated by all `[a, b]`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut comms = ElemSet::from_indices([0]);
        let ga = self.generators_of(a);
        let gb = self.generators_of(b);
        // [A,B] is the normal closure in <A,B> of the generator commutators
        for &x in &ga {
            for &y in &gb {
                comms.insert(self.commutator(x, y));
            }
        }
        let seed = self.closure(comms.iter());
        self.normal_closure(&seed, &self.join(a, b))
    }

    /// Smallest subgroup containing `s` that is normalised by `ambient`.
    pub fn normal_closure(&self, s: &Subgroup, ambient: &Subgroup) -> Subgroup {
        let conjugators = self.generators_of(ambient);
        let mut cur = *s;
        loop {
            let gens = self.generators_of(&cur);
            let mut extra = Vec::new();
            for &g in &conjugators {
                for &x in &gens {
                    let y = self.conj(x, g);
                    if !cur.contains(y) {
                        extra.push(y);
                    }
                }
            }
            if extra.is_empty() {
                return cur;
            }
            cur = self.closure_from(&cur, extra);
        }
    }

    /// Derived subgroup of `h`.
    pub fn derived(&self, h: &Subgroup) -> Subgroup {
        self.commutator_subgroup(h, h)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.full())
    }

    /// Elements commuting with every element of `h`.
    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let gens = self.generators_of(h);
        let set = ElemSet::from_indices(
            (0..self.order).filter(|&x| gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x))),
        );
        Subgroup::from_set_unchecked(set)
    }

    pub fn is_central(&self, h: &Subgroup) -> bool {
        h.is_subgroup_of(&self.center())
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let gens = self.generators_of(h);
        gens.iter().enumerate().all(|(i, &x)| {
            gens[i + 1..]
                .iter()
                .all(|&y| self.mul(x, y) == self.mul(y, x))
        })
    }

    /// `Φ(H) = H'℧(H)` for a subgroup `H` of this p-group.
    pub fn frattini_of(&self, h: &Subgroup) -> Subgroup {
        let p = self.p as u64;
        let powers = h.elements().map(|x| self.pow(x, p)).collect::<Vec<_>>();
        let derived = self.derived(h);
        self.closure_from(&derived, powers)
    }

    /// Conjugation witness for a non-normal subgroup, if any.
    pub fn normality_witness(&self, h: &Subgroup, ambient: &Subgroup) -> Option<(usize, usize)> {
        let conjugators = self.generators_of(ambient);
        let gens = self.generators_of(h);
        for &g in &conjugators {
            for &x in &gens {
                if !h.contains(self.conj(x, g)) {
                    return Some((x, g));
                }
            }
        }
        None
    }

    pub fn is_normal_in(&self, h: &Subgroup, ambient: &Subgroup) -> bool {
        self.normality_witness(h, ambient).is_none()
    }

    /// `g^-1 H g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        Subgroup::from_set_unchecked(ElemSet::from_indices(h.elements().map(|x| self.conj(x, g))))
    }

    /// Element named by a generator label, an element name (whitespace
    /// ignored) or an index. Names win, so `1` is the identity.
    pub fn parse_element(&self, token: &str) -> Result<usize> {
        let token = token.trim();
        if let Some(i) = self.generator_index(token) {
            return Ok(i);
        }
        let squash = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        let want = squash(token);
        if let Some(x) = (0..self.order()).find(|&x| squash(&self.element_name(x)) == want) {
            return Ok(x);
        }
        match token.parse::<usize>() {
            Ok(i) => self.check_element(i),
            Err(_) => Err(Error::UnknownGenerator(token.to_string())),
        }
    }

    /// Subgroup generated by a comma-separated element list; commas inside
    /// parentheses or brackets belong to tuple names. An empty list gives the trivial
    /// subgroup.
    pub fn parse_generated(&self, list: &str) -> Result<Subgroup> {
        let (mut parts, mut depth, mut start) = (Vec::new(), 0i32, 0);
        for (i, c) in list.char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push(&list[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&list[start..]);
        let elems = parts
            .into_iter()
            .filter(|t| !t.trim().is_empty())
            .map(|t| self.parse_element(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(elems))
    }

    /// Checks `x` is an element index of this group.
    pub fn check_element(&self, x: usize) -> Result<usize> {
        if x < self.order {
            Ok(x)
        } else {
            Err(Error::ElementOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }
}

/// A homomorphism between two Cayley-table groups, stored as the image of
/// every source index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    image_of: Vec<usize>,
    target_order: usize,
}

impl Homomorphism {
    pub fn new(image_of: Vec<usize>, target_order: usize) -> Self {
        Self {
            image_of,
            target_order,
        }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self::new((0..g.order()).collect(), g.order())
    }

    pub fn image_of(&self) -> &[usize] {
        &self.image_of
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image_of[x]
    }

    pub fn source_order(&self) -> usize {
        self.image_of.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// Image of a source subgroup, as a subgroup of the target.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_set_unchecked(ElemSet::from_indices(h.elements().map(|x| self.image_of[x])))
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_set_unchecked(ElemSet::from_indices(
            (0..self.image_of.len()).filter(|&x| self.image_of[x] == 0),
        ))
    }

    /// Full preimage of a target subgroup.
    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_set_unchecked(ElemSet::from_indices(
            (0..self.image_of.len()).filter(|&x| s.contains(self.image_of[x])),
        ))
    }

    /// Exhaustive check of `f(xy) = f(x)f(y)`.
    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        self.image_of.len() == source.order()
            && self.target_order == target.order()
            && (0..source.order()).all(|x| {
                (0..source.order())
                    .all(|y| self.apply(source.mul(x, y)) == target.mul(self.apply(x), self.apply(y)))
            })
    }

    pub fn is_bijective(&self) -> bool {
        self.image_of.len() == self.target_order
            && ElemSet::from_indices(self.image_of.iter().copied()).len() == self.target_order
    }
}

/// Quotient by a normal subgroup, with the projection.
///
/// Cosets are numbered by their least element, so the identity coset is
/// index 0.
pub fn quotient(g: &FiniteGroup, normal: &Subgroup) -> Result<(FiniteGroup, Homomorphism)> {
    if let Some((element, conjugator)) = g.normality_witness(normal, &g.full()) {
        return Err(Error::NotNormal {
            element,
            conjugator,
        });
    }
    let mut label = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if label[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for k in normal.elements() {
            label[g.mul(x, k)] = c;
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &r in &reps {
        for &s in &reps {
            table.push(label[g.mul(r, s)] as u16);
        }
    }
    let names = reps.iter().map(|&r| format!("{}N", g.element_name(r))).collect();
    let generators = g
        .labels
        .generators
        .iter()
        .map(|(name, x)| (format!("{name}N"), label[*x]))
        .collect();
    let quot = FiniteGroup::from_table_unchecked(g.p(), table).with_labels(Labels {
        generators,
        elements: Some(names),
    });
    Ok((quot, Homomorphism::new(label, q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_rows(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
    }

    #[test]
    fn trivial_table() {
        let g = validate_table(&[vec![0]], 2).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.n(), 0);
        assert_eq!(g.elem_orders(), &[1]);
    }

    #[test]
    fn cyclic_four_orders() {
        let g = validate_table(&cyclic_rows(4), 2).unwrap();
        assert_eq!(g.elem_orders(), &[1, 4, 2, 4]);
        assert_eq!(g.inv(1), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn rejects_non_prime_power() {
        let err = validate_table(&cyclic_rows(6), 2).unwrap_err();
        assert_eq!(err, Error::OrderNotPrimePower { side: 6, p: 2 });
        let err = validate_table(&cyclic_rows(4), 4).unwrap_err();
        assert!(matches!(err, Error::OrderNotPrimePower { .. }));
    }

    #[test]
    fn rejects_identity_elsewhere() {
        // C2 with the identity at index 1
        let raw = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(
            validate_table(&raw, 2).unwrap_err(),
            Error::NoIdentityAtZero { element: 0 }
        );
    }

    #[test]
    fn rejects_repeated_row_entry() {
        let mut raw = cyclic_rows(4);
        raw[1][2] = 1;
        assert!(matches!(
            validate_table(&raw, 2).unwrap_err(),
            Error::NotLatinSquare { .. }
        ));
    }

    #[test]
    fn rejects_non_associative_loop() {
        // swap an intercalate of the C8 table: still a loop, no longer a group
        let mut raw = cyclic_rows(8);
        let (a, b) = (1, 2);
        raw[a][b] = (a + b + 4) % 8;
        raw[a][b + 4] = (a + b) % 8;
        raw[a + 4][b] = (a + b) % 8;
        raw[a + 4][b + 4] = (a + b + 4) % 8;
        let err = validate_table(&raw, 2).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }), "{err:?}");
    }

    #[test]
    fn quotient_of_cyclic() {
        let g = validate_table(&cyclic_rows(8), 2).unwrap();
        let n = g.closure([4]);
        let (q, proj) = quotient(&g, &n).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.elem_order(proj.apply(1)), 4);
        assert_eq!(proj.kernel(), n);
        assert!(proj.is_homomorphism(&g, &q));
    }

    #[test]
    fn closure_basics() {
        let g = validate_table(&cyclic_rows(8), 2).unwrap();
        assert!(g.closure(std::iter::empty()).is_trivial());
        assert_eq!(g.closure([2]).order(), 4);
        assert_eq!(g.closure([2, 4, 6]).order(), 4);
        assert_eq!(g.closure([6, 1]).order(), 8);
    }
}
