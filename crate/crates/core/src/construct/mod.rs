//! Constructors for the example groups and closed-form families.
//!
//! Element numbering is fixed per constructor:
//!
//! * `C_n`: residue `x` is index `x`; generator `a = 1`.
//! * `sd(n,m,k)` = `<a, b | a^n = b^m = 1, b^-1 a b = a^k>`: element
//!   `b^y a^x` is index `y*n + x`; `a = 1`, `b = n`.
//! * `A x B`: pair `(x, y)` is index `x*|B| + y`; generators are the
//!   factor generators prefixed `L.` and `R.`.
//! * `wr(B, p)` = `B^p x| C_p`: element `(f_0..f_{p-1}; t)` is index
//!   `sum f_j |B|^j + t |B|^p`; the top cycle is `t`, base generators in
//!   coordinate 0 are prefixed `f.`.
//! * `L(p, i)`: `C_p` wreathed with `C_p` `i - 1` times, left to right.
//! * quaternion `Q_{2^k}`: `b^y a^x` is index `y*2^(k-1) + x` with
//!   `b^2 = a^(2^(k-2))` and `b^-1 a b = a^-1`.
//! * `Heis_p`: unitriangular `(x, y, z)` is index `x + p y + p^2 z`, with
//!   `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y')`; `a = (1,0,0)`,
//!   `b = (0,1,0)`, `c = (0,0,1)`.

pub mod catalog;
pub mod dsl;

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::group::{is_prime, validate_table, FiniteGroup, Labels, ProductShape};
use crate::set::{ElemSet, Subgroup, MAX_ORDER};

pub use catalog::{catalog, catalog_names};

/// Abstract syntax of the constructor language.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Cyclic(u64),
    DirectProduct(Box<GroupExpr>, Box<GroupExpr>),
    /// `C_n x| C_m` with `b^-1 a b = a^k`.
    CyclicSemidirect { n: u64, m: u64, k: i64 },
    WreathCyclic { base: Box<GroupExpr>, p: u32 },
    IteratedWreath { p: u32, i: u32 },
    Catalog(String),
    TableFile(PathBuf),
}

impl GroupExpr {
    pub fn product(l: GroupExpr, r: GroupExpr) -> Self {
        GroupExpr::DirectProduct(Box::new(l), Box::new(r))
    }

    pub fn wreath(base: GroupExpr, p: u32) -> Self {
        GroupExpr::WreathCyclic {
            base: Box::new(base),
            p,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_order: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { max_order: 512 }
    }
}

/// Smallest prime factor and the exponent, for prime powers.
pub(crate) fn prime_power(v: u64) -> Option<(u32, u32)> {
    if v == 0 {
        return None;
    }
    if v == 1 {
        return Some((2, 0));
    }
    let p = (2..=v).find(|d| v.is_multiple_of(*d))?;
    let (mut rest, mut e) = (v, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

/// Prime (if the group is nontrivial) and order of an expression, without
/// building it.
fn shape(expr: &GroupExpr) -> Result<(Option<u32>, u128)> {
    match expr {
        GroupExpr::Cyclic(n) => {
            let (p, _) = prime_power(*n).ok_or(Error::NotPrimePower(*n))?;
            Ok(((*n > 1).then_some(p), *n as u128))
        }
        GroupExpr::DirectProduct(l, r) => {
            let (pl, ol) = shape(l)?;
            let (pr, or) = shape(r)?;
            Ok((merge_primes(pl, pr)?, ol.saturating_mul(or)))
        }
        GroupExpr::CyclicSemidirect { n, m, .. } => {
            let (pn, _) = prime_power(*n).ok_or(Error::NotPrimePower(*n))?;
            let (pm, _) = prime_power(*m).ok_or(Error::NotPrimePower(*m))?;
            let p = merge_primes((*n > 1).then_some(pn), (*m > 1).then_some(pm))?;
            Ok((p, (*n as u128).saturating_mul(*m as u128)))
        }
        GroupExpr::WreathCyclic { base, p } => {
            if !is_prime(*p as u64) {
                return Err(Error::NotPrimePower(*p as u64));
            }
            let (pb, ob) = shape(base)?;
            merge_primes(pb, Some(*p))?;
            Ok((Some(*p), checked_pow(ob, *p).saturating_mul(*p as u128)))
        }
        GroupExpr::IteratedWreath { p, i } => {
            if !is_prime(*p as u64) {
                return Err(Error::NotPrimePower(*p as u64));
            }
            let mut order: u128 = 1;
            for _ in 0..*i {
                order = checked_pow(order, *p).saturating_mul(*p as u128);
            }
            Ok(((*i > 0).then_some(*p), order))
        }
        GroupExpr::Catalog(name) => {
            let g = catalog(name)?;
            Ok(((g.order() > 1).then_some(g.p()), g.order() as u128))
        }
        GroupExpr::TableFile(path) => {
            let g = load_table_file(path)?;
            Ok(((g.order() > 1).then_some(g.p()), g.order() as u128))
        }
    }
}

fn checked_pow(base: u128, e: u32) -> u128 {
    base.checked_pow(e).unwrap_or(u128::MAX)
}

fn merge_primes(a: Option<u32>, b: Option<u32>) -> Result<Option<u32>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::MixedPrimes { left: x, right: y }),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        (None, None) => Ok(None),
    }
}

pub fn build(expr: &GroupExpr) -> Result<FiniteGroup> {
    build_with(expr, &BuildOptions::default())
}

/// Evaluates an expression into a validated group.
pub fn build_with(expr: &GroupExpr, opts: &BuildOptions) -> Result<FiniteGroup> {
    let cap = opts.max_order.min(MAX_ORDER);
    let (prime, order) = shape(expr)?;
    if order > cap as u128 {
        return Err(Error::OrderCapExceeded { order, cap });
    }
    let g = build_inner(expr, prime.unwrap_or(2))?;
    debug_assert!(validate_table(&g.to_rows(), g.p()).is_ok());
    Ok(g)
}

fn build_inner(expr: &GroupExpr, p: u32) -> Result<FiniteGroup> {
    Ok(match expr {
        GroupExpr::Cyclic(n) => cyclic(*n as usize, p),
        GroupExpr::DirectProduct(l, r) => {
            direct_product(&build_inner(l, p)?, &build_inner(r, p)?)
        }
        GroupExpr::CyclicSemidirect { n, m, k } => semidirect(*n, *m, *k, p)?,
        GroupExpr::WreathCyclic { base, p: top } => wreath(&build_inner(base, p)?, *top),
        GroupExpr::IteratedWreath { p: q, i } => iterated_wreath(*q, *i),
        GroupExpr::Catalog(name) => {
            let g = catalog(name)?;
            if g.order() == 1 {
                FiniteGroup::trivial(p).with_labels(g.labels().clone())
            } else {
                g
            }
        }
        GroupExpr::TableFile(path) => load_table_file(path)?,
    })
}

fn power_name(gen: &str, e: usize) -> Option<String> {
    match e {
        0 => None,
        1 => Some(gen.to_string()),
        _ => Some(format!("{gen}^{e}")),
    }
}

fn word(parts: &[Option<String>]) -> String {
    let s: Vec<&str> = parts.iter().flatten().map(String::as_str).collect();
    if s.is_empty() {
        "1".into()
    } else {
        s.join(" ")
    }
}

pub(crate) fn from_rows(p: u32, table: Vec<u16>, labels: Labels) -> FiniteGroup {
    FiniteGroup::from_table_unchecked(p, table).with_labels(labels)
}

pub(crate) fn cyclic(n: usize, p: u32) -> FiniteGroup {
    let table = (0..n)
        .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u16))
        .collect();
    let generators = if n > 1 { vec![("a".to_string(), 1)] } else { vec![] };
    let elements = (0..n).map(|x| word(&[power_name("a", x)])).collect();
    from_rows(
        p,
        table,
        Labels {
            generators,
            elements: Some(elements),
        },
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(base: u64, e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    for _ in 0..e {
        acc = acc * base % m;
    }
    acc
}

pub(crate) fn semidirect(n: u64, m: u64, k: i64, p: u32) -> Result<FiniteGroup> {
    let kr = k.rem_euclid(n as i64) as u64;
    if n > 1 && (gcd(kr, n) != 1 || pow_mod(kr, m, n) != 1) {
        return Err(Error::InvalidAction { n, m, k });
    }
    let (n, m) = (n as usize, m as usize);
    let kpow: Vec<usize> = (0..m).map(|v| pow_mod(kr, v as u64, n as u64) as usize).collect();
    let mut table = Vec::with_capacity(n * m * n * m);
    for y in 0..m {
        for x in 0..n {
            for v in 0..m {
                for u in 0..n {
                    let yy = (y + v) % m;
                    let xx = (x * kpow[v] + u) % n;
                    table.push((yy * n + xx) as u16);
                }
            }
        }
    }
    let mut generators = Vec::new();
    if n > 1 {
        generators.push(("a".to_string(), 1));
    }
    if m > 1 {
        generators.push(("b".to_string(), n));
    }
    let elements = (0..n * m)
        .map(|idx| word(&[power_name("b", idx / n), power_name("a", idx % n)]))
        .collect();
    Ok(from_rows(
        p,
        table,
        Labels {
            generators,
            elements: Some(elements),
        },
    ))
}

/// Generalised quaternion group of order `2^k`, `k >= 3`.
pub(crate) fn quaternion(k: u32) -> FiniteGroup {
    let n = 1usize << (k - 1);
    let half = n / 2;
    let mut table = Vec::with_capacity(4 * n * n);
    for y in 0..2 {
        for x in 0..n {
            for v in 0..2 {
                for u in 0..n {
                    let signed = if v == 0 { x } else { (n - x) % n };
                    let (yy, extra) = if y + v == 2 { (0, half) } else { (y + v, 0) };
                    let xx = (signed + u + extra) % n;
                    table.push((yy * n + xx) as u16);
                }
            }
        }
    }
    let elements = (0..2 * n)
        .map(|idx| word(&[power_name("b", idx / n), power_name("a", idx % n)]))
        .collect();
    from_rows(
        2,
        table,
        Labels {
            generators: vec![("a".into(), 1), ("b".into(), n)],
            elements: Some(elements),
        },
    )
}

/// Unitriangular 3x3 matrices over `F_p`.
pub(crate) fn heisenberg(p: u32) -> FiniteGroup {
    let q = p as usize;
    let order = q * q * q;
    let split = |i: usize| (i % q, (i / q) % q, i / (q * q));
    let mut table = Vec::with_capacity(order * order);
    for i in 0..order {
        let (x, y, z) = split(i);
        for j in 0..order {
            let (u, v, w) = split(j);
            let r = ((x + u) % q) + q * ((y + v) % q) + q * q * ((z + w + x * v) % q);
            table.push(r as u16);
        }
    }
    let elements = (0..order)
        .map(|i| {
            let (x, y, z) = split(i);
            format!("({x},{y},{z})")
        })
        .collect();
    from_rows(
        p,
        table,
        Labels {
            generators: vec![("a".into(), 1), ("b".into(), q), ("c".into(), q * q)],
            elements: Some(elements),
        },
    )
}

pub(crate) fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let order = na * nb;
    let mut table = Vec::with_capacity(order * order);
    for i in 0..order {
        let (x, y) = (i / nb, i % nb);
        for j in 0..order {
            let (u, v) = (j / nb, j % nb);
            table.push((a.mul(x, u) * nb + b.mul(y, v)) as u16);
        }
    }
    let p = if na > 1 { a.p() } else { b.p() };
    let mut generators: Vec<(String, usize)> = a
        .labels()
        .generators
        .iter()
        .map(|(s, x)| (format!("L.{s}"), x * nb))
        .collect();
    generators.extend(
        b.labels()
            .generators
            .iter()
            .map(|(s, y)| (format!("R.{s}"), *y)),
    );
    let elements = (0..order)
        .map(|i| format!("({}, {})", a.element_name(i / nb), b.element_name(i % nb)))
        .collect();
    from_rows(
        p,
        table,
        Labels {
            generators,
            elements: Some(elements),
        },
    )
    .with_product(ProductShape {
        left_order: na,
        right_order: nb,
    })
}

pub(crate) fn wreath(base: &FiniteGroup, p: u32) -> FiniteGroup {
    let q = p as usize;
    let nb = base.order();
    let base_size = nb.pow(p);
    let order = base_size * q;
    let digits = |mut idx: usize| -> (Vec<usize>, usize) {
        let mut f = Vec::with_capacity(q);
        for _ in 0..q {
            f.push(idx % nb);
            idx /= nb;
        }
        (f, idx)
    };
    let decoded: Vec<(Vec<usize>, usize)> = (0..order).map(digits).collect();
    let mut table = Vec::with_capacity(order * order);
    for (f, s) in &decoded {
        for (g, t) in &decoded {
            let mut idx = 0;
            for j in (0..q).rev() {
                let shifted = g[(j + q - s) % q];
                idx = idx * nb + base.mul(f[j], shifted);
            }
            table.push((idx + ((s + t) % q) * base_size) as u16);
        }
    }
    let mut generators: Vec<(String, usize)> = base
        .labels()
        .generators
        .iter()
        .map(|(s, x)| (format!("f.{s}"), *x))
        .collect();
    generators.push(("t".into(), base_size));
    let elements = decoded
        .iter()
        .map(|(f, t)| {
            let parts: Vec<String> = f.iter().map(|x| x.to_string()).collect();
            format!("[{}|{}]", parts.join(","), t)
        })
        .collect();
    from_rows(
        p,
        table,
        Labels {
            generators,
            elements: Some(elements),
        },
    )
}

pub(crate) fn iterated_wreath(p: u32, i: u32) -> FiniteGroup {
    if i == 0 {
        return FiniteGroup::trivial(p);
    }
    let mut g = cyclic(p as usize, p);
    for _ in 1..i {
        g = wreath(&g, p);
    }
    g
}

/// Loads the text Cayley-table format: a `p n` header followed by `p^n`
/// rows of `p^n` indices. If the identity is not at index 0 it is swapped
/// there before validation.
pub fn load_table_file(path: &std::path::Path) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::TableFile(format!("{}: {e}", path.display())))?;
    parse_table_text(&text)
}

pub fn parse_table_text(text: &str) -> Result<FiniteGroup> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::TableFile("empty file".into()))?;
    let nums: Vec<u32> = header
        .split_whitespace()
        .map(|t| t.parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::TableFile(format!("bad header: {e}")))?;
    let [p, n] = nums[..] else {
        return Err(Error::TableFile("header must be `p n`".into()));
    };
    let side = (p as usize)
        .checked_pow(n)
        .filter(|&s| s <= MAX_ORDER)
        .ok_or(Error::SizeGuardExceeded {
            what: "table file order",
            actual: usize::MAX,
            limit: MAX_ORDER,
        })?;
    let mut raw = Vec::with_capacity(side);
    for (r, line) in lines.enumerate() {
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::TableFile(format!("row {r}: {e}")))?;
        raw.push(row);
    }
    if raw.len() != side {
        return Err(Error::TableFile(format!(
            "expected {side} rows, found {}",
            raw.len()
        )));
    }
    let identity = (0..side).find(|&e| {
        raw[e].len() == side
            && raw[e].iter().enumerate().all(|(j, &v)| v == j)
            && raw.iter().enumerate().all(|(j, row)| row.get(e) == Some(&j))
    });
    if let Some(e) = identity.filter(|&e| e != 0) {
        let swap = |x: usize| match x {
            0 => e,
            x if x == e => 0,
            x => x,
        };
        raw = (0..side)
            .map(|i| (0..side).map(|j| swap(raw[swap(i)][swap(j)])).collect())
            .collect();
    }
    validate_table(&raw, p)
}

/// Writes a group in the text table format.
pub fn to_table_text(g: &FiniteGroup) -> String {
    let mut out = format!("{} {}\n", g.p(), g.n());
    for row in g.to_rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// The subgroup `S x T` of a group built as `A x B`, where `S <= A` and
/// `T <= B` are given as subgroups of the factor groups.
pub fn lift_subgroup_product(g: &FiniteGroup, s: &Subgroup, t: &Subgroup) -> Result<Subgroup> {
    let shape = g.product_shape().ok_or(Error::NotADirectProduct)?;
    let nb = shape.right_order;
    let mut set = ElemSet::empty();
    for x in s.elements() {
        for y in t.elements() {
            set.insert(x * nb + y);
        }
    }
    Ok(Subgroup::from_set_unchecked(set))
}
