//! Named groups.

use super::{cyclic, heisenberg, prime_power, quaternion, semidirect};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

const NAMED: &[(&str, &str)] = &[
    ("Q8", "quaternion group of order 8"),
    ("Q16", "generalised quaternion group of order 16"),
    ("Q32", "generalised quaternion group of order 32"),
    ("D8", "dihedral group of order 8, sd(4,2,-1)"),
    ("D16", "dihedral group of order 16, sd(8,2,-1)"),
    ("D32", "dihedral group of order 32, sd(16,2,-1)"),
    ("D64", "dihedral group of order 64, sd(32,2,-1)"),
    ("SD16", "semidihedral group of order 16, sd(8,2,3)"),
    ("SD32", "semidihedral group of order 32, sd(16,2,7)"),
    ("M16", "modular group of order 16, sd(8,2,5)"),
    ("M32", "modular group of order 32, sd(16,2,9)"),
    ("Heis3", "Heisenberg group of order 27, exponent 3"),
    ("Heis5", "Heisenberg group of order 125, exponent 5"),
    ("Heis7", "Heisenberg group of order 343, exponent 7"),
];

/// `(name, description)` for every named group; cyclic groups `C<p^k>`
/// are accepted in addition to these.
pub fn catalog_names() -> &'static [(&'static str, &'static str)] {
    NAMED
}

pub fn is_catalog_name(name: &str) -> bool {
    NAMED.iter().any(|(n, _)| *n == name) || cyclic_order(name).is_some()
}

fn cyclic_order(name: &str) -> Option<u64> {
    let digits = name.strip_prefix('C')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: u64 = digits.parse().ok()?;
    prime_power(n).map(|_| n)
}

pub fn catalog(name: &str) -> Result<FiniteGroup> {
    if let Some(n) = cyclic_order(name) {
        let (p, _) = prime_power(n).expect("checked");
        if n > crate::set::MAX_ORDER as u64 {
            return Err(Error::OrderCapExceeded {
                order: n as u128,
                cap: crate::set::MAX_ORDER,
            });
        }
        return Ok(cyclic(n as usize, p));
    }
    let g = match name {
        "Q8" => quaternion(3),
        "Q16" => quaternion(4),
        "Q32" => quaternion(5),
        "D8" => semidirect(4, 2, -1, 2)?,
        "D16" => semidirect(8, 2, -1, 2)?,
        "D32" => semidirect(16, 2, -1, 2)?,
        "D64" => semidirect(32, 2, -1, 2)?,
        "SD16" => semidirect(8, 2, 3, 2)?,
        "SD32" => semidirect(16, 2, 7, 2)?,
        "M16" => semidirect(8, 2, 5, 2)?,
        "M32" => semidirect(16, 2, 9, 2)?,
        "Heis3" => heisenberg(3),
        "Heis5" => heisenberg(5),
        "Heis7" => heisenberg(7),
        _ => return Err(Error::UnknownCatalogName(name.to_string())),
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn involutions(g: &FiniteGroup) -> usize {
        g.elem_orders().iter().filter(|&&o| o == 2).count()
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let q = catalog("Q8").unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(involutions(&q), 1);
        assert!(!q.is_abelian());
        assert_eq!(involutions(&catalog("Q16").unwrap()), 1);
    }

    #[test]
    fn dihedral_involutions() {
        assert_eq!(involutions(&catalog("D8").unwrap()), 5);
        assert_eq!(involutions(&catalog("D16").unwrap()), 9);
        assert_eq!(involutions(&catalog("SD16").unwrap()), 5);
        assert_eq!(involutions(&catalog("M16").unwrap()), 3);
    }

    #[test]
    fn heisenberg_has_exponent_p() {
        let h = catalog("Heis3").unwrap();
        assert_eq!(h.order(), 27);
        assert_eq!(h.exponent(), 3);
        assert!(!h.is_abelian());
        assert_eq!(catalog("Heis5").unwrap().exponent(), 5);
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            catalog("Q9").unwrap_err(),
            Error::UnknownCatalogName("Q9".into())
        );
        assert!(catalog("C6").is_err());
        assert_eq!(catalog("C9").unwrap().p(), 3);
    }
}
