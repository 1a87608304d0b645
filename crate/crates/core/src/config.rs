//! Size guards for the factorial-time searches.

use std::env;

/// Hard ceiling for isomorphism and automorphism searches.
pub const ISO_HARD_CAP: usize = 256;

/// Environment variable holding guard overrides, e.g.
/// `XSERIES_GUARDS="iso=128,lattice=256,order=512"`.
/// Keys: `iso`, `aut`, `auts`, `lattice`, `order`, `oracle`, `suite`.
pub const GUARDS_ENV: &str = "XSERIES_GUARDS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Largest order accepted by isomorphism search (clamped to 256).
    pub iso_max_order: usize,
    /// Largest order accepted by automorphism enumeration.
    pub aut_max_order: usize,
    /// Abort automorphism enumeration past this many automorphisms.
    pub max_automorphisms: usize,
    /// Largest order for which the full lattice is built.
    pub lattice_max_order: usize,
    /// Largest order a constructor may produce.
    pub build_max_order: usize,
    /// Largest order accepted by the brute-force subgroup oracle.
    pub oracle_max_order: usize,
    /// Largest order on which harness checks quantifying over every
    /// subgroup are run.
    pub suite_max_order: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            iso_max_order: 64,
            aut_max_order: 64,
            max_automorphisms: 20_000,
            lattice_max_order: 128,
            build_max_order: 512,
            oracle_max_order: 64,
            suite_max_order: 81,
        }
    }
}

impl Guards {
    /// Defaults overridden by [`GUARDS_ENV`] when set. Unknown keys and
    /// malformed values are ignored.
    pub fn from_env() -> Self {
        let mut g = Self::default();
        if let Ok(overrides) = env::var(GUARDS_ENV) {
            g.apply(&overrides);
        }
        g
    }

    pub fn apply(&mut self, overrides: &str) {
        for item in overrides.split(',') {
            let Some((key, value)) = item.split_once('=') else {
                continue;
            };
            let Ok(v) = value.trim().parse::<usize>() else {
                continue;
            };
            match key.trim() {
                "iso" => self.iso_max_order = v,
                "aut" => self.aut_max_order = v,
                "auts" => self.max_automorphisms = v,
                "lattice" => self.lattice_max_order = v,
                "order" => self.build_max_order = v,
                "oracle" => self.oracle_max_order = v,
                "suite" => self.suite_max_order = v,
                _ => {}
            }
        }
    }

    pub fn iso_limit(&self) -> usize {
        self.iso_max_order.min(ISO_HARD_CAP)
    }

    pub fn aut_limit(&self) -> usize {
        self.aut_max_order.min(ISO_HARD_CAP)
    }
}
