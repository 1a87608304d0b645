//! Executable catalogue of the structural results about the X-series and
//! complements, evaluated on concrete groups.
//!
//! Every check quantifies over the subgroups it talks about and reports a
//! witness when a claimed property fails. Checks that need the whole
//! subgroup lattice are skipped above [`Guards::suite_max_order`].

mod checks;
pub mod oracle;
pub mod sweep;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::config::Guards;
use crate::construct::GroupExpr;
use crate::group::FiniteGroup;
use crate::set::Subgroup;

pub use oracle::{compare_with_oracle, oracle_layer, oracle_subgroups, OracleComparison};
pub use sweep::{
    catalog_sweep, default_entries, default_sweep, run_entries, sweep_entries, sweep_groups, SweepEntry,
};

macro_rules! check_ids {
    ($($variant:ident => $slug:literal, $desc:literal;)*) => {
        /// One verifiable statement.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CheckId {
            $($variant,)*
        }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant,)*];

            pub fn slug(self) -> &'static str {
                match self {
                    $(CheckId::$variant => $slug,)*
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(CheckId::$variant => $desc,)*
                }
            }
        }
    };
}

check_ids! {
    XCharacteristicAndFrattini => "x-characteristic-and-frattini",
        "every X_i(G) is characteristic and X_1(G) = Φ(G)";
    LayerRecursion => "layer-recursion",
        "X_k(G) is the intersection of X_j(T) over T in pc_{k-j}(G)";
    XDescending => "x-descending",
        "X_{i+1}(G) ≤ X_i(G)";
    FrattiniSeriesBelowLayer => "frattini-series-below-layer",
        "Φ_i(G) ≤ T for every T in pc_i(G)";
    FrattiniSeriesBelowX => "frattini-series-below-x",
        "Φ_i(G) ≤ X_i(G)";
    XQuotientBelow => "x-quotient-below",
        "X_i(G/N) = X_i(G)N/N for normal N ≤ X_i(G)";
    QuotientCounterexample => "quotient-counterexample",
        "sd(4,4,3) with N = <a^2 b^2>: X_2(G/N) ≠ X_2(G)N/N";
    SubgroupMonotone => "subgroup-monotone",
        "X_i(M) ≤ X_i(G) for every M ≤ G";
    XComposition => "x-composition",
        "X_i(X_j(G)) ≤ X_{i+j}(G) and X_i(G)/X_{i+1}(G) is elementary abelian";
    NormalComplementSandwich => "normal-complement-sandwich",
        "X_i(N)X_i(H) ≤ X_i(G) ≤ N X_i(H) when H complements a normal N";
    NormalComplementIntersection => "normal-complement-intersection",
        "X_i(H) = X_i(G) ∩ H when H complements a normal N";
    NormalComplementXComplement => "normal-complement-x-complement",
        "X_i(H) complements N ∩ X_i(G) in X_i(G)";
    DirectProduct => "direct-product",
        "X_i(A x B) = X_i(A) x X_i(B)";
    AbelianCollapse => "abelian-collapse",
        "abelian G: X_i = Φ_i = ℧_i, X_j(X_i) = X_{i+j}, ℧_i(℧_j) = ℧_{i+j}";
    CyclicEquivalence => "cyclic-equivalence",
        "cyclic C of order p^n: C ∩ X_n(G) = 1 iff C has a complement iff the x-condition holds";
    LowerCentralInX => "lower-central-in-x",
        "γ_{p^{i-1}+1}(G) ≤ X_i(G)";
    WreathOptimality => "wreath-optimality",
        "L(p,i) has X_i = 1, class p^{i-1} and γ_{p^{i-1}} ≠ 1";
    FrattiniCommutator2Group => "frattini-commutator-2group",
        "p = 2: [G, Φ(G)] ≤ X_2(G)";
    FrattiniCommutatorOddCounterexample => "frattini-commutator-odd-counterexample",
        "C_p wr C_p, p odd: X_2 = 1 but [G, Φ(G)] ≠ 1";
    AbelianPureIffComplemented => "abelian-pure-iff-complemented",
        "abelian G: B is pure iff B has a complement";
    AbelianPureIffXCondition => "abelian-pure-iff-x-condition",
        "abelian G: B is pure iff B satisfies the x-condition";
    XConditionImpliesComplement => "x-condition-implies-complement",
        "abelian A with the x-condition has a complement";
    NormalComplementImpliesXCondition => "normal-complement-implies-x-condition",
        "H with a normal complement satisfies the x-condition";
    DihedralProperty => "dihedral-property",
        "dihedral A: every 1 < H ≤ A has a normal cyclic 1 < C with a complement in H";
    MaximalSubgroupCounterexample => "maximal-subgroup-counterexample",
        "C4 x sd(4,4,3) has a maximal M with Φ(M) = Φ(G) and no complement";
    CentralIff => "central-iff",
        "central A has a complement iff it satisfies the x-condition";
    GoodSeriesAxioms => "good-series-axioms",
        "the omega, agemo and combined series satisfy the good-series axioms";
    WConditionImpliesComplement => "w-condition-implies-complement",
        "abelian A with the w-condition has a complement";
    ExponentPAgemoCaveat => "exponent-p-agemo-caveat",
        "exponent p: the agemo condition always holds yet some A ≤ Φ has no complement";
    XTermComplement => "x-term-complement",
        "abelian A with the x-condition: A ∩ X_i(G) has a complement in X_i(G)";
    XDecomposition => "x-decomposition",
        "normal abelian A with the x-condition: X_i(G) = X_i(A) X_i(H) for every complement H";
    FrattiniAvoidingDirectFactor => "frattini-avoiding-direct-factor",
        "normal A with A ∩ Φ(G) = 1 has a normal complement";
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.slug() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.slug())
    }
}

/// What went wrong, with the subgroups involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<u32>,
    pub subgroups: Vec<Subgroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Pass { detail: String },
    Fail { witness: Witness },
    Skipped { reason: String },
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Outcome::Skipped { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass { .. } => "pass",
            Outcome::Fail { .. } => "FAIL",
            Outcome::Skipped { .. } => "skip",
        }
    }

    pub fn text(&self) -> &str {
        match self {
            Outcome::Pass { detail } => detail,
            Outcome::Fail { witness } => &witness.message,
            Outcome::Skipped { reason } => reason,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: CheckId,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub p: u32,
    pub order: usize,
    /// Set when the time budget ran out before every check started.
    pub partial: bool,
    pub results: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.outcome.is_pass()).count()
    }

    pub fn failed(&self) -> usize {
        self.results.iter().filter(|r| r.outcome.is_fail()).count()
    }

    pub fn skipped(&self) -> usize {
        self.results.iter().filter(|r| r.outcome.is_skipped()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn result(&self, id: CheckId) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> + '_ {
        self.results.iter().filter(|r| r.outcome.is_fail())
    }
}

/// Runs `checks` on `group`, which was built from `expr`.
///
/// Once `budget` is spent the remaining checks are reported as skipped and
/// the report is marked partial.
pub fn run_suite(
    expr: &GroupExpr,
    group: &FiniteGroup,
    checks: &[CheckId],
    budget: Option<Duration>,
    guards: &Guards,
) -> VerificationReport {
    let start = Instant::now();
    let ctx = checks::Ctx::new(expr, group, guards);
    let mut partial = false;
    let mut results = Vec::with_capacity(checks.len());
    for &id in checks {
        if budget.is_some_and(|b| start.elapsed() > b) {
            partial = true;
            results.push(CheckResult {
                id,
                outcome: Outcome::Skipped {
                    reason: "budget exceeded".into(),
                },
                millis: 0.0,
            });
            continue;
        }
        let t = Instant::now();
        let outcome = ctx.run(id);
        results.push(CheckResult {
            id,
            outcome,
            millis: t.elapsed().as_secs_f64() * 1e3,
        });
    }
    VerificationReport {
        group: expr.to_string(),
        p: group.p(),
        order: group.order(),
        partial,
        results,
    }
}
