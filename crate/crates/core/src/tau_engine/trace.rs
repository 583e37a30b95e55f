use std::fmt;

use crate::scalar::ExactScalar;

/// What a single rule application contributed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Lower(ExactScalar),
    Upper(ExactScalar),
    Interval(ExactScalar, ExactScalar),
    Exact(ExactScalar),
    /// A structural fact derived about the curve.
    Derived(String),
    /// A validation check that passed.
    Passed(String),
    /// The rule's hypotheses were not met.
    Skipped(String),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Lower(v) => write!(f, "tau >= {v}"),
            Outcome::Upper(v) => write!(f, "tau <= {v}"),
            Outcome::Interval(lo, hi) => write!(f, "{lo} <= tau <= {hi}"),
            Outcome::Exact(v) => write!(f, "tau = {v}"),
            Outcome::Derived(fact) => write!(f, "derived: {fact}"),
            Outcome::Passed(check) => write!(f, "ok: {check}"),
            Outcome::Skipped(reason) => write!(f, "skipped: {reason}"),
        }
    }
}

/// One entry of a derivation trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: &'static str,
    pub inputs: String,
    pub outcome: Outcome,
    /// The statement the rule implements.
    pub citation: &'static str,
    /// Whether the application moved an endpoint of the interval.
    pub tightened: bool,
}

impl RuleApplication {
    pub fn new(rule: &'static str, inputs: impl Into<String>, outcome: Outcome, citation: &'static str) -> Self {
        RuleApplication { rule, inputs: inputs.into(), outcome, citation, tightened: false }
    }

    pub fn is_skip(&self) -> bool {
        matches!(self.outcome, Outcome::Skipped(_))
    }
}

impl fmt::Display for RuleApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}): {}", self.rule, self.inputs, self.outcome)?;
        if self.tightened {
            write!(f, " *")?;
        }
        write!(f, " [{}]", self.citation)
    }
}

pub mod citations {
    pub const SQRT_LOWER: &str = "(tau,1).(tau,1) = tau^2 - g >= 0";
    pub const GLOBAL_UPPER: &str = "some base-point-free pencil of degree g+1 has irreducible curve, so tau <= g";
    pub const PENCIL_LOWER: &str = "(tau,1).(d-1,1) = tau(d-1) - g >= 0, so tau >= g/(d-1)";
    pub const PENCIL_UPPER: &str = "d >= 1 + sqrt(g) and irreducible pencil curve (d-1,1) is nef, so tau <= d-1";
    pub const KOUVIDAKIS: &str = "d <= 1 + [sqrt(g)] and irreducible pencil curve: tau = g/(d-1)";
    pub const EFFECTIVE_LOWER: &str = "(tau,1).(a,b) = tau a - b g >= 0 for effective (a,b)";
    pub const DOUBLE_COVER_LOWER: &str = "a double cover of genus h embeds in C^(2) with R = g - 2h, so tau >= g - 2h";
    pub const MAIN_EXACT: &str =
        "double cover of genus q with q <= (g-1)/8, or q <= k/2 and g > max{2k+1, 4k-3}: tau = g - 2q";
    pub const DEBARRE: &str = "non-hyperelliptic: g = 3 gives 9/5, g = 4 gives 2, g >= 5 gives tau <= g-2 with equality iff bielliptic";
    pub const TRIGONAL: &str = "a g^1_3 curve has no x-degree-1 component since 3 is prime; tau = g/2 for g >= 4";
    pub const FIVE_GONAL: &str = "a g^1_5 curve splits only as 4 or 2+2; g/4 <= tau <= (g+2)/2 for g >= 16";
    pub const TRIPLE_COVER: &str = "B_1(H) inside the composed g^1_6 computes tau = (g-3h)/2 once g >= max{9h+4, 26}";
    pub const ACCOLA: &str = "g <= n1 g1 + n2 g2 + (n1-1)(n2-1) for covers with no common factorization";
    pub const HURWITZ: &str = "ramification degree 2(g-1) - 2n(h-1) >= 0";
    pub const HYPERELLIPTIC: &str = "a double cover of P^1 (a base-point-free g^1_2) means hyperelliptic; every genus-2 curve is hyperelliptic";
    pub const BIELLIPTIC: &str = "bielliptic means a double cover of a genus-1 curve";
    pub const CLASSIFY: &str = "tau >= (3g+1)/4 with g >= 6 means a double cover of a curve of genus (g - tau)/2";
}
