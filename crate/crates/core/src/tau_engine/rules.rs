//! Individual bound rules for `tau(C)`.
//!
//! Each rule is a pure function of the curve data. A rule whose hypotheses
//! are not met returns [`Outcome::Skipped`] with the missing hypothesis; the
//! solver records it and moves on. All rules assume `g >= 2`.

use std::cmp::Ordering;

use crate::cycle_tables::CoverDatum;
use crate::scalar::{floor_sqrt, ExactScalar};

use super::spec::{CurveSpec, DeclaredCover, PencilDatum, TriState};
use super::trace::Outcome;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("Brill-Noether number needs r >= d - g (r={r}, d={d}, g={g})")]
    BrillNoetherHypothesis { g: i64, r: i64, d: i64 },
    #[error("classification needs genus at least 6, got {0}")]
    ClassifyGenus(i64),
    #[error("value lives in Q(sqrt {found}) but genus is {expected}")]
    Parameter { expected: i64, found: u64 },
}

/// `num/den` in `Q(sqrt g)`; `g >= 2` is a precondition of every rule.
pub(crate) fn ratio(num: i64, den: i64, g: i64) -> ExactScalar {
    ExactScalar::from_ratio(num, den, g as u64).expect("genus is at least 2")
}

pub fn rule_sqrt_lower(g: i64) -> ExactScalar {
    ExactScalar::sqrt_of(g as u64).expect("genus is at least 2")
}

pub fn rule_global_upper(g: i64) -> ExactScalar {
    ratio(g, 1, g)
}

pub fn rule_pencil_lower(p: &PencilDatum, g: i64) -> Outcome {
    if !p.base_point_free {
        return Outcome::Skipped("pencil is not base-point-free".into());
    }
    Outcome::Lower(ratio(g, p.d - 1, g))
}

/// `true` when `d >= 1 + sqrt(g)`, i.e. `(d-1)^2 >= g`.
fn at_least_one_plus_root(d: i64, g: i64) -> bool {
    d >= 1 && (d - 1) * (d - 1) >= g
}

pub fn rule_pencil_upper(p: &PencilDatum, g: i64) -> Outcome {
    if !p.base_point_free {
        return Outcome::Skipped("pencil is not base-point-free".into());
    }
    if p.gamma_irreducible != TriState::Yes {
        return Outcome::Skipped(format!("irreducibility of the pencil curve is {}", p.gamma_irreducible));
    }
    if !at_least_one_plus_root(p.d, g) {
        return Outcome::Skipped(format!("{} < 1 + sqrt({g})", p.d));
    }
    Outcome::Upper(ratio(p.d - 1, 1, g))
}

pub fn rule_kouvidakis(p: &PencilDatum, g: i64) -> Outcome {
    if !p.base_point_free {
        return Outcome::Skipped("pencil is not base-point-free".into());
    }
    if p.gamma_irreducible != TriState::Yes {
        return Outcome::Skipped(format!("irreducibility of the pencil curve is {}", p.gamma_irreducible));
    }
    let limit = 1 + floor_sqrt(g as u64) as i64;
    if p.d > limit {
        return Outcome::Skipped(format!("{} > 1 + [sqrt({g})] = {limit}", p.d));
    }
    Outcome::Exact(ratio(g, p.d - 1, g))
}

/// Lower bound `b g / a` from an effective class `(a, b)` with `a, b > 0`.
pub fn rule_effective_lower(a: i64, b: i64, g: i64) -> Outcome {
    if a <= 0 || b <= 0 {
        return Outcome::Skipped(format!("({a}, {b}) is not a positive class"));
    }
    Outcome::Lower(ratio(b * g, a, g))
}

pub fn rule_double_cover_lower(c: CoverDatum, g: i64) -> Outcome {
    if !c.is_double() {
        return Outcome::Skipped(format!("{}-sheeted cover", c.n));
    }
    if c.check_admissible(g).is_err() {
        return Outcome::Skipped("cover is not admissible".into());
    }
    Outcome::Lower(ratio(g - 2 * c.h, 1, g))
}

/// Whether `tau = g - 2h` follows for a double cover of a genus-`h` curve.
/// The default test is `g >= 6` and `8h <= g - 1`; an explicit `k` adds the
/// test `g > max{2k+1, 4k-3}` and `2h <= k`.
pub fn main_exact_applies(h: i64, g: i64, k: Option<i64>) -> bool {
    let corollary = g >= 6 && 8 * h < g;
    let theorem = k.is_some_and(|k| k >= 0 && g > (2 * k + 1).max(4 * k - 3) && 2 * h <= k);
    corollary || theorem
}

pub fn rule_main_exact(c: CoverDatum, g: i64, k: Option<i64>) -> Outcome {
    if !c.is_double() {
        return Outcome::Skipped(format!("{}-sheeted cover", c.n));
    }
    if !main_exact_applies(c.h, g, k) {
        let detail = match k {
            Some(k) => format!("h={} > (g-1)/8 and k={k} does not apply", c.h),
            None => format!("h={} > (g-1)/8 or g < 6", c.h),
        };
        return Outcome::Skipped(detail);
    }
    Outcome::Exact(ratio(g - 2 * c.h, 1, g))
}

pub fn rule_debarre(spec: &CurveSpec) -> Outcome {
    let g = spec.g;
    match spec.hyperelliptic {
        TriState::Yes => return Outcome::Skipped("curve is hyperelliptic".into()),
        TriState::Unknown => return Outcome::Skipped("hyperelliptic is unknown".into()),
        TriState::No => {}
    }
    match g {
        3 => Outcome::Exact(ratio(9, 5, g)),
        4 => Outcome::Exact(ratio(2, 1, g)),
        g if g >= 5 => match spec.bielliptic {
            TriState::Yes => Outcome::Exact(ratio(g - 2, 1, g)),
            _ => Outcome::Upper(ratio(g - 2, 1, g)),
        },
        _ => Outcome::Skipped("genus 2 curves are hyperelliptic".into()),
    }
}

fn bpf_pencil_of_degree(spec: &CurveSpec, d: i64) -> bool {
    spec.pencils.iter().any(|p| p.d == d && p.base_point_free)
}

/// Trigonal curves of genus at least 4: the `g^1_3` curve is irreducible and
/// `tau = g/2`.
pub fn rule_trigonal(spec: &CurveSpec) -> Outcome {
    let g = spec.g;
    if !bpf_pencil_of_degree(spec, 3) {
        return Outcome::Skipped("no base-point-free pencil of degree 3".into());
    }
    if spec.hyperelliptic != TriState::No {
        return Outcome::Skipped(format!("hyperelliptic is {}", spec.hyperelliptic));
    }
    if g < 4 {
        return Outcome::Skipped(format!("genus {g} < 4"));
    }
    Outcome::Exact(ratio(g, 2, g))
}

pub fn rule_five_gonal(spec: &CurveSpec) -> Outcome {
    let g = spec.g;
    if !bpf_pencil_of_degree(spec, 5) {
        return Outcome::Skipped("no base-point-free pencil of degree 5".into());
    }
    if spec.hyperelliptic != TriState::No {
        return Outcome::Skipped(format!("hyperelliptic is {}", spec.hyperelliptic));
    }
    if g < 16 {
        return Outcome::Skipped(format!("genus {g} < 16"));
    }
    Outcome::Interval(ratio(g, 4, g), ratio(g + 2, 2, g))
}

/// Smallest genus from which a triple cover of a genus-`h` curve with a
/// `g^1_2` has `tau = (g - 3h)/2`.
pub fn triple_cover_threshold(h: i64) -> i64 {
    (9 * h + 4).max(26)
}

pub fn rule_triple_cover_h12(g: i64, cover: &DeclaredCover) -> Outcome {
    let c = cover.datum;
    if c.n != 3 {
        return Outcome::Skipped(format!("{}-sheeted cover", c.n));
    }
    if !cover.target_has_g12 {
        return Outcome::Skipped("target has no base-point-free g^1_2".into());
    }
    let threshold = triple_cover_threshold(c.h);
    if g < threshold {
        return Outcome::Skipped(format!("genus {g} < {threshold}"));
    }
    Outcome::Exact(ratio(g - 3 * c.h, 2, g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccolaOutcome {
    Ok { bound: i64 },
    Violation { bound: i64 },
}

/// Checks `g <= n1 h1 + n2 h2 + (n1-1)(n2-1)`.
pub fn rule_accola_check(c1: CoverDatum, c2: CoverDatum, g: i64) -> AccolaOutcome {
    let bound = c1.n * c1.h + c2.n * c2.h + (c1.n - 1) * (c2.n - 1);
    if g <= bound {
        AccolaOutcome::Ok { bound }
    } else {
        AccolaOutcome::Violation { bound }
    }
}

/// `rho(g, r, d) = g - (r+1)(g-d+r)`, defined for `r >= d - g`.
pub fn brill_noether_rho(g: i64, r: i64, d: i64) -> Result<i64, RuleError> {
    if r < d - g {
        return Err(RuleError::BrillNoetherHypothesis { g, r, d });
    }
    Ok(g - (r + 1) * (g - d + r))
}

/// Upper bound `[(g+3)/2]` on the gonality.
pub fn gonality_bound(g: i64) -> i64 {
    (g + 3).div_euclid(2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TauClassification {
    /// `tau >= (3g+1)/4` and the curve is a double cover of this genus.
    DoubleCover { target_genus: i64 },
    /// `tau` is above the threshold but `(g - tau)/2` is not a genus.
    Infeasible { reason: String },
    BelowThreshold,
}

pub fn classify_from_tau(g: i64, tau: &ExactScalar) -> Result<TauClassification, RuleError> {
    if g < 6 {
        return Err(RuleError::ClassifyGenus(g));
    }
    if tau.parameter() != g as u64 {
        return Err(RuleError::Parameter { expected: g, found: tau.parameter() });
    }
    let threshold = ratio(3 * g + 1, 4, g);
    if tau.try_cmp(&threshold).expect("same parameter") == Ordering::Less {
        return Ok(TauClassification::BelowThreshold);
    }
    let Some(value) = tau.as_rational() else {
        return Ok(TauClassification::Infeasible { reason: format!("tau = {tau} is irrational") });
    };
    let genus = (num_rational::BigRational::from_integer(g.into()) - value) / num_rational::BigRational::from_integer(2.into());
    if !genus.is_integer() || genus < num_rational::BigRational::from_integer(0.into()) {
        return Ok(TauClassification::Infeasible {
            reason: format!("(g - tau)/2 = {} is not a nonnegative integer", crate::scalar::format_rational(&genus)),
        });
    }
    let target_genus = genus.to_integer().try_into().expect("genus fits in i64");
    Ok(TauClassification::DoubleCover { target_genus })
}
