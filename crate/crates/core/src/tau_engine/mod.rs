//! Monotone interval solver for `tau(C)`.
//!
//! `tau(C)` is the infimum of `mu >= 0` such that `(mu + 1) x - delta/2` is
//! nef on `C^(2)`. The solver keeps an exact interval `[lo, hi]` in
//! `Q(sqrt g)`, seeds it with `sqrt(g) <= tau <= g`, then applies every rule
//! in a fixed order until a pass adds nothing new.
//!
//! Rule order: seeds, validation checks, exactness rules, interval rules.

mod rules;
mod spec;
mod trace;

use std::cmp::Ordering;
use std::collections::BTreeSet;

pub use rules::{
    brill_noether_rho, classify_from_tau, gonality_bound, main_exact_applies, rule_accola_check, rule_debarre,
    rule_double_cover_lower, rule_effective_lower, rule_five_gonal, rule_global_upper, rule_kouvidakis,
    rule_main_exact, rule_pencil_lower, rule_pencil_upper, rule_sqrt_lower, rule_trigonal, rule_triple_cover_h12,
    triple_cover_threshold, AccolaOutcome, RuleError, TauClassification,
};
pub use spec::{CurveSpec, DeclaredCover, PencilDatum, SpecError, TriState};
pub use trace::{citations, Outcome, RuleApplication};

use crate::class_algebra::SurdClass;
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("invalid specification: {0}")]
    Invalid(#[from] SpecError),
    #[error("inconsistent specification: {lower} contradicts {upper}")]
    Inconsistent { lower: Box<RuleApplication>, upper: Box<RuleApplication> },
    #[error("inconsistent specification: {derived} contradicts declared {declared}")]
    ConflictingFact { derived: Box<RuleApplication>, declared: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    /// Explicit `k` for the general double-cover exactness test.
    pub main_theorem_k: Option<i64>,
}

/// Exact enclosure of `tau(C)` with the derivation that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauResult {
    pub g: i64,
    pub lo: ExactScalar,
    pub hi: ExactScalar,
    pub exact: bool,
    pub trace: Vec<RuleApplication>,
}

impl TauResult {
    pub fn value(&self) -> Option<&ExactScalar> {
        self.exact.then_some(&self.lo)
    }

    /// Self-intersection of the slope class `(lo, 1)`: `lo^2 - g`.
    pub fn boundary_self_intersection(&self) -> ExactScalar {
        let class = SurdClass::slope_class(&self.lo).expect("genus is at least 2");
        class.pair(&class).expect("same parameter")
    }
}

struct State {
    lo: ExactScalar,
    hi: ExactScalar,
    lo_source: usize,
    hi_source: usize,
    trace: Vec<RuleApplication>,
    seen: BTreeSet<(&'static str, String)>,
}

impl State {
    fn new(g: i64) -> Self {
        let lo = rule_sqrt_lower(g);
        let hi = rule_global_upper(g);
        let mut state = State {
            lo: lo.clone(),
            hi: hi.clone(),
            lo_source: 0,
            hi_source: 1,
            trace: Vec::new(),
            seen: BTreeSet::new(),
        };
        let mut seed_lo = RuleApplication::new("sqrt-lower", format!("g={g}"), Outcome::Lower(lo), citations::SQRT_LOWER);
        seed_lo.tightened = true;
        let mut seed_hi = RuleApplication::new("global-upper", format!("g={g}"), Outcome::Upper(hi), citations::GLOBAL_UPPER);
        seed_hi.tightened = true;
        state.trace.push(seed_lo);
        state.trace.push(seed_hi);
        state
    }

    /// Records an application unless the same rule already fired on the same
    /// inputs. Returns whether it was new.
    fn record(&mut self, mut app: RuleApplication) -> Result<bool, SolveError> {
        if !self.seen.insert((app.rule, app.inputs.clone())) {
            return Ok(false);
        }
        let index = self.trace.len();
        let (lower, upper) = match &app.outcome {
            Outcome::Lower(v) => (Some(v.clone()), None),
            Outcome::Upper(v) => (None, Some(v.clone())),
            Outcome::Interval(l, u) => (Some(l.clone()), Some(u.clone())),
            Outcome::Exact(v) => (Some(v.clone()), Some(v.clone())),
            _ => (None, None),
        };
        if let Some(l) = lower {
            if l.try_cmp(&self.lo).expect("same parameter") == Ordering::Greater {
                self.lo = l;
                self.lo_source = index;
                app.tightened = true;
            }
        }
        if let Some(u) = upper {
            if u.try_cmp(&self.hi).expect("same parameter") == Ordering::Less {
                self.hi = u;
                self.hi_source = index;
                app.tightened = true;
            }
        }
        self.trace.push(app);
        if self.lo.try_cmp(&self.hi).expect("same parameter") == Ordering::Greater {
            return Err(SolveError::Inconsistent {
                lower: Box::new(self.trace[self.lo_source].clone()),
                upper: Box::new(self.trace[self.hi_source].clone()),
            });
        }
        Ok(true)
    }
}

pub fn solve(spec: &CurveSpec) -> Result<TauResult, SolveError> {
    solve_with(spec, &SolveOptions::default())
}

pub fn solve_with(spec: &CurveSpec, options: &SolveOptions) -> Result<TauResult, SolveError> {
    let (mut spec, checks) = spec.validate()?;
    let g = spec.g;
    let mut state = State::new(g);
    for check in checks {
        state.record(check)?;
    }

    loop {
        let mut progressed = false;

        // exactness rules
        progressed |= state.record(RuleApplication::new(
            "debarre",
            format!("g={g}, hyperelliptic={}, bielliptic={}", spec.hyperelliptic, spec.bielliptic),
            rule_debarre(&spec),
            citations::DEBARRE,
        ))?;
        for p in &spec.pencils {
            progressed |= state.record(RuleApplication::new(
                "kouvidakis",
                pencil_inputs(p, g),
                rule_kouvidakis(p, g),
                citations::KOUVIDAKIS,
            ))?;
        }
        for c in spec.double_covers() {
            progressed |= state.record(RuleApplication::new(
                "main-exact",
                format!("n=2, h={}, g={g}", c.datum.h),
                rule_main_exact(c.datum, g, options.main_theorem_k),
                citations::MAIN_EXACT,
            ))?;
        }
        let trigonal = rule_trigonal(&spec);
        if matches!(trigonal, Outcome::Exact(_)) {
            progressed |= derive_trigonal_irreducibility(&mut state, &mut spec)?;
        }
        progressed |= state.record(RuleApplication::new(
            "trigonal",
            format!("g={g}, hyperelliptic={}", spec.hyperelliptic),
            trigonal,
            citations::TRIGONAL,
        ))?;
        for c in spec.covers.iter().filter(|c| c.datum.n == 3) {
            progressed |= state.record(RuleApplication::new(
                "triple-cover",
                format!("n=3, h={}, target_has_g12={}, g={g}", c.datum.h, c.target_has_g12),
                rule_triple_cover_h12(g, c),
                citations::TRIPLE_COVER,
            ))?;
        }

        // interval rules
        for p in &spec.pencils {
            progressed |= state.record(RuleApplication::new(
                "pencil-lower",
                pencil_inputs(p, g),
                rule_pencil_lower(p, g),
                citations::PENCIL_LOWER,
            ))?;
            progressed |= state.record(RuleApplication::new(
                "pencil-upper",
                pencil_inputs(p, g),
                rule_pencil_upper(p, g),
                citations::PENCIL_UPPER,
            ))?;
        }
        for &(a, b) in &spec.effective_classes {
            progressed |= state.record(RuleApplication::new(
                "effective-lower",
                format!("a={a}, b={b}, g={g}"),
                rule_effective_lower(a, b, g),
                citations::EFFECTIVE_LOWER,
            ))?;
        }
        for c in spec.double_covers() {
            progressed |= state.record(RuleApplication::new(
                "double-cover-lower",
                format!("n=2, h={}, g={g}", c.datum.h),
                rule_double_cover_lower(c.datum, g),
                citations::DOUBLE_COVER_LOWER,
            ))?;
        }
        progressed |= state.record(RuleApplication::new(
            "five-gonal",
            format!("g={g}, hyperelliptic={}", spec.hyperelliptic),
            rule_five_gonal(&spec),
            citations::FIVE_GONAL,
        ))?;

        if !progressed {
            break;
        }
    }

    let exact = state.lo == state.hi;
    if exact && g >= 6 {
        if let Ok(TauClassification::DoubleCover { target_genus }) = classify_from_tau(g, &state.lo) {
            state.record(RuleApplication::new(
                "classify",
                format!("g={g}, tau={}", state.lo),
                Outcome::Derived(format!("double cover of a curve of genus {target_genus}")),
                citations::CLASSIFY,
            ))?;
        }
    }
    Ok(TauResult { g, lo: state.lo, hi: state.hi, exact, trace: state.trace })
}

fn pencil_inputs(p: &PencilDatum, g: i64) -> String {
    format!(
        "d={}, base_point_free={}, irreducible={}, g={g}",
        p.d, p.base_point_free, p.gamma_irreducible
    )
}

/// Marks every base-point-free `g^1_3` as having an irreducible curve.
fn derive_trigonal_irreducibility(state: &mut State, spec: &mut CurveSpec) -> Result<bool, SolveError> {
    let g = spec.g;
    let mut progressed = false;
    for p in spec.pencils.iter_mut().filter(|p| p.d == 3 && p.base_point_free) {
        let app = RuleApplication::new(
            "trigonal",
            format!("d=3, g={g}"),
            Outcome::Derived("pencil curve of the g^1_3 is irreducible".into()),
            citations::TRIGONAL,
        );
        match p.gamma_irreducible {
            TriState::Yes => {}
            TriState::No => {
                return Err(SolveError::ConflictingFact {
                    derived: Box::new(app),
                    declared: "reducible pencil curve for the g^1_3".into(),
                })
            }
            TriState::Unknown => {
                p.gamma_irreducible = TriState::Yes;
                progressed |= state.record(app)?;
            }
        }
    }
    Ok(progressed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle_tables::CoverDatum;

    fn scalar(n: i64, d: i64, g: i64) -> ExactScalar {
        ExactScalar::from_ratio(n, d, g as u64).unwrap()
    }

    fn double(h: i64) -> DeclaredCover {
        DeclaredCover::new(CoverDatum::new(2, h).unwrap())
    }

    #[test]
    fn hyperelliptic_is_exact_genus() {
        let result = solve(&CurveSpec::new(5).hyperelliptic(TriState::Yes)).unwrap();
        assert!(result.exact);
        assert_eq!(result.value(), Some(&scalar(5, 1, 5)));
    }

    #[test]
    fn five_gonal_interval() {
        let spec = CurveSpec::new(16).hyperelliptic(TriState::No).with_pencil(PencilDatum::new(5));
        let result = solve(&spec).unwrap();
        assert!(!result.exact);
        assert_eq!((result.lo, result.hi), (scalar(4, 1, 16), scalar(9, 1, 16)));
    }

    #[test]
    fn double_cover_corollary() {
        let result = solve(&CurveSpec::new(33).with_cover(double(4))).unwrap();
        assert_eq!(result.value(), Some(&scalar(25, 1, 33)));
        assert!(result
            .trace
            .iter()
            .any(|a| a.outcome == Outcome::Derived("double cover of a curve of genus 4".into())));
    }

    #[test]
    fn lower_bound_only_when_hypotheses_fail() {
        let result = solve(&CurveSpec::new(9).with_cover(double(2))).unwrap();
        assert!(!result.exact);
        assert_eq!(result.lo, scalar(5, 1, 9));
        let forced = solve_with(&CurveSpec::new(9).with_cover(double(2)), &SolveOptions { main_theorem_k: Some(4) });
        assert!(!forced.unwrap().exact);
    }

    #[test]
    fn kouvidakis_forces_exact_with_pencil_upper() {
        let spec = CurveSpec::new(100).with_pencil(PencilDatum::irreducible(11));
        let result = solve(&spec).unwrap();
        assert_eq!(result.value(), Some(&scalar(10, 1, 100)));
    }

    #[test]
    fn trigonal_derives_irreducibility() {
        let spec = CurveSpec::new(10).hyperelliptic(TriState::No).with_pencil(PencilDatum::new(3));
        let result = solve(&spec).unwrap();
        assert_eq!(result.value(), Some(&scalar(5, 1, 10)));
        let derived = result.trace.iter().position(|a| matches!(a.outcome, Outcome::Derived(_))).unwrap();
        let kouvidakis = result
            .trace
            .iter()
            .position(|a| a.rule == "kouvidakis" && matches!(a.outcome, Outcome::Exact(_)))
            .unwrap();
        assert!(derived < kouvidakis);

        let mut reducible = PencilDatum::new(3);
        reducible.gamma_irreducible = TriState::No;
        let spec = CurveSpec::new(10).hyperelliptic(TriState::No).with_pencil(reducible);
        assert!(matches!(solve(&spec), Err(SolveError::ConflictingFact { .. })));
    }

    #[test]
    fn conflicting_exact_values_are_inconsistent() {
        // hyperelliptic forces tau = 10, an irreducible g^1_3 forces 5
        let spec = CurveSpec::new(10).hyperelliptic(TriState::Yes).with_pencil(PencilDatum::irreducible(3));
        match solve(&spec) {
            Err(SolveError::Inconsistent { lower, upper }) => {
                assert_eq!(lower.rule, "main-exact");
                assert_eq!(lower.outcome, Outcome::Exact(scalar(10, 1, 10)));
                assert_eq!(upper.outcome, Outcome::Exact(scalar(5, 1, 10)));
            }
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn solve_is_deterministic() {
        let spec = CurveSpec::new(26)
            .hyperelliptic(TriState::No)
            .with_cover(DeclaredCover { target_has_g12: true, ..DeclaredCover::new(CoverDatum::new(3, 1).unwrap()) })
            .with_pencil(PencilDatum::new(6));
        assert_eq!(solve(&spec), solve(&spec));
        assert_eq!(solve(&spec).unwrap().value(), Some(&scalar(23, 2, 26)));
    }

    #[test]
    fn small_genus_values() {
        let r3 = solve(&CurveSpec::new(3).hyperelliptic(TriState::No)).unwrap();
        assert_eq!(r3.value(), Some(&scalar(9, 5, 3)));
        let r4 = solve(&CurveSpec::new(4).hyperelliptic(TriState::No)).unwrap();
        assert_eq!(r4.value(), Some(&scalar(2, 1, 4)));
        assert_eq!(r4.boundary_self_intersection(), scalar(0, 1, 4));
    }

    #[test]
    fn unknown_flags_record_skips() {
        let result = solve(&CurveSpec::new(12)).unwrap();
        assert!(!result.exact);
        assert!(result.trace.iter().any(|a| a.rule == "debarre" && a.is_skip()));
    }
}
