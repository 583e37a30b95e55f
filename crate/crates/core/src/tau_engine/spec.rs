//! Structured description of a curve and its validation.

use std::collections::BTreeSet;
use std::fmt;

use crate::cycle_tables::{CoverDatum, CycleError};

use super::rules::{rule_accola_check, AccolaOutcome};
use super::trace::{citations, Outcome, RuleApplication};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TriState {
    Yes,
    No,
    #[default]
    Unknown,
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Unknown => "unknown",
        })
    }
}

/// A pencil `g^1_d` on the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PencilDatum {
    pub d: i64,
    pub base_point_free: bool,
    /// Whether the induced curve on `C^(2)` is irreducible.
    pub gamma_irreducible: TriState,
}

impl PencilDatum {
    pub fn new(d: i64) -> Self {
        PencilDatum { d, base_point_free: true, gamma_irreducible: TriState::Unknown }
    }

    pub fn irreducible(d: i64) -> Self {
        PencilDatum { gamma_irreducible: TriState::Yes, ..Self::new(d) }
    }
}

/// A covering map `C -> H` declared on the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeclaredCover {
    pub datum: CoverDatum,
    /// `H` carries a base-point-free pencil of degree 2.
    pub target_has_g12: bool,
    /// Index of another declared cover this one factors through.
    pub factors_through: Option<usize>,
}

impl DeclaredCover {
    pub fn new(datum: CoverDatum) -> Self {
        DeclaredCover { datum, target_has_g12: false, factors_through: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CurveSpec {
    pub g: i64,
    pub pencils: Vec<PencilDatum>,
    pub covers: Vec<DeclaredCover>,
    /// Effective classes `(a, b)` known on `C^(2)`.
    pub effective_classes: Vec<(i64, i64)>,
    pub hyperelliptic: TriState,
    pub bielliptic: TriState,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("genus must be at least 2, got {0}")]
    Genus(i64),
    #[error("pencils[{index}]: degree must be at least 2, got {d}")]
    PencilDegree { index: usize, d: i64 },
    #[error("covers[{index}]: {source}")]
    Cover { index: usize, source: CycleError },
    #[error("covers[{index}].factors_through: {reason}")]
    FactorsThrough { index: usize, reason: String },
    #[error("effective_classes[{index}]: ({a}, {b}) must have a > 0 and b > 0")]
    EffectiveClass { index: usize, a: i64, b: i64 },
    #[error("hyperelliptic: {0}")]
    Hyperelliptic(String),
    #[error("bielliptic: {0}")]
    Bielliptic(String),
    #[error("covers[{first}] and covers[{second}] violate the Accola bound: genus {g} > {bound}")]
    Accola { first: usize, second: usize, g: i64, bound: i64 },
}

impl CurveSpec {
    pub fn new(g: i64) -> Self {
        CurveSpec { g, ..Default::default() }
    }

    pub fn with_pencil(mut self, pencil: PencilDatum) -> Self {
        self.pencils.push(pencil);
        self
    }

    pub fn with_cover(mut self, cover: DeclaredCover) -> Self {
        self.covers.push(cover);
        self
    }

    pub fn hyperelliptic(mut self, value: TriState) -> Self {
        self.hyperelliptic = value;
        self
    }

    pub fn bielliptic(mut self, value: TriState) -> Self {
        self.bielliptic = value;
        self
    }

    pub fn double_covers(&self) -> impl Iterator<Item = &DeclaredCover> {
        self.covers.iter().filter(|c| c.datum.is_double())
    }

    fn has_double_cover_of_genus(&self, h: i64) -> bool {
        self.double_covers().any(|c| c.datum.h == h)
    }

    /// Checks the spec and returns its normal form together with the checks
    /// that were run. The normal form resolves the hyperelliptic and
    /// bielliptic flags from declared structure and inserts the implied
    /// double covers.
    pub fn validate(&self) -> Result<(CurveSpec, Vec<RuleApplication>), SpecError> {
        let g = self.g;
        if g < 2 {
            return Err(SpecError::Genus(g));
        }
        let mut spec = self.clone();
        let mut log = Vec::new();

        for (index, p) in spec.pencils.iter().enumerate() {
            if p.d < 2 {
                return Err(SpecError::PencilDegree { index, d: p.d });
            }
        }
        for (index, &(a, b)) in spec.effective_classes.iter().enumerate() {
            if a <= 0 || b <= 0 {
                return Err(SpecError::EffectiveClass { index, a, b });
            }
        }

        // hyperelliptic flag
        let mut reasons = Vec::new();
        if g == 2 {
            reasons.push("genus 2".to_string());
        }
        if spec.pencils.iter().any(|p| p.d == 2 && p.base_point_free) {
            reasons.push("base-point-free pencil of degree 2".to_string());
        }
        if spec.has_double_cover_of_genus(0) {
            reasons.push("double cover of a genus-0 curve".to_string());
        }
        if !reasons.is_empty() {
            let why = reasons.join(", ");
            if spec.hyperelliptic == TriState::No {
                return Err(SpecError::Hyperelliptic(format!("declared no, but {why} forces yes")));
            }
            if spec.hyperelliptic == TriState::Unknown {
                log.push(RuleApplication::new(
                    "hyperelliptic-flag",
                    format!("g={g}"),
                    Outcome::Derived(format!("hyperelliptic ({why})")),
                    citations::HYPERELLIPTIC,
                ));
                spec.hyperelliptic = TriState::Yes;
            }
        }
        if spec.hyperelliptic == TriState::Yes && !spec.has_double_cover_of_genus(0) {
            spec.covers.push(DeclaredCover::new(CoverDatum { n: 2, h: 0 }));
            log.push(RuleApplication::new(
                "hyperelliptic-flag",
                format!("g={g}"),
                Outcome::Derived("double cover of genus 0 added".into()),
                citations::HYPERELLIPTIC,
            ));
        }

        // bielliptic flag
        if spec.has_double_cover_of_genus(1) {
            match spec.bielliptic {
                TriState::No => {
                    return Err(SpecError::Bielliptic("declared no, but a double cover of genus 1 is declared".into()))
                }
                TriState::Unknown => {
                    spec.bielliptic = TriState::Yes;
                    log.push(RuleApplication::new(
                        "bielliptic-flag",
                        format!("g={g}"),
                        Outcome::Derived("bielliptic (double cover of genus 1 declared)".into()),
                        citations::BIELLIPTIC,
                    ));
                }
                TriState::Yes => {}
            }
        } else if spec.bielliptic == TriState::Yes {
            spec.covers.push(DeclaredCover::new(CoverDatum { n: 2, h: 1 }));
            log.push(RuleApplication::new(
                "bielliptic-flag",
                format!("g={g}"),
                Outcome::Derived("double cover of genus 1 added".into()),
                citations::BIELLIPTIC,
            ));
        }

        for (index, cover) in spec.covers.iter().enumerate() {
            cover.datum.check_admissible(g).map_err(|source| SpecError::Cover { index, source })?;
            log.push(RuleApplication::new(
                "hurwitz-check",
                format!("n={}, h={}, g={g}", cover.datum.n, cover.datum.h),
                Outcome::Passed(format!("ramification degree {}", crate::cycle_tables::ramification_degree(cover.datum, g))),
                citations::HURWITZ,
            ));
        }

        let lineage = spec.factor_lineage()?;
        for i in 0..spec.covers.len() {
            for j in i + 1..spec.covers.len() {
                let (a, b) = (spec.covers[i].datum, spec.covers[j].datum);
                let inputs = format!("({},{}) vs ({},{}), g={g}", a.n, a.h, b.n, b.h);
                if !lineage[i].is_disjoint(&lineage[j]) {
                    log.push(RuleApplication::new(
                        "accola-check",
                        inputs,
                        Outcome::Skipped("covers share a factorization".into()),
                        citations::ACCOLA,
                    ));
                    continue;
                }
                match rule_accola_check(a, b, g) {
                    AccolaOutcome::Ok { bound } => log.push(RuleApplication::new(
                        "accola-check",
                        inputs,
                        Outcome::Passed(format!("{g} <= {bound}")),
                        citations::ACCOLA,
                    )),
                    AccolaOutcome::Violation { bound } => {
                        return Err(SpecError::Accola { first: i, second: j, g, bound })
                    }
                }
            }
        }
        Ok((spec, log))
    }

    /// For each cover, the set of covers it factors through, itself included.
    fn factor_lineage(&self) -> Result<Vec<BTreeSet<usize>>, SpecError> {
        let count = self.covers.len();
        let mut out = Vec::with_capacity(count);
        for index in 0..count {
            let mut seen = BTreeSet::from([index]);
            let mut current = index;
            while let Some(target) = self.covers[current].factors_through {
                if target >= count {
                    return Err(SpecError::FactorsThrough { index: current, reason: format!("no cover at index {target}") });
                }
                let (outer, inner) = (self.covers[current].datum.n, self.covers[target].datum.n);
                if inner >= outer || outer % inner != 0 {
                    return Err(SpecError::FactorsThrough {
                        index: current,
                        reason: format!("a {outer}-sheeted cover cannot factor through a {inner}-sheeted one"),
                    });
                }
                if !seen.insert(target) {
                    return Err(SpecError::FactorsThrough { index: current, reason: "cyclic factorization".into() });
                }
                current = target;
            }
            out.push(seen);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(n: i64, h: i64) -> DeclaredCover {
        DeclaredCover::new(CoverDatum::new(n, h).unwrap())
    }

    #[test]
    fn hyperelliptic_inserts_cover_once() {
        let spec = CurveSpec::new(5).hyperelliptic(TriState::Yes).with_cover(cover(2, 0));
        let (normal, _) = spec.validate().unwrap();
        assert_eq!(normal.double_covers().count(), 1);

        let (normal, _) = CurveSpec::new(7).hyperelliptic(TriState::Yes).validate().unwrap();
        assert_eq!(normal.covers, vec![cover(2, 0)]);
    }

    #[test]
    fn degree_two_pencil_forces_hyperelliptic() {
        let (normal, _) = CurveSpec::new(6).with_pencil(PencilDatum::new(2)).validate().unwrap();
        assert_eq!(normal.hyperelliptic, TriState::Yes);
        let bad = CurveSpec::new(6).with_pencil(PencilDatum::new(2)).hyperelliptic(TriState::No);
        assert!(matches!(bad.validate(), Err(SpecError::Hyperelliptic(_))));
        assert!(matches!(CurveSpec::new(2).hyperelliptic(TriState::No).validate(), Err(SpecError::Hyperelliptic(_))));
    }

    #[test]
    fn inadmissible_cover_is_rejected() {
        let spec = CurveSpec::new(5).with_cover(cover(2, 10));
        assert!(matches!(spec.validate(), Err(SpecError::Cover { index: 0, source: CycleError::Inadmissible { .. } })));
    }

    #[test]
    fn accola_violation() {
        // genus 7 cannot be both hyperelliptic and a triple cover of an elliptic curve
        let spec = CurveSpec::new(7).with_cover(cover(2, 0)).with_cover(cover(3, 1));
        assert_eq!(spec.validate(), Err(SpecError::Accola { first: 0, second: 1, g: 7, bound: 5 }));
    }

    #[test]
    fn factorization_exempts_accola() {
        let mut spec = CurveSpec::new(21).with_cover(cover(2, 1)).with_cover(cover(4, 0));
        assert!(matches!(spec.validate(), Err(SpecError::Accola { .. })));
        spec.covers[1].factors_through = Some(0);
        assert!(spec.validate().is_ok());
        spec.covers[1].factors_through = Some(5);
        assert!(matches!(spec.validate(), Err(SpecError::FactorsThrough { .. })));
        let mut odd = CurveSpec::new(21).with_cover(cover(2, 1)).with_cover(cover(3, 0));
        odd.covers[1].factors_through = Some(0);
        assert!(matches!(odd.validate(), Err(SpecError::FactorsThrough { .. })));
    }

    #[test]
    fn bielliptic_flag_and_cover_agree() {
        let (normal, _) = CurveSpec::new(9).bielliptic(TriState::Yes).validate().unwrap();
        assert_eq!(normal.covers, vec![cover(2, 1)]);
        let (normal, _) = CurveSpec::new(9).with_cover(cover(2, 1)).validate().unwrap();
        assert_eq!(normal.bielliptic, TriState::Yes);
        let bad = CurveSpec::new(9).with_cover(cover(2, 1)).bielliptic(TriState::No);
        assert!(matches!(bad.validate(), Err(SpecError::Bielliptic(_))));
    }

    #[test]
    fn nonpositive_effective_class() {
        let mut spec = CurveSpec::new(9);
        spec.effective_classes.push((0, 1));
        assert!(matches!(spec.validate(), Err(SpecError::EffectiveClass { .. })));
    }
}
