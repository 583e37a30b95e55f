//! Component decompositions of the pencil curve `Gamma(g^1_d)` in `C^(2)`.
//!
//! `Gamma(g^1_d)` has class `(d-1, 1)`, so its components split the
//! `x`-degree `d-1` and the `delta`-degree `2d - 2 + 2g`. A component of
//! `x`-degree 1 is the quotient of a double cover of `C` through which the
//! pencil factors, and computes `R = g - 2h` for quotient genus `h`. Other
//! components are residual: their `delta`-degree is only known through the
//! remaining budget. When the pencil is composed with a declared `n`-sheeted
//! cover whose target carries a `g^1_2` (so `d = 2n`), the cycle `B_{n-2}(H)`
//! is a component of `x`-degree `n - 1`.
//!
//! Scenarios are case analyses: each lists admissible component types with
//! symbolic genera and the slope `tau` each would compute. Nothing here
//! certifies that a scenario is realized by an actual curve.

mod affine;
mod partitions;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

pub use affine::{Affine, Condition, ParamRange};

use crate::cycle_tables::{ramification_degree, CoverDatum};
use crate::tau_engine::DeclaredCover;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error("pencil degree must be at least 2, got {0}")]
    Degree(i64),
    #[error("genus must be at least 2, got {0}")]
    Genus(i64),
    #[error("delta budget violated: {0}")]
    Budget(String),
}

/// Genus of the quotient curve of a double-cover component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusRef {
    /// Identified with a declared double cover.
    Declared { genus: i64, cover_index: usize },
    /// Symbolic parameter, index into [`Scenario::params`].
    Symbolic(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    DoubleCover(GenusRef),
    /// `B_{n-2}(H)` of a declared cover.
    CoverCycle { cover_index: usize, cover: CoverDatum },
    Residual,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DeltaDegree {
    Exact(Affine),
    /// One of several residual components sharing `budget`; each has
    /// `0 <= delta <= budget`.
    Shared { budget: Affine },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    pub x_deg: i64,
    pub kind: ComponentKind,
    pub delta: DeltaDegree,
}

/// `R` of one component, as an affine expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RTerm {
    Exact(Affine),
    AtMost(Affine),
}

impl Component {
    pub fn r_term(&self) -> RTerm {
        let factor = BigRational::new(1.into(), (2 * self.x_deg).into());
        let slope = |delta: &Affine| delta.scaled(&factor).minus(&Affine::integer(1));
        match &self.delta {
            DeltaDegree::Exact(delta) => RTerm::Exact(slope(delta)),
            DeltaDegree::Shared { budget } => RTerm::AtMost(slope(budget)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Param {
    pub name: String,
    pub range: ParamRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scenario {
    pub d: i64,
    pub g: i64,
    /// The partition of the `x`-degree not taken by a cover cycle.
    pub parts: Vec<i64>,
    pub components: Vec<Component>,
    pub params: Vec<Param>,
    pub conditions: Vec<Condition>,
}

/// The candidate `tau = max R` over the components of a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauCandidate {
    pub terms: Vec<RTerm>,
}

impl TauCandidate {
    /// An exact enclosure `[lo, hi]` of the candidate over the parameter box.
    pub fn bounds(&self, g: i64, ranges: &[ParamRange]) -> (BigRational, BigRational) {
        let minus_one = -BigRational::one();
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for term in &self.terms {
            let (t_lo, t_hi) = match term {
                RTerm::Exact(e) => e.range(g, ranges),
                // a residual has delta >= 0, so R >= -1
                RTerm::AtMost(e) => (minus_one.clone(), e.range(g, ranges).1),
            };
            lo = Some(lo.map_or(t_lo.clone(), |v| v.max(t_lo)));
            hi = Some(hi.map_or(t_hi.clone(), |v| v.max(t_hi)));
        }
        (lo.unwrap_or(minus_one.clone()), hi.unwrap_or(minus_one))
    }

    /// The candidate when every term is exact and parameter-free.
    pub fn value(&self, g: i64) -> Option<BigRational> {
        let mut best: Option<BigRational> = None;
        for term in &self.terms {
            match term {
                RTerm::Exact(e) if e.params.is_empty() => {
                    let v = e.evaluate(g, &[]);
                    best = Some(best.map_or(v.clone(), |b| b.max(v)));
                }
                _ => return None,
            }
        }
        best
    }

    /// `tau` as an expression, `max{...}` for several components, with a
    /// leading `<=` when only upper bounds are known.
    pub fn render(&self, names: &[String]) -> String {
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|t| match t {
                RTerm::Exact(e) => e.render(names),
                RTerm::AtMost(e) => format!("<= {}", e.render(names)),
            })
            .collect();
        let mut unique: Vec<String> = Vec::new();
        for r in rendered {
            if !unique.contains(&r) {
                unique.push(r);
            }
        }
        match unique.as_slice() {
            [single] => single.clone(),
            _ => format!("max{{{}}}", unique.join(", ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RejectReason {
    /// An `x`-degree-1 part forces the degree-`d` map to factor through a double cover.
    OddDegreeFactorization { d: i64 },
    Hurwitz { genus: i64, max: i64 },
    Accola(String),
    DeltaBudget(String),
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::OddDegreeFactorization { d } => {
                write!(f, "factorization: an x-degree-1 component needs the degree-{d} map to factor through a double cover, but {d} is odd")
            }
            RejectReason::Hurwitz { genus, max } => {
                write!(f, "hurwitz: double-cover quotient genus {genus} exceeds (g+1)/2 = {max}")
            }
            RejectReason::Accola(detail) => write!(f, "accola: {detail}"),
            RejectReason::DeltaBudget(detail) => write!(f, "delta budget: {detail}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub parts: Vec<i64>,
    pub cover_cycle: Option<CoverDatum>,
    pub declared_genera: Vec<i64>,
    pub reason: RejectReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleScenario {
    pub scenario: Scenario,
    pub tau: TauCandidate,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub feasible: Vec<FeasibleScenario>,
    pub rejected: Vec<Rejection>,
}

impl Decomposition {
    /// Largest upper end of any surviving candidate.
    pub fn max_candidate(&self, g: i64) -> Option<BigRational> {
        self.feasible
            .iter()
            .map(|f| f.tau.bounds(g, &f.scenario.ranges()).1)
            .max()
    }
}

/// Partitions of `d - 1`, larger leading parts first.
pub fn enumerate_x_partitions(d: i64) -> Result<Vec<Vec<i64>>, DecompositionError> {
    if d < 2 {
        return Err(DecompositionError::Degree(d));
    }
    Ok(partitions::partitions(d - 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Filtered {
    pub kept: Vec<Vec<i64>>,
    pub rejected: Vec<(Vec<i64>, RejectReason)>,
}

/// Drops partitions with a part equal to 1 when `d` is odd.
pub fn filter_by_factorization(partitions: Vec<Vec<i64>>, d: i64) -> Filtered {
    let mut out = Filtered::default();
    for p in partitions {
        if d % 2 == 1 && p.contains(&1) {
            out.rejected.push((p, RejectReason::OddDegreeFactorization { d }));
        } else {
            out.kept.push(p);
        }
    }
    out
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `delta`-degree of the quotient of a double cover: `2g - 4h + 2`.
fn double_cover_delta(genus: &GenusRef) -> Affine {
    match genus {
        GenusRef::Declared { genus, .. } => Affine::in_genus(2, 2 - 4 * genus),
        GenusRef::Symbolic(i) => Affine::in_genus(2, 2).minus(&Affine::param(*i).scaled(&int(4))),
    }
}

impl Scenario {
    /// Builds the scenario for a partition of the free `x`-degree. The first
    /// `declared.len()` parts equal to 1 are identified with the given
    /// declared double covers `(cover_index, genus)`; the rest get symbolic
    /// genera with range `[0, g]`.
    pub fn build(
        d: i64,
        g: i64,
        parts: &[i64],
        cover_cycle: Option<(usize, CoverDatum)>,
        declared: &[(usize, i64)],
    ) -> Scenario {
        let mut components = Vec::new();
        if let Some((cover_index, cover)) = cover_cycle {
            let ramification = ramification_degree(cover, g);
            components.push(Component {
                x_deg: cover.n - 1,
                kind: ComponentKind::CoverCycle { cover_index, cover },
                delta: DeltaDegree::Exact(Affine::in_genus(2, ramification - 2 * g)),
            });
        }
        let ones = parts.iter().filter(|&&p| p == 1).count();
        let symbolic = ones.saturating_sub(declared.len());
        let params: Vec<Param> = (0..symbolic)
            .map(|i| Param {
                name: if symbolic == 1 { "h".to_string() } else { format!("h{}", i + 1) },
                range: ParamRange { lo: 0, hi: g },
            })
            .collect();

        let mut next_declared = declared.iter();
        let mut next_param = 0;
        let residuals = parts.iter().filter(|&&p| p >= 2).count();
        for &part in parts {
            if part >= 2 {
                continue;
            }
            let genus = match next_declared.next() {
                Some(&(cover_index, genus)) => GenusRef::Declared { genus, cover_index },
                None => {
                    next_param += 1;
                    GenusRef::Symbolic(next_param - 1)
                }
            };
            components.push(Component {
                x_deg: 1,
                kind: ComponentKind::DoubleCover(genus),
                delta: DeltaDegree::Exact(double_cover_delta(&genus)),
            });
        }

        let total = Affine::in_genus(2, 2 * d - 2);
        let known = components.iter().fold(Affine::default(), |acc, c| match &c.delta {
            DeltaDegree::Exact(e) => acc.plus(e),
            DeltaDegree::Shared { .. } => acc,
        });
        let remaining = total.minus(&known);
        let mut conditions = Vec::new();
        let residual_delta = |count: usize| {
            if count == 1 {
                DeltaDegree::Exact(remaining.clone())
            } else {
                DeltaDegree::Shared { budget: remaining.clone() }
            }
        };
        // residual parts go after the cover cycle, before the double covers
        let insert_at = usize::from(cover_cycle.is_some());
        let residual_components: Vec<Component> = parts
            .iter()
            .filter(|&&p| p >= 2)
            .map(|&part| Component { x_deg: part, kind: ComponentKind::Residual, delta: residual_delta(residuals) })
            .collect();
        components.splice(insert_at..insert_at, residual_components);

        if !remaining.params.is_empty() {
            let initial: Vec<ParamRange> = params.iter().map(|p| p.range).collect();
            if residuals == 0 {
                conditions.push(Condition::Zero(remaining));
            } else if remaining.range(g, &initial).0.is_negative() {
                conditions.push(Condition::NonNegative(remaining));
            }
        }
        Scenario { d, g, parts: parts.to_vec(), components, params, conditions }
    }

    pub fn ranges(&self) -> Vec<ParamRange> {
        self.params.iter().map(|p| p.range).collect()
    }

    pub fn param_names(&self) -> Vec<String> {
        self.params.iter().map(|p| p.name.clone()).collect()
    }

    /// `delta`-degree not taken by components with an exact value, when
    /// residuals exist; otherwise the signed surplus `total - sum`.
    pub fn remaining_budget(&self) -> Affine {
        let total = Affine::in_genus(2, 2 * self.d - 2);
        let known = self.components.iter().fold(Affine::default(), |acc, c| match (&c.kind, &c.delta) {
            (ComponentKind::Residual, _) => acc,
            (_, DeltaDegree::Exact(e)) => acc.plus(e),
            (_, DeltaDegree::Shared { .. }) => acc,
        });
        total.minus(&known)
    }

    pub fn cover_cycle(&self) -> Option<CoverDatum> {
        self.components.iter().find_map(|c| match c.kind {
            ComponentKind::CoverCycle { cover, .. } => Some(cover),
            _ => None,
        })
    }

    pub fn declared_genera(&self) -> Vec<i64> {
        self.components
            .iter()
            .filter_map(|c| match c.kind {
                ComponentKind::DoubleCover(GenusRef::Declared { genus, .. }) => Some(genus),
                _ => None,
            })
            .collect()
    }

    fn double_cover_genera(&self) -> Vec<GenusRef> {
        self.components
            .iter()
            .filter_map(|c| match c.kind {
                ComponentKind::DoubleCover(genus) => Some(genus),
                _ => None,
            })
            .collect()
    }
}

/// `tau = max R` over the components, after checking the `delta` budget.
pub fn scenario_tau(s: &Scenario) -> Result<TauCandidate, DecompositionError> {
    let ranges = s.ranges();
    let remaining = s.remaining_budget();
    let has_residual = s.components.iter().any(|c| c.kind == ComponentKind::Residual);
    let (lo, hi) = remaining.range(s.g, &ranges);
    if has_residual && hi.is_negative() {
        return Err(DecompositionError::Budget(format!(
            "the other components already exceed 2d - 2 + 2g = {} by {}",
            2 * s.d - 2 + 2 * s.g,
            crate::scalar::format_rational(&-hi)
        )));
    }
    if !has_residual && (lo.is_positive() || hi.is_negative()) {
        return Err(DecompositionError::Budget(format!(
            "components cannot add up to 2d - 2 + 2g = {}",
            2 * s.d - 2 + 2 * s.g
        )));
    }
    for condition in &s.conditions {
        if !condition.satisfiable(s.g, &ranges) {
            return Err(DecompositionError::Budget(format!(
                "{} has no solution in the genus ranges",
                condition.render(&s.param_names())
            )));
        }
    }
    Ok(TauCandidate { terms: s.components.iter().map(Component::r_term).collect() })
}

fn ceil_half(v: i64) -> i64 {
    v.div_euclid(2) + v.rem_euclid(2)
}

/// Lower bound on the genus `h` of a double-cover quotient forced by
/// `g <= 2h + n h_c + (n-1)` against an `n`-sheeted cover of genus `h_c`.
fn accola_floor(g: i64, other: CoverDatum) -> i64 {
    ceil_half(g - other.n * other.h - (other.n - 1))
}

/// Clips double-cover genera to Hurwitz ranges and applies the Accola bound
/// between distinct double covers and against declared covers that cannot
/// share a factorization with a double cover.
pub fn apply_cover_constraints(mut s: Scenario, declared: &[DeclaredCover]) -> Result<Scenario, RejectReason> {
    let g = s.g;
    let max = (g + 1).div_euclid(2);
    for genus in s.double_cover_genera() {
        if let GenusRef::Declared { genus, .. } = genus {
            if genus > max || genus < 0 {
                return Err(RejectReason::Hurwitz { genus, max });
            }
        }
    }
    for p in &mut s.params {
        p.range.lo = p.range.lo.max(0);
        p.range.hi = p.range.hi.min(max);
    }

    let genera = s.double_cover_genera();
    let names = s.param_names();
    for i in 0..genera.len() {
        for j in i + 1..genera.len() {
            match (genera[i], genera[j]) {
                (GenusRef::Declared { genus: a, .. }, GenusRef::Declared { genus: b, .. }) => {
                    if g > 2 * a + 2 * b + 1 {
                        return Err(RejectReason::Accola(format!(
                            "distinct double covers of genera {a} and {b} need g <= {}, but g = {g}",
                            2 * a + 2 * b + 1
                        )));
                    }
                }
                (GenusRef::Declared { genus, .. }, GenusRef::Symbolic(k))
                | (GenusRef::Symbolic(k), GenusRef::Declared { genus, .. }) => {
                    let floor = accola_floor(g, CoverDatum { n: 2, h: genus });
                    s.params[k].range.lo = s.params[k].range.lo.max(floor);
                }
                (GenusRef::Symbolic(a), GenusRef::Symbolic(b)) => {
                    let both = Affine::param(a).plus(&Affine::param(b)).scaled(&int(2));
                    s.conditions.push(Condition::NonNegative(both.plus(&Affine::in_genus(-1, 1))));
                }
            }
        }
    }

    for genus in &genera {
        for (index, cover) in declared.iter().enumerate() {
            let other = cover.datum;
            if other.n % 2 == 0 && other.n > 2 {
                continue;
            }
            match *genus {
                GenusRef::Declared { cover_index, .. } if cover_index == index => {}
                GenusRef::Declared { genus: h, .. } => {
                    let bound = 2 * h + other.n * other.h + other.n - 1;
                    if g > bound {
                        return Err(RejectReason::Accola(format!(
                            "double cover of genus {h} and declared ({},{}) cover need g <= {bound}, but g = {g}",
                            other.n, other.h
                        )));
                    }
                }
                GenusRef::Symbolic(k) => {
                    if other.n == 2 && genera.contains(&GenusRef::Declared { genus: other.h, cover_index: index }) {
                        continue;
                    }
                    let floor = accola_floor(g, other);
                    s.params[k].range.lo = s.params[k].range.lo.max(floor);
                }
            }
        }
    }

    for (k, p) in s.params.iter().enumerate() {
        if p.range.lo > p.range.hi {
            return Err(RejectReason::Accola(format!(
                "{} must be at least {} but Hurwitz allows at most {}",
                names[k], p.range.lo, p.range.hi
            )));
        }
    }
    let ranges = s.ranges();
    for condition in &s.conditions {
        if let Condition::NonNegative(_) = condition {
            if !condition.satisfiable(g, &ranges) {
                return Err(RejectReason::Accola(format!("{} fails for g = {g}", condition.render(&names))));
            }
        }
    }
    Ok(s)
}

/// An optional cover cycle with the partitions of the remaining `x`-degree.
type Layout = (Option<(usize, CoverDatum)>, Vec<Vec<i64>>);

/// Every admissible decomposition of `Gamma(g^1_d)` with its candidate `tau`,
/// and every rejected case with the violated constraint.
pub fn feasible_tau(d: i64, g: i64, declared: &[DeclaredCover]) -> Result<Decomposition, DecompositionError> {
    if g < 2 {
        return Err(DecompositionError::Genus(g));
    }
    let all = enumerate_x_partitions(d)?;
    let mut out = Decomposition::default();

    let cycles: Vec<(usize, CoverDatum)> = declared
        .iter()
        .enumerate()
        .filter(|(_, c)| c.target_has_g12 && c.datum.n >= 3 && 2 * c.datum.n == d)
        .map(|(i, c)| (i, c.datum))
        .collect();
    let layouts: Vec<Layout> = if cycles.is_empty() {
        vec![(None, all)]
    } else {
        cycles.into_iter().map(|(i, c)| (Some((i, c)), partitions::partitions(d - 1 - (c.n - 1)))).collect()
    };
    let mut doubles: Vec<(usize, i64)> = declared
        .iter()
        .enumerate()
        .filter(|(_, c)| c.datum.is_double())
        .map(|(i, c)| (i, c.datum.h))
        .collect();
    doubles.sort_by_key(|&(i, h)| (h, i));

    for (cycle, parts_list) in layouts {
        let filtered = filter_by_factorization(parts_list, d);
        for (parts, reason) in filtered.rejected {
            out.rejected.push(Rejection { parts, cover_cycle: cycle.map(|c| c.1), declared_genera: vec![], reason });
        }
        for parts in filtered.kept {
            let ones = parts.iter().filter(|&&p| p == 1).count();
            for chosen in subsets_up_to(&doubles, ones) {
                let scenario = Scenario::build(d, g, &parts, cycle, &chosen);
                let reject = |reason| Rejection {
                    parts: parts.clone(),
                    cover_cycle: cycle.map(|c| c.1),
                    declared_genera: chosen.iter().map(|c| c.1).collect(),
                    reason,
                };
                let scenario = match apply_cover_constraints(scenario, declared) {
                    Ok(s) => s,
                    Err(reason) => {
                        out.rejected.push(reject(reason));
                        continue;
                    }
                };
                match scenario_tau(&scenario) {
                    Ok(tau) => out.feasible.push(FeasibleScenario { scenario, tau }),
                    Err(DecompositionError::Budget(detail)) => out.rejected.push(reject(RejectReason::DeltaBudget(detail))),
                    Err(other) => return Err(other),
                }
            }
        }
    }
    Ok(out)
}

/// All sub-lists of `items` (in order) with at most `max` elements, shortest first.
fn subsets_up_to<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for size in 1..=max.min(items.len()) {
        let mut chosen = Vec::new();
        combinations(items, size, 0, &mut chosen, &mut out);
    }
    out
}

fn combinations<T: Clone>(items: &[T], size: usize, start: usize, chosen: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
    if chosen.len() == size {
        out.push(chosen.clone());
        return;
    }
    for i in start..items.len() {
        chosen.push(items[i].clone());
        combinations(items, size, i + 1, chosen, out);
        chosen.pop();
    }
}
