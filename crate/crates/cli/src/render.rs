//! Plain-text rendering of solver, enumerator and table results.

use std::fmt::Write as _;

use symtau_core::cycle_tables::{CoverDatum, CycleNumbers};
use symtau_core::decomposition::{
    Component, ComponentKind, Decomposition, DeltaDegree, FeasibleScenario, GenusRef, Rejection, Scenario,
};
use symtau_core::scalar::format_rational;
use symtau_core::tau_engine::{RuleApplication, TauResult};

pub fn solve_result(result: &TauResult, trace: bool) -> String {
    let mut out = match result.value() {
        Some(v) => format!("tau = {v}\n"),
        None => format!("tau in [{}, {}]\n", result.lo, result.hi),
    };
    if trace {
        out.push_str("trace:\n");
        for entry in &result.trace {
            writeln!(out, "  {entry}").unwrap();
        }
    }
    out
}

pub fn conflict(entries: &[&RuleApplication]) -> String {
    entries.iter().map(|e| format!("  {e}\n")).collect()
}

fn part_label(parts: &[i64]) -> String {
    parts.iter().map(i64::to_string).collect::<Vec<_>>().join("+")
}

fn case_label(parts: &[i64], cycle: Option<CoverDatum>) -> String {
    let label = part_label(parts);
    match cycle {
        Some(c) => format!("B_{}(H) + {label}", c.n - 2),
        None => label,
    }
}

fn component_line(c: &Component, names: &[String]) -> String {
    let what = match c.kind {
        ComponentKind::Residual => "residual".to_string(),
        ComponentKind::DoubleCover(GenusRef::Symbolic(i)) => format!("double cover quotient, genus {}", names[i]),
        ComponentKind::DoubleCover(GenusRef::Declared { genus, cover_index }) => {
            format!("double cover quotient, genus {genus} (covers[{cover_index}])")
        }
        ComponentKind::CoverCycle { cover_index, cover } => {
            format!("B_{}(H) of covers[{cover_index}] ({}, {})", cover.n - 2, cover.n, cover.h)
        }
    };
    let delta = match &c.delta {
        DeltaDegree::Exact(e) => format!("delta = {}", e.render(names)),
        DeltaDegree::Shared { budget } => format!("0 <= delta <= {}, shared", budget.render(names)),
    };
    format!("x = {}: {what}; {delta}", c.x_deg)
}

fn scenario_block(f: &FeasibleScenario) -> String {
    let s: &Scenario = &f.scenario;
    let names = s.param_names();
    let mut out = format!("case {}\n", case_label(&s.parts, s.cover_cycle()));
    for c in &s.components {
        writeln!(out, "  {}", component_line(c, &names)).unwrap();
    }
    for p in &s.params {
        writeln!(out, "  {} in [{}, {}]", p.name, p.range.lo, p.range.hi).unwrap();
    }
    for condition in &s.conditions {
        writeln!(out, "  subject to {}", condition.render(&names)).unwrap();
    }
    let formula = f.tau.render(&names);
    if formula.starts_with("<=") {
        writeln!(out, "  tau {formula}").unwrap();
    } else {
        writeln!(out, "  tau = {formula}").unwrap();
    }
    let (lo, hi) = f.tau.bounds(s.g, &s.ranges());
    if lo == hi {
        writeln!(out, "  at g = {}: tau = {}", s.g, format_rational(&lo)).unwrap();
    } else {
        writeln!(out, "  at g = {}: tau <= {}", s.g, format_rational(&hi)).unwrap();
    }
    out
}

fn rejection_line(r: &Rejection) -> String {
    let mut label = case_label(&r.parts, r.cover_cycle);
    if !r.declared_genera.is_empty() {
        let genera: Vec<String> = r.declared_genera.iter().map(i64::to_string).collect();
        write!(label, " with declared genera {}", genera.join(", ")).unwrap();
    }
    format!("  {label}: {}\n", r.reason)
}

pub fn decomposition(d: i64, g: i64, result: &Decomposition, verbose: bool) -> String {
    let mut out = format!(
        "pencil of degree {d} on a genus {g} curve: class ({}, 1), delta budget {}\n",
        d - 1,
        2 * d - 2 + 2 * g
    );
    for f in &result.feasible {
        out.push('\n');
        out.push_str(&scenario_block(f));
    }
    if let Some(best) = result.max_candidate(g) {
        write!(out, "\nlargest candidate at g = {g}: {}\n", format_rational(&best)).unwrap();
    }
    if verbose && !result.rejected.is_empty() {
        out.push_str("\nrejected:\n");
        for r in &result.rejected {
            out.push_str(&rejection_line(r));
        }
    }
    out
}

pub fn table(cover: CoverDatum, g: i64, d: i64, ramification: i64, sigma: &CycleNumbers, b: &CycleNumbers) -> String {
    let row = |c: &CycleNumbers| format!("x = {}, theta = {}, delta = {}", c.x_deg, c.theta_deg, c.delta_deg);
    format!(
        "cover ({}, {}) of a genus {g} curve, ramification {ramification}\nSigma in C^({}): {}\nB_{}(H) in C^({d}): {}\n",
        cover.n,
        cover.h,
        cover.n,
        row(sigma),
        cover.n - d,
        row(b)
    )
}
