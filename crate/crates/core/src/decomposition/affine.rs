//! Affine expressions `c + a*g + sum b_i h_i` in the genus `g` and symbolic
//! target genera `h_i`, with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Affine {
    pub constant: BigRational,
    pub genus: BigRational,
    pub params: BTreeMap<usize, BigRational>,
}

/// Integer range `[lo, hi]` of a symbolic genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParamRange {
    pub lo: i64,
    pub hi: i64,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl Affine {
    pub fn constant(value: BigRational) -> Self {
        Affine { constant: value, ..Default::default() }
    }

    pub fn integer(value: i64) -> Self {
        Self::constant(int(value))
    }

    /// `a*g + c`.
    pub fn in_genus(a: i64, c: i64) -> Self {
        Affine { constant: int(c), genus: int(a), params: BTreeMap::new() }
    }

    pub fn param(index: usize) -> Self {
        let mut params = BTreeMap::new();
        params.insert(index, BigRational::one());
        Affine { params, ..Default::default() }
    }

    pub fn plus(&self, other: &Affine) -> Affine {
        let mut params = self.params.clone();
        for (k, v) in &other.params {
            *params.entry(*k).or_insert_with(BigRational::zero) += v;
        }
        params.retain(|_, v| !v.is_zero());
        Affine { constant: &self.constant + &other.constant, genus: &self.genus + &other.genus, params }
    }

    pub fn minus(&self, other: &Affine) -> Affine {
        self.plus(&other.scaled(&int(-1)))
    }

    pub fn scaled(&self, factor: &BigRational) -> Affine {
        let mut params: BTreeMap<usize, BigRational> = self.params.iter().map(|(k, v)| (*k, v * factor)).collect();
        params.retain(|_, v| !v.is_zero());
        Affine { constant: &self.constant * factor, genus: &self.genus * factor, params }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.genus.is_zero() && self.params.is_empty()
    }

    /// Value at genus `g` and the given parameter values.
    pub fn evaluate(&self, g: i64, values: &[i64]) -> BigRational {
        let mut total = &self.constant + &self.genus * int(g);
        for (k, v) in &self.params {
            total += v * int(values[*k]);
        }
        total
    }

    /// Exact minimum and maximum over the box of parameter ranges at genus `g`.
    pub fn range(&self, g: i64, ranges: &[ParamRange]) -> (BigRational, BigRational) {
        let base = &self.constant + &self.genus * int(g);
        let (mut lo, mut hi) = (base.clone(), base);
        for (k, v) in &self.params {
            let (a, b) = (v * int(ranges[*k].lo), v * int(ranges[*k].hi));
            if a <= b {
                lo += a;
                hi += b;
            } else {
                lo += b;
                hi += a;
            }
        }
        (lo, hi)
    }

    /// Renders with `g` symbolic, e.g. `g - 2h` or `(g + 2)/2`.
    pub fn render(&self, names: &[String]) -> String {
        let denominator = self
            .params
            .values()
            .chain([&self.constant, &self.genus])
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scale = BigRational::from_integer(denominator.clone());
        let mut terms: Vec<(BigInt, Option<String>)> = Vec::new();
        if !self.genus.is_zero() {
            terms.push(((&self.genus * &scale).to_integer(), Some("g".into())));
        }
        for (k, v) in &self.params {
            terms.push(((v * &scale).to_integer(), Some(names[*k].clone())));
        }
        if !self.constant.is_zero() || terms.is_empty() {
            terms.push(((&self.constant * &scale).to_integer(), None));
        }
        let numerator = render_terms(&terms);
        if denominator.is_one() {
            numerator
        } else if terms.len() == 1 {
            format!("{numerator}/{denominator}")
        } else {
            format!("({numerator})/{denominator}")
        }
    }
}

fn render_terms(terms: &[(BigInt, Option<String>)]) -> String {
    let mut out = String::new();
    for (i, (coefficient, var)) in terms.iter().enumerate() {
        let magnitude = coefficient.abs();
        let body = match var {
            Some(v) if magnitude.is_one() => v.clone(),
            Some(v) => format!("{magnitude}{v}"),
            None => magnitude.to_string(),
        };
        match (i, coefficient.is_negative()) {
            (0, true) => write!(out, "-{body}"),
            (0, false) => write!(out, "{body}"),
            (_, true) => write!(out, " - {body}"),
            (_, false) => write!(out, " + {body}"),
        }
        .expect("writing to a String");
    }
    out
}

/// A linear condition on the symbolic genera.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `expr = 0`
    Zero(Affine),
    /// `expr >= 0`
    NonNegative(Affine),
}

impl Condition {
    /// Whether some point of the parameter box satisfies the condition. Box
    /// bounds are checked over the reals; equalities also need the constant
    /// to be a multiple of the gcd of the parameter coefficients.
    pub fn satisfiable(&self, g: i64, ranges: &[ParamRange]) -> bool {
        match self {
            Condition::Zero(e) => {
                let (lo, hi) = e.range(g, ranges);
                !lo.is_positive() && !hi.is_negative() && integral_solution_possible(e, g)
            }
            Condition::NonNegative(e) => !e.range(g, ranges).1.is_negative(),
        }
    }

    /// Renders with parameters on the left and `g` and constants on the
    /// right, e.g. `h1 + h2 + h3 = g`.
    pub fn render(&self, names: &[String]) -> String {
        let (expr, relation) = match self {
            Condition::Zero(e) => (e, "="),
            Condition::NonNegative(e) => (e, ">="),
        };
        // clear denominators and common factors, keeping the direction
        let denominator = expr
            .params
            .values()
            .chain([&expr.constant, &expr.genus])
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let cleared = expr.scaled(&BigRational::from_integer(denominator));
        let content = cleared
            .params
            .values()
            .chain([&cleared.constant, &cleared.genus])
            .fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()));
        let mut expr = if content.is_zero() { cleared } else { cleared.scaled(&BigRational::new(BigInt::one(), content)) };
        if matches!(self, Condition::Zero(_)) && expr.params.values().next().is_some_and(|v| v.is_negative()) {
            expr = expr.scaled(&int(-1));
        }
        let left = Affine { constant: BigRational::zero(), genus: BigRational::zero(), params: expr.params.clone() };
        let right = Affine { constant: -&expr.constant, genus: -&expr.genus, params: BTreeMap::new() };
        format!("{} {relation} {}", left.render(names), right.render(names))
    }
}

fn integral_solution_possible(e: &Affine, g: i64) -> bool {
    let constant = &e.constant + &e.genus * int(g);
    let denominator = e.params.values().chain([&constant]).fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scale = BigRational::from_integer(denominator);
    let content = e.params.values().fold(BigInt::zero(), |acc, v| acc.gcd(&(v * &scale).to_integer()));
    if content.is_zero() {
        return constant.is_zero();
    }
    (&constant * &scale).to_integer().is_multiple_of(&content)
}
