//! Exact arithmetic in the quadratic extension `Q(sqrt g)`.
//!
//! Every value is stored as `a + b*sqrt(g)` with arbitrary-precision rational
//! coordinates. When `g` is a perfect square the root part is folded into the
//! rational part, so equality of two values is always structural equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("extension parameter must be at least 2, got {0}")]
    InvalidParameter(u64),
    #[error("cannot combine values of Q(sqrt {left}) and Q(sqrt {right})")]
    MismatchedParameter { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse exact scalar from {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// Returns `Some(r)` when `g = r*r`.
pub fn exact_sqrt(g: u64) -> Option<u64> {
    let r = g.sqrt();
    (r * r == g).then_some(r)
}

/// `floor(sqrt(g))`.
pub fn floor_sqrt(g: u64) -> u64 {
    g.sqrt()
}

/// An element `rational + root * sqrt(g)` of `Q(sqrt g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    rational: BigRational,
    root: BigRational,
    g: u64,
}

impl ExactScalar {
    pub fn new(rational: BigRational, root: BigRational, g: u64) -> Result<Self, ScalarError> {
        if g < 2 {
            return Err(ScalarError::InvalidParameter(g));
        }
        Ok(Self::normalized(rational, root, g))
    }

    fn normalized(rational: BigRational, root: BigRational, g: u64) -> Self {
        match exact_sqrt(g) {
            Some(r) if !root.is_zero() => {
                let folded = rational + root * BigRational::from_integer(BigInt::from(r));
                ExactScalar { rational: folded, root: BigRational::zero(), g }
            }
            _ => ExactScalar { rational, root, g },
        }
    }

    pub fn from_rational(value: BigRational, g: u64) -> Result<Self, ScalarError> {
        Self::new(value, BigRational::zero(), g)
    }

    pub fn from_integer(value: i64, g: u64) -> Result<Self, ScalarError> {
        Self::from_rational(BigRational::from_integer(value.into()), g)
    }

    /// `num/den` as an element of `Q(sqrt g)`. Panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64, g: u64) -> Result<Self, ScalarError> {
        Self::from_rational(BigRational::new(num.into(), den.into()), g)
    }

    /// The element `sqrt(g)` itself.
    pub fn sqrt_of(g: u64) -> Result<Self, ScalarError> {
        Self::new(BigRational::zero(), BigRational::one(), g)
    }

    pub fn zero(g: u64) -> Result<Self, ScalarError> {
        Self::from_integer(0, g)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn root_part(&self) -> &BigRational {
        &self.root
    }

    pub fn parameter(&self) -> u64 {
        self.g
    }

    pub fn is_rational(&self) -> bool {
        self.root.is_zero()
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.g == other.g {
            Ok(())
        } else {
            Err(ScalarError::MismatchedParameter { left: self.g, right: other.g })
        }
    }

    /// Sign of the real number, decided by comparing `a^2` against `b^2 g`.
    pub fn signum(&self) -> Ordering {
        let a = self.rational.cmp(&BigRational::zero());
        let b = self.root.cmp(&BigRational::zero());
        match (a, b) {
            (_, Ordering::Equal) => a,
            (Ordering::Equal, _) => b,
            _ if a == b => a,
            _ => {
                let lhs = &self.rational * &self.rational;
                let rhs = &self.root * &self.root * BigRational::from_integer(self.g.into());
                match lhs.cmp(&rhs) {
                    Ordering::Greater => a,
                    Ordering::Less => b,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Exact comparison of two values of the same extension.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ScalarError> {
        Ok(self.try_sub(other)?.signum())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(Self::normalized(&self.rational + &other.rational, &self.root + &other.root, self.g))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(Self::normalized(&self.rational - &other.rational, &self.root - &other.root, self.g))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let g = BigRational::from_integer(self.g.into());
        let rational = &self.rational * &other.rational + &self.root * &other.root * g;
        let root = &self.rational * &other.root + &self.root * &other.rational;
        Ok(Self::normalized(rational, root, self.g))
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::normalized(&self.rational * factor, &self.root * factor, self.g)
    }

    /// Multiplicative inverse via the conjugate `a - b sqrt(g)`.
    pub fn recip(&self) -> Result<Self, ScalarError> {
        let g = BigRational::from_integer(self.g.into());
        let norm = &self.rational * &self.rational - &self.root * &self.root * g;
        if norm.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(&self.rational / &norm, -&self.root / &norm, self.g))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        self.try_mul(&other.recip()?)
    }

    pub fn max_of(self, other: Self) -> Result<Self, ScalarError> {
        Ok(match self.try_cmp(&other)? {
            Ordering::Less => other,
            _ => self,
        })
    }

    pub fn min_of(self, other: Self) -> Result<Self, ScalarError> {
        Ok(match self.try_cmp(&other)? {
            Ordering::Greater => other,
            _ => self,
        })
    }

    /// Parses the textual forms produced by `Display`: `p/q`,
    /// `(r/s)*sqrt(g)` and `p/q + (r/s)*sqrt(g)`. A `sqrt(m)` term must name
    /// the extension parameter `g`.
    pub fn parse(text: &str, g: u64) -> Result<Self, ScalarError> {
        let fail = |reason: &str| ScalarError::Parse { text: text.to_string(), reason: reason.to_string() };
        let trimmed = text.trim();
        let (rational_text, root_text) = match trimmed.find('(') {
            None => (trimmed, None),
            Some(open) => {
                let head = trimmed[..open].trim_end();
                match head.strip_suffix('+') {
                    Some(r) => (r.trim(), Some(&trimmed[open..])),
                    None if head.is_empty() => ("0", Some(&trimmed[open..])),
                    None => return Err(fail("expected '+' before the root term")),
                }
            }
        };
        let rational = parse_rational(rational_text).ok_or_else(|| fail("bad rational part"))?;
        let root = match root_text {
            None => BigRational::zero(),
            Some(term) => {
                let inner_end = term.find(')').ok_or_else(|| fail("unbalanced parenthesis"))?;
                let coefficient = parse_rational(&term[1..inner_end]).ok_or_else(|| fail("bad root coefficient"))?;
                let radical = term[inner_end + 1..]
                    .trim()
                    .strip_prefix("*sqrt(")
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| fail("expected '*sqrt(g)'"))?;
                let m: u64 = radical.trim().parse().map_err(|_| fail("bad radicand"))?;
                if m != g {
                    return Err(ScalarError::MismatchedParameter { left: g, right: m });
                }
                coefficient
            }
        };
        Self::new(rational, root, g)
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => BigInt::from_str(text).ok().map(BigRational::from_integer),
    }
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root.is_zero() {
            return write!(f, "{}", format_rational(&self.rational));
        }
        let root = format!("({})*sqrt({})", format_rational(&self.root), self.g);
        if self.rational.is_zero() {
            write!(f, "{root}")
        } else {
            write!(f, "{} + {root}", format_rational(&self.rational))
        }
    }
}

impl PartialOrd for ExactScalar {
    /// `None` when the extension parameters differ.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

// Operator forms panic on mismatched parameters; use the `try_*` methods
// when the parameters are not known to agree.
impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: Self) -> ExactScalar {
        self.try_add(rhs).expect("mismatched extension parameter")
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: Self) -> ExactScalar {
        self.try_sub(rhs).expect("mismatched extension parameter")
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: Self) -> ExactScalar {
        self.try_mul(rhs).expect("mismatched extension parameter")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { rational: -&self.rational, root: -&self.root, g: self.g }
    }
}

/// Exact ordering of `a` and `b`; errors when their parameters differ.
pub fn scalar_cmp(a: &ExactScalar, b: &ExactScalar) -> Result<Ordering, ScalarError> {
    a.try_cmp(b)
}
