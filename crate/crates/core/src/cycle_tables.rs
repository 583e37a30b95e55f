//! Intersection numbers of 1-cycles on `C^(d)` coming from a covering
//! `C -> H`, and the class of the diagonal on `C^(d)`.
//!
//! For an `n`-sheeted cover of a genus-`h` curve the fibres form a curve
//! `Sigma` in `C^(n)`. `B_{n-d}(H)` is the cycle of degree-`d` divisors
//! contained in some fibre; it lives in `C^(d)`.
//!
//! The `B_{n-d}(H)` formulas are also used with `h = 0` (covers of the line,
//! i.e. pencils); at `d = 2` they reduce to the ramification identities.

use num_rational::BigRational;

use crate::class_algebra::{r_value, ClassError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("genus must be at least 2, got {0}")]
    Genus(i64),
    #[error("cover must have at least 2 sheets, got {0}")]
    Sheets(i64),
    #[error("target genus must be nonnegative, got {0}")]
    TargetGenus(i64),
    #[error("symmetric index {d} outside 2..={n}")]
    SymmetricIndex { d: i64, n: i64 },
    #[error("{sheets}-sheeted cover of a genus-{target_genus} curve is impossible for genus {genus}: ramification degree {ramification} < 0")]
    Inadmissible { sheets: i64, target_genus: i64, genus: i64, ramification: i64 },
}

/// An `n`-sheeted cover `C -> H` with `H` of genus `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverDatum {
    pub n: i64,
    pub h: i64,
}

impl CoverDatum {
    pub fn new(n: i64, h: i64) -> Result<Self, CycleError> {
        if n < 2 {
            return Err(CycleError::Sheets(n));
        }
        if h < 0 {
            return Err(CycleError::TargetGenus(h));
        }
        Ok(CoverDatum { n, h })
    }

    /// A pencil of degree `d` viewed as a `d`-sheeted cover of the line.
    pub fn pencil(d: i64) -> Result<Self, CycleError> {
        Self::new(d, 0)
    }

    pub fn is_double(&self) -> bool {
        self.n == 2
    }

    /// Errors when the Riemann-Hurwitz ramification degree is negative for genus `g`.
    pub fn check_admissible(&self, g: i64) -> Result<(), CycleError> {
        if g < 2 {
            return Err(CycleError::Genus(g));
        }
        let ramification = ramification_degree(*self, g);
        if ramification < 0 {
            return Err(CycleError::Inadmissible { sheets: self.n, target_genus: self.h, genus: g, ramification });
        }
        Ok(())
    }
}

/// `((x.Z), (theta.Z), (delta.Z))` for a 1-cycle `Z` on some `C^(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycleNumbers {
    pub x_deg: i64,
    pub theta_deg: i64,
    pub delta_deg: i64,
}

impl CycleNumbers {
    /// The slope `R` computed by this cycle, read on `C^(2)`.
    pub fn r_value(&self) -> Result<BigRational, ClassError> {
        r_value(&BigRational::from_integer(self.x_deg.into()), &BigRational::from_integer(self.delta_deg.into()))
    }
}

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> i64 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: i128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// Degree of the ramification divisor, `2(g-1) - 2n(h-1)`. A negative value
/// means no such cover exists.
pub fn ramification_degree(c: CoverDatum, g: i64) -> i64 {
    2 * (g - 1) - 2 * c.n * (c.h - 1)
}

/// Numbers of the fibre curve `Sigma` in `C^(n)`: `(1, nh, ramification)`.
pub fn cover_cycle(c: CoverDatum, g: i64) -> Result<CycleNumbers, CycleError> {
    c.check_admissible(g)?;
    Ok(CycleNumbers { x_deg: 1, theta_deg: c.n * c.h, delta_deg: ramification_degree(c, g) })
}

/// Numbers of `B_{n-d}(H)` in `C^(d)`.
pub fn b_cycle(c: CoverDatum, d: i64, g: i64) -> Result<CycleNumbers, CycleError> {
    if g < 2 {
        return Err(CycleError::Genus(g));
    }
    if d < 2 || d > c.n {
        return Err(CycleError::SymmetricIndex { d, n: c.n });
    }
    let k = c.n - d;
    let x_deg = binomial(c.n - 1, k);
    let theta_deg = c.n * c.h * binomial(c.n - 2, k) + g * binomial(c.n - 2, k - 1);
    let (coef_x, coef_theta) = diagonal_class_cd(d, g);
    Ok(CycleNumbers { x_deg, theta_deg, delta_deg: coef_x * x_deg + coef_theta * theta_deg })
}

/// Diagonal of `C^(d)` as `(coef_x, coef_theta)`: `2((d+g-1) x - theta)`.
pub fn diagonal_class_cd(d: i64, g: i64) -> (i64, i64) {
    (2 * (d + g - 1), -2)
}
