//! Numerical divisor classes on `C^(2)`.
//!
//! A class is written `(n, gamma) + xi`, meaning `(n + gamma) x - gamma (delta/2) + xi`
//! with `xi` orthogonal to the plane spanned by the fibre class `x` and the
//! diagonal `delta`. The residue `xi` is symbolic: a rational combination of
//! named generators whose pairwise products come from a [`ResidueSpace`].

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{ExactScalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error("unknown residue generator {0:?}")]
    UnknownResidue(String),
    #[error("duplicate residue generator {0:?}")]
    DuplicateResidue(String),
    #[error("gram matrix must be square with one row per generator")]
    GramShape,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    GramNotSymmetric(usize, usize),
    #[error("gram matrix is not negative semidefinite (failed at generator {0:?})")]
    GramNotNegativeSemidefinite(String),
    #[error("pencil degree must be at least 2, got {0}")]
    PencilDegree(i64),
    #[error("x-degree of a curve must be positive, got {0}")]
    NonPositiveXDegree(BigRational),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Gram matrix of the residue generators orthogonal to `<x, delta>`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResidueSpace {
    names: Vec<String>,
    gram: Vec<Vec<BigRational>>,
}

impl ResidueSpace {
    /// The space with no generators; only the zero residue resolves in it.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(names: Vec<String>, gram: Vec<Vec<BigRational>>) -> Result<Self, ClassError> {
        if gram.len() != names.len() || gram.iter().any(|row| row.len() != names.len()) {
            return Err(ClassError::GramShape);
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(ClassError::DuplicateResidue(name.clone()));
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(ClassError::GramNotSymmetric(i, j));
                }
            }
        }
        if let Some(bad) = first_indefinite_pivot(&gram) {
            return Err(ClassError::GramNotNegativeSemidefinite(names[bad].clone()));
        }
        Ok(ResidueSpace { names, gram })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn index(&self, name: &str) -> Result<usize, ClassError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ClassError::UnknownResidue(name.to_string()))
    }

    /// Bilinear pairing of two residues.
    pub fn pair(&self, a: &Residue, b: &Residue) -> Result<BigRational, ClassError> {
        let mut total = BigRational::zero();
        for (na, ca) in &a.terms {
            let i = self.index(na)?;
            for (nb, cb) in &b.terms {
                let j = self.index(nb)?;
                total += ca * cb * &self.gram[i][j];
            }
        }
        Ok(total)
    }
}

/// Exact symmetric elimination on `-gram`. Returns the first generator whose
/// pivot shows the matrix is not negative semidefinite.
fn first_indefinite_pivot(gram: &[Vec<BigRational>]) -> Option<usize> {
    let size = gram.len();
    let mut m: Vec<Vec<BigRational>> = gram.iter().map(|row| row.iter().map(|v| -v).collect()).collect();
    for k in 0..size {
        let pivot = m[k][k].clone();
        if pivot.is_negative() {
            return Some(k);
        }
        if pivot.is_zero() {
            // A zero pivot of a PSD matrix forces a zero row.
            if (k + 1..size).any(|j| !m[k][j].is_zero()) {
                return Some(k);
            }
            continue;
        }
        for i in k + 1..size {
            let factor = &m[i][k] / &pivot;
            for j in k..size {
                let delta = &factor * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    None
}

/// A rational combination of residue generators. Empty means zero.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Residue {
    terms: BTreeMap<String, BigRational>,
}

impl Residue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(name: impl Into<String>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(name.into(), BigRational::one());
        Residue { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &BigRational)> {
        self.terms.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn linear_combination(c1: &BigRational, a: &Residue, c2: &BigRational, b: &Residue) -> Residue {
        let mut terms: BTreeMap<String, BigRational> = BTreeMap::new();
        for (name, coefficient) in &a.terms {
            *terms.entry(name.clone()).or_insert_with(BigRational::zero) += c1 * coefficient;
        }
        for (name, coefficient) in &b.terms {
            *terms.entry(name.clone()).or_insert_with(BigRational::zero) += c2 * coefficient;
        }
        terms.retain(|_, v| !v.is_zero());
        Residue { terms }
    }
}

/// The class `(n, gamma) + residue`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NS2Class {
    pub n: BigRational,
    pub gamma: BigRational,
    pub residue: Residue,
}

impl NS2Class {
    pub fn new(n: BigRational, gamma: BigRational) -> Self {
        NS2Class { n, gamma, residue: Residue::zero() }
    }

    pub fn from_integers(n: i64, gamma: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::from_integer(gamma.into()))
    }

    pub fn with_residue(mut self, residue: Residue) -> Self {
        self.residue = residue;
        self
    }

    /// The fibre class `x = (1, 0)`.
    pub fn fibre() -> Self {
        Self::from_integers(1, 0)
    }

    /// The diagonal class `delta = (2, -2)`.
    pub fn diagonal() -> Self {
        Self::from_integers(2, -2)
    }

    /// Coordinates `(coef_x, coef_delta)` in the `(x, delta)` basis. The
    /// residue is unchanged and not part of the result.
    pub fn to_x_delta(&self) -> (BigRational, BigRational) {
        let two = BigRational::from_integer(2.into());
        (&self.n + &self.gamma, -&self.gamma / two)
    }

    pub fn from_x_delta(coef_x: BigRational, coef_delta: BigRational) -> Self {
        let gamma = -coef_delta * BigRational::from_integer(2.into());
        NS2Class::new(coef_x - &gamma, gamma)
    }

    /// The residue-free part `(n, gamma)`.
    pub fn truncated(&self) -> Self {
        NS2Class::new(self.n.clone(), self.gamma.clone())
    }
}

/// `(D1.D2) = n1 n2 - gamma1 gamma2 g + (xi1.xi2)`.
pub fn intersect(d1: &NS2Class, d2: &NS2Class, space: &ResidueSpace, g: u64) -> Result<BigRational, ClassError> {
    let g = BigRational::from_integer(g.into());
    let residue = space.pair(&d1.residue, &d2.residue)?;
    Ok(&d1.n * &d2.n - &d1.gamma * &d2.gamma * g + residue)
}

/// `c1 D1 + c2 D2`, componentwise.
pub fn combine(d1: &NS2Class, c1: &BigRational, d2: &NS2Class, c2: &BigRational) -> NS2Class {
    NS2Class {
        n: c1 * &d1.n + c2 * &d2.n,
        gamma: c1 * &d1.gamma + c2 * &d2.gamma,
        residue: Residue::linear_combination(c1, &d1.residue, c2, &d2.residue),
    }
}

/// Class of the curve cut out on `C^(2)` by a base-point-free pencil of
/// degree `d`: `d x - delta/2 = (d - 1, 1)`.
pub fn pencil_curve_class(d: i64) -> Result<NS2Class, ClassError> {
    if d < 2 {
        return Err(ClassError::PencilDegree(d));
    }
    Ok(NS2Class::from_integers(d - 1, 1))
}

/// Slope computed by an integral curve with the given `x`- and
/// `delta`-degrees: `((delta.C) - 2(x.C)) / (2(x.C))`.
pub fn r_value(x_deg: &BigRational, delta_deg: &BigRational) -> Result<BigRational, ClassError> {
    if !x_deg.is_positive() {
        return Err(ClassError::NonPositiveXDegree(x_deg.clone()));
    }
    let two = BigRational::from_integer(2.into());
    Ok((delta_deg - &two * x_deg) / (two * x_deg))
}

/// Residue-free class `(n, gamma)` with coordinates in `Q(sqrt g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdClass {
    pub n: ExactScalar,
    pub gamma: ExactScalar,
}

impl SurdClass {
    /// The class `(mu + 1) x - delta/2`, i.e. `(mu, 1)`.
    pub fn slope_class(mu: &ExactScalar) -> Result<Self, ClassError> {
        Ok(SurdClass { n: mu.clone(), gamma: ExactScalar::from_integer(1, mu.parameter())? })
    }

    /// Pairing by bilinearity: `n1 n2 - gamma1 gamma2 g`.
    pub fn pair(&self, other: &SurdClass) -> Result<ExactScalar, ClassError> {
        let g = ExactScalar::from_integer(self.n.parameter() as i64, self.n.parameter())?;
        let nn = self.n.try_mul(&other.n)?;
        let gg = self.gamma.try_mul(&other.gamma)?.try_mul(&g)?;
        Ok(nn.try_sub(&gg)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn z(n: i64) -> BigRational {
        q(n, 1)
    }

    #[test]
    fn intersection_examples() {
        let empty = ResidueSpace::empty();
        let pencil = NS2Class::from_integers(3, 1);
        assert_eq!(intersect(&pencil, &pencil, &empty, 9).unwrap(), z(0));
        let x = NS2Class::fibre();
        assert_eq!(intersect(&x, &x, &empty, 17).unwrap(), z(1));
        let a = NS2Class::from_integers(6, 1);
        let b = NS2Class::from_integers(5, 1);
        assert_eq!(intersect(&a, &b, &empty, 25).unwrap(), z(5));
    }

    #[test]
    fn basis_products() {
        let empty = ResidueSpace::empty();
        let (x, delta) = (NS2Class::fibre(), NS2Class::diagonal());
        for g in 2..12 {
            assert_eq!(intersect(&x, &delta, &empty, g).unwrap(), z(2));
            assert_eq!(intersect(&delta, &delta, &empty, g).unwrap(), z(4 - 4 * g as i64));
        }
    }

    #[test]
    fn combine_examples() {
        let sum = combine(&NS2Class::from_integers(3, 1), &z(1), &NS2Class::from_integers(2, 1), &z(1));
        assert_eq!(sum, NS2Class::from_integers(5, 2));
        let p = NS2Class::from_integers(6, 1);
        assert_eq!(combine(&p, &z(1), &p, &z(-1)), NS2Class::from_integers(0, 0));
        let scaled = combine(&NS2Class::from_integers(5, -1), &z(2), &NS2Class::from_integers(0, 0), &z(0));
        assert_eq!(scaled, NS2Class::from_integers(10, -2));
    }

    #[test]
    fn combine_cancels_residues() {
        let a = NS2Class::fibre().with_residue(Residue::generator("e"));
        let diff = combine(&a, &z(1), &a, &z(-1));
        assert!(diff.residue.is_zero());
    }

    #[test]
    fn x_delta_coordinates() {
        assert_eq!(NS2Class::from_integers(6, 1).to_x_delta(), (z(7), q(-1, 2)));
        assert_eq!(NS2Class::from_integers(5, -1).to_x_delta(), (z(4), q(1, 2)));
        assert_eq!(NS2Class::from_integers(0, 0).to_x_delta(), (z(0), z(0)));
        assert_eq!(NS2Class::from_x_delta(z(0), z(1)), NS2Class::diagonal());
    }

    #[test]
    fn pencil_classes() {
        assert_eq!(pencil_curve_class(3).unwrap(), NS2Class::from_integers(2, 1));
        assert_eq!(pencil_curve_class(4).unwrap(), NS2Class::from_integers(3, 1));
        assert_eq!(pencil_curve_class(2).unwrap(), NS2Class::from_integers(1, 1));
        assert_eq!(pencil_curve_class(1), Err(ClassError::PencilDegree(1)));
    }

    #[test]
    fn r_value_examples() {
        // hyperelliptic cover cycle at g = 5
        assert_eq!(r_value(&z(1), &z(12)).unwrap(), z(5));
        // B_1 of an elliptic triple cover at g = 26
        assert_eq!(r_value(&z(2), &z(2 * 26 + 4 - 6)).unwrap(), q(23, 2));
        assert_eq!(r_value(&z(1), &z(2)).unwrap(), z(0));
        assert!(matches!(r_value(&z(0), &z(2)), Err(ClassError::NonPositiveXDegree(_))));
    }

    #[test]
    fn residue_space_validation() {
        let names = vec!["e".to_string(), "f".to_string()];
        assert!(ResidueSpace::new(names.clone(), vec![vec![z(-2), z(1)], vec![z(1), z(-2)]]).is_ok());
        assert!(ResidueSpace::new(names.clone(), vec![vec![z(0), z(0)], vec![z(0), z(-1)]]).is_ok());
        assert_eq!(
            ResidueSpace::new(names.clone(), vec![vec![z(-1), z(2)], vec![z(2), z(-1)]]),
            Err(ClassError::GramNotNegativeSemidefinite("f".into()))
        );
        assert_eq!(
            ResidueSpace::new(names.clone(), vec![vec![z(0), z(1)], vec![z(1), z(-1)]]),
            Err(ClassError::GramNotNegativeSemidefinite("e".into()))
        );
        assert_eq!(
            ResidueSpace::new(names.clone(), vec![vec![z(1), z(0)], vec![z(0), z(-1)]]),
            Err(ClassError::GramNotNegativeSemidefinite("e".into()))
        );
        assert_eq!(
            ResidueSpace::new(names, vec![vec![z(-1), z(0)], vec![z(1), z(-1)]]),
            Err(ClassError::GramNotSymmetric(1, 0))
        );
    }

    #[test]
    fn residue_pairing_and_unknown_generator() {
        let space = ResidueSpace::new(vec!["e".into()], vec![vec![z(-3)]]).unwrap();
        let d = NS2Class::from_integers(2, 1).with_residue(Residue::generator("e"));
        assert_eq!(intersect(&d, &d, &space, 4).unwrap(), z(4 - 4 - 3));
        let stray = NS2Class::fibre().with_residue(Residue::generator("nope"));
        assert_eq!(
            intersect(&stray, &d, &space, 4),
            Err(ClassError::UnknownResidue("nope".into()))
        );
    }

    #[test]
    fn surd_self_intersection() {
        let root = ExactScalar::sqrt_of(7).unwrap();
        let boundary = SurdClass::slope_class(&root).unwrap();
        assert_eq!(boundary.pair(&boundary).unwrap(), ExactScalar::zero(7).unwrap());
    }
}
