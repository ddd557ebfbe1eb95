//! Elements of the Cartan subspace `a` — the value space of every exponent.
//!
//! For `Sl(n)` (type A) these are zero-sum real vectors, the logs of
//! positive diagonal matrices; for the type-C chamber geometry they are
//! unconstrained signed vectors. Units are natural logs per time step.

use std::ops::{Add, Mul, Neg, Sub};

/// A point of the Cartan subspace, stored as raw coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanVector {
    coords: Vec<f64>,
}

impl CartanVector {
    pub fn new(coords: Vec<f64>) -> Self {
        CartanVector { coords }
    }

    pub fn zeros(n: usize) -> Self {
        CartanVector {
            coords: vec![0.0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.coords[i]
    }

    /// Sum of the first `k` coordinates (1-indexed upper end).
    pub(crate) fn partial_sum(&self, k: usize) -> f64 {
        self.coords[..k].iter().sum()
    }

    pub fn sum(&self) -> f64 {
        self.coords.iter().sum()
    }

    pub fn inf_norm(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &CartanVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn inf_distance(&self, other: &CartanVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn scale(&self, s: f64) -> CartanVector {
        CartanVector {
            coords: self.coords.iter().map(|x| x * s).collect(),
        }
    }

    /// Weakly decreasing coordinates, i.e. membership in `cl a+` for type A.
    pub fn is_weakly_decreasing(&self, tol: f64) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1] - tol)
    }

    /// Coordinates sorted weakly decreasing.
    pub fn sorted_decreasing(&self) -> CartanVector {
        let mut c = self.coords.clone();
        c.sort_by(|a, b| b.partial_cmp(a).expect("no NaN in CartanVector"));
        CartanVector { coords: c }
    }

    /// Coordinate order reversed.
    pub fn reversed(&self) -> CartanVector {
        let mut c = self.coords.clone();
        c.reverse();
        CartanVector { coords: c }
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|x| x.is_finite())
    }
}

impl Add<&CartanVector> for &CartanVector {
    type Output = CartanVector;
    fn add(self, rhs: &CartanVector) -> CartanVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        CartanVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&CartanVector> for &CartanVector {
    type Output = CartanVector;
    fn sub(self, rhs: &CartanVector) -> CartanVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        CartanVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CartanVector {
    type Output = CartanVector;
    fn neg(self) -> CartanVector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &CartanVector {
    type Output = CartanVector;
    fn mul(self, rhs: f64) -> CartanVector {
        self.scale(rhs)
    }
}

impl From<Vec<f64>> for CartanVector {
    fn from(coords: Vec<f64>) -> Self {
        CartanVector { coords }
    }
}

impl From<&[f64]> for CartanVector {
    fn from(coords: &[f64]) -> Self {
        CartanVector {
            coords: coords.to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_norms() {
        let a = CartanVector::from(vec![1.0, 0.0, -1.0]);
        let b = CartanVector::from(vec![0.5, 0.5, -1.0]);
        assert_eq!((&a + &b).coords(), &[1.5, 0.5, -2.0]);
        assert_eq!((&a - &b).coords(), &[0.5, -0.5, 0.0]);
        assert_eq!(a.inf_norm(), 1.0);
        assert_eq!(a.sum(), 0.0);
        assert!(a.is_weakly_decreasing(0.0));
        assert!(!b.reversed().is_weakly_decreasing(0.0));
    }

    #[test]
    fn sorting_is_decreasing() {
        let a = CartanVector::from(vec![-2.0, 3.0, 1.0]);
        assert_eq!(a.sorted_decreasing().coords(), &[3.0, 1.0, -2.0]);
    }
}
