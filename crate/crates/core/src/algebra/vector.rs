use std::ops::{Add, Mul};

use crate::error::{Error, Result};

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A vector over Z_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentVector<S>(Vec<S>);

impl<S> ExponentVector<S>
where
    S: Copy + Add<Output = S> + Mul<Output = S>,
{
    pub fn new(coords: Vec<S>) -> Self {
        ExponentVector(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    /// Inner product mod q.
    pub fn dot(&self, other: &Self) -> Result<S> {
        same_dim(self.dim(), other.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| *a * *b)
            .reduce(|acc, x| acc + x)
            .ok_or(Error::EmptyVector)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(ExponentVector(
            self.0.iter().zip(&other.0).map(|(a, b)| *a + *b).collect(),
        ))
    }

    pub fn scale(&self, a: S) -> Self {
        ExponentVector(self.0.iter().map(|v| a * *v).collect())
    }

    /// `sum_k c_k * v_k`. All vectors must share a dimension and `terms` must
    /// be non-empty.
    pub fn linear_combination(terms: &[(&Self, S)]) -> Result<Self> {
        let (first, rest) = terms.split_first().ok_or(Error::EmptyVector)?;
        rest.iter()
            .try_fold(first.0.scale(first.1), |acc, (v, c)| acc.add(&v.scale(*c)))
    }
}

/// `g^v` for an exponent vector `v`, stored element-wise. Which group the
/// elements live in is carried by `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupVector<T>(Vec<T>);

impl<T> GroupVector<T>
where
    T: Copy + Add<Output = T>,
{
    pub fn from_elements(elems: Vec<T>) -> Self {
        GroupVector(elems)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn elements(&self) -> &[T] {
        &self.0
    }

    /// Component-wise group operation: `g^v * g^w = g^{v+w}`.
    pub fn vec_mul(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(GroupVector(
            self.0.iter().zip(&other.0).map(|(a, b)| *a + *b).collect(),
        ))
    }

    /// `(g^v)^a = g^{a v}`.
    pub fn pow<S: Copy>(&self, a: S) -> Self
    where
        T: Mul<S, Output = T>,
    {
        GroupVector(self.0.iter().map(|x| *x * a).collect())
    }

    /// `prod_k (g^{v_k})^{c_k}`.
    pub fn linear_combination<S: Copy>(terms: &[(&Self, S)]) -> Result<Self>
    where
        T: Mul<S, Output = T>,
    {
        let (first, rest) = terms.split_first().ok_or(Error::EmptyVector)?;
        rest.iter()
            .try_fold(first.0.pow(first.1), |acc, (v, c)| acc.vec_mul(&v.pow(*c)))
    }
}
