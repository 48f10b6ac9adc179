use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::arith::{Monomial, Rational};

/// Weighted-degree order with ties broken lexicographically, the last
/// variable being most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    weights: Vec<Rational>,
    scaled: Vec<u64>,
}

/// Sort key realizing [`TermOrder`]: comparing keys compares monomials.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey {
    degree: u64,
    rev: Vec<u32>,
}

impl OrderKey {
    pub fn monomial(&self) -> Monomial {
        Monomial(self.rev.iter().rev().copied().collect())
    }

    pub fn mul(&self, other: &OrderKey) -> OrderKey {
        OrderKey {
            degree: self.degree + other.degree,
            rev: self.rev.iter().zip(&other.rev).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn div(&self, other: &OrderKey) -> OrderKey {
        OrderKey {
            degree: self.degree - other.degree,
            rev: self.rev.iter().zip(&other.rev).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn divides(&self, other: &OrderKey) -> bool {
        self.degree <= other.degree && self.rev.iter().zip(&other.rev).all(|(a, b)| a <= b)
    }
}

impl TermOrder {
    /// Requires strictly positive weights.
    pub fn new(weights: &[Rational]) -> Option<Self> {
        if weights.iter().any(|q| !q.is_positive()) {
            return None;
        }
        let l = weights
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        let scaled = weights
            .iter()
            .map(|q| (q * Rational::from_integer(l.clone())).to_integer().to_u64())
            .collect::<Option<Vec<_>>>()?;
        Some(TermOrder { weights: weights.to_vec(), scaled })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn key(&self, m: &Monomial) -> OrderKey {
        let degree = m.0.iter().zip(&self.scaled).map(|(e, w)| *e as u64 * w).sum();
        OrderKey { degree, rev: m.0.iter().rev().copied().collect() }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}
