use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("polynomial has no terms")]
    Empty,
    #[error("no weights make every monomial degree 1 (not quasi-homogeneous)")]
    NoSolution,
    #[error("weights are not determined; unconstrained variables: {0:?}")]
    Underdetermined(Vec<usize>),
}

/// Weights `q_i`, central charge `d = sum(1 - 2 q_i)` and `prod(1/q_i - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub weights: Vec<Rational>,
    pub central_charge: Rational,
    pub milnor_number_formula: Rational,
}

impl WeightSystem {
    pub fn from_weights(weights: Vec<Rational>) -> Self {
        let two = Rational::from_integer(2.into());
        let central_charge = weights
            .iter()
            .fold(Rational::zero(), |acc, q| acc + Rational::one() - &two * q);
        let milnor_number_formula = weights
            .iter()
            .fold(Rational::one(), |acc, q| acc * (Rational::one() / q - Rational::one()));
        WeightSystem { weights, central_charge, milnor_number_formula }
    }
}

/// Solves `sum_i q_i e_i = 1` over the exponent vectors of `f`.
pub fn solve_weights(f: &Polynomial) -> Result<WeightSystem, WeightError> {
    if f.is_zero() {
        return Err(WeightError::Empty);
    }
    let n = f.nvars();
    let mut rows: Vec<Vec<Rational>> = f
        .monomials()
        .map(|m| {
            let mut r: Vec<Rational> = m.0.iter().map(|&e| Rational::from_integer(e.into())).collect();
            r.push(Rational::one());
            r
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..=n {
                    let t = &f * &rows[r][k];
                    rows[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Err(WeightError::NoSolution);
    }
    if pivots.len() < n {
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        return Err(WeightError::Underdetermined(free));
    }
    let weights = (0..n).map(|c| rows[c][n].clone()).collect();
    Ok(WeightSystem::from_weights(weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_polynomial, rat};

    fn p(s: &str, v: &[&str]) -> Polynomial {
        let v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        parse_polynomial(s, &v).unwrap()
    }

    #[test]
    fn a3_weights() {
        let w = solve_weights(&p("x^4", &["x"])).unwrap();
        assert_eq!(w.weights, vec![rat(1, 4)]);
        assert_eq!(w.central_charge, rat(1, 2));
        assert_eq!(w.milnor_number_formula, rat(3, 1));
    }

    #[test]
    fn e7_weights() {
        let w = solve_weights(&p("x^3 + x*y^3", &["x", "y"])).unwrap();
        assert_eq!(w.weights, vec![rat(1, 3), rat(2, 9)]);
        assert_eq!(w.central_charge, rat(8, 9));
        assert_eq!(w.milnor_number_formula, rat(7, 1));
    }

    #[test]
    fn stabilization_variable() {
        let w = solve_weights(&p("w^2", &["w"])).unwrap();
        assert_eq!(w.weights, vec![rat(1, 2)]);
        assert_eq!(w.central_charge, rat(0, 1));
    }

    #[test]
    fn failures() {
        assert_eq!(solve_weights(&p("x^2 + x^3", &["x"])), Err(WeightError::NoSolution));
        assert_eq!(solve_weights(&p("x^2*y^2", &["x", "y"])), Err(WeightError::Underdetermined(vec![1])));
        assert_eq!(solve_weights(&p("x^2", &["x", "y"])), Err(WeightError::Underdetermined(vec![1])));
        assert_eq!(solve_weights(&p("1 + x", &["x"])), Err(WeightError::NoSolution));
    }
}
