use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Zero};
use thiserror::Error;

use super::groebner::{buchberger, leading_monomial, normal_form_with};
use super::order::TermOrder;
use super::weights::{solve_weights, WeightError, WeightSystem};
use crate::arith::{fmt_rat, Monomial, Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MilnorError {
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error("weight of variable '{0}' is not positive")]
    NonPositiveWeight(String),
    #[error("singularity is not isolated: no pure power of '{0}' among the leading terms")]
    NonIsolated(String),
    #[error("hessian does not reduce to a multiple of the top standard monomial")]
    DegenerateSocle,
    #[error("variable name collision: '{0}'")]
    VariableCollision(String),
    #[error("variable count mismatch: {0} names for {1} variables")]
    Arity(usize, usize),
}

pub fn jacobian_ideal(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.nvars()).map(|i| f.derivative(i)).collect()
}

fn determinant(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(nvars),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(nvars);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][c] * &determinant(&minor, nvars);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Hessian determinant with respect to the listed variables.
pub fn hessian_in(f: &Polynomial, vars: &[usize]) -> Polynomial {
    let m: Vec<Vec<Polynomial>> = vars
        .iter()
        .map(|&i| {
            let fi = f.derivative(i);
            vars.iter().map(|&j| fi.derivative(j)).collect()
        })
        .collect();
    determinant(&m, f.nvars())
}

pub fn hessian(f: &Polynomial) -> Polynomial {
    let all: Vec<usize> = (0..f.nvars()).collect();
    hessian_in(f, &all)
}

/// The Milnor ring of a quasi-homogeneous polynomial in a chosen subset of the
/// ambient variables; the other variables are set to zero.
#[derive(Clone, Debug)]
pub struct MilnorRing {
    vars: Vec<String>,
    active: Vec<usize>,
    polynomial: Polynomial,
    order: TermOrder,
    groebner: Vec<Polynomial>,
    leads: Vec<Monomial>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    socle: Monomial,
    socle_degree: Rational,
    hessian_scale: Rational,
    pairing: Vec<Vec<Rational>>,
}

impl MilnorRing {
    pub fn new(f: &Polynomial, vars: &[String]) -> Result<Self, MilnorError> {
        let ws = solve_weights(f)?;
        let all: Vec<usize> = (0..f.nvars()).collect();
        Self::with_weights(f, vars, &ws.weights, &all)
    }

    /// Ring of `f` restricted to `active` with the ambient weights.
    pub fn with_weights(
        f: &Polynomial,
        vars: &[String],
        weights: &[Rational],
        active: &[usize],
    ) -> Result<Self, MilnorError> {
        let n = f.nvars();
        if vars.len() != n || weights.len() != n {
            return Err(MilnorError::Arity(vars.len(), n));
        }
        let order = TermOrder::new(weights).ok_or_else(|| {
            let i = weights.iter().position(|q| *q <= Rational::zero()).unwrap_or(0);
            MilnorError::NonPositiveWeight(vars[i].clone())
        })?;
        let fg = f.restrict(active);
        let mut gens: Vec<Polynomial> = active.iter().map(|&i| fg.derivative(i)).collect();
        gens.extend((0..n).filter(|i| !active.contains(i)).map(|i| Polynomial::var(n, i)));
        let groebner = buchberger(&gens, &order);
        let leads: Vec<Monomial> =
            groebner.iter().map(|g| leading_monomial(g, &order).expect("nonzero")).collect();
        for &i in active {
            if !leads.iter().any(|l| l.pure_power_var() == Some(i)) {
                return Err(MilnorError::NonIsolated(vars[i].clone()));
            }
        }
        let basis = standard_monomials(&leads, active, n, &order);
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let socle = basis.last().cloned().expect("basis contains 1");
        let socle_degree = socle.weighted_degree(weights);
        let active_sorted = {
            let mut a = active.to_vec();
            a.sort_unstable();
            a
        };
        let hess = normal_form_with(&hessian_in(&fg, &active_sorted), &groebner, &order);
        if hess.len() != 1 || hess.coeff(&socle).is_zero() {
            return Err(MilnorError::DegenerateSocle);
        }
        let hessian_scale = hess.coeff(&socle);
        let mut ring = MilnorRing {
            vars: vars.to_vec(),
            active: active_sorted,
            polynomial: fg,
            order,
            groebner,
            leads,
            basis,
            index,
            socle,
            socle_degree,
            hessian_scale,
            pairing: Vec::new(),
        };
        ring.pairing = ring.compute_pairing();
        Ok(ring)
    }

    fn compute_pairing(&self) -> Vec<Vec<Rational>> {
        let mu = self.basis.len();
        let degs: Vec<Rational> = self.basis.iter().map(|m| self.degree(m)).collect();
        let mut eta = vec![vec![Rational::zero(); mu]; mu];
        for a in 0..mu {
            for b in a..mu {
                if &degs[a] + &degs[b] != self.socle_degree {
                    continue;
                }
                let prod = Polynomial::monomial(self.basis[a].mul(&self.basis[b]));
                let v = self.socle_coefficient(&prod);
                eta[a][b] = v.clone();
                eta[b][a] = v;
            }
        }
        eta
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.polynomial
    }

    pub fn weights(&self) -> &[Rational] {
        self.order.weights()
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.groebner
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    /// Standard monomials ordered by weighted degree.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn socle(&self) -> &Monomial {
        &self.socle
    }

    pub fn socle_degree(&self) -> &Rational {
        &self.socle_degree
    }

    /// Coefficient of the top monomial in the normal form of the Hessian.
    pub fn hessian_scale(&self) -> &Rational {
        &self.hessian_scale
    }

    pub fn pairing(&self) -> &[Vec<Rational>] {
        &self.pairing
    }

    pub fn degree(&self, m: &Monomial) -> Rational {
        m.weighted_degree(self.order.weights())
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        normal_form_with(p, &self.groebner, &self.order)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Coordinates of `NF(p)` in the standard basis.
    pub fn coords(&self, p: &Polynomial) -> BTreeMap<usize, Rational> {
        self.normal_form(p)
            .terms()
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect()
    }

    /// The residue pairing value: coefficient of the socle monomial in `NF(p)`.
    pub fn socle_coefficient(&self, p: &Polynomial) -> Rational {
        self.normal_form(p).coeff(&self.socle)
    }

    pub fn eta(&self, a: &Polynomial, b: &Polynomial) -> Rational {
        self.socle_coefficient(&(a * b))
    }

    /// Standard monomials of a given weighted degree.
    pub fn basis_of_degree(&self, q: &Rational) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| &self.degree(&self.basis[i]) == q).collect()
    }

    pub fn describe_basis(&self) -> Vec<String> {
        self.basis.iter().map(|m| m.to_text(&self.vars)).collect()
    }

    pub fn describe_degrees(&self) -> Vec<String> {
        self.basis.iter().map(|m| fmt_rat(&self.degree(m))).collect()
    }
}

fn standard_monomials(leads: &[Monomial], active: &[usize], n: usize, order: &TermOrder) -> Vec<Monomial> {
    let mut seen: HashMap<Monomial, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([Monomial::one(n)]);
    while let Some(m) = queue.pop_front() {
        if seen.contains_key(&m) || leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        seen.insert(m.clone(), ());
        for &i in active {
            let mut next = m.clone();
            next.0[i] += 1;
            queue.push_back(next);
        }
        out.push(m);
    }
    out.sort_by(|a, b| order.cmp(a, b));
    out
}

pub fn milnor_ring(f: &Polynomial, vars: &[String]) -> Result<MilnorRing, MilnorError> {
    MilnorRing::new(f, vars)
}

/// `M_f (x) M_g` for polynomials in disjoint variable sets, assembled from the
/// factors without recomputing a Groebner basis.
pub fn tensor_ring(a: &MilnorRing, b: &MilnorRing) -> Result<MilnorRing, MilnorError> {
    if let Some(v) = a.vars.iter().find(|v| b.vars.contains(v)) {
        return Err(MilnorError::VariableCollision(v.clone()));
    }
    let (na, nb) = (a.nvars(), b.nvars());
    let n = na + nb;
    let embed_a = |m: &Monomial| {
        let mut e = m.0.clone();
        e.resize(n, 0);
        Monomial(e)
    };
    let embed_b = |m: &Monomial| {
        let mut e = vec![0; na];
        e.extend_from_slice(&m.0);
        Monomial(e)
    };
    let mut weights = a.weights().to_vec();
    weights.extend_from_slice(b.weights());
    let order = TermOrder::new(&weights).expect("positive weights");
    let mut groebner: Vec<Polynomial> = a.groebner.iter().map(|g| g.embed(n, 0)).collect();
    groebner.extend(b.groebner.iter().map(|g| g.embed(n, na)));
    groebner.sort_by(|p, q| {
        order.cmp(&leading_monomial(p, &order).unwrap(), &leading_monomial(q, &order).unwrap())
    });
    let leads = groebner.iter().map(|g| leading_monomial(g, &order).unwrap()).collect();
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    for (i, x) in a.basis.iter().enumerate() {
        for (j, y) in b.basis.iter().enumerate() {
            pairs.push((i, j, embed_a(x).mul(&embed_b(y))));
        }
    }
    pairs.sort_by(|p, q| order.cmp(&p.2, &q.2));
    let basis: Vec<Monomial> = pairs.iter().map(|p| p.2.clone()).collect();
    let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mu = basis.len();
    let mut pairing = vec![vec![Rational::zero(); mu]; mu];
    for (r, (i, j, _)) in pairs.iter().enumerate() {
        for (c, (k, l, _)) in pairs.iter().enumerate() {
            pairing[r][c] = &a.pairing[*i][*k] * &b.pairing[*j][*l];
        }
    }
    let mut active = a.active.clone();
    active.extend(b.active.iter().map(|i| i + na));
    let mut vars = a.vars.clone();
    vars.extend(b.vars.iter().cloned());
    Ok(MilnorRing {
        vars,
        active,
        polynomial: &a.polynomial.embed(n, 0) + &b.polynomial.embed(n, na),
        order,
        groebner,
        leads,
        basis,
        index,
        socle: embed_a(&a.socle).mul(&embed_b(&b.socle)),
        socle_degree: &a.socle_degree + &b.socle_degree,
        hessian_scale: &a.hessian_scale * &b.hessian_scale,
        pairing,
    })
}

/// Checks that `det(pairing) != 0` by exact elimination.
pub fn pairing_is_nondegenerate(eta: &[Vec<Rational>]) -> bool {
    let n = eta.len();
    let mut m: Vec<Vec<Rational>> = eta.to_vec();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return false;
        };
        m.swap(c, p);
        let inv = Rational::one() / &m[c][c];
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    true
}

/// The stored weight system of a ring's polynomial restricted to its active variables.
pub fn weight_system_of(ring: &MilnorRing) -> WeightSystem {
    WeightSystem::from_weights(ring.active.iter().map(|&i| ring.weights()[i].clone()).collect())
}
