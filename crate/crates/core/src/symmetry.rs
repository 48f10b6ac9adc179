//! Finite abelian groups of diagonal symmetries, sign choices, characters and
//! discrete torsion.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use thiserror::Error;

use crate::arith::{fmt_rat, frac, lcm_u64, Polynomial, Rational, UnitPhase};

pub const DEFAULT_ORDER_BOUND: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("generator {0} is not a symmetry of the polynomial")]
    NotASymmetry(usize),
    #[error("group order exceeds the bound {0}")]
    OrderBoundExceeded(usize),
    #[error("element has {found} phases, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("sign values are not a homomorphism to Z/2")]
    InconsistentSign,
    #[error("invalid discrete torsion: {0}")]
    InvalidTorsion(String),
}

/// `diag(exp(2 pi i nu_1), ..., exp(2 pi i nu_n))`, stored as the phases `nu_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalElement(pub Vec<UnitPhase>);

impl DiagonalElement {
    pub fn identity(n: usize) -> Self {
        DiagonalElement(vec![UnitPhase::one(); n])
    }

    pub fn from_rationals(nu: &[Rational]) -> Self {
        DiagonalElement(nu.iter().cloned().map(UnitPhase::new).collect())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn phases(&self) -> &[UnitPhase] {
        &self.0
    }

    pub fn nu(&self, i: usize) -> &Rational {
        self.0[i].theta()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(UnitPhase::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        DiagonalElement(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }

    pub fn inv(&self) -> Self {
        DiagonalElement(self.0.iter().map(UnitPhase::inv).collect())
    }

    pub fn pow(&self, k: i64) -> Self {
        DiagonalElement(self.0.iter().map(|p| p.pow(k)).collect())
    }

    pub fn order(&self) -> u64 {
        self.0.iter().fold(1, |acc, p| lcm_u64(acc, p.order()))
    }

    /// `det(rho(g))`.
    pub fn det(&self) -> UnitPhase {
        self.det_on(&(0..self.nvars()).collect::<Vec<_>>())
    }

    /// Determinant of the restriction to the listed coordinates.
    pub fn det_on(&self, vars: &[usize]) -> UnitPhase {
        UnitPhase::new(vars.iter().fold(Rational::zero(), |acc, &i| acc + self.nu(i)))
    }

    /// Indices with `nu_i = 0`.
    pub fn fixed_locus(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.0[i].is_one()).collect()
    }

    /// Phase picked up by the monomial with exponents `alpha`.
    pub fn monomial_phase(&self, alpha: &[u32]) -> UnitPhase {
        UnitPhase::new(
            alpha
                .iter()
                .zip(&self.0)
                .fold(Rational::zero(), |acc, (&a, p)| acc + p.theta() * Rational::from_integer(a.into())),
        )
    }
}

impl fmt::Display for DiagonalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| fmt_rat(p.theta())).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn is_symmetry(f: &Polynomial, g: &DiagonalElement) -> bool {
    f.monomials().all(|m| g.monomial_phase(&m.0).is_one())
}

/// The common phase `lambda` with `f(g z) = lambda f(z)`, if there is one.
pub fn projective_factor(f: &Polynomial, g: &DiagonalElement) -> Option<UnitPhase> {
    let mut phases = f.monomials().map(|m| g.monomial_phase(&m.0));
    let first = phases.next()?;
    phases.all(|p| p == first).then_some(first)
}

/// A finite abelian group of diagonal matrices, fully enumerated.
///
/// Element 0 is the identity. `words[i]` expresses element `i` as exponents
/// of the generators.
#[derive(Debug)]
pub struct SymmetryGroup {
    nvars: usize,
    generators: Vec<DiagonalElement>,
    generator_index: Vec<usize>,
    elements: Vec<DiagonalElement>,
    index: HashMap<DiagonalElement, usize>,
    inverse: Vec<usize>,
    words: Vec<Vec<u64>>,
    invariant_factors: Vec<u64>,
    table: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for SymmetryGroup {
    fn clone(&self) -> Self {
        SymmetryGroup {
            nvars: self.nvars,
            generators: self.generators.clone(),
            generator_index: self.generator_index.clone(),
            elements: self.elements.clone(),
            index: self.index.clone(),
            inverse: self.inverse.clone(),
            words: self.words.clone(),
            invariant_factors: self.invariant_factors.clone(),
            table: OnceLock::new(),
        }
    }
}

impl SymmetryGroup {
    /// Closes `gens` under multiplication without checking them against a polynomial.
    pub fn generate(nvars: usize, gens: &[DiagonalElement], bound: usize) -> Result<Self, SymmetryError> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(SymmetryError::Arity { expected: nvars, found: g.nvars() });
        }
        let id = DiagonalElement::identity(nvars);
        let mut elements = vec![id.clone()];
        let mut words = vec![vec![0u64; gens.len()]];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (k, g) in gens.iter().enumerate() {
                let next = elements[i].mul(g);
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() >= bound {
                    return Err(SymmetryError::OrderBoundExceeded(bound));
                }
                let mut w = words[i].clone();
                w[k] += 1;
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
                words.push(w);
            }
        }
        let inverse = elements.iter().map(|g| index[&g.inv()]).collect();
        let generator_index = gens.iter().map(|g| index[g]).collect();
        let invariant_factors = invariant_factors(&elements);
        Ok(SymmetryGroup {
            nvars,
            generators: gens.to_vec(),
            generator_index,
            elements,
            index,
            inverse,
            words,
            invariant_factors,
            table: OnceLock::new(),
        })
    }

    pub fn trivial(nvars: usize) -> Self {
        Self::generate(nvars, &[], 1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[DiagonalElement] {
        &self.generators
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_index
    }

    pub fn elements(&self) -> &[DiagonalElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &DiagonalElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &DiagonalElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn word(&self, i: usize) -> &[u64] {
        &self.words[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.table.get() {
            Some(t) => t[a][b],
            None => self.index[&self.elements[a].mul(&self.elements[b])],
        }
    }

    /// Full multiplication table, computed on first use.
    pub fn table(&self) -> &[Vec<usize>] {
        self.table.get_or_init(|| {
            (0..self.order())
                .map(|a| (0..self.order()).map(|b| self.index[&self.elements[a].mul(&self.elements[b])]).collect())
                .collect()
        })
    }

    pub fn pow(&self, i: usize, k: i64) -> usize {
        self.index[&self.elements[i].pow(k)]
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.elements[i].order()
    }

    /// Invariant factors `d_1 | d_2 | ...`, all greater than 1.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// An element of maximal order when the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        if !self.is_cyclic() {
            return None;
        }
        (0..self.order()).find(|&i| self.element_order(i) as usize == self.order())
    }

    pub fn is_symmetry_group_of(&self, f: &Polynomial) -> bool {
        self.generators.iter().all(|g| is_symmetry(f, g))
    }

    /// Subgroup generated by the listed elements.
    pub fn subgroup(&self, gens: &[usize]) -> SymmetryGroup {
        let g: Vec<DiagonalElement> = gens.iter().map(|&i| self.elements[i].clone()).collect();
        SymmetryGroup::generate(self.nvars, &g, self.order().max(1)).expect("subgroup of a finite group")
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn invariant_factors(elements: &[DiagonalElement]) -> Vec<u64> {
    let orders: Vec<u64> = elements.iter().map(DiagonalElement::order).collect();
    let n = elements.len() as u64;
    // exponents per prime, largest first; the i-th invariant factor from the top
    // collects the i-th exponent of every prime
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_factors(n) {
        let mut ranks = Vec::new();
        let mut prev = 1u64;
        let mut pk = p;
        loop {
            let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            if count == prev {
                break;
            }
            let mut r = 0;
            let mut c = count / prev;
            while c > 1 {
                c /= p;
                r += 1;
            }
            ranks.push(r);
            prev = count;
            pk *= p;
        }
        let width = ranks.first().copied().unwrap_or(0);
        let exps = (0..width).map(|i| ranks.iter().filter(|&&r| r > i).count() as u32).collect();
        per_prime.push((p, exps));
    }
    let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..width)
        .map(|i| per_prime.iter().map(|(p, e)| e.get(i).map_or(1, |&k| p.pow(k))).product())
        .collect();
    factors.reverse();
    factors
}

/// A homomorphism `G -> Z/2`, tabulated by element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignChoice(pub Vec<u8>);

impl SignChoice {
    pub fn trivial(g: &SymmetryGroup) -> Self {
        SignChoice(vec![0; g.order()])
    }

    /// Extends values on the generators; fails when they do not define a homomorphism.
    pub fn from_generators(g: &SymmetryGroup, bits: &[u8]) -> Result<Self, SymmetryError> {
        if bits.len() != g.generators().len() {
            return Err(SymmetryError::Arity { expected: g.generators().len(), found: bits.len() });
        }
        let values: Vec<u8> = (0..g.order())
            .map(|i| (g.word(i).iter().zip(bits).map(|(w, &b)| w * b as u64).sum::<u64>() % 2) as u8)
            .collect();
        for i in 0..g.order() {
            for (k, &gi) in g.generator_indices().iter().enumerate() {
                if values[g.mul(i, gi)] != (values[i] + bits[k] % 2) % 2 {
                    return Err(SymmetryError::InconsistentSign);
                }
            }
        }
        Ok(SignChoice(values))
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }
}

/// All homomorphisms `G -> Z/2`.
pub fn enumerate_sigma(g: &SymmetryGroup) -> Vec<SignChoice> {
    let k = g.generators().len();
    let mut out: Vec<SignChoice> = Vec::new();
    for mask in 0u64..(1 << k) {
        let bits: Vec<u8> = (0..k).map(|i| ((mask >> i) & 1) as u8).collect();
        if let Ok(s) = SignChoice::from_generators(g, &bits) {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// `chi(g) = (-1)^{sigma(g)} det(g)`.
pub fn character_chi(g: &SymmetryGroup, sigma: &SignChoice, i: usize) -> UnitPhase {
    &UnitPhase::sign(sigma.get(i)) * &g.element(i).det()
}

/// Element acting by `exp(2 pi i q_k)` on each coordinate, if it lies in `G`.
pub fn grading_element(weights: &[Rational], g: &SymmetryGroup) -> Option<usize> {
    g.index_of(&grading_operator(weights))
}

pub fn grading_operator(weights: &[Rational]) -> DiagonalElement {
    DiagonalElement::from_rationals(&weights.iter().map(frac).collect::<Vec<_>>())
}

/// A bicharacter `epsilon(g, h)`, tabulated on all pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteTorsion(pub Vec<Vec<UnitPhase>>);

impl DiscreteTorsion {
    pub fn trivial(g: &SymmetryGroup) -> Self {
        DiscreteTorsion(vec![vec![UnitPhase::one(); g.order()]; g.order()])
    }

    /// Extends values on generator pairs bimultiplicatively and validates
    /// `epsilon(g,g) = 1` and `epsilon(g,h) = epsilon(h^-1,g)`.
    pub fn from_generator_pairs(g: &SymmetryGroup, pairs: &[Vec<Rational>]) -> Result<Self, SymmetryError> {
        let k = g.generators().len();
        if pairs.len() != k || pairs.iter().any(|r| r.len() != k) {
            return Err(SymmetryError::InvalidTorsion(format!("expected a {k}x{k} table")));
        }
        let n = g.order();
        let mut table = vec![vec![UnitPhase::one(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let mut theta = Rational::zero();
                for (x, wa) in g.word(a).iter().enumerate() {
                    for (y, wb) in g.word(b).iter().enumerate() {
                        theta += &pairs[x][y] * Rational::from_integer((wa * wb).into());
                    }
                }
                table[a][b] = UnitPhase::new(theta);
            }
        }
        let eps = DiscreteTorsion(table);
        eps.validate(g)?;
        Ok(eps)
    }

    fn validate(&self, g: &SymmetryGroup) -> Result<(), SymmetryError> {
        let n = g.order();
        for a in 0..n {
            if !self.0[a][a].is_one() {
                return Err(SymmetryError::InvalidTorsion(format!("epsilon(g,g) != 1 for {}", g.element(a))));
            }
            for b in 0..n {
                if self.0[a][b] != self.0[g.inverse(b)][a] {
                    return Err(SymmetryError::InvalidTorsion(format!(
                        "epsilon(g,h) != epsilon(h^-1,g) for ({}, {})",
                        g.element(a),
                        g.element(b)
                    )));
                }
                for &c in g.generator_indices() {
                    let left = &self.0[a][b] * &self.0[c][b];
                    let right = &self.0[a][b] * &self.0[a][c];
                    if self.0[g.mul(a, c)][b] != left || self.0[a][g.mul(b, c)] != right {
                        return Err(SymmetryError::InvalidTorsion("not well defined on the group".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, a: usize, b: usize) -> &UnitPhase {
        &self.0[a][b]
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().flatten().all(UnitPhase::is_one)
    }
}

pub fn default_torsion(g: &SymmetryGroup) -> DiscreteTorsion {
    DiscreteTorsion::trivial(g)
}

/// Checks a generated group against a polynomial.
pub fn generate_group(
    f: &Polynomial,
    gens: &[DiagonalElement],
    bound: usize,
) -> Result<SymmetryGroup, SymmetryError> {
    if let Some(k) = gens.iter().position(|g| g.nvars() == f.nvars() && !is_symmetry(f, g)) {
        return Err(SymmetryError::NotASymmetry(k));
    }
    SymmetryGroup::generate(f.nvars(), gens, bound)
}
