//! Invariants of a Milnor ring under diagonal projective symmetries.

use thiserror::Error;

use super::entries::Catalog;
use super::spectrum::{MatchMode, Spectrum};
use crate::arith::{Polynomial, Rational, UnitPhase};
use crate::milnor::{MilnorError, MilnorRing};
use crate::symmetry::{projective_factor, DiagonalElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldError {
    #[error(transparent)]
    Milnor(#[from] MilnorError),
    #[error("generator {0} does not rescale the summand {1}")]
    NotProjectiveSymmetry(String, String),
    #[error("the socle monomial {0} is not invariant")]
    SocleNotPreserved(String),
    #[error("invariants are not closed under multiplication: {0}")]
    NotClosed(String),
    #[error("generator has {0} phases for {1} variables")]
    WrongArity(usize, usize),
}

#[derive(Clone, Debug)]
pub struct FoldResult {
    /// Summands of `f` in pairwise disjoint variables.
    pub summands: Vec<String>,
    /// `factors[i][k]`: the factor by which generator `i` rescales summand `k`.
    pub factors: Vec<Vec<UnitPhase>>,
    pub basis: Vec<String>,
    /// Indices of the invariant standard monomials.
    pub invariant: Vec<usize>,
    pub invariant_basis: Vec<String>,
    pub degrees: Vec<Rational>,
    pub spectrum: Spectrum,
    pub products_checked: usize,
    pub matches: Vec<String>,
}

impl FoldResult {
    pub fn rank(&self) -> usize {
        self.invariant.len()
    }
}

/// Splits `f` into sums of monomials connected through shared variables.
pub fn summands(f: &Polynomial) -> Vec<Polynomial> {
    let n = f.nvars();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for m in f.monomials() {
        let vars: Vec<usize> = (0..n).filter(|&i| m.0[i] > 0).collect();
        for w in vars.windows(2) {
            let (a, b) = (root(&mut parent, w[0]), root(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: Vec<(usize, Polynomial)> = Vec::new();
    for (m, c) in f.terms() {
        let Some(first) = (0..n).find(|&i| m.0[i] > 0) else { continue };
        let r = root(&mut parent, first);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, p)) => p.add_term(m.clone(), c.clone()),
            None => groups.push((r, Polynomial::term(m.clone(), c.clone()))),
        }
    }
    groups.into_iter().map(|(_, p)| p).collect()
}

/// Takes invariants under the plain diagonal action of `gens`, each of which
/// must rescale every summand of `f`.
pub fn fold(f: &Polynomial, vars: &[String], gens: &[DiagonalElement], catalog: &Catalog) -> Result<FoldResult, FoldError> {
    let ring = MilnorRing::new(f, vars)?;
    let parts = summands(f);
    let mut factors = Vec::new();
    for g in gens {
        if g.nvars() != f.nvars() {
            return Err(FoldError::WrongArity(g.nvars(), f.nvars()));
        }
        let row = parts
            .iter()
            .map(|p| {
                projective_factor(p, g)
                    .ok_or_else(|| FoldError::NotProjectiveSymmetry(g.to_string(), p.to_text(vars)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        factors.push(row);
    }
    let fixed = |alpha: &[u32]| gens.iter().all(|g| g.monomial_phase(alpha).is_one());
    let socle = ring.socle();
    if !fixed(&socle.0) {
        return Err(FoldError::SocleNotPreserved(socle.to_text(vars)));
    }
    let basis = ring.basis();
    let invariant: Vec<usize> = (0..basis.len()).filter(|&i| fixed(&basis[i].0)).collect();
    let mut checked = 0;
    for &a in &invariant {
        for &b in &invariant {
            let p = Polynomial::monomial(basis[a].mul(&basis[b]));
            checked += 1;
            if let Some(k) = ring.coords(&p).keys().find(|k| !invariant.contains(k)) {
                return Err(FoldError::NotClosed(format!(
                    "{} * {} has a component along {}",
                    basis[a].to_text(vars),
                    basis[b].to_text(vars),
                    basis[*k].to_text(vars)
                )));
            }
        }
    }
    let names = ring.describe_basis();
    let mut degrees: Vec<Rational> = invariant.iter().map(|&i| ring.degree(&basis[i])).collect();
    degrees.sort();
    let spectrum = Spectrum::diagonal(&degrees);
    let matches = catalog.match_spectrum(&spectrum, MatchMode::Cc);
    Ok(FoldResult {
        summands: parts.iter().map(|p| p.to_text(vars)).collect(),
        factors,
        invariant_basis: invariant.iter().map(|&i| names[i].clone()).collect(),
        basis: names,
        invariant,
        degrees,
        spectrum,
        products_checked: checked,
        matches,
    })
}
