use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{int, Monomial, Polynomial, Rational, UnitPhase};
use crate::milnor::{solve_weights, MilnorError, MilnorRing, WeightSystem};
use crate::symmetry::{
    character_chi, enumerate_sigma, grading_operator, is_symmetry, DiagonalElement, DiscreteTorsion, SignChoice,
    SymmetryError, SymmetryGroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbifoldError {
    #[error(transparent)]
    Milnor(#[from] MilnorError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("sector {0} is not an isolated singularity on its fixed locus")]
    NonIsolatedSector(String),
    #[error("sector {0}: restriction of the Jacobian ideal differs from the sector's Jacobian ideal")]
    ModuleConditionViolated(String),
    #[error("group element {0} is not a symmetry of the polynomial")]
    NotASymmetry(String),
    #[error("sign choice does not match the group")]
    SignMismatch,
}

/// The `g`-twisted sector: the Milnor ring of `f` restricted to `Fix(g)`.
#[derive(Clone, Debug)]
pub struct Sector {
    pub element: usize,
    pub fixed: Vec<usize>,
    pub ring: Arc<MilnorRing>,
    pub d_g: Rational,
    pub s_plus: Rational,
    pub s_minus: Rational,
    pub s: Rational,
    pub s_bar: Rational,
    pub parity: u8,
}

impl Sector {
    pub fn dim(&self) -> usize {
        self.ring.dimension()
    }

    pub fn codim(&self) -> usize {
        self.ring.nvars() - self.fixed.len()
    }
}

/// A basis element `z^alpha 1_h` together with its bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub sector: usize,
    pub basis_index: usize,
    pub monomial: Monomial,
    pub q: Rational,
    pub q_bar: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EulerClass {
    GEuler { j: usize },
    Euler { j: usize },
    /// `j` is missing; the group generated together with it has this order.
    QuasiEuler { ambient_order: usize },
    NotQuasiEuler,
}

impl EulerClass {
    pub fn label(&self) -> &'static str {
        match self {
            EulerClass::GEuler { .. } => "G-Euler",
            EulerClass::Euler { .. } => "Euler",
            EulerClass::QuasiEuler { .. } => "quasi-Euler",
            EulerClass::NotQuasiEuler => "not quasi-Euler",
        }
    }
}

/// The `G`-graded module `(+)_g M_{f_g}` with its action, character and metric.
#[derive(Clone, Debug)]
pub struct OrbifoldModule {
    pub vars: Vec<String>,
    pub polynomial: Polynomial,
    pub weights: WeightSystem,
    pub group: SymmetryGroup,
    pub sigma: SignChoice,
    pub torsion: DiscreteTorsion,
    pub sectors: Vec<Sector>,
    pub chi: Vec<UnitPhase>,
    metric_factor: Vec<UnitPhase>,
}

pub fn fixed_locus(g: &DiagonalElement) -> Vec<usize> {
    g.fixed_locus()
}

/// `f` with every variable outside `fix` set to zero.
pub fn restrict(f: &Polynomial, fix: &[usize]) -> Polynomial {
    f.restrict(fix)
}

pub fn build_module(
    f: &Polynomial,
    vars: &[String],
    group: SymmetryGroup,
    sigma: SignChoice,
    torsion: DiscreteTorsion,
) -> Result<OrbifoldModule, OrbifoldError> {
    let ws = solve_weights(f).map_err(MilnorError::from)?;
    if sigma.0.len() != group.order() || torsion.0.len() != group.order() {
        return Err(OrbifoldError::SignMismatch);
    }
    if let Some(g) = group.generators().iter().find(|g| !is_symmetry(f, g)) {
        return Err(OrbifoldError::NotASymmetry(g.to_string()));
    }
    let base = Arc::new(MilnorRing::new(f, vars)?);
    let d = ws.central_charge.clone();
    let mut rings: HashMap<Vec<usize>, Arc<MilnorRing>> = HashMap::new();
    rings.insert((0..f.nvars()).collect(), base.clone());
    let mut sectors = Vec::with_capacity(group.order());
    for (idx, g) in group.elements().iter().enumerate() {
        let fixed = g.fixed_locus();
        let ring = match rings.get(&fixed) {
            Some(r) => r.clone(),
            None => {
                let r = MilnorRing::with_weights(f, vars, &ws.weights, &fixed).map_err(|e| match e {
                    MilnorError::NonIsolated(_) => OrbifoldError::NonIsolatedSector(g.to_string()),
                    other => OrbifoldError::Milnor(other),
                })?;
                check_module_condition(f, &r, &fixed).map_err(|_| OrbifoldError::ModuleConditionViolated(g.to_string()))?;
                let r = Arc::new(r);
                rings.insert(fixed.clone(), r.clone());
                r
            }
        };
        let two = int(2);
        let half = Rational::new(1.into(), 2.into());
        let d_g = fixed.iter().fold(Rational::zero(), |acc, &i| acc + Rational::one() - &two * &ws.weights[i]);
        let moved: Vec<usize> = (0..f.nvars()).filter(|i| !fixed.contains(i)).collect();
        let s_minus = moved.iter().fold(Rational::zero(), |acc, &i| acc + &two * (g.nu(i) - &half));
        let s = moved.iter().fold(Rational::zero(), |acc, &i| acc + g.nu(i) - &ws.weights[i]);
        let s_plus = &d - &d_g;
        let s_bar = &s_plus - &s;
        let parity = ((sigma.get(idx) as usize + moved.len()) % 2) as u8;
        sectors.push(Sector { element: idx, fixed, ring, d_g, s_plus, s_minus, s, s_bar, parity });
    }
    let chi: Vec<UnitPhase> = (0..group.order()).map(|i| character_chi(&group, &sigma, i)).collect();
    let metric_factor = metric_factors(&group, &sectors, &chi);
    Ok(OrbifoldModule {
        vars: vars.to_vec(),
        polynomial: f.clone(),
        weights: ws,
        group,
        sigma,
        torsion,
        sectors,
        chi,
        metric_factor,
    })
}

/// Builds with trivial sign and torsion.
pub fn build_default(f: &Polynomial, vars: &[String], group: SymmetryGroup) -> Result<OrbifoldModule, OrbifoldError> {
    let sigma = SignChoice::trivial(&group);
    let eps = DiscreteTorsion::trivial(&group);
    build_module(f, vars, group, sigma, eps)
}

/// Partials in the moved directions must vanish in the sector ring, so that
/// the untwisted ring acts on the sector by restriction.
fn check_module_condition(f: &Polynomial, ring: &MilnorRing, fixed: &[usize]) -> Result<(), ()> {
    for i in (0..f.nvars()).filter(|i| !fixed.contains(i)) {
        let p = f.derivative(i).restrict(fixed);
        if !ring.contains(&p) {
            return Err(());
        }
    }
    Ok(())
}

/// `c_g` with `c_g^2 = (-1)^{parity(g)} chi_g`; the member of each inverse pair
/// with the smaller index takes the principal root and its partner the inverse.
fn metric_factors(group: &SymmetryGroup, sectors: &[Sector], chi: &[UnitPhase]) -> Vec<UnitPhase> {
    let root = |g: usize| (&UnitPhase::sign(sectors[g].parity) * &chi[g]).sqrt();
    let c: Vec<UnitPhase> = (0..group.order())
        .map(|g| {
            let inv = group.inverse(g);
            if g <= inv {
                root(g)
            } else {
                root(inv).inv()
            }
        })
        .collect();
    (0..group.order()).map(|g| c[group.inverse(g)].clone()).collect()
}

impl OrbifoldModule {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn central_charge(&self) -> &Rational {
        &self.weights.central_charge
    }

    pub fn untwisted(&self) -> &MilnorRing {
        &self.sectors[0].ring
    }

    /// `phi_{g,h}`: the scalar by which `g` acts on `1_h`.
    pub fn action(&self, g: usize, h: usize) -> UnitPhase {
        let el = self.group.element(g);
        let sign = UnitPhase::sign(self.sigma.get(g) * self.sigma.get(h));
        let theta = self.torsion.get(g, h) * &sign;
        let theta = &theta * &el.det().inv();
        &theta * &el.det_on(&self.sectors[h].fixed)
    }

    /// Scalar by which `g` acts on the basis monomial `m` of sector `h`.
    pub fn monomial_action(&self, g: usize, h: usize, m: &Monomial) -> UnitPhase {
        &self.action(g, h) * &self.group.element(g).monomial_phase(&m.0)
    }

    /// `(Q(m) + s_h, Q(m) + sbar_h)`.
    pub fn bidegree(&self, h: usize, m: &Monomial) -> (Rational, Rational) {
        let q = m.weighted_degree(&self.weights.weights);
        (&q + &self.sectors[h].s, &q + &self.sectors[h].s_bar)
    }

    pub fn graded_element(&self, h: usize, i: usize) -> GradedElement {
        let m = self.sectors[h].ring.basis()[i].clone();
        let (q, q_bar) = self.bidegree(h, &m);
        GradedElement { sector: h, basis_index: i, monomial: m, q, q_bar }
    }

    /// Basis elements fixed by every generator.
    pub fn invariants(&self) -> Vec<GradedElement> {
        let gens = self.group.generator_indices();
        let mut out = Vec::new();
        for h in 0..self.order() {
            for (i, m) in self.sectors[h].ring.basis().iter().enumerate() {
                if gens.iter().all(|&g| self.monomial_action(g, h, m).is_one()) {
                    out.push(self.graded_element(h, i));
                }
            }
        }
        out
    }

    /// Factor `c` with `eta(a_g, b_{g^-1}) = c * eta_{f_g}(a, b)`.
    pub fn metric_factor(&self, g: usize) -> &UnitPhase {
        &self.metric_factor[g]
    }

    pub fn metric_factors(&self) -> &[UnitPhase] {
        &self.metric_factor
    }

    pub fn grading_element(&self) -> Option<usize> {
        self.group.index_of(&grading_operator(&self.weights.weights))
    }

    pub fn euler_class(&self, bound: usize) -> EulerClass {
        match self.grading_element() {
            Some(j) => {
                let jinv = self.group.inverse(j);
                let g_euler = (0..self.order()).all(|g| {
                    let s = (self.sigma.get(g) * ((self.sigma.get(j) + 1) % 2)) % 2;
                    (self.torsion.get(g, jinv) * &UnitPhase::sign(s)).is_one()
                });
                if g_euler {
                    EulerClass::GEuler { j }
                } else {
                    EulerClass::Euler { j }
                }
            }
            None => match self.eulerization_group(bound) {
                Ok(k) => EulerClass::QuasiEuler { ambient_order: k.order() },
                Err(_) => EulerClass::NotQuasiEuler,
            },
        }
    }

    /// The group generated by `G` and the grading operator.
    pub fn eulerization_group(&self, bound: usize) -> Result<SymmetryGroup, SymmetryError> {
        let mut gens = self.group.generators().to_vec();
        gens.push(grading_operator(&self.weights.weights));
        SymmetryGroup::generate(self.group.nvars(), &gens, bound)
    }

    /// The module over the Eulerization with a sign extending the current one.
    pub fn eulerization(&self, bound: usize) -> Result<Option<OrbifoldModule>, OrbifoldError> {
        if !self.torsion.is_trivial() {
            return Ok(None);
        }
        let k = self.eulerization_group(bound)?;
        let sigma = enumerate_sigma(&k).into_iter().find(|s| {
            (0..self.order()).all(|h| s.get(k.index_of(self.group.element(h)).expect("subgroup")) == self.sigma.get(h))
        });
        let Some(sigma) = sigma else { return Ok(None) };
        let eps = DiscreteTorsion::trivial(&k);
        build_module(&self.polynomial, &self.vars, k, sigma, eps).map(Some)
    }

    /// Rows `(g, d_g, nu, s+, s-, s, sbar)`.
    pub fn sector_shifts(&self) -> Vec<ShiftRow> {
        self.sectors
            .iter()
            .map(|s| ShiftRow {
                element: s.element,
                nu: self.group.element(s.element).0.iter().map(|p| p.theta().clone()).collect(),
                d_g: s.d_g.clone(),
                s_plus: s.s_plus.clone(),
                s_minus: s.s_minus.clone(),
                s: s.s.clone(),
                s_bar: s.s_bar.clone(),
                dim: s.dim(),
                parity: s.parity,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftRow {
    pub element: usize,
    pub nu: Vec<Rational>,
    pub d_g: Rational,
    pub s_plus: Rational,
    pub s_minus: Rational,
    pub s: Rational,
    pub s_bar: Rational,
    pub dim: usize,
    pub parity: u8,
}
