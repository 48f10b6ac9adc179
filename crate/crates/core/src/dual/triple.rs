//! Graded modules with a distinguished element `j` and character `chi`, and
//! the dualization `A_g -> A_{g j^-1}`.

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{CyclotomicSum, Monomial, Rational, UnitPhase};
use crate::milnor::MilnorRing;
use crate::orbifold::{EulerClass, GradedElement, OrbifoldError, OrbifoldModule};
use crate::symmetry::{DiagonalElement, SymmetryGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error(transparent)]
    Orbifold(#[from] OrbifoldError),
    #[error("the module is not quasi-Euler")]
    NotQuasiEuler,
    #[error("no Eulerization with a compatible sign and trivial torsion exists")]
    NoEulerizationGiven,
    #[error("the group is not cyclic")]
    NotCyclic,
    #[error("the grading element is not in the group")]
    NoGradingElement,
}

#[derive(Clone, Debug)]
pub struct TripleSector {
    pub fixed: Vec<usize>,
    pub ring: Arc<MilnorRing>,
    /// Element of the source module's group whose sector this is.
    pub source: DiagonalElement,
    pub s: Rational,
    pub s_bar: Rational,
    pub parity: u8,
}

impl TripleSector {
    pub fn dim(&self) -> usize {
        self.ring.dimension()
    }
}

/// The pairing between sectors: `A_g` meets `A_{partner[g]}` with
/// `eta(a, b) = factor[g] * pairing_g(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricData {
    pub partner: Vec<Option<usize>>,
    pub factor: Vec<UnitPhase>,
    /// Set when the pulled-back pairing leaves the group and a homogeneous
    /// pairing was chosen instead.
    pub substituted: bool,
}

/// `<A, j, chi>` for a group of diagonal symmetries.
#[derive(Clone, Debug)]
pub struct ModuleTriple {
    pub vars: Vec<String>,
    pub weights: Vec<Rational>,
    pub d: Rational,
    pub group: SymmetryGroup,
    pub sectors: Vec<TripleSector>,
    /// `action[g][h]`: scalar of `g` on the generator of sector `h`.
    pub action: Vec<Vec<UnitPhase>>,
    pub chi: Vec<UnitPhase>,
    pub j: DiagonalElement,
    pub metric: MetricData,
}

impl ModuleTriple {
    /// The triple of an orbifold module whose group contains `j`.
    pub fn from_module(m: &OrbifoldModule, j: usize) -> ModuleTriple {
        let n = m.order();
        let sectors = m
            .sectors
            .iter()
            .map(|s| TripleSector {
                fixed: s.fixed.clone(),
                ring: s.ring.clone(),
                source: m.group.element(s.element).clone(),
                s: s.s.clone(),
                s_bar: s.s_bar.clone(),
                parity: s.parity,
            })
            .collect();
        let action = (0..n).map(|g| (0..n).map(|h| m.action(g, h)).collect()).collect();
        ModuleTriple {
            vars: m.vars.clone(),
            weights: m.weights.weights.clone(),
            d: m.central_charge().clone(),
            group: m.group.clone(),
            sectors,
            action,
            chi: m.chi.clone(),
            j: m.group.element(j).clone(),
            metric: MetricData {
                partner: (0..n).map(|g| Some(m.group.inverse(g))).collect(),
                factor: m.metric_factors().to_vec(),
                substituted: false,
            },
        }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn j_index(&self) -> Option<usize> {
        self.group.index_of(&self.j)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.sectors.iter().map(|s| s.dim()).collect()
    }

    /// Sectors whose dimension exceeds one.
    pub fn ramond(&self, h: usize) -> bool {
        self.sectors[h].dim() > 1
    }

    pub fn monomial_action(&self, g: usize, h: usize, m: &Monomial) -> UnitPhase {
        &self.action[g][h] * &self.group.element(g).monomial_phase(&m.0)
    }

    pub fn bidegree(&self, h: usize, m: &Monomial) -> (Rational, Rational) {
        let q = m.weighted_degree(&self.weights);
        (&q + &self.sectors[h].s, &q + &self.sectors[h].s_bar)
    }

    pub fn graded_element(&self, h: usize, i: usize) -> GradedElement {
        let m = self.sectors[h].ring.basis()[i].clone();
        let (q, q_bar) = self.bidegree(h, &m);
        GradedElement { sector: h, basis_index: i, monomial: m, q, q_bar }
    }

    pub fn is_invariant(&self, h: usize, i: usize) -> bool {
        let m = &self.sectors[h].ring.basis()[i];
        self.group.generator_indices().iter().all(|&g| self.monomial_action(g, h, m).is_one())
    }

    /// Basis elements fixed by every generator.
    pub fn invariants(&self) -> Vec<GradedElement> {
        let mut out = Vec::new();
        for h in 0..self.order() {
            for i in 0..self.sectors[h].dim() {
                if self.is_invariant(h, i) {
                    out.push(self.graded_element(h, i));
                }
            }
        }
        out
    }

    /// Pairing of basis vectors `a` of sector `g` and `b` of sector `h`.
    pub fn eta(&self, g: usize, a: usize, h: usize, b: usize) -> CyclotomicSum {
        if self.metric.partner[g] != Some(h) {
            return CyclotomicSum::zero(1);
        }
        let (sg, sh) = (&self.sectors[g], &self.sectors[h]);
        let value = if sg.fixed == sh.fixed {
            sg.ring.pairing()[a][b].clone()
        } else if a + b + 1 == sg.dim() && sg.dim() == sh.dim() {
            Rational::one()
        } else {
            Rational::zero()
        };
        CyclotomicSum::phase(&self.metric.factor[g], value)
    }

    /// `<A, j, chi>` to `<A', j^-1, chi^-1>` with `A'_g = A_{g j^-1}`.
    pub fn dualize(&self) -> Result<ModuleTriple, DualError> {
        let j = self.j_index().ok_or(DualError::NoGradingElement)?;
        let ji = self.group.inverse(j);
        let n = self.order();
        let src = |g: usize| self.group.mul(g, ji);
        let sectors = (0..n)
            .map(|g| {
                let s = &self.sectors[src(g)];
                TripleSector {
                    fixed: s.fixed.clone(),
                    ring: s.ring.clone(),
                    source: s.source.clone(),
                    s: &s.s - &self.d,
                    s_bar: s.s_bar.clone(),
                    parity: s.parity,
                }
            })
            .collect();
        let action = (0..n).map(|g| (0..n).map(|h| &self.chi[g] * &self.action[g][src(h)]).collect()).collect();
        let partner = (0..n).map(|g| self.metric.partner[src(g)].map(|p| self.group.mul(p, j))).collect();
        let factor = (0..n).map(|g| self.metric.factor[src(g)].clone()).collect();
        Ok(ModuleTriple {
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            d: -self.d.clone(),
            group: self.group.clone(),
            sectors,
            action,
            chi: self.chi.iter().map(|c| c.inv()).collect(),
            j: self.j.inv(),
            metric: MetricData { partner, factor, substituted: self.metric.substituted },
        })
    }

    /// The restriction to the subgroup generated by `gens` (indices into the
    /// current group), keeping only the sectors labeled by the subgroup.
    pub fn restrict_to(&self, gens: &[usize]) -> ModuleTriple {
        let h = self.group.subgroup(gens);
        let lift: Vec<usize> = h.elements().iter().map(|e| self.group.index_of(e).expect("subgroup element")).collect();
        let n = h.order();
        let sectors = lift.iter().map(|&k| self.sectors[k].clone()).collect();
        let action = (0..n).map(|g| (0..n).map(|x| self.action[lift[g]][lift[x]].clone()).collect()).collect();
        let partner: Vec<Option<usize>> = lift
            .iter()
            .map(|&k| self.metric.partner[k].and_then(|p| h.index_of(self.group.element(p))))
            .collect();
        let factor = lift.iter().map(|&k| self.metric.factor[k].clone()).collect();
        let mut out = ModuleTriple {
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            d: self.d.clone(),
            chi: lift.iter().map(|&k| self.chi[k].clone()).collect(),
            group: h,
            sectors,
            action,
            j: self.j.clone(),
            metric: MetricData { partner, factor, substituted: self.metric.substituted },
        };
        if out.metric.partner.iter().any(|p| p.is_none()) {
            out.substitute_metric();
        }
        out
    }

    /// Replaces the pairing by one pairing generators to socles with a constant
    /// total bidegree, with unit factors.
    fn substitute_metric(&mut self) {
        let n = self.order();
        let top = |h: usize| {
            let s = &self.sectors[h];
            let deg = s.ring.socle_degree();
            (&s.s + deg, &s.s_bar + deg)
        };
        let total = |h: usize, p: usize| (&self.sectors[h].s + &top(p).0, &self.sectors[h].s_bar + &top(p).1);
        let mut found = None;
        for p0 in 0..n {
            let target = total(0, p0);
            let partner: Vec<Option<usize>> = (0..n)
                .map(|h| (0..n).find(|&p| self.sectors[p].dim() == self.sectors[h].dim() && total(h, p) == target))
                .collect();
            let involutive = partner.iter().enumerate().all(|(h, p)| p.is_some_and(|p| partner[p] == Some(h)));
            if involutive {
                found = Some(partner);
                break;
            }
        }
        self.metric = MetricData {
            partner: found.unwrap_or_else(|| vec![None; n]),
            factor: vec![UnitPhase::one(); n],
            substituted: true,
        };
    }

    /// Whether `other` has identical dimensions, sector sources, shifts,
    /// action, character, `j` and metric group degrees.
    pub fn same_as(&self, other: &ModuleTriple) -> bool {
        self.group.elements() == other.group.elements()
            && self.d == other.d
            && self.j == other.j
            && self.chi == other.chi
            && self.action == other.action
            && self.metric == other.metric
            && self.sectors.len() == other.sectors.len()
            && self.sectors.iter().zip(&other.sectors).all(|(a, b)| {
                a.fixed == b.fixed && a.source == b.source && a.s == b.s && a.s_bar == b.s_bar && a.parity == b.parity
            })
    }
}

/// A dual together with how it was obtained.
#[derive(Clone, Debug)]
pub struct DualModule {
    pub class: EulerClass,
    /// The dual over the group containing `j`; for a quasi-Euler module this
    /// is the dual of the Eulerization.
    pub ambient: ModuleTriple,
    /// The dual over the original group.
    pub triple: ModuleTriple,
    /// The triple that was dualized to give `ambient`.
    pub source: ModuleTriple,
}

impl DualModule {
    pub fn metric_pulled_back(&self) -> bool {
        !self.triple.metric.substituted
    }

    pub fn invariants(&self) -> Vec<GradedElement> {
        self.triple.invariants()
    }

    /// `1` in the dual sector of the identity, which is the generator of
    /// `A_{j^-1}`.
    pub fn unit_is_invariant(&self) -> bool {
        self.triple.is_invariant(0, 0)
    }
}

/// Dualizes an Euler module directly and a quasi-Euler module through the
/// Eulerization generated by the group and the grading operator.
pub fn dualize_module(m: &OrbifoldModule, bound: usize) -> Result<DualModule, DualError> {
    let class = m.euler_class(bound);
    match class {
        EulerClass::GEuler { j } | EulerClass::Euler { j } => {
            let source = ModuleTriple::from_module(m, j);
            let ambient = source.dualize()?;
            Ok(DualModule { class, triple: ambient.clone(), ambient, source })
        }
        EulerClass::QuasiEuler { .. } => {
            let big = m.eulerization(bound)?.ok_or(DualError::NoEulerizationGiven)?;
            let j = big.grading_element().ok_or(DualError::NoGradingElement)?;
            let source = ModuleTriple::from_module(&big, j);
            let ambient = source.dualize()?;
            let gens: Vec<usize> = m
                .group
                .generators()
                .iter()
                .map(|g| big.group.index_of(g).expect("subgroup generator"))
                .collect();
            // relabel by the original group so indices match the source module
            let restricted = ambient.restrict_to(&gens);
            let old: Vec<usize> =
                m.group.elements().iter().map(|e| restricted.group.index_of(e).expect("same subgroup")).collect();
            let triple = reindex(&restricted, m.group.clone(), &old);
            Ok(DualModule { class, ambient, triple, source })
        }
        EulerClass::NotQuasiEuler => Err(DualError::NotQuasiEuler),
    }
}

/// Relabels a triple by `group`, where `old[i]` is the old index of element `i`.
fn reindex(t: &ModuleTriple, group: SymmetryGroup, old: &[usize]) -> ModuleTriple {
    let n = old.len();
    let mut new_of = vec![0; n];
    for (i, &o) in old.iter().enumerate() {
        new_of[o] = i;
    }
    ModuleTriple {
        vars: t.vars.clone(),
        weights: t.weights.clone(),
        d: t.d.clone(),
        group,
        sectors: old.iter().map(|&o| t.sectors[o].clone()).collect(),
        action: old.iter().map(|&g| old.iter().map(|&h| t.action[g][h].clone()).collect()).collect(),
        chi: old.iter().map(|&o| t.chi[o].clone()).collect(),
        j: t.j.clone(),
        metric: MetricData {
            partner: old.iter().map(|&o| t.metric.partner[o].map(|p| new_of[p])).collect(),
            factor: old.iter().map(|&o| t.metric.factor[o].clone()).collect(),
            substituted: t.metric.substituted,
        },
    }
}

/// Dualizes twice and compares with the original triple.
pub fn involution_check(m: &OrbifoldModule, j: usize) -> Result<bool, DualError> {
    let t = ModuleTriple::from_module(m, j);
    Ok(t.dualize()?.dualize()?.same_as(&t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_polynomial, rat};
    use crate::orbifold::build_module;
    use crate::symmetry::{DiscreteTorsion, SignChoice};

    fn module(f: &str, v: &[&str], gens: &[Vec<Rational>], bits: &[u8]) -> OrbifoldModule {
        let v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        let f = parse_polynomial(f, &v).unwrap();
        let gens: Vec<DiagonalElement> = gens.iter().map(|g| DiagonalElement::from_rationals(g)).collect();
        let g = SymmetryGroup::generate(v.len(), &gens, 1000).unwrap();
        let s = SignChoice::from_generators(&g, bits).unwrap();
        let e = DiscreteTorsion::trivial(&g);
        build_module(&f, &v, g, s, e).unwrap()
    }

    fn bidegrees(d: &DualModule) -> Vec<(Rational, Rational)> {
        let mut v: Vec<_> = d.invariants().into_iter().map(|e| (e.q, e.q_bar)).collect();
        v.sort();
        v
    }

    #[test]
    fn a_series_bidegrees() {
        for n in 1..=6i64 {
            let m = module(&format!("z^{}", n + 1), &["z"], &[vec![rat(1, n + 1)]], &[0]);
            let d = dualize_module(&m, 1000).unwrap();
            let mut want: Vec<_> = (0..n).map(|k| (rat(-k, n + 1), rat(k, n + 1))).collect();
            want.sort();
            assert_eq!(bidegrees(&d), want, "n={n}");
            assert!(d.metric_pulled_back());
        }
    }

    #[test]
    fn e7_dual_shifts() {
        let m = module("x^3 + x*y^3", &["x", "y"], &[vec![rat(1, 3), rat(2, 9)]], &[0]);
        let d = dualize_module(&m, 1000).unwrap();
        let t = &d.triple;
        let s = [0, -8, -8, -3, -4, -2, -6, -7, -5];
        let s_bar = [0, 0, 8, 3, 1, 2, 6, 4, 5];
        let j = m.group.element(m.grading_element().unwrap()).clone();
        for i in 0..9 {
            let g = t.group.index_of(&j.pow(i)).unwrap();
            assert_eq!(t.sectors[g].s, rat(s[i as usize], 9), "i={i}");
            assert_eq!(t.sectors[g].s_bar, rat(s_bar[i as usize], 9), "i={i}");
        }
        assert_eq!(t.d, rat(-8, 9));
        assert_eq!(t.j, j.inv());
    }

    #[test]
    fn d_series_dual_of_untwisted_sector() {
        for n in 3..=6i64 {
            let f = format!("1/{n}*x^{n} + x*y^2");
            let m = module(&f, &["x", "y"], &[vec![rat(1, n), rat(n - 1, 2 * n)]], &[0]);
            let d = dualize_module(&m, 1000).unwrap();
            let j = m.grading_element().unwrap();
            // the untwisted sector moves to the sector of j
            assert_eq!(d.triple.sectors[j].s, rat(-(n - 1), n));
            assert_eq!(d.triple.sectors[j].dim(), n as usize + 1);
        }
    }

    #[test]
    fn involution() {
        let cases = [
            module("z^5", &["z"], &[vec![rat(1, 5)]], &[0]),
            module("z^6", &["z"], &[vec![rat(1, 6)]], &[1]),
            module("x^3 + x*y^3", &["x", "y"], &[vec![rat(1, 3), rat(2, 9)]], &[0]),
            module("x^3 + y^4", &["x", "y"], &[vec![rat(1, 3), rat(0, 1)], vec![rat(0, 1), rat(1, 4)]], &[0, 1]),
        ];
        for m in &cases {
            let j = m.grading_element().unwrap();
            assert!(involution_check(m, j).unwrap());
        }
    }

    #[test]
    fn unit_invariance_tracks_g_euler() {
        let e7 = module("x^3 + x*y^3", &["x", "y"], &[vec![rat(1, 3), rat(2, 9)]], &[0]);
        let d = dualize_module(&e7, 1000).unwrap();
        assert!(matches!(d.class, EulerClass::GEuler { .. }));
        assert!(d.unit_is_invariant());
        // sigma(j) = 0 while sigma is nontrivial
        let d4 = module("x^3 + x*y^2", &["x", "y"], &[vec![rat(1, 3), rat(5, 6)]], &[1]);
        let d = dualize_module(&d4, 1000).unwrap();
        assert!(matches!(d.class, EulerClass::Euler { .. }));
        assert!(!d.unit_is_invariant());
    }

    #[test]
    fn quasi_euler_restriction() {
        // A_7 with z -> -z: the dual lives on the two sectors of Z/2
        let m = module("z^8", &["z"], &[vec![rat(1, 2)]], &[0]);
        let d = dualize_module(&m, 1000).unwrap();
        assert!(matches!(d.class, EulerClass::QuasiEuler { ambient_order: 8 }));
        assert_eq!(d.triple.order(), 2);
        assert_eq!(d.ambient.order(), 8);
        assert_eq!(bidegrees(&d), vec![(rat(-1, 2), rat(1, 2)), (rat(0, 1), rat(0, 1))]);
        // sigma = 1 on Z/2 for even n has no compatible Eulerization
        let m = module("z^8", &["z"], &[vec![rat(1, 2)]], &[1]);
        assert_eq!(dualize_module(&m, 1000).unwrap_err(), DualError::NoEulerizationGiven);
    }
}
