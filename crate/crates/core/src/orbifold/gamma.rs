//! Reconstruction of the multiplication `1_g 1_h = gamma_{g,h} 1_{gh}` for
//! cyclic groups.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use super::axioms::{FrobeniusData, SectorData, Vector};
use super::module::OrbifoldModule;
use crate::arith::{CyclotomicSum, Monomial, Polynomial, Rational, UnitPhase};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("the group is not cyclic")]
    NotCyclic,
    #[error("no multiplication satisfies the constraints: {0}")]
    NoSolution(String),
    #[error("more than one homogeneous candidate for gamma at ({0}, {1})")]
    Ambiguous(String, String),
}

/// `r * exp(2 pi i theta)`, with `theta` kept in `[0, 1/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    pub r: Rational,
    pub phase: UnitPhase,
}

impl Scalar {
    pub fn new(r: Rational, phase: UnitPhase) -> Self {
        if r.is_zero() {
            return Scalar { r, phase: UnitPhase::one() };
        }
        if phase.theta() >= &Rational::new(1.into(), 2.into()) {
            Scalar { r: -r, phase: &phase * &UnitPhase::minus_one() }
        } else {
            Scalar { r, phase }
        }
    }

    pub fn one() -> Self {
        Scalar::new(Rational::one(), UnitPhase::one())
    }

    pub fn zero() -> Self {
        Scalar::new(Rational::zero(), UnitPhase::one())
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        Scalar::new(&self.r * &o.r, &self.phase * &o.phase)
    }

    pub fn mul_phase(&self, p: &UnitPhase) -> Scalar {
        Scalar::new(self.r.clone(), &self.phase * p)
    }

    /// Panics on zero.
    pub fn inv(&self) -> Scalar {
        Scalar::new(Rational::one() / &self.r, self.phase.inv())
    }

    pub fn to_cyclotomic(&self) -> CyclotomicSum {
        CyclotomicSum::phase(&self.phase, self.r.clone())
    }
}

/// `gamma_{g,h} = scalar * shape`, with `shape` reduced in `A_{gh}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaEntry {
    pub shape: Polynomial,
    pub scalar: Scalar,
}

impl GammaEntry {
    pub fn is_zero(&self) -> bool {
        self.shape.is_zero() || self.scalar.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct GammaTable {
    pub entries: Vec<Vec<GammaEntry>>,
    /// Pairs whose scalar was not forced and was set to 1.
    pub free_choices: Vec<(usize, usize)>,
    /// Rescalings `1_g -> c 1_g, 1_{g^-1} -> c^-1 1_{g^-1}` preserving the metric.
    pub gauge_dimension: usize,
}

impl GammaTable {
    /// No more free scalars than can be absorbed by rescaling the generators.
    pub fn projectively_unique(&self) -> bool {
        self.free_choices.len() <= self.gauge_dimension
    }

    /// Pairs with nonzero `gamma`.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (g, row) in self.entries.iter().enumerate() {
            for (h, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    out.push((g, h));
                }
            }
        }
        out
    }
}

/// Solves `A x = b` over the rationals; `None` unless the solution is unique.
fn solve_unique(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> =
        a.iter().zip(b).map(|(r, v)| r.iter().cloned().chain(std::iter::once(v.clone())).collect()).collect();
    let mut r = 0;
    for c in 0..n {
        let p = (r..rows.len()).find(|&i| !rows[i][c].is_zero())?;
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..=n {
                    let t = &f * &rows[r][k];
                    rows[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|c| rows[c][n].clone()).collect())
}

/// Null space of the columns of `m` (`m[row][col]`).
fn null_space(m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..ncols {
                    let t = &f * &rows[r][k];
                    rows[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

impl OrbifoldModule {
    /// `NF_{A_k}` of `p` after restricting to `Fix(k)`.
    pub fn reduce_in(&self, k: usize, p: &Polynomial) -> Polynomial {
        let s = &self.sectors[k];
        s.ring.normal_form(&p.restrict(&s.fixed))
    }

    fn inverse_pair_gamma(&self, g: usize) -> Result<GammaEntry, GammaError> {
        let e = &self.sectors[0].ring;
        let sg = &self.sectors[g];
        let target = &self.weights.central_charge - &sg.d_g;
        let unknowns = e.basis_of_degree(&target);
        let probes = e.basis_of_degree(&sg.d_g);
        let n = e.nvars();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for &w in &probes {
            let wm = Polynomial::monomial(e.basis()[w].clone());
            a.push(
                unknowns
                    .iter()
                    .map(|&u| e.socle_coefficient(&wm.mul_monomial(&e.basis()[u], &Rational::one())))
                    .collect(),
            );
            b.push(sg.ring.socle_coefficient(&wm.restrict(&sg.fixed)));
        }
        let x = solve_unique(&a, &b, unknowns.len()).ok_or_else(|| {
            GammaError::NoSolution(format!("metric does not determine gamma for {}", self.group.element(g)))
        })?;
        let shape = Polynomial::from_terms(n, unknowns.iter().zip(x).map(|(&u, c)| (e.basis()[u].clone(), c)));
        Ok(GammaEntry { shape, scalar: Scalar::one().mul_phase(self.metric_factor(g)) })
    }

    /// Homogeneous, parity preserving, equivariant and well defined shapes for `gamma_{g,h}`.
    fn candidate_shape(&self, g: usize, h: usize) -> Result<Polynomial, GammaError> {
        let gh = self.group.mul(g, h);
        let (sg, sh, sk) = (&self.sectors[g], &self.sectors[h], &self.sectors[gh]);
        let n = sk.ring.nvars();
        if (sg.parity + sh.parity + sk.parity) % 2 == 1 {
            return Ok(Polynomial::zero(n));
        }
        let q = &sg.s + &sh.s - &sk.s;
        let q_bar = &sg.s_bar + &sh.s_bar - &sk.s_bar;
        if q != q_bar {
            return Ok(Polynomial::zero(n));
        }
        let gens = self.group.generator_indices();
        let mono: Vec<Monomial> = sk
            .ring
            .basis_of_degree(&q)
            .into_iter()
            .map(|i| sk.ring.basis()[i].clone())
            .filter(|m| {
                gens.iter().all(|&k| {
                    let lhs = &self.action(k, g) * &self.action(k, h);
                    lhs == self.monomial_action(k, gh, m)
                })
            })
            .collect();
        if mono.is_empty() {
            return Ok(Polynomial::zero(n));
        }
        // z_i with i moved by g or h kills 1_g or 1_h, hence must kill gamma
        let killers: Vec<usize> =
            sk.fixed.iter().copied().filter(|i| !sg.fixed.contains(i) || !sh.fixed.contains(i)).collect();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for &i in &killers {
            let images: Vec<Polynomial> =
                mono.iter().map(|m| sk.ring.normal_form(&Polynomial::monomial(m.mul(&Monomial::var(n, i))))).collect();
            let mut keys: Vec<Monomial> = images.iter().flat_map(|p| p.monomials().cloned()).collect();
            keys.sort();
            keys.dedup();
            for key in keys {
                rows.push(images.iter().map(|p| p.coeff(&key)).collect());
            }
        }
        let null = null_space(&rows, mono.len());
        match null.len() {
            0 => Ok(Polynomial::zero(n)),
            1 => {
                let v = &null[0];
                let lead = v.iter().find(|c| !c.is_zero()).cloned().expect("nonzero null vector");
                Ok(Polynomial::from_terms(n, mono.iter().cloned().zip(v.iter().map(|c| c / &lead))))
            }
            _ => Err(GammaError::Ambiguous(self.group.element(g).to_string(), self.group.element(h).to_string())),
        }
    }

    /// Sign and phase relating `gamma_{g,h}` to `gamma_{h,g}`.
    fn commutation_factor(&self, g: usize, h: usize) -> UnitPhase {
        let sign = UnitPhase::sign(self.sectors[g].parity * self.sectors[h].parity);
        &sign * &self.action(g, h)
    }

    pub fn reconstruct_gamma(&self) -> Result<GammaTable, GammaError> {
        if !self.group.is_cyclic() {
            return Err(GammaError::NotCyclic);
        }
        let n = self.order();
        let nv = self.polynomial.nvars();
        let mut shapes = vec![vec![Polynomial::zero(nv); n]; n];
        let mut values: Vec<Vec<Option<Scalar>>> = vec![vec![None; n]; n];
        for g in 0..n {
            for h in 0..n {
                let gh = self.group.mul(g, h);
                if g == 0 || h == 0 {
                    shapes[g][h] = Polynomial::one(nv);
                    values[g][h] = Some(Scalar::one());
                } else if gh == 0 {
                    let entry = self.inverse_pair_gamma(g)?;
                    shapes[g][h] = entry.shape;
                    values[g][h] = Some(entry.scalar);
                } else {
                    shapes[g][h] = self.candidate_shape(g, h)?;
                    if shapes[g][h].is_zero() {
                        values[g][h] = Some(Scalar::zero());
                    }
                }
            }
        }
        let mut free_choices = Vec::new();
        let pending = |v: &Vec<Vec<Option<Scalar>>>| v.iter().flatten().any(Option::is_none);
        if pending(&values) {
            let equations = self.associativity_equations(&shapes);
            loop {
                while self.propagate(&equations, &mut values)? {}
                let Some((g, h)) =
                    (0..n).flat_map(|g| (0..n).map(move |h| (g, h))).find(|&(g, h)| values[g][h].is_none())
                else {
                    break;
                };
                values[g][h] = Some(Scalar::one());
                free_choices.push((g, h));
            }
            self.verify_scalars(&equations, &values)?;
        }
        let entries = shapes
            .into_iter()
            .zip(values)
            .map(|(row, vals)| {
                row.into_iter()
                    .zip(vals)
                    .map(|(shape, v)| GammaEntry { shape, scalar: v.expect("all scalars determined") })
                    .collect()
            })
            .collect();
        let gauge_dimension = (0..n).filter(|&g| g < self.group.inverse(g)).count();
        Ok(GammaTable { entries, free_choices, gauge_dimension })
    }

    /// `(g,h,k)` with `gamma_{g,h} gamma_{gh,k} P = gamma_{h,k} gamma_{g,hk} Q`,
    /// reduced to the ratio `P/Q` when both sides are nonzero.
    fn associativity_equations(&self, shapes: &[Vec<Polynomial>]) -> Vec<Equation> {
        let n = self.order();
        let mut out = Vec::new();
        for g in 1..n {
            for h in 1..n {
                let gh = self.group.mul(g, h);
                for k in 1..n {
                    let hk = self.group.mul(h, k);
                    let ghk = self.group.mul(gh, k);
                    let p = self.reduce_in(ghk, &(&shapes[g][h] * &shapes[gh][k]));
                    let q = self.reduce_in(ghk, &(&shapes[h][k] * &shapes[g][hk]));
                    let kind = match (p.is_zero(), q.is_zero()) {
                        (true, true) => continue,
                        (false, true) => Relation::LeftVanishes,
                        (true, false) => Relation::RightVanishes,
                        (false, false) => match proportion(&p, &q) {
                            Some(r) => Relation::Ratio(r),
                            None => Relation::BothVanish,
                        },
                    };
                    out.push(Equation { left: [(g, h), (gh, k)], right: [(h, k), (g, hk)], kind });
                }
            }
        }
        out
    }

    fn propagate(&self, eqs: &[Equation], values: &mut [Vec<Option<Scalar>>]) -> Result<bool, GammaError> {
        let n = self.order();
        let mut changed = false;
        for g in 0..n {
            for h in 0..n {
                if values[g][h].is_none() {
                    if let Some(v) = values[h][g].clone() {
                        values[g][h] = Some(v.mul_phase(&self.commutation_factor(g, h)));
                        changed = true;
                    }
                }
            }
        }
        for eq in eqs {
            let get = |(a, b): (usize, usize)| values[a][b].clone();
            let l: Vec<Option<Scalar>> = eq.left.iter().map(|&p| get(p)).collect();
            let r: Vec<Option<Scalar>> = eq.right.iter().map(|&p| get(p)).collect();
            let unknown: Vec<(usize, usize)> = eq
                .left
                .iter()
                .chain(eq.right.iter())
                .copied()
                .filter(|&(a, b)| values[a][b].is_none())
                .collect();
            if unknown.len() != 1 {
                continue;
            }
            let target = unknown[0];
            let solved = match &eq.kind {
                Relation::LeftVanishes => vanish_one(&l, &eq.left, target),
                Relation::RightVanishes => vanish_one(&r, &eq.right, target),
                Relation::BothVanish => vanish_one(&l, &eq.left, target).or_else(|| vanish_one(&r, &eq.right, target)),
                Relation::Ratio(ratio) => {
                    // l0 l1 ratio = r0 r1
                    let known_l: Vec<&Scalar> = l.iter().flatten().collect();
                    let known_r: Vec<&Scalar> = r.iter().flatten().collect();
                    if eq.left.contains(&target) {
                        let other = known_l[0];
                        let rhs = known_r[0].mul(known_r[1]);
                        if other.is_zero() {
                            None
                        } else {
                            Some(rhs.mul(&other.inv()).mul(&Scalar::new(Rational::one() / ratio, UnitPhase::one())))
                        }
                    } else {
                        let other = known_r[0];
                        let lhs = known_l[0].mul(known_l[1]).mul(&Scalar::new(ratio.clone(), UnitPhase::one()));
                        if other.is_zero() {
                            None
                        } else {
                            Some(lhs.mul(&other.inv()))
                        }
                    }
                }
            };
            if let Some(v) = solved {
                values[target.0][target.1] = Some(v);
                changed = true;
            }
        }
        Ok(changed)
    }

    fn verify_scalars(&self, eqs: &[Equation], values: &[Vec<Option<Scalar>>]) -> Result<(), GammaError> {
        let v = |(a, b): (usize, usize)| values[a][b].clone().expect("determined");
        let n = self.order();
        for g in 0..n {
            for h in 0..n {
                if v((g, h)) != v((h, g)).mul_phase(&self.commutation_factor(g, h)) {
                    return Err(GammaError::NoSolution(format!(
                        "commutativity at ({}, {})",
                        self.group.element(g),
                        self.group.element(h)
                    )));
                }
            }
        }
        for eq in eqs {
            let l = v(eq.left[0]).mul(&v(eq.left[1]));
            let r = v(eq.right[0]).mul(&v(eq.right[1]));
            let ok = match &eq.kind {
                Relation::LeftVanishes => l.is_zero(),
                Relation::RightVanishes => r.is_zero(),
                Relation::BothVanish => l.is_zero() && r.is_zero(),
                Relation::Ratio(q) => l.mul(&Scalar::new(q.clone(), UnitPhase::one())) == r,
            };
            if !ok {
                return Err(GammaError::NoSolution(format!(
                    "associativity at {:?}",
                    [eq.left[0].0, eq.left[0].1, eq.right[0].1]
                )));
            }
        }
        Ok(())
    }

    /// Structure constants of the reconstructed algebra.
    pub fn frobenius_data(&self, gamma: &GammaTable) -> FrobeniusData {
        let n = self.order();
        let labels: Vec<String> = self.group.elements().iter().map(|g| g.to_string()).collect();
        let sectors = self
            .sectors
            .iter()
            .map(|s| SectorData { dim: s.dim(), parity: s.parity, basis: s.ring.describe_basis() })
            .collect();
        let action = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| {
                        self.sectors[h]
                            .ring
                            .basis()
                            .iter()
                            .enumerate()
                            .map(|(b, m)| {
                                BTreeMap::from([(b, CyclotomicSum::phase(&self.monomial_action(g, h, m), Rational::one()))])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mult = (0..n)
            .map(|g| (0..n).map(|h| self.mult_block(g, h, &gamma.entries[g][h])).collect())
            .collect();
        let metric = (0..n)
            .map(|g| {
                let f = self.metric_factor(g);
                self.sectors[g]
                    .ring
                    .pairing()
                    .iter()
                    .map(|row| row.iter().map(|c| CyclotomicSum::phase(f, c.clone())).collect())
                    .collect()
            })
            .collect();
        FrobeniusData {
            labels,
            table: self.group.table().to_vec(),
            identity: 0,
            sectors,
            chi: self.chi.clone(),
            action,
            mult,
            metric,
            unit: 0,
        }
    }

    fn mult_block(&self, g: usize, h: usize, entry: &GammaEntry) -> Vec<Vec<Vector>> {
        let gh = self.group.mul(g, h);
        let target = &self.sectors[gh].ring;
        let scalar = entry.scalar.to_cyclotomic();
        self.sectors[g]
            .ring
            .basis()
            .iter()
            .map(|a| {
                self.sectors[h]
                    .ring
                    .basis()
                    .iter()
                    .map(|b| {
                        if entry.is_zero() {
                            return Vector::new();
                        }
                        let p = entry.shape.mul_monomial(&a.mul(b), &Rational::one());
                        target
                            .coords(&p.restrict(&self.sectors[gh].fixed))
                            .into_iter()
                            .map(|(k, c)| (k, scalar.scale(&c)))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
enum Relation {
    LeftVanishes,
    RightVanishes,
    BothVanish,
    Ratio(Rational),
}

#[derive(Clone, Debug)]
struct Equation {
    left: [(usize, usize); 2],
    right: [(usize, usize); 2],
    kind: Relation,
}

/// In `x * y = 0` with `y` known and nonzero, `x` must vanish.
fn vanish_one(vals: &[Option<Scalar>], pairs: &[(usize, usize); 2], target: (usize, usize)) -> Option<Scalar> {
    let pos = pairs.iter().position(|&p| p == target)?;
    let other = vals[1 - pos].as_ref()?;
    (!other.is_zero()).then(Scalar::zero)
}

/// `r` with `p = r q`, if the polynomials are proportional.
fn proportion(p: &Polynomial, q: &Polynomial) -> Option<Rational> {
    let (m, c) = q.terms().next()?;
    let r = p.coeff(m) / c;
    (&q.scale(&r) == p).then_some(r)
}
