//! The degenerate multiplication on the dual of a cyclic Euler module.
//!
//! Generator products take the basis vector of the product sector with the
//! summed bidegree, sectors of dimension above one annihilate, products are
//! then removed until the multiplication is associative and finally every
//! single product that keeps all axioms is added back.

use num_traits::{One, Zero};

use crate::arith::{CyclotomicSum, Rational, UnitPhase};
use crate::orbifold::{AxiomReport, AxiomResult, Tally};

use super::triple::{DualError, ModuleTriple};

/// `mult[g][h][a][b]`: the basis vector of sector `gh` that the product of
/// basis vectors `a` of `g` and `b` of `h` equals, if nonzero.
pub type ProductTable = Vec<Vec<Vec<Vec<Option<usize>>>>>;

#[derive(Clone, Debug)]
pub struct DegenerateData {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    /// The grading element of the module that was dualized.
    pub j: usize,
    pub basis: Vec<Vec<String>>,
    pub bidegree: Vec<Vec<(Rational, Rational)>>,
    pub ramond: Vec<bool>,
    pub parity: Vec<u8>,
    pub invariant: Vec<Vec<bool>>,
    /// `action[x][g][a]`: the diagonal action of `x` on basis vector `a` of sector `g`.
    pub action: Vec<Vec<Vec<UnitPhase>>>,
    pub mult: ProductTable,
    pub partner: Vec<Option<usize>>,
    pub eta: Vec<Vec<Vec<Rational>>>,
    pub eta_prime: Vec<Vec<Vec<Rational>>>,
    /// Sector pairs whose product was removed to restore associativity.
    pub pruned: Vec<(usize, usize)>,
    /// Sector pairs whose generator product had several homogeneous
    /// equivariant values; the first basis vector is used.
    pub ambiguous: Vec<(usize, usize)>,
    /// Products `(g, a, h, b)` added because they keep every axiom.
    pub added: Vec<(usize, usize, usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct MaximalityReport {
    pub alternatives_tried: usize,
    /// A zero product that can be made nonzero without breaking an axiom.
    pub counterexample: Option<String>,
}

impl MaximalityReport {
    pub fn maximal(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct DegenerateReport {
    pub axioms: AxiomReport,
    pub eta_invariant: bool,
    pub eta_prime_invariant: bool,
    pub maximality: MaximalityReport,
    pub nonzero_products: usize,
}

impl DegenerateData {
    /// Builds the multiplication and both pairings on a dual over a cyclic group.
    pub fn build(dual: &ModuleTriple) -> Result<DegenerateData, DualError> {
        if !dual.group.is_cyclic() {
            return Err(DualError::NotCyclic);
        }
        let jd = dual.j_index().ok_or(DualError::NoGradingElement)?;
        let n = dual.order();
        let dims = dual.dims();
        let basis = |g: usize| dual.sectors[g].ring.basis();
        let mut data = DegenerateData {
            labels: dual.group.elements().iter().map(|e| e.to_string()).collect(),
            table: dual.group.table().to_vec(),
            identity: 0,
            j: dual.group.inverse(jd),
            basis: (0..n).map(|g| dual.sectors[g].ring.describe_basis()).collect(),
            bidegree: (0..n).map(|g| basis(g).iter().map(|m| dual.bidegree(g, m)).collect()).collect(),
            ramond: (0..n).map(|g| dual.ramond(g)).collect(),
            parity: dual.sectors.iter().map(|s| s.parity).collect(),
            invariant: (0..n).map(|g| (0..dims[g]).map(|a| dual.is_invariant(g, a)).collect()).collect(),
            action: (0..n)
                .map(|x| (0..n).map(|g| basis(g).iter().map(|m| dual.monomial_action(x, g, m)).collect()).collect())
                .collect(),
            mult: (0..n).map(|g| (0..n).map(|h| vec![vec![None; dims[h]]; dims[g]]).collect()).collect(),
            partner: dual.metric.partner.clone(),
            eta: Vec::new(),
            eta_prime: Vec::new(),
            pruned: Vec::new(),
            ambiguous: Vec::new(),
            added: Vec::new(),
        };
        for g in (0..n).filter(|&g| !data.ramond[g]) {
            for h in (0..n).filter(|&h| !data.ramond[h]) {
                let c = data.candidates(g, 0, h, 0);
                if c.len() > 1 {
                    data.ambiguous.push((g, h));
                }
                data.mult[g][h][0][0] = c.first().copied();
            }
        }
        data.prune();
        // generators rescaled so that every pairing factor is one
        let pairing = |g: usize, a: usize, p: usize, b: usize| {
            let (sg, sp) = (&dual.sectors[g], &dual.sectors[p]);
            if sg.fixed == sp.fixed {
                sg.ring.pairing()[a][b].clone()
            } else if a + b + 1 == sg.dim() && sg.dim() == sp.dim() {
                Rational::one()
            } else {
                Rational::zero()
            }
        };
        data.eta = (0..n)
            .map(|g| match data.partner[g] {
                Some(p) => (0..dims[g]).map(|a| (0..dims[p]).map(|b| pairing(g, a, p, b)).collect()).collect(),
                None => vec![Vec::new(); dims[g]],
            })
            .collect();
        data.eta_prime = (0..n)
            .map(|g| match data.partner[g] {
                Some(p) => (0..dims[g])
                    .map(|a| {
                        (0..dims[p])
                            .map(|b| {
                                let (r, inv) = (&data.ramond, &data.invariant);
                                if (!r[g] && !r[p]) || (inv[g][a] && inv[p][b]) {
                                    data.eta[g][a][b].clone()
                                } else {
                                    Rational::zero()
                                }
                            })
                            .collect()
                    })
                    .collect(),
                None => vec![Vec::new(); dims[g]],
            })
            .collect();
        data.saturate();
        Ok(data)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    fn dim(&self, g: usize) -> usize {
        self.basis[g].len()
    }

    fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.table[g][h] == self.identity).expect("group inverse")
    }

    fn label(&self, g: usize, a: usize) -> String {
        format!("{}@{}", self.basis[g][a], self.labels[g])
    }

    /// Every basis vector as `(sector, index)`.
    fn elements(&self) -> Vec<(usize, usize)> {
        (0..self.order()).flat_map(|g| (0..self.dim(g)).map(move |a| (g, a))).collect()
    }

    /// The product of two basis vectors as `(sector, index)`.
    pub fn product(&self, (g, a): (usize, usize), (h, b): (usize, usize)) -> Option<(usize, usize)> {
        self.mult[g][h][a][b].map(|c| (self.table[g][h], c))
    }

    fn pair(&self, which: &[Vec<Vec<Rational>>], x: Option<(usize, usize)>, y: Option<(usize, usize)>) -> Rational {
        match (x, y) {
            (Some((g, a)), Some((h, b))) if self.partner[g] == Some(h) => which[g][a][b].clone(),
            _ => Rational::zero(),
        }
    }

    /// `pairing(a, b c) = pairing(a b, c)` on basis triples.
    fn pairing_invariance(&self, name: &'static str, which: &[Vec<Vec<Rational>>]) -> AxiomResult {
        let els = self.elements();
        let mut t = Tally::new(name);
        for &x in &els {
            for &y in &els {
                let xy = self.product(x, y);
                for &z in &els {
                    let left = self.pair(which, Some(x), self.product(y, z));
                    let right = self.pair(which, xy, Some(z));
                    t.record(left == right, || {
                        format!("{} {} {}", self.label(x.0, x.1), self.label(y.0, y.1), self.label(z.0, z.1))
                    });
                }
            }
        }
        t.finish()
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.order();
        let e = self.identity;
        let els = self.elements();
        let j2 = self.table[self.j][self.j];
        let mut results = Vec::new();

        let mut t = Tally::new("associativity");
        for &x in &els {
            for &y in &els {
                let xy = self.product(x, y);
                for &z in &els {
                    let left = xy.and_then(|p| self.product(p, z));
                    let right = self.product(y, z).and_then(|p| self.product(x, p));
                    t.record(left == right, || {
                        format!("({} {}) {}", self.label(x.0, x.1), self.label(y.0, y.1), self.label(z.0, z.1))
                    });
                }
            }
        }
        results.push(t.finish());

        let mut t = Tally::new("commutativity");
        for &x in &els {
            for &y in &els {
                t.record(self.product(x, y) == self.product(y, x), || {
                    format!("{} {}", self.label(x.0, x.1), self.label(y.0, y.1))
                });
            }
        }
        results.push(t.finish());

        let mut t = Tally::new("bidegree compatibility");
        for &x in &els {
            for &y in &els {
                if let Some(z) = self.product(x, y) {
                    let (p, q, r) = (&self.bidegree[x.0][x.1], &self.bidegree[y.0][y.1], &self.bidegree[z.0][z.1]);
                    t.record(&p.0 + &q.0 == r.0 && &p.1 + &q.1 == r.1, || {
                        format!("{} {}", self.label(x.0, x.1), self.label(y.0, y.1))
                    });
                }
            }
        }
        results.push(t.finish());

        let mut t = Tally::new("G-invariance of multiplication");
        for g in 0..n {
            for &x in &els {
                for &y in &els {
                    if let Some(z) = self.product(x, y) {
                        let before = &self.action[g][x.0][x.1] * &self.action[g][y.0][y.1];
                        t.record(before == self.action[g][z.0][z.1], || {
                            format!("{} acting on {} {}", self.labels[g], self.label(x.0, x.1), self.label(y.0, y.1))
                        });
                    }
                }
            }
        }
        results.push(t.finish());

        let mut t = Tally::new("pairing group degree");
        for g in 0..n {
            let expected = self.table[self.inverse(g)][j2];
            t.record(self.partner[g] == Some(expected), || format!("sector {}", self.labels[g]));
        }
        results.push(t.finish());

        let mut t = Tally::new("pairings agree on invariants");
        for g in 0..n {
            let Some(p) = self.partner[g] else { continue };
            for a in 0..self.dim(g) {
                for b in 0..self.dim(p) {
                    if self.invariant[g][a] && self.invariant[p][b] {
                        t.record(self.eta[g][a][b] == self.eta_prime[g][a][b], || {
                            format!("{} {}", self.label(g, a), self.label(p, b))
                        });
                    }
                }
            }
        }
        results.push(t.finish());

        results.push(self.pairing_invariance("invariance of the degenerate pairing", &self.eta_prime));

        let mut t = Tally::new("twisted self-invariance");
        let jinv = self.inverse(self.j);
        for g in 0..n {
            let x = self.table[g][jinv];
            for a in 0..self.dim(g) {
                t.record(self.action[x][g][a].is_one(), || self.label(g, a));
            }
        }
        results.push(t.finish());

        let mut t = Tally::new("invariance of the pairing under the action");
        for x in 0..n {
            for g in 0..n {
                let Some(p) = self.partner[g] else { continue };
                for a in 0..self.dim(g) {
                    for b in 0..self.dim(p) {
                        let moved = &self.action[x][g][a] * &self.action[x][p][b];
                        t.record(self.eta[g][a][b].is_zero() || moved.is_one(), || {
                            format!("{} on ({}, {})", self.labels[x], self.label(g, a), self.label(p, b))
                        });
                    }
                }
            }
        }
        results.push(t.finish());

        // Tr(l_c phi_{h j^-1} | A_g) against Tr(phi_{g^-1 j} l_c | A_h), with
        // the parity signs of a super-trace
        let mut t = Tally::new("twisted super-trace off Ramond sectors");
        let trace = |c: usize, x: usize, g: usize| {
            (0..self.dim(g)).fold(CyclotomicSum::zero(1), |acc, a| {
                if self.product((e, c), (g, a)) == Some((g, a)) {
                    acc.add(&CyclotomicSum::phase(&self.action[x][g][a], Rational::one()))
                } else {
                    acc
                }
            })
        };
        for g in (0..n).filter(|&g| !self.ramond[g]) {
            let ginv_j = self.table[self.inverse(g)][self.j];
            for h in (0..n).filter(|&h| !self.ramond[h]) {
                let h_jinv = self.table[h][jinv];
                for c in 0..self.dim(e) {
                    let left = trace(c, h_jinv, g).mul_phase(&UnitPhase::sign(self.parity[g]));
                    let right = trace(c, ginv_j, h).mul_phase(&UnitPhase::sign(self.parity[h]));
                    t.record(left.sub(&right).is_zero(), || {
                        format!("g={} h={} c={}", self.labels[g], self.labels[h], self.label(e, c))
                    });
                }
            }
        }
        results.push(t.finish());

        AxiomReport { results }
    }

    /// Zeroes products until the multiplication is associative: whenever one
    /// bracketing of a triple vanishes and the other does not, the outer
    /// product of the nonzero bracketing is removed.
    fn prune(&mut self) {
        let els = self.elements();
        'restart: loop {
            for &x in &els {
                for &y in &els {
                    let xy = self.product(x, y);
                    for &z in &els {
                        let yz = self.product(y, z);
                        let left = xy.and_then(|p| self.product(p, z));
                        let right = yz.and_then(|p| self.product(x, p));
                        if left == right {
                            continue;
                        }
                        let (p, q) = if left.is_some() { (xy.expect("nonzero"), z) } else { (x, yz.expect("nonzero")) };
                        self.mult[p.0][q.0][p.1][q.1] = None;
                        self.mult[q.0][p.0][q.1][p.1] = None;
                        self.pruned.push((p.0, q.0));
                        continue 'restart;
                    }
                }
            }
            break;
        }
    }

    /// Basis vectors of the product sector that a product of `a` in `g` and
    /// `b` in `h` could equal without breaking bidegree or equivariance.
    fn candidates(&self, g: usize, a: usize, h: usize, b: usize) -> Vec<usize> {
        let k = self.table[g][h];
        let (p, q) = (&self.bidegree[g][a], &self.bidegree[h][b]);
        (0..self.dim(k))
            .filter(|&c| {
                let r = &self.bidegree[k][c];
                &p.0 + &q.0 == r.0
                    && &p.1 + &q.1 == r.1
                    && (0..self.order()).all(|x| &self.action[x][g][a] * &self.action[x][h][b] == self.action[x][k][c])
            })
            .collect()
    }

    /// The first zero product outside the identity sector whose replacement by
    /// a homogeneous equivariant value keeps every axiom that currently holds.
    /// Products with the identity sector are part of the fixed module structure.
    fn first_extension(&self) -> (usize, Option<(usize, usize, usize, usize, usize)>) {
        let n = self.order();
        let base = self.check_axioms();
        let required: Vec<&str> = base.results.iter().filter(|r| r.passed).map(|r| r.name).collect();
        let mut tried = 0;
        for g in (0..n).filter(|&g| g != self.identity) {
            for h in (g..n).filter(|&h| h != self.identity) {
                for a in 0..self.dim(g) {
                    for b in 0..self.dim(h) {
                        if self.mult[g][h][a][b].is_some() {
                            continue;
                        }
                        for c in self.candidates(g, a, h, b) {
                            tried += 1;
                            let mut alt = self.clone();
                            alt.set_product(g, a, h, b, c);
                            let report = alt.check_axioms();
                            if required.iter().all(|r| report.get(r).is_some_and(|x| x.passed)) {
                                return (tried, Some((g, a, h, b, c)));
                            }
                        }
                    }
                }
            }
        }
        (tried, None)
    }

    fn set_product(&mut self, g: usize, a: usize, h: usize, b: usize, c: usize) {
        self.mult[g][h][a][b] = Some(c);
        self.mult[h][g][b][a] = Some(c);
    }

    fn saturate(&mut self) {
        while let (_, Some((g, a, h, b, c))) = self.first_extension() {
            self.set_product(g, a, h, b, c);
            self.added.push((g, a, h, b));
        }
    }

    pub fn maximality(&self) -> MaximalityReport {
        let (tried, hit) = self.first_extension();
        MaximalityReport {
            alternatives_tried: tried,
            counterexample: hit.map(|(g, a, h, b, c)| {
                format!("{} {} -> {}", self.label(g, a), self.label(h, b), self.label(self.table[g][h], c))
            }),
        }
    }

    pub fn nonzero_products(&self) -> usize {
        self.mult.iter().flatten().flatten().flatten().filter(|v| v.is_some()).count()
    }

    pub fn report(&self) -> DegenerateReport {
        DegenerateReport {
            axioms: self.check_axioms(),
            eta_invariant: self.pairing_invariance("invariance of the pulled-back pairing", &self.eta).passed,
            eta_prime_invariant: self.pairing_invariance("invariance of the degenerate pairing", &self.eta_prime).passed,
            maximality: self.maximality(),
            nonzero_products: self.nonzero_products(),
        }
    }

    /// Whether the product of the generators of `g` and `h` is nonzero.
    pub fn generator_product(&self, g: usize, h: usize) -> bool {
        self.mult[g][h][0][0].is_some()
    }
}

pub fn degenerate_structure(dual: &ModuleTriple) -> Result<(DegenerateData, DegenerateReport), DualError> {
    let data = DegenerateData::build(dual)?;
    let report = data.report();
    Ok((data, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_polynomial, rat};
    use crate::dual::dualize_module;
    use crate::orbifold::build_module;
    use crate::symmetry::{DiagonalElement, DiscreteTorsion, SignChoice, SymmetryGroup};

    fn dual(f: &str, v: &[&str], nu: &[Rational], bit: u8) -> ModuleTriple {
        let v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        let p = parse_polynomial(f, &v).unwrap();
        let g = SymmetryGroup::generate(v.len(), &[DiagonalElement::from_rationals(nu)], 1000).unwrap();
        let s = SignChoice::from_generators(&g, &[bit]).unwrap();
        let e = DiscreteTorsion::trivial(&g);
        dualize_module(&build_module(&p, &v, g, s, e).unwrap(), 1000).unwrap().triple
    }

    #[test]
    fn a_series_is_a_frobenius_structure() {
        let t = dual("z^6", &["z"], &[rat(1, 6)], 0);
        let (data, report) = degenerate_structure(&t).unwrap();
        assert!(report.axioms.all_passed(), "{:?}", report.axioms.failed());
        assert!(report.maximality.maximal());
        assert!(data.ramond.iter().filter(|r| **r).count() == 1);
        // all generators of the narrow sectors multiply by group degree
        let e = data.identity;
        for g in 0..data.order() {
            assert_eq!(data.product((e, 0), (g, 0)), if data.ramond[g] { None } else { Some((g, 0)) });
        }
    }

    #[test]
    fn ramond_invariants_pair_nondegenerately() {
        // A_5 with sigma = 1: the sector of j^3 keeps an invariant class
        let t = dual("z^6", &["z"], &[rat(1, 6)], 1);
        let (data, report) = degenerate_structure(&t).unwrap();
        assert!(report.axioms.all_passed(), "{:?}", report.axioms.failed());
        for g in (0..data.order()).filter(|&g| data.ramond[g]) {
            let p = data.partner[g].unwrap();
            for a in (0..data.basis[g].len()).filter(|&a| data.invariant[g][a]) {
                let nonzero = (0..data.basis[p].len()).any(|b| data.invariant[p][b] && !data.eta_prime[g][a][b].is_zero());
                assert!(nonzero, "sector {} vector {a}", data.labels[g]);
            }
        }
    }

    #[test]
    fn e7_structure() {
        let t = dual("x^3 + x*y^3", &["x", "y"], &[rat(1, 3), rat(2, 9)], 0);
        let (_, report) = degenerate_structure(&t).unwrap();
        assert!(report.axioms.all_passed(), "{:?}", report.axioms.failed());
        assert!(report.eta_prime_invariant);
        assert_eq!(report.nonzero_products, 18);
    }

    #[test]
    fn requires_a_cyclic_group() {
        let v: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let p = parse_polynomial("x^2 + y^2", &v).unwrap();
        let gens = [DiagonalElement::from_rationals(&[rat(1, 2), rat(0, 1)]), DiagonalElement::from_rationals(&[rat(0, 1), rat(1, 2)])];
        let g = SymmetryGroup::generate(2, &gens, 100).unwrap();
        let m = crate::orbifold::build_default(&p, &v, g).unwrap();
        let d = dualize_module(&m, 100).unwrap();
        assert!(matches!(degenerate_structure(&d.triple), Err(DualError::NotCyclic)));
    }
}
