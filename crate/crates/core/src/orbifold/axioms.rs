//! Explicit structure constants of a graded `G`-Frobenius algebra and a
//! checker for its axioms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rat, parse_rat, CyclotomicSum, Rational, UnitPhase};

pub type Vector = BTreeMap<usize, CyclotomicSum>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorData {
    pub dim: usize,
    pub parity: u8,
    pub basis: Vec<String>,
}

/// Structure constants on the basis of every sector.
///
/// `action[g][h][b]` is the image of basis vector `b` of `A_h` under `g`,
/// `mult[g][h][a][b]` the product of basis vectors of `A_g` and `A_h` in
/// `A_{gh}`, `metric[g][a][b]` the pairing of `A_g` with `A_{g^-1}`.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub sectors: Vec<SectorData>,
    pub chi: Vec<UnitPhase>,
    pub action: Vec<Vec<Vec<Vector>>>,
    pub mult: Vec<Vec<Vec<Vec<Vector>>>>,
    pub metric: Vec<Vec<Vec<CyclotomicSum>>>,
    pub unit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failed(&self) -> Vec<&AxiomResult> {
        self.results.iter().filter(|r| !r.passed).collect()
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

pub(crate) fn zero() -> CyclotomicSum {
    CyclotomicSum::zero(1)
}

pub(crate) fn add_into(v: &mut Vector, k: usize, c: &CyclotomicSum) {
    let slot = v.entry(k).or_insert_with(zero);
    *slot = slot.add(c);
}

pub(crate) fn vec_eq(a: &Vector, b: &Vector) -> bool {
    let keys: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter().all(|k| {
        let x = a.get(&k).cloned().unwrap_or_else(zero);
        let y = b.get(&k).cloned().unwrap_or_else(zero);
        x.sub(&y).is_zero()
    })
}

pub(crate) fn scale(v: &Vector, c: &CyclotomicSum) -> Vector {
    v.iter().map(|(k, x)| (*k, x.mul(c))).collect()
}

pub(crate) fn unit_vector(i: usize) -> Vector {
    BTreeMap::from([(i, CyclotomicSum::one())])
}

pub(crate) fn phase(p: &UnitPhase) -> CyclotomicSum {
    CyclotomicSum::phase(p, Rational::from_integer(1.into()))
}

pub(crate) struct Tally {
    name: &'static str,
    checked: usize,
    witness: Option<String>,
}

impl Tally {
    pub(crate) fn new(name: &'static str) -> Self {
        Tally { name, checked: 0, witness: None }
    }

    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub(crate) fn finish(self) -> AxiomResult {
        AxiomResult { name: self.name, passed: self.witness.is_none(), checked: self.checked, witness: self.witness }
    }
}

impl FrobeniusData {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.table[g][h] == self.identity).expect("group inverse")
    }

    fn dim(&self, g: usize) -> usize {
        self.sectors[g].dim
    }

    pub fn mul_vec(&self, g: usize, a: &Vector, h: usize, b: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x.mul(y);
                for (k, c) in &self.mult[g][h][*i][*j] {
                    add_into(&mut out, *k, &xy.mul(c));
                }
            }
        }
        out
    }

    pub fn act_vec(&self, k: usize, h: usize, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, x) in v {
            for (j, c) in &self.action[k][h][*i] {
                add_into(&mut out, *j, &x.mul(c));
            }
        }
        out
    }

    /// Pairing of `a` in `A_g` with `b` in `A_h`; zero unless `gh = e`.
    pub fn eta(&self, g: usize, a: &Vector, h: usize, b: &Vector) -> CyclotomicSum {
        if self.table[g][h] != self.identity {
            return zero();
        }
        let mut out = zero();
        for (i, x) in a {
            for (j, y) in b {
                out = out.add(&x.mul(y).mul(&self.metric[g][*i][*j]));
            }
        }
        out
    }

    fn label(&self, g: usize, i: usize) -> String {
        format!("{}@{}", self.sectors[g].basis[i], self.labels[g])
    }

    /// Checks every axiom on all basis elements, recording the first failure of each.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.order();
        let e = self.identity;
        let mut results = Vec::new();

        let mut t = Tally::new("associativity");
        for g in 0..n {
            for h in 0..n {
                let gh = self.table[g][h];
                for k in 0..n {
                    let hk = self.table[h][k];
                    for a in 0..self.dim(g) {
                        for b in 0..self.dim(h) {
                            let ab = self.mul_vec(g, &unit_vector(a), h, &unit_vector(b));
                            for c in 0..self.dim(k) {
                                let left = self.mul_vec(gh, &ab, k, &unit_vector(c));
                                let bc = self.mul_vec(h, &unit_vector(b), k, &unit_vector(c));
                                let right = self.mul_vec(g, &unit_vector(a), hk, &bc);
                                t.record(vec_eq(&left, &right), || {
                                    format!("({} {}) {}", self.label(g, a), self.label(h, b), self.label(k, c))
                                });
                            }
                        }
                    }
                }
            }
        }
        results.push(t.finish());

        let mut t = Tally::new("twisted super-commutativity");
        for g in 0..n {
            for h in 0..n {
                for a in 0..self.dim(g) {
                    for b in 0..self.dim(h) {
                        let left = self.mul_vec(g, &unit_vector(a), h, &unit_vector(b));
                        let moved = self.act_vec(g, h, &unit_vector(b));
                        let mut right = self.mul_vec(h, &moved, g, &unit_vector(a));
                        if self.sectors[g].parity * self.sectors[h].parity % 2 == 1 {
                            right = scale(&right, &phase(&UnitPhase::minus_one()));
                        }
                        t.record(vec_eq(&left, &right), || format!("{} {}", self.label(g, a), self.label(h, b)));
                    }
                }
            }
        }
        results.push(t.finish());

        let mut t = Tally::new("unit");
        let one = unit_vector(self.unit);
        for g in 0..n {
            for a in 0..self.dim(g) {
                let x = unit_vector(a);
                let l = self.mul_vec(e, &one, g, &x);
                let r = self.mul_vec(g, &x, e, &one);
                t.record(vec_eq(&l, &x) && vec_eq(&r, &x), || self.label(g, a));
            }
            t.record(vec_eq(&self.act_vec(g, e, &one), &one), || format!("unit moved by {}", self.labels[g]));
        }
        results.push(t.finish());

        let mut t = Tally::new("metric invariance");
        for g in 0..n {
            for h in 0..n {
                let gh = self.table[g][h];
                let k = self.inverse(gh);
                let hk = self.table[h][k];
                for a in 0..self.dim(g) {
                    for b in 0..self.dim(h) {
                        let ab = self.mul_vec(g, &unit_vector(a), h, &unit_vector(b));
                        for c in 0..self.dim(k) {
                            let left = self.eta(gh, &ab, k, &unit_vector(c));
                            let bc = self.mul_vec(h, &unit_vector(b), k, &unit_vector(c));
                            let right = self.eta(g, &unit_vector(a), hk, &bc);
                            t.record(left.sub(&right).is_zero(), || {
                                format!("{} {} {}", self.label(g, a), self.label(h, b), self.label(k, c))
                            });
                        }
                    }
                }
            }
        }
        results.push(t.finish());

        let mut t = Tally::new("projective self-invariance");
        for g in 0..n {
            let c = phase(&self.chi[g].inv());
            for a in 0..self.dim(g) {
                let x = unit_vector(a);
                t.record(vec_eq(&self.act_vec(g, g, &x), &scale(&x, &c)), || self.label(g, a));
            }
        }
        results.push(t.finish());

        let mut t = Tally::new("G-invariance of multiplication");
        for k in 0..n {
            for g in 0..n {
                for h in 0..n {
                    let gh = self.table[g][h];
                    for a in 0..self.dim(g) {
                        for b in 0..self.dim(h) {
                            let ab = self.mul_vec(g, &unit_vector(a), h, &unit_vector(b));
                            let left = self.act_vec(k, gh, &ab);
                            let right = self.mul_vec(
                                g,
                                &self.act_vec(k, g, &unit_vector(a)),
                                h,
                                &self.act_vec(k, h, &unit_vector(b)),
                            );
                            t.record(vec_eq(&left, &right), || {
                                format!("{} acting on {} {}", self.labels[k], self.label(g, a), self.label(h, b))
                            });
                        }
                    }
                }
            }
        }
        results.push(t.finish());

        let mut t = Tally::new("projective invariance of metric");
        for k in 0..n {
            let c = phase(&self.chi[k].pow(-2));
            for g in 0..n {
                let gi = self.inverse(g);
                for a in 0..self.dim(g) {
                    for b in 0..self.dim(gi) {
                        let left = self.eta(
                            g,
                            &self.act_vec(k, g, &unit_vector(a)),
                            gi,
                            &self.act_vec(k, gi, &unit_vector(b)),
                        );
                        let right = self.eta(g, &unit_vector(a), gi, &unit_vector(b)).mul(&c);
                        t.record(left.sub(&right).is_zero(), || {
                            format!("{} on ({}, {})", self.labels[k], self.label(g, a), self.label(gi, b))
                        });
                    }
                }
            }
        }
        results.push(t.finish());

        let mut t = Tally::new("projective super-trace");
        for g in 0..n {
            let gi = self.inverse(g);
            for h in 0..n {
                for c in 0..self.dim(e) {
                    let cv = unit_vector(c);
                    let mut left = zero();
                    for a in 0..self.dim(g) {
                        let img = self.mul_vec(e, &cv, g, &self.act_vec(h, g, &unit_vector(a)));
                        left = left.add(img.get(&a).unwrap_or(&zero()));
                    }
                    let mut right = zero();
                    for b in 0..self.dim(h) {
                        let img = self.act_vec(gi, h, &self.mul_vec(e, &cv, h, &unit_vector(b)));
                        right = right.add(img.get(&b).unwrap_or(&zero()));
                    }
                    let left = left.mul(&phase(&(&UnitPhase::sign(self.sectors[g].parity) * &self.chi[h])));
                    let right = right.mul(&phase(&(&UnitPhase::sign(self.sectors[h].parity) * &self.chi[gi])));
                    t.record(left.sub(&right).is_zero(), || {
                        format!("g={} h={} c={}", self.labels[g], self.labels[h], self.label(e, c))
                    });
                }
            }
        }
        results.push(t.finish());

        AxiomReport { results }
    }

    /// Every nonzero structure constant of the multiplication, as
    /// `(g, h, a, b, target basis index)`.
    pub fn mult_positions(&self) -> Vec<(usize, usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for (g, row) in self.mult.iter().enumerate() {
            for (h, block) in row.iter().enumerate() {
                for (a, r) in block.iter().enumerate() {
                    for (b, v) in r.iter().enumerate() {
                        for (k, c) in v {
                            if !c.is_zero() {
                                out.push((g, h, a, b, *k));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> FrobeniusJson {
        FrobeniusJson {
            schema_version: 1,
            labels: self.labels.clone(),
            table: self.table.clone(),
            identity: self.identity,
            sectors: self.sectors.clone(),
            chi: self.chi.iter().map(|p| p.to_string()).collect(),
            action: self.action.iter().map(|r| r.iter().map(|b| b.iter().map(vector_json).collect()).collect()).collect(),
            mult: self
                .mult
                .iter()
                .map(|r| r.iter().map(|b| b.iter().map(|x| x.iter().map(vector_json).collect()).collect()).collect())
                .collect(),
            metric: self
                .metric
                .iter()
                .map(|m| m.iter().map(|r| r.iter().map(scalar_json).collect()).collect())
                .collect(),
            unit: self.unit,
        }
    }

    pub fn from_json(j: &FrobeniusJson) -> Result<Self, String> {
        let n = j.table.len();
        if j.labels.len() != n || j.sectors.len() != n || j.chi.len() != n {
            return Err("group data lengths disagree".into());
        }
        if j.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) || j.identity >= n {
            return Err("malformed group table".into());
        }
        let chi = j.chi.iter().map(|s| parse_phase(s)).collect::<Result<Vec<_>, _>>()?;
        let vec = |v: &Vec<(usize, ScalarJson)>| -> Result<Vector, String> {
            v.iter().map(|(k, s)| Ok((*k, scalar_from_json(s)?))).collect()
        };
        let action = j
            .action
            .iter()
            .map(|r| r.iter().map(|b| b.iter().map(vec).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let mult = j
            .mult
            .iter()
            .map(|r| {
                r.iter()
                    .map(|b| {
                        b.iter().map(|x| x.iter().map(vec).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let metric = j
            .metric
            .iter()
            .map(|m| {
                m.iter()
                    .map(|r| r.iter().map(scalar_from_json).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let data = FrobeniusData {
            labels: j.labels.clone(),
            table: j.table.clone(),
            identity: j.identity,
            sectors: j.sectors.clone(),
            chi,
            action,
            mult,
            metric,
            unit: j.unit,
        };
        data.validate_shapes()?;
        Ok(data)
    }

    fn validate_shapes(&self) -> Result<(), String> {
        let n = self.order();
        let bad = |what: &str| Err(format!("{what} has the wrong shape"));
        if self.action.len() != n || self.mult.len() != n || self.metric.len() != n {
            return bad("structure data");
        }
        for g in 0..n {
            if self.sectors[g].basis.len() != self.dim(g) {
                return bad("sector basis");
            }
            let gi = self.inverse(g);
            if self.metric[g].len() != self.dim(g) || self.metric[g].iter().any(|r| r.len() != self.dim(gi)) {
                return bad("metric");
            }
            if self.action[g].len() != n || self.mult[g].len() != n {
                return bad("action or multiplication");
            }
            for h in 0..n {
                let gh = self.table[g][h];
                if self.action[g][h].len() != self.dim(h)
                    || self.action[g][h].iter().flat_map(|v| v.keys()).any(|&k| k >= self.dim(h))
                {
                    return bad("action");
                }
                if self.mult[g][h].len() != self.dim(g)
                    || self.mult[g][h].iter().any(|r| {
                        r.len() != self.dim(h) || r.iter().flat_map(|v| v.keys()).any(|&k| k >= self.dim(gh))
                    })
                {
                    return bad("multiplication");
                }
            }
        }
        if self.unit >= self.dim(self.identity) {
            return bad("unit");
        }
        Ok(())
    }
}

/// A scalar as `(coefficient, phase)` pairs, e.g. `["-1/2", "theta=1/3"]`.
pub type ScalarJson = Vec<(String, String)>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrobeniusJson {
    pub schema_version: u32,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub sectors: Vec<SectorData>,
    pub chi: Vec<String>,
    pub action: Vec<Vec<Vec<Vec<(usize, ScalarJson)>>>>,
    pub mult: Vec<Vec<Vec<Vec<Vec<(usize, ScalarJson)>>>>>,
    pub metric: Vec<Vec<Vec<ScalarJson>>>,
    pub unit: usize,
}

pub fn parse_phase(s: &str) -> Result<UnitPhase, String> {
    let t = s.trim();
    let t = t.strip_prefix("theta=").unwrap_or(t);
    parse_rat(t).map(UnitPhase::new).ok_or_else(|| format!("bad phase '{s}'"))
}

pub fn scalar_json(c: &CyclotomicSum) -> ScalarJson {
    c.compact().to_pairs().into_iter().map(|(r, p)| (fmt_rat(&r), p.to_string())).collect()
}

pub fn scalar_from_json(s: &ScalarJson) -> Result<CyclotomicSum, String> {
    let pairs = s
        .iter()
        .map(|(c, p)| Ok((parse_rat(c).ok_or_else(|| format!("bad rational '{c}'"))?, parse_phase(p)?)))
        .collect::<Result<Vec<_>, String>>()?;
    Ok(CyclotomicSum::from_pairs(&pairs))
}

fn vector_json(v: &Vector) -> Vec<(usize, ScalarJson)> {
    v.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, scalar_json(c))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    /// `k[x]/(x^3)` as a Frobenius algebra over the trivial group.
    fn truncated() -> FrobeniusData {
        let one = CyclotomicSum::one();
        let mut mult = vec![vec![Vector::new(); 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                if a + b < 3 {
                    mult[a][b].insert(a + b, one.clone());
                }
            }
        }
        let metric = (0..3)
            .map(|a| (0..3).map(|b| if a + b == 2 { one.clone() } else { CyclotomicSum::zero(1) }).collect())
            .collect();
        FrobeniusData {
            labels: vec!["e".into()],
            table: vec![vec![0]],
            identity: 0,
            sectors: vec![SectorData { dim: 3, parity: 0, basis: vec!["1".into(), "x".into(), "x^2".into()] }],
            chi: vec![UnitPhase::one()],
            action: vec![vec![(0..3).map(unit_vector).collect()]],
            mult: vec![vec![mult]],
            metric: vec![metric],
            unit: 0,
        }
    }

    #[test]
    fn ordinary_frobenius_algebra_passes() {
        let r = truncated().check_axioms();
        assert!(r.all_passed(), "{:?}", r.failed());
    }

    #[test]
    fn mutation_is_caught() {
        let mut d = truncated();
        d.mult[0][0][1][1] = BTreeMap::from([(2, CyclotomicSum::scalar(rat(2, 1)))]);
        let r = d.check_axioms();
        assert!(!r.all_passed());
        assert!(r.failed().iter().all(|f| f.witness.is_some()));
    }

    #[test]
    fn json_round_trip() {
        let d = truncated();
        let j = serde_json::to_string(&d.to_json()).unwrap();
        let back = FrobeniusData::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back.to_json().mult, d.to_json().mult);
        assert!(back.check_axioms().all_passed());
    }
}
