//! Buchberger's algorithm over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::order::{OrderKey, TermOrder};
use crate::arith::{Polynomial, Rational};

/// Polynomial keyed by the term order; the last entry is the leading term.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Ordered {
    pub terms: BTreeMap<OrderKey, Rational>,
}

impl Ordered {
    pub fn from_poly(p: &Polynomial, order: &TermOrder) -> Self {
        Ordered { terms: p.terms().map(|(m, c)| (order.key(m), c.clone())).collect() }
    }

    pub fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().map(|(k, c)| (k.monomial(), c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(&OrderKey, &Rational)> {
        self.terms.iter().next_back()
    }

    fn monic(mut self) -> Self {
        if let Some((_, c)) = self.lead() {
            let inv = Rational::one() / c;
            for v in self.terms.values_mut() {
                *v *= &inv;
            }
        }
        self
    }

    /// `self -= c * m * g`.
    fn sub_scaled(&mut self, c: &Rational, m: &OrderKey, g: &Ordered) {
        for (k, a) in &g.terms {
            let key = k.mul(m);
            let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
            *slot -= c * a;
            if slot.is_zero() {
                self.terms.remove(&key);
            }
        }
    }
}

/// Fully reduces `p` against a monic basis.
pub(crate) fn reduce(p: &Ordered, basis: &[Ordered]) -> Ordered {
    let mut work = p.clone();
    let mut rem = Ordered { terms: BTreeMap::new() };
    while let Some((k, c)) = work.terms.pop_last() {
        let divisor = basis.iter().find(|g| g.lead().map(|(l, _)| l.divides(&k)).unwrap_or(false));
        match divisor {
            Some(g) => {
                let (l, _) = g.lead().expect("nonzero basis element");
                let m = k.div(l);
                let mut tail = g.clone();
                tail.terms.pop_last();
                work.sub_scaled(&c, &m, &tail);
            }
            None => {
                rem.terms.insert(k, c);
            }
        }
    }
    rem
}

fn lcm_key(a: &OrderKey, b: &OrderKey, order: &TermOrder) -> OrderKey {
    order.key(&a.monomial().lcm(&b.monomial()))
}

fn s_poly(f: &Ordered, g: &Ordered, order: &TermOrder) -> Ordered {
    let (lf, _) = f.lead().expect("nonzero");
    let (lg, _) = g.lead().expect("nonzero");
    let l = lcm_key(lf, lg, order);
    let mut out = Ordered { terms: BTreeMap::new() };
    out.sub_scaled(&-Rational::one(), &l.div(lf), f);
    out.sub_scaled(&Rational::one(), &l.div(lg), g);
    out
}

/// Reduced, monic Groebner basis, sorted by leading term.
pub fn buchberger(gens: &[Polynomial], order: &TermOrder) -> Vec<Polynomial> {
    let nvars = order.nvars();
    let mut basis: Vec<Ordered> = Vec::new();
    for g in gens {
        let r = reduce(&Ordered::from_poly(g, order), &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let pick = (0..pairs.len())
            .min_by_key(|&p| {
                let (i, j) = pairs[p];
                lcm_key(basis[i].lead().unwrap().0, basis[j].lead().unwrap().0, order)
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(pick);
        let li = basis[i].lead().unwrap().0.monomial();
        let lj = basis[j].lead().unwrap().0.monomial();
        if li.coprime(&lj) {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
            let n = basis.len() - 1;
            for k in 0..n {
                pairs.push((k, n));
            }
        }
    }
    // drop redundant generators, then inter-reduce
    let mut minimal: Vec<Ordered> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.lead().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.lead().unwrap().0;
            j != i && lh.divides(lg) && (lh != lg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut g = minimal[i].clone();
        let (lk, lc) = g.terms.pop_last().expect("nonzero");
        let others: Vec<Ordered> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
        let mut tail = reduce(&g, &others);
        tail.terms.insert(lk, lc);
        reduced.push(tail.monic());
    }
    reduced.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
    reduced.iter().map(|g| g.to_poly(nvars)).collect()
}

/// Normal form of `p` modulo a Groebner basis.
pub fn normal_form_with(p: &Polynomial, basis: &[Polynomial], order: &TermOrder) -> Polynomial {
    let b: Vec<Ordered> = basis.iter().map(|g| Ordered::from_poly(g, order)).collect();
    reduce(&Ordered::from_poly(p, order), &b).to_poly(p.nvars())
}

/// Leading monomial under `order`.
pub fn leading_monomial(p: &Polynomial, order: &TermOrder) -> Option<crate::arith::Monomial> {
    p.monomials().max_by(|a, b| order.cmp(a, b)).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_polynomial, rat, Monomial};

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_monomial_ideal() {
        let v = vars(&["x"]);
        let o = TermOrder::new(&[rat(1, 2)]).unwrap();
        let gb = buchberger(&[parse_polynomial("x^2", &v).unwrap()], &o);
        assert_eq!(gb, vec![parse_polynomial("x^2", &v).unwrap()]);
    }

    #[test]
    fn monic_normalization() {
        let v = vars(&["x"]);
        let o = TermOrder::new(&[rat(1, 4)]).unwrap();
        let gb = buchberger(&[parse_polynomial("4*x^3", &v).unwrap()], &o);
        assert_eq!(gb, vec![parse_polynomial("x^3", &v).unwrap()]);
    }

    #[test]
    fn d4_jacobian_staircase() {
        let v = vars(&["x", "y"]);
        let o = TermOrder::new(&[rat(1, 3), rat(1, 3)]).unwrap();
        let gens = [parse_polynomial("x^2 + y^2", &v).unwrap(), parse_polynomial("x*y", &v).unwrap()];
        let gb = buchberger(&gens, &o);
        let leads: Vec<Monomial> = gb.iter().map(|g| leading_monomial(g, &o).unwrap()).collect();
        assert!(leads.contains(&Monomial(vec![0, 2])));
        assert!(leads.contains(&Monomial(vec![1, 1])));
        assert!(leads.contains(&Monomial(vec![3, 0])));
        let y2 = parse_polynomial("y^2", &v).unwrap();
        assert_eq!(normal_form_with(&y2, &gb, &o), parse_polynomial("-x^2", &v).unwrap());
        for g in &gens {
            assert!(normal_form_with(g, &gb, &o).is_zero());
        }
    }
}
