use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{denom_u64, fmt_rat, lcm_u64, Rational, UnitPhase};

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree
/// first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic index must be positive");
    // x^n - 1 divided by every proper divisor's cyclotomic factor.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi = cyclotomic_polynomial(d);
            num = div_monic(&num, &phi);
        }
    }
    let p = Arc::new(num);
    cache.lock().expect("cache lock").insert(n, p.clone());
    p
}

fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (k, dk) in den.iter().enumerate() {
            rem[i + k] -= &c * dk;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()), "inexact cyclotomic division");
    q
}

/// `sum c_k zeta_n^k` with rational `c_k`, stored sparsely over `Z/n`.
#[derive(Clone, Debug)]
pub struct CyclotomicSum {
    n: u64,
    terms: BTreeMap<u64, Rational>,
}

impl CyclotomicSum {
    pub fn zero(n: u64) -> Self {
        CyclotomicSum { n: n.max(1), terms: BTreeMap::new() }
    }

    pub fn scalar(r: Rational) -> Self {
        let mut s = Self::zero(1);
        s.add_term(0, r);
        s
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    /// From raw integer coefficients indexed by powers of `zeta_n`.
    pub fn from_coefficients(coeffs: &[i64]) -> Self {
        let mut s = Self::zero(coeffs.len() as u64);
        for (k, &c) in coeffs.iter().enumerate() {
            s.add_term(k as u64, Rational::from_integer(c.into()));
        }
        s
    }

    /// `c * exp(2 pi i theta)`.
    pub fn phase(p: &UnitPhase, c: Rational) -> Self {
        let n = p.order();
        let k = (p.theta() * Rational::from_integer(n.into())).to_integer();
        let k: u64 = k.try_into().expect("phase index in range");
        let mut s = Self::zero(n);
        s.add_term(k, c);
        s
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    fn add_term(&mut self, k: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let k = k % self.n;
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Re-expresses over `zeta_m` for a multiple `m` of the current order.
    pub fn lift(&self, m: u64) -> Self {
        assert_eq!(m % self.n, 0, "lift target must be a multiple of the order");
        let f = m / self.n;
        CyclotomicSum {
            n: m,
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let m = lcm_u64(self.n, other.n);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (k, c) in b.terms {
            a.add_term(k, c);
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            out.add_term(*k, c * r);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut out = Self::zero(a.n);
        for (i, x) in &a.terms {
            for (j, y) in &b.terms {
                out.add_term(i + j, x * y);
            }
        }
        out
    }

    pub fn mul_phase(&self, p: &UnitPhase) -> Self {
        self.mul(&Self::phase(p, Rational::one()))
    }

    /// Remainder modulo the cyclotomic polynomial: the canonical coordinates in
    /// the power basis of `Q(zeta_n)`.
    pub fn reduce(&self) -> Vec<Rational> {
        let phi = cyclotomic_polynomial(self.n);
        let deg = phi.len() - 1;
        let mut v = vec![Rational::zero(); (self.n as usize).max(deg)];
        for (k, c) in &self.terms {
            v[*k as usize] += c;
        }
        for i in (deg..v.len()).rev() {
            let c = std::mem::replace(&mut v[i], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for (k, pk) in phi.iter().enumerate().take(deg) {
                v[i - deg + k] -= &c * Rational::from_integer(pk.clone());
            }
        }
        v.truncate(deg);
        v
    }

    pub fn is_zero(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => false,
            _ => self.reduce().iter().all(|c| c.is_zero()),
        }
    }

    /// The value as a rational number, when it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        let r = self.reduce();
        if r.iter().skip(1).all(|c| c.is_zero()) {
            Some(r.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Drops the order to the smallest one that still expresses all terms.
    pub fn compact(&self) -> Self {
        if self.terms.is_empty() {
            return Self::zero(1);
        }
        let mut m = 1u64;
        for k in self.terms.keys() {
            let p = UnitPhase::new(Rational::new((*k).into(), self.n.into()));
            m = lcm_u64(m, denom_u64(p.theta()));
        }
        let f = self.n / m;
        CyclotomicSum {
            n: m,
            terms: self.terms.iter().map(|(k, c)| (k / f, c.clone())).collect(),
        }
    }

    /// `(coefficient, phase)` pairs.
    pub fn to_pairs(&self) -> Vec<(Rational, UnitPhase)> {
        self.terms
            .iter()
            .map(|(k, c)| (c.clone(), UnitPhase::new(Rational::new((*k).into(), self.n.into()))))
            .collect()
    }

    pub fn from_pairs(pairs: &[(Rational, UnitPhase)]) -> Self {
        pairs
            .iter()
            .fold(Self::zero(1), |acc, (c, p)| acc.add(&Self::phase(p, c.clone())))
    }
}

/// Sum cyclotomic elements.
pub fn sum_all<'a>(it: impl IntoIterator<Item = &'a CyclotomicSum>) -> CyclotomicSum {
    it.into_iter().fold(CyclotomicSum::zero(1), |a, b| a.add(b))
}

impl PartialEq for CyclotomicSum {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for CyclotomicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return f.write_str(&fmt_rat(&r));
        }
        let parts: Vec<String> = self
            .compact()
            .to_pairs()
            .iter()
            .map(|(c, p)| format!("{}*[{}]", fmt_rat(c), p))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
