//! Invariants checked on random inputs.

mod common;

use common::*;
use lgorb::arith::{parse_polynomial, rat, CyclotomicSum, Monomial, Polynomial, UnitPhase};
use lgorb::catalog::{spectrum_of, Catalog, MatchMode, Spectrum, SpectrumEntry};
use lgorb::milnor::MilnorRing;
use lgorb::symmetry::{DiagonalElement, SymmetryGroup};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn phase() -> impl Strategy<Value = UnitPhase> {
    (0i64..24, 1i64..13).prop_map(|(n, d)| UnitPhase::from_ratio(n, d))
}

fn cyclotomic_sum() -> impl Strategy<Value = CyclotomicSum> {
    prop::collection::vec((-3i64..4, phase()), 0..6).prop_map(|terms| {
        terms.iter().fold(CyclotomicSum::zero(1), |acc, (c, p)| acc.add(&CyclotomicSum::phase(p, rat(*c, 1))))
    })
}

fn eval(c: &CyclotomicSum) -> (f64, f64) {
    c.to_pairs().iter().fold((0.0, 0.0), |(re, im), (r, p)| {
        let (r, t) = (r.to_f64().unwrap(), p.theta().to_f64().unwrap());
        let a = 2.0 * std::f64::consts::PI * t;
        (re + r * a.cos(), im + r * a.sin())
    })
}

/// Polynomials in `n` variables with small exponents and coefficients.
fn polynomial(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..4, n), -4i64..5, 1i64..4), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(n, terms.into_iter().map(|(e, p, q)| (Monomial(e), rat(p, q))))
    })
}

const RINGS: [(&str, &[&str]); 6] = [
    ("z^7", &["z"]),
    ("1/4*x^4 + x*y^2", &["x", "y"]),
    ("x^3 + y^4", &["x", "y"]),
    ("x^3 + x*y^3", &["x", "y"]),
    ("x^3 + y^5", &["x", "y"]),
    ("x^2*y + y^3 + z^3", &["x", "y", "z"]),
];

/// Drops terms in variables past the first `n` and re-types into `n` variables.
fn truncate(p: &Polynomial, n: usize) -> Polynomial {
    Polynomial::from_terms(
        n,
        p.terms().filter(|(m, _)| m.0[n..].iter().all(|e| *e == 0)).map(|(m, c)| (Monomial(m.0[..n].to_vec()), c.clone())),
    )
}

fn ring(i: usize) -> MilnorRing {
    let (f, v) = RINGS[i];
    MilnorRing::new(&poly(f, v), &names(v)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phases_form_a_group(a in phase(), b in phase(), c in phase()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a * &a.inv()).is_one());
        let r = a.sqrt();
        prop_assert_eq!(&r * &r, a);
    }

    #[test]
    fn exact_reduction_agrees_with_floating_point(a in cyclotomic_sum(), b in cyclotomic_sum()) {
        let (x, y) = (eval(&a), eval(&b));
        let (p, q) = eval(&a.mul(&b));
        prop_assert!((p - (x.0 * y.0 - x.1 * y.1)).abs() < 1e-6);
        prop_assert!((q - (x.0 * y.1 + x.1 * y.0)).abs() < 1e-6);
        let zero = a.is_zero();
        prop_assert_eq!(zero, x.0.abs() < 1e-9 && x.1.abs() < 1e-9);
        if let Some(r) = a.to_rational() {
            prop_assert!((r.to_f64().unwrap() - x.0).abs() < 1e-9 && x.1.abs() < 1e-9);
        }
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.lift(a.order() * 2), a);
    }

    #[test]
    fn polynomial_text_round_trips(p in polynomial(3)) {
        let v = names(&["x", "y", "z"]);
        let text = p.to_text(&v);
        prop_assert_eq!(parse_polynomial(&text, &v).unwrap(), p);
    }

    #[test]
    fn normal_forms(i in 0usize..RINGS.len(), seed_a in polynomial(3), seed_b in polynomial(3)) {
        let r = ring(i);
        let n = r.nvars();
        let (a, b) = (truncate(&seed_a, n), truncate(&seed_b, n));
        let na = r.normal_form(&a);
        prop_assert_eq!(r.normal_form(&na), na.clone());
        prop_assert!(na.monomials().all(|m| r.index_of(m).is_some()));
        let nb = r.normal_form(&b);
        prop_assert_eq!(r.normal_form(&(&a * &b)), r.normal_form(&(&na * &nb)));
        prop_assert!(r.contains(&(&a - &na)));
        // the pairing is the socle coefficient of the product
        prop_assert_eq!(r.eta(&a, &b), r.socle_coefficient(&(&na * &nb)));
    }

    #[test]
    fn spectra_ignore_order(raw in prop::collection::vec((-6i64..7, 0i64..7, 1i64..7, 0usize..4), 0..10), seed in any::<u64>()) {
        let entries: Vec<SpectrumEntry> = raw
            .iter()
            .map(|(p, q, d, g)| SpectrumEntry { q: rat(*p, *d), q_bar: rat(*q, *d), group: Some(*g) })
            .collect();
        let mut shuffled = entries.clone();
        let k = shuffled.len().max(1);
        shuffled.rotate_left((seed as usize) % k);
        shuffled.reverse();
        let (a, b) = (Spectrum::new(entries), Spectrum::new(shuffled));
        prop_assert_eq!(&a, &b);
        let c = Catalog::builtin();
        for mode in [MatchMode::Cc, MatchMode::Ac] {
            prop_assert_eq!(c.match_spectrum(&a, mode), c.match_spectrum(&b, mode));
        }
    }

    #[test]
    fn generated_groups_are_closed(gens in prop::collection::vec((0i64..6, 1i64..7, 0i64..6, 1i64..7), 1..3)) {
        let gens: Vec<DiagonalElement> = gens
            .iter()
            .map(|(a, b, c, d)| DiagonalElement::from_rationals(&[rat(*a, *b), rat(*c, *d)]))
            .collect();
        let g = SymmetryGroup::generate(2, &gens, 1000).unwrap();
        let n = g.order();
        prop_assert_eq!(g.invariant_factors().iter().product::<u64>() as usize, n);
        for a in 0..n {
            prop_assert!(g.element(g.mul(a, g.inverse(a))).is_identity());
            prop_assert_eq!(n as u64 % g.element_order(a), 0);
            for b in 0..n {
                prop_assert_eq!(g.element(g.mul(a, b)), &g.element(a).mul(g.element(b)));
            }
        }
        for x in &gens {
            prop_assert!(g.index_of(x).is_some());
        }
    }
}

#[test]
fn invariant_spectra_are_deterministic() {
    let m = module("x^3 + y^4", &["x", "y"], &[vec![rat(0, 1), rat(1, 2)]], &[0]);
    let a = spectrum_of(&m.invariants());
    let mut reversed = m.invariants();
    reversed.reverse();
    assert_eq!(a, spectrum_of(&reversed));
    assert_eq!(a.len(), m.invariants().len());
    assert_eq!(a.rows(), spectrum_of(&reversed).rows());
}
