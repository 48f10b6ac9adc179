//! Builders shared by the integration tests.
#![allow(dead_code)]

use lgorb::arith::{parse_polynomial, Polynomial, Rational};
use lgorb::orbifold::{build_module, OrbifoldModule};
use lgorb::symmetry::{DiagonalElement, DiscreteTorsion, SignChoice, SymmetryGroup};

pub const BOUND: usize = 10_000;

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn poly(f: &str, v: &[&str]) -> Polynomial {
    parse_polynomial(f, &names(v)).unwrap()
}

pub fn group(nvars: usize, gens: &[Vec<Rational>]) -> SymmetryGroup {
    let gens: Vec<DiagonalElement> = gens.iter().map(|g| DiagonalElement::from_rationals(g)).collect();
    SymmetryGroup::generate(nvars, &gens, BOUND).unwrap()
}

/// The module of `f` over the group generated by `gens`, with sign bits per
/// generator and trivial torsion.
pub fn module(f: &str, v: &[&str], gens: &[Vec<Rational>], bits: &[u8]) -> OrbifoldModule {
    let g = group(v.len(), gens);
    let s = SignChoice::from_generators(&g, bits).unwrap();
    let e = DiscreteTorsion::trivial(&g);
    build_module(&poly(f, v), &names(v), g, s, e).unwrap()
}

/// `z^(n+1)` over the group generated by its grading element.
pub fn a_series(n: i64) -> OrbifoldModule {
    module(&format!("z^{}", n + 1), &["z"], &[vec![lgorb::arith::rat(1, n + 1)]], &[0])
}

/// `x^n/n + x y^2` with weights `1/n` and `(n-1)/(2n)`.
pub fn d_series_text(n: i64) -> String {
    format!("1/{n}*x^{n} + x*y^2")
}
