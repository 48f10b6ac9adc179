//! The dual shifts recomputed from the phases of `g` through the step
//! function, against `s_{g j^-1} - d` and `sbar_{g j^-1}`.

use num_traits::{One, Zero};

use super::triple::ModuleTriple;
use crate::arith::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepShiftRow {
    pub element: usize,
    pub s: Rational,
    pub s_bar: Rational,
    /// `sum (nu_i(g) + step(q_i - nu_i(g)) - 1) - d_{g j^-1}` over moved `i`.
    pub step_s: Rational,
    /// `sum (1 - step(q_i - nu_i(g)) - nu_i(g))` over moved `i`.
    pub step_s_bar: Rational,
    /// The same sums without the `-1` and `1` per moved coordinate.
    pub unshifted_s: Rational,
    pub unshifted_s_bar: Rational,
}

impl StepShiftRow {
    pub fn agrees(&self) -> bool {
        self.s == self.step_s && self.s_bar == self.step_s_bar
    }

    pub fn unshifted_agrees(&self) -> bool {
        self.s == self.unshifted_s && self.s_bar == self.unshifted_s_bar
    }
}

fn step(x: &Rational) -> Rational {
    if *x >= Rational::zero() {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Rows for every element of the group of `source`, which must contain `j`.
pub fn step_shift_check(source: &ModuleTriple, dual: &ModuleTriple) -> Vec<StepShiftRow> {
    let jinv = source.j.inv();
    let two = Rational::from_integer(2.into());
    (0..source.order())
        .map(|g| {
            let el = source.group.element(g);
            let h = el.mul(&jinv);
            let mut step_s = Rational::zero();
            let mut step_s_bar = Rational::zero();
            let mut moved = 0i64;
            let mut d_h = Rational::zero();
            for (i, q) in source.weights.iter().enumerate() {
                if h.nu(i).is_zero() {
                    d_h += Rational::one() - &two * q;
                    continue;
                }
                moved += 1;
                let nu = el.nu(i);
                let t = step(&(q - nu));
                step_s += nu + &t - Rational::one();
                step_s_bar += Rational::one() - &t - nu;
            }
            step_s -= &d_h;
            let m = Rational::from_integer(moved.into());
            StepShiftRow {
                element: g,
                s: dual.sectors[g].s.clone(),
                s_bar: dual.sectors[g].s_bar.clone(),
                unshifted_s: &step_s + &m,
                unshifted_s_bar: &step_s_bar - &m,
                step_s,
                step_s_bar,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_polynomial, rat};
    use crate::dual::dualize_module;
    use crate::orbifold::build_default;
    use crate::symmetry::{DiagonalElement, SymmetryGroup};

    #[test]
    fn step_form_matches_and_unshifted_form_does_not() {
        let cases: [(&str, &[&str], Vec<Rational>); 3] = [
            ("x^3 + x*y^3", &["x", "y"], vec![rat(1, 3), rat(2, 9)]),
            ("z^7", &["z"], vec![rat(1, 7)]),
            ("x^3 + y^4", &["x", "y"], vec![rat(1, 3), rat(1, 4)]),
        ];
        for (f, vars, nu) in cases {
            let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
            let p = parse_polynomial(f, &v).unwrap();
            let g = SymmetryGroup::generate(v.len(), &[DiagonalElement::from_rationals(&nu)], 1000).unwrap();
            let d = dualize_module(&build_default(&p, &v, g).unwrap(), 1000).unwrap();
            let rows = step_shift_check(&d.source, &d.ambient);
            assert!(rows.iter().all(StepShiftRow::agrees), "{f}");
            assert!(rows.iter().filter(|r| !r.unshifted_agrees()).count() > 0, "{f}");
        }
    }
}
