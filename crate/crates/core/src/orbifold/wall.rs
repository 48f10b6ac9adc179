//! Equivariant Milnor number identities: `mu_g = (-1)^{codim} tr(g | M_f) det(g)`
//! and the average over the group.

use num_traits::{One, Zero};

use super::module::OrbifoldModule;
use crate::arith::{int, CyclotomicSum, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallRow {
    pub element: usize,
    pub codim: usize,
    pub mu_g: usize,
    /// `(-1)^{codim} [M](g)` when it reduces to a rational number.
    pub character_value: Option<Rational>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallReport {
    pub rows: Vec<WallRow>,
    /// `(1/|G|) sum_g (-1)^{codim} mu_g`.
    pub mu_average: Rational,
    pub reflection_group: bool,
}

impl WallReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    /// Irrational traces are reported rather than failing the computation.
    pub fn irrational(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.character_value.is_none()).map(|r| r.element).collect()
    }

    pub fn average_is_nonnegative_integer(&self) -> bool {
        self.mu_average.is_integer() && self.mu_average >= Rational::zero()
    }
}

impl OrbifoldModule {
    /// `tr(g | M_f) det(g)` as an exact cyclotomic sum.
    pub fn milnor_character(&self, g: usize) -> CyclotomicSum {
        let el = self.group.element(g);
        let det = el.det();
        self.untwisted()
            .basis()
            .iter()
            .fold(CyclotomicSum::zero(1), |acc, m| acc.add(&CyclotomicSum::phase(&(&el.monomial_phase(&m.0) * &det), Rational::one())))
    }

    /// Whether the group is generated by elements fixing a hyperplane.
    pub fn is_reflection_group(&self) -> bool {
        let reflections: Vec<usize> = (0..self.order()).filter(|&g| self.sectors[g].codim() == 1).collect();
        self.group.subgroup(&reflections).order() == self.order()
    }

    pub fn wall_character_check(&self) -> WallReport {
        let mut rows = Vec::new();
        let mut total = Rational::zero();
        for g in 0..self.order() {
            let s = &self.sectors[g];
            let sign = if s.codim() % 2 == 0 { Rational::one() } else { -Rational::one() };
            let value = self.milnor_character(g).to_rational().map(|v| v * &sign);
            let mu_g = s.dim();
            total += &sign * int(mu_g as i64);
            rows.push(WallRow {
                element: g,
                codim: s.codim(),
                mu_g,
                holds: value.as_ref() == Some(&int(mu_g as i64)),
                character_value: value,
            });
        }
        WallReport { rows, mu_average: total / int(self.order() as i64), reflection_group: self.is_reflection_group() }
    }
}
