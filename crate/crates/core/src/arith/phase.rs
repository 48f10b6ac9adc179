use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::Zero;

use super::{fmt_rat, frac, rat, Rational};

/// A root of unity `exp(2 pi i theta)` stored by its angle `theta` in `[0,1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct UnitPhase(Rational);

impl UnitPhase {
    pub fn new(theta: Rational) -> Self {
        UnitPhase(frac(&theta))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(rat(n, d))
    }

    pub fn one() -> Self {
        UnitPhase(Rational::zero())
    }

    /// The phase of `-1`.
    pub fn minus_one() -> Self {
        Self::from_ratio(1, 2)
    }

    /// `(-1)^k` for a parity bit.
    pub fn sign(k: u8) -> Self {
        if k % 2 == 0 {
            Self::one()
        } else {
            Self::minus_one()
        }
    }

    pub fn theta(&self) -> &Rational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    pub fn inv(&self) -> Self {
        Self::new(-&self.0)
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(&self.0 * Rational::from_integer(k.into()))
    }

    /// Principal square root: halves the angle.
    pub fn sqrt(&self) -> Self {
        UnitPhase(&self.0 / Rational::from_integer(2.into()))
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        super::denom_u64(&self.0)
    }
}

impl Default for UnitPhase {
    fn default() -> Self {
        Self::one()
    }
}

impl fmt::Display for UnitPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta={}", fmt_rat(&self.0))
    }
}

impl Mul for &UnitPhase {
    type Output = UnitPhase;
    fn mul(self, rhs: &UnitPhase) -> UnitPhase {
        UnitPhase::new(&self.0 + &rhs.0)
    }
}

impl Mul for UnitPhase {
    type Output = UnitPhase;
    fn mul(self, rhs: UnitPhase) -> UnitPhase {
        &self * &rhs
    }
}

// Angles add under multiplication; `+` is kept as an alias for readability
// when accumulating exponents.
impl Add for &UnitPhase {
    type Output = UnitPhase;
    fn add(self, rhs: &UnitPhase) -> UnitPhase {
        self * rhs
    }
}

impl Neg for &UnitPhase {
    type Output = UnitPhase;
    fn neg(self) -> UnitPhase {
        self.inv()
    }
}

pub fn phase_mul(a: &UnitPhase, b: &UnitPhase) -> UnitPhase {
    a * b
}

pub fn phase_sqrt(a: &UnitPhase) -> UnitPhase {
    a.sqrt()
}
