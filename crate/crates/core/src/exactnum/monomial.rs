use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclo::CycloNumber;
use super::qratfun::QRatFun;

/// Reduce a rational number of turns into `[0, 1)`.
pub fn reduce_turns(t: Rational64) -> Rational64 {
    let d = *t.denom();
    Rational64::new(t.numer().rem_euclid(d), d)
}

/// A root of unity times a rational power of `q`: `exp(2 pi i * turns) * q^qexp`.
///
/// Eigenvalues, character values at torus points and local-factor coefficients
/// all live in this multiplicative group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QMonomial {
    turns: Rational64,
    qexp: Rational64,
}

impl QMonomial {
    pub fn new(turns: Rational64, qexp: Rational64) -> Self {
        QMonomial { turns: reduce_turns(turns), qexp }
    }

    pub fn one() -> Self {
        Self::new(Rational64::zero(), Rational64::zero())
    }

    pub fn q_pow(e: Rational64) -> Self {
        Self::new(Rational64::zero(), e)
    }

    pub fn root_of_unity(turns: Rational64) -> Self {
        Self::new(turns, Rational64::zero())
    }

    pub fn minus_one() -> Self {
        Self::root_of_unity(Rational64::new(1, 2))
    }

    pub fn turns(&self) -> Rational64 {
        self.turns
    }

    pub fn qexp(&self) -> Rational64 {
        self.qexp
    }

    pub fn is_one(&self) -> bool {
        self.turns.is_zero() && self.qexp.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.turns + o.turns, self.qexp + o.qexp)
    }

    pub fn inv(&self) -> Self {
        Self::new(-self.turns, -self.qexp)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn neg(&self) -> Self {
        self.mul(&Self::minus_one())
    }

    pub fn pow(&self, e: Rational64) -> Self {
        debug_assert!(e.is_integer() || self.turns.is_zero(), "fractional power of a non-real root");
        Self::new(self.turns * e, self.qexp * e)
    }

    pub fn powi(&self, e: i64) -> Self {
        self.pow(Rational64::from_integer(e))
    }

    pub fn conj(&self) -> Self {
        Self::new(-self.turns, self.qexp)
    }

    /// All `k`-th roots of this monomial.
    pub fn roots(&self, k: u32) -> Vec<Self> {
        let k = k as i64;
        (0..k)
            .map(|j| Self::new((self.turns + Rational64::from_integer(j)) / k, self.qexp / k))
            .collect()
    }

    /// Order of the root-of-unity part.
    pub fn torsion_order(&self) -> i64 {
        *self.turns.denom()
    }

    pub fn to_ratfun(&self) -> QRatFun {
        use super::field::Field;
        QRatFun::constant(CycloNumber::from_turns(self.turns)).mul(&QRatFun::q_pow(self.qexp))
    }

    pub fn to_complex(&self, q0: f64) -> (f64, f64) {
        let r = q0.powf(*self.qexp.numer() as f64 / *self.qexp.denom() as f64);
        let t = std::f64::consts::TAU * (*self.turns.numer() as f64 / *self.turns.denom() as f64);
        (r * t.cos(), r * t.sin())
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = if self.turns.is_zero() {
            String::new()
        } else if self.turns == Rational64::new(1, 2) {
            "-".to_string()
        } else {
            format!("e({}/{})", self.turns.numer(), self.turns.denom())
        };
        let qpart = if self.qexp.is_zero() {
            String::new()
        } else if self.qexp.is_one() {
            "q".to_string()
        } else if self.qexp.is_integer() && self.qexp.is_positive() {
            format!("q^{}", self.qexp)
        } else {
            format!("q^({})", self.qexp)
        };
        match (root.as_str(), qpart.is_empty()) {
            ("", true) => write!(f, "1"),
            ("-", true) => write!(f, "-1"),
            (r, true) => write!(f, "{r}"),
            ("", false) => write!(f, "{qpart}"),
            ("-", false) => write!(f, "-{qpart}"),
            (r, false) => write!(f, "{r}*{qpart}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_multiply_back() {
        let m = QMonomial::new(Rational64::new(1, 3), Rational64::from_integer(2));
        for r in m.roots(3) {
            assert_eq!(r.powi(3), m);
        }
        assert_eq!(m.roots(3).len(), 3);
    }

    #[test]
    fn display() {
        assert_eq!(QMonomial::q_pow(Rational64::new(-1, 2)).neg().to_string(), "-q^(-1/2)");
        assert_eq!(QMonomial::one().to_string(), "1");
    }
}
