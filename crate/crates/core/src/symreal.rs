//! Exact reals of the form (rational) · 2^(p/2) · π^(q/2).
//!
//! This class is closed under multiplication and division and contains
//! every Gamma value at integer and half-integer arguments, which covers
//! all prefactors appearing in the closed-form integral evaluations and
//! asymptotic constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Div, Mul};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicReal {
    coeff: BigRational,
    two_half_power: i64,
    pi_half_power: i64,
}

impl SymbolicReal {
    pub fn new(coeff: BigRational, two_half_power: i64, pi_half_power: i64) -> Self {
        SymbolicReal {
            coeff,
            two_half_power,
            pi_half_power,
        }
        .normalize()
    }

    /// Folds even powers of 2 into the rational coefficient, so equal
    /// values compare equal.
    fn normalize(mut self) -> Self {
        if self.coeff.is_zero() {
            self.two_half_power = 0;
            self.pi_half_power = 0;
            return self;
        }
        while self.two_half_power >= 2 {
            self.coeff *= BigRational::from_integer(BigInt::from(2));
            self.two_half_power -= 2;
        }
        while self.two_half_power < 0 {
            self.coeff /= BigRational::from_integer(BigInt::from(2));
            self.two_half_power += 2;
        }
        self
    }

    pub fn from_rational(r: BigRational) -> Self {
        SymbolicReal::new(r, 0, 0)
    }

    pub fn from_integer(n: i64) -> Self {
        SymbolicReal::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one() -> Self {
        SymbolicReal::from_integer(1)
    }

    pub fn sqrt_two() -> Self {
        SymbolicReal::new(BigRational::one(), 1, 0)
    }

    pub fn sqrt_pi() -> Self {
        SymbolicReal::new(BigRational::one(), 0, 1)
    }

    pub fn pi_pow(q_half: i64) -> Self {
        SymbolicReal::new(BigRational::one(), 0, q_half)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn two_half_power(&self) -> i64 {
        self.two_half_power
    }

    pub fn pi_half_power(&self) -> i64 {
        self.pi_half_power
    }

    /// Γ(x) for x = twice_x/2 > 0. Integer x gives (x−1)!; half-integer x
    /// gives the odd double-factorial multiple of √π.
    pub fn gamma_half(twice_x: u64) -> Self {
        assert!(twice_x > 0, "gamma_half needs a positive argument");
        if twice_x % 2 == 0 {
            let mut acc = BigRational::one();
            for j in 2..twice_x / 2 {
                acc *= BigRational::from_integer(BigInt::from(j));
            }
            SymbolicReal::from_rational(acc)
        } else {
            // Γ(m + 1/2) = (2m)! / (4^m m!) · √π
            let m = (twice_x - 1) / 2;
            let mut num = BigInt::one();
            for j in 1..=2 * m {
                num *= BigInt::from(j);
            }
            let mut den = BigInt::from(4u32).pow(m as u32);
            for j in 1..=m {
                den *= BigInt::from(j);
            }
            SymbolicReal::new(BigRational::new(num, den), 0, 1)
        }
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.to_f64().expect("rational representable as f64");
        c * 2f64.powf(self.two_half_power as f64 / 2.0)
            * std::f64::consts::PI.powf(self.pi_half_power as f64 / 2.0)
    }

    /// Natural log; only defined for positive values.
    pub fn ln(&self) -> f64 {
        assert!(self.is_positive(), "log of a non-positive symbolic real");
        let num = self.coeff.numer().magnitude();
        let den = self.coeff.denom().magnitude();
        crate::asympt::ln_biguint(num) - crate::asympt::ln_biguint(den)
            + self.two_half_power as f64 / 2.0 * std::f64::consts::LN_2
            + self.pi_half_power as f64 / 2.0 * std::f64::consts::PI.ln()
    }
}

impl Mul for SymbolicReal {
    type Output = SymbolicReal;
    fn mul(self, rhs: SymbolicReal) -> SymbolicReal {
        SymbolicReal::new(
            self.coeff * rhs.coeff,
            self.two_half_power + rhs.two_half_power,
            self.pi_half_power + rhs.pi_half_power,
        )
    }
}

impl Div for SymbolicReal {
    type Output = SymbolicReal;
    fn div(self, rhs: SymbolicReal) -> SymbolicReal {
        assert!(!rhs.coeff.is_zero(), "division by zero symbolic real");
        SymbolicReal::new(
            self.coeff / rhs.coeff,
            self.two_half_power - rhs.two_half_power,
            self.pi_half_power - rhs.pi_half_power,
        )
    }
}

impl Mul<BigRational> for SymbolicReal {
    type Output = SymbolicReal;
    fn mul(self, rhs: BigRational) -> SymbolicReal {
        SymbolicReal::new(self.coeff * rhs, self.two_half_power, self.pi_half_power)
    }
}

impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.two_half_power != 0 {
            write!(f, " * 2^({}/2)", self.two_half_power)?;
        }
        if self.pi_half_power != 0 {
            write!(f, " * pi^({}/2)", self.pi_half_power)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gamma_values() {
        assert_eq!(SymbolicReal::gamma_half(2), SymbolicReal::one()); // Γ(1)
        assert_eq!(SymbolicReal::gamma_half(8), SymbolicReal::from_integer(6)); // Γ(4)=3!
        assert_eq!(SymbolicReal::gamma_half(1), SymbolicReal::sqrt_pi()); // Γ(1/2)
        // Γ(3/2) = √π/2
        assert_eq!(
            SymbolicReal::gamma_half(3),
            SymbolicReal::new(rat(1, 2), 0, 1)
        );
        // Γ(5/2) = 3√π/4
        assert_eq!(
            SymbolicReal::gamma_half(5),
            SymbolicReal::new(rat(3, 4), 0, 1)
        );
        assert!((SymbolicReal::gamma_half(5).to_f64() - 1.329_340_388_179_137).abs() < 1e-14);
    }

    #[test]
    fn arithmetic_and_normalization() {
        let a = SymbolicReal::sqrt_two();
        let b = a.clone() * a.clone();
        assert_eq!(b, SymbolicReal::from_integer(2));
        let c = SymbolicReal::sqrt_pi() * SymbolicReal::sqrt_pi();
        assert_eq!(c, SymbolicReal::pi_pow(2));
        let d = SymbolicReal::new(rat(3, 4), 5, -3);
        let e = d.clone() / d.clone();
        assert_eq!(e, SymbolicReal::one());
        assert!((SymbolicReal::pi_pow(2).to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn ln_matches_f64() {
        let x = SymbolicReal::new(rat(7, 3), 3, -1);
        assert!((x.ln() - x.to_f64().ln()).abs() < 1e-12);
    }
}
