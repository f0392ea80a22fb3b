//! Gaussian rationals: exact complex numbers with rational real and
//! imaginary parts, the coefficient field for all series expansions.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QRat = Complex<BigRational>;

pub fn qr_zero() -> QRat {
    QRat::new(BigRational::zero(), BigRational::zero())
}

pub fn qr_one() -> QRat {
    QRat::new(BigRational::one(), BigRational::zero())
}

/// The imaginary unit i.
pub fn qr_i() -> QRat {
    QRat::new(BigRational::zero(), BigRational::one())
}

pub fn qr_int(n: i64) -> QRat {
    QRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
}

pub fn qr_ratio(num: i64, den: i64) -> QRat {
    QRat::new(
        BigRational::new(BigInt::from(num), BigInt::from(den)),
        BigRational::zero(),
    )
}

pub fn qr_real(r: BigRational) -> QRat {
    QRat::new(r, BigRational::zero())
}

/// i^n, exact.
pub fn qr_i_pow(n: u32) -> QRat {
    match n % 4 {
        0 => qr_one(),
        1 => qr_i(),
        2 => -qr_one(),
        _ => -qr_i(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let a = qr_ratio(1, 2) + qr_i() * qr_ratio(3, 4);
        let b = qr_int(2) - qr_i();
        let prod = a.clone() * b.clone();
        let back = prod / b;
        assert_eq!(back, a);
        assert_eq!(qr_i_pow(2), qr_int(-1));
        assert_eq!(qr_i_pow(7), -qr_i());
        assert_eq!(qr_i() * qr_i() * qr_i() * qr_i(), qr_one());
    }
}
