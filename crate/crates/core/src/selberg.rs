//! Closed-form evaluations of squared-Vandermonde integrals against
//! Hermite and Laguerre weights, their low-order polynomial moments, and
//! an independent Gaussian-quadrature oracle that is exact (up to
//! rounding) for polynomial integrands.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symreal::SymbolicReal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightKind {
    Hermite,
    Laguerre,
}

/// The integration weight: ∏ e^{−x_j²/2} over R^k, or ∏ x_j^{α−1}e^{−x_j}
/// over [0,∞)^k; every integrand additionally carries the squared
/// Vandermonde ∏_{j<m}(x_m−x_j)².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weight {
    pub kind: WeightKind,
    /// Laguerre parameter; must be a positive half-integer. Unused for
    /// Hermite.
    pub alpha: Rational64,
    pub k: usize,
}

impl Weight {
    pub fn hermite(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("k must be at least 1"));
        }
        Ok(Weight {
            kind: WeightKind::Hermite,
            alpha: Rational64::new(0, 1),
            k,
        })
    }

    pub fn laguerre(k: usize, alpha: Rational64) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("k must be at least 1"));
        }
        if alpha <= Rational64::new(0, 1) || *alpha.denom() > 2 {
            return Err(Error::domain(
                "alpha must be a positive half-integer",
            ));
        }
        Ok(Weight {
            kind: WeightKind::Laguerre,
            alpha,
            k,
        })
    }

    fn twice_alpha(&self) -> u64 {
        (self.alpha * 2).to_integer() as u64
    }
}

/// ⟨1⟩: the integral of the bare squared Vandermonde against the weight.
pub fn selberg_one(w: &Weight) -> SymbolicReal {
    let k = w.k as u64;
    match w.kind {
        WeightKind::Hermite => {
            // (2π)^{k/2} · ∏_{j=1}^k j!
            let mut acc = SymbolicReal::new(
                BigRational::from_integer(BigInt::from(1)),
                k as i64,
                k as i64,
            );
            for j in 1..=k {
                acc = acc
                    * SymbolicReal::from_rational(BigRational::from_integer(
                        crate::count::factorial(j).into(),
                    ));
            }
            acc
        }
        WeightKind::Laguerre => {
            // ∏_{j=0}^{k−1} (j+1)! Γ(j+α)
            let mut acc = SymbolicReal::one();
            for j in 0..k {
                acc = acc
                    * SymbolicReal::from_rational(BigRational::from_integer(
                        crate::count::factorial(j + 1).into(),
                    ))
                    * SymbolicReal::gamma_half(2 * j + w.twice_alpha());
            }
            acc
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HermiteMoment {
    SumSq,
    SqOfSum,
    Sum4th,
    SqOfSumSq,
    Schur11,
    Schur2,
}

/// ⟨moment⟩ / ⟨1⟩ for the Hermite weight, as an exact rational in k.
pub fn hermite_moment(k: usize, which: HermiteMoment) -> Rational64 {
    let k = k as i64;
    match which {
        HermiteMoment::SumSq => Rational64::from_integer(k * k),
        HermiteMoment::SqOfSum => Rational64::from_integer(k),
        HermiteMoment::Sum4th => Rational64::from_integer(k * (2 * k * k + 1)),
        HermiteMoment::SqOfSumSq => Rational64::from_integer(k * k * (k * k + 2)),
        HermiteMoment::Schur11 => Rational64::from_integer(-(k * (k - 1) / 2)),
        HermiteMoment::Schur2 => Rational64::from_integer(k * (k + 1) / 2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LaguerreMoment {
    Sum,
    SumSq,
    SqOfSum,
}

/// ⟨moment⟩ / ⟨1⟩ for the Laguerre weight with parameter α.
pub fn laguerre_moment(k: usize, alpha: Rational64, which: LaguerreMoment) -> Rational64 {
    let kq = Rational64::from_integer(k as i64);
    let one = Rational64::from_integer(1);
    let base = kq * (kq - one + alpha);
    match which {
        LaguerreMoment::Sum => base,
        LaguerreMoment::SumSq => base * (kq * Rational64::from_integer(2) + alpha - one),
        LaguerreMoment::SqOfSum => base * (one + kq * (kq + alpha - one)),
    }
}

/// Symmetric polynomial integrands for the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentPoly {
    One,
    Sum,
    SumSq,
    SqOfSum,
    Sum4th,
    SqOfSumSq,
    Schur11,
    Schur2,
}

impl MomentPoly {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let e1: f64 = x.iter().sum();
        let p2: f64 = x.iter().map(|v| v * v).sum();
        match self {
            MomentPoly::One => 1.0,
            MomentPoly::Sum => e1,
            MomentPoly::SumSq => p2,
            MomentPoly::SqOfSum => e1 * e1,
            MomentPoly::Sum4th => x.iter().map(|v| v.powi(4)).sum(),
            MomentPoly::SqOfSumSq => p2 * p2,
            MomentPoly::Schur11 => (e1 * e1 - p2) / 2.0,
            MomentPoly::Schur2 => (e1 * e1 + p2) / 2.0,
        }
    }

    /// Largest exponent of a single variable.
    pub fn per_variable_degree(&self) -> usize {
        match self {
            MomentPoly::One => 0,
            MomentPoly::Sum => 1,
            MomentPoly::SumSq | MomentPoly::SqOfSum | MomentPoly::Schur11 | MomentPoly::Schur2 => 2,
            MomentPoly::Sum4th | MomentPoly::SqOfSumSq => 4,
        }
    }
}

/// Node count sufficient for exactness on `poly`·Vandermonde², with a
/// margin of two.
pub fn recommended_nodes(w: &Weight, poly: MomentPoly) -> usize {
    let maxdeg = poly.per_variable_degree() + 2 * (w.k - 1);
    (maxdeg + 1).div_ceil(2) + 2
}

fn gauss_rule(w: &Weight, nodes: usize) -> (Vec<f64>, Vec<f64>) {
    let m = nodes;
    let mut jac = DMatrix::<f64>::zeros(m, m);
    let mu0;
    match w.kind {
        WeightKind::Hermite => {
            mu0 = (2.0 * std::f64::consts::PI).sqrt();
            for i in 1..m {
                let b = (i as f64).sqrt();
                jac[(i, i - 1)] = b;
                jac[(i - 1, i)] = b;
            }
        }
        WeightKind::Laguerre => {
            // generalized Gauss–Laguerre for weight x^a e^{−x}, a = α−1
            let af = *w.alpha.numer() as f64 / *w.alpha.denom() as f64 - 1.0;
            mu0 = SymbolicReal::gamma_half(w.twice_alpha()).to_f64();
            for i in 0..m {
                jac[(i, i)] = 2.0 * i as f64 + af + 1.0;
                if i > 0 {
                    let b = (i as f64 * (i as f64 + af)).sqrt();
                    jac[(i, i - 1)] = b;
                    jac[(i - 1, i)] = b;
                }
            }
        }
    }
    let eig = nalgebra::SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Tensorized Gaussian quadrature of poly·Vandermonde²·weight. Exact for
/// polynomials whenever the node count covers the degree; errors out
/// otherwise.
pub fn quadrature_oracle(w: &Weight, poly: MomentPoly, nodes: usize) -> Result<f64> {
    let maxdeg = poly.per_variable_degree() + 2 * (w.k - 1);
    if 2 * nodes < maxdeg + 1 {
        return Err(Error::domain(format!(
            "{nodes} nodes cannot integrate per-variable degree {maxdeg} exactly"
        )));
    }
    let (xs, ws) = gauss_rule(w, nodes);
    let k = w.k;
    let mut idx = vec![0usize; k];
    let mut total = 0.0;
    let mut point = vec![0.0f64; k];
    loop {
        let mut wt = 1.0;
        for j in 0..k {
            point[j] = xs[idx[j]];
            wt *= ws[idx[j]];
        }
        let mut vdm = 1.0;
        for j in 0..k {
            for m in j + 1..k {
                vdm *= point[m] - point[j];
            }
        }
        total += wt * vdm * vdm * poly.eval(&point);
        let mut j = 0;
        loop {
            if j == k {
                return Ok(total);
            }
            idx[j] += 1;
            if idx[j] < nodes {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn half() -> Rational64 {
        Rational64::new(1, 2)
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn normalization_closed_forms() {
        // k=1 Gaussian, k=2 gives 4π
        let h1 = selberg_one(&Weight::hermite(1).unwrap());
        assert_eq!(h1, SymbolicReal::new(BigRational::from_integer(1.into()), 1, 1));
        let h2 = selberg_one(&Weight::hermite(2).unwrap());
        assert_eq!(
            h2,
            SymbolicReal::new(BigRational::from_integer(4.into()), 0, 2)
        );
        assert!((h2.to_f64() - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        let l1 = selberg_one(&Weight::laguerre(1, half()).unwrap());
        assert_eq!(l1, SymbolicReal::sqrt_pi());
    }

    #[test]
    fn moment_ratio_table() {
        assert_eq!(hermite_moment(3, HermiteMoment::SumSq), Rational64::from_integer(9));
        assert_eq!(hermite_moment(2, HermiteMoment::Schur11), Rational64::from_integer(-1));
        assert_eq!(hermite_moment(1, HermiteMoment::SqOfSum), Rational64::from_integer(1));
        assert_eq!(
            laguerre_moment(1, half(), LaguerreMoment::Sum),
            Rational64::new(1, 2)
        );
        assert_eq!(
            laguerre_moment(2, half(), LaguerreMoment::Sum),
            Rational64::from_integer(3)
        );
        assert_eq!(
            laguerre_moment(1, half(), LaguerreMoment::SumSq),
            Rational64::new(3, 4)
        );
    }

    #[test]
    fn schur_corollary_rational_identities() {
        // s_(1,1) = ((Σx)² − Σx²)/2 and s_(2) = ((Σx)² + Σx²)/2 as
        // moment identities in k
        for k in 1..=6usize {
            let sum_sq = hermite_moment(k, HermiteMoment::SumSq);
            let sq_of_sum = hermite_moment(k, HermiteMoment::SqOfSum);
            let two = Rational64::from_integer(2);
            assert_eq!((sq_of_sum - sum_sq) / two, hermite_moment(k, HermiteMoment::Schur11));
            assert_eq!((sq_of_sum + sum_sq) / two, hermite_moment(k, HermiteMoment::Schur2));
        }
    }

    #[test]
    fn oracle_matches_gaussian_moments() {
        let w = Weight::hermite(1).unwrap();
        let norm = (2.0 * std::f64::consts::PI).sqrt();
        assert!(rel_close(quadrature_oracle(&w, MomentPoly::One, 4).unwrap(), norm, 1e-13));
        assert!(rel_close(quadrature_oracle(&w, MomentPoly::SumSq, 4).unwrap(), norm, 1e-12));
        assert!(rel_close(
            quadrature_oracle(&w, MomentPoly::Sum4th, 5).unwrap(),
            3.0 * norm,
            1e-12
        ));
        assert!(quadrature_oracle(&w, MomentPoly::Sum4th, 2).is_err());
    }

    #[test]
    fn oracle_matches_closed_forms() {
        for k in 1..=3usize {
            let w = Weight::hermite(k).unwrap();
            let one = selberg_one(&w).to_f64();
            for (poly, which) in [
                (MomentPoly::SumSq, HermiteMoment::SumSq),
                (MomentPoly::SqOfSum, HermiteMoment::SqOfSum),
                (MomentPoly::Sum4th, HermiteMoment::Sum4th),
                (MomentPoly::SqOfSumSq, HermiteMoment::SqOfSumSq),
                (MomentPoly::Schur11, HermiteMoment::Schur11),
                (MomentPoly::Schur2, HermiteMoment::Schur2),
            ] {
                let nodes = recommended_nodes(&w, poly);
                let got = quadrature_oracle(&w, poly, nodes).unwrap();
                let want = hermite_moment(k, which).to_f64().unwrap() * one;
                assert!(rel_close(got, want, 1e-9), "hermite k={k} {poly:?}");
            }
            for alpha in [half(), Rational64::new(3, 2)] {
                let w = Weight::laguerre(k, alpha).unwrap();
                let one = selberg_one(&w).to_f64();
                for (poly, which) in [
                    (MomentPoly::Sum, LaguerreMoment::Sum),
                    (MomentPoly::SumSq, LaguerreMoment::SumSq),
                    (MomentPoly::SqOfSum, LaguerreMoment::SqOfSum),
                ] {
                    let nodes = recommended_nodes(&w, poly);
                    let got = quadrature_oracle(&w, poly, nodes).unwrap();
                    let want = laguerre_moment(k, alpha, which).to_f64().unwrap() * one;
                    assert!(rel_close(got, want, 1e-9), "laguerre k={k} α={alpha} {poly:?}");
                }
            }
        }
    }

    #[test]
    fn invalid_weights_rejected() {
        assert!(Weight::laguerre(2, Rational64::new(-1, 2)).is_err());
        assert!(Weight::laguerre(2, Rational64::new(1, 3)).is_err());
        assert!(Weight::hermite(0).is_err());
    }
}
