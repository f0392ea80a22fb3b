//! First- and second-order asymptotic estimates for confined walk counts,
//! the saddle-point expansion constants of the step generating function,
//! and convergence diagnostics against exact counts.
//!
//! All estimates are computed and stored as natural logs: the counts grow
//! like 2^{kn} and overflow doubles long before the interesting range.

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::count::{confined_total_dp, reflection_count};
use crate::error::{Error, Result};
use crate::model::{reachable, ChamberPoint, Model, ModelKind};
use crate::symreal::SymbolicReal;

use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    First,
    Second,
}

/// Expansion constants of log|S(e^{iφ})| at φ = 0: the quadratic
/// coefficient Λ and the two quartic coefficients Ω (of (Σφ²)²/8) and
/// Ψ (of Σφ⁴/4!).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelConstants {
    pub lambda: Rational64,
    pub omega: Rational64,
    pub psi: Rational64,
}

pub fn model_constants(model: Model) -> ModelConstants {
    let k = model.k as i64;
    match model.kind {
        ModelKind::LockStep => ModelConstants {
            lambda: Rational64::new(1, 1),
            omega: Rational64::new(0, 1),
            psi: Rational64::new(-2, 1),
        },
        ModelKind::RandomTurns => ModelConstants {
            lambda: Rational64::new(1, k),
            omega: Rational64::new(-1, k * k),
            psi: Rational64::new(1, k),
        },
    }
}

/// ℓ = ⌊k/2⌋ and α = 1/2 + k − 2ℓ, the shape parameters of the
/// free-endpoint formulas (α = 1/2 for even k, 3/2 for odd k).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeEndpointShape {
    pub ell: usize,
    pub alpha: Rational64,
}

pub fn free_shape(k: usize) -> FreeEndpointShape {
    let ell = k / 2;
    FreeEndpointShape {
        ell,
        alpha: Rational64::new(1, 2) + Rational64::from_integer((k - 2 * ell) as i64),
    }
}

/// Natural log of a positive big integer, exact to double rounding.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

// ---- finite-difference recovery of Λ, Ω, Ψ ----

/// cos(x) − 1 by Taylor series; absolute error is relative to the tiny
/// result, not to 1, which is what makes the fourth-difference stencils
/// usable in doubles.
fn cos_minus_one(x: f64) -> f64 {
    let x2 = x * x;
    -x2 / 2.0 * (1.0 - x2 / 12.0 * (1.0 - x2 / 30.0 * (1.0 - x2 / 56.0)))
}

/// log|S(e^{iφ})| − log S(1), stable for small φ.
fn log_s_drop(model: Model, phi: &[f64]) -> f64 {
    match model.kind {
        ModelKind::LockStep => phi.iter().map(|&p| cos_minus_one(p).ln_1p()).sum(),
        ModelKind::RandomTurns => {
            let s: f64 = phi.iter().map(|&p| cos_minus_one(p)).sum();
            (s / model.k as f64).ln_1p()
        }
    }
}

/// Recovers Λ, Ω, Ψ from finite differences of log|S| along the axis and
/// diagonal directions and returns the worst absolute deviation from the
/// closed-form constants. For k = 1 the two quartic constants only enter
/// through the combination 3Ω + Ψ, which is what gets compared.
pub fn verify_constants_fd(model: Model, h: f64) -> Result<f64> {
    if !(h > 0.0 && h <= 1e-2) {
        return Err(Error::domain("step size must satisfy 0 < h <= 1e-2"));
    }
    let k = model.k;
    let axis = |t: f64| {
        let mut phi = vec![0.0; k];
        phi[0] = t;
        log_s_drop(model, &phi)
    };
    let diag = |t: f64| log_s_drop(model, &vec![t; k]);
    // centered stencils of order h^4 for even functions with f(0)=0
    let d2 = |f: &dyn Fn(f64) -> f64| (-2.0 * f(2.0 * h) + 32.0 * f(h)) / (12.0 * h * h);
    let d4 = |f: &dyn Fn(f64) -> f64| {
        (-2.0 * f(3.0 * h) + 24.0 * f(2.0 * h) - 78.0 * f(h)) / (6.0 * h.powi(4))
    };
    let c = model_constants(model);
    let lambda = c.lambda.to_f64().unwrap();
    let omega = c.omega.to_f64().unwrap();
    let psi = c.psi.to_f64().unwrap();

    let lam_axis = -d2(&axis);
    let lam_diag = -d2(&diag) / k as f64;
    let quartic_axis = d4(&axis); // 3Ω + Ψ
    let mut dev: f64 = (lam_axis - lambda).abs().max((lam_diag - lambda).abs());
    if k == 1 {
        dev = dev.max((quartic_axis - (3.0 * omega + psi)).abs());
    } else {
        let quartic_diag = d4(&diag); // 3Ωk² + Ψk
        let kf = k as f64;
        let omega_fd = (quartic_diag - kf * quartic_axis) / (3.0 * kf * (kf - 1.0));
        let psi_fd = quartic_axis - 3.0 * omega_fd;
        dev = dev.max((omega_fd - omega).abs()).max((psi_fd - psi).abs());
    }
    Ok(dev)
}

// ---- asymptotic estimates ----

fn vandermonde_int(x: &[i64]) -> BigInt {
    let mut acc = BigInt::from(1);
    for j in 0..x.len() {
        for m in j + 1..x.len() {
            acc *= BigInt::from(x[m] - x[j]);
        }
    }
    acc
}

fn big_rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("bracket coefficient fits in f64")
}

/// Log of the estimate for the confined count u → v.
pub fn fixed_endpoint_asymptotic(
    model: Model,
    u: &ChamberPoint,
    v: &ChamberPoint,
    n: u64,
    order: Order,
) -> Result<f64> {
    if u.k() != model.k || v.k() != model.k {
        return Err(Error::DimensionMismatch {
            expected: model.k,
            got: if u.k() != model.k { u.k() } else { v.k() },
        });
    }
    if n == 0 || !reachable(model, u, v, n) {
        return Err(Error::domain(
            "estimate undefined when no walk of this length exists",
        ));
    }
    let k = model.k;
    let c = model_constants(model);
    let lambda = c.lambda.to_f64().unwrap();

    // number of contributing maxima of |S| on the torus
    let saddle_count = match model.kind {
        ModelKind::LockStep => 1i64 << k,
        ModelKind::RandomTurns => 2,
    };
    let vdm = vandermonde_int(u.coords()) * vandermonde_int(v.coords());
    if vdm.is_zero() || vdm.is_negative() {
        return Err(Error::internal("chamber points must give a positive product"));
    }
    // saddle count · (2π)^{−k/2}
    let mut pref = SymbolicReal::from_integer(saddle_count)
        * SymbolicReal::new(
            BigRational::from_integer(BigInt::from(1)),
            -(k as i64),
            -(k as i64),
        );
    let mut fact = BigRational::from_integer(BigInt::from(1));
    for j in 1..=k as u64 {
        fact *= BigRational::from_integer(crate::count::factorial(j - 1).into());
    }
    pref = pref * (BigRational::from_integer(vdm) / fact);

    let mut log = n as f64 * (model.steps_per_point() as f64).ln()
        - (k * k) as f64 / 2.0 * ((n as f64) * lambda).ln()
        + pref.ln();

    if order == Order::Second {
        let su: i64 = u.coords().iter().sum();
        let sv: i64 = v.coords().iter().sum();
        let squ: i64 = u.coords().iter().map(|x| x * x).sum();
        let sqv: i64 = v.coords().iter().map(|x| x * x).sum();
        let ki = k as i64;
        let lam = big_rat(*c.lambda.numer(), *c.lambda.denom());
        let om = big_rat(*c.omega.numer(), *c.omega.denom());
        let ps = big_rat(*c.psi.numer(), *c.psi.denom());
        // endpoint statistics term
        let stat = (big_rat(su * sv, ki) - big_rat(squ + sqv, 2)) / lam.clone();
        // constant term from the quartic part of the saddle expansion
        let quart = big_rat(ki, 8) / (lam.clone() * lam)
            * (big_rat(ki * (ki * ki + 2), 1) * om + big_rat(2 * ki * ki + 1, 3) * ps);
        let c2 = rational_to_f64(&(stat + quart));
        log += (c2 / n as f64).ln_1p();
    }
    Ok(log)
}

/// Product ∏_{j=0}^{ℓ} j!·Γ(j+α)/√π, the exact constant in the
/// free-endpoint prefactor.
pub fn free_prefactor_product(k: usize) -> SymbolicReal {
    let shape = free_shape(k);
    let twice_alpha = (shape.alpha * 2).to_integer() as u64;
    let mut acc = SymbolicReal::one();
    for j in 0..=shape.ell as u64 {
        let fact = SymbolicReal::from_rational(BigRational::from_integer(
            crate::count::factorial(j).into(),
        ));
        acc = acc * fact * SymbolicReal::gamma_half(2 * j + twice_alpha)
            / SymbolicReal::sqrt_pi();
    }
    acc
}

/// Log of the estimate for the confined count from u with a free
/// endpoint.
pub fn free_endpoint_asymptotic(
    model: Model,
    u: &ChamberPoint,
    n: u64,
    order: Order,
) -> Result<f64> {
    if u.k() != model.k {
        return Err(Error::DimensionMismatch {
            expected: model.k,
            got: u.k(),
        });
    }
    if n == 0 {
        return Err(Error::domain("estimate requires at least one step"));
    }
    let k = model.k;
    let shape = free_shape(k);
    let c = model_constants(model);
    let lambda = c.lambda.to_f64().unwrap();

    let vdm = vandermonde_int(u.coords());
    let mut fact = BigRational::from_integer(BigInt::from(1));
    for j in 1..=k as u64 {
        fact *= BigRational::from_integer(crate::count::factorial(j).into());
    }
    // 2^{k mod 2} · 4^ℓ · π^{−ℓ/2} · ∏ j!Γ(j+α)/√π · V(u)/∏ j!
    let pref = SymbolicReal::new(
        BigRational::from_integer(BigInt::from(1) << (2 * shape.ell + k % 2)),
        0,
        -(shape.ell as i64),
    ) * free_prefactor_product(k)
        * (BigRational::from_integer(vdm) / fact);

    let binom2 = (k * (k - 1) / 2) as f64;
    let mut log = n as f64 * (model.steps_per_point() as f64).ln()
        - binom2 / 2.0 * ((n as f64) * lambda).ln()
        + pref.ln();

    if order == Order::Second && shape.ell > 0 {
        let ki = k as i64;
        let lam = big_rat(*c.lambda.numer(), *c.lambda.denom());
        let om = big_rat(*c.omega.numer(), *c.omega.denom());
        let ps = big_rat(*c.psi.numer(), *c.psi.denom());
        let alpha = big_rat(*shape.alpha.numer(), *shape.alpha.denom());
        let ell = big_rat(shape.ell as i64, 1);
        let cla = ell.clone() * (ell + alpha.clone() - big_rat(1, 1));
        let s2: i64 = {
            let uc = u.coords();
            let mut acc = 0i64;
            for j in 0..k {
                for m in j + 1..k {
                    acc += (uc[m] - uc[j]).pow(2);
                }
            }
            acc
        };
        let kappa = BigRational::new(
            crate::count::factorial(ki as u64 - 2).into(),
            crate::count::factorial(ki as u64 + 1).into(),
        );
        let xi = -kappa * big_rat(s2, 1) - big_rat(1, 12)
            + om * (big_rat(1, 1) + cla.clone()) / (big_rat(2, 1) * lam.clone())
            + ps * (big_rat(2 * shape.ell as i64, 1) + alpha - big_rat(1, 1))
                / (big_rat(12, 1) * lam.clone());
        // contribution of the secondary maxima of |S| on the torus
        let m1 = match model.kind {
            ModelKind::LockStep => -big_rat(1, 4),
            ModelKind::RandomTurns if k == 2 => {
                let phase = (n as i64 + u.coords().iter().sum::<i64>()).rem_euclid(2);
                if phase == 0 {
                    -big_rat(1, 4)
                } else {
                    big_rat(1, 4)
                }
            }
            ModelKind::RandomTurns => BigRational::from_integer(BigInt::from(0)),
        };
        let ctot = rational_to_f64(&(cla / lam * (xi + m1)));
        log += (ctot / n as f64).ln_1p();
    }
    Ok(log)
}

// ---- convergence diagnostics ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    Fixed(ChamberPoint),
    Free,
}

#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub n: u64,
    pub exact: BigUint,
    pub log_estimate: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of log(rel_error) vs log(n), fitted on the
    /// upper half of the ladder to discard the pre-asymptotic transient.
    pub slope: Option<f64>,
}

pub(crate) fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

pub fn convergence_report(
    model: Model,
    u: &ChamberPoint,
    endpoint: &Endpoint,
    n_list: &[u64],
    order: Order,
) -> Result<ConvergenceReport> {
    if n_list.is_empty() {
        return Err(Error::domain("empty ladder"));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("ladder must be strictly increasing"));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let (exact, log_estimate) = match endpoint {
            Endpoint::Fixed(v) => (
                reflection_count(model, u, v, n)?,
                fixed_endpoint_asymptotic(model, u, v, n, order)?,
            ),
            Endpoint::Free => (
                confined_total_dp(model, u, n),
                free_endpoint_asymptotic(model, u, n, order)?,
            ),
        };
        if exact.is_zero() {
            return Err(Error::domain(format!(
                "exact count is zero at n={n}; pick a ladder along the support"
            )));
        }
        let rel_error = ((ln_biguint(&exact) - log_estimate).exp() - 1.0).abs();
        rows.push(ConvergenceRow {
            n,
            exact,
            log_estimate,
            rel_error,
        });
    }
    let slope = if rows.len() >= 2 {
        let take = ((rows.len() + 1) / 2).max(2);
        let fit = &rows[rows.len() - take..];
        let xs: Vec<f64> = fit.iter().map(|r| (r.n as f64).ln()).collect();
        let ys: Vec<f64> = fit.iter().map(|r| r.rel_error.max(1e-300).ln()).collect();
        Some(ols_slope(&xs, &ys))
    } else {
        None
    };
    Ok(ConvergenceReport { rows, slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn pt(c: &[i64]) -> ChamberPoint {
        ChamberPoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn constants_table() {
        let ls = model_constants(Model::lock_step(5).unwrap());
        assert_eq!(ls.lambda, Rational64::new(1, 1));
        assert_eq!(ls.omega, Rational64::new(0, 1));
        assert_eq!(ls.psi, Rational64::new(-2, 1));
        let rt = model_constants(Model::random_turns(3).unwrap());
        assert_eq!(rt.lambda, Rational64::new(1, 3));
        assert_eq!(rt.omega, Rational64::new(-1, 9));
        assert_eq!(rt.psi, Rational64::new(1, 3));
        let rt1 = model_constants(Model::random_turns(1).unwrap());
        assert_eq!(rt1.lambda, Rational64::new(1, 1));
        assert_eq!(rt1.omega, Rational64::new(-1, 1));
        assert_eq!(rt1.psi, Rational64::new(1, 1));
    }

    #[test]
    fn shape_parameters() {
        assert_eq!(free_shape(2), FreeEndpointShape { ell: 1, alpha: Rational64::new(1, 2) });
        assert_eq!(free_shape(3), FreeEndpointShape { ell: 1, alpha: Rational64::new(3, 2) });
        assert_eq!(free_shape(4), FreeEndpointShape { ell: 2, alpha: Rational64::new(1, 2) });
    }

    #[test]
    fn fd_recovery_within_tolerance() {
        for k in 1..=3 {
            for model in [Model::lock_step(k).unwrap(), Model::random_turns(k).unwrap()] {
                let dev = verify_constants_fd(model, 1e-3).unwrap();
                assert!(dev < 1e-5, "{model:?}: deviation {dev}");
            }
        }
    }

    #[test]
    fn ln_biguint_accuracy() {
        let x = BigUint::from(3u32).pow(500);
        let expect = 500.0 * 3f64.ln();
        assert!((ln_biguint(&x) - expect).abs() < 1e-9);
        assert_eq!(ln_biguint(&BigUint::from(1u32)), 0.0);
    }

    #[test]
    fn free_prefactor_exact_half_at_k2() {
        assert_eq!(
            free_prefactor_product(2),
            SymbolicReal::from_rational(BigRational::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn free_estimate_closed_form_k2() {
        // u=(0,2): first-order estimate is 4^n · 2/sqrt(pi·n)
        let model = Model::lock_step(2).unwrap();
        let u = pt(&[0, 2]);
        for n in [10u64, 99, 1000] {
            let got = free_endpoint_asymptotic(model, &u, n, Order::First).unwrap();
            let want = n as f64 * 4f64.ln() + (2.0 / (std::f64::consts::PI * n as f64).sqrt()).ln();
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn fixed_estimate_symmetry_and_domain() {
        let model = Model::random_turns(2).unwrap();
        let u = pt(&[0, 1]);
        let v = pt(&[1, 4]);
        let n = 100;
        let a = fixed_endpoint_asymptotic(model, &u, &v, n, Order::Second).unwrap();
        let b = fixed_endpoint_asymptotic(model, &v, &u, n, Order::Second).unwrap();
        assert!((a - b).abs() < 1e-12);
        // unreachable: parity fails
        assert!(fixed_endpoint_asymptotic(model, &u, &v, 101, Order::Second).is_err());
    }

    #[test]
    fn estimates_converge_to_exact() {
        let model = Model::lock_step(2).unwrap();
        let u = pt(&[0, 2]);
        let rep = convergence_report(
            model,
            &u,
            &Endpoint::Fixed(u.clone()),
            &[64, 128, 256, 512],
            Order::Second,
        )
        .unwrap();
        for w in rep.rows.windows(2) {
            assert!(w[1].rel_error < w[0].rel_error);
        }
        assert!(rep.rows.last().unwrap().rel_error < 1e-3);
        let first = convergence_report(
            model,
            &u,
            &Endpoint::Fixed(u.clone()),
            &[64, 128, 256, 512],
            Order::First,
        )
        .unwrap();
        // the 1/n correction dominates the first-order error
        assert!(first.slope.unwrap() < -0.9);
        assert!(rep.slope.unwrap() < first.slope.unwrap());
    }

    #[test]
    fn order_one_and_two_agree_in_the_limit() {
        let model = Model::random_turns(3).unwrap();
        let u = pt(&[0, 1, 2]);
        let v = pt(&[0, 1, 2]);
        let d_small = fixed_endpoint_asymptotic(model, &u, &v, 100, Order::Second).unwrap()
            - fixed_endpoint_asymptotic(model, &u, &v, 100, Order::First).unwrap();
        let d_large = fixed_endpoint_asymptotic(model, &u, &v, 10000, Order::Second).unwrap()
            - fixed_endpoint_asymptotic(model, &u, &v, 10000, Order::First).unwrap();
        assert!(d_large.abs() < d_small.abs());
        assert!(d_large.abs() < 1e-2);
    }

    #[test]
    fn ladder_validation() {
        let model = Model::lock_step(2).unwrap();
        let u = pt(&[0, 2]);
        assert!(convergence_report(model, &u, &Endpoint::Free, &[], Order::First).is_err());
        assert!(
            convergence_report(model, &u, &Endpoint::Free, &[10, 10], Order::First).is_err()
        );
        let single =
            convergence_report(model, &u, &Endpoint::Free, &[20], Order::Second).unwrap();
        assert!(single.slope.is_none());
        assert_eq!(single.rows.len(), 1);
    }
}
