//! Schur polynomials and the exact series expansion of determinants of
//! the form det(f(z_j·u_m)).
//!
//! Schur values come by two independent routes — the bialternant quotient
//! and the Jacobi–Trudi determinant in complete homogeneous polynomials —
//! so each can check the other.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::perm::for_each_signed_permutation;
use crate::qrat::{qr_i, qr_one, qr_ratio, QRat};
use crate::series::{MultiSeries, SeriesCoeffs};

/// A partition: weakly decreasing nonnegative parts (trailing zeros
/// allowed and irrelevant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn part(&self, j: usize) -> usize {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len_nonzero(&self) -> usize {
        self.0.iter().filter(|&&p| p > 0).count()
    }
}

/// All partitions with at most `max_parts` parts and weight ≤ `max_weight`.
pub fn partitions_up_to(max_parts: usize, max_weight: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        out: &mut Vec<Partition>,
        current: &mut Vec<usize>,
        max_parts: usize,
        remaining: usize,
        cap: usize,
    ) {
        out.push(Partition(current.clone()));
        if current.len() == max_parts {
            return;
        }
        let mut next = cap.min(remaining);
        while next >= 1 {
            current.push(next);
            rec(out, current, max_parts, remaining - next, next);
            current.pop();
            next -= 1;
        }
    }
    rec(&mut out, &mut current, max_parts, max_weight, max_weight);
    out
}

/// Complete homogeneous symmetric polynomial h_r in k variables.
pub fn complete_homogeneous(r: usize, k: usize, degree: usize) -> MultiSeries {
    if r > degree {
        return MultiSeries::zero(k, degree);
    }
    let mut out = MultiSeries::zero(k, degree);
    // monomials x^e with Σe = r, enumerated by an odometer over
    // weak compositions
    let mut expo = vec![0u32; k];
    expo[k - 1] = r as u32;
    loop {
        out = &out + &MultiSeries::monomial(k, degree, expo.clone(), qr_one());
        // next weak composition of r in lexicographic order
        let mut j = k - 1;
        loop {
            if j == 0 {
                return out;
            }
            if expo[j] > 0 {
                let tail = expo[j] - 1;
                expo[j] = 0;
                expo[j - 1] += 1;
                expo[k - 1] = tail;
                break;
            }
            j -= 1;
        }
    }
}

fn det_of_series(mat: &[Vec<MultiSeries>], k: usize, deg: usize, nvars: usize) -> MultiSeries {
    let idx: Vec<usize> = (0..k).collect();
    let mut acc = MultiSeries::zero(nvars, deg);
    for_each_signed_permutation(&idx, |perm, sign| {
        let mut prod = MultiSeries::one(nvars, deg);
        for (row, &col) in perm.iter().enumerate() {
            prod = &prod * &mat[row][col];
        }
        acc = if sign > 0 { &acc + &prod } else { &acc - &prod };
    });
    acc
}

fn det_of_scalars(mat: &[Vec<QRat>], k: usize) -> QRat {
    let idx: Vec<usize> = (0..k).collect();
    let mut acc = QRat::zero();
    for_each_signed_permutation(&idx, |perm, sign| {
        let mut prod = qr_one();
        for (row, &col) in perm.iter().enumerate() {
            prod = prod * mat[row][col].clone();
        }
        let cur = std::mem::replace(&mut acc, QRat::zero());
        acc = if sign > 0 { cur + prod } else { cur - prod };
    });
    acc
}

/// The Schur polynomial s_μ in k variables, by Jacobi–Trudi:
/// det(h_{μ_i − i + j}) over the nonzero parts of μ.
pub fn schur_poly(mu: &Partition, k: usize, degree: usize) -> MultiSeries {
    if mu.len_nonzero() > k {
        return MultiSeries::zero(k, degree);
    }
    let ell = mu.len_nonzero();
    if ell == 0 {
        return MultiSeries::one(k, degree);
    }
    let deg = degree.max(mu.weight());
    let mat: Vec<Vec<MultiSeries>> = (0..ell)
        .map(|i| {
            (0..ell)
                .map(|j| {
                    let r = mu.part(i) as i64 - i as i64 + j as i64;
                    if r < 0 {
                        MultiSeries::zero(k, deg)
                    } else {
                        complete_homogeneous(r as usize, k, deg)
                    }
                })
                .collect()
        })
        .collect();
    det_of_series(&mat, ell, deg, k)
}

/// s_μ evaluated at exact points, by the bialternant quotient
/// det(x_j^{μ_m+k−m}) / det(x_j^{k−m}). Falls back to the Jacobi–Trudi
/// polynomial when two points coincide (the quotient is 0/0 there).
pub fn schur_value(mu: &Partition, x: &[QRat]) -> QRat {
    let k = x.len();
    if mu.len_nonzero() > k {
        return QRat::zero();
    }
    let pow = |b: &QRat, e: usize| {
        let mut acc = qr_one();
        for _ in 0..e {
            acc = acc * b.clone();
        }
        acc
    };
    let denom_mat: Vec<Vec<QRat>> = x
        .iter()
        .map(|xj| (0..k).map(|m| pow(xj, k - 1 - m)).collect())
        .collect();
    let denom = det_of_scalars(&denom_mat, k);
    if denom.is_zero() {
        return schur_poly(mu, k, mu.weight()).eval(x);
    }
    let numer_mat: Vec<Vec<QRat>> = x
        .iter()
        .map(|xj| (0..k).map(|m| pow(xj, mu.part(m) + k - 1 - m)).collect())
        .collect();
    det_of_scalars(&numer_mat, k) / denom
}

/// Vandermonde product ∏_{j<m}(x_m − x_j) = det(x_j^{m−1}).
pub fn vandermonde(x: &[QRat]) -> QRat {
    let mut acc = qr_one();
    for j in 0..x.len() {
        for m in j + 1..x.len() {
            acc = acc * (x[m].clone() - x[j].clone());
        }
    }
    acc
}

/// det(f(z_j·u_m)) expanded entry-by-entry and truncated at total
/// degree D in z.
pub fn det_direct(coeffs: &SeriesCoeffs, u: &[QRat], degree: usize) -> MultiSeries {
    let k = u.len();
    let mat: Vec<Vec<MultiSeries>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|m| coeffs.series_in(k, degree, j, &u[m]))
                .collect()
        })
        .collect();
    det_of_series(&mat, k, degree, k)
}

/// The same determinant via its Schur expansion:
/// det(z^{m−1})·det(u^{m−1})·Σ_μ (∏ a_{μ_j+k−j}) s_μ(u) s_μ(z).
pub fn det_schur_series(coeffs: &SeriesCoeffs, u: &[QRat], degree: usize) -> MultiSeries {
    let k = u.len();
    let vdm_u = vandermonde(u);
    let base_degree = k * (k - 1) / 2;
    let mut out = MultiSeries::zero(k, degree);
    if vdm_u.is_zero() || base_degree > degree {
        return out;
    }
    // Vandermonde alternant in z as a polynomial
    let mat: Vec<Vec<MultiSeries>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|m| {
                    let mut expo = vec![0u32; k];
                    expo[j] = m as u32;
                    MultiSeries::monomial(k, degree, expo, qr_one())
                })
                .collect()
        })
        .collect();
    let vdm_z = det_of_series(&mat, k, degree, k);
    for mu in partitions_up_to(k, degree - base_degree) {
        let mut a_prod = qr_one();
        for j in 0..k {
            a_prod = a_prod * coeffs.coeff(mu.part(j) + k - 1 - j);
            if a_prod.is_zero() {
                break;
            }
        }
        if a_prod.is_zero() {
            continue;
        }
        let c = a_prod * schur_value(&mu, u) * vdm_u.clone();
        if c.is_zero() {
            continue;
        }
        let s_z = schur_poly(&mu, k, degree);
        out = &out + &(&vdm_z * &s_z).scale(&c);
    }
    out
}

/// Checks the truncated identity ∏_{j,m} 1/(1−x_j·y_m) =
/// Σ_μ s_μ(x)·s_μ(y), as exact series in y up to total degree D.
pub fn cauchy_check(x: &[QRat], degree: usize) -> bool {
    let k = x.len();
    let geom = SeriesCoeffs::geometric(degree);
    let mut lhs = MultiSeries::one(k, degree);
    for xj in x {
        for m in 0..k {
            lhs = &lhs * &geom.series_in(k, degree, m, xj);
        }
    }
    let mut rhs = MultiSeries::zero(k, degree);
    for mu in partitions_up_to(k, degree) {
        let c = schur_value(&mu, x);
        if c.is_zero() {
            continue;
        }
        rhs = &rhs + &schur_poly(&mu, k, degree).scale(&c);
    }
    lhs == rhs
}

/// Second-order data of det(e^{i·u_m·z_j}): the bracket coefficients
/// multiplying s_(1)(z), s_(1,1)(z) and s_(2)(z) through degree 2,
/// relative to the leading Vandermonde term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondOrderBracket {
    pub s1: QRat,
    pub s11: QRat,
    pub s2: QRat,
}

pub fn second_order_det_expansion(u: &[QRat], k: usize) -> Result<SecondOrderBracket> {
    if u.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: u.len(),
        });
    }
    for j in 0..k {
        for m in j + 1..k {
            if u[j] == u[m] {
                return Err(Error::domain("repeated entries collapse the expansion"));
            }
        }
    }
    let p1 = Partition::new(vec![1]).unwrap();
    let p11 = Partition::new(vec![1, 1]).unwrap();
    let p2 = Partition::new(vec![2]).unwrap();
    let ki = k as i64;
    let s11 = if k >= 2 {
        -qr_ratio(1, (ki - 1) * ki) * schur_value(&p11, u)
    } else {
        QRat::zero()
    };
    Ok(SecondOrderBracket {
        s1: qr_i() * qr_ratio(1, ki) * schur_value(&p1, u),
        s11,
        s2: -qr_ratio(1, ki * (ki + 1)) * schur_value(&p2, u),
    })
}
